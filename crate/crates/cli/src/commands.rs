//! One function per subcommand. Each reads the blocks it needs from the
//! manifest and returns a report with its data tables.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::Serialize;
use serde_json::json;
use shpoisson::compare::{
    darboux_leading_term, phi_pi, poisson_to_form, strictify_closed_two_form, symplectic_to_poisson, SymplecticForm,
};
use shpoisson::exactlin::{SparseMatrix, Q};
use shpoisson::freecdga::{
    bigraded_dims, closed_form_classes, d_functor, de_rham, koszul, koszul_tower_cotangent, underlying_form, validate_cdga,
    FreeCdga, GcAlgebra, Generator, Poly, Window,
};
use shpoisson::gradedmixed::{
    is_quasi_isomorphism, realization, tate_realization, tate_stabilization, validate_mixed, GradedMixedComplex,
};
use shpoisson::lieinfty::{
    ce, invariants, is_invariant, lie_from_mixed, semi_strict_check, validate_lie, z_from_t, InvariantTensor, LieAlgebra,
    TensorKind,
};
use shpoisson::operads::arnold::ArnoldAlgebra;
use shpoisson::operads::weyl::pairing_bivector;
use shpoisson::operads::{
    arnold_algebra, bd0_check, check_rees, hopf_coproduct_check, multilinear_basis, rees_bd1, weyl_structure_map, OperadKind,
};
use shpoisson::polyvec::{check_strict_poisson, mc_check, nondegeneracy, polyvectors, EvaluationPoint, PolyvectorAlgebra};
use shpoisson::report::Report;

use crate::dsl::{Block, BlockKind, Manifest};
use crate::error::{usage, CliResult};
use crate::model;
use crate::output::Outcome;

pub struct Context<'a> {
    pub manifest: &'a Manifest,
    pub window: Window,
    /// Block chosen with `--block`; otherwise the first block of a suitable kind.
    pub block: Option<&'a str>,
}

impl<'a> Context<'a> {
    fn select(&self, kinds: &[BlockKind]) -> CliResult<&'a Block> {
        let wanted = kinds.iter().map(|k| k.keyword()).collect::<Vec<_>>().join(" or ");
        match self.block {
            Some(name) => {
                let b = self.manifest.block(name).ok_or_else(|| usage(format!("no block named `{name}`")))?;
                if kinds.contains(&b.kind) {
                    Ok(b)
                } else {
                    Err(usage(format!("block `{name}` is a {} block, expected {wanted}", b.kind.keyword())))
                }
            }
            None => kinds
                .iter()
                .find_map(|k| self.manifest.blocks_of(*k).next())
                .ok_or_else(|| usage(format!("the input has no {wanted} block"))),
        }
    }
}

fn mixed_dims(e: &GradedMixedComplex) -> Vec<[i64; 3]> {
    let mut dims: BTreeMap<(i32, i32), usize> = BTreeMap::new();
    for b in e.basis() {
        *dims.entry((b.weight, b.degree)).or_default() += 1;
    }
    dims.into_iter().map(|((w, d), n)| [w as i64, d as i64, n as i64]).collect()
}

fn bigraded_rows(alg: &GcAlgebra, window: &Window) -> CliResult<Vec<[i64; 3]>> {
    Ok(bigraded_dims(alg, window)?.into_iter().map(|((w, d), n)| [w as i64, d as i64, n as i64]).collect())
}

fn homology_rows(h: &BTreeMap<i32, usize>) -> Vec<[i64; 2]> {
    h.iter().map(|(&k, &n)| [k as i64, n as i64]).collect()
}

#[derive(Serialize)]
struct GeneratorRow {
    name: String,
    degree: i32,
    weight: i32,
    d: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    eps: Option<String>,
}

fn generator_rows(alg: &GcAlgebra, d: &[Poly], eps: Option<&[Poly]>) -> Vec<GeneratorRow> {
    alg.generators()
        .iter()
        .enumerate()
        .map(|(i, g)| GeneratorRow {
            name: g.name.clone(),
            degree: g.degree,
            weight: g.weight,
            d: alg.fmt_poly(&d[i]),
            eps: eps.map(|e| alg.fmt_poly(&e[i])),
        })
        .collect()
}

fn dense(m: &SparseMatrix) -> Vec<Vec<String>> {
    m.to_dense().iter().map(|row| row.iter().map(Q::to_string).collect()).collect()
}

fn mixed_complex(ctx: &Context) -> CliResult<GradedMixedComplex> {
    let block = ctx.select(&[BlockKind::Complex, BlockKind::Algebra])?;
    match block.kind {
        BlockKind::Complex => model::complex(block),
        _ => {
            let m = model::algebra(block)?;
            let mixed = m.mixed().ok_or_else(|| usage(format!("algebra `{}` declares no eps", block.name)))?;
            Ok(mixed.to_complex(&ctx.window)?)
        }
    }
}

pub fn check_cdga(ctx: &Context) -> CliResult<Outcome> {
    let m = model::algebra(ctx.select(&[BlockKind::Algebra])?)?;
    let b = &m.cdga;
    let mut out = Outcome { report: validate_cdga(b)?, ..Outcome::default() };
    out.table("generators", generator_rows(b.algebra(), b.differential_on_generators(), None));
    out.table("minimal", b.is_minimal());
    out.table("bigraded_dimensions", bigraded_rows(b.algebra(), &ctx.window)?);
    Ok(out)
}

pub fn check_mixed(ctx: &Context) -> CliResult<Outcome> {
    let block = ctx.select(&[BlockKind::Complex, BlockKind::Algebra])?;
    let mut report = Report::new();
    if block.kind == BlockKind::Algebra {
        let m = model::algebra(block)?;
        let mixed = m.mixed().ok_or_else(|| usage(format!("algebra `{}` declares no eps", block.name)))?;
        report.extend(mixed.validate());
    }
    let e = mixed_complex(ctx)?;
    report.extend(validate_mixed(&e)?);
    let mut out = Outcome { report, ..Outcome::default() };
    out.table("bigraded_dimensions", mixed_dims(&e));
    Ok(out)
}

pub fn de_rham_cmd(ctx: &Context) -> CliResult<Outcome> {
    let m = model::algebra(ctx.select(&[BlockKind::Algebra])?)?;
    let dr = de_rham(&m.cdga);
    let mut report = dr.mixed.validate();
    let complex = dr.mixed.to_complex(&ctx.window)?;
    report.extend(validate_mixed(&complex)?);
    let mut out = Outcome { report, ..Outcome::default() };
    out.table("generators", generator_rows(dr.algebra(), &dr.mixed.d, Some(&dr.mixed.eps)));
    out.table("bigraded_dimensions", mixed_dims(&complex));
    Ok(out)
}

pub fn closed_forms(ctx: &Context, p: i32, n: i32) -> CliResult<Outcome> {
    let block = ctx.select(&[BlockKind::Form, BlockKind::Algebra])?;
    let mut out = Outcome::default();
    let (base, tower) = if block.kind == BlockKind::Form {
        let (base, tower) = model::form(ctx.manifest, block, &ctx.window)?;
        out.report.extend(tower.validate());
        let alg = tower.dr.algebra();
        let comps: Vec<[String; 2]> =
            (tower.p..=tower.wmax()).map(|j| [j.to_string(), alg.fmt_poly(&tower.component(j))]).collect();
        out.table("components", comps);
        (base, Some(tower))
    } else {
        (model::algebra(block)?, None)
    };
    let (p, n) = tower.as_ref().map_or((p, n), |t| (t.p, t.n));
    let classes = closed_form_classes(&base.cdga, p, n, &ctx.window)?;
    for s in &classes.hodge {
        out.report.record(format!("Hodge stage {} long exact sequence", s.stage), s.exact, || format!("{s:?}"));
    }
    let hodge: Vec<_> = classes
        .hodge
        .iter()
        .map(|s| json!({"stage": s.stage, "dimension": s.dimension, "fiber": s.fiber_dimension, "inclusion_rank": s.inclusion_rank, "projection_rank": s.projection_rank}))
        .collect();
    let reps: Vec<String> =
        classes.representatives.iter().map(|r| r.dr.algebra().fmt_poly(&underlying_form(r))).collect();
    out.table("class_dimension", classes.dimension);
    out.table("hodge", hodge);
    out.table("representatives", reps);
    out.table("p", p);
    out.table("n", n);
    Ok(out)
}

fn poisson_block<'a>(ctx: &Context<'a>) -> CliResult<model::PoissonModel> {
    model::poisson(ctx.manifest, ctx.select(&[BlockKind::Poisson])?)
}

fn nondegeneracy_table(out: &mut Outcome, pol: &PolyvectorAlgebra, p0: &Poly) {
    if let Ok(nd) = nondegeneracy(pol, p0, &EvaluationPoint::Augmentation) {
        out.table("nondegenerate_at_augmentation", nd.nondegenerate);
        out.table("theta", dense(&nd.theta));
    }
}

pub fn check_poisson(ctx: &Context) -> CliResult<Outcome> {
    let pm = poisson_block(ctx)?;
    let p0 = pm.tower.component(0);
    let strict = check_strict_poisson(&pm.pol, &p0)?;
    let mut out = Outcome { report: strict.report, ..Outcome::default() };
    out.table("brackets", strict.brackets);
    out.table("pi", pm.pol.fmt(&p0));
    nondegeneracy_table(&mut out, &pm.pol, &p0);
    Ok(out)
}

pub fn mc(ctx: &Context) -> CliResult<Outcome> {
    let pm = poisson_block(ctx)?;
    let res = mc_check(&pm.pol, &pm.tower)?;
    let mut out = Outcome { report: res.report, ..Outcome::default() };
    out.table("bound", pm.tower.bound);
    out.table("components", pm.tower.components.iter().map(|p| pm.pol.fmt(p)).collect::<Vec<_>>());
    if let Some((i, residual)) = res.first_failure {
        out.table("first_failure", json!({"equation": i, "residual": pm.pol.fmt(&residual)}));
    }
    Ok(out)
}

fn form_table(out: &mut Outcome, form: &SymplecticForm) {
    out.table("omega", form.dr.algebra().fmt_poly(&form.omega));
    out.table("theta_omega", dense(&form.theta));
}

pub fn dualize(ctx: &Context) -> CliResult<Outcome> {
    let block = ctx.select(&[BlockKind::Poisson, BlockKind::Form])?;
    let mut out = Outcome::default();
    if block.kind == BlockKind::Poisson {
        let pm = model::poisson(ctx.manifest, block)?;
        let pi = pm.tower.component(0);
        let strict = check_strict_poisson(&pm.pol, &pi)?;
        out.report.extend(strict.report);
        let nd = nondegeneracy(&pm.pol, &pi, &EvaluationPoint::Augmentation)?;
        out.report.record("pi is non-degenerate at the augmentation", nd.nondegenerate, || format!("{:?}", dense(&nd.theta)));
        if !out.report.is_pass() {
            return Ok(out);
        }
        let form = poisson_to_form(&pm.pol, &pi)?;
        let (_, back) = symplectic_to_poisson(&form)?;
        out.report.record("symplectic_to_poisson(poisson_to_form(pi)) = pi", back == pi, || pm.pol.fmt(&back));
        let phi = phi_pi(&pm.pol, &pi)?;
        out.report.extend(phi.isomorphism_report(&ctx.window)?);
        out.report.extend(phi.chain_map_report(&ctx.window)?);
        out.table("pi", pm.pol.fmt(&pi));
        form_table(&mut out, &form);
    } else {
        let (base, tower) = model::form(ctx.manifest, block, &ctx.window)?;
        let form = SymplecticForm::new(&base.cdga, tower.n, underlying_form(&tower));
        let checks = form.validate();
        let ok = checks.is_pass();
        out.report.extend(checks);
        form_table(&mut out, &form);
        if !ok {
            return Ok(out);
        }
        let (pol, pi) = symplectic_to_poisson(&form)?;
        let back = poisson_to_form(&pol, &pi)?;
        let alg = form.dr.algebra();
        out.report.record("poisson_to_form(symplectic_to_poisson(omega)) = omega", back.omega == form.omega, || {
            alg.fmt_poly(&back.omega)
        });
        out.table("pi", pol.fmt(&pi));
    }
    Ok(out)
}

pub fn strictify(ctx: &Context) -> CliResult<Outcome> {
    let (_, tower) = model::form(ctx.manifest, ctx.select(&[BlockKind::Form])?, &ctx.window)?;
    let mut report = tower.validate();
    let s = strictify_closed_two_form(&tower)?;
    report.extend(s.report);
    let alg = tower.dr.algebra();
    let mut out = Outcome { report, ..Outcome::default() };
    out.table("f", alg.fmt_poly(&s.f));
    out.table("eta", alg.fmt_poly(&s.eta));
    out.table("strict_form", alg.fmt_poly(&underlying_form(&s.strict)));
    out.table("homotopy", s.homotopy.iter().map(|h| alg.fmt_poly(h)).collect::<Vec<_>>());
    Ok(out)
}

pub fn darboux(ctx: &Context) -> CliResult<Outcome> {
    let pm = poisson_block(ctx)?;
    let d = darboux_leading_term(&pm.pol, &pm.tower)?;
    let mut out = Outcome { report: d.report, ..Outcome::default() };
    out.table("q", pm.pol.fmt(&d.q));
    out.table("remainder", d.remainder.iter().map(|p| pm.pol.fmt(p)).collect::<Vec<_>>());
    Ok(out)
}

fn lie_block(ctx: &Context) -> CliResult<(LieAlgebra, Option<Vec<Q>>)> {
    model::lie(ctx.select(&[BlockKind::Lie])?)
}

fn structure_constants(g: &LieAlgebra) -> Vec<[String; 3]> {
    let mut rows = Vec::new();
    for i in 0..g.dim {
        for j in i + 1..g.dim {
            if g.c[i][j].iter().any(|c| !c.is_zero()) {
                let v: Vec<String> = g.c[i][j].iter().map(Q::to_string).collect();
                rows.push([(i + 1).to_string(), (j + 1).to_string(), format!("[{}]", v.join(", "))]);
            }
        }
    }
    rows
}

pub fn ce_cmd(ctx: &Context) -> CliResult<Outcome> {
    let (g, _) = lie_block(ctx)?;
    let mut report = validate_lie(&g);
    let m = ce(&g);
    report.extend(m.validate());
    let mut out = Outcome { report, ..Outcome::default() };
    out.table("generators", generator_rows(&m.alg, &m.d, Some(&m.eps)));
    Ok(out)
}

pub fn lie_from_mixed_cmd(ctx: &Context) -> CliResult<Outcome> {
    let block = ctx.select(&[BlockKind::Algebra])?;
    let m = model::algebra(block)?;
    let mixed = m.mixed().ok_or_else(|| usage(format!("algebra `{}` declares no eps", block.name)))?;
    let mut report = mixed.validate();
    let g = lie_from_mixed(&mixed)?;
    report.extend(validate_lie(&g));
    let back = ce(&g);
    report.record("ce(lie_from_mixed(B)) = B", back.eps == mixed.eps && back.d == mixed.d, || {
        format!("{:?}", back.eps.iter().map(|p| back.alg.fmt_poly(p)).collect::<Vec<_>>())
    });
    let mut out = Outcome { report, ..Outcome::default() };
    out.table("dim", g.dim);
    out.table("brackets", structure_constants(&g));
    Ok(out)
}

fn tensor_row(t: &InvariantTensor) -> Vec<String> {
    t.coeffs.iter().map(Q::to_string).collect()
}

pub fn invariants_cmd(ctx: &Context, kind: TensorKind) -> CliResult<Outcome> {
    let (g, _) = lie_block(ctx)?;
    let mut report = validate_lie(&g);
    let found = invariants(&g, kind);
    for (k, t) in found.iter().enumerate() {
        report.record(format!("basis tensor {} is invariant", k + 1), is_invariant(&g, t), || tensor_row(t).join(", "));
    }
    let mut out = Outcome { report, ..Outcome::default() };
    out.table("kind", kind);
    out.table("dimension", found.len());
    out.table("basis", found.iter().map(tensor_row).collect::<Vec<_>>());
    Ok(out)
}

pub fn z_from_t_cmd(ctx: &Context) -> CliResult<Outcome> {
    let (g, t) = lie_block(ctx)?;
    let t = match t {
        Some(coeffs) => InvariantTensor { kind: TensorKind::Sym2, dim: g.dim, coeffs },
        None => {
            let mut found = invariants(&g, TensorKind::Sym2);
            if found.len() != 1 {
                return Err(usage(format!("Sym2 invariants have dimension {}; give `t` in the lie block", found.len())));
            }
            found.pop().expect("one invariant")
        }
    };
    let mut report = validate_lie(&g);
    let z = z_from_t(&g, &t)?;
    report.record("Z is nonzero", !z.is_zero(), String::new);
    report.record("Z is invariant", is_invariant(&g, &z), || tensor_row(&z).join(", "));
    let wedge = invariants(&g, TensorKind::Wedge3);
    let on_line = wedge.len() == 1 && {
        let w = &wedge[0];
        let pivot = w.coeffs.iter().position(|c| !c.is_zero());
        pivot.is_some_and(|k| {
            let ratio = &z.coeffs[k] / &w.coeffs[k];
            z.coeffs.iter().zip(&w.coeffs).all(|(a, b)| *a == b * &ratio)
        })
    };
    if wedge.len() == 1 {
        report.record("Z lies on the invariant line of wedge^3", on_line, || tensor_row(&z).join(", "));
    }
    report.extend(semi_strict_check(&g, &z)?);
    let mut out = Outcome { report, ..Outcome::default() };
    out.table("t", tensor_row(&t));
    out.table("z", tensor_row(&z));
    Ok(out)
}

pub fn koszul_cmd(ctx: &Context, stages: u32) -> CliResult<Outcome> {
    let im = model::ideal(ctx.manifest, ctx.select(&[BlockKind::Ideal])?)?;
    let k = koszul(&im.base.cdga, &im.generators, &im.powers)?;
    let pis = k.homotopy(&ctx.window)?;
    let mut report = Report::new();
    let higher: Vec<_> = pis.iter().filter(|(&i, &d)| i > 0 && d > 0).collect();
    report.record("pi_i = 0 for i > 0", higher.is_empty(), || format!("{higher:?}"));
    if stages > 0 {
        let powers_ok = im.powers.iter().all(|&p| p == 1);
        if powers_ok {
            report.extend(koszul_tower_cotangent(&im.base.cdga, &im.generators, stages)?.report());
        }
    }
    let alg = im.base.cdga.algebra();
    let mut out = Outcome { report, ..Outcome::default() };
    out.table("relations", k.relations.iter().map(|r| alg.fmt_poly(r)).collect::<Vec<_>>());
    out.table("homotopy", homology_rows(&pis));
    Ok(out)
}

pub fn d_functor_cmd(ctx: &Context) -> CliResult<Outcome> {
    let im = model::ideal(ctx.manifest, ctx.select(&[BlockKind::Ideal])?)?;
    let d = d_functor(&im.base.cdga, &im.generators, &ctx.window)?;
    let mut out = Outcome { report: d.report, ..Outcome::default() };
    out.table("h0_by_weight_bound", d.h0_by_weight_bound.iter().map(|&(w, n)| [w as i64, n as i64]).collect::<Vec<_>>());
    Ok(out)
}

pub fn realize(ctx: &Context) -> CliResult<Outcome> {
    let e = mixed_complex(ctx)?;
    let report = validate_mixed(&e)?;
    let real = realization(&e, ctx.window.max_weight);
    let mut out = Outcome { report, ..Outcome::default() };
    out.table("weight_bound", ctx.window.max_weight);
    out.table("homology", homology_rows(&real.homology_dims()?));
    out.table("euler_characteristic", real.euler_characteristic());
    Ok(out)
}

pub fn tate(ctx: &Context, stage: i32, max_stage: i32) -> CliResult<Outcome> {
    if stage < 0 || max_stage < 0 {
        return Err(usage("Tate stages are non-negative"));
    }
    let e = mixed_complex(ctx)?;
    let mut report = validate_mixed(&e)?;
    let wmax = ctx.window.max_weight;
    let real = realization(&e, wmax);
    let st = tate_realization(&e, stage, wmax);
    let quasi = is_quasi_isomorphism(&st.comparison, &real, &st.complex)?;
    let nonnegative = e.basis().iter().all(|b| b.weight >= 0);
    if nonnegative {
        report.record("comparison to the Tate stage is a quasi-isomorphism", quasi, || format!("stage {stage}"));
    }
    let stab = tate_stabilization(&e, wmax, max_stage, 2)?;
    let mut out = Outcome { report, ..Outcome::default() };
    out.table("stage", stage);
    out.table("realization_homology", homology_rows(&real.homology_dims()?));
    out.table("tate_homology", homology_rows(&st.complex.homology_dims()?));
    out.table("comparison_quasi_isomorphism", quasi);
    out.table("stabilization", stab.iter().map(homology_rows).collect::<Vec<_>>());
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OperadChoice {
    Pn,
    As,
    Lie,
    Bd1,
    Bd0,
    Arnold,
    Weyl,
}

fn factorial(k: usize) -> usize {
    (1..=k).product()
}

pub fn operad(choice: OperadChoice, arity: usize, n: i32, specialize: Option<i64>) -> CliResult<Outcome> {
    let mut out = Outcome::default();
    match choice {
        OperadChoice::Pn | OperadChoice::As | OperadChoice::Lie => {
            if arity == 0 {
                return Err(usage("multilinear spaces start at arity 1"));
            }
            let (kind, expected) = match choice {
                OperadChoice::Pn => (OperadKind::Pn, arity),
                OperadChoice::As => (OperadKind::As, arity),
                _ => (OperadKind::Lie, arity.saturating_sub(1)),
            };
            let space = multilinear_basis(kind, arity, n)?;
            let expected = factorial(expected);
            out.report.record(format!("dimension {expected} in arity {arity}"), space.dim() == expected, || space.dim().to_string());
            out.table("dimension", space.dim());
            out.table("weight_distribution", space.weight_distribution());
            out.table("basis", &space.basis);
        }
        OperadChoice::Bd1 => {
            let op = rees_bd1(arity)?;
            let chk = check_rees(&op)?;
            out.report.extend(chk.report.clone());
            if let Some(h) = specialize {
                let (kind, name) = match h {
                    0 => (OperadKind::Pn, "P_1"),
                    1 => (OperadKind::As, "As"),
                    _ => return Err(usage("--specialize takes 0 or 1")),
                };
                for k in 1..=arity {
                    let target = multilinear_basis(kind, k, 1)?;
                    let ok = chk.dims[k] == target.dim()
                        && (h == 1 || chk.weight_distribution[k] == target.weight_distribution());
                    out.report.record(format!("hbar = {h} matches {name} in arity {k}"), ok, || {
                        format!("{} vs {}", chk.dims[k], target.dim())
                    });
                }
            }
            out.table("dimensions", &chk.dims);
            out.table("weight_distribution", &chk.weight_distribution);
        }
        OperadChoice::Bd0 => {
            let chk = bd0_check();
            out.report.extend(chk.report);
            let hopf = hopf_coproduct_check(n);
            out.report.extend(hopf.report);
            out.table("quotient_dimension", chk.quotient_dim);
            out.table("relations_dimension", chk.relations_dim);
        }
        OperadChoice::Arnold => {
            let a = arnold_algebra(n, arity)?;
            let dims = a.dims();
            let expected = ArnoldAlgebra::expected_dims(arity);
            let matches = dims.iter().enumerate().all(|(k, d)| *d == expected.get(k).copied().unwrap_or(0));
            out.report.record("dimensions are the coefficients of prod (1 + j q^n)", matches, || format!("{dims:?} vs {expected:?}"));
            out.report.record("standard monomials form a basis", a.standard_basis_certified(), String::new);
            let series: Vec<String> = dims
                .iter()
                .enumerate()
                .filter(|(_, d)| **d > 0)
                .map(|(k, d)| if k == 0 { d.to_string() } else { format!("{d}q^{}", k as i32 * n) })
                .collect();
            out.table("dimensions", &dims);
            out.table("hilbert_series", series.join(" + "));
            out.table("pieces", a.pieces());
        }
        OperadChoice::Weyl => weyl(&mut out, arity, n)?,
    }
    Ok(out)
}

/// Weyl structure map on `ℚ[u, v]`, `|u| = 0`, `|v| = n`, paired by `t(u, v) = 1`.
fn weyl(out: &mut Outcome, arity: usize, n: i32) -> CliResult<()> {
    if arity < 2 {
        return Err(usage("the Weyl check needs arity at least 2"));
    }
    let b = FreeCdga::new(vec![Generator::new("u", 0), Generator::new("v", n)], vec![Poly::zero(), Poly::zero()])?;
    let alg = b.algebra();
    let one = Q::from_integer(1.into());
    let pairing = vec![vec![Q::zero(), one], vec![Q::zero(), Q::zero()]];
    let zero = vec![vec![Q::zero(); 2]; 2];
    let inputs: Vec<Poly> = (0..arity).map(|i| alg.gen(i % 2)).collect();

    let flat = weyl_structure_map(alg, &zero, n, &inputs)?;
    let product = alg.mul_all(&inputs);
    let only_product = flat.unit_coefficient() == product && flat.terms.len() == usize::from(!product.is_zero());
    out.report.record("t = 0 gives the product", only_product, || format!("{:?}", flat.display()));

    let pol = polyvectors(&b, n + 1);
    let pi = pairing_bivector(&pol, &pairing, n);
    let (x, y) = (inputs[0].clone(), inputs[1].clone());
    let pair = weyl_structure_map(alg, &pairing, n, &[x.clone(), y.clone()])?;
    // u has degree 0, so the sign (-1)^{(n+1)|x||u|} is trivial
    let bracket = pol.bracket(&pol.bracket(&pi, &pol.embed(&x)), &pol.embed(&y));
    let a12 = pair.generator_coefficient(0, 1)?.padded(pol.algebra().ngens());
    out.report.record("a_12 coefficient is the t-bracket", a12 == bracket, || format!("{} vs {}", pol.fmt(&a12), pol.fmt(&bracket)));
    out.report.record("unit coefficient is the product", pair.unit_coefficient() == alg.mul(&x, &y), String::new);

    let full = weyl_structure_map(alg, &pairing, n, &inputs)?;
    out.table("terms", full.display());
    Ok(())
}

/// Ensures a check on the window bounds can be reported as inconclusive
/// before any enumeration happens.
pub fn require_window(window: &Window) -> CliResult<()> {
    if window.max_weight < 0 || window.max_length < 0 || window.min_degree > window.max_degree {
        return Err(usage(format!("empty window {window:?}")));
    }
    Ok(())
}
