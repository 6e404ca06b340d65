//! The library-level acceptance criteria, each checked against the oracles
//! in the parent module. Every function returns a one-line summary on
//! success and the first discrepancy on failure.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use rand::Rng;

use shpoisson::compare::{
    darboux_leading_term, phi_pi, poisson_to_form, same_closed_class, strictify_closed_two_form, symplectic_to_poisson,
};
use shpoisson::exactlin::{q, rank_of, Q};
use shpoisson::fixtures;
use shpoisson::freecdga::{
    de_rham, koszul, koszul_tower_cotangent, ClosedFormTower, FreeCdga, GcAlgebra, Generator, Monomial, Poly, Window,
};
use shpoisson::gradedmixed::{is_quasi_isomorphism, realization, tate_realization, unit_at, validate_mixed};
use shpoisson::lieinfty::{ce, invariants, is_invariant, lie_from_mixed, semi_strict_check, z_from_t, LieAlgebra, TensorKind};
use shpoisson::operads::rees::specialize;
use shpoisson::operads::weyl::{koszul_sign, pairing_bivector};
use shpoisson::operads::{arnold_algebra, bd0_check, check_rees, rees_bd1, weyl_structure_map};
use shpoisson::polyvec::{polyvectors, MaurerCartanTower, PolyvectorAlgebra};
use shpoisson::report::Report;

use super::*;

pub type Outcome = Result<String, String>;

fn ensure(ok: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what())
    }
}

fn passes(r: &Report, what: &str) -> Result<(), String> {
    match r.checks.iter().find(|c| c.verdict != shpoisson::report::Verdict::Pass) {
        None => Ok(()),
        Some(c) => Err(format!("{what}: {} ({:?}) {}", c.name, c.verdict, c.witness)),
    }
}

fn lift<T>(r: shpoisson::Result<T>, what: &str) -> Result<T, String> {
    r.map_err(|e| format!("{what}: {e}"))
}

fn sign(e: i32) -> Q {
    if e.rem_euclid(2) == 0 {
        q(1)
    } else {
        q(-1)
    }
}

/// Random homogeneous element of `Pol(B, N)` in the degree of a random
/// window monomial.
fn random_polyvector(rng: &mut impl Rng, pol: &PolyvectorAlgebra, window: &Window) -> (Poly, i32) {
    let alg = pol.algebra();
    let basis = alg.basis(window).unwrap_or_default();
    let pick = &basis[rng.gen_range(0..basis.len())];
    let degree = alg.mono_degree(pick);
    (random_homogeneous(rng, alg, window, degree, 3), degree)
}

/// Antisymmetry, Jacobi, Leibniz and compatibility with `d`, each as an
/// exact identity, plus agreement with the naive bracket.
pub fn schouten_identities(rng: &mut impl Rng, pol: &PolyvectorAlgebra, trials: usize) -> Result<(), String> {
    let alg = pol.algebra();
    let naive = NaiveSchouten::new(pol);
    let n = pol.shift();
    let window = Window::new(2, 2, -12, 12);
    let br = |a: &Poly, b: &Poly| pol.bracket(a, b);
    for _ in 0..trials {
        let (a, da) = random_polyvector(rng, pol, &window);
        let (b, db) = random_polyvector(rng, pol, &window);
        let (c, _) = random_polyvector(rng, pol, &window);
        let show = || format!("a = {}, b = {}, c = {}", pol.fmt(&a), pol.fmt(&b), pol.fmt(&c));
        ensure(br(&a, &b) == naive.bracket(&a, &b), || format!("bracket differs from the naive expansion: {}", show()))?;
        let swap = sign((da - n) * (db - n));
        ensure(br(&a, &b) == br(&b, &a).scale(&-swap.clone()), || format!("antisymmetry: {}", show()))?;
        let lhs = br(&a, &br(&b, &c));
        let rhs = br(&br(&a, &b), &c).add(&br(&b, &br(&a, &c)).scale(&swap));
        ensure(lhs == rhs, || format!("Jacobi: {}", show()))?;
        let lhs = br(&a, &alg.mul(&b, &c));
        let rhs = alg.mul(&br(&a, &b), &c).add(&alg.mul(&b, &br(&a, &c)).scale(&sign((da - n) * db)));
        ensure(lhs == rhs, || format!("Leibniz: {}", show()))?;
        let lhs = pol.differential(&br(&a, &b));
        let rhs = br(&pol.differential(&a), &b).add(&br(&a, &pol.differential(&b)).scale(&sign(da - n)));
        ensure(lhs == rhs, || format!("d is a derivation of the bracket: {}", show()))?;
    }
    Ok(())
}

pub fn structural_identities() -> Outcome {
    let mut rng = fixtures::rng(101);
    let window = Window::new(4, 5, -16, 16);
    let mut monomials = 0;
    for case in 0..20 {
        let b = fixtures::random_cdga(&mut rng, 4);
        ensure(b.ngens() <= 4 && b.generators().iter().all(|g| (-3..=3).contains(&g.degree)), || format!("case {case}: generator bounds"))?;
        let dr = de_rham(&b);
        let complex = lift(dr.mixed.to_complex(&window), &format!("case {case}"))?;
        monomials += complex.dim();
        passes(&lift(validate_mixed(&complex), &format!("case {case}"))?, &format!("case {case} de Rham"))?;
        passes(&dr.mixed.validate(), &format!("case {case} de Rham generators"))?;
        let shift = rng.gen_range(-2..=2) + 1;
        schouten_identities(&mut rng, &polyvectors(&b, shift), 4).map_err(|e| format!("case {case}, N = {shift}: {e}"))?;
    }
    Ok(format!("20 cdgas, {monomials} de Rham monomials, 80 bracket triples"))
}

pub fn realization_matches_cell_model() -> Outcome {
    let mut rng = fixtures::rng(202);
    for case in 0..10 {
        let e = fixtures::random_mixed_complex(&mut rng, 4);
        ensure(e.weights().all(|w| (0..=4).contains(&w)), || format!("case {case}: weights outside 0..4"))?;
        passes(&lift(validate_mixed(&e), "random complex")?, "random complex")?;
        let real = lift(realization(&e, 4).homology_dims(), "realization")?;
        let hom = hom_from_cell_model(&e, 4);
        ensure(real == hom, || format!("case {case}: realization {real:?}, Hom complex {hom:?}"))?;
    }
    Ok("10 complexes agree in every degree".into())
}

fn perturbed_sl2() -> LieAlgebra {
    let mut g = LieAlgebra::sl2();
    let mut v = g.c[2][0].clone();
    v[0] = q(3);
    g.set_bracket(2, 0, &v);
    g
}

pub fn lie_round_trip() -> Outcome {
    let mut rng = fixtures::rng(303);
    let mut algebras = vec![LieAlgebra::sl2(), LieAlgebra::nonabelian2(), LieAlgebra::abelian(4)];
    for _ in 0..10 {
        let g = fixtures::random_lie(&mut rng);
        for i in 0..4 {
            for j in 0..4 {
                for k in 0..4 {
                    ensure(jacobiator(&g, i, j, k).iter().all(Zero::is_zero), || "random algebra violates Jacobi".into())?;
                }
            }
        }
        algebras.push(g);
    }
    for (idx, g) in algebras.iter().enumerate() {
        let m = ce(g);
        passes(&m.validate(), &format!("algebra {idx}: ce"))?;
        let back = lift(lie_from_mixed(&m), &format!("algebra {idx}"))?;
        ensure(back == *g, || format!("algebra {idx}: structure constants changed"))?;
        ensure(ce(&back) == m, || format!("algebra {idx}: ce o lie_from_mixed is not the identity"))?;
    }
    let bad = perturbed_sl2();
    ensure(jacobiator(&bad, 0, 1, 2).iter().any(|x| !x.is_zero()), || "perturbation kept Jacobi".into())?;
    let report = ce(&bad).validate();
    ensure(!report.is_pass(), || "perturbed sl2 passes the generator checks".into())?;
    let complex = lift(ce(&bad).to_complex(&Window::new(3, 3, 0, 3)), "perturbed complex")?;
    let rejected = validate_mixed(&complex).map(|r| !r.is_pass()).unwrap_or(true);
    ensure(rejected, || "perturbed sl2 passes validate_mixed".into())?;
    ensure(lie_from_mixed(&ce(&bad)).is_err(), || "perturbed sl2 read back as a Lie algebra".into())?;
    Ok(format!("{} algebras round-trip; perturbed sl2 rejected", algebras.len()))
}

pub fn invariant_dimensions() -> Outcome {
    let sl2 = LieAlgebra::sl2();
    let sym = invariants(&sl2, TensorKind::Sym2);
    let wedge = invariants(&sl2, TensorKind::Wedge3);
    ensure(sym.len() == 1 && wedge.len() == 1, || format!("sl2: {} and {}", sym.len(), wedge.len()))?;
    for n in 1..=5 {
        let g = LieAlgebra::abelian(n);
        let (s, w) = (invariants(&g, TensorKind::Sym2).len(), invariants(&g, TensorKind::Wedge3).len());
        ensure(s == n * (n + 1) / 2 && w == binomial(n, 3), || format!("abelian {n}: {s}, {w}"))?;
    }

    // the invariant line of Sym² is spanned by the inverse Killing form
    let kappa = killing_form(&sl2);
    let inverse = shpoisson::exactlin::SparseMatrix::from_dense(&kappa).inverse().map_err(|e| e.to_string())?.to_dense();
    let t = &sym[0];
    let flat = |m: &Vec<Vec<Q>>| m.iter().flatten().cloned().collect::<Vec<_>>();
    ensure(proportional(&flat(&t.symmetric_matrix()), &flat(&inverse)), || "Sym² invariant is not the inverse Killing form".into())?;

    let z = lift(z_from_t(&sl2, t), "z_from_t")?;
    ensure(!z.is_zero() && is_invariant(&sl2, &z), || "Z is zero or not invariant".into())?;
    ensure(proportional(&z.coeffs, &wedge[0].coeffs), || "Z is off the invariant line".into())?;
    // independent description of the line: κ^{ia} κ^{jb} c_ab^k
    let n = 3;
    let mut full = vec![vec![vec![Q::zero(); n]; n]; n];
    for i in 0..n {
        for j in 0..n {
            for a in 0..n {
                for b in 0..n {
                    for k in 0..n {
                        full[i][j][k] += &inverse[i][a] * &inverse[j][b] * &sl2.c[a][b][k];
                    }
                }
            }
        }
    }
    let raised = [full[0][1][2].clone()];
    ensure(!raised[0].is_zero(), || "raised structure tensor vanishes".into())?;
    ensure(proportional(&[z.wedge_component([0, 1, 2])], &raised), || "Z disagrees with the raised structure tensor".into())?;
    passes(&lift(semi_strict_check(&sl2, &z), "semi_strict_check")?, "semi-strict check")?;
    Ok("sl2: 1, 1; abelian n <= 5 match n(n+1)/2 and C(n,3); Z on the invariant line".into())
}

fn poisson_symplectic_case(pol: &PolyvectorAlgebra, pi: &Poly, window: &Window, label: &str) -> Result<(), String> {
    let form = lift(poisson_to_form(pol, pi), label)?;
    passes(&form.validate(), &format!("{label}: form"))?;
    let (pol_back, pi_back) = lift(symplectic_to_poisson(&form), label)?;
    ensure(pi_back == *pi, || format!("{label}: Poisson -> form -> Poisson gave {}", pol_back.fmt(&pi_back)))?;
    let form_again = lift(poisson_to_form(&pol_back, &pi_back), label)?;
    ensure(form_again.omega == form.omega, || format!("{label}: form -> Poisson -> form changed the form"))?;

    let phi = lift(phi_pi(pol, pi), label)?;
    passes(&lift(phi.isomorphism_report(window), label)?, &format!("{label}: phi isomorphism"))?;
    passes(&lift(phi.chain_map_report(window), label)?, &format!("{label}: phi chain map"))?;
    let naive = NaiveSchouten::new(pol);
    let alg = phi.dr.algebra();
    for m in lift(alg.basis(window), label)? {
        let p = Poly::from_monomial(m.clone(), q(1));
        let lhs = phi.apply(&phi.dr.mixed.apply_total(&p));
        let image = phi.apply(&p);
        let rhs = pol.differential(&image).add(&naive.bracket(pi, &image));
        ensure(lhs == rhs, || format!("{label}: phi fails to intertwine on {}", alg.fmt_mono(&m)))?;
    }
    Ok(())
}

pub fn poisson_symplectic_round_trip() -> Outcome {
    let window = Window::new(2, 2, -10, 10);
    for n in -2..=2 {
        let b = fixtures::shifted_cotangent(n);
        let pol = polyvectors(&b, n + 1);
        let pi = pol.algebra().mul(&pol.vector(0), &pol.vector(1));
        poisson_symplectic_case(&pol, &pi, &window, &format!("cotangent n = {n}"))?;
    }
    let mut rng = fixtures::rng(505);
    for case in 0..10 {
        let c = fixtures::random_constant_poisson(&mut rng);
        poisson_symplectic_case(&c.pol, &c.pi, &window, &format!("random case {case} (n = {})", c.n))?;
    }
    Ok("cotangent for n in -2..2 and 10 random constant bivectors".into())
}

/// `p_0 = (1 + x) @y@x` on the plane: the constant part is Darboux and the
/// remainder `x @y@x` satisfies the rewritten equation.
pub fn darboux_example() -> (PolyvectorAlgebra, MaurerCartanTower) {
    let b = FreeCdga::polynomial_ring(&["x", "y"]);
    let pol = polyvectors(&b, 1);
    let a = pol.algebra();
    let classical = a.mul(&pol.vector(1), &pol.vector(0));
    let p0 = classical.add(&a.mul(&pol.coordinate(0), &classical));
    let tower = MaurerCartanTower::new(0, vec![p0, Poly::zero()]);
    (pol, tower)
}

pub fn darboux_core() -> Outcome {
    let mut rng = fixtures::rng(606);
    let window = Window::new(3, 3, -6, 6);
    let examples = fixtures::strict_two_forms();
    for (idx, (dr, n, omega)) in examples.iter().enumerate() {
        let tower = fixtures::gauge_push(&mut rng, dr, *n, omega, &window);
        passes(&tower.validate(), &format!("example {idx}: pushed tower"))?;
        let s = lift(strictify_closed_two_form(&tower), &format!("example {idx}"))?;
        passes(&s.report, &format!("example {idx}: strictification"))?;
        // the homotopy certificate, applied directly
        let m = &dr.mixed;
        for w in 2..=tower.wmax() {
            let mut dh = m.apply_d(&s.homotopy[(w - 2) as usize]);
            if w > 2 {
                dh = dh.add(&m.apply_eps(&s.homotopy[(w - 3) as usize]));
            }
            ensure(dh == tower.component(w).sub(&s.strict.component(w)), || format!("example {idx}: homotopy fails in weight {w}"))?;
        }
        let mut comps = vec![Poly::zero(); tower.components.len()];
        comps[0] = omega.clone();
        let input = ClosedFormTower::new(dr, 2, *n, comps, window);
        ensure(lift(same_closed_class(&s.strict, &input), "class")?, || format!("example {idx}: strict form is in another class"))?;
        ensure(lift(same_closed_class(&s.strict, &tower), "class")?, || format!("example {idx}: strict form differs from the pushed tower"))?;
    }

    let (pol, tower) = darboux_example();
    let out = lift(darboux_leading_term(&pol, &tower), "darboux")?;
    passes(&out.report, "rewritten MC equation")?;
    let naive = NaiveSchouten::new(&pol);
    let rest = &out.remainder[0];
    ensure(!rest.is_zero() && !out.q.is_zero(), || "example splits trivially".into())?;
    let residual = pol
        .differential(rest)
        .add(&naive.bracket(&out.q, rest))
        .add(&naive.bracket(rest, rest).scale(&shpoisson::exactlin::qr(1, 2)));
    ensure(residual.is_zero(), || format!("d p' + [q, p'] + 1/2 [p', p'] = {}", pol.fmt(&residual)))?;
    ensure(naive.bracket(&out.q, &out.q).is_zero(), || "[q, q] != 0".into())?;
    Ok(format!("{} strict forms recovered; Darboux rewrite exact", examples.len()))
}

pub fn koszul_claims() -> Outcome {
    let line = FreeCdga::polynomial_ring(&["x"]);
    let x = line.algebra().gen(0);
    let window = Window::new(8, 0, -3, 2);
    let k1 = lift(koszul(&line, &[x.clone()], &[1]), "K(x)")?;
    let pi1 = lift(k1.homotopy(&window), "K(x)")?;
    ensure(pi1 == BTreeMap::from([(0, 1), (1, 0)]), || format!("K(Q[x], x): {pi1:?}"))?;
    let k2 = lift(koszul(&line, &[x.clone()], &[2]), "K(x^2)")?;
    let pi2 = lift(k2.homotopy(&window), "K(x^2)")?;
    ensure(pi2.get(&0) == Some(&2) && pi2.get(&1) == Some(&0), || format!("K(Q[x], x^2): {pi2:?}"))?;

    let plane = FreeCdga::polynomial_ring(&["x", "y"]);
    let gens = [plane.algebra().gen(0), plane.algebra().gen(1)];
    for (b, fs) in [(&line, vec![x.clone()]), (&plane, gens.to_vec())] {
        let tower = lift(koszul_tower_cotangent(b, &fs, 3), "cotangent tower")?;
        passes(&tower.report(), "cotangent tower")?;
        for stage in &tower.stages {
            // the transition sends dX_i to f_i dX_i plus terms in X
            for (i, row) in stage.matrix.iter().enumerate() {
                for (j, entry) in row.iter().enumerate() {
                    let expected = if i == j { fs[i].clone() } else { Poly::zero() };
                    ensure(*entry == expected, || format!("stage {}: entry ({i}, {j})", stage.power))?;
                }
            }
        }
    }
    Ok("pi_0 dims 1 and 2, pi_1 = 0; transitions vanish mod (f)".into())
}

fn canonical_plane() -> GcAlgebra {
    GcAlgebra::new(["q1", "p1", "q2", "p2"].iter().map(|n| Generator::new(*n, 0)).collect())
}

fn random_function(rng: &mut impl Rng, alg: &GcAlgebra) -> Poly {
    let mut p = Poly::zero();
    for _ in 0..4 {
        let mut e = vec![0u32; alg.ngens()];
        for _ in 0..rng.gen_range(1..=2) {
            e[rng.gen_range(0..alg.ngens())] += 1;
        }
        p.add_term(Monomial::from_exponents(e), q(rng.gen_range(1..=4)));
    }
    p
}

pub fn operad_layer() -> Outcome {
    let op = lift(rees_bd1(4), "rees")?;
    let check = lift(check_rees(&op), "rees")?;
    passes(&check.report, "Rees checks")?;
    ensure(check.dims[2] == 2 && check.dims[3] == 6, || format!("dims {:?}", check.dims))?;
    ensure(check.weight_distribution[3] == vec![1, 3, 2], || format!("weights {:?}", check.weight_distribution[3]))?;

    let mut rng = fixtures::rng(808);
    let plane = canonical_plane();
    let zero = Q::zero();
    let one = Q::one();
    // arity-3 basis evaluates injectively on functions and on matrices
    let arity3 = lift(op.component(3), "component")?;
    let probes: Vec<Vec<Poly>> = (0..3).map(|_| (0..3).map(|_| random_function(&mut rng, &plane)).collect()).collect();
    let mats: Vec<Vec<Matrix>> = (0..3).map(|_| (0..3).map(|_| random_matrix(&mut rng, 3)).collect()).collect();
    let mut rows_p = Vec::new();
    let mut rows_a = Vec::new();
    for w in &arity3.basis {
        let evals: Vec<Poly> = probes.iter().map(|f| eval_poisson(&plane, &w.0, f)).collect();
        rows_p.push(evals);
        rows_a.push(mats.iter().flat_map(|m| eval_pbw(&w.0, m).into_iter().flatten()).collect::<Vec<Q>>());
    }
    let mut index: BTreeMap<(usize, Monomial), usize> = BTreeMap::new();
    for evals in &rows_p {
        for (k, p) in evals.iter().enumerate() {
            for (m, _) in p.terms() {
                let len = index.len();
                index.entry((k, m.clone())).or_insert(len);
            }
        }
    }
    let vectors: Vec<Vec<Q>> = rows_p
        .iter()
        .map(|evals| {
            let mut v = vec![Q::zero(); index.len()];
            for (k, p) in evals.iter().enumerate() {
                for (m, c) in p.terms() {
                    v[index[&(k, m.clone())]] = c.clone();
                }
            }
            v
        })
        .collect();
    ensure(rank_of(&vectors) == 6, || "Poisson evaluation is not injective on arity 3".into())?;
    ensure(rank_of(&rows_a) == 6, || "matrix evaluation is not injective on arity 3".into())?;

    let mut composites = 0;
    for a in 1..=3usize {
        for b in 1..=4 - a {
            let (pa, rb) = (lift(op.component(a), "component")?, lift(op.component(b), "component")?);
            let target = lift(op.component(a + b - 1), "component")?;
            let k = a + b - 1;
            let fs: Vec<Poly> = (0..k).map(|_| random_function(&mut rng, &plane)).collect();
            let ms: Vec<Matrix> = (0..k).map(|_| random_matrix(&mut rng, 3)).collect();
            for p in 0..pa.dim() {
                for r in 0..rb.dim() {
                    for i in 0..a {
                        let x = lift(op.compose_basis(a, p, i, b, r), "compose")?;
                        composites += 1;
                        let name = || format!("{} o{} {}", pa.basis[p].label(), i + 1, rb.basis[r].label());

                        let inner = eval_poisson(&plane, &rb.basis[r].0, &fs[i..i + b]);
                        let outer_inputs: Vec<Poly> = fs[..i].iter().cloned().chain([inner]).chain(fs[i + b..].iter().cloned()).collect();
                        let direct = eval_poisson(&plane, &pa.basis[p].0, &outer_inputs);
                        let classical = specialize(&x, target.dim(), &zero);
                        let expanded = target.basis.iter().zip(&classical).fold(Poly::zero(), |acc, (w, c)| acc.add(&eval_poisson(&plane, &w.0, &fs).scale(c)));
                        ensure(expanded == direct, || format!("hbar = 0 disagrees with P_1 on {}", name()))?;

                        let inner = eval_pbw(&rb.basis[r].0, &ms[i..i + b]);
                        let outer_inputs: Vec<Matrix> = ms[..i].iter().cloned().chain([inner]).chain(ms[i + b..].iter().cloned()).collect();
                        let direct = eval_pbw(&pa.basis[p].0, &outer_inputs);
                        let quantum = specialize(&x, target.dim(), &one);
                        let n = ms[0].len();
                        let expanded = target
                            .basis
                            .iter()
                            .zip(&quantum)
                            .fold(vec![vec![Q::zero(); n]; n], |acc, (w, c)| mat_add(&acc, &eval_pbw(&w.0, &ms), c));
                        ensure(expanded == direct, || format!("hbar = 1 disagrees with As on {}", name()))?;
                    }
                }
            }
        }
    }

    // (x o_1 y) o_1 z = x o_1 (y o_1 z) through an arity-3 intermediate
    let two = lift(op.component(2), "component")?.dim();
    for p in 0..two {
        for r in 0..two {
            for s in 0..two {
                let (bp, br, bs) = (op.basis_element(p), op.basis_element(r), op.basis_element(s));
                let left = lift(op.compose(2, &bp, 0, 2, &br).and_then(|x| op.compose(3, &x, 0, 2, &bs)), "compose")?;
                let right = lift(op.compose(2, &br, 0, 2, &bs).and_then(|y| op.compose(2, &bp, 0, 3, &y)), "compose")?;
                ensure(left == right, || format!("associativity fails on ({p}, {r}, {s})"))?;
            }
        }
    }

    passes(&bd0_check().report, "BD_0")?;
    for n in 0..=3 {
        let a = lift(arnold_algebra(n, 3), "arnold")?;
        let expected: Vec<usize> = arnold_series(3).into_iter().chain([0]).collect();
        ensure(a.dims() == expected, || format!("Arnold(3), n = {n}: {:?}", a.dims()))?;
        ensure(expected == vec![1, 3, 2, 0], || "product formula".into())?;
        ensure(a.standard_basis_certified(), || format!("Arnold basis, n = {n}"))?;
    }

    weyl_checks(&mut rng)?;
    Ok(format!("dims 2, 6 with weights (1,3,2); {composites} composites match P_1 and As; BD_0, Arnold and Weyl pass"))
}

fn weyl_checks(rng: &mut impl Rng) -> Result<(), String> {
    for n in 0..=3 {
        for d1 in -1..=2 {
            let b = FreeCdga::new(vec![Generator::new("u", d1), Generator::new("v", n - d1)], vec![Poly::zero(); 2]).map_err(|e| e.to_string())?;
            let alg = b.algebra();
            let pol = polyvectors(&b, n + 1);
            let naive = NaiveSchouten::new(&pol);
            let pairing = vec![vec![Q::zero(), q(rng.gen_range(1..=4))], vec![q(-rng.gen_range(1..=4)), Q::zero()]];
            let zero = vec![vec![Q::zero(); 2]; 2];
            let pi = pairing_bivector(&pol, &pairing, n);
            let samples: Vec<Poly> =
                [alg.gen(0), alg.gen(1), alg.mul(&alg.gen(0), &alg.gen(1)), alg.mul(&alg.pow(&alg.gen(0), 2), &alg.gen(1))]
                    .into_iter()
                    .filter(|p| !p.is_zero())
                    .collect();
            for x in &samples {
                for y in &samples {
                    let flat = lift(weyl_structure_map(alg, &zero, n, &[x.clone(), y.clone(), x.clone()]), "weyl")?;
                    let product = alg.mul_all([x, y, x]);
                    let expected_terms = usize::from(!product.is_zero());
                    ensure(flat.terms.len() == expected_terms && flat.unit_coefficient() == product, || "t = 0 is not the product".into())?;
                    let w = lift(weyl_structure_map(alg, &pairing, n, &[x.clone(), y.clone()]), "weyl")?;
                    ensure(w.unit_coefficient() == alg.mul(x, y), || "unit coefficient".into())?;
                    let dx = alg.bidegree(x).map(|b| b.0).unwrap_or(0);
                    let expected = naive
                        .bracket(&naive.bracket(&pi, &pol.embed(x)), &pol.embed(y))
                        .scale(&koszul_sign(n + 1, dx * d1));
                    let got = lift(w.generator_coefficient(0, 1), "a12")?.padded(pol.algebra().ngens());
                    ensure(got == expected, || format!("a12 coefficient, n = {n}, |u| = {d1}: {} vs {}", pol.fmt(&got), pol.fmt(&expected)))?;
                }
            }
        }
    }
    Ok(())
}

pub fn tate_comparison() -> Outcome {
    let mut rng = fixtures::rng(909);
    let mut stages = 0;
    for case in 0..6 {
        let e = fixtures::random_mixed_complex(&mut rng, 3);
        let real = realization(&e, 3);
        for stage in 0..=3 {
            let t = tate_realization(&e, stage, 3);
            ensure(lift(is_quasi_isomorphism(&t.comparison, &real, &t.complex), "tate")?, || format!("case {case}, stage {stage}"))?;
            stages += 1;
        }
    }
    let e = unit_at(-1);
    let real = lift(realization(&e, 3).homology_dims(), "realization")?;
    let tate = lift(tate_realization(&e, 1, 3).complex.homology_dims(), "tate")?;
    ensure(real.is_empty(), || format!("standard realization of k(-1): {real:?}"))?;
    ensure(tate == BTreeMap::from([(0, 1)]), || format!("stage-1 Tate realization of k(-1): {tate:?}"))?;
    Ok(format!("{stages} comparison maps are quasi-isomorphisms; k(-1) seen only by Tate"))
}
