//! Strict comparison between shifted Poisson and shifted symplectic data:
//! the map `φ_π`, dualization both ways, strictification of closed 2-forms
//! and leading-term extraction for Maurer–Cartan towers.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exactlin::{q, solve_linear, SparseMatrix, Q};
use crate::freecdga::{de_rham, ClosedFormTower, DeRhamAlgebra, FreeCdga, GcAlgebra, Monomial, Poly, Window};
use crate::gradedmixed::weight_band;
use crate::polyvec::{
    check_strict_poisson, mc_check, nondegeneracy, polyvectors, EvaluationPoint, MaurerCartanTower, PolyvectorAlgebra,
};
use crate::report::Report;

fn degree_blocks_invertible(theta: &SparseMatrix, degrees: &[i32], n: i32) -> bool {
    let mut ds = degrees.to_vec();
    ds.sort();
    ds.dedup();
    ds.iter().all(|&k| {
        let rows: Vec<usize> = (0..degrees.len()).filter(|&i| degrees[i] == k).collect();
        let cols: Vec<usize> = (0..degrees.len()).filter(|&j| degrees[j] == n - k).collect();
        rows.len() == cols.len() && theta.submatrix(&rows, &cols).is_invertible()
    })
}

fn involves_base(p: &Poly, nb: usize) -> bool {
    p.terms().any(|(m, _)| m.exponents()[..nb].iter().any(|&e| e > 0))
}

/// Strict 2-form `ω` on `B` of degree n, with its pairing
/// `Θ_ij = ∂⃗_{dg_j} ∂⃗_{dg_i} ω` evaluated at the augmentation.
#[derive(Clone, Debug)]
pub struct SymplecticForm {
    pub dr: DeRhamAlgebra,
    pub n: i32,
    pub omega: Poly,
    pub theta: SparseMatrix,
}

fn form_pairing(dr: &DeRhamAlgebra, omega: &Poly) -> SparseMatrix {
    let alg = dr.algebra();
    let nb = dr.base.ngens();
    let mut trip = Vec::new();
    for i in 0..nb {
        let Some(di) = dr.dg_index[i] else { continue };
        let inner = alg.left_partial(di, omega);
        for j in 0..nb {
            let Some(dj) = dr.dg_index[j] else { continue };
            trip.push((i, j, alg.constant_term(&alg.left_partial(dj, &inner))));
        }
    }
    SparseMatrix::from_triplets(nb, nb, trip)
}

impl SymplecticForm {
    pub fn new(b: &FreeCdga, n: i32, omega: Poly) -> Self {
        let dr = de_rham(b);
        let theta = form_pairing(&dr, &omega);
        Self { dr, n, omega, theta }
    }

    pub fn is_nondegenerate(&self) -> bool {
        let degrees: Vec<i32> = self.dr.base.generators().iter().map(|g| g.degree).collect();
        degree_blocks_invertible(&self.theta, &degrees, self.n)
    }

    pub fn validate(&self) -> Report {
        let m = &self.dr.mixed;
        let alg = &m.alg;
        let mut r = Report::new();
        let ok = self.omega.is_zero() || alg.is_homogeneous_of(&self.omega, self.n + 2, 2);
        r.record(format!("omega has weight 2 and degree {}", self.n + 2), ok, || alg.fmt_poly(&self.omega));
        let d = m.apply_d(&self.omega);
        r.record("d omega = 0", d.is_zero(), || alg.fmt_poly(&d));
        let e = m.apply_eps(&self.omega);
        r.record("eps omega = 0", e.is_zero(), || alg.fmt_poly(&e));
        r.record("Theta invertible at the augmentation", self.is_nondegenerate(), || format!("{:?}", self.theta));
        r
    }
}

/// Finds the combination of `candidates` whose pairing matrix equals `target`.
fn solve_for_pairing(
    candidates: &[Monomial],
    pairing: impl Fn(&Poly) -> SparseMatrix,
    target: &SparseMatrix,
) -> Result<Poly> {
    let size = target.rows() * target.cols();
    let mut trip = Vec::new();
    for (col, m) in candidates.iter().enumerate() {
        let p = pairing(&Poly::from_monomial(m.clone(), q(1)));
        for (i, j, c) in p.entries() {
            trip.push((i * target.cols() + j, col, c.clone()));
        }
    }
    let mut rhs = vec![Q::zero(); size];
    for (i, j, c) in target.entries() {
        rhs[i * target.cols() + j] = c.clone();
    }
    let sol = solve_linear(&SparseMatrix::from_triplets(size, candidates.len(), trip), &rhs)?;
    Ok(Poly::from_coordinates(candidates, &sol.particular))
}

fn quadratic_monomials(alg: &GcAlgebra, gens: &[usize], degree: i32) -> Vec<Monomial> {
    let n = alg.ngens();
    let mut out = Vec::new();
    for (a, &i) in gens.iter().enumerate() {
        for &j in &gens[a..] {
            let mut e = vec![0u32; n];
            e[i] += 1;
            e[j] += 1;
            let m = Monomial::from_exponents(e);
            if (i != j || !alg.generators()[i].is_odd()) && alg.mono_degree(&m) == degree {
                out.push(m);
            }
        }
    }
    out
}

/// Constant non-degenerate strict `π` to the form with `Θ_ω = Θ_π^{-1}`.
pub fn poisson_to_form(pol: &PolyvectorAlgebra, pi: &Poly) -> Result<SymplecticForm> {
    let n = pol.shift() - 1;
    let strict = check_strict_poisson(pol, pi)?;
    if let Some(f) = strict.report.first_failure() {
        return Err(Error::Invalid(format!("not a strict Poisson structure: {}", f.name)));
    }
    let nd = nondegeneracy(pol, pi, &EvaluationPoint::Augmentation)?;
    if !nd.nondegenerate {
        return Err(Error::Degenerate(format!("Theta_pi = {:?}", nd.theta)));
    }
    if involves_base(pi, pol.base_rank()) {
        return Err(Error::Invalid("leading coefficient matrix is not constant".into()));
    }
    let dr = de_rham(pol.base());
    let dgs: Vec<usize> = dr.dg_index.iter().flatten().copied().collect();
    let candidates = quadratic_monomials(dr.algebra(), &dgs, n + 2);
    let target = nd.theta.inverse()?;
    let omega = solve_for_pairing(&candidates, |p| form_pairing(&dr, p), &target)?;
    let form = SymplecticForm { theta: form_pairing(&dr, &omega), dr, n, omega };
    if let Some(f) = form.validate().first_failure() {
        return Err(Error::Invalid(format!("dual form fails {}: {}", f.name, f.witness)));
    }
    Ok(form)
}

/// Constant non-degenerate strict form to `π ∈ Pol(B, n+1)` with
/// `Θ_π = Θ_ω^{-1}`.
pub fn symplectic_to_poisson(form: &SymplecticForm) -> Result<(PolyvectorAlgebra, Poly)> {
    if !form.is_nondegenerate() {
        return Err(Error::Degenerate(format!("Theta_omega = {:?}", form.theta)));
    }
    if let Some(f) = form.validate().first_failure() {
        return Err(Error::Invalid(format!("{}: {}", f.name, f.witness)));
    }
    let nb = form.dr.base.ngens();
    if involves_base(&form.omega, nb) {
        return Err(Error::Invalid("form coefficients are not constant".into()));
    }
    let pol = polyvectors(&form.dr.base, form.n + 1);
    let vectors: Vec<usize> = (nb..2 * nb).collect();
    let candidates = quadratic_monomials(pol.algebra(), &vectors, form.n + 2);
    let target = form.theta.inverse()?;
    let pairing = |p: &Poly| nondegeneracy(&pol, p, &EvaluationPoint::Augmentation).map(|nd| nd.theta);
    let pi = solve_for_pairing(&candidates, |p| pairing(p).expect("augmentation exists"), &target)?;
    Ok((pol, pi))
}

/// `φ_π : DR(B) → Pol(B, n+1)`, `g ↦ g`, `dg ↦ [π, g]`.
#[derive(Clone, Debug)]
pub struct PhiPi {
    pub dr: DeRhamAlgebra,
    pub pol: PolyvectorAlgebra,
    pub pi: Poly,
    /// Image of every generator of `DR(B)`.
    pub images: Vec<Poly>,
}

impl PhiPi {
    pub fn apply(&self, p: &Poly) -> Poly {
        self.dr.algebra().morphism(self.pol.algebra(), &self.images, p)
    }

    /// `φ ∘ (d + ε) = (d + [π, -]) ∘ φ` on every monomial of the window.
    pub fn chain_map_report(&self, window: &Window) -> Result<Report> {
        let alg = self.dr.algebra();
        let mut r = Report::new();
        let mut bad = None;
        let basis = alg.basis(window)?;
        for m in &basis {
            let p = Poly::from_monomial(m.clone(), q(1));
            let lhs = self.apply(&self.dr.mixed.apply_total(&p));
            let fp = self.apply(&p);
            let rhs = self.pol.differential(&fp).add(&self.pol.bracket(&self.pi, &fp));
            if lhs != rhs {
                bad = Some((m.clone(), lhs.sub(&rhs)));
                break;
            }
        }
        r.record(format!("phi is a chain map on {} monomials", basis.len()), bad.is_none(), || {
            let (m, diff) = bad.clone().unwrap();
            format!("{}: {}", alg.fmt_mono(&m), self.pol.fmt(&diff))
        });
        Ok(r)
    }

    /// Invertibility of `φ` on each (degree, weight) block, counting only
    /// the length of the generators of `B`.
    pub fn isomorphism_report(&self, window: &Window) -> Result<Report> {
        let nb = self.dr.base.ngens();
        let zero_extra = |a: &GcAlgebra| {
            let lens: Vec<i32> = a.generators().iter().enumerate().map(|(i, g)| if i < nb { g.length } else { 0 }).collect();
            a.with_lengths(&lens)
        };
        let src = zero_extra(self.dr.algebra());
        let tgt = zero_extra(self.pol.algebra());
        let dom = src.basis(window)?;
        let cod = tgt.basis(window)?;
        let index: BTreeMap<&Monomial, usize> = cod.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let mut trip = Vec::new();
        for (j, m) in dom.iter().enumerate() {
            let img = self.apply(&Poly::from_monomial(m.clone(), q(1)));
            for (t, c) in img.terms() {
                match index.get(t) {
                    Some(&i) => trip.push((i, j, c.clone())),
                    None if tgt.mono_length(t) > window.max_length => {}
                    None => return Err(Error::WindowTooSmall(format!("image term {} outside the window", tgt.fmt_mono(t)))),
                }
            }
        }
        let matrix = SparseMatrix::from_triplets(cod.len(), dom.len(), trip);
        let mut keys: Vec<(i32, i32)> = dom.iter().map(|m| (src.mono_degree(m), src.mono_weight(m))).collect();
        keys.sort();
        keys.dedup();
        let mut r = Report::new();
        for (deg, wt) in keys {
            let cols: Vec<usize> = (0..dom.len()).filter(|&j| (src.mono_degree(&dom[j]), src.mono_weight(&dom[j])) == (deg, wt)).collect();
            let rows: Vec<usize> = (0..cod.len()).filter(|&i| (tgt.mono_degree(&cod[i]), tgt.mono_weight(&cod[i])) == (deg, wt)).collect();
            let ok = rows.len() == cols.len() && matrix.submatrix(&rows, &cols).is_invertible();
            r.record(format!("phi invertible in degree {deg}, weight {wt}"), ok, || format!("{} -> {}", cols.len(), rows.len()));
        }
        Ok(r)
    }
}

pub fn phi_pi(pol: &PolyvectorAlgebra, pi: &Poly) -> Result<PhiPi> {
    let nd = nondegeneracy(pol, pi, &EvaluationPoint::Augmentation)?;
    if !nd.nondegenerate {
        return Err(Error::Degenerate(format!("Theta_pi = {:?}", nd.theta)));
    }
    let dr = de_rham(pol.base());
    let nb = pol.base_rank();
    let mut images: Vec<Poly> = (0..nb).map(|i| pol.coordinate(i)).collect();
    for i in 0..nb {
        if dr.dg_index[i].is_some() {
            images.push(pol.bracket(pi, &pol.coordinate(i)));
        }
    }
    Ok(PhiPi { dr, pol: pol.clone(), pi: pi.clone(), images })
}

/// Output of strictification: `ω' = ε(η)` with `dη + ε f = 0`, and the
/// homotopy `h` (weights ≥ 2) with `ω - ω' = (d + ε) h` below the weight bound.
#[derive(Clone, Debug)]
pub struct Strictified {
    pub f: Poly,
    pub eta: Poly,
    pub strict: ClosedFormTower,
    pub homotopy: Vec<Poly>,
    pub report: Report,
}

fn component_by_weight(alg: &GcAlgebra, p: &Poly, w: i32) -> Poly {
    p.filter(|m| alg.mono_weight(m) == w)
}

/// Solves `(d + ε) α = ω` in the weights `0..=W` and reads off the strict
/// representative. Homotopies of weight ≥ 2 are only used if no solution
/// with `α` in weights 0 and 1 exists.
pub fn strictify_closed_two_form(omega: &ClosedFormTower) -> Result<Strictified> {
    let dr = &omega.dr;
    let b = &dr.base;
    if !b.is_minimal() {
        return Err(Error::NotMinimal("some d(g) has a constant or linear term".into()));
    }
    if omega.p != 2 {
        return Err(Error::Invalid(format!("expected a 2-form, got p = {}", omega.p)));
    }
    if let Some(f) = omega.validate().first_failure() {
        return Err(Error::Invalid(format!("input tower fails {}: {}", f.name, f.witness)));
    }
    let wmax = omega.wmax();
    let window = Window { max_weight: wmax, ..omega.window };
    let k = omega.n + 2;
    let alg = dr.algebra();
    let complex = dr.mixed.to_complex(&window)?;
    let band = weight_band(&complex, 0, wmax);
    let rows = band.indices_in_degree(k);
    let cols = band.indices_in_degree(k - 1);
    let basis = alg.basis(&window)?;
    let by_label: BTreeMap<String, Monomial> = basis.iter().map(|m| (alg.fmt_mono(m), m.clone())).collect();
    let row_of: BTreeMap<Monomial, usize> = rows.iter().enumerate().map(|(r, &i)| (by_label[&band.labels[i]].clone(), r)).collect();
    let mut rhs = vec![Q::zero(); rows.len()];
    for comp in &omega.components {
        for (m, c) in comp.terms() {
            let r = *row_of.get(m).ok_or_else(|| Error::WindowTooSmall(format!("{} is outside the window", alg.fmt_mono(m))))?;
            rhs[r] = c.clone();
        }
    }
    let block = band.block(k - 1);
    let low: Vec<usize> = (0..cols.len()).filter(|&c| band.weights[cols[c]] <= 1).collect();
    let solve_on = |subset: &[usize]| -> Result<Vec<Q>> {
        let all_rows: Vec<usize> = (0..rows.len()).collect();
        let sol = solve_linear(&block.submatrix(&all_rows, subset), &rhs)?;
        let mut x = vec![Q::zero(); cols.len()];
        for (&c, v) in subset.iter().zip(sol.particular) {
            x[c] = v;
        }
        Ok(x)
    };
    let alpha = match solve_on(&low) {
        Ok(x) => x,
        Err(Error::NoSolution) => {
            let all: Vec<usize> = (0..cols.len()).collect();
            match solve_on(&all) {
                Ok(x) => x,
                Err(Error::NoSolution) => {
                    let h = band.homology(k)?.dimension;
                    return Err(Error::GaugeNotFound(format!(
                        "no primitive in weights 0..={wmax}; H^{k} of the truncated realization has dimension {h}"
                    )));
                }
                Err(e) => return Err(e),
            }
        }
        Err(e) => return Err(e),
    };
    let alpha_poly = Poly::from_terms(
        cols.iter().zip(&alpha).filter(|(_, c)| !c.is_zero()).map(|(&i, c)| (by_label[&band.labels[i]].clone(), c.clone())),
    );
    let parts: Vec<Poly> = (0..=wmax).map(|w| component_by_weight(alg, &alpha_poly, w)).collect();
    let m = &dr.mixed;
    // exact verification, weight by weight below the bound
    for w in 0..=wmax {
        let mut lhs = m.apply_d(&parts[w as usize]);
        if w > 0 {
            lhs = lhs.add(&m.apply_eps(&parts[w as usize - 1]));
        }
        let target = omega.component(w);
        if lhs != target {
            return Err(Error::GaugeNotFound(format!(
                "primitive only holds modulo the length window in weight {w}: residual {}",
                alg.fmt_poly(&lhs.sub(&target))
            )));
        }
    }
    let f = parts[0].clone();
    let eta = parts[1].clone();
    let omega_strict = m.apply_eps(&eta);
    let mut comps = vec![Poly::zero(); omega.components.len()];
    comps[0] = omega_strict;
    let strict = ClosedFormTower::new(dr, 2, omega.n, comps, omega.window);
    let homotopy: Vec<Poly> = parts[2..].to_vec();
    let mut report = Report::new();
    let closure = m.apply_d(&eta).add(&m.apply_eps(&f));
    report.record("d eta + eps f = 0", closure.is_zero(), || alg.fmt_poly(&closure));
    report.extend(strict.validate());
    let mut ok = true;
    for w in 2..=wmax {
        let mut dh = m.apply_d(&homotopy[(w - 2) as usize]);
        if w > 2 {
            dh = dh.add(&m.apply_eps(&homotopy[(w - 3) as usize]));
        }
        ok &= dh == omega.component(w).sub(&strict.component(w));
    }
    report.record("omega - omega' = (d + eps) h below the weight bound", ok, || "homotopy mismatch".into());
    Ok(Strictified { f, eta, strict, homotopy, report })
}

/// Whether two closed p-form towers of the same shape define the same class.
pub fn same_closed_class(a: &ClosedFormTower, b: &ClosedFormTower) -> Result<bool> {
    if (a.p, a.n, a.wmax()) != (b.p, b.n, b.wmax()) {
        return Err(Error::DimensionMismatch("towers of different shape".into()));
    }
    let dr = &a.dr;
    let alg = dr.algebra();
    let window = Window { max_weight: a.wmax(), ..a.window };
    let complex = dr.mixed.to_complex(&window)?;
    let band = weight_band(&complex, a.p, a.wmax());
    let k = a.n + a.p;
    let rows = band.indices_in_degree(k);
    let pos: BTreeMap<&str, usize> = rows.iter().enumerate().map(|(r, &i)| (band.labels[i].as_str(), r)).collect();
    let mut rhs = vec![Q::zero(); rows.len()];
    for w in a.p..=a.wmax() {
        for (m, c) in a.component(w).sub(&b.component(w)).terms() {
            let label = alg.fmt_mono(m);
            let r = *pos.get(label.as_str()).ok_or_else(|| Error::WindowTooSmall(format!("{label} is outside the window")))?;
            rhs[r] = c.clone();
        }
    }
    match solve_linear(&band.block(k - 1), &rhs) {
        Ok(_) => Ok(true),
        Err(Error::NoSolution) => Ok(false),
        Err(e) => Err(e),
    }
}

/// Constant part `q` of `p_0` and the remainder tower `π' = π - q`.
#[derive(Clone, Debug)]
pub struct DarbouxOutcome {
    pub q: Poly,
    pub remainder: Vec<Poly>,
    pub report: Report,
}

/// Checks `d π' + [q, π'] + ½ [π', π'] = 0` weight by weight:
/// `d p'_{i+1} + [q, p'_i] + ½ Σ_{a+b=i} [p'_a, p'_b] = 0`.
pub fn darboux_leading_term(pol: &PolyvectorAlgebra, tower: &MaurerCartanTower) -> Result<DarbouxOutcome> {
    let p0 = tower.component(0);
    let nd = nondegeneracy(pol, &p0, &EvaluationPoint::Augmentation)?;
    if !nd.nondegenerate {
        return Err(Error::Degenerate(format!("Theta = {:?}", nd.theta)));
    }
    let nb = pol.base_rank();
    let q0 = p0.filter(|m| m.exponents()[..nb].iter().all(|&e| e == 0));
    let mut remainder = tower.components.clone();
    remainder[0] = p0.sub(&q0);
    let mut report = Report::new();
    report.extend(mc_check(pol, tower)?.report);
    let dq = pol.differential(&q0);
    report.record("d q = 0", dq.is_zero(), || pol.fmt(&dq));
    let qq = pol.bracket(&q0, &q0);
    report.record("[q, q] = 0", qq.is_zero(), || pol.fmt(&qq));
    let part = |i: i32| -> Poly { usize::try_from(i).ok().and_then(|i| remainder.get(i).cloned()).unwrap_or_else(Poly::zero) };
    let top = 2 * tower.components.len().max(tower.bound) as i32;
    for i in -1..=top {
        let mut res = pol.differential(&part(i + 1)).add(&pol.bracket(&q0, &part(i)));
        for a in 0..=i.max(-1) {
            res = res.add(&pol.bracket(&part(a), &part(i - a)).scale(&crate::exactlin::qr(1, 2)));
        }
        let name = format!("rewritten MC equation i = {i}");
        if res.is_zero() {
            report.pass(name);
        } else if i + 1 < tower.bound as i32 {
            report.fail(name, pol.fmt(&res));
        } else {
            report.inconclusive(name, format!("beyond truncation bound: {}", pol.fmt(&res)));
        }
    }
    Ok(DarbouxOutcome { q: q0, remainder, report })
}
