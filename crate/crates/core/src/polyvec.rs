//! Shifted polyvectors `Pol(B, N) = Sym_B(T_B[-N])` with the Schouten
//! bracket, strict and weak shifted Poisson structures, non-degeneracy.

use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactlin::{q, qr, SparseMatrix, Q};
use crate::freecdga::{FreeCdga, GcAlgebra, Generator, Monomial, Poly, Window};
use crate::report::Report;

/// `Pol(B, N)` as a free graded-commutative algebra on the generators
/// `g_i` of `B` followed by `@g_i` of degree `N - |g_i|`, weight 1 and
/// length `-len(g_i)`. The bracket has degree `-N`.
#[derive(Clone, Debug)]
pub struct PolyvectorAlgebra {
    base: FreeCdga,
    shift: i32,
    alg: GcAlgebra,
    nb: usize,
    /// `[δ, z]` for every generator `z`, so that `d = [δ, -]`.
    d_gens: Arc<Vec<Poly>>,
}

/// Element of a specific `Pol(B, N)`, tagged with its shift.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyvectorElement {
    pub shift: i32,
    pub poly: Poly,
}

pub fn polyvectors(b: &FreeCdga, shift: i32) -> PolyvectorAlgebra {
    let nb = b.ngens();
    let mut gens: Vec<Generator> = b.generators().to_vec();
    for g in b.generators() {
        gens.push(
            Generator::new(format!("@{}", g.name), shift - g.degree)
                .with_weight(1 - g.weight)
                .with_internal_weight(-g.internal_weight)
                .with_length(-g.length),
        );
    }
    let alg = GcAlgebra::new(gens);
    let total = alg.ngens();
    let mut pol = PolyvectorAlgebra { base: b.clone(), shift, alg, nb, d_gens: Arc::new(Vec::new()) };
    // δ = Σ d(g_k) @g_k gives [δ, g_j] = d(g_j)
    let delta = (0..nb).fold(Poly::zero(), |acc, k| {
        acc.add(&pol.alg.mul(&b.differential_on_generators()[k].padded(total), &pol.alg.gen(nb + k)))
    });
    let d_gens = (0..total).map(|z| pol.bracket(&delta, &pol.alg.gen(z))).collect();
    pol.d_gens = Arc::new(d_gens);
    pol
}

impl PolyvectorAlgebra {
    pub fn algebra(&self) -> &GcAlgebra {
        &self.alg
    }

    pub fn base(&self) -> &FreeCdga {
        &self.base
    }

    pub fn shift(&self) -> i32 {
        self.shift
    }

    pub fn base_rank(&self) -> usize {
        self.nb
    }

    /// The function `g_i`.
    pub fn coordinate(&self, i: usize) -> Poly {
        self.alg.gen(i)
    }

    /// The vector field `@g_i`.
    pub fn vector(&self, i: usize) -> Poly {
        self.alg.gen(self.nb + i)
    }

    pub fn embed(&self, f: &Poly) -> Poly {
        f.padded(self.alg.ngens())
    }

    pub fn element(&self, poly: Poly) -> PolyvectorElement {
        PolyvectorElement { shift: self.shift, poly }
    }

    /// Polyvector weight (number of `@` factors) of a homogeneous element.
    pub fn weight(&self, p: &Poly) -> Option<i32> {
        self.alg.bidegree(p).map(|(_, w)| w)
    }

    pub fn degree(&self, p: &Poly) -> Option<i32> {
        self.alg.bidegree(p).map(|(d, _)| d)
    }

    fn pairing_sign(&self, i: usize) -> Q {
        // ω(g_i, @g_i) = -(-1)^{|g_i|(N+1)}
        if (self.base.generators()[i].degree * (self.shift + 1)).rem_euclid(2) == 0 {
            q(-1)
        } else {
            q(1)
        }
    }

    /// Schouten bracket `[F, G] = Σ (F ∂⃖_a) ω_ab (∂⃗_b G)` with
    /// `ω(@g_i, g_i) = 1`, so that `[@x, x] = 1`.
    pub fn bracket(&self, f: &Poly, g: &Poly) -> Poly {
        let mut out = Poly::zero();
        for i in 0..self.nb {
            let (gi, xi) = (i, self.nb + i);
            let left = self.alg.right_partial(xi, f);
            if !left.is_zero() {
                let right = self.alg.left_partial(gi, g);
                if !right.is_zero() {
                    out = out.add(&self.alg.mul(&left, &right));
                }
            }
            let left = self.alg.right_partial(gi, f);
            if !left.is_zero() {
                let right = self.alg.left_partial(xi, g);
                if !right.is_zero() {
                    out = out.add(&self.alg.mul(&left, &right).scale(&self.pairing_sign(i)));
                }
            }
        }
        out
    }

    /// Internal differential `[δ, -]` induced by the differential of `B`.
    pub fn differential(&self, p: &Poly) -> Poly {
        self.alg.derivation(&self.d_gens, 1, p)
    }

    /// Brackets `[z_a, z_b]` of all pairs of generators.
    pub fn bracket_table(&self) -> Vec<(String, String, Poly)> {
        let n = self.alg.ngens();
        let mut out = Vec::new();
        for a in 0..n {
            for b in 0..n {
                let v = self.bracket(&self.alg.gen(a), &self.alg.gen(b));
                if !v.is_zero() {
                    out.push((self.alg.generators()[a].name.clone(), self.alg.generators()[b].name.clone(), v));
                }
            }
        }
        out
    }

    /// Monomials of polyvector weight `p` within the window.
    pub fn weight_basis(&self, p: i32, w: &Window) -> Result<Vec<Monomial>> {
        self.alg.basis_where(w, |m| self.alg.mono_weight(m) == p)
    }

    pub fn fmt(&self, p: &Poly) -> String {
        self.alg.fmt_poly(p)
    }
}

/// Bracket of two tagged elements of the same `Pol(B, N)`.
pub fn schouten(pol: &PolyvectorAlgebra, p: &PolyvectorElement, r: &PolyvectorElement) -> Result<PolyvectorElement> {
    for s in [p.shift, r.shift] {
        if s != pol.shift {
            return Err(Error::ShiftMismatch { left: s, right: pol.shift });
        }
    }
    Ok(pol.element(pol.bracket(&p.poly, &r.poly)))
}

/// `{g_i, g_j} = [[π, g_i], g_j]` for a pair of generators of `B`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BracketEntry {
    pub left: String,
    pub right: String,
    pub value: String,
}

#[derive(Clone, Debug)]
pub struct StrictPoissonCheck {
    pub report: Report,
    pub brackets: Vec<BracketEntry>,
}

/// Strict n-shifted Poisson structure: `π ∈ Pol(B, n+1)` of weight 2 and
/// degree n+2 with `dπ = 0` and `[π, π] = 0`.
pub fn check_strict_poisson(pol: &PolyvectorAlgebra, pi: &Poly) -> Result<StrictPoissonCheck> {
    let n = pol.shift - 1;
    if !pi.is_zero() && !pol.alg.is_homogeneous_of(pi, n + 2, 2) {
        return Err(Error::BidegreeError(format!(
            "expected weight 2 and degree {} in Pol(B,{}), got {}",
            n + 2,
            pol.shift,
            pol.fmt(pi)
        )));
    }
    let mut report = Report::new();
    let d_pi = pol.differential(pi);
    report.record("d pi = 0", d_pi.is_zero(), || pol.fmt(&d_pi));
    let pp = pol.bracket(pi, pi);
    report.record("[pi, pi] = 0", pp.is_zero(), || pol.fmt(&pp));
    let mut brackets = Vec::new();
    for i in 0..pol.nb {
        let inner = pol.bracket(pi, &pol.coordinate(i));
        for j in 0..pol.nb {
            let v = pol.bracket(&inner, &pol.coordinate(j));
            if !v.is_zero() {
                brackets.push(BracketEntry {
                    left: pol.base.generators()[i].name.clone(),
                    right: pol.base.generators()[j].name.clone(),
                    value: pol.fmt(&v),
                });
            }
        }
    }
    Ok(StrictPoissonCheck { report, brackets })
}

/// Weak n-shifted Poisson structure: `p_i ∈ Pol(B, n+1)` of degree n+2 and
/// weight i+2. The components `p_0..p_{bound-1}` are known (missing ones
/// are zero); an equation involving a later component is evaluated with it
/// set to zero and cannot be decided.
#[derive(Clone, Debug)]
pub struct MaurerCartanTower {
    pub n: i32,
    pub components: Vec<Poly>,
    pub bound: usize,
}

impl MaurerCartanTower {
    pub fn new(n: i32, components: Vec<Poly>) -> Self {
        let bound = components.len();
        Self { n, components, bound }
    }

    pub fn with_bound(mut self, bound: usize) -> Self {
        self.bound = bound;
        self
    }

    pub fn strict(n: i32, pi: Poly) -> Self {
        Self::new(n, vec![pi])
    }

    pub fn component(&self, i: usize) -> Poly {
        self.components.get(i).cloned().unwrap_or_else(Poly::zero)
    }
}

/// Left side of equation `i ≥ -1`: `d p_{i+1} + ½ Σ_{a+b=i} [p_a, p_b]`.
pub fn mc_equation(pol: &PolyvectorAlgebra, tower: &MaurerCartanTower, i: i32) -> Poly {
    let mut out = pol.differential(&tower.component((i + 1) as usize));
    for a in 0..=i.max(-1) {
        let b = i - a;
        out = out.add(&pol.bracket(&tower.component(a as usize), &tower.component(b as usize)).scale(&qr(1, 2)));
    }
    out
}

#[derive(Clone, Debug)]
pub struct McOutcome {
    pub report: Report,
    /// First decided equation that fails, with its residual.
    pub first_failure: Option<(i32, Poly)>,
}

pub fn mc_check(pol: &PolyvectorAlgebra, tower: &MaurerCartanTower) -> Result<McOutcome> {
    if pol.shift != tower.n + 1 {
        return Err(Error::ShiftMismatch { left: tower.n + 1, right: pol.shift });
    }
    let mut report = Report::new();
    for (i, p) in tower.components.iter().enumerate() {
        let ok = p.is_zero() || pol.alg.is_homogeneous_of(p, tower.n + 2, i as i32 + 2);
        report.record(format!("p_{i} has degree {} and weight {}", tower.n + 2, i + 2), ok, || pol.fmt(p));
    }
    let mut first_failure = None;
    let top = 2 * tower.components.len().max(tower.bound) as i32;
    for i in -1..=top {
        let residual = mc_equation(pol, tower, i);
        let name = format!("MC equation i = {i}");
        if i + 1 < tower.bound as i32 {
            if residual.is_zero() {
                report.pass(name);
            } else {
                if first_failure.is_none() {
                    first_failure = Some((i, residual.clone()));
                }
                report.fail(name, pol.fmt(&residual));
            }
        } else if !residual.is_zero() {
            report.inconclusive(name, format!("beyond truncation bound {}: {}", tower.bound, pol.fmt(&residual)));
        }
    }
    Ok(McOutcome { report, first_failure })
}

/// Solves equation `i` for `p_{i+1}`: `d p_{i+1} = -½ Σ_{a+b=i} [p_a, p_b]`,
/// with `p_{i+1}` searched among the window's monomials of weight `i+3`
/// and degree `n+2`. Returns a particular solution and a kernel basis.
pub fn solve_mc_component(
    pol: &PolyvectorAlgebra,
    tower: &MaurerCartanTower,
    i: usize,
    window: &Window,
) -> Result<(Poly, Vec<Poly>)> {
    let alg = &pol.alg;
    let (deg, wt) = (tower.n + 2, i as i32 + 3);
    let domain = alg.basis_where(window, |m| alg.mono_degree(m) == deg && alg.mono_weight(m) == wt)?;
    let mut truncated = tower.clone();
    truncated.components.truncate(i + 1);
    let rhs_poly = mc_equation(pol, &truncated, i as i32).neg();
    let mut rows: std::collections::BTreeMap<Monomial, usize> = Default::default();
    let mut trip = Vec::new();
    for (col, m) in domain.iter().enumerate() {
        let img = pol.differential(&Poly::from_monomial(m.clone(), q(1)));
        for (t, c) in img.terms() {
            let len = rows.len();
            let r = *rows.entry(t.clone()).or_insert(len);
            trip.push((r, col, c.clone()));
        }
    }
    for (t, _) in rhs_poly.terms() {
        let len = rows.len();
        rows.entry(t.clone()).or_insert(len);
    }
    let mut rhs = vec![Q::from_integer(0.into()); rows.len()];
    for (t, c) in rhs_poly.terms() {
        rhs[rows[t]] = c.clone();
    }
    let sol = crate::exactlin::solve_linear(&SparseMatrix::from_triplets(rows.len(), domain.len(), trip), &rhs)?;
    let kernel = sol.kernel.iter().map(|v| Poly::from_coordinates(&domain, v)).collect();
    Ok((Poly::from_coordinates(&domain, &sol.particular), kernel))
}

/// Where the leading pairing is evaluated.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub enum EvaluationPoint {
    /// All generators set to zero.
    #[default]
    Augmentation,
    /// Degree-0 generators set to these values, the others to zero.
    Point(Vec<Q>),
}

#[derive(Clone, Debug)]
pub struct Nondegeneracy {
    pub nondegenerate: bool,
    /// `Θ_ij`: the value of `[[p_0, g_i], g_j]` at the chosen point.
    pub theta: SparseMatrix,
    /// Degree blocks `(|g_i|, |g_j|, invertible)` pairing the generators.
    pub blocks: Vec<(i32, i32, bool)>,
}

fn evaluate(pol: &PolyvectorAlgebra, p: &Poly, at: &EvaluationPoint) -> Result<Q> {
    match at {
        EvaluationPoint::Augmentation => Ok(pol.alg.constant_term(p)),
        EvaluationPoint::Point(values) => {
            if values.len() != pol.nb {
                return Err(Error::DimensionMismatch(format!("{} values for {} generators", values.len(), pol.nb)));
            }
            let gens = pol.alg.generators();
            let mut total = Q::from_integer(0.into());
            'terms: for (m, c) in p.terms() {
                let mut v = c.clone();
                for (k, &e) in m.exponents().iter().enumerate() {
                    if e == 0 {
                        continue;
                    }
                    if k >= pol.nb || gens[k].degree != 0 {
                        continue 'terms;
                    }
                    for _ in 0..e {
                        v *= &values[k];
                    }
                }
                total += v;
            }
            Ok(total)
        }
    }
}

/// Θ pairs `g_i` (degree k) with `g_j` (degree n-k); it is tested for
/// invertibility block by block.
pub fn nondegeneracy(pol: &PolyvectorAlgebra, p0: &Poly, at: &EvaluationPoint) -> Result<Nondegeneracy> {
    if *at == EvaluationPoint::Augmentation && !pol.base.has_augmentation() {
        return Err(Error::NoAugmentation("d of some generator has a constant term".into()));
    }
    let n = pol.shift - 1;
    let nb = pol.nb;
    let mut trip = Vec::new();
    for i in 0..nb {
        let inner = pol.bracket(p0, &pol.coordinate(i));
        for j in 0..nb {
            let v = evaluate(pol, &pol.bracket(&inner, &pol.coordinate(j)), at)?;
            trip.push((i, j, v));
        }
    }
    let theta = SparseMatrix::from_triplets(nb, nb, trip);
    let degrees: Vec<i32> = pol.base.generators().iter().map(|g| g.degree).collect();
    let mut distinct = degrees.clone();
    distinct.sort();
    distinct.dedup();
    let mut blocks = Vec::new();
    for &k in &distinct {
        let rows: Vec<usize> = (0..nb).filter(|&i| degrees[i] == k).collect();
        let cols: Vec<usize> = (0..nb).filter(|&j| degrees[j] == n - k).collect();
        let ok = rows.len() == cols.len() && theta.submatrix(&rows, &cols).is_invertible();
        blocks.push((k, n - k, ok));
    }
    let nondegenerate = blocks.iter().all(|b| b.2);
    Ok(Nondegeneracy { nondegenerate, theta, blocks })
}
