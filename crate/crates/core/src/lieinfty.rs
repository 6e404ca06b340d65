//! Lie and L∞ algebras, Chevalley–Eilenberg mixed cdgas, weak mixed
//! structures and invariant tensors.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactlin::{q, solve_linear, SparseMatrix, Q};
use crate::freecdga::{FreeCdga, GcAlgebra, Generator, MixedCdga, Monomial, Poly, Window};
use crate::polyvec::{mc_check, polyvectors, MaurerCartanTower};
use crate::report::Report;
use num_traits::Zero;

/// Finite-dimensional Lie algebra: `[e_i, e_j] = Σ_k c[i][j][k] e_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieAlgebra {
    pub dim: usize,
    pub c: Vec<Vec<Vec<Q>>>,
}

impl LieAlgebra {
    pub fn zero(dim: usize) -> Self {
        Self { dim, c: vec![vec![vec![Q::zero(); dim]; dim]; dim] }
    }

    pub fn abelian(dim: usize) -> Self {
        Self::zero(dim)
    }

    /// Sets `[e_i, e_j] = v` and `[e_j, e_i] = -v`.
    pub fn set_bracket(&mut self, i: usize, j: usize, v: &[Q]) {
        self.c[i][j] = v.to_vec();
        self.c[j][i] = v.iter().map(|x| -x).collect();
    }

    /// Basis (e, f, h): `[e,f] = h`, `[h,e] = 2e`, `[h,f] = -2f`.
    pub fn sl2() -> Self {
        let mut g = Self::zero(3);
        g.set_bracket(0, 1, &[q(0), q(0), q(1)]);
        g.set_bracket(2, 0, &[q(2), q(0), q(0)]);
        g.set_bracket(2, 1, &[q(0), q(-2), q(0)]);
        g
    }

    /// `[e_0, e_1] = e_1`.
    pub fn nonabelian2() -> Self {
        let mut g = Self::zero(2);
        g.set_bracket(0, 1, &[q(0), q(1)]);
        g
    }

    pub fn bracket(&self, u: &[Q], v: &[Q]) -> Vec<Q> {
        let mut out = vec![Q::zero(); self.dim];
        for (i, a) in u.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, b) in v.iter().enumerate().filter(|(_, b)| !b.is_zero()) {
                for (k, c) in self.c[i][j].iter().enumerate() {
                    if !c.is_zero() {
                        out[k] += a * b * c;
                    }
                }
            }
        }
        out
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Q> {
        let mut v = vec![Q::zero(); self.dim];
        v[i] = q(1);
        v
    }

    /// Structure constants after the change of basis `e'_i = Σ_k p[k][i] e_k`
    /// (columns of `p` are the new basis vectors).
    pub fn change_basis(&self, p: &SparseMatrix) -> Result<Self> {
        let inv = p.inverse()?;
        let mut g = Self::zero(self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                let b = self.bracket(&p.column(i), &p.column(j));
                g.c[i][j] = inv.mul_vec(&b);
            }
        }
        Ok(g)
    }
}

/// Antisymmetry and Jacobi, with the first offending index pair or triple.
pub fn validate_lie(g: &LieAlgebra) -> Report {
    let mut report = Report::new();
    let mut anti = None;
    'outer: for i in 0..g.dim {
        for j in 0..g.dim {
            if (0..g.dim).any(|k| g.c[i][j][k] != -g.c[j][i][k].clone()) {
                anti = Some((i, j));
                break 'outer;
            }
        }
    }
    report.record("antisymmetry", anti.is_none(), || format!("[e{}, e{}]", anti.unwrap().0, anti.unwrap().1));
    let mut jac = None;
    'jac: for i in 0..g.dim {
        for j in i + 1..g.dim {
            for k in j + 1..g.dim {
                let (a, b, c) = (g.basis_vector(i), g.basis_vector(j), g.basis_vector(k));
                let terms = [
                    g.bracket(&a, &g.bracket(&b, &c)),
                    g.bracket(&b, &g.bracket(&c, &a)),
                    g.bracket(&c, &g.bracket(&a, &b)),
                ];
                let sum: Vec<Q> = (0..g.dim).map(|m| terms.iter().map(|t| t[m].clone()).sum()).collect();
                if sum.iter().any(|x| !x.is_zero()) {
                    jac = Some((i, j, k, sum));
                    break 'jac;
                }
            }
        }
    }
    report.record("Jacobi", jac.is_none(), || {
        let (i, j, k, s) = jac.clone().unwrap();
        format!("(e{i}, e{j}, e{k}) -> {}", s.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", "))
    });
    report
}

/// Generators `θ^k` of degree 1 and weight 1 with `ε(θ^k) = -Σ_{i<j} c_ij^k θ^i θ^j`.
pub fn ce(g: &LieAlgebra) -> MixedCdga {
    let gens: Vec<Generator> = (0..g.dim).map(|k| Generator::new(format!("t{}", k + 1), 1).with_weight(1)).collect();
    let alg = GcAlgebra::new(gens);
    let eps = (0..g.dim)
        .map(|k| {
            let mut p = Poly::zero();
            for i in 0..g.dim {
                for j in i + 1..g.dim {
                    let c = &g.c[i][j][k];
                    if !c.is_zero() {
                        p = p.add(&alg.mul(&alg.gen(i), &alg.gen(j)).scale(&-c.clone()));
                    }
                }
            }
            p
        })
        .collect();
    MixedCdga { d: vec![Poly::zero(); g.dim], eps, alg }
}

/// The Chevalley–Eilenberg cdga with `d_CE` as its differential (weight 0).
pub fn ce_cdga(g: &LieAlgebra) -> FreeCdga {
    let m = ce(g);
    let gens = m.alg.generators().iter().map(|x| Generator::new(x.name.clone(), 1)).collect();
    let alg = GcAlgebra::new(gens);
    FreeCdga::from_algebra(alg, m.eps).expect("same generator count")
}

/// Reads a Lie algebra off a strict mixed structure on `Sym(V∨[-1])`.
pub fn lie_from_mixed(b: &MixedCdga) -> Result<LieAlgebra> {
    let alg = &b.alg;
    let dim = alg.ngens();
    if let Some(g) = alg.generators().iter().find(|g| g.degree != 1 || g.weight != 1) {
        return Err(Error::NotFreeOnV(format!("generator {} has degree {} and weight {}", g.name, g.degree, g.weight)));
    }
    if b.d.iter().any(|p| !p.is_zero()) {
        return Err(Error::NotFreeOnV("internal differential is nonzero".into()));
    }
    let mut g = LieAlgebra::zero(dim);
    for (k, e) in b.eps.iter().enumerate() {
        for (m, c) in e.terms() {
            let idx: Vec<usize> = (0..dim).filter(|&i| m.exponent(i) > 0).collect();
            if m.total() != 2 || idx.len() != 2 {
                return Err(Error::NotFreeOnV(format!("eps(t{}) has non-quadratic term {}", k + 1, alg.fmt_mono(m))));
            }
            let (i, j) = (idx[0], idx[1]);
            g.c[i][j][k] = -c.clone();
            g.c[j][i][k] = c.clone();
        }
    }
    let r = validate_lie(&g);
    if let Some(f) = r.first_failure() {
        return Err(Error::Invalid(format!("{}: {}", f.name, f.witness)));
    }
    Ok(g)
}

/// `ε_i` raises weight by `i+1` and degree by 1, for `i < eps.len()`; the
/// components beyond `bound` are unknown.
#[derive(Clone, Debug)]
pub struct WeakMixedStructure {
    pub alg: GcAlgebra,
    pub d: Vec<Poly>,
    pub eps: Vec<Vec<Poly>>,
    pub bound: usize,
}

impl WeakMixedStructure {
    pub fn new(alg: GcAlgebra, d: Vec<Poly>, eps: Vec<Vec<Poly>>) -> Self {
        let bound = eps.len();
        Self { alg, d, eps, bound }
    }

    pub fn strict(m: &MixedCdga) -> Self {
        Self::new(m.alg.clone(), m.d.clone(), vec![m.eps.clone()])
    }

    fn apply(&self, images: Option<&Vec<Poly>>, p: &Poly) -> Poly {
        match images {
            Some(im) => self.alg.derivation(im, 1, p),
            None => Poly::zero(),
        }
    }

    pub fn apply_d(&self, p: &Poly) -> Poly {
        self.alg.derivation(&self.d, 1, p)
    }

    pub fn apply_eps(&self, i: usize, p: &Poly) -> Poly {
        self.apply(self.eps.get(i), p)
    }

    /// `[d, ε_{i+1}] + Σ_{a+b=i} ε_a ε_b` on the generator `z`.
    pub fn equation_on(&self, i: i32, z: usize) -> Poly {
        let g = self.alg.gen(z);
        let mut out = Poly::zero();
        if i >= -1 {
            let e = (i + 1) as usize;
            out = self.apply_d(&self.apply_eps(e, &g)).add(&self.apply_eps(e, &self.apply_d(&g)));
        }
        for a in 0..=i.max(-1) {
            out = out.add(&self.apply_eps(a as usize, &self.apply_eps((i - a) as usize, &g)));
        }
        out
    }
}

/// All the equations as derivations, checked on generators; `i = -2` is `d² = 0`.
pub fn weak_mixed_validate(w: &WeakMixedStructure) -> Report {
    let alg = &w.alg;
    let mut report = Report::new();
    for (i, comp) in w.eps.iter().enumerate() {
        for (z, img) in comp.iter().enumerate() {
            let g = &alg.generators()[z];
            let ok = img.is_zero() || alg.is_homogeneous_of(img, g.degree + 1, g.weight + i as i32 + 1);
            report.record(format!("eps_{i}({}) bidegree", g.name), ok, || alg.fmt_poly(img));
        }
    }
    for z in 0..alg.ngens() {
        let g = alg.gen(z);
        let dd = w.apply_d(&w.apply_d(&g));
        report.record(format!("d^2({}) = 0", alg.generators()[z].name), dd.is_zero(), || alg.fmt_poly(&dd));
    }
    let top = 2 * w.eps.len().max(w.bound) as i32;
    for i in -1..=top {
        let mut residual = None;
        for z in 0..alg.ngens() {
            let r = w.equation_on(i, z);
            if !r.is_zero() {
                residual = Some(format!("on {}: {}", alg.generators()[z].name, alg.fmt_poly(&r)));
                break;
            }
        }
        let name = format!("weak mixed equation i = {i}");
        match residual {
            None => report.pass(name),
            Some(r) if i + 1 < w.bound as i32 => report.fail(name, r),
            Some(r) => report.inconclusive(name, format!("beyond truncation bound {}: {r}", w.bound)),
        }
    }
    report
}

/// Solves equation `i` for `ε_{i+1}` on generators, searching among the
/// monomials of the window; `NoSolution` if the obstruction is nonzero.
pub fn solve_next(w: &WeakMixedStructure, i: usize, window: &Window) -> Result<Vec<Poly>> {
    let alg = &w.alg;
    let n = alg.ngens();
    let target = i + 1;
    let mut trial = w.clone();
    trial.eps.truncate(target);
    trial.eps.resize(target + 1, vec![Poly::zero(); n]);
    // unknowns: (generator z, monomial m) for ε_{i+1}(z) = m
    let mut unknowns: Vec<(usize, Monomial)> = Vec::new();
    for (z, g) in alg.generators().iter().enumerate() {
        let (deg, wt) = (g.degree + 1, g.weight + target as i32 + 1);
        for m in alg.basis_where(window, |m| alg.mono_degree(m) == deg && alg.mono_weight(m) == wt)? {
            unknowns.push((z, m));
        }
    }
    let mut rows: std::collections::BTreeMap<(usize, Monomial), usize> = Default::default();
    let mut trip = Vec::new();
    for (col, (z, m)) in unknowns.iter().enumerate() {
        let mut images = vec![Poly::zero(); n];
        images[*z] = Poly::from_monomial(m.clone(), q(1));
        let probe = WeakMixedStructure { alg: alg.clone(), d: w.d.clone(), eps: vec![images.clone()], bound: 1 };
        for y in 0..n {
            let g = alg.gen(y);
            let v = probe.apply_d(&probe.apply_eps(0, &g)).add(&probe.apply_eps(0, &probe.apply_d(&g)));
            for (t, c) in v.terms() {
                let len = rows.len();
                let r = *rows.entry((y, t.clone())).or_insert(len);
                trip.push((r, col, c.clone()));
            }
        }
    }
    let mut rhs_terms = Vec::new();
    for y in 0..n {
        let v = trial.equation_on(i as i32, y);
        for (t, c) in v.terms() {
            let len = rows.len();
            let r = *rows.entry((y, t.clone())).or_insert(len);
            rhs_terms.push((r, -c.clone()));
        }
    }
    let mut rhs = vec![Q::zero(); rows.len()];
    for (r, c) in rhs_terms {
        rhs[r] = c;
    }
    let matrix = SparseMatrix::from_triplets(rows.len(), unknowns.len(), trip);
    let sol = solve_linear(&matrix, &rhs)?;
    let mut out = vec![Poly::zero(); n];
    for ((z, m), c) in unknowns.iter().zip(&sol.particular) {
        if !c.is_zero() {
            out[*z].add_term(m.clone(), c.clone());
        }
    }
    Ok(out)
}

/// L∞ data dual to `Sym(L)`: generators of weight 1, a linear differential
/// and `ℓ_k : L → Sym^k(L)` of degree +1 for `k ≥ 2`.
#[derive(Clone, Debug)]
pub struct LInftyStructure {
    pub alg: GcAlgebra,
    pub d: Vec<Poly>,
    /// `brackets[k - 2][z] = ℓ_k(z)`.
    pub brackets: Vec<Vec<Poly>>,
}

/// `ε_i` is the derivation extension of `ℓ_{i+2}`.
pub fn linfty_to_weak_mixed(s: &LInftyStructure) -> WeakMixedStructure {
    WeakMixedStructure::new(s.alg.clone(), s.d.clone(), s.brackets.clone())
}

pub fn linfty_validate(s: &LInftyStructure) -> Report {
    let mut report = Report::new();
    for (k, br) in s.brackets.iter().enumerate() {
        for (z, p) in br.iter().enumerate() {
            let ok = p.terms().all(|(m, _)| m.total() as usize == k + 2);
            report.record(format!("l_{}({}) has arity {}", k + 2, s.alg.generators()[z].name, k + 2), ok, || s.alg.fmt_poly(p));
        }
    }
    report.extend(weak_mixed_validate(&linfty_to_weak_mixed(s)));
    report
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TensorKind {
    Sym2,
    Wedge3,
}

/// Coefficients over the basis `e_i e_j` (i ≤ j) of `Sym²`, or
/// `e_i ∧ e_j ∧ e_k` (i < j < k) of `∧³`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantTensor {
    pub kind: TensorKind,
    pub dim: usize,
    pub coeffs: Vec<Q>,
}

fn index_tuples(kind: TensorKind, dim: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    match kind {
        TensorKind::Sym2 => {
            for i in 0..dim {
                for j in i..dim {
                    out.push(vec![i, j]);
                }
            }
        }
        TensorKind::Wedge3 => {
            for i in 0..dim {
                for j in i + 1..dim {
                    for k in j + 1..dim {
                        out.push(vec![i, j, k]);
                    }
                }
            }
        }
    }
    out
}

/// Sorts an index tuple into basis position and sign; `None` if it vanishes.
fn normalize(kind: TensorKind, idx: &[usize]) -> Option<(Vec<usize>, i64)> {
    let mut v = idx.to_vec();
    let mut sign = 1;
    for a in 0..v.len() {
        for b in 0..v.len() - 1 - a {
            if v[b] > v[b + 1] {
                v.swap(b, b + 1);
                if kind == TensorKind::Wedge3 {
                    sign = -sign;
                }
            }
        }
    }
    if kind == TensorKind::Wedge3 && v.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((v, sign))
}

/// Matrix of `x ↦ ad_x` on the tensor space, stacked over `x = e_0..e_{n-1}`.
fn action_matrix(g: &LieAlgebra, kind: TensorKind) -> SparseMatrix {
    let basis = index_tuples(kind, g.dim);
    let pos: std::collections::BTreeMap<Vec<usize>, usize> = basis.iter().cloned().enumerate().map(|(i, b)| (b, i)).collect();
    let mut trip = Vec::new();
    for x in 0..g.dim {
        for (col, t) in basis.iter().enumerate() {
            for slot in 0..t.len() {
                for (k, c) in g.c[x][t[slot]].iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    let mut u = t.clone();
                    u[slot] = k;
                    if let Some((u, s)) = normalize(kind, &u) {
                        trip.push((x * basis.len() + pos[&u], col, c * q(s)));
                    }
                }
            }
        }
    }
    SparseMatrix::from_triplets(g.dim * basis.len(), basis.len(), trip)
}

pub fn invariants(g: &LieAlgebra, kind: TensorKind) -> Vec<InvariantTensor> {
    action_matrix(g, kind)
        .kernel_basis()
        .into_iter()
        .map(|coeffs| InvariantTensor { kind, dim: g.dim, coeffs })
        .collect()
}

pub fn is_invariant(g: &LieAlgebra, t: &InvariantTensor) -> bool {
    action_matrix(g, t.kind).mul_vec(&t.coeffs).iter().all(Zero::is_zero)
}

impl InvariantTensor {
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Symmetric matrix `t^{ab}` of a `Sym²` tensor. The monomial `e_i e_j`
    /// is `½(e_i ⊗ e_j + e_j ⊗ e_i)` for i < j, matching the action on
    /// polynomials.
    pub fn symmetric_matrix(&self) -> Vec<Vec<Q>> {
        let mut m = vec![vec![Q::zero(); self.dim]; self.dim];
        for (t, c) in index_tuples(TensorKind::Sym2, self.dim).iter().zip(&self.coeffs) {
            if t[0] == t[1] {
                m[t[0]][t[0]] = c.clone();
            } else {
                let half = c / q(2);
                m[t[0]][t[1]] = half.clone();
                m[t[1]][t[0]] = half;
            }
        }
        m
    }

    /// Component on `e_i ∧ e_j ∧ e_k`, with signs for unsorted indices.
    pub fn wedge_component(&self, idx: [usize; 3]) -> Q {
        let basis = index_tuples(TensorKind::Wedge3, self.dim);
        match normalize(TensorKind::Wedge3, &idx) {
            Some((v, s)) => self.coeffs[basis.iter().position(|b| *b == v).unwrap()].clone() * q(s),
            None => Q::zero(),
        }
    }
}

/// `Z = [t^{12}, t^{23}]`: `Z^{akd} = Σ t^{ab} t^{cd} c_bc^k`, antisymmetrized.
pub fn z_from_t(g: &LieAlgebra, t: &InvariantTensor) -> Result<InvariantTensor> {
    if t.kind != TensorKind::Sym2 || !is_invariant(g, t) {
        return Err(Error::NotInvariant("t is not an invariant symmetric tensor".into()));
    }
    let tm = t.symmetric_matrix();
    let n = g.dim;
    let mut full = vec![vec![vec![Q::zero(); n]; n]; n];
    for a in 0..n {
        for b in 0..n {
            if tm[a][b].is_zero() {
                continue;
            }
            for c in 0..n {
                for d in 0..n {
                    if tm[c][d].is_zero() {
                        continue;
                    }
                    for k in 0..n {
                        let s = &g.c[b][c][k];
                        if !s.is_zero() {
                            full[a][k][d] += &tm[a][b] * &tm[c][d] * s;
                        }
                    }
                }
            }
        }
    }
    let coeffs = index_tuples(TensorKind::Wedge3, n)
        .iter()
        .map(|t| {
            let (i, j, k) = (t[0], t[1], t[2]);
            let perms = [(i, j, k, 1), (j, k, i, 1), (k, i, j, 1), (j, i, k, -1), (i, k, j, -1), (k, j, i, -1)];
            perms.iter().map(|&(a, b, c, s)| full[a][b][c].clone() * q(s)).sum::<Q>() / q(6)
        })
        .collect();
    Ok(InvariantTensor { kind: TensorKind::Wedge3, dim: n, coeffs })
}

/// The weak P₂-structure `(0, Z)` on the Chevalley–Eilenberg cdga, as a
/// Maurer–Cartan tower in `Pol(ce(g), 2)`, next to the direct invariance
/// check of Z.
pub fn semi_strict_check(g: &LieAlgebra, z: &InvariantTensor) -> Result<Report> {
    if z.kind != TensorKind::Wedge3 || z.dim != g.dim {
        return Err(Error::DimensionMismatch("expected a 3-vector on g".into()));
    }
    let b = ce_cdga(g);
    let pol = polyvectors(&b, 2);
    let a = pol.algebra();
    let mut p1 = Poly::zero();
    for (t, c) in index_tuples(TensorKind::Wedge3, g.dim).iter().zip(&z.coeffs) {
        if !c.is_zero() {
            p1 = p1.add(&a.mul_all([&pol.vector(t[0]), &pol.vector(t[1]), &pol.vector(t[2])]).scale(c));
        }
    }
    let tower = MaurerCartanTower::new(1, vec![Poly::zero(), p1, Poly::zero(), Poly::zero()]);
    let mut report = Report::new();
    report.record("Z is g-invariant", is_invariant(g, z), || "ad-action residual nonzero".into());
    report.extend(mc_check(&pol, &tower)?.report);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gradedmixed::{realization, validate_mixed};

    #[test]
    fn sl2_is_valid_and_perturbation_is_not() {
        assert!(validate_lie(&LieAlgebra::sl2()).is_pass());
        let mut g = LieAlgebra::sl2();
        g.c[0][1][0] += q(1);
        g.c[1][0][0] -= q(1);
        let r = validate_lie(&g);
        assert!(!r.is_pass());
        assert!(r.first_failure().unwrap().witness.contains("e0, e1, e2"));
    }

    #[test]
    fn ce_of_sl2() {
        let m = ce(&LieAlgebra::sl2());
        assert!(m.validate().is_pass());
        let c = m.to_complex(&Window::new(3, 3, -1, 4)).unwrap();
        assert!(validate_mixed(&c).unwrap().is_pass());
        let h = realization(&c, 3).homology_dims().unwrap();
        assert_eq!(h.get(&3), Some(&1));
        assert_eq!(h.get(&0), Some(&1));
    }

    #[test]
    fn round_trip_small_algebras() {
        for g in [LieAlgebra::sl2(), LieAlgebra::nonabelian2(), LieAlgebra::abelian(3)] {
            assert_eq!(lie_from_mixed(&ce(&g)).unwrap(), g);
        }
    }

    #[test]
    fn invariant_dimensions_for_sl2() {
        let g = LieAlgebra::sl2();
        assert_eq!(invariants(&g, TensorKind::Sym2).len(), 1);
        assert_eq!(invariants(&g, TensorKind::Wedge3).len(), 1);
    }

    #[test]
    fn z_from_killing_is_invariant() {
        let g = LieAlgebra::sl2();
        let t = invariants(&g, TensorKind::Sym2).remove(0);
        let z = z_from_t(&g, &t).unwrap();
        assert!(!z.is_zero());
        assert!(is_invariant(&g, &z));
        assert!(semi_strict_check(&g, &z).unwrap().is_pass());
        let bad = InvariantTensor { kind: TensorKind::Sym2, dim: 3, coeffs: vec![q(1), q(0), q(0), q(0), q(0), q(0)] };
        assert!(matches!(z_from_t(&g, &bad), Err(Error::NotInvariant(_))));
    }

    #[test]
    fn non_invariant_z_fails_semi_strict() {
        let g = LieAlgebra::nonabelian2();
        let g3 = {
            let mut h = LieAlgebra::zero(3);
            h.set_bracket(0, 1, &[q(0), q(1), q(0)]);
            h
        };
        assert!(validate_lie(&g).is_pass());
        let z = InvariantTensor { kind: TensorKind::Wedge3, dim: 3, coeffs: vec![q(1)] };
        assert!(!is_invariant(&g3, &z));
        assert!(!semi_strict_check(&g3, &z).unwrap().is_pass());
    }
}
