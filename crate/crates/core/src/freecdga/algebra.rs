//! Free graded-commutative algebras on finitely many bigraded generators.
//!
//! A monomial is an exponent vector in generator order; odd generators
//! appear with exponent at most one. Signs are computed by counting
//! transpositions of odd generators against this order.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactlin::{q, SparseMatrix, Q};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Generator {
    pub name: String,
    /// Cohomological degree.
    pub degree: i32,
    /// Weight (polyvector or form weight); ε-type operators raise it.
    pub weight: i32,
    /// Auxiliary weight, carried through constructions without signs.
    pub internal_weight: i32,
    /// Length used by truncation windows (polynomial filtration).
    pub length: i32,
}

impl Generator {
    pub fn new(name: impl Into<String>, degree: i32) -> Self {
        Self { name: name.into(), degree, weight: 0, internal_weight: 0, length: 1 }
    }

    pub fn with_weight(mut self, weight: i32) -> Self {
        self.weight = weight;
        self
    }

    pub fn with_length(mut self, length: i32) -> Self {
        self.length = length;
        self
    }

    pub fn with_internal_weight(mut self, w: i32) -> Self {
        self.internal_weight = w;
        self
    }

    pub fn is_odd(&self) -> bool {
        self.degree.rem_euclid(2) == 1
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one(ngens: usize) -> Self {
        Monomial(vec![0; ngens])
    }

    pub fn from_exponents(e: Vec<u32>) -> Self {
        Monomial(e)
    }

    pub fn generator(ngens: usize, i: usize) -> Self {
        let mut e = vec![0; ngens];
        e[i] = 1;
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn exponent(&self, i: usize) -> u32 {
        self.0[i]
    }

    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Same monomial in an algebra with `ngens ≥ len` generators, the new
    /// generators appended with exponent zero.
    pub fn padded(&self, ngens: usize) -> Monomial {
        let mut e = self.0.clone();
        e.resize(ngens, 0);
        Monomial(e)
    }

    /// Monomial restricted to the first `ngens` generators.
    pub fn truncated(&self, ngens: usize) -> Monomial {
        Monomial(self.0[..ngens].to_vec())
    }
}

impl Ord for Monomial {
    /// Degree-lexicographic: total exponent first, then lexicographic with
    /// higher powers of earlier generators ranked first.
    fn cmp(&self, other: &Self) -> Ordering {
        self.total().cmp(&other.total()).then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A finite ℚ-linear combination of monomials.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Poly {
    terms: BTreeMap<Monomial, Q>,
}

impl Poly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_monomial(m: Monomial, c: Q) -> Self {
        let mut p = Self::zero();
        p.add_term(m, c);
        p
    }

    pub fn constant(ngens: usize, c: Q) -> Self {
        Self::from_monomial(Monomial::one(ngens), c)
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, Q)>) -> Self {
        let mut p = Self::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: Q) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Q)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &Monomial) -> Q {
        self.terms.get(m).cloned().unwrap_or_else(Q::zero)
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }

    pub fn neg(&self) -> Poly {
        Poly { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }

    pub fn scale(&self, s: &Q) -> Poly {
        if s.is_zero() {
            return Poly::zero();
        }
        Poly { terms: self.terms.iter().map(|(m, c)| (m.clone(), c * s)).collect() }
    }

    /// Keeps the terms satisfying the predicate.
    pub fn filter(&self, mut keep: impl FnMut(&Monomial) -> bool) -> Poly {
        Poly { terms: self.terms.iter().filter(|(m, _)| keep(m)).map(|(m, c)| (m.clone(), c.clone())).collect() }
    }

    /// Coefficient vector against an indexed basis; `None` if a term is
    /// missing from the basis.
    pub fn coordinates(&self, index: &BTreeMap<Monomial, usize>, dim: usize) -> Option<Vec<Q>> {
        let mut v = vec![Q::zero(); dim];
        for (m, c) in &self.terms {
            v[*index.get(m)?] = c.clone();
        }
        Some(v)
    }

    /// Embeds into an algebra with more generators appended.
    pub fn padded(&self, ngens: usize) -> Poly {
        Poly { terms: self.terms.iter().map(|(m, c)| (m.padded(ngens), c.clone())).collect() }
    }

    /// Drops the trailing generators; every term must avoid them.
    pub fn truncated(&self, ngens: usize) -> Poly {
        debug_assert!(self.terms.keys().all(|m| m.0[ngens..].iter().all(|&e| e == 0)));
        Poly { terms: self.terms.iter().map(|(m, c)| (m.truncated(ngens), c.clone())).collect() }
    }

    pub fn from_coordinates(basis: &[Monomial], v: &[Q]) -> Poly {
        Poly::from_terms(basis.iter().cloned().zip(v.iter().cloned()))
    }
}

/// Truncation window for enumerating finite pieces of a free algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Window {
    pub max_length: i32,
    pub max_weight: i32,
    pub min_degree: i32,
    pub max_degree: i32,
}

impl Default for Window {
    fn default() -> Self {
        Self { max_length: 6, max_weight: 6, min_degree: -8, max_degree: 8 }
    }
}

impl Window {
    pub fn new(max_length: i32, max_weight: i32, min_degree: i32, max_degree: i32) -> Self {
        Self { max_length, max_weight, min_degree, max_degree }
    }
}

/// Generator data of a free graded-commutative algebra. Cheap to clone.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GcAlgebra {
    gens: Arc<Vec<Generator>>,
}

fn parity(d: i32) -> u32 {
    d.rem_euclid(2) as u32
}

impl GcAlgebra {
    pub fn new(gens: Vec<Generator>) -> Self {
        Self { gens: Arc::new(gens) }
    }

    pub fn generators(&self) -> &[Generator] {
        &self.gens
    }

    pub fn ngens(&self) -> usize {
        self.gens.len()
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.gens.iter().position(|g| g.name == name)
    }

    /// Same generators with replaced lengths.
    pub fn with_lengths(&self, lengths: &[i32]) -> Self {
        let gens = self.gens.iter().zip(lengths).map(|(g, &l)| g.clone().with_length(l)).collect();
        Self::new(gens)
    }

    pub fn one(&self) -> Poly {
        Poly::constant(self.ngens(), Q::one())
    }

    pub fn constant(&self, c: Q) -> Poly {
        Poly::constant(self.ngens(), c)
    }

    pub fn gen(&self, i: usize) -> Poly {
        Poly::from_monomial(Monomial::generator(self.ngens(), i), Q::one())
    }

    pub fn mono_degree(&self, m: &Monomial) -> i32 {
        m.0.iter().zip(self.gens.iter()).map(|(&e, g)| e as i32 * g.degree).sum()
    }

    pub fn mono_weight(&self, m: &Monomial) -> i32 {
        m.0.iter().zip(self.gens.iter()).map(|(&e, g)| e as i32 * g.weight).sum()
    }

    pub fn mono_internal_weight(&self, m: &Monomial) -> i32 {
        m.0.iter().zip(self.gens.iter()).map(|(&e, g)| e as i32 * g.internal_weight).sum()
    }

    pub fn mono_length(&self, m: &Monomial) -> i32 {
        m.0.iter().zip(self.gens.iter()).map(|(&e, g)| e as i32 * g.length).sum()
    }

    fn mono_parity(&self, m: &Monomial) -> u32 {
        m.0.iter().zip(self.gens.iter()).map(|(&e, g)| e * parity(g.degree)).sum::<u32>() % 2
    }

    /// Common (degree, weight) of all terms; `None` for the zero polynomial
    /// or inhomogeneous input.
    pub fn bidegree(&self, p: &Poly) -> Option<(i32, i32)> {
        let mut it = p.terms().map(|(m, _)| (self.mono_degree(m), self.mono_weight(m)));
        let first = it.next()?;
        it.all(|b| b == first).then_some(first)
    }

    pub fn is_homogeneous_of(&self, p: &Poly, degree: i32, weight: i32) -> bool {
        p.terms().all(|(m, _)| self.mono_degree(m) == degree && self.mono_weight(m) == weight)
    }

    /// Product of monomials with its sign, or `None` if an odd generator
    /// would be squared.
    pub fn mono_mul(&self, a: &Monomial, b: &Monomial) -> Option<(bool, Monomial)> {
        let mut neg = false;
        let mut odd_in_a_after = 0u32;
        // count pairs (i in a, j in b, i > j) with both odd
        for j in (0..self.ngens()).rev() {
            let odd = self.gens[j].is_odd();
            if odd && b.0[j] == 1 && odd_in_a_after % 2 == 1 {
                neg = !neg;
            }
            if odd && a.0[j] == 1 {
                odd_in_a_after += 1;
            }
        }
        let mut e = Vec::with_capacity(self.ngens());
        for (i, g) in self.gens.iter().enumerate() {
            let s = a.0[i] + b.0[i];
            if g.is_odd() && s > 1 {
                return None;
            }
            e.push(s);
        }
        Some((neg, Monomial(e)))
    }

    pub fn mul(&self, a: &Poly, b: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (ma, ca) in a.terms() {
            for (mb, cb) in b.terms() {
                if let Some((neg, m)) = self.mono_mul(ma, mb) {
                    let c = ca * cb;
                    out.add_term(m, if neg { -c } else { c });
                }
            }
        }
        out
    }

    pub fn mul_all<'a>(&self, factors: impl IntoIterator<Item = &'a Poly>) -> Poly {
        factors.into_iter().fold(self.one(), |acc, f| self.mul(&acc, f))
    }

    pub fn pow(&self, p: &Poly, k: u32) -> Poly {
        (0..k).fold(self.one(), |acc, _| self.mul(&acc, p))
    }

    /// Graded commutator `ab - (-1)^{|a||b|} ba` for homogeneous inputs.
    pub fn commutator(&self, a: &Poly, b: &Poly) -> Poly {
        let sa = self.bidegree(a).map_or(0, |x| x.0);
        let sb = self.bidegree(b).map_or(0, |x| x.0);
        let ba = self.mul(b, a);
        let sign = if (sa * sb).rem_euclid(2) == 1 { -1 } else { 1 };
        self.mul(a, b).sub(&ba.scale(&q(sign)))
    }

    /// Applies the derivation of degree `deg` determined by its values on
    /// generators. Convention: `D(ab) = D(a) b + (-1)^{deg |a|} a D(b)`.
    pub fn derivation(&self, images: &[Poly], deg: i32, p: &Poly) -> Poly {
        assert_eq!(images.len(), self.ngens());
        let n = self.ngens();
        let mut out = Poly::zero();
        for (m, c) in p.terms() {
            let mut prefix_deg = 0i32;
            for a in 0..n {
                let e = m.0[a];
                if e == 0 {
                    continue;
                }
                if !images[a].is_zero() {
                    let mut left = vec![0u32; n];
                    left[..a].copy_from_slice(&m.0[..a]);
                    let mut right = m.0.clone();
                    right[..a].iter_mut().for_each(|x| *x = 0);
                    right[a] -= 1;
                    let left = Poly::from_monomial(Monomial(left), Q::one());
                    let right = Poly::from_monomial(Monomial(right), Q::one());
                    let mut coeff = c * q(e as i64);
                    if (deg * prefix_deg).rem_euclid(2) == 1 {
                        coeff = -coeff;
                    }
                    let term = self.mul(&self.mul(&left, &images[a]), &right);
                    out = out.add(&term.scale(&coeff));
                }
                prefix_deg += e as i32 * self.gens[a].degree;
            }
        }
        out
    }

    /// Left partial derivative ∂/∂z_a acting from the left.
    pub fn left_partial(&self, a: usize, p: &Poly) -> Poly {
        let da = self.gens[a].degree;
        let mut out = Poly::zero();
        for (m, c) in p.terms() {
            let e = m.0[a];
            if e == 0 {
                continue;
            }
            let prefix_parity: u32 = (0..a).map(|b| m.0[b] * parity(self.gens[b].degree)).sum::<u32>() % 2;
            let mut coeff = c * q(e as i64);
            if parity(da) * prefix_parity == 1 {
                coeff = -coeff;
            }
            let mut ex = m.0.clone();
            ex[a] -= 1;
            out.add_term(Monomial(ex), coeff);
        }
        out
    }

    /// Right partial derivative: `F ∂⃖_a = (-1)^{|z_a|(|F|-|z_a|)} ∂⃗_a F`.
    pub fn right_partial(&self, a: usize, p: &Poly) -> Poly {
        let da = self.gens[a].degree;
        let mut out = Poly::zero();
        for (m, c) in self.left_partial(a, p).terms() {
            // |F| - |z_a| is the degree of the differentiated monomial
            let rest = self.mono_parity(m);
            let c = if parity(da) * rest == 1 { -c.clone() } else { c.clone() };
            out.add_term(m.clone(), c);
        }
        out
    }

    /// Algebra map into `target`, sending generator `i` to `images[i]`.
    /// Images must be homogeneous of the generator's degree parity.
    pub fn morphism(&self, target: &GcAlgebra, images: &[Poly], p: &Poly) -> Poly {
        let mut out = Poly::zero();
        let mut cache: BTreeMap<(usize, u32), Poly> = BTreeMap::new();
        for (m, c) in p.terms() {
            let mut acc = target.one();
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let pw = cache.entry((i, e)).or_insert_with(|| target.pow(&images[i], e)).clone();
                acc = target.mul(&acc, &pw);
            }
            out = out.add(&acc.scale(c));
        }
        out
    }

    /// Sets generators in `zeroed` to zero.
    pub fn kill(&self, p: &Poly, zeroed: impl Fn(usize) -> bool) -> Poly {
        p.filter(|m| (0..self.ngens()).all(|i| m.0[i] == 0 || !zeroed(i)))
    }

    /// Value at the augmentation (every generator ↦ 0).
    pub fn constant_term(&self, p: &Poly) -> Q {
        p.coeff(&Monomial::one(self.ngens()))
    }

    /// Monomials in the window, sorted by (degree, weight, deglex).
    pub fn basis(&self, w: &Window) -> Result<Vec<Monomial>> {
        self.basis_where(w, |_| true)
    }

    pub fn basis_where(&self, w: &Window, keep: impl Fn(&Monomial) -> bool) -> Result<Vec<Monomial>> {
        let n = self.ngens();
        let mut bounds = vec![0u32; n];
        let neg_budget: i64 = self
            .gens
            .iter()
            .filter(|g| g.length < 0)
            .map(|g| {
                let cap = if g.weight > 0 { (w.max_weight / g.weight).max(0) as i64 } else { 1 };
                -(g.length as i64) * if g.is_odd() { 1.min(cap) } else { cap }
            })
            .sum();
        for (i, g) in self.gens.iter().enumerate() {
            bounds[i] = if g.is_odd() {
                1
            } else if g.weight > 0 {
                (w.max_weight / g.weight).max(0) as u32
            } else if g.length > 0 {
                ((w.max_length as i64 + neg_budget) / g.length as i64).max(0) as u32
            } else if g.weight < 0 {
                return Err(Error::WindowTooSmall(format!("generator {} has negative weight", g.name)));
            } else {
                return Err(Error::WindowTooSmall(format!(
                    "even generator {} has neither length nor weight, so the window is infinite",
                    g.name
                )));
            };
        }
        let mut out = Vec::new();
        let mut cur = vec![0u32; n];
        self.enumerate(0, &bounds, &mut cur, 0, w, &mut out);
        out.retain(|m| {
            let d = self.mono_degree(m);
            d >= w.min_degree && d <= w.max_degree && self.mono_length(m) <= w.max_length && keep(m)
        });
        out.sort_by(|a, b| {
            (self.mono_degree(a), self.mono_weight(a)).cmp(&(self.mono_degree(b), self.mono_weight(b))).then(a.cmp(b))
        });
        Ok(out)
    }

    fn enumerate(&self, i: usize, bounds: &[u32], cur: &mut Vec<u32>, weight: i32, w: &Window, out: &mut Vec<Monomial>) {
        if i == self.ngens() {
            out.push(Monomial(cur.clone()));
            return;
        }
        for e in 0..=bounds[i] {
            let nw = weight + e as i32 * self.gens[i].weight;
            if nw > w.max_weight {
                break;
            }
            cur[i] = e;
            self.enumerate(i + 1, bounds, cur, nw, w, out);
        }
        cur[i] = 0;
    }

    /// Matrix of a linear operator from `domain` to `codomain` monomials.
    ///
    /// Terms above the window (length or weight too large, or degree above
    /// `max_degree`) are dropped, which is a quotient truncation; this is
    /// only valid when the operator never lowers length, so a drop in
    /// length is reported as `WindowTooSmall`.
    pub fn operator_matrix(
        &self,
        op: impl Fn(&Poly) -> Poly,
        domain: &[Monomial],
        codomain: &[Monomial],
        w: &Window,
    ) -> Result<SparseMatrix> {
        let index: BTreeMap<&Monomial, usize> = codomain.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let mut trip = Vec::new();
        for (j, m) in domain.iter().enumerate() {
            let image = op(&Poly::from_monomial(m.clone(), Q::one()));
            let src_len = self.mono_length(m);
            for (t, c) in image.terms() {
                if let Some(&i) = index.get(t) {
                    trip.push((i, j, c.clone()));
                    continue;
                }
                let len = self.mono_length(t);
                if len < src_len {
                    return Err(Error::WindowTooSmall(format!(
                        "operator lowers length: {} -> {}",
                        self.fmt_mono(m),
                        self.fmt_mono(t)
                    )));
                }
                let above = len > w.max_length || self.mono_weight(t) > w.max_weight || self.mono_degree(t) > w.max_degree;
                if !above {
                    return Err(Error::WindowTooSmall(format!(
                        "image term {} of {} is outside the target basis",
                        self.fmt_mono(t),
                        self.fmt_mono(m)
                    )));
                }
            }
        }
        Ok(SparseMatrix::from_triplets(codomain.len(), domain.len(), trip))
    }

    pub fn fmt_mono(&self, m: &Monomial) -> String {
        if m.is_one() {
            return "1".into();
        }
        let parts: Vec<String> = m
            .0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| if e == 1 { self.gens[i].name.clone() } else { format!("{}^{}", self.gens[i].name, e) })
            .collect();
        parts.join("*")
    }

    pub fn fmt_poly(&self, p: &Poly) -> String {
        if p.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (k, (m, c)) in p.terms().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if k == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            if m.is_one() {
                s.push_str(&a.to_string());
            } else if a.is_one() {
                s.push_str(&self.fmt_mono(m));
            } else {
                s.push_str(&format!("{}*{}", a, self.fmt_mono(m)));
            }
        }
        s
    }

    pub fn display<'a>(&'a self, p: &'a Poly) -> impl fmt::Display + 'a {
        struct D<'a>(&'a GcAlgebra, &'a Poly);
        impl fmt::Display for D<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(&self.0.fmt_poly(self.1))
            }
        }
        D(self, p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alg() -> GcAlgebra {
        GcAlgebra::new(vec![Generator::new("x", 0), Generator::new("a", 1), Generator::new("b", 1), Generator::new("u", 2)])
    }

    #[test]
    fn odd_generators_anticommute() {
        let g = alg();
        let ab = g.mul(&g.gen(1), &g.gen(2));
        let ba = g.mul(&g.gen(2), &g.gen(1));
        assert_eq!(ab, ba.neg());
        assert!(g.mul(&g.gen(1), &g.gen(1)).is_zero());
        assert_eq!(g.mul(&g.gen(0), &g.gen(3)), g.mul(&g.gen(3), &g.gen(0)));
    }

    #[test]
    fn product_is_associative_on_samples() {
        let g = alg();
        let p = g.gen(0).add(&g.gen(1));
        let r = g.gen(2).add(&g.gen(3));
        let s = g.mul(&g.gen(0), &g.gen(2)).add(&g.gen(1));
        assert_eq!(g.mul(&g.mul(&p, &r), &s), g.mul(&p, &g.mul(&r, &s)));
    }

    #[test]
    fn left_partial_signs() {
        let g = alg();
        // ∂_b (a b) = -a
        let ab = g.mul(&g.gen(1), &g.gen(2));
        assert_eq!(g.left_partial(2, &ab), g.gen(1).neg());
        // right partial: (a b) ∂_b = a
        assert_eq!(g.right_partial(2, &ab), g.gen(1));
        // ∂_x x^3 = 3 x^2
        let x3 = g.pow(&g.gen(0), 3);
        assert_eq!(g.left_partial(0, &x3), g.pow(&g.gen(0), 2).scale(&q(3)));
    }

    #[test]
    fn derivation_obeys_leibniz() {
        let g = alg();
        // odd derivation x -> a, a -> 0, b -> x u, u -> 0
        let imgs = vec![g.gen(1), Poly::zero(), g.mul(&g.gen(0), &g.gen(3)), Poly::zero()];
        let p = g.mul(&g.gen(1), &g.gen(0));
        let r = g.mul(&g.gen(2), &g.gen(3));
        let lhs = g.derivation(&imgs, 1, &g.mul(&p, &r));
        let rhs = g.mul(&g.derivation(&imgs, 1, &p), &r).add(&g.mul(&p, &g.derivation(&imgs, 1, &r)).scale(&q(-1)));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn basis_respects_window() {
        let g = alg();
        let w = Window::new(3, 0, -8, 8);
        let b = g.basis(&w).unwrap();
        assert!(b.iter().all(|m| g.mono_length(m) <= 3));
        // x^k a^e b^f u^l with k + e + f + l <= 3
        assert_eq!(b.len(), 1 + 4 + 8 + 12);
    }
}
