//! Structure maps `B^{⊗I} → B ⊗ Arnold(I)` of the Weyl algebra attached to a
//! constant pairing: `m ∘ exp(½ Σ_{i≠j} a_ij ∂_t^{(i,j)})`.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::arnold::{arnold_algebra, ArnoldAlgebra};
use super::multilinear::MAX_ARITY;
use crate::error::{Error, Result};
use crate::exactlin::{q, Q};
use crate::freecdga::{GcAlgebra, Generator, Monomial, Poly};
use crate::polyvec::PolyvectorAlgebra;

pub struct WeylImage {
    pub base: GcAlgebra,
    pub arnold: ArnoldAlgebra,
    /// Arnold standard monomial to its coefficient in the base algebra.
    pub terms: BTreeMap<Monomial, Poly>,
}

impl WeylImage {
    pub fn coefficient(&self, arnold_monomial: &Monomial) -> Poly {
        self.terms.get(arnold_monomial).cloned().unwrap_or_else(Poly::zero)
    }

    pub fn unit_coefficient(&self) -> Poly {
        self.coefficient(&Monomial::one(self.arnold.ngens()))
    }

    /// Coefficient of the standard generator `a_ij`, `i < j`.
    pub fn generator_coefficient(&self, i: usize, j: usize) -> Result<Poly> {
        let g = self.arnold.generator(i, j)?;
        let (m, _) = g.terms().next().ok_or_else(|| Error::Invalid("zero generator".into()))?;
        Ok(self.coefficient(m))
    }

    pub fn display(&self) -> Vec<(String, String)> {
        self.terms
            .iter()
            .map(|(m, p)| (self.arnold.alg.fmt_mono(m), self.base.fmt_poly(p)))
            .collect()
    }
}

pub fn weyl_structure_map(base: &GcAlgebra, pairing: &[Vec<Q>], n: i32, inputs: &[Poly]) -> Result<WeylImage> {
    let arity = inputs.len();
    if arity > MAX_ARITY {
        return Err(Error::ArityTooLarge(arity));
    }
    let nb = base.ngens();
    if pairing.len() != nb || pairing.iter().any(|r| r.len() != nb) {
        return Err(Error::DimensionMismatch("pairing must be square in the generators".into()));
    }
    for (p, row) in pairing.iter().enumerate() {
        for (l, t) in row.iter().enumerate() {
            let degree = base.generators()[p].degree + base.generators()[l].degree;
            if !t.is_zero() && degree != n {
                return Err(Error::BidegreeMismatch(format!("pairing entry ({p},{l}) has degree {degree}, expected {n}")));
            }
        }
    }
    let arnold = arnold_algebra(n, arity)?;
    let na = arnold.ngens();

    let mut gens = Vec::new();
    for i in 0..arity {
        for g in base.generators() {
            gens.push(Generator::new(format!("{}_{}", g.name, i + 1), g.degree));
        }
    }
    gens.extend(arnold.alg.generators().iter().cloned());
    let total = GcAlgebra::new(gens);
    let offset = arity * nb;
    let lift_arnold = |p: &Poly| {
        Poly::from_terms(p.terms().map(|(m, c)| {
            let mut e = vec![0u32; offset];
            e.extend(m.exponents());
            (Monomial::from_exponents(e), c.clone())
        }))
    };

    let mut tensor = total.one();
    for (i, x) in inputs.iter().enumerate() {
        let images: Vec<Poly> = (0..nb).map(|p| total.gen(i * nb + p)).collect();
        tensor = total.mul(&tensor, &base.morphism(&total, &images, x));
    }

    let mut arnold_gens = BTreeMap::new();
    for i in 0..arity {
        for j in 0..arity {
            if i != j {
                arnold_gens.insert((i, j), lift_arnold(&arnold.generator(i, j)?));
            }
        }
    }
    let half = Q::new(1.into(), 2.into());
    let apply = |x: &Poly| {
        let mut out = Poly::zero();
        for ((i, j), a) in &arnold_gens {
            for (p, row) in pairing.iter().enumerate() {
                for (l, t) in row.iter().enumerate() {
                    if t.is_zero() {
                        continue;
                    }
                    let inner = total.left_partial(i * nb + p, &total.left_partial(j * nb + l, x));
                    if inner.is_zero() {
                        continue;
                    }
                    out = out.add(&total.mul(&inner, a).scale(&(t * &half)));
                }
            }
        }
        out
    };

    let mut acc = tensor.clone();
    let mut term = tensor;
    let mut k = 1i64;
    loop {
        term = apply(&term).scale(&Q::new(1.into(), k.into()));
        if term.is_zero() {
            break;
        }
        acc = acc.add(&term);
        k += 1;
    }

    let target_gens: Vec<Generator> = base.generators().iter().cloned().chain(arnold.alg.generators().iter().cloned()).collect();
    let target = GcAlgebra::new(target_gens);
    let images: Vec<Poly> = (0..offset)
        .map(|idx| target.gen(idx % nb))
        .chain((0..na).map(|a| target.gen(nb + a)))
        .collect();
    let merged = total.morphism(&target, &images, &acc);

    let mut by_arnold: BTreeMap<Monomial, Poly> = BTreeMap::new();
    for (m, c) in merged.terms() {
        let e = m.exponents();
        let b = Monomial::from_exponents(e[..nb].to_vec());
        let a = Monomial::from_exponents(e[nb..].to_vec());
        by_arnold.entry(a).or_insert_with(Poly::zero).add_term(b, c.clone());
    }
    let mut terms: BTreeMap<Monomial, Poly> = BTreeMap::new();
    for (a, coeff) in by_arnold {
        for (basis_mono, c) in arnold.normal_form(&Poly::from_monomial(a, Q::one()))? {
            let e = terms.entry(basis_mono).or_insert_with(Poly::zero);
            *e = e.add(&coeff.scale(&c));
        }
    }
    terms.retain(|_, p| !p.is_zero());
    Ok(WeylImage { base: base.clone(), arnold, terms })
}

/// Sign of the Koszul rule for swapping two homogeneous inputs.
pub fn koszul_sign(a: i32, b: i32) -> Q {
    if (a * b).rem_euclid(2) == 1 {
        q(-1)
    } else {
        Q::one()
    }
}


/// Bivector `½ Σ (-1)^{(n+1)(|θ_p|+1)} t^{pl} @θ_p @θ_l` in `Pol(B, n+1)`.
/// The `a_12` coefficient of the Weyl map on `x ⊗ y` is
/// `(-1)^{(n+1)|x||θ|} [[π, x], y]`, where `|θ|` is the degree parity of the
/// paired generators (well defined when n is even).
pub fn pairing_bivector(pol: &PolyvectorAlgebra, pairing: &[Vec<Q>], n: i32) -> Poly {
    let alg = pol.algebra();
    let degrees: Vec<i32> = pol.base().generators().iter().map(|g| g.degree).collect();
    let mut pi = Poly::zero();
    for (p, row) in pairing.iter().enumerate() {
        for (l, t) in row.iter().enumerate() {
            if !t.is_zero() {
                let sign = koszul_sign(n + 1, degrees[p] + 1);
                let c = t * sign * Q::new(1.into(), 2.into());
                pi = pi.add(&alg.mul(&pol.vector(p), &pol.vector(l)).scale(&c));
            }
        }
    }
    pi
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freecdga::FreeCdga;
    use crate::polyvec::polyvectors;

    fn base(d1: i32, d2: i32) -> FreeCdga {
        FreeCdga::new(vec![Generator::new("u", d1), Generator::new("v", d2)], vec![Poly::zero(), Poly::zero()]).unwrap()
    }

    fn samples(alg: &GcAlgebra) -> Vec<Poly> {
        let (u, v) = (alg.gen(0), alg.gen(1));
        let candidates = vec![u.clone(), v.clone(), alg.mul(&u, &v), alg.mul(&alg.pow(&u, 2), &v), alg.mul(&u, &alg.pow(&v, 2))];
        candidates.into_iter().filter(|p| !p.is_zero()).collect()
    }

    fn pairing_for(b: &FreeCdga, n: i32) -> Vec<Vec<Q>> {
        let full = [[q(2), q(1)], [q(-3), q(5)]];
        (0..2)
            .map(|p| {
                (0..2)
                    .map(|l| {
                        let fits = b.generators()[p].degree + b.generators()[l].degree == n;
                        if fits { full[p][l].clone() } else { q(0) }
                    })
                    .collect()
            })
            .collect()
    }

    #[test]
    fn zero_pairing_gives_the_product() {
        let b = base(0, 1);
        let alg = b.algebra();
        let xs = [alg.gen(0), alg.gen(0), alg.gen(1)];
        let w = weyl_structure_map(alg, &[vec![q(0); 2], vec![q(0); 2]], 1, &xs).unwrap();
        assert_eq!(w.terms.len(), 1);
        assert_eq!(w.unit_coefficient(), alg.mul_all(&xs));
    }

    #[test]
    fn first_order_term_is_the_bracket() {
        for n in 0..4 {
            for d1 in -1..3 {
                let b = base(d1, n - d1);
                let alg = b.algebra();
                let pol = polyvectors(&b, n + 1);
                let t = pairing_for(&b, n);
                let pi = pairing_bivector(&pol, &t, n);
                for x in samples(alg) {
                    for y in samples(alg) {
                        let w = weyl_structure_map(alg, &t, n, &[x.clone(), y.clone()]).unwrap();
                        assert_eq!(w.unit_coefficient(), alg.mul(&x, &y));
                        let dx = alg.bidegree(&x).unwrap().0;
                        let bracket = pol.bracket(&pol.bracket(&pi, &pol.embed(&x)), &pol.embed(&y)).scale(&koszul_sign(n + 1, dx * d1));
                        assert_eq!(w.generator_coefficient(0, 1).unwrap().padded(pol.algebra().ngens()), bracket, "n={n} d1={d1} x={} y={}", alg.fmt_poly(&x), alg.fmt_poly(&y));
                    }
                }
            }
        }
    }

    #[test]
    fn transposition_equivariance() {
        for n in 0..4 {
            for d1 in -1..3 {
                let b = base(d1, n - d1);
                let alg = b.algebra();
                let t = pairing_for(&b, n);
                for x in samples(alg) {
                    for y in samples(alg) {
                        let (dx, dy) = (alg.bidegree(&x).unwrap().0, alg.bidegree(&y).unwrap().0);
                        let xy = weyl_structure_map(alg, &t, n, &[x.clone(), y.clone()]).unwrap();
                        let yx = weyl_structure_map(alg, &t, n, &[y.clone(), x.clone()]).unwrap();
                        let sign = koszul_sign(dx, dy);
                        assert_eq!(yx.unit_coefficient().scale(&sign), xy.unit_coefficient());
                        let twist = sign * xy.arnold.sign_convention();
                        assert_eq!(yx.generator_coefficient(0, 1).unwrap().scale(&twist), xy.generator_coefficient(0, 1).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn arity_three_leading_terms() {
        let b = base(0, 1);
        let alg = b.algebra();
        let xs = samples(alg);
        let pol = polyvectors(&b, 2);
        let t = pairing_for(&b, 1);
        let pi = pairing_bivector(&pol, &t, 1);
        let w = weyl_structure_map(alg, &t, 1, &[xs[0].clone(), xs[1].clone(), xs[3].clone()]).unwrap();
        let bracket = pol.bracket(&pol.bracket(&pi, &pol.embed(&xs[0])), &pol.embed(&xs[1]));
        let expected = pol.algebra().mul(&bracket, &pol.embed(&xs[3]));
        assert_eq!(w.generator_coefficient(0, 1).unwrap().padded(pol.algebra().ngens()), expected);
    }

    #[test]
    fn inhomogeneous_pairing_is_rejected() {
        let b = base(0, 1);
        let t = vec![vec![q(1), q(0)], vec![q(0), q(0)]];
        assert!(matches!(weyl_structure_map(b.algebra(), &t, 1, &[b.algebra().gen(0)]), Err(Error::BidegreeMismatch(_))));
    }
}
