//! Seeded random inputs and small worked examples used by tests, the
//! acceptance suite and the command line.

use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exactlin::{q, SparseMatrix, Q};
use crate::freecdga::{de_rham, validate_cdga, ClosedFormTower, DeRhamAlgebra, FreeCdga, GcAlgebra, Generator, Monomial, Poly, Window};
use crate::gradedmixed::{BasisElement, GradedMixedComplex};
use crate::lieinfty::{LInftyStructure, LieAlgebra};
use crate::polyvec::{nondegeneracy, polyvectors, EvaluationPoint, PolyvectorAlgebra};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn small_nonzero(rng: &mut impl Rng) -> Q {
    let v = rng.gen_range(1..=3);
    if rng.gen_bool(0.5) {
        q(v)
    } else {
        q(-v)
    }
}

fn small(rng: &mut impl Rng) -> Q {
    q(rng.gen_range(-2..=2))
}

/// Upper unitriangular times lower unitriangular with small integer
/// entries: invertible over ℤ.
pub fn random_invertible(rng: &mut impl Rng, n: usize) -> SparseMatrix {
    let mut upper = vec![vec![Q::zero(); n]; n];
    let mut lower = vec![vec![Q::zero(); n]; n];
    for i in 0..n {
        upper[i][i] = Q::one();
        lower[i][i] = Q::one();
        for j in i + 1..n {
            upper[i][j] = small(rng);
            lower[j][i] = small(rng);
        }
    }
    SparseMatrix::from_dense(&upper).mul(&SparseMatrix::from_dense(&lower)).expect("square")
}

/// Direct sum of elementary blocks (isolated vectors, d-pairs, ε-pairs and
/// squares) in weights `0..=max_weight`, conjugated by a random change of
/// basis inside each bidegree.
pub fn random_mixed_complex(rng: &mut impl Rng, max_weight: i32) -> GradedMixedComplex {
    let mut basis: Vec<BasisElement> = Vec::new();
    let mut d = Vec::new();
    let mut eps = Vec::new();
    let blocks = rng.gen_range(3..=7);
    for _ in 0..blocks {
        let w = rng.gen_range(0..=max_weight);
        let k = rng.gen_range(-2..=2);
        let base = basis.len();
        let mut push = |name: &str, w: i32, k: i32| {
            basis.push(BasisElement::new(format!("{name}{}", basis.len()), w, k));
        };
        match rng.gen_range(0..4) {
            0 => push("v", w, k),
            1 => {
                push("a", w, k);
                push("b", w, k + 1);
                d.push((base + 1, base, small_nonzero(rng)));
            }
            2 if w < max_weight => {
                push("a", w, k);
                push("c", w + 1, k + 1);
                eps.push((base + 1, base, small_nonzero(rng)));
            }
            3 if w < max_weight => {
                push("a", w, k);
                push("b", w, k + 1);
                push("c", w + 1, k + 1);
                push("e", w + 1, k + 2);
                d.push((base + 1, base, q(1)));
                eps.push((base + 2, base, q(1)));
                eps.push((base + 3, base + 1, q(1)));
                d.push((base + 3, base + 2, q(-1)));
            }
            _ => push("v", w, k),
        }
    }
    let n = basis.len();
    let dm = SparseMatrix::from_triplets(n, n, d);
    let em = SparseMatrix::from_triplets(n, n, eps);

    let mut change = vec![vec![Q::zero(); n]; n];
    let mut bidegrees: Vec<(i32, i32)> = basis.iter().map(|b| (b.weight, b.degree)).collect();
    bidegrees.sort();
    bidegrees.dedup();
    for bd in bidegrees {
        let idx: Vec<usize> = (0..n).filter(|&i| (basis[i].weight, basis[i].degree) == bd).collect();
        let block = random_invertible(rng, idx.len());
        for (a, &i) in idx.iter().enumerate() {
            for (b, &j) in idx.iter().enumerate() {
                change[i][j] = block.get(a, b);
            }
        }
    }
    let p = SparseMatrix::from_dense(&change);
    let inv = p.inverse().expect("invertible");
    let conj = |m: &SparseMatrix| inv.mul(m).and_then(|x| x.mul(&p)).expect("square");
    let labels: Vec<BasisElement> = basis.iter().enumerate().map(|(i, b)| BasisElement::new(format!("u{i}"), b.weight, b.degree)).collect();
    GradedMixedComplex::new(crate::gradedmixed::BiGradedModule::new(labels), conj(&dm), conj(&em)).expect("bidegrees preserved")
}

fn monomials_of_degree(alg: &GcAlgebra, upto: usize, degree: i32, max_factors: u32) -> Vec<Monomial> {
    let n = upto;
    let mut out = Vec::new();
    let mut exps = vec![0u32; alg.ngens()];
    fn go(alg: &GcAlgebra, i: usize, n: usize, left: u32, exps: &mut Vec<u32>, degree: i32, out: &mut Vec<Monomial>) {
        if i == n {
            let m = Monomial::from_exponents(exps.clone());
            if alg.mono_degree(&m) == degree && !m.is_one() {
                out.push(m);
            }
            return;
        }
        let top = if alg.generators()[i].is_odd() { left.min(1) } else { left };
        for e in 0..=top {
            exps[i] = e;
            go(alg, i + 1, n, left - e, exps, degree, out);
        }
        exps[i] = 0;
    }
    go(alg, 0, n, max_factors, &mut exps, degree, &mut out);
    out
}

/// A valid minimal free cdga with at most `max_gens` generators of degree in
/// `-3..=3`; each differential is a random quadratic expression in the
/// earlier generators.
pub fn random_cdga(rng: &mut impl Rng, max_gens: usize) -> FreeCdga {
    loop {
        let k = rng.gen_range(1..=max_gens);
        let gens: Vec<Generator> = (0..k).map(|i| Generator::new(format!("z{i}"), rng.gen_range(-3..=3))).collect();
        let alg = GcAlgebra::new(gens.clone());
        let mut d = Vec::with_capacity(k);
        for (i, g) in gens.iter().enumerate() {
            let candidates: Vec<Monomial> =
                monomials_of_degree(&alg, i, g.degree + 1, 2).into_iter().filter(|m| m.total() == 2).collect();
            let mut p = Poly::zero();
            for m in candidates {
                if rng.gen_bool(0.5) {
                    p.add_term(m, small_nonzero(rng));
                }
            }
            d.push(p);
        }
        let b = FreeCdga::from_algebra(alg, d).expect("lengths match");
        if validate_cdga(&b).map(|r| r.is_pass()).unwrap_or(false) {
            return b;
        }
    }
}

/// Random Lie algebra of dimension 4: a semidirect product ℚ ⋉_A ℚ³ or a
/// direct sum of known pieces, in a random basis.
pub fn random_lie(rng: &mut impl Rng) -> LieAlgebra {
    let g = match rng.gen_range(0..3) {
        0 => {
            let mut g = LieAlgebra::zero(4);
            for i in 1..4 {
                let v: Vec<Q> = std::iter::once(Q::zero()).chain((1..4).map(|_| small(rng))).collect();
                g.set_bracket(0, i, &v);
            }
            g
        }
        1 => direct_sum(&LieAlgebra::sl2(), &LieAlgebra::abelian(1)),
        _ => direct_sum(&LieAlgebra::nonabelian2(), &LieAlgebra::nonabelian2()),
    };
    g.change_basis(&random_invertible(rng, 4)).expect("invertible change of basis")
}

pub fn direct_sum(a: &LieAlgebra, b: &LieAlgebra) -> LieAlgebra {
    let n = a.dim + b.dim;
    let mut g = LieAlgebra::zero(n);
    for i in 0..a.dim {
        for j in 0..a.dim {
            for k in 0..a.dim {
                g.c[i][j][k] = a.c[i][j][k].clone();
            }
        }
    }
    for i in 0..b.dim {
        for j in 0..b.dim {
            for k in 0..b.dim {
                g.c[a.dim + i][a.dim + j][a.dim + k] = b.c[i][j][k].clone();
            }
        }
    }
    g
}

/// A constant non-degenerate bivector on 4 generators with zero
/// differential, in `Pol(B, n+1)` for a random shift.
pub struct ConstantPoisson {
    pub base: FreeCdga,
    pub n: i32,
    pub pol: PolyvectorAlgebra,
    pub pi: Poly,
}

pub fn random_constant_poisson(rng: &mut impl Rng) -> ConstantPoisson {
    loop {
        let n = rng.gen_range(-3..=3);
        let (d0, d2) = (rng.gen_range(-2..=2), rng.gen_range(-2..=2));
        let mut degrees = vec![d0, n - d0, d2, n - d2];
        let mut order: Vec<usize> = (0..4).collect();
        order.shuffle(rng);
        degrees = order.iter().map(|&i| degrees[i]).collect();
        let gens: Vec<Generator> = degrees.iter().enumerate().map(|(i, &d)| Generator::new(format!("y{i}"), d)).collect();
        let base = FreeCdga::new(gens, vec![Poly::zero(); 4]).expect("lengths match");
        let pol = polyvectors(&base, n + 1);
        let alg = pol.algebra().clone();
        let mut pi = Poly::zero();
        for i in 0..4 {
            for j in i..4 {
                if degrees[i] + degrees[j] != n || rng.gen_bool(0.2) {
                    continue;
                }
                let term = alg.mul(&pol.vector(i), &pol.vector(j));
                if !term.is_zero() {
                    pi = pi.add(&term.scale(&small_nonzero(rng)));
                }
            }
        }
        if pi.is_zero() {
            continue;
        }
        let nd = nondegeneracy(&pol, &pi, &EvaluationPoint::Augmentation);
        if matches!(nd, Ok(ref r) if r.nondegenerate) {
            return ConstantPoisson { base, n, pol, pi };
        }
    }
}

/// `x` in degree 0 and `ξ` in degree `n`, zero differential.
pub fn shifted_cotangent(n: i32) -> FreeCdga {
    let alg = GcAlgebra::new(vec![Generator::new("x", 0), Generator::new("xi", n).with_length(1)]);
    FreeCdga::from_algebra(alg, vec![Poly::zero(), Poly::zero()]).expect("lengths match")
}

/// Minimal bases carrying a strict closed 2-form, with its shift.
pub fn strict_two_forms() -> Vec<(DeRhamAlgebra, i32, Poly)> {
    let mut out = Vec::new();
    let plane = FreeCdga::polynomial_ring(&["x", "y"]);
    let dr = de_rham(&plane);
    let a = dr.algebra();
    let omega = a.mul(&dr.dg(0).expect("dx"), &dr.dg(1).expect("dy"));
    out.push((dr.clone(), 0, omega));

    let four = FreeCdga::polynomial_ring(&["x", "y", "z", "w"]);
    let dr = de_rham(&four);
    let a = dr.algebra();
    let dg = |i| dr.dg(i).expect("dg");
    let omega = a.mul(&dg(0), &dg(1)).add(&a.mul(&dg(2), &dg(3)));
    out.push((dr.clone(), 0, omega));

    for n in [-1, 1] {
        let b = shifted_cotangent(n);
        let dr = de_rham(&b);
        let a = dr.algebra();
        let omega = a.mul(&dr.dg(0).expect("dx"), &dr.dg(1).expect("dxi"));
        out.push((dr.clone(), n, omega));
    }

    let alg = GcAlgebra::new(vec![Generator::new("x", 0), Generator::new("xi", -1).with_length(2)]);
    let x = alg.gen(0);
    let b = FreeCdga::from_algebra(alg.clone(), vec![Poly::zero(), alg.mul(&x, &x)]).expect("lengths match");
    let dr = de_rham(&b);
    let a = dr.algebra();
    let omega = a.mul(&dr.dg(0).expect("dx"), &dr.dg(1).expect("dxi"));
    out.push((dr.clone(), -1, omega));
    out
}

/// Random form of the given weight and degree inside the window.
pub fn random_form(rng: &mut impl Rng, dr: &DeRhamAlgebra, weight: i32, degree: i32, window: &Window) -> Poly {
    let alg = dr.algebra();
    let basis = alg
        .basis_where(window, |m| alg.mono_weight(m) == weight && alg.mono_degree(m) == degree)
        .unwrap_or_default();
    let mut p = Poly::zero();
    for m in basis {
        if rng.gen_bool(0.6) {
            p.add_term(m, small(rng));
        }
    }
    p
}

/// `ω + (d + ε) β` for a random `β` in weights `2..=wmax`, as a
/// closed-form tower starting in weight 2.
pub fn gauge_push(rng: &mut impl Rng, dr: &DeRhamAlgebra, n: i32, omega: &Poly, window: &Window) -> ClosedFormTower {
    let m = &dr.mixed;
    let k = n + 2;
    let wmax = window.max_weight;
    let mut beta: Vec<Poly> = vec![Poly::zero(); (wmax + 1) as usize];
    for w in 2..=wmax {
        beta[w as usize] = random_form(rng, dr, w, k - 1, window);
    }
    let mut comps = Vec::new();
    for w in 2..=wmax {
        let mut c = m.apply_d(&beta[w as usize]).add(&m.apply_eps(&beta[w as usize - 1]));
        if w == 2 {
            c = c.add(omega);
        }
        comps.push(c.filter(|mono| dr.algebra().mono_length(mono) <= window.max_length));
    }
    ClosedFormTower::new(dr, 2, n, comps, *window)
}

/// L∞ structure on `z0` (degree 0), `z1`, `z2` (degree 1), all of weight 1,
/// with `d z0 = z2`: the binary bracket alone squares to a nonzero operator
/// and the ternary bracket compensates.
pub fn compensated_linfty() -> LInftyStructure {
    let gens = vec![
        Generator::new("z0", 0).with_weight(1),
        Generator::new("z1", 1).with_weight(1),
        Generator::new("z2", 1).with_weight(1),
    ];
    let alg = GcAlgebra::new(gens);
    let (z0, z1, z2) = (alg.gen(0), alg.gen(1), alg.gen(2));
    let d = vec![z2.clone(), Poly::zero(), Poly::zero()];
    let z1z2 = alg.mul(&z1, &z2);
    let binary = vec![alg.mul(&z0, &z1).add(&alg.mul(&z0, &z2)).neg(), z1z2.neg(), z1z2.neg()];
    let ternary = vec![alg.mul(&alg.mul(&z0, &z0), &z1), Poly::zero(), Poly::zero()];
    LInftyStructure { alg, d, brackets: vec![binary, ternary] }
}

/// A constant term with a nonzero cubic tail: `p_0 = @1@2 + @3@4 + x1 @1@3`
/// on four degree-0 generators, whose square does not vanish.
pub fn obstructed_bivector() -> (PolyvectorAlgebra, Poly) {
    let b = FreeCdga::polynomial_ring(&["x1", "x2", "x3", "x4"]);
    let pol = polyvectors(&b, 1);
    let a = pol.algebra().clone();
    let v = |i| pol.vector(i);
    let p0 = a.mul(&v(0), &v(1)).add(&a.mul(&v(2), &v(3))).add(&a.mul_all([&pol.coordinate(0), &v(0), &v(2)]));
    (pol, p0)
}

