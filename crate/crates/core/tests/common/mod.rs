//! Independent oracles shared by the integration tests and the acceptance
//! suite. Nothing here calls the routine it is used to check.

#![allow(dead_code)]

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use rand::Rng;

use shpoisson::exactlin::{q, rank_of, SparseMatrix, Q};
use shpoisson::freecdga::{GcAlgebra, Monomial, Poly, Window};
use shpoisson::gradedmixed::GradedMixedComplex;
use shpoisson::lieinfty::LieAlgebra;
use shpoisson::polyvec::PolyvectorAlgebra;

fn parity_sign(e: i32) -> Q {
    if e.rem_euclid(2) == 0 {
        q(1)
    } else {
        q(-1)
    }
}

/// Splits a non-constant monomial as `sign * g_i * rest`, `i` the first
/// generator present.
fn split_first(alg: &GcAlgebra, m: &Monomial) -> (usize, Q, Monomial) {
    let i = m.exponents().iter().position(|&e| e > 0).expect("non-constant monomial");
    let mut rest = m.exponents().to_vec();
    rest[i] -= 1;
    let rest = Monomial::from_exponents(rest);
    let prod = alg.mul(&alg.gen(i), &Poly::from_monomial(rest.clone(), Q::one()));
    let sign = prod.coeff(m);
    assert!(!sign.is_zero(), "monomial does not factor");
    (i, Q::one() / sign, rest)
}

/// Schouten bracket by repeated Leibniz expansion down to generator pairs,
/// with `[@x, x] = 1` and graded antisymmetry for `[x, @x]`.
pub struct NaiveSchouten<'a> {
    pol: &'a PolyvectorAlgebra,
    nb: usize,
    shift: i32,
}

impl<'a> NaiveSchouten<'a> {
    pub fn new(pol: &'a PolyvectorAlgebra) -> Self {
        Self { pol, nb: pol.base_rank(), shift: pol.shift() }
    }

    fn alg(&self) -> &GcAlgebra {
        self.pol.algebra()
    }

    fn generator_bracket(&self, a: usize, b: usize) -> Poly {
        let alg = self.alg();
        let nb = self.nb;
        if a >= nb && b == a - nb {
            return alg.one();
        }
        if a < nb && b == a + nb {
            let (da, db) = (alg.generators()[a].degree, alg.generators()[b].degree);
            return alg.one().scale(&-parity_sign((da - self.shift) * (db - self.shift)));
        }
        Poly::zero()
    }

    fn mono_bracket(&self, f: &Monomial, g: &Monomial) -> Poly {
        let alg = self.alg();
        if f.is_one() || g.is_one() {
            return Poly::zero();
        }
        let n = self.shift;
        let mono = |m: &Monomial| Poly::from_monomial(m.clone(), Q::one());
        if f.total() > 1 {
            // [a F', G] = a [F', G] + (-1)^{|F'|(|G|-N)} [a, G] F'
            let (i, s, rest) = split_first(alg, f);
            let a = alg.gen(i);
            let first = alg.mul(&a, &self.mono_bracket(&rest, g));
            let twist = parity_sign(alg.mono_degree(&rest) * (alg.mono_degree(g) - n));
            let second = alg.mul(&self.mono_bracket(&Monomial::generator(alg.ngens(), i), g), &mono(&rest)).scale(&twist);
            return first.add(&second).scale(&s);
        }
        let a = f.exponents().iter().position(|&e| e > 0).expect("generator");
        if g.total() > 1 {
            // [a, b G'] = [a, b] G' + (-1)^{(|a|-N)|b|} b [a, G']
            let (j, s, rest) = split_first(alg, g);
            let b = alg.gen(j);
            let first = alg.mul(&self.generator_bracket(a, j), &mono(&rest));
            let twist = parity_sign((alg.generators()[a].degree - n) * alg.generators()[j].degree);
            let second = alg.mul(&b, &self.mono_bracket(f, &rest)).scale(&twist);
            return first.add(&second).scale(&s);
        }
        let b = g.exponents().iter().position(|&e| e > 0).expect("generator");
        self.generator_bracket(a, b)
    }

    pub fn bracket(&self, f: &Poly, g: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (mf, cf) in f.terms() {
            for (mg, cg) in g.terms() {
                out = out.add(&self.mono_bracket(mf, mg).scale(&(cf * cg)));
            }
        }
        out
    }
}

/// Random combination of window monomials of one degree; zero if none exist.
pub fn random_homogeneous(rng: &mut impl Rng, alg: &GcAlgebra, window: &Window, degree: i32, terms: usize) -> Poly {
    let basis = alg.basis_where(window, |m| alg.mono_degree(m) == degree && !m.is_one()).unwrap_or_default();
    let mut p = Poly::zero();
    if basis.is_empty() {
        return p;
    }
    for _ in 0..terms {
        let m = basis[rng.gen_range(0..basis.len())].clone();
        p.add_term(m, q(rng.gen_range(1..=3)) * if rng.gen_bool(0.5) { q(1) } else { q(-1) });
    }
    p
}

/// Homology of the strict Hom complex `Hom(k̃_m, E)`, built from scratch.
///
/// The model has `x_j` in (weight j, degree 0) and `y_j` in (weight j+1,
/// degree 1), `d x_j = y_{j-1}`, `ε x_j = y_j`. A degree-k cochain is a
/// weight-preserving map `f` with `ε_E f = (-1)^k f ε`; its coboundary is
/// `d_E f - (-1)^k f d`.
pub fn hom_from_cell_model(e: &GradedMixedComplex, m: i32) -> BTreeMap<i32, usize> {
    let cells: Vec<(i32, i32)> = (0..=m).map(|j| (j, 0)).chain((0..=m).map(|j| (j + 1, 1))).collect();
    let count = (m + 1) as usize;
    let cell_d = |c: usize| -> Option<usize> { (c >= 1 && c < count).then(|| count + c - 1) };
    let cell_eps = |c: usize| -> Option<usize> { (c < count).then(|| count + c) };
    let basis = e.basis();
    let degrees: Vec<i32> = basis.iter().map(|b| b.degree).collect();
    let (lo, hi) = (degrees.iter().min().copied().unwrap_or(0) - 2, degrees.iter().max().copied().unwrap_or(0) + 1);

    // coordinates of a degree-k map: (cell, target) with matching weight
    let slots = |k: i32| -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (c, &(w, deg)) in cells.iter().enumerate() {
            for (t, b) in basis.iter().enumerate() {
                if b.weight == w && b.degree == deg + k {
                    out.push((c, t));
                }
            }
        }
        out
    };
    let dense_e = |mat: &SparseMatrix| mat.to_dense();
    let (ed, ee) = (dense_e(&e.d), dense_e(&e.eps));

    // (op_E ∘ f - sign f ∘ op_cell) as a vector indexed by pairs (cell, target)
    let apply = |k: i32, f: &[Q], op_e: &Vec<Vec<Q>>, op_cell: &dyn Fn(usize) -> Option<usize>, sign: Q| -> BTreeMap<(usize, usize), Q> {
        let idx = slots(k);
        let mut out: BTreeMap<(usize, usize), Q> = BTreeMap::new();
        for ((c, t), v) in idx.iter().zip(f) {
            if v.is_zero() {
                continue;
            }
            for (r, row) in op_e.iter().enumerate() {
                if !row[*t].is_zero() {
                    *out.entry((*c, r)).or_insert_with(Q::zero) += v * &row[*t];
                }
            }
        }
        // (f ∘ op_cell)(s) = f(op_cell(s))
        for s in 0..cells.len() {
            if let Some(c) = op_cell(s) {
                for ((cc, t), v) in idx.iter().zip(f) {
                    if *cc == c && !v.is_zero() {
                        *out.entry((s, *t)).or_insert_with(Q::zero) -= &sign * v;
                    }
                }
            }
        }
        out.retain(|_, v| !v.is_zero());
        out
    };

    let all_pairs: Vec<(usize, usize)> = (0..cells.len()).flat_map(|c| (0..basis.len()).map(move |t| (c, t))).collect();
    let to_dense = |v: &BTreeMap<(usize, usize), Q>| -> Vec<Q> {
        all_pairs.iter().map(|p| v.get(p).cloned().unwrap_or_else(Q::zero)).collect()
    };

    // cochains: kernel of the ε-compatibility constraint
    let mut cochains: BTreeMap<i32, Vec<Vec<Q>>> = BTreeMap::new();
    for k in lo..=hi {
        let n = slots(k).len();
        let sign = parity_sign(k);
        let columns: Vec<Vec<Q>> = (0..n)
            .map(|i| {
                let mut f = vec![Q::zero(); n];
                f[i] = Q::one();
                to_dense(&apply(k, &f, &ee, &cell_eps, sign.clone()))
            })
            .collect();
        let constraint = SparseMatrix::from_columns(all_pairs.len(), &columns);
        cochains.insert(k, if n == 0 { vec![] } else { constraint.kernel_basis() });
    }
    let mut rank_delta: BTreeMap<i32, usize> = BTreeMap::new();
    for k in lo..=hi {
        let sign = parity_sign(k);
        let images: Vec<Vec<Q>> = cochains[&k].iter().map(|f| to_dense(&apply(k, f, &ed, &cell_d, sign.clone()))).collect();
        rank_delta.insert(k, rank_of(&images));
    }
    let mut out = BTreeMap::new();
    for k in lo..=hi {
        let h = cochains[&k].len() - rank_delta[&k] - rank_delta.get(&(k - 1)).copied().unwrap_or(0);
        if h > 0 {
            out.insert(k, h);
        }
    }
    out
}

/// `[x, [y, z]] + [y, [z, x]] + [z, [x, y]]` on basis vectors.
pub fn jacobiator(g: &LieAlgebra, i: usize, j: usize, k: usize) -> Vec<Q> {
    let (a, b, c) = (g.basis_vector(i), g.basis_vector(j), g.basis_vector(k));
    let terms = [g.bracket(&a, &g.bracket(&b, &c)), g.bracket(&b, &g.bracket(&c, &a)), g.bracket(&c, &g.bracket(&a, &b))];
    (0..g.dim).map(|m| terms.iter().map(|t| t[m].clone()).sum()).collect()
}

/// Killing form `tr(ad_x ad_y)`.
pub fn killing_form(g: &LieAlgebra) -> Vec<Vec<Q>> {
    let n = g.dim;
    let ad = |x: usize| -> Vec<Vec<Q>> {
        // column j is [e_x, e_j]
        let mut m = vec![vec![Q::zero(); n]; n];
        for j in 0..n {
            for (k, c) in g.c[x][j].iter().enumerate() {
                m[k][j] = c.clone();
            }
        }
        m
    };
    let mut out = vec![vec![Q::zero(); n]; n];
    for a in 0..n {
        for b in 0..n {
            let (x, y) = (ad(a), ad(b));
            let mut tr = Q::zero();
            for i in 0..n {
                for k in 0..n {
                    tr += &x[i][k] * &y[k][i];
                }
            }
            out[a][b] = tr;
        }
    }
    out
}

/// Whether `a` is a nonzero rational multiple of `b` (both nonzero).
pub fn proportional(a: &[Q], b: &[Q]) -> bool {
    let Some(i) = b.iter().position(|x| !x.is_zero()) else { return false };
    if a[i].is_zero() {
        return false;
    }
    let ratio = &a[i] / &b[i];
    a.iter().zip(b).all(|(x, y)| *x == y * &ratio)
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Coefficients of `prod_{j=1}^{k-1} (1 + j t)` by direct expansion over
/// subsets of `{1, …, k-1}`.
pub fn arnold_series(k: usize) -> Vec<usize> {
    let mut out = vec![0usize; k.max(1)];
    let labels: Vec<usize> = (1..k).collect();
    for mask in 0u32..(1 << labels.len()) {
        let prod: usize = labels.iter().enumerate().filter(|(b, _)| mask & (1 << b) != 0).map(|(_, &j)| j).product();
        out[mask.count_ones() as usize] += prod;
    }
    out
}

/// Square matrices over ℚ for evaluating associative words.
pub type Matrix = Vec<Vec<Q>>;

pub fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.len();
    (0..n).map(|i| (0..n).map(|j| (0..n).map(|k| &a[i][k] * &b[k][j]).sum()).collect()).collect()
}

pub fn mat_add(a: &Matrix, b: &Matrix, s: &Q) -> Matrix {
    a.iter().zip(b).map(|(r, t)| r.iter().zip(t).map(|(x, y)| x + y * s).collect()).collect()
}

pub fn mat_identity(n: usize) -> Matrix {
    (0..n).map(|i| (0..n).map(|j| if i == j { Q::one() } else { Q::zero() }).collect()).collect()
}

pub fn random_matrix(rng: &mut impl Rng, n: usize) -> Matrix {
    (0..n).map(|_| (0..n).map(|_| q(rng.gen_range(-3..=3))).collect()).collect()
}

/// Evaluates a multilinear associative element on matrices.
pub fn eval_words(words: &BTreeMap<Vec<u8>, Q>, inputs: &[Matrix]) -> Matrix {
    let n = inputs[0].len();
    let mut acc = vec![vec![Q::zero(); n]; n];
    for (w, c) in words {
        let prod = w.iter().fold(mat_identity(n), |p, &l| mat_mul(&p, &inputs[l as usize]));
        acc = mat_add(&acc, &prod, c);
    }
    acc
}

/// Canonical symplectic bracket on `ℚ[q_1, p_1, …]` (generators alternate
/// `q_i`, `p_i`), computed from partial derivatives.
pub fn canonical_bracket(alg: &GcAlgebra, f: &Poly, g: &Poly) -> Poly {
    let mut out = Poly::zero();
    for i in (0..alg.ngens()).step_by(2) {
        let a = alg.mul(&alg.left_partial(i, f), &alg.left_partial(i + 1, g));
        let b = alg.mul(&alg.left_partial(i + 1, f), &alg.left_partial(i, g));
        out = out.add(&a).sub(&b);
    }
    out
}

/// Evaluates a Poisson word (product of left-normed brackets of labels) on
/// functions with the canonical bracket.
pub fn eval_poisson(alg: &GcAlgebra, blocks: &[Vec<u8>], inputs: &[Poly]) -> Poly {
    let mut out = alg.one();
    for b in blocks {
        let mut acc = inputs[b[0] as usize].clone();
        for &l in &b[1..] {
            acc = canonical_bracket(alg, &acc, &inputs[l as usize]);
        }
        out = alg.mul(&out, &acc);
    }
    out
}

/// Evaluates the symmetrized product of left-normed commutators on matrices.
pub fn eval_pbw(blocks: &[Vec<u8>], inputs: &[Matrix]) -> Matrix {
    let n = inputs[0].len();
    let lie: Vec<Matrix> = blocks
        .iter()
        .map(|b| {
            let mut acc = inputs[b[0] as usize].clone();
            for &l in &b[1..] {
                let x = &inputs[l as usize];
                acc = mat_add(&mat_mul(&acc, x), &mat_mul(x, &acc), &q(-1));
            }
            acc
        })
        .collect();
    let orders = permutations(lie.len());
    let scale = Q::one() / q(orders.len() as i64);
    let mut out = vec![vec![Q::zero(); n]; n];
    for p in &orders {
        let prod = p.iter().fold(mat_identity(n), |acc, &i| mat_mul(&acc, &lie[i]));
        out = mat_add(&out, &prod, &scale);
    }
    out
}

pub fn permutations(k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(k - 1) {
        for pos in 0..=p.len() {
            let mut v = p.clone();
            v.insert(pos, k - 1);
            out.push(v);
        }
    }
    out
}

pub mod criteria;
