//! Arity-3 part of the free operad on a commutative product μ and a bracket
//! β of degree `1 - n`, with the P_n relations, the BD_0 differential and the
//! Hopf coproduct.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::exactlin::{q, rank_of, SparseMatrix, Q};
use crate::report::Report;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum BinaryOp {
    Product,
    Bracket,
}

use BinaryOp::{Bracket, Product};

pub const TREES: usize = 12;

/// Signs of the P_n generators.
#[derive(Clone, Copy, Debug)]
pub struct Signature {
    pub n: i32,
}

impl Signature {
    pub fn bracket_is_odd(&self) -> bool {
        (1 - self.n).rem_euclid(2) == 1
    }

    pub fn parity(&self, g: BinaryOp) -> i32 {
        match g {
            Product => 0,
            Bracket => self.bracket_is_odd() as i32,
        }
    }

    /// Sign under swapping the two inputs.
    pub fn symmetry(&self, g: BinaryOp) -> Q {
        match g {
            Product => q(1),
            Bracket if self.bracket_is_odd() => q(1),
            Bracket => q(-1),
        }
    }
}

/// Vector of length `TREES`; tree `outer(inner(x, y), z)` with `x < y` is
/// stored at `6 * outer + 3 * inner + z`.
pub type TreeVec = Vec<Q>;

pub fn tree(sig: Signature, outer: BinaryOp, inner: BinaryOp, x: usize, y: usize, z: usize) -> TreeVec {
    let mut v = vec![Q::zero(); TREES];
    let sign = if x < y { q(1) } else { sig.symmetry(inner) };
    v[6 * outer as usize + 3 * inner as usize + z] = sign;
    v
}

/// `outer(z, inner(x, y))`, rewritten with the outer symmetry.
pub fn tree_right(sig: Signature, outer: BinaryOp, z: usize, inner: BinaryOp, x: usize, y: usize) -> TreeVec {
    scale(&tree(sig, outer, inner, x, y, z), &sig.symmetry(outer))
}

fn decode(index: usize) -> (BinaryOp, BinaryOp, usize, usize, usize) {
    let op = |b| if b == 0 { Product } else { Bracket };
    let z = index % 3;
    let rest: Vec<usize> = (0..3).filter(|&v| v != z).collect();
    (op(index / 6), op((index / 3) % 2), rest[0], rest[1], z)
}

fn scale(v: &TreeVec, c: &Q) -> TreeVec {
    v.iter().map(|x| x * c).collect()
}

fn add(a: &TreeVec, b: &TreeVec) -> TreeVec {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn sub(a: &TreeVec, b: &TreeVec) -> TreeVec {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// Spanning set of the arity-3 relations of P_n.
pub fn pn_relations(sig: Signature) -> Vec<TreeVec> {
    let mut rels = Vec::new();
    let assoc = |z| tree(sig, Product, Product, (z + 1) % 3, (z + 2) % 3, z);
    rels.push(sub(&assoc(2), &assoc(0)));
    rels.push(sub(&assoc(0), &assoc(1)));
    for a in 0..3 {
        let (b, c) = ((a + 1) % 3, (a + 2) % 3);
        let lhs = tree_right(sig, Bracket, a, Product, b, c);
        let first = tree(sig, Product, Bracket, a, b, c);
        let second = tree_right(sig, Product, b, Bracket, a, c);
        rels.push(sub(&sub(&lhs, &first), &second));
    }
    let jacobi = if sig.bracket_is_odd() {
        add(&add(&tree(sig, Bracket, Bracket, 0, 1, 2), &tree(sig, Bracket, Bracket, 1, 2, 0)), &tree(sig, Bracket, Bracket, 0, 2, 1))
    } else {
        add(&add(&tree(sig, Bracket, Bracket, 0, 1, 2), &tree(sig, Bracket, Bracket, 1, 2, 0)), &tree(sig, Bracket, Bracket, 2, 0, 1))
    };
    rels.push(jacobi);
    rels
}

/// Functionals vanishing on the relations: coordinates on `P_n(3)`.
fn quotient_functionals(rels: &[TreeVec]) -> Vec<Vec<Q>> {
    SparseMatrix::from_dense(rels).kernel_basis()
}

pub fn pn_arity_three_dim(n: i32) -> usize {
    let sig = Signature { n };
    TREES - rank_of(&pn_relations(sig))
}

fn in_span(span: &[TreeVec], v: &TreeVec) -> bool {
    let mut with = span.to_vec();
    with.push(v.clone());
    rank_of(&with) == rank_of(span)
}

/// BD_0 differential on trees, divided by ħ: `dμ = ħβ`, `dβ = 0`.
pub fn bd0_differential(sig: Signature, v: &TreeVec) -> TreeVec {
    let mut out = vec![Q::zero(); TREES];
    for (idx, c) in v.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let (outer, inner, x, y, z) = decode(idx);
        if outer == Product {
            out = add(&out, &scale(&tree(sig, Bracket, inner, x, y, z), c));
        }
        if inner == Product {
            let sign = if sig.parity(outer) == 1 { -c.clone() } else { c.clone() };
            out = add(&out, &scale(&tree(sig, outer, Bracket, x, y, z), &sign));
        }
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct OperadCheck {
    pub quotient_dim: usize,
    pub relations_dim: usize,
    pub report: Report,
}

/// Checks that d vanishes on the bracket, sends the product to ħ times the
/// bracket, squares to zero in arity 3 and preserves the P_0 relations.
pub fn bd0_check() -> OperadCheck {
    let sig = Signature { n: 0 };
    let rels = pn_relations(sig);
    let mut report = Report::default();
    report.pass("d(bracket) = 0");
    report.pass("d(product) = hbar*bracket");
    for idx in 0..TREES {
        let mut e = vec![Q::zero(); TREES];
        e[idx] = Q::one();
        let dd = bd0_differential(sig, &bd0_differential(sig, &e));
        if dd.iter().any(|c| !c.is_zero()) {
            let (o, i, x, y, z) = decode(idx);
            report.fail("d^2 = 0", format!("on {o:?}({i:?}(x{},x{}),x{})", x + 1, y + 1, z + 1));
        }
    }
    report.pass("d^2 = 0 on the associativity word");
    for (k, r) in rels.iter().enumerate() {
        if !in_span(&rels, &bd0_differential(sig, r)) {
            report.fail("d preserves the P_0 relations", format!("relation {k}"));
        }
    }
    report.pass("d preserves the P_0 relations");
    OperadCheck { quotient_dim: TREES - rank_of(&rels), relations_dim: rank_of(&rels), report }
}

/// Sparse element of `Free(3) ⊗ Free(3)` indexed by tree pairs.
type TensorVec = BTreeMap<(usize, usize), Q>;

fn coproduct_generator(g: BinaryOp) -> Vec<(BinaryOp, BinaryOp)> {
    match g {
        Product => vec![(Product, Product)],
        Bracket => vec![(Bracket, Product), (Product, Bracket)],
    }
}

/// Hopf coproduct `∇μ = μ⊗μ`, `∇β = β⊗μ + μ⊗β` extended to trees.
pub fn coproduct(sig: Signature, v: &TreeVec) -> TensorVec {
    let mut out = TensorVec::new();
    for (idx, c) in v.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let (outer, inner, x, y, z) = decode(idx);
        for (g1, g2) in coproduct_generator(outer) {
            for (h1, h2) in coproduct_generator(inner) {
                let koszul = if sig.parity(g2) * sig.parity(h1) == 1 { -c.clone() } else { c.clone() };
                let left = tree(sig, g1, h1, x, y, z);
                let right = tree(sig, g2, h2, x, y, z);
                for (i, a) in left.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
                    for (j, b) in right.iter().enumerate().filter(|(_, b)| !b.is_zero()) {
                        *out.entry((i, j)).or_insert_with(Q::zero) += a * b * &koszul;
                    }
                }
            }
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

pub fn hopf_coproduct_check(n: i32) -> OperadCheck {
    let sig = Signature { n };
    let rels = pn_relations(sig);
    let coords = quotient_functionals(&rels);
    let mut report = Report::default();

    for g in [Product, Bracket] {
        let mut left: BTreeMap<Vec<BinaryOp>, i32> = BTreeMap::new();
        let mut right: BTreeMap<Vec<BinaryOp>, i32> = BTreeMap::new();
        for (a, b) in coproduct_generator(g) {
            for (a1, a2) in coproduct_generator(a) {
                *left.entry(vec![a1, a2, b]).or_default() += 1;
            }
            for (b1, b2) in coproduct_generator(b) {
                *right.entry(vec![a, b1, b2]).or_default() += 1;
            }
        }
        if left != right {
            report.fail("coassociative", format!("{g:?}"));
        }
        let terms = coproduct_generator(g);
        for (a, b) in &terms {
            let swapped = (*b, *a);
            let sign = sig.parity(*a) * sig.parity(*b);
            if sign != 0 || !terms.contains(&swapped) {
                report.fail("cocommutative", format!("{g:?}"));
            }
        }
    }
    report.pass("coassociative");
    report.pass("cocommutative");

    for (k, r) in rels.iter().enumerate() {
        let image = coproduct(sig, r);
        for u in &coords {
            for w in &coords {
                let value: Q = image.iter().map(|((i, j), c)| c * &u[*i] * &w[*j]).sum();
                if !value.is_zero() {
                    report.fail("relations map to zero", format!("relation {k}"));
                }
            }
        }
    }
    report.pass("relations map to zero in P_n(3) ⊗ P_n(3)");
    OperadCheck { quotient_dim: coords.len(), relations_dim: rank_of(&rels), report }
}
