//! BD_1 as the Rees operad of the PBW filtration on As.
//!
//! The basis element attached to a Poisson word `P` with `w` brackets is
//! `ħ^{-w} pbw(P)` inside `As ⊗ ℚ[ħ, ħ^{-1}]`; its composites expand with
//! coefficients in `ℚ[ħ]`.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::Serialize;

use super::multilinear::{as_compose, pbw, poisson_compose, AsElem, PbwDecomposer, PoissonWord, MAX_ARITY};
use crate::error::{Error, Result};
use crate::exactlin::{QPoly, Q};
use crate::report::Report;

pub struct ReesComponent {
    pub arity: usize,
    pub basis: Vec<PoissonWord>,
    pub pbw: Vec<AsElem>,
    decomposer: PbwDecomposer,
}

impl ReesComponent {
    pub fn weights(&self) -> Vec<i32> {
        self.basis.iter().map(|b| -(b.brackets() as i32)).collect()
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// Element of a Rees component: basis index to a polynomial in ħ.
pub type ReesElem = BTreeMap<usize, QPoly>;

pub struct ReesOperad {
    components: Vec<ReesComponent>,
}

pub fn rees_bd1(max_arity: usize) -> Result<ReesOperad> {
    if max_arity > MAX_ARITY {
        return Err(Error::ArityTooLarge(max_arity));
    }
    let components = (0..=max_arity)
        .map(|k| {
            let decomposer = PbwDecomposer::new(k.max(1));
            let basis = decomposer.basis.clone();
            let pbw = basis.iter().map(pbw).collect();
            ReesComponent { arity: k, basis, pbw, decomposer }
        })
        .collect();
    Ok(ReesOperad { components })
}

impl ReesOperad {
    pub fn max_arity(&self) -> usize {
        self.components.len() - 1
    }

    pub fn component(&self, k: usize) -> Result<&ReesComponent> {
        self.components.get(k).ok_or(Error::ArityTooLarge(k))
    }

    /// `b_p ∘_i b_r` for basis indices `p` in arity `a` and `r` in arity `b`.
    pub fn compose_basis(&self, a: usize, p: usize, i: usize, b: usize, r: usize) -> Result<ReesElem> {
        let target = self.component(a + b - 1)?;
        let (pa, rb) = (self.component(a)?, self.component(b)?);
        if i >= a {
            return Err(Error::Invalid(format!("slot {i} out of range for arity {a}")));
        }
        let x = as_compose(&pa.pbw[p], i as u8, &rb.pbw[r], b);
        let coords = target.decomposer.coordinates(&x)?;
        let base = pa.basis[p].brackets() + rb.basis[r].brackets();
        let mut out = ReesElem::new();
        for (idx, c) in coords.into_iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let exponent = target.basis[idx].brackets() as i64 - base as i64;
            if exponent < 0 {
                return Err(Error::Invalid(format!("composite has a pole in ħ of order {}", -exponent)));
            }
            out.insert(idx, QPoly::monomial(c, exponent as usize));
        }
        Ok(out)
    }

    /// `∘_i` extended ℚ[ħ]-bilinearly.
    pub fn compose(&self, a: usize, x: &ReesElem, i: usize, b: usize, y: &ReesElem) -> Result<ReesElem> {
        let mut out = ReesElem::new();
        for (p, cp) in x {
            for (r, cr) in y {
                let coeff = cp.mul(cr);
                for (idx, v) in self.compose_basis(a, *p, i, b, *r)? {
                    let e = out.entry(idx).or_insert_with(QPoly::zero);
                    *e = e.add(&v.mul(&coeff));
                }
            }
        }
        out.retain(|_, v| !v.is_zero());
        Ok(out)
    }

    pub fn basis_element(&self, idx: usize) -> ReesElem {
        ReesElem::from([(idx, QPoly::constant(num_traits::One::one()))])
    }
}

pub fn specialize(x: &ReesElem, dim: usize, at: &Q) -> Vec<Q> {
    let mut out = vec![Q::zero(); dim];
    for (i, v) in x {
        out[*i] = v.eval(at);
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct ReesCheck {
    pub dims: Vec<usize>,
    pub weight_distribution: Vec<Vec<usize>>,
    pub report: Report,
}

/// Checks over all pairs of basis elements whose composite has arity at
/// most `max_arity`: the ħ = 0 constants agree with P_1 computed by Leibniz
/// expansion, the ħ = 1 constants agree with As, and composition is
/// associative over ℚ[ħ].
pub fn check_rees(op: &ReesOperad) -> Result<ReesCheck> {
    let top = op.max_arity();
    let mut report = Report::default();
    let dims: Vec<usize> = (0..=top).map(|k| op.component(k).map(|c| if k == 0 { 0 } else { c.dim() })).collect::<Result<_>>()?;
    let weight_distribution = (0..=top)
        .map(|k| {
            let w = op.components[k].weights();
            let lowest = if k == 0 { 0 } else { *w.iter().min().unwrap_or(&0) };
            (lowest..=0).rev().map(|x| if k == 0 { 0 } else { w.iter().filter(|&&y| y == x).count() }).collect()
        })
        .collect();

    for a in 1..=top {
        for b in 1..=top + 1 - a {
            let (pa, rb) = (&op.components[a], &op.components[b]);
            let target = &op.components[a + b - 1];
            for p in 0..pa.dim() {
                for r in 0..rb.dim() {
                    for i in 0..a {
                        let x = op.compose_basis(a, p, i, b, r)?;
                        let at_zero = specialize(&x, target.dim(), &Q::zero());
                        let classical = poisson_compose(&pa.basis[p], a, i as u8, &rb.basis[r], b)?;
                        let name = format!("{} o{} {}", pa.basis[p].label(), i + 1, rb.basis[r].label());
                        if at_zero != classical {
                            report.fail("hbar=0 specialization", name.clone());
                        }
                        let at_one = specialize(&x, target.dim(), &num_traits::One::one());
                        let mut lhs = AsElem::new();
                        for (idx, c) in at_one.iter().enumerate() {
                            super::multilinear::add_into(&mut lhs, &target.pbw[idx], c);
                        }
                        if lhs != as_compose(&pa.pbw[p], i as u8, &rb.pbw[r], b) {
                            report.fail("hbar=1 specialization", name.clone());
                        }
                    }
                }
            }
        }
    }
    report.pass("specializations");

    if top >= 4 {
        let two = op.components[2].dim();
        for p in 0..two {
            for r in 0..two {
                for s in 0..two {
                    let (bp, br, bs) = (op.basis_element(p), op.basis_element(r), op.basis_element(s));
                    for i in 0..2 {
                        let pr = op.compose(2, &bp, i, 2, &br)?;
                        for j in 0..3 {
                            let lhs = op.compose(3, &pr, j, 2, &bs)?;
                            let rhs = if j >= i && j < i + 2 {
                                let rs = op.compose(2, &br, j - i, 2, &bs)?;
                                op.compose(2, &bp, i, 3, &rs)?
                            } else {
                                let k = if j < i { j } else { j - 1 };
                                let ps = op.compose(2, &bp, k, 2, &bs)?;
                                let shift = if j < i { i + 1 } else { i };
                                op.compose(3, &ps, shift, 2, &br)?
                            };
                            if lhs != rhs {
                                report.fail("associativity", format!("p={p} r={r} s={s} i={i} j={j}"));
                            }
                        }
                    }
                }
            }
        }
        report.pass("associativity");
    }
    Ok(ReesCheck { dims, weight_distribution, report })
}
