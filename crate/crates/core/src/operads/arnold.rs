//! Arnold algebra: generators `a_ij` of degree `n`, `a_ij = (-1)^{n+1} a_ji`,
//! `a_ij^2 = 0` and the three-term Arnold relation.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::Serialize;

use super::multilinear::MAX_ARITY;
use crate::error::{Error, Result};
use crate::exactlin::{q, rank_of, solve_linear, SparseMatrix, Q};
use crate::freecdga::{GcAlgebra, Generator, Monomial, Poly};

#[derive(Clone, Debug, Serialize)]
pub struct ArnoldPiece {
    /// Number of generator factors; the cohomological degree is `factors * n`.
    pub factors: usize,
    pub monomials: usize,
    pub relation_rank: usize,
    pub dimension: usize,
    pub basis: Vec<String>,
}

pub struct ArnoldAlgebra {
    pub n: i32,
    pub arity: usize,
    pub alg: GcAlgebra,
    pairs: Vec<(usize, usize)>,
    pieces: Vec<PieceData>,
}

struct PieceData {
    monomials: Vec<Monomial>,
    index: BTreeMap<Monomial, usize>,
    relations: Vec<Vec<Q>>,
    basis: Vec<Monomial>,
}

fn monomials_with_factors(ngens: usize, factors: usize, allow_squares: bool) -> Vec<Monomial> {
    fn go(i: usize, left: usize, cur: &mut Vec<u32>, allow: bool, out: &mut Vec<Monomial>) {
        if i == cur.len() {
            if left == 0 {
                out.push(Monomial::from_exponents(cur.clone()));
            }
            return;
        }
        let top = if allow { left } else { left.min(1) };
        for e in 0..=top {
            cur[i] = e as u32;
            go(i + 1, left - e, cur, allow, out);
        }
        cur[i] = 0;
    }
    let mut out = Vec::new();
    go(0, factors, &mut vec![0; ngens], allow_squares, &mut out);
    out
}

pub fn arnold_algebra(n: i32, arity: usize) -> Result<ArnoldAlgebra> {
    if arity > MAX_ARITY {
        return Err(Error::ArityTooLarge(arity));
    }
    let pairs: Vec<(usize, usize)> = (0..arity).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
    let gens = pairs.iter().map(|(i, j)| Generator::new(format!("a{}{}", i + 1, j + 1), n)).collect();
    let alg = GcAlgebra::new(gens);
    let mut this = ArnoldAlgebra { n, arity, alg, pairs, pieces: Vec::new() };
    this.build()?;
    Ok(this)
}

impl ArnoldAlgebra {
    pub fn ngens(&self) -> usize {
        self.pairs.len()
    }

    /// `a_ij` for any ordered pair of distinct labels.
    pub fn generator(&self, i: usize, j: usize) -> Result<Poly> {
        if i == j || i >= self.arity || j >= self.arity {
            return Err(Error::Invalid(format!("no generator a{}{}", i + 1, j + 1)));
        }
        let (lo, hi) = (i.min(j), i.max(j));
        let idx = self.pairs.iter().position(|&p| p == (lo, hi)).expect("pair present");
        let g = self.alg.gen(idx);
        Ok(if i < j || (self.n + 1) % 2 == 0 { g } else { g.neg() })
    }

    fn generating_relations(&self) -> Result<Vec<Poly>> {
        let mut rels = Vec::new();
        if self.n % 2 == 0 {
            for k in 0..self.ngens() {
                rels.push(self.alg.pow(&self.alg.gen(k), 2));
            }
        }
        for i in 0..self.arity {
            for j in i + 1..self.arity {
                for k in j + 1..self.arity {
                    let (ij, jk, ki) = (self.generator(i, j)?, self.generator(j, k)?, self.generator(k, i)?);
                    let r = self.alg.mul(&ij, &jk).add(&self.alg.mul(&jk, &ki)).add(&self.alg.mul(&ki, &ij));
                    rels.push(r);
                }
            }
        }
        Ok(rels)
    }

    fn standard_basis(&self, factors: usize) -> Vec<Monomial> {
        let mut choices: Vec<Vec<u32>> = vec![vec![0; self.ngens()]];
        for j in 1..self.arity {
            let mut next = Vec::new();
            for c in &choices {
                next.push(c.clone());
                for i in 0..j {
                    let idx = self.pairs.iter().position(|&p| p == (i, j)).expect("pair present");
                    let mut e = c.clone();
                    e[idx] = 1;
                    next.push(e);
                }
            }
            choices = next;
        }
        choices
            .into_iter()
            .filter(|e| e.iter().sum::<u32>() as usize == factors)
            .map(Monomial::from_exponents)
            .collect()
    }

    fn build(&mut self) -> Result<()> {
        let gens = self.generating_relations()?;
        let top = self.arity.saturating_sub(1) + 1;
        for factors in 0..=top {
            let monomials = monomials_with_factors(self.ngens(), factors, self.n % 2 == 0);
            let index: BTreeMap<Monomial, usize> = monomials.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
            let mut relations = Vec::new();
            for r in &gens {
                let rf = r.terms().next().map(|(m, _)| m.total() as usize).unwrap_or(0);
                if rf > factors {
                    continue;
                }
                for m in monomials_with_factors(self.ngens(), factors - rf, self.n % 2 == 0) {
                    let p = self.alg.mul(&Poly::from_monomial(m, Q::one()), r);
                    if let Some(v) = p.coordinates(&index, monomials.len()) {
                        if v.iter().any(|c| !c.is_zero()) {
                            relations.push(v);
                        }
                    }
                }
            }
            let basis = self.standard_basis(factors);
            self.pieces.push(PieceData { monomials, index, relations, basis });
        }
        Ok(())
    }

    pub fn pieces(&self) -> Vec<ArnoldPiece> {
        self.pieces
            .iter()
            .enumerate()
            .map(|(factors, p)| {
                let relation_rank = rank_of(&p.relations);
                ArnoldPiece {
                    factors,
                    monomials: p.monomials.len(),
                    relation_rank,
                    dimension: p.monomials.len() - relation_rank,
                    basis: p.basis.iter().map(|m| self.alg.fmt_mono(m)).collect(),
                }
            })
            .collect()
    }

    /// Dimensions by number of factors.
    pub fn dims(&self) -> Vec<usize> {
        self.pieces().iter().map(|p| p.dimension).collect()
    }

    /// Coefficients of `prod_{j=1}^{k-1} (1 + j t)`.
    pub fn expected_dims(arity: usize) -> Vec<usize> {
        let mut c = vec![1usize];
        for j in 1..arity {
            let mut next = vec![0; c.len() + 1];
            for (i, v) in c.iter().enumerate() {
                next[i] += v;
                next[i + 1] += v * j;
            }
            c = next;
        }
        c
    }

    /// True when the standard monomials are independent modulo the relations
    /// and their number matches the quotient dimension, in every degree.
    pub fn standard_basis_certified(&self) -> bool {
        self.pieces.iter().all(|p| {
            let mut rows = p.relations.clone();
            let r = rank_of(&rows);
            for m in &p.basis {
                let mut v = vec![Q::zero(); p.monomials.len()];
                v[p.index[m]] = Q::one();
                rows.push(v);
            }
            rank_of(&rows) == r + p.basis.len() && p.basis.len() + r == p.monomials.len()
        })
    }

    pub fn basis(&self, factors: usize) -> &[Monomial] {
        self.pieces.get(factors).map(|p| p.basis.as_slice()).unwrap_or(&[])
    }

    /// Coordinates of a homogeneous element on the standard basis.
    pub fn normal_form(&self, p: &Poly) -> Result<Vec<(Monomial, Q)>> {
        let mut by_factors: BTreeMap<usize, Poly> = BTreeMap::new();
        for (m, c) in p.terms() {
            by_factors.entry(m.total() as usize).or_insert_with(Poly::zero).add_term(m.clone(), c.clone());
        }
        let mut out = Vec::new();
        for (factors, part) in by_factors {
            let piece = match self.pieces.get(factors) {
                Some(piece) => piece,
                None => continue,
            };
            let rhs = part.coordinates(&piece.index, piece.monomials.len()).ok_or_else(|| Error::Invalid("not an Arnold element".into()))?;
            let mut cols: Vec<Vec<Q>> = piece
                .basis
                .iter()
                .map(|m| {
                    let mut v = vec![Q::zero(); piece.monomials.len()];
                    v[piece.index[m]] = Q::one();
                    v
                })
                .collect();
            cols.extend(piece.relations.iter().cloned());
            let m = SparseMatrix::from_columns(piece.monomials.len(), &cols);
            let sol = solve_linear(&m, &rhs)?.particular;
            for (b, c) in piece.basis.iter().zip(sol) {
                if !c.is_zero() {
                    out.push((b.clone(), c));
                }
            }
        }
        Ok(out)
    }

    pub fn sign_convention(&self) -> Q {
        if (self.n + 1) % 2 == 0 {
            q(1)
        } else {
            q(-1)
        }
    }
}
