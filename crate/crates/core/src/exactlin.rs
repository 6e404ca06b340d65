//! Exact sparse linear algebra over ℚ and ℚ[ħ].
//!
//! Rows are reduced fraction-free: every working row is kept as a primitive
//! integer vector, and elimination uses cross-multiplication followed by
//! content removal. Echelon forms are computed once per matrix and cached.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qr(num: i64, den: i64) -> Q {
    Q::new(BigInt::from(num), BigInt::from(den))
}

type IntRow = Vec<(usize, BigInt)>;

fn make_primitive(row: &mut IntRow) {
    let mut g = BigInt::zero();
    for (_, v) in row.iter() {
        g = g.gcd(v);
        if g.is_one() {
            break;
        }
    }
    let negate = row.first().is_some_and(|(_, v)| v.is_negative());
    if g.is_zero() {
        return;
    }
    if !g.is_one() {
        for (_, v) in row.iter_mut() {
            *v = &*v / &g;
        }
    }
    if negate {
        for (_, v) in row.iter_mut() {
            *v = -&*v;
        }
    }
}

fn integer_row(entries: &[(usize, Q)]) -> IntRow {
    let mut lcm = BigInt::one();
    for (_, v) in entries {
        lcm = lcm.lcm(v.denom());
    }
    let mut row: IntRow = entries
        .iter()
        .map(|(c, v)| (*c, v.numer() * (&lcm / v.denom())))
        .collect();
    make_primitive(&mut row);
    row
}

/// `a*v - b*r`, made primitive.
fn combine(a: &BigInt, v: &IntRow, b: &BigInt, r: &IntRow) -> IntRow {
    let mut out = Vec::with_capacity(v.len() + r.len());
    let (mut i, mut j) = (0, 0);
    while i < v.len() || j < r.len() {
        let take_v = j >= r.len() || (i < v.len() && v[i].0 < r[j].0);
        let take_r = i >= v.len() || (j < r.len() && r[j].0 < v[i].0);
        if take_v {
            out.push((v[i].0, a * &v[i].1));
            i += 1;
        } else if take_r {
            out.push((r[j].0, -(b * &r[j].1)));
            j += 1;
        } else {
            let val = a * &v[i].1 - b * &r[j].1;
            if !val.is_zero() {
                out.push((v[i].0, val));
            }
            i += 1;
            j += 1;
        }
    }
    make_primitive(&mut out);
    out
}

fn entry(row: &IntRow, col: usize) -> Option<&BigInt> {
    row.binary_search_by_key(&col, |(c, _)| *c).ok().map(|k| &row[k].1)
}

/// Incremental row-echelon form over ℤ (rows kept primitive).
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    pivots: BTreeMap<usize, IntRow>,
    reduced: bool,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    fn reduce_leading(&self, mut row: IntRow) -> IntRow {
        while let Some((lead, val)) = row.first().cloned() {
            match self.pivots.get(&lead) {
                Some(p) => {
                    let pv = &p[0].1;
                    row = combine(pv, &row, &val, p);
                }
                None => break,
            }
        }
        row
    }

    /// Inserts a rational row; returns true if it increased the rank.
    pub fn insert(&mut self, entries: &[(usize, Q)]) -> bool {
        let row = self.reduce_leading(integer_row(entries));
        if row.is_empty() {
            return false;
        }
        self.pivots.insert(row[0].0, row);
        self.reduced = false;
        true
    }

    /// Inserts a dense rational vector.
    pub fn insert_dense(&mut self, v: &[Q]) -> bool {
        let sparse: Vec<(usize, Q)> =
            v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| (i, x.clone())).collect();
        self.insert(&sparse)
    }

    /// True if the dense vector lies in the row span.
    pub fn contains_dense(&self, v: &[Q]) -> bool {
        let sparse: Vec<(usize, Q)> =
            v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| (i, x.clone())).collect();
        self.reduce_full(integer_row(&sparse)).is_empty()
    }

    fn reduce_full(&self, mut row: IntRow) -> IntRow {
        // eliminate every pivot column, not just the leading one
        let mut k = 0;
        while k < row.len() {
            let col = row[k].0;
            if let Some(p) = self.pivots.get(&col) {
                let val = row[k].1.clone();
                row = combine(&p[0].1, &row, &val, p);
                k = 0;
                continue;
            }
            k += 1;
        }
        row
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn pivot_columns(&self) -> Vec<usize> {
        self.pivots.keys().copied().collect()
    }

    /// Brings the echelon form to reduced form (pivot columns cleared above).
    pub fn reduce(&mut self) {
        if self.reduced {
            return;
        }
        let cols: Vec<usize> = self.pivots.keys().copied().collect();
        for &c in cols.iter().rev() {
            let mut row = self.pivots.remove(&c).unwrap();
            loop {
                let target = row.iter().skip(1).find(|(col, _)| self.pivots.contains_key(col)).cloned();
                match target {
                    Some((col, val)) => {
                        let p = &self.pivots[&col];
                        row = combine(&p[0].1, &row, &val, p);
                    }
                    None => break,
                }
            }
            self.pivots.insert(c, row);
        }
        self.reduced = true;
    }

    /// Kernel of the row space viewed as a linear map on ℚ^cols.
    pub fn kernel(&self, cols: usize) -> Vec<Vec<Q>> {
        let mut me = self.clone();
        me.reduce();
        let mut out = Vec::new();
        for f in 0..cols {
            if me.pivots.contains_key(&f) {
                continue;
            }
            let mut v = vec![Q::zero(); cols];
            v[f] = Q::one();
            for (p, row) in &me.pivots {
                if let Some(val) = entry(row, f) {
                    v[*p] = -Q::new(val.clone(), row[0].1.clone());
                }
            }
            out.push(v);
        }
        out
    }

    fn reduced_rows(&self) -> impl Iterator<Item = (&usize, &IntRow)> {
        debug_assert!(self.reduced);
        self.pivots.iter()
    }
}

/// Immutable sparse matrix over ℚ acting on column vectors.
#[derive(Clone)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Vec<(usize, Q)>>,
    echelon: OnceLock<Arc<Echelon>>,
}

impl PartialEq for SparseMatrix {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows && self.cols == other.cols && self.data == other.data
    }
}

impl Eq for SparseMatrix {}

impl fmt::Debug for SparseMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SparseMatrix {}x{} [", self.rows, self.cols)?;
        for (r, c, v) in self.entries() {
            write!(f, " ({r},{c})={v}")?;
        }
        write!(f, " ]")
    }
}

impl SparseMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![Vec::new(); rows], echelon: OnceLock::new() }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_triplets(n, n, (0..n).map(|i| (i, i, Q::one())))
    }

    /// Builds a matrix, summing duplicate keys and dropping zeros.
    pub fn from_triplets(rows: usize, cols: usize, triplets: impl IntoIterator<Item = (usize, usize, Q)>) -> Self {
        let mut acc: Vec<BTreeMap<usize, Q>> = vec![BTreeMap::new(); rows];
        for (r, c, v) in triplets {
            assert!(r < rows && c < cols, "entry ({r},{c}) outside {rows}x{cols}");
            if v.is_zero() {
                continue;
            }
            let slot = acc[r].entry(c).or_insert_with(Q::zero);
            *slot += v;
        }
        let data = acc
            .into_iter()
            .map(|m| m.into_iter().filter(|(_, v)| !v.is_zero()).collect())
            .collect();
        Self { rows, cols, data, echelon: OnceLock::new() }
    }

    /// Builds a matrix from its columns (dense vectors of length `rows`).
    pub fn from_columns(rows: usize, columns: &[Vec<Q>]) -> Self {
        let trip = columns
            .iter()
            .enumerate()
            .flat_map(|(c, col)| col.iter().enumerate().filter(|(_, v)| !v.is_zero()).map(move |(r, v)| (r, c, v.clone())));
        Self::from_triplets(rows, columns.len(), trip)
    }

    pub fn from_dense(rows: &[Vec<Q>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let trip = rows
            .iter()
            .enumerate()
            .flat_map(|(r, row)| row.iter().enumerate().filter(|(_, v)| !v.is_zero()).map(move |(c, v)| (r, c, v.clone())));
        Self::from_triplets(rows.len(), cols, trip)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Vec::is_empty)
    }

    pub fn get(&self, r: usize, c: usize) -> Q {
        match self.data[r].binary_search_by_key(&c, |(k, _)| *k) {
            Ok(k) => self.data[r][k].1.clone(),
            Err(_) => Q::zero(),
        }
    }

    pub fn row(&self, r: usize) -> &[(usize, Q)] {
        &self.data[r]
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Q)> {
        self.data.iter().enumerate().flat_map(|(r, row)| row.iter().map(move |(c, v)| (r, *c, v)))
    }

    pub fn to_dense(&self) -> Vec<Vec<Q>> {
        let mut out = vec![vec![Q::zero(); self.cols]; self.rows];
        for (r, c, v) in self.entries() {
            out[r][c] = v.clone();
        }
        out
    }

    pub fn column(&self, c: usize) -> Vec<Q> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_triplets(self.cols, self.rows, self.entries().map(|(r, c, v)| (c, r, v.clone())))
    }

    pub fn mul(&self, other: &SparseMatrix) -> Result<SparseMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut trip = Vec::new();
        for (r, row) in self.data.iter().enumerate() {
            let mut acc: BTreeMap<usize, Q> = BTreeMap::new();
            for (k, a) in row {
                for (c, b) in &other.data[*k] {
                    *acc.entry(*c).or_insert_with(Q::zero) += a * b;
                }
            }
            trip.extend(acc.into_iter().map(|(c, v)| (r, c, v)));
        }
        Ok(Self::from_triplets(self.rows, other.cols, trip))
    }

    pub fn add(&self, other: &SparseMatrix) -> Result<SparseMatrix> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch("matrix sum".into()));
        }
        Ok(Self::from_triplets(
            self.rows,
            self.cols,
            self.entries().chain(other.entries()).map(|(r, c, v)| (r, c, v.clone())),
        ))
    }

    pub fn scale(&self, s: &Q) -> SparseMatrix {
        Self::from_triplets(self.rows, self.cols, self.entries().map(|(r, c, v)| (r, c, v * s)))
    }

    pub fn mul_vec(&self, v: &[Q]) -> Vec<Q> {
        assert_eq!(v.len(), self.cols, "vector length");
        self.data
            .iter()
            .map(|row| row.iter().fold(Q::zero(), |acc, (c, a)| acc + a * &v[*c]))
            .collect()
    }

    /// Restriction to the given rows and columns (in the given order).
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> SparseMatrix {
        let col_pos: BTreeMap<usize, usize> = cols.iter().enumerate().map(|(i, c)| (*c, i)).collect();
        let mut trip = Vec::new();
        for (i, r) in rows.iter().enumerate() {
            for (c, v) in &self.data[*r] {
                if let Some(j) = col_pos.get(c) {
                    trip.push((i, *j, v.clone()));
                }
            }
        }
        Self::from_triplets(rows.len(), cols.len(), trip)
    }

    fn echelon(&self) -> Arc<Echelon> {
        self.echelon
            .get_or_init(|| {
                let mut e = Echelon::new();
                for row in &self.data {
                    if !row.is_empty() {
                        e.insert(row);
                    }
                }
                e.reduce();
                Arc::new(e)
            })
            .clone()
    }

    pub fn rank(&self) -> usize {
        self.echelon().rank()
    }

    /// Basis of ker M ⊂ ℚ^cols.
    pub fn kernel_basis(&self) -> Vec<Vec<Q>> {
        self.echelon().kernel(self.cols)
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }

    /// Inverse of a square invertible matrix.
    pub fn inverse(&self) -> Result<SparseMatrix> {
        if !self.is_invertible() {
            return Err(Error::NoSolution);
        }
        let mut columns = Vec::with_capacity(self.cols);
        for i in 0..self.rows {
            let mut e = vec![Q::zero(); self.rows];
            e[i] = Q::one();
            columns.push(solve_linear(self, &e)?.particular);
        }
        Ok(Self::from_columns(self.cols, &columns))
    }
}

/// One solution of `M x = b` together with a basis of ker M.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solution {
    pub particular: Vec<Q>,
    pub kernel: Vec<Vec<Q>>,
}

pub fn kernel_basis(m: &SparseMatrix) -> Vec<Vec<Q>> {
    m.kernel_basis()
}

/// Solves `M x = b` exactly, or reports `NoSolution`.
pub fn solve_linear(m: &SparseMatrix, b: &[Q]) -> Result<Solution> {
    if b.len() != m.rows() {
        return Err(Error::DimensionMismatch(format!("rhs length {} for {} rows", b.len(), m.rows())));
    }
    let aug = m.cols();
    let mut e = Echelon::new();
    for (r, row) in m.data.iter().enumerate() {
        let mut full = row.clone();
        if !b[r].is_zero() {
            full.push((aug, b[r].clone()));
        }
        if !full.is_empty() {
            e.insert(&full);
        }
    }
    if e.pivots.contains_key(&aug) {
        return Err(Error::NoSolution);
    }
    e.reduce();
    let mut x = vec![Q::zero(); aug];
    for (p, row) in e.reduced_rows() {
        if let Some(val) = entry(row, aug) {
            x[*p] = Q::new(val.clone(), row[0].1.clone());
        }
    }
    debug_assert_eq!(m.mul_vec(&x), b);
    Ok(Solution { particular: x, kernel: m.kernel_basis() })
}

/// Homology at the middle of `· --d_in--> · --d_out--> ·`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Homology {
    pub dimension: usize,
    /// Cycles whose classes form a basis of the homology.
    pub representatives: Vec<Vec<Q>>,
}

pub fn homology(d_in: &SparseMatrix, d_out: &SparseMatrix) -> Result<Homology> {
    if d_in.rows() != d_out.cols() {
        return Err(Error::DimensionMismatch(format!(
            "d_in has {} rows but d_out has {} columns",
            d_in.rows(),
            d_out.cols()
        )));
    }
    let comp = d_out.mul(d_in)?;
    if let Some((row, col, _)) = comp.entries().next() {
        return Err(Error::CompositionNonzero { row, col });
    }
    let mut span = Echelon::new();
    let d_in_t = d_in.transpose();
    for r in 0..d_in_t.rows() {
        let row = d_in_t.row(r);
        if !row.is_empty() {
            span.insert(row);
        }
    }
    let mut representatives = Vec::new();
    for z in d_out.kernel_basis() {
        if span.insert_dense(&z) {
            representatives.push(z);
        }
    }
    Ok(Homology { dimension: representatives.len(), representatives })
}

/// Rank of a family of dense vectors.
pub fn rank_of(vectors: &[Vec<Q>]) -> usize {
    let mut e = Echelon::new();
    vectors.iter().filter(|v| e.insert_dense(v)).count()
}

/// Univariate polynomial over ℚ in ħ, coefficients in ascending degree,
/// trailing zeros trimmed.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct QPoly(Vec<Q>);

impl QPoly {
    pub fn zero() -> Self {
        QPoly(Vec::new())
    }

    pub fn constant(c: Q) -> Self {
        QPoly::from_coeffs(vec![c])
    }

    pub fn monomial(c: Q, deg: usize) -> Self {
        let mut v = vec![Q::zero(); deg + 1];
        v[deg] = c;
        QPoly::from_coeffs(v)
    }

    pub fn from_coeffs(mut c: Vec<Q>) -> Self {
        while c.last().is_some_and(Zero::is_zero) {
            c.pop();
        }
        QPoly(c)
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn coeff(&self, k: usize) -> Q {
        self.0.get(k).cloned().unwrap_or_else(Q::zero)
    }

    pub fn add(&self, other: &QPoly) -> QPoly {
        let n = self.0.len().max(other.0.len());
        QPoly::from_coeffs((0..n).map(|k| self.coeff(k) + other.coeff(k)).collect())
    }

    pub fn neg(&self) -> QPoly {
        QPoly(self.0.iter().map(|c| -c).collect())
    }

    pub fn mul(&self, other: &QPoly) -> QPoly {
        if self.is_zero() || other.is_zero() {
            return QPoly::zero();
        }
        let mut out = vec![Q::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        QPoly::from_coeffs(out)
    }

    pub fn scale(&self, s: &Q) -> QPoly {
        QPoly::from_coeffs(self.0.iter().map(|c| c * s).collect())
    }

    pub fn eval(&self, at: &Q) -> Q {
        self.0.iter().rev().fold(Q::zero(), |acc, c| acc * at + c)
    }
}

impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.0.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}*h")?,
                _ => write!(f, "{c}*h^{k}")?,
            }
        }
        Ok(())
    }
}

/// Sparse matrix with entries in ℚ[ħ].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolySparseMatrix {
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), QPoly>,
}

impl PolySparseMatrix {
    pub fn from_triplets(rows: usize, cols: usize, triplets: impl IntoIterator<Item = (usize, usize, QPoly)>) -> Self {
        let mut entries: BTreeMap<(usize, usize), QPoly> = BTreeMap::new();
        for (r, c, v) in triplets {
            assert!(r < rows && c < cols, "entry outside matrix");
            let slot = entries.entry((r, c)).or_default();
            *slot = slot.add(&v);
        }
        entries.retain(|_, v| !v.is_zero());
        Self { rows, cols, entries }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> QPoly {
        self.entries.get(&(r, c)).cloned().unwrap_or_default()
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &QPoly)> {
        self.entries.iter().map(|((r, c), v)| (*r, *c, v))
    }

    /// Evaluates every entry at ħ = `at`.
    pub fn specialize(&self, at: &Q) -> SparseMatrix {
        SparseMatrix::from_triplets(self.rows, self.cols, self.entries().map(|(r, c, v)| (r, c, v.eval(at))))
    }

    pub fn mul(&self, other: &PolySparseMatrix) -> Result<PolySparseMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch("polynomial matrix product".into()));
        }
        let mut trip = Vec::new();
        for ((r, k), a) in &self.entries {
            for ((_, c), b) in other.entries.range((*k, 0)..(*k + 1, 0)) {
                trip.push((*r, *c, a.mul(b)));
            }
        }
        Ok(Self::from_triplets(self.rows, other.cols, trip))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> SparseMatrix {
        SparseMatrix::from_dense(&rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect::<Vec<_>>())
    }

    #[test]
    fn zero_map_kernel_is_everything() {
        assert_eq!(SparseMatrix::zero(2, 2).kernel_basis().len(), 2);
    }

    #[test]
    fn identity_kernel_is_empty() {
        assert!(SparseMatrix::identity(3).kernel_basis().is_empty());
    }

    #[test]
    fn rank_one_kernel() {
        let k = m(&[&[1, 2], &[2, 4]]).kernel_basis();
        assert_eq!(k.len(), 1);
        // proportional to (2, -1)
        assert_eq!(&k[0][0] * q(-1), &k[0][1] * q(2));
        assert!(!k[0][0].is_zero());
    }

    #[test]
    fn solve_upper_triangular() {
        let s = solve_linear(&m(&[&[1, 1], &[0, 1]]), &[q(3), q(1)]).unwrap();
        assert_eq!(s.particular, vec![q(2), q(1)]);
        assert!(s.kernel.is_empty());
    }

    #[test]
    fn solve_identity_and_zero() {
        let b = vec![qr(1, 3), q(-7), q(0)];
        assert_eq!(solve_linear(&SparseMatrix::identity(3), &b).unwrap().particular, b);
        assert_eq!(solve_linear(&SparseMatrix::zero(2, 2), &[q(1), q(0)]), Err(Error::NoSolution));
    }

    #[test]
    fn homology_of_zero_maps() {
        let h = homology(&SparseMatrix::zero(3, 0), &SparseMatrix::zero(0, 3)).unwrap();
        assert_eq!(h.dimension, 3);
    }

    #[test]
    fn homology_rejects_nonzero_composition() {
        let a = SparseMatrix::identity(2);
        assert!(matches!(homology(&a, &a), Err(Error::CompositionNonzero { .. })));
    }

    #[test]
    fn inverse_of_rational_matrix() {
        let a = SparseMatrix::from_dense(&[vec![qr(1, 2), q(3)], vec![q(0), qr(2, 3)]]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv).unwrap(), SparseMatrix::identity(2));
    }

    #[test]
    fn qpoly_arithmetic() {
        let h = QPoly::monomial(q(1), 1);
        let one = QPoly::constant(q(1));
        let p = h.add(&one).mul(&h.add(&one.neg()));
        assert_eq!(p, QPoly::from_coeffs(vec![q(-1), q(0), q(1)]));
        assert_eq!(p.eval(&q(3)), q(8));
    }
}
