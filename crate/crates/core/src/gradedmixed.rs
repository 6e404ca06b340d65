//! Graded mixed complexes: weight×degree graded vector spaces with a
//! differential `d` of bidegree (0,+1) and a mixed differential `ε` of
//! bidegree (+1,+1), subject to d² = 0, ε² = 0 and dε + εd = 0.
//!
//! Conventions:
//! - the total differential of a realization is `D = d + ε`;
//! - `shift(E, n, q)` moves bidegree (p, m) to (p - q, m - n) and multiplies
//!   `d` by (-1)^n, leaving `ε` unchanged;
//! - tensor products use Koszul signs from cohomological degree only.

use std::collections::BTreeMap;

use num_traits::One;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactlin::{homology, q, Echelon, Homology, SparseMatrix, Q};
use crate::report::Report;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct BasisElement {
    pub label: String,
    pub weight: i32,
    pub degree: i32,
}

impl BasisElement {
    pub fn new(label: impl Into<String>, weight: i32, degree: i32) -> Self {
        Self { label: label.into(), weight, degree }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BiGradedModule {
    basis: Vec<BasisElement>,
}

impl BiGradedModule {
    pub fn new(basis: Vec<BasisElement>) -> Self {
        Self { basis }
    }

    pub fn basis(&self) -> &[BasisElement] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Dimension of each nonzero bidegree (weight, degree).
    pub fn support(&self) -> BTreeMap<(i32, i32), usize> {
        let mut out = BTreeMap::new();
        for b in &self.basis {
            *out.entry((b.weight, b.degree)).or_insert(0) += 1;
        }
        out
    }

    pub fn position(&self, label: &str) -> Option<usize> {
        self.basis.iter().position(|b| b.label == label)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedMixedComplex {
    pub module: BiGradedModule,
    pub d: SparseMatrix,
    pub eps: SparseMatrix,
}

impl GradedMixedComplex {
    pub fn new(module: BiGradedModule, d: SparseMatrix, eps: SparseMatrix) -> Result<Self> {
        let n = module.dim();
        for (name, m) in [("d", &d), ("eps", &eps)] {
            if m.rows() != n || m.cols() != n {
                return Err(Error::DimensionMismatch(format!("{name} is {}x{}, module has dim {n}", m.rows(), m.cols())));
            }
        }
        Ok(Self { module, d, eps })
    }

    /// Builds a complex from labelled images; missing entries are zero.
    pub fn from_maps(
        basis: Vec<BasisElement>,
        d: &[(usize, usize, Q)],
        eps: &[(usize, usize, Q)],
    ) -> Result<Self> {
        let n = basis.len();
        Self::new(
            BiGradedModule::new(basis),
            SparseMatrix::from_triplets(n, n, d.iter().cloned()),
            SparseMatrix::from_triplets(n, n, eps.iter().cloned()),
        )
    }

    pub fn zero_complex() -> Self {
        Self { module: BiGradedModule::default(), d: SparseMatrix::zero(0, 0), eps: SparseMatrix::zero(0, 0) }
    }

    pub fn dim(&self) -> usize {
        self.module.dim()
    }

    pub fn basis(&self) -> &[BasisElement] {
        self.module.basis()
    }

    pub fn weights(&self) -> impl Iterator<Item = i32> + '_ {
        self.basis().iter().map(|b| b.weight)
    }

    /// Total differential `d + ε` on the whole module.
    pub fn total_differential(&self) -> SparseMatrix {
        self.d.add(&self.eps).expect("same shape")
    }
}

fn first_nonzero_column(m: &SparseMatrix) -> Option<usize> {
    m.entries().map(|(_, c, _)| c).min()
}

/// Checks d² = 0, ε² = 0, dε + εd = 0 and reports every violated identity
/// with a witnessing basis element. Maps leaving their bidegree are errors.
pub fn validate_mixed(e: &GradedMixedComplex) -> Result<Report> {
    let basis = e.basis();
    for (name, m, dw) in [("d", &e.d, 0), ("eps", &e.eps, 1)] {
        for (r, c, _) in m.entries() {
            let (src, tgt) = (&basis[c], &basis[r]);
            if tgt.weight != src.weight + dw || tgt.degree != src.degree + 1 {
                return Err(Error::BidegreeMismatch(format!(
                    "{name}({}) has a component on {} at bidegree ({}, {}), expected ({}, {})",
                    src.label,
                    tgt.label,
                    tgt.weight,
                    tgt.degree,
                    src.weight + dw,
                    src.degree + 1
                )));
            }
        }
    }
    let mut report = Report::new();
    let dd = e.d.mul(&e.d)?;
    let ee = e.eps.mul(&e.eps)?;
    let de = e.d.mul(&e.eps)?.add(&e.eps.mul(&e.d)?)?;
    for (name, m) in [("d^2 = 0", dd), ("eps^2 = 0", ee), ("d eps + eps d = 0", de)] {
        match first_nonzero_column(&m) {
            None => report.pass(name),
            Some(c) => report.fail(name, format!("witness {}", basis[c].label)),
        }
    }
    Ok(report)
}

/// Tensor product with weight additive and Koszul signs from degree only.
pub fn tensor(e: &GradedMixedComplex, f: &GradedMixedComplex) -> GradedMixedComplex {
    let (ne, nf) = (e.dim(), f.dim());
    let idx = |i: usize, j: usize| i * nf + j;
    let mut basis = Vec::with_capacity(ne * nf);
    for a in e.basis() {
        for b in f.basis() {
            basis.push(BasisElement::new(format!("{}⊗{}", a.label, b.label), a.weight + b.weight, a.degree + b.degree));
        }
    }
    let build = |me: &SparseMatrix, mf: &SparseMatrix| {
        let mut trip = Vec::new();
        for (r, c, v) in me.entries() {
            for j in 0..nf {
                trip.push((idx(r, j), idx(c, j), v.clone()));
            }
        }
        for (i, a) in e.basis().iter().enumerate() {
            let sign = if a.degree.rem_euclid(2) == 1 { q(-1) } else { q(1) };
            for (r, c, v) in mf.entries() {
                trip.push((idx(i, r), idx(i, c), v * &sign));
            }
        }
        SparseMatrix::from_triplets(ne * nf, ne * nf, trip)
    };
    let d = build(&e.d, &f.d);
    let eps = build(&e.eps, &f.eps);
    GradedMixedComplex { module: BiGradedModule::new(basis), d, eps }
}

/// `E[n]((q))`: bidegree (p, m) ↦ (p - q, m - n), `d` scaled by (-1)^n.
pub fn shift(e: &GradedMixedComplex, n: i32, q_shift: i32) -> GradedMixedComplex {
    let basis = e
        .basis()
        .iter()
        .map(|b| BasisElement::new(b.label.clone(), b.weight - q_shift, b.degree - n))
        .collect();
    let d = if n.rem_euclid(2) == 1 { e.d.scale(&q(-1)) } else { e.d.clone() };
    GradedMixedComplex { module: BiGradedModule::new(basis), d, eps: e.eps.clone() }
}

/// The unit `k`: one basis vector in weight 0, degree 0.
pub fn unit() -> GradedMixedComplex {
    unit_at(0)
}

/// `k(w)`: one basis vector in weight `w`, degree 0, zero differentials.
pub fn unit_at(weight: i32) -> GradedMixedComplex {
    shift(
        &GradedMixedComplex::from_maps(vec![BasisElement::new("1", 0, 0)], &[], &[]).expect("1x1"),
        0,
        -weight,
    )
}

pub fn direct_sum(e: &GradedMixedComplex, f: &GradedMixedComplex) -> GradedMixedComplex {
    let off = e.dim();
    let n = off + f.dim();
    let basis: Vec<BasisElement> = e.basis().iter().chain(f.basis()).cloned().collect();
    let glue = |a: &SparseMatrix, b: &SparseMatrix| {
        SparseMatrix::from_triplets(
            n,
            n,
            a.entries()
                .map(|(r, c, v)| (r, c, v.clone()))
                .chain(b.entries().map(|(r, c, v)| (r + off, c + off, v.clone()))),
        )
    };
    GradedMixedComplex { module: BiGradedModule::new(basis), d: glue(&e.d, &f.d), eps: glue(&e.eps, &f.eps) }
}

/// Truncated cell model: x_n at (n, 0), y_n at (n+1, 1) for 0 ≤ n ≤ m,
/// with d(x_n) = y_{n-1} and ε(x_n) = y_n. `m = -1` is the zero complex.
pub fn cell_model(m: i32) -> GradedMixedComplex {
    assert!(m >= -1, "cell model truncation must be at least -1");
    let count = (m + 1) as usize;
    let mut basis = Vec::with_capacity(2 * count);
    for n in 0..count {
        basis.push(BasisElement::new(format!("x{n}"), n as i32, 0));
    }
    for n in 0..count {
        basis.push(BasisElement::new(format!("y{n}"), n as i32 + 1, 1));
    }
    let x = |n: usize| n;
    let y = |n: usize| count + n;
    let mut d = Vec::new();
    let mut eps = Vec::new();
    for n in 0..count {
        if n > 0 {
            d.push((y(n - 1), x(n), Q::one()));
        }
        eps.push((y(n), x(n), Q::one()));
    }
    GradedMixedComplex::from_maps(basis, &d, &eps).expect("square maps")
}

/// A cochain complex with labelled, weighted basis (differential of degree +1).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainComplex {
    pub labels: Vec<String>,
    pub degrees: Vec<i32>,
    pub weights: Vec<i32>,
    pub diff: SparseMatrix,
}

impl ChainComplex {
    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn indices_in_degree(&self, k: i32) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.degrees[i] == k).collect()
    }

    pub fn degree_range(&self) -> Option<(i32, i32)> {
        Some((*self.degrees.iter().min()?, *self.degrees.iter().max()?))
    }

    /// Differential from degree `k` to degree `k + 1`.
    pub fn block(&self, k: i32) -> SparseMatrix {
        self.diff.submatrix(&self.indices_in_degree(k + 1), &self.indices_in_degree(k))
    }

    pub fn validate(&self) -> Result<Report> {
        let mut report = Report::new();
        let bad = self.diff.entries().find(|(r, c, _)| self.degrees[*r] != self.degrees[*c] + 1);
        report.record("differential has degree +1", bad.is_none(), || {
            let (r, c, _) = bad.unwrap();
            format!("{} -> {}", self.labels[c], self.labels[r])
        });
        let sq = self.diff.mul(&self.diff)?;
        let witness = first_nonzero_column(&sq);
        report.record("D^2 = 0", witness.is_none(), || format!("witness {}", self.labels[witness.unwrap()]));
        Ok(report)
    }

    /// Homology in degree `k`, representatives in the degree-`k` basis.
    pub fn homology(&self, k: i32) -> Result<Homology> {
        homology(&self.block(k - 1), &self.block(k))
    }

    /// Nonzero homology dimensions over the degrees present.
    pub fn homology_dims(&self) -> Result<BTreeMap<i32, usize>> {
        let mut out = BTreeMap::new();
        if let Some((lo, hi)) = self.degree_range() {
            for k in lo..=hi {
                let h = self.homology(k)?.dimension;
                if h > 0 {
                    out.insert(k, h);
                }
            }
        }
        Ok(out)
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.degrees.iter().map(|d| if d.rem_euclid(2) == 0 { 1 } else { -1 }).sum()
    }
}

fn total_complex(e: &GradedMixedComplex, keep: impl Fn(i32) -> bool) -> (ChainComplex, Vec<usize>) {
    let idx: Vec<usize> = (0..e.dim()).filter(|&i| keep(e.basis()[i].weight)).collect();
    let total = e.total_differential().submatrix(&idx, &idx);
    let b = e.basis();
    (
        ChainComplex {
            labels: idx.iter().map(|&i| b[i].label.clone()).collect(),
            degrees: idx.iter().map(|&i| b[i].degree).collect(),
            weights: idx.iter().map(|&i| b[i].weight).collect(),
            diff: total,
        },
        idx,
    )
}

/// Total complex of the weights in `lo..=hi`. Weights above `hi` are cut as
/// a quotient, weights below `lo` as a subcomplex.
pub fn weight_band(e: &GradedMixedComplex, lo: i32, hi: i32) -> ChainComplex {
    total_complex(e, |p| (lo..=hi).contains(&p)).0
}

/// `⊕_{0 ≤ p ≤ wmax} E(p)` with total differential `d + ε`; components
/// leaving the window are dropped (quotient by weights above `wmax`).
pub fn realization(e: &GradedMixedComplex, wmax: i32) -> ChainComplex {
    total_complex(e, |p| (0..=wmax).contains(&p)).0
}

/// Stage `i` of the Tate realization and the comparison map from the
/// standard realization (the inclusion of the weights ≥ 0 subcomplex).
#[derive(Clone, Debug)]
pub struct TateStage {
    pub stage: i32,
    pub complex: ChainComplex,
    pub comparison: SparseMatrix,
}

pub fn tate_realization(e: &GradedMixedComplex, stage: i32, wmax: i32) -> TateStage {
    assert!(stage >= 0, "Tate stages are indexed by i >= 0");
    let (complex, idx) = total_complex(e, |p| (-stage..=wmax).contains(&p));
    let (_, real_idx) = total_complex(e, |p| (0..=wmax).contains(&p));
    let pos: BTreeMap<usize, usize> = idx.iter().enumerate().map(|(k, &i)| (i, k)).collect();
    let comparison = SparseMatrix::from_triplets(
        complex.dim(),
        real_idx.len(),
        real_idx.iter().enumerate().map(|(col, i)| (pos[i], col, Q::one())),
    );
    TateStage { stage, complex, comparison }
}

/// Rank of the map induced on degree-`k` homology by a chain map.
pub fn induced_rank(f: &SparseMatrix, src: &ChainComplex, tgt: &ChainComplex, k: i32) -> Result<usize> {
    let h = src.homology(k)?;
    let src_idx = src.indices_in_degree(k);
    let tgt_idx = tgt.indices_in_degree(k);
    let f_k = f.submatrix(&tgt_idx, &src_idx);
    let mut span = Echelon::new();
    let boundaries = tgt.block(k - 1).transpose();
    for r in 0..boundaries.rows() {
        if !boundaries.row(r).is_empty() {
            span.insert(boundaries.row(r));
        }
    }
    Ok(h.representatives.iter().filter(|z| span.insert_dense(&f_k.mul_vec(z))).count())
}

pub fn is_chain_map(f: &SparseMatrix, src: &ChainComplex, tgt: &ChainComplex) -> Result<bool> {
    Ok(tgt.diff.mul(f)? == f.mul(&src.diff)?)
}

/// Checks that `f` is a chain map inducing isomorphisms in every degree.
pub fn is_quasi_isomorphism(f: &SparseMatrix, src: &ChainComplex, tgt: &ChainComplex) -> Result<bool> {
    if !is_chain_map(f, src, tgt)? {
        return Ok(false);
    }
    let degrees: std::collections::BTreeSet<i32> = src.degrees.iter().chain(&tgt.degrees).copied().collect();
    for k in degrees {
        let hs = src.homology(k)?.dimension;
        let ht = tgt.homology(k)?.dimension;
        if hs != ht || induced_rank(f, src, tgt, k)? != hs {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Homology dimensions of successive Tate stages, stopping once
/// `repeats` consecutive stages agree or `max_stage` is reached.
pub fn tate_stabilization(
    e: &GradedMixedComplex,
    wmax: i32,
    max_stage: i32,
    repeats: usize,
) -> Result<Vec<BTreeMap<i32, usize>>> {
    let mut stages: Vec<BTreeMap<i32, usize>> = Vec::new();
    for i in 0..=max_stage {
        stages.push(tate_realization(e, i, wmax).complex.homology_dims()?);
        let n = stages.len();
        if n > repeats && stages[n - 1 - repeats..].windows(2).all(|w| w[0] == w[1]) {
            break;
        }
    }
    Ok(stages)
}
