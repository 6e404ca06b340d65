//! Strict de Rham algebra `DR(B) = Sym_B(Ω¹_B[-1])`, closed-form towers and
//! their classes computed through the Hodge filtration.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::exactlin::{SparseMatrix, Q};
use crate::gradedmixed::{induced_rank, weight_band, ChainComplex, GradedMixedComplex};
use crate::report::Report;

use super::{FreeCdga, GcAlgebra, Generator, MixedCdga, Monomial, Poly, Window};

/// `DR(B)` as a free graded mixed cdga: the generators of `B` followed by
/// one `dg` for every non-base generator.
#[derive(Clone, Debug)]
pub struct DeRhamAlgebra {
    pub base: FreeCdga,
    pub mixed: MixedCdga,
    /// Index of `dg_i` inside `mixed.alg`, for non-base generators.
    pub dg_index: Vec<Option<usize>>,
}

/// `ε(g) = dg`, `ε(dg) = 0`, `d(dg) = -ε(d g)`. Base generators get no `dg`,
/// giving the relative algebra.
pub fn de_rham(b: &FreeCdga) -> DeRhamAlgebra {
    let n = b.ngens();
    let mut gens: Vec<Generator> = b.generators().to_vec();
    let mut dg_index = vec![None; n];
    for (i, g) in b.generators().iter().enumerate() {
        if b.is_base(i) {
            continue;
        }
        dg_index[i] = Some(gens.len());
        gens.push(
            Generator::new(format!("d{}", g.name), g.degree + 1)
                .with_weight(g.weight + 1)
                .with_internal_weight(g.internal_weight)
                .with_length(g.length),
        );
    }
    let alg = GcAlgebra::new(gens);
    let total = alg.ngens();
    let mut eps = vec![Poly::zero(); total];
    let mut d = vec![Poly::zero(); total];
    for i in 0..n {
        d[i] = b.differential_on_generators()[i].padded(total);
        if let Some(k) = dg_index[i] {
            eps[i] = alg.gen(k);
        }
    }
    let mut mixed = MixedCdga { alg, d, eps };
    for i in 0..n {
        if let Some(k) = dg_index[i] {
            mixed.d[k] = mixed.apply_eps(&mixed.d[i]).neg();
        }
    }
    DeRhamAlgebra { base: b.clone(), mixed, dg_index }
}

impl DeRhamAlgebra {
    pub fn algebra(&self) -> &GcAlgebra {
        &self.mixed.alg
    }

    /// Embeds an element of `B`.
    pub fn embed(&self, p: &Poly) -> Poly {
        p.padded(self.mixed.alg.ngens())
    }

    /// The `dg` generator for the `i`-th generator of `B`.
    pub fn dg(&self, i: usize) -> Option<Poly> {
        self.dg_index[i].map(|k| self.mixed.alg.gen(k))
    }

    /// Weight of a form (number of `dg` factors for weight-zero `B`).
    pub fn form_weight(&self, m: &Monomial) -> i32 {
        self.mixed.alg.mono_weight(m)
    }
}

/// Closed p-form of degree n: components `ω_j` of weight j and degree n+p
/// for `p ≤ j ≤ wmax`, with `d ω_p = 0` and `d ω_{j+1} + ε ω_j = 0`.
#[derive(Clone, Debug)]
pub struct ClosedFormTower {
    pub p: i32,
    pub n: i32,
    pub components: Vec<Poly>,
    pub dr: DeRhamAlgebra,
    pub window: Window,
}

impl ClosedFormTower {
    pub fn new(dr: &DeRhamAlgebra, p: i32, n: i32, components: Vec<Poly>, window: Window) -> Self {
        Self { p, n, components, dr: dr.clone(), window }
    }

    pub fn wmax(&self) -> i32 {
        self.p + self.components.len() as i32 - 1
    }

    pub fn component(&self, weight: i32) -> Poly {
        usize::try_from(weight - self.p)
            .ok()
            .and_then(|k| self.components.get(k).cloned())
            .unwrap_or_else(Poly::zero)
    }

    /// Bidegree checks and the tower equations. Terms of a residual lying
    /// above the length window make the equation inconclusive; any residual
    /// term inside the window fails it.
    pub fn validate(&self) -> Report {
        let m = &self.dr.mixed;
        let alg = &m.alg;
        let mut report = Report::new();
        for (k, c) in self.components.iter().enumerate() {
            let j = self.p + k as i32;
            report.record(format!("omega_{j} has weight {j}, degree {}", self.n + self.p), alg.is_homogeneous_of(c, self.n + self.p, j) || c.is_zero(), || alg.fmt_poly(c));
        }
        for j in self.p..=self.wmax() {
            let residual = m.apply_d(&self.component(j)).add(&m.apply_eps(&self.component(j - 1)));
            let name = if j == self.p { format!("d omega_{j} = 0") } else { format!("d omega_{j} + eps omega_{} = 0", j - 1) };
            if residual.is_zero() {
                report.pass(name);
            } else if residual.terms().all(|(t, _)| alg.mono_length(t) > self.window.max_length) {
                report.inconclusive(name, format!("residual above length {}: {}", self.window.max_length, alg.fmt_poly(&residual)));
            } else {
                report.fail(name, alg.fmt_poly(&residual));
            }
        }
        report
    }
}

/// The underlying p-form `ω_p`.
pub fn underlying_form(omega: &ClosedFormTower) -> Poly {
    omega.component(omega.p)
}

/// Stage `s` of the Hodge filtration: weights `p..=p+s`. For s > 0 the
/// long exact sequence of `F^{p+s} → stage s → stage s-1` is accounted for
/// in degrees `n+p` and `n+p+1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HodgeStage {
    pub stage: i32,
    pub dimension: usize,
    /// `dim H^{n+p}` of the single new weight (the kernel of the projection).
    pub fiber_dimension: usize,
    pub inclusion_rank: usize,
    pub projection_rank: usize,
    pub exact: bool,
}

#[derive(Clone, Debug)]
pub struct ClosedFormClasses {
    pub dimension: usize,
    pub representatives: Vec<ClosedFormTower>,
    pub hodge: Vec<HodgeStage>,
}

fn label_map(src: &ChainComplex, tgt: &ChainComplex) -> SparseMatrix {
    let pos: BTreeMap<&str, usize> = tgt.labels.iter().enumerate().map(|(i, l)| (l.as_str(), i)).collect();
    SparseMatrix::from_triplets(
        tgt.dim(),
        src.dim(),
        src.labels.iter().enumerate().filter_map(|(j, l)| pos.get(l.as_str()).map(|&i| (i, j, Q::from_integer(1.into())))),
    )
}

fn hodge_stage(e: &GradedMixedComplex, p: i32, s: i32, k: i32) -> Result<HodgeStage> {
    let stage = weight_band(e, p, p + s);
    let dimension = stage.homology(k)?.dimension;
    if s == 0 {
        return Ok(HodgeStage { stage: 0, dimension, fiber_dimension: dimension, inclusion_rank: 0, projection_rank: dimension, exact: true });
    }
    let prev = weight_band(e, p, p + s - 1);
    let fiber = weight_band(e, p + s, p + s);
    let incl = label_map(&fiber, &stage);
    let proj = label_map(&stage, &prev);
    let i_rank = induced_rank(&incl, &fiber, &stage, k)?;
    let p_rank = induced_rank(&proj, &stage, &prev, k)?;
    let i_rank_next = induced_rank(&incl, &fiber, &stage, k + 1)?;
    let fiber_dim = fiber.homology(k)?.dimension;
    let prev_dim = prev.homology(k)?.dimension;
    let fiber_next = fiber.homology(k + 1)?.dimension;
    // exact at H^k(stage), and the connecting map H^k(prev) → H^{k+1}(fiber)
    // has the same rank computed from either side
    let exact = dimension == i_rank + p_rank && prev_dim - p_rank == fiber_next - i_rank_next;
    Ok(HodgeStage { stage: s, dimension, fiber_dimension: fiber_dim, inclusion_rank: i_rank, projection_rank: p_rank, exact })
}

/// Classes of closed p-forms of degree n on `B`: `H^{n+p}` of the weights
/// `p..=wmax` of `DR(B)` with total differential `d + ε`, where `wmax` is
/// the window's weight bound.
pub fn closed_form_classes(b: &FreeCdga, p: i32, n: i32, window: &Window) -> Result<ClosedFormClasses> {
    if p < 0 || window.max_weight < p {
        return Err(Error::WindowTooSmall(format!("weight window {} below p = {p}", window.max_weight)));
    }
    let k = n + p;
    if window.min_degree > k - 1 || window.max_degree < k + 2 {
        return Err(Error::WindowTooSmall(format!("degree window must contain {}..={}", k - 1, k + 2)));
    }
    let dr = de_rham(b);
    let complex = dr.mixed.to_complex(window)?;
    let band = weight_band(&complex, p, window.max_weight);
    let h = band.homology(k)?;
    let basis = dr.mixed.alg.basis(window)?;
    let by_label: BTreeMap<String, &Monomial> = basis.iter().map(|m| (dr.mixed.alg.fmt_mono(m), m)).collect();
    let degree_k = band.indices_in_degree(k);
    let representatives = h
        .representatives
        .iter()
        .map(|v| {
            let mut comps = vec![Poly::zero(); (window.max_weight - p + 1) as usize];
            for (&idx, c) in degree_k.iter().zip(v) {
                if c == &Q::from_integer(0.into()) {
                    continue;
                }
                let w = band.weights[idx];
                comps[(w - p) as usize].add_term(by_label[&band.labels[idx]].clone(), c.clone());
            }
            ClosedFormTower::new(&dr, p, n, comps, *window)
        })
        .collect();
    let hodge = (0..=window.max_weight - p).map(|s| hodge_stage(&complex, p, s, k)).collect::<Result<Vec<_>>>()?;
    Ok(ClosedFormClasses { dimension: h.dimension, representatives, hodge })
}
