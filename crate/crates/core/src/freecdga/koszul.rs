//! Koszul complexes of polynomial rings, the cotangent complexes of their
//! power towers, and the affine 𝔻-functor.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::exactlin::{solve_linear, SparseMatrix, Q};
use crate::gradedmixed::weight_band;
use crate::report::Report;

use super::derham::de_rham;
use super::{FreeCdga, GcAlgebra, Generator, MixedCdga, Monomial, Poly, Window};

/// `K(B, f_1^{n_1}, …, f_p^{n_p})`: `B` with odd generators `X_i` in degree
/// -1, `dX_i = f_i^{n_i}`. The generators of `B` form the base.
#[derive(Clone, Debug)]
pub struct KoszulComplex {
    pub cdga: FreeCdga,
    /// The elements `f_i^{n_i}` in `B`.
    pub relations: Vec<Poly>,
    pub base_gens: usize,
}

fn require_polynomial_ring(b: &FreeCdga) -> Result<()> {
    let ok = b.generators().iter().all(|g| g.degree == 0) && b.differential_on_generators().iter().all(Poly::is_zero);
    if ok {
        Ok(())
    } else {
        Err(Error::Invalid("expected a polynomial ring in degree 0 with zero differential".into()))
    }
}

/// Lowest length of a term (the order of vanishing at the origin).
fn order(alg: &GcAlgebra, p: &Poly) -> i32 {
    p.terms().map(|(m, _)| alg.mono_length(m)).min().unwrap_or(0)
}

pub fn koszul(b: &FreeCdga, fs: &[Poly], powers: &[u32]) -> Result<KoszulComplex> {
    require_polynomial_ring(b)?;
    if fs.len() != powers.len() {
        return Err(Error::DimensionMismatch(format!("{} relations, {} powers", fs.len(), powers.len())));
    }
    let alg = b.algebra();
    let nb = b.ngens();
    let relations: Vec<Poly> = fs.iter().zip(powers).map(|(f, &k)| alg.pow(f, k)).collect();
    let mut gens = alg.generators().to_vec();
    for (i, r) in relations.iter().enumerate() {
        gens.push(Generator::new(format!("X{}", i + 1), -1).with_length(order(alg, r)));
    }
    let total = gens.len();
    let mut d: Vec<Poly> = vec![Poly::zero(); nb];
    d.extend(relations.iter().map(|r| r.padded(total)));
    let mut base = vec![true; nb];
    base.extend(std::iter::repeat_n(false, fs.len()));
    let cdga = FreeCdga::new(gens, d)?.with_base(base)?;
    Ok(KoszulComplex { cdga, relations, base_gens: nb })
}

impl KoszulComplex {
    pub fn len(&self) -> usize {
        self.relations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.relations.is_empty()
    }

    /// Homotopy groups `π_i = H^{-i}` for `0 ≤ i ≤ p`, by dimension within
    /// the window. The window must admit degrees `-p-1..=1`.
    pub fn homotopy(&self, window: &Window) -> Result<BTreeMap<i32, usize>> {
        let p = self.len() as i32;
        if window.min_degree > -p - 1 || window.max_degree < 1 {
            return Err(Error::WindowTooSmall(format!("degree window must contain {}..=1", -p - 1)));
        }
        let chain = self.cdga.as_mixed().to_complex(window)?;
        let total = weight_band(&chain, 0, 0);
        (0..=p).map(|i| Ok((i, total.homology(-i)?.dimension))).collect()
    }
}

impl FreeCdga {
    /// The cdga as a mixed cdga with `ε = 0`.
    pub fn as_mixed(&self) -> MixedCdga {
        MixedCdga { alg: self.algebra().clone(), d: self.differential_on_generators().to_vec(), eps: vec![Poly::zero(); self.ngens()] }
    }
}

/// Coefficients `a_k` with `Σ a_k f_k = target`, searching `a_k` among
/// monomials of length at most `max_length`. `None` means no certificate
/// exists within that bound.
pub fn ideal_membership(alg: &GcAlgebra, fs: &[Poly], target: &Poly, max_length: i32) -> Result<Option<Vec<Poly>>> {
    if target.is_zero() {
        return Ok(Some(vec![Poly::zero(); fs.len()]));
    }
    let window = Window { max_length, max_weight: 0, min_degree: i32::MIN / 2, max_degree: i32::MAX / 2 };
    let monos = alg.basis(&window)?;
    let mut rows: BTreeMap<Monomial, usize> = BTreeMap::new();
    let mut trip = Vec::new();
    let mut col = 0;
    for f in fs {
        for m in &monos {
            let prod = alg.mul(&Poly::from_monomial(m.clone(), Q::from_integer(1.into())), f);
            for (t, c) in prod.terms() {
                let n = rows.len();
                let r = *rows.entry(t.clone()).or_insert(n);
                trip.push((r, col, c.clone()));
            }
            col += 1;
        }
    }
    for (t, _) in target.terms() {
        let n = rows.len();
        rows.entry(t.clone()).or_insert(n);
    }
    let matrix = SparseMatrix::from_triplets(rows.len(), col, trip);
    let mut rhs = vec![Q::from_integer(0.into()); rows.len()];
    for (t, c) in target.terms() {
        rhs[rows[t]] = c.clone();
    }
    match solve_linear(&matrix, &rhs) {
        Ok(sol) => Ok(Some(
            sol.particular.chunks(monos.len()).map(|chunk| Poly::from_coordinates(&monos, chunk)).collect(),
        )),
        Err(Error::NoSolution) => Ok(None),
        Err(e) => Err(e),
    }
}

/// Transition `K(B, f^{n+1}) → K(B, f^n)`, `X_i ↦ f_i X_i`, on relative
/// cotangent complexes after base change to `B/(f)`.
#[derive(Clone, Debug)]
pub struct CotangentStage {
    pub power: u32,
    /// Entry (i, j): coefficient of `dX_j` in the image of `dX_i`.
    pub matrix: Vec<Vec<Poly>>,
    /// Ideal-membership certificate for every entry, if one was found.
    pub certificates: Vec<Vec<Option<Vec<Poly>>>>,
    pub chain_map: bool,
}

impl CotangentStage {
    /// Every entry vanishes in `B/(f)`.
    pub fn is_zero_mod_ideal(&self) -> bool {
        self.certificates.iter().flatten().all(Option::is_some)
    }
}

#[derive(Clone, Debug)]
pub struct CotangentTower {
    pub stages: Vec<CotangentStage>,
}

impl CotangentTower {
    pub fn report(&self) -> Report {
        let mut r = Report::new();
        for s in &self.stages {
            let n = s.power;
            r.record(format!("transition {}->{} is a dg map", n + 1, n), s.chain_map, || "d(f X) differs from f^(n+1)".into());
            r.record(format!("transition {}->{} vanishes mod (f)", n + 1, n), s.is_zero_mod_ideal(), || {
                "an entry has no ideal-membership certificate".into()
            });
        }
        r
    }
}

/// Transition maps for the powers `1..=stages`. The `f_i` must be non-units.
pub fn koszul_tower_cotangent(b: &FreeCdga, fs: &[Poly], stages: u32) -> Result<CotangentTower> {
    require_polynomial_ring(b)?;
    let alg = b.algebra();
    if let Some(f) = fs.iter().find(|f| !alg.constant_term(f).eq(&Q::from_integer(0.into())) || f.is_zero()) {
        return Err(Error::Invalid(format!("{} is a unit or zero", alg.fmt_poly(f))));
    }
    let nb = b.ngens();
    let p = fs.len();
    let mut out = Vec::new();
    for n in 1..=stages {
        let src = koszul(b, fs, &vec![n + 1; p])?;
        let tgt = koszul(b, fs, &vec![n; p])?;
        let (sa, ta) = (src.cdga.algebra(), tgt.cdga.algebra());
        let total = ta.ngens();
        let images: Vec<Poly> = (0..sa.ngens())
            .map(|i| if i < nb { ta.gen(i) } else { ta.mul(&fs[i - nb].padded(total), &ta.gen(i)) })
            .collect();
        // dg map on generators: φ(d x) = d φ(x)
        let chain_map = (0..sa.ngens()).all(|i| {
            sa.morphism(ta, &images, &src.cdga.differential_on_generators()[i]) == tgt.cdga.differential(&images[i])
        });
        let mut matrix = vec![vec![Poly::zero(); p]; p];
        let mut certificates = vec![vec![None; p]; p];
        for i in 0..p {
            for j in 0..p {
                let entry = ta.right_partial(nb + j, &images[nb + i]);
                // base change along X ↦ 0
                let entry = ta.kill(&entry, |k| k >= nb).truncated(nb);
                let bound = order(alg, &entry).max(0) + entry.terms().map(|(m, _)| alg.mono_length(m)).max().unwrap_or(0);
                certificates[i][j] = ideal_membership(alg, fs, &entry, bound)?;
                matrix[i][j] = entry;
            }
        }
        out.push(CotangentStage { power: n, matrix, certificates, chain_map });
    }
    Ok(CotangentTower { stages: out })
}

/// `𝔻(B/I)` computed as the relative de Rham algebra of the Koszul model
/// over `B`, together with `H^0` of its realization.
#[derive(Clone, Debug)]
pub struct DFunctor {
    pub model: KoszulComplex,
    pub mixed: MixedCdga,
    /// `dim H^0` of the weights `0..=W` realization, for `W = 0..=wmax`.
    pub h0_by_weight_bound: Vec<(i32, usize)>,
    pub report: Report,
}

/// Requires the ideal generators to form a regular sequence, detected as
/// vanishing higher Koszul homotopy inside the window.
pub fn d_functor(b: &FreeCdga, ideal: &[Poly], window: &Window) -> Result<DFunctor> {
    let model = koszul(b, ideal, &vec![1; ideal.len()])?;
    let homotopy = model.homotopy(window)?;
    if let Some((i, dim)) = homotopy.iter().find(|(&i, &dim)| i > 0 && dim > 0) {
        return Err(Error::NotRegular(format!("pi_{i} has dimension {dim}")));
    }
    let dr = de_rham(&model.cdga);
    let mixed = dr.mixed;
    let complex = mixed.to_complex(window)?;
    let mut report = Report::new();
    report.extend(mixed.validate());
    let mut h0 = Vec::new();
    for w in 0..=window.max_weight {
        h0.push((w, weight_band(&complex, 0, w).homology(0)?.dimension));
    }
    let converged = h0.windows(2).all(|p| p[1].1 >= p[0].1);
    report.record("realization H^0 grows with the weight bound", converged, || format!("{h0:?}"));
    Ok(DFunctor { model, mixed, h0_by_weight_bound: h0, report })
}
