//! Free graded-commutative dg-algebras, Kähler differentials, strict de Rham
//! algebras, closed-form towers, Koszul complexes and the affine 𝔻-functor.

mod algebra;
mod derham;
mod koszul;

pub use algebra::{GcAlgebra, Generator, Monomial, Poly, Window};
pub use derham::{
    closed_form_classes, de_rham, underlying_form, ClosedFormClasses, ClosedFormTower, DeRhamAlgebra, HodgeStage,
};
pub use koszul::{
    d_functor, ideal_membership, koszul, koszul_tower_cotangent, CotangentStage, CotangentTower, DFunctor, KoszulComplex,
};

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::exactlin::{q, Q};
use crate::gradedmixed::{BasisElement, BiGradedModule, GradedMixedComplex};
use crate::report::Report;

/// Free graded-commutative dg-algebra. Generators flagged in `base` span the
/// base subalgebra for relative constructions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeCdga {
    alg: GcAlgebra,
    d: Vec<Poly>,
    base: Vec<bool>,
}

impl FreeCdga {
    pub fn new(gens: Vec<Generator>, d: Vec<Poly>) -> Result<Self> {
        if gens.len() != d.len() {
            return Err(Error::DimensionMismatch(format!("{} generators, {} differentials", gens.len(), d.len())));
        }
        let base = vec![false; gens.len()];
        Ok(Self { alg: GcAlgebra::new(gens), d, base })
    }

    /// Builds from an existing algebra handle.
    pub fn from_algebra(alg: GcAlgebra, d: Vec<Poly>) -> Result<Self> {
        if alg.ngens() != d.len() {
            return Err(Error::DimensionMismatch("differential list length".into()));
        }
        let base = vec![false; alg.ngens()];
        Ok(Self { alg, d, base })
    }

    /// ℚ[x_1, …, x_k] in degree 0 with zero differential.
    pub fn polynomial_ring(names: &[&str]) -> Self {
        let gens: Vec<Generator> = names.iter().map(|n| Generator::new(*n, 0)).collect();
        let d = vec![Poly::zero(); gens.len()];
        Self::new(gens, d).expect("matching lengths")
    }

    /// Marks generators as belonging to the base subalgebra.
    pub fn with_base(mut self, base: Vec<bool>) -> Result<Self> {
        if base.len() != self.alg.ngens() {
            return Err(Error::DimensionMismatch("base mask length".into()));
        }
        self.base = base;
        Ok(self)
    }

    pub fn algebra(&self) -> &GcAlgebra {
        &self.alg
    }

    pub fn ngens(&self) -> usize {
        self.alg.ngens()
    }

    pub fn generators(&self) -> &[Generator] {
        self.alg.generators()
    }

    pub fn is_base(&self, i: usize) -> bool {
        self.base[i]
    }

    pub fn base_mask(&self) -> &[bool] {
        &self.base
    }

    pub fn differential_on_generators(&self) -> &[Poly] {
        &self.d
    }

    pub fn differential(&self, p: &Poly) -> Poly {
        self.alg.derivation(&self.d, 1, p)
    }

    pub fn gen(&self, name: &str) -> Option<Poly> {
        self.alg.generator_index(name).map(|i| self.alg.gen(i))
    }

    /// True if every d(g) vanishes at the augmentation together with its
    /// linear part (the differential vanishes on the indecomposables).
    pub fn is_minimal(&self) -> bool {
        self.d.iter().all(|p| p.terms().all(|(m, _)| m.total() >= 2))
    }

    /// True if the all-generators-zero point is compatible with d.
    pub fn has_augmentation(&self) -> bool {
        self.d.iter().all(|p| self.alg.constant_term(p) == Q::from_integer(0.into()))
    }
}

/// Checks bidegrees, d² = 0 on generators, base closure, and the Leibniz
/// extension on all quadratic monomials of generators.
pub fn validate_cdga(b: &FreeCdga) -> Result<Report> {
    let alg = b.algebra();
    let gens = alg.generators();
    let mut report = Report::new();
    for (i, g) in gens.iter().enumerate() {
        let ok = b.d[i].terms().all(|(m, _)| {
            alg.mono_degree(m) == g.degree + 1
                && alg.mono_weight(m) == g.weight
                && alg.mono_internal_weight(m) == g.internal_weight
        });
        report.record(format!("d({}) has bidegree (+1, 0)", g.name), ok, || alg.fmt_poly(&b.d[i]));
    }
    for (i, g) in gens.iter().enumerate() {
        let dd = b.differential(&b.d[i]);
        report.record(format!("d^2({}) = 0", g.name), dd.is_zero(), || format!("d^2({}) = {}", g.name, alg.fmt_poly(&dd)));
    }
    for (i, g) in gens.iter().enumerate() {
        if b.base[i] {
            let ok = b.d[i].terms().all(|(m, _)| (0..gens.len()).all(|j| m.exponent(j) == 0 || b.base[j]));
            report.record(format!("d({}) stays in the base", g.name), ok, || alg.fmt_poly(&b.d[i]));
        }
    }
    for i in 0..gens.len() {
        for j in i..gens.len() {
            if i == j && gens[i].is_odd() {
                continue;
            }
            let (gi, gj) = (alg.gen(i), alg.gen(j));
            let prod = alg.mul(&gi, &gj);
            let lhs = b.differential(&prod);
            let sign = if gens[i].is_odd() { q(-1) } else { q(1) };
            let rhs = alg.mul(&b.d[i], &gj).add(&alg.mul(&gi, &b.d[j]).scale(&sign));
            if lhs != rhs {
                return Err(Error::SignError(format!("Leibniz fails on {}", alg.fmt_poly(&prod))));
            }
            let dd = b.differential(&lhs);
            report.record(format!("d^2({}) = 0", alg.fmt_poly(&prod)), dd.is_zero(), || alg.fmt_poly(&dd));
        }
    }
    Ok(report)
}

/// Kähler differentials: the free module on dg_i (for non-base generators),
/// with |dg_i| = |g_i|. Elements are coefficient lists, one per symbol.
#[derive(Clone, Debug)]
pub struct KaehlerModule {
    cdga: FreeCdga,
    symbols: Vec<usize>,
}

pub fn kaehler(b: &FreeCdga) -> KaehlerModule {
    let symbols = (0..b.ngens()).filter(|&i| !b.is_base(i)).collect();
    KaehlerModule { cdga: b.clone(), symbols }
}

impl KaehlerModule {
    pub fn rank(&self) -> usize {
        self.symbols.len()
    }

    pub fn symbol_names(&self) -> Vec<String> {
        self.symbols.iter().map(|&i| format!("d{}", self.cdga.generators()[i].name)).collect()
    }

    pub fn cdga(&self) -> &FreeCdga {
        &self.cdga
    }

    /// Universal derivation `f ↦ Σ (f ∂⃖_j) dg_j`.
    pub fn universal(&self, f: &Poly) -> Vec<Poly> {
        let alg = self.cdga.algebra();
        self.symbols.iter().map(|&j| alg.right_partial(j, f)).collect()
    }

    /// Induced differential: `d(f dg_i) = d(f) dg_i + (-1)^{|f|} f d(dg_i)` with
    /// `d(dg_i) = Σ_j (d(g_i) ∂⃖_j) dg_j`.
    pub fn differential(&self, elem: &[Poly]) -> Vec<Poly> {
        let alg = self.cdga.algebra();
        let mut out = vec![Poly::zero(); self.rank()];
        for (k, f) in elem.iter().enumerate() {
            out[k] = out[k].add(&self.cdga.differential(f));
            let ddg = self.universal(&self.cdga.d[self.symbols[k]]);
            for (m, c) in f.terms() {
                let sign = if alg.mono_degree(m).rem_euclid(2) == 1 { -c.clone() } else { c.clone() };
                let mono = Poly::from_monomial(m.clone(), sign);
                for (j, coef) in ddg.iter().enumerate() {
                    out[j] = out[j].add(&alg.mul(&mono, coef));
                }
            }
        }
        out
    }

    /// `d(dg_i)` as a module element.
    pub fn d_of_symbol(&self, k: usize) -> Vec<Poly> {
        self.universal(&self.cdga.d[self.symbols[k]])
    }

    pub fn fmt_element(&self, elem: &[Poly]) -> String {
        let alg = self.cdga.algebra();
        let names = self.symbol_names();
        let parts: Vec<String> = elem
            .iter()
            .zip(&names)
            .filter(|(p, _)| !p.is_zero())
            .map(|(p, n)| format!("({})*{}", alg.fmt_poly(p), n))
            .collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

/// A free graded-commutative algebra with two odd derivations: `d` of
/// bidegree (+1, 0) and `ε` of bidegree (+1, +1) in (degree, weight).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MixedCdga {
    pub alg: GcAlgebra,
    pub d: Vec<Poly>,
    pub eps: Vec<Poly>,
}

impl MixedCdga {
    pub fn apply_d(&self, p: &Poly) -> Poly {
        self.alg.derivation(&self.d, 1, p)
    }

    pub fn apply_eps(&self, p: &Poly) -> Poly {
        self.alg.derivation(&self.eps, 1, p)
    }

    pub fn apply_total(&self, p: &Poly) -> Poly {
        self.apply_d(p).add(&self.apply_eps(p))
    }

    /// Bidegrees of d and ε, and d² = ε² = dε + εd = 0. The three
    /// identities are derivations, so checking generators is complete;
    /// quadratic monomials are checked as well to exercise the signs.
    pub fn validate(&self) -> Report {
        let alg = &self.alg;
        let gens = alg.generators();
        let mut report = Report::new();
        for (i, g) in gens.iter().enumerate() {
            let ok = alg.is_homogeneous_of(&self.d[i], g.degree + 1, g.weight);
            report.record(format!("d({}) bidegree", g.name), ok, || alg.fmt_poly(&self.d[i]));
            let ok = alg.is_homogeneous_of(&self.eps[i], g.degree + 1, g.weight + 1);
            report.record(format!("eps({}) bidegree", g.name), ok, || alg.fmt_poly(&self.eps[i]));
        }
        let mut probes: Vec<Poly> = (0..gens.len()).map(|i| alg.gen(i)).collect();
        for i in 0..gens.len() {
            for j in i..gens.len() {
                if !(i == j && gens[i].is_odd()) {
                    probes.push(alg.mul(&alg.gen(i), &alg.gen(j)));
                }
            }
        }
        for p in &probes {
            let dd = self.apply_d(&self.apply_d(p));
            let ee = self.apply_eps(&self.apply_eps(p));
            let de = self.apply_d(&self.apply_eps(p)).add(&self.apply_eps(&self.apply_d(p)));
            let label = alg.fmt_poly(p);
            report.record(format!("d^2({label}) = 0"), dd.is_zero(), || alg.fmt_poly(&dd));
            report.record(format!("eps^2({label}) = 0"), ee.is_zero(), || alg.fmt_poly(&ee));
            report.record(format!("(d eps + eps d)({label}) = 0"), de.is_zero(), || alg.fmt_poly(&de));
        }
        report
    }

    /// Finite graded mixed complex spanned by the window's monomials.
    pub fn to_complex(&self, w: &Window) -> Result<GradedMixedComplex> {
        let basis = self.alg.basis(w)?;
        let d = self.alg.operator_matrix(|p| self.apply_d(p), &basis, &basis, w)?;
        let eps = self.alg.operator_matrix(|p| self.apply_eps(p), &basis, &basis, w)?;
        let elems = basis
            .iter()
            .map(|m| BasisElement::new(self.alg.fmt_mono(m), self.alg.mono_weight(m), self.alg.mono_degree(m)))
            .collect();
        GradedMixedComplex::new(BiGradedModule::new(elems), d, eps)
    }

    /// Underlying cdga (forgetting ε).
    pub fn underlying(&self) -> FreeCdga {
        FreeCdga::from_algebra(self.alg.clone(), self.d.clone()).expect("consistent lengths")
    }

    /// Basis of the weight-`p` part within the window.
    pub fn weight_basis(&self, p: i32, w: &Window) -> Result<Vec<Monomial>> {
        self.alg.basis_where(w, |m| self.alg.mono_weight(m) == p)
    }
}

/// Dimensions of the window's monomials, by (weight, degree).
pub fn bigraded_dims(alg: &GcAlgebra, w: &Window) -> Result<BTreeMap<(i32, i32), usize>> {
    let mut out = BTreeMap::new();
    for m in alg.basis(w)? {
        *out.entry((alg.mono_weight(&m), alg.mono_degree(&m))).or_insert(0) += 1;
    }
    Ok(out)
}
