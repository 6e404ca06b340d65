//! Builds library objects from manifest blocks.

use std::collections::BTreeMap;

use num_traits::{One, Signed};
use shpoisson::exactlin::Q;
use shpoisson::freecdga::{de_rham, ClosedFormTower, FreeCdga, GcAlgebra, Generator, MixedCdga, Poly, Window};
use shpoisson::gradedmixed::{BasisElement, GradedMixedComplex};
use shpoisson::lieinfty::LieAlgebra;
use shpoisson::polyvec::{polyvectors, MaurerCartanTower, PolyvectorAlgebra};

use crate::dsl::{Block, BlockKind, Entry, Expr, Key, Manifest, Span, Value};
use crate::error::{usage, CliResult};

fn at(span: Span, msg: impl std::fmt::Display) -> crate::error::CliError {
    usage(format!("{span}: {msg}"))
}

pub fn eval_const(e: &Expr) -> Option<Q> {
    match e {
        Expr::Number(n) => Some(n.clone()),
        Expr::Name(_) => None,
        Expr::Sum(xs) => xs.iter().map(eval_const).sum(),
        Expr::Product(xs) => xs.iter().map(eval_const).product(),
        Expr::Power(b, k) => eval_const(b).map(|b| (0..*k).fold(Q::one(), |acc, _| acc * &b)),
        Expr::Neg(x) => eval_const(x).map(|v| -v),
    }
}

pub fn eval_poly(alg: &GcAlgebra, e: &Expr) -> Result<Poly, String> {
    Ok(match e {
        Expr::Number(n) => alg.constant(n.clone()),
        Expr::Name(n) => alg.gen(alg.generator_index(n).ok_or_else(|| format!("unknown generator `{n}`"))?),
        Expr::Sum(xs) => {
            let mut acc = Poly::zero();
            for x in xs {
                acc = acc.add(&eval_poly(alg, x)?);
            }
            acc
        }
        Expr::Product(xs) => {
            let mut acc = alg.one();
            for x in xs {
                acc = alg.mul(&acc, &eval_poly(alg, x)?);
            }
            acc
        }
        Expr::Power(b, k) => alg.pow(&eval_poly(alg, b)?, *k),
        Expr::Neg(x) => eval_poly(alg, x)?.neg(),
    })
}

fn expr_of(entry: &Entry) -> CliResult<&Expr> {
    match &entry.value {
        Value::Expr(e) => Ok(e),
        Value::List(_) => Err(at(entry.span, format!("`{}` expects an expression, not a list", entry.key))),
    }
}

fn rational(entry: &Entry) -> CliResult<Q> {
    eval_const(expr_of(entry)?).ok_or_else(|| at(entry.span, format!("`{}` must be a rational constant", entry.key)))
}

fn integer(entry: &Entry) -> CliResult<i32> {
    let v = rational(entry)?;
    if !v.is_integer() {
        return Err(at(entry.span, format!("`{}` must be an integer", entry.key)));
    }
    i32::try_from(v.to_integer()).map_err(|_| at(entry.span, format!("`{}` is out of range", entry.key)))
}

fn poly(alg: &GcAlgebra, entry: &Entry) -> CliResult<Poly> {
    eval_poly(alg, expr_of(entry)?).map_err(|m| at(entry.span, m))
}

fn list(entry: &Entry) -> CliResult<&[Value]> {
    match &entry.value {
        Value::List(items) => Ok(items),
        Value::Expr(_) => Err(at(entry.span, format!("`{}` expects a list", entry.key))),
    }
}

fn rational_list(entry: &Entry) -> CliResult<Vec<Q>> {
    list(entry)?
        .iter()
        .map(|v| match v {
            Value::Expr(e) => eval_const(e),
            Value::List(_) => None,
        })
        .collect::<Option<Vec<Q>>>()
        .ok_or_else(|| at(entry.span, format!("`{}` must be a list of rational constants", entry.key)))
}

fn unknown_key(entry: &Entry, block: &Block) -> crate::error::CliError {
    at(entry.span, format!("unknown key `{}` in {} block `{}`", entry.key, block.kind.keyword(), block.name))
}

fn expect_kind(block: &Block, kind: BlockKind) -> CliResult<()> {
    if block.kind == kind {
        Ok(())
    } else {
        Err(at(block.span, format!("`{}` is a {} block, expected {}", block.name, block.kind.keyword(), kind.keyword())))
    }
}

/// Indexed family `prefix<k>` such as `p0`, `omega2`.
fn numbered(key: &Key, prefix: &str) -> Option<usize> {
    if key.argument.is_some() || !key.indices.is_empty() {
        return None;
    }
    let rest = key.name.strip_prefix(prefix)?;
    if rest.is_empty() || !rest.chars().all(|c| c.is_ascii_digit()) {
        return None;
    }
    rest.parse().ok()
}

#[derive(Clone, Debug)]
pub struct AlgebraModel {
    pub cdga: FreeCdga,
    /// ε on generators, when the block declares one.
    pub eps: Option<Vec<Poly>>,
}

impl AlgebraModel {
    pub fn mixed(&self) -> Option<MixedCdga> {
        self.eps.as_ref().map(|eps| MixedCdga {
            alg: self.cdga.algebra().clone(),
            d: self.cdga.differential_on_generators().to_vec(),
            eps: eps.clone(),
        })
    }
}

/// Keys: `deg(x)`, `weight(x)`, `d(x)`, `eps(x)`. Generators are ordered by
/// their `deg` entries.
pub fn algebra(block: &Block) -> CliResult<AlgebraModel> {
    expect_kind(block, BlockKind::Algebra)?;
    let mut order = Vec::new();
    let mut degrees = BTreeMap::new();
    let mut weights = BTreeMap::new();
    for e in &block.entries {
        let arg = e.key.argument.clone();
        match (e.key.name.as_str(), arg, e.key.indices.is_empty()) {
            ("deg", Some(x), true) => {
                order.push(x.clone());
                degrees.insert(x, integer(e)?);
            }
            ("weight", Some(x), true) => {
                weights.insert(x, integer(e)?);
            }
            ("d" | "eps", Some(_), true) => {}
            _ => return Err(unknown_key(e, block)),
        }
    }
    let gens: Vec<Generator> =
        order.iter().map(|x| Generator::new(x.clone(), degrees[x]).with_weight(weights.get(x).copied().unwrap_or(0))).collect();
    let alg = GcAlgebra::new(gens);
    let n = alg.ngens();
    let mut d = vec![Poly::zero(); n];
    let mut eps: Option<Vec<Poly>> = None;
    for e in &block.entries {
        let Some(x) = &e.key.argument else { continue };
        let i = order.iter().position(|g| g == x).expect("resolved generator");
        match e.key.name.as_str() {
            "d" => d[i] = poly(&alg, e)?,
            "eps" => eps.get_or_insert_with(|| vec![Poly::zero(); n])[i] = poly(&alg, e)?,
            _ => {}
        }
    }
    Ok(AlgebraModel { cdga: FreeCdga::from_algebra(alg, d)?, eps })
}

fn referenced_algebra<'a>(m: &'a Manifest, block: &Block) -> CliResult<(&'a Block, AlgebraModel)> {
    let on = block.get_plain("on").ok_or_else(|| at(block.span, format!("`{}` needs `on = <algebra>`", block.name)))?;
    let name = on.value.as_name().expect("resolved reference");
    let target = m.block(name).expect("resolved reference");
    Ok((target, algebra(target)?))
}

/// Keys: `dim`, `bracket[i][j] = [c_1, …, c_dim]` (1-based, i ≠ j) and an
/// optional `t = […]` over the monomials `e_i e_j`, i ≤ j.
pub fn lie(block: &Block) -> CliResult<(LieAlgebra, Option<Vec<Q>>)> {
    expect_kind(block, BlockKind::Lie)?;
    let dim_entry = block.get_plain("dim").ok_or_else(|| at(block.span, format!("`{}` needs `dim`", block.name)))?;
    let dim = usize::try_from(integer(dim_entry)?).map_err(|_| at(dim_entry.span, "`dim` must be non-negative"))?;
    let mut g = LieAlgebra::zero(dim);
    let mut t = None;
    for e in &block.entries {
        match (e.key.name.as_str(), e.key.argument.is_none(), e.key.indices.as_slice()) {
            ("dim", true, []) => {}
            ("t", true, []) => {
                let coeffs = rational_list(e)?;
                if coeffs.len() != dim * (dim + 1) / 2 {
                    return Err(at(e.span, format!("`t` needs {} coefficients", dim * (dim + 1) / 2)));
                }
                t = Some(coeffs);
            }
            ("bracket", true, &[i, j]) => {
                let (i, j) = (i as usize, j as usize);
                if i == 0 || j == 0 || i > dim || j > dim || i == j {
                    return Err(at(e.span, format!("bracket indices must be distinct and in 1..={dim}")));
                }
                let v = rational_list(e)?;
                if v.len() != dim {
                    return Err(at(e.span, format!("bracket value needs {dim} coefficients")));
                }
                g.set_bracket(i - 1, j - 1, &v);
            }
            _ => return Err(unknown_key(e, block)),
        }
    }
    Ok((g, t))
}

#[derive(Clone, Debug)]
pub struct PoissonModel {
    pub base: AlgebraModel,
    pub pol: PolyvectorAlgebra,
    pub tower: MaurerCartanTower,
}

/// Keys: `on`, `shift` (default 0), `p0`, `p1`, … in `Pol(B, shift+1)` and
/// an optional truncation `bound` (default: number of components given).
pub fn poisson(m: &Manifest, block: &Block) -> CliResult<PoissonModel> {
    expect_kind(block, BlockKind::Poisson)?;
    let (_, base) = referenced_algebra(m, block)?;
    let n = block.get_plain("shift").map(integer).transpose()?.unwrap_or(0);
    let pol = polyvectors(&base.cdga, n + 1);
    let mut parts = BTreeMap::new();
    let mut bound = None;
    for e in &block.entries {
        if let Some(k) = numbered(&e.key, "p") {
            parts.insert(k, poly(pol.algebra(), e)?);
            continue;
        }
        match e.key.name.as_str() {
            "on" | "shift" if e.key.argument.is_none() && e.key.indices.is_empty() => {}
            "bound" if e.key.argument.is_none() && e.key.indices.is_empty() => {
                bound = Some(usize::try_from(integer(e)?).map_err(|_| at(e.span, "`bound` must be non-negative"))?);
            }
            _ => return Err(unknown_key(e, block)),
        }
    }
    let len = parts.keys().next_back().map_or(0, |k| k + 1);
    let components = (0..len).map(|k| parts.get(&k).cloned().unwrap_or_else(Poly::zero)).collect();
    let mut tower = MaurerCartanTower::new(n, components);
    if let Some(b) = bound {
        tower = tower.with_bound(b);
    }
    Ok(PoissonModel { base, pol, tower })
}

/// Keys: `on`, `shift` (the degree n, default 0), `p` (default 2) and the
/// components `omega<j>` for `j ≥ p`.
pub fn form(m: &Manifest, block: &Block, window: &Window) -> CliResult<(AlgebraModel, ClosedFormTower)> {
    expect_kind(block, BlockKind::Form)?;
    let (_, base) = referenced_algebra(m, block)?;
    let n = block.get_plain("shift").map(integer).transpose()?.unwrap_or(0);
    let p = block.get_plain("p").map(integer).transpose()?.unwrap_or(2);
    let dr = de_rham(&base.cdga);
    let mut parts = BTreeMap::new();
    for e in &block.entries {
        if let Some(j) = numbered(&e.key, "omega") {
            if (j as i32) < p {
                return Err(at(e.span, format!("component `{}` lies below p = {p}", e.key)));
            }
            parts.insert(j as i32, poly(dr.algebra(), e)?);
            continue;
        }
        match e.key.name.as_str() {
            "on" | "shift" | "p" if e.key.argument.is_none() && e.key.indices.is_empty() => {}
            _ => return Err(unknown_key(e, block)),
        }
    }
    let top = parts.keys().next_back().copied().unwrap_or(p);
    let components = (p..=top).map(|j| parts.get(&j).cloned().unwrap_or_else(Poly::zero)).collect();
    Ok((base, ClosedFormTower::new(&dr, p, n, components, *window)))
}

#[derive(Clone, Debug)]
pub struct IdealModel {
    pub base: AlgebraModel,
    pub generators: Vec<Poly>,
    pub powers: Vec<u32>,
}

/// Keys: `on`, `generators = [f_1, …]` and optional `powers = [n_1, …]`.
pub fn ideal(m: &Manifest, block: &Block) -> CliResult<IdealModel> {
    expect_kind(block, BlockKind::Ideal)?;
    let (_, base) = referenced_algebra(m, block)?;
    let mut generators = None;
    let mut powers = None;
    for e in &block.entries {
        match e.key.name.as_str() {
            "on" if e.key.argument.is_none() && e.key.indices.is_empty() => {}
            "generators" if e.key.argument.is_none() && e.key.indices.is_empty() => {
                let alg = base.cdga.algebra();
                let fs = list(e)?
                    .iter()
                    .map(|v| match v {
                        Value::Expr(x) => eval_poly(alg, x).map_err(|msg| at(e.span, msg)),
                        Value::List(_) => Err(at(e.span, "nested list in `generators`")),
                    })
                    .collect::<CliResult<Vec<Poly>>>()?;
                generators = Some(fs);
            }
            "powers" if e.key.argument.is_none() && e.key.indices.is_empty() => {
                let ps = rational_list(e)?
                    .into_iter()
                    .map(|v| if v.is_integer() && v.is_positive() { u32::try_from(v.to_integer()).ok() } else { None })
                    .collect::<Option<Vec<u32>>>()
                    .ok_or_else(|| at(e.span, "`powers` must be positive integers"))?;
                powers = Some(ps);
            }
            _ => return Err(unknown_key(e, block)),
        }
    }
    let generators = generators.ok_or_else(|| at(block.span, format!("`{}` needs `generators`", block.name)))?;
    let powers = powers.unwrap_or_else(|| vec![1; generators.len()]);
    if powers.len() != generators.len() {
        return Err(at(block.span, "`powers` and `generators` differ in length"));
    }
    Ok(IdealModel { base, generators, powers })
}

/// Keys: `cell(a) = [weight, degree]`, `d(a)` and `eps(a)` as linear
/// combinations of cells.
pub fn complex(block: &Block) -> CliResult<GradedMixedComplex> {
    expect_kind(block, BlockKind::Complex)?;
    let mut basis = Vec::new();
    for e in &block.entries {
        match (e.key.name.as_str(), &e.key.argument, e.key.indices.is_empty()) {
            ("cell", Some(a), true) => {
                let wd = rational_list(e)?;
                let ints: Option<Vec<i32>> =
                    wd.iter().map(|v| if v.is_integer() { i32::try_from(v.to_integer()).ok() } else { None }).collect();
                match ints.as_deref() {
                    Some(&[w, deg]) => basis.push(BasisElement::new(a.clone(), w, deg)),
                    _ => return Err(at(e.span, "a cell needs `[weight, degree]` as integers")),
                }
            }
            ("d" | "eps", Some(_), true) => {}
            _ => return Err(unknown_key(e, block)),
        }
    }
    let cells = GcAlgebra::new(basis.iter().map(|b| Generator::new(b.label.clone(), 0)).collect());
    let mut d = Vec::new();
    let mut eps = Vec::new();
    for e in &block.entries {
        let Some(a) = &e.key.argument else { continue };
        let target = match e.key.name.as_str() {
            "d" => &mut d,
            "eps" => &mut eps,
            _ => continue,
        };
        let col = basis.iter().position(|b| &b.label == a).expect("resolved cell");
        let image = poly(&cells, e)?;
        for (m, c) in image.terms() {
            if m.total() != 1 {
                return Err(at(e.span, "images must be linear combinations of cells"));
            }
            let row = m.exponents().iter().position(|&x| x == 1).expect("linear monomial");
            target.push((row, col, c.clone()));
        }
    }
    Ok(GradedMixedComplex::from_maps(basis, &d, &eps)?)
}

/// Block describing `e` such that `complex(&to_block(name, e)) == e`.
pub fn complex_block(name: &str, e: &GradedMixedComplex) -> Block {
    let span = Span::default();
    let mut entries = Vec::new();
    let number = |v: i32| Value::Expr(Expr::Number(Q::from_integer(v.into())));
    for b in e.basis() {
        entries.push(Entry {
            key: Key { name: "cell".into(), argument: Some(b.label.clone()), indices: vec![] },
            value: Value::List(vec![number(b.weight), number(b.degree)]),
            span,
        });
    }
    for (key, m) in [("d", &e.d), ("eps", &e.eps)] {
        let mut images: BTreeMap<usize, Vec<Expr>> = BTreeMap::new();
        for (r, c, v) in m.entries() {
            let cell = Expr::name(e.basis()[r].label.clone());
            let term = if v.is_one() { cell } else { Expr::Product(vec![Expr::Number(v.clone()), cell]) };
            images.entry(c).or_default().push(term);
        }
        for (c, mut terms) in images {
            let value = if terms.len() == 1 { terms.pop().expect("one term") } else { Expr::Sum(terms) };
            entries.push(Entry {
                key: Key { name: key.into(), argument: Some(e.basis()[c].label.clone()), indices: vec![] },
                value: Value::Expr(value),
                span,
            });
        }
    }
    Block { kind: BlockKind::Complex, name: name.into(), entries, span }
}

/// Window overrides from an `options` block.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct WindowOverrides {
    pub max_length: Option<i32>,
    pub max_weight: Option<i32>,
    pub min_degree: Option<i32>,
    pub max_degree: Option<i32>,
}

impl WindowOverrides {
    pub fn apply(&self, w: &mut Window) {
        if let Some(v) = self.max_length {
            w.max_length = v;
        }
        if let Some(v) = self.max_weight {
            w.max_weight = v;
        }
        if let Some(v) = self.min_degree {
            w.min_degree = v;
        }
        if let Some(v) = self.max_degree {
            w.max_degree = v;
        }
    }
}

pub fn options(block: &Block) -> CliResult<WindowOverrides> {
    expect_kind(block, BlockKind::Options)?;
    let mut o = WindowOverrides::default();
    for e in &block.entries {
        let slot = match e.key.name.as_str() {
            "max_length" => &mut o.max_length,
            "max_weight" => &mut o.max_weight,
            "min_degree" => &mut o.min_degree,
            "max_degree" => &mut o.max_degree,
            _ => return Err(unknown_key(e, block)),
        };
        *slot = Some(integer(e)?);
    }
    Ok(o)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::parse;
    use shpoisson::exactlin::q;
    use shpoisson::fixtures::{random_mixed_complex, rng};

    #[test]
    fn algebra_with_differential() {
        let m = parse("algebra B { deg(x) = 0; deg(y) = -1; d(y) = x^2; }").unwrap();
        let a = algebra(&m.blocks[0]).unwrap();
        let alg = a.cdga.algebra();
        assert_eq!(a.cdga.differential_on_generators()[1], alg.pow(&alg.gen(0), 2));
        assert!(a.eps.is_none());
    }

    #[test]
    fn lie_brackets_are_one_based() {
        let m = parse("lie g { dim = 2; bracket[1][2] = [0, 1]; }").unwrap();
        let (g, t) = lie(&m.blocks[0]).unwrap();
        assert_eq!(g, LieAlgebra::nonabelian2());
        assert!(t.is_none());
    }

    #[test]
    fn poisson_components_fill_gaps() {
        let m = parse("algebra B { deg(x) = 0; deg(y) = 0; } poisson P { on = B; p0 = @x*@y; p2 = 0; }").unwrap();
        let p = poisson(&m, &m.blocks[1]).unwrap();
        assert_eq!(p.tower.components.len(), 3);
        assert!(p.tower.components[1].is_zero());
        assert_eq!(p.pol.shift(), 1);
    }

    #[test]
    fn complexes_round_trip_through_blocks() {
        let mut r = rng(17);
        for _ in 0..5 {
            let e = random_mixed_complex(&mut r, 3);
            let block = complex_block("E", &e);
            let text = crate::dsl::serialize(&Manifest { blocks: vec![block] });
            let back = complex(&parse(&text).unwrap().blocks[0]).unwrap();
            assert_eq!(back, e);
        }
    }

    #[test]
    fn options_override_windows() {
        let m = parse("options o { max_weight = 3; min_degree = -2; }").unwrap();
        let mut w = Window::default();
        options(&m.blocks[0]).unwrap().apply(&mut w);
        assert_eq!((w.max_weight, w.min_degree, w.max_degree), (3, -2, 8));
        assert_eq!(eval_const(&Expr::Power(Box::new(Expr::Number(q(2))), 3)), Some(q(8)));
    }
}
