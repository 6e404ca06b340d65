//! Multilinear components of As, Lie and P_n, words and the PBW map.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactlin::{q, solve_linear, SparseMatrix, Q};

pub const MAX_ARITY: usize = 4;

/// Linear combination of words in the labels `0..k`, i.e. an element of the
/// free associative algebra.
pub type AsElem = BTreeMap<Vec<u8>, Q>;

pub fn letter(i: u8) -> AsElem {
    BTreeMap::from([(vec![i], Q::one())])
}

pub fn add_into(acc: &mut AsElem, x: &AsElem, c: &Q) {
    for (w, v) in x {
        let e = acc.entry(w.clone()).or_insert_with(Q::zero);
        *e += v * c;
        if e.is_zero() {
            acc.remove(w);
        }
    }
}

pub fn concat(a: &AsElem, b: &AsElem) -> AsElem {
    let mut out = AsElem::new();
    for (u, x) in a {
        for (v, y) in b {
            let mut w = u.clone();
            w.extend(v);
            add_into(&mut out, &BTreeMap::from([(w, Q::one())]), &(x * y));
        }
    }
    out
}

pub fn commutator(a: &AsElem, b: &AsElem) -> AsElem {
    let mut out = concat(a, b);
    add_into(&mut out, &concat(b, a), &q(-1));
    out
}

/// All permutations of `items`, in lexicographic order of positions.
pub fn permutations<T: Clone>(items: &[T]) -> Vec<Vec<T>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let head = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, head.clone());
            out.push(p);
        }
    }
    out
}

/// Set partitions of `0..k`, blocks sorted by their least element.
pub fn set_partitions(k: usize) -> Vec<Vec<Vec<u8>>> {
    let mut out: Vec<Vec<Vec<u8>>> = vec![vec![]];
    for x in 0..k as u8 {
        let mut next = Vec::new();
        for p in &out {
            for b in 0..p.len() {
                let mut q = p.clone();
                q[b].push(x);
                next.push(q);
            }
            let mut q = p.clone();
            q.push(vec![x]);
            next.push(q);
        }
        out = next;
    }
    out.sort_by_key(|p| (std::cmp::Reverse(p.len()), p.clone()));
    out
}

/// Left-normed bracket `[[x_a, x_b], x_c]…` of the given label sequence.
pub fn left_normed(seq: &[u8]) -> AsElem {
    let mut acc = letter(seq[0]);
    for &x in &seq[1..] {
        acc = commutator(&acc, &letter(x));
    }
    acc
}

/// Basis of the multilinear Lie words on `labels`: the least label first,
/// the others in every order.
pub fn lie_basis(labels: &[u8]) -> Vec<Vec<u8>> {
    let mut sorted = labels.to_vec();
    sorted.sort();
    let (first, rest) = sorted.split_first().expect("nonempty label set");
    permutations(rest)
        .into_iter()
        .map(|p| {
            let mut s = vec![*first];
            s.extend(p);
            s
        })
        .collect()
}

/// A basis element of `P(k) = Sym(Lie)(k)`: one Lie word per block.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct PoissonWord(pub Vec<Vec<u8>>);

impl PoissonWord {
    pub fn brackets(&self) -> usize {
        self.0.iter().map(|b| b.len() - 1).sum()
    }

    pub fn label(&self) -> String {
        self.0.iter().map(|b| bracket_label(b)).collect::<Vec<_>>().join("*")
    }
}

fn bracket_label(seq: &[u8]) -> String {
    let mut s = format!("x{}", seq[0] + 1);
    for &x in &seq[1..] {
        s = format!("[{s},x{}]", x + 1);
    }
    s
}

pub fn poisson_basis(k: usize) -> Vec<PoissonWord> {
    let mut out = Vec::new();
    for part in set_partitions(k) {
        let choices: Vec<Vec<Vec<u8>>> = part.iter().map(|b| lie_basis(b)).collect();
        let mut acc: Vec<Vec<Vec<u8>>> = vec![vec![]];
        for c in &choices {
            acc = acc.iter().flat_map(|pre| c.iter().map(move |w| [pre.clone(), vec![w.clone()]].concat())).collect();
        }
        out.extend(acc.into_iter().map(PoissonWord));
    }
    out
}

/// Symmetrized product of Lie elements in the associative algebra.
pub fn symmetrize(atoms: &[AsElem]) -> AsElem {
    let idx: Vec<usize> = (0..atoms.len()).collect();
    let perms = permutations(&idx);
    let scale = Q::new(1.into(), (perms.len() as i64).into());
    let mut out = AsElem::new();
    for p in perms {
        let mut prod = BTreeMap::from([(vec![], Q::one())]);
        for &i in &p {
            prod = concat(&prod, &atoms[i]);
        }
        add_into(&mut out, &prod, &scale);
    }
    out
}

/// PBW image of a Poisson basis word.
pub fn pbw(word: &PoissonWord) -> AsElem {
    symmetrize(&word.0.iter().map(|b| left_normed(b)).collect::<Vec<_>>())
}

/// Coordinates of an element of `As(k)` on the PBW images of the Poisson
/// basis of arity `k`.
pub struct PbwDecomposer {
    pub basis: Vec<PoissonWord>,
    words: Vec<Vec<u8>>,
    matrix: SparseMatrix,
}

impl PbwDecomposer {
    pub fn new(k: usize) -> Self {
        let basis = poisson_basis(k);
        let words = permutations(&(0..k as u8).collect::<Vec<_>>());
        let pos: BTreeMap<&Vec<u8>, usize> = words.iter().enumerate().map(|(i, w)| (w, i)).collect();
        let mut trip = Vec::new();
        for (col, b) in basis.iter().enumerate() {
            for (w, c) in pbw(b) {
                trip.push((pos[&w], col, c));
            }
        }
        let matrix = SparseMatrix::from_triplets(words.len(), basis.len(), trip);
        Self { basis, words, matrix }
    }

    pub fn is_basis(&self) -> bool {
        self.matrix.rows() == self.matrix.cols() && self.matrix.is_invertible()
    }

    pub fn coordinates(&self, x: &AsElem) -> Result<Vec<Q>> {
        let pos: BTreeMap<&Vec<u8>, usize> = self.words.iter().enumerate().map(|(i, w)| (w, i)).collect();
        let mut rhs = vec![Q::zero(); self.words.len()];
        for (w, c) in x {
            let i = pos.get(w).ok_or_else(|| Error::Invalid(format!("word {w:?} is not multilinear")))?;
            rhs[*i] = c.clone();
        }
        Ok(solve_linear(&self.matrix, &rhs)?.particular)
    }
}

/// Operadic `∘_i` on As: letter `i` of each word of `p` is replaced by the
/// words of `r` shifted by `i`, later letters move up by `arity(r) - 1`.
pub fn as_compose(p: &AsElem, i: u8, r: &AsElem, r_arity: usize) -> AsElem {
    let shift = r_arity as u8 - 1;
    let mut out = AsElem::new();
    for (u, x) in p {
        for (v, y) in r {
            let mut w = Vec::new();
            for &a in u {
                if a == i {
                    w.extend(v.iter().map(|b| b + i));
                } else if a > i {
                    w.push(a + shift);
                } else {
                    w.push(a);
                }
            }
            add_into(&mut out, &BTreeMap::from([(w, Q::one())]), &(x * y));
        }
    }
    out
}

/// Element of the free Poisson algebra: products of Lie elements (each kept
/// as a commutator polynomial), with coefficients.
#[derive(Clone, Debug, Default)]
pub struct PoissonElem(pub Vec<(Vec<AsElem>, Q)>);

impl PoissonElem {
    pub fn atom(a: AsElem) -> Self {
        PoissonElem(vec![(vec![a], Q::one())])
    }

    pub fn product(&self, other: &PoissonElem) -> PoissonElem {
        let mut out = Vec::new();
        for (a, x) in &self.0 {
            for (b, y) in &other.0 {
                out.push(([a.clone(), b.clone()].concat(), x * y));
            }
        }
        PoissonElem(out)
    }

    /// Leibniz in both slots, commutators on the Lie atoms.
    pub fn bracket(&self, other: &PoissonElem) -> PoissonElem {
        let mut out = Vec::new();
        for (a, x) in &self.0 {
            for (b, y) in &other.0 {
                for i in 0..a.len() {
                    for j in 0..b.len() {
                        let mut atoms: Vec<AsElem> = vec![commutator(&a[i], &b[j])];
                        atoms.extend(a.iter().enumerate().filter(|(k, _)| *k != i).map(|(_, v)| v.clone()));
                        atoms.extend(b.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, v)| v.clone()));
                        out.push((atoms, x * y));
                    }
                }
            }
        }
        PoissonElem(out)
    }

    pub fn to_associative(&self) -> AsElem {
        let mut out = AsElem::new();
        for (atoms, c) in &self.0 {
            add_into(&mut out, &symmetrize(atoms), c);
        }
        out
    }
}

/// Evaluates a Poisson basis word on the given inputs (one per label).
pub fn evaluate_poisson(word: &PoissonWord, inputs: &[PoissonElem]) -> PoissonElem {
    let mut result = PoissonElem(vec![(vec![], Q::one())]);
    for block in &word.0 {
        let mut acc = inputs[block[0] as usize].clone();
        for &x in &block[1..] {
            acc = acc.bracket(&inputs[x as usize]);
        }
        result = result.product(&acc);
    }
    result
}

/// Operadic `∘_i` in P_1 computed by Leibniz expansion, in Poisson-basis
/// coordinates of arity `a + b - 1`.
pub fn poisson_compose(p: &PoissonWord, a: usize, i: u8, r: &PoissonWord, b: usize) -> Result<Vec<Q>> {
    let shift = b as u8 - 1;
    let r_inputs: Vec<PoissonElem> = (0..b as u8).map(|l| PoissonElem::atom(letter(l + i))).collect();
    let inner = evaluate_poisson(r, &r_inputs);
    let inputs: Vec<PoissonElem> = (0..a as u8)
        .map(|l| match l.cmp(&i) {
            std::cmp::Ordering::Less => PoissonElem::atom(letter(l)),
            std::cmp::Ordering::Equal => inner.clone(),
            std::cmp::Ordering::Greater => PoissonElem::atom(letter(l + shift)),
        })
        .collect();
    let out = evaluate_poisson(p, &inputs);
    PbwDecomposer::new(a + b - 1).coordinates(&out.to_associative())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OperadKind {
    As,
    Lie,
    Pn,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MultilinearElement {
    pub label: String,
    pub degree: i32,
    pub weight: i32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MultilinearSpace {
    pub kind: OperadKind,
    pub arity: usize,
    pub basis: Vec<MultilinearElement>,
}

impl MultilinearSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Number of basis elements of each weight, from weight 0 downwards.
    pub fn weight_distribution(&self) -> Vec<usize> {
        let lowest = self.basis.iter().map(|b| b.weight).min().unwrap_or(0);
        (lowest..=0).rev().map(|w| self.basis.iter().filter(|b| b.weight == w).count()).collect()
    }
}

/// Products have weight 0 and degree 0; each bracket has weight -1 and
/// degree `1 - n`.
pub fn multilinear_basis(kind: OperadKind, arity: usize, n: i32) -> Result<MultilinearSpace> {
    if arity > MAX_ARITY {
        return Err(Error::ArityTooLarge(arity));
    }
    if arity == 0 {
        return Ok(MultilinearSpace { kind, arity, basis: vec![] });
    }
    let labels: Vec<u8> = (0..arity as u8).collect();
    let elem = |label: String, brackets: usize| MultilinearElement {
        label,
        degree: (1 - n) * brackets as i32,
        weight: -(brackets as i32),
    };
    let basis = match kind {
        OperadKind::As => permutations(&labels)
            .into_iter()
            .map(|w| elem(w.iter().map(|x| format!("x{}", x + 1)).collect::<Vec<_>>().join("*"), 0))
            .collect(),
        OperadKind::Lie => lie_basis(&labels).into_iter().map(|w| elem(bracket_label(&w), arity - 1)).collect(),
        OperadKind::Pn => poisson_basis(arity).into_iter().map(|w| elem(w.label(), w.brackets())).collect(),
    };
    Ok(MultilinearSpace { kind, arity, basis })
}
