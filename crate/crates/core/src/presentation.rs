//! Quivers with relations and the finite-dimensional algebra `kQ/I`.
//!
//! Paths are written source to target and compose left to right. The basis
//! of `kQ/I` is built one path length at a time: every basis path of length
//! `n - 1` is extended by each arrow leaving its target, the relations of
//! length `L` are multiplied on the left by basis paths of length `n - L`,
//! and the candidates that survive row reduction become the new basis.
//! Each candidate is rewritten once, so multiplying a basis path by an arrow
//! afterwards is a table lookup.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::linalg::Matrix;
use crate::reps::Representation;

pub const DEFAULT_PATH_BOUND: usize = 32;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
}

impl Quiver {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_vertex(&mut self, name: &str) -> Result<usize> {
        if self.vertex_index(name).is_some() {
            return Err(Error::Validation(format!("duplicate vertex `{name}`")));
        }
        self.vertices.push(name.to_string());
        Ok(self.vertices.len() - 1)
    }

    pub fn add_arrow(&mut self, name: &str, source: &str, target: &str) -> Result<usize> {
        if self.arrow_index(name).is_some() {
            return Err(Error::Validation(format!("duplicate arrow `{name}`")));
        }
        let s = self
            .vertex_index(source)
            .ok_or_else(|| Error::Validation(format!("arrow `{name}`: unknown vertex `{source}`")))?;
        let t = self
            .vertex_index(target)
            .ok_or_else(|| Error::Validation(format!("arrow `{name}`: unknown vertex `{target}`")))?;
        self.arrows.push(Arrow { name: name.to_string(), source: s, target: t });
        Ok(self.arrows.len() - 1)
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == name)
    }

    pub fn arrow_index(&self, name: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.name == name)
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_arrows(&self) -> usize {
        self.arrows.len()
    }

    pub fn arrow(&self, a: usize) -> &Arrow {
        &self.arrows[a]
    }

    /// Same vertices and arrow names, every arrow reversed.
    pub fn opposite(&self) -> Quiver {
        Quiver {
            vertices: self.vertices.clone(),
            arrows: self
                .arrows
                .iter()
                .map(|a| Arrow { name: a.name.clone(), source: a.target, target: a.source })
                .collect(),
        }
    }

    /// Parses `a.b.c` into arrow indices.
    pub fn parse_word(&self, word: &str) -> Result<Vec<usize>> {
        word.split('.')
            .map(|n| {
                let n = n.trim();
                self.arrow_index(n).ok_or_else(|| Error::Validation(format!("unknown arrow `{n}`")))
            })
            .collect()
    }

    pub fn word_name(&self, word: &[usize]) -> String {
        word.iter().map(|&a| self.arrows[a].name.as_str()).collect::<Vec<_>>().join(".")
    }

    fn check_word(&self, word: &[usize]) -> Result<(usize, usize)> {
        let first = word.first().ok_or_else(|| Error::Validation("empty path in relation".into()))?;
        for w in word.windows(2) {
            if self.arrows[w[0]].target != self.arrows[w[1]].source {
                return Err(Error::Validation(format!("path `{}` is not composable", self.word_name(word))));
            }
        }
        Ok((self.arrows[*first].source, self.arrows[*word.last().unwrap()].target))
    }
}

/// A linear combination of parallel paths.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub terms: Vec<(Scalar, Vec<usize>)>,
}

impl Relation {
    pub fn new(terms: Vec<(Scalar, Vec<usize>)>) -> Self {
        Relation { terms }
    }

    /// `Relation::from_words(&q, f, &[(1, "c.e"), (-1, "k.l")])`
    pub fn from_words(quiver: &Quiver, field: FieldSpec, terms: &[(i64, &str)]) -> Result<Self> {
        let terms = terms
            .iter()
            .map(|(c, w)| Ok((field.from_i64(*c), quiver.parse_word(w)?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(Relation { terms })
    }

    pub fn reversed(&self) -> Relation {
        Relation {
            terms: self
                .terms
                .iter()
                .map(|(c, w)| (c.clone(), w.iter().rev().copied().collect()))
                .collect(),
        }
    }

    pub fn length(&self) -> usize {
        self.terms.first().map_or(0, |t| t.1.len())
    }

    pub fn display(&self, quiver: &Quiver) -> String {
        let mut out = String::new();
        for (i, (c, w)) in self.terms.iter().enumerate() {
            let neg = -c;
            let (sign, mag) = match c {
                Scalar::Q(q) if q < &num_rational::BigRational::from_integer(0.into()) => ("-", neg),
                Scalar::Fp { value, p } if *value > p / 2 => ("-", neg),
                _ => ("+", c.clone()),
            };
            if i == 0 {
                if sign == "-" {
                    out.push_str("- ");
                }
            } else {
                out.push_str(&format!(" {sign} "));
            }
            out.push_str(&format!("{mag} * {}", quiver.word_name(w)));
        }
        out
    }
}

/// One basis path of `kQ/I`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisPath {
    pub source: usize,
    pub target: usize,
    pub word: Vec<usize>,
}

impl BasisPath {
    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.word.is_empty()
    }
}

/// Sparse algebra element: (basis index, coefficient).
pub type Combo = Vec<(usize, Scalar)>;

#[derive(Debug)]
struct AlgebraData {
    field: FieldSpec,
    quiver: Quiver,
    relations: Vec<Relation>,
    basis: Vec<BasisPath>,
    /// `table[b][a]`: normal form of `b . a`; `None` when `a` does not start at `target(b)`.
    table: Vec<Vec<Option<Combo>>>,
    from: Vec<Vec<usize>>,
}

/// Handle on a bound quiver algebra. Cloning is cheap; `opposite` flips a
/// flag on a shared pair, so `a.opposite().opposite() == a`.
#[derive(Clone)]
pub struct Algebra {
    pair: Arc<[AlgebraData; 2]>,
    side: usize,
}

impl PartialEq for Algebra {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.pair, &other.pair) && self.side == other.side
    }
}

impl Eq for Algebra {}

impl fmt::Debug for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Algebra({} vertices, {} arrows, dim {}{})",
            self.quiver().num_vertices(),
            self.quiver().num_arrows(),
            self.dim(),
            if self.side == 1 { ", opposite" } else { "" }
        )
    }
}

fn add_into(acc: &mut BTreeMap<usize, Scalar>, idx: usize, c: &Scalar) {
    if c.is_zero() {
        return;
    }
    let e = acc.entry(idx).or_insert_with(|| c.field().zero());
    *e = &*e + c;
    if e.is_zero() {
        acc.remove(&idx);
    }
}

impl AlgebraData {
    fn build(field: FieldSpec, quiver: Quiver, relations: Vec<Relation>, bound: usize) -> Result<Self> {
        let nv = quiver.num_vertices();
        let na = quiver.num_arrows();
        let mut basis: Vec<BasisPath> =
            (0..nv).map(|v| BasisPath { source: v, target: v, word: Vec::new() }).collect();
        let mut table: Vec<Vec<Option<Combo>>> = vec![vec![None; na]; nv];
        let mut levels: Vec<Vec<usize>> = vec![(0..nv).collect()];

        let mut n = 1;
        loop {
            let prev = &levels[n - 1];
            let mut cands: Vec<(usize, usize)> = Vec::new();
            let mut cand_index = BTreeMap::new();
            for &p in prev {
                for (a, arr) in quiver.arrows().iter().enumerate() {
                    if arr.source == basis[p].target {
                        cand_index.insert((p, a), cands.len());
                        cands.push((p, a));
                    }
                }
            }
            if cands.is_empty() {
                break;
            }
            if n > bound {
                return Err(Error::InfiniteDimensional(bound));
            }

            let mut rows: Vec<Vec<Scalar>> = Vec::new();
            for r in &relations {
                let l = r.length();
                if l > n {
                    continue;
                }
                let src = quiver.arrow(r.terms[0].1[0]).source;
                for &q in &levels[n - l] {
                    if basis[q].target != src {
                        continue;
                    }
                    let mut row = vec![field.zero(); cands.len()];
                    for (c, w) in &r.terms {
                        let mut cur: Combo = vec![(q, field.one())];
                        for &a in &w[..l - 1] {
                            cur = mul_arrow_with(&table, &cur, a);
                        }
                        let last = w[l - 1];
                        for (p, x) in cur {
                            let k = cand_index[&(p, last)];
                            row[k] = &row[k] + &(c * &x);
                        }
                    }
                    if row.iter().any(|x| !x.is_zero()) {
                        rows.push(row);
                    }
                }
            }

            let (rref, pivots) = if rows.is_empty() {
                (Matrix::zero(field, 0, cands.len()), Vec::new())
            } else {
                let m = Matrix::from_rows(field, &rows)?;
                let (r, p, _) = m.rref();
                (r, p)
            };
            let mut new_index = vec![usize::MAX; cands.len()];
            let mut level = Vec::new();
            for (k, &(p, a)) in cands.iter().enumerate() {
                if pivots.contains(&k) {
                    continue;
                }
                let mut word = basis[p].word.clone();
                word.push(a);
                let idx = basis.len();
                basis.push(BasisPath { source: basis[p].source, target: quiver.arrow(a).target, word });
                table.push(vec![None; na]);
                new_index[k] = idx;
                level.push(idx);
            }
            for (k, &(p, a)) in cands.iter().enumerate() {
                let combo = match pivots.iter().position(|&c| c == k) {
                    None => vec![(new_index[k], field.one())],
                    Some(row) => (0..cands.len())
                        .filter(|f| !pivots.contains(f))
                        .filter_map(|f| {
                            let v = rref.get(row, f);
                            (!v.is_zero()).then(|| (new_index[f], -&v))
                        })
                        .collect(),
                };
                table[p][a] = Some(combo);
            }
            if level.is_empty() {
                break;
            }
            levels.push(level);
            n += 1;
        }
        for b in 0..basis.len() {
            for a in 0..na {
                if table[b][a].is_none() && quiver.arrow(a).source == basis[b].target {
                    table[b][a] = Some(Vec::new());
                }
            }
        }
        let mut from = vec![Vec::new(); nv];
        for (i, b) in basis.iter().enumerate() {
            from[b.source].push(i);
        }
        Ok(AlgebraData { field, quiver, relations, basis, table, from })
    }
}

fn mul_arrow_with(table: &[Vec<Option<Combo>>], x: &[(usize, Scalar)], a: usize) -> Combo {
    let mut acc = BTreeMap::new();
    for (b, c) in x {
        if let Some(Some(combo)) = table[*b].get(a) {
            for (i, y) in combo {
                add_into(&mut acc, *i, &(c * y));
            }
        }
    }
    acc.into_iter().collect()
}

/// Builds `kQ/I` with the default path-length bound.
pub fn build_algebra(field: FieldSpec, quiver: Quiver, relations: Vec<Relation>) -> Result<Algebra> {
    build_algebra_with_bound(field, quiver, relations, DEFAULT_PATH_BOUND)
}

pub fn build_algebra_with_bound(
    field: FieldSpec,
    quiver: Quiver,
    relations: Vec<Relation>,
    bound: usize,
) -> Result<Algebra> {
    let mut rels = Vec::new();
    for r in relations {
        let terms: Vec<_> = r.terms.into_iter().filter(|(c, _)| !c.is_zero()).collect();
        if terms.is_empty() {
            continue;
        }
        let mut ends = None;
        for (c, w) in &terms {
            if c.field() != field {
                return Err(Error::Validation("relation coefficient from another field".into()));
            }
            if w.len() < 2 {
                return Err(Error::Validation(format!(
                    "relation path `{}` has length < 2",
                    quiver.word_name(w)
                )));
            }
            let e = quiver.check_word(w)?;
            match ends {
                None => ends = Some((e, w.len())),
                Some((e0, l0)) => {
                    if e0 != e {
                        return Err(Error::Validation("relation paths are not parallel".into()));
                    }
                    if l0 != w.len() {
                        return Err(Error::Validation("relation mixes paths of different lengths".into()));
                    }
                }
            }
        }
        rels.push(Relation { terms });
    }
    let op_rels = rels.iter().map(Relation::reversed).collect();
    let op_quiver = quiver.opposite();
    let fwd = AlgebraData::build(field, quiver, rels, bound)?;
    let bwd = AlgebraData::build(field, op_quiver, op_rels, bound)?;
    Ok(Algebra { pair: Arc::new([fwd, bwd]), side: 0 })
}

impl Algebra {
    fn data(&self) -> &AlgebraData {
        &self.pair[self.side]
    }

    pub fn field(&self) -> FieldSpec {
        self.data().field
    }

    pub fn quiver(&self) -> &Quiver {
        &self.data().quiver
    }

    pub fn relations(&self) -> &[Relation] {
        &self.data().relations
    }

    pub fn num_vertices(&self) -> usize {
        self.quiver().num_vertices()
    }

    pub fn num_arrows(&self) -> usize {
        self.quiver().num_arrows()
    }

    pub fn dim(&self) -> usize {
        self.data().basis.len()
    }

    pub fn basis(&self) -> &[BasisPath] {
        &self.data().basis
    }

    /// Basis paths starting at `v`, trivial path first.
    pub fn basis_from(&self, v: usize) -> &[usize] {
        &self.data().from[v]
    }

    pub fn opposite(&self) -> Algebra {
        Algebra { pair: self.pair.clone(), side: 1 - self.side }
    }

    pub fn is_opposite_side(&self) -> bool {
        self.side == 1
    }

    pub fn vertex_name(&self, v: usize) -> &str {
        &self.quiver().vertices()[v]
    }

    pub fn mul_arrow(&self, x: &[(usize, Scalar)], a: usize) -> Combo {
        mul_arrow_with(&self.data().table, x, a)
    }

    /// Normal form of the path `word` starting at `start`.
    pub fn reduce_word(&self, start: usize, word: &[usize]) -> Combo {
        let mut cur = vec![(start, self.field().one())];
        for &a in word {
            cur = self.mul_arrow(&cur, a);
        }
        cur
    }

    /// Product of two algebra elements.
    pub fn mul(&self, x: &[(usize, Scalar)], y: &[(usize, Scalar)]) -> Combo {
        let mut acc = BTreeMap::new();
        for (b, c) in y {
            let bp = &self.basis()[*b];
            let x_at: Combo = x
                .iter()
                .filter(|(i, _)| self.basis()[*i].target == bp.source)
                .cloned()
                .collect();
            let mut cur = x_at;
            for &a in &bp.word {
                cur = self.mul_arrow(&cur, a);
            }
            for (i, v) in cur {
                add_into(&mut acc, i, &(&v * c));
            }
        }
        acc.into_iter().collect()
    }

    pub fn path_name(&self, b: usize) -> String {
        let p = &self.basis()[b];
        if p.word.is_empty() {
            format!("e{}", self.vertex_name(p.source))
        } else {
            self.quiver().word_name(&p.word)
        }
    }
}

/// Basis paths from `v`, grouped by target vertex; the position in each list
/// is the coordinate in the projective `P_v`.
pub fn projective_coords(alg: &Algebra, v: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new(); alg.num_vertices()];
    for &b in alg.basis_from(v) {
        out[alg.basis()[b].target].push(b);
    }
    out
}

/// The indecomposable projective `P_v = e_v Φ`, spanned by paths starting at `v`.
pub fn projective_at(alg: &Algebra, v: usize) -> Representation {
    let f = alg.field();
    let coords = projective_coords(alg, v);
    let dims: Vec<usize> = coords.iter().map(Vec::len).collect();
    let maps = alg
        .quiver()
        .arrows()
        .iter()
        .enumerate()
        .map(|(a, arr)| {
            let mut m = Matrix::zero(f, dims[arr.target], dims[arr.source]);
            for (j, &b) in coords[arr.source].iter().enumerate() {
                for (i, c) in alg.mul_arrow(&[(b, f.one())], a) {
                    let row = coords[arr.target].iter().position(|&x| x == i).unwrap();
                    m.set(row, j, c);
                }
            }
            m
        })
        .collect();
    let p = Representation::new_unchecked(alg, dims, maps);
    let name = p.radical_label();
    p.with_name(&name)
}

/// The indecomposable injective `I_v = D(Φ e_v)`.
pub fn injective_at(alg: &Algebra, v: usize) -> Representation {
    let i = projective_at(&alg.opposite(), v).dual();
    let name = i.radical_label();
    i.with_name(&name)
}
