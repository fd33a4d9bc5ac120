//! Text formats: algebras, modules, morphisms, subcategories and sequences
//! in one line-oriented workspace file, plus DOT export of AR quivers.
//!
//! ```text
//! field Fp 101
//! vertex 1 2
//! arrow a : 1 -> 2
//! relation 1 * a.b - 1 * c.d
//!
//! module P1 name="1/2"
//! dims 1:1 2:1
//! map a = [1]
//!
//! morphism f : S2 -> P1
//! at 2 = [1]
//!
//! subcat X = P1, S2
//!
//! sequence ar
//! term S2
//! term P1
//! term S1
//! map 0 at 2 = [1]
//! map 1 at 1 = [1]
//!
//! golden (a) = S2 | P1 | S1
//! ```
//! `#` starts a comment. Matrices are row-major with `;` between rows;
//! omitted maps are zero.

use std::fmt::Write as _;

use crate::approx::Subcat;
use crate::artheory::ArQuiver;
use crate::dexact::DSequence;
use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::linalg::Matrix;
use crate::presentation::{build_algebra_with_bound, Algebra, Quiver, Relation, DEFAULT_PATH_BOUND};
use crate::reps::{direct_sum, ModMorphism, Representation};

#[derive(Clone, Debug)]
pub struct NamedModule {
    pub id: String,
    pub module: Representation,
}

#[derive(Clone, Debug)]
pub struct NamedMorphism {
    pub id: String,
    pub source: usize,
    pub target: usize,
    pub map: ModMorphism,
}

#[derive(Clone, Debug)]
pub struct NamedSequence {
    pub id: String,
    /// Module indices of the summands of each term.
    pub terms: Vec<Vec<usize>>,
    pub seq: DSequence,
}

#[derive(Clone, Debug)]
pub struct Golden {
    pub name: String,
    pub terms: Vec<Vec<usize>>,
}

#[derive(Clone, Debug)]
pub struct Workspace {
    pub alg: Algebra,
    pub modules: Vec<NamedModule>,
    pub morphisms: Vec<NamedMorphism>,
    pub subcats: Vec<(String, Vec<usize>)>,
    pub sequences: Vec<NamedSequence>,
    pub goldens: Vec<Golden>,
}

impl Workspace {
    /// Module index by id or display name.
    pub fn module_index(&self, r: &str) -> Option<usize> {
        self.modules
            .iter()
            .position(|m| m.id == r)
            .or_else(|| self.modules.iter().position(|m| m.module.name() == Some(r)))
    }

    pub fn module(&self, r: &str) -> Result<&Representation> {
        self.module_index(r)
            .map(|i| &self.modules[i].module)
            .ok_or_else(|| Error::Validation(format!("unknown module `{r}`")))
    }

    pub fn subcat(&self, name: &str) -> Result<Subcat> {
        let (_, idx) = self
            .subcats
            .iter()
            .find(|(n, _)| n == name)
            .ok_or_else(|| Error::Validation(format!("unknown subcategory `{name}`")))?;
        Subcat::new(name, &self.alg, idx.iter().map(|&i| self.modules[i].module.clone()).collect())
    }

    pub fn sequence(&self, id: &str) -> Result<&NamedSequence> {
        self.sequences
            .iter()
            .find(|s| s.id == id)
            .ok_or_else(|| Error::Validation(format!("unknown sequence `{id}`")))
    }
}

/// Parses one or more workspace texts in order, as if concatenated.
pub fn parse_workspace(text: &str) -> Result<Workspace> {
    parse_workspace_with(text, &ParseOptions::default())
}

#[derive(Clone, Debug)]
pub struct ParseOptions {
    pub path_bound: usize,
    /// Replaces the field named in the file.
    pub field: Option<FieldSpec>,
}

impl Default for ParseOptions {
    fn default() -> Self {
        ParseOptions { path_bound: DEFAULT_PATH_BOUND, field: None }
    }
}

pub fn parse_workspace_with(text: &str, opts: &ParseOptions) -> Result<Workspace> {
    let mut p = Parser { path_bound: opts.path_bound, field_override: opts.field, ..Default::default() };
    for (n, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("");
        let toks = tokens(line);
        if toks.is_empty() {
            continue;
        }
        p.line = n + 1;
        p.statement(&toks)?;
    }
    p.finish()
}

type Tok<'a> = (usize, &'a str);

fn tokens(line: &str) -> Vec<Tok<'_>> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in line.char_indices() {
        if c.is_whitespace() {
            if let Some(s) = start.take() {
                out.push((s + 1, &line[s..i]));
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push((s + 1, &line[s..]));
    }
    out
}

#[derive(Default)]
struct ModuleDraft {
    id: String,
    name: Option<String>,
    line: usize,
    dims: Vec<usize>,
    maps: Vec<Option<Matrix>>,
}

#[derive(Default)]
struct MorphismDraft {
    id: String,
    line: usize,
    source: usize,
    target: usize,
    maps: Vec<Option<Matrix>>,
}

#[derive(Default)]
struct SequenceDraft {
    id: String,
    line: usize,
    terms: Vec<Vec<usize>>,
    maps: Vec<(usize, usize, Matrix)>,
}

#[derive(Default)]
enum Block {
    #[default]
    None,
    Module(ModuleDraft),
    Morphism(MorphismDraft),
    Sequence(SequenceDraft),
}

#[derive(Default)]
struct Parser {
    line: usize,
    path_bound: usize,
    field_override: Option<FieldSpec>,
    field: Option<FieldSpec>,
    quiver: Quiver,
    relations: Vec<Relation>,
    alg: Option<Algebra>,
    block: Block,
    modules: Vec<NamedModule>,
    morphisms: Vec<NamedMorphism>,
    subcats: Vec<(String, Vec<usize>)>,
    sequences: Vec<NamedSequence>,
    goldens: Vec<Golden>,
}

impl Parser {
    fn err(&self, col: usize, msg: impl Into<String>) -> Error {
        Error::Parse { line: self.line, column: col, message: msg.into() }
    }

    fn field(&self, col: usize) -> Result<FieldSpec> {
        self.field.ok_or_else(|| self.err(col, "`field` must come first"))
    }

    fn alg(&mut self) -> Result<Algebra> {
        if let Some(a) = &self.alg {
            return Ok(a.clone());
        }
        let f = self.field(1)?;
        let a = build_algebra_with_bound(f, self.quiver.clone(), self.relations.clone(), self.path_bound)?;
        self.alg = Some(a.clone());
        Ok(a)
    }

    fn statement(&mut self, t: &[Tok]) -> Result<()> {
        match t[0].1 {
            "field" => {
                self.close()?;
                if self.field.is_some() {
                    return Err(self.err(t[0].0, "duplicate `field`"));
                }
                self.field = Some(match t.get(1).map(|x| x.1) {
                    Some("Q") => FieldSpec::Rationals,
                    Some("Fp") => {
                        let (c, s) = *t.get(2).ok_or_else(|| self.err(t[1].0, "missing prime"))?;
                        let p: u64 = s.parse().map_err(|_| self.err(c, format!("bad prime `{s}`")))?;
                        FieldSpec::prime(p)?
                    }
                    _ => return Err(self.err(t[0].0, "expected `field Fp <p>` or `field Q`")),
                });
                if self.field_override.is_some() {
                    self.field = self.field_override;
                }
            }
            "vertex" => {
                self.close()?;
                self.before_algebra(t[0].0)?;
                for &(c, v) in &t[1..] {
                    self.quiver.add_vertex(v).map_err(|e| self.err(c, e.to_string()))?;
                }
            }
            "arrow" => {
                self.close()?;
                self.before_algebra(t[0].0)?;
                if t.len() != 6 || t[2].1 != ":" || t[4].1 != "->" {
                    return Err(self.err(t[0].0, "expected `arrow <name> : <source> -> <target>`"));
                }
                self.quiver.add_arrow(t[1].1, t[3].1, t[5].1).map_err(|e| self.err(t[1].0, e.to_string()))?;
            }
            "relation" => {
                self.close()?;
                self.before_algebra(t[0].0)?;
                let r = self.relation(&t[1..])?;
                self.relations.push(r);
            }
            "module" => {
                self.close()?;
                let alg = self.alg()?;
                let (_, id) = *t.get(1).ok_or_else(|| self.err(t[0].0, "missing module id"))?;
                let mut name = None;
                for &(c, s) in &t[2..] {
                    match s.strip_prefix("name=") {
                        Some(v) => name = Some(v.trim_matches('"').to_string()),
                        None => return Err(self.err(c, format!("unexpected `{s}`"))),
                    }
                }
                self.block = Block::Module(ModuleDraft {
                    id: id.to_string(),
                    name,
                    line: self.line,
                    dims: vec![0; alg.num_vertices()],
                    maps: vec![None; alg.num_arrows()],
                });
            }
            "morphism" => {
                self.close()?;
                let alg = self.alg()?;
                if t.len() != 6 || t[2].1 != ":" || t[4].1 != "->" {
                    return Err(self.err(t[0].0, "expected `morphism <id> : <source> -> <target>`"));
                }
                let source = self.module_ref(t[3])?;
                let target = self.module_ref(t[5])?;
                self.block = Block::Morphism(MorphismDraft {
                    id: t[1].1.to_string(),
                    line: self.line,
                    source,
                    target,
                    maps: vec![None; alg.num_vertices()],
                });
            }
            "sequence" => {
                self.close()?;
                self.alg()?;
                let (_, id) = *t.get(1).ok_or_else(|| self.err(t[0].0, "missing sequence id"))?;
                self.block = Block::Sequence(SequenceDraft { id: id.to_string(), line: self.line, ..Default::default() });
            }
            "subcat" => {
                self.close()?;
                self.alg()?;
                if t.len() < 3 || t[2].1 != "=" {
                    return Err(self.err(t[0].0, "expected `subcat <name> = <modules>`"));
                }
                let mut idx = Vec::new();
                for &(c, s) in &t[3..] {
                    let s = s.strip_suffix(',').unwrap_or(s);
                    if !s.is_empty() {
                        idx.push(self.module_ref((c, s))?);
                    }
                }
                self.subcats.push((t[1].1.to_string(), idx));
            }
            "golden" => {
                self.close()?;
                self.alg()?;
                if t.len() < 3 || t[2].1 != "=" {
                    return Err(self.err(t[0].0, "expected `golden <name> = <term> | ...`"));
                }
                let terms = self.term_list(&t[3..])?;
                self.goldens.push(Golden { name: t[1].1.to_string(), terms });
            }
            "dims" => self.dims_line(t)?,
            "map" => self.map_line(t)?,
            "at" => self.at_line(t)?,
            "term" => self.term_line(t)?,
            other => return Err(self.err(t[0].0, format!("unknown keyword `{other}`"))),
        }
        Ok(())
    }

    fn before_algebra(&self, col: usize) -> Result<()> {
        if self.alg.is_some() {
            return Err(self.err(col, "the algebra is already complete"));
        }
        Ok(())
    }

    fn relation(&self, t: &[Tok]) -> Result<Relation> {
        let f = self.field(1)?;
        let mut terms = Vec::new();
        let mut sign = f.one();
        let mut coef = None;
        let mut i = 0;
        while i < t.len() {
            let (c, s) = t[i];
            match s {
                "+" => {}
                "-" => sign = -&sign,
                "*" => {}
                _ if t.get(i + 1).is_some_and(|x| x.1 == "*") => {
                    coef = Some(f.parse_scalar(s).map_err(|e| self.err(c, e.to_string()))?);
                }
                _ => {
                    let w = self.quiver.parse_word(s).map_err(|e| self.err(c, e.to_string()))?;
                    let k = coef.take().unwrap_or_else(|| f.one());
                    terms.push((&sign * &k, w));
                    sign = f.one();
                }
            }
            i += 1;
        }
        if terms.is_empty() {
            return Err(self.err(t.first().map_or(1, |x| x.0), "empty relation"));
        }
        Ok(Relation::new(terms))
    }

    fn module_ref(&self, (c, s): Tok) -> Result<usize> {
        self.modules
            .iter()
            .position(|m| m.id == s)
            .or_else(|| self.modules.iter().position(|m| m.module.name() == Some(s)))
            .ok_or_else(|| self.err(c, format!("unknown module `{s}`")))
    }

    /// `A + B | 0 | C`
    fn term_list(&self, t: &[Tok]) -> Result<Vec<Vec<usize>>> {
        let mut terms = vec![Vec::new()];
        for &tok in t {
            match tok.1 {
                "|" => terms.push(Vec::new()),
                "+" | "⊕" | "0" => {}
                _ => {
                    let i = self.module_ref(tok)?;
                    terms.last_mut().unwrap().push(i);
                }
            }
        }
        Ok(terms)
    }

    /// `[1 0; 0 1]` spread over the tokens starting at `t[0]`.
    fn matrix(&self, t: &[Tok], rows: usize, cols: usize) -> Result<Matrix> {
        let f = self.field(1)?;
        let col0 = t.first().map_or(1, |x| x.0);
        let joined: String = t.iter().map(|x| x.1).collect::<Vec<_>>().join(" ");
        let inner = joined
            .trim()
            .strip_prefix('[')
            .and_then(|s| s.strip_suffix(']'))
            .ok_or_else(|| self.err(col0, "expected a matrix literal `[...]`"))?;
        let mut data = Vec::new();
        if !inner.trim().is_empty() {
            for row in inner.split(';') {
                let r = row
                    .split_whitespace()
                    .map(|x| f.parse_scalar(x).map_err(|e| self.err(col0, e.to_string())))
                    .collect::<Result<Vec<_>>>()?;
                data.push(r);
            }
        }
        let shape_ok = if rows == 0 || cols == 0 {
            data.is_empty() || data.iter().all(Vec::is_empty)
        } else {
            data.len() == rows && data.iter().all(|r| r.len() == cols)
        };
        if !shape_ok {
            return Err(self.err(col0, format!("expected a {rows}x{cols} matrix")));
        }
        if rows == 0 || cols == 0 {
            return Ok(Matrix::zero(f, rows, cols));
        }
        Matrix::from_rows(f, &data)
    }

    fn dims_line(&mut self, t: &[Tok]) -> Result<()> {
        let line = self.line;
        let q = &self.quiver;
        let Block::Module(m) = &mut self.block else {
            return Err(Error::Parse { line, column: t[0].0, message: "`dims` outside a module".into() });
        };
        for &(c, s) in &t[1..] {
            let bad = || Error::Parse { line, column: c, message: format!("expected `vertex:dim`, got `{s}`") };
            let (v, n) = s.split_once(':').ok_or_else(bad)?;
            let vi = q.vertex_index(v).ok_or_else(bad)?;
            m.dims[vi] = n.parse().map_err(|_| bad())?;
        }
        Ok(())
    }

    fn map_line(&mut self, t: &[Tok]) -> Result<()> {
        let q = self.quiver.clone();
        match &self.block {
            Block::Module(m) => {
                if t.len() < 4 || t[2].1 != "=" {
                    return Err(self.err(t[0].0, "expected `map <arrow> = [...]`"));
                }
                let a = q.arrow_index(t[1].1).ok_or_else(|| self.err(t[1].0, format!("unknown arrow `{}`", t[1].1)))?;
                let arr = q.arrow(a);
                let mat = self.matrix(&t[3..], m.dims[arr.target], m.dims[arr.source])?;
                if let Block::Module(m) = &mut self.block {
                    m.maps[a] = Some(mat);
                }
                Ok(())
            }
            Block::Sequence(s) => {
                if t.len() < 6 || t[2].1 != "at" || t[4].1 != "=" {
                    return Err(self.err(t[0].0, "expected `map <i> at <vertex> = [...]`"));
                }
                let i: usize = t[1].1.parse().map_err(|_| self.err(t[1].0, "expected a map index"))?;
                if i + 1 >= s.terms.len() {
                    return Err(self.err(t[1].0, format!("map {i} needs terms {i} and {}", i + 1)));
                }
                let v = q.vertex_index(t[3].1).ok_or_else(|| self.err(t[3].0, format!("unknown vertex `{}`", t[3].1)))?;
                let dim = |k: usize| -> usize { s.terms[k].iter().map(|&j| self.modules[j].module.dim_at(v)).sum() };
                let (r, c) = (dim(i + 1), dim(i));
                let mat = self.matrix(&t[5..], r, c)?;
                if let Block::Sequence(s) = &mut self.block {
                    s.maps.push((i, v, mat));
                }
                Ok(())
            }
            _ => Err(self.err(t[0].0, "`map` outside a module or sequence")),
        }
    }

    fn at_line(&mut self, t: &[Tok]) -> Result<()> {
        let q = self.quiver.clone();
        let Block::Morphism(m) = &self.block else {
            return Err(self.err(t[0].0, "`at` outside a morphism"));
        };
        if t.len() < 4 || t[2].1 != "=" {
            return Err(self.err(t[0].0, "expected `at <vertex> = [...]`"));
        }
        let v = q.vertex_index(t[1].1).ok_or_else(|| self.err(t[1].0, format!("unknown vertex `{}`", t[1].1)))?;
        let (r, c) = (self.modules[m.target].module.dim_at(v), self.modules[m.source].module.dim_at(v));
        let mat = self.matrix(&t[3..], r, c)?;
        if let Block::Morphism(m) = &mut self.block {
            m.maps[v] = Some(mat);
        }
        Ok(())
    }

    fn term_line(&mut self, t: &[Tok]) -> Result<()> {
        if !matches!(self.block, Block::Sequence(_)) {
            return Err(self.err(t[0].0, "`term` outside a sequence"));
        }
        let parts = self.term_list(&t[1..])?;
        if parts.len() != 1 {
            return Err(self.err(t[0].0, "one term per line"));
        }
        if let Block::Sequence(s) = &mut self.block {
            if !s.maps.is_empty() {
                return Err(Error::Parse { line: self.line, column: t[0].0, message: "terms must precede maps".into() });
            }
            s.terms.push(parts.into_iter().next().unwrap());
        }
        Ok(())
    }

    fn close(&mut self) -> Result<()> {
        let block = std::mem::take(&mut self.block);
        let alg = match &block {
            Block::None => return Ok(()),
            _ => self.alg()?,
        };
        let f = alg.field();
        let q = alg.quiver().clone();
        match block {
            Block::None => {}
            Block::Module(m) => {
                let maps = m
                    .maps
                    .into_iter()
                    .enumerate()
                    .map(|(a, x)| {
                        let arr = q.arrow(a);
                        x.unwrap_or_else(|| Matrix::zero(f, m.dims[arr.target], m.dims[arr.source]))
                    })
                    .collect();
                let rep = Representation::new(&alg, m.dims, maps).map_err(|e| at_line(e, m.line))?;
                let rep = match &m.name {
                    Some(n) => rep.with_name(n),
                    None => rep.with_name(&m.id),
                };
                if self.modules.iter().any(|x| x.id == m.id) {
                    return Err(Error::Parse { line: m.line, column: 1, message: format!("duplicate module `{}`", m.id) });
                }
                self.modules.push(NamedModule { id: m.id, module: rep });
            }
            Block::Morphism(m) => {
                let (s, t) = (&self.modules[m.source].module, &self.modules[m.target].module);
                let maps = m
                    .maps
                    .into_iter()
                    .enumerate()
                    .map(|(v, x)| x.unwrap_or_else(|| Matrix::zero(f, t.dim_at(v), s.dim_at(v))))
                    .collect();
                let map = ModMorphism::new(s, t, maps).map_err(|e| at_line(e, m.line))?;
                self.morphisms.push(NamedMorphism { id: m.id, source: m.source, target: m.target, map });
            }
            Block::Sequence(s) => {
                if s.terms.len() < 3 {
                    return Err(Error::Parse { line: s.line, column: 1, message: "a sequence needs at least three terms".into() });
                }
                let terms: Vec<Representation> = s
                    .terms
                    .iter()
                    .map(|parts| {
                        let mods: Vec<Representation> = parts.iter().map(|&i| self.modules[i].module.clone()).collect();
                        term_module(&alg, &mods)
                    })
                    .collect();
                let mut blocks: Vec<Vec<Matrix>> = (0..terms.len() - 1)
                    .map(|i| (0..q.num_vertices()).map(|v| Matrix::zero(f, terms[i + 1].dim_at(v), terms[i].dim_at(v))).collect())
                    .collect();
                for (i, v, m) in s.maps {
                    blocks[i][v] = m;
                }
                let maps = blocks
                    .into_iter()
                    .enumerate()
                    .map(|(i, b)| ModMorphism::new(&terms[i], &terms[i + 1], b))
                    .collect::<Result<Vec<_>>>()
                    .map_err(|e| at_line(e, s.line))?;
                let seq = DSequence::new(maps).map_err(|e| at_line(e, s.line))?;
                self.sequences.push(NamedSequence { id: s.id, terms: s.terms, seq });
            }
        }
        Ok(())
    }

    fn finish(mut self) -> Result<Workspace> {
        self.close()?;
        let alg = self.alg()?;
        Ok(Workspace {
            alg,
            modules: self.modules,
            morphisms: self.morphisms,
            subcats: self.subcats,
            sequences: self.sequences,
            goldens: self.goldens,
        })
    }
}

/// The module a sequence term `A + B + ...` denotes.
pub fn term_module(alg: &Algebra, parts: &[Representation]) -> Representation {
    if parts.len() == 1 {
        parts[0].clone()
    } else {
        direct_sum(alg, parts).module
    }
}

impl Workspace {
    /// Stores `seq` with its terms rewritten over the listed modules `terms`
    /// (indices into `modules`), moving the maps along isomorphisms.
    pub fn add_sequence(&mut self, id: &str, terms: Vec<Vec<usize>>, seq: &DSequence) -> Result<()> {
        if terms.len() != seq.terms().len() {
            return Err(Error::Shape(format!("{} terms given for a sequence of length {}", terms.len(), seq.terms().len())));
        }
        let mut isos = Vec::with_capacity(terms.len());
        for (parts, actual) in terms.iter().zip(seq.terms()) {
            let mods: Vec<Representation> = parts.iter().map(|&i| self.modules[i].module.clone()).collect();
            let listed = term_module(&self.alg, &mods);
            let iso = crate::reps::isomorphism(&listed, actual)?
                .ok_or_else(|| Error::Validation(format!("term of `{id}` does not match its listed summands")))?;
            isos.push(iso);
        }
        let maps = seq
            .maps()
            .iter()
            .enumerate()
            .map(|(i, m)| {
                let back = isos[i + 1].inverse().ok_or_else(|| Error::Validation("non-invertible term isomorphism".into()))?;
                Ok(back.compose(&m.compose(&isos[i])))
            })
            .collect::<Result<Vec<_>>>()?;
        let seq = DSequence::new(maps)?;
        self.sequences.push(NamedSequence { id: id.to_string(), terms, seq });
        Ok(())
    }
}

fn at_line(e: Error, line: usize) -> Error {
    match e {
        Error::Validation(m) => Error::Validation(format!("line {line}: {m}")),
        Error::NotExact(m) => Error::Validation(format!("line {line}: {m}")),
        other => other,
    }
}

fn signed(x: &Scalar) -> String {
    match x {
        Scalar::Fp { value, p } if *value > p / 2 => format!("-{}", p - value),
        _ => x.to_string(),
    }
}

fn write_matrix(out: &mut String, m: &Matrix) {
    out.push('[');
    for i in 0..m.rows() {
        if i > 0 {
            out.push_str("; ");
        }
        let row: Vec<String> = m.row(i).iter().map(signed).collect();
        out.push_str(&row.join(" "));
    }
    out.push(']');
}

pub fn write_algebra(alg: &Algebra) -> String {
    let mut out = String::new();
    let q = alg.quiver();
    match alg.field() {
        FieldSpec::Prime(p) => writeln!(out, "field Fp {p}").unwrap(),
        FieldSpec::Rationals => writeln!(out, "field Q").unwrap(),
    }
    writeln!(out, "vertex {}", q.vertices().join(" ")).unwrap();
    for a in q.arrows() {
        writeln!(out, "arrow {} : {} -> {}", a.name, q.vertices()[a.source], q.vertices()[a.target]).unwrap();
    }
    for r in alg.relations() {
        writeln!(out, "relation {}", r.display(q)).unwrap();
    }
    out
}

pub fn write_module(id: &str, m: &Representation) -> String {
    let mut out = String::new();
    let q = m.alg().quiver();
    match m.name() {
        Some(n) if n != id => writeln!(out, "module {id} name=\"{n}\"").unwrap(),
        _ => writeln!(out, "module {id}").unwrap(),
    }
    let dims: Vec<String> = (0..q.num_vertices())
        .filter(|&v| m.dim_at(v) > 0)
        .map(|v| format!("{}:{}", q.vertices()[v], m.dim_at(v)))
        .collect();
    writeln!(out, "dims {}", dims.join(" ")).unwrap();
    for (a, arr) in q.arrows().iter().enumerate() {
        let mat = m.map(a);
        if mat.rows() > 0 && mat.cols() > 0 {
            out.push_str(&format!("map {} = ", arr.name));
            write_matrix(&mut out, mat);
            out.push('\n');
        }
    }
    out
}

fn write_terms(ws: &Workspace, parts: &[usize]) -> String {
    if parts.is_empty() {
        "0".into()
    } else {
        parts.iter().map(|&i| ws.modules[i].id.as_str()).collect::<Vec<_>>().join(" + ")
    }
}

pub fn write_workspace(ws: &Workspace) -> String {
    let mut out = write_algebra(&ws.alg);
    let q = ws.alg.quiver();
    for m in &ws.modules {
        out.push('\n');
        out.push_str(&write_module(&m.id, &m.module));
    }
    for m in &ws.morphisms {
        out.push('\n');
        writeln!(out, "morphism {} : {} -> {}", m.id, ws.modules[m.source].id, ws.modules[m.target].id).unwrap();
        for v in 0..q.num_vertices() {
            let mat = m.map.at(v);
            if mat.rows() > 0 && mat.cols() > 0 {
                out.push_str(&format!("at {} = ", q.vertices()[v]));
                write_matrix(&mut out, mat);
                out.push('\n');
            }
        }
    }
    if !ws.subcats.is_empty() {
        out.push('\n');
    }
    for (name, idx) in &ws.subcats {
        let refs: Vec<&str> = idx.iter().map(|&i| ws.modules[i].id.as_str()).collect();
        writeln!(out, "subcat {name} = {}", refs.join(", ")).unwrap();
    }
    for s in &ws.sequences {
        out.push('\n');
        writeln!(out, "sequence {}", s.id).unwrap();
        for t in &s.terms {
            writeln!(out, "term {}", write_terms(ws, t)).unwrap();
        }
        for (i, m) in s.seq.maps().iter().enumerate() {
            for v in 0..q.num_vertices() {
                let mat = m.at(v);
                if mat.rows() > 0 && mat.cols() > 0 && !mat.is_zero() {
                    out.push_str(&format!("map {i} at {} = ", q.vertices()[v]));
                    write_matrix(&mut out, mat);
                    out.push('\n');
                }
            }
        }
    }
    if !ws.goldens.is_empty() {
        out.push('\n');
    }
    for g in &ws.goldens {
        let terms: Vec<String> = g.terms.iter().map(|t| write_terms(ws, t)).collect();
        writeln!(out, "golden {} = {}", g.name, terms.join(" | ")).unwrap();
    }
    out
}

/// Canonical form: parse then serialize.
pub fn normalize(text: &str) -> Result<String> {
    Ok(write_workspace(&parse_workspace(text)?))
}

fn dot_escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// DOT digraph: solid edges for irreducible maps (labelled with their
/// multiplicity when above one), dashed edges `x -> D Tr_d x`.
pub fn export_dot(q: &ArQuiver) -> String {
    let mut out = String::from("digraph ar {\n  rankdir=LR;\n  node [shape=plaintext];\n");
    for (i, l) in q.labels.iter().enumerate() {
        let dims: Vec<String> = q.dims[i].iter().map(|d| d.to_string()).collect();
        writeln!(out, "  n{i} [label=\"{}\\n({})\"];", dot_escape(l), dims.join(",")).unwrap();
    }
    for &(a, b, m) in &q.arrows {
        if m > 1 {
            writeln!(out, "  n{a} -> n{b} [label=\"{m}\"];").unwrap();
        } else {
            writeln!(out, "  n{a} -> n{b};").unwrap();
        }
    }
    for &(a, b) in &q.translations {
        writeln!(out, "  n{a} -> n{b} [style=dashed, constraint=false];").unwrap();
    }
    out.push_str("}\n");
    out
}
