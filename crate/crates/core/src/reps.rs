//! Right modules as quiver representations.
//!
//! A representation has one vector space per vertex and, for every arrow
//! `a: s -> t`, a `dim_t x dim_s` matrix acting on column vectors. Paths act
//! left to right, so `x . a . b` is `M_b M_a x`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::homology::ProjResolution;
use crate::linalg::Matrix;
use crate::par;
use crate::poly;
use crate::presentation::Algebra;

struct RepData {
    alg: Algebra,
    dims: Vec<usize>,
    maps: Vec<Matrix>,
    name: Option<String>,
    decomposition: OnceLock<std::result::Result<Arc<Decomposition>, Error>>,
    pub(crate) resolution: Mutex<Option<Arc<ProjResolution>>>,
}

/// A finite-dimensional right module. Cloning shares the underlying data
/// and its caches.
#[derive(Clone)]
pub struct Representation(Arc<RepData>);

impl PartialEq for Representation {
    /// Equal data (same algebra, dimensions and matrices); names are ignored.
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.alg == other.0.alg && self.0.dims == other.0.dims && self.0.maps == other.0.maps)
    }
}

impl fmt::Debug for Representation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Representation({} dims {:?})", self.label(), self.0.dims)
    }
}

impl Representation {
    pub fn new(alg: &Algebra, dims: Vec<usize>, maps: Vec<Matrix>) -> Result<Self> {
        let q = alg.quiver();
        if dims.len() != q.num_vertices() {
            return Err(Error::Validation(format!(
                "expected {} vertex dimensions, got {}",
                q.num_vertices(),
                dims.len()
            )));
        }
        if maps.len() != q.num_arrows() {
            return Err(Error::Validation(format!("expected {} arrow maps, got {}", q.num_arrows(), maps.len())));
        }
        for (a, m) in maps.iter().enumerate() {
            let arr = q.arrow(a);
            if m.field() != alg.field() {
                return Err(Error::Validation(format!("map `{}` over the wrong field", arr.name)));
            }
            if m.rows() != dims[arr.target] || m.cols() != dims[arr.source] {
                return Err(Error::Validation(format!(
                    "map `{}` should be {}x{}, got {}x{}",
                    arr.name,
                    dims[arr.target],
                    dims[arr.source],
                    m.rows(),
                    m.cols()
                )));
            }
        }
        let rep = Self::new_unchecked(alg, dims, maps);
        for (i, r) in alg.relations().iter().enumerate() {
            let s = q.arrow(r.terms[0].1[0]).source;
            let t = q.arrow(*r.terms[0].1.last().unwrap()).target;
            let mut acc = Matrix::zero(alg.field(), rep.dim_at(t), rep.dim_at(s));
            for (c, w) in &r.terms {
                acc = acc.add(&rep.path_matrix(w).scale(c));
            }
            if !acc.is_zero() {
                return Err(Error::Validation(format!(
                    "relation {} (`{}`) does not vanish",
                    i + 1,
                    r.display(q)
                )));
            }
        }
        Ok(rep)
    }

    pub(crate) fn new_unchecked(alg: &Algebra, dims: Vec<usize>, maps: Vec<Matrix>) -> Self {
        Representation(Arc::new(RepData {
            alg: alg.clone(),
            dims,
            maps,
            name: None,
            decomposition: OnceLock::new(),
            resolution: Mutex::new(None),
        }))
    }

    pub fn zero(alg: &Algebra) -> Self {
        let f = alg.field();
        let maps = alg.quiver().arrows().iter().map(|_| Matrix::zero(f, 0, 0)).collect();
        Self::new_unchecked(alg, vec![0; alg.num_vertices()], maps)
    }

    /// The simple module at vertex `v`.
    pub fn simple(alg: &Algebra, v: usize) -> Self {
        let f = alg.field();
        let dims: Vec<usize> = (0..alg.num_vertices()).map(|u| usize::from(u == v)).collect();
        let maps = alg
            .quiver()
            .arrows()
            .iter()
            .map(|a| Matrix::zero(f, dims[a.target], dims[a.source]))
            .collect();
        Self::new_unchecked(alg, dims, maps).with_name(alg.vertex_name(v))
    }

    /// Same module with a display name. The copy starts with empty caches.
    pub fn with_name(&self, name: &str) -> Self {
        Representation(Arc::new(RepData {
            alg: self.0.alg.clone(),
            dims: self.0.dims.clone(),
            maps: self.0.maps.clone(),
            name: Some(name.to_string()),
            decomposition: OnceLock::new(),
            resolution: Mutex::new(None),
        }))
    }

    pub fn alg(&self) -> &Algebra {
        &self.0.alg
    }

    pub fn field(&self) -> FieldSpec {
        self.0.alg.field()
    }

    pub fn dims(&self) -> &[usize] {
        &self.0.dims
    }

    pub fn dim_at(&self, v: usize) -> usize {
        self.0.dims[v]
    }

    pub fn total_dim(&self) -> usize {
        self.0.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    pub fn map(&self, a: usize) -> &Matrix {
        &self.0.maps[a]
    }

    pub fn maps(&self) -> &[Matrix] {
        &self.0.maps
    }

    pub fn name(&self) -> Option<&str> {
        self.0.name.as_deref()
    }

    /// Display name, falling back to the radical-series label.
    pub fn label(&self) -> String {
        match &self.0.name {
            Some(n) => n.clone(),
            None => self.radical_label(),
        }
    }

    pub(crate) fn resolution_cache(&self) -> &Mutex<Option<Arc<ProjResolution>>> {
        &self.0.resolution
    }

    /// Matrix of the path `word` (arrow indices, left to right).
    pub fn path_matrix(&self, word: &[usize]) -> Matrix {
        let q = self.alg().quiver();
        let start = q.arrow(word[0]).source;
        let mut acc = Matrix::identity(self.field(), self.dim_at(start));
        for &a in word {
            acc = self.map(a).mul(&acc);
        }
        acc
    }

    /// Action of the algebra basis element `b` (a path from `s` to `t`).
    pub fn basis_action(&self, b: usize) -> Matrix {
        let p = &self.alg().basis()[b];
        if p.word.is_empty() {
            Matrix::identity(self.field(), self.dim_at(p.source))
        } else {
            self.path_matrix(&p.word)
        }
    }

    /// The dual module `Hom_k(M, k)` over the opposite algebra.
    pub fn dual(&self) -> Representation {
        let op = self.alg().opposite();
        let maps = self.0.maps.iter().map(Matrix::transpose).collect();
        Representation::new_unchecked(&op, self.0.dims.clone(), maps)
    }

    /// Per-vertex dimensions of the radical layers `rad^i M / rad^{i+1} M`.
    pub fn radical_layers(&self) -> Vec<Vec<usize>> {
        let f = self.field();
        let q = self.alg().quiver();
        let nv = q.num_vertices();
        let mut cur: Vec<Matrix> = (0..nv).map(|v| Matrix::identity(f, self.dim_at(v))).collect();
        let mut layers = Vec::new();
        loop {
            let cur_dims: Vec<usize> = cur.iter().map(|m| m.cols()).collect();
            if cur_dims.iter().all(|&d| d == 0) {
                break;
            }
            let next: Vec<Matrix> = (0..nv)
                .map(|v| {
                    let parts: Vec<Matrix> = q
                        .arrows()
                        .iter()
                        .enumerate()
                        .filter(|(_, a)| a.target == v)
                        .map(|(i, a)| self.map(i).mul(&cur[a.source]))
                        .collect();
                    let refs: Vec<&Matrix> = parts.iter().collect();
                    Matrix::hstack(f, self.dim_at(v), &refs).column_space()
                })
                .collect();
            layers.push((0..nv).map(|v| cur_dims[v] - next[v].cols()).collect());
            cur = next;
        }
        layers
    }

    /// Label listing the radical layers top first, e.g. `6/2,8/5`.
    pub fn radical_label(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        self.radical_layers()
            .iter()
            .map(|layer| {
                let mut names = Vec::new();
                for (v, &m) in layer.iter().enumerate() {
                    for _ in 0..m {
                        names.push(self.alg().vertex_name(v).to_string());
                    }
                }
                names.join(",")
            })
            .collect::<Vec<_>>()
            .join("/")
    }
}

/// A module homomorphism: one matrix per vertex.
#[derive(Clone)]
pub struct ModMorphism {
    source: Representation,
    target: Representation,
    maps: Vec<Matrix>,
}

impl fmt::Debug for ModMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ModMorphism({} -> {})", self.source.label(), self.target.label())
    }
}

impl PartialEq for ModMorphism {
    fn eq(&self, other: &Self) -> bool {
        self.maps == other.maps
    }
}

impl ModMorphism {
    /// Checked constructor: shapes and commuting squares.
    pub fn new(source: &Representation, target: &Representation, maps: Vec<Matrix>) -> Result<Self> {
        let q = source.alg().quiver();
        if maps.len() != q.num_vertices() {
            return Err(Error::Validation("morphism needs one matrix per vertex".into()));
        }
        for (v, m) in maps.iter().enumerate() {
            if m.rows() != target.dim_at(v) || m.cols() != source.dim_at(v) {
                return Err(Error::Validation(format!(
                    "morphism at vertex {} should be {}x{}",
                    q.vertices()[v],
                    target.dim_at(v),
                    source.dim_at(v)
                )));
            }
        }
        let f = ModMorphism::new_unchecked(source, target, maps);
        for (a, arr) in q.arrows().iter().enumerate() {
            let lhs = target.map(a).mul(&f.maps[arr.source]);
            let rhs = f.maps[arr.target].mul(source.map(a));
            if lhs != rhs {
                return Err(Error::Validation(format!("square at arrow `{}` does not commute", arr.name)));
            }
        }
        Ok(f)
    }

    pub(crate) fn new_unchecked(source: &Representation, target: &Representation, maps: Vec<Matrix>) -> Self {
        debug_assert!(source.alg() == target.alg());
        ModMorphism { source: source.clone(), target: target.clone(), maps }
    }

    pub fn zero(source: &Representation, target: &Representation) -> Self {
        let f = source.field();
        let maps = (0..source.dims().len())
            .map(|v| Matrix::zero(f, target.dim_at(v), source.dim_at(v)))
            .collect();
        Self::new_unchecked(source, target, maps)
    }

    pub fn identity(m: &Representation) -> Self {
        let f = m.field();
        let maps = m.dims().iter().map(|&d| Matrix::identity(f, d)).collect();
        Self::new_unchecked(m, m, maps)
    }

    pub fn source(&self) -> &Representation {
        &self.source
    }

    pub fn target(&self) -> &Representation {
        &self.target
    }

    pub fn at(&self, v: usize) -> &Matrix {
        &self.maps[v]
    }

    pub fn maps(&self) -> &[Matrix] {
        &self.maps
    }

    /// Same maps between re-labelled copies of the endpoints.
    pub fn retarget(&self, source: &Representation, target: &Representation) -> Self {
        debug_assert!(source.dims() == self.source.dims() && target.dims() == self.target.dims());
        Self::new_unchecked(source, target, self.maps.clone())
    }

    /// `self ∘ g`: first `g`, then `self`.
    pub fn compose(&self, g: &ModMorphism) -> ModMorphism {
        assert_eq!(g.target.dims(), self.source.dims(), "composition of incompatible morphisms");
        let maps = self.maps.iter().zip(&g.maps).map(|(a, b)| a.mul(b)).collect();
        Self::new_unchecked(&g.source, &self.target, maps)
    }

    pub fn add(&self, other: &ModMorphism) -> ModMorphism {
        let maps = self.maps.iter().zip(&other.maps).map(|(a, b)| a.add(b)).collect();
        Self::new_unchecked(&self.source, &self.target, maps)
    }

    pub fn sub(&self, other: &ModMorphism) -> ModMorphism {
        let maps = self.maps.iter().zip(&other.maps).map(|(a, b)| a.sub(b)).collect();
        Self::new_unchecked(&self.source, &self.target, maps)
    }

    pub fn neg(&self) -> ModMorphism {
        let maps = self.maps.iter().map(Matrix::neg).collect();
        Self::new_unchecked(&self.source, &self.target, maps)
    }

    pub fn scale(&self, s: &Scalar) -> ModMorphism {
        let maps = self.maps.iter().map(|m| m.scale(s)).collect();
        Self::new_unchecked(&self.source, &self.target, maps)
    }

    pub fn is_zero(&self) -> bool {
        self.maps.iter().all(Matrix::is_zero)
    }

    pub fn rank(&self) -> usize {
        self.maps.iter().map(Matrix::rank).sum()
    }

    pub fn is_injective(&self) -> bool {
        self.rank() == self.source.total_dim()
    }

    pub fn is_surjective(&self) -> bool {
        self.rank() == self.target.total_dim()
    }

    pub fn is_iso(&self) -> bool {
        self.source.dims() == self.target.dims() && self.is_injective()
    }

    pub fn inverse(&self) -> Option<ModMorphism> {
        if !self.is_iso() {
            return None;
        }
        let maps = self.maps.iter().map(|m| m.inverse().unwrap()).collect();
        Some(Self::new_unchecked(&self.target, &self.source, maps))
    }

    /// Block-diagonal matrix of the whole map.
    pub fn total_matrix(&self) -> Matrix {
        let refs: Vec<&Matrix> = self.maps.iter().collect();
        Matrix::block_diag(self.source.field(), &refs)
    }

    /// All entries, vertex by vertex, row-major.
    pub fn flat(&self) -> Vec<Scalar> {
        self.maps.iter().flat_map(Matrix::entries).collect()
    }

    pub(crate) fn from_flat(source: &Representation, target: &Representation, v: &[Scalar]) -> Self {
        let f = source.field();
        let mut off = 0;
        let maps = (0..source.dims().len())
            .map(|u| {
                let (r, c) = (target.dim_at(u), source.dim_at(u));
                let m = Matrix::from_entries(f, r, c, &v[off..off + r * c]);
                off += r * c;
                m
            })
            .collect();
        Self::new_unchecked(source, target, maps)
    }

    /// `Σ c_i b_i`.
    pub fn combination(source: &Representation, target: &Representation, basis: &[ModMorphism], c: &[Scalar]) -> Self {
        let mut acc = ModMorphism::zero(source, target);
        for (b, x) in basis.iter().zip(c) {
            if !x.is_zero() {
                acc = acc.add(&b.scale(x));
            }
        }
        acc
    }

    pub fn power(&self, n: usize) -> ModMorphism {
        let mut acc = ModMorphism::identity(&self.source);
        for _ in 0..n {
            acc = self.compose(&acc);
        }
        acc
    }

    /// `D(self): D(target) -> D(source)` between the given dual modules.
    pub fn dual_between(&self, dsource: &Representation, dtarget: &Representation) -> ModMorphism {
        let maps = self.maps.iter().map(Matrix::transpose).collect();
        Self::new_unchecked(dtarget, dsource, maps)
    }

    /// Whether all commuting squares hold.
    pub fn is_homomorphism(&self) -> bool {
        ModMorphism::new(&self.source, &self.target, self.maps.clone()).is_ok()
    }
}

/// Columns are the flattened morphisms.
pub(crate) fn flat_matrix(field: FieldSpec, len: usize, basis: &[ModMorphism]) -> Matrix {
    let cols: Vec<Vec<Scalar>> = basis.iter().map(ModMorphism::flat).collect();
    Matrix::from_columns(field, len, &cols)
}

pub(crate) fn hom_len(m: &Representation, n: &Representation) -> usize {
    m.dims().iter().zip(n.dims()).map(|(a, b)| a * b).sum()
}

type SparseRow = Vec<(usize, Scalar)>;

fn var_offsets(m: &Representation, n: &Representation) -> Vec<usize> {
    let mut offs = Vec::with_capacity(m.dims().len());
    let mut o = 0;
    for v in 0..m.dims().len() {
        offs.push(o);
        o += n.dim_at(v) * m.dim_at(v);
    }
    offs
}

/// Rows `N_a X_s - X_t M_a = 0` for unknown `X: m -> n`.
fn commuting_rows(m: &Representation, n: &Representation, offs: &[usize]) -> Vec<SparseRow> {
    let q = m.alg().quiver();
    let mut rows = Vec::new();
    for (a, arr) in q.arrows().iter().enumerate() {
        let (s, t) = (arr.source, arr.target);
        let (ma, na) = (m.map(a), n.map(a));
        for i in 0..n.dim_at(t) {
            for j in 0..m.dim_at(s) {
                let mut row = Vec::new();
                for l in 0..n.dim_at(s) {
                    let c = na.get(i, l);
                    if !c.is_zero() {
                        row.push((offs[s] + l * m.dim_at(s) + j, c));
                    }
                }
                for l in 0..m.dim_at(t) {
                    let c = ma.get(l, j);
                    if !c.is_zero() {
                        row.push((offs[t] + i * m.dim_at(t) + l, -&c));
                    }
                }
                if !row.is_empty() {
                    rows.push(row);
                }
            }
        }
    }
    rows
}

fn sparse_matrix(field: FieldSpec, rows: &[SparseRow], cols: usize) -> Matrix {
    let mut out = Matrix::zero(field, rows.len(), cols);
    for (i, r) in rows.iter().enumerate() {
        for (j, c) in r {
            let cur = out.get(i, *j);
            out.set(i, *j, &cur + c);
        }
    }
    out
}

/// A basis of `Hom(m, n)`.
pub fn hom_basis(m: &Representation, n: &Representation) -> Vec<ModMorphism> {
    assert!(m.alg() == n.alg(), "hom between modules over different algebras");
    let len = hom_len(m, n);
    if len == 0 {
        return Vec::new();
    }
    let offs = var_offsets(m, n);
    let rows = commuting_rows(m, n, &offs);
    let sys = sparse_matrix(m.field(), &rows, len);
    let k = sys.kernel_basis();
    (0..k.cols()).map(|j| ModMorphism::from_flat(m, n, &k.column(j))).collect()
}

pub fn hom_dim(m: &Representation, n: &Representation) -> usize {
    hom_basis(m, n).len()
}

/// Some `u: source(h) -> source(g)` with `g ∘ u = h`.
pub fn factor_through_target(g: &ModMorphism, h: &ModMorphism) -> Option<ModMorphism> {
    let x = h.source();
    let y = g.source();
    let f = x.field();
    let len = hom_len(x, y);
    let offs = var_offsets(x, y);
    let mut rows = commuting_rows(x, y, &offs);
    let mut rhs = vec![f.zero(); rows.len()];
    for v in 0..x.dims().len() {
        let gv = g.at(v);
        let hv = h.at(v);
        for i in 0..gv.rows() {
            for j in 0..x.dim_at(v) {
                let row: SparseRow = (0..gv.cols())
                    .filter_map(|l| {
                        let c = gv.get(i, l);
                        (!c.is_zero()).then(|| (offs[v] + l * x.dim_at(v) + j, c))
                    })
                    .collect();
                let b = hv.get(i, j);
                if row.is_empty() {
                    if !b.is_zero() {
                        return None;
                    }
                    continue;
                }
                rows.push(row);
                rhs.push(b);
            }
        }
    }
    let sys = sparse_matrix(f, &rows, len);
    let b = Matrix::column_vector(f, &rhs);
    let sol = sys.solve(&b).ok()??;
    Some(ModMorphism::from_flat(x, y, &sol.column(0)))
}

/// Some `u: target(f) -> target(h)` with `u ∘ f = h`.
pub fn factor_through_source(f: &ModMorphism, h: &ModMorphism) -> Option<ModMorphism> {
    let y = f.target();
    let z = h.target();
    let field = y.field();
    let len = hom_len(y, z);
    let offs = var_offsets(y, z);
    let mut rows = commuting_rows(y, z, &offs);
    let mut rhs = vec![field.zero(); rows.len()];
    for v in 0..y.dims().len() {
        let fv = f.at(v);
        let hv = h.at(v);
        for i in 0..z.dim_at(v) {
            for j in 0..fv.cols() {
                let row: SparseRow = (0..fv.rows())
                    .filter_map(|l| {
                        let c = fv.get(l, j);
                        (!c.is_zero()).then(|| (offs[v] + i * y.dim_at(v) + l, c))
                    })
                    .collect();
                let b = hv.get(i, j);
                if row.is_empty() {
                    if !b.is_zero() {
                        return None;
                    }
                    continue;
                }
                rows.push(row);
                rhs.push(b);
            }
        }
    }
    let sys = sparse_matrix(field, &rows, len);
    let b = Matrix::column_vector(field, &rhs);
    let sol = sys.solve(&b).ok()??;
    Some(ModMorphism::from_flat(y, z, &sol.column(0)))
}

/// The submodule spanned per vertex by the columns of `bases`, with its
/// inclusion. Fails when the spaces are not closed under the arrows.
pub fn submodule(m: &Representation, bases: Vec<Matrix>) -> Result<(Representation, ModMorphism)> {
    let q = m.alg().quiver();
    let f = m.field();
    let dims: Vec<usize> = bases.iter().map(Matrix::cols).collect();
    let mut maps = Vec::with_capacity(q.num_arrows());
    for (a, arr) in q.arrows().iter().enumerate() {
        let img = m.map(a).mul(&bases[arr.source]);
        let y = if dims[arr.source] == 0 || dims[arr.target] == 0 {
            if !img.is_zero() {
                return Err(Error::Validation("subspaces are not a submodule".into()));
            }
            Matrix::zero(f, dims[arr.target], dims[arr.source])
        } else {
            bases[arr.target]
                .solve(&img)?
                .ok_or_else(|| Error::Validation("subspaces are not a submodule".into()))?
        };
        maps.push(y);
    }
    let sub = Representation::new_unchecked(m.alg(), dims, maps);
    let incl = ModMorphism::new_unchecked(&sub, m, bases);
    Ok((sub, incl))
}

/// Quotient by the submodule spanned by `bases`, with the projection.
pub fn quotient(m: &Representation, bases: &[Matrix]) -> (Representation, ModMorphism) {
    let f = m.field();
    let q = m.alg().quiver();
    let proj: Vec<Matrix> = bases
        .iter()
        .enumerate()
        .map(|(v, b)| {
            if b.cols() == 0 {
                Matrix::identity(f, m.dim_at(v))
            } else {
                b.left_kernel()
            }
        })
        .collect();
    let right_inv: Vec<Matrix> = proj
        .iter()
        .map(|p| {
            if p.rows() == 0 {
                Matrix::zero(f, p.cols(), 0)
            } else {
                p.solve(&Matrix::identity(f, p.rows())).unwrap().unwrap()
            }
        })
        .collect();
    let dims: Vec<usize> = proj.iter().map(Matrix::rows).collect();
    let maps = q
        .arrows()
        .iter()
        .enumerate()
        .map(|(a, arr)| proj[arr.target].mul(m.map(a)).mul(&right_inv[arr.source]))
        .collect();
    let quo = Representation::new_unchecked(m.alg(), dims, maps);
    let p = ModMorphism::new_unchecked(m, &quo, proj);
    (quo, p)
}

pub fn kernel(f: &ModMorphism) -> (Representation, ModMorphism) {
    let bases = f.maps().iter().map(Matrix::kernel_basis).collect();
    submodule(f.source(), bases).expect("kernel of a homomorphism is a submodule")
}

pub fn cokernel(f: &ModMorphism) -> (Representation, ModMorphism) {
    let bases: Vec<Matrix> = f.maps().iter().map(Matrix::column_space).collect();
    quotient(f.target(), &bases)
}

/// `(Im f, inclusion Im f -> target, corestriction source -> Im f)`.
pub fn image(f: &ModMorphism) -> (Representation, ModMorphism, ModMorphism) {
    let bases: Vec<Matrix> = f.maps().iter().map(Matrix::column_space).collect();
    let (im, incl) = submodule(f.target(), bases.clone()).expect("image of a homomorphism is a submodule");
    let co = bases
        .iter()
        .zip(f.maps())
        .map(|(b, m)| {
            if b.cols() == 0 {
                Matrix::zero(m.field(), 0, m.cols())
            } else {
                b.solve(m).unwrap().unwrap()
            }
        })
        .collect();
    let corestriction = ModMorphism::new_unchecked(f.source(), &im, co);
    (im, incl, corestriction)
}

#[derive(Clone, Debug)]
pub struct DirectSum {
    pub module: Representation,
    pub inclusions: Vec<ModMorphism>,
    pub projections: Vec<ModMorphism>,
}

pub fn direct_sum(alg: &Algebra, parts: &[Representation]) -> DirectSum {
    let f = alg.field();
    let nv = alg.num_vertices();
    let dims: Vec<usize> = (0..nv).map(|v| parts.iter().map(|p| p.dim_at(v)).sum()).collect();
    let maps = alg
        .quiver()
        .arrows()
        .iter()
        .enumerate()
        .map(|(a, _)| {
            let refs: Vec<&Matrix> = parts.iter().map(|p| p.map(a)).collect();
            Matrix::block_diag(f, &refs)
        })
        .collect();
    let module = Representation::new_unchecked(alg, dims.clone(), maps);
    let mut offs = vec![0usize; nv];
    let mut inclusions = Vec::new();
    let mut projections = Vec::new();
    for p in parts {
        let inc: Vec<Matrix> = (0..nv)
            .map(|v| {
                let mut m = Matrix::zero(f, dims[v], p.dim_at(v));
                m.set_block(offs[v], 0, &Matrix::identity(f, p.dim_at(v)));
                m
            })
            .collect();
        let pr: Vec<Matrix> = inc.iter().map(Matrix::transpose).collect();
        inclusions.push(ModMorphism::new_unchecked(p, &module, inc));
        projections.push(ModMorphism::new_unchecked(&module, p, pr));
        for v in 0..nv {
            offs[v] += p.dim_at(v);
        }
    }
    DirectSum { module, inclusions, projections }
}

/// Sum of morphisms with equal endpoints; `None` if the list is empty.
pub fn sum_morphisms(list: &[ModMorphism]) -> Option<ModMorphism> {
    let mut it = list.iter();
    let first = it.next()?.clone();
    Some(it.fold(first, |acc, x| acc.add(x)))
}

/// Endomorphism ring data of a module whose endomorphism ring is local:
/// every endomorphism is `λ·1 + nilpotent` and `scalar_part` returns `λ`.
#[derive(Debug)]
pub struct LocalEnd {
    basis: Vec<ModMorphism>,
    pivot_rows: Vec<usize>,
    functional: Vec<Scalar>,
}

impl LocalEnd {
    pub fn basis(&self) -> &[ModMorphism] {
        &self.basis
    }

    pub fn scalar_part(&self, e: &ModMorphism) -> Scalar {
        let flat = e.flat();
        let f = e.source().field();
        let mut acc = f.zero();
        for (r, c) in self.pivot_rows.iter().zip(&self.functional) {
            acc = &acc + &(c * &flat[*r]);
        }
        acc
    }

    /// Basis of the radical of the endomorphism ring.
    pub fn radical_basis(&self) -> Vec<ModMorphism> {
        let f = self.basis[0].source().field();
        let coeffs = Matrix::from_fn(f, 1, self.basis.len(), |_, j| self.scalar_part(&self.basis[j]));
        let k = coeffs.kernel_basis();
        let m = self.basis[0].source();
        (0..k.cols())
            .map(|j| ModMorphism::combination(m, m, &self.basis, &k.column(j)))
            .collect()
    }
}

/// An indecomposable summand with its split inclusion and projection.
#[derive(Clone, Debug)]
pub struct Summand {
    pub module: Representation,
    pub inclusion: ModMorphism,
    pub projection: ModMorphism,
    pub local: Arc<LocalEnd>,
}

#[derive(Debug)]
pub struct Decomposition {
    pub summands: Vec<Summand>,
    /// Isomorphism class index of each summand (classes numbered in order of
    /// first appearance).
    pub classes: Vec<usize>,
}

impl Decomposition {
    pub fn num_classes(&self) -> usize {
        self.classes.iter().max().map_or(0, |m| m + 1)
    }
}

pub(crate) fn random_scalar<R: Rng>(field: FieldSpec, rng: &mut R) -> Scalar {
    match field {
        FieldSpec::Prime(p) => field.from_i64(rng.gen_range(0..p as i64)),
        FieldSpec::Rationals => field.from_i64(rng.gen_range(-4..=4)),
    }
}

enum Split {
    Local(LocalEnd),
    Pair([(Representation, ModMorphism, ModMorphism); 2]),
}

fn eigen_split(m: &Representation, x: &ModMorphism, rng: &mut ChaCha8Rng) -> (Option<Split>, Option<Scalar>) {
    let mp = poly::min_poly(&x.total_matrix());
    let rts = poly::roots(&mp, rng);
    let n = m.total_dim();
    let Some(lam) = rts.first() else {
        return (None, None);
    };
    let y = x.sub(&ModMorphism::identity(m).scale(lam)).power(n);
    if y.is_zero() {
        (None, Some(lam.clone()))
    } else {
        (Some(fitting_split(m, &y)), None)
    }
}

/// `M = Ker y ⊕ Im y` for `y` an idempotent-like power with this property.
fn fitting_split(m: &Representation, y: &ModMorphism) -> Split {
    let f = m.field();
    let kb: Vec<Matrix> = y.maps().iter().map(Matrix::kernel_basis).collect();
    let ib: Vec<Matrix> = y.maps().iter().map(Matrix::column_space).collect();
    let (k, k_incl) = submodule(m, kb.clone()).unwrap();
    let (i, i_incl) = submodule(m, ib.clone()).unwrap();
    let mut kp = Vec::new();
    let mut ip = Vec::new();
    for v in 0..m.dims().len() {
        let both = Matrix::hstack(f, m.dim_at(v), &[&kb[v], &ib[v]]);
        let inv = both.inverse().expect("Fitting decomposition");
        kp.push(inv.block(0, 0, kb[v].cols(), m.dim_at(v)));
        ip.push(inv.block(kb[v].cols(), 0, ib[v].cols(), m.dim_at(v)));
    }
    let k_proj = ModMorphism::new_unchecked(m, &k, kp);
    let i_proj = ModMorphism::new_unchecked(m, &i, ip);
    Split::Pair([(k, k_incl, k_proj), (i, i_incl, i_proj)])
}

fn local_certificate(m: &Representation, basis: &[ModMorphism], lambdas: &[Scalar]) -> Option<LocalEnd> {
    let f = m.field();
    let len = hom_len(m, m);
    let id = ModMorphism::identity(m);
    let nil: Vec<ModMorphism> = basis.iter().zip(lambdas).map(|(b, l)| b.sub(&id.scale(l))).collect();
    let nm = flat_matrix(f, len, &nil);
    let span = nm.column_space();
    if span.cols() + 1 != basis.len() {
        return None;
    }
    for a in &nil {
        for b in &nil {
            let p = Matrix::column_vector(f, &a.compose(b).flat());
            if span.cols() == 0 {
                if !p.is_zero() {
                    return None;
                }
            } else if !span.spans(&p) {
                return None;
            }
        }
    }
    let bm = flat_matrix(f, len, basis);
    let (_, pivot_rows, _) = bm.transpose().rref();
    let bp = bm.select_rows(&pivot_rows);
    let inv = bp.inverse()?;
    let lam = Matrix::from_fn(f, 1, lambdas.len(), |_, j| lambdas[j].clone());
    let functional = lam.mul(&inv).row(0);
    Some(LocalEnd { basis: basis.to_vec(), pivot_rows, functional })
}

fn split_once(m: &Representation, rng: &mut ChaCha8Rng) -> Result<Split> {
    let basis = hom_basis(m, m);
    let mut lambdas = Vec::new();
    let mut all_scalar = true;
    for b in &basis {
        let (split, lam) = eigen_split(m, b, rng);
        if let Some(s) = split {
            return Ok(s);
        }
        match lam {
            Some(l) => lambdas.push(l),
            None => all_scalar = false,
        }
    }
    if all_scalar {
        if let Some(loc) = local_certificate(m, &basis, &lambdas) {
            return Ok(Split::Local(loc));
        }
    }
    let f = m.field();
    for _ in 0..(8 + 4 * basis.len()) {
        let c: Vec<Scalar> = basis.iter().map(|_| random_scalar(f, rng)).collect();
        let x = ModMorphism::combination(m, m, &basis, &c);
        if let (Some(s), _) = eigen_split(m, &x, rng) {
            return Ok(s);
        }
    }
    Err(Error::NonSplitEndomorphismRing)
}

fn decompose_into(
    m: &Representation,
    incl: ModMorphism,
    proj: ModMorphism,
    rng: &mut ChaCha8Rng,
    root: bool,
    out: &mut Vec<Summand>,
) -> Result<()> {
    if m.is_zero() {
        return Ok(());
    }
    match split_once(m, rng)? {
        Split::Local(loc) => {
            let loc = Arc::new(loc);
            let own = Summand {
                module: m.clone(),
                inclusion: ModMorphism::identity(m),
                projection: ModMorphism::identity(m),
                local: loc.clone(),
            };
            if !root {
                let _ = m.0.decomposition.set(Ok(Arc::new(Decomposition { summands: vec![own], classes: vec![0] })));
            }
            out.push(Summand { module: m.clone(), inclusion: incl, projection: proj, local: loc });
        }
        Split::Pair(parts) => {
            for (sub, i, p) in parts {
                let ii = incl.compose(&i);
                let pp = p.compose(&proj);
                decompose_into(&sub, ii, pp, rng, false, out)?;
            }
        }
    }
    Ok(())
}

/// Full decomposition into indecomposables with split inclusions and
/// projections; cached per module.
pub fn decompose_full(m: &Representation) -> Result<Arc<Decomposition>> {
    m.0.decomposition
        .get_or_init(|| {
            let mut rng = ChaCha8Rng::seed_from_u64(par::seed());
            let mut summands = Vec::new();
            decompose_into(m, ModMorphism::identity(m), ModMorphism::identity(m), &mut rng, true, &mut summands)?;
            summands.sort_by_key(|s| std::cmp::Reverse(s.module.total_dim()));
            let mut classes: Vec<usize> = Vec::new();
            let mut reps: Vec<usize> = Vec::new();
            for i in 0..summands.len() {
                let found = reps
                    .iter()
                    .position(|&r| iso_between_summands(&summands[r], &summands[i]).is_some());
                match found {
                    Some(c) => classes.push(c),
                    None => {
                        classes.push(reps.len());
                        reps.push(i);
                    }
                }
            }
            Ok(Arc::new(Decomposition { summands, classes }))
        })
        .clone()
}

/// Pairwise non-isomorphic indecomposable summands with multiplicities.
pub fn decompose(m: &Representation) -> Result<Vec<(Representation, usize)>> {
    let d = decompose_full(m)?;
    let mut out: Vec<(Representation, usize)> = Vec::new();
    for (s, &c) in d.summands.iter().zip(&d.classes) {
        if c == out.len() {
            out.push((s.module.clone(), 1));
        } else {
            out[c].1 += 1;
        }
    }
    Ok(out)
}

/// Local endomorphism data; fails if `m` is not indecomposable.
pub fn local_end(m: &Representation) -> Result<Arc<LocalEnd>> {
    let d = decompose_full(m)?;
    if d.summands.len() != 1 {
        return Err(Error::Validation(format!("{} is not indecomposable", m.label())));
    }
    Ok(d.summands[0].local.clone())
}

pub fn is_indecomposable(m: &Representation) -> Result<bool> {
    Ok(!m.is_zero() && decompose_full(m)?.summands.len() == 1)
}

fn iso_between_summands(x: &Summand, y: &Summand) -> Option<ModMorphism> {
    iso_local(&x.module, &x.local, &y.module)
}

fn iso_local(x: &Representation, lx: &LocalEnd, y: &Representation) -> Option<ModMorphism> {
    if x.dims() != y.dims() {
        return None;
    }
    let fwd = hom_basis(x, y);
    let back = hom_basis(y, x);
    for f in &fwd {
        for g in &back {
            if !lx.scalar_part(&g.compose(f)).is_zero() {
                return Some(f.clone());
            }
        }
    }
    None
}

/// An isomorphism `m -> n` if one exists.
pub fn isomorphism(m: &Representation, n: &Representation) -> Result<Option<ModMorphism>> {
    if m.alg() != n.alg() || m.dims() != n.dims() {
        return Ok(None);
    }
    let basis = hom_basis(m, n);
    for b in &basis {
        if b.is_iso() {
            return Ok(Some(b.clone()));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(par::seed() ^ 0x9e37);
    let f = m.field();
    for _ in 0..4 {
        if basis.is_empty() {
            break;
        }
        let c: Vec<Scalar> = basis.iter().map(|_| random_scalar(f, &mut rng)).collect();
        let x = ModMorphism::combination(m, n, &basis, &c);
        if x.is_iso() {
            return Ok(Some(x));
        }
    }
    let dm = decompose_full(m)?;
    let dn = decompose_full(n)?;
    if dm.summands.len() != dn.summands.len() {
        return Ok(None);
    }
    let mut used = vec![false; dn.summands.len()];
    let mut total = ModMorphism::zero(m, n);
    for s in &dm.summands {
        let mut hit = None;
        for (j, t) in dn.summands.iter().enumerate() {
            if used[j] {
                continue;
            }
            if let Some(theta) = iso_between_summands(s, t) {
                hit = Some((j, theta));
                break;
            }
        }
        let Some((j, theta)) = hit else { return Ok(None) };
        used[j] = true;
        let t = &dn.summands[j];
        total = total.add(&t.inclusion.compose(&theta).compose(&s.projection));
    }
    Ok(Some(total))
}

pub fn is_isomorphic(m: &Representation, n: &Representation) -> Result<bool> {
    Ok(isomorphism(m, n)?.is_some())
}

/// Basis of `rad(m, n)`: morphisms whose components between indecomposable
/// summands are non-isomorphisms.
pub fn radical_morphisms(m: &Representation, n: &Representation) -> Result<Vec<ModMorphism>> {
    let basis = hom_basis(m, n);
    if basis.is_empty() {
        return Ok(basis);
    }
    let dm = decompose_full(m)?;
    let dn = decompose_full(n)?;
    let f = m.field();
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    for si in &dm.summands {
        for tj in &dn.summands {
            if si.module.dims() != tj.module.dims() {
                continue;
            }
            let back = hom_basis(&tj.module, &si.module);
            let comps: Vec<ModMorphism> =
                basis.iter().map(|b| tj.projection.compose(b).compose(&si.inclusion)).collect();
            for h in &back {
                rows.push(comps.iter().map(|c| si.local.scalar_part(&h.compose(c))).collect());
            }
        }
    }
    if rows.is_empty() {
        return Ok(basis);
    }
    let a = Matrix::from_rows(f, &rows)?;
    let k = a.kernel_basis();
    Ok((0..k.cols()).map(|j| ModMorphism::combination(m, n, &basis, &k.column(j))).collect())
}

/// Basis of the Jacobson radical of `End(m)`.
pub fn end_radical(m: &Representation) -> Result<Vec<ModMorphism>> {
    radical_morphisms(m, m)
}

/// Whether `g: m -> n` lies in the radical.
pub fn in_radical(g: &ModMorphism) -> Result<bool> {
    let dm = decompose_full(g.source())?;
    let dn = decompose_full(g.target())?;
    for si in &dm.summands {
        for tj in &dn.summands {
            if si.module.dims() != tj.module.dims() {
                continue;
            }
            let c = tj.projection.compose(g).compose(&si.inclusion);
            for h in hom_basis(&tj.module, &si.module) {
                if !si.local.scalar_part(&h.compose(&c)).is_zero() {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Dimension vectors keyed by vertex name, for reports.
pub fn dim_vector_string(m: &Representation) -> String {
    let mut parts = BTreeMap::new();
    for (v, d) in m.dims().iter().enumerate() {
        parts.insert(v, format!("{}:{}", m.alg().vertex_name(v), d));
    }
    parts.into_values().collect::<Vec<_>>().join(" ")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::{build_algebra, projective_at, Quiver, Relation};

    fn a2() -> Algebra {
        let mut q = Quiver::new();
        q.add_vertex("1").unwrap();
        q.add_vertex("2").unwrap();
        q.add_arrow("a", "1", "2").unwrap();
        build_algebra(FieldSpec::Prime(101), q, vec![]).unwrap()
    }

    fn dual_numbers() -> Algebra {
        let f = FieldSpec::Rationals;
        let mut q = Quiver::new();
        q.add_vertex("1").unwrap();
        q.add_arrow("x", "1", "1").unwrap();
        let r = Relation::from_words(&q, f, &[(1, "x.x")]).unwrap();
        build_algebra(f, q, vec![r]).unwrap()
    }

    #[test]
    fn hom_dimensions_over_a2() {
        let alg = a2();
        let p1 = projective_at(&alg, 0);
        let s1 = Representation::simple(&alg, 0);
        assert_eq!(p1.dims(), &[1, 1]);
        assert_eq!(hom_dim(&p1, &s1), 1);
        assert_eq!(hom_dim(&s1, &p1), 0);
        let id = ModMorphism::identity(&p1);
        let basis = hom_basis(&p1, &p1);
        let span = flat_matrix(alg.field(), hom_len(&p1, &p1), &basis);
        assert!(span.spans(&Matrix::column_vector(alg.field(), &id.flat())));
    }

    #[test]
    fn kernels_and_cokernels() {
        let alg = a2();
        let p1 = projective_at(&alg, 0);
        let s1 = Representation::simple(&alg, 0);
        let pi = hom_basis(&p1, &s1).remove(0);
        let (k, inc) = kernel(&pi);
        assert_eq!(k.dims(), &[0, 1]);
        assert!(inc.is_injective());
        let (c, _) = cokernel(&inc);
        assert!(is_isomorphic(&c, &s1).unwrap());
        let (k, _) = kernel(&ModMorphism::identity(&p1));
        assert!(k.is_zero());
        let (k, _) = kernel(&ModMorphism::zero(&p1, &s1));
        assert_eq!(k.dims(), p1.dims());
        let (im, _, _) = image(&pi);
        assert_eq!(im.dims(), &[1, 0]);
    }

    #[test]
    fn decomposition_examples() {
        let alg = a2();
        let s1 = Representation::simple(&alg, 0);
        let s2 = Representation::simple(&alg, 1);
        let p1 = projective_at(&alg, 0);
        let ds = direct_sum(&alg, &[s1.clone(), s1.clone()]);
        let d = decompose(&ds.module).unwrap();
        assert_eq!(d.len(), 1);
        assert_eq!(d[0].1, 2);
        assert_eq!(decompose(&p1).unwrap().len(), 1);
        let big = direct_sum(&alg, &[s2.clone(), p1.clone(), s1.clone(), p1.clone()]);
        let d = decompose(&big.module).unwrap();
        let mut mult: Vec<usize> = d.iter().map(|x| x.1).collect();
        mult.sort();
        assert_eq!(mult, vec![1, 1, 2]);
        let full = decompose_full(&big.module).unwrap();
        let mut sum = ModMorphism::zero(&big.module, &big.module);
        for s in &full.summands {
            assert!(s.projection.compose(&s.inclusion).is_iso());
            sum = sum.add(&s.inclusion.compose(&s.projection));
        }
        assert_eq!(sum, ModMorphism::identity(&big.module));
    }

    #[test]
    fn radicals() {
        let alg = a2();
        let s1 = Representation::simple(&alg, 0);
        assert!(end_radical(&s1).unwrap().is_empty());
        let ds = direct_sum(&alg, &[s1.clone(), s1]);
        assert!(end_radical(&ds.module).unwrap().is_empty());
        let dn = dual_numbers();
        let p = projective_at(&dn, 0);
        assert_eq!(p.total_dim(), 2);
        assert_eq!(hom_dim(&p, &p), 2);
        assert_eq!(end_radical(&p).unwrap().len(), 1);
    }

    #[test]
    fn isomorphism_under_base_change() {
        let alg = a2();
        let f = alg.field();
        let p1 = projective_at(&alg, 0);
        let twisted = Representation::new(&alg, vec![1, 1], vec![Matrix::from_i64(f, &[&[7]])]).unwrap();
        assert!(is_isomorphic(&p1, &twisted).unwrap());
        assert!(!is_isomorphic(&Representation::simple(&alg, 0), &Representation::simple(&alg, 1)).unwrap());
        assert!(is_isomorphic(&p1, &p1).unwrap());
    }

    #[test]
    fn factorizations() {
        let alg = a2();
        let p1 = projective_at(&alg, 0);
        let s1 = Representation::simple(&alg, 0);
        let s2 = Representation::simple(&alg, 1);
        let pi = hom_basis(&p1, &s1).remove(0);
        let inc = hom_basis(&s2, &p1).remove(0);
        assert!(factor_through_target(&pi, &ModMorphism::identity(&s1)).is_none());
        let u = factor_through_source(&ModMorphism::identity(&p1), &pi).unwrap();
        assert_eq!(u, pi);
        assert!(factor_through_source(&inc, &ModMorphism::identity(&s2)).is_none());
    }

    #[test]
    fn rejects_bad_modules() {
        let alg = a2();
        let f = alg.field();
        assert!(Representation::new(&alg, vec![1, 1], vec![Matrix::zero(f, 2, 1)]).is_err());
        let dn = dual_numbers();
        let bad = Representation::new(&dn, vec![2], vec![Matrix::identity(FieldSpec::Rationals, 2)]);
        assert!(bad.is_err());
        let s1 = Representation::simple(&alg, 0);
        let p1 = projective_at(&alg, 0);
        let nonsquare = ModMorphism::new(&s1, &p1, vec![Matrix::from_i64(f, &[&[1]]), Matrix::zero(f, 1, 0)]);
        assert!(nonsquare.is_err());
    }

    #[test]
    fn radical_labels() {
        let alg = a2();
        assert_eq!(projective_at(&alg, 0).radical_label(), "1/2");
        assert_eq!(Representation::simple(&alg, 1).radical_label(), "2");
    }
}
