//! Projective resolutions, Ext, the transpose and `D Tr_d`.
//!
//! `Hom(⊕ P_{v_g}, B)` is identified with `⊕ B_{v_g}` by evaluating at the
//! generators, so cochains are plain column vectors and cocycle questions
//! become linear systems. A class in `Ext^n(A, B)` is represented by its
//! values on the generators of the `n`-th term of the minimal resolution of `A`.

use std::sync::Arc;

use crate::dexact::{self, DSequence};
use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::linalg::Matrix;
use crate::presentation::{projective_coords, Algebra};
use crate::reps::{self, hom_basis, ModMorphism, Representation};

/// `⊕_g P_{tops[g]}` together with its path coordinates.
#[derive(Clone, Debug)]
pub struct ProjectiveSum {
    pub module: Representation,
    pub tops: Vec<usize>,
    /// For each vertex, the (summand, basis path) behind every coordinate.
    index: Vec<Vec<(usize, usize)>>,
    /// Coordinate of each summand's generator at its top vertex.
    gen_pos: Vec<usize>,
}

impl ProjectiveSum {
    pub fn new(alg: &Algebra, tops: Vec<usize>) -> Self {
        let f = alg.field();
        let nv = alg.num_vertices();
        let mut index: Vec<Vec<(usize, usize)>> = vec![Vec::new(); nv];
        let mut gen_pos = Vec::with_capacity(tops.len());
        for (g, &v) in tops.iter().enumerate() {
            let coords = projective_coords(alg, v);
            gen_pos.push(index[v].len());
            for (u, list) in coords.iter().enumerate() {
                for &b in list {
                    index[u].push((g, b));
                }
            }
        }
        let dims: Vec<usize> = index.iter().map(Vec::len).collect();
        let pos = |u: usize, g: usize, b: usize| index[u].iter().position(|&x| x == (g, b)).unwrap();
        let maps = alg
            .quiver()
            .arrows()
            .iter()
            .enumerate()
            .map(|(a, arr)| {
                let mut m = Matrix::zero(f, dims[arr.target], dims[arr.source]);
                for (j, &(g, b)) in index[arr.source].iter().enumerate() {
                    for (i, c) in alg.mul_arrow(&[(b, f.one())], a) {
                        m.set(pos(arr.target, g, i), j, c);
                    }
                }
                m
            })
            .collect();
        let module = Representation::new_unchecked(alg, dims, maps);
        ProjectiveSum { module, tops, index, gen_pos }
    }

    pub fn len(&self) -> usize {
        self.tops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tops.is_empty()
    }

    /// Basis path and summand of coordinate `i` at vertex `u`.
    pub fn coordinate(&self, u: usize, i: usize) -> (usize, usize) {
        self.index[u][i]
    }

    pub fn position(&self, u: usize, summand: usize, path: usize) -> Option<usize> {
        self.index[u].iter().position(|&x| x == (summand, path))
    }

    /// The morphism to `m` sending generator `g` to `images[g] ∈ m_{tops[g]}`.
    pub fn hom_to(&self, m: &Representation, images: &[Vec<Scalar>]) -> ModMorphism {
        let f = m.field();
        let maps = (0..self.index.len())
            .map(|u| {
                let mut out = Matrix::zero(f, m.dim_at(u), self.index[u].len());
                for (j, &(g, b)) in self.index[u].iter().enumerate() {
                    let x = Matrix::column_vector(f, &images[g]);
                    let col = m.basis_action(b).mul(&x);
                    out.set_block(0, j, &col);
                }
                out
            })
            .collect();
        ModMorphism::new_unchecked(&self.module, m, maps)
    }

    /// Values of `f: ⊕P -> N` at the generators.
    pub fn generator_images(&self, f: &ModMorphism) -> Vec<Vec<Scalar>> {
        self.tops
            .iter()
            .zip(&self.gen_pos)
            .map(|(&v, &p)| (0..f.at(v).rows()).map(|i| f.at(v).get(i, p)).collect())
            .collect()
    }

    /// Lifts `phi: ⊕P -> N` through `g: L -> N`, generator by generator.
    pub fn lift(&self, phi: &ModMorphism, g: &ModMorphism) -> Option<ModMorphism> {
        let f = g.source().field();
        let imgs = self.generator_images(phi);
        let mut lifted = Vec::with_capacity(imgs.len());
        for (&v, y) in self.tops.iter().zip(&imgs) {
            let gv = g.at(v);
            if gv.cols() == 0 {
                if y.iter().any(|x| !x.is_zero()) {
                    return None;
                }
                lifted.push(Vec::new());
                continue;
            }
            let sol = gv.solve(&Matrix::column_vector(f, y)).ok()??;
            lifted.push(sol.column(0));
        }
        Some(self.hom_to(g.source(), &lifted))
    }

    /// Length of a cochain in `Hom(⊕P, b) = ⊕ b_{tops[g]}`.
    pub fn cochain_len(&self, b: &Representation) -> usize {
        self.tops.iter().map(|&v| b.dim_at(v)).sum()
    }

    fn cochain_offsets(&self, b: &Representation) -> Vec<usize> {
        let mut o = 0;
        self.tops
            .iter()
            .map(|&v| {
                let x = o;
                o += b.dim_at(v);
                x
            })
            .collect()
    }

    pub fn split_cochain(&self, b: &Representation, v: &[Scalar]) -> Vec<Vec<Scalar>> {
        let offs = self.cochain_offsets(b);
        self.tops
            .iter()
            .zip(offs)
            .map(|(&t, o)| v[o..o + b.dim_at(t)].to_vec())
            .collect()
    }
}

/// Projective cover `⊕ P_v -> m`, one summand per top basis vector.
pub fn projective_cover(m: &Representation) -> (ProjectiveSum, ModMorphism) {
    let f = m.field();
    let q = m.alg().quiver();
    let mut tops = Vec::new();
    let mut images = Vec::new();
    for v in 0..q.num_vertices() {
        if m.dim_at(v) == 0 {
            continue;
        }
        let parts: Vec<&Matrix> = q
            .arrows()
            .iter()
            .enumerate()
            .filter(|(_, a)| a.target == v)
            .map(|(i, _)| m.map(i))
            .collect();
        let rad = Matrix::hstack(f, m.dim_at(v), &parts).column_space();
        let comp = rad.complement_columns();
        for j in 0..comp.cols() {
            tops.push(v);
            images.push(comp.column(j));
        }
    }
    let p = ProjectiveSum::new(m.alg(), tops);
    let cover = p.hom_to(m, &images);
    (p, cover)
}

#[derive(Debug)]
pub struct ProjResolution {
    pub module: Representation,
    /// `P_0, P_1, ...`
    pub terms: Vec<ProjectiveSum>,
    /// `differentials[n - 1] = d_n: P_n -> P_{n-1}`.
    pub differentials: Vec<ModMorphism>,
    pub augmentation: ModMorphism,
    /// The last computed kernel was zero, so all later terms vanish.
    pub complete: bool,
}

impl ProjResolution {
    /// `P_n`, empty beyond the end of a complete resolution.
    pub fn term(&self, n: usize) -> ProjectiveSum {
        match self.terms.get(n) {
            Some(t) => t.clone(),
            None => {
                assert!(self.complete, "resolution too short");
                ProjectiveSum::new(self.module.alg(), Vec::new())
            }
        }
    }

    /// `d_n`, zero beyond the end.
    pub fn differential(&self, n: usize) -> ModMorphism {
        assert!(n >= 1);
        match self.differentials.get(n - 1) {
            Some(d) => d.clone(),
            None => ModMorphism::zero(&self.term(n).module, &self.term(n - 1).module),
        }
    }

    pub fn length(&self) -> usize {
        self.terms.len()
    }

    /// Projective dimension if the resolution is complete.
    pub fn projective_dimension(&self) -> Option<usize> {
        self.complete.then(|| self.terms.len().saturating_sub(1))
    }
}

fn extend(res: &mut ProjResolution, length: usize) {
    while !res.complete && res.terms.len() < length + 1 {
        let last = match res.differentials.last() {
            Some(d) => d.clone(),
            None => res.augmentation.clone(),
        };
        let (k, incl) = reps::kernel(&last);
        if k.is_zero() {
            res.complete = true;
            break;
        }
        let (p, cover) = projective_cover(&k);
        res.differentials.push(incl.compose(&cover));
        res.terms.push(p);
    }
}

/// Minimal projective resolution with at least `length + 1` terms (fewer
/// only when it stops). Cached per module.
pub fn minimal_resolution(m: &Representation, length: usize) -> Arc<ProjResolution> {
    let mut guard = m.resolution_cache().lock().unwrap();
    if let Some(r) = guard.as_ref() {
        if r.complete || r.terms.len() > length {
            return r.clone();
        }
    }
    let mut res = match guard.take() {
        Some(r) => Arc::try_unwrap(r).unwrap_or_else(|r| ProjResolution {
            module: r.module.clone(),
            terms: r.terms.clone(),
            differentials: r.differentials.clone(),
            augmentation: r.augmentation.clone(),
            complete: r.complete,
        }),
        None => {
            let (p, cover) = projective_cover(m);
            let complete = m.is_zero();
            ProjResolution { module: m.clone(), terms: vec![p], differentials: Vec::new(), augmentation: cover, complete }
        }
    };
    extend(&mut res, length);
    let res = Arc::new(res);
    *guard = Some(res.clone());
    res
}

/// `D(m) = Hom_k(m, k)`, a module over the opposite algebra.
pub fn duality_d(m: &Representation) -> Representation {
    m.dual()
}

/// Matrix of `Hom(d_n, b): Hom(P_{n-1}, b) -> Hom(P_n, b)` on generator values.
fn cochain_map(res: &ProjResolution, n: usize, b: &Representation) -> Matrix {
    let f = b.field();
    let pn = res.term(n);
    let pm = res.term(n - 1);
    let rows = pn.cochain_len(b);
    let cols = pm.cochain_len(b);
    let mut out = Matrix::zero(f, rows, cols);
    if rows == 0 || cols == 0 {
        return out;
    }
    let d = res.differential(n);
    let imgs = pn.generator_images(&d);
    let roff = pn.cochain_offsets(b);
    let coff = pm.cochain_offsets(b);
    for (g, y) in imgs.iter().enumerate() {
        let v = pn.tops[g];
        for (c, val) in y.iter().enumerate() {
            if val.is_zero() {
                continue;
            }
            let (h, path) = pm.coordinate(v, c);
            let block = b.basis_action(path).scale(val);
            let cur = out.block(roff[g], coff[h], block.rows(), block.cols());
            out.set_block(roff[g], coff[h], &cur.add(&block));
        }
    }
    out
}

/// An element of `Ext^n(a, b)`: values on the generators of `P_n`.
#[derive(Clone, Debug)]
pub struct ExtCocycle {
    pub a: Representation,
    pub b: Representation,
    pub degree: usize,
    pub values: Vec<Scalar>,
    pub resolution: Arc<ProjResolution>,
}

impl ExtCocycle {
    /// The cocycle as a morphism `P_n -> b`.
    pub fn as_morphism(&self) -> ModMorphism {
        let p = self.resolution.term(self.degree);
        p.hom_to(&self.b, &p.split_cochain(&self.b, &self.values))
    }

    pub fn add(&self, other: &ExtCocycle) -> ExtCocycle {
        let values = self.values.iter().zip(&other.values).map(|(x, y)| x + y).collect();
        ExtCocycle { values, ..self.clone() }
    }

    pub fn scale(&self, s: &Scalar) -> ExtCocycle {
        let values = self.values.iter().map(|x| x * s).collect();
        ExtCocycle { values, ..self.clone() }
    }

    pub fn zero(a: &Representation, b: &Representation, degree: usize) -> ExtCocycle {
        let resolution = minimal_resolution(a, degree + 1);
        let len = resolution.term(degree).cochain_len(b);
        ExtCocycle { a: a.clone(), b: b.clone(), degree, values: vec![b.field().zero(); len], resolution }
    }
}

/// `Ext^n(a, b)` with a chosen basis of cocycles complementing the coboundaries.
#[derive(Debug)]
pub struct ExtSpace {
    pub a: Representation,
    pub b: Representation,
    pub degree: usize,
    resolution: Arc<ProjResolution>,
    /// `[coboundary basis | cocycle basis]`, columns.
    combined: Matrix,
    n_boundaries: usize,
    dim: usize,
}

impl ExtSpace {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn resolution(&self) -> &Arc<ProjResolution> {
        &self.resolution
    }

    pub fn basis(&self) -> Vec<ExtCocycle> {
        (0..self.dim)
            .map(|j| self.cocycle_from_values(self.combined.column(self.n_boundaries + j)))
            .collect()
    }

    fn cocycle_from_values(&self, values: Vec<Scalar>) -> ExtCocycle {
        ExtCocycle {
            a: self.a.clone(),
            b: self.b.clone(),
            degree: self.degree,
            values,
            resolution: self.resolution.clone(),
        }
    }

    pub fn from_coords(&self, c: &[Scalar]) -> ExtCocycle {
        let f = self.b.field();
        let len = self.combined.rows();
        let mut v = vec![f.zero(); len];
        for (j, x) in c.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (i, y) in self.combined.column(self.n_boundaries + j).iter().enumerate() {
                v[i] = &v[i] + &(x * y);
            }
        }
        self.cocycle_from_values(v)
    }

    /// Coordinates of the class of `e` in the chosen basis.
    pub fn coords(&self, e: &ExtCocycle) -> Result<Vec<Scalar>> {
        if e.degree != self.degree || e.values.len() != self.combined.rows() {
            return Err(Error::Shape("cocycle does not belong to this Ext space".into()));
        }
        if self.combined.rows() == 0 {
            return Ok(Vec::new());
        }
        let f = self.b.field();
        if self.combined.cols() == 0 {
            return if e.values.iter().all(Scalar::is_zero) {
                Ok(Vec::new())
            } else {
                Err(Error::VerificationFailed("not a cocycle".into()))
            };
        }
        let sol = self
            .combined
            .solve(&Matrix::column_vector(f, &e.values))?
            .ok_or_else(|| Error::VerificationFailed("not a cocycle".into()))?;
        Ok((0..self.dim).map(|j| sol.get(self.n_boundaries + j, 0)).collect())
    }

    pub fn is_zero_class(&self, e: &ExtCocycle) -> Result<bool> {
        Ok(self.coords(e)?.iter().all(Scalar::is_zero))
    }

    pub fn same_class(&self, x: &ExtCocycle, y: &ExtCocycle) -> Result<bool> {
        Ok(self.coords(x)? == self.coords(y)?)
    }
}

/// `Ext^n(a, b)` for `n >= 1`.
pub fn ext_space(a: &Representation, b: &Representation, n: usize) -> ExtSpace {
    assert!(n >= 1, "Ext degree must be positive");
    let f = b.field();
    let res = minimal_resolution(a, n + 1);
    let len = res.term(n).cochain_len(b);
    let boundaries = cochain_map(&res, n, b).column_space();
    let next = cochain_map(&res, n + 1, b);
    let cocycles = if next.rows() == 0 { Matrix::identity(f, len) } else { next.kernel_basis() };
    let both = Matrix::hstack(f, len, &[&boundaries, &cocycles]);
    let (_, pivots, _) = both.rref();
    let extra: Vec<usize> = pivots
        .iter()
        .filter(|&&c| c >= boundaries.cols())
        .map(|c| c - boundaries.cols())
        .collect();
    let chosen = cocycles.select_columns(&extra);
    let combined = Matrix::hstack(f, len, &[&boundaries, &chosen]);
    ExtSpace {
        a: a.clone(),
        b: b.clone(),
        degree: n,
        resolution: res,
        n_boundaries: boundaries.cols(),
        dim: chosen.cols(),
        combined,
    }
}

pub fn ext_dim(a: &Representation, b: &Representation, n: usize) -> usize {
    ext_space(a, b, n).dim()
}

/// Comparison chain map from the minimal resolution of the right end into
/// the sequence; component `k` maps `P_k -> A^{d-k}`.
pub fn comparison_maps(seq: &DSequence) -> Result<Vec<ModMorphism>> {
    let d = seq.d();
    let a = seq.right_end();
    let res = minimal_resolution(a, d + 1);
    let mut out: Vec<ModMorphism> = Vec::with_capacity(d + 1);
    for k in 0..=d {
        let p = res.term(k);
        let phi = if k == 0 { res.augmentation.clone() } else { out[k - 1].compose(&res.differential(k)) };
        let through = seq.map(d - k);
        let lifted = p
            .lift(&phi, through)
            .ok_or_else(|| Error::NotExact(format!("no lift at position {}", d - k)))?;
        out.push(lifted);
    }
    Ok(out)
}

/// The class `[seq] ∈ Ext^d(A^{d+1}, A^0)`.
pub fn class_of_sequence(seq: &DSequence) -> Result<ExtCocycle> {
    if !dexact::is_exact_complex(seq) {
        return Err(Error::NotExact("sequence is not exact".into()));
    }
    let d = seq.d();
    let maps = comparison_maps(seq)?;
    let res = minimal_resolution(seq.right_end(), d + 1);
    let p = res.term(d);
    let values: Vec<Scalar> = p.generator_images(&maps[d]).into_iter().flatten().collect();
    Ok(ExtCocycle { a: seq.right_end().clone(), b: seq.left_end().clone(), degree: d, values, resolution: res })
}

/// `f · e`: postcompose the cocycle with `f: b -> b'`.
pub fn push_class(f: &ModMorphism, e: &ExtCocycle) -> ExtCocycle {
    let p = e.resolution.term(e.degree);
    let parts = p.split_cochain(&e.b, &e.values);
    let values = p
        .tops
        .iter()
        .zip(parts)
        .flat_map(|(&v, x)| {
            let col = f.at(v).mul(&Matrix::column_vector(e.b.field(), &x));
            col.column(0)
        })
        .collect();
    ExtCocycle { a: e.a.clone(), b: f.target().clone(), degree: e.degree, values, resolution: e.resolution.clone() }
}

/// Chain map between minimal resolutions lifting `g: a' -> a`; entry `k`
/// maps `P'_k -> P_k`.
pub fn lift_to_resolutions(g: &ModMorphism, n: usize) -> Result<Vec<ModMorphism>> {
    let src = minimal_resolution(g.source(), n + 1);
    let tgt = minimal_resolution(g.target(), n + 1);
    let mut out: Vec<ModMorphism> = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let p = src.term(k);
        let (phi, through) = if k == 0 {
            (g.compose(&src.augmentation), tgt.augmentation.clone())
        } else {
            (out[k - 1].compose(&src.differential(k)), tgt.differential(k))
        };
        let lifted = p
            .lift(&phi, &through)
            .ok_or_else(|| Error::LiftFailed(format!("comparison map at degree {k}")))?;
        out.push(lifted);
    }
    Ok(out)
}

/// `e · g`: pull back along `g: a' -> a`.
pub fn pull_class(e: &ExtCocycle, g: &ModMorphism) -> Result<ExtCocycle> {
    let n = e.degree;
    let lifts = lift_to_resolutions(g, n)?;
    let src = minimal_resolution(g.source(), n + 1);
    let p = src.term(n);
    let emor = e.as_morphism();
    let comp = emor.compose(&lifts[n]);
    let values = p.generator_images(&comp).into_iter().flatten().collect();
    Ok(ExtCocycle { a: g.source().clone(), b: e.b.clone(), degree: n, values, resolution: src })
}

/// The `d`-th transpose, a module over the opposite algebra.
pub fn transpose_tr_d(m: &Representation, d: usize) -> Representation {
    assert!(d >= 1);
    let alg = m.alg();
    let op = alg.opposite();
    let res = minimal_resolution(m, d);
    let pd = res.term(d);
    if pd.is_empty() {
        return Representation::zero(&op);
    }
    let pm = res.term(d - 1);
    let dd = res.differential(d);
    let imgs = pd.generator_images(&dd);
    let target = ProjectiveSum::new(&op, pd.tops.clone());
    let source = ProjectiveSum::new(&op, pm.tops.clone());
    let f = alg.field();
    let mut gen_images: Vec<Vec<Scalar>> =
        source.tops.iter().map(|&w| vec![f.zero(); target.module.dim_at(w)]).collect();
    for (g, y) in imgs.iter().enumerate() {
        let v = pd.tops[g];
        for (c, val) in y.iter().enumerate() {
            if val.is_zero() {
                continue;
            }
            let (h, path) = pm.coordinate(v, c);
            let w = source.tops[h];
            let rev: Vec<usize> = alg.basis()[path].word.iter().rev().copied().collect();
            for (ob, coef) in op.reduce_word(v, &rev) {
                let pos = target.position(w, g, ob).expect("reversed path lies in the opposite projective");
                gen_images[h][pos] = &gen_images[h][pos] + &(val * &coef);
            }
        }
    }
    let map = source.hom_to(&target.module, &gen_images);
    reps::cokernel(&map).0
}

/// `D Tr_d(m)`; zero for projective `m`.
pub fn dtr_d(m: &Representation, d: usize) -> Representation {
    let t = transpose_tr_d(m, d);
    t.dual()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StableEnd {
    pub dim: usize,
    pub is_division_ring: bool,
}

/// Endomorphisms of `x` factoring through a projective, as a basis.
pub fn projectively_trivial_ends(x: &Representation) -> Vec<ModMorphism> {
    let (p, cover) = projective_cover(x);
    hom_basis(x, &p.module).iter().map(|h| cover.compose(h)).collect()
}

/// The stable endomorphism ring `End(x)/P(x, x)`.
pub fn stable_end(x: &Representation) -> Result<StableEnd> {
    let f = x.field();
    let len = reps::hom_len(x, x);
    let ends = hom_basis(x, x);
    let proj = projectively_trivial_ends(x);
    let pm = reps::flat_matrix(f, len, &proj).column_space();
    let dim = ends.len() - pm.cols();
    if dim == 0 {
        return Ok(StableEnd { dim, is_division_ring: false });
    }
    let rad = reps::end_radical(x)?;
    let rad_in_p = rad.iter().all(|r| {
        let v = Matrix::column_vector(f, &r.flat());
        pm.cols() > 0 && pm.spans(&v)
    });
    let d = reps::decompose_full(x)?;
    let nonproj = d
        .summands
        .iter()
        .filter(|s| !is_projective(&s.module))
        .count();
    Ok(StableEnd { dim, is_division_ring: rad_in_p && nonproj == 1 })
}

/// Whether `m` is projective (its cover is an isomorphism).
pub fn is_projective(m: &Representation) -> bool {
    let (p, _) = projective_cover(m);
    p.module.total_dim() == m.total_dim()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;
    use crate::presentation::{build_algebra, injective_at, projective_at, Quiver};
    use crate::reps::is_isomorphic;

    fn a2() -> Algebra {
        let mut q = Quiver::new();
        q.add_vertex("1").unwrap();
        q.add_vertex("2").unwrap();
        q.add_arrow("a", "1", "2").unwrap();
        build_algebra(FieldSpec::Prime(101), q, vec![]).unwrap()
    }

    #[test]
    fn resolutions_over_a2() {
        let alg = a2();
        let p1 = projective_at(&alg, 0);
        let r = minimal_resolution(&p1, 3);
        assert_eq!(r.projective_dimension(), Some(0));
        let s1 = Representation::simple(&alg, 0);
        let r = minimal_resolution(&s1, 3);
        assert_eq!(r.projective_dimension(), Some(1));
        assert_eq!(r.terms[0].tops, vec![0]);
        assert_eq!(r.terms[1].tops, vec![1]);
    }

    #[test]
    fn duality_of_projectives() {
        let alg = a2();
        let d = duality_d(&projective_at(&alg, 0));
        assert!(d.alg() == &alg.opposite());
        assert!(is_isomorphic(&d, &injective_at(&alg.opposite(), 0)).unwrap());
        let s = Representation::simple(&alg, 1);
        assert_eq!(duality_d(&s).dims(), &[0, 1]);
    }

    #[test]
    fn ext_over_a2() {
        let alg = a2();
        let s1 = Representation::simple(&alg, 0);
        let s2 = Representation::simple(&alg, 1);
        assert_eq!(ext_dim(&s1, &s2, 1), 1);
        assert_eq!(ext_dim(&s2, &s1, 1), 0);
        let p1 = projective_at(&alg, 0);
        assert_eq!(ext_dim(&p1, &s2, 1), 0);
    }

    #[test]
    fn auslander_reiten_translate_of_a2() {
        let alg = a2();
        let s1 = Representation::simple(&alg, 0);
        let tau = dtr_d(&s1, 1);
        assert!(tau.alg() == &alg);
        assert!(is_isomorphic(&tau, &Representation::simple(&alg, 1)).unwrap());
        assert!(dtr_d(&projective_at(&alg, 0), 1).is_zero());
    }

    #[test]
    fn stable_endomorphisms() {
        let alg = a2();
        let s1 = Representation::simple(&alg, 0);
        assert_eq!(stable_end(&s1).unwrap(), StableEnd { dim: 1, is_division_ring: true });
        let p1 = projective_at(&alg, 0);
        assert_eq!(stable_end(&p1).unwrap(), StableEnd { dim: 0, is_division_ring: false });
    }
}
