//! d-exact sequences `0 -> A^0 -> ... -> A^{d+1} -> 0` and their transport.
//!
//! Inside a d-cluster tilting subcategory a d-exact sequence is the same as
//! an exact sequence of modules with all terms in the subcategory; both
//! descriptions are checked. Sequences are moved along maps by d-pushouts
//! built from module pushouts followed by envelopes, then cut down to their
//! almost minimal form by Gaussian elimination of invertible components.

use crate::approx::{self, Subcat};
use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::homology::{self, ext_space, ExtCocycle};
use crate::linalg::Matrix;
use crate::reps::{self, direct_sum, hom_basis, ModMorphism, Representation, Summand};

/// A complex `A^0 -> A^1 -> ... -> A^{d+1}` given by its `d + 1` maps.
#[derive(Clone, Debug)]
pub struct DSequence {
    terms: Vec<Representation>,
    maps: Vec<ModMorphism>,
}

impl DSequence {
    /// Builds a complex from consecutive maps; composites must vanish.
    pub fn new(maps: Vec<ModMorphism>) -> Result<Self> {
        if maps.len() < 2 {
            return Err(Error::Shape("a d-sequence needs at least two maps".into()));
        }
        for w in maps.windows(2) {
            if w[0].target().dims() != w[1].source().dims() {
                return Err(Error::Shape("maps are not composable".into()));
            }
            if !w[1].compose(&w[0]).is_zero() {
                return Err(Error::NotExact("consecutive composite is nonzero".into()));
            }
        }
        let mut terms: Vec<Representation> = maps.iter().map(|m| m.source().clone()).collect();
        terms.push(maps.last().unwrap().target().clone());
        let maps = maps
            .iter()
            .enumerate()
            .map(|(i, m)| m.retarget(&terms[i], &terms[i + 1]))
            .collect();
        Ok(DSequence { terms, maps })
    }

    /// `0 -> b = b -> 0 -> ... -> 0 -> a = a -> 0`, or `b -> b ⊕ a -> a` for `d = 1`.
    pub fn split(b: &Representation, a: &Representation, d: usize) -> DSequence {
        let alg = b.alg();
        if d == 1 {
            let ds = direct_sum(alg, &[b.clone(), a.clone()]);
            return DSequence::new(vec![ds.inclusions[0].clone(), ds.projections[1].clone()]).unwrap();
        }
        let mut maps = vec![ModMorphism::identity(b)];
        if d == 2 {
            maps.push(ModMorphism::zero(b, a));
        } else {
            let z = Representation::zero(alg);
            maps.push(ModMorphism::zero(b, &z));
            for _ in 3..d {
                maps.push(ModMorphism::zero(&z, &z));
            }
            maps.push(ModMorphism::zero(&z, a));
        }
        maps.push(ModMorphism::identity(a));
        DSequence::new(maps).unwrap()
    }

    pub fn d(&self) -> usize {
        self.maps.len() - 1
    }

    pub fn terms(&self) -> &[Representation] {
        &self.terms
    }

    pub fn term(&self, i: usize) -> &Representation {
        &self.terms[i]
    }

    pub fn maps(&self) -> &[ModMorphism] {
        &self.maps
    }

    /// `α^i: A^i -> A^{i+1}`.
    pub fn map(&self, i: usize) -> &ModMorphism {
        &self.maps[i]
    }

    pub fn left_end(&self) -> &Representation {
        &self.terms[0]
    }

    pub fn right_end(&self) -> &Representation {
        &self.terms[self.terms.len() - 1]
    }

    /// The same complex with map `i` replaced.
    pub fn with_map(&self, i: usize, m: ModMorphism) -> Result<DSequence> {
        let mut maps = self.maps.clone();
        maps[i] = m;
        DSequence::new(maps)
    }

    /// Termwise direct sum.
    pub fn direct_sum(&self, other: &DSequence) -> Result<DSequence> {
        if self.d() != other.d() {
            return Err(Error::Shape("sequences of different length".into()));
        }
        let alg = self.left_end().alg();
        let sums: Vec<_> = self
            .terms
            .iter()
            .zip(&other.terms)
            .map(|(x, y)| direct_sum(alg, &[x.clone(), y.clone()]))
            .collect();
        let maps = (0..self.maps.len())
            .map(|i| {
                let (s, t) = (&sums[i], &sums[i + 1]);
                t.inclusions[0]
                    .compose(&self.maps[i])
                    .compose(&s.projections[0])
                    .add(&t.inclusions[1].compose(&other.maps[i]).compose(&s.projections[1]))
            })
            .collect();
        DSequence::new(maps)
    }

    /// `D` of the complex: a complex over the opposite algebra, reversed.
    pub fn dual(&self) -> DSequence {
        let dt: Vec<Representation> = self.terms.iter().map(|t| t.dual().with_name(&t.label())).collect();
        let maps = (0..self.maps.len())
            .rev()
            .map(|i| self.maps[i].dual_between(&dt[i], &dt[i + 1]))
            .collect();
        DSequence::new(maps).expect("dual of a complex is a complex")
    }
}

/// A chain map between two complexes of the same length.
#[derive(Clone, Debug)]
pub struct SeqMorphism {
    pub source: DSequence,
    pub target: DSequence,
    components: Vec<ModMorphism>,
}

impl SeqMorphism {
    pub fn new(source: &DSequence, target: &DSequence, components: Vec<ModMorphism>) -> Result<Self> {
        if source.d() != target.d() || components.len() != source.terms.len() {
            return Err(Error::Shape("chain map of the wrong length".into()));
        }
        for (i, c) in components.iter().enumerate() {
            if c.source().dims() != source.term(i).dims() || c.target().dims() != target.term(i).dims() {
                return Err(Error::Shape(format!("component {i} has the wrong endpoints")));
            }
        }
        let components: Vec<ModMorphism> = components
            .iter()
            .enumerate()
            .map(|(i, c)| c.retarget(source.term(i), target.term(i)))
            .collect();
        for i in 0..source.maps.len() {
            if target.map(i).compose(&components[i]) != components[i + 1].compose(source.map(i)) {
                return Err(Error::Validation(format!("square {i} does not commute")));
            }
        }
        Ok(SeqMorphism { source: source.clone(), target: target.clone(), components })
    }

    pub fn identity(seq: &DSequence) -> SeqMorphism {
        let c = seq.terms.iter().map(ModMorphism::identity).collect();
        SeqMorphism { source: seq.clone(), target: seq.clone(), components: c }
    }

    pub fn zero(source: &DSequence, target: &DSequence) -> SeqMorphism {
        let c = source.terms.iter().zip(&target.terms).map(|(x, y)| ModMorphism::zero(x, y)).collect();
        SeqMorphism { source: source.clone(), target: target.clone(), components: c }
    }

    pub fn components(&self) -> &[ModMorphism] {
        &self.components
    }

    pub fn component(&self, i: usize) -> &ModMorphism {
        &self.components[i]
    }

    /// `self ∘ g`.
    pub fn compose(&self, g: &SeqMorphism) -> SeqMorphism {
        let c = self.components.iter().zip(&g.components).map(|(x, y)| x.compose(y)).collect();
        SeqMorphism { source: g.source.clone(), target: self.target.clone(), components: c }
    }

    pub fn add(&self, g: &SeqMorphism) -> SeqMorphism {
        let c = self.components.iter().zip(&g.components).map(|(x, y)| x.add(y)).collect();
        SeqMorphism { source: self.source.clone(), target: self.target.clone(), components: c }
    }

    pub fn scale(&self, s: &Scalar) -> SeqMorphism {
        let c = self.components.iter().map(|x| x.scale(s)).collect();
        SeqMorphism { source: self.source.clone(), target: self.target.clone(), components: c }
    }

    pub fn is_iso(&self) -> bool {
        self.components.iter().all(ModMorphism::is_iso)
    }
}

/// Exactness in `mod Φ` with injective first and surjective last map.
pub fn is_exact_complex(seq: &DSequence) -> bool {
    let maps = seq.maps();
    if !maps[0].is_injective() || !maps[maps.len() - 1].is_surjective() {
        return false;
    }
    for i in 1..maps.len() {
        let t = seq.term(i);
        for v in 0..t.dims().len() {
            if maps[i].at(v).rank() + maps[i - 1].at(v).rank() != t.dim_at(v) {
                return false;
            }
        }
    }
    maps.windows(2).all(|w| w[1].compose(&w[0]).is_zero())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactnessReport {
    pub exact: bool,
    pub terms_in_ambient: bool,
    /// `Hom(B, -)` and `Hom(-, B)` exactness for every listed `B`.
    pub hom_exact: bool,
}

impl ExactnessReport {
    pub fn passed(&self) -> bool {
        self.exact && self.terms_in_ambient && self.hom_exact
    }
}

fn rank_of(maps: &[ModMorphism], len: usize) -> usize {
    if maps.is_empty() || len == 0 {
        return 0;
    }
    reps::flat_matrix(maps[0].source().field(), len, maps).rank()
}

/// `0 -> (B, A^0) -> ... -> (B, A^{d+1})` exact except at the last spot.
pub fn is_d_kernel_at(seq: &DSequence, b: &Representation) -> bool {
    let n = seq.terms.len();
    let homs: Vec<Vec<ModMorphism>> = seq.terms.iter().map(|t| hom_basis(b, t)).collect();
    let ranks: Vec<usize> = (0..n - 1)
        .map(|i| {
            let imgs: Vec<ModMorphism> = homs[i].iter().map(|h| seq.map(i).compose(h)).collect();
            rank_of(&imgs, reps::hom_len(b, seq.term(i + 1)))
        })
        .collect();
    (0..n - 1).all(|i| homs[i].len() == ranks[i] + if i > 0 { ranks[i - 1] } else { 0 })
}

/// `0 -> (A^{d+1}, B) -> ... -> (A^0, B)` exact except at the last spot.
pub fn is_d_cokernel_at(seq: &DSequence, b: &Representation) -> bool {
    let n = seq.terms.len();
    let homs: Vec<Vec<ModMorphism>> = seq.terms.iter().map(|t| hom_basis(t, b)).collect();
    let ranks: Vec<usize> = (1..n)
        .map(|i| {
            let imgs: Vec<ModMorphism> = homs[i].iter().map(|h| h.compose(seq.map(i - 1))).collect();
            rank_of(&imgs, reps::hom_len(seq.term(i - 1), b))
        })
        .collect();
    // ranks[i - 1] is the rank of (α^{i-1}, B): (A^i, B) -> (A^{i-1}, B)
    (1..n).all(|i| homs[i].len() == ranks[i - 1] + if i + 1 < n { ranks[i] } else { 0 })
}

pub fn verify_d_exact(seq: &DSequence, ambient: &Subcat) -> Result<ExactnessReport> {
    let exact = is_exact_complex(seq);
    let mut terms_in_ambient = true;
    for t in seq.terms() {
        if !ambient.contains(t)? {
            terms_in_ambient = false;
            break;
        }
    }
    let hom_exact = ambient.objects().iter().all(|b| is_d_kernel_at(seq, b) && is_d_cokernel_at(seq, b));
    Ok(ExactnessReport { exact, terms_in_ambient, hom_exact })
}

/// A retraction of `α^0` if the sequence splits.
pub fn is_split(seq: &DSequence) -> Option<ModMorphism> {
    reps::factor_through_source(seq.map(0), &ModMorphism::identity(seq.left_end()))
}

/// A section of `α^d` if one exists.
pub fn split_section(seq: &DSequence) -> Option<ModMorphism> {
    reps::factor_through_target(seq.map(seq.d()), &ModMorphism::identity(seq.right_end()))
}

#[derive(Clone, Debug)]
pub struct NullHomotopy {
    /// Some `s^{d+1}` with `β^d s^{d+1} = h^{d+1}`.
    pub right: bool,
    /// Some `s^1` with `s^1 α^0 = h^0`.
    pub left: bool,
    /// `s^1 .. s^{d+1}` with `h^i = β^{i-1} s^i + s^{i+1} α^i`.
    pub homotopy: Option<Vec<ModMorphism>>,
}

impl NullHomotopy {
    pub fn consistent(&self) -> bool {
        self.right == self.left && self.left == self.homotopy.is_some()
    }
}

fn is_homotopy(h: &SeqMorphism, s: &[ModMorphism]) -> bool {
    let d = h.source.d();
    (0..=d + 1).all(|i| {
        let mut acc = ModMorphism::zero(h.source.term(i), h.target.term(i));
        if i >= 1 {
            acc = acc.add(&h.target.map(i - 1).compose(&s[i - 1]));
        }
        if i <= d {
            acc = acc.add(&s[i].compose(h.source.map(i)));
        }
        acc == h.components[i]
    })
}

/// Decides the three equivalent conditions for a chain map between d-exact
/// sequences to be null-homotopic; the homotopy is back-substituted from
/// `s^{d+1}` down to `s^1`.
pub fn null_homotopy_test(h: &SeqMorphism) -> NullHomotopy {
    let d = h.source.d();
    let (src, tgt) = (&h.source, &h.target);
    let right_s = reps::factor_through_target(tgt.map(d), &h.components[d + 1]);
    let left = reps::factor_through_source(src.map(0), &h.components[0]).is_some();
    let mut homotopy = None;
    if let Some(top) = right_s.clone() {
        let mut s: Vec<Option<ModMorphism>> = vec![None; d + 1];
        s[d] = Some(top);
        let mut ok = true;
        for i in (1..=d).rev() {
            let rhs = h.components[i].sub(&s[i].as_ref().unwrap().compose(src.map(i)));
            match reps::factor_through_target(tgt.map(i - 1), &rhs) {
                Some(x) => s[i - 1] = Some(x.retarget(src.term(i), tgt.term(i - 1))),
                None => {
                    ok = false;
                    break;
                }
            }
        }
        if ok {
            let s: Vec<ModMorphism> = s.into_iter().map(Option::unwrap).collect();
            if is_homotopy(h, &s) {
                homotopy = Some(s);
            }
        }
    }
    NullHomotopy { right: right_s.is_some(), left, homotopy }
}

/// Whether any homotopy exists, by one linear system in all `s^i` at once.
pub fn is_null_homotopic(h: &SeqMorphism) -> bool {
    let d = h.source.d();
    let (src, tgt) = (&h.source, &h.target);
    let f = src.left_end().field();
    let eq_len: Vec<usize> = (0..=d + 1).map(|i| reps::hom_len(src.term(i), tgt.term(i))).collect();
    let offs: Vec<usize> = eq_len.iter().scan(0, |acc, &l| {
        let o = *acc;
        *acc += l;
        Some(o)
    }).collect();
    let total: usize = eq_len.iter().sum();
    let mut cols: Vec<Vec<Scalar>> = Vec::new();
    for i in 1..=d + 1 {
        for u in hom_basis(src.term(i), tgt.term(i - 1)) {
            let mut col = vec![f.zero(); total];
            let at_i = tgt.map(i - 1).compose(&u).flat();
            col[offs[i]..offs[i] + eq_len[i]].clone_from_slice(&at_i);
            let at_prev = u.compose(src.map(i - 1)).flat();
            for (k, x) in at_prev.into_iter().enumerate() {
                col[offs[i - 1] + k] = &col[offs[i - 1] + k] + &x;
            }
            cols.push(col);
        }
    }
    let rhs: Vec<Scalar> = h.components.iter().flat_map(ModMorphism::flat).collect();
    if cols.is_empty() {
        return rhs.iter().all(Scalar::is_zero);
    }
    let a = Matrix::from_columns(f, total, &cols);
    matches!(a.solve(&Matrix::column_vector(f, &rhs)), Ok(Some(_)))
}

/// Extends `f^i, ..., f^j` (given as `segment`, starting at index `i`) to a
/// chain map `src -> tgt`.
pub fn complete_morphism(src: &DSequence, tgt: &DSequence, i: usize, segment: Vec<ModMorphism>) -> Result<SeqMorphism> {
    let n = src.terms.len();
    let j = i + segment.len() - 1;
    if segment.is_empty() || j >= n {
        return Err(Error::Shape("segment out of range".into()));
    }
    let mut comps: Vec<Option<ModMorphism>> = vec![None; n];
    for (k, s) in segment.into_iter().enumerate() {
        comps[i + k] = Some(s);
    }
    for l in (0..i).rev() {
        let g = comps[l + 1].as_ref().unwrap().compose(src.map(l));
        let x = reps::factor_through_target(tgt.map(l), &g)
            .ok_or_else(|| Error::LiftFailed(format!("no component at position {l}")))?;
        comps[l] = Some(x.retarget(src.term(l), tgt.term(l)));
    }
    for l in j + 1..n {
        let g = tgt.map(l - 1).compose(comps[l - 1].as_ref().unwrap());
        let x = reps::factor_through_source(src.map(l - 1), &g)
            .ok_or_else(|| Error::LiftFailed(format!("no component at position {l}")))?;
        comps[l] = Some(x.retarget(src.term(l), tgt.term(l)));
    }
    SeqMorphism::new(src, tgt, comps.into_iter().map(Option::unwrap).collect())
}

/// Basis of all chain maps `src -> tgt`.
pub fn chain_map_space(src: &DSequence, tgt: &DSequence) -> Vec<SeqMorphism> {
    let n = src.terms.len();
    let f = src.left_end().field();
    let homs: Vec<Vec<ModMorphism>> = (0..n).map(|i| hom_basis(src.term(i), tgt.term(i))).collect();
    let eq_len: Vec<usize> = (0..n - 1).map(|i| reps::hom_len(src.term(i), tgt.term(i + 1))).collect();
    let total: usize = eq_len.iter().sum();
    let offs: Vec<usize> = eq_len.iter().scan(0, |acc, &l| {
        let o = *acc;
        *acc += l;
        Some(o)
    }).collect();
    let mut cols: Vec<Vec<Scalar>> = Vec::new();
    for i in 0..n {
        for u in &homs[i] {
            let mut col = vec![f.zero(); total];
            if i + 1 < n {
                for (k, x) in tgt.map(i).compose(u).flat().into_iter().enumerate() {
                    col[offs[i] + k] = &col[offs[i] + k] + &x;
                }
            }
            if i > 0 {
                for (k, x) in u.compose(src.map(i - 1)).flat().into_iter().enumerate() {
                    col[offs[i - 1] + k] = &col[offs[i - 1] + k] - &x;
                }
            }
            cols.push(col);
        }
    }
    if cols.is_empty() {
        return Vec::new();
    }
    let a = Matrix::from_columns(f, total, &cols);
    let k = if total == 0 { Matrix::identity(f, cols.len()) } else { a.kernel_basis() };
    (0..k.cols())
        .map(|c| {
            let coeffs = k.column(c);
            let mut off = 0;
            let comps = (0..n)
                .map(|i| {
                    let part = &coeffs[off..off + homs[i].len()];
                    off += homs[i].len();
                    ModMorphism::combination(src.term(i), tgt.term(i), &homs[i], part)
                })
                .collect();
            SeqMorphism { source: src.clone(), target: tgt.clone(), components: comps }
        })
        .collect()
}

/// Interior maps `α^1 .. α^{d-1}` all lie in the radical.
pub fn is_almost_minimal(seq: &DSequence) -> Result<bool> {
    for i in 1..seq.d() {
        if !reps::in_radical(seq.map(i))? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The sum of the listed summands with its split inclusion into and
/// projection from the ambient module.
fn partial_sum(m: &Representation, parts: &[&Summand]) -> (Representation, ModMorphism, ModMorphism) {
    let mods: Vec<Representation> = parts.iter().map(|s| s.module.clone()).collect();
    let ds = direct_sum(m.alg(), &mods);
    let mut incl = ModMorphism::zero(&ds.module, m);
    let mut proj = ModMorphism::zero(m, &ds.module);
    for (k, s) in parts.iter().enumerate() {
        incl = incl.add(&s.inclusion.compose(&ds.projections[k]));
        proj = proj.add(&ds.inclusions[k].compose(&s.projection));
    }
    (ds.module, incl, proj)
}

/// An almost minimal sequence with chain maps to and from the input.
#[derive(Clone, Debug)]
pub struct Minimized {
    pub seq: DSequence,
    pub to_min: SeqMorphism,
    pub from_min: SeqMorphism,
}

fn cancel_once(seq: &DSequence) -> Result<Option<(DSequence, Vec<ModMorphism>, Vec<ModMorphism>)>> {
    for i in 1..seq.d() {
        let alpha = seq.map(i);
        let da = reps::decompose_full(seq.term(i))?;
        let db = reps::decompose_full(seq.term(i + 1))?;
        for (si, s) in da.summands.iter().enumerate() {
            for (ti, t) in db.summands.iter().enumerate() {
                if s.module.dims() != t.module.dims() {
                    continue;
                }
                let phi = t.projection.compose(alpha).compose(&s.inclusion);
                let Some(phi_inv) = phi.inverse() else { continue };
                let others_a: Vec<&Summand> = da.summands.iter().enumerate().filter(|(k, _)| *k != si).map(|x| x.1).collect();
                let others_b: Vec<&Summand> = db.summands.iter().enumerate().filter(|(k, _)| *k != ti).map(|x| x.1).collect();
                let (a2, ia, pa) = partial_sum(seq.term(i), &others_a);
                let (b2, ib, pb) = partial_sum(seq.term(i + 1), &others_b);
                let b = t.projection.compose(alpha).compose(&ia);
                let c = pb.compose(alpha).compose(&s.inclusion);
                let e = pb.compose(alpha).compose(&ia);
                let cphib = c.compose(&phi_inv).compose(&b);
                let new_alpha = e.sub(&cphib);
                let mut maps = seq.maps().to_vec();
                maps[i - 1] = pa.compose(seq.map(i - 1));
                maps[i] = new_alpha;
                maps[i + 1] = seq.map(i + 1).compose(&ib);
                let new_seq = DSequence::new(maps)?;
                let mut to: Vec<ModMorphism> = seq.terms().iter().map(ModMorphism::identity).collect();
                let mut from = to.clone();
                to[i] = pa.clone();
                to[i + 1] = pb.sub(&c.compose(&phi_inv).compose(&t.projection));
                from[i] = ia.sub(&s.inclusion.compose(&phi_inv).compose(&b));
                from[i + 1] = ib;
                let _ = (&a2, &b2);
                return Ok(Some((new_seq, to, from)));
            }
        }
    }
    Ok(None)
}

/// Cancels invertible components of the interior maps until they all lie
/// in the radical; ends are untouched.
pub fn minimize_with_maps(seq: &DSequence) -> Result<Minimized> {
    let mut cur = seq.clone();
    let mut to = SeqMorphism::identity(seq);
    let mut from = SeqMorphism::identity(seq);
    while let Some((next, t, f)) = cancel_once(&cur)? {
        let t = SeqMorphism::new(&cur, &next, t)?;
        let f = SeqMorphism::new(&next, &cur, f)?;
        to = t.compose(&to);
        from = from.compose(&f);
        cur = next;
    }
    Ok(Minimized { seq: cur, to_min: to, from_min: from })
}

pub fn minimize(seq: &DSequence) -> Result<DSequence> {
    Ok(minimize_with_maps(seq)?.seq)
}

/// Module pushout of `seq` along `f: A^0 -> B`, with every interior term
/// replaced by its `sub`-envelope. Returns the new sequence and the chain
/// map from `seq` (identity on the right end).
pub fn pushout_construction(seq: &DSequence, f: &ModMorphism, sub: &Subcat) -> Result<(DSequence, SeqMorphism)> {
    let d = seq.d();
    let alg = f.source().alg().clone();
    let b = f.target().clone();
    // E_1 = coker(A^0 -> A^1 ⊕ B)
    let ds = direct_sum(&alg, &[seq.term(1).clone(), b.clone()]);
    let u = ds.inclusions[0].compose(seq.map(0)).sub(&ds.inclusions[1].compose(f));
    let (mut e, mut q) = reps::cokernel(&u);
    let mut new_maps: Vec<ModMorphism> = vec![q.compose(&ds.inclusions[1])];
    let mut comps: Vec<ModMorphism> = vec![f.clone(), q.compose(&ds.inclusions[0])];
    let mut out = reps::factor_through_source(&q, &seq.map(1).compose(&ds.projections[0]))
        .ok_or_else(|| Error::NotExact("pushout map does not descend".into()))?;
    for j in 1..d {
        let iota = approx::x_envelope(sub, &e)?;
        if !iota.is_injective() {
            return Err(Error::VerificationFailed(format!("envelope of {} is not injective", e.label())));
        }
        let last = new_maps.len() - 1;
        new_maps[last] = iota.compose(&new_maps[last]);
        comps[j] = iota.compose(&comps[j]);
        let fj = iota.target().clone();
        let ds = direct_sum(&alg, &[seq.term(j + 1).clone(), fj.clone()]);
        let u = ds.inclusions[0].compose(&out).sub(&ds.inclusions[1].compose(&iota));
        let (e2, q2) = reps::cokernel(&u);
        new_maps.push(q2.compose(&ds.inclusions[1]));
        comps.push(q2.compose(&ds.inclusions[0]));
        out = reps::factor_through_source(&q2, &seq.map(j + 1).compose(&ds.projections[0]))
            .ok_or_else(|| Error::NotExact("pushout map does not descend".into()))?;
        e = e2;
        q = q2;
    }
    let _ = q;
    new_maps.push(out);
    comps.push(ModMorphism::identity(seq.right_end()));
    let new_seq = DSequence::new(new_maps)?;
    let chain = SeqMorphism::new(seq, &new_seq, comps)?;
    Ok((new_seq, chain))
}

/// Mapping cone `A^0 -> A^1 ⊕ B^0 -> ... -> A^d ⊕ B^{d-1} -> B^d` of the
/// chain map restricted to positions `0..=d`.
pub fn mapping_cone(f: &SeqMorphism) -> Result<DSequence> {
    let (a, b) = (&f.source, &f.target);
    let d = a.d();
    let alg = a.left_end().alg();
    let sums: Vec<_> = (0..d)
        .map(|i| direct_sum(alg, &[a.term(i + 1).clone(), b.term(i).clone()]))
        .collect();
    let mut maps = vec![sums[0].inclusions[0]
        .compose(a.map(0))
        .neg()
        .add(&sums[0].inclusions[1].compose(f.component(0)))];
    for i in 0..d - 1 {
        let (s, t) = (&sums[i], &sums[i + 1]);
        let top = t.inclusions[0].compose(a.map(i + 1)).neg();
        let mid = t.inclusions[1].compose(f.component(i + 1));
        let bot = t.inclusions[1].compose(b.map(i));
        maps.push(top.add(&mid).compose(&s.projections[0]).add(&bot.compose(&s.projections[1])));
    }
    let s = &sums[d - 1];
    maps.push(f.component(d).compose(&s.projections[0]).add(&b.map(d - 1).compose(&s.projections[1])));
    DSequence::new(maps)
}

/// The defining condition of a d-pushout diagram: the tail of the mapping
/// cone is a d-cokernel of its first map against every object of `sub`.
pub fn is_d_pushout_diagram(f: &SeqMorphism, sub: &Subcat) -> Result<bool> {
    let cone = mapping_cone(f)?;
    Ok(sub.objects().iter().all(|b| is_d_cokernel_at(&cone, b)))
}

fn gate(seq: &DSequence, sub: &Subcat, what: &str) -> Result<()> {
    if !is_exact_complex(seq) {
        return Err(Error::VerificationFailed(format!("{what}: result is not exact")));
    }
    for t in seq.terms() {
        if !sub.contains(t)? {
            return Err(Error::VerificationFailed(format!("{what}: term {} is outside {}", t.label(), sub.name())));
        }
    }
    Ok(())
}

/// The d-pushout of `seq` along `f0`, almost minimal, with the chain map
/// from `seq`. Its class is `f0 · [seq]`.
pub fn d_pushout(seq: &DSequence, f0: &ModMorphism, sub: &Subcat) -> Result<(DSequence, SeqMorphism)> {
    let (raw, chain) = pushout_construction(seq, f0, sub)?;
    let m = minimize_with_maps(&raw)?;
    let chain = m.to_min.compose(&chain);
    gate(&m.seq, sub, "d-pushout")?;
    let want = homology::push_class(f0, &homology::class_of_sequence(seq)?);
    let got = homology::class_of_sequence(&m.seq)?;
    let space = ext_space(seq.right_end(), f0.target(), seq.d());
    if !space.same_class(&want, &got)? {
        return Err(Error::VerificationFailed("d-pushout changed the class".into()));
    }
    if !is_d_pushout_diagram(&chain, sub)? {
        return Err(Error::VerificationFailed("mapping cone is not a d-cokernel".into()));
    }
    Ok((m.seq, chain))
}

/// The d-pullback of `seq` along `g: B -> A^{d+1}`, with the chain map into `seq`.
pub fn d_pullback(seq: &DSequence, g: &ModMorphism, sub: &Subcat) -> Result<(DSequence, SeqMorphism)> {
    let dseq = seq.dual();
    let dg = g.dual_between(dseq.left_end(), &g.source().dual());
    let dsub = sub.dual();
    let (raw, chain) = pushout_construction(&dseq, &dg, &dsub)?;
    let back = raw.dual();
    let comps: Vec<ModMorphism> = (0..back.terms.len())
        .map(|i| {
            let n = back.terms.len() - 1 - i;
            chain.component(n).dual_between(seq.term(i), back.term(i))
        })
        .collect();
    let chain = SeqMorphism::new(&back, seq, comps)?;
    let m = minimize_with_maps(&back)?;
    let chain = chain.compose(&m.from_min);
    gate(&m.seq, sub, "d-pullback")?;
    Ok((m.seq, chain))
}

/// `0 -> K -> G_{d-1} -> ... -> G_1 -> P_0 -> a -> 0`: a projective cover of
/// `a` followed by `sub`-covers of the successive kernels.
pub fn f_presentation(a: &Representation, sub: &Subcat, d: usize) -> Result<DSequence> {
    let (_, cover) = homology::projective_cover(a);
    let mut maps = vec![cover];
    let (mut k, mut incl) = reps::kernel(&maps[0]);
    for _ in 1..d {
        let g = approx::x_cover(sub, &k)?;
        if !g.is_surjective() {
            return Err(Error::VerificationFailed(format!("cover of {} is not surjective", k.label())));
        }
        maps.insert(0, incl.compose(&g));
        let next = reps::kernel(&g);
        k = next.0;
        incl = next.1;
    }
    maps.insert(0, incl);
    DSequence::new(maps)
}

/// An almost minimal d-exact sequence with terms in `sub` and class `e`.
pub fn realize_class(e: &ExtCocycle, sub: &Subcat) -> Result<DSequence> {
    let d = e.degree;
    let (a, b) = (&e.a, &e.b);
    let space = ext_space(a, b, d);
    let target = space.coords(e)?;
    if target.iter().all(Scalar::is_zero) {
        return Ok(DSequence::split(b, a, d));
    }
    let pi = f_presentation(a, sub, d)?;
    let k = pi.left_end().clone();
    if !sub.contains(&k)? {
        return Err(Error::VerificationFailed(format!("syzygy {} is outside {}", k.label(), sub.name())));
    }
    let z = homology::class_of_sequence(&pi)?;
    let hs = hom_basis(&k, b);
    let f = a.field();
    let cols: Vec<Vec<Scalar>> = hs
        .iter()
        .map(|h| space.coords(&homology::push_class(h, &z)))
        .collect::<Result<_>>()?;
    let lambda = Matrix::from_columns(f, target.len(), &cols)
        .solve(&Matrix::column_vector(f, &target))?
        .ok_or_else(|| Error::VerificationFailed("class is not pushed from the presentation".into()))?;
    let c = ModMorphism::combination(&k, b, &hs, &lambda.column(0));
    let (raw, _) = pushout_construction(&pi, &c, sub)?;
    let out = minimize(&raw)?;
    gate(&out, sub, "realization")?;
    if !space.same_class(&homology::class_of_sequence(&out)?, e)? {
        return Err(Error::VerificationFailed("realization has the wrong class".into()));
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DefectSide {
    /// `δ*(B) = coker((B, A^d) -> (B, A^{d+1}))`
    Contravariant,
    /// `δ_*(B) = coker((A^1, B) -> (A^0, B))`
    Covariant,
}

/// Dimension of the defect of `seq` at `b`.
pub fn defect_dim(seq: &DSequence, side: DefectSide, b: &Representation) -> usize {
    let d = seq.d();
    match side {
        DefectSide::Contravariant => {
            let imgs: Vec<ModMorphism> = hom_basis(b, seq.term(d)).iter().map(|h| seq.map(d).compose(h)).collect();
            let len = reps::hom_len(b, seq.right_end());
            hom_basis(b, seq.right_end()).len() - rank_of(&imgs, len)
        }
        DefectSide::Covariant => {
            let imgs: Vec<ModMorphism> = hom_basis(seq.term(1), b).iter().map(|h| h.compose(seq.map(0))).collect();
            let len = reps::hom_len(seq.left_end(), b);
            hom_basis(seq.left_end(), b).len() - rank_of(&imgs, len)
        }
    }
}
