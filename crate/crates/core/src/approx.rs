//! Finite additive subcategories, approximations and almost split maps.
//!
//! A subcategory is `add` of a finite list of pairwise non-isomorphic
//! indecomposables. Minimal approximations are computed as projective covers
//! of the restricted Hom functors: the multiplicity of `Y` in the domain of the
//! `X`-cover of `M` is `dim Hom(Y, M) / (rad_X · Hom(-, M))(Y)`.

use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::par;
use crate::presentation::Algebra;
use crate::reps::{self, direct_sum, hom_basis, ModMorphism, Representation};

/// `rad(Y_i, Y_j)` and `rad²(Y_i, Y_j)` for all listed pairs, indexed `[i][j]`.
#[derive(Debug)]
pub struct RadTable {
    pub rad: Vec<Vec<Vec<ModMorphism>>>,
    pub rad2: Vec<Vec<Vec<ModMorphism>>>,
}

impl RadTable {
    /// `dim rad/rad²(Y_i, Y_j)`: the number of arrows `i -> j` in the AR quiver.
    pub fn irreducible_count(&self, i: usize, j: usize) -> usize {
        self.rad[i][j].len() - self.rad2[i][j].len()
    }
}

#[derive(Debug)]
pub struct Subcat {
    name: String,
    alg: Algebra,
    objects: Vec<Representation>,
    table: OnceLock<Arc<RadTable>>,
}

impl Clone for Subcat {
    fn clone(&self) -> Self {
        Subcat { name: self.name.clone(), alg: self.alg.clone(), objects: self.objects.clone(), table: OnceLock::new() }
    }
}

impl Subcat {
    /// Checks that the objects are indecomposable and pairwise non-isomorphic.
    pub fn new(name: &str, alg: &Algebra, objects: Vec<Representation>) -> Result<Self> {
        for (i, m) in objects.iter().enumerate() {
            if m.alg() != alg {
                return Err(Error::Validation(format!("{} lives over another algebra", m.label())));
            }
            if !reps::is_indecomposable(m)? {
                return Err(Error::Validation(format!("{} is not indecomposable", m.label())));
            }
            for n in &objects[..i] {
                if reps::is_isomorphic(m, n)? {
                    return Err(Error::Validation(format!("{} and {} are isomorphic", n.label(), m.label())));
                }
            }
        }
        Ok(Subcat { name: name.to_string(), alg: alg.clone(), objects, table: OnceLock::new() })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn alg(&self) -> &Algebra {
        &self.alg
    }

    pub fn objects(&self) -> &[Representation] {
        &self.objects
    }

    pub fn object(&self, i: usize) -> &Representation {
        &self.objects[i]
    }

    pub fn len(&self) -> usize {
        self.objects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.objects.is_empty()
    }

    /// Index of the listed object with this label.
    pub fn by_label(&self, label: &str) -> Option<usize> {
        self.objects.iter().position(|m| m.label() == label)
    }

    /// The subcategory with the listed objects at `drop` removed.
    pub fn without(&self, name: &str, drop: &[usize]) -> Subcat {
        let objects = self
            .objects
            .iter()
            .enumerate()
            .filter(|(i, _)| !drop.contains(i))
            .map(|(_, m)| m.clone())
            .collect();
        Subcat { name: name.to_string(), alg: self.alg.clone(), objects, table: OnceLock::new() }
    }

    /// Sub-list of objects by index.
    pub fn restrict(&self, name: &str, keep: &[usize]) -> Subcat {
        let objects = keep.iter().map(|&i| self.objects[i].clone()).collect();
        Subcat { name: name.to_string(), alg: self.alg.clone(), objects, table: OnceLock::new() }
    }

    /// The dual objects, a subcategory over the opposite algebra.
    pub fn dual(&self) -> Subcat {
        let objects = self.objects.iter().map(|m| m.dual().with_name(&m.label())).collect();
        Subcat { name: format!("D{}", self.name), alg: self.alg.opposite(), objects, table: OnceLock::new() }
    }

    /// Listed object isomorphic to the indecomposable `m`.
    pub fn find(&self, m: &Representation) -> Result<Option<usize>> {
        for (i, x) in self.objects.iter().enumerate() {
            if x.dims() == m.dims() && reps::is_isomorphic(x, m)? {
                return Ok(Some(i));
            }
        }
        Ok(None)
    }

    /// Object indices of the indecomposable summands of `m` (with repetition),
    /// or `None` if some summand is not listed.
    pub fn summands(&self, m: &Representation) -> Result<Option<Vec<usize>>> {
        let mut out = Vec::new();
        for (s, mult) in reps::decompose(m)? {
            match self.find(&s)? {
                Some(i) => out.extend(std::iter::repeat_n(i, mult)),
                None => return Ok(None),
            }
        }
        out.sort_unstable();
        Ok(Some(out))
    }

    /// Whether `m` lies in `add` of the list.
    pub fn contains(&self, m: &Representation) -> Result<bool> {
        Ok(self.summands(m)?.is_some())
    }

    /// Summands of `m` by name, e.g. `6/2 ⊕ 9/6,10/2,8/5`; unlisted summands
    /// are shown by their radical-series label.
    pub fn describe(&self, m: &Representation) -> Result<String> {
        if m.is_zero() {
            return Ok("0".into());
        }
        let mut parts: Vec<(usize, String)> = Vec::new();
        for (s, mult) in reps::decompose(m)? {
            let (key, name) = match self.find(&s)? {
                Some(i) => (i, self.objects[i].label()),
                None => (usize::MAX, s.label()),
            };
            for _ in 0..mult {
                parts.push((key, name.clone()));
            }
        }
        parts.sort();
        Ok(parts.into_iter().map(|(_, n)| n).collect::<Vec<_>>().join(" ⊕ "))
    }

    /// The radical table, computed once.
    pub fn rad_table(&self) -> Result<Arc<RadTable>> {
        if let Some(t) = self.table.get() {
            return Ok(t.clone());
        }
        let n = self.objects.len();
        let rad: Vec<Result<Vec<ModMorphism>>> = par::map_range(n * n, |k| {
            let (i, j) = (k / n, k % n);
            if i == j {
                Ok(reps::local_end(&self.objects[i])?.radical_basis())
            } else {
                Ok(hom_basis(&self.objects[i], &self.objects[j]))
            }
        });
        let rad: Vec<Vec<ModMorphism>> = rad.into_iter().collect::<Result<_>>()?;
        let rad: Vec<Vec<Vec<ModMorphism>>> = rad.chunks(n.max(1)).map(|c| c.to_vec()).collect();
        let rad2 = par::map_range(n * n, |k| {
            let (i, j) = (k / n, k % n);
            let mut prods = Vec::new();
            for z in 0..n {
                for f in &rad[i][z] {
                    for g in &rad[z][j] {
                        prods.push(g.compose(f));
                    }
                }
            }
            span_basis(&self.objects[i], &self.objects[j], &prods)
        });
        let rad2 = rad2.chunks(n.max(1)).map(|c| c.to_vec()).collect();
        let t = Arc::new(RadTable { rad, rad2 });
        Ok(self.table.get_or_init(|| t).clone())
    }
}

/// A basis of the span of `maps`, chosen among them.
pub fn span_basis(m: &Representation, n: &Representation, maps: &[ModMorphism]) -> Vec<ModMorphism> {
    if maps.is_empty() {
        return Vec::new();
    }
    let len = reps::hom_len(m, n);
    let mat = reps::flat_matrix(m.field(), len, maps);
    let (_, pivots, _) = mat.rref();
    pivots.iter().map(|&p| maps[p].clone()).collect()
}

/// Elements of `space` whose classes form a basis of `span(space) / span(sub)`.
fn complement(m: &Representation, n: &Representation, space: &[ModMorphism], sub: &[ModMorphism]) -> Vec<ModMorphism> {
    if space.is_empty() {
        return Vec::new();
    }
    let f = m.field();
    let len = reps::hom_len(m, n);
    let s = reps::flat_matrix(f, len, sub);
    let both = Matrix::hstack(f, len, &[&s, &reps::flat_matrix(f, len, space)]);
    let (_, pivots, _) = both.rref();
    pivots.iter().filter(|&&p| p >= sub.len()).map(|&p| space[p - sub.len()].clone()).collect()
}

fn sum_name(parts: &[Representation]) -> String {
    if parts.is_empty() {
        return "0".into();
    }
    parts.iter().map(Representation::label).collect::<Vec<_>>().join(" ⊕ ")
}

/// `⊕ Y_k -> m` with components `picks[k]`.
pub fn assemble_right(alg: &Algebra, target: &Representation, picks: &[ModMorphism]) -> ModMorphism {
    let parts: Vec<Representation> = picks.iter().map(|g| g.source().clone()).collect();
    let ds = direct_sum(alg, &parts);
    let dom = ds.module.with_name(&sum_name(&parts));
    let mut total = ModMorphism::zero(&dom, target);
    for (g, p) in picks.iter().zip(&ds.projections) {
        total = total.add(&g.compose(&p.retarget(&dom, p.target())));
    }
    total
}

/// `m -> ⊕ Y_k` with components `picks[k]`.
pub fn assemble_left(alg: &Algebra, source: &Representation, picks: &[ModMorphism]) -> ModMorphism {
    let parts: Vec<Representation> = picks.iter().map(|g| g.target().clone()).collect();
    let ds = direct_sum(alg, &parts);
    let cod = ds.module.with_name(&sum_name(&parts));
    let mut total = ModMorphism::zero(source, &cod);
    for (g, i) in picks.iter().zip(&ds.inclusions) {
        total = total.add(&i.retarget(i.source(), &cod).compose(g));
    }
    total
}

/// Minimal right `sub`-approximation of `m`.
pub fn x_cover(sub: &Subcat, m: &Representation) -> Result<ModMorphism> {
    let t = sub.rad_table()?;
    let n = sub.len();
    let homs: Vec<Vec<ModMorphism>> = par::map(sub.objects(), |y| hom_basis(y, m));
    let picks: Vec<Vec<ModMorphism>> = par::map_range(n, |i| {
        let mut r = Vec::new();
        for j in 0..n {
            for h in &homs[j] {
                for x in &t.rad[i][j] {
                    r.push(h.compose(x));
                }
            }
        }
        complement(sub.object(i), m, &homs[i], &r)
    });
    Ok(assemble_right(sub.alg(), m, &picks.concat()))
}

/// Minimal left `sub`-approximation of `m`.
pub fn x_envelope(sub: &Subcat, m: &Representation) -> Result<ModMorphism> {
    let t = sub.rad_table()?;
    let n = sub.len();
    let homs: Vec<Vec<ModMorphism>> = par::map(sub.objects(), |y| hom_basis(m, y));
    let picks: Vec<Vec<ModMorphism>> = par::map_range(n, |i| {
        let mut r = Vec::new();
        for j in 0..n {
            for h in &homs[j] {
                for x in &t.rad[j][i] {
                    r.push(x.compose(h));
                }
            }
        }
        complement(m, sub.object(i), &homs[i], &r)
    });
    Ok(assemble_left(sub.alg(), m, &picks.concat()))
}

/// Minimal right almost split map in `sub` ending at object `x`; the zero
/// map from the zero module when nothing maps radically into `x`.
pub fn min_right_almost_split(sub: &Subcat, x: usize) -> Result<ModMorphism> {
    let t = sub.rad_table()?;
    let target = sub.object(x);
    let picks: Vec<ModMorphism> = (0..sub.len())
        .flat_map(|i| complement(sub.object(i), target, &t.rad[i][x], &t.rad2[i][x]))
        .collect();
    let g = assemble_right(sub.alg(), target, &picks);
    if !is_right_almost_split(sub, x, &g)? {
        return Err(Error::VerificationFailed(format!("sink map of {} is not right almost split", target.label())));
    }
    Ok(g)
}

/// Minimal left almost split map in `sub` starting at object `x`.
pub fn min_left_almost_split(sub: &Subcat, x: usize) -> Result<ModMorphism> {
    let t = sub.rad_table()?;
    let source = sub.object(x);
    let picks: Vec<ModMorphism> = (0..sub.len())
        .flat_map(|i| complement(source, sub.object(i), &t.rad[x][i], &t.rad2[x][i]))
        .collect();
    let g = assemble_left(sub.alg(), source, &picks);
    if !is_left_almost_split(sub, x, &g)? {
        return Err(Error::VerificationFailed(format!("source map of {} is not left almost split", source.label())));
    }
    Ok(g)
}

/// Every map from a listed object into `g.target()` factors through `g`.
pub fn is_precover(sub: &Subcat, g: &ModMorphism) -> bool {
    sub.objects().iter().all(|y| factors_all(&hom_basis(y, g.target()), g))
}

pub fn is_preenvelope(sub: &Subcat, g: &ModMorphism) -> bool {
    sub.objects().iter().all(|y| {
        hom_basis(g.source(), y).iter().all(|h| reps::factor_through_source(g, h).is_some())
    })
}

fn factors_all(maps: &[ModMorphism], g: &ModMorphism) -> bool {
    maps.iter().all(|h| reps::factor_through_target(g, h).is_some())
}

/// `g` is right minimal: `{n ∈ End(W) : g n = 0}` lies in the radical.
pub fn is_right_minimal(g: &ModMorphism) -> Result<bool> {
    let w = g.source();
    for n in null_endos(w, |e| g.compose(e)) {
        if !reps::in_radical(&n)? {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn is_left_minimal(g: &ModMorphism) -> Result<bool> {
    let w = g.target();
    for n in null_endos(w, |e| e.compose(g)) {
        if !reps::in_radical(&n)? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn null_endos(w: &Representation, apply: impl Fn(&ModMorphism) -> ModMorphism) -> Vec<ModMorphism> {
    let ends = hom_basis(w, w);
    if ends.is_empty() {
        return ends;
    }
    let f = w.field();
    let imgs: Vec<ModMorphism> = ends.iter().map(&apply).collect();
    let len = imgs[0].flat().len();
    let m = reps::flat_matrix(f, len, &imgs);
    let k = m.kernel_basis();
    (0..k.cols()).map(|j| ModMorphism::combination(w, w, &ends, &k.column(j))).collect()
}

/// `g: W -> x` is not split epi and every radical map from a listed object
/// into `x` factors through it.
pub fn is_right_almost_split(sub: &Subcat, x: usize, g: &ModMorphism) -> Result<bool> {
    if is_split_epi(g) {
        return Ok(false);
    }
    let t = sub.rad_table()?;
    Ok((0..sub.len()).all(|i| factors_all(&t.rad[i][x], g)))
}

pub fn is_left_almost_split(sub: &Subcat, x: usize, g: &ModMorphism) -> Result<bool> {
    if is_split_mono(g) {
        return Ok(false);
    }
    let t = sub.rad_table()?;
    Ok((0..sub.len()).all(|i| t.rad[x][i].iter().all(|h| reps::factor_through_source(g, h).is_some())))
}

pub fn is_split_epi(g: &ModMorphism) -> bool {
    g.is_surjective() && reps::factor_through_target(g, &ModMorphism::identity(g.target())).is_some()
}

pub fn is_split_mono(g: &ModMorphism) -> bool {
    g.is_injective() && reps::factor_through_source(g, &ModMorphism::identity(g.source())).is_some()
}

/// `0 -> K -> F_{k-1} -> ... -> F_0 -> m -> 0` by iterated covers of kernels.
/// Entry 0 is the cover `F_0 -> m`; the last entry is the inclusion of the
/// final kernel, omitted when that kernel is zero.
pub fn f_resolution(sub: &Subcat, m: &Representation, d: usize) -> Result<Vec<ModMorphism>> {
    let mut maps: Vec<ModMorphism> = Vec::new();
    let mut cur = m.clone();
    for _ in 0..d.max(1) {
        let g = x_cover(sub, &cur)?;
        if !g.is_surjective() {
            return Err(Error::VerificationFailed(format!("cover of {} is not surjective", cur.label())));
        }
        let (k, incl) = reps::kernel(&g);
        maps.push(g);
        if k.is_zero() {
            return Ok(maps);
        }
        if sub.contains(&k)? {
            maps.push(incl);
            return Ok(maps);
        }
        cur = k;
    }
    Err(Error::VerificationFailed(format!("no finite resolution of {} within {} steps", m.label(), d)))
}

/// Dual of [`f_resolution`]: iterated envelopes of cokernels.
pub fn f_coresolution(sub: &Subcat, m: &Representation, d: usize) -> Result<Vec<ModMorphism>> {
    let mut maps = Vec::new();
    let mut cur = m.clone();
    for _ in 0..d.max(1) {
        let g = x_envelope(sub, &cur)?;
        if !g.is_injective() {
            return Err(Error::VerificationFailed(format!("envelope of {} is not injective", cur.label())));
        }
        let (c, proj) = reps::cokernel(&g);
        maps.push(g);
        if c.is_zero() {
            return Ok(maps);
        }
        if sub.contains(&c)? {
            maps.push(proj);
            return Ok(maps);
        }
        cur = c;
    }
    Err(Error::VerificationFailed(format!("no finite coresolution of {} within {} steps", m.label(), d)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;
    use crate::fixtures::linear_a;
    use crate::presentation::{injective_at, projective_at};

    fn a2_all() -> Subcat {
        let alg = linear_a(FieldSpec::Prime(101), 2, 2).unwrap();
        let objs = vec![projective_at(&alg, 0), projective_at(&alg, 1), injective_at(&alg, 0)];
        Subcat::new("mod", &alg, objs).unwrap()
    }

    #[test]
    fn a2_sink_maps() {
        let s = a2_all();
        let g = min_right_almost_split(&s, 2).unwrap();
        assert_eq!(g.source().dims(), &[1, 1]);
        assert!(g.is_surjective());
        let g = min_right_almost_split(&s, 1).unwrap();
        assert!(g.source().is_zero());
        let g = min_right_almost_split(&s, 0).unwrap();
        assert_eq!(g.source().dims(), &[0, 1]);
        let t = s.rad_table().unwrap();
        assert_eq!(t.irreducible_count(1, 0), 1);
        assert_eq!(t.irreducible_count(0, 2), 1);
        assert_eq!(t.irreducible_count(1, 2), 0);
    }

    #[test]
    fn covers_and_envelopes() {
        let s = a2_all();
        let alg = s.alg().clone();
        let proj = s.restrict("proj", &[0, 1]);
        let s1 = injective_at(&alg, 0);
        let c = x_cover(&proj, &s1).unwrap();
        assert_eq!(c.source().dims(), &[1, 1]);
        assert!(is_precover(&proj, &c));
        assert!(is_right_minimal(&c).unwrap());
        let e = x_envelope(&proj, &s1).unwrap();
        assert!(e.target().is_zero());
        assert!(is_preenvelope(&proj, &e));
        let p1 = projective_at(&alg, 0);
        let c = x_cover(&s, &p1).unwrap();
        assert!(c.is_iso());
    }

    #[test]
    fn describe_sums() {
        let s = a2_all();
        let ds = direct_sum(s.alg(), &[s.object(2).clone(), s.object(0).clone(), s.object(2).clone()]);
        assert_eq!(s.describe(&ds.module).unwrap(), "1/2 ⊕ 1 ⊕ 1");
        assert_eq!(s.summands(&ds.module).unwrap(), Some(vec![0, 2, 2]));
    }
}
