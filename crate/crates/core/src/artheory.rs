//! d-cluster tilting subcategories, d-Auslander–Reiten sequences in `F` and
//! in a subcategory `X ⊆ F`, the left end `σX`, and executable checks of the
//! main structural results.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::approx::{self, Subcat};
use crate::dexact::{self, DSequence, DefectSide};
use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::homology::{self, dtr_d, ext_dim, ext_space, ExtCocycle};
use crate::linalg::Matrix;
use crate::par;
use crate::presentation::{injective_at, projective_at, Algebra};
use crate::reps::{self, hom_basis, ModMorphism, Representation};

#[derive(Clone, Debug, Default)]
pub struct CtCertificate {
    pub d: usize,
    pub orthogonal: bool,
    pub projectives: bool,
    pub injectives: bool,
    pub tau_closed: bool,
    /// Number of caller-supplied unlisted candidates tested for maximality.
    pub candidates_checked: usize,
    pub failures: Vec<String>,
}

impl CtCertificate {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Clone, Debug)]
pub struct CtCategory {
    pub sub: Subcat,
    pub d: usize,
    pub cert: CtCertificate,
}

/// Checks Ext-orthogonality in degrees `1..d`, presence of all
/// indecomposable projectives and injectives, closure under `D Tr_d`, and
/// that no extra candidate is orthogonal on both sides.
pub fn certify_d_cluster_tilting(sub: &Subcat, d: usize, candidates: &[Representation]) -> Result<CtCertificate> {
    let alg = sub.alg();
    let n = sub.len();
    let mut cert = CtCertificate { d, orthogonal: true, projectives: true, injectives: true, tau_closed: true, ..Default::default() };
    let bad_pairs: Vec<Option<String>> = par::map_range(n * n, |k| {
        let (i, j) = (k / n, k % n);
        (1..d)
            .find(|&e| ext_dim(sub.object(i), sub.object(j), e) != 0)
            .map(|e| format!("Ext^{e}({}, {}) is nonzero", sub.object(i).label(), sub.object(j).label()))
    });
    for msg in bad_pairs.into_iter().flatten() {
        cert.orthogonal = false;
        cert.failures.push(msg);
    }
    for v in 0..alg.num_vertices() {
        let p = projective_at(alg, v);
        if sub.find(&p)?.is_none() {
            cert.projectives = false;
            cert.failures.push(format!("projective {} is missing", p.label()));
        }
        let i = injective_at(alg, v);
        if sub.find(&i)?.is_none() {
            cert.injectives = false;
            cert.failures.push(format!("injective {} is missing", i.label()));
        }
    }
    for m in sub.objects() {
        let t = dtr_d(m, d);
        if !t.is_zero() && sub.find(&t)?.is_none() {
            cert.tau_closed = false;
            cert.failures.push(format!("D Tr_{d}({}) = {} is missing", m.label(), t.label()));
        }
    }
    for c in candidates {
        if sub.find(c)?.is_some() {
            continue;
        }
        cert.candidates_checked += 1;
        let left = sub.objects().iter().all(|f| (1..d).all(|e| ext_dim(f, c, e) == 0));
        let right = sub.objects().iter().all(|f| (1..d).all(|e| ext_dim(c, f, e) == 0));
        if left || right {
            cert.failures.push(format!("{} is orthogonal to the list but not in it", c.label()));
        }
    }
    Ok(cert)
}

pub fn verify_d_cluster_tilting(sub: &Subcat, d: usize, candidates: &[Representation]) -> Result<CtCategory> {
    let cert = certify_d_cluster_tilting(sub, d, candidates)?;
    if let Some(f) = cert.failures.first() {
        return Err(Error::NotClusterTilting(f.clone()));
    }
    Ok(CtCategory { sub: sub.clone(), d, cert })
}

/// `add{(D Tr_d)^j(I)}` over the indecomposable injectives `I`, each object
/// named by its radical-series label.
pub fn generate_ct_from_injectives(alg: &Algebra, d: usize, bound: usize) -> Result<Subcat> {
    let mut found: Vec<Representation> = Vec::new();
    for v in 0..alg.num_vertices() {
        let mut queue = vec![injective_at(alg, v)];
        while let Some(m) = queue.pop() {
            if m.is_zero() || found.iter().any(|f| f.dims() == m.dims() && reps::is_isomorphic(f, &m).unwrap_or(false)) {
                continue;
            }
            if found.len() == bound {
                return Err(Error::BoundExceeded(format!("more than {bound} indecomposables in the D Tr_{d} orbits")));
            }
            let next = dtr_d(&m, d);
            found.push(m.with_name(&m.radical_label()));
            if !next.is_zero() {
                let parts = reps::decompose(&next)?;
                queue.extend(parts.into_iter().rev().map(|(s, _)| s));
            }
        }
    }
    Subcat::new("F", alg, found)
}

/// A d-exact sequence with its almost split certificates.
#[derive(Clone, Debug)]
pub struct DarSequence {
    pub seq: DSequence,
    pub ambient: String,
    pub exact: bool,
    pub terms_in_ambient: bool,
    pub interior_rad: bool,
    pub left_almost_split: bool,
    pub right_almost_split: bool,
}

impl DarSequence {
    pub fn certified(&self) -> bool {
        self.exact && self.terms_in_ambient && self.interior_rad && self.left_almost_split && self.right_almost_split
    }
}

/// Brute-force certification against the listed indecomposables of `sub`.
pub fn certify_dar(sub: &Subcat, seq: &DSequence) -> Result<DarSequence> {
    let exact = dexact::is_exact_complex(seq);
    let mut terms_in_ambient = true;
    for t in seq.terms() {
        terms_in_ambient &= sub.contains(t)?;
    }
    let interior_rad = dexact::is_almost_minimal(seq)?;
    let left_almost_split = match listed_iso(sub, seq.left_end())? {
        Some((i, phi)) => approx::is_left_almost_split(sub, i, &seq.map(0).compose(&phi))?,
        None => false,
    };
    let right_almost_split = match listed_iso(sub, seq.right_end())? {
        Some((j, phi)) => {
            let back = phi.inverse().expect("isomorphism");
            approx::is_right_almost_split(sub, j, &back.compose(seq.map(seq.d())))?
        }
        None => false,
    };
    Ok(DarSequence {
        seq: seq.clone(),
        ambient: sub.name().to_string(),
        exact,
        terms_in_ambient,
        interior_rad,
        left_almost_split,
        right_almost_split,
    })
}

/// Index of the listed object isomorphic to the indecomposable `m`, with an
/// isomorphism from it onto `m`.
fn listed_iso(sub: &Subcat, m: &Representation) -> Result<Option<(usize, ModMorphism)>> {
    if m.is_zero() || !reps::is_indecomposable(m)? {
        return Ok(None);
    }
    match sub.find(m)? {
        Some(i) => Ok(reps::isomorphism(sub.object(i), m)?.map(|phi| (i, phi))),
        None => Ok(None),
    }
}

fn require_certified(dar: DarSequence, what: &str) -> Result<DarSequence> {
    if dar.certified() {
        Ok(dar)
    } else {
        Err(Error::VerificationFailed(format!("{what} failed certification: {dar:?}")))
    }
}

/// The d-AR sequence in `F` ending at object `x`: the sink map followed by
/// `F`-covers of the successive kernels.
pub fn d_ar_sequence_in_f(ct: &CtCategory, x: usize) -> Result<DarSequence> {
    let (sub, d) = (&ct.sub, ct.d);
    let target = sub.object(x);
    if homology::is_projective(target) {
        return Err(Error::NoSuchSequence(format!("{} is projective", target.label())));
    }
    let g = approx::min_right_almost_split(sub, x)?;
    let mut maps = vec![g];
    let (mut k, mut incl) = reps::kernel(&maps[0]);
    for _ in 1..d {
        let c = approx::x_cover(sub, &k)?;
        maps.insert(0, incl.compose(&c));
        let next = reps::kernel(&c);
        k = next.0;
        incl = next.1;
    }
    maps.insert(0, incl);
    let seq = DSequence::new(maps)?;
    let dar = require_certified(certify_dar(sub, &seq)?, "d-AR sequence in F")?;
    if !reps::is_isomorphic(seq.left_end(), &dtr_d(target, d))? {
        return Err(Error::VerificationFailed(format!("left end is not D Tr_{d}({})", target.label())));
    }
    Ok(dar)
}

/// Whether `Ext^d(x, X_i)` is nonzero for some listed `X_i`.
pub fn has_ext_into(xsub: &Subcat, x: &Representation, d: usize) -> bool {
    xsub.objects().iter().any(|z| ext_dim(x, z, d) != 0)
}

#[derive(Clone, Debug)]
pub struct Sigma {
    /// Index of `σx` in the subcategory.
    pub index: usize,
    pub module: Representation,
    /// The `X`-cover `Y -> D Tr_d(x)`.
    pub cover: ModMorphism,
}

/// `σx`: the unique summand `Z` of the `X`-cover domain of `D Tr_d(x)` with
/// `Ext^d(x, Z) != 0`, or `None` when `Ext^d(x, X) = 0`.
pub fn sigma(xsub: &Subcat, x: usize, d: usize) -> Result<Option<Sigma>> {
    let m = xsub.object(x);
    if !has_ext_into(xsub, m, d) {
        return Ok(None);
    }
    let t = dtr_d(m, d);
    let cover = approx::x_cover(xsub, &t)?;
    let dec = reps::decompose_full(cover.source())?;
    let hits: Vec<&reps::Summand> = dec.summands.iter().filter(|s| ext_dim(m, &s.module, d) != 0).collect();
    if hits.len() != 1 {
        return Err(Error::VerificationFailed(format!(
            "{} summands of the cover of D Tr_{d}({}) have nonzero Ext^{d}",
            hits.len(),
            m.label()
        )));
    }
    let index = xsub
        .find(&hits[0].module)?
        .ok_or_else(|| Error::VerificationFailed("cover summand is not listed".into()))?;
    Ok(Some(Sigma { index, module: xsub.object(index).clone(), cover }))
}

/// The socle of `Ext^d(x, z)` as a right `End(x)`-module, as a basis.
pub fn ext_socle(x: &Representation, z: &Representation, d: usize) -> Result<Vec<ExtCocycle>> {
    let space = ext_space(x, z, d);
    let basis = space.basis();
    if basis.is_empty() {
        return Ok(basis);
    }
    let rad = reps::local_end(x)?.radical_basis();
    if rad.is_empty() {
        return Ok(basis);
    }
    let f = x.field();
    let cols: Vec<Vec<Scalar>> = basis
        .iter()
        .map(|b| {
            let mut col = Vec::new();
            for r in &rad {
                col.extend(space.coords(&homology::pull_class(b, r)?)?);
            }
            Ok(col)
        })
        .collect::<Result<_>>()?;
    let k = Matrix::from_columns(f, cols[0].len(), &cols).kernel_basis();
    Ok((0..k.cols()).map(|j| space.from_coords(&k.column(j))).collect())
}

/// The d-AR sequence in `X` ending at object `x`, realized from a socle
/// element of `Ext^d(x, σx)`.
pub fn d_ar_sequence_in_x(ct: &CtCategory, xsub: &Subcat, x: usize) -> Result<DarSequence> {
    let d = ct.d;
    let m = xsub.object(x);
    let s = sigma(xsub, x, d)?
        .ok_or_else(|| Error::NoSuchSequence(format!("Ext^{d}({}, {}) = 0", m.label(), xsub.name())))?;
    let socle = ext_socle(m, &s.module, d)?;
    let e = socle
        .first()
        .ok_or_else(|| Error::VerificationFailed("socle is zero".into()))?;
    let seq = dexact::realize_class(e, &ct.sub)?;
    require_certified(certify_dar(xsub, &seq)?, "d-AR sequence in X")
}

#[derive(Clone, Debug)]
pub struct RightAlmostSplit {
    pub map: ModMorphism,
    /// No radical map from a listed object reaches `x`; the map is `0 -> x`.
    pub degenerate: bool,
}

pub fn right_almost_split_in_x(xsub: &Subcat, x: usize) -> Result<RightAlmostSplit> {
    let map = approx::min_right_almost_split(xsub, x)?;
    let degenerate = map.source().is_zero();
    Ok(RightAlmostSplit { map, degenerate })
}

/// `dim δ*(x)`, `dim δ_*(Y)` and `dim δ_*(D Tr_d x)` for a sequence ending
/// at `x`, where `Y -> D Tr_d x` is the `X`-cover.
pub fn defect_chain(xsub: &Subcat, seq: &DSequence) -> Result<(usize, usize, usize)> {
    let d = seq.d();
    let x = seq.right_end();
    let t = dtr_d(x, d);
    let y = approx::x_cover(xsub, &t)?;
    Ok((
        dexact::defect_dim(seq, DefectSide::Contravariant, x),
        dexact::defect_dim(seq, DefectSide::Covariant, y.source()),
        dexact::defect_dim(seq, DefectSide::Covariant, &t),
    ))
}

#[derive(Clone, Debug, Default)]
pub struct TheoremReport {
    pub instances: usize,
    pub violations: Vec<String>,
}

impl TheoremReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

fn random_scalar(f: FieldSpec, rng: &mut ChaCha8Rng, nonzero: bool) -> Scalar {
    loop {
        let s = f.from_i64(rng.gen_range(-40..=40));
        if !nonzero || !s.is_zero() {
            return s;
        }
    }
}

/// `im(x, ξ^d)` equals `rad End(x)`.
fn image_is_radical(seq: &DSequence) -> Result<bool> {
    let x = seq.right_end();
    let f = x.field();
    let len = reps::hom_len(x, x);
    let im: Vec<ModMorphism> = hom_basis(x, seq.term(seq.d())).iter().map(|h| seq.map(seq.d()).compose(h)).collect();
    let rad = reps::end_radical(x)?;
    let span = |v: &[ModMorphism]| if v.is_empty() { 0 } else { reps::flat_matrix(f, len, v).rank() };
    let both: Vec<ModMorphism> = im.iter().chain(&rad).cloned().collect();
    let (a, b, c) = (span(&im), span(&rad), span(&both));
    Ok(a == b && b == c)
}

/// Realizes classes of `Ext^d(x, σx)` (zero, every basis vector, nonzero
/// multiples and random combinations) and checks that a sequence is d-AR in
/// `X` exactly when it does not split, together with the equivalent
/// conditions on `ξ^d` and `δ*(x)`.
pub fn check_theorem_division_ring(ct: &CtCategory, xsub: &Subcat, x: usize, trials: usize, seed: u64) -> Result<TheoremReport> {
    let d = ct.d;
    let m = xsub.object(x);
    let mut report = TheoremReport::default();
    if !homology::stable_end(m)?.is_division_ring {
        report.violations.push(format!("stable End({}) is not a division ring", m.label()));
        return Ok(report);
    }
    let Some(s) = sigma(xsub, x, d)? else {
        return Ok(report);
    };
    let space = ext_space(m, &s.module, d);
    let f = m.field();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut classes = vec![ExtCocycle::zero(m, &s.module, d)];
    for b in space.basis() {
        classes.push(b.scale(&random_scalar(f, &mut rng, true)));
        classes.push(b);
    }
    for _ in 0..trials {
        let c: Vec<Scalar> = (0..space.dim()).map(|_| random_scalar(f, &mut rng, false)).collect();
        classes.push(space.from_coords(&c));
    }
    for e in classes {
        report.instances += 1;
        let seq = dexact::realize_class(&e, &ct.sub)?;
        let split = dexact::is_split(&seq).is_some();
        let zero = space.is_zero_class(&e)?;
        let dar = certify_dar(xsub, &seq)?;
        let tag = format!("{:?}", space.coords(&e)?);
        if split != zero {
            report.violations.push(format!("class {tag}: split={split} but zero={zero}"));
        }
        if split == dar.certified() {
            report.violations.push(format!("class {tag}: split={split} and d-AR={}", dar.certified()));
        }
        if !split {
            let b = dar.right_almost_split;
            let c = image_is_radical(&seq)?;
            let dd = dexact::defect_dim(&seq, DefectSide::Contravariant, m) == 1;
            if !(dar.certified() == b && b == c && c == dd) {
                report
                    .violations
                    .push(format!("class {tag}: conditions disagree a={} b={b} c={c} d={dd}", dar.certified()));
            }
        }
    }
    Ok(report)
}

/// Builds `ε = ζ ⊕ (Y' = Y')` with `ζ` the d-AR sequence in `X` ending at
/// `x` and `Y = σx ⊕ Y'` the `X`-cover domain of `D Tr_d x`, pushes it out
/// along the cover, and compares with the d-AR sequence in `F`.
pub fn check_corollary_pushout(ct: &CtCategory, xsub: &Subcat, x: usize) -> Result<(TheoremReport, DSequence)> {
    let d = ct.d;
    let m = xsub.object(x);
    let mut report = TheoremReport { instances: 1, ..Default::default() };
    let s = sigma(xsub, x, d)?.ok_or_else(|| Error::NoSuchSequence(format!("Ext^{d}({}, X) = 0", m.label())))?;
    let zeta = d_ar_sequence_in_x(ct, xsub, x)?.seq;
    let y = s.cover.source().clone();
    let dec = reps::decompose_full(&y)?;
    let hit = dec
        .summands
        .iter()
        .position(|t| ext_dim(m, &t.module, d) != 0)
        .ok_or_else(|| Error::VerificationFailed("σ summand vanished".into()))?;
    let rest: Vec<Representation> = dec
        .summands
        .iter()
        .enumerate()
        .filter(|(k, _)| *k != hit)
        .map(|(_, t)| t.module.clone())
        .collect();
    let alg = m.alg();
    let yp = reps::direct_sum(alg, &rest);
    let mut y_incl = ModMorphism::zero(&yp.module, &y);
    for (k, t) in dec.summands.iter().enumerate().filter(|(k, _)| *k != hit).map(|(_, t)| t).enumerate() {
        y_incl = y_incl.add(&t.inclusion.compose(&yp.projections[k]));
    }
    let zero = Representation::zero(alg);
    let mut triv = vec![ModMorphism::identity(&yp.module), ModMorphism::zero(&yp.module, &zero)];
    while triv.len() < d + 1 {
        triv.push(ModMorphism::zero(&zero, &zero));
    }
    let triv = DSequence::new(triv)?;
    let eps = triv.direct_sum(&zeta)?;
    let left = reps::direct_sum(alg, &[yp.module.clone(), zeta.left_end().clone()]);
    let phi = reps::isomorphism(zeta.left_end(), &dec.summands[hit].module)?
        .ok_or_else(|| Error::VerificationFailed("σ is not a summand of the cover".into()))?;
    let to_y = y_incl
        .compose(&left.projections[0])
        .add(&dec.summands[hit].inclusion.compose(&phi).compose(&left.projections[1]));
    let g = s.cover.compose(&to_y).retarget(eps.left_end(), s.cover.target());
    if dexact::is_split(&eps).is_some() {
        report.violations.push("ε splits".into());
    }
    if !approx::is_right_almost_split(xsub, x, &eps.map(d).retarget(eps.term(d), m))? {
        report.violations.push("ε's last map is not right almost split in X".into());
    }
    let (delta, _) = dexact::d_pushout(&eps, &g, &ct.sub)?;
    let dar = certify_dar(&ct.sub, &delta)?;
    if !dar.certified() {
        report.violations.push(format!("pushout is not d-AR in F: {dar:?}"));
    }
    if let Some(fi) = ct.sub.find(m)? {
        let expected = d_ar_sequence_in_f(ct, fi)?;
        if term_signature(&ct.sub, &expected.seq)? != term_signature(&ct.sub, &delta)? {
            report.violations.push("pushout differs from the d-AR sequence in F".into());
        }
    }
    Ok((report, delta))
}

#[derive(Clone, Debug)]
pub struct ClosureViolation {
    pub from: String,
    pub to: String,
    pub coords: Vec<Scalar>,
    pub sequence: String,
}

#[derive(Clone, Debug, Default)]
pub struct ClosureReport {
    pub pairs: usize,
    pub classes: usize,
    /// Every class was tested (finite field, below the enumeration cap).
    pub complete: bool,
    pub violations: Vec<ClosureViolation>,
}

impl ClosureReport {
    pub fn closed(&self) -> bool {
        self.violations.is_empty()
    }
}

#[derive(Clone, Copy, Debug)]
pub struct ClosureOptions {
    pub enumeration_cap: usize,
    pub samples: usize,
    pub seed: u64,
}

impl Default for ClosureOptions {
    fn default() -> Self {
        ClosureOptions { enumeration_cap: 10_000, samples: 8, seed: 0x5eed }
    }
}

/// Representatives of the lines of `F_p^n`: first nonzero coordinate 1.
fn projective_points(f: FieldSpec, p: u64, n: usize) -> Vec<Vec<Scalar>> {
    let mut out = Vec::new();
    for lead in 0..n {
        let free = n - lead - 1;
        let count = p.pow(free as u32);
        for mut k in 0..count {
            let mut v = vec![f.zero(); n];
            v[lead] = f.one();
            for slot in v.iter_mut().skip(lead + 1) {
                *slot = f.from_i64((k % p) as i64);
                k /= p;
            }
            out.push(v);
        }
    }
    out
}

fn line_count(p: u64, n: usize) -> Option<u64> {
    let mut total: u64 = 0;
    let mut pw: u64 = 1;
    for _ in 0..n {
        total = total.checked_add(pw)?;
        pw = pw.checked_mul(p)?;
    }
    Some(total)
}

/// Realizes the classes of `Ext^d(x, z)` for all pairs of objects of `X` and
/// checks that the almost minimal representatives have all terms in `X`.
pub fn check_closed_under_d_extensions(ct: &CtCategory, xsub: &Subcat, opts: &ClosureOptions) -> Result<ClosureReport> {
    let d = ct.d;
    let n = xsub.len();
    let f = xsub.alg().field();
    let per_pair: Vec<Result<(usize, bool, Vec<ClosureViolation>)>> = par::map_range(n * n, |k| {
        let (a, b) = (xsub.object(k / n), xsub.object(k % n));
        let space = ext_space(a, b, d);
        let dim = space.dim();
        if dim == 0 {
            return Ok((0, true, Vec::new()));
        }
        let (classes, complete) = match f.order() {
            Some(p) if line_count(p, dim).is_some_and(|c| c <= opts.enumeration_cap as u64) => {
                (projective_points(f, p, dim), true)
            }
            _ => {
                let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ k as u64);
                let mut cs: Vec<Vec<Scalar>> = (0..dim)
                    .map(|i| (0..dim).map(|j| if i == j { f.one() } else { f.zero() }).collect())
                    .collect();
                for _ in 0..opts.samples {
                    cs.push((0..dim).map(|_| random_scalar(f, &mut rng, false)).collect());
                }
                (cs, false)
            }
        };
        let mut bad = Vec::new();
        for c in &classes {
            let seq = dexact::realize_class(&space.from_coords(c), &ct.sub)?;
            let mut inside = true;
            for t in seq.terms() {
                inside &= xsub.contains(t)?;
            }
            if !inside {
                bad.push(ClosureViolation {
                    from: a.label(),
                    to: b.label(),
                    coords: c.clone(),
                    sequence: format_sequence(&ct.sub, &seq)?,
                });
            }
        }
        Ok((classes.len(), complete, bad))
    });
    let mut report = ClosureReport { complete: true, ..Default::default() };
    for r in per_pair {
        let (count, complete, bad) = r?;
        if count > 0 {
            report.pairs += 1;
        }
        report.classes += count;
        report.complete &= complete;
        report.violations.extend(bad);
    }
    Ok(report)
}

#[derive(Clone, Debug)]
pub struct ArQuiver {
    pub labels: Vec<String>,
    pub dims: Vec<Vec<usize>>,
    /// `(from, to, multiplicity)` for irreducible maps.
    pub arrows: Vec<(usize, usize, usize)>,
    /// `(x, D Tr_d x)` for listed non-projective `x` whose translate is listed.
    pub translations: Vec<(usize, usize)>,
}

pub fn ar_quiver(sub: &Subcat, d: usize) -> Result<ArQuiver> {
    let t = sub.rad_table()?;
    let n = sub.len();
    let mut arrows = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let c = t.irreducible_count(i, j);
            if c > 0 {
                arrows.push((i, j, c));
            }
        }
    }
    let mut translations = Vec::new();
    for i in 0..n {
        let tr = dtr_d(sub.object(i), d);
        if !tr.is_zero() {
            if let Some(j) = sub.find(&tr)? {
                translations.push((i, j));
            }
        }
    }
    Ok(ArQuiver {
        labels: sub.objects().iter().map(Representation::label).collect(),
        dims: sub.objects().iter().map(|m| m.dims().to_vec()).collect(),
        arrows,
        translations,
    })
}

/// Summand indices of every term, or `None` if some summand is unlisted.
pub fn term_signature(sub: &Subcat, seq: &DSequence) -> Result<Option<Vec<Vec<usize>>>> {
    let mut out = Vec::new();
    for t in seq.terms() {
        match sub.summands(t)? {
            Some(s) => out.push(s),
            None => return Ok(None),
        }
    }
    Ok(Some(out))
}

/// `0 -> A^0 -> A^1 -> ... -> A^{d+1} -> 0` with terms named through `sub`.
pub fn format_sequence(sub: &Subcat, seq: &DSequence) -> Result<String> {
    let mut parts = vec!["0".to_string()];
    for t in seq.terms() {
        parts.push(sub.describe(t)?);
    }
    parts.push("0".into());
    Ok(parts.join(" -> "))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::linear_a;

    #[test]
    fn a2_is_its_own_module_category() {
        let alg = linear_a(FieldSpec::Prime(7), 2, 2).unwrap();
        let f = generate_ct_from_injectives(&alg, 1, 10).unwrap();
        assert_eq!(f.len(), 3);
        let ct = verify_d_cluster_tilting(&f, 1, &[]).unwrap();
        assert!(ct.cert.passed());
        let q = ar_quiver(&f, 1).unwrap();
        assert_eq!(q.arrows.len(), 2);
        assert_eq!(q.translations.len(), 1);
        let s1 = f.objects().iter().position(|m| m.dims() == [1, 0]).unwrap();
        let dar = d_ar_sequence_in_f(&ct, s1).unwrap();
        assert_eq!(dar.seq.term(1).dims(), &[1, 1]);
    }

    #[test]
    fn dropping_an_object_breaks_cluster_tilting() {
        let alg = linear_a(FieldSpec::Prime(7), 3, 2).unwrap();
        let f = generate_ct_from_injectives(&alg, 2, 20).unwrap();
        let ct = verify_d_cluster_tilting(&f, 2, &[]).unwrap();
        assert!(ct.cert.orthogonal);
        let smaller = f.without("G", &[0]);
        assert!(matches!(verify_d_cluster_tilting(&smaller, 2, &[]), Err(Error::NotClusterTilting(_))));
    }

    #[test]
    fn projective_points_cover_every_line() {
        let f = FieldSpec::Prime(3);
        assert_eq!(projective_points(f, 3, 2).len(), 4);
        assert_eq!(line_count(3, 2), Some(4));
        assert_eq!(projective_points(f, 3, 3).len(), 13);
    }
}
