//! One line per acceptance criterion. Lines go straight to stdout so they
//! show up without `--nocapture`.

mod common;
mod oracle;

use std::collections::BTreeMap;
use std::io::Write;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use hart::approx::{x_cover, Subcat};
use hart::artheory::*;
use hart::dexact::*;
use hart::fixtures::{linear_a, nakayama_family, triangle};
use hart::homology::{class_of_sequence, ext_dim, ext_space};
use hart::reps::is_isomorphic;
use hart::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = std::result::Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn ok<T>(r: Result<T>) -> std::result::Result<T, String> {
    r.map_err(|e| e.to_string())
}

/// Figure 1: the twenty indecomposables of F.
const FIGURE_VERTICES: [&str; 20] = [
    "1", "5/1", "8/5/1", "10/8/5/1", "2/5", "6/2,8/5", "9/6,10/2,8/5", "3/6/8", "7/3,9/6,10/8", "4/7/9/10", "2", "6/2",
    "9/6/2", "3/6", "7/3,9/6", "4/7/9", "3", "7/3", "4/7", "4",
];

/// Figure 1: solid arrows.
const FIGURE_ARROWS: [(&str, &str); 30] = [
    ("10/8/5/1", "9/6,10/2,8/5"),
    ("8/5/1", "10/8/5/1"),
    ("8/5/1", "6/2,8/5"),
    ("9/6,10/2,8/5", "7/3,9/6,10/8"),
    ("9/6,10/2,8/5", "9/6/2"),
    ("5/1", "8/5/1"),
    ("5/1", "2/5"),
    ("6/2,8/5", "9/6,10/2,8/5"),
    ("6/2,8/5", "3/6/8"),
    ("6/2,8/5", "6/2"),
    ("7/3,9/6,10/8", "4/7/9/10"),
    ("7/3,9/6,10/8", "7/3,9/6"),
    ("1", "5/1"),
    ("2/5", "6/2,8/5"),
    ("2/5", "2"),
    ("3/6/8", "7/3,9/6,10/8"),
    ("3/6/8", "3/6"),
    ("4/7/9/10", "4/7/9"),
    ("9/6/2", "7/3,9/6"),
    ("6/2", "9/6/2"),
    ("6/2", "3/6"),
    ("7/3,9/6", "4/7/9"),
    ("7/3,9/6", "7/3"),
    ("2", "6/2"),
    ("3/6", "7/3,9/6"),
    ("3/6", "3"),
    ("4/7/9", "4/7"),
    ("7/3", "4/7"),
    ("3", "7/3"),
    ("4/7", "4"),
];

/// Figure 1: dashed arrows `x ~> D Tr_2 x`.
const FIGURE_TRANSLATIONS: [(&str, &str); 10] = [
    ("9/6/2", "8/5/1"),
    ("6/2", "5/1"),
    ("7/3,9/6", "6/2,8/5"),
    ("2", "1"),
    ("3/6", "2/5"),
    ("4/7/9", "3/6/8"),
    ("7/3", "6/2"),
    ("3", "2"),
    ("4/7", "3/6"),
    ("4", "3"),
];

/// The printed sequences, term by term.
const SEQ_A: [&[&str]; 4] = [&["8/5/1"], &["6/2,8/5", "10/8/5/1"], &["6/2", "9/6,10/2,8/5"], &["9/6/2"]];
const SEQ_B: [&[&str]; 4] = [&["5/1"], &["2/5", "8/5/1"], &["2", "6/2,8/5"], &["6/2"]];
const SEQ_C: [&[&str]; 4] = [&["3/6/8"], &["3/6", "7/3,9/6,10/8"], &["7/3,9/6", "4/7/9/10"], &["4/7/9"]];
const SEQ_D: [&[&str]; 4] = [&["3/6"], &["3", "7/3,9/6"], &["7/3", "4/7/9"], &["4/7"]];
const SEQ_B1: [&[&str]; 4] = [&["1"], &["8/5/1"], &["6/2,8/5"], &["6/2"]];
const SEQ_C1: [&[&str]; 4] = [&["6/2,8/5"], &["9/6,10/2,8/5", "6/2"], &["9/6/2", "4/7/9/10"], &["4/7/9"]];
const SEQ_D1: [&[&str]; 4] = [&["6/2"], &["9/6/2"], &["4/7/9"], &["4/7"]];

const X_LABELS: [&str; 10] =
    ["1", "8/5/1", "10/8/5/1", "9/6,10/2,8/5", "4/7/9/10", "6/2,8/5", "6/2", "9/6/2", "4/7/9", "4/7"];

/// Dimension vector read off a radical-series label.
fn dims_from_label(label: &str, n: usize) -> Vec<usize> {
    let mut d = vec![0; n];
    for v in label.split(['/', ',']) {
        d[v.parse::<usize>().unwrap() - 1] += 1;
    }
    d
}

fn terms_of(sub: &Subcat, seq: &DSequence) -> std::result::Result<Vec<Vec<String>>, String> {
    let mut out = Vec::new();
    for t in seq.terms() {
        let mut labels: Vec<String> = match ok(sub.summands(t))? {
            Some(idx) => idx.iter().map(|&i| sub.object(i).label()).collect(),
            None => return Err(format!("term {} not in {}", t.label(), sub.name())),
        };
        labels.sort();
        out.push(labels);
    }
    Ok(out)
}

fn matches(got: &[Vec<String>], want: &[&[&str]]) -> bool {
    got.len() == want.len()
        && got.iter().zip(want).all(|(g, w)| {
            let mut w: Vec<String> = w.iter().map(|s| s.to_string()).collect();
            w.sort();
            g == &w
        })
}

struct Setup {
    ct: CtCategory,
    x: Subcat,
    gen_time: f64,
}

fn setup() -> std::result::Result<Setup, String> {
    let t = Instant::now();
    let alg = ok(triangle(FieldSpec::Prime(101)))?;
    let f = ok(generate_ct_from_injectives(&alg, 2, 100))?;
    let ct = ok(verify_d_cluster_tilting(&f, 2, &[]))?;
    let gen_time = t.elapsed().as_secs_f64();
    let xi: Vec<usize> = X_LABELS
        .iter()
        .map(|l| ct.sub.by_label(l).ok_or(format!("{l} not generated")))
        .collect::<std::result::Result<_, _>>()?;
    let x = ct.sub.restrict("X", &xi);
    Ok(Setup { ct, x, gen_time })
}

fn criterion_1(s: &Setup) -> Outcome {
    let f = &s.ct.sub;
    ensure!(f.len() == 20, "{} indecomposables", f.len());
    let mut labels: Vec<String> = f.objects().iter().map(|m| m.label()).collect();
    labels.sort();
    let mut want: Vec<String> = FIGURE_VERTICES.iter().map(|s| s.to_string()).collect();
    want.sort();
    ensure!(labels == want, "labels {labels:?}");
    for m in f.objects() {
        ensure!(m.dims() == dims_from_label(&m.label(), 10).as_slice(), "dimension vector of {}", m.label());
    }
    let q = ok(ar_quiver(f, 2))?;
    let mut arrows: Vec<(String, String)> = Vec::new();
    for &(a, b, m) in &q.arrows {
        for _ in 0..m {
            arrows.push((q.labels[a].clone(), q.labels[b].clone()));
        }
    }
    arrows.sort();
    let mut want: Vec<(String, String)> = FIGURE_ARROWS.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect();
    want.sort();
    ensure!(arrows == want, "arrows differ: {arrows:?}");
    let mut tr: Vec<(String, String)> = q.translations.iter().map(|&(a, b)| (q.labels[a].clone(), q.labels[b].clone())).collect();
    tr.sort();
    let mut want: Vec<(String, String)> = FIGURE_TRANSLATIONS.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect();
    want.sort();
    ensure!(tr == want, "translations differ: {tr:?}");
    ensure!(s.gen_time < 60.0, "generation took {:.1}s", s.gen_time);
    Ok(format!("20 modules, 30 arrows, 10 translations match; generated in {:.3}s over F_101", s.gen_time))
}

fn criterion_2(s: &Setup) -> Outcome {
    let f = &s.ct.sub;
    let mut worst = 0.0f64;
    for (end, want, name) in [("9/6/2", SEQ_A, "(a)"), ("6/2", SEQ_B, "(b)"), ("4/7/9", SEQ_C, "(c)"), ("4/7", SEQ_D, "(d)")] {
        let t = Instant::now();
        let dar = ok(d_ar_sequence_in_f(&s.ct, f.by_label(end).unwrap()))?;
        worst = worst.max(t.elapsed().as_secs_f64());
        ensure!(dar.certified(), "{name} not certified");
        let got = terms_of(f, &dar.seq)?;
        ensure!(matches(&got, &want), "{name}: got {got:?}");
    }
    ensure!(worst < 60.0, "slowest took {worst:.1}s");
    Ok(format!("(a), (b), (c), (d) reproduced and certified; slowest {worst:.3}s"))
}

fn criterion_3(s: &Setup) -> Outcome {
    let f = &s.ct.sub;
    for (target, domain) in [("5/1", "1"), ("3/6/8", "6/2,8/5"), ("3/6", "6/2")] {
        let g = ok(x_cover(&s.x, f.object(f.by_label(target).unwrap())))?;
        let got = ok(s.x.describe(g.source()))?;
        ensure!(got == domain, "X-cover of {target} has domain {got}");
    }
    for (x, want) in [("6/2", "1"), ("4/7/9", "6/2,8/5"), ("4/7", "6/2"), ("9/6/2", "8/5/1")] {
        let sg = ok(sigma(&s.x, s.x.by_label(x).unwrap(), 2))?.ok_or(format!("σ({x}) undefined"))?;
        ensure!(sg.module.label() == want, "σ({x}) = {}", sg.module.label());
    }
    Ok("covers 1 -> 5/1, 6/2,8/5 -> 3/6/8, 6/2 -> 3/6; σ = 1, 6/2,8/5, 6/2, 8/5/1".into())
}

fn criterion_4(s: &Setup) -> Outcome {
    let expected: BTreeMap<&str, ([&[&str]; 4], &str)> =
        [("9/6/2", (SEQ_A, "(a)")), ("6/2", (SEQ_B1, "(b′)")), ("4/7/9", (SEQ_C1, "(c′)")), ("4/7", (SEQ_D1, "(d′)"))].into();
    let mut none = 0;
    for i in 0..s.x.len() {
        let label = s.x.object(i).label();
        match (expected.get(label.as_str()), d_ar_sequence_in_x(&s.ct, &s.x, i)) {
            (Some((want, name)), Ok(dar)) => {
                ensure!(dar.certified(), "{name} not certified in X");
                let got = terms_of(&s.x, &dar.seq)?;
                ensure!(matches(&got, want), "{name}: got {got:?}");
            }
            (None, Err(Error::NoSuchSequence(_))) => none += 1,
            (Some((_, name)), Err(e)) => return Err(format!("{name}: {e}")),
            (None, r) => return Err(format!("{label}: expected NoSuchSequence, got {:?}", r.map(|d| d.seq.d()))),
        }
    }
    ensure!(none == 6, "{none} ends without a sequence");
    Ok("(a), (b′), (c′), (d′) reproduced; NoSuchSequence for the other 6 ends".into())
}

fn criterion_5(s: &Setup) -> Outcome {
    let f = &s.ct.sub;
    let m = |l: &str| f.object(f.by_label(l).unwrap());
    for (a, b) in [("6/2", "1"), ("4/7/9", "6/2,8/5"), ("4/7", "6/2"), ("9/6/2", "8/5/1")] {
        let d = ext_dim(m(a), m(b), 2);
        ensure!(d == 1, "dim Ext^2({a}, {b}) = {d}");
    }
    Ok("all four Ext^2 spaces are one dimensional".into())
}

fn criterion_6(s: &Setup) -> Outcome {
    let opts = ClosureOptions::default();
    let r = ok(check_closed_under_d_extensions(&s.ct, &s.x, &opts))?;
    ensure!(r.complete, "enumeration was not exhaustive");
    ensure!(r.closed(), "X reported not closed: {:?}", r.violations.first().map(|v| &v.sequence));
    let drop = s.x.by_label("8/5/1").unwrap();
    let smaller = s.x.without("X'", &[drop]);
    let r2 = ok(check_closed_under_d_extensions(&s.ct, &smaller, &opts))?;
    ensure!(r2.complete && !r2.closed(), "removing 8/5/1 went unnoticed");
    Ok(format!(
        "X closed ({} classes, exhaustive); without 8/5/1: {}",
        r.classes, r2.violations[0].sequence
    ))
}

/// A small algebra from the Nakayama family with its d-cluster tilting subcategory.
fn nakayama(seed: u64, pick: usize) -> std::result::Result<(String, CtCategory), String> {
    let fam = nakayama_family();
    let (n, l) = fam[pick % fam.len()];
    let primes = [3u64, 5, 7, 11];
    let p = primes[(seed as usize + pick) % primes.len()];
    let d = 2 * (n - 1) / l;
    let alg = ok(linear_a(FieldSpec::Prime(p), n, l))?;
    let f = ok(generate_ct_from_injectives(&alg, d, 200))?;
    let ct = ok(verify_d_cluster_tilting(&f, d, &[]))?;
    Ok((format!("A_{n}/rad^{l} over F_{p} (d = {d})"), ct))
}

fn ext_pairs(f: &Subcat, d: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for a in 0..f.len() {
        for b in 0..f.len() {
            if ext_dim(f.object(a), f.object(b), d) > 0 {
                out.push((a, b));
            }
        }
    }
    out
}

fn random_combo(field: FieldSpec, n: usize, rng: &mut ChaCha8Rng) -> Vec<Scalar> {
    (0..n).map(|_| common::scalar(field, rng)).collect()
}

/// Random chain maps between two sequences, half of them null-homotopic
/// by construction.
fn chain_maps(src: &DSequence, tgt: &DSequence, rng: &mut ChaCha8Rng) -> std::result::Result<Vec<(SeqMorphism, Option<bool>)>, String> {
    let field = src.left_end().field();
    let d = src.d();
    let mut out = Vec::new();
    let space = chain_map_space(src, tgt);
    if !space.is_empty() {
        let c = random_combo(field, space.len(), rng);
        let mut h = SeqMorphism::zero(src, tgt);
        for (b, x) in space.iter().zip(&c) {
            h = h.add(&b.scale(x));
        }
        out.push((h, None));
    }
    let s: Vec<ModMorphism> = (1..=d + 1).map(|i| common::hom(src.term(i), tgt.term(i - 1), rng)).collect();
    let comps: Vec<ModMorphism> = (0..=d + 1)
        .map(|i| {
            let mut acc = ModMorphism::zero(src.term(i), tgt.term(i));
            if i >= 1 {
                acc = acc.add(&tgt.map(i - 1).compose(&s[i - 1]));
            }
            if i <= d {
                acc = acc.add(&s[i].compose(src.map(i)));
            }
            acc
        })
        .collect();
    out.push((ok(SeqMorphism::new(src, tgt, comps))?, Some(true)));
    Ok(out)
}

#[derive(Default)]
struct Tally {
    split_checks: usize,
    chain_maps: usize,
    defect_chains: usize,
    division_ring: usize,
    pushouts: usize,
}

fn theorem_suite_on(ct: &CtCategory, x: &Subcat, seed: u64, tally: &mut Tally) -> std::result::Result<(), String> {
    let f = &ct.sub;
    let d = ct.d;
    let field = f.alg().field();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pairs = ext_pairs(f, d);
    let mut pool: Vec<DSequence> = Vec::new();
    // (i) split iff zero class
    for k in 0..60 {
        if pairs.is_empty() {
            break;
        }
        let (a, b) = pairs[rng.gen_range(0..pairs.len())];
        let space = ext_space(f.object(a), f.object(b), d);
        let mut c = random_combo(field, space.dim(), &mut rng);
        if k % 4 == 0 {
            c.iter_mut().for_each(|v| *v = field.zero());
        }
        let e = space.from_coords(&c);
        let seq = ok(realize_class(&e, f))?;
        let zero = ok(space.is_zero_class(&e))?;
        let back = ok(class_of_sequence(&seq))?;
        ensure!(ok(space.same_class(&e, &back))?, "realized class differs");
        ensure!(is_split(&seq).is_some() == zero, "split/zero mismatch for {:?}", c);
        tally.split_checks += 1;
        pool.push(seq);
    }
    // (ii) null-homotopy conditions
    for _ in 0..40 {
        if pool.is_empty() {
            break;
        }
        let s = &pool[rng.gen_range(0..pool.len())];
        let t = &pool[rng.gen_range(0..pool.len())];
        for (h, known) in chain_maps(s, t, &mut rng)? {
            let test = null_homotopy_test(&h);
            ensure!(test.consistent(), "null-homotopy conditions disagree");
            let global = is_null_homotopic(&h);
            ensure!(global == test.homotopy.is_some(), "global solve disagrees with back-substitution");
            if let Some(k) = known {
                ensure!(global == k, "constructed null-homotopic map not recognised");
            }
            tally.chain_maps += 1;
        }
    }
    // (iii) defect chains on X-term sequences ending in X
    for i in 0..x.len() {
        for j in 0..x.len() {
            let space = ext_space(x.object(i), x.object(j), d);
            for e in space.basis() {
                let seq = ok(realize_class(&e, f))?;
                if !ok(seq.terms().iter().try_fold(true, |acc, t| x.contains(t).map(|c| acc && c)))? {
                    continue;
                }
                let (p, q, r) = ok(defect_chain(x, &seq))?;
                ensure!(p == q && q == r, "defect chain {p}, {q}, {r} for {}", x.object(i).label());
                tally.defect_chains += 1;
            }
        }
    }
    // (iv) non-split iff d-AR on every class of a one-dimensional space
    for i in 0..x.len() {
        let Some(sg) = ok(sigma(x, i, d))? else { continue };
        let m = x.object(i);
        let space = ext_space(m, &sg.module, d);
        ensure!(space.dim() == 1, "Ext^{d}({}, σ) has dimension {}", m.label(), space.dim());
        let classes: Vec<Scalar> = match field.order() {
            Some(p) if p <= 128 => (0..p as i64).map(|v| field.from_i64(v)).collect(),
            _ => (0..16).map(|_| common::scalar(field, &mut rng)).collect(),
        };
        for lambda in classes {
            let e = space.from_coords(std::slice::from_ref(&lambda));
            let seq = ok(realize_class(&e, f))?;
            let split = is_split(&seq).is_some();
            let dar = ok(certify_dar(x, &seq))?;
            ensure!(split == lambda.is_zero(), "{}: split={split} at {lambda}", m.label());
            ensure!(split != dar.certified(), "{}: non-split class {lambda} is not d-AR", m.label());
            tally.division_ring += 1;
        }
        let rep = ok(check_theorem_division_ring(ct, x, i, 4, seed))?;
        ensure!(rep.passed(), "{}: {:?}", m.label(), rep.violations);
        let (rep, _) = ok(check_corollary_pushout(ct, x, i))?;
        ensure!(rep.passed(), "{}: {:?}", m.label(), rep.violations);
        tally.pushouts += 1;
    }
    Ok(())
}

fn criterion_7(s: &Setup) -> Outcome {
    let t = Instant::now();
    let mut tally = Tally::default();
    theorem_suite_on(&s.ct, &s.x, 7, &mut tally)?;
    // Pushouts along the X-cover give back the d-AR sequences in F.
    let f = &s.ct.sub;
    for (end, want, name) in [("6/2", SEQ_B, "(b)"), ("4/7/9", SEQ_C, "(c)"), ("4/7", SEQ_D, "(d)")] {
        let (rep, seq) = ok(check_corollary_pushout(&s.ct, &s.x, s.x.by_label(end).unwrap()))?;
        ensure!(rep.passed(), "{name}: {:?}", rep.violations);
        let got = terms_of(f, &seq)?;
        ensure!(matches(&got, &want), "pushout gave {got:?} instead of {name}");
    }
    let seed: u64 = 20240611;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let first = rng.gen_range(0..nakayama_family().len());
    let second = (first + 1 + rng.gen_range(0..nakayama_family().len() - 1)) % nakayama_family().len();
    let mut names = Vec::new();
    for pick in [first, second] {
        let (name, ct) = nakayama(seed, pick)?;
        let x = ct.sub.clone();
        theorem_suite_on(&ct, &x, seed ^ pick as u64, &mut tally).map_err(|e| format!("{name}: {e}"))?;
        names.push(name);
    }
    ensure!(tally.split_checks >= 100, "only {} split checks", tally.split_checks);
    ensure!(tally.chain_maps >= 100, "only {} chain maps", tally.chain_maps);
    ensure!(tally.defect_chains > 0 && tally.division_ring > 0, "nothing checked");
    let secs = t.elapsed().as_secs_f64();
    ensure!(secs < 600.0, "took {secs:.0}s");
    Ok(format!(
        "{} split checks, {} chain maps, {} defect chains, {} division-ring classes, {} pushouts, (b′)->(b) (c′)->(c) (d′)->(d); triangle + {}; {secs:.1}s",
        tally.split_checks,
        tally.chain_maps,
        tally.defect_chains,
        tally.division_ring,
        tally.pushouts,
        names.join(" + ")
    ))
}

fn criterion_8() -> Outcome {
    let mut summary = Vec::new();
    for n in 2..=5 {
        let alg = ok(linear_a(FieldSpec::Prime(2), n, 0))?;
        let f = ok(generate_ct_from_injectives(&alg, 1, 100))?;
        let ct = ok(verify_d_cluster_tilting(&f, 1, &[]))?;
        let ours: Vec<oracle::Rep> = f.objects().iter().map(oracle::Rep::from_module).collect();
        let brute = oracle::indecomposables(n, 5);
        ensure!(brute.len() == n * (n + 1) / 2, "oracle found {} indecomposables", brute.len());
        ensure!(ours.len() == brute.len(), "A_{n}: {} modules, oracle {}", ours.len(), brute.len());
        // Match every oracle module with exactly one of ours.
        let mut pos = Vec::new();
        for b in &brute {
            let hits: Vec<usize> = (0..ours.len()).filter(|&i| oracle::isomorphic(&ours[i], b)).collect();
            ensure!(hits.len() == 1, "A_{n}: oracle module {:?} matched {hits:?}", b.dims);
            ensure!(b.dims.iter().all(|&d| d <= 1), "A_{n}: non-interval {:?}", b.dims);
            let support: Vec<usize> = (0..n).filter(|&v| b.dims[v] == 1).collect();
            ensure!(support.windows(2).all(|w| w[1] == w[0] + 1), "A_{n}: disconnected support {:?}", b.dims);
            pos.push(hits[0]);
        }
        let counts = oracle::irreducible_counts(&brute);
        let q = ok(ar_quiver(&f, 1))?;
        let mut ours_arrows = vec![vec![0; ours.len()]; ours.len()];
        for &(a, b, m) in &q.arrows {
            ours_arrows[a][b] = m;
        }
        for i in 0..brute.len() {
            for j in 0..brute.len() {
                ensure!(counts[i][j] == ours_arrows[pos[i]][pos[j]], "A_{n}: arrow count {:?} -> {:?}", brute[i].dims, brute[j].dims);
            }
        }
        let mut checked = 0;
        for z in 0..brute.len() {
            let preds: Vec<&oracle::Rep> = (0..brute.len())
                .flat_map(|i| std::iter::repeat_n(&brute[i], counts[i][z]))
                .collect();
            let middle = oracle::direct_sum(&preds, n);
            let ours_seq = d_ar_sequence_in_f(&ct, pos[z]);
            if middle.total() > 5 {
                continue;
            }
            let mut lefts: Vec<usize> = Vec::new();
            for (xi, x) in brute.iter().enumerate() {
                let fits = (0..n).all(|v| x.dims[v] + brute[z].dims[v] == middle.dims[v]);
                if fits && oracle::find_ses(x, &brute[z], &middle) {
                    lefts.push(xi);
                }
            }
            match ours_seq {
                Ok(dar) => {
                    ensure!(lefts.len() == 1, "A_{n}: oracle found {} left ends for {:?}", lefts.len(), brute[z].dims);
                    let left = oracle::Rep::from_module(dar.seq.left_end());
                    let mid = oracle::Rep::from_module(dar.seq.term(1));
                    ensure!(oracle::isomorphic(&left, &brute[lefts[0]]), "A_{n}: left end of {:?}", brute[z].dims);
                    ensure!(oracle::isomorphic(&mid, &middle), "A_{n}: middle term of {:?}", brute[z].dims);
                    let tau = q.translations.iter().find(|t| t.0 == pos[z]).map(|t| t.1);
                    ensure!(tau == Some(pos[lefts[0]]), "A_{n}: translate of {:?}", brute[z].dims);
                    checked += 1;
                }
                Err(Error::NoSuchSequence(_)) => {
                    ensure!(lefts.is_empty(), "A_{n}: oracle has an AR sequence ending at projective {:?}", brute[z].dims);
                }
                Err(e) => return Err(e.to_string()),
            }
        }
        summary.push(format!("A_{n}: {} modules, {checked} AR sequences", brute.len()));
    }
    Ok(summary.join("; "))
}

fn criterion_9(s: &Setup) -> Outcome {
    let f = &s.ct.sub;
    let mut count = 0;
    for (a, b) in ext_pairs(f, 2) {
        let space = ext_space(f.object(a), f.object(b), 2);
        for e in space.basis() {
            let seq = ok(realize_class(&e, f))?;
            let back = ok(class_of_sequence(&seq))?;
            ensure!(ok(space.same_class(&e, &back))?, "class changed for {} -> {}", f.object(a).label(), f.object(b).label());
            let once = ok(minimize(&seq))?;
            let twice = ok(minimize(&once))?;
            for i in 0..seq.terms().len() {
                ensure!(ok(is_isomorphic(once.term(i), twice.term(i)))?, "minimize not idempotent");
                ensure!(ok(is_isomorphic(once.term(i), seq.term(i)))?, "realization not minimal");
            }
            count += 1;
        }
    }
    ensure!(count > 0, "no Ext^2 classes");
    Ok(format!("{count} basis classes round-trip; minimize idempotent"))
}

fn report(n: usize, r: std::thread::Result<Outcome>) -> bool {
    let (pass, detail) = match r {
        Ok(Ok(msg)) => (true, msg),
        Ok(Err(msg)) => (false, msg),
        Err(p) => (false, p.downcast_ref::<String>().cloned().or(p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default()),
    };
    let mut out = std::io::stdout().lock();
    writeln!(out, "criterion {n}: {} - {detail}", if pass { "PASS" } else { "FAIL" }).unwrap();
    pass
}

#[test]
fn acceptance() {
    let s = match setup() {
        Ok(s) => s,
        Err(e) => panic!("setup failed: {e}"),
    };
    let criteria: Vec<(usize, Box<dyn Fn() -> Outcome>)> = vec![
        (1, Box::new(|| criterion_1(&s))),
        (2, Box::new(|| criterion_2(&s))),
        (3, Box::new(|| criterion_3(&s))),
        (4, Box::new(|| criterion_4(&s))),
        (5, Box::new(|| criterion_5(&s))),
        (6, Box::new(|| criterion_6(&s))),
        (7, Box::new(|| criterion_7(&s))),
        (8, Box::new(criterion_8)),
        (9, Box::new(|| criterion_9(&s))),
    ];
    let mut failed = Vec::new();
    for (n, c) in &criteria {
        if !report(*n, catch_unwind(AssertUnwindSafe(c))) {
            failed.push(*n);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
