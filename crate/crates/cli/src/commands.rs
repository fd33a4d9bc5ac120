use std::fmt::Write as _;

use hart::approx::Subcat;
use hart::artheory::{
    ar_quiver, certify_dar, check_closed_under_d_extensions, check_corollary_pushout, check_theorem_division_ring,
    d_ar_sequence_in_f, d_ar_sequence_in_x, defect_chain, format_sequence, generate_ct_from_injectives, has_ext_into,
    sigma, term_signature, verify_d_cluster_tilting, ClosureOptions, CtCategory, DarSequence,
};
use hart::dexact::{verify_d_exact, DSequence};
use hart::homology::{class_of_sequence, dtr_d, ext_space};
use hart::io::{export_dot, parse_workspace_with, write_workspace, NamedModule, ParseOptions, Workspace};
use hart::{Error, FieldSpec};

use crate::{Cli, Command, Global, Theorem};

pub enum Failure {
    Io(String),
    Hart(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Hart(e)
    }
}

pub struct Report {
    pub text: String,
    pub status: u8,
}

type Out<T> = std::result::Result<T, Failure>;

fn parse_field(s: &str) -> Out<FieldSpec> {
    let t = s.trim();
    if t.eq_ignore_ascii_case("q") {
        return Ok(FieldSpec::Rationals);
    }
    let digits = t.trim_start_matches(|c: char| c.is_ascii_alphabetic());
    let p: u64 = digits
        .parse()
        .map_err(|_| Failure::Hart(Error::Validation(format!("cannot read field `{s}`; use Q or F<p>"))))?;
    Ok(FieldSpec::prime(p)?)
}

fn load(g: &Global) -> Out<Workspace> {
    let mut text = String::new();
    for path in &g.workspace {
        let t = std::fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
        text.push_str(&t);
        text.push('\n');
    }
    let field = g.field.as_deref().map(parse_field).transpose()?;
    Ok(parse_workspace_with(&text, &ParseOptions { path_bound: g.bound_path, field })?)
}

/// Every workspace module as one subcategory, used for naming summands.
fn all_modules(ws: &Workspace) -> Out<Subcat> {
    Ok(Subcat::new("all", &ws.alg, ws.modules.iter().map(|m| m.module.clone()).collect())?)
}

fn index_in(sub: &Subcat, ws: &Workspace, r: &str) -> Out<usize> {
    let m = ws.module(r)?;
    sub.find(m)?
        .ok_or_else(|| Failure::Hart(Error::Validation(format!("`{r}` is not in {}", sub.name()))))
}

fn golden_name(ws: &Workspace, all: &Subcat, seq: &DSequence) -> Out<Option<String>> {
    let Some(mut sig) = term_signature(all, seq)? else { return Ok(None) };
    sig.iter_mut().for_each(|t| t.sort_unstable());
    Ok(ws
        .goldens
        .iter()
        .find(|g| {
            g.terms.len() == sig.len()
                && g.terms.iter().zip(&sig).all(|(a, b)| {
                    let mut a = a.clone();
                    a.sort_unstable();
                    &a == b
                })
        })
        .map(|g| g.name.clone()))
}

fn ct_category(ws: &Workspace, name: &str, d: usize) -> Out<CtCategory> {
    Ok(verify_d_cluster_tilting(&ws.subcat(name)?, d, &[])?)
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn write_dar(out: &mut String, ws: &Workspace, all: &Subcat, dar: &DarSequence) -> Out<()> {
    writeln!(out, "sequence: {}", format_sequence(all, &dar.seq)?).unwrap();
    if let Some(g) = golden_name(ws, all, &dar.seq)? {
        writeln!(out, "matches: {g}").unwrap();
    }
    writeln!(
        out,
        "certified in {}: exact {}, terms listed {}, interior radical {}, left almost split {}, right almost split {}",
        dar.ambient,
        yes(dar.exact),
        yes(dar.terms_in_ambient),
        yes(dar.interior_rad),
        yes(dar.left_almost_split),
        yes(dar.right_almost_split)
    )
    .unwrap();
    Ok(())
}

fn dar_in(ws: &Workspace, within: &str, ct: &str, d: usize, end: &str) -> Out<DarSequence> {
    let ctc = ct_category(ws, ct, d)?;
    if within == ct {
        let x = index_in(&ctc.sub, ws, end)?;
        Ok(d_ar_sequence_in_f(&ctc, x)?)
    } else {
        let xsub = ws.subcat(within)?;
        let x = index_in(&xsub, ws, end)?;
        Ok(d_ar_sequence_in_x(&ctc, &xsub, x)?)
    }
}

fn ends_with_ext(xsub: &Subcat, d: usize) -> Vec<usize> {
    (0..xsub.len()).filter(|&i| has_ext_into(xsub, xsub.object(i), d)).collect()
}

pub fn run(cli: &Cli) -> Out<Report> {
    let g = &cli.global;
    hart::par::set_seed(g.seed);
    if g.sequential {
        hart::par::set_parallel(false);
    }
    let ws = load(g)?;
    let all = all_modules(&ws)?;
    let mut out = String::new();
    let mut status = 0;
    match &cli.command {
        Command::CtVerify { subcat, d } => {
            let ct = ct_category(&ws, subcat, *d)?;
            let c = &ct.cert;
            writeln!(out, "{subcat} is {d}-cluster tilting ({} indecomposables)", ct.sub.len()).unwrap();
            writeln!(out, "Ext^1..{}-orthogonal: {}", d - 1, yes(c.orthogonal)).unwrap();
            writeln!(out, "contains projectives: {}", yes(c.projectives)).unwrap();
            writeln!(out, "contains injectives: {}", yes(c.injectives)).unwrap();
            writeln!(out, "closed under D Tr_{d}: {}", yes(c.tau_closed)).unwrap();
        }
        Command::CtGenerate { d, emit } => {
            let f = generate_ct_from_injectives(&ws.alg, *d, g.bound_orbit)?;
            writeln!(out, "{} indecomposables", f.len()).unwrap();
            for m in f.objects() {
                writeln!(out, "{}  {:?}", m.radical_label(), m.dims()).unwrap();
            }
            if let Some(path) = emit {
                let mut gen = Workspace {
                    alg: ws.alg.clone(),
                    modules: vec![],
                    morphisms: vec![],
                    subcats: vec![],
                    sequences: vec![],
                    goldens: vec![],
                };
                for m in f.objects() {
                    let id = m.radical_label();
                    gen.modules.push(NamedModule { id: id.clone(), module: m.with_name(&id) });
                }
                gen.subcats.push(("F".into(), (0..f.len()).collect()));
                std::fs::write(path, write_workspace(&gen)).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
            }
        }
        Command::ArQuiver { subcat, d } => {
            let q = ar_quiver(&ws.subcat(subcat)?, *d)?;
            writeln!(out, "{} vertices, {} arrows, {} translations", q.labels.len(), q.arrows.len(), q.translations.len()).unwrap();
            for (l, dims) in q.labels.iter().zip(&q.dims) {
                writeln!(out, "vertex {l} {dims:?}").unwrap();
            }
            for &(a, b, m) in &q.arrows {
                let mult = if m > 1 { format!(" x{m}") } else { String::new() };
                writeln!(out, "arrow {} -> {}{mult}", q.labels[a], q.labels[b]).unwrap();
            }
            for &(a, b) in &q.translations {
                writeln!(out, "translate {} ~> {}", q.labels[a], q.labels[b]).unwrap();
            }
        }
        Command::Dtr { module, d } => {
            let m = ws.module(module)?;
            let t = dtr_d(m, *d);
            let name = if t.is_zero() {
                "0".to_string()
            } else {
                all.describe(&t).unwrap_or_else(|_| t.radical_label())
            };
            writeln!(out, "D Tr_{d}({}) = {name}", m.label()).unwrap();
        }
        Command::Dar { d, within, ct, end } => {
            let dar = dar_in(&ws, within, ct, *d, end)?;
            write_dar(&mut out, &ws, &all, &dar)?;
        }
        Command::Sigma { end, subcat, d } => {
            let xsub = ws.subcat(subcat)?;
            let x = index_in(&xsub, &ws, end)?;
            match sigma(&xsub, x, *d)? {
                Some(s) => writeln!(out, "σ({}) = {}", xsub.object(x).label(), s.module.label()).unwrap(),
                None => writeln!(out, "σ({}) undefined: Ext^{d}({}, {subcat}) = 0", xsub.object(x).label(), xsub.object(x).label()).unwrap(),
            }
        }
        Command::CheckSeq { id, ambient } => {
            let s = ws.sequence(id)?;
            let seq = &s.seq;
            let sub = ws.subcat(ambient)?;
            let d = seq.d();
            writeln!(out, "sequence {id}: {}", format_sequence(&all, seq)?).unwrap();
            writeln!(out, "d = {d}").unwrap();
            let ex = verify_d_exact(seq, &sub)?;
            writeln!(
                out,
                "exact: {}, terms in {ambient}: {}, Hom-exact on {ambient}: {}",
                yes(ex.exact),
                yes(ex.terms_in_ambient),
                yes(ex.hom_exact)
            )
            .unwrap();
            if !ex.exact {
                status = 4;
            } else {
                let e = class_of_sequence(seq)?;
                let space = ext_space(seq.right_end(), seq.left_end(), d);
                let coords = space.coords(&e)?;
                if coords.iter().all(|c| c.is_zero()) {
                    writeln!(out, "split, class = 0").unwrap();
                } else {
                    let c: Vec<String> = coords.iter().map(|c| c.to_string()).collect();
                    writeln!(out, "non-split, class = [{}] in Ext^{d} of dimension {}", c.join(" "), space.dim()).unwrap();
                }
                if ex.terms_in_ambient {
                    let dar = certify_dar(&sub, seq)?;
                    writeln!(out, "d-AR sequence in {ambient}: {}", yes(dar.certified())).unwrap();
                }
                if let Some(g) = golden_name(&ws, &all, seq)? {
                    writeln!(out, "matches: {g}").unwrap();
                }
            }
        }
        Command::Defect { id, end, subcat, ct } => {
            let xsub = ws.subcat(subcat)?;
            let seq = match (id, end) {
                (Some(id), _) => ws.sequence(id)?.seq.clone(),
                (None, Some(end)) => {
                    let ctc = ct_category(&ws, ct, 2)?;
                    let x = index_in(&xsub, &ws, end)?;
                    d_ar_sequence_in_x(&ctc, &xsub, x)?.seq
                }
                (None, None) => unreachable!("clap requires one of --seq, --end"),
            };
            writeln!(out, "sequence: {}", format_sequence(&all, &seq)?).unwrap();
            let (a, b, c) = defect_chain(&xsub, &seq)?;
            writeln!(out, "δ*(x) = {a}, δ_*(Y) = {b}, δ_*(D Tr_d x) = {c}").unwrap();
            writeln!(out, "chain equal: {}", yes(a == b && b == c)).unwrap();
        }
        Command::ClosureCheck { subcat, ct, drop, samples } => {
            let ctc = ct_category(&ws, ct, 2)?;
            let mut xsub = ws.subcat(subcat)?;
            if !drop.is_empty() {
                let idx = drop.iter().map(|r| index_in(&xsub, &ws, r)).collect::<Out<Vec<_>>>()?;
                xsub = xsub.without(&format!("{subcat}'"), &idx);
            }
            let opts = ClosureOptions { enumeration_cap: g.bound_enum, samples: *samples, seed: g.seed };
            let r = check_closed_under_d_extensions(&ctc, &xsub, &opts)?;
            writeln!(
                out,
                "{}: {} ({} pairs with nonzero Ext, {} classes, {})",
                xsub.name(),
                if r.closed() { "closed under d-extensions" } else { "not closed under d-extensions" },
                r.pairs,
                r.classes,
                if r.complete { "exhaustive" } else { "sampled" }
            )
            .unwrap();
            for v in &r.violations {
                let c: Vec<String> = v.coords.iter().map(|c| c.to_string()).collect();
                writeln!(out, "violation: class [{}] in Ext({}, {}): {}", c.join(" "), v.from, v.to, v.sequence).unwrap();
            }
        }
        Command::TheoremCheck { which, end, subcat, ct, trials } => {
            let ctc = ct_category(&ws, ct, 2)?;
            let xsub = ws.subcat(subcat)?;
            let ends = match end {
                Some(e) => vec![index_in(&xsub, &ws, e)?],
                None => ends_with_ext(&xsub, ctc.d),
            };
            for x in ends {
                let label = xsub.object(x).label();
                let (rep, extra) = match which {
                    Theorem::DivisionRing => (check_theorem_division_ring(&ctc, &xsub, x, *trials, g.seed)?, None),
                    Theorem::Pushout => {
                        let (rep, seq) = check_corollary_pushout(&ctc, &xsub, x)?;
                        (rep, Some(seq))
                    }
                };
                writeln!(out, "{label}: {} instances, {} violations", rep.instances, rep.violations.len()).unwrap();
                if let Some(seq) = extra {
                    let name = golden_name(&ws, &all, &seq)?.map(|g| format!("  {g}")).unwrap_or_default();
                    writeln!(out, "  pushout: {}{name}", format_sequence(&all, &seq)?).unwrap();
                }
                for v in &rep.violations {
                    writeln!(out, "  violation: {v}").unwrap();
                }
                if !rep.passed() {
                    status = 4;
                }
            }
        }
        Command::ExportDot { subcat, d } => {
            out = export_dot(&ar_quiver(&ws.subcat(subcat)?, *d)?);
        }
    }
    Ok(Report { text: out, status })
}
