//! Regenerates the workspace files under `fixtures/`.
//!
//! `cargo run -p hart-core --release --example freeze_fixtures [DIR]`

use std::path::PathBuf;

use hart::artheory::{d_ar_sequence_in_f, d_ar_sequence_in_x, generate_ct_from_injectives, term_signature, verify_d_cluster_tilting};
use hart::dexact::DSequence;
use hart::fixtures::{dual_numbers, linear_a, triangle, TRIANGLE_X};
use hart::io::{write_workspace, NamedModule, Workspace, Golden};
use hart::*;

fn empty(alg: &Algebra) -> Workspace {
    Workspace { alg: alg.clone(), modules: vec![], morphisms: vec![], subcats: vec![], sequences: vec![], goldens: vec![] }
}

fn push(ws: &mut Workspace, m: &Representation) {
    let id = m.label();
    ws.modules.push(NamedModule { id: id.clone(), module: m.with_name(&id) });
}

fn a2(field: FieldSpec) -> Result<Workspace> {
    let alg = linear_a(field, 2, 0)?;
    let mut ws = empty(&alg);
    let f = generate_ct_from_injectives(&alg, 1, 16)?;
    for m in f.objects() {
        push(&mut ws, m);
    }
    ws.subcats.push(("F".into(), (0..ws.modules.len()).collect()));
    let ct = verify_d_cluster_tilting(&f, 1, &[])?;
    for x in 0..f.len() {
        if let Ok(ar) = d_ar_sequence_in_f(&ct, x) {
            let sig = term_signature(&f, &ar.seq)?.expect("terms listed");
            ws.add_sequence("ar", sig, &ar.seq)?;
        }
    }
    Ok(ws)
}

fn split(field: FieldSpec) -> Result<Workspace> {
    let alg = linear_a(field, 2, 0)?;
    let mut ws = empty(&alg);
    let s1 = Representation::simple(&alg, 0);
    let s2 = Representation::simple(&alg, 1);
    push(&mut ws, &s1);
    push(&mut ws, &s2);
    push(&mut ws, &projective_at(&alg, 0));
    ws.subcats.push(("F".into(), vec![0, 1, 2]));
    let seq = DSequence::split(&s2, &s1, 1);
    ws.add_sequence("split", vec![vec![1], vec![1, 0], vec![0]], &seq)?;
    Ok(ws)
}

fn dual(field: FieldSpec) -> Result<Workspace> {
    let alg = dual_numbers(field)?;
    let mut ws = empty(&alg);
    push(&mut ws, &Representation::simple(&alg, 0));
    push(&mut ws, &projective_at(&alg, 0));
    ws.subcats.push(("F".into(), vec![1]));
    ws.subcats.push(("mod".into(), vec![0, 1]));
    Ok(ws)
}

fn tri(field: FieldSpec) -> Result<Workspace> {
    let alg = triangle(field)?;
    let mut ws = empty(&alg);
    let f = generate_ct_from_injectives(&alg, 2, 100)?;
    for m in f.objects() {
        push(&mut ws, m);
    }
    ws.subcats.push(("F".into(), (0..f.len()).collect()));
    let xi: Vec<usize> = TRIANGLE_X.iter().map(|l| f.by_label(l).expect("X inside F")).collect();
    ws.subcats.push(("X".into(), xi.clone()));
    let ct = verify_d_cluster_tilting(&f, 2, &[])?;
    let x = f.restrict("X", &xi);
    let add = |ws: &mut Workspace, id: &str, golden: &str, seq: &DSequence| -> Result<()> {
        let sig = term_signature(&f, seq)?.expect("terms listed");
        ws.goldens.push(Golden { name: golden.into(), terms: sig.clone() });
        ws.add_sequence(id, sig, seq)
    };
    for (end, id, golden) in [("9/6/2", "a", "(a)"), ("6/2", "b", "(b)"), ("4/7/9", "c", "(c)"), ("4/7", "d", "(d)")] {
        let s = d_ar_sequence_in_f(&ct, f.by_label(end).unwrap())?;
        add(&mut ws, id, golden, &s.seq)?;
    }
    for (end, id, golden) in [("6/2", "b'", "(b′)"), ("4/7/9", "c'", "(c′)"), ("4/7", "d'", "(d′)")] {
        let s = d_ar_sequence_in_x(&ct, &x, x.by_label(end).unwrap())?;
        add(&mut ws, id, golden, &s.seq)?;
    }
    let a = f.by_label("9/6/2").unwrap();
    let b = f.by_label("8/5/1").unwrap();
    let seq = DSequence::split(f.object(b), f.object(a), 2);
    ws.add_sequence("split", vec![vec![b], vec![b], vec![a], vec![a]], &seq)?;
    Ok(ws)
}

fn main() -> Result<()> {
    let dir = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures"));
    std::fs::create_dir_all(&dir).expect("create fixture dir");
    let field = FieldSpec::Prime(101);
    let files = [
        ("a2.hart", "# Linear A2 and its module category.\n", a2(field)?),
        ("split.hart", "# A split short exact sequence in mod A2.\n", split(field)?),
        ("loop.hart", "# Dual numbers k[x]/(x^2).\n", dual(field)?),
        ("triangle.hart", "# The triangle algebra: its 2-cluster tilting subcategory F, the\n# subcategory X, and the 2-AR sequences in F and in X.\n", tri(field)?),
    ];
    for (name, header, ws) in files {
        let text = format!("{header}\n{}", write_workspace(&ws));
        std::fs::write(dir.join(name), text).expect("write fixture");
        println!("wrote {}", dir.join(name).display());
    }
    Ok(())
}
