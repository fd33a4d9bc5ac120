//! Small algebras used throughout the tests, benches and the CLI.

use crate::error::Result;
use crate::field::FieldSpec;
use crate::presentation::{build_algebra, Algebra, Quiver, Relation};

/// Linear `A_n`: `1 -> 2 -> ... -> n`, arrows `a1 .. a{n-1}`, paths of
/// length `l` killed (no relations when `l >= n`).
pub fn linear_a(field: FieldSpec, n: usize, l: usize) -> Result<Algebra> {
    let mut q = Quiver::new();
    for v in 1..=n {
        q.add_vertex(&v.to_string())?;
    }
    for v in 1..n {
        q.add_arrow(&format!("a{v}"), &v.to_string(), &(v + 1).to_string())?;
    }
    let mut rels = Vec::new();
    if l >= 2 {
        for s in 1..n.saturating_sub(l - 1) {
            let word: Vec<String> = (s..s + l).map(|i| format!("a{i}")).collect();
            rels.push(Relation::from_words(&q, field, &[(1, &word.join("."))])?);
        }
    }
    build_algebra(field, q, rels)
}

/// `k[x]/(x^2)` as a one-loop quiver.
pub fn dual_numbers(field: FieldSpec) -> Result<Algebra> {
    let mut q = Quiver::new();
    q.add_vertex("1")?;
    q.add_arrow("x", "1", "1")?;
    let r = Relation::from_words(&q, field, &[(1, "x.x")])?;
    build_algebra(field, q, vec![r])
}

/// The ten-vertex triangle with commutative squares and zero relations
/// along the bottom row; its 2-cluster tilting subcategory has 20
/// indecomposables.
pub fn triangle(field: FieldSpec) -> Result<Algebra> {
    let mut q = Quiver::new();
    for v in 1..=10 {
        q.add_vertex(&v.to_string())?;
    }
    for (name, s, t) in [
        ("a", "4", "7"),
        ("b", "7", "9"),
        ("c", "9", "10"),
        ("e", "10", "8"),
        ("f", "8", "5"),
        ("g", "5", "1"),
        ("h", "7", "3"),
        ("i", "3", "6"),
        ("j", "6", "2"),
        ("k", "9", "6"),
        ("l", "6", "8"),
        ("m", "2", "5"),
    ] {
        q.add_arrow(name, s, t)?;
    }
    let rels = [
        vec![(1, "c.e"), (-1, "k.l")],
        vec![(1, "b.k"), (-1, "h.i")],
        vec![(1, "l.f"), (-1, "j.m")],
        vec![(1, "a.h")],
        vec![(1, "i.j")],
        vec![(1, "m.g")],
    ]
    .iter()
    .map(|t| Relation::from_words(&q, field, t))
    .collect::<Result<Vec<_>>>()?;
    build_algebra(field, q, rels)
}

/// Vertices of the subcategory `X` inside the 2-cluster tilting subcategory
/// of [`triangle`], by radical-series label.
pub const TRIANGLE_X: [&str; 10] =
    ["1", "8/5/1", "10/8/5/1", "9/6,10/2,8/5", "4/7/9/10", "6/2,8/5", "6/2", "9/6/2", "4/7/9", "4/7"];

/// The 20 indecomposables of the 2-cluster tilting subcategory of [`triangle`].
pub const TRIANGLE_F: [&str; 20] = [
    "10/8/5/1",
    "8/5/1",
    "9/6,10/2,8/5",
    "5/1",
    "6/2,8/5",
    "7/3,9/6,10/8",
    "1",
    "2/5",
    "3/6/8",
    "4/7/9/10",
    "9/6/2",
    "6/2",
    "7/3,9/6",
    "2",
    "3/6",
    "4/7/9",
    "7/3",
    "3",
    "4/7",
    "4",
];

/// Nakayama algebras `A_n / rad^l` with `l | n - 1`; each is
/// `2(n-1)/l`-representation finite.
pub fn nakayama_family() -> Vec<(usize, usize)> {
    vec![(3, 2), (4, 3), (5, 4), (5, 2)]
}
