#![allow(dead_code)]

use std::sync::OnceLock;

use hart::approx::Subcat;
use hart::artheory::{generate_ct_from_injectives, verify_d_cluster_tilting, CtCategory};
use hart::fixtures::{triangle, TRIANGLE_X};
use hart::*;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub struct Triangle {
    pub ct: CtCategory,
    pub x: Subcat,
}

impl Triangle {
    pub fn f(&self) -> &Subcat {
        &self.ct.sub
    }
}

pub fn tri() -> &'static Triangle {
    static T: OnceLock<Triangle> = OnceLock::new();
    T.get_or_init(|| {
        let alg = triangle(FieldSpec::Prime(101)).unwrap();
        let f = generate_ct_from_injectives(&alg, 2, 100).unwrap();
        let ct = verify_d_cluster_tilting(&f, 2, &[]).unwrap();
        let xi: Vec<usize> = TRIANGLE_X.iter().map(|l| f.by_label(l).unwrap()).collect();
        let x = f.restrict("X", &xi);
        Triangle { ct, x }
    })
}

pub fn scalar(f: FieldSpec, rng: &mut ChaCha8Rng) -> Scalar {
    let n = match f.order() {
        Some(p) => rng.gen_range(0..p) as i64,
        None => rng.gen_range(-3..=3),
    };
    f.from_i64(n)
}

pub fn nonzero(f: FieldSpec, rng: &mut ChaCha8Rng) -> Scalar {
    loop {
        let s = scalar(f, rng);
        if !s.is_zero() {
            return s;
        }
    }
}

pub fn matrix(f: FieldSpec, rows: usize, cols: usize, rng: &mut ChaCha8Rng) -> Matrix {
    let e: Vec<Scalar> = (0..rows * cols).map(|_| scalar(f, rng)).collect();
    Matrix::from_entries(f, rows, cols, &e)
}

pub fn invertible(f: FieldSpec, n: usize, rng: &mut ChaCha8Rng) -> Matrix {
    loop {
        let m = matrix(f, n, n, rng);
        if m.is_invertible() {
            return m;
        }
    }
}

/// A random module isomorphic to `m`, with the isomorphism `m -> m'`.
pub fn conjugate(m: &Representation, rng: &mut ChaCha8Rng) -> (Representation, ModMorphism) {
    let alg = m.alg();
    let f = m.field();
    let g: Vec<Matrix> = m.dims().iter().map(|&n| invertible(f, n, rng)).collect();
    let maps = alg
        .quiver()
        .arrows()
        .iter()
        .enumerate()
        .map(|(a, arr)| g[arr.target].mul(m.map(a)).mul(&g[arr.source].inverse().unwrap()))
        .collect();
    let m2 = Representation::new(alg, m.dims().to_vec(), maps).unwrap();
    let iso = ModMorphism::new(m, &m2, g).unwrap();
    (m2, iso)
}

/// A random element of `Hom(m, n)`.
pub fn hom(m: &Representation, n: &Representation, rng: &mut ChaCha8Rng) -> ModMorphism {
    let basis = hart::reps::hom_basis(m, n);
    let c: Vec<Scalar> = basis.iter().map(|_| scalar(m.field(), rng)).collect();
    ModMorphism::combination(m, n, &basis, &c)
}
