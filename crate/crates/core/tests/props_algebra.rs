mod common;

use common::{conjugate, hom, matrix};
use hart::fixtures::{dual_numbers, linear_a, triangle};
use hart::presentation::projective_at;
use hart::reps::{cokernel, decompose, direct_sum, hom_dim, image, is_indecomposable, is_isomorphic, kernel};
use hart::*;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn field_strategy() -> impl Strategy<Value = FieldSpec> {
    prop_oneof![Just(FieldSpec::Prime(2)), Just(FieldSpec::Prime(7)), Just(FieldSpec::Rationals)]
}

fn matrix_strategy() -> impl Strategy<Value = Matrix> {
    (field_strategy(), 0usize..6, 0usize..6, any::<u64>()).prop_map(|(f, r, c, seed)| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut m = matrix(f, r, c, &mut rng);
        // Thin out entries so low ranks turn up.
        for i in 0..r {
            for j in 0..c {
                if rng.gen_bool(0.4) {
                    m.set(i, j, f.zero());
                }
            }
        }
        m
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn rank_of_transpose(m in matrix_strategy()) {
        prop_assert_eq!(m.rank(), m.transpose().rank());
    }

    #[test]
    fn rank_plus_nullity(m in matrix_strategy()) {
        let k = m.kernel_basis();
        prop_assert_eq!(k.cols() + m.rank(), m.cols());
        prop_assert_eq!(k.rank(), k.cols());
        prop_assert!(m.mul(&k).is_zero());
    }

    #[test]
    fn solve_agrees_with_augmented_rank(m in matrix_strategy(), seed in any::<u64>(), in_span in any::<bool>()) {
        let f = m.field();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let b = if in_span {
            m.mul(&matrix(f, m.cols(), 1, &mut rng))
        } else {
            matrix(f, m.rows(), 1, &mut rng)
        };
        let aug = Matrix::hstack(f, m.rows(), &[&m, &b]);
        match m.solve(&b).unwrap() {
            Some(x) => {
                prop_assert_eq!(m.mul(&x), b);
                prop_assert_eq!(aug.rank(), m.rank());
            }
            None => prop_assert!(aug.rank() > m.rank()),
        }
    }
}

fn small_algebras(f: FieldSpec) -> Vec<Algebra> {
    vec![linear_a(f, 3, 0).unwrap(), linear_a(f, 3, 2).unwrap(), dual_numbers(f).unwrap()]
}

/// A random module with at most `max_total` basis vectors satisfying the relations.
fn random_module(alg: &Algebra, max_total: usize, rng: &mut ChaCha8Rng) -> Representation {
    let f = alg.field();
    loop {
        let mut dims = vec![0; alg.num_vertices()];
        let total = rng.gen_range(0..=max_total);
        for _ in 0..total {
            let v = rng.gen_range(0..dims.len());
            dims[v] += 1;
        }
        let maps = alg
            .quiver()
            .arrows()
            .iter()
            .map(|a| matrix(f, dims[a.target], dims[a.source], rng))
            .collect();
        if let Ok(m) = Representation::new(alg, dims, maps) {
            return m;
        }
    }
}

/// Counts module maps `m -> n` over F_2 by trying every tuple of matrices.
fn brute_force_hom_count(m: &Representation, n: &Representation) -> u64 {
    let f = m.field();
    let nv = m.dims().len();
    let shapes: Vec<(usize, usize)> = (0..nv).map(|v| (n.dim_at(v), m.dim_at(v))).collect();
    let bits: usize = shapes.iter().map(|(r, c)| r * c).sum();
    let arrows = m.alg().quiver().arrows().to_vec();
    let mut count = 0;
    for mask in 0u64..(1 << bits) {
        let mut off = 0;
        let g: Vec<Matrix> = shapes
            .iter()
            .map(|&(r, c)| {
                let e: Vec<Scalar> = (0..r * c).map(|k| f.from_i64(((mask >> (off + k)) & 1) as i64)).collect();
                off += r * c;
                Matrix::from_entries(f, r, c, &e)
            })
            .collect();
        let ok = arrows
            .iter()
            .enumerate()
            .all(|(a, arr)| g[arr.target].mul(m.map(a)) == n.map(a).mul(&g[arr.source]));
        if ok {
            count += 1;
        }
    }
    count
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(120))]

    #[test]
    fn hom_dim_matches_brute_force_over_f2(which in 0usize..3, seed in any::<u64>()) {
        let alg = small_algebras(FieldSpec::Prime(2)).swap_remove(which);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = random_module(&alg, 4, &mut rng);
        let n = random_module(&alg, 4, &mut rng);
        prop_assert_eq!(1u64 << hom_dim(&m, &n), brute_force_hom_count(&m, &n));
    }

    #[test]
    fn image_is_kernel_of_cokernel(which in 0usize..3, p in prop_oneof![Just(2u64), Just(5)], seed in any::<u64>()) {
        let alg = small_algebras(FieldSpec::Prime(p)).swap_remove(which);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = random_module(&alg, 5, &mut rng);
        let n = random_module(&alg, 5, &mut rng);
        let g = hom(&m, &n, &mut rng);
        let (im, _, _) = image(&g);
        let (_, c) = cokernel(&g);
        let (kc, _) = kernel(&c);
        prop_assert!(is_isomorphic(&im, &kc).unwrap());
        let (k, _) = kernel(&g);
        for v in 0..alg.num_vertices() {
            prop_assert_eq!(k.dim_at(v) + g.at(v).rank(), m.dim_at(v));
        }
    }

    #[test]
    fn decomposition_preserves_dimensions(which in 0usize..3, seed in any::<u64>()) {
        let alg = small_algebras(FieldSpec::Prime(3)).swap_remove(which);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = random_module(&alg, 5, &mut rng);
        let parts = decompose(&m).unwrap();
        let mut dims = vec![0; alg.num_vertices()];
        for (s, mult) in &parts {
            prop_assert!(is_indecomposable(s).unwrap());
            prop_assert!(hart::reps::local_end(s).is_ok());
            for (v, d) in s.dims().iter().enumerate() {
                dims[v] += d * mult;
            }
        }
        prop_assert_eq!(dims, m.dims().to_vec());
    }
}

#[test]
fn krull_schmidt_on_shuffled_sums() {
    let alg = triangle(FieldSpec::Prime(101)).unwrap();
    let pieces: Vec<Representation> = (0..10).map(|v| projective_at(&alg, v)).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..6 {
        let mut chosen: Vec<usize> = (0..4).map(|_| rng.gen_range(0..pieces.len())).collect();
        let sum = direct_sum(&alg, &chosen.iter().map(|&i| pieces[i].clone()).collect::<Vec<_>>()).module;
        let (mixed, _) = conjugate(&sum, &mut rng);
        let found = decompose(&mixed).unwrap();
        let mut got: Vec<usize> = Vec::new();
        for (s, mult) in found {
            let i = pieces.iter().position(|p| is_isomorphic(p, &s).unwrap()).expect("known summand");
            got.extend(std::iter::repeat_n(i, mult));
        }
        got.sort_unstable();
        chosen.sort_unstable();
        assert_eq!(got, chosen);
    }
}

#[test]
fn projective_dimensions_add_up() {
    for f in [FieldSpec::Prime(2), FieldSpec::Rationals] {
        let mut algs = small_algebras(f);
        algs.push(triangle(f).unwrap());
        for alg in algs {
            let total: usize = (0..alg.num_vertices()).map(|v| projective_at(&alg, v).total_dim()).sum();
            assert_eq!(total, alg.dim());
        }
    }
}

#[test]
fn relations_vanish_on_constructed_modules() {
    let alg = triangle(FieldSpec::Prime(101)).unwrap();
    let mut mods = Vec::new();
    for v in 0..alg.num_vertices() {
        mods.push(projective_at(&alg, v));
        mods.push(injective_at(&alg, v));
        mods.push(Representation::simple(&alg, v));
    }
    for m in &mods {
        for r in alg.relations() {
            let mut acc: Option<Matrix> = None;
            for (c, w) in &r.terms {
                let t = m.path_matrix(w).scale(c);
                acc = Some(match acc {
                    Some(a) => a.add(&t),
                    None => t,
                });
            }
            assert!(acc.unwrap().is_zero(), "{} violates {}", m.label(), r.display(alg.quiver()));
        }
    }
}

#[test]
fn opposite_is_an_involution() {
    let mut algs = small_algebras(FieldSpec::Prime(5));
    algs.push(triangle(FieldSpec::Prime(5)).unwrap());
    for alg in algs {
        let back = alg.opposite().opposite();
        assert_eq!(back.quiver(), alg.quiver());
        assert_eq!(back.dim(), alg.dim());
        assert_eq!(back.relations(), alg.relations());
    }
}
