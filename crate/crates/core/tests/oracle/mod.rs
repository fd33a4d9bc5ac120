//! Exhaustive search over F_2 for representations of linear A_n: no linear
//! algebra beyond bit tricks, so it shares nothing with the library.

use hart::{Representation, Scalar};

/// An F_2 matrix `rows x cols` stored as column bitmasks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bits {
    pub rows: usize,
    pub cols: Vec<u8>,
}

impl Bits {
    fn apply(&self, v: u8) -> u8 {
        let mut out = 0;
        for (j, c) in self.cols.iter().enumerate() {
            if v >> j & 1 == 1 {
                out ^= c;
            }
        }
        out
    }

    fn mul(&self, b: &Bits) -> Bits {
        Bits { rows: self.rows, cols: b.cols.iter().map(|&c| self.apply(c)).collect() }
    }

    fn rank(&self) -> usize {
        rank(self.cols.iter().map(|&c| c as u64).collect())
    }
}

fn rank(mut v: Vec<u64>) -> usize {
    let mut r = 0;
    for bit in 0..64 {
        if let Some(p) = (r..v.len()).find(|&i| v[i] >> bit & 1 == 1) {
            v.swap(r, p);
            for i in 0..v.len() {
                if i != r && v[i] >> bit & 1 == 1 {
                    v[i] ^= v[r];
                }
            }
            r += 1;
        }
    }
    r
}

/// A representation of `1 -> 2 -> ... -> n`.
#[derive(Clone, Debug)]
pub struct Rep {
    pub dims: Vec<usize>,
    pub maps: Vec<Bits>,
}

impl Rep {
    pub fn total(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn from_module(m: &Representation) -> Rep {
        let dims = m.dims().to_vec();
        let maps = (0..dims.len() - 1)
            .map(|a| {
                let mat = m.map(a);
                let cols = (0..mat.cols())
                    .map(|j| (0..mat.rows()).fold(0u8, |acc, i| acc | (u8::from(is_one(&mat.get(i, j))) << i)))
                    .collect();
                Bits { rows: mat.rows(), cols }
            })
            .collect();
        Rep { dims, maps }
    }

    fn sum(&self, other: &Rep) -> Rep {
        let dims: Vec<usize> = self.dims.iter().zip(&other.dims).map(|(a, b)| a + b).collect();
        let maps = (0..dims.len() - 1)
            .map(|a| {
                let shift = self.dims[a + 1];
                let mut cols = self.maps[a].cols.clone();
                cols.extend(other.maps[a].cols.iter().map(|c| c << shift));
                Bits { rows: dims[a + 1], cols }
            })
            .collect();
        Rep { dims, maps }
    }
}

fn is_one(s: &Scalar) -> bool {
    !s.is_zero()
}

/// Every tuple of matrices of the given shapes, as a flat bit pattern.
fn tuples(shapes: Vec<(usize, usize)>) -> impl Iterator<Item = Vec<Bits>> {
    let bits: usize = shapes.iter().map(|(r, c)| r * c).sum();
    (0u64..1 << bits).map(move |mask| {
        let mut off = 0;
        shapes
            .iter()
            .map(|&(r, c)| {
                let cols = (0..c)
                    .map(|_| {
                        let col = ((mask >> off) & ((1 << r) - 1)) as u8;
                        off += r;
                        col
                    })
                    .collect();
                Bits { rows: r, cols }
            })
            .collect()
    })
}

/// All module maps `x -> y`.
pub fn homs(x: &Rep, y: &Rep) -> Vec<Vec<Bits>> {
    let shapes: Vec<(usize, usize)> = x.dims.iter().zip(&y.dims).map(|(&a, &b)| (b, a)).collect();
    tuples(shapes)
        .filter(|g| (0..x.maps.len()).all(|a| g[a + 1].mul(&x.maps[a]) == y.maps[a].mul(&g[a])))
        .collect()
}

fn flat(g: &[Bits]) -> u64 {
    let mut out = 0u64;
    let mut off = 0;
    for m in g {
        for &c in &m.cols {
            out |= (c as u64) << off;
            off += m.rows;
        }
    }
    out
}

fn compose(g: &[Bits], f: &[Bits]) -> Vec<Bits> {
    g.iter().zip(f).map(|(a, b)| a.mul(b)).collect()
}

fn is_iso_map(g: &[Bits]) -> bool {
    g.iter().all(|m| m.rows == m.cols.len() && m.rank() == m.rows)
}

pub fn isomorphic(x: &Rep, y: &Rep) -> bool {
    x.dims == y.dims && homs(x, y).iter().any(|g| is_iso_map(g))
}

/// Subspaces of F_2^k as membership masks over the 2^k vectors.
fn subspaces(k: usize) -> Vec<u32> {
    let mut seen = vec![1u32];
    let mut frontier = vec![1u32];
    while let Some(s) = frontier.pop() {
        for v in 0..(1u32 << k) {
            if s >> v & 1 == 1 {
                continue;
            }
            let mut t = s;
            for u in 0..(1u32 << k) {
                if s >> u & 1 == 1 {
                    t |= 1 << (u ^ v);
                }
            }
            if !seen.contains(&t) {
                seen.push(t);
                frontier.push(t);
            }
        }
    }
    seen
}

fn dim_of(s: u32) -> usize {
    s.count_ones().trailing_zeros() as usize
}

/// Tuples of subspaces stable under the maps.
fn subreps(m: &Rep) -> Vec<Vec<u32>> {
    let mut out: Vec<Vec<u32>> = vec![vec![]];
    for (v, &d) in m.dims.iter().enumerate() {
        let mut next = Vec::new();
        for partial in &out {
            for s in subspaces(d) {
                if v > 0 {
                    let prev = partial[v - 1];
                    let stable = (0..32u32).filter(|&u| prev >> u & 1 == 1).all(|u| s >> m.maps[v - 1].apply(u as u8) & 1 == 1);
                    if !stable {
                        continue;
                    }
                }
                let mut p = partial.clone();
                p.push(s);
                next.push(p);
            }
        }
        out = next;
    }
    out
}

pub fn is_indecomposable(m: &Rep) -> bool {
    if m.total() == 0 {
        return false;
    }
    let subs = subreps(m);
    for u in &subs {
        if u.iter().all(|&s| s == 1) {
            continue;
        }
        for w in &subs {
            if w.iter().all(|&s| s == 1) {
                continue;
            }
            let complementary = u.iter().zip(w).zip(&m.dims).all(|((&a, &b), &d)| a & b == 1 && dim_of(a) + dim_of(b) == d);
            if complementary {
                return false;
            }
        }
    }
    true
}

fn dim_vectors(n: usize, max_total: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|p: Vec<usize>| {
                let used: usize = p.iter().sum();
                (0..=max_total - used).map(move |k| {
                    let mut q = p.clone();
                    q.push(k);
                    q
                })
            })
            .collect();
    }
    out.retain(|d| d.iter().sum::<usize>() > 0);
    out
}

fn reps_with_dims(dims: &[usize]) -> Vec<Rep> {
    let shapes: Vec<(usize, usize)> = (0..dims.len() - 1).map(|a| (dims[a + 1], dims[a])).collect();
    tuples(shapes).map(|maps| Rep { dims: dims.to_vec(), maps }).collect()
}

/// One representative of each indecomposable of total dimension `<= max_total`.
pub fn indecomposables(n: usize, max_total: usize) -> Vec<Rep> {
    let mut out: Vec<Rep> = Vec::new();
    for dims in dim_vectors(n, max_total) {
        for r in reps_with_dims(&dims) {
            if is_indecomposable(&r) && !out.iter().any(|o| isomorphic(o, &r)) {
                out.push(r);
            }
        }
    }
    out
}

/// `dim rad(x, y) / rad^2(x, y)` among the listed indecomposables.
pub fn irreducible_counts(ind: &[Rep]) -> Vec<Vec<usize>> {
    let n = ind.len();
    let rad: Vec<Vec<Vec<Vec<Bits>>>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| homs(&ind[i], &ind[j]).into_iter().filter(|g| !(i == j && is_iso_map(g))).collect())
                .collect()
        })
        .collect();
    let mut out = vec![vec![0; n]; n];
    for i in 0..n {
        for j in 0..n {
            let rad_dim = rank(rad[i][j].iter().map(|g| flat(g)).collect());
            let mut prods = Vec::new();
            for z in 0..n {
                for f in &rad[i][z] {
                    for g in &rad[z][j] {
                        prods.push(flat(&compose(g, f)));
                    }
                }
            }
            out[i][j] = rad_dim - rank(prods);
        }
    }
    out
}

/// Searches for a non-split `0 -> x -> e -> z -> 0` with `e` isomorphic to
/// `middle`; `e` runs over every block upper triangular extension.
pub fn find_ses(x: &Rep, z: &Rep, middle: &Rep) -> bool {
    let split = x.sum(z);
    if isomorphic(&split, middle) {
        return false;
    }
    let shapes: Vec<(usize, usize)> = (0..x.maps.len()).map(|a| (x.dims[a + 1], z.dims[a])).collect();
    tuples(shapes).any(|c| {
        let maps = (0..x.maps.len())
            .map(|a| {
                let mut cols = x.maps[a].cols.clone();
                let shift = x.dims[a + 1];
                for (k, zc) in z.maps[a].cols.iter().enumerate() {
                    cols.push(c[a].cols[k] | (zc << shift));
                }
                Bits { rows: x.dims[a + 1] + z.dims[a + 1], cols }
            })
            .collect();
        let e = Rep { dims: split.dims.clone(), maps };
        isomorphic(&e, middle)
    })
}

pub fn direct_sum(parts: &[&Rep], n: usize) -> Rep {
    let mut acc = Rep { dims: vec![0; n], maps: (0..n - 1).map(|_| Bits { rows: 0, cols: vec![] }).collect() };
    for p in parts {
        acc = acc.sum(p);
    }
    acc
}
