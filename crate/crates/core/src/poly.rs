//! Univariate polynomials over the ground field, just enough to find
//! eigenvalues: minimal polynomials of matrices and their roots in `k`.
//! Coefficients are stored lowest degree first.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;

use crate::field::{FieldSpec, Scalar};
use crate::linalg::Matrix;

pub(crate) type Poly = Vec<Scalar>;

fn trim(mut f: Poly) -> Poly {
    while f.last().is_some_and(|c| c.is_zero()) {
        f.pop();
    }
    f
}

fn monic(f: Poly) -> Poly {
    let f = trim(f);
    match f.last() {
        Some(l) => {
            let inv = l.inv().unwrap();
            f.iter().map(|c| c * &inv).collect()
        }
        None => f,
    }
}

/// Minimal polynomial of a square matrix, monic.
pub(crate) fn min_poly(m: &Matrix) -> Poly {
    let field = m.field();
    let n = m.rows();
    let mut powers: Vec<Vec<Scalar>> = vec![Matrix::identity(field, n).entries()];
    let mut cur = Matrix::identity(field, n);
    loop {
        cur = cur.mul(m);
        let target = cur.entries();
        let k = powers.len();
        let a = Matrix::from_fn(field, n * n, k, |i, j| powers[j][i].clone());
        let b = Matrix::column_vector(field, &target);
        if let Ok(Some(x)) = a.solve(&b) {
            let mut f: Poly = (0..k).map(|i| -&x.get(i, 0)).collect();
            f.push(field.one());
            return f;
        }
        powers.push(target);
    }
}

fn eval(f: &[Scalar], x: &Scalar) -> Scalar {
    let mut acc = x.field().zero();
    for c in f.iter().rev() {
        acc = &(&acc * x) + c;
    }
    acc
}

#[cfg(test)]
pub(crate) fn eval_matrix(f: &[Scalar], m: &Matrix) -> Matrix {
    let field = m.field();
    let n = m.rows();
    let mut acc = Matrix::zero(field, n, n);
    for c in f.iter().rev() {
        acc = acc.mul(m).add(&Matrix::identity(field, n).scale(c));
    }
    acc
}

fn poly_rem(a: &[Scalar], b: &[Scalar]) -> Poly {
    let b = trim(b.to_vec());
    let mut r = trim(a.to_vec());
    let lead_inv = b.last().expect("division by zero polynomial").inv().unwrap();
    while r.len() >= b.len() {
        let shift = r.len() - b.len();
        let c = r.last().unwrap() * &lead_inv;
        for (i, bc) in b.iter().enumerate() {
            r[shift + i] = &r[shift + i] - &(&c * bc);
        }
        r = trim(r);
    }
    r
}

fn poly_div(a: &[Scalar], b: &[Scalar]) -> Poly {
    let b = trim(b.to_vec());
    let mut r = trim(a.to_vec());
    if r.len() < b.len() {
        return Vec::new();
    }
    let field = b[0].field();
    let mut q = vec![field.zero(); r.len() - b.len() + 1];
    let lead_inv = b.last().unwrap().inv().unwrap();
    while r.len() >= b.len() {
        let shift = r.len() - b.len();
        let c = r.last().unwrap() * &lead_inv;
        for (i, bc) in b.iter().enumerate() {
            r[shift + i] = &r[shift + i] - &(&c * bc);
        }
        q[shift] = c;
        r = trim(r);
    }
    q
}

fn poly_gcd(a: &[Scalar], b: &[Scalar]) -> Poly {
    let (mut a, mut b) = (trim(a.to_vec()), trim(b.to_vec()));
    while !b.is_empty() {
        let r = poly_rem(&a, &b);
        a = b;
        b = r;
    }
    monic(a)
}

fn poly_mul_mod(a: &[Scalar], b: &[Scalar], m: &[Scalar]) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let field = a[0].field();
    let mut out = vec![field.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = &out[i + j] + &(x * y);
        }
    }
    poly_rem(&out, m)
}

fn poly_pow_mod(base: &[Scalar], mut e: u64, m: &[Scalar]) -> Poly {
    let field = m[0].field();
    let mut acc = vec![field.one()];
    let mut b = poly_rem(base, m);
    while e > 0 {
        if e & 1 == 1 {
            acc = poly_mul_mod(&acc, &b, m);
        }
        b = poly_mul_mod(&b, &b, m);
        e >>= 1;
    }
    acc
}

/// Distinct roots of `f` in the ground field.
pub(crate) fn roots<R: Rng>(f: &[Scalar], rng: &mut R) -> Vec<Scalar> {
    let f = monic(f.to_vec());
    if f.len() <= 1 {
        return Vec::new();
    }
    let field = f[0].field();
    let mut out = match field {
        FieldSpec::Prime(p) if p <= 1024 => (0..p as i64)
            .map(|x| field.from_i64(x))
            .filter(|x| eval(&f, x).is_zero())
            .collect(),
        FieldSpec::Prime(p) => {
            // split off the product of linear factors, then split it randomly
            let x = vec![field.zero(), field.one()];
            let mut xp = poly_pow_mod(&x, p, &f);
            while xp.len() < 2 {
                xp.push(field.zero());
            }
            xp[1] = &xp[1] - &field.one();
            let g = poly_gcd(&f, &xp);
            let mut acc = Vec::new();
            split_linear(g, p, rng, &mut acc);
            acc
        }
        FieldSpec::Rationals => rational_roots(&f),
    };
    out.sort_by_key(|s| s.to_string());
    out.dedup();
    out
}

fn split_linear<R: Rng>(g: Poly, p: u64, rng: &mut R, out: &mut Vec<Scalar>) {
    let g = monic(g);
    let deg = g.len().saturating_sub(1);
    if deg == 0 {
        return;
    }
    if deg == 1 {
        out.push(-&g[0]);
        return;
    }
    let field = g[0].field();
    loop {
        let a = field.from_i64(rng.gen_range(0..p as i64));
        let shifted = vec![a, field.one()];
        let mut h = poly_pow_mod(&shifted, (p - 1) / 2, &g);
        if h.is_empty() {
            h.push(field.zero());
        }
        h[0] = &h[0] - &field.one();
        let d = poly_gcd(&g, &h);
        let dd = d.len().saturating_sub(1);
        if dd > 0 && dd < deg {
            let rest = poly_div(&g, &d);
            split_linear(d, p, rng, out);
            split_linear(rest, p, rng, out);
            return;
        }
    }
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    let mut out = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= n {
        if (&n % &d).is_zero() {
            out.push(d.clone());
            out.push(&n / &d);
        }
        d += 1;
    }
    out
}

fn rational_roots(f: &[Scalar]) -> Vec<Scalar> {
    let qs: Vec<BigRational> = f
        .iter()
        .map(|c| match c {
            Scalar::Q(q) => q.clone(),
            _ => unreachable!(),
        })
        .collect();
    let lcm = qs.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let mut ints: Vec<BigInt> = qs.iter().map(|q| (q * BigRational::from_integer(lcm.clone())).to_integer()).collect();
    let mut out = Vec::new();
    while ints.first().is_some_and(|c| c.is_zero()) {
        ints.remove(0);
        if !out.contains(&Scalar::Q(BigRational::zero())) {
            out.push(Scalar::Q(BigRational::zero()));
        }
    }
    if ints.len() <= 1 {
        return out;
    }
    for num in divisors(&ints[0]) {
        for den in divisors(ints.last().unwrap()) {
            for sign in [1, -1] {
                let x = Scalar::Q(BigRational::new(&num * BigInt::from(sign), den.clone()));
                if eval(f, &x).is_zero() && !out.contains(&x) {
                    out.push(x);
                }
            }
        }
    }
    out
}
