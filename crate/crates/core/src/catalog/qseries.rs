//! Truncated integer power series in q.

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Product of two series, keeping degrees 0..=m.
pub fn mul(a: &[BigInt], b: &[BigInt], m: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); m + 1];
    for (i, x) in a.iter().enumerate().take(m + 1) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(m + 1 - i) {
            out[i + j] += x * y;
        }
    }
    out
}

pub fn pow(a: &[BigInt], e: u32, m: usize) -> Vec<BigInt> {
    let mut result = one(m);
    let mut base = a.to_vec();
    base.resize(m + 1, BigInt::zero());
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            result = mul(&result, &base, m);
        }
        base = mul(&base, &base, m);
        e >>= 1;
    }
    result
}

pub fn one(m: usize) -> Vec<BigInt> {
    let mut v = vec![BigInt::zero(); m + 1];
    v[0] = BigInt::one();
    v
}

/// Inverse of a series with constant term ±1.
pub fn inverse(a: &[BigInt], m: usize) -> Vec<BigInt> {
    let a0 = &a[0];
    assert!(a0.is_one() || (-a0).is_one(), "constant term must be a unit");
    let mut out = vec![BigInt::zero(); m + 1];
    out[0] = a0.clone();
    for n in 1..=m {
        let mut s = BigInt::zero();
        for k in 1..=n.min(a.len() - 1) {
            s += &a[k] * &out[n - k];
        }
        out[n] = -(s * a0);
    }
    out
}

/// Π_{n≥1} (1 - qⁿ) up to q^m, from Euler's pentagonal number theorem.
pub fn euler_product(m: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); m + 1];
    out[0] = BigInt::one();
    let mut k = 1usize;
    while k * (3 * k - 1) / 2 <= m {
        let sign = if k % 2 == 0 { BigInt::one() } else { -BigInt::one() };
        for g in [k * (3 * k - 1) / 2, k * (3 * k + 1) / 2] {
            if g <= m {
                out[g] += &sign;
            }
        }
        k += 1;
    }
    out
}

/// Π_{n≥1} (1 - q^{cn}) up to q^m.
pub fn euler_product_scaled(c: usize, m: usize) -> Vec<BigInt> {
    let base = euler_product(m / c);
    let mut out = vec![BigInt::zero(); m + 1];
    for (i, x) in base.into_iter().enumerate() {
        out[i * c] = x;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|x| BigInt::from(*x)).collect()
    }

    #[test]
    fn pentagonal() {
        assert_eq!(euler_product(12), ints(&[1, -1, -1, 0, 0, 1, 0, 1, 0, 0, 0, 0, -1]));
    }

    #[test]
    fn pentagonal_matches_naive_product() {
        let m = 30;
        let mut naive = one(m);
        for n in 1..=m {
            let mut f = one(m);
            f[n] = BigInt::from(-1);
            naive = mul(&naive, &f, m);
        }
        assert_eq!(euler_product(m), naive);
    }

    #[test]
    fn inverse_roundtrip() {
        let a = ints(&[1, 3, -2, 7, 0, 5]);
        let inv = inverse(&a, 5);
        assert_eq!(mul(&a, &inv, 5), one(5));
    }
}
