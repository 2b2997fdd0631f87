//! Elementary exact arithmetic: factorials, Bernoulli numbers, divisor sums,
//! Kronecker symbols and class numbers of imaginary quadratic fields.

use std::sync::Mutex;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, j| acc * BigInt::from(j))
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for j in 0..k {
        acc = acc * BigInt::from(n - j) / BigInt::from(j + 1);
    }
    acc
}

/// Rising factorial (a)_n for an integer start.
pub fn pochhammer_int(a: i64, n: u64) -> BigInt {
    (0..n as i64).fold(BigInt::one(), |acc, j| acc * BigInt::from(a + j))
}

static BERNOULLI: Mutex<Vec<BigRational>> = Mutex::new(Vec::new());

/// Bernoulli number B_n with B_1 = -1/2.
pub fn bernoulli(n: usize) -> BigRational {
    let mut cache = BERNOULLI.lock().unwrap_or_else(|e| e.into_inner());
    if cache.is_empty() {
        cache.push(BigRational::one());
    }
    while cache.len() <= n {
        let m = cache.len();
        // sum_{j<m} C(m+1, j) B_j = -(m+1) B_m
        let mut acc = BigRational::zero();
        for (j, b) in cache.iter().enumerate() {
            acc += BigRational::from_integer(binomial(m as u64 + 1, j as u64)) * b;
        }
        let bm = -acc / BigRational::from_integer(BigInt::from(m + 1));
        cache.push(bm);
    }
    cache[n].clone()
}

/// ζ(2n) / π^{2n} as an exact rational.
pub fn zeta_even_over_pi(two_n: u32) -> BigRational {
    assert!(two_n >= 2 && two_n % 2 == 0, "even positive argument expected");
    let n = two_n / 2;
    let b = bernoulli(two_n as usize);
    let sign = if n % 2 == 1 { BigInt::one() } else { -BigInt::one() };
    let pow2 = BigInt::one() << (two_n as usize);
    BigRational::new(sign * pow2, BigInt::from(2) * factorial(two_n as u64)) * b
}

pub fn sigma(n: u64, k: u32) -> BigInt {
    let mut acc = BigInt::zero();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            acc += BigInt::from(d).pow(k);
            let e = n / d;
            if e != d {
                acc += BigInt::from(e).pow(k);
            }
        }
        d += 1;
    }
    acc
}

pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d != n / d {
                large.push(n / d);
            }
        }
        d += 1;
    }
    large.reverse();
    small.extend(large);
    small
}

pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && factorize(n).len() == 1 && factorize(n)[0].1 == 1
}

/// Kronecker symbol (a/n) for n > 0.
pub fn kronecker(a: i64, n: u64) -> i32 {
    if n == 0 {
        return if a.abs() == 1 { 1 } else { 0 };
    }
    let mut result = 1i32;
    let mut n = n;

    while n % 2 == 0 {
        n /= 2;
        if a % 2 == 0 {
            return 0;
        }
        let r = a.rem_euclid(8);
        if r == 3 || r == 5 {
            result = -result;
        }
    }
    // Jacobi symbol (a/n), n odd
    let mut a = a.rem_euclid(n as i64) as u64;
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            let r = n % 8;
            if r == 3 || r == 5 {
                result = -result;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            result = -result;
        }
        a %= n;
    }
    if n == 1 {
        result
    } else {
        0
    }
}

/// Character χ_{-D}(n) of the imaginary quadratic field of discriminant -D.
pub fn chi_neg(d: u64, n: u64) -> i32 {
    kronecker(-(d as i64), n)
}

/// ρ(n) = Σ_{m|n} χ_{-D}(m), the number of ideals of norm n.
pub fn rho(d: u64, n: u64) -> i64 {
    divisors(n).into_iter().map(|m| chi_neg(d, m) as i64).sum()
}

/// Class number of discriminant -D by counting reduced binary quadratic forms.
pub fn class_number(d: u64) -> u64 {
    reduced_forms(d).len() as u64
}

/// Reduced primitive forms (a, b, c) of discriminant -D.
pub fn reduced_forms(d: u64) -> Vec<(i64, i64, i64)> {
    let disc = -(d as i64);
    let mut out = Vec::new();
    let mut a = 1i64;
    while 3 * a * a <= d as i64 {
        for b in (-a + 1)..=a {
            let num = b * b - disc;
            if num % (4 * a) != 0 {
                continue;
            }
            let c = num / (4 * a);
            if c >= a && a.gcd(&b.abs()).gcd(&c) == 1 && !(b < 0 && a == c) {
                out.push((a, b, c));
            }
        }
        a += 1;
    }
    out
}

/// Number of ideals of norm n, counted as representations of n by a full set
/// of reduced forms divided by the number of units.
pub fn ideal_count_by_forms(d: u64, n: u64) -> u64 {
    let n = n as i64;
    let mut total = 0u64;
    for (a, b, c) in reduced_forms(d) {
        // completing the square: y² ≤ 4an/D and x² ≤ 4cn/D
        let ymax = ((4 * a * n) as f64 / d as f64).sqrt() as i64 + 1;
        let xmax = ((4 * c * n) as f64 / d as f64).sqrt() as i64 + 1;
        for y in -ymax..=ymax {
            for x in -xmax..=xmax {
                if a * x * x + b * x * y + c * y * y == n {
                    total += 1;
                }
            }
        }
    }
    total / unit_count(d)
}

/// Number of units of the ring of integers of Q(√-D).
pub fn unit_count(d: u64) -> u64 {
    match d {
        3 => 6,
        4 => 4,
        _ => 2,
    }
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_to_f64(r: &BigRational) -> f64 {
    let n = r.numer().to_f64().unwrap_or(f64::NAN);
    let d = r.denom().to_f64().unwrap_or(f64::NAN);
    if n.is_finite() && d.is_finite() {
        n / d
    } else {
        let shift = r.numer().bits() as i64 - r.denom().bits() as i64;
        let scaled = if shift > 0 {
            BigRational::new(r.numer().clone(), r.denom() << (shift as usize))
        } else {
            BigRational::new(r.numer() << ((-shift) as usize), r.denom().clone())
        };
        let n = scaled.numer().to_f64().unwrap_or(f64::NAN);
        let d = scaled.denom().to_f64().unwrap_or(f64::NAN);
        (n / d) * 2f64.powi(shift as i32)
    }
}

pub fn is_integer(r: &BigRational) -> bool {
    r.denom().is_one()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bernoulli_values() {
        assert_eq!(bernoulli(1), rat(-1, 2));
        assert_eq!(bernoulli(2), rat(1, 6));
        assert_eq!(bernoulli(12), rat(-691, 2730));
        assert!(bernoulli(7).is_zero());
    }

    #[test]
    fn zeta_even() {
        assert_eq!(zeta_even_over_pi(2), rat(1, 6));
        assert_eq!(zeta_even_over_pi(4), rat(1, 90));
        assert_eq!(zeta_even_over_pi(6), rat(1, 945));
    }

    #[test]
    fn class_numbers() {
        for (d, h) in [(3, 1), (4, 1), (7, 1), (11, 1), (15, 2), (23, 3), (47, 5), (71, 7), (163, 1)] {
            assert_eq!(class_number(d), h, "D={d}");
        }
    }

    #[test]
    fn kronecker_symbols() {
        assert_eq!(chi_neg(7, 2), 1);
        assert_eq!(chi_neg(7, 3), -1);
        assert_eq!(chi_neg(7, 7), 0);
        assert_eq!(chi_neg(23, 2), 1);
        assert_eq!(kronecker(5, 4), 1);
    }

    #[test]
    fn ideal_counts_agree_with_forms() {
        for d in [7u64, 23] {
            for n in 1..=30 {
                assert_eq!(rho(d, n), ideal_count_by_forms(d, n) as i64, "D={d} n={n}");
            }
        }
        assert_eq!(rho(7, 2), 2);
    }

    #[test]
    fn divisor_sums() {
        assert_eq!(sigma(12, 1), BigInt::from(28));
        assert_eq!(sigma(6, 3), BigInt::from(252));
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
    }
}
