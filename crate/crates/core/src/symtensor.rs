//! Forms with values in 𝒫_m, the polynomials of degree at most m in X, with
//! SL₂ acting by ρ_m(γ)p(X) = (-cX+a)^m p((dX-b)/(-cX+a)).
//!
//! Components are stored in the X-power basis.

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::analytic::eval::{abs_f64, cpowi, eval_components, j_factor, mobius, Point};
use crate::arith::{binomial, factorial};
use crate::catalog;
use crate::coeffring::{Certainty, ExactCoeff, Scalar, DEFAULT_TOL};
use crate::error::{Error, Result};
use crate::maassops::{self, OpKind};
use crate::mfexp::{Expansion, TermKey, Q};
use crate::real::Real;

pub type Matrix = Vec<Vec<BigRational>>;

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_pow(a: &[BigRational], e: usize) -> Vec<BigRational> {
    (0..e).fold(vec![BigRational::one()], |acc, _| poly_mul(&acc, a))
}

/// Matrix of ρ_m(γ) in the basis 1, X, …, X^m; column j is the image of X^j.
pub fn rho_matrix(m: usize, g: &[BigRational; 4]) -> Matrix {
    let [a, b, c, d] = g.clone();
    let left = [a, -c];
    let right = [-b, d];
    let mut mat = vec![vec![BigRational::zero(); m + 1]; m + 1];
    for j in 0..=m {
        let col = poly_mul(&poly_pow(&left, m - j), &poly_pow(&right, j));
        for (i, x) in col.into_iter().enumerate() {
            mat[i][j] = x;
        }
    }
    mat
}

pub fn rho_matrix_int(m: usize, g: [i64; 4]) -> Matrix {
    let r = |x: i64| BigRational::from_integer(BigInt::from(x));
    rho_matrix(m, &[r(g[0]), r(g[1]), r(g[2]), r(g[3])])
}

pub fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.len();
    let mut out = vec![vec![BigRational::zero(); n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..n {
                out[i][j] += &a[i][k] * &b[k][j];
            }
        }
    }
    out
}

/// A 𝒫_m-valued expansion.
#[derive(Clone, Debug, PartialEq)]
pub struct VVExpansion<C: Scalar> {
    pub m: usize,
    pub weight: i64,
    pub components: Vec<Expansion<C>>,
}

impl<C: Scalar> VVExpansion<C> {
    pub fn new(m: usize, weight: i64, components: Vec<Expansion<C>>) -> Result<Self> {
        if components.len() != m + 1 {
            return Err(Error::BadParameter(format!(
                "𝒫_{m} needs {} components, got {}",
                m + 1,
                components.len()
            )));
        }
        let t0 = components[0].trunc();
        for c in &components {
            if c.weight() != weight {
                return Err(Error::WeightMismatch(weight.to_string(), c.weight().to_string()));
            }
            if c.trunc() != t0 {
                return Err(Error::Truncation("components must share a truncation".into()));
            }
        }
        Ok(VVExpansion { m, weight, components })
    }

    pub fn zero(m: usize, weight: i64, trunc: Option<Q>) -> Self {
        VVExpansion { m, weight, components: vec![Expansion::zero(weight, trunc); m + 1] }
    }

    pub fn trunc(&self) -> Option<Q> {
        self.components[0].trunc()
    }

    pub fn component(&self, j: usize) -> &Expansion<C> {
        &self.components[j]
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.m != other.m {
            return Err(Error::BadParameter("different symmetric powers".into()));
        }
        let comps = self
            .components
            .iter()
            .zip(&other.components)
            .map(|(a, b)| a.add(b))
            .collect::<Result<Vec<_>>>()?;
        Ok(VVExpansion { m: self.m, weight: self.weight, components: comps })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&-C::one()))
    }

    pub fn scale(&self, s: &C) -> Self {
        self.map(|f| f.scale(s))
    }

    fn map(&self, f: impl Fn(&Expansion<C>) -> Expansion<C>) -> Self {
        let components: Vec<_> = self.components.iter().map(f).collect();
        let weight = components[0].weight();
        VVExpansion { m: self.m, weight, components }
    }

    /// A vector-valued form vanishes iff every component does.
    pub fn zero_test(&self, tol: f64) -> (bool, Certainty) {
        let scale = self.components.iter().map(|c| c.scale_hint()).fold(1.0, f64::max);
        let mut cert = Certainty::Exact;
        let mut zero = true;
        for c in &self.components {
            let t = c.zero_test(scale, tol);
            cert = cert.and(t.certainty);
            zero &= t.zero;
        }
        (zero, cert)
    }

    pub fn is_zero(&self) -> bool {
        self.zero_test(DEFAULT_TOL).0
    }

    pub fn convert<D: Scalar>(&self, f: impl Fn(&C) -> D + Copy) -> VVExpansion<D> {
        VVExpansion {
            m: self.m,
            weight: self.weight,
            components: self.components.iter().map(|c| c.convert(f)).collect(),
        }
    }
}

/// Componentwise operator application.
pub fn vv_apply<C: Scalar>(op: OpKind, f: &VVExpansion<C>) -> Result<VVExpansion<C>> {
    if !op.accepts(f.weight) {
        return Err(Error::Domain(format!("{op} is not defined at weight {}", f.weight)));
    }
    let components = f
        .components
        .iter()
        .map(|c| maassops::apply(op, c))
        .collect::<Result<Vec<_>>>()?;
    Ok(VVExpansion { m: f.m, weight: op.weight_out(f.weight), components })
}

pub fn vv_apply_n<C: Scalar>(op: OpKind, f: &VVExpansion<C>, n: u32) -> Result<VVExpansion<C>> {
    let mut g = f.clone();
    for _ in 0..n {
        g = vv_apply(op, &g)?;
    }
    Ok(g)
}

type Poly<C> = Vec<Expansion<C>>;

fn expansion_poly_mul<C: Scalar>(a: &Poly<C>, b: &Poly<C>) -> Poly<C> {
    let mut out: Poly<C> = vec![Expansion::zero(0, None); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            let p = x.mul(y).expect("finite factors");
            out[i + j] = out[i + j].add(&p.retag(0)).expect("weight 0");
        }
    }
    out
}

/// e_{r,m-r}(τ)(X) = (-1)^{m-r}/r! · v^{r-m} (X-τ)^r (X-τ̄)^{m-r}, weight m - 2r.
pub fn e_poly<C: Scalar>(r: usize, m: usize) -> Result<VVExpansion<C>> {
    if r > m {
        return Err(Error::BadParameter(format!("e_(r,m-r) needs 0 ≤ r ≤ m, got r = {r}, m = {m}")));
    }
    let u = Expansion::from_terms(0, None, [(TermKey::one().with_u_pow(1), -C::one())]);
    let iv = Expansion::from_terms(0, None, [(TermKey::v(1), C::i())]);
    let one = Expansion::constant(0, C::one());
    // X - τ and X - τ̄ as polynomials in X
    let x_tau = vec![u.sub(&iv).unwrap(), one.clone()];
    let x_taubar = vec![u.add(&iv).unwrap(), one.clone()];
    let mut p: Poly<C> = vec![one];
    for _ in 0..r {
        p = expansion_poly_mul(&p, &x_tau);
    }
    for _ in 0..(m - r) {
        p = expansion_poly_mul(&p, &x_taubar);
    }
    let sign = if (m - r) % 2 == 0 { 1 } else { -1 };
    let c = C::from_rational(&BigRational::new(BigInt::from(sign), factorial(r as u64)));
    let weight = m as i64 - 2 * r as i64;
    let components = p
        .into_iter()
        .map(|e| e.scale(&c).mul_v_pow(r as i64 - m as i64).retag(weight))
        .collect();
    VVExpansion::new(m, weight, components)
}

/// E*_{m+2} = Σ_r 1/(r+1) · C(m,r) · e_{r,m-r} · R^r E₂*, truncated at M.
pub fn estar_vv(m: usize, trunc: i64) -> Result<VVExpansion<ExactCoeff>> {
    let e2 = catalog::e2star(trunc)?;
    let mut total: Option<VVExpansion<ExactCoeff>> = None;
    let mut rr = e2;
    for r in 0..=m {
        if r > 0 {
            rr = maassops::raise(&rr);
        }
        let e = e_poly::<ExactCoeff>(r, m)?;
        let c = ExactCoeff::from_rational(BigRational::new(
            binomial(m as u64, r as u64),
            BigInt::from(r as u64 + 1),
        ));
        let comps = e
            .components
            .iter()
            .map(|x| x.mul(&rr).map(|p| p.scale(&c)))
            .collect::<Result<Vec<_>>>()?;
        let term = VVExpansion::new(m, m as i64 + 2, comps)?;
        total = Some(match total {
            None => term,
            Some(t) => t.add(&term)?,
        });
    }
    Ok(total.expect("m ≥ 0 gives at least one term"))
}

/// f(τ + b) as an expansion (exact; frequencies must be integral).
pub fn translate<C: Scalar>(f: &Expansion<C>, b: i64) -> Result<Expansion<C>> {
    let mut out = Expansion::new(f.weight(), f.trunc()).with_level(f.level());
    for (key, c) in f.terms() {
        if !key.u_freq.is_integer() && b != 0 {
            return Err(Error::UnsupportedTerm("translation of a non-integral frequency".into()));
        }
        let p = key.u_pow as u64;
        for j in 0..=p {
            let coeff = binomial(p, j) * BigInt::from(b).pow((p - j) as u32);
            let k = TermKey { u_pow: j as u32, ..*key };
            out.push(k, c.clone() * C::from_bigint(&coeff));
        }
    }
    Ok(out)
}

/// ρ_m(γ) applied to a vector of expansions.
pub fn rho_apply<C: Scalar>(mat: &Matrix, f: &VVExpansion<C>) -> VVExpansion<C> {
    let n = f.m + 1;
    let components = (0..n)
        .map(|i| {
            let mut acc = Expansion::zero(f.weight, f.trunc());
            for j in 0..n {
                if !mat[i][j].is_zero() {
                    acc = acc.add(&f.components[j].scale(&C::from_rational(&mat[i][j]))).unwrap();
                }
            }
            acc
        })
        .collect();
    VVExpansion { m: f.m, weight: f.weight, components }
}

/// Exact check of f(τ+1) = ρ_m(T) f(τ).
pub fn translation_check<C: Scalar>(f: &VVExpansion<C>) -> Result<bool> {
    let shifted = VVExpansion {
        m: f.m,
        weight: f.weight,
        components: f.components.iter().map(|c| translate(c, 1)).collect::<Result<_>>()?,
    };
    let rhs = rho_apply(&rho_matrix_int(f.m, [1, 1, 0, 1]), f);
    Ok(shifted.sub(&rhs)?.is_zero())
}

/// max_i |f(γτ₀)_i − (cτ₀+d)^k (ρ_m(γ) f(τ₀))_i| with the components evaluated
/// numerically.
pub fn vv_equivariance_check<C: Scalar, T: Real>(
    f: &VVExpansion<C>,
    g: [i64; 4],
    tau: &Complex<T>,
) -> Result<f64> {
    let gt = mobius(g, tau);
    let (lhs, _) = eval_components(&f.components, &Point::from_tau(&gt)?)?;
    let (rhs0, _) = eval_components(&f.components, &Point::from_tau(tau)?)?;
    let mat = rho_matrix_int(f.m, g);
    let jk = cpowi(&j_factor(g, tau), f.weight);
    let mut worst = 0.0f64;
    for i in 0..=f.m {
        let mut acc = Complex::new(T::zero(), T::zero());
        for j in 0..=f.m {
            let r = T::from_rational(&mat[i][j]);
            acc = acc + rhs0[j].clone() * r;
        }
        let diff = lhs[i].clone() - acc * jk.clone();
        worst = worst.max(abs_f64(&diff));
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::maassops::OpKind::*;
    use crate::real::BigReal;

    type V = VVExpansion<ExactCoeff>;

    fn ri(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn rho_identity_and_group_law() {
        for m in 0..5 {
            let id = rho_matrix_int(m, [1, 0, 0, 1]);
            for i in 0..=m {
                for j in 0..=m {
                    assert_eq!(id[i][j], if i == j { ri(1) } else { ri(0) });
                }
            }
            let s = [0, -1, 1, 0];
            let t = [1, 1, 0, 1];
            let st = [0, -1, 1, 1];
            assert_eq!(mat_mul(&rho_matrix_int(m, s), &rho_matrix_int(m, t)), rho_matrix_int(m, st));
        }
    }

    #[test]
    fn rho_by_substitution() {
        // (ρ(γ)p)(X) = (-cX+a)^m p((dX-b)/(-cX+a)) at sample X
        let g = [2i64, 1, 3, 2];
        let m = 3;
        let mat = rho_matrix_int(m, g);
        let p = [ri(1), ri(-2), ri(0), ri(5)];
        for x in [-3i64, 1, 4] {
            let x = ri(x);
            let den = ri(-g[2]) * &x + ri(g[0]);
            let y = (ri(g[3]) * &x - ri(g[1])) / &den;
            let py: BigRational = p.iter().enumerate().map(|(i, c)| c * num_traits::pow(y.clone(), i)).sum();
            let direct = num_traits::pow(den, m) * py;
            let via: BigRational = (0..=m)
                .map(|i| {
                    let ci: BigRational = (0..=m).map(|j| &mat[i][j] * &p[j]).sum();
                    ci * num_traits::pow(x.clone(), i)
                })
                .sum();
            assert_eq!(direct, via);
        }
        let s = rho_matrix_int(1, [0, -1, 1, 0]);
        assert_eq!(s, vec![vec![ri(0), ri(1)], vec![ri(-1), ri(0)]]);
    }

    #[test]
    fn small_e_polys() {
        let e = e_poly::<ExactCoeff>(0, 0).unwrap();
        assert_eq!(e.components[0], Expansion::constant(0, ExactCoeff::one()));
        // e_{1,0} = X - τ
        let e = e_poly::<ExactCoeff>(1, 1).unwrap();
        assert_eq!(e.weight, -1);
        let c0 = Expansion::from_terms(
            -1,
            None,
            [(TermKey::one().with_u_pow(1), -ExactCoeff::one()), (TermKey::v(1), -ExactCoeff::i())],
        );
        assert_eq!(e.components[0], c0);
        assert_eq!(e.components[1], Expansion::constant(-1, ExactCoeff::one()));
        assert_eq!(e_poly::<ExactCoeff>(3, 3).unwrap().weight, -3);
        assert!(e_poly::<ExactCoeff>(4, 3).is_err());
    }

    #[test]
    fn chain_relations() {
        for m in 0..=4usize {
            for r in 0..=m {
                let e: V = e_poly(r, m).unwrap();
                let re = vv_apply(Raise, &e).unwrap();
                if r == 0 {
                    assert!(re.is_zero());
                } else {
                    assert_eq!(re, e_poly(r - 1, m).unwrap());
                }
                let le = vv_apply(Lower, &e).unwrap();
                if r == m {
                    assert!(le.is_zero());
                } else {
                    let c = ExactCoeff::from_int(((r + 1) * (m - r)) as i64);
                    assert_eq!(le, e_poly::<ExactCoeff>(r + 1, m).unwrap().scale(&c));
                }
            }
        }
    }

    #[test]
    fn flip_of_top() {
        for m in 0..=4usize {
            let e: V = e_poly(m, m).unwrap();
            let sign = ExactCoeff::from_int(if m % 2 == 0 { 1 } else { -1 });
            assert_eq!(vv_apply(Flip, &e).unwrap(), e.scale(&sign));
        }
    }

    #[test]
    fn estar_lowering() {
        let m0 = estar_vv(0, 6).unwrap();
        assert_eq!(m0.components[0], catalog::e2star(6).unwrap());
        for m in 1..=3usize {
            let e = estar_vv(m, 5).unwrap();
            assert_eq!(e.weight, m as i64 + 2);
            let l = vv_apply(Lower, &e).unwrap();
            let target: V = e_poly::<ExactCoeff>(0, m)
                .unwrap()
                .scale(&(ExactCoeff::from_int(3) * ExactCoeff::pi_pow(-1)));
            let diff = l.sub(&target).unwrap();
            assert!(diff.is_zero(), "m = {m}");
        }
    }

    #[test]
    fn translation_is_exact() {
        for m in 0..=3 {
            for r in 0..=m {
                assert!(translation_check(&e_poly::<ExactCoeff>(r, m).unwrap()).unwrap());
            }
        }
        assert!(translation_check(&estar_vv(2, 5).unwrap()).unwrap());
    }

    #[test]
    fn equivariance_numeric() {
        let e: V = e_poly(1, 2).unwrap();
        let tau = Complex::new(BigReal::from_f64(0.0), BigReal::from_f64(2.0));
        assert!(vv_equivariance_check(&e, [0, -1, 1, 0], &tau).unwrap() < 1e-12);
        assert_eq!(vv_equivariance_check(&e, [1, 0, 0, 1], &tau).unwrap(), 0.0);
        let tau = Complex::new(0.2f64, 1.1);
        let es = estar_vv(2, 30).unwrap();
        assert!(vv_equivariance_check(&es, [0, -1, 1, 0], &tau).unwrap() < 1e-8);
    }
}
