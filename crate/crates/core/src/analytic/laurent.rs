//! Taylor coefficients A_{r,ℓ,s₀} of s ↦ E_{ℓ,s} at s₀, mode by mode, and the
//! lowering, raising and Laplace relations between them.

use num_complex::Complex;

use super::diff::{default_step, e_of, taylor_weights};
use super::eisenstein::EisFourier;
use super::eval::czero;
use crate::error::{Error, Result};
use crate::real::Real;

/// Largest Taylor order in s the stencils are trusted for.
pub const MAX_ORDER: usize = 6;

fn s_half_width(r_max: usize) -> usize {
    3.max(r_max.div_ceil(2) + 2)
}

/// For each Fourier mode n, |n| ≤ M, the Taylor data of the e(nu) coefficient of E_{ℓ,s}
/// around s₀ at v₀: `coef[n + M][r]` holds the (s-s₀)^r coefficient of the profile and
/// of its first two v-derivatives.
#[derive(Clone, Debug)]
pub struct LaurentTable<T: Real> {
    pub l: i64,
    pub s0: i64,
    pub v0: T,
    pub m_max: u64,
    pub r_max: usize,
    coef: Vec<Vec<[T; 3]>>,
}

fn weighted<T: Real>(row: &[num_rational::BigRational], samples: &[T]) -> T {
    let mut acc = T::zero();
    for (c, x) in row.iter().zip(samples) {
        if !num_traits::Zero::is_zero(c) {
            acc = acc + x.clone() * T::from_rational(c);
        }
    }
    acc
}

impl<T: Real> LaurentTable<T> {
    pub fn new(l: i64, s0: i64, v0: &T, m_max: u64, r_max: usize) -> Result<Self> {
        if s0 < 2 {
            return Err(Error::BadParameter(format!("s₀ must be an integer ≥ 2, got {s0}")));
        }
        if l % 2 != 0 {
            return Err(Error::BadParameter(format!("ℓ must be even, got {l}")));
        }
        if r_max > MAX_ORDER {
            return Err(Error::BadParameter(format!(
                "Taylor order {r_max} is too large for stable differentiation in s"
            )));
        }
        if !(*v0 > T::zero()) {
            return Err(Error::Domain("v must be positive".into()));
        }
        let width = s_half_width(r_max);
        let hs = default_step::<T>(width, &T::one());
        let ws = taylor_weights(width);
        let s_nodes: Vec<T> = (-(width as i64)..=width as i64)
            .map(|i| T::from_i64(s0) + hs.clone() * T::from_i64(i))
            .collect();
        let series: Vec<EisFourier<T>> = s_nodes.iter().map(|s| EisFourier::new(l, s)).collect::<Result<_>>()?;
        let mut coef = Vec::new();
        for n in -(m_max as i64)..=m_max as i64 {
            let jets: Vec<[T; 3]> = series.iter().map(|f| f.mode_jet(n, v0)).collect::<Result<_>>()?;
            let mut per_r = Vec::with_capacity(r_max + 1);
            for r in 0..=r_max {
                let hs_r = hs.powi(r as i32);
                let d = |i: usize| {
                    let col: Vec<T> = jets.iter().map(|j| j[i].clone()).collect();
                    weighted(&ws[r], &col) / hs_r.clone()
                };
                per_r.push([d(0), d(1), d(2)]);
            }
            coef.push(per_r);
        }
        Ok(LaurentTable { l, s0, v0: v0.clone(), m_max, r_max, coef })
    }

    /// A_{r,ℓ,s₀} restricted to weight ℓ and order r; zero for r < 0.
    pub fn slice(&self, r: i64) -> Result<LaurentSlice<T>> {
        if r > self.r_max as i64 {
            return Err(Error::BadParameter(format!("order {r} exceeds the table's {}", self.r_max)));
        }
        let modes = if r < 0 {
            vec![[T::zero(), T::zero(), T::zero()]; self.coef.len()]
        } else {
            self.coef.iter().map(|c| c[r as usize].clone()).collect()
        };
        Ok(LaurentSlice { r, l: self.l, s0: self.s0, v0: self.v0.clone(), m_max: self.m_max, modes })
    }
}

/// One Taylor coefficient A_{r,ℓ,s₀}: per mode, the value and the first two
/// v-derivatives at v₀.
#[derive(Clone, Debug)]
pub struct LaurentSlice<T: Real> {
    pub r: i64,
    pub l: i64,
    pub s0: i64,
    pub v0: T,
    pub m_max: u64,
    pub modes: Vec<[T; 3]>,
}

/// Per-mode profiles of an operator image, indexed like `LaurentSlice::modes`.
pub type ModeValues<T> = Vec<T>;

impl<T: Real> LaurentSlice<T> {
    fn freq(&self, idx: usize) -> i64 {
        idx as i64 - self.m_max as i64
    }

    pub fn values(&self) -> ModeValues<T> {
        self.modes.iter().map(|m| m[0].clone()).collect()
    }

    /// L: a e(nu) ↦ v²(2πn a + a') e(nu).
    pub fn lower(&self) -> ModeValues<T> {
        let v2 = self.v0.clone() * self.v0.clone();
        (0..self.modes.len())
            .map(|i| {
                let [a, a1, _] = &self.modes[i];
                let n = T::from_i64(self.freq(i));
                v2.clone() * (T::pi() * T::from_i64(2) * n * a.clone() + a1.clone())
            })
            .collect()
    }

    /// R_ℓ: a e(nu) ↦ (-2πn a + a' + ℓa/v) e(nu).
    pub fn raise(&self) -> ModeValues<T> {
        (0..self.modes.len())
            .map(|i| {
                let [a, a1, _] = &self.modes[i];
                let n = T::from_i64(self.freq(i));
                -(T::pi() * T::from_i64(2) * n * a.clone()) + a1.clone()
                    + T::from_i64(self.l) * a.clone() / self.v0.clone()
            })
            .collect()
    }

    /// Δ_ℓ: a e(nu) ↦ (-v²(a'' - 4π²n²a) - ℓv(2πn a + a')) e(nu).
    pub fn laplacian(&self) -> ModeValues<T> {
        let v = self.v0.clone();
        let two_pi = T::pi() * T::from_i64(2);
        (0..self.modes.len())
            .map(|i| {
                let [a, a1, a2] = &self.modes[i];
                let n = T::from_i64(self.freq(i));
                let tpn = two_pi.clone() * n;
                let second = a2.clone() - tpn.clone() * tpn.clone() * a.clone();
                -(v.clone() * v.clone() * second) - T::from_i64(self.l) * v.clone() * (tpn * a.clone() + a1.clone())
            })
            .collect()
    }

    /// Σ_n a_n(v₀) e(nu₀).
    pub fn eval(&self, u: &T) -> Complex<T> {
        let mut acc = czero::<T>();
        for (i, m) in self.modes.iter().enumerate() {
            acc = acc + e_of(&(u.clone() * T::from_i64(self.freq(i)))) * m[0].clone();
        }
        acc
    }
}

/// Σ cᵢ·xᵢ over mode vectors.
pub fn combine<T: Real>(parts: &[(T, &ModeValues<T>)]) -> ModeValues<T> {
    let n = parts[0].1.len();
    (0..n)
        .map(|i| parts.iter().fold(T::zero(), |acc, (c, v)| acc + c.clone() * v[i].clone()))
        .collect()
}

/// max over modes of |a - b| / max(1, |a|).
pub fn residual<T: Real>(a: &ModeValues<T>, b: &ModeValues<T>) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x.clone() - y.clone()).abs().to_f64() / x.abs().to_f64().max(1.0))
        .fold(0.0, f64::max)
}

/// Residuals of the three relations at order r, weight ℓ:
/// L A_{r,ℓ} = ½(s₀+1-ℓ)A_{r,ℓ-2} + ½A_{r-1,ℓ-2},
/// R A_{r,ℓ} = ½(s₀+1+ℓ)A_{r,ℓ+2} + ½A_{r-1,ℓ+2},
/// Δ A_{r,ℓ} = σ(λ A_{r,ℓ} + ½s₀ A_{r-1,ℓ} + ¼A_{r-2,ℓ}), λ = ¼(s₀+1-ℓ)(s₀+ℓ-1),
/// for the sign σ given (the relations as stated hold with σ = +1 for Δ = R L, σ = -1 for Δ = -R L).
#[derive(Clone, Debug)]
pub struct LaurentResiduals {
    pub r: i64,
    pub lower: f64,
    pub raise: f64,
    pub delta: f64,
}

pub struct LaurentFamily<T: Real> {
    pub below: LaurentTable<T>,
    pub at: LaurentTable<T>,
    pub above: LaurentTable<T>,
}

impl<T: Real> LaurentFamily<T> {
    pub fn new(l: i64, s0: i64, v0: &T, m_max: u64, r_max: usize) -> Result<Self> {
        Ok(LaurentFamily {
            below: LaurentTable::new(l - 2, s0, v0, m_max, r_max)?,
            at: LaurentTable::new(l, s0, v0, m_max, r_max)?,
            above: LaurentTable::new(l + 2, s0, v0, m_max, r_max)?,
        })
    }

    pub fn residuals(&self, r: i64, delta_sign: i64) -> Result<LaurentResiduals> {
        let l = self.at.l;
        let s0 = T::from_i64(self.at.s0);
        let half = T::from_f64(0.5);
        let quarter = T::from_f64(0.25);
        let a = self.at.slice(r)?;
        let lower_rhs = combine(&[
            (half.clone() * (s0.clone() + T::one() - T::from_i64(l)), &self.below.slice(r)?.values()),
            (half.clone(), &self.below.slice(r - 1)?.values()),
        ]);
        let raise_rhs = combine(&[
            (half.clone() * (s0.clone() + T::one() + T::from_i64(l)), &self.above.slice(r)?.values()),
            (half.clone(), &self.above.slice(r - 1)?.values()),
        ]);
        let sg = T::from_i64(delta_sign);
        let lam = quarter.clone() * (s0.clone() + T::one() - T::from_i64(l)) * (s0.clone() + T::from_i64(l) - T::one());
        let delta_rhs = combine(&[
            (sg.clone() * lam, &a.values()),
            (sg.clone() * half * s0, &self.at.slice(r - 1)?.values()),
            (sg * quarter, &self.at.slice(r - 2)?.values()),
        ]);
        Ok(LaurentResiduals {
            r,
            lower: residual(&a.lower(), &lower_rhs),
            raise: residual(&a.raise(), &raise_rhs),
            delta: residual(&a.laplacian(), &delta_rhs),
        })
    }
}

/// Nilpotence data for A_{1,k,s₀} at a reducible point s₀ = k-1: the coefficient c with
/// Δ_k A_1 ≈ c·A_0 (least squares over modes), the relative residual of that fit, and
/// the relative size of Δ_k A_0, so that Δ_k² A_1 = c·Δ_k A_0 up to the fit residual.
#[derive(Clone, Debug)]
pub struct Nilpotence {
    pub coefficient: f64,
    pub fit_residual: f64,
    pub harmonic_residual: f64,
}

pub fn nilpotence<T: Real>(table: &LaurentTable<T>) -> Result<Nilpotence> {
    let a0 = table.slice(0)?;
    let a1 = table.slice(1)?;
    let base = a0.values();
    let lap1 = a1.laplacian();
    let dot = |x: &ModeValues<T>, y: &ModeValues<T>| x.iter().zip(y).fold(T::zero(), |acc, (p, q)| acc + p.clone() * q.clone());
    let norm = dot(&base, &base);
    if norm.is_zero() {
        return Err(Error::Numeric("A_0 vanishes at the sample point".into()));
    }
    let c = dot(&lap1, &base) / norm.clone();
    let fit = combine(&[(T::one(), &lap1), (-c.clone(), &base)]);
    let scale = norm.sqrt().to_f64();
    Ok(Nilpotence {
        coefficient: c.to_f64(),
        fit_residual: dot(&fit, &fit).sqrt().to_f64() / scale,
        harmonic_residual: dot(&a0.laplacian(), &a0.laplacian()).sqrt().to_f64() / scale,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::real::BigReal;

    #[test]
    fn negative_order_is_zero() {
        let t = LaurentTable::new(4, 3, &1.1f64, 1, 0).unwrap();
        assert!(t.slice(-1).unwrap().values().iter().all(|x| *x == 0.0));
        assert!(t.slice(-2).unwrap().eval(&0.3).norm() == 0.0);
    }

    #[test]
    fn order_zero_is_the_eisenstein_series() {
        let v = BigReal::from_f64(1.05);
        let t = LaurentTable::new(2, 3, &v, 3, 0).unwrap();
        let u = BigReal::from_f64(0.2);
        let got = t.slice(0).unwrap().eval(&u);
        let want = EisFourier::new(2, &BigReal::from_i64(3)).unwrap().eval(&Complex::new(u, v), 3).unwrap().value;
        assert!((got - want).norm_sqr().to_f64().sqrt() < 1e-30);
    }

    #[test]
    fn relations_at_weight_four() {
        let v = BigReal::from_f64(1.05);
        let fam = LaurentFamily::new(4, 3, &v, 1, 2).unwrap();
        for r in 0..=2 {
            let res = fam.residuals(r, -1).unwrap();
            assert!(res.lower < 1e-8 && res.raise < 1e-8 && res.delta < 1e-8, "{res:?}");
        }
        let flipped = fam.residuals(1, 1).unwrap();
        assert!(flipped.delta > 1e-3);
        let nil = nilpotence(&fam.at).unwrap();
        assert!((nil.coefficient + 1.5).abs() < 1e-8, "{nil:?}");
        assert!(nil.fit_residual < 1e-8 && nil.harmonic_residual < 1e-8);
    }
}
