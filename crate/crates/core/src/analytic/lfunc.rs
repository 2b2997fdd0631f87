//! Dirichlet L-functions of imaginary quadratic characters χ_{-D}.

use super::special::{digamma, hurwitz_zeta_with_derivative};
use crate::arith::chi_neg;
use crate::real::Real;

/// (L(0, χ_{-D}), L'(0, χ_{-D})) from Hurwitz zeta values.
pub fn l_at_zero<T: Real>(d: u64) -> (T, T) {
    let dd = T::from_i64(d as i64);
    let zero = T::zero();
    let mut l = T::zero();
    let mut dl = T::zero();
    for a in 1..d {
        let chi = chi_neg(d, a);
        if chi == 0 {
            continue;
        }
        let (z, dz) = hurwitz_zeta_with_derivative(&zero, &(T::from_i64(a as i64) / dd.clone()));
        let c = T::from_i64(chi as i64);
        l = l + c.clone() * z;
        dl = dl + c * dz;
    }
    let dl = dl - dd.ln() * l.clone();
    (l, dl)
}

/// Λ'(1,χ)/Λ(1,χ) for Λ(s,χ) = π^{-(s+1)/2} Γ((s+1)/2) L(s,χ_{-D}), obtained from
/// the values at s = 0 through the functional equation of the completed function.
pub fn lambda_ratio<T: Real>(d: u64) -> T {
    let (l0, dl0) = l_at_zero::<T>(d);
    let half = T::from_f64(0.5);
    half.clone() * T::pi().ln() - T::from_i64(d as i64).ln()
        - half * digamma(&T::from_f64(0.5))
        - dl0 / l0
}
