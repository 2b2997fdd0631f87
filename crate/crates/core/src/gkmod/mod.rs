//! Harish-Chandra module bookkeeping for the module generated by a form:
//! principal series actions, the transition coefficients between K-types,
//! the composition structure at reducible points and the nine-way
//! classification.

pub mod diagram;

use std::fmt;
use std::str::FromStr;

use crate::coeffring::{Certainty, Scalar, DEFAULT_TOL};
use crate::error::{Error, Result};
use crate::maassops::{laplacian, lower, lower_n, raise_n};
use crate::mfexp::decompose::{decompose, Space};
use crate::mfexp::Expansion;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Up,
    Down,
}

impl FromStr for Direction {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "up" | "+" => Ok(Direction::Up),
            "down" | "-" => Ok(Direction::Down),
            other => Err(Error::BadParameter(format!("direction {other:?}"))),
        }
    }
}

/// I(ε, ν) with basis φ_j, j ≡ ε (mod 2).
#[derive(Clone, Debug, PartialEq)]
pub struct PrincipalSeries<C: Scalar> {
    pub eps: u8,
    pub nu: C,
}

impl<C: Scalar> PrincipalSeries<C> {
    pub fn new(eps: u8, nu: C) -> Result<Self> {
        if eps > 1 {
            return Err(Error::BadParameter(format!("ε must be 0 or 1, got {eps}")));
        }
        Ok(PrincipalSeries { eps, nu })
    }

    /// Coefficient of φ_{j±2} in X_± φ_j.
    pub fn action(&self, j: i64, dir: Direction) -> Result<C> {
        ps_action(self.eps, &self.nu, j, dir)
    }

    /// Eigenvalue of C = (H-1)² + 4X₊X₋ - 1 on φ_j, recomputed from the actions.
    pub fn casimir_on(&self, j: i64) -> Result<C> {
        let down = self.action(j, Direction::Down)?;
        let up = self.action(j - 2, Direction::Up)?;
        let h = C::from_int((j - 1) * (j - 1) - 1);
        Ok(h + C::from_int(4) * down * up)
    }
}

/// X_± φ_j = ½(ν+1±j) φ_{j±2}.
pub fn ps_action<C: Scalar>(eps: u8, nu: &C, j: i64, dir: Direction) -> Result<C> {
    if (j - eps as i64).rem_euclid(2) != 0 {
        return Err(Error::Domain(format!("φ_{j} does not lie in I(ε={eps}, ν)")));
    }
    let pm = match dir {
        Direction::Up => j,
        Direction::Down => -j,
    };
    let half = C::from_exact(&crate::coeffring::ExactCoeff::ratio(1, 2));
    Ok((nu.clone() + C::from_int(1 + pm)) * half)
}

/// Coefficient of the transition between the K-types of the module generated
/// by a harmonic form of weight k: X₋ f_{k+2r} = r(1-k-r) f_{k+2r-2} and
/// X₊ f_{k-2r} = -(r-1)(r-k) f_{k-2r+2}.
pub fn transition_coeff(k: i64, r: i64, dir: Direction) -> Result<i64> {
    if r < 1 {
        return Err(Error::Domain(format!("transition needs r ≥ 1, got {r}")));
    }
    Ok(match dir {
        Direction::Down => r * (1 - k - r),
        Direction::Up => -(r - 1) * (r - k),
    })
}

/// Eigenvalue of 4X₊X₋ on the weight-j node of a module with C = ν² - 1.
pub fn four_raise_lower(nu: i64, j: i64) -> i64 {
    (nu * nu - 1) - (j - 1) * (j - 1) + 1
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FactorKind {
    DSPlus,
    DSMinus,
    FD,
    LDSPlus,
    LDSMinus,
}

/// An irreducible constituent of a reducible principal series.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IrrFactor {
    pub kind: FactorKind,
    /// For FD this is the dimension.
    pub nu: i64,
}

impl IrrFactor {
    pub fn ds_plus(nu: i64) -> Self {
        IrrFactor { kind: FactorKind::DSPlus, nu }
    }
    pub fn ds_minus(nu: i64) -> Self {
        IrrFactor { kind: FactorKind::DSMinus, nu }
    }
    pub fn fd(nu: i64) -> Self {
        IrrFactor { kind: FactorKind::FD, nu }
    }
    pub fn lds_plus() -> Self {
        IrrFactor { kind: FactorKind::LDSPlus, nu: 0 }
    }
    pub fn lds_minus() -> Self {
        IrrFactor { kind: FactorKind::LDSMinus, nu: 0 }
    }

    /// K-types as a weight interval in steps of two; `None` is unbounded.
    pub fn support(&self) -> (Option<i64>, Option<i64>) {
        let n = self.nu;
        match self.kind {
            FactorKind::DSPlus => (Some(n + 1), None),
            FactorKind::DSMinus => (None, Some(-n - 1)),
            FactorKind::FD => (Some(1 - n), Some(n - 1)),
            FactorKind::LDSPlus => (Some(1), None),
            FactorKind::LDSMinus => (None, Some(-1)),
        }
    }

    pub fn contains(&self, j: i64) -> bool {
        let (lo, hi) = self.support();
        let base = lo.or(hi).unwrap_or(0);
        (j - base).rem_euclid(2) == 0
            && lo.is_none_or(|l| j >= l)
            && hi.is_none_or(|h| j <= h)
    }

    pub fn dimension(&self) -> Option<u64> {
        match self.kind {
            FactorKind::FD => Some(self.nu as u64),
            _ => None,
        }
    }

    pub fn name(&self) -> String {
        match self.kind {
            FactorKind::DSPlus => format!("DS+({})", self.nu),
            FactorKind::DSMinus => format!("DS-({})", self.nu),
            FactorKind::FD => format!("FD({})", self.nu),
            FactorKind::LDSPlus => "LDS+(0)".to_string(),
            FactorKind::LDSMinus => "LDS-(0)".to_string(),
        }
    }
}

impl fmt::Display for IrrFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

/// One exact sequence 0 → sub → I(ν) → quotient → 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactSequence {
    pub sub: Vec<IrrFactor>,
    pub quotient: Vec<IrrFactor>,
}

impl fmt::Display for ExactSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[IrrFactor]| v.iter().map(|x| x.name()).collect::<Vec<_>>().join(" ⊕ ");
        write!(f, "0 → {} → M → {} → 0", join(&self.sub), join(&self.quotient))
    }
}

/// Composition structure of I(ν) at a reducible integral point.
pub fn structure_of_i(nu: i64) -> ExactSequence {
    match nu.cmp(&0) {
        std::cmp::Ordering::Greater => ExactSequence {
            sub: vec![IrrFactor::ds_plus(nu), IrrFactor::ds_minus(nu)],
            quotient: vec![IrrFactor::fd(nu)],
        },
        std::cmp::Ordering::Less => ExactSequence {
            sub: vec![IrrFactor::fd(-nu)],
            quotient: vec![IrrFactor::ds_plus(-nu), IrrFactor::ds_minus(-nu)],
        },
        std::cmp::Ordering::Equal => ExactSequence {
            sub: vec![IrrFactor::lds_plus(), IrrFactor::lds_minus()],
            quotient: vec![],
        },
    }
}

/// Checked variant taking the parity ε as well.
pub fn structure_of_i_checked(eps: u8, nu: i64) -> Result<ExactSequence> {
    if (nu - 1 - eps as i64).rem_euclid(2) != 0 {
        return Err(Error::Domain(format!("I(ε={eps}, ν={nu}) is irreducible")));
    }
    Ok(structure_of_i(nu))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CaseLabel {
    Ia,
    Ib,
    Ic,
    Id,
    IIa,
    IIb,
    IIIa,
    IIIb,
    IIIc,
}

impl CaseLabel {
    pub const ALL: [CaseLabel; 9] = [
        CaseLabel::Ia,
        CaseLabel::Ib,
        CaseLabel::Ic,
        CaseLabel::Id,
        CaseLabel::IIa,
        CaseLabel::IIb,
        CaseLabel::IIIa,
        CaseLabel::IIIb,
        CaseLabel::IIIc,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            CaseLabel::Ia => "Ia",
            CaseLabel::Ib => "Ib",
            CaseLabel::Ic => "Ic",
            CaseLabel::Id => "Id",
            CaseLabel::IIa => "IIa",
            CaseLabel::IIb => "IIb",
            CaseLabel::IIIa => "IIIa",
            CaseLabel::IIIb => "IIIb",
            CaseLabel::IIIc => "IIIc",
        }
    }

    /// Whether the label belongs to the weight regime of k.
    pub fn fits_weight(&self, k: i64) -> bool {
        match self {
            CaseLabel::Ia | CaseLabel::Ib | CaseLabel::Ic | CaseLabel::Id => k < 1,
            CaseLabel::IIa | CaseLabel::IIb => k == 1,
            _ => k > 1,
        }
    }
}

impl fmt::Display for CaseLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CaseLabel {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        CaseLabel::ALL
            .iter()
            .find(|c| c.as_str().eq_ignore_ascii_case(s.trim()))
            .copied()
            .ok_or_else(|| Error::BadParameter(format!("unknown case label {s:?}")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SubquotientStatus {
    Quotient,
    Subquotient,
    NotSubquotient,
}

impl SubquotientStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            SubquotientStatus::Quotient => "quotient-of-I",
            SubquotientStatus::Subquotient => "subquotient-of-I",
            SubquotientStatus::NotSubquotient => "not-subquotient",
        }
    }
}

pub fn subquotient_status(c: CaseLabel) -> SubquotientStatus {
    match c {
        CaseLabel::Ia | CaseLabel::Ib | CaseLabel::Ic | CaseLabel::Id => SubquotientStatus::Quotient,
        CaseLabel::IIIa | CaseLabel::IIIb | CaseLabel::IIa => SubquotientStatus::Subquotient,
        CaseLabel::IIIc | CaseLabel::IIb => SubquotientStatus::NotSubquotient,
    }
}

/// Renders a certainty as it appears in descriptors.
pub fn certainty_label(c: Certainty) -> &'static str {
    match c {
        Certainty::Exact => "exact",
        Certainty::Numeric => "numeric-at-truncation",
    }
}

/// Structure of the module generated by a harmonic form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GKDescriptor {
    pub case: CaseLabel,
    pub certainty: Certainty,
    pub k: i64,
    pub nu: i64,
    /// Socle layers, bottom first.
    pub socle: Vec<Vec<IrrFactor>>,
    pub split: bool,
}

impl GKDescriptor {
    /// Composition factors in socle order.
    pub fn factors(&self) -> Vec<IrrFactor> {
        self.socle.iter().flatten().copied().collect()
    }

    pub fn ktype_multiplicity(&self, j: i64) -> u32 {
        self.factors().iter().filter(|f| f.contains(j)).count() as u32
    }

    /// Union of the factor supports as disjoint weight intervals (step 2).
    pub fn ktype_intervals(&self) -> Vec<(Option<i64>, Option<i64>)> {
        let mut iv: Vec<(Option<i64>, Option<i64>)> = self.factors().iter().map(|f| f.support()).collect();
        iv.sort_by_key(|(lo, _)| lo.map_or(i64::MIN, |l| l));
        let mut out: Vec<(Option<i64>, Option<i64>)> = Vec::new();
        for (lo, hi) in iv {
            if let Some(last) = out.last_mut() {
                let touches = match (last.1, lo) {
                    (None, _) | (_, None) => true,
                    (Some(h), Some(l)) => l <= h + 2,
                };
                if touches {
                    last.1 = match (last.1, hi) {
                        (None, _) | (_, None) => None,
                        (Some(a), Some(b)) => Some(a.max(b)),
                    };
                    continue;
                }
            }
            out.push((lo, hi));
        }
        out
    }

    /// The exact sequence (or filtration) as text.
    pub fn sequence(&self) -> String {
        let join = |v: &[IrrFactor]| v.iter().map(|x| x.name()).collect::<Vec<_>>().join(" ⊕ ");
        match self.socle.len() {
            1 => format!("M ≅ {}", join(&self.socle[0])),
            2 => format!("0 → {} → M → {} → 0", join(&self.socle[0]), join(&self.socle[1])),
            _ => {
                let layers: Vec<String> = self.socle.iter().map(|l| join(l)).collect();
                format!(
                    "F²M ≅ {} ⊂ F¹M ⊂ M, F¹M/F²M ≅ {}, M/F¹M ≅ {}",
                    layers[0], layers[1], layers[2]
                )
            }
        }
    }

    pub fn subquotient(&self) -> SubquotientStatus {
        subquotient_status(self.case)
    }
}

pub(crate) fn descriptor(case: CaseLabel, k: i64, certainty: Certainty) -> GKDescriptor {
    let nu = 1 - k;
    let (socle, split) = match case {
        CaseLabel::Ia => (vec![vec![IrrFactor::fd(nu)]], true),
        CaseLabel::Ib => (vec![vec![IrrFactor::ds_plus(nu)], vec![IrrFactor::fd(nu)]], false),
        CaseLabel::Ic => (vec![vec![IrrFactor::ds_minus(nu)], vec![IrrFactor::fd(nu)]], false),
        CaseLabel::Id => (
            vec![vec![IrrFactor::ds_plus(nu), IrrFactor::ds_minus(nu)], vec![IrrFactor::fd(nu)]],
            false,
        ),
        CaseLabel::IIa => (vec![vec![IrrFactor::lds_plus()]], true),
        CaseLabel::IIb => (vec![vec![IrrFactor::lds_minus()], vec![IrrFactor::lds_plus()]], false),
        CaseLabel::IIIa => (vec![vec![IrrFactor::ds_plus(-nu)]], true),
        CaseLabel::IIIb => (vec![vec![IrrFactor::fd(-nu)], vec![IrrFactor::ds_plus(-nu)]], false),
        CaseLabel::IIIc => (
            vec![vec![IrrFactor::ds_minus(-nu)], vec![IrrFactor::fd(-nu)], vec![IrrFactor::ds_plus(-nu)]],
            false,
        ),
    };
    GKDescriptor { case, certainty, k, nu, socle, split }
}

/// The classification table. `down_zero` is L_k f = 0; `second_zero` is
/// R_k^{1-k} f = 0 for k < 1 and L_k^k f = 0 for k > 1 (only consulted when
/// L_k f ≠ 0), and must be absent for k = 1.
pub fn classify_flags(
    k: i64,
    down_zero: bool,
    second_zero: Option<bool>,
    certainty: Certainty,
) -> Result<GKDescriptor> {
    let case = match (k.cmp(&1), down_zero, second_zero) {
        (std::cmp::Ordering::Less, d, Some(s)) => match (d, s) {
            (true, true) => CaseLabel::Ia,
            (true, false) => CaseLabel::Ib,
            (false, true) => CaseLabel::Ic,
            (false, false) => CaseLabel::Id,
        },
        (std::cmp::Ordering::Equal, d, None) => {
            if d {
                CaseLabel::IIa
            } else {
                CaseLabel::IIb
            }
        }
        (std::cmp::Ordering::Greater, true, None) => CaseLabel::IIIa,
        (std::cmp::Ordering::Greater, false, Some(s)) => {
            if s {
                CaseLabel::IIIb
            } else {
                CaseLabel::IIIc
            }
        }
        _ => {
            return Err(Error::BadParameter(format!(
                "inconsistent flags for k = {k}: down_zero = {down_zero}, second = {second_zero:?}"
            )))
        }
    };
    Ok(descriptor(case, k, certainty))
}

/// Result of classifying an actual form.
#[derive(Clone, Debug)]
pub struct Classification {
    pub descriptor: GKDescriptor,
    pub warnings: Vec<String>,
}

/// Multiplicities (DS⁺, DS⁻, FD) of the module generated by the order-r
/// Taylor coefficient of the Eisenstein series at s₀ = k - 1.
pub fn laurent_multiplicities(r: u32) -> (u32, u32, u32) {
    (r + 1, r, r)
}

fn all_zero<C: Scalar>(parts: &[Expansion<C>], scale: f64, tol: f64) -> (bool, Certainty) {
    let mut cert = Certainty::Exact;
    let mut zero = true;
    for p in parts {
        let t = p.zero_test(scale, tol);
        cert = cert.and(t.certainty);
        zero &= t.zero;
    }
    (zero, cert)
}

/// Classifies the module generated by a form given by its components (one
/// component for scalar forms, the X-basis components for vector-valued ones).
pub fn classify_components<C: Scalar>(parts: &[Expansion<C>], tol: f64) -> Result<Classification> {
    let first = parts
        .first()
        .ok_or_else(|| Error::BadParameter("no components to classify".into()))?;
    let k = first.weight();
    if parts.iter().any(|p| p.weight() != k) {
        return Err(Error::WeightMismatch(k.to_string(), "mixed component weights".into()));
    }
    let scalar = parts.len() == 1;
    if scalar && decompose(first).space == Space::NotHarmonicShape {
        return Err(Error::UnsupportedTerm("expansion is not of harmonic shape".into()));
    }
    let scale = parts.iter().map(|p| p.scale_hint()).fold(1.0, f64::max);
    let lap: Vec<_> = parts.iter().map(laplacian).collect();
    let (harmonic, mut cert) = all_zero(&lap, scale, tol);
    if !harmonic {
        return Err(Error::Domain(format!("form of weight {k} is not annihilated by Δ_k")));
    }
    let down: Vec<_> = parts.iter().map(lower).collect();
    let (down_zero, c) = all_zero(&down, scale, tol);
    cert = cert.and(c);
    let second = if k < 1 {
        let up: Vec<_> = parts.iter().map(|p| raise_n(p, (1 - k) as u32)).collect();
        let (z, c) = all_zero(&up, scale, tol);
        cert = cert.and(c);
        Some(z)
    } else if k > 1 && !down_zero {
        let d: Vec<_> = down.iter().map(|p| lower_n(p, (k - 1) as u32)).collect();
        let (z, c) = all_zero(&d, scale, tol);
        cert = cert.and(c);
        Some(z)
    } else {
        None
    };
    let descriptor = classify_flags(k, down_zero, second, cert)?;
    let mut warnings = Vec::new();
    if scalar && k < 0 && descriptor.case == CaseLabel::Ia {
        warnings.push(format!(
            "scalar form of weight {k} in case Ia is inconsistent: a scalar form generating a finite-dimensional module is a constant and ν = 1"
        ));
    }
    Ok(Classification { descriptor, warnings })
}

pub fn classify_form<C: Scalar>(f: &Expansion<C>) -> Result<Classification> {
    classify_components(std::slice::from_ref(f), DEFAULT_TOL.max(1e-20))
}

/// Casimir action on a form: C f = ((k-1)² - 1) f + 4 R_{k-2} L_k f.
pub fn casimir<C: Scalar>(f: &Expansion<C>) -> Expansion<C> {
    let k = f.weight();
    let base = f.scale(&C::from_int((k - 1) * (k - 1) - 1));
    let rl = laplacian(f).neg().scale(&C::from_int(4));
    base.add(&rl).expect("same weight")
}

/// Whether f is a Casimir eigenfunction with eigenvalue (k-1)² - 1.
pub fn casimir_check<C: Scalar>(f: &Expansion<C>) -> bool {
    let k = f.weight();
    let diff = casimir(f)
        .sub(&f.scale(&C::from_int((k - 1) * (k - 1) - 1)))
        .expect("same weight");
    diff.zero_test(f.scale_hint().max(1.0), DEFAULT_TOL.max(1e-20)).zero
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::coeffring::ExactCoeff;

    fn ex(n: i64) -> ExactCoeff {
        ExactCoeff::from_int(n)
    }

    #[test]
    fn action_values() {
        assert_eq!(ps_action(1, &ex(0), 1, Direction::Up).unwrap(), ex(1));
        for nu in [-5i64, 0, 3, 8] {
            let eps = (nu - 1).rem_euclid(2) as u8;
            assert!(ps_action(eps, &ex(nu), nu + 1, Direction::Down).unwrap().is_zero());
        }
        assert!(ps_action(0, &ex(1), 3, Direction::Up).is_err());
    }

    #[test]
    fn casimir_from_actions() {
        for nu in -6i64..=6 {
            let eps = (nu - 1).rem_euclid(2) as u8;
            let ps = PrincipalSeries::new(eps, ex(nu)).unwrap();
            for j in (-9i64..=9).filter(|j| (j - eps as i64).rem_euclid(2) == 0) {
                assert_eq!(ps.casimir_on(j).unwrap(), ex(nu * nu - 1));
            }
        }
        let ps = PrincipalSeries::new(0, ExactCoeff::ratio(1, 3) + ExactCoeff::i()).unwrap();
        let nu = ExactCoeff::ratio(1, 3) + ExactCoeff::i();
        assert_eq!(ps.casimir_on(4).unwrap(), nu.clone() * nu - ex(1));
    }

    #[test]
    fn transitions() {
        assert_eq!(transition_coeff(-12, 13, Direction::Down).unwrap(), 0);
        assert_eq!(transition_coeff(2, 2, Direction::Up).unwrap(), 0);
        for k in -5..6 {
            assert_eq!(transition_coeff(k, 1, Direction::Up).unwrap(), 0);
        }
        assert!(transition_coeff(3, 0, Direction::Up).is_err());
    }

    #[test]
    fn transitions_compose_to_raise_lower_eigenvalue() {
        // 4X₊X₋ acts on f_j by a scalar; the down coefficient at r and the up
        // coefficient at r must reproduce it on f_{k+2r} and f_{k-2r+2}.
        for k in -6i64..8 {
            let nu = 1 - k;
            for r in 1..8 {
                let j = k + 2 * r;
                let down = transition_coeff(k, r, Direction::Down).unwrap();
                assert_eq!(4 * down, four_raise_lower(nu, j));
                let jm = k - 2 * (r - 1);
                let up = transition_coeff(k, r, Direction::Up).unwrap();
                assert_eq!(4 * up, four_raise_lower(nu, jm));
            }
        }
    }

    #[test]
    fn principal_series_structure() {
        let s = structure_of_i(1);
        assert_eq!(s.sub, vec![IrrFactor::ds_plus(1), IrrFactor::ds_minus(1)]);
        assert_eq!(s.quotient, vec![IrrFactor::fd(1)]);
        assert_eq!(structure_of_i(0).sub, vec![IrrFactor::lds_plus(), IrrFactor::lds_minus()]);
        assert_eq!(structure_of_i(-3).sub, vec![IrrFactor::fd(3)]);
        assert!(structure_of_i_checked(1, 1).is_err());
        assert!(structure_of_i_checked(0, 1).is_ok());
    }

    #[test]
    fn flag_table() {
        let d = classify_flags(-12, true, Some(false), Certainty::Exact).unwrap();
        assert_eq!(d.case, CaseLabel::Ib);
        assert_eq!(d.sequence(), "0 → DS+(13) → M → FD(13) → 0");
        let d = classify_flags(1, false, None, Certainty::Exact).unwrap();
        assert_eq!(d.case, CaseLabel::IIb);
        assert_eq!(d.sequence(), "0 → LDS-(0) → M → LDS+(0) → 0");
        let d = classify_flags(12, false, Some(false), Certainty::Numeric).unwrap();
        assert_eq!(d.case, CaseLabel::IIIc);
        assert_eq!(
            d.factors(),
            vec![IrrFactor::ds_minus(11), IrrFactor::fd(11), IrrFactor::ds_plus(11)]
        );
        assert!(classify_flags(1, true, Some(true), Certainty::Exact).is_err());
        assert!(classify_flags(-2, true, None, Certainty::Exact).is_err());
        assert!(classify_flags(4, true, Some(false), Certainty::Exact).is_err());
    }

    #[test]
    fn multiplicity_at_most_one_and_weights_fit() {
        let flags: [(i64, bool, Option<bool>); 9] = [
            (-4, true, Some(true)),
            (-4, true, Some(false)),
            (-4, false, Some(true)),
            (-4, false, Some(false)),
            (1, true, None),
            (1, false, None),
            (6, true, None),
            (6, false, Some(true)),
            (6, false, Some(false)),
        ];
        for (k, d, s) in flags {
            let desc = classify_flags(k, d, s, Certainty::Exact).unwrap();
            assert!(desc.case.fits_weight(k));
            assert!(desc.ktype_multiplicity(k) == 1, "{:?}", desc.case);
            for j in -40..40 {
                assert!(desc.ktype_multiplicity(j) <= 1);
            }
            assert_eq!(desc.ktype_intervals().len(), 1, "{:?}", desc.case);
        }
    }

    #[test]
    fn subquotient_statuses() {
        use SubquotientStatus::*;
        let expect = [
            Quotient,
            Quotient,
            Quotient,
            Quotient,
            Subquotient,
            NotSubquotient,
            Subquotient,
            Subquotient,
            NotSubquotient,
        ];
        for (c, e) in CaseLabel::ALL.iter().zip(expect) {
            assert_eq!(subquotient_status(*c), e);
        }
    }

    #[test]
    fn laurent_counts() {
        assert_eq!(laurent_multiplicities(0), (1, 0, 0));
        assert_eq!(laurent_multiplicities(1), (2, 1, 1));
        assert_eq!(laurent_multiplicities(5), (6, 5, 5));
    }

    #[test]
    fn classify_catalog_forms() {
        let f = catalog::inv_delta(6).unwrap();
        let c = classify_form(&f).unwrap();
        assert_eq!(c.descriptor.case, CaseLabel::Ib);
        assert_eq!(c.descriptor.certainty, Certainty::Exact);
        assert!(c.warnings.is_empty());
        assert_eq!(classify_form(&catalog::e2star(6).unwrap()).unwrap().descriptor.case, CaseLabel::IIIb);
        assert_eq!(classify_form(&catalog::delta(6).unwrap()).unwrap().descriptor.case, CaseLabel::IIIa);
        assert_eq!(classify_form(&catalog::incoherent(7, 8).unwrap()).unwrap().descriptor.case, CaseLabel::IIb);
        assert_eq!(classify_form(&catalog::eta_product_23(8).unwrap()).unwrap().descriptor.case, CaseLabel::IIa);
        assert_eq!(classify_form(&catalog::harmonic_eis(2, 6).unwrap()).unwrap().descriptor.case, CaseLabel::Id);
        let flip = crate::maassops::flip(&f).unwrap();
        assert_eq!(classify_form(&flip).unwrap().descriptor.case, CaseLabel::Ic);
        let one = Expansion::constant(0, ex(1));
        assert_eq!(classify_form(&one).unwrap().descriptor.case, CaseLabel::Ia);
        assert!(classify_form(&catalog::kronecker_phi(4).unwrap()).is_err());
    }

    #[test]
    fn casimir_on_harmonic_forms() {
        assert!(casimir_check(&catalog::e2star(5).unwrap()));
        assert!(casimir_check(&catalog::incoherent(7, 5).unwrap()));
        assert!(!casimir_check(&catalog::kronecker_phi(5).unwrap()));
    }
}
