//! Formal real transcendental symbols and monomials in them.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::any::{Any, TypeId};
use std::collections::HashMap;
use std::sync::{Mutex, OnceLock, RwLock};

use crate::analytic::{lfunc, special};
use crate::error::{Error, Result};
use crate::real::Real;

/// A registered real transcendental constant. Distinct symbols are treated as
/// algebraically independent over Q(i).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Symbol {
    Pi,
    /// ζ(n) for odd n ≥ 3.
    Zeta(u32),
    /// log p for a prime p.
    Log(u64),
    EulerGamma,
    /// Λ'(1,χ_D)/Λ(1,χ_D) with Λ(s,χ) = π^{-(s+1)/2} Γ((s+1)/2) L(s,χ).
    LambdaRatio(u64),
}

static REGISTRY: RwLock<BTreeSet<Symbol>> = RwLock::new(BTreeSet::new());

impl Symbol {
    /// Registers the symbol (idempotent) and returns it.
    pub fn register(self) -> Self {
        let known = REGISTRY.read().map(|r| r.contains(&self)).unwrap_or(false);
        if !known {
            if let Ok(mut w) = REGISTRY.write() {
                w.insert(self);
            }
        }
        self
    }

    pub fn name(&self) -> String {
        match self {
            Symbol::Pi => "pi".into(),
            Symbol::Zeta(n) => format!("zeta{n}"),
            Symbol::Log(p) => format!("log{p}"),
            Symbol::EulerGamma => "euler_gamma".into(),
            Symbol::LambdaRatio(d) => format!("lambda_ratio{d}"),
        }
    }

    pub fn parse(name: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("unknown symbol {name:?}"));
        let sym = if name == "pi" {
            Symbol::Pi
        } else if name == "euler_gamma" {
            Symbol::EulerGamma
        } else if let Some(rest) = name.strip_prefix("lambda_ratio") {
            Symbol::LambdaRatio(rest.parse().map_err(|_| bad())?)
        } else if let Some(rest) = name.strip_prefix("zeta") {
            let n: u32 = rest.parse().map_err(|_| bad())?;
            if n < 3 || n % 2 == 0 {
                return Err(Error::Parse(format!(
                    "{name}: only odd zeta values ≥ 3 are symbols"
                )));
            }
            Symbol::Zeta(n)
        } else if let Some(rest) = name.strip_prefix("log") {
            let p: u64 = rest.parse().map_err(|_| bad())?;
            if !crate::arith::is_prime(p) {
                return Err(Error::Parse(format!("{name}: log symbols take primes")));
            }
            Symbol::Log(p)
        } else {
            return Err(bad());
        };
        Ok(sym.register())
    }

    /// Numeric value at the precision of `T`.
    pub fn value<T: Real>(&self) -> T {
        type Cache = Mutex<HashMap<(Symbol, TypeId, usize), Box<dyn Any + Send + Sync>>>;
        static CACHE: OnceLock<Cache> = OnceLock::new();
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        let key = (*self, TypeId::of::<T>(), T::precision_bits());
        if let Some(v) = cache.lock().unwrap().get(&key).and_then(|b| b.downcast_ref::<T>()) {
            return v.clone();
        }
        let v = self.compute::<T>();
        cache.lock().unwrap().insert(key, Box::new(v.clone()));
        v
    }

    fn compute<T: Real>(&self) -> T {
        match self {
            Symbol::Pi => T::pi(),
            Symbol::Zeta(n) => special::zeta(&T::from_i64(*n as i64)),
            Symbol::Log(p) => T::from_i64(*p as i64).ln(),
            Symbol::EulerGamma => special::euler_gamma(),
            Symbol::LambdaRatio(d) => lfunc::lambda_ratio(*d),
        }
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Symbol::Pi => write!(f, "π"),
            Symbol::Zeta(n) => write!(f, "ζ({n})"),
            Symbol::Log(p) => write!(f, "log({p})"),
            Symbol::EulerGamma => write!(f, "γ"),
            Symbol::LambdaRatio(d) => write!(f, "Λratio({d})"),
        }
    }
}

/// Symbols registered so far in this process.
pub fn registered_symbols() -> Vec<Symbol> {
    REGISTRY
        .read()
        .map(|r| r.iter().copied().collect())
        .unwrap_or_default()
}

/// Product of symbol powers; exponents are never zero.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(BTreeMap<Symbol, i32>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(BTreeMap::new())
    }

    pub fn single(sym: Symbol, exp: i32) -> Self {
        let mut m = BTreeMap::new();
        if exp != 0 {
            m.insert(sym.register(), exp);
        }
        Monomial(m)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn exponent(&self, sym: Symbol) -> i32 {
        self.0.get(&sym).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (Symbol, i32)> + '_ {
        self.0.iter().map(|(s, e)| (*s, *e))
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut m = self.0.clone();
        for (s, e) in &other.0 {
            let v = m.entry(*s).or_insert(0);
            *v += e;
            if *v == 0 {
                m.remove(s);
            }
        }
        Monomial(m)
    }

    pub fn inverse(&self) -> Monomial {
        Monomial(self.0.iter().map(|(s, e)| (*s, -e)).collect())
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (Symbol, i32)>) -> Monomial {
        pairs
            .into_iter()
            .fold(Monomial::one(), |acc, (s, e)| acc.mul(&Monomial::single(s, e)))
    }

    pub fn value<T: Real>(&self) -> T {
        let mut acc = T::one();
        for (s, e) in self.iter() {
            acc = acc * s.value::<T>().powi(e);
        }
        acc
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (s, e) in self.iter() {
            if !first {
                write!(f, "·")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{s}")?;
            } else {
                write!(f, "{s}^{e}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_roundtrip() {
        for s in [
            Symbol::Pi,
            Symbol::Zeta(3),
            Symbol::Log(7),
            Symbol::EulerGamma,
            Symbol::LambdaRatio(7),
        ] {
            assert_eq!(Symbol::parse(&s.name()).unwrap(), s);
        }
        assert!(Symbol::parse("zeta4").is_err());
        assert!(Symbol::parse("log6").is_err());
    }

    #[test]
    fn registry_is_append_only() {
        Symbol::Log(101).register();
        let before = registered_symbols();
        Symbol::Log(101).register();
        assert_eq!(registered_symbols().len(), before.len());
        assert!(before.contains(&Symbol::Log(101)));
    }

    #[test]
    fn monomial_cancellation() {
        let a = Monomial::single(Symbol::Pi, -1);
        let b = Monomial::single(Symbol::Pi, 1);
        assert!(a.mul(&b).is_one());
    }
}
