//! JSON interchange for expansions, vector-valued forms and module descriptors.

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{Num, Zero};
use serde_json::{json, Map, Value};

use crate::coeffring::{gauss, ExactCoeff, FloatCoeff, Scalar, Symbol};
use crate::coeffring::symbol::Monomial;
use crate::error::{Error, Result};
use crate::gkmod::{certainty_label, GKDescriptor};
use crate::mfexp::{Expansion, GammaAtom, TermKey, Q};
use crate::real::{working_precision, BigReal, Real};
use crate::symtensor::VVExpansion;

/// An expansion whose coefficient mode is known only at run time.
#[derive(Clone, Debug, PartialEq)]
pub enum AnyExpansion {
    Exact(Expansion<ExactCoeff>),
    Float(Expansion<FloatCoeff>),
}

impl AnyExpansion {
    pub fn weight(&self) -> i64 {
        match self {
            AnyExpansion::Exact(f) => f.weight(),
            AnyExpansion::Float(f) => f.weight(),
        }
    }

    pub fn mode(&self) -> &'static str {
        match self {
            AnyExpansion::Exact(_) => "exact",
            AnyExpansion::Float(_) => "float",
        }
    }

    pub fn to_float(&self) -> Expansion<FloatCoeff> {
        match self {
            AnyExpansion::Exact(f) => f.convert(FloatCoeff::from_exact),
            AnyExpansion::Float(f) => f.clone(),
        }
    }
}

fn schema(ptr: &str, msg: impl Into<String>) -> Error {
    Error::Schema(if ptr.is_empty() { "/".into() } else { ptr.into() }, msg.into())
}

fn rat_str(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn q_str(r: &Q) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse_big_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n = BigInt::from_str_radix(n, 10).ok()?;
    let d = BigInt::from_str_radix(d, 10).ok()?;
    if d.is_zero() {
        return None;
    }
    Some(BigRational::new(n, d))
}

pub fn parse_q(s: &str) -> Option<Q> {
    let r = parse_big_rational(s)?;
    let n: i64 = r.numer().try_into().ok()?;
    let d: i64 = r.denom().try_into().ok()?;
    Some(Q::new(n, d))
}

fn get<'a>(obj: &'a Map<String, Value>, key: &str, ptr: &str) -> Result<&'a Value> {
    obj.get(key).ok_or_else(|| schema(ptr, format!("missing field {key:?}")))
}

fn as_obj<'a>(v: &'a Value, ptr: &str) -> Result<&'a Map<String, Value>> {
    v.as_object().ok_or_else(|| schema(ptr, "expected an object"))
}

fn as_arr<'a>(v: &'a Value, ptr: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| schema(ptr, "expected an array"))
}

fn as_i64(v: &Value, ptr: &str) -> Result<i64> {
    v.as_i64().ok_or_else(|| schema(ptr, "expected an integer"))
}

/// Rationals are strings; bare JSON integers are also accepted.
fn as_rational(v: &Value, ptr: &str) -> Result<BigRational> {
    match v {
        Value::String(s) => parse_big_rational(s).ok_or_else(|| schema(ptr, format!("invalid rational {s:?}"))),
        Value::Number(n) if n.is_i64() => Ok(BigRational::from_integer(n.as_i64().unwrap().into())),
        _ => Err(schema(ptr, "expected a rational string \"a/b\"")),
    }
}

fn as_q(v: &Value, ptr: &str) -> Result<Q> {
    let r = as_rational(v, ptr)?;
    let n: i64 = r.numer().try_into().map_err(|_| schema(ptr, "rational out of range"))?;
    let d: i64 = r.denom().try_into().map_err(|_| schema(ptr, "rational out of range"))?;
    Ok(Q::new(n, d))
}

fn opt_i64(obj: &Map<String, Value>, key: &str, ptr: &str, default: i64) -> Result<i64> {
    match obj.get(key) {
        None | Some(Value::Null) => Ok(default),
        Some(v) => as_i64(v, &format!("{ptr}/{key}")),
    }
}

fn opt_q(obj: &Map<String, Value>, key: &str, ptr: &str) -> Result<Q> {
    match obj.get(key) {
        None | Some(Value::Null) => Ok(Q::zero()),
        Some(v) => as_q(v, &format!("{ptr}/{key}")),
    }
}

/// Exact coefficient as a list of monomial terms.
pub fn exact_coeff_to_json(c: &ExactCoeff) -> Value {
    let terms: Vec<Value> = c
        .iter()
        .map(|(m, g)| {
            let sym: Map<String, Value> = m.iter().map(|(s, e)| (s.name(), json!(e))).collect();
            json!({"re": rat_str(&g.re), "im": rat_str(&g.im), "sym": sym})
        })
        .collect();
    Value::Array(terms)
}

pub fn exact_coeff_from_json(v: &Value, ptr: &str) -> Result<ExactCoeff> {
    let mut out = ExactCoeff::zero();
    for (i, t) in as_arr(v, ptr)?.iter().enumerate() {
        let p = format!("{ptr}/{i}");
        let o = as_obj(t, &p)?;
        let re = match o.get("re") {
            Some(v) => as_rational(v, &format!("{p}/re"))?,
            None => BigRational::zero(),
        };
        let im = match o.get("im") {
            Some(v) => as_rational(v, &format!("{p}/im"))?,
            None => BigRational::zero(),
        };
        let mut pairs = Vec::new();
        if let Some(sym) = o.get("sym") {
            let sp = format!("{p}/sym");
            for (name, e) in as_obj(sym, &sp)? {
                let ep = format!("{sp}/{name}");
                let s = Symbol::parse(name).map_err(|e| schema(&ep, e.to_string()))?;
                let e = as_i64(e, &ep)?;
                pairs.push((s.register(), i32::try_from(e).map_err(|_| schema(&ep, "exponent out of range"))?));
            }
        }
        out = out + ExactCoeff::monomial(gauss(re, im), Monomial::from_pairs(pairs));
    }
    Ok(out)
}

/// Standalone coefficient: {"mode":"exact","terms":[...]} or {"mode":"float","re":..,"im":..}.
pub fn coefficient_to_json(c: &crate::Coefficient) -> Value {
    match c {
        crate::Coefficient::Exact(e) => json!({"mode": "exact", "terms": exact_coeff_to_json(e)}),
        crate::Coefficient::Float(f) => {
            let mut o = float_coeff_to_json(f);
            o["mode"] = json!("float");
            o
        }
    }
}

pub fn coefficient_from_json(v: &Value) -> Result<crate::Coefficient> {
    let o = as_obj(v, "")?;
    match get(o, "mode", "")?.as_str() {
        Some("exact") => Ok(crate::Coefficient::Exact(exact_coeff_from_json(get(o, "terms", "")?, "/terms")?)),
        Some("float") => Ok(crate::Coefficient::Float(float_coeff_from_json(v, "")?)),
        _ => Err(schema("/mode", "mode must be \"exact\" or \"float\"")),
    }
}

fn float_digits() -> usize {
    (working_precision() as f64 * std::f64::consts::LOG10_2).ceil() as usize + 2
}

pub fn float_coeff_to_json(c: &FloatCoeff) -> Value {
    let d = float_digits();
    json!({"re": c.re.to_decimal(d), "im": c.im.to_decimal(d)})
}

fn parse_real(v: &Value, ptr: &str) -> Result<BigReal> {
    match v {
        Value::String(s) => {
            if let Some(r) = parse_big_rational(s).filter(|_| s.contains('/')) {
                return Ok(BigReal::from_rational(&r));
            }
            BigReal::from_str_radix(s.trim(), 10).map_err(|e| schema(ptr, e))
        }
        Value::Number(n) => Ok(BigReal::from_f64(n.as_f64().unwrap_or(f64::NAN))),
        _ => Err(schema(ptr, "expected a decimal string")),
    }
}

pub fn float_coeff_from_json(v: &Value, ptr: &str) -> Result<FloatCoeff> {
    let o = as_obj(v, ptr)?;
    let re = match o.get("re") {
        Some(x) => parse_real(x, &format!("{ptr}/re"))?,
        None => BigReal::zero(),
    };
    let im = match o.get("im") {
        Some(x) => parse_real(x, &format!("{ptr}/im"))?,
        None => BigReal::zero(),
    };
    Ok(Complex::new(re, im))
}

fn key_fields(key: &TermKey, o: &mut Map<String, Value>) {
    o.insert("u_pow".into(), json!(key.u_pow));
    o.insert("u_freq".into(), json!(q_str(&key.u_freq)));
    o.insert("v_pow".into(), json!(key.v_pow));
    o.insert("log_pow".into(), json!(key.log_pow));
    o.insert("v_decay".into(), json!(q_str(&key.v_decay)));
    o.insert(
        "gamma".into(),
        match &key.gamma {
            Some(g) => json!({"s": g.s, "lambda": q_str(&g.lambda)}),
            None => Value::Null,
        },
    );
}

fn key_from(o: &Map<String, Value>, ptr: &str) -> Result<TermKey> {
    let u_pow = opt_i64(o, "u_pow", ptr, 0)?;
    if u_pow < 0 {
        return Err(schema(&format!("{ptr}/u_pow"), "u_pow must be non-negative"));
    }
    let log_pow = opt_i64(o, "log_pow", ptr, 0)?;
    if log_pow < 0 {
        return Err(schema(&format!("{ptr}/log_pow"), "log_pow must be non-negative"));
    }
    let gamma = match o.get("gamma") {
        None | Some(Value::Null) => None,
        Some(g) => {
            let gp = format!("{ptr}/gamma");
            let go = as_obj(g, &gp)?;
            let s = as_i64(get(go, "s", &gp)?, &format!("{gp}/s"))?;
            let lambda = as_q(get(go, "lambda", &gp)?, &format!("{gp}/lambda"))?;
            if lambda <= Q::zero() {
                return Err(schema(&format!("{gp}/lambda"), "λ must be positive"));
            }
            Some(GammaAtom { s, lambda })
        }
    };
    Ok(TermKey {
        u_freq: opt_q(o, "u_freq", ptr)?,
        v_decay: opt_q(o, "v_decay", ptr)?,
        u_pow: u_pow as u32,
        v_pow: opt_i64(o, "v_pow", ptr, 0)?,
        log_pow: log_pow as u32,
        gamma,
    })
}

fn header<C: Scalar>(f: &Expansion<C>, mode: &str) -> Map<String, Value> {
    let mut o = Map::new();
    o.insert("weight".into(), json!(f.weight()));
    o.insert("level".into(), json!(f.level()));
    o.insert("trunc".into(), f.trunc().map_or(Value::Null, |m| json!(q_str(&m))));
    o.insert("mode".into(), json!(mode));
    o
}

pub fn exact_to_json(f: &Expansion<ExactCoeff>) -> Value {
    let mut o = header(f, "exact");
    let terms: Vec<Value> = f
        .terms()
        .map(|(k, c)| {
            let mut t = Map::new();
            t.insert("coeff".into(), exact_coeff_to_json(c));
            key_fields(k, &mut t);
            Value::Object(t)
        })
        .collect();
    o.insert("terms".into(), Value::Array(terms));
    Value::Object(o)
}

pub fn float_to_json(f: &Expansion<FloatCoeff>) -> Value {
    let mut o = header(f, "float");
    o.insert("prec".into(), json!(working_precision()));
    let terms: Vec<Value> = f
        .terms()
        .map(|(k, c)| {
            let mut t = Map::new();
            t.insert("coeff".into(), float_coeff_to_json(c));
            key_fields(k, &mut t);
            Value::Object(t)
        })
        .collect();
    o.insert("terms".into(), Value::Array(terms));
    Value::Object(o)
}

pub fn expansion_to_json(f: &AnyExpansion) -> Value {
    match f {
        AnyExpansion::Exact(e) => exact_to_json(e),
        AnyExpansion::Float(e) => float_to_json(e),
    }
}

fn expansion_at(v: &Value, ptr: &str) -> Result<AnyExpansion> {
    let o = as_obj(v, ptr)?;
    let weight = as_i64(get(o, "weight", ptr)?, &format!("{ptr}/weight"))?;
    let level = opt_i64(o, "level", ptr, 1)?;
    if level < 1 {
        return Err(schema(&format!("{ptr}/level"), "level must be positive"));
    }
    let trunc = match o.get("trunc") {
        None | Some(Value::Null) => None,
        Some(t) => Some(as_q(t, &format!("{ptr}/trunc"))?),
    };
    let mode = match o.get("mode") {
        None => "exact",
        Some(m) => m.as_str().ok_or_else(|| schema(&format!("{ptr}/mode"), "expected a string"))?,
    };
    let terms = as_arr(get(o, "terms", ptr)?, &format!("{ptr}/terms"))?;
    match mode {
        "exact" => {
            let mut f = Expansion::new(weight, trunc).with_level(level as u64);
            for (i, t) in terms.iter().enumerate() {
                let p = format!("{ptr}/terms/{i}");
                let to = as_obj(t, &p)?;
                let key = key_from(to, &p)?;
                let c = exact_coeff_from_json(get(to, "coeff", &p)?, &format!("{p}/coeff"))?;
                f.push(key, c);
            }
            Ok(AnyExpansion::Exact(f))
        }
        "float" => {
            let mut f = Expansion::new(weight, trunc).with_level(level as u64);
            for (i, t) in terms.iter().enumerate() {
                let p = format!("{ptr}/terms/{i}");
                let to = as_obj(t, &p)?;
                let key = key_from(to, &p)?;
                let c = float_coeff_from_json(get(to, "coeff", &p)?, &format!("{p}/coeff"))?;
                f.push(key, c);
            }
            Ok(AnyExpansion::Float(f))
        }
        other => Err(schema(&format!("{ptr}/mode"), format!("unknown mode {other:?}"))),
    }
}

pub fn expansion_from_json(v: &Value) -> Result<AnyExpansion> {
    expansion_at(v, "")
}

pub fn expansion_from_str(s: &str) -> Result<AnyExpansion> {
    let v: Value = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
    expansion_from_json(&v)
}

/// Either a scalar or a vector-valued form, as read from a file.
#[derive(Clone, Debug, PartialEq)]
pub enum AnyForm {
    Scalar(AnyExpansion),
    Vector(AnyVV),
}

#[derive(Clone, Debug, PartialEq)]
pub enum AnyVV {
    Exact(VVExpansion<ExactCoeff>),
    Float(VVExpansion<FloatCoeff>),
}

pub fn vv_to_json(f: &AnyVV) -> Value {
    let (m, w, comps): (usize, i64, Vec<Value>) = match f {
        AnyVV::Exact(v) => (v.m, v.weight, v.components.iter().map(exact_to_json).collect()),
        AnyVV::Float(v) => (v.m, v.weight, v.components.iter().map(float_to_json).collect()),
    };
    json!({"m": m, "weight": w, "components": comps})
}

pub fn vv_from_json(v: &Value) -> Result<AnyVV> {
    let o = as_obj(v, "")?;
    let m = as_i64(get(o, "m", "")?, "/m")?;
    if m < 0 {
        return Err(schema("/m", "m must be non-negative"));
    }
    let weight = as_i64(get(o, "weight", "")?, "/weight")?;
    let comps = as_arr(get(o, "components", "")?, "/components")?;
    if comps.len() != m as usize + 1 {
        return Err(schema("/components", format!("expected {} components", m + 1)));
    }
    let parsed = comps
        .iter()
        .enumerate()
        .map(|(i, c)| expansion_at(c, &format!("/components/{i}")))
        .collect::<Result<Vec<_>>>()?;
    let schema_err = |e: Error| schema("/components", e.to_string());
    if parsed.iter().all(|p| matches!(p, AnyExpansion::Exact(_))) {
        let cs = parsed
            .into_iter()
            .map(|p| match p {
                AnyExpansion::Exact(e) => e,
                _ => unreachable!(),
            })
            .collect();
        Ok(AnyVV::Exact(VVExpansion::new(m as usize, weight, cs).map_err(schema_err)?))
    } else {
        let cs = parsed.iter().map(|p| p.to_float()).collect();
        Ok(AnyVV::Float(VVExpansion::new(m as usize, weight, cs).map_err(schema_err)?))
    }
}

pub fn form_from_str(s: &str) -> Result<AnyForm> {
    let v: Value = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
    if v.get("components").is_some() {
        Ok(AnyForm::Vector(vv_from_json(&v)?))
    } else {
        Ok(AnyForm::Scalar(expansion_from_json(&v)?))
    }
}

fn bound(x: Option<i64>) -> Value {
    x.map_or(Value::Null, |v| json!(v))
}

pub fn descriptor_to_json(d: &GKDescriptor, warnings: &[String]) -> Value {
    let names = |v: &[crate::gkmod::IrrFactor]| v.iter().map(|f| json!(f.name())).collect::<Vec<_>>();
    let ktypes: Vec<Value> = d
        .ktype_intervals()
        .iter()
        .map(|(lo, hi)| json!({"from": bound(*lo), "to": bound(*hi), "step": 2, "multiplicity": 1}))
        .collect();
    json!({
        "case": d.case.as_str(),
        "k": d.k,
        "nu": d.nu,
        "certainty": certainty_label(d.certainty),
        "factors": names(&d.factors()),
        "socle": d.socle.iter().map(|l| Value::Array(names(l))).collect::<Vec<_>>(),
        "ktypes": {"intervals": ktypes},
        "split": d.split,
        "sequence": d.sequence(),
        "subquotient": d.subquotient().as_str(),
        "warnings": warnings,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn e2star_round_trip() {
        let f = catalog::e2star(8).unwrap();
        let j = exact_to_json(&f);
        let back = expansion_from_json(&j).unwrap();
        assert_eq!(back, AnyExpansion::Exact(f));
        let s = serde_json::to_string(&j).unwrap();
        assert_eq!(expansion_from_str(&s).unwrap(), back);
    }

    #[test]
    fn gamma_atoms_round_trip() {
        let f = catalog::harmonic_eis(2, 5).unwrap();
        let back = expansion_from_json(&exact_to_json(&f)).unwrap();
        assert_eq!(back, AnyExpansion::Exact(f));
    }

    #[test]
    fn vv_round_trip() {
        let f = crate::symtensor::estar_vv(2, 4).unwrap();
        let j = vv_to_json(&AnyVV::Exact(f.clone()));
        assert_eq!(j["m"], json!(2));
        assert_eq!(vv_from_json(&j).unwrap(), AnyVV::Exact(f));
    }

    #[test]
    fn float_round_trip() {
        let f = catalog::delta(6).unwrap().convert(FloatCoeff::from_exact).scale(&FloatCoeff::pi_pow(1));
        let back = expansion_from_json(&float_to_json(&f)).unwrap();
        let AnyExpansion::Float(g) = back else { panic!() };
        let d = g.sub(&f).unwrap();
        assert!(d.terms().all(|(_, c)| c.magnitude() < 1e-70));
    }

    #[test]
    fn malformed_decay_points_at_field() {
        let s = r#"{"weight":0,"level":1,"trunc":"5","mode":"exact","terms":[
            {"coeff":[{"re":"1","im":"0","sym":{}}],"u_pow":0,"u_freq":"1","v_pow":0,"log_pow":0,"v_decay":"1/0","gamma":null}]}"#;
        match expansion_from_str(s) {
            Err(Error::Schema(ptr, _)) => assert_eq!(ptr, "/terms/0/v_decay"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn symbol_exponents() {
        let v = json!({"mode":"exact","terms":[{"re":"a/b"}]});
        assert!(matches!(coefficient_from_json(&v), Err(Error::Schema(..))));
        let v = json!({"mode":"exact","terms":[{"re":"3/2","im":"-1","sym":{"pi":-1,"zeta3":1}}]});
        let c = coefficient_from_json(&v).unwrap();
        assert_eq!(coefficient_from_json(&coefficient_to_json(&c)).unwrap(), c);
        let crate::Coefficient::Exact(e) = c else { panic!() };
        assert_eq!(e.symbols().len(), 2);
    }

    #[test]
    fn descriptor_fields() {
        let d = crate::gkmod::classify_form(&catalog::inv_delta(10).unwrap()).unwrap();
        let j = descriptor_to_json(&d.descriptor, &d.warnings);
        assert_eq!(j["case"], "Ib");
        assert_eq!(j["nu"], 13);
        assert_eq!(j["socle"], json!([["DS+(13)"], ["FD(13)"]]));
    }
}
