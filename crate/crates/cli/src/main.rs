use std::path::Path;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use num_traits::{Num, Zero};
use serde_json::{json, Value};

use maasslab::analytic::eisenstein::{eis_coset_sum, eis_fourier_eval, Estimate};
use maasslab::analytic::eval::{eval_components, Point};
use maasslab::analytic::laurent::{nilpotence, LaurentFamily};
use maasslab::analytic::poincare::{poincare_eval, sesqui_poincare_eval};
use maasslab::gkmod::diagram::{diagram, render_descriptor, DiagramSpec};
use maasslab::gkmod::{classify_components, subquotient_status, Classification};
use maasslab::json::{descriptor_to_json, expansion_to_json, form_from_str, vv_to_json, AnyExpansion, AnyForm, AnyVV};
use maasslab::maassops::{apply_chain, check_chain, parse_chain};
use maasslab::real::set_working_precision;
use maasslab::symtensor::{e_poly, estar_vv, vv_apply};
use maasslab::{catalog, verify, BigComplex, BigReal, Error, FloatCoeff, Real, Scalar};

#[derive(Parser, Debug)]
#[command(name = "maasslab", version, about = "Harmonic Maass forms and their (g,K)-modules")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,

    /// Catalog name (e.g. `inv_delta`, `harmonic_eis(2)`, `e_poly(2,2)`) or a JSON file.
    #[arg(long, global = true)]
    form: Option<String>,

    /// Comma separated parameters for the form or the subcommand.
    #[arg(long, global = true, allow_hyphen_values = true)]
    params: Option<String>,

    /// Truncation bound M.
    #[arg(long, global = true, default_value_t = 20)]
    trunc: i64,

    #[arg(long, global = true, value_enum, default_value_t = Mode::Exact)]
    mode: Mode,

    /// Working precision in bits.
    #[arg(long, global = true, env = "MAASSLAB_PREC", default_value_t = 256)]
    prec: usize,

    /// Evaluation point as `u,v`.
    #[arg(long, global = true, allow_hyphen_values = true)]
    tau: Option<String>,

    /// Coset cutoff C for series summed over Γ∞\Γ.
    #[arg(long, global = true)]
    cutoff: Option<u64>,

    #[arg(long, global = true, value_enum, default_value_t = Out::Json)]
    out: Out,
}

#[derive(Clone, Copy, Debug, PartialEq, ValueEnum)]
enum Mode {
    Exact,
    Float,
}

#[derive(Clone, Copy, Debug, PartialEq, ValueEnum)]
enum Out {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Print the expansion of a form.
    Build,
    /// Apply an operator chain such as `L,L,R` (left to right).
    Apply { chain: String },
    /// Case label, descriptor, subquotient status and diagram of the generated module.
    Classify,
    /// Diagram of a form's module, or of `kronecker` / `laurent` (with --params k,r).
    Diagram { what: Option<String> },
    /// Evaluate a form at --tau.
    Eval,
    /// Weight-r Eisenstein series at --tau from cosets and from Fourier modes (--params r,s).
    Eis,
    /// Poincaré series at --tau (--params k,m).
    Poincare {
        /// Sesquiharmonic series instead of the harmonic one.
        #[arg(long)]
        sesqui: bool,
    },
    /// Run a built-in identity check, or `all`.
    Verify { identity: String },
    /// Laurent coefficients of E_{ℓ,s} at s₀ and their relations (--params l,s0).
    Laurent {
        /// Largest order r.
        #[arg(long, default_value_t = 2)]
        order: usize,
    },
}

struct Failure(Value);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let (kind, pointer) = match &e {
            Error::ModeMismatch(_) => ("mode-mismatch", None),
            Error::PrecisionMismatch(..) => ("precision-mismatch", None),
            Error::WeightMismatch(..) => ("weight-mismatch", None),
            Error::LevelMismatch(..) => ("level-mismatch", None),
            Error::UnsupportedTerm(_) => ("unsupported-term", None),
            Error::Domain(_) => ("domain", None),
            Error::Truncation(_) => ("truncation", None),
            Error::UnknownForm(_) => ("unknown-form", None),
            Error::BadParameter(_) => ("bad-parameter", None),
            Error::Parse(_) => ("parse", None),
            Error::Schema(p, _) => ("schema", Some(p.clone())),
            Error::Numeric(_) => ("numeric", None),
        };
        let mut v = json!({"kind": kind, "message": e.to_string()});
        if let Some(p) = pointer {
            v["pointer"] = json!(p);
        }
        Failure(json!({ "error": v }))
    }
}

fn fail(kind: &str, msg: impl Into<String>) -> Failure {
    Failure(json!({"error": {"kind": kind, "message": msg.into()}}))
}

type Res<T> = std::result::Result<T, Failure>;

struct Report {
    json: Value,
    text: String,
    ok: bool,
}

impl Report {
    fn ok(json: Value, text: String) -> Self {
        Report { json, text, ok: true }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = e.print();
                return ExitCode::SUCCESS;
            }
            let v = json!({"error": {"kind": "usage", "message": e.to_string().trim()}});
            println!("{}", serde_json::to_string_pretty(&v).unwrap());
            return ExitCode::from(2);
        }
    };
    set_working_precision(cli.prec);
    match run(&cli) {
        Ok(r) => {
            match cli.out {
                Out::Json => println!("{}", serde_json::to_string_pretty(&r.json).unwrap()),
                Out::Text => println!("{}", r.text.trim_end()),
            }
            if r.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure(v)) => {
            println!("{}", serde_json::to_string_pretty(&v).unwrap());
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Res<Report> {
    match &cli.cmd {
        Cmd::Build => {
            let f = load_form(cli)?;
            Ok(Report::ok(form_json(&f), form_text(&f)))
        }
        Cmd::Apply { chain } => apply(cli, chain),
        Cmd::Classify => classify(cli),
        Cmd::Diagram { what } => draw(cli, what.as_deref()),
        Cmd::Eval => eval(cli),
        Cmd::Eis => eis(cli),
        Cmd::Poincare { sesqui } => poincare(cli, *sesqui),
        Cmd::Verify { identity } => run_verify(cli, identity),
        Cmd::Laurent { order } => laurent(cli, *order),
    }
}

/// Splits `name(a,b)` into the name and its inline parameters.
fn split_spec(spec: &str) -> Res<(String, Vec<String>)> {
    match spec.find('(') {
        None => Ok((spec.trim().to_string(), Vec::new())),
        Some(i) => {
            let inner = spec[i + 1..]
                .strip_suffix(')')
                .ok_or_else(|| fail("bad-parameter", format!("unbalanced parentheses in {spec:?}")))?;
            Ok((spec[..i].trim().to_string(), split_list(inner)))
        }
    }
}

fn split_list(s: &str) -> Vec<String> {
    s.split(',').map(str::trim).filter(|t| !t.is_empty()).map(String::from).collect()
}

fn ints(xs: &[String]) -> Res<Vec<i64>> {
    xs.iter()
        .map(|x| x.parse::<i64>().map_err(|_| fail("bad-parameter", format!("expected an integer, got {x:?}"))))
        .collect()
}

fn params(cli: &Cli) -> Vec<String> {
    cli.params.as_deref().map(split_list).unwrap_or_default()
}

fn load_form(cli: &Cli) -> Res<AnyForm> {
    let spec = cli.form.as_deref().ok_or_else(|| fail("bad-parameter", "--form is required"))?;
    let form = if Path::new(spec).is_file() {
        let text = std::fs::read_to_string(spec).map_err(|e| fail("io", format!("{spec}: {e}")))?;
        form_from_str(&text)?
    } else {
        let (name, mut inline) = split_spec(spec)?;
        if inline.is_empty() {
            inline = params(cli);
        }
        let ps = ints(&inline)?;
        let nat = |i: usize| -> Res<usize> {
            let x = *ps.get(i).ok_or_else(|| fail("bad-parameter", format!("{name} needs parameter #{}", i + 1)))?;
            usize::try_from(x).map_err(|_| fail("bad-parameter", format!("{name}: parameter #{} must be ≥ 0", i + 1)))
        };
        match name.as_str() {
            "estar_vv" => AnyForm::Vector(AnyVV::Exact(estar_vv(nat(0)?, cli.trunc)?)),
            "e_poly" => AnyForm::Vector(AnyVV::Exact(e_poly(nat(0)?, nat(1)?)?)),
            _ => AnyForm::Scalar(AnyExpansion::Exact(catalog::by_name(&name, &ps, cli.trunc)?)),
        }
    };
    Ok(match cli.mode {
        Mode::Exact => form,
        Mode::Float => to_float(form),
    })
}

fn to_float(f: AnyForm) -> AnyForm {
    match f {
        AnyForm::Scalar(e) => AnyForm::Scalar(AnyExpansion::Float(e.to_float())),
        AnyForm::Vector(AnyVV::Exact(v)) => AnyForm::Vector(AnyVV::Float(v.convert(FloatCoeff::from_exact))),
        v => v,
    }
}

fn form_json(f: &AnyForm) -> Value {
    match f {
        AnyForm::Scalar(e) => expansion_to_json(e),
        AnyForm::Vector(v) => vv_to_json(v),
    }
}

fn form_text(f: &AnyForm) -> String {
    match f {
        AnyForm::Scalar(AnyExpansion::Exact(e)) => format!("{e}"),
        AnyForm::Scalar(AnyExpansion::Float(e)) => format!("{e}"),
        AnyForm::Vector(v) => {
            let comps: Vec<String> = match v {
                AnyVV::Exact(v) => v.components.iter().map(|c| c.to_string()).collect(),
                AnyVV::Float(v) => v.components.iter().map(|c| c.to_string()).collect(),
            };
            comps.iter().enumerate().map(|(i, c)| format!("[X^{i}] {c}\n")).collect()
        }
    }
}

fn weight(f: &AnyForm) -> i64 {
    match f {
        AnyForm::Scalar(e) => e.weight(),
        AnyForm::Vector(AnyVV::Exact(v)) => v.weight,
        AnyForm::Vector(AnyVV::Float(v)) => v.weight,
    }
}

fn apply(cli: &Cli, chain: &str) -> Res<Report> {
    let ops = parse_chain(chain)?;
    let f = load_form(cli)?;
    check_chain(&ops, weight(&f))?;
    let vv = |mut v| -> maasslab::Result<_> {
        for op in &ops {
            v = vv_apply(*op, &v)?;
        }
        Ok(v)
    };
    let g = match f {
        AnyForm::Scalar(AnyExpansion::Exact(e)) => AnyForm::Scalar(AnyExpansion::Exact(apply_chain(&ops, &e)?)),
        AnyForm::Scalar(AnyExpansion::Float(e)) => AnyForm::Scalar(AnyExpansion::Float(apply_chain(&ops, &e)?)),
        AnyForm::Vector(AnyVV::Exact(v)) => AnyForm::Vector(AnyVV::Exact(vv(v)?)),
        AnyForm::Vector(AnyVV::Float(v)) => {
            let mut v = v;
            for op in &ops {
                v = vv_apply(*op, &v)?;
            }
            AnyForm::Vector(AnyVV::Float(v))
        }
    };
    Ok(Report::ok(form_json(&g), form_text(&g)))
}

fn classification(f: &AnyForm) -> Res<Classification> {
    let tol = 1e-20;
    Ok(match f {
        AnyForm::Scalar(AnyExpansion::Exact(e)) => classify_components(std::slice::from_ref(e), tol)?,
        AnyForm::Scalar(AnyExpansion::Float(e)) => classify_components(std::slice::from_ref(e), tol)?,
        AnyForm::Vector(AnyVV::Exact(v)) => classify_components(&v.components, tol)?,
        AnyForm::Vector(AnyVV::Float(v)) => classify_components(&v.components, tol)?,
    })
}

fn classify(cli: &Cli) -> Res<Report> {
    let f = load_form(cli)?;
    let c = classification(&f)?;
    let d = &c.descriptor;
    let status = subquotient_status(d.case).as_str();
    let picture = render_descriptor(d);
    let json = json!({
        "case": d.case.as_str(),
        "descriptor": descriptor_to_json(d, &c.warnings),
        "subquotient_status": status,
        "diagram": picture,
    });
    let mut text = format!(
        "case {}  (k = {}, ν = {}, {})\nsubquotient status: {status}\n",
        d.case.as_str(),
        d.k,
        d.nu,
        maasslab::gkmod::certainty_label(d.certainty)
    );
    for w in &c.warnings {
        text.push_str(&format!("warning: {w}\n"));
    }
    text.push('\n');
    text.push_str(&picture);
    Ok(Report::ok(json, text))
}

fn draw(cli: &Cli, what: Option<&str>) -> Res<Report> {
    let spec = match what {
        Some("kronecker") => DiagramSpec::Kronecker,
        Some("laurent") => {
            let p = ints(&params(cli))?;
            if p.len() != 2 || p[1] < 0 {
                return Err(fail("bad-parameter", "laurent diagrams need --params k,r with r ≥ 0"));
            }
            DiagramSpec::Laurent { k: p[0], r: p[1] as u32 }
        }
        Some(other) => return Err(fail("bad-parameter", format!("unknown diagram {other:?}; use kronecker, laurent or --form"))),
        None => DiagramSpec::Descriptor(classification(&load_form(cli)?)?.descriptor),
    };
    let picture = diagram(&spec);
    Ok(Report::ok(json!({ "diagram": picture }), picture))
}

fn digits() -> usize {
    (maasslab::real::working_precision() as f64 * std::f64::consts::LOG10_2).floor() as usize - 2
}

fn complex_json(z: &BigComplex) -> Value {
    json!({"re": z.re.to_decimal(digits()), "im": z.im.to_decimal(digits())})
}

fn complex_text(z: &BigComplex) -> String {
    let d = digits().min(30);
    let im = &z.im;
    if *im < BigReal::zero() {
        format!("{} - {}i", z.re.to_decimal(d), (-im.clone()).to_decimal(d))
    } else {
        format!("{} + {}i", z.re.to_decimal(d), im.to_decimal(d))
    }
}

fn parse_real(s: &str) -> Res<BigReal> {
    BigReal::from_str_radix(s, 10).map_err(|_| fail("bad-parameter", format!("not a number: {s:?}")))
}

fn point(cli: &Cli) -> Res<Point<BigReal>> {
    let spec = cli.tau.as_deref().ok_or_else(|| fail("bad-parameter", "--tau u,v is required"))?;
    let parts = split_list(spec);
    if parts.len() != 2 {
        return Err(fail("bad-parameter", format!("--tau expects u,v, got {spec:?}")));
    }
    let num = |s: &str| -> Res<BigReal> {
        parse_real(s)
    };
    Ok(Point::new(num(&parts[0])?, num(&parts[1])?)?)
}

fn eval(cli: &Cli) -> Res<Report> {
    let f = load_form(cli)?;
    let p = point(cli)?;
    let (values, tail) = match &f {
        AnyForm::Scalar(AnyExpansion::Exact(e)) => eval_components(std::slice::from_ref(e), &p)?,
        AnyForm::Scalar(AnyExpansion::Float(e)) => eval_components(std::slice::from_ref(e), &p)?,
        AnyForm::Vector(AnyVV::Exact(v)) => eval_components(&v.components, &p)?,
        AnyForm::Vector(AnyVV::Float(v)) => eval_components(&v.components, &p)?,
    };
    let mut text = String::new();
    for (i, z) in values.iter().enumerate() {
        if values.len() > 1 {
            text.push_str(&format!("[X^{i}] "));
        }
        text.push_str(&complex_text(z));
        text.push('\n');
    }
    text.push_str(&format!("tail bound {tail:.2e}"));
    let vals: Vec<Value> = values.iter().map(complex_json).collect();
    let json = if vals.len() == 1 {
        json!({"value": vals[0], "tail": tail})
    } else {
        json!({"values": vals, "tail": tail})
    };
    Ok(Report::ok(json, text))
}

fn estimate_json(e: &Estimate<BigReal>, secs: f64) -> Value {
    json!({"value": complex_json(&e.value), "tail": e.tail, "terms": e.terms, "seconds": secs})
}

fn eis(cli: &Cli) -> Res<Report> {
    let p = params(cli);
    if p.len() != 2 {
        return Err(fail("bad-parameter", "eis needs --params r,s"));
    }
    let r = ints(&p[..1])?[0];
    let s = parse_real(&p[1])?;
    let tau = point(cli)?.tau();
    let cutoff = cli.cutoff.unwrap_or(500);
    let m = u64::try_from(cli.trunc).map_err(|_| fail("bad-parameter", "--trunc must be ≥ 0"))?;
    let t0 = Instant::now();
    let cos = eis_coset_sum(r, &s, &tau, cutoff)?;
    let t1 = Instant::now();
    let four = eis_fourier_eval(r, &s, &tau, m)?;
    let t2 = Instant::now();
    let diff = maasslab::analytic::eval::abs_f64(&(cos.value.clone() - four.value.clone()));
    let (a, b) = ((t1 - t0).as_secs_f64(), (t2 - t1).as_secs_f64());
    let json = json!({
        "cosets": estimate_json(&cos, a),
        "fourier": estimate_json(&four, b),
        "difference": diff,
    });
    let text = format!(
        "cosets  (C = {cutoff}): {}  tail {:.1e}  {a:.2}s\nFourier (M = {m}): {}  tail {:.1e}  {b:.2}s\n|difference| = {diff:.3e}",
        complex_text(&cos.value),
        cos.tail,
        complex_text(&four.value),
        four.tail
    );
    Ok(Report::ok(json, text))
}

fn poincare(cli: &Cli, sesqui: bool) -> Res<Report> {
    let p = ints(&params(cli))?;
    if p.len() != 2 {
        return Err(fail("bad-parameter", "poincare needs --params k,m"));
    }
    let tau = point(cli)?.tau();
    let cutoff = cli.cutoff.unwrap_or(200);
    let t0 = Instant::now();
    let e = if sesqui {
        sesqui_poincare_eval(p[0], p[1], &tau, cutoff)?
    } else {
        poincare_eval(p[0], p[1], &tau, cutoff)?
    };
    let secs = t0.elapsed().as_secs_f64();
    let text = format!("{}  tail {:.1e}  ({} cosets, {secs:.2}s)", complex_text(&e.value), e.tail, e.terms);
    Ok(Report::ok(estimate_json(&e, secs), text))
}

fn run_verify(cli: &Cli, identity: &str) -> Res<Report> {
    let reports = verify::run(identity, cli.trunc)?;
    let ok = reports.iter().all(|r| r.pass);
    let mut text = String::new();
    for r in &reports {
        text.push_str(&format!("{:<18} {}  residual {}\n", r.name, if r.pass { "PASS" } else { "FAIL" }, r.residual));
        for d in &r.details {
            text.push_str(&format!("    {d}\n"));
        }
    }
    let json = json!({
        "pass": ok,
        "results": reports.iter().map(|r| r.to_json()).collect::<Vec<_>>(),
    });
    Ok(Report { json, text, ok })
}

fn laurent(cli: &Cli, order: usize) -> Res<Report> {
    let p = ints(&params(cli))?;
    let (l, s0) = match p.as_slice() {
        [] => (4, 3),
        [l, s0] => (*l, *s0),
        _ => return Err(fail("bad-parameter", "laurent needs --params l,s0")),
    };
    let pt = match cli.tau {
        Some(_) => point(cli)?,
        None => Point::new(BigReal::zero(), BigReal::from_f64(1.05))?,
    };
    let m_max = u64::try_from(cli.trunc.min(4)).map_err(|_| fail("bad-parameter", "--trunc must be ≥ 0"))?;
    let fam = LaurentFamily::new(l, s0, &pt.v, m_max, order)?;
    let mut rows = Vec::new();
    let mut text = format!("E_{{{l},s}} around s₀ = {s0} at τ = {} + {}i, modes |n| ≤ {m_max}\n", pt.u.to_f64(), pt.v.to_f64());
    for r in 0..=order as i64 {
        let a = fam.at.slice(r)?.eval(&pt.u);
        let res = fam.residuals(r, -1)?;
        text.push_str(&format!(
            "A_{r} = {}\n    lowering {:.1e}  raising {:.1e}  Laplace {:.1e}\n",
            complex_text(&a),
            res.lower,
            res.raise,
            res.delta
        ));
        rows.push(json!({
            "r": r,
            "value": complex_json(&a),
            "residuals": {"lower": res.lower, "raise": res.raise, "delta": res.delta},
        }));
    }
    let mut json = json!({"l": l, "s0": s0, "modes": m_max, "orders": rows});
    if order >= 1 {
        let nil = nilpotence(&fam.at)?;
        text.push_str(&format!("Δ_{l} A_1 = {:.12} · A_0  (fit residual {:.1e})\n", nil.coefficient, nil.fit_residual));
        json["nilpotence"] = json!({"coefficient": nil.coefficient, "fit_residual": nil.fit_residual, "harmonic_residual": nil.harmonic_residual});
    }
    Ok(Report::ok(json, text))
}
