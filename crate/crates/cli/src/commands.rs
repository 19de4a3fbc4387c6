use std::fs;
use std::path::Path;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::de::DeserializeOwned;
use serde_json::{json, Value};
use symquad_core::bench::{run_bench, BenchConfig};
use symquad_core::sampling::random_rule;
use symquad_core::tractability::{NotionVerdict, Verdict};
use symquad_core::weighted::{kappa_sum, order_weights};
use symquad_core::{
    construct, enumerate_nabla, evaluate, folded_rectangle_rule, rectangle_rule, wce_rectangle, weighted_construct,
    Error, InvariancePattern, InvarianceProfile, Polynomial64, Rule64, Schedule64, Smoothness64,
};

use crate::args::{
    BenchArgs, CertifyArgs, Cli, Format, IntegrateArgs, NablaArgs, PatternArgs, RuleArgs, TractArgs, WceArgs,
    WeightsArgs,
};
use crate::table::{complex, fields, num, Table};

pub const SCHEMA_VERSION: u32 = 1;

/// A message and the exit code it maps to.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

pub const EXIT_NUMERICAL: i32 = 1;
pub const EXIT_REFUSED: i32 = 2;
pub const EXIT_INPUT: i32 = 3;
pub const EXIT_CAP: i32 = 4;

impl Failure {
    pub fn input(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_INPUT,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::CapExceeded { .. } | Error::Overflow(_) => EXIT_CAP,
            Error::NotBelowCritical { .. } => EXIT_REFUSED,
            Error::IllConditioned { .. } | Error::WeightEstimate(_) => EXIT_NUMERICAL,
            _ => EXIT_INPUT,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

type Outcome = Result<i32, Failure>;

fn read_json<T: DeserializeOwned>(path: &Path, what: &str) -> Result<T, Failure> {
    let text =
        fs::read_to_string(path).map_err(|e| Failure::input(format!("cannot read {what} file {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::input(format!("malformed {what} JSON in {}: {e}", path.display())))
}

fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure::input(format!("cannot write {}: {e}", path.display())))
}

/// Adds `schema_version` to a JSON object.
fn versioned(mut v: Value) -> Value {
    if let Value::Object(m) = &mut v {
        m.insert("schema_version".into(), json!(SCHEMA_VERSION));
    }
    v
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable")
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("serializable") + "\n"
}

/// Exact integer: a JSON number when it fits, else a decimal string.
fn big(n: &BigUint) -> Value {
    match n.to_u64() {
        Some(v) => json!(v),
        None => json!(n.to_string()),
    }
}

fn pattern(d: usize, args: &PatternArgs) -> Result<InvariancePattern, Failure> {
    Ok(match (&args.invariant, &args.groups) {
        (Some(s), _) => InvariancePattern::parse_single(d, s)?,
        (_, Some(s)) => InvariancePattern::parse_groups(d, s)?,
        _ => InvariancePattern::trivial(d)?,
    })
}

fn smoothness(alpha: f64) -> Result<Smoothness64, Failure> {
    Ok(Smoothness64::new(alpha)?)
}

pub fn run(cli: &Cli) -> Outcome {
    use crate::args::Command::*;
    match &cli.command {
        Nabla(a) => nabla(cli, a),
        Rule(a) => rule(cli, a),
        Integrate(a) => integrate(cli, a),
        Wce(a) => wce(cli, a),
        Certify(a) => certify(cli, a),
        Weights(a) => weights(cli, a),
        Tract(a) => tract(cli, a),
        Bench(a) => bench(cli, a),
    }
}

fn nabla(cli: &Cli, a: &NablaArgs) -> Outcome {
    let p = pattern(a.d, &a.pattern)?;
    let ks = enumerate_nabla(&p, cli.cap)?;
    let stats = ks
        .iter()
        .map(|k| p.orbit_stats(k))
        .collect::<Result<Vec<_>, _>>()?;
    let total: BigUint = stats.iter().map(|s| s.orbit_size.clone()).sum();
    match cli.format {
        Format::Json => {
            let rows: Vec<Value> = ks
                .iter()
                .zip(&stats)
                .map(|(k, s)| json!({"k": k, "orbit_size": big(&s.orbit_size), "stabilizer": big(&s.stabilizer_size)}))
                .collect();
            print!(
                "{}",
                pretty(&versioned(json!({
                    "command": "nabla",
                    "pattern": p,
                    "n_star": big(&p.n_star()),
                    "orbit_total": big(&total),
                    "rows": rows,
                })))
            );
        }
        Format::Table => {
            let mut t = Table::new(&["n", "k", "orbit_size", "stabilizer"]);
            for (n, (k, s)) in ks.iter().zip(&stats).enumerate() {
                t.row(vec![
                    n.to_string(),
                    k.to_string(),
                    s.orbit_size.to_string(),
                    s.stabilizer_size.to_string(),
                ]);
            }
            print!("{}", t.render());
            println!("N* = {}, orbit sizes sum to {} = 2^{}", p.n_star(), total, a.d);
        }
    }
    Ok(0)
}

fn rule(cli: &Cli, a: &RuleArgs) -> Outcome {
    let (kind, r): (&str, Rule64) = if a.rectangle {
        if a.pattern.invariant.is_some() || a.pattern.groups.is_some() {
            return Err(Failure::input("--rectangle takes no invariance pattern; use --folded"));
        }
        ("rectangle", rectangle_rule(a.d, cli.cap)?)
    } else if a.folded {
        ("folded", folded_rectangle_rule(&pattern(a.d, &a.pattern)?, cli.cap)?)
    } else {
        let n = a.random.expect("clap enforces one rule kind");
        if n as u64 > cli.cap {
            return Err(Error::CapExceeded {
                what: "random rule",
                requested: n.to_string(),
                cap: cli.cap,
            }
            .into());
        }
        ("random", random_rule(&mut ChaCha8Rng::seed_from_u64(cli.seed), a.d, n)?)
    };
    let doc = pretty(&versioned(to_value(&r)));
    if let Some(path) = &a.out {
        write_file(path, &doc)?;
        match cli.format {
            Format::Json => print!(
                "{}",
                pretty(&versioned(json!({"command": "rule", "kind": kind, "nodes": r.len(), "out": path})))
            ),
            Format::Table => println!("wrote {kind} rule with {} nodes to {}", r.len(), path.display()),
        }
        return Ok(0);
    }
    match cli.format {
        Format::Json => print!("{doc}"),
        Format::Table => {
            println!("{kind} rule, d = {}, N = {}", r.dim(), r.len());
            let mut t = Table::new(&["n", "node", "weight"]);
            for (n, (x, w)) in r.nodes().iter().zip(r.weights()).enumerate() {
                let node: Vec<String> = x.iter().map(|v| num(*v)).collect();
                t.row(vec![n.to_string(), format!("({})", node.join(",")), complex(*w)]);
            }
            print!("{}", t.render());
        }
    }
    Ok(0)
}

fn integrate(cli: &Cli, a: &IntegrateArgs) -> Outcome {
    let r: Rule64 = read_json(&a.rule, "rule")?;
    let f: Polynomial64 = read_json(&a.poly, "polynomial")?;
    let value = r.apply(&f)?;
    let exact = f.integral();
    let error = (exact - value).norm();
    match cli.format {
        Format::Json => print!(
            "{}",
            pretty(&versioned(json!({
                "command": "integrate",
                "nodes": r.len(),
                "value": {"re": value.re, "im": value.im},
                "integral": {"re": exact.re, "im": exact.im},
                "error": error,
            })))
        ),
        Format::Table => print!(
            "{}",
            fields(&[
                ("nodes", r.len().to_string()),
                ("rule value", complex(value)),
                ("integral", complex(exact)),
                ("error", num(error)),
            ])
        ),
    }
    Ok(0)
}

fn wce(cli: &Cli, a: &WceArgs) -> Outcome {
    let rep = wce_rectangle(a.d, smoothness(a.alpha)?, a.tol)?;
    let diff = (rep.closed_form - rep.oracle_value).abs();
    match cli.format {
        Format::Json => print!(
            "{}",
            pretty(&versioned(json!({
                "command": "wce",
                "d": a.d,
                "alpha": a.alpha,
                "report": rep,
                "difference": diff,
                "agrees": rep.agrees(),
                "initial_error": 1.0,
            })))
        ),
        Format::Table => print!(
            "{}",
            fields(&[
                ("closed form", num(rep.closed_form)),
                ("oracle", num(rep.oracle_value)),
                ("tail bound", num(rep.tail_bound)),
                ("difference", num(diff)),
                ("agrees", rep.agrees().to_string()),
                ("oracle terms", rep.oracle_terms.to_string()),
                ("initial error", "1".into()),
            ])
        ),
    }
    Ok(if rep.agrees() { 0 } else { EXIT_NUMERICAL })
}

fn certify(cli: &Cli, a: &CertifyArgs) -> Outcome {
    let r: Rule64 = read_json(&a.rule, "rule")?;
    if let Some(d) = a.d {
        if d != r.dim() {
            return Err(Error::DimensionMismatch {
                expected: d,
                found: r.dim(),
            }
            .into());
        }
    }
    let d = r.dim();
    let p = pattern(d, &a.pattern)?;
    let alpha = smoothness(a.alpha)?;
    let schedule: Option<Schedule64> = a.gammas.as_deref().map(|g| read_json(g, "weight schedule")).transpose()?;

    let n_star = p.n_star();
    if BigUint::from(r.len()) >= n_star {
        let upper = wce_rectangle(d, alpha, 1e-10)?.closed_form;
        match cli.format {
            Format::Json => print!(
                "{}",
                pretty(&versioned(json!({
                    "command": "certify",
                    "status": "refused",
                    "nodes": r.len(),
                    "n_star": big(&n_star),
                    "upper_bound": upper,
                })))
            ),
            Format::Table => {
                println!("refused: the rule has N = {} >= N* = {n_star} nodes", r.len());
                println!("the folded N*-point rule already has worst-case error <= {}", num(upper));
            }
        }
        return Ok(EXIT_REFUSED);
    }

    let cert = match &schedule {
        Some(w) => weighted_construct(&r, &p, alpha, w)?,
        None => construct(&r, &p, alpha)?,
    };
    let status = if cert.is_valid() { "valid" } else { "invalid" };
    let doc = versioned(to_value(&cert));
    if let Some(path) = &a.out {
        write_file(path, &pretty(&doc))?;
    }
    match cli.format {
        Format::Json => {
            let mut summary = json!({
                "command": "certify",
                "status": status,
                "weighted": schedule.is_some(),
            });
            match &a.out {
                Some(path) => summary["out"] = json!(path),
                None => summary["certificate"] = doc,
            }
            print!("{}", pretty(&versioned(summary)));
        }
        Format::Table => {
            let c = &cert.checks;
            print!(
                "{}",
                fields(&[
                    ("status", status.into()),
                    ("pattern", p.to_string()),
                    ("nodes", format!("N = {} < N* = {n_star}", r.len())),
                    ("pivot", format!("n* = {} ({})", cert.solution.pivot_index, cert.psi[cert.solution.pivot_index])),
                    ("terms", cert.function.len().to_string()),
                    ("integral", complex(cert.integral_value)),
                    ("rule value", complex(cert.rule_value)),
                    ("norm", num(cert.norm_value)),
                    ("witnessed error", num(cert.witnessed_error)),
                    ("nullspace residual", num(cert.residuals.nullspace)),
                    (
                        "checks",
                        format!(
                            "vanishes={} integral={} unit_ball={} ternary={} invariant={}",
                            c.rule_vanishes, c.integral, c.unit_ball, c.ternary_support, c.invariant
                        ),
                    ),
                ])
            );
            if let Some(path) = &a.out {
                println!("certificate written to {}", path.display());
            }
        }
    }
    Ok(if cert.is_valid() { 0 } else { EXIT_NUMERICAL })
}

fn weights(cli: &Cli, a: &WeightsArgs) -> Outcome {
    let p = pattern(a.d, &a.pattern)?;
    let w: Schedule64 = read_json(&a.gammas, "weight schedule")?;
    if p.n_star() > BigUint::from(cli.cap) {
        return Err(Error::CapExceeded {
            what: "ordered weights",
            requested: p.n_star().to_string(),
            cap: cli.cap,
        }
        .into());
    }
    let ordered = order_weights(&p, &w)?;
    let ks = a.kappa.map(|k| kappa_sum(&p, &w, k)).transpose()?;
    match cli.format {
        Format::Json => {
            let rows: Vec<Value> = ordered
                .psi
                .iter()
                .zip(&ordered.nu)
                .map(|(k, nu)| json!({"psi": k, "nu": nu}))
                .collect();
            let mut v = json!({"command": "weights", "pattern": p, "rows": rows});
            if let (Some(s), Some(kappa)) = (ks, a.kappa) {
                v["kappa"] = json!({
                    "kappa": kappa,
                    "brute": s.brute,
                    "closed": s.closed,
                    "closed_applies": s.closed_applies,
                    "relative_gap": s.relative_gap(),
                });
            }
            print!("{}", pretty(&versioned(v)));
        }
        Format::Table => {
            let mut t = Table::new(&["n", "psi(n)", "nu_n"]);
            for (n, (k, nu)) in ordered.psi.iter().zip(&ordered.nu).enumerate() {
                t.row(vec![n.to_string(), k.to_string(), num(*nu)]);
            }
            print!("{}", t.render());
            if let (Some(s), Some(kappa)) = (ks, a.kappa) {
                println!();
                print!(
                    "{}",
                    fields(&[
                        ("kappa", kappa.to_string()),
                        ("sum of mu^kappa", num(s.brute)),
                        ("(#I+1) prod(1+gamma^kappa)", num(s.closed)),
                        ("product form applies", s.closed_applies.to_string()),
                        ("relative gap", num(s.relative_gap())),
                    ])
                );
            }
        }
    }
    Ok(0)
}

fn parse_st(spec: &str) -> Result<Vec<(f64, f64)>, Failure> {
    spec.split(';')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|pair| {
            let bad = || Failure::input(format!("--st expects \"s,t;s,t\", got {pair:?}"));
            let (s, t) = pair.split_once(',').ok_or_else(bad)?;
            Ok((s.trim().parse().map_err(|_| bad())?, t.trim().parse().map_err(|_| bad())?))
        })
        .collect()
}

fn verdict_cell(v: &NotionVerdict) -> String {
    match (v.verdict, v.statistic) {
        (Verdict::NotEvaluable, _) | (_, None) => v.verdict.to_string(),
        (verdict, Some(s)) => format!("{verdict} (statistic {s:.6})"),
    }
}

fn tract(cli: &Cli, a: &TractArgs) -> Outcome {
    let profile: InvarianceProfile = read_json(&a.profile, "profile")?;
    let grid = parse_st(&a.st)?;
    let rep = evaluate(&profile, &grid)?;
    match cli.format {
        Format::Json => print!("{}", pretty(&versioned(json!({"command": "tract", "report": rep})))),
        Format::Table => {
            let mut header = vec!["d".to_string(), "#I".into(), "b_d".into(), "N*".into(), "ln N*".into()];
            header.extend(grid.iter().map(|(s, t)| format!("ratio s={s},t={t}")));
            let header: Vec<&str> = header.iter().map(String::as_str).collect();
            let mut t = Table::new(&header);
            for (i, s) in rep.samples.iter().enumerate() {
                let mut row = vec![
                    s.d.to_string(),
                    s.invariant.to_string(),
                    s.b.to_string(),
                    s.n_star.clone(),
                    format!("{:.6}", s.ln_n_star),
                ];
                row.extend(rep.weak.iter().map(|w| format!("{:.6}", w.log_ratios[i])));
                t.row(row);
            }
            print!("{}", t.render());
            println!();
            println!("reference epsilon {}, tail = samples {}..", rep.reference_epsilon, rep.tail_start + 1);
            let mut lines = vec![
                ("strong polynomial", verdict_cell(&rep.strong_polynomial)),
                ("polynomial", verdict_cell(&rep.polynomial)),
            ];
            let weak: Vec<(String, String)> = rep
                .weak
                .iter()
                .map(|w| (format!("({},{})-weak", w.s, w.t), verdict_cell(&w.verdict)))
                .collect();
            lines.extend(weak.iter().map(|(k, v)| (k.as_str(), v.clone())));
            lines.push(("uniform weak", verdict_cell(&rep.uniform_weak)));
            lines.push(("curse", verdict_cell(&rep.curse)));
            if let Some(q) = rep.degree_estimate {
                lines.push(("degree estimate", format!("{q:.6}")));
            }
            print!("{}", fields(&lines));
        }
    }
    Ok(0)
}

fn bench(cli: &Cli, a: &BenchArgs) -> Outcome {
    let cfg = BenchConfig {
        dims: a.dims.clone(),
        fractions: a.fractions.clone(),
        repetitions: a.reps,
        seed: cli.seed,
        cap: cli.cap,
        ..Default::default()
    };
    let rows = run_bench(&cfg)?;
    match cli.format {
        Format::Json => print!("{}", pretty(&versioned(json!({"command": "bench", "rows": rows})))),
        Format::Table => {
            let mut w = csv::Writer::from_writer(std::io::stdout());
            for r in &rows {
                w.serialize(r).map_err(|e| Failure::input(e.to_string()))?;
            }
            w.flush().map_err(|e| Failure::input(e.to_string()))?;
        }
    }
    Ok(0)
}
