//! `hkq`: exact Hilbert-Kunz data for the quadrics `x_0^2 + .. + x_{n+1}^2`.

mod output;
mod verify;

use clap::{ArgGroup, Parser, Subcommand};
use hkq_core::arith::{int, sec_tan_coefficient, Rational};
use hkq_core::density::{ehk, ehk_infinity, f_infinity, f_p, f_threshold, DensityProfile, DensityValue};
use hkq_core::frobenius::{decompose, decompose_n3, QuadricContext, Source};
use hkq_core::oracle::OracleConfig;
use hkq_core::{HkqError, Result};
use output::{int_json, parse_rational, rat_json, record};
use serde_json::{json, Map, Value};
use std::io::Write;
use std::process::ExitCode;
use std::time::Instant;

#[derive(Parser)]
#[command(name = "hkq", version, about = "Exact Hilbert-Kunz multiplicities and density functions of quadrics")]
struct Cli {
    /// Digits after the decimal point in decimal renderings.
    #[arg(long, global = true, default_value_t = 12)]
    precision: usize,
    /// Leave out the timing field.
    #[arg(long, global = true)]
    no_timing: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Taylor coefficients m_d of sec x + tan x.
    Coeffs {
        #[arg(long)]
        max_d: u32,
    },
    /// Splitting of F^s_*(E(a)) into line and spinor bundles.
    Decompose {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        p: u64,
        #[arg(long)]
        s: u32,
        #[arg(long, allow_negative_numbers = true)]
        a: i64,
        /// O or S.
        #[arg(long, default_value = "O")]
        source: String,
    },
    /// Samples of the HK density as CSV.
    #[command(group(ArgGroup::new("char").required(true).args(["p", "infty"])))]
    Density {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        p: Option<u64>,
        /// The limit p -> infinity.
        #[arg(long)]
        infty: bool,
        #[arg(long, allow_negative_numbers = true)]
        from: Option<String>,
        #[arg(long, allow_negative_numbers = true)]
        to: Option<String>,
        #[arg(long, default_value_t = 101)]
        samples: usize,
        /// Emit breakpoints and piece coefficients instead of samples.
        #[arg(long)]
        breakpoints: bool,
        /// Resolution depth for the n = 3 interval tree.
        #[arg(long, default_value_t = hkq_core::density::DEFAULT_DEPTH)]
        depth: u32,
    },
    /// Bracket for the HK multiplicity.
    #[command(group(ArgGroup::new("char").required(true).args(["p", "infty"])))]
    Ehk {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        p: Option<u64>,
        #[arg(long)]
        infty: bool,
        #[arg(long, default_value = "1e-6")]
        epsilon: String,
    },
    /// The F-threshold of the maximal ideal.
    Fthreshold {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        p: u64,
    },
    /// Cross-check the formulas against brute-force colengths.
    Verify {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        p: u64,
        #[arg(long)]
        max_s: u32,
        /// Largest dense matrix side for the oracle (default from HKQ_CEILING, else 512).
        #[arg(long)]
        ceiling: Option<usize>,
    },
}

enum Output {
    Json(Value, bool),
    Csv(String),
}

fn exit_code(e: &HkqError) -> u8 {
    match e {
        HkqError::InvalidParameter(_) => 2,
        HkqError::OutOfScope(_) | HkqError::ValidityGate { .. } => 3,
        HkqError::ResourceCeiling(_) => 4,
        HkqError::Inconsistent(_) => 1,
    }
}

fn coeffs(max_d: u32, prec: usize) -> Value {
    let rows: Vec<Value> =
        (1..=max_d).map(|d| json!({ "d": d, "m": rat_json(&sec_tan_coefficient(d), prec) })).collect();
    Value::Array(rows)
}

fn decomposition(n: u32, p: u64, s: u32, a: i64, source: &str) -> Result<Value> {
    let source: Source = source.parse()?;
    let ctx = QuadricContext::new(n, p)?;
    ctx.require_closed_form()?;
    let d = if n == 3 && source == Source::O { decompose_n3(p, s, a)? } else { decompose(&ctx, s, a, source)? };
    let counts = |m: &std::collections::BTreeMap<i64, num_bigint::BigInt>| -> Value {
        let mut out = Map::new();
        for (t, v) in m.iter().rev().filter(|(_, v)| *v != &num_bigint::BigInt::from(0)) {
            out.insert(t.to_string(), int_json(v));
        }
        Value::Object(out)
    };
    let brackets = |m: &Option<std::collections::BTreeMap<i64, (num_bigint::BigInt, num_bigint::BigInt)>>| {
        m.as_ref().map(|m| {
            let mut out = Map::new();
            for (t, (lo, hi)) in m.iter().rev() {
                out.insert(t.to_string(), json!([int_json(lo), int_json(hi)]));
            }
            Value::Object(out)
        })
    };
    let mut obj = json!({
        "q": d.q,
        "a": d.a,
        "source": d.source.to_string(),
        "nu": counts(&d.nu),
        "mu": counts(&d.mu),
        "exact": d.exact,
    });
    if !d.exact {
        obj["mu_bracket"] = brackets(&d.mu_bracket).unwrap_or(Value::Null);
        obj["nu_bracket"] = brackets(&d.nu_bracket).unwrap_or(Value::Null);
    }
    Ok(obj)
}

fn profile(n: u32, p: Option<u64>) -> Result<DensityProfile> {
    match p {
        Some(p) => f_p(n, p),
        None => f_infinity(n),
    }
}

fn rat_cells(v: &Rational) -> String {
    format!("{},{}", v.numer(), v.denom())
}

fn density_csv(prof: &DensityProfile, from: &Rational, to: &Rational, samples: usize, depth: u32) -> Result<String> {
    if samples == 0 {
        return Err(HkqError::InvalidParameter("--samples must be positive".into()));
    }
    if from > to {
        return Err(HkqError::InvalidParameter("--from must not exceed --to".into()));
    }
    if from < &Rational::from_integer(0.into()) {
        return Err(HkqError::InvalidParameter("the density is defined for x >= 0".into()));
    }
    let mut out = String::from("x_num,x_den,f_num,f_den,kind,piece_index\n");
    for k in 0..samples {
        let x = if samples == 1 { from.clone() } else { from + (to - from) * int(k as u64) / int(samples as u64 - 1) };
        let piece = prof.closed_form.piece_index(&x).map(|i| i.to_string()).unwrap_or_default();
        match prof.eval_depth(&x, depth) {
            DensityValue::Exact(v) => out += &format!("{},{},exact,{piece}\n", rat_cells(&x), rat_cells(&v)),
            DensityValue::Bracket { lower, upper } => {
                out += &format!("{},{},bracket_lo,{piece}\n", rat_cells(&x), rat_cells(&lower));
                out += &format!("{},{},bracket_hi,{piece}\n", rat_cells(&x), rat_cells(&upper));
            }
        }
    }
    Ok(out)
}

fn breakpoints_csv(prof: &DensityProfile) -> String {
    let cf = &prof.closed_form;
    let mut out = String::from("piece_index,start_num,start_den,end_num,end_den,region,coefficients\n");
    for (i, poly) in cf.pieces().iter().enumerate() {
        let (a, b) = (&cf.breakpoints()[i], &cf.breakpoints()[i + 1]);
        let region = if prof.in_difficult_range(a) { "difficult" } else { "closed" };
        let coeffs: Vec<String> = poly.coeffs().iter().map(|c| c.to_string()).collect();
        out += &format!("{i},{},{},{region},{}\n", rat_cells(a), rat_cells(b), coeffs.join(";"));
    }
    out
}

fn run(cli: &Cli) -> Result<Output> {
    let prec = cli.precision;
    Ok(match &cli.cmd {
        Cmd::Coeffs { max_d } => Output::Json(coeffs(*max_d, prec), true),
        Cmd::Decompose { n, p, s, a, source } => Output::Json(decomposition(*n, *p, *s, *a, source)?, true),
        Cmd::Density { n, p, from, to, samples, breakpoints, depth, .. } => {
            let prof = profile(*n, *p)?;
            if *breakpoints {
                Output::Csv(breakpoints_csv(&prof))
            } else {
                let from = from.as_deref().map(parse_rational).transpose()?.unwrap_or_default();
                let to = to.as_deref().map(parse_rational).transpose()?.unwrap_or_else(|| int(*n as u64));
                Output::Csv(density_csv(&prof, &from, &to, *samples, *depth)?)
            }
        }
        Cmd::Ehk { n, p, epsilon, .. } => {
            let eps = parse_rational(epsilon)?;
            let b = match p {
                Some(p) => ehk(*n, *p, &eps)?,
                None => hkq_core::density::HKBracket::exact(ehk_infinity(*n)?),
            };
            Output::Json(
                json!({
                    "lower": rat_json(&b.lower, prec),
                    "upper": rat_json(&b.upper, prec),
                    "width": rat_json(&b.width(), prec),
                    "method": b.method.to_string(),
                }),
                true,
            )
        }
        Cmd::Fthreshold { n, p } => Output::Json(json!({ "value": rat_json(&f_threshold(*n, *p)?, prec) }), true),
        Cmd::Verify { n, p, max_s, ceiling } => {
            let ceiling = match ceiling {
                Some(c) => *c,
                None => OracleConfig::from_env()?.ceiling,
            };
            let (v, ok) = verify::run(*n, *p, *max_s, ceiling, prec)?;
            Output::Json(v, ok)
        }
    })
}

fn parameters(cmd: &Cmd) -> (&'static str, Value) {
    match cmd {
        Cmd::Coeffs { max_d } => ("coeffs", json!({ "max_d": max_d })),
        Cmd::Decompose { n, p, s, a, source } => {
            ("decompose", json!({ "n": n, "p": p, "s": s, "a": a, "source": source }))
        }
        Cmd::Density { n, p, .. } => ("density", json!({ "n": n, "p": p })),
        Cmd::Ehk { n, p, epsilon, .. } => ("ehk", json!({ "n": n, "p": p, "epsilon": epsilon })),
        Cmd::Fthreshold { n, p } => ("fthreshold", json!({ "n": n, "p": p })),
        Cmd::Verify { n, p, max_s, ceiling } => {
            ("verify", json!({ "n": n, "p": p, "max_s": max_s, "ceiling": ceiling }))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let result = run(&cli);
    let elapsed = (!cli.no_timing).then(|| start.elapsed().as_secs_f64() * 1000.0);
    let mut stdout = std::io::stdout().lock();
    match result {
        Ok(Output::Csv(text)) => {
            let _ = stdout.write_all(text.as_bytes());
            ExitCode::SUCCESS
        }
        Ok(Output::Json(value, ok)) => {
            let (name, params) = parameters(&cli.cmd);
            let rec = record(name, params, value, elapsed);
            let _ = writeln!(stdout, "{}", serde_json::to_string_pretty(&rec).expect("JSON values serialize"));
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("hkq: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
