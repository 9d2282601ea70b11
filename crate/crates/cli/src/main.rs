use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use cyclotomic::arith::prime_power;
use cyclotomic::carlitz::{carlitz_invariants, operator_terms, unit_group, CarlitzModule};
use cyclotomic::kummer::{
    automorphism_search, canonical_automorphisms, characterize, curve_create, find_condition_a_group,
    genus_hurwitz, normalize_curve, orbit_census, orbit_constraint_scan, rational_places, KummerCurve, Verdict,
};
use cyclotomic::polyring::{format_poly, parse_expr, parse_expr_in};
use cyclotomic::zeta::{count_points, lpoly_from_counts};
use cyclotomic::{field_create, Error, FieldCtx, Fe, FqPoly, DEFAULT_SEED};

const MAX_Q: u64 = 169;

#[derive(Parser)]
#[command(name = "cyclo", version, about = "Carlitz cyclotomic function fields and their Kummer models")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    global: Global,
}

#[derive(Args)]
struct Global {
    /// Seed for every sampled verification.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Worker threads; defaults to available parallelism.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Args)]
struct CurveArgs {
    #[arg(long)]
    q: u64,
    /// Right-hand side h(v), e.g. "2*(v^5-v)^3".
    #[arg(long)]
    h: String,
    /// Kummer degree; defaults to q - 1.
    #[arg(long)]
    n: Option<u64>,
}

#[derive(Subcommand)]
enum Command {
    /// Genus, rational places and group order for modulus x^k.
    Invariants {
        #[arg(long)]
        q: u64,
        #[arg(long, default_value = "x^2")]
        m: String,
    },
    /// Torsion polynomial of C_M and, for k >= 2, the generator equation.
    Torsion {
        #[arg(long)]
        q: u64,
        #[arg(long, default_value = "x^2")]
        m: String,
    },
    /// Structure of the unit group of F_q[x]/(M).
    Units {
        #[arg(long)]
        q: u64,
        #[arg(long, default_value = "x^2")]
        m: String,
    },
    /// Hurwitz genus of y^n = h.
    Genus(CurveArgs),
    /// Places of degree one over F_{q^k}, by ramification rule and by enumeration.
    Count {
        #[command(flatten)]
        curve: CurveArgs,
        #[arg(long, default_value_t = 1)]
        k: usize,
    },
    /// Orbits of rational places. Without --h, the canonical curve and group.
    Orbits {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        h: Option<String>,
        #[arg(long, default_value = "1")]
        lambda: String,
    },
    /// Normal form y^(q-1) = lambda prod (v - a)^(s_a).
    Normalize {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        h: String,
    },
    /// Decides whether y^(q-1) = h is the cyclotomic function field for x^2.
    Characterize {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        h: String,
        /// Also write the isomorphism witness to this file.
        #[arg(long)]
        witness: Option<PathBuf>,
    },
    /// L-polynomial from point counts up to k = 2g.
    Zeta(CurveArgs),
    /// Short-orbit patterns allowed by the Hurwitz bound.
    ScanOrbits {
        #[arg(long)]
        q: u64,
    },
    /// Runs the acceptance checks.
    Selftest {
        /// Adds the q = 5 zeta verification.
        #[arg(long)]
        long: bool,
    },
}

/// Outcome that is not an error but still exits nonzero.
struct Output {
    value: Value,
    code: u8,
}

impl Output {
    fn ok(v: impl Serialize) -> cyclotomic::Result<Self> {
        Ok(Output { value: serde_json::to_value(v).expect("serializable"), code: 0 })
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.global.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t.max(1)).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let format = cli.global.format;
    match dispatch(cli.command, cli.global.seed, format) {
        Ok(out) => {
            print(&out.value, format);
            ExitCode::from(out.code)
        }
        Err(e) => {
            let code = exit_code(&e);
            match format {
                Format::Json => println!("{}", json!({ "error": e.to_string(), "exit_code": code })),
                Format::Text => eprintln!("error: {e}"),
            }
            ExitCode::from(code)
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Budget { .. } => 3,
        Error::Incompatible(_) | Error::Inconsistent(_) | Error::Verification(_) | Error::GroupNotClosed => 1,
        _ => 2,
    }
}

fn field(q: u64) -> cyclotomic::Result<FieldCtx> {
    if q > MAX_Q {
        return Err(Error::InvalidArgument(format!("q = {q} exceeds {MAX_Q}")));
    }
    let (p, d) = prime_power(q).ok_or(Error::NotPrimePower(q))?;
    field_create(p, d as usize)
}

/// `k` for a modulus `x^k`.
fn modulus_degree(field: &FieldCtx, text: &str) -> cyclotomic::Result<(FqPoly, usize)> {
    let m = parse_expr_in(field, text, 'x')?;
    let (num, den) = m.expand_parts();
    let not_power = || Error::ModulusNotPowerOfX(text.to_string());
    if den.degree() != Some(0) || den.coeffs()[0] != Fe::ONE {
        return Err(not_power());
    }
    let k = num.degree().ok_or_else(not_power)?;
    let (lead, rest) = num.coeffs().split_last().ok_or_else(not_power)?;
    if k == 0 || *lead != Fe::ONE || rest.iter().any(|c| *c != Fe::ZERO) {
        return Err(not_power());
    }
    Ok((num, k))
}

fn curve(args: &CurveArgs) -> cyclotomic::Result<KummerCurve> {
    let f = field(args.q)?;
    let h = parse_expr(&f, &args.h)?;
    curve_create(&f, args.n.unwrap_or(args.q - 1), &h)
}

fn dispatch(command: Command, seed: u64, format: Format) -> cyclotomic::Result<Output> {
    match command {
        Command::Invariants { q, m } => {
            let f = field(q)?;
            let (_, k) = modulus_degree(&f, &m)?;
            Output::ok(carlitz_invariants(q, k as u32)?)
        }
        Command::Torsion { q, m } => {
            let f = field(q)?;
            let (m, k) = modulus_degree(&f, &m)?;
            let module = CarlitzModule::new(f.clone());
            let t = module.torsion_polynomial(&m)?;
            let terms = |p: &cyclotomic::carlitz::TorsionPoly| -> Vec<(usize, String)> {
                p.coeffs()
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(i, c)| (i, format_poly(&f, c, 'x')))
                    .collect()
            };
            Output::ok(json!({
                "q": q,
                "k": k,
                "degree_u": t.degree_u,
                "operator": operator_terms(&f, &t.operator),
                "torsion_terms": terms(&t.torsion),
                "generator": t.generator.as_ref().map(|g| json!({
                    "exact_division": g.exact_division,
                    "matches_expected": g.matches_expected,
                    "quotient_terms": terms(&g.quotient),
                })),
            }))
        }
        Command::Units { q, m } => {
            let f = field(q)?;
            let (_, k) = modulus_degree(&f, &m)?;
            Output::ok(unit_group(q, k - 1)?)
        }
        Command::Genus(args) => Output::ok(genus_hurwitz(&curve(&args)?)),
        Command::Count { curve: args, k } => {
            let c = curve(&args)?;
            let rule = rational_places(&c, k)?;
            // the enumeration is optional; its budget is smaller
            let enumerated = match count_points(&c, k) {
                Ok(n) => Some(n),
                Err(e) if e.is_budget() => None,
                Err(e) => return Err(e),
            };
            let agree = enumerated.is_none_or(|n| n == rule);
            Ok(Output {
                value: json!({ "q": args.q, "n": c.n(), "k": k, "rule": rule, "enumerated": enumerated, "agree": agree }),
                code: if agree { 0 } else { 1 },
            })
        }
        Command::Orbits { q, h, lambda } => {
            let f = field(q)?;
            let (c, group) = match h {
                Some(h) => {
                    let c = curve_create(&f, q - 1, &parse_expr(&f, &h)?)?;
                    let g = automorphism_search(&c)?;
                    (c, g)
                }
                None => {
                    let c = KummerCurve::canonical(&f, parse_lambda(&f, &lambda)?, 1)?;
                    let g = canonical_automorphisms(&c)?;
                    (c, g)
                }
            };
            let census = orbit_census(&c, &group)?;
            let mut v = serde_json::to_value(&census).expect("serializable");
            v["sizes"] = json!(census.sizes());
            Output::ok(v)
        }
        Command::Normalize { q, h } => {
            let f = field(q)?;
            let h = parse_expr(&f, &h)?;
            let c = curve_create(&f, q - 1, &h)?;
            let a = find_condition_a_group(&c)?;
            let fixed = if a.holds { a.fixed_points.clone() } else { Vec::new() };
            Output::ok(normalize_curve(&f, &h, &fixed)?)
        }
        Command::Characterize { q, h, witness } => {
            let f = field(q)?;
            let verdict = characterize(&f, &parse_expr(&f, &h)?, None, seed)?;
            if let (Some(path), Verdict::Isomorphic { witness: w, .. }) = (&witness, &verdict) {
                let text = serde_json::to_string_pretty(w).expect("serializable");
                std::fs::write(path, text + "\n")
                    .map_err(|e| Error::InvalidArgument(format!("cannot write {}: {e}", path.display())))?;
            }
            let ok = verdict.is_isomorphic() || matches!(verdict, Verdict::Trivial { .. });
            Ok(Output { value: serde_json::to_value(&verdict).expect("serializable"), code: if ok { 0 } else { 1 } })
        }
        Command::Zeta(args) => {
            let c = curve(&args)?;
            let start = std::time::Instant::now();
            let g = genus_hurwitz(&c).genus;
            let g = u64::try_from(g).map_err(|_| Error::Inconsistent(format!("negative genus {g}")))?;
            let counts = (1..=2 * g as usize).map(|k| count_points(&c, k)).collect::<cyclotomic::Result<Vec<_>>>()?;
            let mut report = lpoly_from_counts(args.q, g, &counts)?;
            report.elapsed_ms = start.elapsed().as_millis();
            let code = if report.passed() { 0 } else { 1 };
            Ok(Output { value: serde_json::to_value(&report).expect("serializable"), code })
        }
        Command::ScanOrbits { q } => {
            field(q)?;
            Output::ok(orbit_constraint_scan(q)?)
        }
        Command::Selftest { long } => {
            let text = matches!(format, Format::Text);
            let outcomes = cyclotomic::acceptance::run(long, seed, |o| {
                if text {
                    println!("{}", o.line());
                }
            });
            let failed = outcomes.iter().filter(|o| !o.passed).count();
            let rows: Vec<Value> = outcomes
                .iter()
                .map(|o| {
                    json!({
                        "id": o.id,
                        "title": o.title,
                        "passed": o.passed,
                        "detail": o.detail,
                        "elapsed_ms": o.elapsed.as_millis(),
                        "limit_ms": o.limit.map(|l| l.as_millis()),
                        "known_failure": o.blocked_reason(),
                    })
                })
                .collect();
            let value = json!({ "seed": seed, "long": long, "passed": outcomes.len() - failed, "failed": failed, "criteria": rows });
            Ok(Output { value: if text { Value::Null } else { value }, code: if failed == 0 { 0 } else { 1 } })
        }
    }
}

fn parse_lambda(f: &FieldCtx, text: &str) -> cyclotomic::Result<Fe> {
    let e = parse_expr(f, text)?;
    if !e.is_constant() {
        return Err(Error::InvalidArgument(format!("lambda must be a constant, got {text}")));
    }
    Ok(e.unit())
}

fn print(v: &Value, format: Format) {
    match format {
        Format::Json => emit(&(serde_json::to_string_pretty(v).expect("serializable") + "\n")),
        Format::Text if v.is_null() => {}
        Format::Text => {
            let mut out = String::new();
            render(v, 0, &mut out);
            emit(&out);
        }
    }
}

/// Writes to stdout, ignoring a closed pipe.
fn emit(s: &str) {
    use std::io::Write;
    let _ = std::io::stdout().lock().write_all(s.as_bytes());
}

/// Indented `key: value` lines; short scalar arrays stay on one line.
fn render(v: &Value, depth: usize, out: &mut String) {
    let pad = "  ".repeat(depth);
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                if is_inline(x) {
                    out.push_str(&format!("{pad}{k}: {}\n", inline(x)));
                } else {
                    out.push_str(&format!("{pad}{k}:\n"));
                    render(x, depth + 1, out);
                }
            }
        }
        Value::Array(items) => {
            for x in items {
                if is_inline(x) {
                    out.push_str(&format!("{pad}- {}\n", inline(x)));
                } else {
                    out.push_str(&format!("{pad}-\n"));
                    render(x, depth + 1, out);
                }
            }
        }
        x => out.push_str(&format!("{pad}{}\n", inline(x))),
    }
}

fn is_inline(v: &Value) -> bool {
    match v {
        Value::Object(m) => m.is_empty(),
        Value::Array(a) => a.iter().all(|x| !x.is_object() && !x.is_array() || x.as_array().is_some_and(|i| i.iter().all(|y| !y.is_object() && !y.is_array()))),
        _ => true,
    }
}

fn inline(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}
