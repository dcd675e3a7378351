//! Batch front end: transforms, cover verification/construction, the m <= 5
//! search, identity reports, conjecture scans, and figure data emission.
//!
//! Exit codes: 0 success/verified, 1 verified-false (e.g. a non-cover),
//! 2 usage or domain error.

use std::fs;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use beatty_core::beatty::BeattyParams;
use beatty_core::conjectures::{scan_rational_function, strengthened_scan, strong_martin_scan};
use beatty_core::covering::{
    construct_cfc, covering_criterion, is_perfect_cover, predicted_multiplicity,
    CoveringInstance,
};
use beatty_core::identities::{
    coset, csc_identity_check, cosine_ratio_sum, odd_cosets_cover, s_sum, sine_ratio_sum,
};
use beatty_core::modarith::{gcd, mod_pow, nicf, nicf_product, order_of_two};
use beatty_core::search::run_search;

#[derive(Parser)]
#[command(name = "beatty", version, about = "Exact arithmetic for rational Beatty sets mod q")]
struct Cli {
    /// Write output to this path instead of stdout (a directory for `figures`)
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Output format for reports and row data
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Worker thread count (accepted for compatibility; computations are
    /// single-threaded and deterministic)
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
    threads: u32,
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Fourier coefficients of B(p, q, r)
    Transform(TransformArgs),
    /// Check an instance JSON file for being a perfect cover
    Verify { instance: PathBuf },
    /// Build the perfect cover for odd q from (delta, gamma)
    Construct { q: i64, delta: i64, gamma: i64 },
    /// Run the candidate search up to m sets
    Search {
        #[arg(long, default_value_t = 5)]
        m_max: usize,
        #[arg(long, default_value_t = 33)]
        q_max: i64,
    },
    /// Cosecant identity and coset power-sum report for odd q
    Identities { q: i64, t: Option<i64> },
    /// Scan a conjecture over a parameter range
    Conjectures(ConjecturesArgs),
    /// Emit CSV data for figures 1-5
    Figures {
        #[arg(value_parser = clap::value_parser!(u8).range(1..=5))]
        id: u8,
    },
}

#[derive(Args)]
struct TransformArgs {
    p: i64,
    q: i64,
    r: i64,
    /// Coefficient index; omit to emit all j in [0, q)
    j: Option<i64>,
    /// Cross-multiplied verification of the closed form against the DFT
    #[arg(long, conflicts_with_all = ["numeric", "figure"])]
    exact: bool,
    /// Magnitude only (the default)
    #[arg(long, conflicts_with = "figure")]
    numeric: bool,
    /// Complex rows j, re, im (Figure 1 layout)
    #[arg(long)]
    figure: bool,
}

#[derive(Args)]
struct ConjecturesArgs {
    #[arg(long, value_enum)]
    which: Conjecture,
    #[arg(long, default_value_t = 2)]
    q_min: i64,
    #[arg(long, default_value_t = 40)]
    q_max: i64,
    /// Tuple length bound for rf/rf-strong; exact length for strong-martin
    #[arg(long, default_value_t = 3)]
    n: usize,
    /// Offset bound for rf/rf-strong (offsets are reduced mod q anyway)
    #[arg(long)]
    v_bound: Option<i64>,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Conjecture {
    Rf,
    RfStrong,
    StrongMartin,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Result<ExitCode> {
    match &cli.command {
        Command::Transform(args) => cmd_transform(cli, args),
        Command::Verify { instance } => cmd_verify(cli, instance),
        Command::Construct { q, delta, gamma } => cmd_construct(cli, *q, *delta, *gamma),
        Command::Search { m_max, q_max } => {
            let report = run_search(*m_max, *q_max);
            emit(cli, &serde_json::to_value(&report)?)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Identities { q, t } => cmd_identities(cli, *q, *t),
        Command::Conjectures(args) => cmd_conjectures(cli, args),
        Command::Figures { id } => cmd_figures(cli, *id),
    }
}

/// Format with 12 significant digits, positional where readable, trailing
/// zeros trimmed. Deterministic across platforms.
fn sig12(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    let s = format!("{:.11e}", x);
    let (mantissa, exp) = s.split_once('e').unwrap();
    let exp: i32 = exp.parse().unwrap();
    if !(-4..=14).contains(&exp) {
        return format!("{}e{}", mantissa.trim_end_matches('0').trim_end_matches('.'), exp);
    }
    // shift the decimal point by hand to avoid re-rounding
    let neg = mantissa.starts_with('-');
    let digits: String = mantissa.chars().filter(|c| c.is_ascii_digit()).collect();
    let point = exp + 1; // digits before the decimal point
    let mut out = String::new();
    if neg {
        out.push('-');
    }
    if point <= 0 {
        out.push_str("0.");
        out.extend(std::iter::repeat('0').take((-point) as usize));
        out.push_str(&digits);
    } else if (point as usize) >= digits.len() {
        out.push_str(&digits);
        out.extend(std::iter::repeat('0').take(point as usize - digits.len()));
    } else {
        out.push_str(&digits[..point as usize]);
        out.push('.');
        out.push_str(&digits[point as usize..]);
    }
    if out.contains('.') {
        out = out.trim_end_matches('0').trim_end_matches('.').to_string();
    }
    out
}

fn write_out(cli: &Cli, text: &str) -> Result<()> {
    match &cli.out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn emit(cli: &Cli, value: &serde_json::Value) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    write_out(cli, &text)
}

fn csv(header: &str, rows: &[String]) -> String {
    let mut text = String::with_capacity(rows.len() * 24 + header.len() + 1);
    text.push_str(header);
    text.push('\n');
    for row in rows {
        text.push_str(row);
        text.push('\n');
    }
    text
}

fn cmd_transform(cli: &Cli, args: &TransformArgs) -> Result<ExitCode> {
    let b = BeattyParams::new(args.p, args.q, args.r)?;
    let q = b.q();
    let js: Vec<i64> = match args.j {
        Some(j) => vec![j],
        None => (0..q).collect(),
    };

    if args.figure {
        let rows: Vec<String> = js
            .iter()
            .filter(|&&j| j.rem_euclid(q) != 0)
            .map(|&j| {
                let z = b.dft_direct(j).embed_complex();
                format!("{j},{},{}", sig12(z.re), sig12(z.im))
            })
            .collect();
        write_out(cli, &csv("j,re,im", &rows))?;
        return Ok(ExitCode::SUCCESS);
    }

    if args.exact {
        let mut all_ok = true;
        let mut rows = Vec::new();
        let mut records = Vec::new();
        for &j in &js {
            let status = if j.rem_euclid(q) == 0 {
                "excluded" // the closed form requires j != 0 mod q
            } else {
                let (num, den) = b.ft_closed_form(j)?;
                if b.dft_direct(j).mul(&den).sub(&num).is_zero() {
                    "verified"
                } else {
                    all_ok = false;
                    "mismatch"
                }
            };
            rows.push(format!("{j},{status}"));
            records.push(serde_json::json!({"j": j, "status": status}));
        }
        match cli.format {
            Some(Format::Json) => emit(cli, &serde_json::Value::Array(records))?,
            _ => write_out(cli, &csv("j,status", &rows))?,
        }
        return Ok(if all_ok { ExitCode::SUCCESS } else { ExitCode::FAILURE });
    }

    // default and --numeric: magnitudes
    if let Some(j) = args.j {
        let mag = if j.rem_euclid(q) == 0 {
            bail!("the transform is defined for j != 0 mod q (got j={j}, q={q})");
        } else {
            b.ft_magnitude(j)?
        };
        write_out(cli, &format!("{}\n", sig12(mag)))?;
        return Ok(ExitCode::SUCCESS);
    }
    let mut rows = Vec::new();
    let mut records = Vec::new();
    for j in 1..q {
        let mag = b.ft_magnitude(j)?;
        rows.push(format!("{j},{}", sig12(mag)));
        records.push(serde_json::json!({"j": j, "magnitude": mag}));
    }
    match cli.format {
        Some(Format::Json) => emit(cli, &serde_json::Value::Array(records))?,
        _ => write_out(cli, &csv("j,magnitude", &rows))?,
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(cli: &Cli, path: &PathBuf) -> Result<ExitCode> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let raw: CoveringInstance = serde_json::from_str(&text)?;
    let inst = CoveringInstance::new(raw.q, raw.members.clone())?; // revalidate
    let verdict = covering_criterion(&inst);
    emit(cli, &serde_json::to_value(&verdict)?)?;
    Ok(if verdict.is_perfect { ExitCode::SUCCESS } else { ExitCode::FAILURE })
}

fn cmd_construct(cli: &Cli, q: i64, delta: i64, gamma: i64) -> Result<ExitCode> {
    let inst = construct_cfc(q, delta, gamma)?;
    let measured = is_perfect_cover(&inst);
    let predicted = predicted_multiplicity(q, delta)?;
    emit(
        cli,
        &serde_json::json!({
            "instance": inst,
            "is_perfect": measured.is_perfect,
            "measured_c": measured.c,
            "predicted_c": predicted,
        }),
    )?;
    Ok(if measured.is_perfect { ExitCode::SUCCESS } else { ExitCode::FAILURE })
}

#[derive(Serialize)]
struct IdentityRecord {
    q: i64,
    t: Option<i64>,
    kind: String,
    latex: String,
    lhs_terms: Vec<String>,
    rhs: String,
    exact: Option<bool>,
    residual: Option<f64>,
}

fn cmd_identities(cli: &Cli, q: i64, t: Option<i64>) -> Result<ExitCode> {
    let m = order_of_two(q)? as i64;
    let mut records = Vec::new();

    let (exact, residual) = csc_identity_check(q)?;
    records.push(IdentityRecord {
        q,
        t: None,
        kind: "cosecant".into(),
        latex: format!("0 = \\sum_{{k=1}}^{{{m}}} \\csc(2^k \\pi / {q})"),
        lhs_terms: (1..=m)
            .map(|k| format!("csc({} pi / {q})", mod_pow(2, k as u64, 2 * q)))
            .collect(),
        rhs: "0".into(),
        exact: Some(exact),
        residual: Some(residual),
    });

    if let Some(t) = t {
        let s = s_sum(q, t)?;
        let cover = odd_cosets_cover(q, t)?;
        records.push(IdentityRecord {
            q,
            t: Some(t),
            kind: "coset-power-sum".into(),
            latex: format!("S({q},{t}) = \\sum_{{u=1}}^{{{t}}} \\sum_{{a \\in C_{{{q}}}(2u-1)}} \\omega^a"),
            lhs_terms: (1..=t)
                .map(|u| format!("C_{q}({}) = {:?}", 2 * u - 1, coset(q, 2 * u - 1).map(|c| c.elements).unwrap_or_default()))
                .collect(),
            rhs: match cover {
                Some(c) => format!("{}", -c),
                None => format!("{:?}", s.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>()),
            },
            exact: Some(true),
            residual: None,
        });
        let sine = sine_ratio_sum(q, t)?;
        let cosine = cosine_ratio_sum(q, t)?;
        let z = s.embed_complex();
        records.push(IdentityRecord {
            q,
            t: Some(t),
            kind: "ratio-sums".into(),
            latex: format!(
                "\\sum_k \\sin(4\\pi t 2^k/{q})/\\sin(2\\pi 2^k/{q}) = 2\\,\\mathrm{{Re}}\\,S({q},{t}), \
                 \\quad \\cos\\text{{-variant}} = -2\\,\\mathrm{{Im}}\\,S({q},{t})"
            ),
            lhs_terms: vec![sig12(sine), sig12(cosine)],
            rhs: format!("{}, {}", sig12(2.0 * z.re), sig12(-2.0 * z.im)),
            exact: None,
            residual: Some((sine - 2.0 * z.re).abs().max((cosine + 2.0 * z.im).abs())),
        });
    }

    match cli.format {
        Some(Format::Csv) => {
            let rows: Vec<String> = records
                .iter()
                .map(|r| {
                    format!(
                        "{},{},{},{},{}",
                        r.q,
                        r.t.map(|t| t.to_string()).unwrap_or_default(),
                        r.kind,
                        r.exact.map(|e| e.to_string()).unwrap_or_default(),
                        r.residual.map(sig12).unwrap_or_default()
                    )
                })
                .collect();
            write_out(cli, &csv("q,t,kind,exact,residual", &rows))?;
        }
        _ => emit(cli, &serde_json::to_value(&records)?)?,
    }
    Ok(if exact { ExitCode::SUCCESS } else { ExitCode::FAILURE })
}

fn cmd_conjectures(cli: &Cli, args: &ConjecturesArgs) -> Result<ExitCode> {
    if args.q_min > args.q_max {
        bail!("empty q range {}..={}", args.q_min, args.q_max);
    }
    let report = match args.which {
        Conjecture::Rf | Conjecture::RfStrong => {
            let strong = args.which == Conjecture::RfStrong;
            let mut violations = Vec::new();
            for q in args.q_min..=args.q_max {
                let v_bound = args.v_bound.unwrap_or(q);
                let mut found = if strong {
                    strengthened_scan(q, args.n, v_bound)?
                } else {
                    scan_rational_function(q, args.n, v_bound)?
                };
                violations.append(&mut found);
            }
            serde_json::json!({
                "which": if strong { "rf-strong" } else { "rf" },
                "q_range": [args.q_min, args.q_max],
                "n_max": args.n,
                "violations": violations,
            })
        }
        Conjecture::StrongMartin => {
            let hits = strong_martin_scan(args.n, args.q_min, args.q_max)?;
            // hits violate nothing when q = 2^n - 1 and p is the powers-of-2
            // set up to sign; anything else is a counterexample
            let expected_q = (1i64 << args.n) - 1;
            let violations: Vec<_> = hits
                .iter()
                .filter(|(q, p)| {
                    let mut norm: Vec<i64> = p.iter().map(|&x| x.min(q - x)).collect();
                    norm.sort_unstable();
                    let mut powers: Vec<i64> = (0..args.n as u32)
                        .map(|k| {
                            let x = mod_pow(2, k as u64, *q);
                            x.min(q - x)
                        })
                        .collect();
                    powers.sort_unstable();
                    *q != expected_q || norm != powers
                })
                .cloned()
                .collect();
            serde_json::json!({
                "which": "strong-martin",
                "q_range": [args.q_min, args.q_max],
                "n": args.n,
                "hits": hits,
                "violations": violations,
            })
        }
    };
    let clean = report["violations"].as_array().is_some_and(|v| v.is_empty());
    emit(cli, &report)?;
    Ok(if clean { ExitCode::SUCCESS } else { ExitCode::FAILURE })
}

fn cmd_figures(cli: &Cli, id: u8) -> Result<ExitCode> {
    let (name, header, rows) = match id {
        1 => {
            let b = BeattyParams::new(24, 121, 0)?;
            let rows: Vec<String> = (1..121)
                .map(|j| {
                    let z = b.dft_direct(j).embed_complex();
                    format!("{j},{},{}", sig12(z.re), sig12(z.im))
                })
                .collect();
            ("fig1.csv", "j,re,im", rows)
        }
        2 => {
            let mut rows = Vec::new();
            for q in 2..=75i64 {
                for p in 1..3 * q {
                    if gcd(p, q) != 1 {
                        continue;
                    }
                    let mag = BeattyParams::new(p, q, 0)?.ft_magnitude(1)?;
                    rows.push(format!("{},{}", sig12(p as f64 / q as f64), sig12(mag)));
                }
            }
            ("fig2.csv", "p_over_q,magnitude", rows)
        }
        3 | 4 => {
            let j = if id == 3 { 1 } else { 2 };
            let q_lo = if id == 3 { 2 } else { 3 };
            let mut rows = Vec::new();
            for q in q_lo..=100i64 {
                for p in 1..q {
                    if gcd(p, q) != 1 {
                        continue;
                    }
                    let mag = BeattyParams::new(p, q, 0)?.ft_magnitude(j)?;
                    rows.push(format!("{},{}", sig12(p as f64 / q as f64), sig12(mag)));
                }
            }
            (if id == 3 { "fig3.csv" } else { "fig4.csv" }, "p_over_q,magnitude", rows)
        }
        5 => {
            let mut rows = Vec::new();
            for q in 2..=100i64 {
                for p in 1..q {
                    if gcd(p, q) != 1 {
                        continue;
                    }
                    let e = nicf(p, q)?;
                    rows.push(format!("{},{}", sig12(p as f64 / q as f64), nicf_product(&e)));
                }
            }
            ("fig5.csv", "p_over_q,product", rows)
        }
        _ => unreachable!(),
    };
    let text = csv(header, &rows);
    match &cli.out {
        Some(dir) => {
            fs::create_dir_all(dir)?;
            let path = dir.join(name);
            fs::write(&path, text).with_context(|| format!("writing {}", path.display()))?;
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
        }
    }
    Ok(ExitCode::SUCCESS)
}
