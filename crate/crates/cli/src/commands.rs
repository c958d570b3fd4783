use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io::Write;

use rayon::prelude::*;
use serde_json::json;
use sigma_classes::oracle::Oracle;
use sigma_classes::perm::canonical_sigma;
use sigma_classes::solver::{check_conditions, solutions};
use sigma_classes::zn::divisors;
use sigma_classes::{
    count_table, count_table_for_graph, h_count, p_count, q_count, totient, EquationInstance,
    Error, GammaGraph, Nat,
};

use crate::{Cli, Command, Format};

/// Solution listings above this size are refused.
const MAX_LISTED_SOLUTIONS: u64 = 1_000_000;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    VerifyFailed,
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::VerifyFailed => 1,
            CliError::Usage(_) => 2,
            CliError::Internal(_) => 3,
        }
    }

    pub fn message(&self) -> Option<&str> {
        match self {
            CliError::Usage(m) | CliError::Internal(m) => Some(m),
            CliError::VerifyFailed => None,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::InexactDivision { .. }
            | Error::NegativeIntermediate { .. }
            | Error::Overflow { .. } => CliError::Internal(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

fn io_err(e: std::io::Error) -> CliError {
    CliError::Internal(format!("write failed: {e}"))
}

fn require_format(cmd: &str, format: Format, allowed: &[Format]) -> Result<(), CliError> {
    if allowed.contains(&format) {
        Ok(())
    } else {
        Err(CliError::Usage(format!(
            "format {format:?} is not available for `{cmd}`"
        )))
    }
}

fn require_range(from: u64, to: u64) -> Result<(), CliError> {
    if from > to {
        return Err(CliError::Usage(format!("empty range {from}..={to}")));
    }
    Ok(())
}

pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<(), CliError> {
    use Format::*;
    let text = match &cli.command {
        Command::Compute { n } => {
            require_format("compute", cli.format, &[Text, Json])?;
            let q: Nat = q_count(*n)?;
            match cli.format {
                Json => format!("{}\n", json!({ "n": n, "count": q.to_string() })),
                _ => format!("{q}\n"),
            }
        }
        Command::Table { from, to } => {
            require_format("table", cli.format, &[Text, Json, Csv])?;
            require_range(*from, *to)?;
            let rows: Vec<(u64, Nat)> = (*from..=*to)
                .into_par_iter()
                .map(|n| q_count::<Nat>(n).map(|q| (n, q)))
                .collect::<Result<_, _>>()?;
            render_table(&rows, cli.format)
        }
        Command::Matrix { n } => {
            require_format("matrix", cli.format, &[Text, Json, Csv])?;
            let t = count_table::<Nat>(*n)?;
            match cli.format {
                Json => format!("{}\n", t.to_json()),
                Csv => t.to_csv(),
                _ => t.to_text(),
            }
        }
        Command::Graph { n } => {
            require_format("graph", cli.format, &[Text, Json, Dot])?;
            let g = GammaGraph::build(*n)?;
            match cli.format {
                Dot => g.to_dot(),
                Json => format!("{}\n", g.to_json()),
                _ => g.to_text(),
            }
        }
        Command::Solve { n, k, l } => {
            require_format("solve", cli.format, &[Text, Json])?;
            return solve(*n, *k, *l, cli.format, out);
        }
        Command::Verify { from, to } => {
            require_format("verify", cli.format, &[Text, Json])?;
            require_range(*from, *to)?;
            return verify(cli, *from, *to, out);
        }
        Command::Classes { n, verbose } => {
            require_format("classes", cli.format, &[Text, Json])?;
            let oracle = Oracle::with_bound(cli.oracle_bound)?;
            let report = oracle.enumerate_classes(&canonical_sigma(*n as usize), *verbose)?;
            match cli.format {
                Json => format!("{}\n", report.to_json()),
                _ => {
                    let mut s = format!("n={} sigma={} classes={}\n", report.n, report.sigma, report.class_count);
                    for (size, count) in &report.size_histogram {
                        let _ = writeln!(s, "size {size}: {count}");
                    }
                    for c in report.per_class.iter().flatten() {
                        let exps = match c.min_left_exponent {
                            Some((k, l)) => format!("({k},{l})"),
                            None => "none".to_string(),
                        };
                        let _ = writeln!(s, "{} size={} exponents={exps}", c.representative, c.size);
                    }
                    s
                }
            }
        }
    };
    out.write_all(text.as_bytes()).map_err(io_err)
}

fn render_table(rows: &[(u64, Nat)], format: Format) -> String {
    match format {
        Format::Csv => {
            let mut s = String::from("n,classes\n");
            for (n, q) in rows {
                let _ = writeln!(s, "{n},{q}");
            }
            s
        }
        Format::Json => {
            let v: Vec<_> = rows
                .iter()
                .map(|(n, q)| json!({ "n": n, "classes": q.to_string() }))
                .collect();
            format!("{}\n", serde_json::Value::Array(v))
        }
        _ => {
            let nw = rows.iter().map(|(n, _)| n.to_string().len()).max().unwrap_or(1).max(1);
            let qw = rows.iter().map(|(_, q)| q.to_string().len()).max().unwrap_or(0).max(7);
            let mut s = format!("{:>nw$}  {:>qw$}\n", "n", "classes");
            for (n, q) in rows {
                let _ = writeln!(s, "{n:>nw$}  {:>qw$}", q.to_string());
            }
            s
        }
    }
}

fn solve(n: u64, k: usize, l: usize, format: Format, out: &mut dyn Write) -> Result<(), CliError> {
    let sigma = canonical_sigma(n as usize);
    let inst = EquationInstance::new(sigma.clone(), k, l)?;
    let iter = solutions(&inst)?;
    let expected: Nat = p_count(n, k as u64)?;
    if expected > Nat::from(MAX_LISTED_SOLUTIONS) {
        return Err(CliError::Usage(format!(
            "{expected} solutions is more than the listing limit of {MAX_LISTED_SOLUTIONS}"
        )));
    }
    let sols: Vec<_> = iter.collect();
    for x in &sols {
        if !inst.holds(x) {
            return Err(CliError::Internal(format!("constructed {x} does not solve the equation")));
        }
    }
    let text = match format {
        Format::Json => format!(
            "{}\n",
            json!({ "n": n, "k": k, "l": l, "sigma": sigma, "count": sols.len(), "solutions": sols })
        ),
        _ => {
            let mut s = format!("count={}\n", sols.len());
            for x in &sols {
                let _ = writeln!(s, "{x}");
            }
            s
        }
    };
    out.write_all(text.as_bytes()).map_err(io_err)
}

/// Outcome of checking one `n`; `failures` is empty on success.
struct Verdict {
    n: u64,
    classes: String,
    pairs: usize,
    failures: Vec<String>,
}

fn verify_one(oracle: &Oracle, n: u64, seed: u64) -> Result<Verdict, CliError> {
    let mut failures = Vec::new();
    let nu = n as usize;
    let sigma = canonical_sigma(nu);

    let g = GammaGraph::build(n)?;
    if g.vertices().len() as u64 != n {
        failures.push(format!("graph has {} vertices", g.vertices().len()));
    }
    let table = count_table_for_graph::<Nat>(&g)?;
    let report = oracle.enumerate_classes(&sigma, false)?;
    if &report.class_count != table.total() {
        failures.push(format!(
            "oracle found {} classes, formula gives {}",
            report.class_count,
            table.total()
        ));
    }

    let mut expected: BTreeMap<u64, u64> = BTreeMap::new();
    for k in divisors(n) {
        let h: Nat = h_count(&g, k)?;
        let count = if k == n { h } else { h * Nat::from(totient(n / k)) };
        let size = if k == n { n * n } else { k * n };
        if count > Nat::from(0u32) {
            let c: u64 = count.try_into().map_err(|_| CliError::Internal("class count too large".into()))?;
            *expected.entry(size).or_insert(0) += c;
        }
    }
    if report.size_histogram != expected {
        failures.push(format!(
            "class sizes {:?} differ from predicted {expected:?}",
            report.size_histogram
        ));
    }

    let mut pairs = 0;
    for k in 1..=nu {
        for l in 1..=nu {
            if check_conditions(nu, k, l).is_err() {
                continue;
            }
            pairs += 1;
            let p: Nat = p_count(n, k as u64)?;
            let brute = oracle.count_equation_solutions(&sigma, k, l)?;
            let inst = EquationInstance::new(sigma.clone(), k, l)?;
            let built: Vec<_> = solutions(&inst)?.collect();
            let verified = built.iter().filter(|x| inst.holds(x)).count();
            if brute != p || Nat::from(built.len()) != p || verified != built.len() {
                failures.push(format!(
                    "(k,l)=({k},{l}): p={p} brute={brute} constructed={} verified={verified}",
                    built.len()
                ));
            }
        }
    }

    if !oracle.sigma_independence_check(nu, seed)? {
        failures.push("class structure depends on the choice of cycle".into());
    }

    Ok(Verdict {
        n,
        classes: table.total().to_string(),
        pairs,
        failures,
    })
}

fn verify(cli: &Cli, from: u64, to: u64, out: &mut dyn Write) -> Result<(), CliError> {
    let oracle = Oracle::with_bound(cli.oracle_bound)?;
    if to as usize > oracle.bound() {
        return Err(CliError::Usage(format!(
            "n = {to} exceeds the oracle bound {} (raise it with --oracle-bound)",
            oracle.bound()
        )));
    }
    let verdicts: Vec<Verdict> = (from..=to)
        .into_par_iter()
        .map(|n| verify_one(&oracle, n, cli.seed))
        .collect::<Result<_, _>>()?;
    let mut all_ok = true;
    let text = match cli.format {
        Format::Json => {
            let v: Vec<_> = verdicts
                .iter()
                .map(|v| {
                    all_ok &= v.failures.is_empty();
                    json!({
                        "n": v.n,
                        "pass": v.failures.is_empty(),
                        "classes": v.classes,
                        "pairs": v.pairs,
                        "failures": v.failures,
                    })
                })
                .collect();
            format!("{}\n", serde_json::Value::Array(v))
        }
        _ => {
            let mut s = String::new();
            for v in &verdicts {
                if v.failures.is_empty() {
                    let _ = writeln!(s, "n={} PASS classes={} pairs={}", v.n, v.classes, v.pairs);
                } else {
                    all_ok = false;
                    let _ = writeln!(s, "n={} FAIL {}", v.n, v.failures.join("; "));
                }
            }
            s
        }
    };
    out.write_all(text.as_bytes()).map_err(io_err)?;
    if all_ok {
        Ok(())
    } else {
        Err(CliError::VerifyFailed)
    }
}
