//! `permuto`: exact values of `mu_k(n)` in `c_k c_{n-k} = mu_k(n) c_n` on the
//! permutohedral variety, with reduction traces and cross-checks.

mod output;

use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use permuto_core::arith::{factorial, int};
use permuto_core::counting::{net_count, raw_count, BlockProfile, CountContext};
use permuto_core::fan::{
    count_cones, ordered_set_partitions, surjectivity_check, MAX_CONE_RANK, MAX_RAY_RANK,
};
use permuto_core::formulas::{mu_closed, mu_result};
use permuto_core::localization::{
    chern_pairing, chern_pairings, monomial_pairing, EvaluationPoint,
};
use permuto_core::monomial::{
    find_vanishing_pattern, profile_coefficient, reduce_with_trace, ExponentVector,
};
use permuto_core::verify::{self, Suite};
use permuto_core::{BigRational, Error};
use serde_json::json;

use output::{rational, Cell, Format, OutputRecord, Table};

/// Closed-form commands accept `n` up to this.
const MAX_FORMULA_N: u32 = 10_000;
/// `table` stays within the range where every record is cheap.
const MAX_TABLE_N: u32 = 64;
/// Profile listings grow quickly; `counts` stops here.
const MAX_COUNTS_N: u32 = 64;
/// `(n+1)!` fixed points: 11! is already about a minute on one core.
const MAX_PAIR_N: u32 = 10;

#[derive(Parser)]
#[command(
    name = "permuto",
    version,
    about = "Exact Chern numbers c_k c_{n-k} of the permutohedral variety"
)]
struct Cli {
    /// Output encoding.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Worker threads for the parallel sums.
    #[arg(long, global = true, value_parser = clap::value_parser!(u32).range(1..))]
    jobs: Option<u32>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Degree {
    #[arg(long)]
    n: u32,
    #[arg(long)]
    k: u32,
}

#[derive(Subcommand)]
enum Command {
    /// mu_k(n) and the Chern number (n+1)! mu_k(n).
    Mu(Degree),
    /// Only the Chern number.
    Chern(Degree),
    /// Block decomposition and reduction steps of one exponent vector.
    Reduce {
        #[arg(
            value_name = "VECTOR",
            conflicts_with = "vector",
            required_unless_present = "vector"
        )]
        positional: Option<String>,
        #[arg(long)]
        vector: Option<String>,
    },
    /// Raw and Net counts of every block profile of c_k c_{n-k}.
    Counts(Degree),
    /// mu_k(n) for all 0 <= k <= n, 1 <= n <= n_max.
    Table {
        #[arg(long)]
        n_max: u32,
    },
    /// Cone counts of the permutohedral fan.
    Fan {
        #[arg(long)]
        n: u32,
    },
    /// Fixed-point localization of a monomial or of c_k c_{n-k}.
    Pair {
        #[arg(long, conflicts_with_all = ["n", "k"], required_unless_present = "n")]
        vector: Option<String>,
        #[arg(long)]
        n: Option<u32>,
        /// Omit to pair every k at once.
        #[arg(long, requires = "n")]
        k: Option<u32>,
        /// Distinct integer coordinates t_1..t_{n+1}; defaults to 1..n+1.
        #[arg(long)]
        point: Option<String>,
    },
    /// Run the verification suites.
    Verify {
        /// all, oracle, localization, counts, identities or fan.
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long)]
        n_max: Option<u32>,
    },
}

/// Why a command did not succeed; decides the exit code.
enum Failure {
    /// Bad input: exit 2.
    Usage(String),
    /// A cross-check disagreed: exit 1.
    Check(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Inconsistency(_) => Failure::Check(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

/// Rendered output plus whether every check in it held.
struct Report {
    text: String,
    ok: bool,
}

impl Report {
    fn ok(text: String) -> Self {
        Self { text, ok: true }
    }
}

type Outcome = std::result::Result<Report, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.jobs {
        Some(jobs) => match rayon::ThreadPoolBuilder::new()
            .num_threads(jobs as usize)
            .build()
        {
            Ok(pool) => pool.install(|| dispatch(&cli)),
            Err(e) => Err(Failure::Usage(format!("cannot start {jobs} workers: {e}"))),
        },
        None => dispatch(&cli),
    };
    match &outcome {
        Ok(report) => print!("{}", report.text),
        Err(Failure::Usage(msg)) => eprintln!("error: {msg}"),
        Err(Failure::Check(msg)) => eprintln!("check failed: {msg}"),
    }
    ExitCode::from(exit_code(&outcome))
}

/// 0 on success, 1 when a cross-check disagreed, 2 for bad input.
fn exit_code(outcome: &Outcome) -> u8 {
    match outcome {
        Ok(Report { ok: true, .. }) => 0,
        Ok(Report { ok: false, .. }) | Err(Failure::Check(_)) => 1,
        Err(Failure::Usage(_)) => 2,
    }
}

fn dispatch(cli: &Cli) -> Outcome {
    let format = cli.format;
    match &cli.command {
        Command::Mu(d) => cmd_mu(d, format),
        Command::Chern(d) => cmd_chern(d, format),
        Command::Reduce { positional, vector } => {
            let text = positional
                .as_deref()
                .or(vector.as_deref())
                .unwrap_or_default();
            cmd_reduce(text, format)
        }
        Command::Counts(d) => cmd_counts(d, format),
        Command::Table { n_max } => cmd_table(*n_max, format),
        Command::Fan { n } => cmd_fan(*n, format),
        Command::Pair {
            vector,
            n,
            k,
            point,
        } => match (vector, n) {
            (Some(v), _) => cmd_pair_vector(v, point.as_deref(), format),
            (None, Some(n)) => cmd_pair_chern(*n, *k, point.as_deref(), format),
            (None, None) => Err(Failure::Usage("pass --vector or --n".into())),
        },
        Command::Verify { suite, n_max } => cmd_verify(suite, *n_max, format),
    }
}

fn check_degree(d: &Degree, max_n: u32) -> Result<(), Failure> {
    if d.k > d.n {
        return Err(Failure::Usage(format!(
            "need 0 <= k <= n, got k={} n={}",
            d.k, d.n
        )));
    }
    at_most("n", d.n, max_n)
}

fn at_most(name: &str, value: u32, max: u32) -> Result<(), Failure> {
    if value > max {
        return Err(Failure::Usage(format!(
            "{name} = {value} exceeds the supported maximum {max}"
        )));
    }
    Ok(())
}

fn record(k: u32, n: u32) -> Result<OutputRecord, Failure> {
    Ok(OutputRecord::try_from(mu_result(k, n)?)?)
}

fn cmd_mu(d: &Degree, format: Format) -> Outcome {
    check_degree(d, MAX_FORMULA_N)?;
    let r = record(d.k, d.n)?;
    let text = match format {
        Format::Text => format!(
            "mu_{}({}) = {}\nchern_number = {}\n",
            r.k,
            r.n,
            r.mu(),
            r.chern_number
        ),
        _ => {
            let mut table = Table::new(OutputRecord::HEADERS.to_vec());
            table.push(r.cells());
            table.render(format)
        }
    };
    Ok(Report::ok(text))
}

fn cmd_chern(d: &Degree, format: Format) -> Outcome {
    check_degree(d, MAX_FORMULA_N)?;
    let r = record(d.k, d.n)?;
    let text = match format {
        Format::Text => format!("<c_{} c_{}, [X]> = {}\n", r.k, r.n - r.k, r.chern_number),
        _ => {
            let mut table = Table::new(vec!["n", "k", "chern_number"]);
            table.push(vec![r.n.into(), r.k.into(), r.chern_number.into()]);
            table.render(format)
        }
    };
    Ok(Report::ok(text))
}

fn parse_vector(text: &str) -> Result<ExponentVector, Failure> {
    let v = ExponentVector::from_str(text)?;
    v.ensure_top_degree()?;
    Ok(v)
}

fn cmd_reduce(text: &str, format: Format) -> Outcome {
    let v = parse_vector(text)?;
    let trace = reduce_with_trace(&v)?;
    let pattern = find_vanishing_pattern(&v);
    if trace.is_none() != pattern.is_some() {
        return Err(Failure::Check(format!(
            "parser and pattern finder disagree on ({v})"
        )));
    }
    let joined = |e: &[u8]| e.iter().map(u8::to_string).collect::<Vec<_>>().join(",");

    let out = match (format, &trace, &pattern) {
        (Format::Json, _, _) => {
            let body = match (&trace, &pattern) {
                (Some(tr), _) => json!({
                    "vector": v.entries(),
                    "vanishes": false,
                    "blocks": tr.decomposition.blocks().iter().map(|b| b.expansion()).collect::<Vec<_>>(),
                    "steps": tr.steps.iter().map(|s| json!({
                        "rule": s.rule.to_string(),
                        "position": s.position,
                        "factor": rational(&s.factor),
                        "after": s.after,
                    })).collect::<Vec<_>>(),
                    "coefficient": rational(&tr.coefficient),
                }),
                (None, Some(p)) => json!({
                    "vector": v.entries(),
                    "vanishes": true,
                    "pattern": {"start": p.start, "end": p.end, "run": p.run},
                    "coefficient": rational(&int(0)),
                }),
                (None, None) => unreachable!("checked above"),
            };
            format!("{body}\n")
        }
        (Format::Text, Some(tr), _) => {
            let mut s = format!("vector: {v}\nblocks: {}\n", tr.decomposition);
            let p = tr.decomposition.profile();
            s += &format!("profile: m={} l={} r={}\n", p.m, p.l, p.r);
            for (j, step) in tr.steps.iter().enumerate() {
                s += &format!(
                    "step {}: {} at position {}, factor {} -> {}\n",
                    j + 1,
                    step.rule,
                    step.position,
                    step.factor,
                    joined(&step.after)
                );
            }
            s + &format!("coefficient: {}\n", tr.coefficient)
        }
        (Format::Text, None, Some(p)) => format!(
            "vector: {v}\nVANISHES: pattern ({}) at positions {}-{}\ncoefficient: 0\n",
            joined(&p.run),
            p.start,
            p.end
        ),
        (_, Some(tr), _) => {
            let mut table = Table::new(vec!["step", "rule", "position", "factor", "after"]);
            for (j, s) in tr.steps.iter().enumerate() {
                table.push(vec![
                    (j + 1).into(),
                    s.rule.to_string().into(),
                    s.position.into(),
                    s.factor.clone().into(),
                    joined(&s.after).into(),
                ]);
            }
            table.push(vec![
                "total".into(),
                "".into(),
                "".into(),
                tr.coefficient.clone().into(),
                joined(ExponentVector::top(v.len()).entries()).into(),
            ]);
            table.render(format)
        }
        (_, None, Some(p)) => {
            let mut table = Table::new(vec!["vanishes", "start", "end", "pattern"]);
            table.push(vec![
                true.into(),
                p.start.into(),
                p.end.into(),
                joined(&p.run).into(),
            ]);
            table.render(format)
        }
        (_, None, None) => unreachable!("checked above"),
    };
    Ok(Report::ok(out))
}

fn cmd_counts(d: &Degree, format: Format) -> Outcome {
    check_degree(d, MAX_COUNTS_N)?;
    let mut table = Table::new(vec![
        "i",
        "m",
        "l",
        "r",
        "raw",
        "net",
        "coefficient",
        "contribution",
    ]);
    for i in 0..=d.k {
        let ctx = CountContext::new(d.n, d.k, i)?;
        for p in BlockProfile::with_squares(i) {
            let net = net_count(&p, &ctx)?;
            let coefficient = profile_coefficient(&p);
            let contribution = &coefficient * int(net.clone());
            table.push(vec![
                i.into(),
                p.m.into(),
                p.l.into(),
                p.r.into(),
                raw_count(&p, &ctx)?.into(),
                net.into(),
                coefficient.into(),
                contribution.into(),
            ]);
        }
    }
    Ok(Report::ok(table.render(format)))
}

fn cmd_table(n_max: u32, format: Format) -> Outcome {
    at_most("n_max", n_max, MAX_TABLE_N)?;
    let mut table = Table::new(OutputRecord::HEADERS.to_vec());
    for n in 1..=n_max {
        for k in 0..=n {
            table.push(record(k, n)?.cells());
        }
    }
    Ok(Report::ok(table.render(format)))
}

fn cmd_fan(n: u32, format: Format) -> Outcome {
    at_most("n", n, MAX_CONE_RANK)?;
    let mut table = Table::new(vec!["k", "cones", "ordered_partitions", "agree"]);
    let mut ok = true;
    for k in 0..=n {
        let cones = count_cones(n, k)?;
        let partitions = ordered_set_partitions(n + 1, k + 1);
        let agree = cones == partitions;
        ok &= agree;
        table.push(vec![
            k.into(),
            cones.into(),
            partitions.into(),
            agree.into(),
        ]);
    }
    let mut text = table.render(format);
    if format == Format::Text && (1..=MAX_RAY_RANK).contains(&n) {
        let surjective = surjectivity_check(n)?;
        ok &= surjective;
        text += &format!(
            "every nonempty proper subset of {{1..{}}} is a ray: {surjective}\n",
            n + 1
        );
    }
    Ok(Report { text, ok })
}

fn evaluation_point(text: Option<&str>, n: u32) -> Result<EvaluationPoint, Failure> {
    let Some(text) = text else {
        return Ok(EvaluationPoint::standard(n as usize));
    };
    let coords = text
        .split(',')
        .map(|c| c.trim().parse::<i64>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| Failure::Usage(format!("bad point `{text}`: {e}")))?;
    if coords.len() != n as usize + 1 {
        return Err(Failure::Usage(format!(
            "need {} coordinates, got {}",
            n + 1,
            coords.len()
        )));
    }
    Ok(EvaluationPoint::from_integers(&coords)?)
}

fn scaled(n: u32, x: BigRational) -> Result<BigRational, Failure> {
    Ok(int(factorial(n as i64 + 1)?) * x)
}

fn cmd_pair_vector(text: &str, point: Option<&str>, format: Format) -> Outcome {
    let v = parse_vector(text)?;
    let n = v.len() as u32;
    at_most("n", n, MAX_PAIR_N)?;
    let t = evaluation_point(point, n)?;
    let pairing = monomial_pairing(&v, &t)?;
    let expected = scaled(n, permuto_core::monomial::reduction_coefficient(&v)?)?;
    let agree = pairing == expected;
    let mut table = Table::new(vec!["vector", "pairing", "expected", "agree"]);
    table.push(vec![
        v.to_string().into(),
        pairing.into(),
        expected.into(),
        agree.into(),
    ]);
    Ok(Report {
        text: table.render(format),
        ok: agree,
    })
}

fn cmd_pair_chern(n: u32, k: Option<u32>, point: Option<&str>, format: Format) -> Outcome {
    if let Some(k) = k {
        check_degree(&Degree { n, k }, MAX_PAIR_N)?;
    }
    at_most("n", n, MAX_PAIR_N)?;
    let t = evaluation_point(point, n)?;
    let pairs: Vec<(u32, BigRational)> = match k {
        Some(k) => vec![(k, chern_pairing(k, n, &t)?)],
        None => (0..=n).zip(chern_pairings(&t)).collect(),
    };
    let mut table = Table::new(vec!["n", "k", "pairing", "expected", "agree"]);
    let mut ok = true;
    for (k, pairing) in pairs {
        let expected = scaled(n, mu_closed(k, n)?)?;
        let agree = pairing == expected;
        ok &= agree;
        table.push(vec![
            n.into(),
            k.into(),
            pairing.into(),
            expected.into(),
            agree.into(),
        ]);
    }
    Ok(Report {
        text: table.render(format),
        ok,
    })
}

fn cmd_verify(suite: &str, n_max: Option<u32>, format: Format) -> Outcome {
    let suite = Suite::from_str(suite)?;
    let reports = verify::run(suite, n_max)?;
    let mut table = Table::new(vec![
        "suite",
        "n_max",
        "check",
        "cases",
        "failed",
        "status",
        "first_failure",
    ]);
    let mut ok = true;
    for report in &reports {
        ok &= report.passed();
        for c in &report.checks {
            table.push(vec![
                report.suite.name().into(),
                report.n_max.into(),
                c.name.clone().into(),
                Cell::Int(BigInt::from(c.cases)),
                Cell::Int(BigInt::from(c.failed)),
                if c.passed() { "PASS" } else { "FAIL" }.into(),
                c.failures.first().cloned().unwrap_or_default().into(),
            ]);
        }
    }
    let mut text = table.render(format);
    if format == Format::Text {
        for c in reports
            .iter()
            .flat_map(|r| &r.checks)
            .filter(|c| !c.passed())
        {
            text += &format!("failures in `{}`:\n", c.name);
            for f in &c.failures {
                text += &format!("  {f}\n");
            }
        }
        text += &format!(
            "verify {}: {}\n",
            suite.name(),
            if ok { "PASS" } else { "FAIL" }
        );
    }
    Ok(Report { text, ok })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes() {
        let report = |ok| {
            Ok(Report {
                text: String::new(),
                ok,
            })
        };
        assert_eq!(exit_code(&report(true)), 0);
        assert_eq!(exit_code(&report(false)), 1);
        assert_eq!(exit_code(&Err(Error::Inconsistency("x".into()).into())), 1);
        assert_eq!(exit_code(&Err(Error::Parse("x".into()).into())), 2);
        assert_eq!(exit_code(&Err(Failure::Usage("x".into()))), 2);
    }

    #[test]
    fn small_verify_run_passes() {
        let outcome = cmd_verify("fan", Some(3), Format::Text);
        assert_eq!(exit_code(&outcome), 0);
    }

    #[test]
    fn cli_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
