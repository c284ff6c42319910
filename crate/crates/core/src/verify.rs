//! Verification suites comparing every route to `mu_k(n)` and the counting
//! identities behind it. Each suite is a list of named checks; a check
//! records how many cases it ran and the first failures it saw.

use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::Zero;

use crate::arith::{binomial, factorial, int};
use crate::counting::{
    net_count, net_count_enumerated, raw_count, raw_count_enumerated, BlockProfile, CountContext,
};
use crate::error::{Error, Result};
use crate::expansion::{contribution_histogram, mu_bruteforce};
use crate::fan::{count_cones, ordered_set_partitions, surjectivity_check};
use crate::formulas::{
    check_alternating_binomial, check_key_equality, check_sum_of_raw, check_tri_coef, mu_closed,
    mu_result, mu_via_contributions, x_contribution, x_expanded, x_ii_closed, x_via_factorization,
};
use crate::localization::{chern_pairings, monomial_pairing, EvaluationPoint};
use crate::monomial::{reduction_coefficient, ExponentVector};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    All,
    Oracle,
    Localization,
    Counts,
    Identities,
    Fan,
}

impl Suite {
    pub const EACH: [Suite; 5] = [
        Suite::Oracle,
        Suite::Localization,
        Suite::Counts,
        Suite::Identities,
        Suite::Fan,
    ];

    /// Default `n_max` for the suite.
    pub fn default_bound(self) -> u32 {
        match self {
            Suite::Oracle => 9,
            Suite::Localization => 7,
            Suite::Counts => 10,
            Suite::Identities => 15,
            Suite::Fan => 7,
            Suite::All => 0,
        }
    }

    /// Largest accepted `n_max`: the enumeration guards of the routes the
    /// suite calls, or what finishes in reasonable time for localization.
    pub fn max_bound(self) -> u32 {
        match self {
            Suite::Oracle => crate::expansion::MAX_N,
            Suite::Localization => 9,
            Suite::Counts => crate::counting::ENUMERATION_LIMIT as u32,
            Suite::Identities => 64,
            Suite::Fan => crate::fan::MAX_RAY_RANK,
            Suite::All => Suite::EACH.iter().map(|s| s.max_bound()).min().unwrap(),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Suite::All => "all",
            Suite::Oracle => "oracle",
            Suite::Localization => "localization",
            Suite::Counts => "counts",
            Suite::Identities => "identities",
            Suite::Fan => "fan",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        [Suite::All]
            .into_iter()
            .chain(Suite::EACH)
            .find(|suite| suite.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown suite `{s}`")))
    }
}

const KEPT_FAILURES: usize = 5;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckOutcome {
    pub name: String,
    pub cases: u64,
    pub failed: u64,
    /// The first few failure messages.
    pub failures: Vec<String>,
}

impl CheckOutcome {
    fn new(name: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            cases: 0,
            failed: 0,
            failures: Vec::new(),
        }
    }

    fn record(&mut self, outcome: Result<bool>, describe: impl FnOnce() -> String) {
        self.cases += 1;
        let message = match outcome {
            Ok(true) => return,
            Ok(false) => describe(),
            Err(e) => format!("{}: {e}", describe()),
        };
        self.failed += 1;
        if self.failures.len() < KEPT_FAILURES {
            self.failures.push(message);
        }
    }

    pub fn passed(&self) -> bool {
        self.failed == 0
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteReport {
    pub suite: Suite,
    pub n_max: u32,
    pub checks: Vec<CheckOutcome>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(CheckOutcome::passed)
    }
}

/// Runs one suite (or every suite for [`Suite::All`]) up to `n_max`, or the
/// suite's default bound when `n_max` is `None`.
pub fn run(suite: Suite, n_max: Option<u32>) -> Result<Vec<SuiteReport>> {
    if let Some(n) = n_max.filter(|&n| n > suite.max_bound()) {
        return Err(Error::ResourceLimit {
            what: "verification bound",
            size: n as u64,
            limit: suite.max_bound() as u64,
        });
    }
    Ok(match suite {
        Suite::All => Suite::EACH.iter().map(|&s| run_one(s, n_max)).collect(),
        s => vec![run_one(s, n_max)],
    })
}

fn run_one(suite: Suite, n_max: Option<u32>) -> SuiteReport {
    let n_max = n_max.unwrap_or_else(|| suite.default_bound());
    let checks = match suite {
        Suite::Oracle => oracle(n_max),
        Suite::Localization => localization(n_max),
        Suite::Counts => counts(n_max),
        Suite::Identities => identities(n_max),
        Suite::Fan => fan(n_max),
        Suite::All => unreachable!("expanded by run"),
    };
    SuiteReport {
        suite,
        n_max,
        checks,
    }
}

fn equal(a: Result<BigRational>, b: Result<BigRational>) -> Result<bool> {
    Ok(a? == b?)
}

fn oracle(n_max: u32) -> Vec<CheckOutcome> {
    let mut mu = CheckOutcome::new("mu: closed form = contributions = brute-force expansion");
    let mut strata =
        CheckOutcome::new("X(k,i): expansion histogram = Net-count sum = factorized form");
    let mut diagonal = CheckOutcome::new("X(i,i): Net-count sum = closed form");
    for n in 0..=n_max {
        for k in 0..=n {
            mu.record(
                (|| {
                    let closed = mu_closed(k, n)?;
                    Ok(closed == mu_via_contributions(k, n)? && closed == mu_bruteforce(k, n)?)
                })(),
                || format!("n={n} k={k}"),
            );
            let histogram = contribution_histogram(k, n);
            for i in 0..=k {
                strata.record(
                    (|| {
                        let h = histogram.as_ref().map_err(Clone::clone)?;
                        let x = x_contribution(k, i, n)?;
                        Ok(h.get(&i) == Some(&x) && x == x_via_factorization(k, i, n)?)
                    })(),
                    || format!("n={n} k={k} i={i}"),
                );
            }
            diagonal.record(equal(x_contribution(k, k, n), x_ii_closed(k, n)), || {
                format!("n={n} i={k}")
            });
        }
    }
    vec![mu, strata, diagonal]
}

/// Largest rank for the exhaustive per-monomial comparison.
const MONOMIAL_RANK: u32 = 6;

fn localization(n_max: u32) -> Vec<CheckOutcome> {
    let mut chern = CheckOutcome::new("fixed-point sum of c_k c_{n-k} = (n+1)! mu_k(n)");
    let mut monomials =
        CheckOutcome::new("fixed-point sum of alpha^v = (n+1)! reduction coefficient");
    let mut independence =
        CheckOutcome::new("monomial pairing is independent of the evaluation point");
    for n in 1..=n_max {
        let t = EvaluationPoint::standard(n as usize);
        let pairings = chern_pairings(&t);
        for k in 0..=n {
            chern.record(
                mu_result(k, n).map(|r| pairings[k as usize] == int(r.chern_number)),
                || format!("n={n} k={k}"),
            );
        }
        if n > MONOMIAL_RANK {
            continue;
        }
        let scale = int(factorial(n as i64 + 1).expect("non-negative"));
        let other = EvaluationPoint::squares(n as usize);
        for v in ExponentVector::all_top_degree(n as usize) {
            let here = monomial_pairing(&v, &t);
            monomials.record(
                (|| Ok(here.clone()? == &scale * reduction_coefficient(&v)?))(),
                || format!("v=({v})"),
            );
            if n <= 5 {
                independence.record(equal(here, monomial_pairing(&v, &other)), || {
                    format!("v=({v})")
                });
            }
        }
    }
    vec![chern, monomials, independence]
}

/// Compatible `(profile, context)` pairs for `n <= n_max`.
fn compatible(n_max: u32) -> impl Iterator<Item = (BlockProfile, CountContext)> {
    (0..=n_max).flat_map(|n| {
        (0..=n).flat_map(move |k| {
            (0..=k).flat_map(move |i| {
                let ctx = CountContext::new(n, k, i).expect("i <= k <= n");
                BlockProfile::with_squares(i).map(move |p| (p, ctx))
            })
        })
    })
}

fn counts(n_max: u32) -> Vec<CheckOutcome> {
    let mut raw = CheckOutcome::new("Raw: closed form = enumeration");
    let mut net = CheckOutcome::new("Net: inclusion-exclusion = filtered enumeration");
    let mut raw_factor = CheckOutcome::new("Raw(k,i) = C(n-2i,k-i) Raw(i,i)");
    let mut net_factor = CheckOutcome::new("Net(k,i) = C(n-2i,k-i) Net(i,i)");
    let mut raw_from_net = CheckOutcome::new("Raw = sum_p C(m+p,p) Net(m+p,l-p,r-p)");
    for (p, c) in compatible(n_max) {
        let describe = || {
            format!(
                "n={} k={} i={} (m,l,r)=({},{},{})",
                c.n, c.k, c.i, p.m, p.l, p.r
            )
        };
        raw.record(
            (|| Ok(raw_count(&p, &c)? == raw_count_enumerated(&p, &c)?))(),
            describe,
        );
        net.record(
            (|| Ok(net_count(&p, &c)? == net_count_enumerated(&p, &c)?))(),
            describe,
        );
        let diag = CountContext::new(c.n, c.i, c.i).expect("i <= n");
        let spread = binomial(c.n as i64 - 2 * c.i as i64, (c.k - c.i) as i64);
        raw_factor.record(
            (|| Ok(raw_count(&p, &c)? == &spread * raw_count(&p, &diag)?))(),
            describe,
        );
        net_factor.record(
            (|| Ok(net_count(&p, &c)? == &spread * net_count(&p, &diag)?))(),
            describe,
        );
        raw_from_net.record(
            (|| {
                let mut sum = num_bigint::BigInt::zero();
                for glued in 0..=p.l.min(p.r) {
                    let q = BlockProfile::new(p.m + glued, p.l - glued, p.r - glued);
                    sum += binomial((p.m + glued) as i64, glued as i64) * net_count(&q, &c)?;
                }
                Ok(sum == raw_count(&p, &c)?)
            })(),
            describe,
        );
    }
    vec![raw, net, raw_factor, net_factor, raw_from_net]
}

fn identities(n_max: u32) -> Vec<CheckOutcome> {
    let mut tri = CheckOutcome::new("sum_r multinomial(M,L-r,r) = 2^L C(N,M)");
    for total in 0..=n_max + 5 {
        for l in 0..=total {
            tri.record(Ok(check_tri_coef(l, total - l, total)), || {
                format!("L={l} N={total}")
            });
        }
    }

    let mut sum_raw = CheckOutcome::new("sum_{l+r=L} Raw(M,l,r)(i,i) = 2^L C(L+M,M) C(n-3M-L,L+M)");
    for n in 0..=n_max {
        for m in 0..=n / 2 {
            for l in 0..=n - 2 * m {
                sum_raw.record(check_sum_of_raw(l, m, 2 * m + l, n), || {
                    format!("L={l} M={m} n={n}")
                });
            }
        }
    }

    let mut alternating = CheckOutcome::new("sum_p (-1)^p C(u,p) C(s+p,t) = (-1)^u C(s,t-u)");
    let bound = n_max as i64;
    for u in 0..=bound {
        for s in 0..=bound {
            for t in 0..=bound {
                alternating.record(Ok(check_alternating_binomial(u, s, t)), || {
                    format!("u={u} s={s} t={t}")
                });
            }
        }
    }

    let mut key = CheckOutcome::new("alternating triple-binomial sum = C(k-j,j) C(n-k-j,j)");
    let mut expanded = CheckOutcome::new("C(n-2i,k-i) X(i,i) = expanded X(k,i)");
    for n in 0..=n_max {
        for k in 0..=n {
            for j in 0..=k / 2 {
                key.record(check_key_equality(k, j, n), || format!("k={k} j={j} n={n}"));
            }
            for i in 0..=k {
                expanded.record(
                    equal(x_via_factorization(k, i, n), x_expanded(k, i, n)),
                    || format!("k={k} i={i} n={n}"),
                );
            }
        }
    }

    let mut symmetry = CheckOutcome::new("mu_k(n) = mu_{n-k}(n)");
    for n in 0..=2 * n_max {
        for k in 0..=n {
            symmetry.record(equal(mu_closed(k, n), mu_closed(n - k, n)), || {
                format!("n={n} k={k}")
            });
        }
    }
    let mut integral = CheckOutcome::new("(n+1)! mu_k(n) is an integer");
    for n in 0..=n_max + 5 {
        for k in 0..=n {
            integral.record(mu_result(k, n).map(|_| true), || format!("n={n} k={k}"));
        }
    }
    vec![tri, sum_raw, alternating, key, expanded, symmetry, integral]
}

fn fan(n_max: u32) -> Vec<CheckOutcome> {
    let mut euler = CheckOutcome::new("maximal cones = (n+1)! = fixed-point sum of c_n");
    let mut rays = CheckOutcome::new("rays = 2^(n+1) - 2");
    let mut partitions = CheckOutcome::new("k-cones = ordered set partitions into k+1 blocks");
    let mut surjective = CheckOutcome::new("every nonempty proper subset is a ray");
    for n in 1..=n_max {
        let describe = || format!("n={n}");
        euler.record(
            (|| {
                let maximal = count_cones(n, n)?;
                let factorial = factorial(n as i64 + 1)?;
                let pairing = monomial_pairing(
                    &ExponentVector::top(n as usize),
                    &EvaluationPoint::standard(n as usize),
                )?;
                Ok(maximal == factorial && pairing == int(factorial))
            })(),
            describe,
        );
        rays.record(
            count_cones(n, 1).map(|c| c == num_bigint::BigInt::from((1u64 << (n + 1)) - 2)),
            describe,
        );
        for k in 0..=n {
            partitions.record(
                count_cones(n, k).map(|c| c == ordered_set_partitions(n + 1, k + 1)),
                || format!("n={n} k={k}"),
            );
        }
        surjective.record(surjectivity_check(n), describe);
    }
    vec![euler, rays, partitions, surjective]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_suites_pass() {
        for suite in Suite::EACH {
            for report in run(suite, Some(4)).unwrap() {
                for check in &report.checks {
                    assert!(
                        check.passed(),
                        "{suite}: {} {:?}",
                        check.name,
                        check.failures
                    );
                    assert!(check.cases > 0, "{suite}: {} ran nothing", check.name);
                }
            }
        }
    }

    #[test]
    fn bounds_are_guarded() {
        assert!(run(Suite::Oracle, Some(13)).is_err());
        assert!(run(Suite::All, Some(8)).is_err());
        for suite in Suite::EACH {
            assert!(suite.default_bound() <= suite.max_bound(), "{suite}");
        }
    }

    #[test]
    fn suite_names_round_trip() {
        for s in [Suite::All].into_iter().chain(Suite::EACH) {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("bogus".parse::<Suite>().is_err());
    }

    #[test]
    fn failures_are_recorded() {
        let mut c = CheckOutcome::new("demo");
        c.record(Ok(true), || unreachable!());
        c.record(Ok(false), || "first".into());
        c.record(Err(Error::InvalidArgument("bad".into())), || {
            "second".into()
        });
        assert_eq!((c.cases, c.failed), (3, 2));
        assert_eq!(
            c.failures,
            vec![
                "first".to_string(),
                "second: invalid argument: bad".to_string()
            ]
        );
        assert!(!c.passed());
    }
}
