//! Acceptance gate: each criterion runs at its stated range and time budget
//! and prints one PASS/FAIL line. Exits non-zero if any criterion fails.

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_rational::BigRational;
use permuto_core::arith::{binomial, factorial, int, ratio};
use permuto_core::counting::{
    net_count, net_count_enumerated, raw_count, raw_count_enumerated, BlockProfile, CountContext,
};
use permuto_core::expansion::{contribution_histogram, mu_bruteforce};
use permuto_core::fan::count_cones;
use permuto_core::formulas::{
    check_alternating_binomial, check_key_equality, check_sum_of_raw, check_tri_coef, mu_closed,
    mu_result, mu_terms, mu_via_contributions, x_contribution, x_ii_closed, x_via_factorization,
};
use permuto_core::localization::{chern_pairing, monomial_pairing, EvaluationPoint};
use permuto_core::monomial::{
    find_vanishing_pattern, is_nonvanishing, reduce_with_trace, reduction_coefficient,
    ExponentVector, Rule,
};
use permuto_core::Result;

struct Outcome {
    ok: bool,
    detail: String,
}

fn outcome(failures: &[String], cases: usize) -> Outcome {
    Outcome {
        ok: failures.is_empty(),
        detail: match failures.first() {
            None => format!("{cases} cases"),
            Some(f) => format!("{} of {cases} cases failed, first: {f}", failures.len()),
        },
    }
}

/// Collects `(description, check)` results into an outcome.
struct Tally {
    cases: usize,
    failures: Vec<String>,
}

impl Tally {
    fn new() -> Self {
        Self {
            cases: 0,
            failures: Vec::new(),
        }
    }

    fn check(&mut self, result: Result<bool>, describe: impl FnOnce() -> String) {
        self.cases += 1;
        match result {
            Ok(true) => {}
            Ok(false) => self.failures.push(describe()),
            Err(e) => self.failures.push(format!("{}: {e}", describe())),
        }
    }

    fn finish(self) -> Outcome {
        outcome(&self.failures, self.cases)
    }
}

fn fact(n: u32) -> BigRational {
    int(factorial(n as i64 + 1).unwrap())
}

fn euler_characteristic() -> Outcome {
    let mut t = Tally::new();
    for n in 1..=7u32 {
        let top = ExponentVector::top(n as usize);
        t.check(
            monomial_pairing(&top, &EvaluationPoint::standard(n as usize)).map(|p| p == fact(n)),
            || format!("pairing of c_{n}"),
        );
        t.check(count_cones(n, n).map(|c| int(c) == fact(n)), || {
            format!("maximal cones at n={n}")
        });
    }
    t.finish()
}

fn three_way_agreement() -> Outcome {
    let mut t = Tally::new();
    for n in 0..=9 {
        for k in 0..=n {
            t.check(
                (|| {
                    let closed = mu_closed(k, n)?;
                    Ok(closed == mu_via_contributions(k, n)? && closed == mu_bruteforce(k, n)?)
                })(),
                || format!("n={n} k={k}"),
            );
        }
    }
    t.finish()
}

fn localization_agreement(n_range: std::ops::RangeInclusive<u32>) -> Outcome {
    let mut t = Tally::new();
    for n in n_range {
        let point = EvaluationPoint::standard(n as usize);
        for k in 0..=n {
            t.check(
                (|| Ok(chern_pairing(k, n, &point)? == fact(n) * mu_closed(k, n)?))(),
                || format!("n={n} k={k}"),
            );
        }
    }
    t.finish()
}

fn per_monomial_reduction() -> Outcome {
    let mut t = Tally::new();
    for n in 1..=6u32 {
        let point = EvaluationPoint::standard(n as usize);
        for v in ExponentVector::all_top_degree(n as usize) {
            t.check(
                (|| Ok(monomial_pairing(&v, &point)? == fact(n) * reduction_coefficient(&v)?))(),
                || format!("v=({v})"),
            );
        }
    }
    t.finish()
}

fn counting_formulas() -> Outcome {
    let mut t = Tally::new();
    for n in 0..=10 {
        for k in 0..=n {
            for i in 0..=k {
                let c = CountContext::new(n, k, i).unwrap();
                let diag = CountContext::new(n, i, i).unwrap();
                let spread = binomial(n as i64 - 2 * i as i64, (k - i) as i64);
                for p in BlockProfile::with_squares(i) {
                    let describe = || format!("n={n} k={k} i={i} {p:?}");
                    t.check(
                        (|| Ok(raw_count(&p, &c)? == raw_count_enumerated(&p, &c)?))(),
                        describe,
                    );
                    t.check(
                        (|| Ok(net_count(&p, &c)? == net_count_enumerated(&p, &c)?))(),
                        describe,
                    );
                    t.check(
                        (|| Ok(raw_count(&p, &c)? == &spread * raw_count(&p, &diag)?))(),
                        describe,
                    );
                    t.check(
                        (|| Ok(net_count(&p, &c)? == &spread * net_count(&p, &diag)?))(),
                        describe,
                    );
                }
            }
        }
    }
    t.finish()
}

fn stratified_contributions() -> Outcome {
    let mut t = Tally::new();
    for n in 0..=9 {
        for k in 0..=n {
            let histogram: Result<BTreeMap<u32, BigRational>> = contribution_histogram(k, n);
            for i in 0..=k {
                t.check(
                    (|| {
                        let h = histogram.as_ref().map_err(Clone::clone)?;
                        let x = x_contribution(k, i, n)?;
                        let mut ok = h.get(&i) == Some(&x) && x == x_via_factorization(k, i, n)?;
                        if i == k {
                            ok &= x == x_ii_closed(i, n)?;
                        }
                        Ok(ok)
                    })(),
                    || format!("n={n} k={k} i={i}"),
                );
            }
        }
    }
    t.finish()
}

fn identity_suite() -> Outcome {
    let mut t = Tally::new();
    for total in 0..=20 {
        for l in 0..=total {
            t.check(Ok(check_tri_coef(l, total - l, total)), || {
                format!("triCoef L={l} N={total}")
            });
        }
    }
    for u in 0..=15 {
        for s in 0..=15 {
            for tt in 0..=15 {
                t.check(Ok(check_alternating_binomial(u, s, tt)), || {
                    format!("alternating u={u} s={s} t={tt}")
                });
            }
        }
    }
    for n in 0..=15 {
        for k in 0..=n {
            for j in 0..=k / 2 {
                t.check(check_key_equality(k, j, n), || {
                    format!("key k={k} j={j} n={n}")
                });
            }
        }
        for m in 0..=n / 2 {
            for l in 0..=n - 2 * m {
                t.check(check_sum_of_raw(l, m, 2 * m + l, n), || {
                    format!("sum-of-raw L={l} M={m} n={n}")
                });
            }
        }
    }
    t.finish()
}

fn worked_examples() -> Outcome {
    let mut t = Tally::new();
    for n in 1..=30 {
        t.check(mu_closed(1, n).map(|m| m == int(1)), || {
            format!("mu_1({n})")
        });
    }

    let traced: ExponentVector = "2,0,1,2,0,0,2,0,2,1".parse().unwrap();
    t.check(
        reduce_with_trace(&traced).map(|trace| {
            trace.is_some_and(|tr| {
                let steps: Vec<_> = tr.steps.iter().map(|s| (s.rule, s.position)).collect();
                tr.coefficient == ratio(1, 12)
                    && steps == [(Rule::R1Left, 1), (Rule::R1Right, 8), (Rule::R2, 4)]
            })
        }),
        || "reduction trace of 2,0,1,2,0,0,2,0,2,1".into(),
    );

    let vanishing: ExponentVector = "0,1,2,0,2,0,2,1,0,2".parse().unwrap();
    t.check(
        is_nonvanishing(&vanishing).map(|nv| {
            let pattern = find_vanishing_pattern(&vanishing);
            !nv && pattern.is_some_and(|p| p.run == [2, 0, 2, 0, 2] && (p.start, p.end) == (3, 7))
        }),
        || "vanishing pattern of 0,1,2,0,2,0,2,1,0,2".into(),
    );

    for n in 4..=30i64 {
        let nu = n as u32;
        let b = |a: i64, c: i64| int(binomial(a, c));
        let twelfth = ratio(1, 12);
        t.check(
            mu_terms(2, nu)
                .map(|got| got == [b(2, 0) * b(n - 2, 0), &twelfth * b(1, 1) * b(n - 3, 1)]),
            || format!("mu_2({n}) terms"),
        );
        t.check(
            mu_terms(3, nu)
                .map(|got| got == [b(3, 0) * b(n - 3, 0), &twelfth * b(2, 1) * b(n - 4, 1)]),
            || format!("mu_3({n}) terms"),
        );
        t.check(
            mu_terms(4, nu).map(|got| {
                got == [
                    b(4, 0) * b(n - 4, 0),
                    &twelfth * b(3, 1) * b(n - 5, 1),
                    &twelfth * &twelfth * b(2, 2) * b(n - 6, 2),
                ]
            }),
            || format!("mu_4({n}) terms"),
        );
    }
    t.finish()
}

fn structural_properties() -> Outcome {
    let mut t = Tally::new();
    for n in 0..=30 {
        for k in 0..=n {
            t.check((|| Ok(mu_closed(k, n)? == mu_closed(n - k, n)?))(), || {
                format!("symmetry n={n} k={k}")
            });
        }
    }
    for n in 0..=20 {
        for k in 0..=n {
            t.check(
                mu_result(k, n).map(|r| int(r.chern_number.clone()) == fact(n) * r.mu),
                || format!("integrality n={n} k={k}"),
            );
        }
    }
    for n in 1..=5 {
        let (a, b) = (EvaluationPoint::standard(n), EvaluationPoint::squares(n));
        for v in ExponentVector::all_top_degree(n) {
            t.check(
                (|| Ok(monomial_pairing(&v, &a)? == monomial_pairing(&v, &b)?))(),
                || format!("point independence v=({v})"),
            );
        }
    }
    t.finish()
}

fn main() -> ExitCode {
    type Criterion = (&'static str, Option<Duration>, fn() -> Outcome);
    let criteria: [Criterion; 10] = [
        (
            "1 Euler characteristic, n <= 7",
            Some(Duration::from_secs(5)),
            euler_characteristic,
        ),
        (
            "2 closed form = contributions = expansion, n <= 9",
            Some(Duration::from_secs(30)),
            three_way_agreement,
        ),
        (
            "3 localization = (n+1)! mu, n <= 7",
            Some(Duration::from_secs(60)),
            || localization_agreement(0..=7),
        ),
        ("3 localization = (n+1)! mu, extended n = 8", None, || {
            localization_agreement(8..=8)
        }),
        (
            "4 per-monomial localization = (n+1)! coefficient, n <= 6",
            Some(Duration::from_secs(60)),
            per_monomial_reduction,
        ),
        (
            "5 Raw/Net closed forms = enumeration and factorization laws, n <= 10",
            Some(Duration::from_secs(30)),
            counting_formulas,
        ),
        (
            "6 stratified contributions X(k,i), n <= 9",
            None,
            stratified_contributions,
        ),
        (
            "7 binomial identity suite",
            Some(Duration::from_secs(10)),
            identity_suite,
        ),
        ("8 worked examples", None, worked_examples),
        (
            "9 symmetry, integrality, point independence",
            None,
            structural_properties,
        ),
    ];

    let mut all_ok = true;
    for (name, budget, run) in criteria {
        let start = Instant::now();
        let out = run();
        let elapsed = start.elapsed();
        let in_time = budget.is_none_or(|b| elapsed < b);
        let ok = out.ok && in_time;
        all_ok &= ok;
        let limit = budget
            .map(|b| format!(" (limit {}s)", b.as_secs()))
            .unwrap_or_default();
        let late = if in_time { "" } else { " [over time budget]" };
        println!(
            "criterion {name}: {} - {} in {:.2}s{limit}{late}",
            if ok { "PASS" } else { "FAIL" },
            out.detail,
            elapsed.as_secs_f64()
        );
    }
    if all_ok {
        println!("acceptance: all criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: FAILED");
        ExitCode::FAILURE
    }
}
