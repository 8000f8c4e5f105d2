//! The acceptance checks, grouped into named suites.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::time::{Duration, Instant};

use serde::Serialize;
use syzkit::rational::{fmt_q, q, qi};
use syzkit::random::stream_rng;
use syzkit::symgroup::{test_conjecture, verify_s5_syzygy};
use syzkit::syzygy::{
    closed_form_table, coin_inequality, dimension_identity, kappa, minimal_equation_u1_check,
    pi_set, reconstruct, segre22_identity_check, vartheta_table, verify_tables, KappaOracle, LatticePoint,
    SyzygyTable,
};
use syzkit::transvectant::{jacobian_exchange_check, project, section_iota, transvect, BinaryForm};
use syzkit::wigner::{
    all_arrays, kappa_via_ninej, kappa_via_ninej_with_terms, ninej_operator, ninej_symmetry_check,
    ninej_triple_sum, random_array, NineJArray,
};
use syzkit::{Error, VarPair, Q};

pub const SUITES: [&str; 6] = ["core", "syzygy", "wigner", "bridge", "symgroup", "all"];

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub id: &'static str,
    pub suite: &'static str,
    pub description: &'static str,
    pub status: Status,
    pub expected: String,
    pub actual: String,
    pub elapsed_ms: u128,
    pub budget_ms: u128,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub seed: u64,
    pub trials: u64,
    pub checks: Vec<CheckResult>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status == Status::Pass)
    }

    /// The report with timing fields zeroed, for byte-level comparisons.
    pub fn without_timing(&self) -> SuiteReport {
        let mut r = self.clone();
        for c in &mut r.checks {
            c.elapsed_ms = 0;
        }
        r
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("reports serialize")
    }

    pub fn to_table(&self) -> String {
        let mut s = String::new();
        for c in &self.checks {
            let status = match c.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
            };
            let _ = writeln!(s, "{status} {:<24} {:>8} ms  {}", c.id, c.elapsed_ms, c.description);
            if c.status == Status::Fail {
                let _ = writeln!(s, "     expected: {}", c.expected);
                let _ = writeln!(s, "     actual:   {}", c.actual);
            }
        }
        let passed = self.checks.iter().filter(|c| c.status == Status::Pass).count();
        let _ = writeln!(s, "{passed}/{} checks passed (suite {}, seed {}, trials {})", self.checks.len(), self.suite, self.seed, self.trials);
        s
    }
}

struct Outcome {
    passed: bool,
    expected: String,
    actual: String,
}

impl Outcome {
    fn compare(expected: String, actual: String) -> Outcome {
        Outcome { passed: expected == actual, expected, actual }
    }
}

#[derive(Copy, Clone)]
struct Ctx {
    seed: u64,
    trials: u64,
}

type CheckFn = fn(Ctx) -> syzkit::Result<Outcome>;

struct Check {
    id: &'static str,
    suite: &'static str,
    description: &'static str,
    budget: Duration,
    run: CheckFn,
}

const fn secs(s: u64) -> Duration {
    Duration::from_secs(s)
}

const CHECKS: [Check; 13] = [
    Check {
        id: "ac01-weight2-5-3",
        suite: "syzygy",
        description: "weight-2 syzygy for (5,3) anchored at -1",
        budget: secs(1),
        run: ac01,
    },
    Check {
        id: "ac02-weight3-5-3",
        suite: "syzygy",
        description: "weight-3 syzygy for (5,3) anchored at -1",
        budget: secs(1),
        run: ac02,
    },
    Check {
        id: "ac03-table-7-5-4",
        suite: "syzygy",
        description: "syzygy table (7,5,4) at p = (0,1)",
        budget: secs(2),
        run: ac03,
    },
    Check {
        id: "ac04-vartheta-8-6-5",
        suite: "syzygy",
        description: "vartheta_(0,5) at p = (1,0) for (8,6,5)",
        budget: secs(2),
        run: ac04,
    },
    Check {
        id: "ac05-kappa-three-routes",
        suite: "bridge",
        description: "kappa = operator oracle = 9-j route on the grid",
        budget: secs(120),
        run: ac05,
    },
    Check {
        id: "ac06-random-verification",
        suite: "syzygy",
        description: "all tables for m, n <= 8 vanish on random pairs",
        budget: secs(300),
        run: ac06,
    },
    Check {
        id: "ac07-reconstruction",
        suite: "syzygy",
        description: "u_r recovered from u_0, u_1",
        budget: secs(60),
        run: ac07,
    },
    Check {
        id: "ac08-quadratic-identities",
        suite: "syzygy",
        description: "quadratic-pair identities and minimal equation",
        budget: secs(30),
        run: ac08,
    },
    Check {
        id: "ac09-ninej-equivalence",
        suite: "wigner",
        description: "9-j operator chain = triple sum, symmetry law",
        budget: secs(300),
        run: ac09,
    },
    Check {
        id: "ac10-stretched-single-term",
        suite: "bridge",
        description: "stretched kappa is a single nonzero term",
        budget: secs(60),
        run: ac10,
    },
    Check {
        id: "ac11-s5-relation",
        suite: "symgroup",
        description: "d = 5 relation (32, 100, 25, -180)",
        budget: secs(30),
        run: ac11,
    },
    Check {
        id: "ac12-conjecture-6-7",
        suite: "symgroup",
        description: "conjecture for d = 6 and d = 7",
        budget: secs(120),
        run: ac12,
    },
    Check {
        id: "ac13-properties",
        suite: "core",
        description: "dimension identity, coin inequality, sections, covariance",
        budget: secs(120),
        run: ac13,
    },
];

/// Runs every check of a suite in canonical order.
pub fn run_suite(name: &str, seed: u64, trials: u64) -> syzkit::Result<SuiteReport> {
    if !SUITES.contains(&name) {
        return Err(Error::UnknownSuite(name.to_string()));
    }
    let ctx = Ctx { seed, trials };
    let checks = CHECKS
        .iter()
        .filter(|c| name == "all" || c.suite == name)
        .map(|c| run_check(c, ctx))
        .collect();
    Ok(SuiteReport { suite: name.to_string(), seed, trials, checks })
}

/// Check ids of a suite, in report order.
pub fn check_ids(name: &str) -> Vec<&'static str> {
    CHECKS.iter().filter(|c| name == "all" || c.suite == name).map(|c| c.id).collect()
}

fn run_check(c: &Check, ctx: Ctx) -> CheckResult {
    let start = Instant::now();
    let outcome = (c.run)(ctx);
    let elapsed = start.elapsed();
    let (mut passed, expected, mut actual) = match outcome {
        Ok(o) => (o.passed, o.expected, o.actual),
        Err(e) => (false, "no error".to_string(), format!("error: {e}")),
    };
    if elapsed > c.budget {
        passed = false;
        actual = format!("{actual} (over the {} ms budget)", c.budget.as_millis());
    }
    CheckResult {
        id: c.id,
        suite: c.suite,
        description: c.description,
        status: if passed { Status::Pass } else { Status::Fail },
        expected,
        actual,
        elapsed_ms: elapsed.as_millis(),
        budget_ms: c.budget.as_millis(),
    }
}

fn fmt_entries(entries: &BTreeMap<(u32, u32), Q>) -> String {
    let parts: Vec<String> = entries.iter().map(|((i, j), c)| format!("({i},{j}): {}", fmt_q(c))).collect();
    format!("{{{}}}", parts.join(", "))
}

fn table_entries(t: &SyzygyTable) -> BTreeMap<(u32, u32), Q> {
    t.entries().map(|(k, v)| (*k, v.clone())).collect()
}

fn anchored_table_check(m: u32, n: u32, r: u32, p: LatticePoint, anchor: (u32, u32, Q), want: &[((u32, u32), Q)]) -> syzkit::Result<Outcome> {
    let (t, _) = vartheta_table(m, n, r, p)?.anchored(anchor.0, anchor.1, &anchor.2)?;
    let expected: BTreeMap<(u32, u32), Q> = want.iter().cloned().collect();
    Ok(Outcome::compare(fmt_entries(&expected), fmt_entries(&table_entries(&t))))
}

fn ac01(_: Ctx) -> syzkit::Result<Outcome> {
    anchored_table_check(
        5,
        3,
        2,
        LatticePoint::ORIGIN,
        (0, 2, qi(-1)),
        &[((0, 0), q(21, 8)), ((0, 1), q(21, 16)), ((1, 1), q(315, 256)), ((0, 2), qi(-1))],
    )
}

fn ac02(_: Ctx) -> syzkit::Result<Outcome> {
    anchored_table_check(
        5,
        3,
        3,
        LatticePoint::ORIGIN,
        (0, 3, qi(-1)),
        &[((0, 1), q(20, 3)), ((0, 2), q(20, 9)), ((1, 2), q(25, 14)), ((0, 3), qi(-1))],
    )
}

fn ac03(_: Ctx) -> syzkit::Result<Outcome> {
    anchored_table_check(
        7,
        5,
        4,
        LatticePoint::new(0, 1),
        (0, 0, qi(1)),
        &[
            ((0, 0), qi(1)),
            ((0, 1), q(8, 3)),
            ((0, 2), q(54, 55)),
            ((0, 3), q(-1, 6)),
            ((0, 4), q(-10, 63)),
            ((1, 1), q(-7, 12)),
            ((1, 2), q(63, 55)),
            ((1, 3), q(49, 72)),
            ((2, 2), q(-1512, 3025)),
        ],
    )
}

fn ac04(_: Ctx) -> syzkit::Result<Outcome> {
    let v = vartheta_table(8, 6, 5, LatticePoint::new(1, 0))?.get(0, 5);
    Ok(Outcome::compare(fmt_q(&q(-2, 63)), fmt_q(&v)))
}

const KAPPA_GRID: [(u32, u32, u32); 5] = [(5, 3, 2), (5, 3, 3), (7, 5, 4), (8, 6, 5), (6, 6, 4)];

fn ac05(_: Ctx) -> syzkit::Result<Outcome> {
    let mut compared = 0;
    let mut mismatches = Vec::new();
    for (m, n, r) in KAPPA_GRID {
        for p in pi_set(m, n, r)? {
            let oracle = KappaOracle::new(m, n, r, p)?.all()?;
            for (&(i, j), o) in &oracle {
                let k = kappa(m, n, r, i, j, p)?;
                let w = kappa_via_ninej(m, n, r, i, j, p)?;
                compared += 1;
                if k != *o || k != w {
                    mismatches.push(format!("({m},{n},{r}) p={p} ({i},{j}): {} / {} / {}", fmt_q(&k), fmt_q(o), fmt_q(&w)));
                }
            }
        }
    }
    Ok(Outcome {
        passed: mismatches.is_empty() && compared > 0,
        expected: "all three routes agree".into(),
        actual: if mismatches.is_empty() {
            format!("{compared} coefficients agree")
        } else {
            format!("{} mismatches, first {}", mismatches.len(), mismatches[0])
        },
    })
}

fn ac06(ctx: Ctx) -> syzkit::Result<Outcome> {
    let mut tables = Vec::new();
    for m in 2..=8 {
        for n in 2..=8 {
            for r in 2..=m.min(n) {
                for p in pi_set(m, n, r)? {
                    tables.push(vartheta_table(m, n, r, p)?);
                }
                tables.push(closed_form_table(m, n, r)?);
            }
        }
    }
    let verdicts = verify_tables(&tables, ctx.trials, ctx.seed)?;
    let failed: Vec<String> = tables
        .iter()
        .zip(&verdicts)
        .filter(|(_, v)| !v.passed)
        .map(|(t, _)| format!("({},{},{}) {:?}", t.m(), t.n(), t.r(), t.source()))
        .collect();
    Ok(Outcome {
        passed: failed.is_empty(),
        expected: format!("{} tables, zero residual in each of {} trials", tables.len(), ctx.trials),
        actual: if failed.is_empty() {
            format!("{} tables, zero residual in each of {} trials", tables.len(), ctx.trials)
        } else {
            format!("{} tables failed, first {}", failed.len(), failed[0])
        },
    })
}

fn ac07(ctx: Ctx) -> syzkit::Result<Outcome> {
    let mut bad = Vec::new();
    let mut count = 0;
    for (k, (m, n)) in [(5u32, 3u32), (4, 4), (6, 5)].into_iter().enumerate() {
        for trial in 0..10u64 {
            let mut rng = stream_rng(ctx.seed, 7_000 + 100 * k as u64 + trial);
            let a = BinaryForm::random(&mut rng, VarPair::X, m);
            let b = BinaryForm::random(&mut rng, VarPair::X, n);
            let us = reconstruct(&transvect(&a, &b, 0)?, &transvect(&a, &b, 1)?, m, n)?;
            for (idx, u) in us.iter().enumerate() {
                let r = idx as u32 + 2;
                count += 1;
                if *u != transvect(&a, &b, r)? {
                    bad.push(format!("({m},{n}) trial {trial} r={r}"));
                }
            }
        }
    }
    Ok(Outcome {
        passed: bad.is_empty(),
        expected: "every reconstructed u_r equals (A,B)_r".into(),
        actual: if bad.is_empty() { format!("{count} transvectants recovered exactly") } else { format!("mismatch at {}", bad.join(", ")) },
    })
}

fn ac08(ctx: Ctx) -> syzkit::Result<Outcome> {
    let mut bad = Vec::new();
    for trial in 0..20u64 {
        let mut rng = stream_rng(ctx.seed, 8_000 + trial);
        let a = BinaryForm::random(&mut rng, VarPair::X, 2);
        let b = BinaryForm::random(&mut rng, VarPair::X, 2);
        let rep = segre22_identity_check(&a, &b)?;
        if !rep.passed() {
            bad.push(format!("trial {trial}: {:?}", rep.failures()));
        }
        if !minimal_equation_u1_check(&a, &b)? {
            bad.push(format!("trial {trial}: minimal equation"));
        }
    }
    Ok(Outcome {
        passed: bad.is_empty(),
        expected: "all identities hold on 20 pairs".into(),
        actual: if bad.is_empty() { "all identities hold on 20 pairs".into() } else { bad.join("; ") },
    })
}

fn ninej_agree(a: &NineJArray) -> syzkit::Result<Option<String>> {
    let op = ninej_operator(a)?;
    let ts = ninej_triple_sum(a)?;
    if op != ts {
        return Ok(Some(format!("{{{a}}}: operator {op}, triple sum {ts}")));
    }
    let sym = ninej_symmetry_check(a)?;
    if !sym.passed() {
        return Ok(Some(format!("{{{a}}}: symmetry {:?}", sym.permutation_failures)));
    }
    Ok(None)
}

fn ac09(ctx: Ctx) -> syzkit::Result<Outcome> {
    let small = all_arrays(6);
    let mut rng = stream_rng(ctx.seed, 9_000);
    let random: Vec<NineJArray> = (0..200).map(|_| random_array(&mut rng, 12)).collect();
    let mut bad = Vec::new();
    for a in small.iter().chain(&random) {
        if let Some(msg) = ninej_agree(a)? {
            bad.push(msg);
        }
    }
    let total = small.len() + random.len();
    Ok(Outcome {
        passed: bad.is_empty(),
        expected: format!("{} exhaustive + {} random arrays agree", small.len(), random.len()),
        actual: if bad.is_empty() {
            format!("{} exhaustive + {} random arrays agree", small.len(), random.len())
        } else {
            format!("{} of {total} arrays disagree, first {}", bad.len(), bad[0])
        },
    })
}

fn ac10(_: Ctx) -> syzkit::Result<Outcome> {
    let mut bad = Vec::new();
    for (m, n, r) in KAPPA_GRID {
        let (k, terms) = kappa_via_ninej_with_terms(m, n, r, 0, r, LatticePoint::ORIGIN)?;
        if terms != 1 || k == qi(0) {
            bad.push(format!("({m},{n},{r}): {terms} terms, kappa {}", fmt_q(&k)));
        }
    }
    Ok(Outcome {
        passed: bad.is_empty(),
        expected: "one term, nonzero kappa at every grid point".into(),
        actual: if bad.is_empty() { "one term, nonzero kappa at every grid point".into() } else { bad.join("; ") },
    })
}

fn ac11(_: Ctx) -> syzkit::Result<Outcome> {
    let v = verify_s5_syzygy()?;
    let found: Vec<String> = v
        .anchored
        .iter()
        .map(|a| format!("{:?} labeling: ({})", a.labeling, a.coefficients.join(", ")).to_lowercase())
        .collect();
    Ok(Outcome {
        passed: v.passed,
        expected: "(32, 100, 25, -180)".into(),
        actual: format!("relation space dim {}; {}", v.relation_dimension, found.join("; ")),
    })
}

fn ac12(_: Ctx) -> syzkit::Result<Outcome> {
    let mut parts = Vec::new();
    let mut passed = true;
    for d in [6, 7] {
        let r = test_conjecture(d)?;
        passed &= r.passed;
        parts.push(format!(
            "d={d}: mult {} and {}, relation dim {}, c4 nonzero {}",
            r.multiplicity_eta2, r.multiplicity_syzygy, r.relation_dimension, r.c4_nonzero
        ));
    }
    Ok(Outcome { passed, expected: "all three parts hold for d = 6, 7".into(), actual: parts.join("; ") })
}

fn random_unimodular<R: rand::Rng>(rng: &mut R) -> [[Q; 2]; 2] {
    // products of elementary shears have determinant one
    let mut g = [[qi(1), qi(0)], [qi(0), qi(1)]];
    for _ in 0..3 {
        let t = syzkit::random::random_rational(rng);
        let shear = if rng.gen_bool(0.5) { [[qi(1), t], [qi(0), qi(1)]] } else { [[qi(1), qi(0)], [t, qi(1)]] };
        let mut next: [[Q; 2]; 2] = Default::default();
        for i in 0..2 {
            for j in 0..2 {
                next[i][j] = &g[i][0] * &shear[0][j] + &g[i][1] * &shear[1][j];
            }
        }
        g = next;
    }
    g
}

fn ac13(ctx: Ctx) -> syzkit::Result<Outcome> {
    use rand::Rng;
    let mut bad = Vec::new();
    let mut checked = 0usize;
    for w1 in 1..=20 {
        for w2 in 1..=20 {
            checked += 1;
            if !dimension_identity(w1, w2) {
                bad.push(format!("dimension identity ({w1},{w2})"));
            }
        }
    }
    for m in 2..=12 {
        for n in 2..=12 {
            for r in 2..=m.min(n) {
                checked += 1;
                if !coin_inequality(m, n, r) {
                    bad.push(format!("coin inequality ({m},{n},{r})"));
                }
            }
        }
    }
    let mut rng = stream_rng(ctx.seed, 13_000);
    for m in 0..=6 {
        for n in 0..=6 {
            for r in 0..=m.min(n) {
                let c = BinaryForm::random(&mut rng, VarPair::X, m + n - 2 * r);
                checked += 1;
                if project(&section_iota(&c, m, n, r)?, VarPair::X, VarPair::Y, r)? != *c.form() {
                    bad.push(format!("pi iota ({m},{n},{r})"));
                }
            }
        }
    }
    for trial in 0..10u64 {
        let mut rng = stream_rng(ctx.seed, 13_100 + trial);
        let (m, n) = (rng.gen_range(1..=6), rng.gen_range(1..=6));
        let a = BinaryForm::random(&mut rng, VarPair::X, m);
        let b = BinaryForm::random(&mut rng, VarPair::X, n);
        for r in 0..=m.min(n) {
            let ab = transvect(&a, &b, r)?;
            let sign = if r % 2 == 0 { qi(1) } else { qi(-1) };
            checked += 1;
            if ab != transvect(&b, &a, r)?.scale(&sign) {
                bad.push(format!("sign rule trial {trial} r={r}"));
            }
        }
        let g = random_unimodular(&mut rng);
        let r = rng.gen_range(0..=m.min(n));
        checked += 1;
        if transvect(&a.substitute(&g)?, &b.substitute(&g)?, r)? != transvect(&a, &b, r)?.substitute(&g)? {
            bad.push(format!("covariance trial {trial} r={r}"));
        }
        let s = rng.gen_range(0..=3);
        let qf = BinaryForm::random(&mut rng, VarPair::X, s);
        let rf = BinaryForm::random(&mut rng, VarPair::X, s);
        checked += 1;
        if !jacobian_exchange_check(&a, &b, &qf, &rf)? {
            bad.push(format!("jacobian exchange trial {trial}"));
        }
    }
    Ok(Outcome {
        passed: bad.is_empty(),
        expected: "every property holds".into(),
        actual: if bad.is_empty() { format!("every property holds ({checked} instances)") } else { bad.join("; ") },
    })
}
