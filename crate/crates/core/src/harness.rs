//! Named verification suites with machine-readable reports.
//!
//! Each suite is a pure function of its parameters; only `elapsed_ms`
//! varies between runs. Failing cases are recorded as counterexamples that
//! carry the offending coloring and the property it was expected to have,
//! so they can be replayed through the core detector alone (see
//! [`replay`]).

use std::collections::BTreeMap;
use std::ops::ControlFlow;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::ap::{find_rainbow_ap, ApWitness};
use crate::balance::{classify_balance, color_counts, is_recessive, BalanceClass};
use crate::coloring::{Color, Coloring, ColoringJson, Topology};
use crate::constructions::{
    construct_interval4, construct_k, construct_pow3, construct_z24, tile, VariantTag,
};
use crate::error::{Error, Result};
use crate::search::{
    all_contain_rainbow, search_rainbow_free, verify_certificate, Budget, SearchConfig,
    SearchStatus, SymmetryLevel,
};

pub const SUITES: [&str; 7] = ["thm1.1", "thm1.2", "k3-positive", "z8", "z24", "pow3", "open-q"];

/// Regression colorings of `Z_8`, residue 0 first.
pub const Z8_REGRESSION: [&str; 9] = [
    "AABBCDCD", "ADBBCACD", "ADBDCBCA", "ADCACBBD", "ADCDCBBA", "AACDCDBB", "ADCDBBCA",
    "AACBBDCD", "ADCABBCD",
];

/// The property a case was expected to have.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Expectation {
    /// No rainbow AP of the given length.
    NoRainbow,
    /// At least one rainbow AP of the given length.
    HasRainbow,
    /// A rainbow AP of the given length with difference 3.
    HasRainbowD3,
    /// Every class has `floor(n/k)` or `ceil(n/k)` members, all equal when
    /// `k | n`.
    NearEquinumerous,
    /// Equinumerous and without a rainbow AP.
    Certificate,
    /// No two adjacent positions share a color.
    Proper,
    /// Uses exactly `expected_colors` distinct colors.
    ColorCount,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseInput {
    pub case: String,
    pub coloring: ColoringJson,
    pub expect: Expectation,
    pub ap_length: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected_colors: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Counterexample {
    pub input: CaseInput,
    /// Witness of the violation (a rainbow AP, class sizes, ...), or null.
    pub witness: Value,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportStats {
    pub cases: u64,
    pub elapsed_ms: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub suite: String,
    pub params: BTreeMap<String, Value>,
    pub pass: bool,
    pub counterexamples: Vec<Counterexample>,
    pub stats: ReportStats,
    /// Per-run results for suites whose verdict is not a fixed claim.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub findings: Vec<Value>,
}

impl Report {
    /// The report with its timing zeroed, for reproducibility comparisons.
    pub fn without_timing(&self) -> Report {
        let mut r = self.clone();
        r.stats.elapsed_ms = 0;
        r
    }
}

/// Checks one coloring against an expectation using core operations only.
/// Returns the violation witness, or `None` when the property holds.
fn violation(c: &Coloring, expect: Expectation, ap_length: usize, colors: Option<usize>) -> Option<Value> {
    let rainbow = || find_rainbow_ap(c, ap_length).expect("ap_length >= 3");
    let to_value = |w: &ApWitness| serde_json::to_value(w).expect("witness serializes");
    match expect {
        Expectation::NoRainbow => rainbow().map(|w| to_value(&w)),
        Expectation::HasRainbow => rainbow().is_none().then(|| json!({"reason": "no rainbow AP"})),
        Expectation::HasRainbowD3 => {
            let all = crate::ap::enumerate_rainbow_aps(c, ap_length).expect("ap_length >= 3");
            (!all.iter().any(|w| w.spec.d == 3))
                .then(|| json!({"reason": "no rainbow AP with d = 3", "rainbow_aps": all.len()}))
        }
        Expectation::NearEquinumerous => {
            let counts = color_counts(c);
            let lo = c.n() / c.k();
            let hi = c.n().div_ceil(c.k());
            let ok = counts.iter().all(|&x| x == lo || x == hi)
                && (!c.n().is_multiple_of(c.k()) || classify_balance(c) == BalanceClass::Equinumerous);
            (!ok).then(|| json!({"class_sizes": counts}))
        }
        Expectation::Certificate => {
            if classify_balance(c) != BalanceClass::Equinumerous {
                Some(json!({"class_sizes": color_counts(c)}))
            } else {
                rainbow().map(|w| to_value(&w))
            }
        }
        Expectation::Proper => (0..c.k())
            .map(|i| Color(i as u8))
            .find(|&col| !is_recessive(c, col))
            .map(|col| json!({"repeated_color": col.letter().to_string()})),
        Expectation::ColorCount => {
            let used = color_counts(c).iter().filter(|&&x| x > 0).count();
            (Some(used) != colors).then(|| json!({"colors_used": used}))
        }
    }
}

fn check_case(case: String, c: &Coloring, expect: Expectation, ap_length: usize) -> Option<Counterexample> {
    check_case_with(case, c, expect, ap_length, None)
}

fn check_case_with(
    case: String,
    c: &Coloring,
    expect: Expectation,
    ap_length: usize,
    expected_colors: Option<usize>,
) -> Option<Counterexample> {
    violation(c, expect, ap_length, expected_colors).map(|witness| Counterexample {
        input: CaseInput {
            case,
            coloring: c.to_json(),
            expect,
            ap_length,
            expected_colors,
        },
        witness,
    })
}

/// Re-runs a counterexample through core operations: `true` when the
/// recorded coloring still violates its expectation.
pub fn replay(cx: &Counterexample) -> Result<bool> {
    let c = Coloring::try_from(cx.input.coloring.clone())?;
    if cx.input.ap_length < 3 {
        return Err(Error::InvalidLength(cx.input.ap_length));
    }
    Ok(violation(&c, cx.input.expect, cx.input.ap_length, cx.input.expected_colors).is_some())
}

/// Typed access to the string parameters of a suite.
struct Params<'a> {
    raw: &'a BTreeMap<String, String>,
    resolved: BTreeMap<String, Value>,
}

impl<'a> Params<'a> {
    fn new(raw: &'a BTreeMap<String, String>, known: &[&str]) -> Result<Self> {
        if let Some(key) = raw.keys().find(|k| !known.contains(&k.as_str())) {
            return Err(Error::InvalidParams(format!("unknown parameter {key:?}")));
        }
        Ok(Params { raw, resolved: BTreeMap::new() })
    }

    fn int(&mut self, key: &str, default: u64, lo: u64, hi: u64) -> Result<u64> {
        let value = match self.raw.get(key) {
            None => default,
            Some(s) => s
                .trim()
                .parse::<u64>()
                .map_err(|_| Error::InvalidParams(format!("{key} must be an integer, got {s:?}")))?,
        };
        if !(lo..=hi).contains(&value) {
            return Err(Error::InvalidParams(format!("{key} = {value} outside {lo}..={hi}")));
        }
        self.resolved.insert(key.to_owned(), json!(value));
        Ok(value)
    }

    fn flag(&mut self, key: &str) -> Result<bool> {
        let value = match self.raw.get(key).map(String::as_str) {
            None | Some("false") | Some("0") => false,
            Some("true") | Some("1") | Some("") => true,
            Some(other) => {
                return Err(Error::InvalidParams(format!("{key} must be true/false, got {other:?}")))
            }
        };
        self.resolved.insert(key.to_owned(), json!(value));
        Ok(value)
    }

    fn int_list(&mut self, key: &str, default: &[u64], lo: u64, hi: u64) -> Result<Vec<u64>> {
        let values: Vec<u64> = match self.raw.get(key) {
            None => default.to_vec(),
            Some(s) => s
                .split(',')
                .map(|x| {
                    x.trim().parse::<u64>().map_err(|_| {
                        Error::InvalidParams(format!("{key} must be a comma-separated list, got {s:?}"))
                    })
                })
                .collect::<Result<_>>()?,
        };
        if values.is_empty() || values.iter().any(|v| !(lo..=hi).contains(v)) {
            return Err(Error::InvalidParams(format!("{key} entries must lie in {lo}..={hi}")));
        }
        self.resolved.insert(key.to_owned(), json!(values));
        Ok(values)
    }

    fn text(&mut self, key: &str, default: &str) -> String {
        let value = self.raw.get(key).cloned().unwrap_or_else(|| default.to_owned());
        self.resolved.insert(key.to_owned(), json!(value));
        value
    }
}

struct Outcome {
    cases: u64,
    counterexamples: Vec<Counterexample>,
    findings: Vec<Value>,
}

impl Outcome {
    fn from_cases(cases: u64, counterexamples: Vec<Counterexample>) -> Self {
        Outcome { cases, counterexamples, findings: Vec::new() }
    }
}

/// Runs a named suite. Parameters are given as text and validated against
/// per-suite bounds.
pub fn run_suite(name: &str, params: &BTreeMap<String, String>) -> Result<Report> {
    let started = Instant::now();
    let (resolved, outcome) = match name {
        "thm1.1" => {
            let mut p = Params::new(params, &["max_n"])?;
            let max_n = p.int("max_n", 512, 8, 1 << 14)? as usize;
            (p.resolved, suite_thm11(max_n))
        }
        "thm1.2" => {
            let mut p = Params::new(params, &["k_max", "n_max"])?;
            let k_max = p.int("k_max", 8, 5, 12)? as usize;
            let n_max = p.int("n_max", 40, 2, 200)? as usize;
            (p.resolved, suite_thm12(k_max, n_max))
        }
        "k3-positive" => {
            let mut p = Params::new(params, &["n_max", "allow_large"])?;
            let allow_large = p.flag("allow_large")?;
            let n_max = p.int("n_max", 5, 2, if allow_large { 6 } else { 5 })? as usize;
            (p.resolved, suite_k3(n_max)?)
        }
        "z8" => {
            let p = Params::new(params, &[])?;
            (p.resolved, suite_z8()?)
        }
        "z24" => {
            let mut p = Params::new(params, &["tiles"])?;
            let tiles = p.int("tiles", 3, 1, 8)? as usize;
            (p.resolved, suite_z24(tiles)?)
        }
        "pow3" => {
            let mut p = Params::new(params, &["max_n"])?;
            let max_n = p.int("max_n", 2187, 1, 59_049)? as usize;
            (p.resolved, suite_pow3(max_n))
        }
        "open-q" => {
            let mut p = Params::new(
                params,
                &["moduli", "k", "ap", "budget_nodes", "time_limit_ms", "threads", "symmetry"],
            )?;
            let k = p.int("k", 4, 2, 8)? as usize;
            let ap = p.int("ap", k as u64, 3, 8)? as usize;
            let moduli = p.int_list("moduli", &[16], 4, 120)?;
            let budget = p.int("budget_nodes", 10_000_000_000, 1, u64::MAX)?;
            let time_limit = p.int("time_limit_ms", 900_000, 1, u64::MAX)?;
            let threads = p.int("threads", 1, 1, 256)? as usize;
            let symmetry: SymmetryLevel =
                p.text("symmetry", "full").parse().map_err(Error::InvalidParams)?;
            if let Some(bad) = moduli.iter().find(|&&n| !(n as usize).is_multiple_of(k)) {
                return Err(Error::InvalidParams(format!("modulus {bad} not divisible by k = {k}")));
            }
            let budget = Budget {
                max_nodes: budget,
                time_limit: Some(Duration::from_millis(time_limit)),
            };
            let outcome = suite_open_questions(&moduli, k, ap, budget, symmetry, threads)?;
            (p.resolved, outcome)
        }
        other => return Err(Error::UnknownSuite(other.to_owned())),
    };
    Ok(Report {
        suite: name.to_owned(),
        params: resolved,
        pass: outcome.counterexamples.is_empty(),
        counterexamples: outcome.counterexamples,
        stats: ReportStats {
            cases: outcome.cases,
            elapsed_ms: started.elapsed().as_millis() as u64,
        },
        findings: outcome.findings,
    })
}

fn suite_thm11(max_n: usize) -> Outcome {
    let per_n: Vec<(u64, Vec<Counterexample>)> = (8..=max_n)
        .into_par_iter()
        .map(|n| {
            let mut cases = 0;
            let mut bad = Vec::new();
            for v in VariantTag::ALL.into_iter().filter(|v| v.applies_to(n)) {
                let c = construct_interval4(n, v).expect("n >= 8 and matching variant");
                cases += 1;
                let case = format!("n={n} variant={v}");
                bad.extend(check_case(case.clone(), &c, Expectation::NoRainbow, 4));
                bad.extend(check_case(case, &c, Expectation::NearEquinumerous, 4));
            }
            (cases, bad)
        })
        .collect();
    merge(per_n)
}

fn suite_thm12(k_max: usize, n_max: usize) -> Outcome {
    let jobs: Vec<(usize, usize, usize)> = (5..=k_max)
        .flat_map(|k| (2..=n_max).flat_map(move |n| (0..k).map(move |r| (k, n, r))))
        .collect();
    let per_job: Vec<(u64, Vec<Counterexample>)> = jobs
        .into_par_iter()
        .map(|(k, n, r)| {
            let total = k * n + r;
            let c = construct_k(k, total).expect("k >= 5, n >= 2");
            let case = format!("k={k} n={n} r={r} N={total}");
            let mut bad: Vec<_> = check_case(case.clone(), &c, Expectation::NoRainbow, k)
                .into_iter()
                .collect();
            bad.extend(check_case_with(case, &c, Expectation::ColorCount, k, Some(k)));
            (1, bad)
        })
        .collect();
    merge(per_job)
}

fn suite_k3(n_max: usize) -> Result<Outcome> {
    let per_n: Vec<Result<(u64, Vec<Counterexample>)>> = (2..=n_max)
        .into_par_iter()
        .map(|n| {
            let mut bad = Vec::new();
            let cases = crate::search::for_each_equinumerous(3 * n, 3, |v| {
                let c = Coloring::from_indices(Topology::Interval, 3, v);
                if let Some(cx) = check_case(format!("n={n}"), &c, Expectation::HasRainbow, 3) {
                    bad.push(cx);
                    return ControlFlow::Break(());
                }
                ControlFlow::Continue(())
            })?;
            Ok((cases, bad))
        })
        .collect();
    Ok(merge(per_n.into_iter().collect::<Result<Vec<_>>>()?))
}

fn suite_z8() -> Result<Outcome> {
    let coverage = all_contain_rainbow(8, 4, 4)?;
    let mut bad = Vec::new();
    if let Some(c) = &coverage.counterexample {
        bad.extend(check_case("Z_8 equinumerous".into(), c, Expectation::HasRainbow, 4));
    }
    let mut cases = coverage.covered as u64;
    for (i, letters) in Z8_REGRESSION.iter().enumerate() {
        let c = Coloring::from_letters(Topology::Cyclic, 4, letters)?;
        cases += 1;
        bad.extend(check_case(format!("nu_{}", i + 1), &c, Expectation::HasRainbowD3, 4));
    }
    Ok(Outcome::from_cases(cases, bad))
}

fn suite_z24(tiles: usize) -> Result<Outcome> {
    let z = construct_z24();
    let mut bad = Vec::new();
    let mut cases = 0;
    for t in 1..=tiles {
        let c = tile(&z, t)?;
        cases += 2;
        bad.extend(check_case(format!("Z_{}", c.n()), &c, Expectation::Certificate, 4));
        bad.extend(check_case(format!("Z_{}", c.n()), &c, Expectation::Proper, 4));
    }
    Ok(Outcome::from_cases(cases, bad))
}

/// `floor(log3 n) + 1`, by repeated multiplication.
fn pow3_color_count(n: usize) -> usize {
    let mut count = 0;
    let mut p = 1;
    while p <= n {
        count += 1;
        p *= 3;
    }
    count
}

fn suite_pow3(max_n: usize) -> Outcome {
    let per_n: Vec<(u64, Vec<Counterexample>)> = (1..=max_n)
        .into_par_iter()
        .map(|n| {
            let c = construct_pow3(n).expect("n >= 1");
            let case = format!("n={n}");
            let mut bad: Vec<_> = check_case(case.clone(), &c, Expectation::NoRainbow, 3)
                .into_iter()
                .collect();
            bad.extend(check_case_with(case, &c, Expectation::ColorCount, 3, Some(pow3_color_count(n))));
            (1, bad)
        })
        .collect();
    merge(per_n)
}

fn suite_open_questions(
    moduli: &[u64],
    k: usize,
    ap: usize,
    budget: Budget,
    symmetry: SymmetryLevel,
    threads: usize,
) -> Result<Outcome> {
    let mut bad = Vec::new();
    let mut findings = Vec::new();
    for &n in moduli {
        let n = n as usize;
        let config = SearchConfig {
            n,
            k,
            budget,
            symmetry,
            threads,
        };
        let outcome = search_rainbow_free(&config, ap)?;
        let s = &outcome.stats;
        let mut finding = json!({
            "n": n,
            "status": outcome.status.name(),
            "nodes": s.nodes,
            "prunes_capacity": s.prunes_capacity,
            "prunes_rainbow": s.prunes_rainbow,
            "canonical_rejects": s.canonical_rejects,
        });
        if let SearchStatus::Found(c) = &outcome.status {
            finding["certificate"] = json!(c.letters());
            if !verify_certificate(c, ap)? {
                bad.extend(check_case(format!("Z_{n} certificate"), c, Expectation::Certificate, ap));
            }
        }
        findings.push(finding);
    }
    Ok(Outcome { cases: moduli.len() as u64, counterexamples: bad, findings })
}

fn merge(parts: Vec<(u64, Vec<Counterexample>)>) -> Outcome {
    let mut cases = 0;
    let mut all = Vec::new();
    for (c, bad) in parts {
        cases += c;
        all.extend(bad);
    }
    Outcome::from_cases(cases, all)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(pairs: &[(&str, &str)]) -> BTreeMap<String, String> {
        pairs.iter().map(|(k, v)| (k.to_string(), v.to_string())).collect()
    }

    #[test]
    fn thm11_small() {
        let r = run_suite("thm1.1", &params(&[("max_n", "40")])).unwrap();
        assert!(r.pass);
        // 33 values of n, plus one Alt41 for each n = 3 (mod 8) and one Star
        // for each n = 4 (mod 8): {11,19,27,35} and {12,20,28,36}
        assert_eq!(r.stats.cases, 33 + 4 + 4);
        assert_eq!(r.params["max_n"], json!(40));
    }

    #[test]
    fn bad_params() {
        assert!(matches!(
            run_suite("thm1.1", &params(&[("max_n", "7")])),
            Err(Error::InvalidParams(_))
        ));
        assert!(matches!(
            run_suite("thm1.1", &params(&[("bogus", "1")])),
            Err(Error::InvalidParams(_))
        ));
        assert!(matches!(
            run_suite("k3-positive", &params(&[("n_max", "6")])),
            Err(Error::InvalidParams(_))
        ));
        assert_eq!(
            run_suite("nope", &BTreeMap::new()).unwrap_err(),
            Error::UnknownSuite("nope".into())
        );
    }

    #[test]
    fn z8_and_z24_pass() {
        let r = run_suite("z8", &BTreeMap::new()).unwrap();
        assert!(r.pass, "{:?}", r.counterexamples);
        assert_eq!(r.stats.cases, 2520 + 9);
        let r = run_suite("z24", &BTreeMap::new()).unwrap();
        assert!(r.pass);
        assert_eq!(r.stats.cases, 6);
    }

    #[test]
    fn k3_small() {
        let r = run_suite("k3-positive", &params(&[("n_max", "4")])).unwrap();
        assert!(r.pass);
        assert_eq!(r.stats.cases, 90 + 1680 + 34650);
    }

    #[test]
    fn report_json_schema() {
        let r = run_suite("z24", &params(&[("tiles", "1")])).unwrap();
        let v = serde_json::to_value(&r).unwrap();
        assert_eq!(v["suite"], "z24");
        assert_eq!(v["params"], json!({"tiles": 1}));
        assert_eq!(v["pass"], true);
        assert_eq!(v["counterexamples"], json!([]));
        assert_eq!(v["stats"]["cases"], 2);
        assert!(v["stats"]["elapsed_ms"].is_u64());
        assert!(v.get("findings").is_none());
    }

    #[test]
    fn counterexamples_replay() {
        // a broken "construction" must be caught and the record must re-fail
        let c = Coloring::from_letters(Topology::Interval, 4, "ABCDABCD").unwrap();
        let cx = check_case("bad".into(), &c, Expectation::NoRainbow, 4).expect("rainbow at d=1");
        assert_eq!(cx.witness["d"], 1);
        assert!(replay(&cx).unwrap());
        let round: Counterexample =
            serde_json::from_str(&serde_json::to_string(&cx).unwrap()).unwrap();
        assert!(replay(&round).unwrap());

        let lopsided = Coloring::from_letters(Topology::Interval, 4, "AAAAABCD").unwrap();
        let cx = check_case("bad".into(), &lopsided, Expectation::NearEquinumerous, 4).unwrap();
        assert_eq!(cx.witness["class_sizes"], json!([5, 1, 1, 1]));
        assert!(replay(&cx).unwrap());

        let good = construct_z24();
        assert!(check_case("ok".into(), &good, Expectation::Certificate, 4).is_none());
    }

    #[test]
    fn pow3_counts() {
        assert_eq!(pow3_color_count(1), 1);
        assert_eq!(pow3_color_count(2), 1);
        assert_eq!(pow3_color_count(3), 2);
        assert_eq!(pow3_color_count(26), 3);
        assert_eq!(pow3_color_count(27), 4);
        assert_eq!(pow3_color_count(2187), 8);
    }

    #[test]
    fn open_q_small_moduli() {
        let r = run_suite("open-q", &params(&[("moduli", "4,8"), ("threads", "2")])).unwrap();
        assert!(r.pass);
        assert_eq!(r.findings.len(), 2);
        assert!(r.findings.iter().all(|f| f["status"] == "exhausted"));
        assert!(matches!(
            run_suite("open-q", &params(&[("moduli", "10")])),
            Err(Error::InvalidParams(_))
        ));
    }
}
