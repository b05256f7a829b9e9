//! Exhaustive search for equinumerous colorings of `Z_n` without a rainbow
//! progression.
//!
//! The engine is a depth-first search assigning residues `0, 1, ..., n-1`
//! in order, cutting branches by color capacity, by completed rainbow
//! progressions and (optionally) by symmetry. The top of the tree is
//! expanded sequentially to a fixed depth that depends only on `n`; the
//! resulting subtrees are searched in parallel and merged in DFS order, so
//! the outcome and every counter are the same for any number of workers.

mod enumerate;
mod table;

use std::fmt;
use std::str::FromStr;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

pub use enumerate::{
    all_contain_rainbow, count_equinumerous, enumerate_equinumerous, for_each_equinumerous,
    multinomial, Enumeration, RainbowCoverage,
};
pub use table::ApTable;

use crate::ap::find_rainbow_ap;
use crate::balance::{classify_balance, BalanceClass};
use crate::coloring::{Coloring, Topology, MAX_COLORS};
use crate::error::{Error, Result};
use crate::symmetry::{orbit_size, units};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SymmetryLevel {
    None,
    /// Residue 0 gets color 0 and colors first appear in index order.
    #[default]
    ValueOrder,
    /// `ValueOrder` plus rejection of prefixes that some affine image
    /// provably beats lexicographically.
    FullCanonical,
}

impl FromStr for SymmetryLevel {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "none" => Ok(SymmetryLevel::None),
            "value-order" | "value_order" => Ok(SymmetryLevel::ValueOrder),
            "full" | "full-canonical" | "full_canonical" => Ok(SymmetryLevel::FullCanonical),
            other => Err(format!("unknown symmetry level {other:?} (none|value-order|full)")),
        }
    }
}

impl fmt::Display for SymmetryLevel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SymmetryLevel::None => "none",
            SymmetryLevel::ValueOrder => "value-order",
            SymmetryLevel::FullCanonical => "full",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    pub max_nodes: u64,
    pub time_limit: Option<Duration>,
}

impl Budget {
    pub fn nodes(max_nodes: u64) -> Self {
        Budget { max_nodes, time_limit: None }
    }

    pub fn unlimited() -> Self {
        Budget::nodes(u64::MAX)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchConfig {
    pub n: usize,
    pub k: usize,
    pub budget: Budget,
    pub symmetry: SymmetryLevel,
    /// Worker hint; `0` or `1` runs on the calling thread.
    pub threads: usize,
}

impl SearchConfig {
    pub fn new(n: usize, k: usize) -> Self {
        SearchConfig {
            n,
            k,
            budget: Budget::unlimited(),
            symmetry: SymmetryLevel::ValueOrder,
            threads: 1,
        }
    }

    pub fn with_budget(mut self, budget: Budget) -> Self {
        self.budget = budget;
        self
    }

    pub fn with_symmetry(mut self, symmetry: SymmetryLevel) -> Self {
        self.symmetry = symmetry;
        self
    }

    pub fn with_threads(mut self, threads: usize) -> Self {
        self.threads = threads;
        self
    }

    fn validate(&self) -> Result<()> {
        if self.k < 1 || self.k > MAX_COLORS {
            return Err(Error::InvalidArity(self.k));
        }
        if self.n == 0 || !self.n.is_multiple_of(self.k) || self.n >= u16::MAX as usize {
            return Err(Error::NotDivisible { n: self.n, k: self.k });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct SearchStats {
    pub nodes: u64,
    pub prunes_capacity: u64,
    pub prunes_rainbow: u64,
    pub canonical_rejects: u64,
    pub elapsed_ms: u64,
}

impl SearchStats {
    fn add(&mut self, other: &SearchStats) {
        self.nodes += other.nodes;
        self.prunes_capacity += other.prunes_capacity;
        self.prunes_rainbow += other.prunes_rainbow;
        self.canonical_rejects += other.canonical_rejects;
    }

    /// Counters only, for comparisons that must ignore wall-clock time.
    pub fn counters(&self) -> [u64; 4] {
        [self.nodes, self.prunes_capacity, self.prunes_rainbow, self.canonical_rejects]
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchStatus {
    Found(Coloring),
    Exhausted,
    BudgetExceeded,
}

impl SearchStatus {
    pub fn name(&self) -> &'static str {
        match self {
            SearchStatus::Found(_) => "found",
            SearchStatus::Exhausted => "exhausted",
            SearchStatus::BudgetExceeded => "budget_exceeded",
        }
    }

    pub fn certificate(&self) -> Option<&Coloring> {
        match self {
            SearchStatus::Found(c) => Some(c),
            _ => None,
        }
    }
}

/// `{status, certificate?, stats{nodes, prunes_capacity, prunes_rainbow,
/// canonical_rejects, elapsed_ms}}`
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchOutcome {
    pub status: SearchStatus,
    pub stats: SearchStats,
}

impl Serialize for SearchOutcome {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let cert = self.status.certificate();
        let mut s = serializer.serialize_struct("SearchOutcome", 2 + cert.is_some() as usize)?;
        s.serialize_field("status", self.status.name())?;
        if let Some(c) = cert {
            s.serialize_field("certificate", &c.to_json())?;
        }
        s.serialize_field("stats", &self.stats)?;
        s.end()
    }
}

/// Independent re-check of a certificate using only the core detector.
pub fn verify_certificate(c: &Coloring, ap_length: usize) -> Result<bool> {
    if c.topology() != Topology::Cyclic {
        return Err(Error::UnsupportedTopology(c.topology()));
    }
    Ok(classify_balance(c) == BalanceClass::Equinumerous && find_rainbow_ap(c, ap_length)?.is_none())
}

/// Affine images `x -> src[offset + t*step]`, minus the identity.
#[derive(Debug, Clone)]
struct AffineImages {
    maps: Vec<(usize, usize)>,
}

impl AffineImages {
    fn new(n: usize) -> Self {
        let mut maps = Vec::new();
        for step in units(n) {
            for offset in 0..n {
                if (step, offset) != (1, 0) && n > 1 {
                    maps.push((step, offset));
                }
            }
        }
        AffineImages { maps }
    }
}

enum Flow {
    Continue,
    Found,
    Budget,
    Cancelled,
}

enum Mode {
    /// Stop at the first surviving leaf.
    First,
    /// Record every surviving leaf.
    Collect(Vec<Vec<u8>>),
    /// Record prefixes at the split depth without descending further.
    Frontier(usize, Vec<Vec<u8>>),
}

struct Dfs<'a> {
    n: usize,
    k: usize,
    cap: usize,
    table: Option<&'a ApTable>,
    symmetry: SymmetryLevel,
    images: &'a AffineImages,
    assign: Vec<u8>,
    counts: Vec<usize>,
    used: usize,
    stats: SearchStats,
    max_nodes: u64,
    deadline: Option<Instant>,
    cancel: Option<(&'a AtomicUsize, usize)>,
    mode: Mode,
}

impl<'a> Dfs<'a> {
    fn new(
        config: &SearchConfig,
        table: Option<&'a ApTable>,
        images: &'a AffineImages,
        max_nodes: u64,
        deadline: Option<Instant>,
        mode: Mode,
    ) -> Self {
        Dfs {
            n: config.n,
            k: config.k,
            cap: config.n / config.k,
            table,
            symmetry: config.symmetry,
            images,
            assign: vec![0; config.n],
            counts: vec![0; config.k],
            used: 0,
            stats: SearchStats::default(),
            max_nodes,
            deadline,
            cancel: None,
            mode,
        }
    }

    fn load_prefix(&mut self, prefix: &[u8]) {
        for (p, &c) in prefix.iter().enumerate() {
            self.assign[p] = c;
            self.counts[c as usize] += 1;
            self.used = self.used.max(c as usize + 1);
        }
    }

    /// Some affine image of the assigned prefix `0..len`, relabeled by
    /// first appearance, is already lexicographically smaller.
    fn beaten_by_image(&mut self, len: usize) -> bool {
        let n = self.n;
        for &(step, offset) in &self.images.maps {
            let mut relabel = [u8::MAX; MAX_COLORS];
            let mut next = 0u8;
            let mut x = offset;
            for t in 0..len {
                if x >= len {
                    break;
                }
                let c = self.assign[x] as usize;
                if relabel[c] == u8::MAX {
                    relabel[c] = next;
                    next += 1;
                }
                let img = relabel[c];
                if img != self.assign[t] {
                    if img < self.assign[t] {
                        return true;
                    }
                    break;
                }
                x += step;
                if x >= n {
                    x -= n;
                }
            }
        }
        false
    }

    fn interrupted(&self) -> Option<Flow> {
        if self.stats.nodes & 0xfff == 0 {
            if let Some(deadline) = self.deadline {
                if Instant::now() >= deadline {
                    return Some(Flow::Budget);
                }
            }
            if let Some((flag, index)) = self.cancel {
                if flag.load(Ordering::Relaxed) < index {
                    return Some(Flow::Cancelled);
                }
            }
        }
        None
    }

    fn run(&mut self, p: usize) -> Flow {
        match &mut self.mode {
            Mode::Frontier(depth, out) if p == *depth => {
                out.push(self.assign[..p].to_vec());
                return Flow::Continue;
            }
            _ => {}
        }
        if p == self.n {
            return match &mut self.mode {
                Mode::First => Flow::Found,
                Mode::Collect(out) => {
                    out.push(self.assign.clone());
                    Flow::Continue
                }
                Mode::Frontier(..) => Flow::Found,
            };
        }
        let ordered = self.symmetry != SymmetryLevel::None;
        let limit = if ordered { (self.used + 1).min(self.k) } else { self.k };
        for color in 0..limit {
            if self.counts[color] == self.cap {
                self.stats.prunes_capacity += 1;
                continue;
            }
            if self.stats.nodes >= self.max_nodes {
                return Flow::Budget;
            }
            self.stats.nodes += 1;
            if let Some(flow) = self.interrupted() {
                return flow;
            }
            self.assign[p] = color as u8;
            if let Some(table) = self.table {
                if table.completes_rainbow(&self.assign, p) {
                    self.stats.prunes_rainbow += 1;
                    continue;
                }
            }
            let saved_used = self.used;
            self.used = self.used.max(color + 1);
            if self.symmetry == SymmetryLevel::FullCanonical && self.beaten_by_image(p + 1) {
                self.stats.canonical_rejects += 1;
                self.used = saved_used;
                continue;
            }
            self.counts[color] += 1;
            let flow = self.run(p + 1);
            self.counts[color] -= 1;
            self.used = saved_used;
            match flow {
                Flow::Continue => {}
                stop => return stop,
            }
        }
        Flow::Continue
    }

    fn found(&self) -> Coloring {
        Coloring::from_indices(Topology::Cyclic, self.k, &self.assign)
    }
}

fn split_depth(n: usize) -> usize {
    (n / 2).min(8)
}

struct SubResult {
    flow: Flow,
    stats: SearchStats,
    certificate: Option<Coloring>,
}

fn run_subtree(
    config: &SearchConfig,
    table: Option<&ApTable>,
    images: &AffineImages,
    prefix: &[u8],
    max_nodes: u64,
    deadline: Option<Instant>,
    cancel: Option<(&AtomicUsize, usize)>,
) -> SubResult {
    let mut dfs = Dfs::new(config, table, images, max_nodes, deadline, Mode::First);
    dfs.cancel = cancel;
    dfs.load_prefix(prefix);
    let flow = dfs.run(prefix.len());
    let certificate = matches!(flow, Flow::Found).then(|| dfs.found());
    SubResult { flow, stats: dfs.stats, certificate }
}

/// Searches equinumerous `k`-colorings of `Z_n` for one without a rainbow
/// AP of length `ap_length`.
pub fn search_rainbow_free(config: &SearchConfig, ap_length: usize) -> Result<SearchOutcome> {
    config.validate()?;
    if ap_length < 2 {
        return Err(Error::InvalidLength(ap_length));
    }
    let started = Instant::now();
    let deadline = config.budget.time_limit.map(|t| started + t);
    let table = ApTable::cyclic(config.n, ap_length);
    let images = AffineImages::new(config.n);

    // Expand the top of the tree; leaves are only reached here when the
    // split depth equals n, which cannot happen since depth <= n / 2.
    let depth = split_depth(config.n);
    let mut top = Dfs::new(
        config,
        Some(&table),
        &images,
        config.budget.max_nodes,
        deadline,
        Mode::Frontier(depth, Vec::new()),
    );
    let top_flow = top.run(0);
    let mut stats = top.stats;
    let finish = |status, mut stats: SearchStats| {
        stats.elapsed_ms = started.elapsed().as_millis() as u64;
        Ok(SearchOutcome { status, stats })
    };
    if let Flow::Budget = top_flow {
        return finish(SearchStatus::BudgetExceeded, stats);
    }
    let Mode::Frontier(_, frontier) = top.mode else { unreachable!() };
    let remaining = config.budget.max_nodes - stats.nodes;

    let first_found = AtomicUsize::new(usize::MAX);
    let solve = |(index, prefix): (usize, &Vec<u8>)| -> Option<SubResult> {
        if first_found.load(Ordering::Relaxed) < index {
            return None;
        }
        let sub = run_subtree(
            config,
            Some(&table),
            &images,
            prefix,
            remaining,
            deadline,
            Some((&first_found, index)),
        );
        if sub.certificate.is_some() {
            first_found.fetch_min(index, Ordering::Relaxed);
        }
        Some(sub)
    };
    let results: Vec<Option<SubResult>> = if config.threads > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(config.threads)
            .build()
            .map_err(|e| Error::InvalidParams(e.to_string()))?;
        pool.install(|| frontier.par_iter().enumerate().map(solve).collect())
    } else {
        frontier.iter().enumerate().map(solve).collect()
    };

    // Replay in DFS order as if the subtrees had been searched one after
    // another against a shared node budget.
    let mut left = remaining;
    for (index, result) in results.into_iter().enumerate() {
        let sub = result.expect("subtrees before the first certificate are always searched");
        let sub = match sub.flow {
            Flow::Continue | Flow::Found if sub.stats.nodes <= left => sub,
            Flow::Budget if deadline.is_some_and(|d| Instant::now() >= d) => {
                stats.add(&sub.stats);
                return finish(SearchStatus::BudgetExceeded, stats);
            }
            _ => run_subtree(config, Some(&table), &images, &frontier[index], left, deadline, None),
        };
        stats.add(&sub.stats);
        left -= sub.stats.nodes;
        match sub.flow {
            Flow::Continue => {}
            Flow::Found => {
                let cert = sub.certificate.expect("found carries a certificate");
                return finish(SearchStatus::Found(cert), stats);
            }
            Flow::Budget | Flow::Cancelled => {
                return finish(SearchStatus::BudgetExceeded, stats);
            }
        }
    }
    finish(SearchStatus::Exhausted, stats)
}

/// Canonical representatives of the equinumerous colorings of `Z_n`
/// (optionally only the rainbow-free ones) with their orbit sizes.
#[derive(Debug, Clone)]
pub struct OrbitCensus {
    pub classes: Vec<(Coloring, u64)>,
    pub stats: SearchStats,
}

impl OrbitCensus {
    pub fn orbit_sum(&self) -> u64 {
        self.classes.iter().map(|(_, size)| size).sum()
    }
}

/// Lists canonical classes with the `FullCanonical` engine on one thread.
/// With `ap_length = None` no rainbow pruning is applied.
pub fn orbit_census(n: usize, k: usize, ap_length: Option<usize>) -> Result<OrbitCensus> {
    let config = SearchConfig::new(n, k).with_symmetry(SymmetryLevel::FullCanonical);
    config.validate()?;
    let started = Instant::now();
    let table = ap_length.map(|len| ApTable::cyclic(n, len));
    let images = AffineImages::new(n);
    let mut dfs = Dfs::new(&config, table.as_ref(), &images, u64::MAX, None, Mode::Collect(Vec::new()));
    dfs.run(0);
    let mut stats = dfs.stats;
    stats.elapsed_ms = started.elapsed().as_millis() as u64;
    let Mode::Collect(leaves) = dfs.mode else { unreachable!() };
    let classes = leaves
        .iter()
        .map(|v| {
            let c = Coloring::from_indices(Topology::Cyclic, k, v);
            let size = orbit_size(&c);
            (c, size)
        })
        .collect();
    Ok(OrbitCensus { classes, stats })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symmetry::{canonical_form, is_canonical};

    fn run(n: usize, sym: SymmetryLevel) -> SearchOutcome {
        let cfg = SearchConfig::new(n, 4).with_symmetry(sym);
        search_rainbow_free(&cfg, 4).unwrap()
    }

    #[test]
    fn z4_and_z8_exhausted_at_every_level() {
        for sym in [SymmetryLevel::None, SymmetryLevel::ValueOrder, SymmetryLevel::FullCanonical] {
            assert_eq!(run(4, sym).status, SearchStatus::Exhausted, "{sym}");
            assert_eq!(run(8, sym).status, SearchStatus::Exhausted, "{sym}");
        }
    }

    #[test]
    fn tiny_budget() {
        let cfg = SearchConfig::new(24, 4).with_budget(Budget::nodes(1000));
        let out = search_rainbow_free(&cfg, 4).unwrap();
        assert_eq!(out.status, SearchStatus::BudgetExceeded);
        assert_eq!(out.stats.nodes, 1000);
        let zero = SearchConfig::new(8, 4).with_budget(Budget::nodes(0));
        let out = search_rainbow_free(&zero, 4).unwrap();
        assert_eq!(out.status, SearchStatus::BudgetExceeded);
        assert_eq!(out.stats.nodes, 0);
    }

    #[test]
    fn not_divisible() {
        let err = search_rainbow_free(&SearchConfig::new(10, 4), 4).unwrap_err();
        assert_eq!(err, Error::NotDivisible { n: 10, k: 4 });
    }

    #[test]
    fn found_certificate_verifies() {
        // two colors can never make a rainbow AP(3)
        let cfg = SearchConfig::new(6, 2);
        let out = search_rainbow_free(&cfg, 3).unwrap();
        let cert = out.status.certificate().expect("found");
        assert_eq!(cert.letters(), "AAABBB");
        assert!(verify_certificate(cert, 3).unwrap());
    }

    #[test]
    fn census_z8_orbit_sum() {
        let census = orbit_census(8, 4, None).unwrap();
        assert_eq!(census.orbit_sum(), 2520);
        for (c, _) in &census.classes {
            assert!(is_canonical(c));
        }
        let mut canon: Vec<_> = census.classes.iter().map(|(c, _)| c.clone()).collect();
        canon.dedup();
        assert_eq!(canon.len(), census.classes.len());
        assert!(orbit_census(8, 4, Some(4)).unwrap().classes.is_empty());
    }

    #[test]
    fn census_matches_brute_force_classes() {
        let mut reps = std::collections::BTreeSet::new();
        for_each_equinumerous(8, 4, |v| {
            let c = Coloring::from_indices(Topology::Cyclic, 4, v);
            reps.insert(canonical_form(&c).letters());
            std::ops::ControlFlow::Continue(())
        })
        .unwrap();
        let census = orbit_census(8, 4, None).unwrap();
        let got: std::collections::BTreeSet<_> =
            census.classes.iter().map(|(c, _)| c.letters()).collect();
        assert_eq!(got, reps);
    }

    #[test]
    fn outcome_json() {
        let out = run(4, SymmetryLevel::ValueOrder);
        let v = serde_json::to_value(&out).unwrap();
        assert_eq!(v["status"], "exhausted");
        assert!(v.get("certificate").is_none());
        for key in ["nodes", "prunes_capacity", "prunes_rainbow", "canonical_rejects", "elapsed_ms"] {
            assert!(v["stats"][key].is_u64(), "{key}");
        }
    }
}
