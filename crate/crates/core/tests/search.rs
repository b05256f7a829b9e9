use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rainbow_ap::ap::{ap_members, ApSpec};
use rainbow_ap::search::{
    all_contain_rainbow, count_equinumerous, enumerate_equinumerous, orbit_census,
    search_rainbow_free, verify_certificate, ApTable, Budget, SearchConfig, SearchStatus,
    SymmetryLevel,
};
use rainbow_ap::symmetry::{apply_affine, canonical_form, units, ColorPermutation};
use rainbow_ap::{construct_z24, tile, Coloring, Error, Topology};

const LEVELS: [SymmetryLevel; 3] =
    [SymmetryLevel::None, SymmetryLevel::ValueOrder, SymmetryLevel::FullCanonical];

fn cyclic(k: usize, s: &str) -> Coloring {
    Coloring::from_letters(Topology::Cyclic, k, s).unwrap()
}

fn permutations(k: usize) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    let mut cur: Vec<u8> = (0..k as u8).collect();
    fn go(i: usize, cur: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if i == cur.len() {
            out.push(cur.clone());
            return;
        }
        for j in i..cur.len() {
            cur.swap(i, j);
            go(i + 1, cur, out);
            cur.swap(i, j);
        }
    }
    go(0, &mut cur, &mut out);
    out
}

/// Every image of `c` under x -> a*x + b and a color permutation.
fn orbit(c: &Coloring) -> HashSet<String> {
    let n = c.n() as i64;
    let mut out = HashSet::new();
    for a in units(c.n()) {
        for b in 0..n {
            for p in permutations(c.k()) {
                let sigma = ColorPermutation::new(p).unwrap();
                out.insert(apply_affine(c, a as i64, b, &sigma).unwrap().letters());
            }
        }
    }
    out
}

#[test]
fn enumeration_counts_match_multinomials() {
    assert_eq!(enumerate_equinumerous(4, 4, None).unwrap().count, 24);
    assert_eq!(enumerate_equinumerous(8, 4, None).unwrap().count, 2520);
    let e16 = enumerate_equinumerous(16, 4, Some(2)).unwrap();
    assert_eq!(e16.count, 63_063_000);
    assert_eq!(e16.count as u128, count_equinumerous(16, 4).unwrap());
    assert_eq!(e16.colorings[1].letters(), "AAAABBBBCCCDCDDD");
}

#[test]
fn z24_not_all_contain_rainbow() {
    let cov = all_contain_rainbow(24, 4, 4).unwrap();
    assert!(!cov.all_contain);
    let cx = cov.counterexample.expect("a rainbow-free coloring of Z_24 exists");
    assert!(verify_certificate(&cx, 4).unwrap());
    // the search engine reaches the same lexicographically first coloring
    let out = search_rainbow_free(&SearchConfig::new(24, 4), 4).unwrap();
    assert_eq!(out.status, SearchStatus::Found(cx.clone()));

    // The first counterexample is not an affine image of the tabulated
    // Z_24 coloring: the two lie in different orbits.
    let z = construct_z24();
    let z_orbit = orbit(&z);
    assert!(z_orbit.contains(&z.letters()));
    assert!(!z_orbit.contains(&cx.letters()));
    assert_ne!(canonical_form(&cx), canonical_form(&z));
    assert!(z_orbit.contains(&canonical_form(&z).letters()));
}

#[test]
fn z4_z8_search_agrees_with_enumeration() {
    for n in [4, 8] {
        let truth = all_contain_rainbow(n, 4, 4).unwrap().all_contain;
        assert!(truth);
        for sym in LEVELS {
            let out = search_rainbow_free(&SearchConfig::new(n, 4).with_symmetry(sym), 4).unwrap();
            assert_eq!(out.status == SearchStatus::Exhausted, truth, "n={n} {sym}");
        }
    }
}

#[test]
fn levels_agree_on_status() {
    // k = 3, AP(3) and k = 4, AP(4) on several moduli, including ones with
    // certificates
    for (n, k, len) in [(6, 3, 3), (9, 3, 3), (12, 3, 3), (12, 4, 4), (16, 4, 4), (18, 3, 3), (24, 4, 4)] {
        let statuses: Vec<&str> = LEVELS
            .iter()
            .map(|&sym| {
                let out = search_rainbow_free(&SearchConfig::new(n, k).with_symmetry(sym), len).unwrap();
                if let Some(c) = out.status.certificate() {
                    assert!(verify_certificate(c, len).unwrap(), "n={n} {sym}");
                }
                out.status.name()
            })
            .collect();
        assert!(statuses.iter().all(|s| *s == statuses[0]), "n={n} k={k}: {statuses:?}");
    }
}

#[test]
fn deterministic_across_workers() {
    for (n, sym) in [(16, SymmetryLevel::None), (16, SymmetryLevel::FullCanonical), (24, SymmetryLevel::ValueOrder)] {
        let base = SearchConfig::new(n, 4).with_symmetry(sym);
        let one = search_rainbow_free(&base.clone().with_threads(1), 4).unwrap();
        let eight = search_rainbow_free(&base.clone().with_threads(8), 4).unwrap();
        assert_eq!(one.status, eight.status);
        assert_eq!(one.stats.counters(), eight.stats.counters());
        let again = search_rainbow_free(&base.with_threads(8), 4).unwrap();
        assert_eq!(again.status, eight.status);
        assert_eq!(again.stats.counters(), eight.stats.counters());
    }
}

#[test]
fn budget_is_deterministic_across_workers() {
    for budget in [0, 1, 17, 1000, 50_000] {
        let cfg = SearchConfig::new(24, 4).with_budget(Budget::nodes(budget));
        let one = search_rainbow_free(&cfg.clone().with_threads(1), 4).unwrap();
        let many = search_rainbow_free(&cfg.with_threads(5), 4).unwrap();
        assert_eq!(one.status, SearchStatus::BudgetExceeded);
        assert_eq!(one.status, many.status);
        assert_eq!(one.stats.counters(), many.stats.counters());
        assert_eq!(one.stats.nodes, budget);
    }
}

#[test]
fn orbit_sum_z8() {
    let census = orbit_census(8, 4, None).unwrap();
    assert_eq!(census.orbit_sum(), 2520);
    for (c, size) in &census.classes {
        assert_eq!(orbit(c).len() as u64, *size);
    }
}

#[test]
fn orbit_sum_z12_three_colors() {
    let census = orbit_census(12, 3, None).unwrap();
    assert_eq!(census.orbit_sum() as u128, count_equinumerous(12, 3).unwrap());
}

#[test]
fn z24_tiles_are_certificates() {
    let z = construct_z24();
    assert!(verify_certificate(&z, 4).unwrap());
    assert!(verify_certificate(&tile(&z, 3).unwrap(), 4).unwrap());
    assert!(!verify_certificate(&cyclic(4, "AABBCDCD"), 4).unwrap());
    assert_eq!(
        verify_certificate(&z.with_topology(Topology::Interval), 4).unwrap_err(),
        Error::UnsupportedTopology(Topology::Interval)
    );
}

/// Naive check: is there a rainbow cyclic AP with all members in `0..=p`
/// that passes through `p`?
fn naive_rainbow_through(n: usize, len: usize, assign: &[u8], p: usize) -> bool {
    for d in 1..n {
        for start in 0..n {
            let Ok(members) = ap_members(n, Topology::Cyclic, ApSpec::new(start, d, len)) else {
                continue;
            };
            if !members.contains(&p) || members.iter().any(|&x| x > p) {
                continue;
            }
            let colors: HashSet<u8> = members.iter().map(|&x| assign[x]).collect();
            if colors.len() == len {
                return true;
            }
        }
    }
    false
}

#[test]
fn rainbow_prune_soundness() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..1000 {
        let n = *[8usize, 12, 15, 16, 20, 24].get(rng.gen_range(0..6)).unwrap();
        let k = rng.gen_range(3..=5);
        let len = rng.gen_range(3..=k.min(5));
        let table = ApTable::cyclic(n, len);
        let p = rng.gen_range(0..n);
        let assign: Vec<u8> = (0..n).map(|_| rng.gen_range(0..k as u8)).collect();
        assert_eq!(
            table.completes_rainbow(&assign, p),
            naive_rainbow_through(n, len, &assign, p),
            "n={n} len={len} p={p} assign={assign:?}"
        );
    }
}
