//! Plain enumeration of equinumerous colorings, and an exhaustive check
//! that shares no code with the pruned search engine.

use std::ops::ControlFlow;

use crate::ap::{ap_members, ApSpec};
use crate::coloring::{Coloring, Topology};
use crate::error::{Error, Result};

fn check_divisible(n: usize, k: usize) -> Result<()> {
    if !(1..=crate::coloring::MAX_COLORS).contains(&k) {
        return Err(Error::InvalidArity(k));
    }
    if n == 0 || !n.is_multiple_of(k) {
        return Err(Error::NotDivisible { n, k });
    }
    Ok(())
}

/// `(sum counts)! / prod(count!)`, as a product of binomials.
pub fn multinomial(counts: &[usize]) -> u128 {
    let mut total = 0u128;
    let mut acc = 1u128;
    for &c in counts {
        for i in 1..=c as u128 {
            total += 1;
            // acc * total / i stays integral: acc * C(total, i) / C(total-1, i-1)
            acc = acc * total / i;
        }
    }
    acc
}

/// Number of equinumerous `k`-colorings of an `n`-set.
pub fn count_equinumerous(n: usize, k: usize) -> Result<u128> {
    check_divisible(n, k)?;
    Ok(multinomial(&vec![n / k; k]))
}

/// Rearranges `v` into the next lexicographic permutation of its multiset.
fn next_permutation(v: &mut [u8]) -> bool {
    let Some(i) = v.windows(2).rposition(|w| w[0] < w[1]) else {
        return false;
    };
    let j = v.iter().rposition(|&x| x > v[i]).expect("pivot has a successor");
    v.swap(i, j);
    v[i + 1..].reverse();
    true
}

/// Visits every equinumerous `k`-coloring of an `n`-set in lexicographic
/// order, as color-index slices. Returns the number visited.
pub fn for_each_equinumerous<F>(n: usize, k: usize, mut f: F) -> Result<u64>
where
    F: FnMut(&[u8]) -> ControlFlow<()>,
{
    check_divisible(n, k)?;
    let per = n / k;
    let mut v: Vec<u8> = (0..k as u8).flat_map(|c| std::iter::repeat_n(c, per)).collect();
    let mut count = 0u64;
    loop {
        count += 1;
        if f(&v).is_break() || !next_permutation(&mut v) {
            return Ok(count);
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Enumeration {
    pub count: u64,
    /// The first `limit` colorings in lexicographic order.
    pub colorings: Vec<Coloring>,
}

/// Counts all equinumerous `k`-colorings of `Z_n` and keeps up to `limit`
/// of them.
pub fn enumerate_equinumerous(n: usize, k: usize, limit: Option<usize>) -> Result<Enumeration> {
    let keep = limit.unwrap_or(0);
    let mut colorings = Vec::with_capacity(keep.min(1 << 16));
    let count = for_each_equinumerous(n, k, |v| {
        if colorings.len() < keep {
            colorings.push(Coloring::from_indices(Topology::Cyclic, k, v));
        }
        ControlFlow::Continue(())
    })?;
    Ok(Enumeration { count, colorings })
}

/// Result of [`all_contain_rainbow`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RainbowCoverage {
    pub all_contain: bool,
    /// Lexicographically first equinumerous coloring without a rainbow AP.
    pub counterexample: Option<Coloring>,
    /// Colorings accounted for, either visited or skipped as a whole subtree
    /// behind a prefix that already holds a rainbow AP.
    pub covered: u128,
    pub nodes: u64,
}

struct Walker {
    n: usize,
    k: usize,
    length: usize,
    cap: usize,
    assign: Vec<u8>,
    counts: Vec<usize>,
    covered: u128,
    nodes: u64,
}

impl Walker {
    /// Does a rainbow AP lie inside positions `0..=p` and pass through `p`?
    /// Resolved through the generic `ap_members`, one progression at a time.
    fn rainbow_through(&self, p: usize) -> bool {
        let n = self.n;
        for d in 1..n {
            for t in 0..self.length {
                let start = (p + n * self.length - t * d % n) % n;
                let Ok(members) = ap_members(n, Topology::Cyclic, ApSpec::new(start, d, self.length))
                else {
                    break;
                };
                if members.iter().any(|&x| x > p) {
                    continue;
                }
                let mut seen = 0u32;
                let rainbow = members.iter().all(|&x| {
                    let bit = 1u32 << self.assign[x];
                    let fresh = seen & bit == 0;
                    seen |= bit;
                    fresh
                });
                if rainbow {
                    return true;
                }
            }
        }
        false
    }

    fn walk(&mut self, p: usize) -> ControlFlow<()> {
        if p == self.n {
            return ControlFlow::Break(());
        }
        for color in 0..self.k {
            if self.counts[color] == self.cap {
                continue;
            }
            self.nodes += 1;
            self.assign[p] = color as u8;
            self.counts[color] += 1;
            if self.rainbow_through(p) {
                let remaining: Vec<usize> = self.counts.iter().map(|&c| self.cap - c).collect();
                self.covered += multinomial(&remaining);
            } else if self.walk(p + 1).is_break() {
                return ControlFlow::Break(());
            }
            self.counts[color] -= 1;
        }
        ControlFlow::Continue(())
    }
}

/// Decides whether every equinumerous `k`-coloring of `Z_n` contains a
/// rainbow AP of the given length with distinct members.
///
/// Walks colorings in lexicographic order and skips a subtree only once
/// its assigned prefix already contains a rainbow AP, so the first leaf
/// reached is the lexicographically first counterexample.
pub fn all_contain_rainbow(n: usize, k: usize, ap_length: usize) -> Result<RainbowCoverage> {
    check_divisible(n, k)?;
    if ap_length < 3 {
        return Err(Error::InvalidLength(ap_length));
    }
    let mut w = Walker {
        n,
        k,
        length: ap_length,
        cap: n / k,
        assign: vec![0; n],
        counts: vec![0; k],
        covered: 0,
        nodes: 0,
    };
    let hit = w.walk(0).is_break();
    let counterexample = hit.then(|| Coloring::from_indices(Topology::Cyclic, k, &w.assign));
    if hit {
        w.covered += 1;
    }
    Ok(RainbowCoverage {
        all_contain: !hit,
        counterexample,
        covered: w.covered,
        nodes: w.nodes,
    })
}
