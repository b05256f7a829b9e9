//! Arithmetic progressions on `[n]` and `Z_n`, and rainbow detection.
//!
//! A cyclic progression is admissible only when its terms are pairwise
//! distinct residues, i.e. `n / gcd(n, d) >= length`. Differences run over
//! `1..n`, so every cyclic progression is listed in both directions
//! (`(start, d)` and `(last, n - d)`).

use std::ops::ControlFlow;

use num_integer::Integer;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::coloring::{Color, Coloring, Topology};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ApSpec {
    /// First term: a 1-based position for intervals, a residue for cyclic.
    pub start: usize,
    pub d: usize,
    pub length: usize,
}

impl ApSpec {
    pub fn new(start: usize, d: usize, length: usize) -> Self {
        ApSpec { start, d, length }
    }
}

/// A rainbow progression found in a coloring.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ApWitness {
    pub spec: ApSpec,
    pub elements: Vec<usize>,
    pub colors: Vec<Color>,
}

impl ApWitness {
    pub fn color_letters(&self) -> String {
        self.colors.iter().map(|c| c.letter()).collect()
    }
}

impl Serialize for ApWitness {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("ApWitness", 4)?;
        s.serialize_field("start", &self.spec.start)?;
        s.serialize_field("d", &self.spec.d)?;
        s.serialize_field("elements", &self.elements)?;
        s.serialize_field("colors", &self.color_letters())?;
        s.end()
    }
}

/// True when a cyclic progression of `length` terms with difference `d`
/// has pairwise distinct members in `Z_n`.
pub fn cyclic_distinct(n: usize, d: usize, length: usize) -> bool {
    let d = d % n;
    d != 0 && n / n.gcd(&d) >= length
}

/// Resolves the members of a progression, in order.
pub fn ap_members(n: usize, topology: Topology, spec: ApSpec) -> Result<Vec<usize>> {
    if spec.d == 0 {
        return Err(Error::InvalidDifference);
    }
    if spec.length < 3 {
        return Err(Error::InvalidLength(spec.length));
    }
    match topology {
        Topology::Interval => {
            let last = (spec.length - 1)
                .checked_mul(spec.d)
                .and_then(|span| span.checked_add(spec.start));
            match last {
                Some(last) if spec.start >= 1 && last <= n => {
                    Ok((0..spec.length).map(|t| spec.start + t * spec.d).collect())
                }
                _ => Err(Error::OutOfRange { n }),
            }
        }
        Topology::Cyclic => {
            if n == 0 || spec.start >= n {
                return Err(Error::OutOfRange { n });
            }
            if !cyclic_distinct(n, spec.d, spec.length) {
                return Err(Error::NotDistinct { n });
            }
            let d = spec.d % n;
            Ok((0..spec.length).map(|t| (spec.start + t * d) % n).collect())
        }
    }
}

/// Calls `visit` on every admissible progression in `(d, start)` order with
/// the storage slots of its members.
fn for_each_ap<F>(n: usize, topology: Topology, length: usize, mut visit: F)
where
    F: FnMut(ApSpec, &[usize]) -> ControlFlow<()>,
{
    let mut slots = vec![0usize; length];
    match topology {
        Topology::Interval => {
            if n < length {
                return;
            }
            let span = length - 1;
            for d in 1..=(n - 1) / span {
                for first in 0..n - span * d {
                    for (t, s) in slots.iter_mut().enumerate() {
                        *s = first + t * d;
                    }
                    if visit(ApSpec::new(first + 1, d, length), &slots).is_break() {
                        return;
                    }
                }
            }
        }
        Topology::Cyclic => {
            for d in 1..n {
                if !cyclic_distinct(n, d, length) {
                    continue;
                }
                for start in 0..n {
                    let mut x = start;
                    for s in slots.iter_mut() {
                        *s = x;
                        x += d;
                        if x >= n {
                            x -= n;
                        }
                    }
                    if visit(ApSpec::new(start, d, length), &slots).is_break() {
                        return;
                    }
                }
            }
        }
    }
}

#[inline]
fn is_rainbow(colors: &[Color], slots: &[usize]) -> bool {
    let mut seen = 0u32;
    for &s in slots {
        let bit = 1u32 << colors[s].0;
        if seen & bit != 0 {
            return false;
        }
        seen |= bit;
    }
    true
}

/// Hot loop for interval colorings: the first rainbow progression in
/// `(d, start)` order as `(first slot, d)`.
fn first_rainbow_interval(colors: &[Color], length: usize) -> Option<(usize, usize)> {
    let n = colors.len();
    if n < length {
        return None;
    }
    let span = length - 1;
    for d in 1..=(n - 1) / span {
        'start: for first in 0..n - span * d {
            let mut seen = 0u32;
            let mut s = first;
            for _ in 0..length {
                let bit = 1u32 << colors[s].0;
                if seen & bit != 0 {
                    continue 'start;
                }
                seen |= bit;
                s += d;
            }
            return Some((first, d));
        }
    }
    None
}

fn witness(c: &Coloring, spec: ApSpec, slots: &[usize]) -> ApWitness {
    ApWitness {
        spec,
        elements: slots.iter().map(|&s| c.position(s)).collect(),
        colors: slots.iter().map(|&s| c.colors()[s]).collect(),
    }
}

/// First rainbow progression of the given length, smallest `(d, start)`.
pub fn find_rainbow_ap(c: &Coloring, length: usize) -> Result<Option<ApWitness>> {
    if length < 3 {
        return Err(Error::InvalidLength(length));
    }
    // pigeonhole
    if length > c.k() {
        return Ok(None);
    }
    let colors = c.colors();
    if c.topology() == Topology::Interval {
        return Ok(first_rainbow_interval(colors, length).map(|(first, d)| {
            let slots: Vec<usize> = (0..length).map(|t| first + t * d).collect();
            witness(c, ApSpec::new(first + 1, d, length), &slots)
        }));
    }
    let mut found = None;
    for_each_ap(c.n(), c.topology(), length, |spec, slots| {
        if is_rainbow(colors, slots) {
            found = Some(witness(c, spec, slots));
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    });
    Ok(found)
}

/// Every rainbow progression of the given length, in `(d, start)` order.
pub fn enumerate_rainbow_aps(c: &Coloring, length: usize) -> Result<Vec<ApWitness>> {
    if length < 3 {
        return Err(Error::InvalidLength(length));
    }
    let mut out = Vec::new();
    if length > c.k() {
        return Ok(out);
    }
    let colors = c.colors();
    for_each_ap(c.n(), c.topology(), length, |spec, slots| {
        if is_rainbow(colors, slots) {
            out.push(witness(c, spec, slots));
        }
        ControlFlow::Continue(())
    });
    Ok(out)
}

/// Number of admissible progressions of the given length.
pub fn count_aps(n: usize, topology: Topology, length: usize) -> u64 {
    let mut count = 0;
    for_each_ap(n, topology, length, |_, _| {
        count += 1;
        ControlFlow::Continue(())
    });
    count
}

#[cfg(test)]
mod tests {
    use super::*;

    fn interval(s: &str) -> Coloring {
        Coloring::from_letters_infer_k(Topology::Interval, s).unwrap()
    }

    fn cyclic(k: usize, s: &str) -> Coloring {
        Coloring::from_letters(Topology::Cyclic, k, s).unwrap()
    }

    #[test]
    fn members_examples() {
        assert_eq!(
            ap_members(8, Topology::Interval, ApSpec::new(1, 1, 4)).unwrap(),
            vec![1, 2, 3, 4]
        );
        assert_eq!(
            ap_members(8, Topology::Cyclic, ApSpec::new(4, 3, 4)).unwrap(),
            vec![4, 7, 2, 5]
        );
        assert_eq!(
            ap_members(8, Topology::Cyclic, ApSpec::new(0, 4, 4)).unwrap_err(),
            Error::NotDistinct { n: 8 }
        );
        assert_eq!(
            ap_members(8, Topology::Interval, ApSpec::new(6, 1, 4)).unwrap_err(),
            Error::OutOfRange { n: 8 }
        );
        assert_eq!(
            ap_members(8, Topology::Interval, ApSpec::new(1, 0, 4)).unwrap_err(),
            Error::InvalidDifference
        );
        assert_eq!(
            ap_members(8, Topology::Interval, ApSpec::new(1, 1, 2)).unwrap_err(),
            Error::InvalidLength(2)
        );
    }

    #[test]
    fn cyclic_distinctness_matches_gcd_rule() {
        for n in 1..=64usize {
            for d in 1..n {
                for length in 3..=6 {
                    let res = ap_members(n, Topology::Cyclic, ApSpec::new(0, d, length));
                    let expect_distinct = n / n.gcd(&d) >= length;
                    assert_eq!(res.is_ok(), expect_distinct, "n={n} d={d} len={length}");
                    if let Ok(m) = res {
                        let mut sorted = m.clone();
                        sorted.sort_unstable();
                        sorted.dedup();
                        assert_eq!(sorted.len(), length);
                    }
                }
            }
        }
    }

    #[test]
    fn abcd_has_single_rainbow() {
        let c = interval("ABCD");
        let w = find_rainbow_ap(&c, 4).unwrap().unwrap();
        assert_eq!((w.spec.start, w.spec.d), (1, 1));
        assert_eq!(w.elements, vec![1, 2, 3, 4]);
        assert_eq!(enumerate_rainbow_aps(&c, 4).unwrap().len(), 1);
    }

    #[test]
    fn block_coloring_is_free_on_interval() {
        let c = interval("ABCCDDAB");
        assert_eq!(find_rainbow_ap(&c, 4).unwrap(), None);
        assert!(enumerate_rainbow_aps(&c, 4).unwrap().is_empty());
        assert_eq!(find_rainbow_ap(&interval("CABCCDDABDBA"), 4).unwrap(), None);
    }

    #[test]
    fn block_coloring_embedded_in_z8() {
        let z = interval("ABCCDDAB").to_cyclic_embedding();
        let all = enumerate_rainbow_aps(&z, 4).unwrap();
        // d = 1 and d = 2 give nothing; the first hits sit at d = 3.
        assert!(all.iter().all(|w| w.spec.d >= 3));
        let w = find_rainbow_ap(&z, 4).unwrap().unwrap();
        assert_eq!((w.spec.d, w.spec.start), (3, 0));
        let hit = all
            .iter()
            .find(|w| w.spec == ApSpec::new(4, 3, 4))
            .expect("start 4, d 3 is rainbow");
        assert_eq!(hit.elements, vec![4, 7, 2, 5]);
        assert_eq!(hit.color_letters(), "CABD");
    }

    #[test]
    fn witness_json_shape() {
        let w = find_rainbow_ap(&cyclic(4, "ABCD"), 4).unwrap().unwrap();
        assert_eq!(
            serde_json::to_string(&w).unwrap(),
            r#"{"start":0,"d":1,"elements":[0,1,2,3],"colors":"ABCD"}"#
        );
    }

    #[test]
    fn too_few_colors_never_rainbow() {
        assert_eq!(find_rainbow_ap(&interval("ABCABC"), 4).unwrap(), None);
        assert_eq!(find_rainbow_ap(&interval("ABC"), 2), Err(Error::InvalidLength(2)));
    }

    #[test]
    fn ap_counts() {
        // interval: sum over d of (n - 3d) for AP(4)
        assert_eq!(count_aps(8, Topology::Interval, 4), 5 + 2);
        // Z_8, AP(4): d in {1,2,3,5,6,7} admissible, d = 4 is not
        assert_eq!(count_aps(8, Topology::Cyclic, 4), 6 * 8);
    }
}
