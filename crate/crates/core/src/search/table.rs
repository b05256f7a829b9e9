use std::collections::BTreeSet;

use num_integer::Integer;

/// Cyclic progressions indexed by their largest member.
///
/// When positions are assigned in order `0, 1, ..., n - 1`, the
/// progressions that become fully assigned at step `p` are exactly those
/// whose largest member is `p`. Progressions are stored as member sets, so
/// `(start, d)` and its reversal `(last, n - d)` appear once.
#[derive(Debug, Clone)]
pub struct ApTable {
    n: usize,
    length: usize,
    // offsets[p]..offsets[p + 1] indexes `others` in strides of length - 1
    offsets: Vec<usize>,
    others: Vec<u16>,
}

impl ApTable {
    pub fn cyclic(n: usize, length: usize) -> Self {
        assert!(length >= 2 && n < u16::MAX as usize);
        let mut sets: BTreeSet<Vec<u16>> = BTreeSet::new();
        for d in 1..=n / 2 {
            if n / n.gcd(&d) < length {
                continue;
            }
            for start in 0..n {
                let mut members: Vec<u16> =
                    (0..length).map(|t| ((start + t * d) % n) as u16).collect();
                members.sort_unstable();
                sets.insert(members);
            }
        }
        let mut by_last: Vec<Vec<&Vec<u16>>> = vec![Vec::new(); n];
        for set in &sets {
            by_last[*set.last().expect("non-empty") as usize].push(set);
        }
        let mut offsets = Vec::with_capacity(n + 1);
        let mut others = Vec::new();
        offsets.push(0);
        for group in by_last {
            for set in group {
                others.extend_from_slice(&set[..length - 1]);
            }
            offsets.push(others.len());
        }
        ApTable { n, length, offsets, others }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn length(&self) -> usize {
        self.length
    }

    /// Number of distinct member sets.
    pub fn len(&self) -> usize {
        self.others.len() / (self.length - 1)
    }

    pub fn is_empty(&self) -> bool {
        self.others.is_empty()
    }

    /// Does assigning `assign[p]` complete a rainbow progression? Every
    /// position `< p` must already be assigned.
    #[inline]
    pub fn completes_rainbow(&self, assign: &[u8], p: usize) -> bool {
        let own = 1u32 << assign[p];
        let stride = self.length - 1;
        let slice = &self.others[self.offsets[p]..self.offsets[p + 1]];
        'aps: for others in slice.chunks_exact(stride) {
            let mut seen = own;
            for &x in others {
                let bit = 1u32 << assign[x as usize];
                if seen & bit != 0 {
                    continue 'aps;
                }
                seen |= bit;
            }
            return true;
        }
        false
    }
}
