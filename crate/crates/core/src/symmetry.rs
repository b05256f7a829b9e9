//! Symmetries of colorings: affine maps `x -> a*x + b` on `Z_n` (with `a` a
//! unit), reversal on `[n]`, and permutations of the palette. All of them
//! map progressions with distinct members to progressions with distinct
//! members, so rainbow-freeness is an orbit invariant.

use std::collections::HashSet;

use num_integer::Integer;

use crate::coloring::{Color, Coloring, Topology};
use crate::error::{Error, Result};

/// A bijection on color indices `0..k`; `image[i]` is where color `i` goes.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ColorPermutation {
    image: Vec<u8>,
}

impl ColorPermutation {
    pub fn identity(k: usize) -> Self {
        ColorPermutation { image: (0..k as u8).collect() }
    }

    pub fn new(image: Vec<u8>) -> Result<Self> {
        let k = image.len();
        let mut seen = vec![false; k];
        for &i in &image {
            let i = i as usize;
            if i >= k || seen[i] {
                return Err(Error::InvalidPermutation(k));
            }
            seen[i] = true;
        }
        Ok(ColorPermutation { image })
    }

    /// Exchanges two colors of a `k`-palette.
    pub fn swap(k: usize, x: Color, y: Color) -> Self {
        let mut p = Self::identity(k);
        p.image.swap(x.index(), y.index());
        p
    }

    pub fn len(&self) -> usize {
        self.image.len()
    }

    pub fn is_empty(&self) -> bool {
        self.image.is_empty()
    }

    pub fn apply(&self, c: Color) -> Color {
        Color(self.image[c.index()])
    }
}

/// Multipliers `a` in `1..n` with `gcd(a, n) = 1` (just `[0]` for `n = 1`).
pub fn units(n: usize) -> Vec<usize> {
    if n == 1 {
        return vec![0];
    }
    (1..n).filter(|a| a.gcd(&n) == 1).collect()
}

/// Recolors `x` with `sigma(c(x))` and moves it to `a*x + b (mod n)`.
pub fn apply_affine(c: &Coloring, a: i64, b: i64, sigma: &ColorPermutation) -> Result<Coloring> {
    if c.topology() != Topology::Cyclic {
        return Err(Error::UnsupportedTopology(c.topology()));
    }
    if sigma.len() != c.k() {
        return Err(Error::InvalidPermutation(c.k()));
    }
    let n = c.n() as i64;
    let a_mod = a.rem_euclid(n);
    if a_mod.gcd(&n) != 1 {
        return Err(Error::NotInvertible { a, n: c.n() });
    }
    let b_mod = b.rem_euclid(n);
    let mut out = vec![Color(0); c.n()];
    for (x, &col) in c.colors().iter().enumerate() {
        let y = (a_mod * x as i64 + b_mod) % n;
        out[y as usize] = sigma.apply(col);
    }
    Coloring::new(Topology::Cyclic, c.k(), out)
}

/// Relabels colors in order of first appearance: the lexicographically
/// least member of the color-permutation orbit of `seq`.
fn normalize_into(seq: impl Iterator<Item = u8>, k: usize, out: &mut Vec<u8>) {
    let mut map = [u8::MAX; 32];
    let mut next = 0u8;
    out.clear();
    for x in seq {
        let slot = &mut map[x as usize];
        if *slot == u8::MAX {
            *slot = next;
            next += 1;
        }
        out.push(*slot);
    }
    debug_assert!(next as usize <= k);
}

/// Calls `f` with the normalized image of `c` under every group element.
fn for_each_image(c: &Coloring, mut f: impl FnMut(&[u8])) {
    let n = c.n();
    let k = c.k();
    let src: Vec<u8> = c.colors().iter().map(|c| c.0).collect();
    let mut buf = Vec::with_capacity(n);
    match c.topology() {
        Topology::Interval => {
            normalize_into(src.iter().copied(), k, &mut buf);
            f(&buf);
            normalize_into(src.iter().rev().copied(), k, &mut buf);
            f(&buf);
        }
        Topology::Cyclic => {
            // Image under x -> a*x + b read at position y is src[a^-1 (y - b)],
            // so reading src at b', b' + a', b' + 2a', ... walks every image.
            for a in units(n) {
                for b in 0..n {
                    let seq = (0..n).map(|t| src[(b + t * a) % n]);
                    normalize_into(seq, k, &mut buf);
                    f(&buf);
                }
            }
        }
    }
}

/// Lexicographically least member of the orbit of `c` under affine maps
/// (reversal for intervals) combined with color permutations.
pub fn canonical_form(c: &Coloring) -> Coloring {
    let mut best: Option<Vec<u8>> = None;
    for_each_image(c, |img| match &best {
        Some(b) if b.as_slice() <= img => {}
        _ => best = Some(img.to_vec()),
    });
    Coloring::from_indices(c.topology(), c.k(), &best.expect("group is non-empty"))
}

pub fn is_canonical(c: &Coloring) -> bool {
    canonical_form(c) == *c
}

/// Size of the orbit of `c` under the full symmetry group.
pub fn orbit_size(c: &Coloring) -> u64 {
    let mut patterns: HashSet<Vec<u8>> = HashSet::new();
    for_each_image(c, |img| {
        patterns.insert(img.to_vec());
    });
    let k = c.k() as u64;
    let used = c.colors().iter().map(|c| c.0).collect::<HashSet<_>>().len() as u64;
    // injective relabelings of the `used` pattern labels into k colors
    let relabelings: u64 = (k - used + 1..=k).product();
    patterns.len() as u64 * relabelings
}
