//! Explicit colorings without rainbow progressions.
//!
//! The interval 4-colorings are assembled from two 4-letter blocks,
//! `ABCC` and `DDAB`, each repeated `m` times, with a short prefix and
//! suffix chosen by `n mod 8`.

use std::fmt;
use std::str::FromStr;

use crate::coloring::{Color, Coloring, Topology};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Block {
    /// `ABCC`
    First,
    /// `DDAB`
    Second,
}

impl Block {
    pub fn letters(self) -> &'static str {
        match self {
            Block::First => "ABCC",
            Block::Second => "DDAB",
        }
    }
}

/// Which interval construction to use when more than one is known.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum VariantTag {
    #[default]
    Default,
    /// `C + blocks + DB`, for `n = 3 (mod 8)`.
    Alt41,
    /// `BAC + blocks + D`, for `n = 4 (mod 8)`.
    Star,
}

impl VariantTag {
    pub const ALL: [VariantTag; 3] = [VariantTag::Default, VariantTag::Alt41, VariantTag::Star];

    pub fn name(self) -> &'static str {
        match self {
            VariantTag::Default => "default",
            VariantTag::Alt41 => "alt41",
            VariantTag::Star => "star",
        }
    }

    /// Residue of `n mod 8` the variant is defined for (`None`: any).
    pub fn required_residue(self) -> Option<usize> {
        match self {
            VariantTag::Default => None,
            VariantTag::Alt41 => Some(3),
            VariantTag::Star => Some(4),
        }
    }

    pub fn applies_to(self, n: usize) -> bool {
        self.required_residue().is_none_or(|r| n % 8 == r)
    }
}

impl fmt::Display for VariantTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for VariantTag {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "default" => Ok(VariantTag::Default),
            "alt41" | "4.1" => Ok(VariantTag::Alt41),
            "star" | "*" => Ok(VariantTag::Star),
            other => Err(format!("unknown variant {other:?} (default|alt41|star)")),
        }
    }
}

fn prefix_suffix(r: usize, variant: VariantTag) -> (&'static str, &'static str) {
    match (variant, r) {
        (VariantTag::Alt41, _) => ("C", "DB"),
        (VariantTag::Star, _) => ("BAC", "D"),
        (_, 0) => ("", ""),
        (_, 1) => ("", "D"),
        (_, 2) => ("", "DB"),
        (_, 3) => ("", "DBA"),
        (_, 4) => ("C", "DBA"),
        (_, 5) => ("CC", "DBA"),
        (_, 6) => ("BCC", "DBA"),
        (_, 7) => ("ABCC", "DBA"),
        _ => unreachable!("residue mod 8"),
    }
}

/// Letters of the interval 4-coloring of `[n]`; `n >= 8`.
pub fn interval4_letters(n: usize, variant: VariantTag) -> Result<String> {
    if n < 8 {
        return Err(Error::TooSmall { n, min: 8 });
    }
    if let Some(required) = variant.required_residue() {
        if n % 8 != required {
            return Err(Error::VariantMismatch { variant: variant.name(), required, n });
        }
    }
    let m = n / 8;
    let (prefix, suffix) = prefix_suffix(n % 8, variant);
    let mut s = String::with_capacity(n);
    s.push_str(prefix);
    for _ in 0..m {
        s.push_str(Block::First.letters());
    }
    for _ in 0..m {
        s.push_str(Block::Second.letters());
    }
    s.push_str(suffix);
    debug_assert_eq!(s.len(), n);
    Ok(s)
}

/// Rainbow-AP(4)-free 4-coloring of `[n]` for every `n >= 8`.
pub fn construct_interval4(n: usize, variant: VariantTag) -> Result<Coloring> {
    let letters = interval4_letters(n, variant)?;
    Coloring::from_letters(Topology::Interval, 4, &letters)
}

/// Color indices of the `k`-coloring of `[total]`, built by induction on `k`.
fn construct_k_indices(k: usize, total: usize) -> Result<Vec<u8>> {
    if k == 4 {
        let base = construct_interval4(total, VariantTag::Default)?;
        return Ok(base.colors().iter().map(|c| c.0).collect());
    }
    let n = total / k;
    let r = total % k;
    // With total = k*n + r the base covers (k-1)*n + r cells, or one fewer
    // when r = k - 1 so that the base still has a residue below k - 1.
    let base_len = if r == k - 1 { (k - 1) * n + r - 1 } else { (k - 1) * n + r };
    let mut out = construct_k_indices(k - 1, base_len)?;
    out.resize(total, (k - 1) as u8);
    Ok(out)
}

/// Rainbow-AP(k)-free `k`-coloring of `[total]` for `k >= 4` and
/// `total = k*n + r` with `n >= 2`, `0 <= r <= k - 1`.
///
/// The top `n` (or `n + 1`) cells get the newest color; any rainbow AP(k)
/// would have to end there and begin with a rainbow AP(k-1) of the base.
pub fn construct_k(k: usize, total: usize) -> Result<Coloring> {
    if k < 4 {
        return Err(Error::UnsupportedArity(k));
    }
    if k > crate::coloring::MAX_COLORS {
        return Err(Error::InvalidArity(k));
    }
    if total / k < 2 {
        return Err(Error::TooSmall { n: total, min: 2 * k });
    }
    let indices = construct_k_indices(k, total)?;
    Ok(Coloring::from_indices(Topology::Interval, k, &indices))
}

/// Residue classes of the equinumerous proper coloring of `Z_24`.
pub const Z24_CLASSES: [[usize; 6]; 4] = [
    [3, 6, 9, 16, 18, 20],
    [1, 8, 10, 12, 19, 22],
    [5, 7, 13, 15, 21, 23],
    [0, 2, 4, 11, 14, 17],
];

/// Rainbow-AP(4)-free equinumerous 4-coloring of `Z_24`.
pub fn construct_z24() -> Coloring {
    let mut colors = vec![Color(0); 24];
    for (color, residues) in Z24_CLASSES.iter().enumerate() {
        for &r in residues {
            colors[r] = Color(color as u8);
        }
    }
    Coloring::new(Topology::Cyclic, 4, colors).expect("static table is valid")
}

/// Repeats a cyclic coloring of `Z_n` to `Z_{times*n}`: `color(i) = c(i mod n)`.
pub fn tile(c: &Coloring, times: usize) -> Result<Coloring> {
    if c.topology() != Topology::Cyclic {
        return Err(Error::UnsupportedTopology(c.topology()));
    }
    if times < 1 {
        return Err(Error::InvalidRepeat);
    }
    let colors = c.colors().repeat(times);
    Coloring::new(Topology::Cyclic, c.k(), colors)
}

/// Exponent of the largest power of 3 dividing `i` (`i >= 1`).
pub fn valuation3(mut i: usize) -> usize {
    debug_assert!(i > 0);
    let mut v = 0;
    while i.is_multiple_of(3) {
        i /= 3;
        v += 1;
    }
    v
}

/// Colors each `i` in `[n]` by the exponent of 3 in `i`. Uses exactly
/// `floor(log3 n) + 1` colors and has no rainbow AP(3).
pub fn construct_pow3(n: usize) -> Result<Coloring> {
    if n < 1 {
        return Err(Error::TooSmall { n, min: 1 });
    }
    let indices: Vec<u8> = (1..=n).map(|i| valuation3(i) as u8).collect();
    let k = *indices.iter().max().expect("n >= 1") as usize + 1;
    Ok(Coloring::from_indices(Topology::Interval, k, &indices))
}
