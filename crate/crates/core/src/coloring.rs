//! Colorings of the interval `[n]` and of the cyclic group `Z_n`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest palette expressible in the single-letter text format.
pub const MAX_COLORS: usize = 26;

/// A color label, displayed as `'A' + index`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Color(pub u8);

impl Color {
    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn letter(self) -> char {
        (b'A' + self.0) as char
    }

    pub fn from_letter(letter: char) -> Option<Self> {
        if letter.is_ascii_uppercase() {
            Some(Color(letter as u8 - b'A'))
        } else {
            None
        }
    }
}

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

/// Whether positions live on the line `1..=n` or on the residues `0..n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Topology {
    Interval,
    Cyclic,
}

impl fmt::Display for Topology {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Topology::Interval => f.write_str("interval"),
            Topology::Cyclic => f.write_str("cyclic"),
        }
    }
}

/// A total assignment of one of `k` colors to each of `n` positions.
///
/// Storage is 0-based. For [`Topology::Interval`] slot `i` holds position
/// `i + 1`; for [`Topology::Cyclic`] slot `i` holds residue `i`. Under the
/// embedding `[n] -> Z_n`, `i -> i mod n`, position `n` lands on residue 0.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Coloring {
    topology: Topology,
    k: usize,
    colors: Vec<Color>,
}

impl Coloring {
    pub fn new(topology: Topology, k: usize, colors: Vec<Color>) -> Result<Self> {
        if !(1..=MAX_COLORS).contains(&k) {
            return Err(Error::InvalidArity(k));
        }
        if colors.is_empty() {
            return Err(Error::EmptyColoring);
        }
        if let Some(bad) = colors.iter().find(|c| c.index() >= k) {
            return Err(Error::ColorOutOfRange { index: bad.index(), k });
        }
        Ok(Coloring { topology, k, colors })
    }

    /// Parses a string of letters `A..` into a coloring with `k` colors.
    pub fn from_letters(topology: Topology, k: usize, letters: &str) -> Result<Self> {
        if !(1..=MAX_COLORS).contains(&k) {
            return Err(Error::InvalidArity(k));
        }
        let mut colors = Vec::with_capacity(letters.len());
        for (i, ch) in letters.chars().enumerate() {
            match Color::from_letter(ch) {
                Some(c) if c.index() < k => colors.push(c),
                _ => {
                    return Err(Error::InvalidColorLetter {
                        letter: ch,
                        position: i + 1,
                        k,
                    })
                }
            }
        }
        Coloring::new(topology, k, colors)
    }

    /// Like [`Coloring::from_letters`], taking `k` to be the number of
    /// letters up to the largest one used.
    pub fn from_letters_infer_k(topology: Topology, letters: &str) -> Result<Self> {
        let mut k = 0;
        for (i, ch) in letters.chars().enumerate() {
            match Color::from_letter(ch) {
                Some(c) => k = k.max(c.index() + 1),
                None => {
                    return Err(Error::InvalidColorLetter {
                        letter: ch,
                        position: i + 1,
                        k: MAX_COLORS,
                    })
                }
            }
        }
        Coloring::from_letters(topology, k.max(1), letters)
    }

    pub(crate) fn from_indices(topology: Topology, k: usize, indices: &[u8]) -> Self {
        debug_assert!(indices.iter().all(|&c| (c as usize) < k));
        Coloring {
            topology,
            k,
            colors: indices.iter().map(|&c| Color(c)).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.colors.len()
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn topology(&self) -> Topology {
        self.topology
    }

    /// Colors in storage order (see the type-level docs for the indexing).
    pub fn colors(&self) -> &[Color] {
        &self.colors
    }

    /// Storage slot of a position, or `None` when the position is outside
    /// the ground set.
    pub fn slot(&self, position: usize) -> Option<usize> {
        match self.topology {
            Topology::Interval => (1..=self.n()).contains(&position).then(|| position - 1),
            Topology::Cyclic => (position < self.n()).then_some(position),
        }
    }

    /// Inverse of [`Coloring::slot`].
    pub fn position(&self, slot: usize) -> usize {
        match self.topology {
            Topology::Interval => slot + 1,
            Topology::Cyclic => slot,
        }
    }

    /// Color at a position: 1-based for intervals, a residue for cyclic.
    pub fn color_at(&self, position: usize) -> Option<Color> {
        self.slot(position).map(|s| self.colors[s])
    }

    pub fn letters(&self) -> String {
        self.colors.iter().map(|c| c.letter()).collect()
    }

    /// The same assignment reinterpreted on another topology, slot for slot.
    pub fn with_topology(&self, topology: Topology) -> Coloring {
        Coloring { topology, ..self.clone() }
    }

    /// Pulls an interval coloring of `[n]` back onto `Z_n` via `i -> i mod n`.
    pub fn to_cyclic_embedding(&self) -> Coloring {
        match self.topology {
            Topology::Cyclic => self.clone(),
            Topology::Interval => {
                let n = self.n();
                let mut colors = vec![Color(0); n];
                for (slot, &c) in self.colors.iter().enumerate() {
                    colors[(slot + 1) % n] = c;
                }
                Coloring { topology: Topology::Cyclic, k: self.k, colors }
            }
        }
    }

    pub fn to_json(&self) -> ColoringJson {
        ColoringJson {
            n: self.n(),
            k: self.k,
            topology: self.topology,
            colors: self.letters(),
        }
    }

    pub fn from_json_str(text: &str) -> Result<Self> {
        let raw: ColoringJson =
            serde_json::from_str(text).map_err(|e| Error::Json(e.to_string()))?;
        raw.try_into()
    }
}

impl fmt::Display for Coloring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.letters())
    }
}

/// Wire form: `{"n":int,"k":int,"topology":"interval"|"cyclic","colors":"ABCC.."}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColoringJson {
    pub n: usize,
    pub k: usize,
    pub topology: Topology,
    pub colors: String,
}

impl TryFrom<ColoringJson> for Coloring {
    type Error = Error;

    fn try_from(raw: ColoringJson) -> Result<Self> {
        let c = Coloring::from_letters(raw.topology, raw.k, &raw.colors)?;
        if c.n() != raw.n {
            return Err(Error::Json(format!(
                "n = {} but colors has length {}",
                raw.n,
                c.n()
            )));
        }
        Ok(c)
    }
}

impl From<&Coloring> for ColoringJson {
    fn from(c: &Coloring) -> Self {
        c.to_json()
    }
}
