use std::cmp::Ordering;
use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::Weight;
use crate::{Error, Result};

/// Index of a color inside its [`Alphabet`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ColorId(pub usize);

impl fmt::Display for ColorId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Color {
    pub id: ColorId,
    pub label: String,
    pub weight: Weight,
}

/// A finite set of colors with a strict total order `≼` and an optional
/// ground letter.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Alphabet {
    colors: Vec<Color>,
    /// Colors from `≼`-smallest to `≼`-largest.
    ascending: Vec<ColorId>,
    /// Position of each color in `ascending`.
    rank: Vec<usize>,
    ground: Option<ColorId>,
}

impl Alphabet {
    /// Builds an alphabet from `(label, weight)` pairs; color ids follow the
    /// input order. `ascending` lists every color once, smallest first.
    pub fn new(
        colors: Vec<(String, Weight)>,
        ascending: Vec<ColorId>,
        ground: Option<ColorId>,
    ) -> Result<Self> {
        if colors.is_empty() {
            return Err(Error::InvalidAlphabet("no colors".into()));
        }
        let weight_rank = colors[0].1.rank();
        let mut labels = HashSet::new();
        for (label, weight) in &colors {
            if !labels.insert(label.as_str()) {
                return Err(Error::InvalidAlphabet(format!("duplicate label `{label}`")));
            }
            if label.is_empty() || label.contains(|c: char| c.is_whitespace() || c == ',') {
                return Err(Error::InvalidAlphabet(format!("bad label `{label}`")));
            }
            if weight.rank() != weight_rank {
                return Err(Error::InvalidAlphabet(format!(
                    "weight of `{label}` has rank {}, expected {weight_rank}",
                    weight.rank()
                )));
            }
        }
        let n = colors.len();
        let mut rank = vec![usize::MAX; n];
        if ascending.len() != n {
            return Err(Error::InvalidAlphabet(
                "order must list every color exactly once".into(),
            ));
        }
        for (pos, &ColorId(c)) in ascending.iter().enumerate() {
            if c >= n || rank[c] != usize::MAX {
                return Err(Error::InvalidAlphabet(
                    "order must list every color exactly once".into(),
                ));
            }
            rank[c] = pos;
        }
        let colors: Vec<Color> = colors
            .into_iter()
            .enumerate()
            .map(|(i, (label, weight))| Color {
                id: ColorId(i),
                label,
                weight,
            })
            .collect();
        if let Some(g) = ground {
            let color = colors
                .get(g.0)
                .ok_or_else(|| Error::InvalidAlphabet("ground color out of range".into()))?;
            if !color.weight.is_zero() {
                return Err(Error::InvalidAlphabet(format!(
                    "ground color `{}` has nonzero weight {}",
                    color.label, color.weight
                )));
            }
        }
        Ok(Alphabet {
            colors,
            ascending,
            rank,
            ground,
        })
    }

    /// Colors in input order, with `≼` running from the last label to the first
    /// (the `1 ≻ 2 ≻ … ≻ 9` convention).
    pub fn descending_labels(colors: Vec<(String, Weight)>, ground: Option<&str>) -> Result<Self> {
        let ascending = (0..colors.len()).rev().map(ColorId).collect();
        let ground = match ground {
            Some(label) => Some(ColorId(
                colors
                    .iter()
                    .position(|(l, _)| l == label)
                    .ok_or_else(|| Error::UnknownColor(label.to_string()))?,
            )),
            None => None,
        };
        Alphabet::new(colors, ascending, ground)
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    pub fn colors(&self) -> &[Color] {
        &self.colors
    }

    pub fn ids(&self) -> impl Iterator<Item = ColorId> + '_ {
        (0..self.colors.len()).map(ColorId)
    }

    pub fn color(&self, id: ColorId) -> &Color {
        &self.colors[id.0]
    }

    pub fn label(&self, id: ColorId) -> &str {
        &self.colors[id.0].label
    }

    pub fn weight(&self, id: ColorId) -> &Weight {
        &self.colors[id.0].weight
    }

    /// `ℓ`, shared by all color weights.
    pub fn weight_rank(&self) -> usize {
        self.colors[0].weight.rank()
    }

    pub fn ground(&self) -> Option<ColorId> {
        self.ground
    }

    pub fn contains_id(&self, id: ColorId) -> bool {
        id.0 < self.colors.len()
    }

    pub fn find(&self, label: &str) -> Result<ColorId> {
        self.colors
            .iter()
            .find(|c| c.label == label)
            .map(|c| c.id)
            .ok_or_else(|| Error::UnknownColor(label.to_string()))
    }

    /// Position of `id` in the `≼` order, 0 being the smallest.
    pub fn rank(&self, id: ColorId) -> usize {
        self.rank[id.0]
    }

    pub fn ascending(&self) -> &[ColorId] {
        &self.ascending
    }

    pub fn cmp_colors(&self, a: ColorId, b: ColorId) -> Ordering {
        self.rank(a).cmp(&self.rank(b))
    }

    /// `a ≼ b`.
    pub fn precedes(&self, a: ColorId, b: ColorId) -> bool {
        self.rank(a) <= self.rank(b)
    }

    pub fn with_order(&self, ascending: Vec<ColorId>) -> Result<Alphabet> {
        Alphabet::new(self.pairs(), ascending, self.ground)
    }

    pub fn with_weights(&self, weights: Vec<Weight>) -> Result<Alphabet> {
        if weights.len() != self.len() {
            return Err(Error::InvalidAlphabet(
                "one weight per color required".into(),
            ));
        }
        let pairs = self
            .colors
            .iter()
            .zip(weights)
            .map(|(c, w)| (c.label.clone(), w))
            .collect();
        Alphabet::new(pairs, self.ascending.clone(), self.ground)
    }

    /// Same colors and order with `colors` removed; ids are renumbered.
    pub fn without(&self, removed: &[ColorId]) -> Result<Alphabet> {
        let keep: Vec<ColorId> = self.ids().filter(|c| !removed.contains(c)).collect();
        let new_id = |old: ColorId| keep.iter().position(|&k| k == old).map(ColorId);
        let pairs = keep
            .iter()
            .map(|&c| (self.label(c).to_string(), self.weight(c).clone()))
            .collect();
        let ascending = self.ascending.iter().filter_map(|&c| new_id(c)).collect();
        let ground = self.ground.and_then(new_id);
        Alphabet::new(pairs, ascending, ground)
    }

    fn pairs(&self) -> Vec<(String, Weight)> {
        self.colors
            .iter()
            .map(|c| (c.label.clone(), c.weight.clone()))
            .collect()
    }
}
