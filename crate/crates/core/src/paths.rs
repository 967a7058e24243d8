//! Paths tailed by the ground state, the `part_D` map and its inverse.
//!
//! A path `p(1), p(2), …` agrees with the ground letter `a` from some point
//! on; it is stored as the prefix with trailing ground letters removed.

use std::fmt;

use crate::crystal::EnergyMatrix;
use crate::partitions::{Alphabet, ColorId, ColoredPart, ColoredPartition, PlainPartition, Weight};
use crate::rules::DifferenceRuleSet;
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    prefix: Vec<ColorId>,
}

impl Path {
    /// The ground-state path `a, a, a, …`.
    pub fn ground() -> Self {
        Path { prefix: Vec::new() }
    }

    pub fn new(alphabet: &Alphabet, mut prefix: Vec<ColorId>) -> Result<Self> {
        let ground = alphabet.ground().ok_or(Error::NoGround)?;
        if let Some(c) = prefix.iter().find(|c| !alphabet.contains_id(**c)) {
            return Err(Error::UnknownColor(c.to_string()));
        }
        while prefix.last() == Some(&ground) {
            prefix.pop();
        }
        Ok(Path { prefix })
    }

    pub fn from_labels(alphabet: &Alphabet, labels: &[&str]) -> Result<Self> {
        let prefix = labels
            .iter()
            .map(|l| alphabet.find(l))
            .collect::<Result<Vec<_>>>()?;
        Path::new(alphabet, prefix)
    }

    /// Parses the comma-separated form, e.g. `5,1`.
    pub fn parse(text: &str, alphabet: &Alphabet) -> Result<Self> {
        let text = text.trim();
        if text.is_empty() {
            return Ok(Path::ground());
        }
        let labels: Vec<&str> = text.split(',').map(str::trim).collect();
        Path::from_labels(alphabet, &labels)
    }

    pub fn prefix(&self) -> &[ColorId] {
        &self.prefix
    }

    pub fn is_ground(&self) -> bool {
        self.prefix.is_empty()
    }

    /// `p(j)` for `j ≥ 1`.
    pub fn at(&self, j: usize, ground: ColorId) -> ColorId {
        self.prefix.get(j - 1).copied().unwrap_or(ground)
    }

    pub fn display<'a>(&'a self, alphabet: &'a Alphabet) -> impl fmt::Display + 'a {
        PathDisplay {
            path: self,
            alphabet,
        }
    }
}

struct PathDisplay<'a> {
    path: &'a Path,
    alphabet: &'a Alphabet,
}

impl fmt::Display for PathDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.path.is_ground() {
            return match self.alphabet.ground() {
                Some(a) => write!(f, "{}", self.alphabet.label(a)),
                None => Ok(()),
            };
        }
        let labels: Vec<&str> = self
            .path
            .prefix
            .iter()
            .map(|&c| self.alphabet.label(c))
            .collect();
        write!(f, "{}", labels.join(","))
    }
}

fn ground_of(e: &EnergyMatrix) -> Result<ColorId> {
    let a = e.alphabet().ground().ok_or(Error::NoGround)?;
    match e.get(a, a) {
        0 => Ok(a),
        v => Err(Error::NonZeroGroundEnergy(v)),
    }
}

/// Suffix sums `Σ_{t≥r} E_{β_t β_{t+1}}` along `colors` followed by the ground.
fn suffix_energies(colors: &[ColorId], e: &EnergyMatrix, ground: ColorId) -> Vec<u64> {
    let mut out = vec![0u64; colors.len()];
    let mut acc = 0u64;
    for r in (0..colors.len()).rev() {
        let next = colors.get(r + 1).copied().unwrap_or(ground);
        acc += e.get(colors[r], next) as u64;
        out[r] = acc;
    }
    out
}

/// `-|p| = Σ_j j·E_{p(j) p(j+1)}`.
pub fn path_degree(p: &Path, e: &EnergyMatrix) -> Result<u64> {
    let a = ground_of(e)?;
    Ok((1..=p.prefix.len())
        .map(|j| j as u64 * e.get(p.at(j, a), p.at(j + 1, a)) as u64)
        .sum())
}

pub fn path_weight(p: &Path, alphabet: &Alphabet) -> Weight {
    let mut w = Weight::zero(alphabet.weight_rank());
    for &c in &p.prefix {
        w += alphabet.weight(c);
    }
    w
}

/// The colored partition whose parts, read in canonical order, carry the
/// colors of `p` and differ exactly by the energies between neighbours.
/// Parts of value zero are dropped.
pub fn part_d(p: &Path, e: &EnergyMatrix) -> Result<ColoredPartition> {
    let a = ground_of(e)?;
    let parts = suffix_energies(&p.prefix, e, a)
        .into_iter()
        .zip(&p.prefix)
        .filter(|(v, _)| *v > 0)
        .map(|(v, &c)| ColoredPart::new(-(v as i64), c))
        .collect::<Result<Vec<_>>>()?;
    ColoredPartition::from_parts(e.alphabet().clone(), parts)
}

/// Inverse of `(p, Δ) ↦ part_D(p) ⊕ Δ`.
///
/// The colors of `pi` in canonical order give `p`; the excess of each part
/// over the corresponding part of `part_D(p)` gives the column lengths of `Δ`.
pub fn decompose(pi: &ColoredPartition, d: &DifferenceRuleSet) -> Result<(Path, PlainPartition)> {
    if !d.satisfies(pi) {
        return Err(Error::NotInIdeal(pi.to_string()));
    }
    let e = d.matrix();
    let a = ground_of(e)?;
    let parts: Vec<ColoredPart> = pi.iter_parts().collect();
    let colors: Vec<ColorId> = parts.iter().map(|p| p.color).collect();
    let base = suffix_energies(&colors, e, a);
    let violation = |why: &str| Error::BijectionViolation(format!("{pi}: {why}"));
    let mut columns = Vec::with_capacity(parts.len());
    for (part, b) in parts.iter().zip(&base) {
        let excess = part.magnitude() as i64 - *b as i64;
        if excess < 0 {
            return Err(violation("part smaller than its energy floor"));
        }
        if columns
            .last()
            .is_some_and(|&last: &u32| (excess as u32) > last)
        {
            return Err(violation("excess is not weakly decreasing"));
        }
        columns.push(excess as u32);
    }
    while columns.last() == Some(&0) {
        columns.pop();
    }
    let delta = PlainPartition::new(columns)
        .map_err(|_| violation("excess is not a partition"))?
        .conjugate();
    let path = Path::new(pi.alphabet(), colors)?;
    if part_d(&path, e)?.oplus(&delta)? != *pi {
        return Err(violation("round trip does not reproduce the partition"));
    }
    Ok((path, delta))
}

/// Shortest energy distance from each color to the ground, plus the cheapest
/// way to leave the ground and come back.
fn ground_distances(e: &EnergyMatrix, a: ColorId) -> (Vec<u64>, u64) {
    let n = e.len();
    let mut dist = vec![u64::MAX; n];
    dist[a.0] = 0;
    // Bellman-Ford on nonnegative weights; n rounds suffice.
    for _ in 0..n {
        for x in 0..n {
            for y in 0..n {
                if dist[y] != u64::MAX {
                    let cand = e.get(ColorId(x), ColorId(y)) as u64 + dist[y];
                    if cand < dist[x] {
                        dist[x] = cand;
                    }
                }
            }
        }
    }
    let excursion = (0..n)
        .filter(|&z| z != a.0)
        .map(|z| e.get(a, ColorId(z)) as u64 + dist[z])
        .min()
        .unwrap_or(u64::MAX);
    (dist, excursion)
}

/// Every path of degree at most `budget`, each exactly once, with its degree.
/// The ground path comes first; the rest follow depth-first in color-id order.
pub fn enumerate_paths(e: &EnergyMatrix, budget: u64) -> Result<Vec<(Path, u64)>> {
    let a = ground_of(e)?;
    let (dist, excursion) = ground_distances(e, a);
    if let Some(x) = (0..e.len()).find(|&x| x != a.0 && dist[x] == 0) {
        return Err(Error::InvalidMatrix(format!(
            "color {} reaches the ground at zero energy, so path degrees do not bound paths",
            e.alphabet().label(ColorId(x))
        )));
    }
    let lower = |y: ColorId| if y == a { excursion } else { dist[y.0] };
    let mut out = vec![(Path::ground(), 0)];
    let mut prefix = Vec::new();
    // `cost` is Σ_{j<s} j·E_{p(j)p(j+1)} for the current prefix of length s.
    fn extend(
        e: &EnergyMatrix,
        a: ColorId,
        budget: u64,
        lower: &dyn Fn(ColorId) -> u64,
        prefix: &mut Vec<ColorId>,
        cost: u64,
        out: &mut Vec<(Path, u64)>,
    ) {
        let s = prefix.len() as u64;
        for y in e.alphabet().ids() {
            let step = match prefix.last() {
                Some(&x) => s * e.get(x, y) as u64,
                None => 0,
            };
            let next = cost + step;
            if next.saturating_add((s + 1).saturating_mul(lower(y))) > budget {
                continue;
            }
            prefix.push(y);
            if y != a {
                let total = next + (s + 1) * e.get(y, a) as u64;
                out.push((
                    Path {
                        prefix: prefix.clone(),
                    },
                    total,
                ));
            }
            extend(e, a, budget, lower, prefix, next, out);
            prefix.pop();
        }
    }
    extend(e, a, budget, &lower, &mut prefix, 0, &mut out);
    Ok(out)
}

/// `part_D(p) ⊕ Δ`.
pub fn compose(p: &Path, delta: &PlainPartition, e: &EnergyMatrix) -> Result<ColoredPartition> {
    part_d(p, e)?.oplus(delta)
}
