//! Finite crystal graphs, weight propagation and the energy function on the
//! tensor square.
//!
//! The tensor product follows Kashiwara's signature rule: `f̃ᵢ(b₁⊗b₂)` acts on
//! the left factor iff `φᵢ(b₁) > εᵢ(b₂)`. Along a `0`-arrow the energy drops by
//! one when the left factor moves and rises by one when the right factor
//! moves; it is constant along every other arrow. This is the unique choice of
//! conventions under which the `A₂⁽¹⁾` crystal reproduces its published
//! difference matrix.

pub mod catalog;

use std::collections::VecDeque;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::partitions::{Alphabet, ColorId, Weight};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub source: ColorId,
    pub label: usize,
    pub target: ColorId,
}

/// A colored graph whose `i`-arrows are the Kashiwara operators `f̃ᵢ`,
/// `i = 0..=rank`.
#[derive(Clone, Debug)]
pub struct CrystalGraph {
    alphabet: Arc<Alphabet>,
    rank: usize,
    arrows: Vec<Arrow>,
    /// `next[i][v]` is `f̃ᵢ v`.
    next: Vec<Vec<Option<ColorId>>>,
    /// `prev[i][v]` is `ẽᵢ v`.
    prev: Vec<Vec<Option<ColorId>>>,
}

impl CrystalGraph {
    pub fn new(alphabet: Arc<Alphabet>, rank: usize, arrows: Vec<Arrow>) -> Result<Self> {
        let n = alphabet.len();
        let mut next = vec![vec![None; n]; rank + 1];
        let mut prev = vec![vec![None; n]; rank + 1];
        for a in &arrows {
            if a.label > rank {
                return Err(Error::InvalidCrystal(format!(
                    "arrow label {} exceeds rank {rank}",
                    a.label
                )));
            }
            if !alphabet.contains_id(a.source) || !alphabet.contains_id(a.target) {
                return Err(Error::InvalidCrystal(
                    "arrow endpoint outside the alphabet".into(),
                ));
            }
            let (s, t) = (alphabet.label(a.source), alphabet.label(a.target));
            if next[a.label][a.source.0].replace(a.target).is_some() {
                return Err(Error::InvalidCrystal(format!(
                    "`{s}` has two outgoing {}-arrows",
                    a.label
                )));
            }
            if prev[a.label][a.target.0].replace(a.source).is_some() {
                return Err(Error::InvalidCrystal(format!(
                    "`{t}` has two incoming {}-arrows",
                    a.label
                )));
            }
        }
        // Strings must be finite for the signature rule to make sense.
        for (label, succ) in next.iter().enumerate() {
            for start in 0..n {
                let mut v = start;
                for _ in 0..n {
                    match succ[v] {
                        Some(w) if w.0 == start => {
                            return Err(Error::InvalidCrystal(format!(
                                "{label}-arrows form a cycle through `{}`",
                                alphabet.label(ColorId(start))
                            )))
                        }
                        Some(w) => v = w.0,
                        None => break,
                    }
                }
            }
        }
        Ok(CrystalGraph {
            alphabet,
            rank,
            arrows,
            next,
            prev,
        })
    }

    /// Builds a graph from `(source, label, target)` color labels.
    pub fn from_labels(
        alphabet: Arc<Alphabet>,
        rank: usize,
        arrows: &[(&str, usize, &str)],
    ) -> Result<Self> {
        let arrows = arrows
            .iter()
            .map(|&(s, i, t)| {
                Ok(Arrow {
                    source: alphabet.find(s)?,
                    label: i,
                    target: alphabet.find(t)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        CrystalGraph::new(alphabet, rank, arrows)
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    /// `ℓ`; labels run over `0..=ℓ`.
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn f(&self, v: ColorId, label: usize) -> Option<ColorId> {
        self.next[label][v.0]
    }

    pub fn e(&self, v: ColorId, label: usize) -> Option<ColorId> {
        self.prev[label][v.0]
    }

    /// `(εᵢ(v), φᵢ(v))`: lengths of the `i`-string above and below `v`.
    pub fn epsilon_phi(&self, v: ColorId, label: usize) -> (u32, u32) {
        let walk = |table: &Vec<Option<ColorId>>| {
            let mut len = 0;
            let mut cur = v;
            while let Some(w) = table[cur.0] {
                cur = w;
                len += 1;
            }
            len
        };
        (walk(&self.prev[label]), walk(&self.next[label]))
    }

    /// Propagates classical weights from the ground letter: an `i`-arrow
    /// subtracts `αᵢ`, a `0`-arrow adds `theta` (the highest root).
    pub fn solve_weights(&self, theta: &Weight) -> Result<Vec<Weight>> {
        if theta.rank() != self.rank {
            return Err(Error::WeightInconsistent(format!(
                "theta has rank {}, graph has rank {}",
                theta.rank(),
                self.rank
            )));
        }
        let ground = self.alphabet.ground().ok_or(Error::NoGround)?;
        let step = |label: usize| -> Weight {
            if label == 0 {
                theta.clone()
            } else {
                -&simple_root(self.rank, label)
            }
        };
        let n = self.alphabet.len();
        let mut wt: Vec<Option<Weight>> = vec![None; n];
        wt[ground.0] = Some(Weight::zero(self.rank));
        let mut queue = VecDeque::from([ground]);
        while let Some(v) = queue.pop_front() {
            let here = wt[v.0].clone().expect("queued vertices have weights");
            let moves = self.arrows.iter().filter_map(|a| {
                if a.source == v {
                    Some((a.target, &here + &step(a.label)))
                } else if a.target == v {
                    Some((a.source, &here - &step(a.label)))
                } else {
                    None
                }
            });
            for (w, candidate) in moves.collect::<Vec<_>>() {
                match &wt[w.0] {
                    Some(existing) if *existing != candidate => {
                        return Err(Error::WeightInconsistent(format!(
                            "`{}` reached with weights {existing} and {candidate}",
                            self.alphabet.label(w)
                        )))
                    }
                    Some(_) => {}
                    None => {
                        wt[w.0] = Some(candidate);
                        queue.push_back(w);
                    }
                }
            }
        }
        wt.into_iter()
            .enumerate()
            .map(|(i, w)| {
                w.ok_or_else(|| {
                    Error::WeightInconsistent(format!(
                        "`{}` is not connected to the ground letter",
                        self.alphabet.label(ColorId(i))
                    ))
                })
            })
            .collect()
    }

    /// Same graph over an alphabet carrying the solved weights.
    pub fn with_solved_weights(&self, theta: &Weight) -> Result<CrystalGraph> {
        let weights = self.solve_weights(theta)?;
        let alphabet = Arc::new(self.alphabet.with_weights(weights)?);
        CrystalGraph::new(alphabet, self.rank, self.arrows.clone())
    }

    /// Same graph over a relabelled copy of the alphabet (e.g. a new order).
    pub fn with_alphabet(&self, alphabet: Arc<Alphabet>) -> Result<CrystalGraph> {
        if alphabet.len() != self.alphabet.len() {
            return Err(Error::AlphabetMismatch);
        }
        CrystalGraph::new(alphabet, self.rank, self.arrows.clone())
    }

    /// `B ⊗ B` with vertex `(left, right)` stored at index `left·n + right`.
    pub fn tensor_square(&self) -> TensorSquare {
        let n = self.alphabet.len();
        let a = &self.alphabet;
        let mut colors = Vec::with_capacity(n * n);
        for l in a.ids() {
            for r in a.ids() {
                colors.push((
                    format!("{}⊗{}", a.label(l), a.label(r)),
                    a.weight(l) + a.weight(r),
                ));
            }
        }
        let ground = a.ground().map(|g| ColorId(g.0 * n + g.0));
        let alphabet = Alphabet::new(colors, (0..n * n).map(ColorId).collect(), ground)
            .expect("tensor square alphabet is well formed");

        let strings: Vec<Vec<(u32, u32)>> = (0..=self.rank)
            .map(|i| a.ids().map(|v| self.epsilon_phi(v, i)).collect())
            .collect();
        let mut arrows = Vec::new();
        for l in a.ids() {
            for r in a.ids() {
                for (i, string) in strings.iter().enumerate() {
                    let phi_left = string[l.0].1;
                    let eps_right = string[r.0].0;
                    let target = if phi_left > eps_right {
                        self.f(l, i).map(|l2| (l2, r))
                    } else {
                        self.f(r, i).map(|r2| (l, r2))
                    };
                    if let Some((l2, r2)) = target {
                        arrows.push(Arrow {
                            source: ColorId(l.0 * n + r.0),
                            label: i,
                            target: ColorId(l2.0 * n + r2.0),
                        });
                    }
                }
            }
        }
        let graph = CrystalGraph::new(Arc::new(alphabet), self.rank, arrows)
            .expect("tensor product of crystal graphs is a crystal graph");
        TensorSquare { graph, factors: n }
    }

    /// The energy function `H` on `B ⊗ B`, normalized to minimum 0 on every
    /// connected component.
    pub fn energy_function(&self) -> Result<EnergyFunction> {
        let square = self.tensor_square();
        let g = &square.graph;
        let n2 = g.alphabet.len();
        let mut adjacency: Vec<Vec<(usize, i64)>> = vec![Vec::new(); n2];
        for arrow in g.arrows() {
            let delta = if arrow.label != 0 {
                0
            } else if square.acts_on_left(arrow) {
                -1
            } else {
                1
            };
            adjacency[arrow.source.0].push((arrow.target.0, delta));
            adjacency[arrow.target.0].push((arrow.source.0, -delta));
        }
        let mut values: Vec<Option<i64>> = vec![None; n2];
        let mut component = vec![usize::MAX; n2];
        let mut components = 0;
        for start in 0..n2 {
            if values[start].is_some() {
                continue;
            }
            values[start] = Some(0);
            component[start] = components;
            let mut members = vec![start];
            let mut stack = vec![start];
            while let Some(v) = stack.pop() {
                let hv = values[v].unwrap();
                for &(w, d) in &adjacency[v] {
                    match values[w] {
                        Some(hw) if hw != hv + d => {
                            return Err(Error::NoEnergyFunction(format!(
                                "inconsistent values at {}",
                                g.alphabet.label(ColorId(w))
                            )))
                        }
                        Some(_) => {}
                        None => {
                            values[w] = Some(hv + d);
                            component[w] = components;
                            members.push(w);
                            stack.push(w);
                        }
                    }
                }
            }
            let min = members.iter().map(|&v| values[v].unwrap()).min().unwrap();
            for &v in &members {
                values[v] = values[v].map(|h| h - min);
            }
            components += 1;
        }
        Ok(EnergyFunction {
            square,
            values: values.into_iter().map(Option::unwrap).collect(),
            component,
            components,
        })
    }

    /// `E_{αβ} = H(β⊗α)`.
    pub fn solve_energy(&self) -> Result<EnergyMatrix> {
        self.energy_function()?.matrix(self.alphabet.clone())
    }
}

pub(crate) fn simple_root(rank: usize, label: usize) -> Weight {
    let mut coords = vec![0; rank];
    coords[label - 1] = 1;
    Weight::from_roots(&coords)
}

#[derive(Clone, Debug)]
pub struct TensorSquare {
    graph: CrystalGraph,
    factors: usize,
}

impl TensorSquare {
    pub fn graph(&self) -> &CrystalGraph {
        &self.graph
    }

    pub fn vertex(&self, left: ColorId, right: ColorId) -> ColorId {
        ColorId(left.0 * self.factors + right.0)
    }

    pub fn pair(&self, v: ColorId) -> (ColorId, ColorId) {
        (ColorId(v.0 / self.factors), ColorId(v.0 % self.factors))
    }

    pub fn acts_on_left(&self, arrow: &Arrow) -> bool {
        self.pair(arrow.source).0 != self.pair(arrow.target).0
    }
}

#[derive(Clone, Debug)]
pub struct EnergyFunction {
    square: TensorSquare,
    values: Vec<i64>,
    component: Vec<usize>,
    components: usize,
}

impl EnergyFunction {
    pub fn square(&self) -> &TensorSquare {
        &self.square
    }

    /// `H(left ⊗ right)`.
    pub fn value(&self, left: ColorId, right: ColorId) -> i64 {
        self.values[self.square.vertex(left, right).0]
    }

    pub fn value_at(&self, v: ColorId) -> i64 {
        self.values[v.0]
    }

    /// Number of connected components of the tensor square; with more than one
    /// the normalization is a choice per component.
    pub fn components(&self) -> usize {
        self.components
    }

    pub fn component_of(&self, v: ColorId) -> usize {
        self.component[v.0]
    }

    pub fn matrix(&self, alphabet: Arc<Alphabet>) -> Result<EnergyMatrix> {
        let n = alphabet.len();
        let mut rows = vec![vec![0u8; n]; n];
        for alpha in alphabet.ids() {
            for beta in alphabet.ids() {
                let h = self.value(beta, alpha);
                if !(0..=2).contains(&h) {
                    return Err(Error::EnergyOutOfRange {
                        pair: format!("{}⊗{}", alphabet.label(beta), alphabet.label(alpha)),
                        value: h,
                    });
                }
                rows[alpha.0][beta.0] = h as u8;
            }
        }
        EnergyMatrix::new(alphabet, rows)
    }
}

/// Square `{0,1,2}`-matrix indexed by colors; `get(α, β) = E_{αβ}`.
#[derive(Clone, Debug)]
pub struct EnergyMatrix {
    alphabet: Arc<Alphabet>,
    rows: Vec<Vec<u8>>,
}

impl EnergyMatrix {
    pub fn new(alphabet: Arc<Alphabet>, rows: Vec<Vec<u8>>) -> Result<Self> {
        let n = alphabet.len();
        if rows.len() != n || rows.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidMatrix(format!("expected a {n}×{n} matrix")));
        }
        if let Some(v) = rows.iter().flatten().find(|&&v| v > 2) {
            return Err(Error::InvalidMatrix(format!("entry {v} outside {{0,1,2}}")));
        }
        Ok(EnergyMatrix { alphabet, rows })
    }

    pub fn from_rows<const N: usize>(alphabet: Arc<Alphabet>, rows: &[[u8; N]]) -> Result<Self> {
        EnergyMatrix::new(alphabet, rows.iter().map(|r| r.to_vec()).collect())
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn get(&self, alpha: ColorId, beta: ColorId) -> u8 {
        self.rows[alpha.0][beta.0]
    }

    pub fn rows(&self) -> &[Vec<u8>] {
        &self.rows
    }

    pub fn with_alphabet(&self, alphabet: Arc<Alphabet>) -> Result<EnergyMatrix> {
        EnergyMatrix::new(alphabet, self.rows.clone())
    }

    /// The entry at the ground pair, if the alphabet has a ground letter.
    pub fn ground_entry(&self) -> Option<u8> {
        self.alphabet.ground().map(|a| self.get(a, a))
    }
}

impl PartialEq for EnergyMatrix {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows && crate::partitions::same_alphabet(&self.alphabet, &other.alphabet)
    }
}

impl fmt::Display for EnergyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(u8::to_string).collect();
            writeln!(f, "{}", cells.join(" "))?;
        }
        Ok(())
    }
}

/// Serialized form of a custom crystal: colors by label, arrows as
/// `[source, label, target]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrystalRecord {
    pub colors: Vec<String>,
    pub arrows: Vec<(String, usize, String)>,
    #[serde(default)]
    pub ground: Option<String>,
    /// Defaults to the largest label used by an arrow.
    #[serde(default)]
    pub rank: Option<usize>,
    /// Highest root in simple-root coordinates; defaults to `α₁+…+α_ℓ`.
    #[serde(default)]
    pub theta: Option<Vec<i64>>,
}

impl CrystalRecord {
    /// Builds the graph (colors ordered `first ≻ … ≻ last`) and solves its weights.
    pub fn build(&self) -> Result<CrystalGraph> {
        let rank = self
            .rank
            .unwrap_or_else(|| self.arrows.iter().map(|a| a.1).max().unwrap_or(0));
        let colors = self
            .colors
            .iter()
            .map(|l| (l.clone(), Weight::zero(rank)))
            .collect();
        let alphabet = Arc::new(Alphabet::descending_labels(colors, self.ground.as_deref())?);
        let arrows: Vec<(&str, usize, &str)> = self
            .arrows
            .iter()
            .map(|(s, i, t)| (s.as_str(), *i, t.as_str()))
            .collect();
        let graph = CrystalGraph::from_labels(alphabet, rank, &arrows)?;
        let theta = match &self.theta {
            Some(t) => Weight::from_roots(t),
            None => Weight::from_roots(&vec![1; rank]),
        };
        graph.with_solved_weights(&theta)
    }
}
