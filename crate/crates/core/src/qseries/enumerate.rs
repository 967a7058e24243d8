//! Enumeration of a partition ideal one value at a time.
//!
//! Parts of value `-k` form layer `k`, a multiset of colors. Since every
//! pattern spans at most two consecutive values, membership only depends on
//! each layer and on each pair of adjacent layers. Between layers we carry
//! the previous layer with each multiplicity capped at the largest count that
//! any cross-layer pattern can ask for.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_traits::Zero;

use super::{QSeries, Specialization};
use crate::partitions::{ColorId, ColoredPart, ColoredPartition, HalfInt, Weight};
use crate::rules::DifferenceRuleSet;
use crate::{Error, Result};

type Shape = Vec<u32>;
type Runs = [(ColoredPart, u32)];

struct LayerRules {
    n: usize,
    /// Patterns living on one value, as color counts.
    intra: Vec<Shape>,
    /// Patterns on two values: counts at `-k` and counts at `-(k+1)`.
    cross: Vec<(Shape, Shape)>,
    cap: Shape,
}

fn dominated(small: &[u32], big: &[u32]) -> bool {
    small.iter().zip(big).all(|(s, b)| s <= b)
}

impl LayerRules {
    fn new(d: &DifferenceRuleSet) -> Self {
        let n = d.alphabet().len();
        let mut intra = Vec::new();
        let mut cross = Vec::new();
        let mut cap = vec![0; n];
        for p in d.patterns() {
            let mut top = vec![0; n];
            let mut deep = vec![0; n];
            for &(offset, c) in p.cells() {
                match offset {
                    0 => top[c.0] += 1,
                    1 => deep[c.0] += 1,
                    _ => unreachable!("offsets are validated when the rule set is built"),
                }
            }
            if deep.iter().all(|&x| x == 0) {
                intra.push(top);
            } else {
                for (c, &t) in cap.iter_mut().zip(&top) {
                    *c = (*c).max(t);
                }
                cross.push((top, deep));
            }
        }
        LayerRules {
            n,
            intra,
            cross,
            cap,
        }
    }

    fn layer_ok(&self, shape: &[u32]) -> bool {
        !self.intra.iter().any(|p| dominated(p, shape))
    }

    fn compatible(&self, prev: &[u32], cur: &[u32]) -> bool {
        !self
            .cross
            .iter()
            .any(|(top, deep)| dominated(top, prev) && dominated(deep, cur))
    }

    /// Bitmask of the cross patterns whose deep half fits in `cur`.
    fn signature(&self, cur: &[u32]) -> Vec<bool> {
        self.cross
            .iter()
            .map(|(_, deep)| dominated(deep, cur))
            .collect()
    }

    fn compatible_with_signature(&self, prev: &[u32], sig: &[bool]) -> bool {
        !self
            .cross
            .iter()
            .zip(sig)
            .any(|((top, _), &active)| active && dominated(top, prev))
    }

    fn key(&self, shape: &[u32]) -> Shape {
        shape
            .iter()
            .zip(&self.cap)
            .map(|(&s, &c)| s.min(c))
            .collect()
    }

    /// All valid layers whose total cost is at most `budget`, with their cost.
    fn shapes(&self, unit_cost: &[u64], budget: u64) -> Vec<(Shape, u64)> {
        fn rec(
            rules: &LayerRules,
            unit_cost: &[u64],
            budget: u64,
            c: usize,
            shape: &mut Shape,
            cost: u64,
            out: &mut Vec<(Shape, u64)>,
        ) {
            if c == rules.n {
                out.push((shape.clone(), cost));
                return;
            }
            rec(rules, unit_cost, budget, c + 1, shape, cost, out);
            let mut cost = cost;
            loop {
                cost += unit_cost[c];
                if cost > budget {
                    break;
                }
                shape[c] += 1;
                if !rules.layer_ok(shape) {
                    break;
                }
                rec(rules, unit_cost, budget, c + 1, shape, cost, out);
            }
            shape[c] = 0;
        }
        let mut out = Vec::new();
        rec(
            self,
            unit_cost,
            budget,
            0,
            &mut vec![0; self.n],
            0,
            &mut out,
        );
        out
    }
}

fn doubled_costs(spec: &Specialization, n: usize, k: u64) -> Vec<u64> {
    (0..n)
        .map(|c| spec.degree_at(ColorId(c), k).doubled() as u64)
        .collect()
}

fn check_spec(d: &DifferenceRuleSet, spec: &Specialization) -> Result<()> {
    if !crate::partitions::same_alphabet(d.alphabet(), spec.alphabet()) {
        return Err(Error::AlphabetMismatch);
    }
    spec.check_convergent()
}

/// `Σ_{π ∈ 𝒫_𝒟} q^{|π|}` through the doubled exponent `truncation`.
pub fn gen_function(
    d: &DifferenceRuleSet,
    spec: &Specialization,
    truncation: usize,
) -> Result<QSeries> {
    check_spec(d, spec)?;
    let rules = LayerRules::new(d);
    let t = truncation as u64;
    let mut dp: HashMap<Shape, Vec<BigInt>> = HashMap::new();
    let mut start = vec![BigInt::zero(); truncation + 1];
    start[0] = BigInt::from(1);
    dp.insert(vec![0; rules.n], start);
    for k in 1.. {
        let costs = doubled_costs(spec, rules.n, k);
        if costs.iter().all(|&c| c > t) {
            break;
        }
        // Shapes that activate the same cross patterns see the same set of
        // compatible predecessors, so the predecessors are summed once per
        // signature.
        let mut by_signature: BTreeMap<Vec<bool>, Vec<(Shape, u64)>> = BTreeMap::new();
        for (shape, cost) in rules.shapes(&costs, t) {
            by_signature
                .entry(rules.signature(&shape))
                .or_default()
                .push((shape, cost));
        }
        let mut next: HashMap<Shape, Vec<BigInt>> = HashMap::new();
        for (sig, shapes) in by_signature {
            let mut total = vec![BigInt::zero(); truncation + 1];
            for (prev, counts) in &dp {
                if rules.compatible_with_signature(prev, &sig) {
                    for (acc, c) in total.iter_mut().zip(counts) {
                        *acc += c;
                    }
                }
            }
            let Some(lowest) = total.iter().position(|c| !c.is_zero()) else {
                continue;
            };
            for (shape, cost) in shapes {
                let cost = cost as usize;
                if lowest + cost > truncation {
                    continue;
                }
                let entry = next
                    .entry(rules.key(&shape))
                    .or_insert_with(|| vec![BigInt::zero(); truncation + 1]);
                for e in lowest..=truncation - cost {
                    if !total[e].is_zero() {
                        entry[e + cost] += &total[e];
                    }
                }
            }
        }
        dp = next;
    }
    let mut out = vec![BigInt::zero(); truncation + 1];
    for counts in dp.values() {
        for (acc, c) in out.iter_mut().zip(counts) {
            *acc += c;
        }
    }
    Ok(QSeries::from_doubled(out))
}

/// Reference count: lists every colored partition of degree at most the
/// truncation and keeps those that pass [`DifferenceRuleSet::satisfies`].
pub fn brute_force_gen_function(
    d: &DifferenceRuleSet,
    spec: &Specialization,
    truncation: usize,
) -> Result<QSeries> {
    check_spec(d, spec)?;
    let alphabet = d.alphabet().clone();
    let t = truncation as i64;
    let mut parts = Vec::new();
    for k in 1.. {
        let row: Vec<(ColoredPart, i64)> = alphabet
            .ids()
            .map(|c| {
                (
                    ColoredPart {
                        value: -k,
                        color: c,
                    },
                    spec.degree_at(c, k as u64).doubled(),
                )
            })
            .filter(|&(_, deg)| deg <= t)
            .collect();
        if row.is_empty() {
            break;
        }
        parts.extend(row);
    }
    fn rec(
        parts: &[(ColoredPart, i64)],
        i: usize,
        budget: i64,
        deg: i64,
        chosen: &mut Vec<(ColoredPart, u32)>,
        visit: &mut dyn FnMut(&Runs, i64),
    ) {
        if i == parts.len() {
            visit(chosen, deg);
            return;
        }
        rec(parts, i + 1, budget, deg, chosen, visit);
        let (part, cost) = parts[i];
        let mut m = 0;
        while deg + (m + 1) * cost <= budget {
            m += 1;
            chosen.push((part, m as u32));
            rec(parts, i + 1, budget, deg + m * cost, chosen, visit);
            chosen.pop();
        }
    }
    let mut out = QSeries::zero(truncation);
    let mut err = None;
    rec(&parts, 0, t, 0, &mut Vec::new(), &mut |chosen, deg| {
        match ColoredPartition::from_multiplicities(alphabet.clone(), chosen.iter().copied()) {
            Ok(pi) => {
                if d.satisfies(&pi) {
                    out.coeffs_mut()[deg as usize] += 1;
                }
            }
            Err(e) => err = Some(e),
        }
    });
    match err {
        Some(e) => Err(e),
        None => Ok(out),
    }
}

/// Number of elements of `𝒫_𝒟` for each `(weight, box count)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedSeries {
    terms: BTreeMap<(Weight, u64), BigInt>,
    max_boxes: u64,
}

impl WeightedSeries {
    pub fn terms(&self) -> &BTreeMap<(Weight, u64), BigInt> {
        &self.terms
    }

    pub fn max_boxes(&self) -> u64 {
        self.max_boxes
    }

    pub fn get(&self, weight: &Weight, boxes: u64) -> BigInt {
        self.terms
            .get(&(weight.clone(), boxes))
            .cloned()
            .unwrap_or_default()
    }

    /// Number of elements with the given box count, ignoring weight.
    pub fn count_at(&self, boxes: u64) -> BigInt {
        self.terms
            .iter()
            .filter(|((_, b), _)| *b == boxes)
            .map(|(_, c)| c)
            .sum()
    }

    /// Image under a root-graded specialization, truncated at the doubled
    /// exponent `truncation`. Only exact if every partition of degree at most
    /// the truncation has at most `max_boxes` boxes.
    pub fn specialize(&self, spec: &Specialization, truncation: usize) -> Result<QSeries> {
        let mut out = QSeries::zero(truncation);
        for ((w, b), c) in &self.terms {
            let deg = spec
                .degree_of_grade(w, *b)
                .ok_or_else(|| Error::Parse("specialization has no root grading".into()))?;
            if deg < HalfInt::ZERO {
                return Err(Error::DivergentSpecialization {
                    color: w.to_string(),
                    degree: deg.to_string(),
                });
            }
            let e = deg.doubled() as usize;
            if e <= truncation {
                out.coeffs_mut()[e] += c;
            }
        }
        Ok(out)
    }
}

/// `ch(𝒫_𝒟)` through box count `max_boxes`, graded by `(weight, ‖π‖)`.
pub fn weighted_character(d: &DifferenceRuleSet, max_boxes: u64) -> WeightedSeries {
    let rules = LayerRules::new(d);
    let alphabet = d.alphabet();
    let rank = alphabet.weight_rank();
    type Grades = BTreeMap<(Weight, u64), BigInt>;
    let mut dp: HashMap<Shape, Grades> = HashMap::new();
    dp.insert(
        vec![0; rules.n],
        BTreeMap::from([((Weight::zero(rank), 0), BigInt::from(1))]),
    );
    for k in 1..=max_boxes {
        let costs = vec![k; rules.n];
        let mut next: HashMap<Shape, Grades> = HashMap::new();
        for (shape, cost) in rules.shapes(&costs, max_boxes) {
            let mut w = Weight::zero(rank);
            for (c, &m) in shape.iter().enumerate() {
                for _ in 0..m {
                    w += alphabet.weight(ColorId(c));
                }
            }
            let key = rules.key(&shape);
            for (prev, grades) in &dp {
                if !rules.compatible(prev, &shape) {
                    continue;
                }
                let entry = next.entry(key.clone()).or_default();
                for ((pw, pb), count) in grades {
                    if pb + cost <= max_boxes {
                        *entry.entry((pw + &w, pb + cost)).or_default() += count;
                    }
                }
            }
        }
        dp = next;
    }
    let mut terms = BTreeMap::new();
    for grades in dp.into_values() {
        for (g, c) in grades {
            *terms.entry(g).or_insert_with(BigInt::zero) += c;
        }
    }
    WeightedSeries { terms, max_boxes }
}

/// Every `π ∈ 𝒫_𝒟` whose cost is at most `budget`, where `cost(c, k)` is the
/// cost of the part `(-k)_c`; it must be positive and nondecreasing in `k`.
pub fn enumerate_ideal(
    d: &DifferenceRuleSet,
    cost: impl Fn(ColorId, u64) -> u64,
    budget: u64,
) -> Vec<ColoredPartition> {
    let rules = LayerRules::new(d);
    let alphabet = d.alphabet().clone();
    let mut layers: Vec<(Vec<(Shape, u64)>, u64)> = Vec::new();
    for k in 1.. {
        let costs: Vec<u64> = (0..rules.n).map(|c| cost(ColorId(c), k)).collect();
        let min = costs.iter().copied().min().unwrap_or(u64::MAX);
        assert!(min > 0, "part costs must be positive");
        if min > budget {
            break;
        }
        layers.push((rules.shapes(&costs, budget), min));
    }
    struct Walk<'a> {
        rules: &'a LayerRules,
        layers: &'a [(Vec<(Shape, u64)>, u64)],
        stack: Vec<(usize, &'a Shape)>,
        out: Vec<Vec<(ColoredPart, u32)>>,
    }
    impl<'a> Walk<'a> {
        fn go(&mut self, layer: usize, prev: Option<&'a Shape>, left: u64) {
            if layer == self.layers.len() || self.layers[layer].1 > left {
                let runs = self
                    .stack
                    .iter()
                    .flat_map(|&(l, shape)| {
                        shape
                            .iter()
                            .enumerate()
                            .filter(|(_, &m)| m > 0)
                            .map(move |(c, &m)| {
                                (
                                    ColoredPart {
                                        value: -(l as i64 + 1),
                                        color: ColorId(c),
                                    },
                                    m,
                                )
                            })
                    })
                    .collect();
                self.out.push(runs);
                return;
            }
            let layers = self.layers;
            for (shape, c) in &layers[layer].0 {
                if *c > left {
                    continue;
                }
                if let Some(p) = prev {
                    if !self.rules.compatible(p, shape) {
                        continue;
                    }
                }
                self.stack.push((layer, shape));
                self.go(layer + 1, Some(shape), left - c);
                self.stack.pop();
            }
        }
    }
    let mut walk = Walk {
        rules: &rules,
        layers: &layers,
        stack: Vec::new(),
        out: Vec::new(),
    };
    walk.go(0, None, budget);
    walk.out
        .into_iter()
        .map(|runs| {
            ColoredPartition::from_multiplicities(alphabet.clone(), runs)
                .expect("parts are built from this alphabet")
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::crystal::catalog::catalog;
    use crate::crystal::EnergyMatrix;
    use crate::partitions::Alphabet;
    use crate::rules::ForbiddenPattern;
    use proptest::prelude::*;
    use std::sync::Arc;

    fn case(name: &str) -> (DifferenceRuleSet, Specialization) {
        let entry = catalog(name).unwrap();
        let d = DifferenceRuleSet::build(&entry.matrix, entry.extras).unwrap();
        let spec = if name == "capparelli" {
            Specialization::from_root_grading(entry.alphabet, &[1, 2]).unwrap()
        } else {
            Specialization::principal(entry.alphabet)
        };
        (d, spec)
    }

    fn ints(s: &QSeries) -> Vec<i64> {
        s.integer_coeffs()
            .unwrap()
            .iter()
            .map(|c| i64::try_from(c).unwrap())
            .collect()
    }

    #[test]
    fn a2_first_terms() {
        let (d, s) = case("a2-basic");
        assert_eq!(ints(&gen_function(&d, &s, 4).unwrap()), [1, 1, 2]);
    }

    #[test]
    fn order_zero_is_one() {
        for name in ["a2-basic", "mp3-gamma-prime", "half-int-diff3"] {
            let (d, s) = case(name);
            assert_eq!(gen_function(&d, &s, 0).unwrap(), QSeries::one(0));
            assert_eq!(
                brute_force_gen_function(&d, &s, 0).unwrap(),
                QSeries::one(0)
            );
        }
    }

    #[test]
    fn distinct_parts_from_unit_matrix() {
        let (d, s) = case("distinct-single");
        assert_eq!(
            ints(&gen_function(&d, &s, 12).unwrap()),
            [1, 1, 1, 2, 2, 3, 4]
        );
    }

    #[test]
    fn agrees_with_brute_force() {
        for (name, t) in [
            ("a2-basic", 16),
            ("mp3-gamma-prime", 16),
            ("a1-four-color", 16),
            ("half-int-diff3", 16),
            ("capparelli", 20),
        ] {
            let (d, s) = case(name);
            assert_eq!(
                gen_function(&d, &s, t).unwrap(),
                brute_force_gen_function(&d, &s, t).unwrap(),
                "{name}"
            );
        }
    }

    #[test]
    fn alphabet_mismatch_is_rejected() {
        let (d, _) = case("a2-basic");
        let (_, other) = case("rr-single");
        assert!(matches!(
            gen_function(&d, &other, 4),
            Err(Error::AlphabetMismatch)
        ));
    }

    #[test]
    fn weighted_character_small_budgets() {
        let (d, _) = case("a2-basic");
        let w0 = weighted_character(&d, 0);
        assert_eq!(w0.terms().len(), 1);
        assert_eq!(w0.get(&Weight::zero(2), 0), BigInt::from(1));
        let w1 = weighted_character(&d, 1);
        assert_eq!(w1.count_at(1), BigInt::from(9));
        for c in d.alphabet().colors() {
            assert!(w1.get(&c.weight, 1) >= BigInt::from(1), "{}", c.label);
        }
    }

    #[test]
    fn weighted_character_specializes_to_gen_function() {
        let (d, s) = case("a2-basic");
        for b in 0..=8u64 {
            let w = weighted_character(&d, b);
            let t = 2 * b as usize;
            assert_eq!(
                w.specialize(&s, t).unwrap(),
                gen_function(&d, &s, t).unwrap(),
                "B={b}"
            );
        }
    }

    #[test]
    fn weighted_character_matches_ideal_listing() {
        let (d, _) = case("a2-basic");
        let w = weighted_character(&d, 7);
        let mut counts: BTreeMap<(Weight, u64), BigInt> = BTreeMap::new();
        for pi in enumerate_ideal(&d, |_, k| k, 7) {
            assert!(d.satisfies(&pi));
            *counts.entry((pi.weight(), pi.box_count())).or_default() += 1;
        }
        assert_eq!(&counts, w.terms());
    }

    #[test]
    fn ideal_listing_is_complete() {
        let (d, s) = case("mp3-gamma-prime");
        let listed = enumerate_ideal(&d, |c, k| s.degree_at(c, k).doubled() as u64, 20);
        let mut series = QSeries::zero(20);
        for pi in &listed {
            series.coeffs_mut()[pi.specialized_degree(&s).doubled() as usize] += 1;
        }
        assert_eq!(series, brute_force_gen_function(&d, &s, 20).unwrap());
    }

    type Extra = (u32, usize, u32, usize);

    fn random_rules() -> impl Strategy<Value = (Vec<Vec<u8>>, Vec<Extra>)> {
        (
            prop::collection::vec(prop::collection::vec(0u8..3, 3), 3),
            prop::collection::vec((0u32..2, 0usize..3, 0u32..2, 0usize..3), 0..2),
        )
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]
        #[test]
        fn random_matrices_agree_with_brute_force((rows, extras) in random_rules()) {
            let colors = ["1", "2", "3"]
                .iter()
                .zip([1i64, 0, -1])
                .map(|(l, w)| (l.to_string(), Weight::from_roots(&[w])))
                .collect();
            let a = Arc::new(Alphabet::descending_labels(colors, None).unwrap());
            let e = EnergyMatrix::new(a.clone(), rows).unwrap();
            let extras = extras
                .into_iter()
                .map(|(o1, c1, o2, c2)| {
                    ForbiddenPattern::new(vec![(o1, ColorId(c1)), (o2, ColorId(c2)), (0, ColorId(0))])
                        .unwrap()
                })
                .collect();
            let d = DifferenceRuleSet::build(&e, extras).unwrap();
            let s = Specialization::principal(a);
            prop_assert_eq!(
                gen_function(&d, &s, 14).unwrap(),
                brute_force_gen_function(&d, &s, 14).unwrap()
            );
        }
    }
}
