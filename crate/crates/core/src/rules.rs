//! Difference conditions: the forbidden-pattern set `𝒟` generated by an
//! energy matrix, membership in the partition ideal `𝒫_𝒟`, and the structural
//! properties of `E` that make the path-space argument go through.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::crystal::EnergyMatrix;
use crate::partitions::{Alphabet, ColorId, ColoredPart, ColoredPartition};
use crate::{Error, Result};

/// A translation-invariant family of partitions: cell `(offset, color)` is
/// instantiated at base value `i < 0` as the part `(i - offset)_color`.
///
/// Cells are kept sorted and offsets normalized so the smallest one is 0.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ForbiddenPattern {
    cells: Vec<(u32, ColorId)>,
}

impl ForbiddenPattern {
    pub fn new(mut cells: Vec<(u32, ColorId)>) -> Result<Self> {
        let min = cells
            .iter()
            .map(|c| c.0)
            .min()
            .ok_or_else(|| Error::InvalidPattern("empty pattern".into()))?;
        for c in &mut cells {
            c.0 -= min;
        }
        cells.sort();
        Ok(ForbiddenPattern { cells })
    }

    pub fn from_labels(alphabet: &Alphabet, cells: &[(u32, &str)]) -> Result<Self> {
        let cells = cells
            .iter()
            .map(|&(o, l)| Ok((o, alphabet.find(l)?)))
            .collect::<Result<Vec<_>>>()?;
        ForbiddenPattern::new(cells)
    }

    /// Same-value pair `i_α i_β`.
    pub fn same_value(alpha: ColorId, beta: ColorId) -> Self {
        ForbiddenPattern::new(vec![(0, alpha), (0, beta)]).expect("nonempty")
    }

    /// Consecutive pair `(i-1)_α i_β`.
    pub fn consecutive(alpha: ColorId, beta: ColorId) -> Self {
        ForbiddenPattern::new(vec![(1, alpha), (0, beta)]).expect("nonempty")
    }

    pub fn cells(&self) -> &[(u32, ColorId)] {
        &self.cells
    }

    pub fn max_offset(&self) -> u32 {
        self.cells.iter().map(|c| c.0).max().unwrap_or(0)
    }

    pub fn instance(&self, alphabet: Arc<Alphabet>, base: i64) -> Result<ColoredPartition> {
        let parts = self
            .cells
            .iter()
            .map(|&(o, c)| ColoredPart::new(base - o as i64, c))
            .collect::<Result<Vec<_>>>()?;
        ColoredPartition::from_parts(alphabet, parts)
    }

    /// Whether `pi` contains the instance at `base`.
    fn matches_at(&self, pi: &ColoredPartition, base: i64) -> bool {
        let mut i = 0;
        while i < self.cells.len() {
            let cell = self.cells[i];
            let need = self.cells[i..].iter().take_while(|&&c| c == cell).count() as u32;
            let part = ColoredPart {
                value: base - cell.0 as i64,
                color: cell.1,
            };
            if pi.multiplicity(part) < need {
                return false;
            }
            i += need as usize;
        }
        true
    }

    pub fn display<'a>(&'a self, alphabet: &'a Alphabet) -> impl fmt::Display + 'a {
        PatternDisplay {
            pattern: self,
            alphabet,
        }
    }
}

struct PatternDisplay<'a> {
    pattern: &'a ForbiddenPattern,
    alphabet: &'a Alphabet,
}

impl fmt::Display for PatternDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<String> = self
            .pattern
            .cells
            .iter()
            .rev()
            .map(|&(o, c)| match o {
                0 => format!("i_{}", self.alphabet.label(c)),
                _ => format!("(i-{o})_{}", self.alphabet.label(c)),
            })
            .collect();
        write!(f, "{}", cells.join(" "))
    }
}

/// The set `𝒟`: pairs generated from an energy matrix plus explicit extras.
#[derive(Clone, Debug)]
pub struct DifferenceRuleSet {
    matrix: EnergyMatrix,
    extras: Vec<ForbiddenPattern>,
    patterns: Vec<ForbiddenPattern>,
    pair_local: bool,
}

impl DifferenceRuleSet {
    /// Generates `{i_α i_β | E_{αβ}E_{βα} ≥ 1} ∪ {(i-1)_α i_β | E_{αβ} = 2}`
    /// and appends `extras`. Every pattern must span at most two consecutive
    /// values.
    pub fn build(matrix: &EnergyMatrix, extras: Vec<ForbiddenPattern>) -> Result<Self> {
        let alphabet = matrix.alphabet();
        for p in &extras {
            if let Some(&(_, c)) = p.cells().iter().find(|&&(_, c)| !alphabet.contains_id(c)) {
                return Err(Error::UnknownColor(c.to_string()));
            }
            if p.max_offset() > 1 {
                return Err(Error::InvalidPattern(format!(
                    "pattern {} spans more than two consecutive values",
                    p.display(alphabet)
                )));
            }
        }
        let mut set = BTreeSet::new();
        for a in alphabet.ids() {
            for b in alphabet.ids() {
                if matrix.get(a, b) * matrix.get(b, a) >= 1 {
                    set.insert(ForbiddenPattern::same_value(a, b));
                }
                if matrix.get(a, b) == 2 {
                    set.insert(ForbiddenPattern::consecutive(a, b));
                }
            }
        }
        set.extend(extras.iter().cloned());
        let pair_local = extras.is_empty() && check_order_compat(matrix).holds;
        Ok(DifferenceRuleSet {
            matrix: matrix.clone(),
            extras,
            patterns: set.into_iter().collect(),
            pair_local,
        })
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        self.matrix.alphabet()
    }

    pub fn matrix(&self) -> &EnergyMatrix {
        &self.matrix
    }

    pub fn extras(&self) -> &[ForbiddenPattern] {
        &self.extras
    }

    pub fn patterns(&self) -> &[ForbiddenPattern] {
        &self.patterns
    }

    /// Membership in `𝒫_𝒟`: no instance of any pattern is contained in `pi`.
    pub fn satisfies(&self, pi: &ColoredPartition) -> bool {
        let Some(min) = pi.min_value() else {
            return true;
        };
        self.patterns.iter().all(|p| {
            let lowest_base = min + p.max_offset() as i64;
            (lowest_base..0).all(|base| !p.matches_at(pi, base))
        })
    }

    /// Whether the two-part partition `a b` lies in `𝒫_𝒟`; `a ≼ b` expected.
    ///
    /// Without extras and with an order-compatible matrix this is the gap
    /// criterion `|i - j| ≥ E_{αβ}`; otherwise full containment is used.
    pub fn pair_admissible(&self, a: ColoredPart, b: ColoredPart) -> bool {
        if self.pair_local {
            (a.value - b.value).unsigned_abs() >= self.matrix.get(a.color, b.color) as u64
        } else {
            self.pair_admissible_by_containment(a, b)
        }
    }

    pub fn pair_admissible_by_containment(&self, a: ColoredPart, b: ColoredPart) -> bool {
        let pi = ColoredPartition::from_parts(self.alphabet().clone(), [a, b])
            .expect("parts come from this alphabet");
        self.satisfies(&pi)
    }

    /// Whether the two-part partition `a b` is itself an element of `𝒟`.
    pub fn pair_in_d(&self, a: ColoredPart, b: ColoredPart) -> bool {
        let alphabet = self.alphabet().clone();
        let pi = ColoredPartition::from_parts(alphabet.clone(), [a, b])
            .expect("parts come from this alphabet");
        self.patterns
            .iter()
            .filter(|p| p.cells().len() == 2)
            .any(|p| {
                [a.value, a.value + 1, b.value, b.value + 1]
                    .into_iter()
                    .filter(|&base| base < 0 && base - (p.max_offset() as i64) < 0)
                    .any(|base| {
                        p.instance(alphabet.clone(), base)
                            .map(|inst| inst == pi)
                            .unwrap_or(false)
                    })
            })
    }

    pub fn to_record(&self) -> RuleSetRecord {
        let a = self.alphabet();
        RuleSetRecord {
            matrix: self.matrix.rows().to_vec(),
            extras: self
                .extras
                .iter()
                .map(|p| {
                    p.cells()
                        .iter()
                        .map(|&(o, c)| (o, a.label(c).to_string()))
                        .collect()
                })
                .collect(),
        }
    }

    pub fn from_record(record: &RuleSetRecord, alphabet: Arc<Alphabet>) -> Result<Self> {
        let matrix = EnergyMatrix::new(alphabet.clone(), record.matrix.clone())?;
        let extras = record
            .extras
            .iter()
            .map(|cells| {
                let cells: Vec<(u32, &str)> = cells.iter().map(|(o, l)| (*o, l.as_str())).collect();
                ForbiddenPattern::from_labels(&alphabet, &cells)
            })
            .collect::<Result<Vec<_>>>()?;
        DifferenceRuleSet::build(&matrix, extras)
    }
}

/// JSON form of a rule set; extras list `[offset, color]` cells per pattern.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RuleSetRecord {
    pub matrix: Vec<Vec<u8>>,
    #[serde(default)]
    pub extras: Vec<Vec<(u32, String)>>,
}

/// Result of a structural check, with (a bounded number of) counterexamples.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckOutcome<W> {
    pub holds: bool,
    pub witnesses: Vec<W>,
}

const MAX_WITNESSES: usize = 16;

impl<W> CheckOutcome<W> {
    fn collect(all: impl Iterator<Item = W>) -> Self {
        let witnesses: Vec<W> = all.take(MAX_WITNESSES).collect();
        CheckOutcome {
            holds: witnesses.is_empty(),
            witnesses,
        }
    }
}

/// `E_{αγ} ≤ E_{αβ} + E_{βγ}` for all triples; witnesses are `(α, β, γ)`.
pub fn check_triangle(e: &EnergyMatrix) -> CheckOutcome<(ColorId, ColorId, ColorId)> {
    let ids: Vec<ColorId> = e.alphabet().ids().collect();
    let triples = ids.iter().flat_map(|&a| {
        let ids = &ids;
        ids.iter()
            .flat_map(move |&b| ids.iter().map(move |&c| (a, b, c)))
    });
    CheckOutcome::collect(triples.filter(|&(a, b, c)| e.get(a, c) > e.get(a, b) + e.get(b, c)))
}

/// `E_{αβ} = 0 ⇒ α ≼ β` in the alphabet's order; witnesses are `(α, β)`.
pub fn check_order_compat(e: &EnergyMatrix) -> CheckOutcome<(ColorId, ColorId)> {
    let a = e.alphabet();
    let pairs = a.ids().flat_map(|x| a.ids().map(move |y| (x, y)));
    CheckOutcome::collect(pairs.filter(|&(x, y)| e.get(x, y) == 0 && !a.precedes(x, y)))
}

/// A total order (smallest first) in which `E_{αβ} = 0` implies `α ≼ β`,
/// found by topological sort with ties broken by color id.
pub fn derive_order(e: &EnergyMatrix) -> Option<Vec<ColorId>> {
    let a = e.alphabet();
    let n = a.len();
    let mut indegree = vec![0usize; n];
    for x in a.ids() {
        for y in a.ids() {
            if x != y && e.get(x, y) == 0 {
                indegree[y.0] += 1;
            }
        }
    }
    let mut ready: BTreeSet<usize> = (0..n).filter(|&i| indegree[i] == 0).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(x) = ready.pop_first() {
        order.push(ColorId(x));
        for (y, deg) in indegree.iter_mut().enumerate() {
            if y != x && e.get(ColorId(x), ColorId(y)) == 0 {
                *deg -= 1;
                if *deg == 0 {
                    ready.insert(y);
                }
            }
        }
    }
    (order.len() == n).then_some(order)
}

/// `E_{σα,σβ} = E_{αβ}` for all pairs; `sigma[α]` is the image of `α`.
pub fn check_symmetry(e: &EnergyMatrix, sigma: &[ColorId]) -> Result<bool> {
    let n = e.len();
    let mut seen = vec![false; n];
    if sigma.len() != n {
        return Err(Error::InvalidPattern(
            "permutation has the wrong length".into(),
        ));
    }
    for s in sigma {
        if s.0 >= n || std::mem::replace(&mut seen[s.0], true) {
            return Err(Error::InvalidPattern(
                "not a permutation of the colors".into(),
            ));
        }
    }
    let a = e.alphabet();
    Ok(a.ids().all(|x| {
        a.ids()
            .all(|y| e.get(sigma[x.0], sigma[y.0]) == e.get(x, y))
    }))
}

/// Permutation from label transpositions, e.g. `[("2","3"), ("5","6")]`.
pub fn permutation_from_swaps(alphabet: &Alphabet, swaps: &[(&str, &str)]) -> Result<Vec<ColorId>> {
    let mut sigma: Vec<ColorId> = alphabet.ids().collect();
    for &(x, y) in swaps {
        let (x, y) = (alphabet.find(x)?, alphabet.find(y)?);
        sigma.swap(x.0, y.0);
    }
    Ok(sigma)
}

/// The local triple condition: for `i_α ≼ j_β ≼ k_γ` with `|i - k| ≤ 1` and
/// `i_α k_γ ∈ 𝒟`, one of `i_α j_β`, `j_β k_γ` is in `𝒟` too. Checked over all
/// colors and the three value layouts.
pub fn check_local_triples(
    d: &DifferenceRuleSet,
) -> CheckOutcome<(ColoredPart, ColoredPart, ColoredPart)> {
    let a = d.alphabet().clone();
    let layouts = [(-2, -2, -2), (-2, -2, -1), (-2, -1, -1)];
    let mut triples = Vec::new();
    for &(i, j, k) in &layouts {
        for x in a.ids() {
            for y in a.ids() {
                for z in a.ids() {
                    triples.push((
                        ColoredPart { value: i, color: x },
                        ColoredPart { value: j, color: y },
                        ColoredPart { value: k, color: z },
                    ));
                }
            }
        }
    }
    let precedes = |p: &ColoredPart, q: &ColoredPart| {
        p.value < q.value || (p.value == q.value && a.precedes(p.color, q.color))
    };
    CheckOutcome::collect(triples.into_iter().filter(|(p, q, r)| {
        precedes(p, q)
            && precedes(q, r)
            && d.pair_in_d(*p, *r)
            && !d.pair_in_d(*p, *q)
            && !d.pair_in_d(*q, *r)
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::crystal::catalog::{catalog, A2_PRINTED};
    use crate::partitions::Weight;

    fn a2_rules() -> DifferenceRuleSet {
        let entry = catalog("a2-basic").unwrap();
        DifferenceRuleSet::build(&entry.matrix, vec![]).unwrap()
    }

    fn single(entry: u8) -> DifferenceRuleSet {
        let a = Arc::new(
            Alphabet::descending_labels(vec![("1".into(), Weight::zero(0))], None).unwrap(),
        );
        let m = EnergyMatrix::new(a, vec![vec![entry]]).unwrap();
        DifferenceRuleSet::build(&m, vec![]).unwrap()
    }

    fn part(d: &DifferenceRuleSet, v: i64, l: &str) -> ColoredPart {
        ColoredPart::new(v, d.alphabet().find(l).unwrap()).unwrap()
    }

    fn pi(d: &DifferenceRuleSet, parts: &[(i64, &str)]) -> ColoredPartition {
        ColoredPartition::from_labels(d.alphabet().clone(), parts).unwrap()
    }

    #[test]
    fn build_examples() {
        let d = a2_rules();
        let a = d.alphabet();
        let (eight, nine) = (a.find("8").unwrap(), a.find("9").unwrap());
        assert!(d
            .patterns()
            .contains(&ForbiddenPattern::same_value(eight, nine)));
        assert!(d
            .patterns()
            .contains(&ForbiddenPattern::consecutive(eight, nine)));
        assert!(single(0).patterns().is_empty());
        let two = single(2);
        assert_eq!(two.patterns().len(), 2);
        let one = ColorId(0);
        assert!(two
            .patterns()
            .contains(&ForbiddenPattern::same_value(one, one)));
        assert!(two
            .patterns()
            .contains(&ForbiddenPattern::consecutive(one, one)));
    }

    #[test]
    fn extras_are_validated() {
        let entry = catalog("a2-basic").unwrap();
        let wide = ForbiddenPattern::new(vec![(2, ColorId(0)), (0, ColorId(1))]).unwrap();
        assert!(matches!(
            DifferenceRuleSet::build(&entry.matrix, vec![wide]),
            Err(Error::InvalidPattern(_))
        ));
        let stray = ForbiddenPattern::new(vec![(0, ColorId(40))]).unwrap();
        assert!(matches!(
            DifferenceRuleSet::build(&entry.matrix, vec![stray]),
            Err(Error::UnknownColor(_))
        ));
        assert!(ForbiddenPattern::new(vec![]).is_err());
    }

    #[test]
    fn satisfies_examples() {
        let d = a2_rules();
        assert!(!d.satisfies(&pi(&d, &[(-5, "1"), (-3, "8"), (-2, "9")])));
        assert!(d.satisfies(&ColoredPartition::empty(d.alphabet().clone())));
        assert!(d.satisfies(&pi(&d, &[(-1, "4"), (-1, "4")])));
        assert!(d.satisfies(&pi(&d, &[(-5, "1"), (-3, "8")])));
    }

    #[test]
    fn satisfies_agrees_with_explicit_instances() {
        let d = a2_rules();
        let a = d.alphabet().clone();
        let candidates = [
            pi(&d, &[(-2, "1"), (-1, "9")]),
            pi(&d, &[(-3, "9"), (-1, "1"), (-1, "5")]),
            pi(&d, &[(-2, "6"), (-2, "1")]),
            pi(&d, &[(-2, "5"), (-2, "1")]),
        ];
        for c in &candidates {
            let min = c.min_value().unwrap();
            let brute = d.patterns().iter().all(|p| {
                (min..0).all(|base| match p.instance(a.clone(), base) {
                    Ok(inst) => !c.contains(&inst).unwrap(),
                    Err(_) => true,
                })
            });
            assert_eq!(d.satisfies(c), brute, "{c}");
        }
    }

    #[test]
    fn pair_admissible_examples() {
        let d = a2_rules();
        assert!(!d.pair_admissible(part(&d, -3, "8"), part(&d, -2, "9")));
        assert!(d.pair_admissible(part(&d, -4, "1"), part(&d, -2, "9")));
        assert!(d.pair_admissible(part(&d, -1, "4"), part(&d, -1, "4")));
    }

    #[test]
    fn gap_criterion_matches_containment_on_a2() {
        let d = a2_rules();
        let a = d.alphabet().clone();
        for x in a.ids() {
            for y in a.ids() {
                for (i, j) in [(-3, -3), (-3, -2), (-3, -1), (-4, -1)] {
                    let p = ColoredPart { value: i, color: x };
                    let q = ColoredPart { value: j, color: y };
                    if i == j && !a.precedes(x, y) {
                        continue;
                    }
                    assert_eq!(
                        d.pair_admissible(p, q),
                        d.pair_admissible_by_containment(p, q),
                        "{} {}",
                        p.display(&a),
                        q.display(&a)
                    );
                }
            }
        }
    }

    #[test]
    fn triangle_examples() {
        assert!(check_triangle(&catalog("a2-basic").unwrap().matrix).holds);
        let colors = ["1", "2", "3"]
            .iter()
            .map(|l| (l.to_string(), Weight::zero(0)))
            .collect();
        let a = Arc::new(Alphabet::descending_labels(colors, None).unwrap());
        let m = EnergyMatrix::new(a, vec![vec![0, 0, 2], vec![0, 0, 0], vec![0, 0, 0]]).unwrap();
        let outcome = check_triangle(&m);
        assert!(!outcome.holds);
        assert_eq!(
            outcome.witnesses,
            vec![(ColorId(0), ColorId(1), ColorId(2))]
        );
    }

    #[test]
    fn order_compat_examples() {
        assert!(check_order_compat(&catalog("a2-basic").unwrap().matrix).holds);
        assert!(check_order_compat(single(0).matrix()).holds);
        // Reversing the order breaks every off-diagonal zero.
        let entry = catalog("a2-basic").unwrap();
        let reversed: Vec<ColorId> = entry.alphabet.ascending().iter().rev().copied().collect();
        let flipped = entry
            .matrix
            .with_alphabet(Arc::new(entry.alphabet.with_order(reversed).unwrap()))
            .unwrap();
        let outcome = check_order_compat(&flipped);
        assert!(!outcome.holds);
        assert!(outcome.witnesses.iter().all(|(x, y)| x != y));
    }

    #[test]
    fn derived_order_is_compatible() {
        let entry = catalog("a2-basic").unwrap();
        let order = derive_order(&entry.matrix).unwrap();
        let m = entry
            .matrix
            .with_alphabet(Arc::new(entry.alphabet.with_order(order).unwrap()))
            .unwrap();
        assert!(check_order_compat(&m).holds);
    }

    #[test]
    fn symmetry_examples() {
        let m = catalog("a2-basic").unwrap().matrix;
        let a = m.alphabet().clone();
        let sigma = permutation_from_swaps(&a, &[("2", "3"), ("5", "6"), ("7", "8")]).unwrap();
        assert!(check_symmetry(&m, &sigma).unwrap());
        let identity: Vec<ColorId> = a.ids().collect();
        assert!(check_symmetry(&m, &identity).unwrap());
        let swap19 = permutation_from_swaps(&a, &[("1", "9")]).unwrap();
        assert!(!check_symmetry(&m, &swap19).unwrap());
        assert!(check_symmetry(&m, &[ColorId(0); 9]).is_err());
    }

    #[test]
    fn local_triples_on_a2() {
        assert!(check_local_triples(&a2_rules()).holds);
    }

    #[test]
    fn matrix_matches_printed_table() {
        let m = catalog("a2-basic").unwrap().matrix;
        for (i, row) in A2_PRINTED.iter().enumerate() {
            assert_eq!(m.rows()[i], row.to_vec());
        }
    }

    #[test]
    fn record_round_trip() {
        let entry = catalog("mp3-gamma-prime").unwrap();
        let d = DifferenceRuleSet::build(&entry.matrix, entry.extras.clone()).unwrap();
        let json = serde_json::to_string(&d.to_record()).unwrap();
        assert!(json.contains(r#"[[0,"1"],[0,"5"],[1,"3"]]"#), "{json}");
        let record: RuleSetRecord = serde_json::from_str(&json).unwrap();
        let back = DifferenceRuleSet::from_record(&record, entry.alphabet.clone()).unwrap();
        assert_eq!(back.patterns(), d.patterns());
    }

    /// Every colored partition over `alphabet` with at most `max_boxes` boxes.
    fn all_partitions(alphabet: &Arc<Alphabet>, max_boxes: u64) -> Vec<ColoredPartition> {
        let parts: Vec<ColoredPart> = (1..=max_boxes as i64)
            .flat_map(|k| {
                alphabet.ids().map(move |c| ColoredPart {
                    value: -k,
                    color: c,
                })
            })
            .collect();
        fn rec(
            parts: &[ColoredPart],
            i: usize,
            left: u64,
            chosen: &mut Vec<(ColoredPart, u32)>,
            out: &mut Vec<Vec<(ColoredPart, u32)>>,
        ) {
            if i == parts.len() {
                out.push(chosen.clone());
                return;
            }
            rec(parts, i + 1, left, chosen, out);
            let size = parts[i].magnitude();
            let mut m = 1;
            while m * size <= left {
                chosen.push((parts[i], m as u32));
                rec(parts, i + 1, left - m * size, chosen, out);
                chosen.pop();
                m += 1;
            }
        }
        let mut out = Vec::new();
        rec(&parts, 0, max_boxes, &mut Vec::new(), &mut out);
        out.into_iter()
            .map(|runs| ColoredPartition::from_multiplicities(alphabet.clone(), runs).unwrap())
            .collect()
    }

    #[test]
    fn adjacent_gap_criterion_is_exhaustively_equivalent() {
        let d = a2_rules();
        let e = d.matrix();
        let all = all_partitions(d.alphabet(), 8);
        assert!(all.len() > 10_000);
        for pi in &all {
            let parts: Vec<ColoredPart> = pi.iter_parts().collect();
            let by_pairs = parts
                .windows(2)
                .all(|w| (w[1].value - w[0].value) as u64 >= e.get(w[0].color, w[1].color) as u64);
            assert_eq!(by_pairs, d.satisfies(pi), "{pi}");
        }
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        fn arb_partition() -> impl Strategy<Value = Vec<(i64, usize)>> {
            prop::collection::vec((1i64..5, 0usize..9), 0..7)
        }

        fn build(d: &DifferenceRuleSet, parts: &[(i64, usize)]) -> ColoredPartition {
            ColoredPartition::from_parts(
                d.alphabet().clone(),
                parts.iter().map(|&(v, c)| ColoredPart {
                    value: -v,
                    color: ColorId(c),
                }),
            )
            .unwrap()
        }

        fn gamma_prime() -> DifferenceRuleSet {
            let entry = catalog("mp3-gamma-prime").unwrap();
            DifferenceRuleSet::build(&entry.matrix, entry.extras).unwrap()
        }

        proptest! {
            #[test]
            fn ideal_is_closed_under_removing_parts(parts in arb_partition(), keep in prop::collection::vec(any::<bool>(), 7)) {
                for d in [a2_rules(), gamma_prime()] {
                    let parts: Vec<(i64, usize)> = parts.iter().map(|&(v, c)| (v, c % d.alphabet().len())).collect();
                    let sub: Vec<(i64, usize)> = parts.iter().zip(&keep).filter(|(_, k)| **k).map(|(p, _)| *p).collect();
                    if d.satisfies(&build(&d, &parts)) {
                        prop_assert!(d.satisfies(&build(&d, &sub)));
                    }
                }
            }

            #[test]
            fn membership_is_local(parts in arb_partition()) {
                for d in [a2_rules(), gamma_prime()] {
                    let parts: Vec<(i64, usize)> = parts.iter().map(|&(v, c)| (v, c % d.alphabet().len())).collect();
                    let pi = build(&d, &parts);
                    let n = parts.len();
                    let mut small_ok = true;
                    for i in 0..n {
                        for j in i + 1..n {
                            small_ok &= d.satisfies(&build(&d, &[parts[i], parts[j]]));
                            for k in j + 1..n {
                                small_ok &= d.satisfies(&build(&d, &[parts[i], parts[j], parts[k]]));
                            }
                        }
                    }
                    prop_assert_eq!(d.satisfies(&pi), small_ok);
                }
            }
        }
    }
}
