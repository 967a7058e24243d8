//! Colored partitions over a finite color alphabet.
//!
//! A part `j_β` has a negative value `j` and a color `β`; a colored partition
//! is a finitely supported multiset of parts. Partitions are kept in canonical
//! form: parts sorted by `i_β ≼ j_γ ⇔ i < j, or i = j and β ≼ γ`, with
//! repeated parts run-length encoded.

mod alphabet;
mod plain;
mod weight;

use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

pub use alphabet::{Alphabet, Color, ColorId};
pub use plain::PlainPartition;
pub use weight::{HalfInt, Weight};

use crate::qseries::Specialization;
use crate::{Error, Result};

/// A single part `value_color`, `value < 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ColoredPart {
    pub value: i64,
    pub color: ColorId,
}

impl ColoredPart {
    pub fn new(value: i64, color: ColorId) -> Result<Self> {
        if value >= 0 {
            return Err(Error::InvalidPart(format!("value {value} is not negative")));
        }
        Ok(ColoredPart { value, color })
    }

    /// Number of boxes in the row of this part.
    pub fn magnitude(&self) -> u64 {
        self.value.unsigned_abs()
    }

    pub fn display<'a>(&'a self, alphabet: &'a Alphabet) -> impl fmt::Display + 'a {
        DisplayPart {
            part: self,
            alphabet,
        }
    }
}

struct DisplayPart<'a> {
    part: &'a ColoredPart,
    alphabet: &'a Alphabet,
}

impl fmt::Display for DisplayPart<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({})_{}",
            self.part.value,
            self.alphabet.label(self.part.color)
        )
    }
}

/// JSON record of one run of equal parts.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartRecord {
    pub value: i64,
    pub color: String,
    pub mult: u32,
}

#[derive(Clone, Debug)]
pub struct ColoredPartition {
    alphabet: Arc<Alphabet>,
    /// Canonically sorted, multiplicities positive.
    parts: Vec<(ColoredPart, u32)>,
}

pub(crate) fn same_alphabet(a: &Arc<Alphabet>, b: &Arc<Alphabet>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl ColoredPartition {
    pub fn empty(alphabet: Arc<Alphabet>) -> Self {
        ColoredPartition {
            alphabet,
            parts: Vec::new(),
        }
    }

    pub fn from_parts(
        alphabet: Arc<Alphabet>,
        parts: impl IntoIterator<Item = ColoredPart>,
    ) -> Result<Self> {
        Self::from_multiplicities(alphabet, parts.into_iter().map(|p| (p, 1)))
    }

    pub fn from_multiplicities(
        alphabet: Arc<Alphabet>,
        parts: impl IntoIterator<Item = (ColoredPart, u32)>,
    ) -> Result<Self> {
        let mut runs = Vec::new();
        for (part, mult) in parts {
            if part.value >= 0 {
                return Err(Error::InvalidPart(format!(
                    "value {} is not negative",
                    part.value
                )));
            }
            if !alphabet.contains_id(part.color) {
                return Err(Error::UnknownColor(part.color.to_string()));
            }
            if mult > 0 {
                runs.push((part, mult));
            }
        }
        Ok(Self::canonical(alphabet, runs))
    }

    /// Convenience constructor from `(value, label)` pairs.
    pub fn from_labels(alphabet: Arc<Alphabet>, parts: &[(i64, &str)]) -> Result<Self> {
        let parts = parts
            .iter()
            .map(|&(v, l)| ColoredPart::new(v, alphabet.find(l)?))
            .collect::<Result<Vec<_>>>()?;
        Self::from_parts(alphabet, parts)
    }

    fn canonical(alphabet: Arc<Alphabet>, mut runs: Vec<(ColoredPart, u32)>) -> Self {
        runs.sort_by_key(|(p, _)| (p.value, alphabet.rank(p.color)));
        let mut parts: Vec<(ColoredPart, u32)> = Vec::with_capacity(runs.len());
        for (p, m) in runs {
            match parts.last_mut() {
                Some((q, n)) if *q == p => *n += m,
                _ => parts.push((p, m)),
            }
        }
        ColoredPartition { alphabet, parts }
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    /// Runs of equal parts in canonical order.
    pub fn runs(&self) -> &[(ColoredPart, u32)] {
        &self.parts
    }

    /// Every part, repeated by multiplicity, in canonical order.
    pub fn iter_parts(&self) -> impl Iterator<Item = ColoredPart> + '_ {
        self.parts
            .iter()
            .flat_map(|&(p, m)| std::iter::repeat_n(p, m as usize))
    }

    /// `ℓ(π)`, the number of parts counted with multiplicity.
    pub fn len(&self) -> u64 {
        self.parts.iter().map(|&(_, m)| m as u64).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn multiplicity(&self, part: ColoredPart) -> u32 {
        self.parts
            .iter()
            .find(|(p, _)| *p == part)
            .map_or(0, |&(_, m)| m)
    }

    pub fn min_value(&self) -> Option<i64> {
        self.parts.first().map(|(p, _)| p.value)
    }

    fn check_alphabet(&self, other: &ColoredPartition) -> Result<()> {
        if same_alphabet(&self.alphabet, &other.alphabet) {
            Ok(())
        } else {
            Err(Error::AlphabetMismatch)
        }
    }

    /// Monoid product: multiplicities add pointwise.
    pub fn product(&self, other: &ColoredPartition) -> Result<ColoredPartition> {
        self.check_alphabet(other)?;
        let runs = self.parts.iter().chain(&other.parts).copied().collect();
        Ok(Self::canonical(self.alphabet.clone(), runs))
    }

    /// `self ⊇ other`: every part of `other` occurs in `self` at least as often.
    pub fn contains(&self, other: &ColoredPartition) -> Result<bool> {
        self.check_alphabet(other)?;
        Ok(other.parts.iter().all(|&(p, m)| self.multiplicity(p) >= m))
    }

    /// `‖ν‖`, the number of boxes of the Young diagram.
    pub fn box_count(&self) -> u64 {
        self.parts
            .iter()
            .map(|&(p, m)| p.magnitude() * m as u64)
            .sum()
    }

    pub fn specialized_degree(&self, spec: &Specialization) -> HalfInt {
        self.parts
            .iter()
            .map(|&(p, m)| spec.degree(p) * m as i64)
            .sum()
    }

    pub fn weight(&self) -> Weight {
        let mut w = Weight::zero(self.alphabet.weight_rank());
        for &(p, m) in &self.parts {
            for _ in 0..m {
                w += self.alphabet.weight(p.color);
            }
        }
        w
    }

    /// Staircase composition `ν ⊕ Δ`.
    ///
    /// Row `r` of `Δ` adds one box to each of the first `r` parts of `ν`
    /// (in canonical order); parts beyond the length of `ν` are created with
    /// the ground color.
    pub fn oplus(&self, delta: &PlainPartition) -> Result<ColoredPartition> {
        let own: Vec<ColoredPart> = self.iter_parts().collect();
        let columns = delta.conjugate();
        let total = own.len().max(columns.rows().len());
        let mut parts = Vec::with_capacity(total);
        for n in 0..total {
            let extra = columns.rows().get(n).copied().unwrap_or(0) as i64;
            let (value, color) = match own.get(n) {
                Some(p) => (p.value, p.color),
                None => (0, self.alphabet.ground().ok_or(Error::NoGround)?),
            };
            parts.push(ColoredPart {
                value: value - extra,
                color,
            });
        }
        Self::from_parts(self.alphabet.clone(), parts)
    }

    /// Parses the canonical text form, e.g. `(-5)_1 (-3)_8 (-2)_9`.
    pub fn parse(text: &str, alphabet: Arc<Alphabet>) -> Result<Self> {
        let mut parts = Vec::new();
        for token in text.split_whitespace() {
            let bad = || Error::Parse(format!("malformed part `{token}`"));
            let rest = token.strip_prefix('(').ok_or_else(bad)?;
            let (value, label) = rest.split_once(")_").ok_or_else(bad)?;
            let value: i64 = value.parse().map_err(|_| bad())?;
            parts.push(ColoredPart::new(value, alphabet.find(label)?)?);
        }
        Self::from_parts(alphabet, parts)
    }

    pub fn to_records(&self) -> Vec<PartRecord> {
        self.parts
            .iter()
            .map(|&(p, m)| PartRecord {
                value: p.value,
                color: self.alphabet.label(p.color).to_string(),
                mult: m,
            })
            .collect()
    }

    pub fn from_records(records: &[PartRecord], alphabet: Arc<Alphabet>) -> Result<Self> {
        let runs = records
            .iter()
            .map(|r| Ok((ColoredPart::new(r.value, alphabet.find(&r.color)?)?, r.mult)))
            .collect::<Result<Vec<_>>>()?;
        Self::from_multiplicities(alphabet, runs)
    }
}

impl PartialEq for ColoredPartition {
    fn eq(&self, other: &Self) -> bool {
        self.parts == other.parts && same_alphabet(&self.alphabet, &other.alphabet)
    }
}

impl Eq for ColoredPartition {}

impl Hash for ColoredPartition {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.parts.hash(state);
    }
}

impl fmt::Display for ColoredPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "1");
        }
        let mut first = true;
        for p in self.iter_parts() {
            if !first {
                write!(f, " ")?;
            }
            write!(f, "{}", p.display(&self.alphabet))?;
            first = false;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a2() -> Arc<Alphabet> {
        let w = |c: &[i64]| Weight::from_roots(c);
        let colors = vec![
            ("1", w(&[1, 1])),
            ("2", w(&[0, 1])),
            ("3", w(&[1, 0])),
            ("4", w(&[0, 0])),
            ("5", w(&[0, 0])),
            ("6", w(&[0, 0])),
            ("7", w(&[-1, 0])),
            ("8", w(&[0, -1])),
            ("9", w(&[-1, -1])),
        ]
        .into_iter()
        .map(|(l, w)| (l.to_string(), w))
        .collect();
        Arc::new(Alphabet::descending_labels(colors, Some("4")).unwrap())
    }

    fn part(a: &Arc<Alphabet>, parts: &[(i64, &str)]) -> ColoredPartition {
        ColoredPartition::from_labels(a.clone(), parts).unwrap()
    }

    #[test]
    fn product_examples() {
        let a = a2();
        let pi = part(&a, &[(-5, "1"), (-2, "9")]);
        assert_eq!(pi.product(&ColoredPartition::empty(a.clone())).unwrap(), pi);
        let one = part(&a, &[(-1, "1")]);
        let sq = one.product(&one).unwrap();
        assert_eq!(
            sq.multiplicity(ColoredPart::new(-1, ColorId(0)).unwrap()),
            2
        );
        assert_eq!(sq.len(), 2);
        let mixed = part(&a, &[(-2, "5")])
            .product(&part(&a, &[(-1, "4")]))
            .unwrap();
        assert_eq!(mixed.to_string(), "(-2)_5 (-1)_4");
    }

    #[test]
    fn canonical_order_breaks_ties_by_color_order() {
        let a = a2();
        let pi = part(&a, &[(-1, "1"), (-1, "9"), (-2, "4"), (-1, "5")]);
        assert_eq!(pi.to_string(), "(-2)_4 (-1)_9 (-1)_5 (-1)_1");
    }

    #[test]
    fn containment_examples() {
        let a = a2();
        let pi = part(&a, &[(-5, "1"), (-3, "8"), (-2, "9")]);
        assert!(pi.contains(&part(&a, &[(-3, "8"), (-2, "9")])).unwrap());
        assert!(pi.contains(&ColoredPartition::empty(a.clone())).unwrap());
        let one = part(&a, &[(-1, "1")]);
        assert!(!one.contains(&one.product(&one).unwrap()).unwrap());
    }

    #[test]
    fn alphabet_mismatch_is_an_error() {
        let a = a2();
        let other = Arc::new(
            Alphabet::descending_labels(vec![("x".to_string(), Weight::zero(0))], None).unwrap(),
        );
        let p = ColoredPartition::empty(a);
        let q = ColoredPartition::empty(other);
        assert!(matches!(p.product(&q), Err(Error::AlphabetMismatch)));
        assert!(matches!(p.contains(&q), Err(Error::AlphabetMismatch)));
    }

    #[test]
    fn box_count_examples() {
        let a = a2();
        assert_eq!(ColoredPartition::empty(a.clone()).box_count(), 0);
        assert_eq!(part(&a, &[(-5, "1"), (-3, "8"), (-2, "9")]).box_count(), 10);
        assert_eq!(part(&a, &[(-1, "4"), (-1, "4"), (-1, "4")]).box_count(), 3);
    }

    #[test]
    fn weight_examples() {
        let a = a2();
        assert!(ColoredPartition::empty(a.clone()).weight().is_zero());
        assert!(part(&a, &[(-1, "1"), (-1, "9")]).weight().is_zero());
        assert_eq!(
            part(&a, &[(-2, "2")]).weight().root_coords(),
            Some(vec![0, 1])
        );
    }

    #[test]
    fn oplus_examples() {
        let a = a2();
        let nu = part(&a, &[(-1, "1")]);
        assert_eq!(nu.oplus(&PlainPartition::empty()).unwrap(), nu);
        let two = PlainPartition::new(vec![2]).unwrap();
        assert_eq!(nu.oplus(&two).unwrap(), part(&a, &[(-2, "1"), (-1, "4")]));
        let ones = PlainPartition::new(vec![1, 1]).unwrap();
        let empty = ColoredPartition::empty(a.clone());
        assert_eq!(empty.oplus(&ones).unwrap(), part(&a, &[(-2, "4")]));
    }

    #[test]
    fn oplus_without_ground_fails_only_when_growing() {
        let colors = vec![("1".to_string(), Weight::zero(0))];
        let a = Arc::new(Alphabet::descending_labels(colors, None).unwrap());
        let nu = part(&a, &[(-1, "1")]);
        assert!(nu.oplus(&PlainPartition::new(vec![1, 1]).unwrap()).is_ok());
        assert!(matches!(
            nu.oplus(&PlainPartition::new(vec![2]).unwrap()),
            Err(Error::NoGround)
        ));
    }

    #[test]
    fn text_and_json_forms() {
        let a = a2();
        let pi = part(&a, &[(-5, "1"), (-3, "8"), (-2, "9"), (-2, "9")]);
        assert_eq!(pi.to_string(), "(-5)_1 (-3)_8 (-2)_9 (-2)_9");
        assert_eq!(
            ColoredPartition::parse(&pi.to_string(), a.clone()).unwrap(),
            pi
        );
        let json = serde_json::to_string(&pi.to_records()).unwrap();
        assert_eq!(
            json,
            r#"[{"value":-5,"color":"1","mult":1},{"value":-3,"color":"8","mult":1},{"value":-2,"color":"9","mult":2}]"#
        );
        let records: Vec<PartRecord> = serde_json::from_str(&json).unwrap();
        assert_eq!(
            ColoredPartition::from_records(&records, a.clone()).unwrap(),
            pi
        );
        assert!(ColoredPartition::parse("(-1)_x", a.clone()).is_err());
        assert!(ColoredPartition::parse("(1)_1", a).is_err());
    }

    mod properties {
        use super::*;
        use crate::qseries::Specialization;
        use proptest::prelude::*;

        fn arb_partition() -> impl Strategy<Value = ColoredPartition> {
            prop::collection::vec((1i64..7, 0usize..9), 0..8).prop_map(|parts| {
                ColoredPartition::from_parts(
                    a2(),
                    parts
                        .into_iter()
                        .map(|(v, c)| ColoredPart::new(-v, ColorId(c)).unwrap()),
                )
                .unwrap()
            })
        }

        fn arb_plain() -> impl Strategy<Value = PlainPartition> {
            prop::collection::vec(1u32..5, 0..5).prop_map(|mut rows| {
                rows.sort_unstable_by(|a, b| b.cmp(a));
                PlainPartition::new(rows).unwrap()
            })
        }

        proptest! {
            #[test]
            fn product_is_a_commutative_monoid(
                p in arb_partition(), q in arb_partition(), r in arb_partition()
            ) {
                let one = ColoredPartition::empty(a2());
                prop_assert_eq!(p.product(&q).unwrap(), q.product(&p).unwrap());
                prop_assert_eq!(
                    p.product(&q).unwrap().product(&r).unwrap(),
                    p.product(&q.product(&r).unwrap()).unwrap()
                );
                prop_assert_eq!(p.product(&one).unwrap(), p.clone());
            }

            #[test]
            fn product_contains_its_factors(p in arb_partition(), q in arb_partition()) {
                let pq = p.product(&q).unwrap();
                prop_assert!(pq.contains(&q).unwrap());
                prop_assert!(pq.contains(&p).unwrap());
            }

            #[test]
            fn oplus_adds_boxes_and_keeps_weight(p in arb_partition(), d in arb_plain()) {
                let r = p.oplus(&d).unwrap();
                prop_assert_eq!(r.box_count(), p.box_count() + d.size());
                prop_assert_eq!(r.weight(), p.weight());
            }

            #[test]
            fn degree_is_additive(p in arb_partition(), q in arb_partition()) {
                let spec = Specialization::principal(a2());
                let pq = p.product(&q).unwrap();
                prop_assert_eq!(
                    pq.specialized_degree(&spec),
                    p.specialized_degree(&spec) + q.specialized_degree(&spec)
                );
            }

            #[test]
            fn canonical_form_ignores_input_order(p in arb_partition()) {
                let mut parts: Vec<ColoredPart> = p.iter_parts().collect();
                parts.reverse();
                let again = ColoredPartition::from_parts(a2(), parts).unwrap();
                prop_assert_eq!(again.runs(), p.runs());
                let listed: Vec<ColoredPart> = again.iter_parts().collect();
                let sorted = listed.windows(2).all(|w| {
                    w[0].value < w[1].value
                        || (w[0].value == w[1].value && again.alphabet().precedes(w[0].color, w[1].color))
                });
                prop_assert!(sorted);
            }
        }
    }
}
