use std::sync::Arc;

use crate::partitions::{Alphabet, ColorId, ColoredPart, HalfInt, Weight};
use crate::{Error, Result};

/// A degree map `|(-j)_β| = m·j - shift(β)` on colored parts.
///
/// When built from a root grading `(s_0, …, s_ℓ)` (each `e^{-α_i}` sent to
/// `q^{s_i}`), `m = Σ s_i` and `shift(β) = Σ_{i≥1} s_i·wt(β)_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Specialization {
    alphabet: Arc<Alphabet>,
    m: i64,
    shifts: Vec<HalfInt>,
    grading: Option<Vec<i64>>,
}

impl Specialization {
    /// Every simple root goes to `q`, so `m = ℓ + 1`.
    pub fn principal(alphabet: Arc<Alphabet>) -> Self {
        let grading = vec![1; alphabet.weight_rank() + 1];
        Self::from_root_grading(alphabet, &grading).expect("principal grading has the right length")
    }

    pub fn from_root_grading(alphabet: Arc<Alphabet>, grading: &[i64]) -> Result<Self> {
        if grading.len() != alphabet.weight_rank() + 1 {
            return Err(Error::Parse(format!(
                "root grading needs {} entries, got {}",
                alphabet.weight_rank() + 1,
                grading.len()
            )));
        }
        if grading.iter().any(|&s| s <= 0) {
            return Err(Error::Parse("root grading entries must be positive".into()));
        }
        let shifts = alphabet
            .ids()
            .map(|c| alphabet.weight(c).pairing(&grading[1..]))
            .collect();
        Ok(Specialization {
            m: grading.iter().sum(),
            alphabet,
            shifts,
            grading: Some(grading.to_vec()),
        })
    }

    /// Explicit `m` and per-color shifts, indexed by color id.
    pub fn custom(alphabet: Arc<Alphabet>, m: i64, shifts: Vec<HalfInt>) -> Result<Self> {
        if m <= 0 || shifts.len() != alphabet.len() {
            return Err(Error::Parse("need m > 0 and one shift per color".into()));
        }
        Ok(Specialization {
            alphabet,
            m,
            shifts,
            grading: None,
        })
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn m(&self) -> i64 {
        self.m
    }

    pub fn shift(&self, c: ColorId) -> HalfInt {
        self.shifts[c.0]
    }

    pub fn grading(&self) -> Option<&[i64]> {
        self.grading.as_deref()
    }

    pub fn degree(&self, part: ColoredPart) -> HalfInt {
        self.degree_at(part.color, part.magnitude())
    }

    /// Degree of `(-magnitude)_c`.
    pub fn degree_at(&self, c: ColorId, magnitude: u64) -> HalfInt {
        HalfInt::from_int(self.m * magnitude as i64) - self.shifts[c.0]
    }

    /// Degree of a partition with the given weight and box count; needs a
    /// root grading.
    pub fn degree_of_grade(&self, weight: &Weight, boxes: u64) -> Option<HalfInt> {
        let g = self.grading.as_ref()?;
        Some(HalfInt::from_int(self.m * boxes as i64) - weight.pairing(&g[1..]))
    }

    /// Every part must have positive degree, so that each degree is reached by
    /// finitely many partitions. Degrees grow with the magnitude, so value
    /// `-1` is the one to check.
    pub fn check_convergent(&self) -> Result<()> {
        for c in self.alphabet.ids() {
            let d = self.degree_at(c, 1);
            if d <= HalfInt::ZERO {
                return Err(Error::DivergentSpecialization {
                    color: self.alphabet.label(c).to_string(),
                    degree: d.to_string(),
                });
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::crystal::catalog::catalog;

    fn degrees(s: &Specialization, label: &str, ks: &[u64]) -> Vec<String> {
        let c = s.alphabet().find(label).unwrap();
        ks.iter().map(|&k| s.degree_at(c, k).to_string()).collect()
    }

    #[test]
    fn a2_principal_table() {
        let s = Specialization::principal(catalog("a2-basic").unwrap().alphabet);
        assert_eq!(s.m(), 3);
        assert_eq!(degrees(&s, "1", &[1, 2]), ["1", "4"]);
        assert_eq!(degrees(&s, "4", &[1, 2]), ["3", "6"]);
        assert_eq!(degrees(&s, "7", &[1, 2]), ["4", "7"]);
        assert_eq!(degrees(&s, "9", &[1]), ["5"]);
        assert!(s.check_convergent().is_ok());
    }

    #[test]
    fn four_color_principal() {
        let s = Specialization::principal(catalog("a1-four-color").unwrap().alphabet);
        assert_eq!(degrees(&s, "1", &[1, 3]), ["1", "5"]);
        assert_eq!(degrees(&s, "4", &[1, 3]), ["3", "7"]);
    }

    #[test]
    fn capparelli_grading() {
        let s = Specialization::from_root_grading(catalog("capparelli").unwrap().alphabet, &[1, 2])
            .unwrap();
        assert_eq!(s.m(), 3);
        assert_eq!(degrees(&s, "1", &[1, 2]), ["1", "4"]);
        assert_eq!(degrees(&s, "2", &[1, 2]), ["3", "6"]);
        assert_eq!(degrees(&s, "3", &[1, 2]), ["5", "8"]);
    }

    #[test]
    fn half_integer_degrees() {
        let s = Specialization::principal(catalog("half-int-distinct").unwrap().alphabet);
        assert_eq!(degrees(&s, "1", &[1, 2]), ["3/2", "7/2"]);
        assert_eq!(degrees(&s, "2", &[1, 2]), ["5/2", "9/2"]);
    }

    #[test]
    fn single_color_is_plain_magnitude() {
        let s = Specialization::principal(catalog("rr-single").unwrap().alphabet);
        assert_eq!(degrees(&s, "1", &[1, 5]), ["1", "5"]);
    }

    #[test]
    fn divergence_is_reported() {
        let a = catalog("a2-basic").unwrap().alphabet;
        let s = Specialization::custom(a.clone(), 1, vec![HalfInt::from_int(1); 9]).unwrap();
        assert!(matches!(
            s.check_convergent(),
            Err(Error::DivergentSpecialization { .. })
        ));
        assert!(Specialization::from_root_grading(a, &[1, 1]).is_err());
    }
}
