//! Exact truncated power series in `q^{1/2}` and everything that produces
//! them: Euler products, specializations and the generating functions of a
//! partition ideal.
//!
//! Exponents are stored doubled so that half-integer powers are exact.

mod enumerate;
mod product;
mod specialization;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

pub use enumerate::{
    brute_force_gen_function, enumerate_ideal, gen_function, weighted_character, WeightedSeries,
};
pub use product::{FactorForm, ProductFactor, ProductSide};
pub use specialization::Specialization;

/// A power series `Σ c_e q^{e/2}` known through the doubled exponent
/// `truncation`; everything above it is `O(q^{(truncation+1)/2})`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QSeries {
    coeffs: Vec<BigInt>,
}

impl QSeries {
    pub fn zero(truncation: usize) -> Self {
        QSeries {
            coeffs: vec![BigInt::zero(); truncation + 1],
        }
    }

    pub fn one(truncation: usize) -> Self {
        Self::monomial(0, BigInt::one(), truncation)
    }

    /// `c · q^{exponent/2}`, or zero if the exponent is past the truncation.
    pub fn monomial(doubled_exponent: usize, c: BigInt, truncation: usize) -> Self {
        let mut s = Self::zero(truncation);
        if doubled_exponent <= truncation {
            s.coeffs[doubled_exponent] = c;
        }
        s
    }

    /// Integer-exponent series `Σ_{n ≤ N} c_n q^n` truncated at `N = len - 1`.
    pub fn from_integer_coeffs<T: Into<BigInt> + Clone>(coeffs: &[T]) -> Self {
        assert!(
            !coeffs.is_empty(),
            "a series needs at least the constant term"
        );
        let mut s = Self::zero(2 * (coeffs.len() - 1));
        for (n, c) in coeffs.iter().enumerate() {
            s.coeffs[2 * n] = c.clone().into();
        }
        s
    }

    /// Dense coefficients indexed by doubled exponent.
    pub fn from_doubled(coeffs: Vec<BigInt>) -> Self {
        assert!(
            !coeffs.is_empty(),
            "a series needs at least the constant term"
        );
        QSeries { coeffs }
    }

    /// Largest doubled exponent that is known exactly.
    pub fn truncation(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff_doubled(&self, doubled_exponent: usize) -> &BigInt {
        &self.coeffs[doubled_exponent]
    }

    pub fn coeff(&self, n: usize) -> &BigInt {
        self.coeff_doubled(2 * n)
    }

    pub fn coeffs_doubled(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficients at `q^0, q^1, …, q^{⌊truncation/2⌋}`, or `None` when a
    /// half-integer power occurs.
    pub fn integer_coeffs(&self) -> Option<Vec<BigInt>> {
        if self.coeffs.iter().skip(1).step_by(2).any(|c| !c.is_zero()) {
            return None;
        }
        Some(self.coeffs.iter().step_by(2).cloned().collect())
    }

    pub fn truncate(&self, truncation: usize) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(truncation.min(self.truncation()) + 1, BigInt::zero());
        QSeries { coeffs }
    }

    /// Smallest doubled exponent where the two series differ, over their
    /// common range.
    pub fn first_difference(&self, other: &QSeries) -> Option<usize> {
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .position(|(a, b)| a != b)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.coeffs.iter().all(|c| !c.is_negative())
    }

    /// `{ "doubled exponent": coefficient }` for the nonzero coefficients, in
    /// increasing exponent order.
    pub fn to_json(&self) -> serde_json::Value {
        let map = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(e, c)| (e.to_string(), big_to_json(c)))
            .collect();
        serde_json::Value::Object(map)
    }

    /// Inverse of [`QSeries::to_json`]; `truncation` is doubled.
    pub fn from_json(value: &serde_json::Value, truncation: usize) -> crate::Result<Self> {
        let map = value
            .as_object()
            .ok_or_else(|| crate::Error::Parse("series must be a JSON object".into()))?;
        let mut s = Self::zero(truncation);
        for (k, v) in map {
            let e: usize = k
                .parse()
                .map_err(|_| crate::Error::Parse(format!("bad exponent `{k}`")))?;
            let c: BigInt = v
                .to_string()
                .parse()
                .map_err(|_| crate::Error::Parse(format!("bad coefficient `{v}`")))?;
            if e <= truncation {
                s.coeffs[e] = c;
            }
        }
        Ok(s)
    }

    pub(crate) fn coeffs_mut(&mut self) -> &mut [BigInt] {
        &mut self.coeffs
    }
}

pub(crate) fn big_to_json(c: &BigInt) -> serde_json::Value {
    serde_json::Value::Number(
        c.to_string()
            .parse()
            .expect("integers are valid JSON numbers"),
    )
}

fn exponent(e: usize) -> String {
    if e.is_multiple_of(2) {
        format!("{}", e / 2)
    } else {
        format!("({e}/2)")
    }
}

impl fmt::Display for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (e, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (sign, abs) = if c.is_negative() {
                ("-", -c)
            } else {
                ("+", c.clone())
            };
            match (first, sign) {
                (true, "-") => write!(f, "-")?,
                (true, _) => {}
                (false, s) => write!(f, " {s} ")?,
            }
            first = false;
            let monomial = match e {
                0 => String::new(),
                2 => "q".to_string(),
                _ => format!("q^{}", exponent(e)),
            };
            if e == 0 || !abs.is_one() {
                write!(f, "{abs}{monomial}")?;
            } else {
                write!(f, "{monomial}")?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        let next = match self.integer_coeffs() {
            Some(_) if self.truncation().is_multiple_of(2) => self.truncation() + 2,
            _ => self.truncation() + 1,
        };
        match next {
            2 => write!(f, " + O(q)"),
            _ => write!(f, " + O(q^{})", exponent(next)),
        }
    }
}

impl Add for &QSeries {
    type Output = QSeries;
    fn add(self, rhs: &QSeries) -> QSeries {
        let n = self.coeffs.len().min(rhs.coeffs.len());
        QSeries {
            coeffs: (0..n).map(|e| &self.coeffs[e] + &rhs.coeffs[e]).collect(),
        }
    }
}

impl Sub for &QSeries {
    type Output = QSeries;
    fn sub(self, rhs: &QSeries) -> QSeries {
        self + &(-rhs)
    }
}

impl Neg for &QSeries {
    type Output = QSeries;
    fn neg(self) -> QSeries {
        QSeries {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &QSeries {
    type Output = QSeries;
    fn mul(self, rhs: &QSeries) -> QSeries {
        let n = self.coeffs.len().min(rhs.coeffs.len());
        let mut out = vec![BigInt::zero(); n];
        for (i, a) in self.coeffs[..n].iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs[..n - i].iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        QSeries { coeffs: out }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn series(coeffs: Vec<i64>) -> QSeries {
        QSeries::from_doubled(coeffs.into_iter().map(BigInt::from).collect())
    }

    #[test]
    fn display() {
        let s = QSeries::from_integer_coeffs(&[1, 1, 2, 0, -3]);
        assert_eq!(s.to_string(), "1 + q + 2q^2 - 3q^4 + O(q^5)");
        let h = series(vec![1, 0, 0, 1, 0, 2]);
        assert_eq!(h.to_string(), "1 + q^(3/2) + 2q^(5/2) + O(q^3)");
        assert_eq!(QSeries::zero(0).to_string(), "0 + O(q)");
        assert_eq!(series(vec![1, 0]).to_string(), "1 + O(q)");
    }

    #[test]
    fn json_round_trip() {
        let s = QSeries::from_integer_coeffs(&[1, 0, 2, 3]);
        let json = s.to_json();
        assert_eq!(json.to_string(), r#"{"0":1,"4":2,"6":3}"#);
        assert_eq!(QSeries::from_json(&json, 6).unwrap(), s);
        let big = QSeries::monomial(2, BigInt::from(7u8).pow(40), 2);
        assert_eq!(QSeries::from_json(&big.to_json(), 2).unwrap(), big);
    }

    #[test]
    fn integer_view() {
        let s = QSeries::from_integer_coeffs(&[1, 1, 2]);
        assert_eq!(
            s.integer_coeffs().unwrap(),
            vec![1.into(), 1.into(), 2.into()]
        );
        assert!(series(vec![1, 1]).integer_coeffs().is_none());
    }

    #[test]
    fn first_difference() {
        let a = QSeries::from_integer_coeffs(&[1, 1, 2, 3]);
        let b = QSeries::from_integer_coeffs(&[1, 1, 2, 4]);
        assert_eq!(a.first_difference(&b), Some(6));
        assert_eq!(a.first_difference(&a), None);
    }

    fn arb_series() -> impl Strategy<Value = QSeries> {
        prop::collection::vec(-50i64..50, 12).prop_map(series)
    }

    proptest! {
        #[test]
        fn ring_laws(a in arb_series(), b in arb_series(), c in arb_series()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a * &QSeries::one(11), a.clone());
            prop_assert_eq!(&(&a + &b) - &b, a.clone());
        }

        #[test]
        fn truncation_commutes_with_product(a in arb_series(), b in arb_series(), t in 0usize..12) {
            prop_assert_eq!((&a * &b).truncate(t), &a.truncate(t) * &b.truncate(t));
        }
    }
}
