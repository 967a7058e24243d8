use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

/// An exact element of `½ℤ`, stored as its double.
///
/// Degrees and q-exponents live here: the two-color `A₁` examples specialize
/// to half-integer degrees, everything else stays integral.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HalfInt(i64);

impl HalfInt {
    pub const ZERO: HalfInt = HalfInt(0);

    pub const fn from_int(n: i64) -> Self {
        HalfInt(2 * n)
    }

    pub const fn from_doubled(d: i64) -> Self {
        HalfInt(d)
    }

    pub const fn doubled(self) -> i64 {
        self.0
    }

    pub fn is_integer(self) -> bool {
        self.0 % 2 == 0
    }

    pub fn as_integer(self) -> Option<i64> {
        self.is_integer().then_some(self.0 / 2)
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.as_integer() {
            Some(n) => write!(f, "{n}"),
            None => write!(f, "{}/2", self.0),
        }
    }
}

impl Add for HalfInt {
    type Output = HalfInt;
    fn add(self, rhs: HalfInt) -> HalfInt {
        HalfInt(self.0 + rhs.0)
    }
}

impl AddAssign for HalfInt {
    fn add_assign(&mut self, rhs: HalfInt) {
        self.0 += rhs.0;
    }
}

impl Sub for HalfInt {
    type Output = HalfInt;
    fn sub(self, rhs: HalfInt) -> HalfInt {
        HalfInt(self.0 - rhs.0)
    }
}

impl Mul<i64> for HalfInt {
    type Output = HalfInt;
    fn mul(self, rhs: i64) -> HalfInt {
        HalfInt(self.0 * rhs)
    }
}

impl std::iter::Sum for HalfInt {
    fn sum<I: Iterator<Item = HalfInt>>(iter: I) -> HalfInt {
        HalfInt(iter.map(|h| h.0).sum())
    }
}

/// A classical weight written in the basis of simple roots `α₁ … α_ℓ`.
///
/// Coordinates are kept doubled so that the vector-representation weights of
/// `sl₂` (`±½α₁`) are representable next to ordinary root-lattice weights.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Weight {
    doubled: Vec<i64>,
}

impl Weight {
    pub fn zero(rank: usize) -> Self {
        Weight {
            doubled: vec![0; rank],
        }
    }

    /// Weight with integer coefficients along the simple roots.
    pub fn from_roots(coords: &[i64]) -> Self {
        Weight {
            doubled: coords.iter().map(|c| 2 * c).collect(),
        }
    }

    pub fn from_doubled(doubled: Vec<i64>) -> Self {
        Weight { doubled }
    }

    /// `ℓ`, the number of simple roots.
    pub fn rank(&self) -> usize {
        self.doubled.len()
    }

    pub fn doubled(&self) -> &[i64] {
        &self.doubled
    }

    pub fn coord(&self, i: usize) -> HalfInt {
        HalfInt::from_doubled(self.doubled[i])
    }

    /// Integer root coordinates, if the weight lies in the root lattice.
    pub fn root_coords(&self) -> Option<Vec<i64>> {
        self.doubled
            .iter()
            .map(|d| (d % 2 == 0).then_some(d / 2))
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.doubled.iter().all(|&d| d == 0)
    }

    /// `Σ_{i≥1} grading[i]·cᵢ` for a weight `Σ cᵢαᵢ`; with unit grading this is `⟨ρ, wt⟩`.
    pub fn pairing(&self, grading: &[i64]) -> HalfInt {
        assert_eq!(
            grading.len(),
            self.rank(),
            "grading length must equal the weight rank"
        );
        HalfInt::from_doubled(self.doubled.iter().zip(grading).map(|(d, g)| d * g).sum())
    }

    fn check_rank(&self, other: &Weight) {
        assert_eq!(self.rank(), other.rank(), "weights of different rank");
    }
}

impl Add<&Weight> for &Weight {
    type Output = Weight;
    fn add(self, rhs: &Weight) -> Weight {
        self.check_rank(rhs);
        Weight {
            doubled: self
                .doubled
                .iter()
                .zip(&rhs.doubled)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl AddAssign<&Weight> for Weight {
    fn add_assign(&mut self, rhs: &Weight) {
        self.check_rank(rhs);
        for (a, b) in self.doubled.iter_mut().zip(&rhs.doubled) {
            *a += b;
        }
    }
}

impl Sub<&Weight> for &Weight {
    type Output = Weight;
    fn sub(self, rhs: &Weight) -> Weight {
        self + &(-rhs)
    }
}

impl Neg for &Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        Weight {
            doubled: self.doubled.iter().map(|d| -d).collect(),
        }
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &d) in self.doubled.iter().enumerate() {
            if d == 0 {
                continue;
            }
            let sign = if d < 0 {
                "-"
            } else if first {
                ""
            } else {
                "+"
            };
            let mag = HalfInt::from_doubled(d.abs());
            if mag == HalfInt::from_int(1) {
                write!(f, "{sign}α{}", i + 1)?;
            } else {
                write!(f, "{sign}{mag}α{}", i + 1)?;
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}
