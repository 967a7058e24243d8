use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::QSeries;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FactorForm {
    /// `(1 - q^r)^{-1}`
    Geometric,
    /// `(1 + q^r)`
    Binomial,
    /// `(1 - q^r)`
    Euler,
}

/// `∏ f(q^{r + offset})` over `r ≥ 1` with `r mod modulus ∈ residues`, where
/// the offset is `1/2` when `half_offset` is set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProductFactor {
    pub modulus: u32,
    pub residues: Vec<u32>,
    pub form: FactorForm,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub half_offset: bool,
}

impl ProductFactor {
    pub fn new(modulus: u32, residues: &[u32], form: FactorForm) -> Self {
        assert!(modulus > 0, "modulus must be positive");
        ProductFactor {
            modulus,
            residues: residues.to_vec(),
            form,
            half_offset: false,
        }
    }

    pub fn with_half_offset(mut self) -> Self {
        self.half_offset = true;
        self
    }

    fn applies(&self, r: usize) -> bool {
        self.residues
            .contains(&((r % self.modulus as usize) as u32))
    }

    /// Multiplies `s` in place by this factor.
    fn apply(&self, s: &mut QSeries) {
        let t = s.truncation();
        let coeffs = s.coeffs_mut();
        let offset = self.half_offset as usize;
        let mut r = 1;
        while 2 * r + offset <= t {
            if self.applies(r) {
                let e = 2 * r + offset;
                match self.form {
                    FactorForm::Geometric => {
                        for n in e..=t {
                            let prev = coeffs[n - e].clone();
                            coeffs[n] += prev;
                        }
                    }
                    FactorForm::Binomial | FactorForm::Euler => {
                        for n in (e..=t).rev() {
                            let prev = coeffs[n - e].clone();
                            if self.form == FactorForm::Binomial {
                                coeffs[n] += prev;
                            } else {
                                coeffs[n] -= prev;
                            }
                        }
                    }
                }
            }
            r += 1;
        }
    }
}

impl fmt::Display for ProductFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let power = if self.half_offset { "q^(r+1/2)" } else { "q^r" };
        let range = if self.modulus == 1 {
            "r≥1".to_string()
        } else {
            let rs: Vec<String> = self.residues.iter().map(u32::to_string).collect();
            format!("r≡{} mod {}", rs.join(","), self.modulus)
        };
        match self.form {
            FactorForm::Geometric => write!(f, "∏_{{{range}}} (1-{power})^-1"),
            FactorForm::Binomial => write!(f, "∏_{{{range}}} (1+{power})"),
            FactorForm::Euler => write!(f, "∏_{{{range}}} (1-{power})"),
        }
    }
}

/// The closed-form side of an identity: a product of Euler-type factors,
/// with an optional note on where it comes from.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProductSide {
    pub factors: Vec<ProductFactor>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl ProductSide {
    pub fn new(factors: Vec<ProductFactor>) -> Self {
        ProductSide {
            factors,
            note: None,
        }
    }

    pub fn with_note(mut self, note: &str) -> Self {
        self.note = Some(note.to_string());
        self
    }

    /// `∏_{r ≥ 1} (1 - q^r)^{-1}`.
    pub fn partitions() -> Self {
        Self::new(vec![ProductFactor::new(1, &[0], FactorForm::Geometric)])
    }

    /// `∏_{r ≥ 1} (1 + q^r)`.
    pub fn distinct_parts() -> Self {
        Self::new(vec![ProductFactor::new(1, &[0], FactorForm::Binomial)])
    }

    /// Expansion through the doubled exponent `truncation`.
    pub fn expand(&self, truncation: usize) -> QSeries {
        let mut s = QSeries::monomial(0, BigInt::from(1), truncation);
        for f in &self.factors {
            f.apply(&mut s);
        }
        s
    }
}

impl fmt::Display for ProductSide {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.factors.iter().map(ToString::to_string).collect();
        write!(f, "{}", parts.join(" · "))
    }
}
