use serde::{Deserialize, Serialize};

use crate::crystal::catalog::{catalog, CatalogEntry, CATALOG_NAMES};
use crate::crystal::EnergyMatrix;
use crate::qseries::{FactorForm, ProductFactor, ProductSide, Specialization};
use crate::rules::DifferenceRuleSet;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// The sum side must equal the product side.
    Assert,
    /// Both sides are reported; nothing is asserted.
    Explore,
}

/// A generating function to compare against a closed form.
#[derive(Clone, Debug)]
pub struct IdentityCase {
    pub name: String,
    pub entry: CatalogEntry,
    pub rules: DifferenceRuleSet,
    pub spec: Specialization,
    pub product: Option<ProductSide>,
    pub mode: Mode,
    /// Default truncation, in integer powers of `q`.
    pub order: usize,
}

impl IdentityCase {
    pub fn new(
        entry: CatalogEntry,
        spec: Specialization,
        product: Option<ProductSide>,
        mode: Mode,
        order: usize,
    ) -> Result<Self> {
        if mode == Mode::Assert && product.is_none() {
            return Err(Error::Parse(format!(
                "case `{}` asserts an identity but has no product side",
                entry.name
            )));
        }
        let rules = DifferenceRuleSet::build(&entry.matrix, entry.extras.clone())?;
        spec.check_convergent()?;
        Ok(IdentityCase {
            name: entry.name.clone(),
            entry,
            rules,
            spec,
            product,
            mode,
            order,
        })
    }

    pub fn matrix(&self) -> &EnergyMatrix {
        &self.entry.matrix
    }
}

fn geometric(modulus: u32, residues: &[u32]) -> ProductSide {
    ProductSide::new(vec![ProductFactor::new(
        modulus,
        residues,
        FactorForm::Geometric,
    )])
}

pub fn case_names() -> &'static [&'static str] {
    &CATALOG_NAMES
}

/// A built-in identity by name.
pub fn case(name: &str) -> Result<IdentityCase> {
    let entry = catalog(name)?;
    let principal = Specialization::principal(entry.alphabet.clone());
    let (spec, product, mode, order) = match name {
        "a2-basic" => (principal, Some(ProductSide::partitions()), Mode::Assert, 30),
        "a3-basic" => (principal, Some(ProductSide::partitions()), Mode::Assert, 25),
        "a1-four-color" => (
            principal,
            Some(ProductSide::partitions()),
            Mode::Explore,
            30,
        ),
        "a1-three-color" => (principal, Some(geometric(2, &[1])), Mode::Assert, 40),
        "capparelli" => {
            let spec = Specialization::from_root_grading(entry.alphabet.clone(), &[1, 2])?;
            let product = ProductSide::new(vec![ProductFactor::new(
                6,
                &[0, 1, 3, 5],
                FactorForm::Binomial,
            )]);
            (spec, Some(product), Mode::Assert, 40)
        }
        "rr-single" => {
            let product = geometric(5, &[1, 4])
                .with_note("classical Rogers-Ramanujan product, supplied as the known partner");
            (principal, Some(product), Mode::Assert, 40)
        }
        "distinct-single" => (
            principal,
            Some(ProductSide::distinct_parts()),
            Mode::Assert,
            40,
        ),
        "half-int-distinct" => {
            let product = ProductSide::new(vec![
                ProductFactor::new(1, &[0], FactorForm::Binomial).with_half_offset()
            ]);
            (principal, Some(product), Mode::Assert, 20)
        }
        "half-int-diff3" => (principal, None, Mode::Explore, 30),
        "mp3-gamma-prime" => (principal, Some(geometric(3, &[1, 2])), Mode::Assert, 30),
        _ => return Err(Error::UnknownCase(name.to_string())),
    };
    IdentityCase::new(entry, spec, product, mode, order)
}
