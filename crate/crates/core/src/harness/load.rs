use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{IdentityCase, Mode};
use crate::crystal::catalog::CatalogEntry;
use crate::crystal::{CrystalRecord, EnergyMatrix};
use crate::partitions::{Alphabet, Weight};
use crate::qseries::{ProductSide, Specialization};
use crate::rules::{check_order_compat, derive_order, ForbiddenPattern};
use crate::{Error, Result};

fn default_mode() -> Mode {
    Mode::Assert
}

fn default_order() -> usize {
    20
}

/// A user-supplied identity. Colors are listed from largest to smallest.
///
/// With `arrows`, the colors form a crystal whose weights are solved from
/// the ground letter; the energy matrix is solved too unless `matrix` is
/// given. Without arrows, `matrix` is required and `weights` (simple-root
/// coordinates per color) default to zero.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseFile {
    pub name: String,
    pub colors: Vec<String>,
    #[serde(default)]
    pub arrows: Vec<(String, usize, String)>,
    #[serde(default)]
    pub ground: Option<String>,
    #[serde(default)]
    pub rank: Option<usize>,
    #[serde(default)]
    pub theta: Option<Vec<i64>>,
    #[serde(default)]
    pub matrix: Option<Vec<Vec<u8>>>,
    #[serde(default)]
    pub weights: Option<Vec<Vec<i64>>>,
    #[serde(default)]
    pub extras: Vec<Vec<(u32, String)>>,
    /// Root grading `(s_0, …, s_ℓ)`; principal when absent.
    #[serde(default)]
    pub grading: Option<Vec<i64>>,
    #[serde(default)]
    pub product: Option<ProductSide>,
    #[serde(default = "default_mode")]
    pub mode: Mode,
    #[serde(default = "default_order")]
    pub order: usize,
}

impl CaseFile {
    fn entry(&self) -> Result<CatalogEntry> {
        if !self.arrows.is_empty() {
            let record = CrystalRecord {
                colors: self.colors.clone(),
                arrows: self.arrows.clone(),
                ground: self.ground.clone(),
                rank: self.rank,
                theta: self.theta.clone(),
            };
            let graph = record.build()?;
            let (matrix, derived) = match &self.matrix {
                Some(rows) => (
                    EnergyMatrix::new(graph.alphabet().clone(), rows.clone())?,
                    false,
                ),
                None => (graph.solve_energy()?, true),
            };
            let (graph, matrix) = if check_order_compat(&matrix).holds {
                (graph, matrix)
            } else {
                let order = derive_order(&matrix).ok_or_else(|| {
                    Error::InvalidMatrix("no color order is compatible with the matrix".into())
                })?;
                let alphabet = Arc::new(graph.alphabet().with_order(order)?);
                (
                    graph.with_alphabet(alphabet.clone())?,
                    matrix.with_alphabet(alphabet)?,
                )
            };
            return Ok(CatalogEntry {
                name: self.name.clone(),
                alphabet: graph.alphabet().clone(),
                extras: self.extras(graph.alphabet())?,
                graph: Some(graph),
                matrix,
                derived,
            });
        }
        let rows = self
            .matrix
            .clone()
            .ok_or_else(|| Error::Parse("a case without arrows needs a matrix".into()))?;
        let rank = self.rank.unwrap_or(0);
        let weights: Vec<Weight> = match &self.weights {
            Some(ws) if ws.len() == self.colors.len() => {
                ws.iter().map(|w| Weight::from_roots(w)).collect()
            }
            Some(_) => return Err(Error::Parse("need one weight per color".into())),
            None => vec![Weight::zero(rank); self.colors.len()],
        };
        let colors = self.colors.iter().cloned().zip(weights).collect();
        let alphabet = Arc::new(Alphabet::descending_labels(colors, self.ground.as_deref())?);
        Ok(CatalogEntry {
            name: self.name.clone(),
            matrix: EnergyMatrix::new(alphabet.clone(), rows)?,
            extras: self.extras(&alphabet)?,
            alphabet,
            graph: None,
            derived: false,
        })
    }

    fn extras(&self, alphabet: &Alphabet) -> Result<Vec<ForbiddenPattern>> {
        self.extras
            .iter()
            .map(|cells| {
                let cells: Vec<(u32, &str)> = cells.iter().map(|(o, l)| (*o, l.as_str())).collect();
                ForbiddenPattern::from_labels(alphabet, &cells)
            })
            .collect()
    }

    pub fn build(&self) -> Result<IdentityCase> {
        let entry = self.entry()?;
        let spec = match &self.grading {
            Some(g) => Specialization::from_root_grading(entry.alphabet.clone(), g)?,
            None => Specialization::principal(entry.alphabet.clone()),
        };
        IdentityCase::new(entry, spec, self.product.clone(), self.mode, self.order)
    }
}

pub fn load_case(path: &Path) -> Result<IdentityCase> {
    let text = std::fs::read_to_string(path)?;
    let file: CaseFile = serde_json::from_str(&text)?;
    file.build()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::{verify, Verdict};
    use std::io::Write;

    const CAPPARELLI: &str = r#"{
        "name": "capparelli-from-file",
        "colors": ["1", "2", "3"],
        "matrix": [[2, 2, 2], [1, 1, 2], [0, 1, 2]],
        "rank": 1,
        "weights": [[1], [0], [-1]],
        "grading": [1, 2],
        "product": {"factors": [{"modulus": 6, "residues": [0, 1, 3, 5], "form": "binomial"}]},
        "order": 15
    }"#;

    const FOUR_COLOR: &str = r#"{
        "name": "four-color-graph",
        "colors": ["1", "2", "3", "4"],
        "arrows": [["1", 1, "3"], ["3", 1, "4"], ["4", 0, "2"], ["2", 0, "1"]],
        "ground": "2",
        "mode": "explore"
    }"#;

    #[test]
    fn matrix_case_from_file() {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        f.write_all(CAPPARELLI.as_bytes()).unwrap();
        let c = load_case(f.path()).unwrap();
        assert_eq!(c.order, 15);
        let r = verify(&c, c.order, true).unwrap();
        assert_eq!(r.verdict, Verdict::Pass);
    }

    #[test]
    fn graph_case_from_file() {
        let file: CaseFile = serde_json::from_str(FOUR_COLOR).unwrap();
        let c = file.build().unwrap();
        assert!(c.entry.derived);
        assert_eq!(c.matrix().rows()[0], vec![2, 1, 2, 2]);
        let r = verify(&c, 10, false).unwrap();
        assert_eq!(r.verdict, Verdict::Reported);
    }

    #[test]
    fn bad_files_are_errors() {
        let no_matrix = r#"{"name": "x", "colors": ["1"]}"#;
        let file: CaseFile = serde_json::from_str(no_matrix).unwrap();
        assert!(file.build().is_err());
        assert!(serde_json::from_str::<CaseFile>("{").is_err());
        let missing = load_case(Path::new("/definitely/not/here.json"));
        assert!(matches!(missing, Err(Error::Io(_))));
    }
}
