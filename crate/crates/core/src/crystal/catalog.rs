//! Built-in crystals and difference matrices.

use std::sync::Arc;

use super::{CrystalGraph, EnergyMatrix};
use crate::partitions::{Alphabet, Weight};
use crate::rules::{derive_order, ForbiddenPattern};
use crate::{Error, Result};

pub const CATALOG_NAMES: [&str; 10] = [
    "a2-basic",
    "a3-basic",
    "a1-four-color",
    "a1-three-color",
    "capparelli",
    "rr-single",
    "distinct-single",
    "half-int-distinct",
    "half-int-diff3",
    "mp3-gamma-prime",
];

/// Published difference matrix of the nine-letter `A₂⁽¹⁾` crystal, rows and
/// columns in label order `1..9`.
pub const A2_PRINTED: [[u8; 9]; 9] = [
    [2, 2, 2, 1, 2, 2, 2, 2, 2],
    [1, 2, 1, 1, 2, 1, 2, 2, 2],
    [1, 1, 2, 1, 1, 2, 2, 2, 2],
    [1, 1, 1, 0, 1, 1, 1, 1, 1],
    [0, 0, 1, 1, 0, 1, 1, 2, 2],
    [0, 1, 0, 1, 1, 0, 2, 1, 2],
    [0, 1, 0, 1, 1, 0, 2, 1, 2],
    [0, 0, 1, 1, 0, 1, 1, 2, 2],
    [0, 0, 0, 1, 0, 0, 1, 1, 2],
];

pub const A1_FOUR_COLOR: [[u8; 4]; 4] = [[2, 1, 2, 2], [1, 0, 1, 1], [0, 1, 0, 2], [0, 1, 0, 2]];

pub const A1_THREE_COLOR: [[u8; 3]; 3] = [[2, 2, 2], [1, 1, 2], [0, 1, 2]];

/// Labels `1 2 3 5 6 7 8 9`.
pub const GAMMA_PRIME: [[u8; 8]; 8] = [
    [2, 2, 2, 2, 2, 2, 2, 2],
    [1, 2, 1, 2, 1, 2, 2, 2],
    [1, 1, 2, 1, 2, 2, 2, 2],
    [0, 1, 1, 1, 1, 1, 2, 2],
    [1, 1, 1, 1, 1, 2, 1, 2],
    [0, 1, 0, 1, 1, 2, 1, 2],
    [0, 0, 1, 1, 1, 1, 2, 2],
    [0, 0, 0, 0, 1, 1, 1, 2],
];

const A2_ARROWS: [(&str, usize, &str); 12] = [
    ("1", 1, "2"),
    ("2", 2, "5"),
    ("1", 2, "3"),
    ("5", 2, "8"),
    ("3", 1, "6"),
    ("6", 1, "7"),
    ("8", 1, "9"),
    ("7", 2, "9"),
    ("9", 0, "4"),
    ("4", 0, "1"),
    ("8", 0, "3"),
    ("7", 0, "2"),
];

const A3_LABELS: [&str; 16] = [
    "11", "12", "13", "14", "21", "22", "23", "24", "31", "32", "33", "34", "41", "42", "43", "44",
];

const A3_ARROWS: [(&str, usize, &str); 24] = [
    ("14", 1, "24"),
    ("24", 2, "34"),
    ("34", 3, "44"),
    ("14", 3, "13"),
    ("24", 3, "23"),
    ("44", 3, "43"),
    ("13", 1, "23"),
    ("23", 2, "33"),
    ("13", 2, "12"),
    ("33", 2, "32"),
    ("43", 2, "42"),
    ("12", 1, "22"),
    ("32", 3, "42"),
    ("22", 1, "21"),
    ("32", 1, "31"),
    ("42", 1, "41"),
    ("21", 2, "31"),
    ("31", 3, "41"),
    ("41", 0, "11"),
    ("11", 0, "14"),
    ("21", 0, "24"),
    ("31", 0, "34"),
    ("42", 0, "12"),
    ("43", 0, "13"),
];

const A1_FOUR_ARROWS: [(&str, usize, &str); 4] =
    [("1", 1, "3"), ("3", 1, "4"), ("4", 0, "2"), ("2", 0, "1")];

/// A crystal (or bare matrix) together with any extra forbidden patterns.
#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: String,
    pub alphabet: Arc<Alphabet>,
    /// Present when the matrix is derived from (or checked against) a graph.
    pub graph: Option<CrystalGraph>,
    pub matrix: EnergyMatrix,
    pub extras: Vec<ForbiddenPattern>,
    /// The matrix is the solver output for `graph`, not a printed table.
    pub derived: bool,
}

fn zero_weights(labels: &[&str], rank: usize) -> Vec<(String, Weight)> {
    labels
        .iter()
        .map(|l| (l.to_string(), Weight::zero(rank)))
        .collect()
}

/// The `A₂⁽¹⁾` crystal with solved weights; order `1 ≻ 2 ≻ … ≻ 9`, ground `4`.
pub fn a2_graph() -> Result<CrystalGraph> {
    let labels = ["1", "2", "3", "4", "5", "6", "7", "8", "9"];
    let alphabet = Alphabet::descending_labels(zero_weights(&labels, 2), Some("4"))?;
    CrystalGraph::from_labels(Arc::new(alphabet), 2, &A2_ARROWS)?
        .with_solved_weights(&Weight::from_roots(&[1, 1]))
}

/// The sixteen-letter `A₃⁽¹⁾` crystal with solved weights and ground `11`.
/// The color order is provisional until [`a3_basic`] derives one from the energy.
pub fn a3_graph() -> Result<CrystalGraph> {
    let alphabet = Alphabet::descending_labels(zero_weights(&A3_LABELS, 3), Some("11"))?;
    CrystalGraph::from_labels(Arc::new(alphabet), 3, &A3_ARROWS)?
        .with_solved_weights(&Weight::from_roots(&[1, 1, 1]))
}

pub fn a1_four_color_graph() -> Result<CrystalGraph> {
    let alphabet = Alphabet::descending_labels(zero_weights(&["1", "2", "3", "4"], 1), Some("2"))?;
    CrystalGraph::from_labels(Arc::new(alphabet), 1, &A1_FOUR_ARROWS)?
        .with_solved_weights(&Weight::from_roots(&[1]))
}

fn derived_entry(name: &str, graph: CrystalGraph) -> Result<CatalogEntry> {
    let matrix = graph.solve_energy()?;
    Ok(CatalogEntry {
        name: name.to_string(),
        alphabet: graph.alphabet().clone(),
        graph: Some(graph),
        matrix,
        extras: Vec::new(),
        derived: true,
    })
}

fn a3_basic() -> Result<CatalogEntry> {
    let graph = a3_graph()?;
    let matrix = graph.solve_energy()?;
    let order = derive_order(&matrix).ok_or_else(|| {
        Error::InvalidMatrix("no total order is compatible with the A3 energy matrix".into())
    })?;
    let alphabet = Arc::new(graph.alphabet().with_order(order)?);
    Ok(CatalogEntry {
        name: "a3-basic".into(),
        alphabet: alphabet.clone(),
        matrix: matrix.with_alphabet(alphabet.clone())?,
        graph: Some(graph.with_alphabet(alphabet)?),
        extras: Vec::new(),
        derived: true,
    })
}

fn printed_entry(
    name: &str,
    alphabet: Alphabet,
    rows: Vec<Vec<u8>>,
    graph: Option<CrystalGraph>,
) -> Result<CatalogEntry> {
    let alphabet = Arc::new(alphabet);
    Ok(CatalogEntry {
        name: name.to_string(),
        matrix: EnergyMatrix::new(alphabet.clone(), rows)?,
        alphabet,
        graph,
        extras: Vec::new(),
        derived: false,
    })
}

fn labelled(pairs: &[(&str, Weight)]) -> Vec<(String, Weight)> {
    pairs
        .iter()
        .map(|(l, w)| (l.to_string(), w.clone()))
        .collect()
}

fn rows<const N: usize>(m: &[[u8; N]]) -> Vec<Vec<u8>> {
    m.iter().map(|r| r.to_vec()).collect()
}

pub fn catalog(name: &str) -> Result<CatalogEntry> {
    let half = |d: i64| Weight::from_doubled(vec![d]);
    let root = |c: i64| Weight::from_roots(&[c]);
    match name {
        "a2-basic" => derived_entry(name, a2_graph()?),
        "a3-basic" => a3_basic(),
        "a1-four-color" => {
            let graph = a1_four_color_graph()?;
            let alphabet = (**graph.alphabet()).clone();
            printed_entry(name, alphabet, rows(&A1_FOUR_COLOR), Some(graph))
        }
        "a1-three-color" | "capparelli" => {
            let colors = labelled(&[("1", root(1)), ("2", root(0)), ("3", root(-1))]);
            let alphabet = Alphabet::descending_labels(colors, None)?;
            printed_entry(name, alphabet, rows(&A1_THREE_COLOR), None)
        }
        "rr-single" | "distinct-single" => {
            let alphabet = Alphabet::descending_labels(labelled(&[("1", Weight::zero(0))]), None)?;
            let entry = if name == "rr-single" { 2 } else { 1 };
            printed_entry(name, alphabet, vec![vec![entry]], None)
        }
        "half-int-distinct" | "half-int-diff3" => {
            let colors = labelled(&[("1", half(1)), ("2", half(-1))]);
            let alphabet = Alphabet::descending_labels(colors, None)?;
            let m = if name == "half-int-distinct" {
                vec![vec![1, 1], vec![0, 1]]
            } else {
                vec![vec![2, 2], vec![1, 2]]
            };
            printed_entry(name, alphabet, m, None)
        }
        "mp3-gamma-prime" => {
            let full = a2_graph()?;
            let four = full.alphabet().find("4")?;
            let alphabet = full.alphabet().without(&[four])?;
            let mut entry = printed_entry(name, alphabet, rows(&GAMMA_PRIME), None)?;
            let a = entry.alphabet.clone();
            entry.extras = vec![
                ForbiddenPattern::from_labels(&a, &[(1, "3"), (0, "5"), (0, "1")])?,
                ForbiddenPattern::from_labels(&a, &[(1, "9"), (1, "5"), (0, "7")])?,
            ];
            Ok(entry)
        }
        _ => Err(Error::UnknownCase(name.to_string())),
    }
}
