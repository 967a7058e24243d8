//! Identity catalog, verification reports, the structural suite and the
//! bijection audit.

mod audit;
mod cases;
mod load;

use std::fmt;
use std::time::Instant;

use serde::Serialize;
use serde_json::Value;

use crate::crystal::catalog::{catalog, A1_FOUR_COLOR, A2_PRINTED};
use crate::crystal::EnergyMatrix;
use crate::qseries::{big_to_json, brute_force_gen_function, gen_function, QSeries};
use crate::rules::{
    check_local_triples, check_order_compat, check_symmetry, check_triangle,
    permutation_from_swaps, DifferenceRuleSet,
};
use crate::Result;

pub use audit::{bijection_audit, AuditReport, AuditRow, AuditViolation};
pub use cases::{case, case_names, IdentityCase, Mode};
pub use load::{load_case, CaseFile};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Reported,
    Error,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Reported => "reported",
            Verdict::Error => "error",
        })
    }
}

/// The smallest exponent at which two series disagree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub exponent_times_2: usize,
    pub sum: Value,
    pub other: Value,
}

impl Mismatch {
    fn between(a: &QSeries, b: &QSeries) -> Option<Mismatch> {
        a.first_difference(b).map(|e| Mismatch {
            exponent_times_2: e,
            sum: big_to_json(a.coeff_doubled(e)),
            other: big_to_json(b.coeff_doubled(e)),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OracleCheck {
    pub agrees: bool,
    pub first_mismatch: Option<Mismatch>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub case: String,
    /// Truncation in integer powers of `q`.
    pub order: usize,
    pub verdict: Verdict,
    pub sum: Option<Value>,
    pub product: Option<Value>,
    pub first_mismatch: Option<Mismatch>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub product_formula: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub product_note: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleCheck>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub ms: u128,
    #[serde(skip)]
    pub sum_series: Option<QSeries>,
    #[serde(skip)]
    pub product_series: Option<QSeries>,
}

impl Report {
    fn error(case: &str, order: usize, err: &crate::Error) -> Self {
        Report {
            case: case.to_string(),
            order,
            verdict: Verdict::Error,
            sum: None,
            product: None,
            first_mismatch: None,
            product_formula: None,
            product_note: None,
            oracle: None,
            error: Some(err.to_string()),
            ms: 0,
            sum_series: None,
            product_series: None,
        }
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("reports serialize")
    }

    /// The JSON form without the timing field; equal for repeated runs.
    pub fn content_json(&self) -> Value {
        let mut v = self.to_json();
        if let Value::Object(map) = &mut v {
            map.remove("ms");
        }
        v
    }

    /// For explore cases with a product: the largest `n` such that both sides
    /// agree through `q^n`.
    pub fn agreement_order(&self) -> Option<usize> {
        self.product_series.as_ref()?;
        Some(match &self.first_mismatch {
            Some(m) if m.exponent_times_2 < 2 => return None,
            Some(m) => (m.exponent_times_2 - 1) / 2,
            None => self.order,
        })
    }

    pub fn is_failure(&self, mode: Mode) -> bool {
        match mode {
            Mode::Assert => self.verdict != Verdict::Pass,
            Mode::Explore => self.verdict == Verdict::Error,
        }
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}  order {}  {}", self.case, self.order, self.verdict)?;
        if let Some(e) = &self.error {
            writeln!(f, "  error:   {e}")?;
        }
        if let Some(s) = &self.sum_series {
            writeln!(f, "  sum:     {s}")?;
        }
        if let Some(p) = &self.product_series {
            writeln!(f, "  product: {p}")?;
        }
        if let Some(formula) = &self.product_formula {
            writeln!(f, "  formula: {formula}")?;
        }
        if let Some(note) = &self.product_note {
            writeln!(f, "  note:    {note}")?;
        }
        if let Some(m) = &self.first_mismatch {
            writeln!(
                f,
                "  first mismatch at q^{}: sum {} vs product {}",
                exponent_text(m.exponent_times_2),
                m.sum,
                m.other
            )?;
        }
        if self.verdict == Verdict::Reported {
            if let Some(n) = self.agreement_order() {
                writeln!(f, "  agrees with the product through q^{n}")?;
            }
        }
        if let Some(o) = &self.oracle {
            match &o.first_mismatch {
                None => writeln!(f, "  oracle:  agrees")?,
                Some(m) => writeln!(
                    f,
                    "  oracle:  differs at q^{}: fast {} vs brute force {}",
                    exponent_text(m.exponent_times_2),
                    m.sum,
                    m.other
                )?,
            }
        }
        Ok(())
    }
}

fn exponent_text(doubled: usize) -> String {
    if doubled.is_multiple_of(2) {
        (doubled / 2).to_string()
    } else {
        format!("{doubled}/2")
    }
}

/// Computes the sum side (and the product side, if any) through `q^order`.
pub fn verify(case: &IdentityCase, order: usize, oracle: bool) -> Result<Report> {
    let start = Instant::now();
    let t = 2 * order;
    let sum = gen_function(&case.rules, &case.spec, t)?;
    let oracle = if oracle {
        let brute = brute_force_gen_function(&case.rules, &case.spec, t)?;
        let first_mismatch = Mismatch::between(&sum, &brute);
        Some(OracleCheck {
            agrees: first_mismatch.is_none(),
            first_mismatch,
        })
    } else {
        None
    };
    let product = case.product.as_ref().map(|p| p.expand(t));
    let first_mismatch = product.as_ref().and_then(|p| Mismatch::between(&sum, p));
    let oracle_ok = oracle.as_ref().is_none_or(|o| o.agrees);
    let verdict = match case.mode {
        Mode::Explore => Verdict::Reported,
        Mode::Assert if first_mismatch.is_none() && oracle_ok => Verdict::Pass,
        Mode::Assert => Verdict::Fail,
    };
    Ok(Report {
        case: case.name.clone(),
        order,
        verdict,
        sum: Some(sum.to_json()),
        product: product.as_ref().map(QSeries::to_json),
        first_mismatch,
        product_formula: case.product.as_ref().map(ToString::to_string),
        product_note: case.product.as_ref().and_then(|p| p.note.clone()),
        oracle,
        error: None,
        ms: start.elapsed().as_millis(),
        sum_series: Some(sum),
        product_series: product,
    })
}

/// A named property of a cataloged matrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StructuralCheck {
    pub case: String,
    pub check: String,
    pub holds: bool,
    pub detail: String,
}

impl fmt::Display for StructuralCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mark = if self.holds { "pass" } else { "FAIL" };
        write!(f, "{mark}  {}: {}", self.case, self.check)?;
        if !self.detail.is_empty() {
            write!(f, " ({})", self.detail)?;
        }
        Ok(())
    }
}

fn witnesses<W: fmt::Debug>(w: &[W]) -> String {
    if w.is_empty() {
        String::new()
    } else {
        format!("witnesses {w:?}")
    }
}

fn matrix_checks(name: &str, e: &EnergyMatrix, out: &mut Vec<StructuralCheck>) -> Result<()> {
    let mut push = |check: &str, holds: bool, detail: String| {
        out.push(StructuralCheck {
            case: name.to_string(),
            check: check.to_string(),
            holds,
            detail,
        })
    };
    let order = check_order_compat(e);
    push(
        "E=0 implies order",
        order.holds,
        witnesses(&order.witnesses),
    );
    let triangle = check_triangle(e);
    push(
        "triangle inequality",
        triangle.holds,
        witnesses(&triangle.witnesses),
    );
    let d = DifferenceRuleSet::build(e, vec![])?;
    let local = check_local_triples(&d);
    push(
        "local triple condition",
        local.holds,
        witnesses(&local.witnesses),
    );
    let a = e.alphabet();
    let ground = a.ground();
    let ground_ok = ground.is_some_and(|g| e.get(g, g) == 0 && a.weight(g).is_zero());
    push(
        "ground letter has zero energy and weight",
        ground_ok,
        String::new(),
    );
    let mut total = crate::partitions::Weight::zero(a.weight_rank());
    for c in a.ids() {
        total += a.weight(c);
    }
    push(
        "weights sum to zero",
        total.is_zero(),
        format!("sum {total}"),
    );
    Ok(())
}

/// Order compatibility, the triangle inequality, the local triple
/// condition and basic ground-state facts for the two graph-derived cases,
/// plus agreement of solver output with the printed tables and the
/// `(2 3)(5 6)(7 8)` symmetry of the nine-color matrix.
pub fn structural_suite() -> Result<Vec<StructuralCheck>> {
    let mut out = Vec::new();
    let a2 = catalog("a2-basic")?;
    let printed = EnergyMatrix::from_rows(a2.alphabet.clone(), &A2_PRINTED)?;
    out.push(StructuralCheck {
        case: "a2-basic".into(),
        check: "solver output equals printed matrix".into(),
        holds: a2.matrix == printed,
        detail: String::new(),
    });
    matrix_checks("a2-basic", &a2.matrix, &mut out)?;
    let sigma = permutation_from_swaps(&a2.alphabet, &[("2", "3"), ("5", "6"), ("7", "8")])?;
    out.push(StructuralCheck {
        case: "a2-basic".into(),
        check: "invariant under (2 3)(5 6)(7 8)".into(),
        holds: check_symmetry(&a2.matrix, &sigma)?,
        detail: String::new(),
    });
    let a3 = catalog("a3-basic")?;
    matrix_checks("a3-basic", &a3.matrix, &mut out)?;
    let four = catalog("a1-four-color")?;
    let solved = four
        .graph
        .as_ref()
        .expect("four-color entry carries its graph")
        .solve_energy()?
        .with_alphabet(four.alphabet.clone())?;
    out.push(StructuralCheck {
        case: "a1-four-color".into(),
        check: "solver output equals printed matrix".into(),
        holds: solved == EnergyMatrix::from_rows(four.alphabet.clone(), &A1_FOUR_COLOR)?,
        detail: String::new(),
    });
    Ok(out)
}

/// Outcome of [`run_all`].
#[derive(Clone, Debug)]
pub struct RunSummary {
    pub reports: Vec<(Mode, Report)>,
    pub structural: Vec<StructuralCheck>,
}

impl RunSummary {
    pub fn all_passed(&self) -> bool {
        self.reports.iter().all(|(mode, r)| !r.is_failure(*mode))
            && self.structural.iter().all(|c| c.holds)
    }
}

/// Every built-in case at its default order (or `order` if given), run in
/// parallel and reported in name order, followed by the structural suite.
pub fn run_all(order: Option<usize>) -> RunSummary {
    let mut reports: Vec<(Mode, Report)> = std::thread::scope(|scope| {
        let handles: Vec<_> = case_names()
            .iter()
            .map(|&name| {
                scope.spawn(move || match case(name) {
                    Ok(c) => {
                        let n = order.unwrap_or(c.order);
                        let report =
                            verify(&c, n, false).unwrap_or_else(|e| Report::error(name, n, &e));
                        (c.mode, report)
                    }
                    Err(e) => (Mode::Assert, Report::error(name, order.unwrap_or(0), &e)),
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("case worker panicked"))
            .collect()
    });
    reports.sort_by(|a, b| a.1.case.cmp(&b.1.case));
    let structural = structural_suite().unwrap_or_else(|e| {
        vec![StructuralCheck {
            case: "catalog".into(),
            check: "structural suite".into(),
            holds: false,
            detail: e.to_string(),
        }]
    });
    RunSummary {
        reports,
        structural,
    }
}
