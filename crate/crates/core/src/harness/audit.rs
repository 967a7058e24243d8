use std::collections::HashMap;
use std::fmt;
use std::time::Instant;

use serde::Serialize;

use super::{IdentityCase, Verdict};
use crate::partitions::{ColoredPartition, PlainPartition};
use crate::paths::{compose, decompose, enumerate_paths, part_d, path_weight, Path};
use crate::qseries::enumerate_ideal;
use crate::{Error, Result};

/// Pair and ideal counts at one box count.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AuditRow {
    pub boxes: u64,
    pub pairs: u64,
    pub ideal: u64,
}

/// The smallest counterexample found for one kind of failure.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AuditViolation {
    pub kind: String,
    pub boxes: u64,
    pub witness: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct AuditReport {
    pub case: String,
    pub boxes: u64,
    pub verdict: Verdict,
    pub paths: usize,
    pub rows: Vec<AuditRow>,
    pub violations: Vec<AuditViolation>,
    pub ms: u128,
}

impl fmt::Display for AuditReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{}  boxes ≤ {}  {}  ({} paths)",
            self.case, self.boxes, self.verdict, self.paths
        )?;
        writeln!(f, "  boxes  pairs  ideal")?;
        for r in &self.rows {
            writeln!(f, "  {:>5}  {:>5}  {:>5}", r.boxes, r.pairs, r.ideal)?;
        }
        for v in &self.violations {
            writeln!(
                f,
                "  violation [{}] at {} boxes: {}",
                v.kind, v.boxes, v.witness
            )?;
        }
        Ok(())
    }
}

#[derive(Default)]
struct Violations(HashMap<&'static str, AuditViolation>);

impl Violations {
    fn record(&mut self, kind: &'static str, boxes: u64, witness: impl FnOnce() -> String) {
        let entry = self.0.get(kind);
        if entry.is_none_or(|v| boxes < v.boxes) {
            self.0.insert(
                kind,
                AuditViolation {
                    kind: kind.to_string(),
                    boxes,
                    witness: witness(),
                },
            );
        }
    }

    fn into_sorted(self) -> Vec<AuditViolation> {
        let mut v: Vec<AuditViolation> = self.0.into_values().collect();
        v.sort_by(|a, b| (a.boxes, &a.kind).cmp(&(b.boxes, &b.kind)));
        v
    }
}

/// Checks that `(p, Δ) ↦ part_D(p) ⊕ Δ` is a box- and weight-preserving
/// bijection from pairs with at most `max_boxes` boxes onto the elements of
/// `𝒫_𝒟` with at most `max_boxes` boxes, and that [`decompose`] inverts it.
pub fn bijection_audit(case: &IdentityCase, max_boxes: u64) -> Result<AuditReport> {
    let start = Instant::now();
    let e = case.matrix();
    let d = &case.rules;
    let alphabet = e.alphabet().clone();
    if alphabet.ground().is_none() {
        return Err(Error::NoGround);
    }
    if !case.entry.extras.is_empty() {
        return Err(Error::InvalidPattern(
            "the path bijection needs a rule set generated by the matrix alone".into(),
        ));
    }
    let paths = enumerate_paths(e, max_boxes)?;
    let deltas: Vec<Vec<PlainPartition>> = (0..=max_boxes as u32)
        .map(PlainPartition::all_of_size)
        .collect();
    let width = max_boxes as usize + 1;
    let mut pair_counts = vec![0u64; width];
    let mut violations = Violations::default();
    let mut image: HashMap<ColoredPartition, (usize, PlainPartition)> = HashMap::new();
    let show = |p: &Path| p.display(&alphabet).to_string();
    for (index, (p, degree)) in paths.iter().enumerate() {
        let base = part_d(p, e)?;
        if base.box_count() != *degree {
            violations.record("box count of part_D", *degree, || show(p));
        }
        let weight = path_weight(p, &alphabet);
        if base.weight() != weight {
            violations.record("weight of part_D", *degree, || show(p));
        }
        for n in 0..=(max_boxes - degree) {
            for delta in &deltas[n as usize] {
                let boxes = degree + n;
                pair_counts[boxes as usize] += 1;
                let pi = compose(p, delta, e)?;
                if pi.box_count() != boxes {
                    violations.record("box count", boxes, || format!("{} ⊕ {delta}", show(p)));
                }
                if pi.weight() != weight {
                    violations.record("weight", boxes, || format!("{} ⊕ {delta}", show(p)));
                }
                if !d.satisfies(&pi) {
                    violations.record("image outside ideal", boxes, || {
                        format!("{} ⊕ {delta} = {pi}", show(p))
                    });
                }
                if let Some((other, other_delta)) = image.get(&pi) {
                    violations.record("injectivity", boxes, || {
                        format!(
                            "{} ⊕ {delta} and {} ⊕ {other_delta} both give {pi}",
                            show(p),
                            show(&paths[*other].0)
                        )
                    });
                } else {
                    image.insert(pi, (index, delta.clone()));
                }
            }
        }
    }
    let mut ideal_counts = vec![0u64; width];
    for pi in enumerate_ideal(d, |_, k| k, max_boxes) {
        let boxes = pi.box_count();
        ideal_counts[boxes as usize] += 1;
        match image.get(&pi) {
            None => violations.record("surjectivity", boxes, || pi.to_string()),
            Some((index, delta)) => match decompose(&pi, d) {
                Ok((p, dd)) if p == paths[*index].0 && dd == *delta => {}
                Ok((p, dd)) => violations.record("inverse", boxes, || {
                    format!("{pi} decomposes as {} ⊕ {dd}", show(&p))
                }),
                Err(err) => violations.record("inverse", boxes, || format!("{pi}: {err}")),
            },
        }
    }
    for (boxes, (pairs, ideal)) in pair_counts.iter().zip(&ideal_counts).enumerate() {
        if pairs != ideal {
            violations.record("count", boxes as u64, || {
                format!("{pairs} pairs vs {ideal} partitions")
            });
        }
    }
    let violations = violations.into_sorted();
    Ok(AuditReport {
        case: case.name.clone(),
        boxes: max_boxes,
        verdict: if violations.is_empty() {
            Verdict::Pass
        } else {
            Verdict::Fail
        },
        paths: paths.len(),
        rows: (0..width)
            .map(|b| AuditRow {
                boxes: b as u64,
                pairs: pair_counts[b],
                ideal: ideal_counts[b],
            })
            .collect(),
        violations,
        ms: start.elapsed().as_millis(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::case;

    #[test]
    fn empty_budget() {
        let r = bijection_audit(&case("a2-basic").unwrap(), 0).unwrap();
        assert_eq!(r.verdict, Verdict::Pass);
        assert_eq!(r.paths, 1);
        assert_eq!(
            r.rows,
            vec![AuditRow {
                boxes: 0,
                pairs: 1,
                ideal: 1
            }]
        );
    }

    #[test]
    fn a2_small_budget() {
        let c = case("a2-basic").unwrap();
        let r = bijection_audit(&c, 6).unwrap();
        assert_eq!(r.verdict, Verdict::Pass, "{r}");
        assert_eq!(r.rows[1].ideal, 9);
        let w = crate::qseries::weighted_character(&c.rules, 6);
        for row in &r.rows {
            assert_eq!(w.count_at(row.boxes), row.pairs.into());
        }
    }

    #[test]
    fn cases_without_ground_are_rejected() {
        assert!(matches!(
            bijection_audit(&case("rr-single").unwrap(), 3),
            Err(Error::NoGround)
        ));
    }
}
