use std::fmt;

use nalgebra::DMatrix;

use super::ChoiceDataset;
use crate::scalar::Scalar;

/// Singular values below this fraction of the largest count as zero.
const RANK_TOLERANCE: f64 = 1e-10;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Severity {
    Error,
    Warning,
}

impl fmt::Display for Severity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Severity::Error => "ERROR",
            Severity::Warning => "WARNING",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Finding {
    pub severity: Severity,
    pub code: &'static str,
    pub message: String,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct ValidationReport {
    pub findings: Vec<Finding>,
}

impl ValidationReport {
    pub fn is_clean(&self) -> bool {
        self.findings.is_empty()
    }

    pub fn has_errors(&self) -> bool {
        self.findings.iter().any(|f| f.severity == Severity::Error)
    }

    pub fn with_code<'a>(&'a self, code: &'a str) -> impl Iterator<Item = &'a Finding> + 'a {
        self.findings.iter().filter(move |f| f.code == code)
    }

    /// One `SEVERITY<tab>code<tab>message` line per finding.
    pub fn to_text(&self) -> String {
        self.findings
            .iter()
            .map(|f| format!("{}\t{}\t{}\n", f.severity, f.code, f.message))
            .collect()
    }

    fn push(&mut self, severity: Severity, code: &'static str, message: String) {
        self.findings.push(Finding {
            severity,
            code,
            message,
        });
    }
}

/// Reports content problems: unavailable chosen alternatives, too few
/// available alternatives, codes outside an attribute's declared range and
/// attributes that cannot be identified from within-situation differences.
pub fn validate_dataset<T: Scalar>(ds: &ChoiceDataset<T>) -> ValidationReport {
    let mut report = ValidationReport::default();
    let schema = ds.schema();

    for s in ds.situations() {
        if !s.alternatives[s.chosen].available {
            report.push(
                Severity::Error,
                "unavailable-chosen",
                format!(
                    "situation `{}`: chosen alternative `{}` is unavailable",
                    s.situation_id,
                    s.chosen_id()
                ),
            );
        }
        if s.n_available() < 2 {
            report.push(
                Severity::Error,
                "too-few-available",
                format!("situation `{}`: fewer than 2 available alternatives", s.situation_id),
            );
        }
        for alt in &s.alternatives {
            for (k, (&value, kind)) in alt.attributes.iter().zip(schema.attribute_kinds()).enumerate() {
                if !kind.admits(value.to_f64_lossy()) {
                    report.push(
                        Severity::Error,
                        "out-of-range",
                        format!(
                            "situation `{}`, alternative `{}`: {} = {} outside declared {}",
                            s.situation_id,
                            alt.alt_id,
                            schema.attribute_names()[k],
                            value,
                            kind.describe()
                        ),
                    );
                }
            }
        }
    }

    for k in non_identified_attributes(ds) {
        report.push(
            Severity::Error,
            "non-identified",
            format!(
                "attribute `{}` has no independent within-situation variation",
                schema.attribute_names()[k]
            ),
        );
    }
    report
}

/// Indices of attributes whose within-situation difference column adds no
/// rank to the columns before it.
fn non_identified_attributes<T: Scalar>(ds: &ChoiceDataset<T>) -> Vec<usize> {
    let k = ds.schema().n_attributes();
    // Gram matrix of differences against the first available alternative.
    let mut gram = DMatrix::<f64>::zeros(k, k);
    let mut diff = vec![0.0; k];
    for s in ds.situations() {
        let mut avail = s.alternatives.iter().filter(|a| a.available);
        let Some(base) = avail.next() else { continue };
        for alt in avail {
            for (d, (x, b)) in diff.iter_mut().zip(alt.attributes.iter().zip(&base.attributes)) {
                *d = (*x - *b).to_f64_lossy();
            }
            for a in 0..k {
                for c in 0..k {
                    gram[(a, c)] += diff[a] * diff[c];
                }
            }
        }
    }

    let top = max_singular_value(&gram);
    if top == 0.0 {
        return (0..k).collect();
    }
    let mut kept: Vec<usize> = Vec::new();
    let mut rejected = Vec::new();
    for col in 0..k {
        let mut trial = kept.clone();
        trial.push(col);
        let sub = DMatrix::from_fn(trial.len(), trial.len(), |a, c| gram[(trial[a], trial[c])]);
        if min_singular_value(&sub) <= RANK_TOLERANCE * top {
            rejected.push(col);
        } else {
            kept = trial;
        }
    }
    rejected
}

// Singular values of the difference matrix are square roots of the Gram
// eigenvalues.
fn max_singular_value(gram: &DMatrix<f64>) -> f64 {
    gram.clone()
        .symmetric_eigenvalues()
        .iter()
        .fold(0.0_f64, |m, &v| m.max(v.max(0.0).sqrt()))
}

fn min_singular_value(gram: &DMatrix<f64>) -> f64 {
    gram.clone()
        .symmetric_eigenvalues()
        .iter()
        .fold(f64::INFINITY, |m, &v| m.min(v.max(0.0).sqrt()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::choicedata::{AlternativeRecord, AttributeSchema, ChoiceSituation, ChoiceTask};

    fn dataset(rows: &[[[f64; 2]; 3]]) -> ChoiceDataset<f64> {
        let schema = AttributeSchema::parse("cost, track:binary", "").unwrap();
        let situations = rows
            .iter()
            .enumerate()
            .map(|(n, alts)| ChoiceSituation {
                task: ChoiceTask {
                    situation_id: format!("s{n}"),
                    respondent_id: format!("r{n}"),
                    alternatives: alts
                        .iter()
                        .enumerate()
                        .map(|(j, a)| AlternativeRecord {
                            alt_id: format!("c{}", j + 1),
                            attributes: a.to_vec(),
                            available: true,
                        })
                        .collect(),
                    covariates: vec![],
                },
                chosen: n % 3,
            })
            .collect();
        ChoiceDataset::new(schema, situations).unwrap()
    }

    #[test]
    fn clean_dataset_has_empty_report() {
        let ds = dataset(&[
            [[14.0, 0.0], [18.0, 1.0], [22.0, 0.0]],
            [[26.0, 1.0], [14.0, 1.0], [18.0, 0.0]],
        ]);
        let report = validate_dataset(&ds);
        assert!(report.is_clean(), "{}", report.to_text());
    }

    #[test]
    fn constant_cost_is_not_identified() {
        let ds = dataset(&[
            [[20.0, 0.0], [20.0, 1.0], [20.0, 0.0]],
            [[14.0, 1.0], [14.0, 0.0], [14.0, 0.0]],
        ]);
        let report = validate_dataset(&ds);
        let found: Vec<_> = report.with_code("non-identified").collect();
        assert_eq!(found.len(), 1);
        assert!(found[0].message.contains("`cost`"));
    }

    #[test]
    fn collinear_difference_columns_are_flagged() {
        // cost differences are exactly 4x the tracking differences.
        let ds = dataset(&[
            [[14.0, 0.0], [18.0, 1.0], [14.0, 0.0]],
            [[22.0, 1.0], [18.0, 0.0], [22.0, 1.0]],
        ]);
        let report = validate_dataset(&ds);
        let found: Vec<_> = report.with_code("non-identified").collect();
        assert_eq!(found.len(), 1);
        assert!(found[0].message.contains("`track`"));
    }

    #[test]
    fn unavailable_chosen_and_out_of_range_are_reported() {
        let ds = dataset(&[
            [[14.0, 0.0], [18.0, 1.0], [22.0, 0.0]],
            [[26.0, 1.0], [14.0, 2.0], [18.0, 0.0]],
        ]);
        let ds = ds
            .map_situations(|s| {
                let mut s = s.clone();
                if s.situation_id == "s0" {
                    s.task.alternatives[s.chosen].available = false;
                }
                s
            })
            .unwrap();
        let report = validate_dataset(&ds);
        assert_eq!(report.with_code("unavailable-chosen").count(), 1);
        assert_eq!(report.with_code("out-of-range").count(), 1);
        let text = report.to_text();
        assert!(text.lines().all(|l| l.split('\t').count() == 3));
        assert!(text.starts_with("ERROR\tunavailable-chosen\t"));
    }
}
