//! Long-format choice data: schema, situations, CSV I/O, structural checks and
//! fold splitting.

mod csv_io;
mod folds;
mod validation;

use std::collections::HashSet;
use std::ops::Deref;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

pub use csv_io::{load_csv, read_csv, save_csv, write_csv};
pub use folds::{split_kfold, split_kfold_by, Fold, FoldUnit};
pub use validation::{validate_dataset, Finding, Severity, ValidationReport};

/// How an attribute column is coded.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum AttributeKind {
    Continuous,
    /// Indicator coded 0/1.
    Binary,
    /// Integer codes `0..levels`.
    Categorical { levels: usize },
}

impl AttributeKind {
    fn admits(self, value: f64) -> bool {
        match self {
            AttributeKind::Continuous => value.is_finite(),
            AttributeKind::Binary => value == 0.0 || value == 1.0,
            AttributeKind::Categorical { levels } => {
                value.fract() == 0.0 && value >= 0.0 && value < levels as f64
            }
        }
    }

    fn describe(self) -> String {
        match self {
            AttributeKind::Continuous => "continuous".to_string(),
            AttributeKind::Binary => "binary".to_string(),
            AttributeKind::Categorical { levels } => format!("categorical({levels})"),
        }
    }
}

/// Names and codings of alternative attributes and case-level covariates.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AttributeSchema {
    attribute_names: Vec<String>,
    attribute_kinds: Vec<AttributeKind>,
    covariate_names: Vec<String>,
}

impl AttributeSchema {
    pub fn new(
        attribute_names: Vec<String>,
        attribute_kinds: Vec<AttributeKind>,
        covariate_names: Vec<String>,
    ) -> Result<Self> {
        if attribute_names.len() != attribute_kinds.len() {
            return Err(Error::Schema(format!(
                "{} attribute names but {} kinds",
                attribute_names.len(),
                attribute_kinds.len()
            )));
        }
        let mut seen = HashSet::new();
        for name in attribute_names.iter().chain(covariate_names.iter()) {
            if name.trim().is_empty() {
                return Err(Error::Schema("empty column name".into()));
            }
            if !seen.insert(name.as_str()) {
                return Err(Error::Schema(format!("duplicate column name `{name}`")));
            }
        }
        for (name, kind) in attribute_names.iter().zip(&attribute_kinds) {
            if let AttributeKind::Categorical { levels } = kind {
                if *levels < 2 {
                    return Err(Error::Schema(format!(
                        "categorical attribute `{name}` declares {levels} level(s); at least 2 required"
                    )));
                }
            }
        }
        Ok(Self {
            attribute_names,
            attribute_kinds,
            covariate_names,
        })
    }

    /// Continuous attributes and no covariates.
    pub fn continuous<S: AsRef<str>>(names: &[S]) -> Result<Self> {
        let names: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
        let kinds = vec![AttributeKind::Continuous; names.len()];
        Self::new(names, kinds, Vec::new())
    }

    /// Parses declarations such as `cost:continuous, tracking:binary,
    /// reputation:categorical(3)` plus a comma-separated covariate list.
    /// A bare name is continuous.
    pub fn parse(attributes: &str, covariates: &str) -> Result<Self> {
        let mut names = Vec::new();
        let mut kinds = Vec::new();
        for item in attributes.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (name, kind) = match item.split_once(':') {
                None => (item, AttributeKind::Continuous),
                Some((name, kind)) => (name.trim(), parse_kind(kind.trim())?),
            };
            names.push(name.to_string());
            kinds.push(kind);
        }
        if names.is_empty() {
            return Err(Error::Schema("no attributes declared".into()));
        }
        let covariates = covariates
            .split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(String::from)
            .collect();
        Self::new(names, kinds, covariates)
    }

    /// Inverse of [`AttributeSchema::parse`] for the attribute part.
    pub fn declaration(&self) -> String {
        self.attribute_names
            .iter()
            .zip(&self.attribute_kinds)
            .map(|(n, k)| format!("{n}:{}", k.describe()))
            .collect::<Vec<_>>()
            .join(", ")
    }

    pub fn attribute_names(&self) -> &[String] {
        &self.attribute_names
    }

    pub fn attribute_kinds(&self) -> &[AttributeKind] {
        &self.attribute_kinds
    }

    pub fn covariate_names(&self) -> &[String] {
        &self.covariate_names
    }

    pub fn n_attributes(&self) -> usize {
        self.attribute_names.len()
    }

    pub fn n_covariates(&self) -> usize {
        self.covariate_names.len()
    }

    pub fn attribute_index(&self, name: &str) -> Option<usize> {
        self.attribute_names.iter().position(|n| n == name)
    }

    pub fn covariate_index(&self, name: &str) -> Option<usize> {
        self.covariate_names.iter().position(|n| n == name)
    }
}

fn parse_kind(text: &str) -> Result<AttributeKind> {
    match text {
        "continuous" => Ok(AttributeKind::Continuous),
        "binary" => Ok(AttributeKind::Binary),
        _ => {
            let levels = text
                .strip_prefix("categorical(")
                .and_then(|rest| rest.strip_suffix(')'))
                .and_then(|n| n.trim().parse::<usize>().ok())
                .ok_or_else(|| Error::Schema(format!("unknown attribute kind `{text}`")))?;
            Ok(AttributeKind::Categorical { levels })
        }
    }
}

/// One alternative of a choice situation.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AlternativeRecord<T> {
    pub alt_id: String,
    pub attributes: Vec<T>,
    pub available: bool,
}

/// A choice set without an observed choice.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChoiceTask<T> {
    pub situation_id: String,
    pub respondent_id: String,
    pub alternatives: Vec<AlternativeRecord<T>>,
    pub covariates: Vec<T>,
}

impl<T: Scalar> ChoiceTask<T> {
    pub fn alternative_index(&self, alt_id: &str) -> Option<usize> {
        self.alternatives.iter().position(|a| a.alt_id == alt_id)
    }

    pub fn n_available(&self) -> usize {
        self.alternatives.iter().filter(|a| a.available).count()
    }

    fn check_shape(&self, schema: &AttributeSchema) -> Result<()> {
        let integrity = |reason: String| Error::Integrity {
            situation: self.situation_id.clone(),
            reason,
        };
        if self.alternatives.len() < 2 {
            return Err(integrity(format!(
                "{} alternative(s); at least 2 required",
                self.alternatives.len()
            )));
        }
        let mut ids = HashSet::new();
        for alt in &self.alternatives {
            if !ids.insert(alt.alt_id.as_str()) {
                return Err(integrity(format!("duplicate alternative `{}`", alt.alt_id)));
            }
            if alt.attributes.len() != schema.n_attributes() {
                return Err(integrity(format!(
                    "alternative `{}` has {} attributes, schema declares {}",
                    alt.alt_id,
                    alt.attributes.len(),
                    schema.n_attributes()
                )));
            }
        }
        if self.covariates.len() != schema.n_covariates() {
            return Err(integrity(format!(
                "{} covariates, schema declares {}",
                self.covariates.len(),
                schema.n_covariates()
            )));
        }
        Ok(())
    }
}

/// A choice task together with the index of the chosen alternative.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChoiceSituation<T> {
    pub task: ChoiceTask<T>,
    pub chosen: usize,
}

impl<T> Deref for ChoiceSituation<T> {
    type Target = ChoiceTask<T>;

    fn deref(&self) -> &ChoiceTask<T> {
        &self.task
    }
}

impl<T: Scalar> ChoiceSituation<T> {
    pub fn new(task: ChoiceTask<T>, chosen_id: &str) -> Result<Self> {
        let chosen = task.alternative_index(chosen_id).ok_or_else(|| Error::Integrity {
            situation: task.situation_id.clone(),
            reason: format!("chosen alternative `{chosen_id}` is not in the choice set"),
        })?;
        Ok(Self { task, chosen })
    }

    pub fn chosen_id(&self) -> &str {
        &self.task.alternatives[self.chosen].alt_id
    }
}

/// Situations sharing one schema. Immutable once built.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChoiceDataset<T> {
    schema: AttributeSchema,
    situations: Vec<ChoiceSituation<T>>,
}

impl<T: Scalar> ChoiceDataset<T> {
    /// Checks shapes against the schema. Content problems that are reported
    /// rather than rejected (unavailable chosen, out-of-range codes,
    /// non-identification) are left to [`validate_dataset`].
    pub fn new(schema: AttributeSchema, situations: Vec<ChoiceSituation<T>>) -> Result<Self> {
        if situations.is_empty() {
            return Err(Error::InvalidArgument("dataset has no situations".into()));
        }
        for s in &situations {
            s.task.check_shape(&schema)?;
            if s.chosen >= s.alternatives.len() {
                return Err(Error::Integrity {
                    situation: s.situation_id.clone(),
                    reason: "chosen index out of range".into(),
                });
            }
        }
        Ok(Self { schema, situations })
    }

    pub fn schema(&self) -> &AttributeSchema {
        &self.schema
    }

    pub fn situations(&self) -> &[ChoiceSituation<T>] {
        &self.situations
    }

    pub fn len(&self) -> usize {
        self.situations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.situations.is_empty()
    }

    /// Sub-dataset holding the situations at `indices`, in the given order.
    pub fn subset(&self, indices: &[usize]) -> Result<Self> {
        let situations = indices.iter().map(|&i| self.situations[i].clone()).collect();
        Self::new(self.schema.clone(), situations)
    }

    /// Alternative ids in order of first appearance across situations.
    pub fn alternative_ids(&self) -> Vec<String> {
        let mut ids: Vec<String> = Vec::new();
        for s in &self.situations {
            for a in &s.alternatives {
                if !ids.iter().any(|x| x == &a.alt_id) {
                    ids.push(a.alt_id.clone());
                }
            }
        }
        ids
    }

    /// Returns a copy where `f` rewrites every situation.
    pub fn map_situations<F>(&self, mut f: F) -> Result<Self>
    where
        F: FnMut(&ChoiceSituation<T>) -> ChoiceSituation<T>,
    {
        Self::new(self.schema.clone(), self.situations.iter().map(&mut f).collect())
    }
}

/// Choice tasks awaiting simulated choices.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Design<T> {
    schema: AttributeSchema,
    tasks: Vec<ChoiceTask<T>>,
}

impl<T: Scalar> Design<T> {
    pub fn new(schema: AttributeSchema, tasks: Vec<ChoiceTask<T>>) -> Result<Self> {
        if tasks.is_empty() {
            return Err(Error::InvalidArgument("design has no situations".into()));
        }
        for t in &tasks {
            t.check_shape(&schema)?;
        }
        Ok(Self { schema, tasks })
    }

    pub fn schema(&self) -> &AttributeSchema {
        &self.schema
    }

    pub fn tasks(&self) -> &[ChoiceTask<T>] {
        &self.tasks
    }

    pub fn len(&self) -> usize {
        self.tasks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tasks.is_empty()
    }
}


#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn schema_rejects_duplicates_and_single_level_categoricals() {
        assert!(AttributeSchema::continuous(&["a", "a"]).is_err());
        assert!(AttributeSchema::parse("rep:categorical(1)", "").is_err());
        assert!(AttributeSchema::parse("", "").is_err());
    }

    #[test]
    fn schema_declaration_round_trips() {
        let s = AttributeSchema::parse("cost, track:binary, rep:categorical(3)", "age").unwrap();
        assert_eq!(s.attribute_kinds()[2], AttributeKind::Categorical { levels: 3 });
        let again = AttributeSchema::parse(&s.declaration(), "age").unwrap();
        assert_eq!(s, again);
    }

    #[test]
    fn dataset_rejects_wrong_attribute_count() {
        let schema = AttributeSchema::continuous(&["a", "b"]).unwrap();
        let s = fixtures::situation("s1", &[1.0, 2.0], 0);
        assert!(matches!(
            ChoiceDataset::new(schema, vec![s]),
            Err(Error::Integrity { .. })
        ));
    }

    #[test]
    fn situation_requires_known_chosen_id() {
        let s = fixtures::situation("s1", &[1.0, 2.0], 0);
        assert!(ChoiceSituation::new(s.task.clone(), "a2").is_ok());
        assert!(ChoiceSituation::new(s.task, "zz").is_err());
    }

    #[test]
    fn empty_dataset_rejected() {
        let schema = AttributeSchema::continuous(&["a"]).unwrap();
        assert!(ChoiceDataset::<f64>::new(schema, vec![]).is_err());
    }
}
