use std::collections::HashSet;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::choicedata::{AttributeSchema, ChoiceTask};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// What a coefficient multiplies.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum TermSource {
    /// Generic attribute shared by every alternative.
    Attribute(String),
    /// Attribute entering only for one alternative (alternative-specific coefficient).
    AttributeAt { attribute: String, alternative: String },
    /// Attribute times a case-level covariate.
    Interaction { attribute: String, covariate: String },
    /// Case-level covariate entering only for one alternative.
    CovariateAt { covariate: String, alternative: String },
    /// Alternative-specific constant.
    Constant { alternative: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Term {
    pub name: String,
    pub source: TermSource,
}

impl Term {
    pub fn attribute(name: &str, attribute: &str) -> Self {
        Self {
            name: name.into(),
            source: TermSource::Attribute(attribute.into()),
        }
    }
}

/// Normally distributed coefficient: `beta = mean + |sd| * z`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RandomCoefficient {
    pub coefficient: String,
    pub mean_name: String,
    pub sd_name: String,
}

impl RandomCoefficient {
    pub fn normal(coefficient: &str, sd_name: &str) -> Self {
        Self {
            coefficient: coefficient.into(),
            mean_name: coefficient.into(),
            sd_name: sd_name.into(),
        }
    }
}

/// Declarative utility (or regret) specification.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModelSpec {
    terms: Vec<Term>,
    constants: Vec<String>,
    reference_alternative: Option<String>,
    random_coefficients: Vec<RandomCoefficient>,
}

pub fn constant_name(alternative: &str) -> String {
    format!("asc_{alternative}")
}

impl ModelSpec {
    /// `constants` lists the alternatives that receive a constant; the
    /// reference alternative is normalized to zero and must not be listed.
    pub fn new(
        terms: Vec<Term>,
        constants: Vec<String>,
        reference_alternative: Option<String>,
        random_coefficients: Vec<RandomCoefficient>,
    ) -> Result<Self> {
        if !constants.is_empty() {
            let reference = reference_alternative.as_deref().ok_or_else(|| {
                Error::Spec("alternative-specific constants need a reference alternative".into())
            })?;
            if constants.iter().any(|c| c == reference) {
                return Err(Error::Spec(format!(
                    "reference alternative `{reference}` cannot carry a constant"
                )));
            }
        }
        let spec = Self {
            terms,
            constants,
            reference_alternative,
            random_coefficients,
        };
        let mut names = HashSet::new();
        for name in spec.parameter_names() {
            if !names.insert(name.clone()) {
                return Err(Error::Spec(format!("duplicate coefficient name `{name}`")));
            }
        }
        let mut seen_random = HashSet::new();
        for rc in &spec.random_coefficients {
            if !spec.terms.iter().any(|t| t.name == rc.coefficient) {
                return Err(Error::Spec(format!(
                    "random coefficient `{}` does not appear in the terms",
                    rc.coefficient
                )));
            }
            if !seen_random.insert(rc.coefficient.as_str()) {
                return Err(Error::Spec(format!("`{}` declared random twice", rc.coefficient)));
            }
        }
        if spec.terms.is_empty() && spec.constants.is_empty() {
            return Err(Error::Spec("model has no terms".into()));
        }
        Ok(spec)
    }

    /// Generic attribute terms only, named after their attributes.
    pub fn generic(attributes: &[(&str, &str)]) -> Result<Self> {
        let terms = attributes.iter().map(|(n, a)| Term::attribute(n, a)).collect();
        Self::new(terms, Vec::new(), None, Vec::new())
    }

    pub fn with_random(mut self, random: RandomCoefficient) -> Result<Self> {
        self.random_coefficients.push(random);
        Self::new(
            self.terms,
            self.constants,
            self.reference_alternative,
            self.random_coefficients,
        )
    }

    /// Declared terms followed by one constant term per listed alternative.
    pub fn all_terms(&self) -> Vec<Term> {
        let mut out = self.terms.clone();
        out.extend(self.constants.iter().map(|alt| Term {
            name: constant_name(alt),
            source: TermSource::Constant {
                alternative: alt.clone(),
            },
        }));
        out
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn constants(&self) -> &[String] {
        &self.constants
    }

    pub fn reference_alternative(&self) -> Option<&str> {
        self.reference_alternative.as_deref()
    }

    pub fn random_coefficients(&self) -> &[RandomCoefficient] {
        &self.random_coefficients
    }

    pub fn has_random(&self) -> bool {
        !self.random_coefficients.is_empty()
    }

    /// Canonical parameter ordering: one entry per term (random terms use
    /// their mean name), then one spread per random coefficient.
    pub fn parameter_names(&self) -> Vec<String> {
        let mut names: Vec<String> = self
            .all_terms()
            .into_iter()
            .map(|t| {
                self.random_coefficients
                    .iter()
                    .find(|rc| rc.coefficient == t.name)
                    .map_or(t.name, |rc| rc.mean_name.clone())
            })
            .collect();
        names.extend(self.random_coefficients.iter().map(|rc| rc.sd_name.clone()));
        names
    }

    /// Same terms and constants with every random coefficient made fixed.
    pub fn fixed_counterpart(&self) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|t| Term {
                name: self
                    .random_coefficients
                    .iter()
                    .find(|rc| rc.coefficient == t.name)
                    .map_or(t.name.clone(), |rc| rc.mean_name.clone()),
                source: t.source.clone(),
            })
            .collect();
        Self {
            terms,
            constants: self.constants.clone(),
            reference_alternative: self.reference_alternative.clone(),
            random_coefficients: Vec::new(),
        }
    }

    /// Parses the text forms written by [`ModelSpec::terms_text`] and friends.
    ///
    /// Terms: `name:attr`, `name:attr@alt`, `name:attr*cov`, `name:cov@alt`.
    /// Random: `name~normal(sd_name)` or `name~normal(mean_name, sd_name)`.
    pub fn parse(
        terms: &str,
        constants: &str,
        reference: &str,
        random: &str,
        schema: &AttributeSchema,
    ) -> Result<Self> {
        let terms = split_list(terms)
            .map(|item| parse_term(item, schema))
            .collect::<Result<Vec<_>>>()?;
        let constants: Vec<String> = split_list(constants).map(String::from).collect();
        let reference = Some(reference.trim()).filter(|r| !r.is_empty()).map(String::from);
        let random = split_random(random)
            .into_iter()
            .map(|item| parse_random(&item))
            .collect::<Result<Vec<_>>>()?;
        let spec = Self::new(terms, constants, reference, random)?;
        CompiledSpec::compile(&spec, schema)?;
        Ok(spec)
    }

    pub fn terms_text(&self) -> String {
        self.terms
            .iter()
            .map(|t| {
                let src = match &t.source {
                    TermSource::Attribute(a) => a.clone(),
                    TermSource::AttributeAt { attribute, alternative } => format!("{attribute}@{alternative}"),
                    TermSource::Interaction { attribute, covariate } => format!("{attribute}*{covariate}"),
                    TermSource::CovariateAt { covariate, alternative } => format!("{covariate}@{alternative}"),
                    TermSource::Constant { alternative } => format!("1@{alternative}"),
                };
                format!("{}:{src}", t.name)
            })
            .collect::<Vec<_>>()
            .join(", ")
    }

    pub fn random_text(&self) -> String {
        self.random_coefficients
            .iter()
            .map(|rc| format!("{}~normal({}, {})", rc.coefficient, rc.mean_name, rc.sd_name))
            .collect::<Vec<_>>()
            .join("; ")
    }

    pub fn canonical_text(&self) -> String {
        format!(
            "terms={}\nconstants={}\nreference={}\nrandom={}\n",
            self.terms_text(),
            self.constants.join(", "),
            self.reference_alternative.as_deref().unwrap_or(""),
            self.random_text()
        )
    }

    /// Hex SHA-256 of [`ModelSpec::canonical_text`].
    pub fn hash(&self) -> String {
        hex::encode(Sha256::digest(self.canonical_text().as_bytes()))
    }
}

fn split_list(text: &str) -> impl Iterator<Item = &str> {
    text.split(',').map(str::trim).filter(|s| !s.is_empty())
}

// Random declarations contain commas inside parentheses; split on `;` and on
// top-level commas.
fn split_random(text: &str) -> Vec<String> {
    let mut items = Vec::new();
    let mut depth = 0i32;
    let mut current = String::new();
    for ch in text.chars() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            _ => {}
        }
        if (ch == ';' || ch == ',') && depth == 0 {
            items.push(std::mem::take(&mut current));
        } else {
            current.push(ch);
        }
    }
    items.push(current);
    items
        .into_iter()
        .map(|s| s.trim().to_string())
        .filter(|s| !s.is_empty())
        .collect()
}

fn parse_term(item: &str, schema: &AttributeSchema) -> Result<Term> {
    let (name, source) = item
        .split_once(':')
        .ok_or_else(|| Error::Spec(format!("term `{item}` is not of the form name:source")))?;
    let (name, source) = (name.trim(), source.trim());
    let unknown = |what: &str| Error::Spec(format!("unknown attribute or covariate `{what}`"));
    let source = if let Some((attribute, covariate)) = source.split_once('*') {
        TermSource::Interaction {
            attribute: attribute.trim().into(),
            covariate: covariate.trim().into(),
        }
    } else if let Some((var, alternative)) = source.split_once('@') {
        let (var, alternative) = (var.trim(), alternative.trim().to_string());
        if var == "1" {
            TermSource::Constant { alternative }
        } else if schema.attribute_index(var).is_some() {
            TermSource::AttributeAt {
                attribute: var.into(),
                alternative,
            }
        } else if schema.covariate_index(var).is_some() {
            TermSource::CovariateAt {
                covariate: var.into(),
                alternative,
            }
        } else {
            return Err(unknown(var));
        }
    } else {
        TermSource::Attribute(source.into())
    };
    Ok(Term {
        name: name.into(),
        source,
    })
}

fn parse_random(item: &str) -> Result<RandomCoefficient> {
    let bad = || Error::Spec(format!("random coefficient `{item}` is not of the form name~normal(sd)"));
    let (coef, dist) = item.split_once('~').ok_or_else(bad)?;
    let args = dist
        .trim()
        .strip_prefix("normal(")
        .and_then(|r| r.strip_suffix(')'))
        .ok_or_else(bad)?;
    let args: Vec<&str> = args.split(',').map(str::trim).collect();
    let coef = coef.trim().to_string();
    match args.as_slice() {
        [sd] if !sd.is_empty() => Ok(RandomCoefficient::normal(&coef, sd)),
        [mean, sd] if !mean.is_empty() && !sd.is_empty() => Ok(RandomCoefficient {
            coefficient: coef,
            mean_name: mean.to_string(),
            sd_name: sd.to_string(),
        }),
        _ => Err(bad()),
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Feature {
    Attribute(usize),
    AttributeAt(usize, String),
    Interaction(usize, usize),
    CovariateAt(usize, String),
    Constant(String),
}

/// A specification resolved against a schema, with its parameter layout.
#[derive(Clone, Debug)]
pub struct CompiledSpec {
    spec: ModelSpec,
    features: Vec<Feature>,
    term_names: Vec<String>,
    parameter_names: Vec<String>,
    /// For each random coefficient: (term index, sd parameter index).
    random: Vec<(usize, usize)>,
}

impl CompiledSpec {
    pub fn compile(spec: &ModelSpec, schema: &AttributeSchema) -> Result<Self> {
        let attribute = |name: &str| {
            schema
                .attribute_index(name)
                .ok_or_else(|| Error::Spec(format!("unknown attribute `{name}`")))
        };
        let covariate = |name: &str| {
            schema
                .covariate_index(name)
                .ok_or_else(|| Error::Spec(format!("unknown covariate `{name}`")))
        };
        let terms = spec.all_terms();
        let features = terms
            .iter()
            .map(|t| {
                Ok(match &t.source {
                    TermSource::Attribute(a) => Feature::Attribute(attribute(a)?),
                    TermSource::AttributeAt { attribute: a, alternative } => {
                        Feature::AttributeAt(attribute(a)?, alternative.clone())
                    }
                    TermSource::Interaction { attribute: a, covariate: c } => {
                        Feature::Interaction(attribute(a)?, covariate(c)?)
                    }
                    TermSource::CovariateAt { covariate: c, alternative } => {
                        Feature::CovariateAt(covariate(c)?, alternative.clone())
                    }
                    TermSource::Constant { alternative } => Feature::Constant(alternative.clone()),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let parameter_names = spec.parameter_names();
        let random = spec
            .random_coefficients
            .iter()
            .enumerate()
            .map(|(d, rc)| {
                let term = terms.iter().position(|t| t.name == rc.coefficient).expect("validated");
                (term, terms.len() + d)
            })
            .collect();
        Ok(Self {
            spec: spec.clone(),
            features,
            term_names: terms.into_iter().map(|t| t.name).collect(),
            parameter_names,
            random,
        })
    }

    pub fn spec(&self) -> &ModelSpec {
        &self.spec
    }

    pub fn n_terms(&self) -> usize {
        self.features.len()
    }

    pub fn n_params(&self) -> usize {
        self.parameter_names.len()
    }

    pub fn n_random(&self) -> usize {
        self.random.len()
    }

    pub fn term_names(&self) -> &[String] {
        &self.term_names
    }

    pub fn parameter_names(&self) -> &[String] {
        &self.parameter_names
    }

    /// (term index, sd parameter index) per random coefficient. A random
    /// term's mean sits at the term's own parameter index.
    pub fn random_terms(&self) -> &[(usize, usize)] {
        &self.random
    }

    /// Appends the feature row of every available alternative of `task`
    /// to `out` and returns the positions of those alternatives.
    pub fn features_into<T: Scalar>(&self, task: &ChoiceTask<T>, out: &mut Vec<T>) -> Vec<usize> {
        let mut positions = Vec::with_capacity(task.alternatives.len());
        for (j, alt) in task.alternatives.iter().enumerate() {
            if !alt.available {
                continue;
            }
            positions.push(j);
            let here = |id: &str| alt.alt_id == id;
            for f in &self.features {
                out.push(match f {
                    Feature::Attribute(k) => alt.attributes[*k],
                    Feature::AttributeAt(k, id) => {
                        if here(id) {
                            alt.attributes[*k]
                        } else {
                            T::zero()
                        }
                    }
                    Feature::Interaction(k, c) => alt.attributes[*k] * task.covariates[*c],
                    Feature::CovariateAt(c, id) => {
                        if here(id) {
                            task.covariates[*c]
                        } else {
                            T::zero()
                        }
                    }
                    Feature::Constant(id) => {
                        if here(id) {
                            T::one()
                        } else {
                            T::zero()
                        }
                    }
                });
            }
        }
        positions
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn schema() -> AttributeSchema {
        AttributeSchema::parse("cost, time, tip", "age").unwrap()
    }

    #[test]
    fn parses_all_term_forms() {
        let spec = ModelSpec::parse(
            "b_cost:cost, b_time:time, b_tip1:tip@c1, b_age:age@c4, b_ct:cost*age",
            "c1, c2",
            "c4",
            "b_cost~normal(sd_cost)",
            &schema(),
        )
        .unwrap();
        assert_eq!(
            spec.parameter_names(),
            ["b_cost", "b_time", "b_tip1", "b_age", "b_ct", "asc_c1", "asc_c2", "sd_cost"]
        );
        let again = ModelSpec::parse(
            &spec.terms_text(),
            &spec.constants().join(","),
            "c4",
            &spec.random_text(),
            &schema(),
        )
        .unwrap();
        assert_eq!(again, spec);
        assert_eq!(again.hash(), spec.hash());
    }

    #[test]
    fn unknown_attribute_is_named() {
        let err = ModelSpec::parse("b_w:weight", "", "", "", &schema()).unwrap_err();
        assert!(err.to_string().contains("`weight`"), "{err}");
    }

    #[test]
    fn invariants_enforced() {
        assert!(ModelSpec::generic(&[("b", "cost"), ("b", "time")]).is_err());
        let base = ModelSpec::generic(&[("b_cost", "cost")]).unwrap();
        assert!(base.clone().with_random(RandomCoefficient::normal("b_time", "sd")).is_err());
        assert!(ModelSpec::new(vec![], vec!["c1".into()], None, vec![]).is_err());
        assert!(ModelSpec::new(vec![], vec!["c1".into()], Some("c1".into()), vec![]).is_err());
    }

    #[test]
    fn features_skip_unavailable_alternatives() {
        use crate::choicedata::AlternativeRecord;
        let spec = ModelSpec::parse("b_cost:cost, b_tip1:tip@c1", "c2", "c3", "", &schema()).unwrap();
        let compiled = CompiledSpec::compile(&spec, &schema()).unwrap();
        let alt = |id: &str, cost: f64, available| AlternativeRecord {
            alt_id: id.into(),
            attributes: vec![cost, 1.0, 2.0],
            available,
        };
        let task = ChoiceTask {
            situation_id: "s".into(),
            respondent_id: "r".into(),
            alternatives: vec![alt("c1", 14.0, true), alt("c2", 18.0, false), alt("c3", 22.0, true)],
            covariates: vec![40.0],
        };
        let mut out = Vec::new();
        let pos = compiled.features_into(&task, &mut out);
        assert_eq!(pos, vec![0, 2]);
        assert_eq!(out, vec![14.0, 2.0, 0.0, 22.0, 0.0, 0.0]);
    }
}
