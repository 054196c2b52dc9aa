use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Named coefficient values in a fixed order.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ParameterVector<T> {
    names: Vec<String>,
    values: Vec<T>,
}

/// Named reals sharing the parameter layout (standard errors, t-statistics).
pub type NamedValues<T> = ParameterVector<T>;

impl<T: Scalar> ParameterVector<T> {
    pub fn new(names: Vec<String>, values: Vec<T>) -> Result<Self> {
        if names.len() != values.len() {
            return Err(Error::InvalidArgument(format!(
                "{} names but {} values",
                names.len(),
                values.len()
            )));
        }
        Ok(Self { names, values })
    }

    pub fn zeros(names: &[String]) -> Self {
        Self {
            names: names.to_vec(),
            values: vec![T::zero(); names.len()],
        }
    }

    pub fn from_pairs<S: AsRef<str>>(pairs: &[(S, f64)]) -> Self {
        Self {
            names: pairs.iter().map(|(n, _)| n.as_ref().to_string()).collect(),
            values: pairs.iter().map(|(_, v)| T::lit(*v)).collect(),
        }
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [T] {
        &mut self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, name: &str) -> Option<T> {
        self.names.iter().position(|n| n == name).map(|i| self.values[i])
    }

    pub fn require(&self, name: &str) -> Result<T> {
        self.get(name).ok_or_else(|| Error::MissingParameter(name.to_string()))
    }

    pub fn set(&mut self, name: &str, value: T) -> Result<()> {
        let i = self
            .names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| Error::MissingParameter(name.to_string()))?;
        self.values[i] = value;
        Ok(())
    }

    pub fn with_values(&self, values: Vec<T>) -> Self {
        assert_eq!(values.len(), self.names.len());
        Self {
            names: self.names.clone(),
            values,
        }
    }

    /// Values arranged in `layout` order, looked up by name.
    pub fn arrange(&self, layout: &[String]) -> Result<Vec<T>> {
        layout.iter().map(|n| self.require(n)).collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, T)> + '_ {
        self.names.iter().map(String::as_str).zip(self.values.iter().copied())
    }

    /// Parses `name=value` pairs separated by commas.
    pub fn parse(text: &str) -> Result<Self> {
        let mut names = Vec::new();
        let mut values = Vec::new();
        for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (name, value) = item
                .split_once('=')
                .ok_or_else(|| Error::InvalidArgument(format!("`{item}` is not name=value")))?;
            let value: f64 = value
                .trim()
                .parse()
                .map_err(|_| Error::InvalidArgument(format!("`{item}` has a non-numeric value")))?;
            names.push(name.trim().to_string());
            values.push(T::lit(value));
        }
        Self::new(names, values)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_arrange() {
        let p: ParameterVector<f64> = ParameterVector::parse("b_time=-0.3, b_cost=-0.15").unwrap();
        let layout = vec!["b_cost".to_string(), "b_time".to_string()];
        assert_eq!(p.arrange(&layout).unwrap(), vec![-0.15, -0.3]);
        assert!(matches!(
            p.arrange(&["b_x".to_string()]),
            Err(Error::MissingParameter(ref n)) if n == "b_x"
        ));
        assert!(ParameterVector::<f64>::parse("b=abc").is_err());
    }
}
