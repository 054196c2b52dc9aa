//! Multinomial and mixed logit.
//!
//! Utility of an available alternative is the linear index `V = Σ β_t x_t`
//! over the specification's terms; the Gumbel disturbance is integrated out,
//! giving the logit kernel. Random coefficients are simulated by averaging
//! the kernel over draws `β_r = mean + |sd| z_r`.

pub mod draws;
pub mod params;
pub mod spec;

use crate::choicedata::{ChoiceDataset, ChoiceTask};
use crate::error::{Error, Result};
use crate::model::{self, FeatureMatrix, LikelihoodEval, ModelKind};
use crate::scalar::{softmax_in_place, Scalar};

use draws::{DrawBlock, DrawMatrix};
use params::ParameterVector;
use spec::CompiledSpec;

/// Logit kernel. `x` holds `n_alts` rows of term features.
#[inline]
pub(crate) fn mnl_kernel<T: Scalar>(
    x: &[T],
    n_alts: usize,
    beta: &[T],
    chosen: usize,
    probs: &mut [T],
    grad: Option<&mut [T]>,
) -> bool {
    let p = beta.len();
    for (j, v) in probs.iter_mut().enumerate().take(n_alts) {
        let row = &x[j * p..(j + 1) * p];
        *v = row.iter().zip(beta).fold(T::zero(), |acc, (a, b)| acc + *a * *b);
    }
    if !softmax_in_place(&mut probs[..n_alts]) {
        return false;
    }
    if let Some(grad) = grad {
        let pc = probs[chosen];
        for t in 0..p {
            let mean = (0..n_alts).fold(T::zero(), |acc, j| acc + probs[j] * x[j * p + t]);
            grad[t] = pc * (x[chosen * p + t] - mean);
        }
    }
    true
}

/// Logit probabilities for a specification without random coefficients.
/// Unavailable alternatives get probability zero.
pub fn mnl_probability<T: Scalar>(
    spec: &CompiledSpec,
    params: &ParameterVector<T>,
    task: &ChoiceTask<T>,
) -> Result<Vec<T>> {
    if spec.n_random() > 0 {
        return Err(Error::Unsupported(
            "mnl_probability called with random coefficients; use mixed_logit_probability".into(),
        ));
    }
    let values = params.arrange(spec.parameter_names())?;
    model::task_probabilities(ModelKind::Rum, spec, &values, task, None)
}

/// Mixed logit probabilities: the logit kernel averaged over the `R` rows of
/// `draws`.
pub fn mixed_logit_probability<T: Scalar>(
    spec: &CompiledSpec,
    params: &ParameterVector<T>,
    task: &ChoiceTask<T>,
    draws: DrawBlock<'_, T>,
) -> Result<Vec<T>> {
    if draws.draws == 0 {
        return Err(Error::InvalidArgument("draw count R must be positive".into()));
    }
    let values = params.arrange(spec.parameter_names())?;
    model::task_probabilities(ModelKind::Rum, spec, &values, task, Some(draws))
}

/// Simulated log-likelihood of a utility model over `ds` with its gradient
/// in the specification's parameter order.
pub fn rum_log_likelihood<T: Scalar>(
    spec: &CompiledSpec,
    params: &ParameterVector<T>,
    ds: &ChoiceDataset<T>,
    draws: Option<&DrawMatrix<T>>,
) -> Result<LikelihoodEval<T>> {
    let fm = FeatureMatrix::build(spec, ds)?;
    let values = params.arrange(spec.parameter_names())?;
    model::simulated_log_likelihood(ModelKind::Rum, spec, &fm, &values, draws, true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::choicedata::fixtures::situation;
    use crate::choicedata::{AttributeSchema, ChoiceDataset};
    use crate::rum::draws::DrawGenerator;
    use crate::rum::spec::{ModelSpec, RandomCoefficient};

    fn cost_model(random: bool) -> CompiledSpec {
        let schema = AttributeSchema::continuous(&["cost"]).unwrap();
        let mut spec = ModelSpec::generic(&[("b_cost", "cost")]).unwrap();
        if random {
            spec = spec.with_random(RandomCoefficient::normal("b_cost", "sd_cost")).unwrap();
        }
        CompiledSpec::compile(&spec, &schema).unwrap()
    }

    #[test]
    fn identical_alternatives_split_evenly() {
        let p = mnl_probability(
            &cost_model(false),
            &ParameterVector::from_pairs(&[("b_cost", -3.7)]),
            &situation("s", &[20.0, 20.0], 0),
        )
        .unwrap();
        assert_eq!(p, vec![0.5, 0.5]);
    }

    #[test]
    fn binary_cost_logistic_oracle() {
        let p = mnl_probability(
            &cost_model(false),
            &ParameterVector::from_pairs(&[("b_cost", -0.1)]),
            &situation("s", &[14.0, 26.0], 0),
        )
        .unwrap();
        let expected = 1.0 / (1.0 + (-1.2f64).exp());
        assert!((p[0] - 0.76852).abs() < 1e-5);
        assert!((p[0] - expected).abs() < 1e-9);
        assert!((p[1] - (1.0 - expected)).abs() < 1e-9);
    }

    #[test]
    fn zero_coefficients_uniform_over_four() {
        let p = mnl_probability(
            &cost_model(false),
            &ParameterVector::from_pairs(&[("b_cost", 0.0)]),
            &situation("s", &[14.0, 18.0, 22.0, 26.0], 0),
        )
        .unwrap();
        assert_eq!(p, vec![0.25; 4]);
    }

    #[test]
    fn unavailable_alternative_gets_zero() {
        let mut s = situation("s", &[14.0, 18.0, 22.0], 0);
        s.task.alternatives[1].available = false;
        let p = mnl_probability(&cost_model(false), &ParameterVector::from_pairs(&[("b_cost", -0.2)]), &s).unwrap();
        assert_eq!(p[1], 0.0);
        let e = 1.0 / (1.0 + (-1.6f64).exp());
        assert!((p[0] - e).abs() < 1e-12);
    }

    #[test]
    fn infinite_attribute_is_numeric_error() {
        let s = situation("s", &[f64::INFINITY, 18.0], 0);
        let err = mnl_probability(&cost_model(false), &ParameterVector::from_pairs(&[("b_cost", -0.2)]), &s);
        assert!(matches!(err, Err(Error::Numeric(_))));
    }

    #[test]
    fn zero_spread_mixture_equals_logit() {
        let draws: DrawMatrix<f64> = DrawMatrix::generate(1, 50, 1, DrawGenerator::Halton, 0).unwrap();
        let s = situation("s", &[14.0, 26.0, 19.0], 2);
        let mixed = mixed_logit_probability(
            &cost_model(true),
            &ParameterVector::from_pairs(&[("b_cost", -0.2), ("sd_cost", 0.0)]),
            &s,
            draws.block(0),
        )
        .unwrap();
        let plain = mnl_probability(&cost_model(false), &ParameterVector::from_pairs(&[("b_cost", -0.2)]), &s).unwrap();
        for (a, b) in mixed.iter().zip(&plain) {
            assert!((a - b).abs() < 1e-14);
        }
    }

    #[test]
    fn mixed_probability_requires_draws() {
        let s = situation("s", &[14.0, 26.0], 0);
        let block = DrawBlock::<f64> {
            draws: 0,
            dims: 1,
            values: &[],
        };
        let params = ParameterVector::from_pairs(&[("b_cost", -0.2), ("sd_cost", 0.1)]);
        assert!(mixed_logit_probability(&cost_model(true), &params, &s, block).is_err());
    }

    #[test]
    fn loglik_all_zero_is_minus_n_ln4_and_additive() {
        let schema = AttributeSchema::continuous(&["cost"]).unwrap();
        let situations: Vec<_> = (0..25)
            .map(|n| situation(&format!("s{n}"), &[14.0, 18.0 + n as f64, 22.0, 26.0], n % 4))
            .collect();
        let ds = ChoiceDataset::new(schema.clone(), situations.clone()).unwrap();
        let spec = cost_model(false);
        let zero = ParameterVector::from_pairs(&[("b_cost", 0.0)]);
        let ll = rum_log_likelihood(&spec, &zero, &ds, None).unwrap();
        assert!((ll.loglik + 25.0 * 4f64.ln()).abs() < 1e-10);

        let params = ParameterVector::from_pairs(&[("b_cost", -0.13)]);
        let once = rum_log_likelihood(&spec, &params, &ds, None).unwrap().loglik;
        let doubled = ChoiceDataset::new(schema, situations.iter().chain(&situations).cloned().collect()).unwrap();
        let twice = rum_log_likelihood(&spec, &params, &doubled, None).unwrap().loglik;
        assert!((twice - 2.0 * once).abs() <= 1e-12 * once.abs());
    }
}
