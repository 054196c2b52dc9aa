use nalgebra::{DMatrix, SymmetricEigen};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Eigenvalues of the negated Hessian at or below this fraction of the
/// largest one mark the information matrix as singular.
pub const SINGULAR_RATIO: f64 = 1e-9;

/// Parameter covariance at a maximum.
#[derive(Clone, Debug, PartialEq)]
pub struct Covariance<T> {
    pub dim: usize,
    /// Row-major `dim x dim` matrix.
    pub matrix: Vec<T>,
    pub std_errors: Vec<T>,
}

impl<T: Scalar> Covariance<T> {
    pub fn get(&self, i: usize, j: usize) -> T {
        self.matrix[i * self.dim + j]
    }
}

/// Hessian by central differences of `gradient`, step `1e-4 * max(1, |θ_i|)`,
/// symmetrized. Returned row-major in f64.
pub fn numerical_hessian<T, G>(mut gradient: G, at: &[T]) -> Result<DMatrix<f64>>
where
    T: Scalar,
    G: FnMut(&[T]) -> Result<Vec<T>>,
{
    let n = at.len();
    let mut h = DMatrix::<f64>::zeros(n, n);
    let mut point = at.to_vec();
    for i in 0..n {
        let base = at[i].to_f64_lossy();
        let step = 1e-4 * base.abs().max(1.0);
        point[i] = T::lit(base + step);
        let up = gradient(&point)?;
        point[i] = T::lit(base - step);
        let down = gradient(&point)?;
        point[i] = at[i];
        // Use the step actually representable in T.
        let width = T::lit(base + step).to_f64_lossy() - T::lit(base - step).to_f64_lossy();
        for j in 0..n {
            h[(j, i)] = (up[j].to_f64_lossy() - down[j].to_f64_lossy()) / width;
        }
    }
    if h.iter().any(|v| !v.is_finite()) {
        return Err(Error::Numeric("non-finite Hessian entry".into()));
    }
    Ok((&h + h.transpose()) * 0.5)
}

/// Covariance `-H⁻¹` from the gradient of a maximized objective.
pub fn covariance<T, G>(gradient: G, at: &[T], names: &[String]) -> Result<Covariance<T>>
where
    T: Scalar,
    G: FnMut(&[T]) -> Result<Vec<T>>,
{
    let h = numerical_hessian(gradient, at)?;
    covariance_from_hessian(&h, names)
}

/// Inverts the negated (symmetric) Hessian. A singular or indefinite
/// information matrix is reported with the most collinear parameter pair.
pub fn covariance_from_hessian<T: Scalar>(hessian: &DMatrix<f64>, names: &[String]) -> Result<Covariance<T>> {
    let n = hessian.nrows();
    let info = -hessian.clone();
    let eig = SymmetricEigen::new(info);
    let largest = eig.eigenvalues.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let threshold = SINGULAR_RATIO * largest;
    let singular = largest == 0.0 || eig.eigenvalues.iter().any(|&v| v <= threshold);

    let mut pinv = DMatrix::<f64>::zeros(n, n);
    for (k, &lambda) in eig.eigenvalues.iter().enumerate() {
        if lambda.abs() > threshold && (lambda > 0.0 || singular) {
            let v = eig.eigenvectors.column(k);
            pinv += (v * v.transpose()) / lambda;
        }
    }

    if singular {
        let (first, second, correlation) = most_collinear(&pinv, &eig, threshold, names);
        return Err(Error::SingularHessian {
            first,
            second,
            correlation,
        });
    }

    let std_errors = (0..n).map(|i| T::lit(pinv[(i, i)].sqrt())).collect();
    let mut matrix = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            matrix.push(T::lit(pinv[(i, j)]));
        }
    }
    Ok(Covariance {
        dim: n,
        matrix,
        std_errors,
    })
}

fn most_collinear(
    pinv: &DMatrix<f64>,
    eig: &SymmetricEigen<f64, nalgebra::Dyn>,
    threshold: f64,
    names: &[String],
) -> (String, String, f64) {
    let n = pinv.nrows();
    let name = |i: usize| names.get(i).cloned().unwrap_or_else(|| format!("#{i}"));
    if n < 2 {
        return (name(0), name(0), 1.0);
    }
    let mut best = (0, 1, -1.0f64);
    for i in 0..n {
        for j in (i + 1)..n {
            let d = (pinv[(i, i)] * pinv[(j, j)]).sqrt();
            let c = if d > 0.0 { (pinv[(i, j)] / d).abs() } else { 0.0 };
            if c > best.2 {
                best = (i, j, c);
            }
        }
    }
    if best.2 <= 0.0 {
        // No usable spread in the pseudo-inverse: fall back to the two
        // largest loadings of the null direction.
        let k = eig
            .eigenvalues
            .iter()
            .enumerate()
            .filter(|(_, v)| **v <= threshold)
            .map(|(k, _)| k)
            .next()
            .unwrap_or(0);
        let mut idx: Vec<usize> = (0..n).collect();
        let v = eig.eigenvectors.column(k);
        idx.sort_by(|a, b| v[*b].abs().total_cmp(&v[*a].abs()));
        let (a, b) = (idx[0].min(idx[1]), idx[0].max(idx[1]));
        return (name(a), name(b), 1.0);
    }
    (name(best.0), name(best.1), best.2)
}
