use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Stopping rules for [`maximize`].
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MaximizeSettings {
    /// Stop when the largest absolute gradient entry falls below this.
    pub gradient_tolerance: f64,
    /// Stop when `|Δf| <= tol * max(|f|, 1)` after an accepted step.
    pub relative_tolerance: f64,
    pub max_iterations: usize,
    /// Sufficient-increase constant of the backtracking line search.
    pub armijo: f64,
    pub max_backtracks: usize,
}

impl Default for MaximizeSettings {
    fn default() -> Self {
        Self {
            gradient_tolerance: 1e-5,
            relative_tolerance: 1e-9,
            max_iterations: 500,
            armijo: 1e-4,
            max_backtracks: 60,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Termination {
    GradientTolerance,
    RelativeChange,
    MaxIterations,
    LineSearchFailure,
}

impl Termination {
    pub fn converged(self) -> bool {
        matches!(self, Termination::GradientTolerance | Termination::RelativeChange)
    }
}

#[derive(Clone, Debug)]
pub struct MaximizeOutcome<T> {
    pub params: Vec<T>,
    pub value: T,
    pub gradient: Vec<T>,
    pub iterations: usize,
    pub termination: Termination,
    /// Objective after the start and after every accepted step.
    pub trace: Vec<T>,
}

impl<T: Scalar> MaximizeOutcome<T> {
    pub fn converged(&self) -> bool {
        self.termination.converged()
    }

    pub fn gradient_norm(&self) -> T {
        inf_norm(&self.gradient)
    }
}

fn inf_norm<T: Scalar>(v: &[T]) -> T {
    v.iter().fold(T::zero(), |m, x| m.max(x.abs()))
}

fn dot<T: Scalar>(a: &[T], b: &[T]) -> T {
    a.iter().zip(b).fold(T::zero(), |acc, (x, y)| acc + *x * *y)
}

/// BFGS ascent with a backtracking line search. `objective` returns the
/// value and gradient; accepted steps never lower the objective.
pub fn maximize<T, F>(mut objective: F, start: &[T], settings: &MaximizeSettings) -> Result<MaximizeOutcome<T>>
where
    T: Scalar,
    F: FnMut(&[T]) -> Result<(T, Vec<T>)>,
{
    let n = start.len();
    let mut x = start.to_vec();
    let (mut fx, mut gx) = objective(&x)?;
    if !fx.is_finite() || gx.iter().any(|g| !g.is_finite()) {
        return Err(Error::NonFiniteStart);
    }
    let gtol = T::lit(settings.gradient_tolerance);
    let rtol = T::lit(settings.relative_tolerance);
    let c1 = T::lit(settings.armijo);
    let half = T::lit(0.5);

    // Inverse Hessian of the negated objective, row-major.
    let mut inv = identity::<T>(n);
    let mut scaled = false;
    let mut trace = vec![fx];
    let mut iterations = 0;
    let mut termination = Termination::MaxIterations;

    while iterations < settings.max_iterations {
        if inf_norm(&gx) < gtol {
            termination = Termination::GradientTolerance;
            break;
        }
        // Ascent direction d = inv * g.
        let mut dir: Vec<T> = (0..n).map(|i| dot(&inv[i * n..(i + 1) * n], &gx)).collect();
        let mut slope = dot(&gx, &dir);
        if slope <= T::zero() || !slope.is_finite() {
            inv = identity(n);
            scaled = false;
            dir = gx.clone();
            slope = dot(&gx, &gx);
        }
        let mut alpha = if scaled {
            T::one()
        } else {
            T::one().min(T::one() / dot(&dir, &dir).sqrt())
        };

        let mut accepted = None;
        for _ in 0..settings.max_backtracks {
            let trial: Vec<T> = x.iter().zip(&dir).map(|(xi, di)| *xi + alpha * *di).collect();
            if let Ok((ft, gt)) = objective(&trial) {
                if ft.is_finite() && gt.iter().all(|g| g.is_finite()) && ft >= fx + c1 * alpha * slope {
                    accepted = Some((trial, ft, gt));
                    break;
                }
            }
            alpha = alpha * half;
        }
        let Some((x_new, f_new, g_new)) = accepted else {
            termination = Termination::LineSearchFailure;
            break;
        };

        // Curvature pair for the negated objective.
        let s: Vec<T> = x_new.iter().zip(&x).map(|(a, b)| *a - *b).collect();
        let y: Vec<T> = gx.iter().zip(&g_new).map(|(a, b)| *a - *b).collect();
        let sy = dot(&s, &y);
        let yy = dot(&y, &y);
        if sy > T::lit(1e-12) * dot(&s, &s).sqrt() * yy.sqrt() {
            if !scaled {
                inv = identity(n);
                let gamma = sy / yy;
                for i in 0..n {
                    inv[i * n + i] = gamma;
                }
                scaled = true;
            }
            bfgs_update(&mut inv, &s, &y, sy);
        }

        let change = (f_new - fx).abs();
        let scale = f_new.abs().max(T::one());
        x = x_new;
        fx = f_new;
        gx = g_new;
        iterations += 1;
        trace.push(fx);
        if change <= rtol * scale {
            termination = if inf_norm(&gx) < gtol {
                Termination::GradientTolerance
            } else {
                Termination::RelativeChange
            };
            break;
        }
    }

    Ok(MaximizeOutcome {
        params: x,
        value: fx,
        gradient: gx,
        iterations,
        termination,
        trace,
    })
}

fn identity<T: Scalar>(n: usize) -> Vec<T> {
    let mut m = vec![T::zero(); n * n];
    for i in 0..n {
        m[i * n + i] = T::one();
    }
    m
}

// H <- (I - ρ s yᵀ) H (I - ρ y sᵀ) + ρ s sᵀ, written out with Hy.
fn bfgs_update<T: Scalar>(inv: &mut [T], s: &[T], y: &[T], sy: T) {
    let n = s.len();
    let rho = T::one() / sy;
    let hy: Vec<T> = (0..n).map(|i| dot(&inv[i * n..(i + 1) * n], y)).collect();
    let yhy = dot(y, &hy);
    let factor = (T::one() + rho * yhy) * rho;
    for i in 0..n {
        for j in 0..n {
            inv[i * n + j] = inv[i * n + j] - rho * (hy[i] * s[j] + s[i] * hy[j]) + factor * s[i] * s[j];
        }
    }
}
