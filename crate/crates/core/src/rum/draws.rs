//! Simulation draws for mixing distributions.
//!
//! Draws are standard normal. Halton draws use one prime base per dimension
//! (2, 3, 5, ...), skip the first [`HALTON_SKIP`] points, hand each unit `R`
//! consecutive points and map them through [`inverse_normal_cdf`].

use std::io::{Read, Write};

use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rng::{substream, Stream};
use crate::scalar::Scalar;

pub const HALTON_SKIP: u64 = 10;
const MAGIC: &[u8; 4] = b"DRAW";

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DrawGenerator {
    #[default]
    Halton,
    PseudoRandom,
}

impl std::str::FromStr for DrawGenerator {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "halton" => Ok(Self::Halton),
            "pseudo-random" | "random" => Ok(Self::PseudoRandom),
            other => Err(Error::InvalidArgument(format!("unknown draw generator `{other}`"))),
        }
    }
}

impl std::fmt::Display for DrawGenerator {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Self::Halton => "halton",
            Self::PseudoRandom => "pseudo-random",
        })
    }
}

/// `units` blocks of `R x D` standard-normal draws, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct DrawMatrix<T> {
    draws: usize,
    dims: usize,
    units: usize,
    values: Vec<T>,
}

/// The `R x D` block belonging to one unit.
#[derive(Clone, Copy, Debug)]
pub struct DrawBlock<'a, T> {
    pub draws: usize,
    pub dims: usize,
    pub values: &'a [T],
}

impl<'a, T: Scalar> DrawBlock<'a, T> {
    #[inline]
    pub fn row(&self, r: usize) -> &'a [T] {
        &self.values[r * self.dims..(r + 1) * self.dims]
    }
}

impl<T: Scalar> DrawMatrix<T> {
    pub fn generate(units: usize, draws: usize, dims: usize, generator: DrawGenerator, seed: u64) -> Result<Self> {
        if draws == 0 {
            return Err(Error::InvalidArgument("draw count R must be positive".into()));
        }
        let mut values = vec![T::zero(); units * draws * dims];
        match generator {
            DrawGenerator::Halton => {
                let bases = primes(dims);
                for (d, &base) in bases.iter().enumerate() {
                    for u in 0..units {
                        for r in 0..draws {
                            let index = 1 + HALTON_SKIP + (u * draws + r) as u64;
                            let p = radical_inverse(index, base);
                            values[(u * draws + r) * dims + d] = inverse_normal_cdf(T::lit(p));
                        }
                    }
                }
            }
            DrawGenerator::PseudoRandom => {
                let mut rng = substream(seed, Stream::Draws, 0);
                for v in values.iter_mut() {
                    let z: f64 = StandardNormal.sample(&mut rng);
                    *v = T::lit(z);
                }
            }
        }
        Self::from_values(units, draws, dims, values)
    }

    pub fn from_values(units: usize, draws: usize, dims: usize, values: Vec<T>) -> Result<Self> {
        if draws == 0 {
            return Err(Error::InvalidArgument("draw count R must be positive".into()));
        }
        if values.len() != units * draws * dims {
            return Err(Error::InvalidArgument(format!(
                "{} draw values for {units} units x {draws} draws x {dims} dims",
                values.len()
            )));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::Numeric("non-finite draw".into()));
        }
        Ok(Self {
            draws,
            dims,
            units,
            values,
        })
    }

    pub fn draws(&self) -> usize {
        self.draws
    }

    pub fn dims(&self) -> usize {
        self.dims
    }

    pub fn units(&self) -> usize {
        self.units
    }

    pub fn block(&self, unit: usize) -> DrawBlock<'_, T> {
        let size = self.draws * self.dims;
        DrawBlock {
            draws: self.draws,
            dims: self.dims,
            values: &self.values[unit * size..(unit + 1) * size],
        }
    }

    /// Binary sidecar: `DRAW`, then R, D and the unit count as little-endian
    /// `u32`, then every value as a little-endian `f64`.
    pub fn write_binary<W: Write>(&self, mut out: W) -> Result<()> {
        out.write_all(MAGIC)?;
        for n in [self.draws, self.dims, self.units] {
            let n = u32::try_from(n).map_err(|_| Error::InvalidArgument("draw dimension exceeds u32".into()))?;
            out.write_all(&n.to_le_bytes())?;
        }
        for v in &self.values {
            out.write_all(&v.to_f64_lossy().to_le_bytes())?;
        }
        Ok(())
    }

    pub fn read_binary<R: Read>(mut input: R) -> Result<Self> {
        let mut header = [0u8; 16];
        input.read_exact(&mut header)?;
        if &header[..4] != MAGIC {
            return Err(Error::InvalidArgument("draw file does not start with DRAW".into()));
        }
        let field = |i: usize| u32::from_le_bytes(header[4 * i..4 * i + 4].try_into().unwrap()) as usize;
        let (draws, dims, units) = (field(1), field(2), field(3));
        let mut values = Vec::with_capacity(units * draws * dims);
        let mut buf = [0u8; 8];
        for _ in 0..units * draws * dims {
            input.read_exact(&mut buf)?;
            values.push(T::lit(f64::from_le_bytes(buf)));
        }
        Self::from_values(units, draws, dims, values)
    }
}

/// First `n` primes.
pub fn primes(n: usize) -> Vec<u64> {
    let mut out: Vec<u64> = Vec::with_capacity(n);
    let mut candidate = 2u64;
    while out.len() < n {
        if out.iter().take_while(|&&p| p * p <= candidate).all(|&p| !candidate.is_multiple_of(p)) {
            out.push(candidate);
        }
        candidate += 1;
    }
    out
}

/// Van der Corput radical inverse of `index` in `base`.
pub fn radical_inverse(mut index: u64, base: u64) -> f64 {
    let inv = 1.0 / base as f64;
    let mut scale = inv;
    let mut out = 0.0;
    while index > 0 {
        out += (index % base) as f64 * scale;
        index /= base;
        scale *= inv;
    }
    out
}

/// Standard normal quantile by Acklam's rational approximation
/// (relative error below 1.15e-9 on (0, 1)).
#[allow(clippy::excessive_precision)]
pub fn inverse_normal_cdf<T: Scalar>(p: T) -> T {
    const A: [f64; 6] = [
        -3.969683028665376e+01,
        2.209460984245205e+02,
        -2.759285104469687e+02,
        1.383577518672690e+02,
        -3.066479806614716e+01,
        2.506628277459239e+00,
    ];
    const B: [f64; 5] = [
        -5.447609879822406e+01,
        1.615858368580409e+02,
        -1.556989798598866e+02,
        6.680131188771972e+01,
        -1.328068155288572e+01,
    ];
    const C: [f64; 6] = [
        -7.784894002430293e-03,
        -3.223964580411365e-01,
        -2.400758277161838e+00,
        -2.549732539343734e+00,
        4.374664141464968e+00,
        2.938163982698783e+00,
    ];
    const D: [f64; 4] = [
        7.784695709041462e-03,
        3.224671290700398e-01,
        2.445134137142996e+00,
        3.754408661907416e+00,
    ];
    const P_LOW: f64 = 0.02425;

    let l = T::lit;
    if p <= T::zero() {
        return T::neg_infinity();
    }
    if p >= T::one() {
        return T::infinity();
    }
    let tail = |q: T| {
        let q = (l(-2.0) * q.ln()).sqrt();
        (((((l(C[0]) * q + l(C[1])) * q + l(C[2])) * q + l(C[3])) * q + l(C[4])) * q + l(C[5]))
            / ((((l(D[0]) * q + l(D[1])) * q + l(D[2])) * q + l(D[3])) * q + T::one())
    };
    if p < l(P_LOW) {
        tail(p)
    } else if p > l(1.0 - P_LOW) {
        -tail(T::one() - p)
    } else {
        let q = p - l(0.5);
        let r = q * q;
        (((((l(A[0]) * r + l(A[1])) * r + l(A[2])) * r + l(A[3])) * r + l(A[4])) * r + l(A[5])) * q
            / (((((l(B[0]) * r + l(B[1])) * r + l(B[2])) * r + l(B[3])) * r + l(B[4])) * r + T::one())
    }
}
