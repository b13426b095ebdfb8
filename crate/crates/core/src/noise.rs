//! Noise models and the seeded random streams used to draw from them.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Cauchy, Distribution, Open01, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NoiseKind {
    None,
    Gaussian,
    Uniform,
    Laplace,
    Cauchy,
}

impl NoiseKind {
    pub fn as_str(self) -> &'static str {
        match self {
            NoiseKind::None => "none",
            NoiseKind::Gaussian => "gaussian",
            NoiseKind::Uniform => "uniform",
            NoiseKind::Laplace => "laplace",
            NoiseKind::Cauchy => "cauchy",
        }
    }
}

impl fmt::Display for NoiseKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for NoiseKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "none" => Ok(NoiseKind::None),
            "gaussian" => Ok(NoiseKind::Gaussian),
            "uniform" => Ok(NoiseKind::Uniform),
            "laplace" => Ok(NoiseKind::Laplace),
            "cauchy" => Ok(NoiseKind::Cauchy),
            other => invalid(format!("unknown noise kind `{other}`")),
        }
    }
}

/// Tail behaviour of a noise model, as used by the concentration bounds.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TailClass {
    Noiseless,
    /// Subgaussian with parameter `sigma`.
    SubGaussian {
        sigma: f64,
    },
    /// Subexponential with parameters `(nu, alpha)`.
    SubExponential {
        nu: f64,
        alpha: f64,
    },
    /// No finite moments; the bounds do not apply.
    HeavyTailed,
}

/// Independent additive noise `ε_i` on every sample.
///
/// `scale` is σ for gaussian, the half-width for uniform, the diversity `b`
/// for laplace and γ for cauchy. It is zero exactly when `kind` is none.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NoiseModel {
    pub kind: NoiseKind,
    pub scale: f64,
}

impl NoiseModel {
    pub fn new(kind: NoiseKind, scale: f64) -> Result<Self> {
        match kind {
            NoiseKind::None => Ok(Self::none()),
            _ if scale.is_finite() && scale > 0.0 => Ok(Self { kind, scale }),
            _ => invalid(format!(
                "{kind} noise needs a positive finite scale, got {scale}"
            )),
        }
    }

    pub fn none() -> Self {
        Self {
            kind: NoiseKind::None,
            scale: 0.0,
        }
    }

    pub fn gaussian(sigma: f64) -> Result<Self> {
        Self::new(NoiseKind::Gaussian, sigma)
    }

    pub fn uniform(half_width: f64) -> Result<Self> {
        Self::new(NoiseKind::Uniform, half_width)
    }

    pub fn laplace(diversity: f64) -> Result<Self> {
        Self::new(NoiseKind::Laplace, diversity)
    }

    pub fn cauchy(gamma: f64) -> Result<Self> {
        Self::new(NoiseKind::Cauchy, gamma)
    }

    /// Variance of one draw; `None` for cauchy.
    pub fn variance(&self) -> Option<f64> {
        let s = self.scale;
        match self.kind {
            NoiseKind::None => Some(0.0),
            NoiseKind::Gaussian => Some(s * s),
            NoiseKind::Uniform => Some(s * s / 3.0),
            NoiseKind::Laplace => Some(2.0 * s * s),
            NoiseKind::Cauchy => None,
        }
    }

    /// Laplace maps to `(ν, α) = (√2·b, b)`; uniform on `[-h, h]` is
    /// subgaussian with parameter `h`.
    pub fn tail_class(&self) -> TailClass {
        let s = self.scale;
        match self.kind {
            NoiseKind::None => TailClass::Noiseless,
            NoiseKind::Gaussian | NoiseKind::Uniform => TailClass::SubGaussian { sigma: s },
            NoiseKind::Laplace => TailClass::SubExponential {
                nu: std::f64::consts::SQRT_2 * s,
                alpha: s,
            },
            NoiseKind::Cauchy => TailClass::HeavyTailed,
        }
    }

    /// Draws one noise value.
    ///
    /// Gaussian draws use the ziggurat sampler of `rand_distr`; laplace uses
    /// the inverse CDF on an open-interval uniform.
    pub fn draw<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        let s = self.scale;
        match self.kind {
            NoiseKind::None => 0.0,
            NoiseKind::Gaussian => {
                let z: f64 = StandardNormal.sample(rng);
                s * z
            }
            NoiseKind::Uniform => s * (2.0 * rng.random::<f64>() - 1.0),
            NoiseKind::Laplace => {
                let u: f64 = Open01.sample(rng);
                let u = u - 0.5;
                -s * u.signum() * (1.0 - 2.0 * u.abs()).ln()
            }
            NoiseKind::Cauchy => Cauchy::new(0.0, s)
                .expect("scale validated at construction")
                .sample(rng),
        }
    }
}

impl fmt::Display for NoiseModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            NoiseKind::None => f.write_str("none"),
            kind => write!(f, "{kind}({})", self.scale),
        }
    }
}

const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

/// The SplitMix64 finaliser.
pub fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(GOLDEN_GAMMA);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed of substream `index` under `base_seed`:
/// `splitmix64(base_seed ^ splitmix64(index))`.
pub fn substream_seed(base_seed: u64, index: u64) -> u64 {
    splitmix64(base_seed ^ splitmix64(index))
}

/// The generator behind every sampled dataset: ChaCha8 keyed by `seed`.
pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}
