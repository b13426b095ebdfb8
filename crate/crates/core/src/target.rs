use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::error::{invalid, Error, Result};

/// A function on `[-1, 1]` to be approximated.
#[derive(Clone)]
pub enum TargetFunction {
    /// `1 / (25x² + 1)`
    Runge,
    /// `|x|`
    Abs,
    /// `|x|³`
    Abs3,
    Custom {
        name: String,
        f: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
    },
}

impl TargetFunction {
    pub fn custom<F>(name: impl Into<String>, f: F) -> Self
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        TargetFunction::Custom {
            name: name.into(),
            f: Arc::new(f),
        }
    }

    pub fn name(&self) -> &str {
        match self {
            TargetFunction::Runge => "runge",
            TargetFunction::Abs => "abs",
            TargetFunction::Abs3 => "abs3",
            TargetFunction::Custom { name, .. } => name,
        }
    }

    #[inline]
    pub fn eval(&self, x: f64) -> f64 {
        match self {
            TargetFunction::Runge => 1.0 / (25.0 * x * x + 1.0),
            TargetFunction::Abs => x.abs(),
            TargetFunction::Abs3 => x.abs().powi(3),
            TargetFunction::Custom { f, .. } => f(x),
        }
    }
}

impl fmt::Debug for TargetFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TargetFunction({})", self.name())
    }
}

impl FromStr for TargetFunction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "runge" => Ok(TargetFunction::Runge),
            "abs" => Ok(TargetFunction::Abs),
            "abs3" => Ok(TargetFunction::Abs3),
            other => invalid(format!(
                "unknown function `{other}` (expected runge, abs or abs3)"
            )),
        }
    }
}
