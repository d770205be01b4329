use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::approx::{
    a_validity_ratio, approx_a_from_c_large, approx_a_from_c_small, approx_c_from_a_large,
    approx_c_from_a_small, c_validity_ratio, ValidityGate,
};
use super::{
    a_from_c, a_from_c_numeric, c_from_a, c_from_a_numeric, special_a_zero, special_c_zero,
    BranchedParameter,
};
use crate::error::{Error, Regime, Result};
use crate::kernel::RootFinder;
use crate::map::{is_zero, MapParams};

/// Which parameter is free and which is held fixed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    /// `c` fixed, branches give `a`.
    AFromC,
    /// `a` fixed, branches give `c`.
    CFromA,
    /// `a = 0`, branches give `c`.
    AZero,
    /// `c = 0`, branches give `a`.
    CZero,
}

impl Mode {
    pub const ALL: [Mode; 4] = [Mode::AFromC, Mode::CFromA, Mode::AZero, Mode::CZero];

    /// Name of the parameter the branches produce.
    pub fn free_parameter(self) -> char {
        match self {
            Mode::AFromC | Mode::CZero => 'a',
            Mode::CFromA | Mode::AZero => 'c',
        }
    }

    /// The map whose fixed point the branch value describes.
    pub fn params(self, n: u32, fixed: Complex64, value: Complex64) -> Result<MapParams> {
        let zero = Complex64::new(0.0, 0.0);
        match self {
            Mode::AFromC => MapParams::new(n, value, fixed),
            Mode::CZero => MapParams::new(n, value, zero),
            Mode::CFromA => MapParams::new(n, fixed, value),
            Mode::AZero => MapParams::new(n, zero, value),
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Mode::AFromC => "a-from-c",
            Mode::CFromA => "c-from-a",
            Mode::AZero => "a-zero",
            Mode::CZero => "c-zero",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Mode::ALL
            .into_iter()
            .find(|m| m.as_str() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown mode `{s}`")))
    }
}

/// How a set of branches was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Route {
    Exact,
    /// `a = 0` or `c = 0` closed form.
    Special,
    /// Root finding on a master equation.
    Numeric,
    /// Dominant-parameter approximation; values carry truncation error.
    ApproxLarge,
    /// Small-parameter approximation; a single branch.
    ApproxSmall,
}

impl Route {
    pub fn is_approximate(self) -> bool {
        matches!(self, Route::ApproxLarge | Route::ApproxSmall)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Route::Exact => "exact",
            Route::Special => "special",
            Route::Numeric => "numeric",
            Route::ApproxLarge => "approx-large",
            Route::ApproxSmall => "approx-small",
        }
    }
}

/// Policy for degrees past the closed forms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Strategy {
    /// Closed forms only, except `c` from `a` at `n = 4`, which has none and
    /// is root-found.
    #[default]
    Exact,
    /// Closed forms where they exist, gated approximations elsewhere.
    Approximate,
    /// Root finding on the master equation for every `n`.
    Numeric,
}

/// Which approximation the approximate strategy may use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ApproxRegime {
    /// Whichever side of the gate the validity ratio falls on.
    #[default]
    Auto,
    /// Dominant-parameter formulas only.
    Large,
    /// Small-parameter formulas only.
    Small,
}

impl FromStr for ApproxRegime {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "auto" => Ok(Self::Auto),
            "large" => Ok(Self::Large),
            "small" => Ok(Self::Small),
            _ => Err(Error::InvalidArgument(format!("unknown regime `{s}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Evaluation {
    pub route: Route,
    pub branches: Vec<BranchedParameter>,
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct RelationSolver {
    pub strategy: Strategy,
    pub regime: ApproxRegime,
    pub gate: ValidityGate,
    pub finder: RootFinder,
}

impl RelationSolver {
    pub fn with_strategy(strategy: Strategy) -> Self {
        Self {
            strategy,
            ..Self::default()
        }
    }

    /// Branches of `mode` at multiplier `lambda`. `fixed` is ignored by the
    /// `a = 0` / `c = 0` modes; a zero `fixed` in the other two modes is
    /// redirected to the matching special case.
    pub fn evaluate(
        &self,
        n: u32,
        mode: Mode,
        fixed: Complex64,
        lambda: Complex64,
    ) -> Result<Evaluation> {
        if n == 0 {
            return Err(Error::InvalidArgument("n must be at least 1".into()));
        }
        let special = |branches| {
            Ok(Evaluation {
                route: Route::Special,
                branches,
            })
        };
        match mode {
            Mode::AZero => special(special_a_zero(n, lambda)?),
            Mode::CZero => special(special_c_zero(n, lambda)?),
            Mode::AFromC if is_zero(fixed) => special(special_c_zero(n, lambda)?),
            Mode::CFromA if is_zero(fixed) => special(special_a_zero(n, lambda)?),
            Mode::AFromC => self.a_from_c(n, fixed, lambda),
            Mode::CFromA => self.c_from_a(n, fixed, lambda),
        }
    }

    fn a_from_c(&self, n: u32, c: Complex64, lambda: Complex64) -> Result<Evaluation> {
        let exact = |branches| {
            Ok(Evaluation {
                route: Route::Exact,
                branches,
            })
        };
        match self.strategy {
            Strategy::Numeric => Ok(Evaluation {
                route: Route::Numeric,
                branches: a_from_c_numeric(n, c, lambda, &self.finder)?,
            }),
            _ if n <= 4 => exact(a_from_c(n, c, lambda)?),
            Strategy::Exact => Err(Error::Unsupported {
                operation: "exact a from c",
                n,
            }),
            Strategy::Approximate => {
                let ratio = a_validity_ratio(n, c, lambda);
                let large = || -> Result<Evaluation> {
                    Ok(Evaluation {
                        route: Route::ApproxLarge,
                        branches: approx_a_from_c_large(n, c, lambda, &self.gate)?,
                    })
                };
                let small = || -> Result<Evaluation> {
                    Ok(Evaluation {
                        route: Route::ApproxSmall,
                        branches: vec![approx_a_from_c_small(n, c, lambda, &self.gate)?],
                    })
                };
                match self.regime {
                    ApproxRegime::Large => large(),
                    ApproxRegime::Small => small(),
                    ApproxRegime::Auto if ratio >= self.gate.high => large(),
                    ApproxRegime::Auto if ratio <= self.gate.low => small(),
                    ApproxRegime::Auto => Err(gap_error(ratio, &self.gate)),
                }
            }
        }
    }

    fn c_from_a(&self, n: u32, a: Complex64, lambda: Complex64) -> Result<Evaluation> {
        let numeric = || -> Result<Evaluation> {
            Ok(Evaluation {
                route: Route::Numeric,
                branches: c_from_a_numeric(n, a, lambda, &self.finder)?,
            })
        };
        match self.strategy {
            Strategy::Numeric => numeric(),
            _ if n <= 3 => Ok(Evaluation {
                route: Route::Exact,
                branches: c_from_a(n, a, lambda)?,
            }),
            Strategy::Exact if n == 4 => numeric(),
            Strategy::Exact => Err(Error::Unsupported {
                operation: "exact c from a",
                n,
            }),
            Strategy::Approximate => {
                let ratio = c_validity_ratio(n, a, lambda);
                let large = || -> Result<Evaluation> {
                    Ok(Evaluation {
                        route: Route::ApproxLarge,
                        branches: approx_c_from_a_large(n, a, lambda, &self.gate)?,
                    })
                };
                let small = || -> Result<Evaluation> {
                    Ok(Evaluation {
                        route: Route::ApproxSmall,
                        branches: vec![approx_c_from_a_small(n, a, lambda, &self.gate)?],
                    })
                };
                match self.regime {
                    ApproxRegime::Large => large(),
                    ApproxRegime::Small => small(),
                    ApproxRegime::Auto if is_zero(lambda) || ratio >= self.gate.high => large(),
                    ApproxRegime::Auto if ratio <= self.gate.low => small(),
                    ApproxRegime::Auto => Err(gap_error(ratio, &self.gate)),
                }
            }
        }
    }
}

// Ratio between the two thresholds: neither approximation applies.
fn gap_error(ratio: f64, gate: &ValidityGate) -> Error {
    Error::ValidityGate {
        ratio,
        threshold: gate.high,
        regime: Regime::Dominant,
    }
}
