//! The map `R(z) = z^n + a / z^n + c` itself.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{finite, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MapParams {
    pub n: u32,
    pub a: Complex64,
    pub c: Complex64,
}

impl MapParams {
    /// Validates `n >= 1`, finite parameters, and rejects `n = 1` with
    /// `a = c = 0`, which is the identity map.
    pub fn new(n: u32, a: Complex64, c: Complex64) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("n must be at least 1".into()));
        }
        finite(a, "parameter a")?;
        finite(c, "parameter c")?;
        if n == 1 && is_zero(a) && is_zero(c) {
            return Err(Error::InvalidArgument(
                "a = 0 and c = 0 with n = 1 is the identity map".into(),
            ));
        }
        Ok(Self { n, a, c })
    }

    pub fn has_pole(&self) -> bool {
        !is_zero(self.a)
    }

    /// `R(z)`; `z = 0` is rejected when `a != 0`.
    pub fn eval(&self, z: Complex64) -> Result<Complex64> {
        finite(z, "map argument")?;
        let zn = z.powu(self.n);
        let value = if self.has_pole() {
            if is_zero(z) {
                return Err(Error::OutsideDomain);
            }
            zn + self.a / zn + self.c
        } else {
            zn + self.c
        };
        finite(value, "map value")
    }

    /// `R'(z) = n z^(n-1) - n a z^-(n+1)`.
    pub fn derivative(&self, z: Complex64) -> Result<Complex64> {
        finite(z, "map argument")?;
        let n = f64::from(self.n);
        let head = n * z.powu(self.n - 1);
        let value = if self.has_pole() {
            if is_zero(z) {
                return Err(Error::OutsideDomain);
            }
            head - n * self.a / z.powu(self.n + 1)
        } else {
            head
        };
        finite(value, "map derivative")
    }
}

pub(crate) fn is_zero(z: Complex64) -> bool {
    z.re == 0.0 && z.im == 0.0
}
