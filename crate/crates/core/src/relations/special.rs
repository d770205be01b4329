use num_complex::Complex64;

use super::{branch, BranchedParameter};
use crate::error::{finite, Error, Result};
use crate::kernel::all_roots;

/// `a = 0`: the a-side equation collapses to `xi^{n-1} = lambda/n`, giving
/// `n - 1` branches `c_k = (1 - lambda/n) xi_k`.
///
/// For `n = 2` this is the main cardioid `c = lambda/2 - lambda^2/4`.
pub fn special_a_zero(n: u32, lambda: Complex64) -> Result<Vec<BranchedParameter>> {
    finite(lambda, "lambda")?;
    if n < 2 {
        return Err(Error::Unsupported {
            operation: "a = 0 relation",
            n,
        });
    }
    let nf = f64::from(n);
    let zero = Complex64::new(0.0, 0.0);
    all_roots(lambda / nf, n - 1)?
        .into_iter()
        .enumerate()
        .map(|(k, xi)| {
            let value = (1.0 - lambda / nf) * xi;
            branch(k, n, xi, zero, value, lambda, value)
        })
        .collect()
}

/// `c = 0`: the c-side equation collapses to `xi^{n-1} = (1 + lambda/n)/2`,
/// giving `n - 1` branches `a_k = 1/2 (1 - lambda/n) xi_k^{n+1}`.
pub fn special_c_zero(n: u32, lambda: Complex64) -> Result<Vec<BranchedParameter>> {
    finite(lambda, "lambda")?;
    if n < 2 {
        return Err(Error::Unsupported {
            operation: "c = 0 relation",
            n,
        });
    }
    let nf = f64::from(n);
    let zero = Complex64::new(0.0, 0.0);
    all_roots((1.0 + lambda / nf) / 2.0, n - 1)?
        .into_iter()
        .enumerate()
        .map(|(k, xi)| {
            let value = 0.5 * (1.0 - lambda / nf) * xi.powu(n + 1);
            branch(k, n, xi, value, zero, lambda, value)
        })
        .collect()
}
