//! Discrete error norms and the experimental order of convergence.

use crate::Error;

/// Cell-size-weighted L1 / L2 / Linf norms of `numeric - exact`.
pub fn error_norms(numeric: &[f64], exact: &[f64], dx: f64) -> (f64, f64, f64) {
    assert_eq!(numeric.len(), exact.len());
    let mut l1 = 0.0;
    let mut l2 = 0.0;
    let mut linf = 0.0f64;
    for (a, b) in numeric.iter().zip(exact) {
        let e = (a - b).abs();
        l1 += e * dx;
        l2 += e * e * dx;
        linf = linf.max(e);
    }
    (l1, l2.sqrt(), linf)
}

/// `k = log2(err_coarse / err_fine)` for a grid-halving pair.
pub fn eoc(err_coarse: f64, err_fine: f64) -> Result<f64, Error> {
    if !(err_coarse > 0.0) || !(err_fine > 0.0) {
        return Err(Error::Degenerate(format!(
            "order of convergence needs positive errors, got {err_coarse} and {err_fine}"
        )));
    }
    Ok((err_coarse / err_fine).log2())
}
