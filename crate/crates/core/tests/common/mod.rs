//! Helpers shared across the integration test targets.

/// Ordinary least squares fit `y = slope * x + intercept`.
///
/// Returns `(slope, intercept, r_squared)`. `r_squared` is the coefficient
/// of determination of the fit; a constant `y` sequence yields an
/// `r_squared` of 0 by convention.
#[allow(dead_code)]
pub fn linear_fit(xs: &[f64], ys: &[f64]) -> (f64, f64, f64) {
    assert_eq!(xs.len(), ys.len(), "paired samples required");
    assert!(xs.len() >= 2, "a line needs at least two points");
    let n = xs.len() as f64;
    let mean_x = xs.iter().sum::<f64>() / n;
    let mean_y = ys.iter().sum::<f64>() / n;
    let mut sxx = 0.0;
    let mut sxy = 0.0;
    let mut syy = 0.0;
    for (&x, &y) in xs.iter().zip(ys) {
        let dx = x - mean_x;
        let dy = y - mean_y;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    assert!(sxx > 0.0, "x values must not all coincide");
    let slope = sxy / sxx;
    let intercept = mean_y - slope * mean_x;
    let r_squared = if syy == 0.0 { 0.0 } else { (sxy * sxy) / (sxx * syy) };
    (slope, intercept, r_squared)
}

#[allow(dead_code)]
pub fn choose2(n: usize) -> f64 {
    (n * (n - 1) / 2) as f64
}
