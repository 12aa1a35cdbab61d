//! Small numerical helpers shared across the crate: compensated (Kahan)
//! summation for long accumulations and a fixed-shape pairwise reduction
//! whose result does not depend on how work was scheduled.

/// Kahan–Babuška compensated accumulator.
///
/// Keeps a running compensation term so that adding `k` values loses
/// `O(1)` ulps instead of `O(k)`.
#[derive(Debug, Clone, Copy, Default)]
pub(crate) struct KahanSum {
    sum: f64,
    compensation: f64,
}

impl KahanSum {
    pub(crate) fn new() -> Self {
        Self::default()
    }

    pub(crate) fn add(&mut self, value: f64) {
        let y = value - self.compensation;
        let t = self.sum + y;
        self.compensation = (t - self.sum) - y;
        self.sum = t;
    }

    pub(crate) fn value(&self) -> f64 {
        self.sum
    }
}

/// Sums a slice with Kahan compensation.
pub(crate) fn kahan_sum<I: IntoIterator<Item = f64>>(values: I) -> f64 {
    let mut acc = KahanSum::new();
    for v in values {
        acc.add(v);
    }
    acc.value()
}

/// Sums a slice by recursive halving.
///
/// The reduction tree depends only on `values.len()`, so the result is
/// bit-identical no matter how the values were produced (in particular it is
/// independent of any thread scheduling that filled the slice), and the
/// error grows as `O(log k)` rather than `O(k)`.
pub(crate) fn pairwise_sum(values: &[f64]) -> f64 {
    match values.len() {
        0 => 0.0,
        1 => values[0],
        2 => values[0] + values[1],
        len => {
            let mid = len / 2;
            pairwise_sum(&values[..mid]) + pairwise_sum(&values[mid..])
        }
    }
}
