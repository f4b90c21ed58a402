//! Small numeric helpers.

/// Neumaier-compensated accumulator. Keeps summation error at a couple of
/// ulps independent of the number of terms, which is what lets the simplex
/// unit-sum invariant hold at 1e-12 for vectors of length up to 1e6.
#[derive(Debug, Clone, Copy, Default)]
pub(crate) struct Accumulator {
    sum: f64,
    compensation: f64,
}

impl Accumulator {
    pub fn add(&mut self, value: f64) {
        let t = self.sum + value;
        if self.sum.abs() >= value.abs() {
            self.compensation += (self.sum - t) + value;
        } else {
            self.compensation += (value - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn total(&self) -> f64 {
        self.sum + self.compensation
    }
}

pub(crate) fn compensated_sum(values: impl IntoIterator<Item = f64>) -> f64 {
    let mut acc = Accumulator::default();
    for v in values {
        acc.add(v);
    }
    acc.total()
}
