use crate::Real;

/// Neumaier-compensated accumulator.
#[derive(Debug, Clone, Copy)]
pub struct CompensatedSum<T> {
    sum: T,
    comp: T,
}

impl<T: Real> Default for CompensatedSum<T> {
    fn default() -> Self {
        Self::new()
    }
}

impl<T: Real> CompensatedSum<T> {
    pub fn new() -> Self {
        Self {
            sum: T::zero(),
            comp: T::zero(),
        }
    }

    pub fn add(&mut self, x: T) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp = self.comp + ((self.sum - t) + x);
        } else {
            self.comp = self.comp + ((x - t) + self.sum);
        }
        self.sum = t;
    }

    pub fn value(&self) -> T {
        self.sum + self.comp
    }
}

impl<T: Real> Extend<T> for CompensatedSum<T> {
    fn extend<I: IntoIterator<Item = T>>(&mut self, iter: I) {
        for x in iter {
            self.add(x);
        }
    }
}

impl<T: Real> FromIterator<T> for CompensatedSum<T> {
    fn from_iter<I: IntoIterator<Item = T>>(iter: I) -> Self {
        let mut acc = Self::new();
        acc.extend(iter);
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recovers_cancelled_small_terms() {
        let terms = [1.0f64, 1e100, 1.0, -1e100];
        let naive: f64 = terms.iter().sum();
        let acc: CompensatedSum<f64> = terms.iter().copied().collect();
        assert_eq!(naive, 0.0);
        assert_eq!(acc.value(), 2.0);
    }

    #[test]
    fn many_tiny_terms() {
        let mut acc = CompensatedSum::new();
        acc.add(1.0f64);
        for _ in 0..1_000_000 {
            acc.add(1e-16);
        }
        assert!((acc.value() - (1.0 + 1e-10)).abs() < 1e-22);
    }
}
