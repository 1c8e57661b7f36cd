use crate::error::{Error, Result};

/// Empirical distribution of a finite sample.
#[derive(Debug, Clone, PartialEq)]
pub struct EmpiricalDistribution {
    sorted: Vec<f64>,
}

impl EmpiricalDistribution {
    pub fn new(mut values: Vec<f64>) -> Result<Self> {
        if values.iter().any(|v| v.is_nan()) {
            return Err(Error::Input("sample contains NaN".into()));
        }
        values.sort_by(f64::total_cmp);
        Ok(Self { sorted: values })
    }

    pub fn len(&self) -> usize {
        self.sorted.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sorted.is_empty()
    }

    /// Values in ascending order.
    pub fn values(&self) -> &[f64] {
        &self.sorted
    }

    /// Fraction of the sample `<= x`.
    pub fn cdf(&self, x: f64) -> f64 {
        if self.sorted.is_empty() {
            return 0.0;
        }
        self.sorted.partition_point(|&v| v <= x) as f64 / self.sorted.len() as f64
    }
}

/// Two-sided Kolmogorov-Smirnov distance between the sample and `cdf`.
pub fn ks_statistic(emp: &EmpiricalDistribution, cdf: impl Fn(f64) -> f64) -> Result<f64> {
    if emp.is_empty() {
        return Err(Error::Input("KS statistic of an empty sample".into()));
    }
    let n = emp.len() as f64;
    let mut d = 0.0f64;
    for (i, &x) in emp.values().iter().enumerate() {
        let f = cdf(x);
        let above = (i + 1) as f64 / n - f;
        let below = f - i as f64 / n;
        d = d.max(above).max(below);
    }
    Ok(d)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn id(x: f64) -> f64 {
        x.clamp(0.0, 1.0)
    }

    #[test]
    fn single_point() {
        let e = EmpiricalDistribution::new(vec![0.5]).unwrap();
        assert_eq!(ks_statistic(&e, id).unwrap(), 0.5);
    }

    #[test]
    fn two_points() {
        let e = EmpiricalDistribution::new(vec![0.75, 0.25]).unwrap();
        assert_eq!(ks_statistic(&e, id).unwrap(), 0.25);
    }

    #[test]
    fn empty_sample_is_an_error() {
        let e = EmpiricalDistribution::new(vec![]).unwrap();
        assert!(matches!(ks_statistic(&e, id), Err(Error::Input(_))));
    }

    #[test]
    fn cdf_is_right_continuous() {
        let e = EmpiricalDistribution::new(vec![1.0, 2.0, 2.0, 3.0]).unwrap();
        assert_eq!(e.cdf(0.999), 0.0);
        assert_eq!(e.cdf(1.0), 0.25);
        assert_eq!(e.cdf(2.0), 0.75);
        assert_eq!(e.cdf(3.0), 1.0);
    }
}
