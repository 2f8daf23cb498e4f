use serde::Serialize;
use statrs::function::gamma::ln_gamma;

use crate::error::{Error, Result};

/// Sample counts for the forward and reverse phases.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SampleBudget {
    pub fis_count: u64,
    pub ris_theta1: u64,
    pub ris_theta2: u64,
}

fn in_open_unit(name: &str, x: f64) -> Result<()> {
    if x > 0.0 && x < 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("{name} = {x} must lie in (0, 1)")))
    }
}

fn ceil_count(x: f64) -> u64 {
    (x.ceil() as u64).max(1)
}

/// Forward simulations needed so every `H(u) >= h_floor` is within relative
/// error `gamma` with probability at least `1 - n * delta3`:
/// `R = ceil(3 / (gamma^2 * h_floor) * ln(2 / (n * delta3)))`.
pub fn fis_sample_count(gamma: f64, h_floor: f64, n: usize, delta3: f64) -> Result<u64> {
    in_open_unit("gamma", gamma)?;
    in_open_unit("delta3", delta3)?;
    if !(h_floor > 0.0 && h_floor <= 1.0) {
        return Err(Error::InvalidParameter(format!("h_floor = {h_floor} must lie in (0, 1]")));
    }
    let spread = n as f64 * delta3;
    if n == 0 || spread >= 2.0 {
        return Err(Error::InvalidParameter(format!("n * delta3 = {spread} must be positive and below 2")));
    }
    Ok(ceil_count(3.0 / (gamma * gamma * h_floor) * (2.0 / spread).ln()))
}

/// ln C(n, k) through log-gamma.
fn ln_choose(n: usize, k: usize) -> f64 {
    let (n, k) = (n as f64, k as f64);
    ln_gamma(n + 1.0) - ln_gamma(k + 1.0) - ln_gamma(n - k + 1.0)
}

/// Reverse-sample thresholds `(theta1, theta2)` given a lower bound on OPT.
///
/// `theta1 = 2 n ln(1/delta1) / (opt_lb * eps1^2)` and
/// `theta2 = (2 - 2/e) n ln(C(n, k) / delta2) / (opt_lb * (eps - (1 - 1/e) eps1)^2)`,
/// each rounded up and clamped to at least one.
pub fn ris_sample_counts(
    n: usize,
    k: usize,
    eps: f64,
    eps1: f64,
    delta1: f64,
    delta2: f64,
    opt_lb: f64,
) -> Result<(u64, u64)> {
    let e_factor = 1.0 - (-1.0f64).exp();
    if eps.is_nan() || eps <= 0.0 {
        return Err(Error::InvalidParameter(format!("eps = {eps} must be positive")));
    }
    if !(eps1 > 0.0 && eps1 < eps / e_factor) {
        return Err(Error::InvalidParameter(format!("eps1 = {eps1} must lie in (0, eps / (1 - 1/e))")));
    }
    for (name, d) in [("delta1", delta1), ("delta2", delta2)] {
        if !(d > 0.0 && d <= 1.0) {
            return Err(Error::InvalidParameter(format!("{name} = {d} must lie in (0, 1]")));
        }
    }
    if k > n {
        return Err(Error::BudgetTooLarge { requested: k, available: n });
    }
    if opt_lb.is_nan() || opt_lb <= 0.0 {
        return Err(Error::InvalidParameter(format!("opt_lb = {opt_lb} must be positive")));
    }
    let nf = n as f64;
    let theta1 = 2.0 * nf * (1.0 / delta1).ln() / (opt_lb * eps1 * eps1);
    let gap = eps - e_factor * eps1;
    let theta2 = 2.0 * e_factor * nf * (ln_choose(n, k) - delta2.ln()) / (opt_lb * gap * gap);
    Ok((ceil_count(theta1), ceil_count(theta2)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fis_count_reference_values() {
        // 3 / (0.01 * 0.5) * ln(100) = 600 * 4.605170 = 2763.10
        assert_eq!(fis_sample_count(0.1, 0.5, 100, 0.0002).unwrap(), 2764);
        // halving the pre-log factor: 1381.55
        assert_eq!(fis_sample_count(0.1, 1.0, 100, 0.0002).unwrap(), 1382);
    }

    #[test]
    fn fis_count_domain() {
        assert!(fis_sample_count(1.0, 0.5, 100, 0.0002).is_err());
        assert!(fis_sample_count(0.0, 0.5, 100, 0.0002).is_err());
        assert!(fis_sample_count(0.1, 0.0, 100, 0.0002).is_err());
        assert!(fis_sample_count(0.1, 0.5, 100, 0.02).is_err());
    }

    #[test]
    fn fis_count_monotone() {
        let base = fis_sample_count(0.2, 0.1, 50, 0.001).unwrap();
        assert!(fis_sample_count(0.2, 0.2, 50, 0.001).unwrap() < base);
        assert!(fis_sample_count(0.2, 0.1, 50, 0.0001).unwrap() > base);
    }

    #[test]
    fn theta1_reference_value() {
        // 2 * 100 * ln(100) / (10 * 0.01) = 921.034 / 0.1
        let (t1, _) = ris_sample_counts(100, 5, 0.5, 0.1, 0.01, 0.01, 10.0).unwrap();
        assert_eq!(t1, 9211);
        let (t1, _) = ris_sample_counts(100, 5, 0.5, 0.1, 1.0, 0.01, 10.0).unwrap();
        assert_eq!(t1, 1);
    }

    #[test]
    fn theta2_grows_with_k() {
        let t = |k| ris_sample_counts(100, k, 0.5, 0.1, 0.01, 0.01, 10.0).unwrap().1;
        assert!(t(1) < t(5) && t(5) < t(10));
    }

    #[test]
    fn theta_shrinks_with_opt_lb() {
        let a = ris_sample_counts(100, 5, 0.5, 0.1, 0.01, 0.01, 10.0).unwrap();
        let b = ris_sample_counts(100, 5, 0.5, 0.1, 0.01, 0.01, 20.0).unwrap();
        assert!(b.0 < a.0 && b.1 < a.1);
    }

    #[test]
    fn ln_choose_matches_product() {
        let direct: f64 = (0..10).map(|i| ((100 - i) as f64 / (i + 1) as f64).ln()).sum();
        assert!((ln_choose(100, 10) - direct).abs() < 1e-9);
        assert!(ln_choose(100, 0).abs() < 1e-12);
    }

    #[test]
    fn eps1_out_of_range() {
        assert!(ris_sample_counts(100, 5, 0.5, 0.8, 0.01, 0.01, 10.0).is_err());
        assert!(ris_sample_counts(100, 5, 0.5, 0.0, 0.01, 0.01, 10.0).is_err());
    }
}
