use alloc::format;

use super::special::student_t_two_sided;
use crate::{Error, Result};

/// How the standard error of the mean difference is estimated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum VarianceModel {
    /// Unequal variances, Welch–Satterthwaite degrees of freedom.
    #[default]
    Welch,
    /// Classical Student test with pooled variance, df = n_a + n_b - 2.
    Pooled,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SignificanceResult {
    pub t_statistic: f64,
    pub degrees_of_freedom: f64,
    pub p_value: f64,
    pub label: &'static str,
}

fn mean_and_var(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    let ss = xs.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>();
    (mean, ss / (n - 1.0))
}

fn check_sample(xs: &[f64], name: &str) -> Result<()> {
    if xs.len() < 2 {
        return Err(Error::arg(format!(
            "sample {name} needs at least 2 values, got {}",
            xs.len()
        )));
    }
    if !xs.iter().all(|x| x.is_finite()) {
        return Err(Error::arg(format!("sample {name} contains a non-finite value")));
    }
    Ok(())
}

/// Two-sided two-sample t-test.
pub fn t_test(a: &[f64], b: &[f64], model: VarianceModel) -> Result<SignificanceResult> {
    check_sample(a, "a")?;
    check_sample(b, "b")?;
    let (mean_a, var_a) = mean_and_var(a);
    let (mean_b, var_b) = mean_and_var(b);
    if var_a == 0.0 && var_b == 0.0 {
        return Err(Error::DegenerateVariance);
    }
    let (na, nb) = (a.len() as f64, b.len() as f64);
    let (se2, df) = match model {
        VarianceModel::Welch => {
            let sa = var_a / na;
            let sb = var_b / nb;
            let df = (sa + sb) * (sa + sb) / (sa * sa / (na - 1.0) + sb * sb / (nb - 1.0));
            (sa + sb, df)
        }
        VarianceModel::Pooled => {
            let df = na + nb - 2.0;
            let pooled = ((na - 1.0) * var_a + (nb - 1.0) * var_b) / df;
            (pooled * (1.0 / na + 1.0 / nb), df)
        }
    };
    let t = (mean_a - mean_b) / libm::sqrt(se2);
    let p = student_t_two_sided(t, df);
    Ok(SignificanceResult {
        t_statistic: t,
        degrees_of_freedom: df,
        p_value: p,
        label: significance_stars(p)?,
    })
}

/// Welch's two-sided t-test.
pub fn t_test_two_sided(a: &[f64], b: &[f64]) -> Result<SignificanceResult> {
    t_test(a, b, VarianceModel::Welch)
}

/// Asterisk label for a p-value; every threshold is inclusive.
pub fn significance_stars(p: f64) -> Result<&'static str> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::arg(format!("p-value {p} outside [0, 1]")));
    }
    Ok(if p <= 0.0001 {
        "****"
    } else if p <= 0.001 {
        "***"
    } else if p <= 0.01 {
        "**"
    } else if p <= 0.05 {
        "*"
    } else {
        "ns"
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identical_samples() {
        let r = t_test_two_sided(&[1.0, 2.0, 3.0, 4.0, 5.0], &[1.0, 2.0, 3.0, 4.0, 5.0]).unwrap();
        assert_eq!(r.t_statistic, 0.0);
        assert_eq!(r.p_value, 1.0);
        assert_eq!(r.label, "ns");
    }

    #[test]
    fn shifted_samples() {
        let r = t_test_two_sided(&[1.0, 2.0, 3.0, 4.0, 5.0], &[2.0, 3.0, 4.0, 5.0, 6.0]).unwrap();
        assert!((r.t_statistic.abs() - 1.0).abs() < 1e-12);
        assert!((r.degrees_of_freedom - 8.0).abs() < 1e-12);
        // reference value 0.34659350708733416
        assert!((r.p_value - 0.346_593_507_087_334_16).abs() < 1e-9);
    }

    #[test]
    fn pooled_matches_welch_for_equal_sizes_and_variances() {
        let a = [1.0, 2.0, 3.0, 4.0, 5.0];
        let b = [2.0, 3.0, 4.0, 5.0, 6.0];
        let w = t_test(&a, &b, VarianceModel::Welch).unwrap();
        let p = t_test(&a, &b, VarianceModel::Pooled).unwrap();
        assert!((w.p_value - p.p_value).abs() < 1e-12);
    }

    #[test]
    fn degenerate_and_short_samples() {
        assert_eq!(t_test_two_sided(&[0.0; 3], &[0.0; 3]), Err(Error::DegenerateVariance));
        assert!(matches!(
            t_test_two_sided(&[1.0], &[1.0, 2.0]),
            Err(Error::InvalidArgument(_))
        ));
        assert!(t_test_two_sided(&[1.0, f64::NAN], &[1.0, 2.0]).is_err());
        // one constant sample is fine
        assert!(t_test_two_sided(&[1.0, 1.0], &[1.0, 2.0]).is_ok());
    }

    #[test]
    fn star_thresholds() {
        assert_eq!(significance_stars(0.00005).unwrap(), "****");
        assert_eq!(significance_stars(0.0005).unwrap(), "***");
        assert_eq!(significance_stars(0.005).unwrap(), "**");
        assert_eq!(significance_stars(0.03).unwrap(), "*");
        assert_eq!(significance_stars(0.2).unwrap(), "ns");
        assert_eq!(significance_stars(0.0001).unwrap(), "****");
        assert_eq!(significance_stars(0.001).unwrap(), "***");
        assert_eq!(significance_stars(0.01).unwrap(), "**");
        assert_eq!(significance_stars(0.05).unwrap(), "*");
        assert!(significance_stars(-0.1).is_err());
        assert!(significance_stars(1.5).is_err());
        assert!(significance_stars(f64::NAN).is_err());
    }
}
