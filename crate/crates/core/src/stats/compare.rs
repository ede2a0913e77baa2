use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::{t_test, SignificanceResult, VarianceModel};
use crate::report::two_decimals;
use crate::{Error, Result};

/// One system's scores, one per independent training run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunScores {
    pub system: String,
    pub scores: Vec<f64>,
}

impl RunScores {
    pub fn new(system: impl Into<String>, scores: Vec<f64>) -> Self {
        Self {
            system: system.into(),
            scores,
        }
    }

    pub fn mean(&self) -> f64 {
        self.scores.iter().sum::<f64>() / self.scores.len() as f64
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SystemSummary {
    pub system: String,
    pub runs: usize,
    pub mean: f64,
    pub best: bool,
    /// Mean as reported: two decimals, prefixed with the star label on the
    /// winner when the test is significant.
    pub reported: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ComparisonReport {
    /// Systems in rank order, best first.
    pub systems: Vec<SystemSummary>,
    pub test: Option<SignificanceResult>,
    pub notice: Option<String>,
}

impl ComparisonReport {
    pub const TSV_HEADER: &'static str = "system\truns\tmean\tbest\treported";
}

/// Ranks systems by mean run score and tests the top two against each other.
///
/// Ties on the mean are broken by system name so the ranking does not depend
/// on input order. A degenerate-variance or single-run top pair skips the
/// test and leaves a notice instead.
pub fn compare_systems(runs: &[RunScores], higher_is_better: bool, model: VarianceModel) -> Result<ComparisonReport> {
    if runs.is_empty() {
        return Err(Error::arg("compare needs at least one system"));
    }
    for r in runs {
        if r.scores.is_empty() {
            return Err(Error::arg(format!("system {:?} has no scores", r.system)));
        }
        if !r.scores.iter().all(|s| s.is_finite()) {
            return Err(Error::arg(format!("system {:?} has a non-finite score", r.system)));
        }
    }
    let mut ranked: Vec<&RunScores> = runs.iter().collect();
    ranked.sort_by(|a, b| {
        let by_mean = a.mean().total_cmp(&b.mean());
        let by_mean = if higher_is_better { by_mean.reverse() } else { by_mean };
        by_mean.then_with(|| a.system.cmp(&b.system))
    });
    if let Some(w) = ranked.windows(2).find(|w| w[0].system == w[1].system) {
        return Err(Error::arg(format!("system {:?} listed twice", w[0].system)));
    }

    let mut test = None;
    let mut notice = None;
    if ranked.len() >= 2 {
        let (first, second) = (ranked[0], ranked[1]);
        if first.scores.len() < 2 || second.scores.len() < 2 {
            notice = Some(format!(
                "t-test skipped: {} and {} need at least 2 runs each",
                first.system, second.system
            ));
        } else {
            match t_test(&first.scores, &second.scores, model) {
                Ok(r) => test = Some(r),
                Err(Error::DegenerateVariance) => {
                    notice = Some(format!(
                        "t-test skipped: {} and {} both have zero variance",
                        first.system, second.system
                    ));
                }
                Err(e) => return Err(e),
            }
        }
    }

    let systems = ranked
        .iter()
        .enumerate()
        .map(|(rank, r)| {
            let mean = r.mean();
            let mut reported = two_decimals(mean);
            if rank == 0 {
                if let Some(t) = test.filter(|t| t.label != "ns") {
                    reported.insert_str(0, t.label);
                }
            }
            SystemSummary {
                system: r.system.clone(),
                runs: r.scores.len(),
                mean,
                best: rank == 0,
                reported,
            }
        })
        .collect();
    Ok(ComparisonReport { systems, test, notice })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn zero_variance_pair_gets_notice() {
        let runs = vec![RunScores::new("X", vec![95.81; 5]), RunScores::new("Y", vec![95.74; 5])];
        let r = compare_systems(&runs, true, VarianceModel::Welch).unwrap();
        assert!(r.test.is_none());
        assert!(r.notice.is_some());
        assert_eq!(r.systems[0].reported, "95.81");
        assert!(r.systems[0].best);
        assert_eq!(r.systems[1].reported, "95.74");
    }

    #[test]
    fn significant_winner_is_starred() {
        let runs = vec![
            RunScores::new("Y", vec![91.0, 91.2, 91.1, 90.9, 91.3]),
            RunScores::new("X", vec![92.0, 92.5, 92.3, 92.1, 92.6]),
        ];
        let r = compare_systems(&runs, true, VarianceModel::Welch).unwrap();
        let t = r.test.unwrap();
        // reference p = 5.8696960780899184e-05, df = 6.680412371133973
        assert!((t.p_value - 5.869_696_078_089_918_4e-5).abs() < 1e-9);
        assert!((t.degrees_of_freedom - 6.680_412_371_133_973).abs() < 1e-9);
        assert_eq!(t.label, "****");
        assert_eq!(r.systems[0].system, "X");
        assert_eq!(r.systems[0].reported, "****92.30");
        assert_eq!(r.systems[1].reported, "91.10");
    }

    #[test]
    fn lower_is_better_inverts() {
        let runs = vec![
            RunScores::new("a", vec![40.0, 41.0]),
            RunScores::new("b", vec![37.0, 38.0]),
        ];
        let r = compare_systems(&runs, false, VarianceModel::Welch).unwrap();
        assert_eq!(r.systems[0].system, "b");
    }

    #[test]
    fn single_system_and_single_run() {
        let r = compare_systems(&[RunScores::new("only", vec![1.0, 2.0])], true, VarianceModel::Welch).unwrap();
        assert_eq!(r.systems.len(), 1);
        assert!(r.test.is_none() && r.notice.is_none());
        let runs = vec![RunScores::new("a", vec![1.0]), RunScores::new("b", vec![2.0, 3.0])];
        let r = compare_systems(&runs, true, VarianceModel::Welch).unwrap();
        assert!(r.test.is_none());
        assert!(r.notice.unwrap().contains("at least 2 runs"));
    }

    #[test]
    fn invalid_inputs() {
        assert!(compare_systems(&[], true, VarianceModel::Welch).is_err());
        assert!(compare_systems(&[RunScores::new("a", vec![])], true, VarianceModel::Welch).is_err());
        let dup = vec![RunScores::new("a", vec![1.0]), RunScores::new("a", vec![1.0])];
        assert!(compare_systems(&dup, true, VarianceModel::Welch).is_err());
    }
}
