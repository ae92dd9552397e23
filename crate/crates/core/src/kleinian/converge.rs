use num_complex::Complex64;
use rayon::prelude::*;

use super::fit::{hausdorff_distance, Metric};
use super::limit::{limit_set, LimitSetSample};
use super::ptorus::{bq_classify, ptor_group, BqResult, Root, TraceTriple};
use super::KleinianError;

/// Trace pair `(tr a, tr b)`.
pub type TracePair = (Complex64, Complex64);

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConvergeOptions {
    pub eps: f64,
    pub depth: usize,
    /// Stern–Brocot depth for the discreteness screen.
    pub bq_depth: u32,
    pub root: Root,
}

impl Default for ConvergeOptions {
    fn default() -> Self {
        ConvergeOptions {
            eps: super::limit::DEFAULT_EPS,
            depth: super::limit::DEFAULT_DEPTH,
            bq_depth: 8,
            root: Root::Minus,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum StepOutcome {
    /// Chordal Hausdorff distance to the terminal limit set.
    Distance(f64),
    /// The parameter failed the discreteness screen and was skipped.
    Flagged(BqResult),
    Error(String),
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvergeStep {
    pub parameter: TracePair,
    pub outcome: StepOutcome,
}

impl ConvergeStep {
    pub fn distance(&self) -> Option<f64> {
        match self.outcome {
            StepOutcome::Distance(d) => Some(d),
            _ => None,
        }
    }
}

fn sample(pair: TracePair, options: &ConvergeOptions) -> Result<LimitSetSample, KleinianError> {
    let group = ptor_group(pair.0, pair.1, options.root)?;
    limit_set(&group, options.eps, options.depth)
}

/// Hausdorff distances from the limit set at each parameter to the limit
/// set at `terminal`.
pub fn converge_experiment(
    path: &[TracePair],
    terminal: TracePair,
    options: &ConvergeOptions,
) -> Result<Vec<ConvergeStep>, KleinianError> {
    let screen = |pair: TracePair| bq_classify(&TraceTriple::from_pair(pair.0, pair.1, options.root), options.bq_depth);
    let verdict = screen(terminal);
    if let BqResult::Fail { witness, trace, .. } = verdict {
        return Err(KleinianError::DiscretenessUnknown { witness, trace });
    }
    let target = sample(terminal, options)?;
    let steps = path
        .par_iter()
        .map(|&parameter| {
            let verdict = screen(parameter);
            let outcome = if !verdict.passed() {
                StepOutcome::Flagged(verdict)
            } else {
                match sample(parameter, options)
                    .and_then(|s| hausdorff_distance(&s.points, &target.points, Metric::Chordal))
                {
                    Ok(d) => StepOutcome::Distance(d),
                    Err(e) => StepOutcome::Error(e.to_string()),
                }
            };
            ConvergeStep { parameter, outcome }
        })
        .collect();
    Ok(steps)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn quick() -> ConvergeOptions {
        ConvergeOptions {
            eps: 2e-2,
            depth: 8,
            ..ConvergeOptions::default()
        }
    }

    #[test]
    fn constant_path_gives_zero() {
        let p = (c(3.0, 0.0), c(3.0, 0.0));
        let steps = converge_experiment(&[p, p], p, &quick()).unwrap();
        assert!(steps.iter().all(|s| s.distance() == Some(0.0)));
    }

    #[test]
    fn indiscrete_terminal_is_refused() {
        let bad = (c(1.0, 0.0), c(1.0, 0.0));
        let err = converge_experiment(&[], bad, &quick()).unwrap_err();
        assert!(matches!(err, KleinianError::DiscretenessUnknown { .. }));
    }

    #[test]
    fn failing_step_is_flagged() {
        let steps = converge_experiment(&[(c(1.0, 0.0), c(3.0, 0.0))], (c(3.0, 0.0), c(3.0, 0.0)), &quick()).unwrap();
        assert!(matches!(steps[0].outcome, StepOutcome::Flagged(_)));
    }
}
