use std::path::PathBuf;

use monotone_kernel::real::PRECISION_BITS;
use monotone_kernel::series::MAX_DERIVATIVE_ORDER;
use monotone_kernel::verify::{run_suite, CheckReport, Grid, GridSpec, SuiteId};

use crate::{Format, VerifyArgs};

/// Requests a working precision in bits.
pub const PRECISION_ENV: &str = "MONOTONE_KERNEL_PRECISION";

/// Smallest precision the library may run at.
const MIN_PRECISION_BITS: u32 = 60;

/// A validated `verify` invocation.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub suites: Vec<SuiteId>,
    pub grid: Option<GridSpec>,
    pub tol: Option<f64>,
    pub k_max: Option<u32>,
    pub format: Format,
    pub out: Option<PathBuf>,
    pub precision_warning: Option<String>,
}

impl RunConfig {
    pub fn from_args(args: &VerifyArgs, precision: Option<&str>) -> Result<RunConfig, String> {
        let suites = if args.suites.is_empty() {
            SuiteId::ALL.to_vec()
        } else {
            args.suites
                .iter()
                .map(|s| s.parse::<SuiteId>().map_err(|e| e.to_string()))
                .collect::<Result<Vec<_>, _>>()?
        };
        let grid = match &args.grid {
            Some(g) => {
                let spec: GridSpec = g
                    .parse()
                    .map_err(|e: monotone_kernel::Error| e.to_string())?;
                if spec.count < 2 {
                    return Err(format!("grid count must be at least 2, got {}", spec.count));
                }
                if spec.lo.partial_cmp(&spec.hi) != Some(std::cmp::Ordering::Less) {
                    return Err(format!("grid needs lo < hi, got {}..{}", spec.lo, spec.hi));
                }
                Grid::new(spec).map_err(|e| e.to_string())?;
                Some(spec)
            }
            None => None,
        };
        if let Some(tol) = args.tol {
            if !(tol.is_finite() && tol > 0.0) {
                return Err(format!("--tol must be positive, got {tol}"));
            }
        }
        if let Some(k) = args.k_max {
            if k > MAX_DERIVATIVE_ORDER {
                return Err(format!(
                    "--kmax must lie in 0..={MAX_DERIVATIVE_ORDER}, got {k}"
                ));
            }
        }
        let precision_warning = match precision {
            None => None,
            Some(raw) => {
                let bits: u32 = raw
                    .trim()
                    .parse()
                    .map_err(|_| format!("{PRECISION_ENV} must be a bit count, got '{raw}'"))?;
                if bits < MIN_PRECISION_BITS {
                    return Err(format!(
                        "{PRECISION_ENV} = {bits} is below the minimum of {MIN_PRECISION_BITS} bits"
                    ));
                }
                (bits > PRECISION_BITS).then(|| {
                    format!("requested {bits} bits; working precision is fixed at {PRECISION_BITS} bits")
                })
            }
        };
        Ok(RunConfig {
            suites,
            grid,
            tol: args.tol,
            k_max: args.k_max,
            format: args.format,
            out: args.out.clone(),
            precision_warning,
        })
    }

    pub fn execute(&self) -> Result<Vec<CheckReport>, String> {
        let grid = self
            .grid
            .map(Grid::new)
            .transpose()
            .map_err(|e| e.to_string())?;
        self.suites
            .iter()
            .map(|&suite| {
                run_suite(suite, grid.as_ref(), self.k_max, self.tol)
                    .map_err(|e| format!("suite {suite}: {e}"))
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn args(suites: &[&str]) -> VerifyArgs {
        VerifyArgs {
            suites: suites.iter().map(|s| s.to_string()).collect(),
            grid: None,
            tol: None,
            k_max: None,
            format: Format::Json,
            out: None,
        }
    }

    #[test]
    fn defaults_select_every_suite() {
        let c = RunConfig::from_args(&args(&[]), None).unwrap();
        assert_eq!(c.suites, SuiteId::ALL.to_vec());
    }

    #[test]
    fn rejects_invalid_settings() {
        assert!(RunConfig::from_args(&args(&["nope"]), None).is_err());
        let mut a = args(&["ineq1"]);
        a.tol = Some(0.0);
        assert!(RunConfig::from_args(&a, None).is_err());
        let mut a = args(&["ineq1"]);
        a.k_max = Some(MAX_DERIVATIVE_ORDER + 1);
        assert!(RunConfig::from_args(&a, None).is_err());
        for g in ["1:2:1:log", "2:1:10:lin", "1:2:10", "0:1:10:log"] {
            let mut a = args(&["ineq1"]);
            a.grid = Some(g.into());
            assert!(RunConfig::from_args(&a, None).is_err(), "{g}");
        }
        assert!(RunConfig::from_args(&args(&["ineq1"]), Some("abc")).is_err());
        assert!(RunConfig::from_args(&args(&["ineq1"]), Some("53")).is_err());
    }

    #[test]
    fn precision_request() {
        let c = RunConfig::from_args(&args(&["ineq1"]), Some("80")).unwrap();
        assert!(c.precision_warning.is_none());
        let c = RunConfig::from_args(&args(&["ineq1"]), Some("256")).unwrap();
        assert!(c.precision_warning.is_some());
    }
}
