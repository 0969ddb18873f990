use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{domain, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Spacing {
    #[serde(rename = "log")]
    Log,
    #[serde(rename = "lin")]
    Linear,
    /// Explicit point list.
    #[serde(rename = "list")]
    List,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GridSpec {
    pub lo: f64,
    pub hi: f64,
    pub count: usize,
    pub spacing: Spacing,
}

impl FromStr for GridSpec {
    type Err = Error;

    /// Parses `lo:hi:count:log|lin`.
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        let [lo, hi, count, spacing] = parts[..] else {
            return Err(domain(format!(
                "grid must be lo:hi:count:log|lin, got '{s}'"
            )));
        };
        let num = |x: &str| {
            x.trim()
                .parse::<f64>()
                .map_err(|_| domain(format!("grid bound '{x}' is not a number")))
        };
        let spacing = match spacing.trim() {
            "log" => Spacing::Log,
            "lin" => Spacing::Linear,
            other => {
                return Err(domain(format!(
                    "grid spacing must be log or lin, got '{other}'"
                )))
            }
        };
        let count = count
            .trim()
            .parse::<usize>()
            .map_err(|_| domain(format!("grid count '{count}' is not a positive integer")))?;
        Ok(GridSpec {
            lo: num(lo)?,
            hi: num(hi)?,
            count,
            spacing,
        })
    }
}

impl fmt::Display for GridSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let spacing = match self.spacing {
            Spacing::Log => "log",
            Spacing::Linear => "lin",
            Spacing::List => "list",
        };
        write!(f, "{}:{}:{}:{}", self.lo, self.hi, self.count, spacing)
    }
}

/// Strictly increasing positive sample points.
#[derive(Debug, Clone, PartialEq)]
pub struct Grid {
    points: Vec<f64>,
    spec: GridSpec,
}

impl Grid {
    pub fn new(spec: GridSpec) -> Result<Self> {
        let GridSpec {
            lo,
            hi,
            count,
            spacing,
        } = spec;
        if !(lo.is_finite() && hi.is_finite() && lo > 0.0) {
            return Err(domain(format!(
                "grid bounds must be finite with lo > 0, got {lo}..{hi}"
            )));
        }
        if count == 0 {
            return Err(domain("grid count must be positive"));
        }
        if count > 1 && lo >= hi {
            return Err(domain(format!("grid needs lo < hi, got {lo}..{hi}")));
        }
        let points = match (spacing, count) {
            (_, 1) => vec![lo],
            (Spacing::Log, n) => {
                let ratio = (hi / lo).ln();
                (0..n)
                    .map(|i| match i {
                        0 => lo,
                        i if i == n - 1 => hi,
                        i => lo * (ratio * i as f64 / (n - 1) as f64).exp(),
                    })
                    .collect()
            }
            (Spacing::Linear, n) => (0..n)
                .map(|i| match i {
                    i if i == n - 1 => hi,
                    i => lo + (hi - lo) * i as f64 / (n - 1) as f64,
                })
                .collect(),
            (Spacing::List, _) => {
                return Err(domain("list grids are built with Grid::from_points"))
            }
        };
        let grid = Grid { points, spec };
        grid.check_increasing()?;
        Ok(grid)
    }

    pub fn from_points(points: Vec<f64>) -> Result<Self> {
        if points.is_empty() {
            return Err(domain("grid must not be empty"));
        }
        if points.iter().any(|p| !(p.is_finite() && *p > 0.0)) {
            return Err(domain("grid points must be finite and positive"));
        }
        let spec = GridSpec {
            lo: points[0],
            hi: *points.last().unwrap(),
            count: points.len(),
            spacing: Spacing::List,
        };
        let grid = Grid { points, spec };
        grid.check_increasing()?;
        Ok(grid)
    }

    fn check_increasing(&self) -> Result<()> {
        if self.points.windows(2).all(|w| w[0] < w[1]) {
            Ok(())
        } else {
            Err(domain(format!(
                "grid {} is not strictly increasing",
                self.spec
            )))
        }
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }

    pub fn spec(&self) -> GridSpec {
        self.spec
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn log_grid_hits_endpoints() {
        let g = Grid::new("0.01:1000:200:log".parse().unwrap()).unwrap();
        assert_eq!(g.len(), 200);
        assert_eq!(g.points()[0], 0.01);
        assert_eq!(g.points()[199], 1000.0);
        assert!((g.points()[100] / g.points()[99] - g.points()[1] / g.points()[0]).abs() < 1e-12);
    }

    #[test]
    fn linear_grid() {
        let g = Grid::new("1:2:5:lin".parse().unwrap()).unwrap();
        assert_eq!(g.points(), &[1.0, 1.25, 1.5, 1.75, 2.0]);
    }

    #[test]
    fn rejects_malformed() {
        assert!("1:2:5".parse::<GridSpec>().is_err());
        assert!("1:2:5:cubic".parse::<GridSpec>().is_err());
        assert!("a:2:5:lin".parse::<GridSpec>().is_err());
        assert!(Grid::new("2:1:5:lin".parse().unwrap()).is_err());
        assert!(Grid::new("0:1:5:log".parse().unwrap()).is_err());
        assert!(Grid::new("1:2:0:log".parse().unwrap()).is_err());
        assert!(Grid::from_points(vec![1.0, 1.0]).is_err());
        assert!(Grid::from_points(vec![]).is_err());
    }
}
