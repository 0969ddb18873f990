use std::fmt;

use monotone_kernel::polygamma::{polygamma, trigamma, PolygammaOrder};
use monotone_kernel::series::{
    bessel_i, bessel_kernel, exp_tail_h, hyper_1f2, q_family, SeriesValue,
};
use monotone_kernel::verify::{h_value, kernel_w};
use monotone_kernel::Real;

use crate::{EXIT_DOMAIN, EXIT_USAGE};

/// Functions accepted by `eval`, with their argument names.
pub const FUNCTIONS: &[(&str, &[&str])] = &[
    ("bessel_i", &["n", "z"]),
    ("bessel_kernel", &["u"]),
    ("hyper_1f2", &["k", "t"]),
    ("exp_tail_h", &["k", "z"]),
    ("trigamma", &["t"]),
    ("polygamma", &["m", "t"]),
    ("h", &["t"]),
    ("kernel_w", &["u"]),
    ("q", &["u"]),
];

#[derive(Debug, Clone, PartialEq)]
pub enum EvalError {
    UnknownFunction(String),
    Arity {
        function: String,
        expected: usize,
        got: usize,
    },
    NotANumber(String),
    Domain(String),
}

impl EvalError {
    pub fn exit_code(&self) -> u8 {
        match self {
            EvalError::Domain(_) => EXIT_DOMAIN,
            _ => EXIT_USAGE,
        }
    }
}

impl fmt::Display for EvalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EvalError::UnknownFunction(name) => {
                let known: Vec<&str> = FUNCTIONS.iter().map(|(n, _)| *n).collect();
                write!(
                    f,
                    "unknown function '{name}' (expected one of {})",
                    known.join(", ")
                )
            }
            EvalError::Arity {
                function,
                expected,
                got,
            } => {
                write!(f, "{function} takes {expected} argument(s), got {got}")
            }
            EvalError::NotANumber(s) => write!(f, "'{s}' is not a number"),
            EvalError::Domain(msg) => f.write_str(msg),
        }
    }
}

impl From<monotone_kernel::Error> for EvalError {
    fn from(e: monotone_kernel::Error) -> Self {
        EvalError::Domain(e.to_string())
    }
}

fn order(name: &str, x: f64) -> Result<u32, EvalError> {
    if x >= 0.0 && x.fract() == 0.0 && x <= u32::MAX as f64 {
        Ok(x as u32)
    } else {
        Err(EvalError::Domain(format!(
            "domain error: {name} must be a nonnegative integer, got {x}"
        )))
    }
}

fn series_line(v: SeriesValue) -> String {
    let err = v.error_bound.to_f64();
    if err > 0.0 {
        format!("{} ± {err:e}", v.value.to_f64())
    } else {
        v.value.to_f64().to_string()
    }
}

/// Evaluates `function` at `args` and formats the value line.
pub fn eval_function(function: &str, args: &[String], tol: f64) -> Result<String, EvalError> {
    let (_, params) = FUNCTIONS
        .iter()
        .find(|(name, _)| *name == function)
        .ok_or_else(|| EvalError::UnknownFunction(function.to_string()))?;
    if args.len() != params.len() {
        return Err(EvalError::Arity {
            function: function.to_string(),
            expected: params.len(),
            got: args.len(),
        });
    }
    let x: Vec<f64> = args
        .iter()
        .map(|a| {
            a.trim()
                .parse::<f64>()
                .map_err(|_| EvalError::NotANumber(a.clone()))
        })
        .collect::<Result<_, _>>()?;
    let real = |i: usize| Real::new(x[i]);
    let line = match function {
        "bessel_i" => series_line(bessel_i(order("n", x[0])?, real(1), tol)?),
        "bessel_kernel" => series_line(bessel_kernel(real(0), tol)?),
        "hyper_1f2" => series_line(hyper_1f2(order("k", x[0])?, real(1), tol)?),
        "exp_tail_h" => exp_tail_h(order("k", x[0])?, real(1))?.to_string(),
        "trigamma" => trigamma(real(0))?.to_string(),
        "polygamma" => {
            let m = PolygammaOrder::new(order("m", x[0])?)?;
            polygamma(m, real(1))?.to_string()
        }
        "h" => h_value(real(0))?.to_string(),
        "kernel_w" => kernel_w(real(0))?.to_string(),
        "q" => {
            let q = q_family(real(0))?;
            format!("{} {} {} {}", q.q, q.q1, q.q2, q.q3)
        }
        _ => unreachable!("function table and dispatch disagree"),
    };
    Ok(line)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn eval(f: &str, args: &[&str]) -> Result<String, EvalError> {
        let args: Vec<String> = args.iter().map(|s| s.to_string()).collect();
        eval_function(f, &args, 1e-16)
    }

    #[test]
    fn documented_outputs() {
        assert_eq!(eval("trigamma", &["1"]).unwrap(), "1.6449340668482264");
        assert_eq!(eval("bessel_kernel", &["0"]).unwrap(), "1");
        assert!(eval("h", &["1"]).unwrap().starts_with("1.0733477616108"));
        assert_eq!(eval("q", &["0"]).unwrap(), "0 0 0 0");
    }

    #[test]
    fn error_classes() {
        assert_eq!(eval("gamma", &["1"]).unwrap_err().exit_code(), EXIT_USAGE);
        assert_eq!(
            eval("trigamma", &["1", "2"]).unwrap_err().exit_code(),
            EXIT_USAGE
        );
        assert_eq!(
            eval("trigamma", &["x"]).unwrap_err().exit_code(),
            EXIT_USAGE
        );
        let e = eval("trigamma", &["-1"]).unwrap_err();
        assert_eq!(e.exit_code(), EXIT_DOMAIN);
        assert!(e.to_string().contains("t > 0"));
        assert_eq!(
            eval("bessel_i", &["1.5", "2"]).unwrap_err().exit_code(),
            EXIT_DOMAIN
        );
        assert_eq!(
            eval("polygamma", &["0", "2"]).unwrap_err().exit_code(),
            EXIT_DOMAIN
        );
    }
}
