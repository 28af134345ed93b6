//! Named test functions with analytic gradients.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::{Error, Real, Result};

pub const STRESS_FLOOR: f64 = 1e-6;

/// One-dimensional profile g; in two dimensions the member is g(x₁)·g(x₂), or g(x₁) when separable.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TestFunction<T> {
    /// e^{εx}.
    Exp {
        eps: T,
    },
    /// a + b·sin x.
    Sine {
        a: T,
        b: T,
    },
    /// a + b·x²e^{-x²/4}.
    Bump {
        a: T,
        b: T,
    },
    /// 1/(1 + e^{-x}) + c.
    Logistic {
        c: T,
    },
    /// x²e^{-x²/4} + 1e-6.
    Stress,
    Constant {
        c: T,
    },
    /// a + b·x.
    Linear {
        a: T,
        b: T,
    },
    /// a + b·x².
    Quadratic {
        a: T,
        b: T,
    },
}

impl<T: Real> TestFunction<T> {
    /// (g(x), g′(x)).
    pub fn eval(&self, x: T) -> (T, T) {
        let two = T::c(2.0);
        let quarter = T::c(0.25);
        match *self {
            TestFunction::Exp { eps } => {
                let v = (eps * x).exp();
                (v, eps * v)
            }
            TestFunction::Sine { a, b } => (a + b * x.sin(), b * x.cos()),
            TestFunction::Bump { a, b } => {
                let e = (-x * x * quarter).exp();
                (a + b * x * x * e, b * (two * x - x * x * x * T::c(0.5)) * e)
            }
            TestFunction::Logistic { c } => {
                let s = (T::one() + (-x).exp()).recip();
                (s + c, s * (T::one() - s))
            }
            TestFunction::Stress => {
                let e = (-x * x * quarter).exp();
                (
                    x * x * e + T::c(STRESS_FLOOR),
                    (two * x - x * x * x * T::c(0.5)) * e,
                )
            }
            TestFunction::Constant { c } => (c, T::zero()),
            TestFunction::Linear { a, b } => (a + b * x, b),
            TestFunction::Quadratic { a, b } => (a + b * x * x, two * b * x),
        }
    }

    /// (f, |∇f|) at a point of ℝ¹ or ℝ².
    pub fn eval_nd(&self, z: &[T], separable: bool) -> (T, T) {
        match z {
            [x] => {
                let (v, d) = self.eval(*x);
                (v, d.abs())
            }
            [x, _] if separable => {
                let (v, d) = self.eval(*x);
                (v, d.abs())
            }
            [x, y] => {
                let (a, da) = self.eval(*x);
                let (b, db) = self.eval(*y);
                (a * b, (da * b).hypot(a * db))
            }
            _ => panic!("dimension {} unsupported", z.len()),
        }
    }

    pub fn id(&self) -> String {
        self.to_string()
    }

    /// Whether e^f is integrable against the standard Gaussian in `dim` dimensions.
    pub fn exp_integrable(&self, dim: usize, separable: bool) -> bool {
        let product = dim == 2 && !separable;
        match *self {
            TestFunction::Exp { eps } => eps == T::zero(),
            TestFunction::Linear { b, .. } => !product || b * b < T::one(),
            TestFunction::Quadratic { b, .. } if product => b == T::zero(),
            TestFunction::Quadratic { b, .. } => b < T::c(0.5),
            _ => true,
        }
    }
}

impl<T: Real> fmt::Display for TestFunction<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TestFunction::Exp { eps } => write!(f, "exp({eps})"),
            TestFunction::Sine { a, b } => write!(f, "sin({a},{b})"),
            TestFunction::Bump { a, b } => write!(f, "bump({a},{b})"),
            TestFunction::Logistic { c } => write!(f, "logistic({c})"),
            TestFunction::Stress => write!(f, "stress"),
            TestFunction::Constant { c } => write!(f, "const({c})"),
            TestFunction::Linear { a, b } => write!(f, "linear({a},{b})"),
            TestFunction::Quadratic { a, b } => write!(f, "quad({a},{b})"),
        }
    }
}

impl<T: Real> FromStr for TestFunction<T> {
    type Err = Error;

    /// Parses the `Display` form, e.g. `exp(0.1)` or `sin(2,1)`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "stress" {
            return Ok(TestFunction::Stress);
        }
        let bad = || Error::Domain(format!("unknown test function '{s}'"));
        let open = s.find('(').ok_or_else(bad)?;
        let inner = s[open + 1..].strip_suffix(')').ok_or_else(bad)?;
        let args = inner
            .split(',')
            .map(|a| a.trim().parse::<f64>().map(T::c).map_err(|_| bad()))
            .collect::<Result<Vec<T>>>()?;
        let f = match (&s[..open], args.as_slice()) {
            ("exp", [eps]) => TestFunction::Exp { eps: *eps },
            ("sin", [a, b]) => TestFunction::Sine { a: *a, b: *b },
            ("bump", [a, b]) => TestFunction::Bump { a: *a, b: *b },
            ("logistic", [c]) => TestFunction::Logistic { c: *c },
            ("const", [c]) => TestFunction::Constant { c: *c },
            ("linear", [a, b]) => TestFunction::Linear { a: *a, b: *b },
            ("quad", [a, b]) => TestFunction::Quadratic { a: *a, b: *b },
            _ => return Err(bad()),
        };
        Ok(f)
    }
}

pub const SUITE_NAMES: [&str; 6] = ["exp", "sin", "bump", "logistic", "stress", "all"];

/// Named families. "all" is exp ∪ sin ∪ bump ∪ logistic; the stress member stays separate.
pub fn suite<T: Real>(name: &str) -> Result<Vec<TestFunction<T>>> {
    let c = T::c;
    let exp = || {
        [0.05, 0.1, 0.2, 0.3, 0.4, 0.5]
            .iter()
            .map(|&e| TestFunction::Exp { eps: c(e) })
            .collect::<Vec<_>>()
    };
    let sin = || {
        [(1.0, 0.3), (1.0, 0.2), (2.0, 1.0)]
            .iter()
            .map(|&(a, b)| TestFunction::Sine { a: c(a), b: c(b) })
            .collect::<Vec<_>>()
    };
    let bump = || {
        [(1.0, 0.5), (0.5, 1.0)]
            .iter()
            .map(|&(a, b)| TestFunction::Bump { a: c(a), b: c(b) })
            .collect::<Vec<_>>()
    };
    let logistic = || {
        [0.1, 1.0]
            .iter()
            .map(|&v| TestFunction::Logistic { c: c(v) })
            .collect::<Vec<_>>()
    };
    Ok(match name {
        "exp" => exp(),
        "sin" => sin(),
        "bump" => bump(),
        "logistic" => logistic(),
        "stress" => vec![TestFunction::Stress],
        "all" => [exp(), sin(), bump(), logistic()].concat(),
        other => vec![other.parse()?],
    })
}
