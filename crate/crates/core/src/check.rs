//! Outcome of a single identity or divisibility check.

use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::exact::{bigint_string, rational_string, LaurentPoly, Rational};

/// Named parameter value attached to a check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Param {
    Int(i64),
    List(Vec<i64>),
    Text(String),
}

impl From<i64> for Param {
    fn from(v: i64) -> Self {
        Param::Int(v)
    }
}

impl From<&[i64]> for Param {
    fn from(v: &[i64]) -> Self {
        Param::List(v.to_vec())
    }
}

impl From<Vec<i64>> for Param {
    fn from(v: Vec<i64>) -> Self {
        Param::List(v)
    }
}

impl From<&str> for Param {
    fn from(v: &str) -> Self {
        Param::Text(v.to_string())
    }
}

impl fmt::Display for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Param::Int(v) => write!(f, "{v}"),
            Param::List(v) => {
                let parts: Vec<String> = v.iter().map(i64::to_string).collect();
                write!(f, "({})", parts.join(","))
            }
            Param::Text(s) => f.write_str(s),
        }
    }
}

/// Evidence that a claimed identity or divisibility fails.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// Two sides of a polynomial identity differ.
    Mismatch { lhs: LaurentPoly, rhs: LaurentPoly },
    /// A quotient that should be a polynomial is not.
    NotDivisible { remainder: LaurentPoly },
    /// A polynomial claimed to lie in N[q] has a negative coefficient.
    NegativeCoefficient { poly: LaurentPoly },
    /// Two sides disagree at a rational sample point.
    PointMismatch {
        #[serde(with = "rational_string")]
        point: Rational,
        #[serde(with = "rational_string")]
        lhs: Rational,
        #[serde(with = "rational_string")]
        rhs: Rational,
    },
    /// Integer identity fails.
    IntMismatch {
        #[serde(with = "bigint_string")]
        lhs: BigInt,
        #[serde(with = "bigint_string")]
        rhs: BigInt,
    },
    /// Integer divisibility fails.
    IntNotDivisible {
        #[serde(with = "bigint_string")]
        value: BigInt,
        #[serde(with = "bigint_string")]
        divisor: BigInt,
        #[serde(with = "bigint_string")]
        remainder: BigInt,
    },
    /// A quantity claimed nonnegative is negative.
    Negative {
        #[serde(with = "bigint_string")]
        value: BigInt,
    },
    /// Free-form description (conjecture windows, internal consistency failures).
    Note { message: String },
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::Mismatch { lhs, rhs } => write!(f, "lhs {lhs} != rhs {rhs}"),
            Witness::NotDivisible { remainder } => write!(f, "not divisible, remainder {remainder}"),
            Witness::NegativeCoefficient { poly } => write!(f, "negative coefficient in {poly}"),
            Witness::PointMismatch { point, lhs, rhs } => {
                write!(f, "at q = {point}: lhs {lhs} != rhs {rhs}")
            }
            Witness::IntMismatch { lhs, rhs } => write!(f, "lhs {lhs} != rhs {rhs}"),
            Witness::IntNotDivisible { value, divisor, remainder } => {
                write!(f, "{value} mod {divisor} = {remainder}")
            }
            Witness::Negative { value } => write!(f, "negative value {value}"),
            Witness::Note { message } => f.write_str(message),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Outcome {
    Verified,
    Counterexample { witness: Witness },
    Skipped { reason: String },
}

/// One check: which claim, at which parameters, and what happened.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResult {
    pub check: String,
    pub params: Vec<(String, Param)>,
    #[serde(flatten)]
    pub outcome: Outcome,
}

impl CheckResult {
    pub fn new(check: &str, outcome: Outcome) -> Self {
        Self { check: check.to_string(), params: Vec::new(), outcome }
    }

    pub fn verified(check: &str) -> Self {
        Self::new(check, Outcome::Verified)
    }

    pub fn counterexample(check: &str, witness: Witness) -> Self {
        Self::new(check, Outcome::Counterexample { witness })
    }

    pub fn skipped(check: &str, reason: impl Into<String>) -> Self {
        Self::new(check, Outcome::Skipped { reason: reason.into() })
    }

    /// Verified when `ok`, otherwise a counterexample built lazily from `witness`.
    pub fn from_bool(check: &str, ok: bool, witness: impl FnOnce() -> Witness) -> Self {
        if ok {
            Self::verified(check)
        } else {
            Self::counterexample(check, witness())
        }
    }

    pub fn with(mut self, name: &str, value: impl Into<Param>) -> Self {
        self.params.push((name.to_string(), value.into()));
        self
    }

    pub fn is_verified(&self) -> bool {
        matches!(self.outcome, Outcome::Verified)
    }

    pub fn is_counterexample(&self) -> bool {
        matches!(self.outcome, Outcome::Counterexample { .. })
    }

    pub fn witness(&self) -> Option<&Witness> {
        match &self.outcome {
            Outcome::Counterexample { witness } => Some(witness),
            _ => None,
        }
    }
}

impl fmt::Display for CheckResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.check)?;
        for (name, value) in &self.params {
            write!(f, " {name}={value}")?;
        }
        match &self.outcome {
            Outcome::Verified => write!(f, ": verified"),
            Outcome::Counterexample { witness } => write!(f, ": COUNTEREXAMPLE {witness}"),
            Outcome::Skipped { reason } => write!(f, ": skipped ({reason})"),
        }
    }
}

/// Compares two polynomials, producing a `Mismatch` witness on failure.
pub fn poly_eq(check: &str, lhs: &LaurentPoly, rhs: &LaurentPoly) -> CheckResult {
    CheckResult::from_bool(check, lhs == rhs, || Witness::Mismatch {
        lhs: lhs.clone(),
        rhs: rhs.clone(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_shape_roundtrips() {
        let r = CheckResult::counterexample(
            "thm2",
            Witness::NotDivisible { remainder: LaurentPoly::from_i64s(0, &[2]) },
        )
        .with("n", vec![1, 2])
        .with("j", 3);
        let json = serde_json::to_value(&r).unwrap();
        assert_eq!(json["status"], "counterexample");
        assert_eq!(json["witness"]["kind"], "not_divisible");
        assert_eq!(json["params"][0][1], serde_json::json!([1, 2]));
        let back: CheckResult = serde_json::from_value(json).unwrap();
        assert_eq!(back, r);
        assert_eq!(back.to_string(), "thm2 n=(1,2) j=3: COUNTEREXAMPLE not divisible, remainder 2");
    }
}
