//! Pass/fail records for identity and consistency checks.

use serde::Serialize;

use crate::algebra::{ExactScalar, Series};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckResult {
    pub check: String,
    pub d: usize,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub points: Vec<String>,
    pub max_order_checked: i64,
    pub status: Status,
    pub first_failing_order: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl CheckResult {
    /// Passes when `diff` vanishes below λ-order `order`.
    pub fn vanishing(
        check: &str,
        d: usize,
        points: Vec<String>,
        diff: &Series<ExactScalar>,
        order: i64,
    ) -> Self {
        let first = diff.valuation().filter(|&k| k < order);
        let short = diff.raw_order() < order;
        let status = if first.is_none() && !short {
            Status::Pass
        } else {
            Status::Fail
        };
        let detail = match (first, short) {
            (Some(k), _) => Some(format!("difference {} at λ^{k}", diff.coeff_unchecked(k))),
            (None, true) => Some(format!("only known below λ^{}", diff.raw_order())),
            _ => None,
        };
        CheckResult {
            check: check.to_string(),
            d,
            points,
            max_order_checked: order.min(diff.raw_order()),
            status,
            first_failing_order: first.or(if short { Some(diff.raw_order()) } else { None }),
            detail,
        }
    }

    /// Compares two series below `order`.
    pub fn equal(
        check: &str,
        d: usize,
        points: Vec<String>,
        lhs: &Series<ExactScalar>,
        rhs: &Series<ExactScalar>,
        order: i64,
    ) -> Self {
        match lhs.checked_sub(rhs) {
            Ok(diff) => Self::vanishing(check, d, points, &diff, order),
            Err(e) => Self::failed(check, d, points, e.to_string()),
        }
    }

    /// Compares a series against expected coefficients at `lo, lo+1, …`.
    pub fn coefficients(
        check: &str,
        d: usize,
        s: &Series<ExactScalar>,
        lo: i64,
        expected: &[ExactScalar],
    ) -> Self {
        let hi = lo + expected.len() as i64;
        let want = Series::new(s.var(), lo, expected.to_vec(), hi);
        let diff = s
            .truncate(hi)
            .checked_sub(&want)
            .map(|x| x.truncate(hi));
        match diff {
            Ok(diff) => {
                let below = diff
                    .valuation()
                    .filter(|&k| k < lo)
                    .map(|k| format!("unexpected term at λ^{k}"));
                let mut r = Self::vanishing(check, d, vec![], &diff, hi);
                if let Some(msg) = below {
                    r.status = Status::Fail;
                    r.detail = Some(msg);
                }
                r
            }
            Err(e) => Self::failed(check, d, vec![], e.to_string()),
        }
    }

    pub fn failed(check: &str, d: usize, points: Vec<String>, why: String) -> Self {
        CheckResult {
            check: check.to_string(),
            d,
            points,
            max_order_checked: 0,
            status: Status::Fail,
            first_failing_order: Some(0),
            detail: Some(why),
        }
    }

    pub fn boolean(check: &str, d: usize, ok: bool, detail: Option<String>) -> Self {
        CheckResult {
            check: check.to_string(),
            d,
            points: vec![],
            max_order_checked: 0,
            status: if ok { Status::Pass } else { Status::Fail },
            first_failing_order: if ok { None } else { Some(0) },
            detail,
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

/// Turns a computation error into a failed check instead of propagating it.
pub fn or_failed<E: std::fmt::Display>(
    check: &str,
    d: usize,
    r: Result<CheckResult, E>,
) -> CheckResult {
    r.unwrap_or_else(|e| CheckResult::failed(check, d, vec![], e.to_string()))
}

pub fn all_pass(rs: &[CheckResult]) -> bool {
    rs.iter().all(CheckResult::passed)
}

/// `Σ c_k (−λ)^k` magnitudes as a signed list starting at `lo`.
pub fn minus_lambda(lo: i64, mags: &[i64]) -> Vec<ExactScalar> {
    mags.iter()
        .enumerate()
        .map(|(j, &m)| {
            let k = lo + j as i64;
            ExactScalar::from_int(if k % 2 == 0 { m } else { -m })
        })
        .collect()
}
