//! Closed-form counts of rooted quadrangulations of the torus.

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::algebra::ExactScalar;
use crate::error::{QkmError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CountKind {
    /// Rooted torus quadrangulations with `n` faces.
    RootedTorus,
    /// `|[λⁿ] F⁽¹⁾|` at `2e = 1`, the rooted count divided by `4n`.
    F1Series,
    /// Rooted bipartite torus quadrangulations with `n + 1` faces.
    BipartiteRooted,
    /// Coefficient of `λ^{n+1}` in the bipartite double sum at `2e = 1`.
    BipartiteF1,
}

impl FromStr for CountKind {
    type Err = QkmError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "rooted-torus" => Ok(CountKind::RootedTorus),
            "f1-series" => Ok(CountKind::F1Series),
            "bipartite-rooted" => Ok(CountKind::BipartiteRooted),
            "bipartite-f1" => Ok(CountKind::BipartiteF1),
            _ => Err(QkmError::Unsupported(format!("unknown count kind '{s}'"))),
        }
    }
}

fn binom(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::from(0);
    }
    let mut acc = BigInt::from(1);
    for j in 0..k {
        acc = acc * BigInt::from(n - j) / BigInt::from(j + 1);
    }
    acc
}

fn big(n: u64) -> BigInt {
    BigInt::from(n)
}

fn rat(num: BigInt, den: BigInt) -> ExactScalar {
    ExactScalar::real(BigRational::new(num, den))
}

/// `(3ⁿ/6)(4ⁿ − C(2n,n))`.
fn rooted_torus(n: u64) -> BigInt {
    big(3).pow(n as u32) * (big(4).pow(n as u32) - binom(2 * n, n)) / big(6)
}

/// `(3^m/12) Σ_{p<m} C(2m, m−1−p)(1 − (−3)^{−p})` with `m = n + 1`.
fn bipartite_sum(n: u64) -> BigRational {
    let m = n + 1;
    let mut inner = BigRational::from_integer(big(0));
    for p in 0..m {
        let pow = BigInt::from(-3).pow(p as u32);
        let term = BigRational::from_integer(1.into()) - BigRational::new(1.into(), pow);
        inner += BigRational::from_integer(binom(2 * m, m - 1 - p)) * term;
    }
    inner * BigRational::from_integer(big(3).pow(m as u32)) / BigRational::from_integer(big(12))
}

pub fn quadrangulation_counts(kind: CountKind, n: u64) -> Result<ExactScalar> {
    if n == 0 {
        return Err(QkmError::Unsupported("counts start at n = 1".into()));
    }
    Ok(match kind {
        CountKind::RootedTorus => ExactScalar::from_bigint(rooted_torus(n)),
        CountKind::F1Series => rat(rooted_torus(n), big(4 * n)),
        CountKind::BipartiteRooted => ExactScalar::real(bipartite_sum(n)),
        CountKind::BipartiteF1 => ExactScalar::real(bipartite_sum(n) / BigRational::from_integer(big(n + 1))),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(kind: CountKind, k: u64) -> Vec<ExactScalar> {
        (1..=k).map(|n| quadrangulation_counts(kind, n).unwrap()).collect()
    }

    #[test]
    fn rooted_torus_sequence() {
        let want: Vec<_> = [1, 15, 198, 2511, 31266, 385398].iter().map(|&x| ExactScalar::from_int(x)).collect();
        assert_eq!(ints(CountKind::RootedTorus, 6), want);
    }

    #[test]
    fn bipartite_sequence() {
        let want: Vec<_> = [1, 20, 307, 4280, 56914].iter().map(|&x| ExactScalar::from_int(x)).collect();
        assert_eq!(ints(CountKind::BipartiteRooted, 5), want);
    }

    #[test]
    fn normalised_series() {
        assert_eq!(quadrangulation_counts(CountKind::F1Series, 1).unwrap(), ExactScalar::ratio(1, 4));
        assert_eq!(quadrangulation_counts(CountKind::F1Series, 3).unwrap(), ExactScalar::ratio(33, 2));
        assert_eq!(quadrangulation_counts(CountKind::BipartiteF1, 1).unwrap(), ExactScalar::ratio(1, 2));
        assert!(quadrangulation_counts(CountKind::RootedTorus, 0).is_err());
        assert!("planar".parse::<CountKind>().is_err());
    }
}
