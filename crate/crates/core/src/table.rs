//! `CoeffTable`: the exchange format for every computed λ-expansion.

use serde::{Deserialize, Serialize};

use crate::algebra::{AlgebraError, ExactScalar, Series};

/// How stored coefficients relate to the series.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SignConvention {
    /// Value `Σ c_n λ^n`.
    #[serde(rename = "lambda^n")]
    Lambda,
    /// Value `Σ c_n (−λ)^n`, so alternating tables print as magnitudes.
    #[serde(rename = "(-lambda)^n")]
    MinusLambda,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Entry {
    pub power: i64,
    pub coefficient: ExactScalar,
    /// Exponent `m` of an accompanying `(2e)^{-m}` grading, when declared.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weight: Option<i64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoeffTable {
    pub quantity: String,
    pub variable: String,
    pub sign_convention: SignConvention,
    pub entries: Vec<Entry>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl CoeffTable {
    /// Tabulates powers `lo..hi` of a λ-series.
    pub fn from_series(
        quantity: &str,
        s: &Series<ExactScalar>,
        lo: i64,
        hi: i64,
        conv: SignConvention,
    ) -> Result<Self, AlgebraError> {
        let mut entries = Vec::new();
        for k in lo..hi {
            let mut c = s.coeff(k)?;
            if conv == SignConvention::MinusLambda && k % 2 != 0 {
                c = -c;
            }
            entries.push(Entry {
                power: k,
                coefficient: c,
                weight: None,
            });
        }
        Ok(CoeffTable {
            quantity: quantity.to_string(),
            variable: s.var().name().to_string(),
            sign_convention: conv,
            entries,
            notes: vec![],
        })
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.notes.push(note.into());
        self
    }

    /// Declares the grading `λ^n (2e)^{-m}` with `m = a·n + b`.
    pub fn with_weights(mut self, a: i64, b: i64) -> Self {
        for e in &mut self.entries {
            e.weight = Some(a * e.power + b);
        }
        self
    }

    pub fn coefficients(&self) -> Vec<ExactScalar> {
        self.entries.iter().map(|e| e.coefficient.clone()).collect()
    }

    pub fn get(&self, power: i64) -> Option<&ExactScalar> {
        self.entries
            .iter()
            .find(|e| e.power == power)
            .map(|e| &e.coefficient)
    }

    /// Signed λ-series value, regardless of the storage convention.
    pub fn to_series(&self) -> Series<ExactScalar> {
        let hi = self.entries.iter().map(|e| e.power + 1).max().unwrap_or(0);
        Series::from_fn(crate::algebra::Var::Lambda, 0, hi, |k| {
            let c = self.get(k).cloned().unwrap_or_else(|| ExactScalar::from_int(0));
            if self.sign_convention == SignConvention::MinusLambda && k % 2 != 0 {
                -c
            } else {
                c
            }
        })
    }

    pub fn to_csv(&self) -> String {
        let conv = match self.sign_convention {
            SignConvention::Lambda => "lambda^n",
            SignConvention::MinusLambda => "(-lambda)^n",
        };
        let mut out = String::from("quantity,convention,power,coefficient,weight\n");
        for e in &self.entries {
            let w = e.weight.map(|w| w.to_string()).unwrap_or_default();
            out.push_str(&format!("{},{conv},{},{},{}\n", csv_field(&self.quantity), e.power, e.coefficient, w));
        }
        out
    }

    pub fn to_pretty(&self) -> String {
        let var = match self.sign_convention {
            SignConvention::Lambda => "λ".to_string(),
            SignConvention::MinusLambda => "(-λ)".to_string(),
        };
        let mut out = format!("{}\n", self.quantity);
        for e in &self.entries {
            let w = e.weight.map(|w| format!(" (2e)^-{w}")).unwrap_or_default();
            out.push_str(&format!("  {var}^{:<3} {}{w}\n", e.power, e.coefficient));
        }
        for n in &self.notes {
            out.push_str(&format!("  note: {n}\n"));
        }
        out
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Var;

    #[test]
    fn json_round_trip_and_sign() {
        let s = Series::from_ints(Var::Lambda, 0, &[0, -1, 15, -198], 4);
        let t = CoeffTable::from_series("omega11", &s, 1, 4, SignConvention::MinusLambda).unwrap();
        assert_eq!(
            t.coefficients(),
            vec![ExactScalar::from_int(1), ExactScalar::from_int(15), ExactScalar::from_int(198)]
        );
        let js = serde_json::to_string(&t).unwrap();
        let back: CoeffTable = serde_json::from_str(&js).unwrap();
        assert_eq!(back, t);
        assert!(js.contains("\"(-lambda)^n\""));
        assert_eq!(back.to_series().coeff(3).unwrap(), ExactScalar::from_int(-198));
    }
}
