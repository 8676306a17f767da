//! Run configuration: spectral data plus optional verification settings,
//! read from a JSON file.

use std::path::Path;

use qkm::spectral::SpectralInput;
use serde::Deserialize;

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerifyConfig {
    /// Check groups to run; `None` means the default set.
    #[serde(default)]
    pub checks: Option<Vec<String>>,
    /// Test fixture applied to the deformation before the identity checks.
    #[serde(default)]
    pub fixture: Option<String>,
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub input: SpectralInput,
    pub verify: VerifyConfig,
}

impl RunConfig {
    pub fn load(path: Option<&Path>) -> Result<Self, String> {
        let Some(path) = path else {
            return Ok(RunConfig {
                input: SpectralInput::default(),
                verify: VerifyConfig::default(),
            });
        };
        let text = std::fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self, String> {
        let bad = |e: &dyn std::fmt::Display| format!("invalid config: {e}");
        let mut v: serde_json::Value = serde_json::from_str(text).map_err(|e| bad(&e))?;
        let obj = v.as_object_mut().ok_or_else(|| bad(&"expected a JSON object"))?;
        let verify = match obj.remove("verify") {
            Some(x) => serde_json::from_value(x).map_err(|e| bad(&e))?,
            None => VerifyConfig::default(),
        };
        // Spectral fields default to d = 1, 2e = 1, N = r = 1.
        if !obj.contains_key("eigenvalues") {
            let def = serde_json::to_value(SpectralInput::default()).map_err(|e| bad(&e))?;
            obj.insert("eigenvalues".into(), def["eigenvalues"].clone());
            obj.remove("d");
        }
        let input: SpectralInput = serde_json::from_value(v).map_err(|e| bad(&e))?;
        input.validate().map_err(|e| bad(&e))?;
        Ok(RunConfig { input, verify })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_object_is_default() {
        let c = RunConfig::parse("{}").unwrap();
        let d = SpectralInput::default();
        assert_eq!((c.input.e(), c.input.r(), c.input.big_n()), (d.e(), d.r(), d.big_n()));
        assert!(c.verify.checks.is_none());
    }

    #[test]
    fn spectral_data_and_checks() {
        let c = RunConfig::parse(
            r#"{"eigenvalues": [{"e": "1/2", "r": 1}, {"e": "1/3", "r": 2}], "verify": {"checks": []}}"#,
        )
        .unwrap();
        assert_eq!(c.input.d(), 2);
        assert_eq!(c.verify.checks, Some(vec![]));
    }

    #[test]
    fn rejects_bad_input() {
        assert!(RunConfig::parse("not json").is_err());
        assert!(RunConfig::parse(r#"{"eigenvalues": []}"#).is_err());
    }
}
