//! Plumbing behind the `macdlab` binary: caps, reports, object rendering and
//! the verification suites.

mod compute;
mod suites;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use compute::{compute, Format, Object};
pub use suites::{run_suite, Suite};

/// Upper limits on the work a single command may request.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Caps {
    pub max_degree: usize,
    pub max_window: usize,
    pub max_m: usize,
    /// Random specializations used by rank checks that are not done symbolically.
    pub oracle_trials: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps { max_degree: 8, max_window: 6, max_m: 12, oracle_trials: 2 }
    }
}

impl Caps {
    /// Parses overrides of the form `max_degree=5,max_m=10` on top of the defaults.
    pub fn parse_overrides(s: &str) -> Result<Self> {
        let mut caps = Caps::default();
        for item in s.split(',').map(str::trim).filter(|x| !x.is_empty()) {
            let (k, v) = item.split_once('=').ok_or_else(|| Error::Parse(format!("expected key=value, got {item:?}")))?;
            let v: usize = v.trim().parse().map_err(|e| Error::Parse(format!("{item:?}: {e}")))?;
            if v == 0 {
                return Err(Error::Parse(format!("{item:?}: caps must be positive")));
            }
            match k.trim() {
                "max_degree" => caps.max_degree = v,
                "max_window" => caps.max_window = v,
                "max_m" => caps.max_m = v,
                "oracle_trials" => caps.oracle_trials = v,
                other => return Err(Error::Parse(format!("unknown cap {other:?}"))),
            }
        }
        Ok(caps)
    }

    /// Defaults, overridden by `MACDLAB_CAPS` when set.
    pub fn from_env() -> Result<Self> {
        match std::env::var("MACDLAB_CAPS") {
            Ok(s) => Caps::parse_overrides(&s),
            Err(_) => Ok(Caps::default()),
        }
    }

    pub(crate) fn check(&self, what: &str, value: usize, cap: usize) -> Result<()> {
        if value > cap {
            return Err(Error::CapExceeded(format!("{what} = {value} exceeds the cap {cap}")));
        }
        Ok(())
    }
}

/// Everything a suite run depends on. Equal configs give byte-identical reports.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteConfig {
    pub caps: Caps,
    pub seed: u64,
    /// Number of variables, where a suite takes one.
    pub n: Option<usize>,
    /// Degree bound, where a suite takes one.
    pub degree: Option<usize>,
    /// Size bound on the indices a suite enumerates.
    pub max_size: Option<usize>,
    /// Last `m` of convergence checks; by default three past the first step.
    pub max_m: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// One verified identity.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Report {
    pub suite: String,
    pub instance: String,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub min_valuation_margin: Option<i64>,
    /// The slack `C` in `val >= m - C`, for convergence checks.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub slack: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl Report {
    pub fn new(suite: &str, instance: impl Into<String>, passed: bool) -> Self {
        let status = if passed { Status::Pass } else { Status::Fail };
        Report { suite: suite.into(), instance: instance.into(), status, min_valuation_margin: None, slack: None, witness: None }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    fn with_witness(mut self, w: impl Into<String>) -> Self {
        if !self.passed() {
            self.witness = Some(w.into());
        }
        self
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("reports serialize")
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.passed() { "PASS" } else { "FAIL" };
        write!(f, "{tag} {} {}", self.suite, self.instance)?;
        if let Some(m) = self.min_valuation_margin {
            write!(f, " margin={m}")?;
        }
        if let Some(c) = self.slack {
            write!(f, " C={c}")?;
        }
        if let Some(w) = &self.witness {
            write!(f, " witness: {w}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn caps_overrides() {
        let c = Caps::parse_overrides("max_degree=3, max_m=9").unwrap();
        assert_eq!((c.max_degree, c.max_window, c.max_m), (3, 6, 9));
        assert!(Caps::parse_overrides("max_degree=0").is_err());
        assert!(Caps::parse_overrides("depth=2").is_err());
        assert!(Caps::parse_overrides("max_m").is_err());
        assert_eq!(Caps::parse_overrides("").unwrap(), Caps::default());
    }

    #[test]
    fn report_json_round_trip() {
        let mut r = Report::new("psi", "(1|1)", false).with_witness("off by t");
        r.min_valuation_margin = Some(-1);
        let line = r.to_json_line();
        assert_eq!(serde_json::from_str::<Report>(&line).unwrap(), r);
        let ok = Report::new("psi", "(1|1)", true).with_witness("ignored");
        assert_eq!(ok.to_json_line(), r#"{"suite":"psi","instance":"(1|1)","status":"pass"}"#);
    }
}
