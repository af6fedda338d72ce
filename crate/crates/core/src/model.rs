//! Observation models for edge scores.
//!
//! A [`WeightModel`] fixes the signal distribution `P` (scores on hidden
//! cycle edges) and the noise distribution `Q` (all other edges), plus an
//! optional erasure probability: each edge is independently unobserved with
//! probability `eta`, in which case it carries no information and its
//! log-likelihood ratio is zero.
//!
//! Supported families (`P` / `Q`):
//! - Gaussian: `N(mu, 1)` / `N(0, 1)` with `mu > 0`;
//! - Poisson:  `Poi(lambda)` / `Poi(mu)` with `lambda >= mu > 0`;
//! - Bernoulli: `Ber(p)` / `Ber(q)` with `1 > p >= q > 0`.
//!
//! Models are parsed from and printed as compact spec strings such as
//! `gaussian:mu2=30`, `poisson:lambda=4,mu=1,eta=0.2` or
//! `bernoulli:p=0.9,q=0.1`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::WeightedGraph;

/// Distribution family of a [`WeightModel`].
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum ModelKind {
    Gaussian { mu: f64 },
    Poisson { lambda: f64, mu: f64 },
    Bernoulli { p: f64, q: f64 },
}

/// Edge score model: a distribution family plus an erasure probability.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct WeightModel {
    pub kind: ModelKind,
    /// Probability that an edge score is unobserved; in `[0, 1)`.
    #[serde(default)]
    pub erasure: f64,
}

impl WeightModel {
    pub fn gaussian(mu: f64) -> Result<Self> {
        WeightModel { kind: ModelKind::Gaussian { mu }, erasure: 0.0 }.validated()
    }

    /// Gaussian model parameterized by the squared mean.
    pub fn gaussian_mu2(mu2: f64) -> Result<Self> {
        if !(mu2.is_finite() && mu2 > 0.0) {
            return Err(Error::invalid(format!("need mu^2 > 0, got {mu2}")));
        }
        Self::gaussian(mu2.sqrt())
    }

    pub fn poisson(lambda: f64, mu: f64) -> Result<Self> {
        WeightModel { kind: ModelKind::Poisson { lambda, mu }, erasure: 0.0 }.validated()
    }

    pub fn bernoulli(p: f64, q: f64) -> Result<Self> {
        WeightModel { kind: ModelKind::Bernoulli { p, q }, erasure: 0.0 }.validated()
    }

    pub fn with_erasure(mut self, eta: f64) -> Result<Self> {
        self.erasure = eta;
        self.validated()
    }

    pub fn validated(self) -> Result<Self> {
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<()> {
        match self.kind {
            ModelKind::Gaussian { mu } => {
                if !(mu.is_finite() && mu > 0.0) {
                    return Err(Error::invalid(format!("Gaussian model needs mu > 0, got {mu}")));
                }
            }
            ModelKind::Poisson { lambda, mu } => {
                if !(lambda.is_finite() && mu.is_finite() && lambda >= mu && mu > 0.0) {
                    return Err(Error::invalid(format!(
                        "Poisson model needs lambda >= mu > 0, got lambda = {lambda}, mu = {mu}"
                    )));
                }
            }
            ModelKind::Bernoulli { p, q } => {
                if !(p.is_finite() && q.is_finite() && p < 1.0 && p >= q && q > 0.0) {
                    return Err(Error::invalid(format!(
                        "Bernoulli model needs 1 > p >= q > 0, got p = {p}, q = {q}"
                    )));
                }
            }
        }
        if !(self.erasure.is_finite() && (0.0..1.0).contains(&self.erasure)) {
            return Err(Error::invalid(format!(
                "erasure probability must lie in [0, 1), got {}",
                self.erasure
            )));
        }
        Ok(())
    }

    /// True when `P = Q` (the scores carry no signal).
    pub fn is_degenerate(&self) -> bool {
        match self.kind {
            ModelKind::Gaussian { .. } => false,
            ModelKind::Poisson { lambda, mu } => lambda == mu,
            ModelKind::Bernoulli { p, q } => p == q,
        }
    }

    /// Log-likelihood ratio `log dP/dQ` of a single raw observation.
    /// The erasure sentinel (`NaN`) maps to `0`.
    pub fn llr(&self, obs: f64) -> Result<f64> {
        if obs.is_nan() {
            return Ok(0.0);
        }
        match self.kind {
            ModelKind::Gaussian { mu } => {
                if !obs.is_finite() {
                    return Err(Error::invalid(format!("bad Gaussian observation {obs}")));
                }
                Ok(obs * mu - mu * mu / 2.0)
            }
            ModelKind::Poisson { lambda, mu } => {
                if !(obs.is_finite() && obs >= 0.0 && obs.fract() == 0.0) {
                    return Err(Error::invalid(format!(
                        "Poisson observation must be a nonnegative integer count, got {obs}"
                    )));
                }
                Ok(obs * (lambda / mu).ln() - (lambda - mu))
            }
            ModelKind::Bernoulli { p, q } => {
                if obs == 1.0 {
                    Ok((p / q).ln())
                } else if obs == 0.0 {
                    Ok(((1.0 - p) / (1.0 - q)).ln())
                } else {
                    Err(Error::invalid(format!(
                        "Bernoulli observation must be 0 or 1, got {obs}"
                    )))
                }
            }
        }
    }

    /// Maps a graph of raw observations to log-likelihood-ratio weights.
    pub fn loglik_transform(&self, g: &WeightedGraph) -> Result<WeightedGraph> {
        self.validate()?;
        let w: Result<Vec<f64>> = g.weights().iter().map(|&v| self.llr(v)).collect();
        WeightedGraph::new(g.n(), w?)
    }

    pub fn family_name(&self) -> &'static str {
        match self.kind {
            ModelKind::Gaussian { .. } => "gaussian",
            ModelKind::Poisson { .. } => "poisson",
            ModelKind::Bernoulli { .. } => "bernoulli",
        }
    }
}

impl fmt::Display for WeightModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            ModelKind::Gaussian { mu } => write!(f, "gaussian:mu={mu}")?,
            ModelKind::Poisson { lambda, mu } => write!(f, "poisson:lambda={lambda},mu={mu}")?,
            ModelKind::Bernoulli { p, q } => write!(f, "bernoulli:p={p},q={q}")?,
        }
        if self.erasure > 0.0 {
            write!(f, ",eta={}", self.erasure)?;
        }
        Ok(())
    }
}

impl FromStr for WeightModel {
    type Err = Error;

    /// Parses `family:key=value,...`; see the module docs for examples.
    /// Gaussian accepts either `mu` or `mu2`.
    fn from_str(s: &str) -> Result<Self> {
        let (family, rest) = s
            .split_once(':')
            .ok_or_else(|| Error::invalid(format!("model spec `{s}` lacks `family:`")))?;
        let mut kv = std::collections::BTreeMap::new();
        for part in rest.split(',') {
            let (k, v) = part
                .split_once('=')
                .ok_or_else(|| Error::invalid(format!("bad model parameter `{part}`")))?;
            let v: f64 = v
                .trim()
                .parse()
                .map_err(|_| Error::invalid(format!("bad numeric value in `{part}`")))?;
            if kv.insert(k.trim().to_string(), v).is_some() {
                return Err(Error::invalid(format!("duplicate model parameter `{k}`")));
            }
        }
        let eta = kv.remove("eta").unwrap_or(0.0);
        let take = |kv: &mut std::collections::BTreeMap<String, f64>, k: &str| -> Result<f64> {
            kv.remove(k)
                .ok_or_else(|| Error::invalid(format!("model spec `{s}` is missing `{k}`")))
        };
        let model = match family.trim() {
            "gaussian" => {
                if let Some(mu2) = kv.remove("mu2") {
                    if kv.remove("mu").is_some() {
                        return Err(Error::invalid("give either mu or mu2, not both"));
                    }
                    WeightModel::gaussian_mu2(mu2)?
                } else {
                    WeightModel::gaussian(take(&mut kv, "mu")?)?
                }
            }
            "poisson" => {
                let lambda = take(&mut kv, "lambda")?;
                let mu = take(&mut kv, "mu")?;
                WeightModel::poisson(lambda, mu)?
            }
            "bernoulli" => {
                let p = take(&mut kv, "p")?;
                let q = take(&mut kv, "q")?;
                WeightModel::bernoulli(p, q)?
            }
            other => return Err(Error::invalid(format!("unknown model family `{other}`"))),
        };
        if let Some(k) = kv.keys().next() {
            return Err(Error::invalid(format!("unknown model parameter `{k}`")));
        }
        model.with_erasure(eta)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gaussian_llr_example() {
        // mu = 2, observation 1: 1 * 2 - 4/2 = 0.
        let m = WeightModel::gaussian(2.0).unwrap();
        assert_eq!(m.llr(1.0).unwrap(), 0.0);
    }

    #[test]
    fn poisson_llr_example() {
        // lambda = 4, mu = 1, count 0: -(4 - 1) = -3.
        let m = WeightModel::poisson(4.0, 1.0).unwrap();
        assert_eq!(m.llr(0.0).unwrap(), -3.0);
        assert!((m.llr(2.0).unwrap() - (2.0 * 4.0f64.ln() - 3.0)).abs() < 1e-15);
    }

    #[test]
    fn bernoulli_llr_takes_two_values() {
        let m = WeightModel::bernoulli(0.9, 0.1).unwrap();
        assert!((m.llr(1.0).unwrap() - 9.0f64.ln()).abs() < 1e-15);
        assert!((m.llr(0.0).unwrap() - (1.0f64 / 9.0).ln()).abs() < 1e-15);
        assert!(m.llr(0.5).is_err());
    }

    #[test]
    fn erasures_map_to_zero() {
        let m = WeightModel::gaussian(2.0).unwrap().with_erasure(0.3).unwrap();
        assert_eq!(m.llr(f64::NAN).unwrap(), 0.0);
        let g = WeightedGraph::new(3, vec![1.0, f64::NAN, 0.0]).unwrap();
        let t = m.loglik_transform(&g).unwrap();
        assert_eq!(t.weights(), &[0.0, 0.0, -2.0]);
        assert!(t.is_fully_observed());
    }

    #[test]
    fn poisson_rejects_fractional_counts() {
        let m = WeightModel::poisson(4.0, 1.0).unwrap();
        assert!(m.llr(1.5).is_err());
        assert!(m.llr(-1.0).is_err());
    }

    #[test]
    fn validation_rejects_bad_parameters() {
        assert!(WeightModel::gaussian(0.0).is_err());
        assert!(WeightModel::gaussian(-1.0).is_err());
        assert!(WeightModel::poisson(1.0, 2.0).is_err());
        assert!(WeightModel::poisson(1.0, 0.0).is_err());
        assert!(WeightModel::bernoulli(0.1, 0.5).is_err());
        assert!(WeightModel::bernoulli(1.0, 0.5).is_err());
        assert!(WeightModel::bernoulli(0.5, 0.0).is_err());
        assert!(WeightModel::gaussian(1.0).unwrap().with_erasure(1.0).is_err());
        assert!(WeightModel::gaussian(1.0).unwrap().with_erasure(-0.1).is_err());
    }

    #[test]
    fn spec_string_roundtrip() {
        for s in [
            "gaussian:mu=2",
            "gaussian:mu2=30",
            "poisson:lambda=4,mu=1",
            "bernoulli:p=0.9,q=0.1",
            "gaussian:mu=2,eta=0.25",
        ] {
            let m: WeightModel = s.parse().unwrap();
            let round: WeightModel = m.to_string().parse().unwrap();
            assert_eq!(m, round, "spec {s}");
        }
        let m: WeightModel = "gaussian:mu2=25".parse().unwrap();
        assert_eq!(m, WeightModel::gaussian(5.0).unwrap());
    }

    #[test]
    fn spec_string_rejects_garbage() {
        assert!("gaussian".parse::<WeightModel>().is_err());
        assert!("gaussian:mu=2,mu2=4".parse::<WeightModel>().is_err());
        assert!("gaussian:sigma=2".parse::<WeightModel>().is_err());
        assert!("uniform:a=0,b=1".parse::<WeightModel>().is_err());
        assert!("poisson:lambda=4".parse::<WeightModel>().is_err());
    }

    #[test]
    fn serde_roundtrip() {
        let m = WeightModel::poisson(4.0, 1.0).unwrap().with_erasure(0.1).unwrap();
        let json = serde_json::to_string(&m).unwrap();
        let back: WeightModel = serde_json::from_str(&json).unwrap();
        assert_eq!(m, back);
    }
}
