//! TOML descriptions of simulation studies.

use std::path::Path;

use ginicor::simulate::{
    cauchy_grid, cauchy_shift, exp_three_class, normal_location_three_class, normal_scale_three_class,
    three_class_grid, StatisticSpec, BALANCED3, UNBALANCED3,
};
use ginicor::{Alpha, Error, EstimatorKind, MixtureSpec, Result, TestStatistic};
use serde::Deserialize;

/// Either a named design with its parameters or an explicit mixture.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum DesignConfig {
    Example(ExampleDesign),
    Mixture(MixtureSpec),
}

#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "example", rename_all = "kebab-case", deny_unknown_fields)]
pub enum ExampleDesign {
    Exp {
        p: f64,
        theta: f64,
        beta: f64,
    },
    NormalLocation {
        p: f64,
        a: f64,
    },
    NormalScale {
        p: f64,
        r: f64,
    },
    Cauchy {
        delta: f64,
    },
    Exp3 {
        weights: [f64; 3],
        theta1: f64,
        theta2: f64,
    },
    NormalLocation3 {
        weights: [f64; 3],
        mu1: f64,
        mu2: f64,
    },
    NormalScale3 {
        weights: [f64; 3],
        sigma1: f64,
        sigma2: f64,
    },
}

impl DesignConfig {
    pub fn spec(&self) -> Result<MixtureSpec> {
        match self {
            DesignConfig::Mixture(m) => {
                m.validate()?;
                Ok(m.clone())
            }
            DesignConfig::Example(e) => match *e {
                ExampleDesign::Exp { p, theta, beta } => MixtureSpec::exp_mixture(p, theta, beta),
                ExampleDesign::NormalLocation { p, a } => MixtureSpec::normal_location(p, a),
                ExampleDesign::NormalScale { p, r } => MixtureSpec::normal_scale(p, r),
                ExampleDesign::Cauchy { delta } => cauchy_shift(delta),
                ExampleDesign::Exp3 {
                    weights,
                    theta1,
                    theta2,
                } => exp_three_class(weights, theta1, theta2),
                ExampleDesign::NormalLocation3 { weights, mu1, mu2 } => normal_location_three_class(weights, mu1, mu2),
                ExampleDesign::NormalScale3 {
                    weights,
                    sigma1,
                    sigma2,
                } => normal_scale_three_class(weights, sigma1, sigma2),
            },
        }
    }
}

fn one() -> f64 {
    1.0
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoverageConfig {
    pub seed: Option<u64>,
    pub n: usize,
    #[serde(default = "default_level")]
    pub level: f64,
    pub reps: usize,
    #[serde(default = "one")]
    pub alpha: f64,
    #[serde(default)]
    pub kind: EstimatorKind,
    #[serde(default)]
    pub include_dcor: bool,
    pub design: DesignConfig,
}

fn default_level() -> f64 {
    0.95
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NamedDesign {
    pub name: String,
    pub design: DesignConfig,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StatisticConfig {
    #[serde(default = "default_statistic")]
    pub statistic: String,
    #[serde(default = "one")]
    pub alpha: f64,
}

fn default_statistic() -> String {
    "gcor-V".into()
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Grid {
    Balanced,
    Unbalanced,
    Cauchy,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PowerConfig {
    pub seed: Option<u64>,
    pub n: usize,
    #[serde(default = "default_permutations")]
    pub permutations: usize,
    #[serde(default = "default_gamma")]
    pub gamma: f64,
    pub reps: usize,
    /// A built-in family of designs, run before any listed in `designs`.
    pub grid: Option<Grid>,
    #[serde(default)]
    pub designs: Vec<NamedDesign>,
    #[serde(default)]
    pub statistics: Vec<StatisticConfig>,
}

fn default_permutations() -> usize {
    ginicor::inference::DEFAULT_PERMUTATIONS
}

fn default_gamma() -> f64 {
    0.05
}

impl PowerConfig {
    pub fn designs(&self) -> Result<Vec<(String, MixtureSpec)>> {
        let mut out = match self.grid {
            Some(Grid::Balanced) => three_class_grid(BALANCED3)?,
            Some(Grid::Unbalanced) => three_class_grid(UNBALANCED3)?,
            Some(Grid::Cauchy) => cauchy_grid()?,
            None => Vec::new(),
        };
        for d in &self.designs {
            out.push((d.name.clone(), d.design.spec()?));
        }
        if out.is_empty() {
            return Err(Error::InvalidParameter(
                "power config lists no designs and no grid".into(),
            ));
        }
        Ok(out)
    }

    /// Defaults to the V-statistic Gini correlation at alpha 1.
    pub fn statistics(&self) -> Result<Vec<StatisticSpec>> {
        if self.statistics.is_empty() {
            return Ok(vec![StatisticSpec {
                statistic: TestStatistic::default(),
                alpha: Alpha::ONE,
            }]);
        }
        self.statistics
            .iter()
            .map(|s| {
                Ok(StatisticSpec {
                    statistic: s.statistic.parse()?,
                    alpha: Alpha::new(s.alpha)?,
                })
            })
            .collect()
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TimingConfig {
    pub seed: Option<u64>,
    pub d_values: Vec<usize>,
    pub n_values: Vec<usize>,
    pub reps: usize,
    #[serde(default = "yes")]
    pub include_dcov: bool,
}

fn yes() -> bool {
    true
}

pub fn load<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path)?;
    toml::from_str(&text).map_err(|e| Error::InvalidParameter(format!("config {}: {}", path.display(), e.message())))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn named_and_explicit_designs() {
        let cfg: PowerConfig = toml::from_str(
            r#"
            n = 60
            reps = 10
            statistics = [{ statistic = "gcor-U", alpha = 0.5 }, { statistic = "dcor-unbiased" }]

            [[designs]]
            name = "loc"
            design = { example = "normal-location3", weights = [0.25, 0.25, 0.5], mu1 = 1.0, mu2 = 2.0 }

            [[designs]]
            name = "raw"
            [designs.design]
            weights = [0.5, 0.5]
            components = [{ family = "exponential", scale = 1.0 }, { family = "exponential", scale = 2.0 }]
            "#,
        )
        .unwrap();
        let designs = cfg.designs().unwrap();
        assert_eq!(designs.len(), 2);
        assert_eq!(designs[0].1.weights, vec![0.25, 0.25, 0.5]);
        assert_eq!(designs[1].1, MixtureSpec::exp_mixture(0.5, 1.0, 2.0).unwrap());
        let stats = cfg.statistics().unwrap();
        assert_eq!(stats[0].statistic, TestStatistic::Gcor(EstimatorKind::U));
        assert_eq!(stats[1].alpha, Alpha::ONE);
        assert_eq!(cfg.permutations, 200);
    }

    #[test]
    fn unknown_keys_are_rejected() {
        assert!(toml::from_str::<TimingConfig>("d_values=[1]\nn_values=[10]\nreps=1\nbogus=2").is_err());
    }

    #[test]
    fn grid_without_designs() {
        let cfg: PowerConfig = toml::from_str("n = 60\nreps = 1\ngrid = \"cauchy\"").unwrap();
        assert_eq!(cfg.designs().unwrap().len(), 5);
        let empty: PowerConfig = toml::from_str("n = 60\nreps = 1").unwrap();
        assert!(empty.designs().is_err());
    }
}
