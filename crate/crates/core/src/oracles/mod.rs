//! Closed-form population values for two-component univariate mixtures at
//! `α = 1`, plus quadrature routes that evaluate the same quantities from
//! their integral definitions.
//!
//! Exponential components are parameterized by their mean (`scale`).

pub mod numeric;

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use numeric::{integrate, std_normal_cdf, std_normal_pdf};

/// One mixture component.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum Component {
    Exponential { scale: f64 },
    Normal { mean: f64, sd: f64 },
    Cauchy { location: f64, scale: f64 },
    StandardMultivariateNormal { dim: usize },
}

impl Component {
    fn validate(&self) -> Result<()> {
        let ok = match *self {
            Component::Exponential { scale } => scale.is_finite() && scale > 0.0,
            Component::Normal { mean, sd } => mean.is_finite() && sd.is_finite() && sd > 0.0,
            Component::Cauchy { location, scale } => location.is_finite() && scale.is_finite() && scale > 0.0,
            Component::StandardMultivariateNormal { dim } => dim >= 1,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidParameter(format!("invalid mixture component {self:?}")))
        }
    }

    pub fn dim(&self) -> usize {
        match *self {
            Component::StandardMultivariateNormal { dim } => dim,
            _ => 1,
        }
    }

    fn cdf(&self, x: f64) -> f64 {
        match *self {
            Component::Exponential { scale } => {
                if x <= 0.0 {
                    0.0
                } else {
                    -(-x / scale).exp_m1()
                }
            }
            Component::Normal { mean, sd } => std_normal_cdf((x - mean) / sd),
            Component::Cauchy { location, scale } => 0.5 + ((x - location) / scale).atan() / PI,
            Component::StandardMultivariateNormal { .. } => f64::NAN,
        }
    }

    /// Interval holding all but a negligible (< 1e-13) tail of the mass.
    fn support(&self) -> (f64, f64) {
        match *self {
            Component::Exponential { scale } => (0.0, scale * 31.0),
            Component::Normal { mean, sd } => (mean - 8.0 * sd, mean + 8.0 * sd),
            _ => (f64::NAN, f64::NAN),
        }
    }
}

/// A finite mixture: the component index plays the role of the class label.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MixtureSpec {
    pub components: Vec<Component>,
    pub weights: Vec<f64>,
}

impl MixtureSpec {
    pub fn new(components: Vec<Component>, weights: Vec<f64>) -> Result<Self> {
        let spec = MixtureSpec { components, weights };
        spec.validate()?;
        Ok(spec)
    }

    /// Equal-weight mixture.
    pub fn balanced(components: Vec<Component>) -> Result<Self> {
        let k = components.len().max(1);
        Self::new(components, vec![1.0 / k as f64; k])
    }

    pub fn validate(&self) -> Result<()> {
        if self.components.is_empty() {
            return Err(Error::InvalidParameter("mixture needs at least one component".into()));
        }
        if self.components.len() != self.weights.len() {
            return Err(Error::InvalidParameter(format!(
                "{} components but {} weights",
                self.components.len(),
                self.weights.len()
            )));
        }
        if self.weights.iter().any(|w| !(w.is_finite() && *w > 0.0)) {
            return Err(Error::InvalidParameter("mixture weights must be positive".into()));
        }
        let total: f64 = self.weights.iter().sum();
        if (total - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidParameter(format!(
                "mixture weights sum to {total}, not 1"
            )));
        }
        let d = self.components[0].dim();
        for c in &self.components {
            c.validate()?;
            if c.dim() != d {
                return Err(Error::InvalidParameter("mixture components differ in dimension".into()));
            }
        }
        Ok(())
    }

    pub fn num_components(&self) -> usize {
        self.components.len()
    }

    pub fn dim(&self) -> usize {
        self.components[0].dim()
    }

    /// `p·Exp(θ) + (1−p)·Exp(β)`.
    pub fn exp_mixture(p: f64, theta: f64, beta: f64) -> Result<Self> {
        Self::new(
            vec![
                Component::Exponential { scale: theta },
                Component::Exponential { scale: beta },
            ],
            vec![p, 1.0 - p],
        )
    }

    /// `p·N(0, 1) + (1−p)·N(a, 1)`.
    pub fn normal_location(p: f64, a: f64) -> Result<Self> {
        Self::new(
            vec![
                Component::Normal { mean: 0.0, sd: 1.0 },
                Component::Normal { mean: a, sd: 1.0 },
            ],
            vec![p, 1.0 - p],
        )
    }

    /// `p·N(0, 1) + (1−p)·N(0, r²)`.
    pub fn normal_scale(p: f64, r: f64) -> Result<Self> {
        Self::new(
            vec![
                Component::Normal { mean: 0.0, sd: 1.0 },
                Component::Normal { mean: 0.0, sd: r },
            ],
            vec![p, 1.0 - p],
        )
    }
}

fn check_p(p: f64) -> Result<()> {
    if p.is_finite() && p > 0.0 && p < 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("p must lie in (0, 1), got {p}")))
    }
}

fn check_positive(name: &str, v: f64) -> Result<()> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("{name} must be positive, got {v}")))
    }
}

/// Population correlations of `p·Exp(θ) + (1−p)·Exp(β)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ExpMixtureCorrs {
    pub rho_g: f64,
    /// `dCov(X,Y) / sqrt(dCov(X,X) dCov(Y,Y))` with the quadrature-verified
    /// `dCov(X,X)`.
    pub rho_d: f64,
    pub rho_p2: f64,
    /// `E|X₁ − X₂| = (θ² + β²)/(θ + β)`.
    pub delta_12: f64,
    pub dcov_xy: f64,
    pub dcov_yy: f64,
    /// Closed-form `dCov(X,X)`; agrees with the double integral
    /// `8∬_{x<z} F²(x)(1−F(z))² dz dx`.
    pub dcov_xx: f64,
    /// The commonly quoted longer expression for `dCov(X,X)`, evaluated term
    /// by term. Its `p²(1−p)²θ²β²/(θ+β)²` coefficient is 32 rather than 16,
    /// so it overstates `dCov(X,X)` by `16p²(1−p)²θ²β²/(θ+β)²`.
    pub dcov_xx_published: f64,
    /// `p(1−p)(θ−β)² / (2(θ+β) sqrt(dcov_xx_published))`, the commonly quoted
    /// closed form for the distance correlation.
    pub rho_d_published: f64,
}

/// Closed forms for the two-component exponential mixture.
pub fn exp_mixture_corrs(p: f64, theta: f64, beta: f64) -> Result<ExpMixtureCorrs> {
    check_p(p)?;
    check_positive("theta", theta)?;
    check_positive("beta", beta)?;
    let q = 1.0 - p;
    let (t, b) = (theta, beta);
    let diff2 = (t - b) * (t - b);
    let rho_g =
        p * q * diff2 / ((2.0 * p - p * p) * t * t + (1.0 - p * p) * b * b + (1.0 - 2.0 * p + 2.0 * p * p) * t * b);
    let rho_p2 = p * q * diff2 / (p * t * t + q * b * b + p * q * diff2);
    let delta_12 = (t * t + b * b) / (t + b);

    let published = exp_mixture_dcov_xx_published(p, t, b);
    let dcov_xx = published - 16.0 * p * p * q * q * t * t * b * b / ((t + b) * (t + b));

    // T(X₁, X₂) = 2Δ₁₂ − Δ₁ − Δ₂ = (θ − β)²/(θ + β)
    let energy_12 = diff2 / (t + b);
    let dcov_xy = 2.0 * p * p * q * q * energy_12;
    let dcov_yy = 4.0 * p * p * q * q;
    let rho_d = dcov_xy / (dcov_xx * dcov_yy).sqrt();
    let rho_d_published = p * q * diff2 / (2.0 * (t + b) * published.sqrt());

    Ok(ExpMixtureCorrs {
        rho_g,
        rho_d,
        rho_p2,
        delta_12,
        dcov_xy,
        dcov_yy,
        dcov_xx,
        dcov_xx_published: published,
        rho_d_published,
    })
}

/// The long published `dCov(X,X)` expression, term by term.
fn exp_mixture_dcov_xx_published(p: f64, t: f64, b: f64) -> f64 {
    let q = 1.0 - p;
    let tb = t + b;
    2.0 * p * p * t * t + 2.0 * q * q * b * b + (p * p * t + q * q * b).powi(2)
        - 8.0 / 3.0 * p.powi(3) * t * t
        - 8.0 / 3.0 * q.powi(3) * b * b
        + 16.0 * p * q * t * t * b * b / (tb * tb)
        + 32.0 * p * p * q * q * t * t * b * b / (tb * tb)
        + 8.0 * p.powi(3) * q * t * t * b / tb
        + 8.0 * p * q.powi(3) * t * b * b / tb
        - 8.0 * p * q * q * t * b * b * (5.0 * t + b) / ((2.0 * t + b) * tb)
        - 8.0 * p * p * q * t * t * b * (t + 5.0 * b) / ((t + 2.0 * b) * tb)
}

/// `dCov(X,X) = 8∬_{x<z} F²(x)(1−F(z))² dz dx` for the exponential mixture,
/// by nested adaptive quadrature.
pub fn exp_mixture_dcov_xx_quadrature(p: f64, theta: f64, beta: f64) -> Result<f64> {
    let spec = MixtureSpec::exp_mixture(p, theta, beta)?;
    let cdf = |x: f64| mixture_cdf(&spec, x);
    let upper = theta.max(beta) * 40.0;
    let inner = |x: f64| integrate(&|z: f64| (1.0 - cdf(z)).powi(2), x, upper, 1e-12);
    Ok(8.0 * integrate(&|x: f64| cdf(x).powi(2) * inner(x), 0.0, upper, 1e-10))
}

/// `g(a) = 2aΦ(a/√2) + 2√2 φ(a/√2) − a`, the cross mean difference of two
/// unit-variance normals whose means differ by `a`.
pub fn normal_cross_gmd(a: f64) -> f64 {
    let s = a / std::f64::consts::SQRT_2;
    2.0 * a * std_normal_cdf(s) + 2.0 * std::f64::consts::SQRT_2 * std_normal_pdf(s) - a
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NormalLocationCorrs {
    pub rho_g: f64,
    pub rho_p2: f64,
    /// `E|X₁ − X₂|` in units of the common standard deviation.
    pub delta_12: f64,
}

/// Closed forms for `p·N(μ₁, σ²) + (1−p)·N(μ₂, σ²)` with `a = |μ₁ − μ₂|/σ`.
pub fn normal_location_corrs(p: f64, a: f64) -> Result<NormalLocationCorrs> {
    check_p(p)?;
    if !(a.is_finite() && a >= 0.0) {
        return Err(Error::InvalidParameter(format!("a must be nonnegative, got {a}")));
    }
    let q = 1.0 - p;
    let g = normal_cross_gmd(a);
    let sqrt_pi = PI.sqrt();
    let rho_g = p * q * (g - 2.0 / sqrt_pi) / ((p * p + q * q) / sqrt_pi + p * q * g);
    let rho_p2 = p * q * a * a / (1.0 + p * q * a * a);
    Ok(NormalLocationCorrs {
        rho_g: rho_g.max(0.0),
        rho_p2,
        delta_12: g,
    })
}

/// Gini correlation of `p·N(μ, σ₁²) + (1−p)·N(μ, σ₂²)` with `r = σ₂/σ₁`.
pub fn normal_scale_gcor(p: f64, r: f64) -> Result<f64> {
    check_p(p)?;
    check_positive("r", r)?;
    let q = 1.0 - p;
    let s = (2.0 * (1.0 + r * r)).sqrt();
    Ok((p * q * (s - 1.0 - r) / (p * p + q * q * r + p * q * s)).max(0.0))
}

fn mixture_cdf(spec: &MixtureSpec, x: f64) -> f64 {
    spec.components
        .iter()
        .zip(&spec.weights)
        .map(|(c, w)| w * c.cdf(x))
        .sum()
}

/// Gini correlation at `α = 1` straight from its distribution-function
/// definition, `Σ_k p_k ∫(F_k − F)² / ∫F(1 − F)`, by adaptive quadrature.
/// Only univariate exponential and normal mixtures are supported.
pub fn gcor_by_quadrature(spec: &MixtureSpec) -> Result<f64> {
    spec.validate()?;
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for c in &spec.components {
        match c {
            Component::Exponential { .. } | Component::Normal { .. } => {
                let (a, b) = c.support();
                lo = lo.min(a);
                hi = hi.max(b);
            }
            other => {
                return Err(Error::NoOracle(format!("no quadrature route for {other:?}")));
            }
        }
    }
    // split at 0 where exponential densities have a kink
    let pieces: Vec<(f64, f64)> = if lo < 0.0 && hi > 0.0 {
        vec![(lo, 0.0), (0.0, hi)]
    } else {
        vec![(lo, hi)]
    };
    let tol = 1e-10;
    let (mut between, mut total) = (0.0, 0.0);
    for &(a, b) in &pieces {
        between += integrate(
            &|x: f64| {
                let f = mixture_cdf(spec, x);
                spec.components
                    .iter()
                    .zip(&spec.weights)
                    .map(|(c, w)| w * (c.cdf(x) - f).powi(2))
                    .sum::<f64>()
            },
            a,
            b,
            tol,
        );
        total += integrate(
            &|x: f64| {
                let f = mixture_cdf(spec, x);
                f * (1.0 - f)
            },
            a,
            b,
            tol,
        );
    }
    Ok(between / total)
}

/// Which closed-form example a mixture corresponds to.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum OracleDesign {
    ExpMixture { p: f64, theta: f64, beta: f64 },
    NormalLocation { p: f64, a: f64 },
    NormalScale { p: f64, r: f64 },
}

impl OracleDesign {
    /// Recognizes two-component designs with a closed form.
    pub fn detect(spec: &MixtureSpec) -> Result<Self> {
        spec.validate()?;
        if spec.num_components() != 2 {
            return Err(Error::NoOracle(format!(
                "closed forms exist for two components, got {}",
                spec.num_components()
            )));
        }
        let p = spec.weights[0];
        match (spec.components[0], spec.components[1]) {
            (Component::Exponential { scale: theta }, Component::Exponential { scale: beta }) => {
                Ok(OracleDesign::ExpMixture { p, theta, beta })
            }
            (Component::Normal { mean: m1, sd: s1 }, Component::Normal { mean: m2, sd: s2 }) => {
                if s1 == s2 {
                    Ok(OracleDesign::NormalLocation {
                        p,
                        a: (m1 - m2).abs() / s1,
                    })
                } else if m1 == m2 {
                    Ok(OracleDesign::NormalScale { p, r: s2 / s1 })
                } else {
                    Err(Error::NoOracle(
                        "normal components differ in both mean and scale".into(),
                    ))
                }
            }
            _ => Err(Error::NoOracle(format!("{:?}", spec.components))),
        }
    }

    pub fn rho_g(&self) -> Result<f64> {
        match *self {
            OracleDesign::ExpMixture { p, theta, beta } => Ok(exp_mixture_corrs(p, theta, beta)?.rho_g),
            OracleDesign::NormalLocation { p, a } => Ok(normal_location_corrs(p, a)?.rho_g),
            OracleDesign::NormalScale { p, r } => normal_scale_gcor(p, r),
        }
    }
}

/// Population Gini correlation (`α = 1`) of a mixture with a closed form.
pub fn population_gcor(spec: &MixtureSpec) -> Result<f64> {
    OracleDesign::detect(spec)?.rho_g()
}

/// Which example a monotonicity probe walks, and along which parameter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ProbeExample {
    /// Exponential mixture along `r = β/θ` (θ = 1).
    ExpRatio,
    /// Normal location mixture along `a`.
    NormalLocation,
    /// Normal scale mixture along `r = σ₂/σ₁`.
    NormalScale,
}

impl ProbeExample {
    pub fn from_number(n: u8) -> Result<Self> {
        match n {
            1 => Ok(ProbeExample::ExpRatio),
            2 => Ok(ProbeExample::NormalLocation),
            3 => Ok(ProbeExample::NormalScale),
            other => Err(Error::InvalidParameter(format!(
                "example must be 1, 2 or 3, got {other}"
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MonotonicityReport {
    pub example: ProbeExample,
    pub p: f64,
    pub grid: Vec<f64>,
    pub rho_g: Vec<f64>,
    pub strictly_increasing: bool,
}

/// Evaluates the Gini correlation along a parameter grid and reports whether
/// it increases strictly.
pub fn monotonicity_probe(example: ProbeExample, p: f64, grid: &[f64]) -> Result<MonotonicityReport> {
    check_p(p)?;
    if grid.len() < 2 || grid.iter().any(|g| g.is_nan()) || grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidParameter(
            "grid must be strictly ascending with at least two points".into(),
        ));
    }
    let lower_ok = match example {
        ProbeExample::ExpRatio | ProbeExample::NormalScale => grid[0] > 1.0,
        ProbeExample::NormalLocation => grid[0] > 0.0,
    };
    if !lower_ok {
        return Err(Error::InvalidParameter(format!(
            "grid for {example:?} starts outside the monotone region"
        )));
    }
    let rho_g = grid
        .iter()
        .map(|&v| match example {
            ProbeExample::ExpRatio => exp_mixture_corrs(p, 1.0, v).map(|c| c.rho_g),
            ProbeExample::NormalLocation => normal_location_corrs(p, v).map(|c| c.rho_g),
            ProbeExample::NormalScale => normal_scale_gcor(p, v),
        })
        .collect::<Result<Vec<_>>>()?;
    let strictly_increasing = rho_g.windows(2).all(|w| w[1] > w[0]);
    Ok(MonotonicityReport {
        example,
        p,
        grid: grid.to_vec(),
        rho_g,
        strictly_increasing,
    })
}
