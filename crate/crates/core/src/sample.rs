//! Planar point-process samplers.
//!
//! Three samplers are provided: the Palm version of a homogeneous Poisson
//! process on a disk (a uniform Poisson sample plus a point at the origin),
//! a binomial sample (exactly `n` uniform points plus the origin) and the
//! radially ordered Markov chain whose squared radii perform a
//! Gamma-distributed walk, distributionally equal to the `n` nearest Poisson
//! points around the origin.
//!
//! Almost surely no two inter-point distances coincide; in floating point
//! they can. Construction therefore never compares bare distances: every
//! argmin downstream is taken in the lexicographic order
//! `(distance, point index)`, which restores a total order deterministically.
//! [`enforce_nonequidistance`] validates the one case the tie-break cannot
//! absorb, exactly duplicated coordinates.

use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geom::{Point, Window, ORIGIN};
use crate::rng;

/// A finite sample of a planar point process.
///
/// If `has_origin` is set, `points[0]` is exactly `(0, 0)`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PointSet {
    pub points: Vec<Point>,
    pub has_origin: bool,
    pub window: Window,
    pub intensity: f64,
    pub seed: u64,
    pub replicate_id: u64,
}

impl PointSet {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Builds a set from explicit coordinates (origin first when present).
    pub fn from_points(points: Vec<Point>, has_origin: bool, window: Window) -> Self {
        if has_origin {
            assert!(
                points.first() == Some(&ORIGIN),
                "origin sets must start with (0, 0)"
            );
        }
        PointSet {
            points,
            has_origin,
            window,
            intensity: 1.0,
            seed: 0,
            replicate_id: 0,
        }
    }

    /// Returns a copy with `extra` appended, for Palm-style functionals
    /// evaluated at a deterministic location.
    pub fn with_extra_point(&self, extra: Point) -> (PointSet, usize) {
        let mut ps = self.clone();
        ps.points.push(extra);
        let idx = ps.points.len() - 1;
        (ps, idx)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SamplerKind {
    PalmPoissonDisk,
    BinomialDisk,
    RadialChain,
}

/// Configuration shared by the samplers.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct SamplerConfig {
    pub kind: SamplerKind,
    /// Points per unit area.
    pub intensity: f64,
    /// Disk radius of the simulation window.
    pub window_radius: f64,
    /// Fraction of the window radius reserved as a boundary buffer;
    /// statistics should query only inside `(1 - guard_margin) * radius`.
    pub guard_margin: f64,
    /// Number of points (binomial and radial-chain kinds).
    pub count: usize,
    pub seed: u64,
}

impl Default for SamplerConfig {
    fn default() -> Self {
        SamplerConfig {
            kind: SamplerKind::PalmPoissonDisk,
            intensity: 1.0,
            window_radius: 10.0,
            guard_margin: 0.2,
            count: 1,
            seed: 0,
        }
    }
}

impl SamplerConfig {
    pub fn validate(&self) -> Result<(), SampleError> {
        if !(self.intensity > 0.0) {
            return Err(SampleError::InvalidConfig("intensity must be > 0"));
        }
        if !(self.window_radius > 0.0) {
            return Err(SampleError::InvalidConfig("window_radius must be > 0"));
        }
        if !(0.0..1.0).contains(&self.guard_margin) {
            return Err(SampleError::InvalidConfig("guard_margin must be in [0, 1)"));
        }
        if self.kind == SamplerKind::BinomialDisk && self.count < 1 {
            return Err(SampleError::InvalidConfig(
                "count must be >= 1 for the binomial sampler",
            ));
        }
        Ok(())
    }

    /// Radius of the statistics region.
    pub fn stats_radius(&self) -> f64 {
        (1.0 - self.guard_margin) * self.window_radius
    }
}

#[derive(Debug, Error)]
pub enum SampleError {
    #[error("invalid sampler config: {0}")]
    InvalidConfig(&'static str),
    #[error("sampler kind mismatch: expected {expected}")]
    KindMismatch { expected: &'static str },
    #[error("duplicate coordinates at indices {a} and {b}")]
    DuplicatePoint { a: usize, b: usize },
}

const TAG_PALM: u64 = 0x01;
const TAG_BINOMIAL: u64 = 0x02;
const TAG_CHAIN: u64 = 0x03;

/// Palm-version Poisson sample: a Poisson(`intensity * area`) number of
/// uniform points in the window disk, with the origin appended first.
/// Deterministic given `(cfg.seed, replicate_id)`.
pub fn sample_palm_poisson(cfg: &SamplerConfig, replicate_id: u64) -> Result<PointSet, SampleError> {
    cfg.validate()?;
    if cfg.kind != SamplerKind::PalmPoissonDisk {
        return Err(SampleError::KindMismatch {
            expected: "palm_poisson_disk",
        });
    }
    let mut rng = rng::stream(cfg.seed, &[TAG_PALM, replicate_id]);
    let area = std::f64::consts::PI * cfg.window_radius * cfg.window_radius;
    let n = rng::poisson_count(&mut rng, cfg.intensity * area);
    let mut points = Vec::with_capacity(n + 1);
    points.push(ORIGIN);
    for _ in 0..n {
        points.push(rng::uniform_in_disk(&mut rng, cfg.window_radius));
    }
    Ok(PointSet {
        points,
        has_origin: true,
        window: Window::disk(cfg.window_radius),
        intensity: cfg.intensity,
        seed: cfg.seed,
        replicate_id,
    })
}

/// Binomial sample: exactly `cfg.count` uniform points in the window disk
/// plus the origin.
pub fn sample_binomial_disk(cfg: &SamplerConfig, replicate_id: u64) -> Result<PointSet, SampleError> {
    cfg.validate()?;
    if cfg.kind != SamplerKind::BinomialDisk {
        return Err(SampleError::KindMismatch {
            expected: "binomial_disk",
        });
    }
    let mut rng = rng::stream(cfg.seed, &[TAG_BINOMIAL, replicate_id]);
    let mut points = Vec::with_capacity(cfg.count + 1);
    points.push(ORIGIN);
    for _ in 0..cfg.count {
        points.push(rng::uniform_in_disk(&mut rng, cfg.window_radius));
    }
    Ok(PointSet {
        points,
        has_origin: true,
        window: Window::disk(cfg.window_radius),
        intensity: cfg.count as f64 / (std::f64::consts::PI * cfg.window_radius * cfg.window_radius),
        seed: cfg.seed,
        replicate_id,
    })
}

/// The `n` nearest points of a Palm Poisson process, sampled directly by
/// the radial Markov chain: squared radii gain independent
/// Exponential(`intensity * pi`) increments, angles are i.i.d. uniform.
/// Radii are strictly increasing by construction. The origin is not
/// included.
pub fn sample_radial_chain(n: usize, intensity: f64, seed: u64, replicate_id: u64) -> Result<PointSet, SampleError> {
    if n < 1 {
        return Err(SampleError::InvalidConfig("n must be >= 1"));
    }
    if !(intensity > 0.0) {
        return Err(SampleError::InvalidConfig("intensity must be > 0"));
    }
    let mut rng = rng::stream(seed, &[TAG_CHAIN, replicate_id]);
    let rate = intensity * std::f64::consts::PI;
    let mut points = Vec::with_capacity(n);
    let mut r_sq = 0.0;
    for _ in 0..n {
        r_sq += rng::exponential(&mut rng, rate);
        let r = f64::sqrt(r_sq);
        let phi = std::f64::consts::TAU * rng.gen::<f64>();
        points.push(Point::new(r * phi.cos(), r * phi.sin()));
    }
    let radius = points.last().map(|p| p.norm()).unwrap_or(0.0);
    Ok(PointSet {
        points,
        has_origin: false,
        window: Window::disk(radius),
        intensity,
        seed,
        replicate_id,
    })
}

/// Validates the nonequidistance convention. Distinct points always admit
/// the deterministic `(distance, index)` tie-break used by construction, so
/// the only rejected input is a pair of exactly coincident coordinates.
pub fn enforce_nonequidistance(ps: PointSet) -> Result<PointSet, SampleError> {
    let mut keyed: Vec<(u64, u64, usize)> = ps
        .points
        .iter()
        .enumerate()
        .map(|(i, p)| (p.x.to_bits(), p.y.to_bits(), i))
        .collect();
    keyed.sort_unstable();
    for w in keyed.windows(2) {
        if w[0].0 == w[1].0 && w[0].1 == w[1].1 {
            return Err(SampleError::DuplicatePoint {
                a: w[0].2.min(w[1].2),
                b: w[0].2.max(w[1].2),
            });
        }
    }
    Ok(ps)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn palm_cfg(radius: f64, seed: u64) -> SamplerConfig {
        SamplerConfig {
            kind: SamplerKind::PalmPoissonDisk,
            window_radius: radius,
            seed,
            ..SamplerConfig::default()
        }
    }

    #[test]
    fn palm_sample_is_deterministic_and_rooted() {
        let cfg = palm_cfg(5.0, 42);
        let a = sample_palm_poisson(&cfg, 3).unwrap();
        let b = sample_palm_poisson(&cfg, 3).unwrap();
        assert_eq!(a.points, b.points);
        assert_eq!(a.points[0], ORIGIN);
        assert!(a.points.iter().all(|p| p.norm() <= 5.0));
        let c = sample_palm_poisson(&cfg, 4).unwrap();
        assert_ne!(a.points, c.points);
    }

    #[test]
    fn palm_counts_match_poisson_moments() {
        // Mean and variance of the count within 5 standard errors.
        let cfg = palm_cfg(5.0, 7);
        let mean_target = std::f64::consts::PI * 25.0;
        let n_rep = 2000;
        let counts: Vec<f64> = (0..n_rep)
            .map(|r| (sample_palm_poisson(&cfg, r).unwrap().len() - 1) as f64)
            .collect();
        let n = n_rep as f64;
        let mean = counts.iter().sum::<f64>() / n;
        let var = counts.iter().map(|c| (c - mean) * (c - mean)).sum::<f64>() / (n - 1.0);
        let se_mean = (mean_target / n).sqrt();
        assert!(
            (mean - mean_target).abs() < 5.0 * se_mean,
            "mean {mean} vs {mean_target}"
        );
        // Var(S^2) ~ (m + 2 m^2) / n for Poisson(m).
        let se_var = ((mean_target + 2.0 * mean_target * mean_target) / n).sqrt();
        assert!(
            (var - mean_target).abs() < 5.0 * se_var,
            "var {var} vs {mean_target}"
        );
    }

    #[test]
    fn binomial_exact_count_and_mean_radius() {
        let cfg = SamplerConfig {
            kind: SamplerKind::BinomialDisk,
            window_radius: 1.0,
            count: 25_000,
            seed: 1,
            ..SamplerConfig::default()
        };
        let ps = sample_binomial_disk(&cfg, 0).unwrap();
        assert_eq!(ps.len(), 25_001);
        // E|X| = 2/3 for a uniform point of the unit disk.
        let mean_r: f64 =
            ps.points[1..].iter().map(|p| p.norm()).sum::<f64>() / (ps.len() - 1) as f64;
        assert!((mean_r - 2.0 / 3.0).abs() < 0.005, "mean radius {mean_r}");
    }

    #[test]
    fn binomial_zero_points_is_just_origin() {
        let cfg = SamplerConfig {
            kind: SamplerKind::BinomialDisk,
            count: 0,
            ..SamplerConfig::default()
        };
        // count = 0 is rejected by validation (count >= 1), per the config
        // contract; the origin-only set is still constructible directly.
        assert!(sample_binomial_disk(&cfg, 0).is_err());
        let ps = PointSet::from_points(vec![ORIGIN], true, Window::disk(1.0));
        assert_eq!(ps.len(), 1);
    }

    #[test]
    fn radial_chain_radii_increase_and_gamma_mean() {
        let ps = sample_radial_chain(3, 1.0, 5, 0).unwrap();
        assert!(ps.points[0].norm() < ps.points[1].norm());
        assert!(ps.points[1].norm() < ps.points[2].norm());

        // nu_1^2 ~ Exp(pi): mean 1/pi.
        let n = 200_000;
        let mean: f64 = (0..n)
            .map(|r| sample_radial_chain(1, 1.0, 5, r).unwrap().points[0].norm_sq())
            .sum::<f64>()
            / n as f64;
        assert!(
            (mean - 1.0 / std::f64::consts::PI).abs() < 0.005,
            "mean {mean}"
        );
    }

    #[test]
    fn duplicate_points_are_rejected() {
        let ps = PointSet::from_points(
            vec![ORIGIN, Point::new(1.0, 2.0), Point::new(1.0, 2.0)],
            true,
            Window::disk(5.0),
        );
        match enforce_nonequidistance(ps) {
            Err(SampleError::DuplicatePoint { a: 1, b: 2 }) => {}
            other => panic!("expected duplicate error, got {other:?}"),
        }
    }

    #[test]
    fn distinct_points_pass_through_unchanged() {
        let ps = PointSet::from_points(
            vec![ORIGIN, Point::new(1.0, 2.0), Point::new(2.0, 1.0)],
            true,
            Window::disk(5.0),
        );
        let before = ps.points.clone();
        let after = enforce_nonequidistance(ps).unwrap();
        assert_eq!(before, after.points);
    }

    #[test]
    fn invalid_configs_are_rejected() {
        let mut cfg = palm_cfg(5.0, 0);
        cfg.intensity = -1.0;
        assert!(sample_palm_poisson(&cfg, 0).is_err());
        let mut cfg = palm_cfg(0.0, 0);
        cfg.window_radius = 0.0;
        assert!(sample_palm_poisson(&cfg, 0).is_err());
    }
}
