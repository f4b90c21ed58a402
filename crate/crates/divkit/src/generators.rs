//! The two convex generator families behind every measure in the toolkit,
//! plus Csiszár f-divergences and second-derivative ratio bounds.
//!
//! For s outside {0, 1}:
//!
//! ```text
//! φ_s(x) = [s(s-1)]⁻¹ [x^s + x^(1-s) - (1+x)]          φ_s''(x) = x^(s-2) + x^(-s-1)
//! ψ_s(x) = [s(s-1)]⁻¹ [((x^(1-s)+1)/2)((x+1)/2)^s - (x+1)/2]
//!                                   ψ_s''(x) = ((x^(-s-1)+1)/8)((x+1)/2)^(s-2)
//! ```
//!
//! with logarithmic forms at the removable parameter singularities: φ
//! degenerates to `(x-1)·ln x` at s ∈ {0,1}; ψ_0 generates the
//! Jensen-Shannon divergence and ψ_1 the arithmetic-geometric mean
//! divergence. Both families are normalized (`f(1) = 0`) and strictly convex
//! on x > 0, so each induces a nonnegative f-divergence.

use crate::distributions::DistributionPair;
use crate::error::{Error, Result};
use crate::numeric::Accumulator;

/// Parameter window around s = 0 and s = 1 inside which the logarithmic
/// branch is used. At 1e-8 the generic branch's cancellation error stays
/// below 1e-6 relative at the switch point.
pub const BRANCH_TOL: f64 = 1e-8;

fn check_positive(x: f64) -> Result<()> {
    if x > 0.0 && x.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("generator argument must be positive, got {x}")))
    }
}

fn near(s: f64, target: f64) -> bool {
    (s - target).abs() <= BRANCH_TOL
}

/// φ_s(x); the J-divergence family generator.
pub fn phi_value(s: f64, x: f64) -> Result<f64> {
    check_positive(x)?;
    if near(s, 0.0) || near(s, 1.0) {
        return Ok((x - 1.0) * x.ln());
    }
    Ok((x.powf(s) + x.powf(1.0 - s) - (1.0 + x)) / (s * (s - 1.0)))
}

/// φ_s''(x) = x^(s-2) + x^(-s-1); one closed form covers the branch points.
pub fn phi_second(s: f64, x: f64) -> Result<f64> {
    check_positive(x)?;
    Ok(x.powf(s - 2.0) + x.powf(-s - 1.0))
}

/// ψ_s(x); the AG/JS family generator (s = 0 gives I, s = 1 gives T).
pub fn psi_value(s: f64, x: f64) -> Result<f64> {
    check_positive(x)?;
    let t = 0.5 * (x + 1.0);
    if near(s, 0.0) {
        return Ok(0.5 * x * x.ln() - t * t.ln());
    }
    if near(s, 1.0) {
        return Ok(t * (t.ln() - 0.5 * x.ln()));
    }
    Ok(((0.5 * (x.powf(1.0 - s) + 1.0)) * t.powf(s) - t) / (s * (s - 1.0)))
}

/// ψ_s''(x) = ((x^(-s-1)+1)/8)((x+1)/2)^(s-2).
pub fn psi_second(s: f64, x: f64) -> Result<f64> {
    check_positive(x)?;
    Ok((x.powf(-s - 1.0) + 1.0) / 8.0 * (0.5 * (x + 1.0)).powf(s - 2.0))
}

/// Which family a [`Generator`] belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GeneratorFamily {
    Phi,
    Psi,
}

/// A convex normalized generator: family member `s`, times a positive scale.
/// The scale makes normalized chain members (e.g. φ_½/8 for the Hellinger
/// discrimination) first-class generators.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Generator {
    pub family: GeneratorFamily,
    pub s: f64,
    pub scale: f64,
}

impl Generator {
    pub fn phi(s: f64) -> Self {
        Self { family: GeneratorFamily::Phi, s, scale: 1.0 }
    }

    pub fn psi(s: f64) -> Self {
        Self { family: GeneratorFamily::Psi, s, scale: 1.0 }
    }

    pub fn scaled(mut self, scale: f64) -> Self {
        debug_assert!(scale > 0.0);
        self.scale = scale;
        self
    }

    pub fn value(&self, x: f64) -> Result<f64> {
        let v = match self.family {
            GeneratorFamily::Phi => phi_value(self.s, x)?,
            GeneratorFamily::Psi => psi_value(self.s, x)?,
        };
        Ok(self.scale * v)
    }

    pub fn second(&self, x: f64) -> Result<f64> {
        let v = match self.family {
            GeneratorFamily::Phi => phi_second(self.s, x)?,
            GeneratorFamily::Psi => psi_second(self.s, x)?,
        };
        Ok(self.scale * v)
    }

    /// The f-divergence this generator induces.
    pub fn divergence(&self, pair: &DistributionPair) -> Result<f64> {
        csiszar_divergence(|x| self.value(x), pair)
    }
}

/// Csiszár f-divergence Σ qᵢ f(pᵢ/qᵢ). Nonnegative for normalized convex f.
pub fn csiszar_divergence<F>(f: F, pair: &DistributionPair) -> Result<f64>
where
    F: Fn(f64) -> Result<f64>,
{
    let mut acc = Accumulator::default();
    for (p, q) in pair.components() {
        let v = f(p / q)?;
        if !v.is_finite() {
            return Err(Error::Domain(format!(
                "generator returned non-finite value {v} at ratio {}",
                p / q
            )));
        }
        acc.add(q * v);
    }
    Ok(acc.total())
}

/// Grid point spacing.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GridSpacing {
    Log,
    Linear,
}

/// An evaluation grid on (0, ∞).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub x_min: f64,
    pub x_max: f64,
    pub points: usize,
    pub spacing: GridSpacing,
}

impl GridSpec {
    pub fn new(x_min: f64, x_max: f64, points: usize, spacing: GridSpacing) -> Result<Self> {
        if !(x_min > 0.0) || !x_min.is_finite() || !x_max.is_finite() {
            return Err(Error::Domain(format!(
                "grid endpoints must be positive finite, got [{x_min}, {x_max}]"
            )));
        }
        if x_min >= x_max {
            return Err(Error::Domain(format!(
                "grid needs x_min < x_max, got [{x_min}, {x_max}]"
            )));
        }
        if points < 2 {
            return Err(Error::Domain(format!("grid needs at least 2 points, got {points}")));
        }
        Ok(Self { x_min, x_max, points, spacing })
    }

    pub fn log(x_min: f64, x_max: f64, points: usize) -> Result<Self> {
        Self::new(x_min, x_max, points, GridSpacing::Log)
    }

    /// The default scan grid: logarithmic, [1e-6, 1e6], 1e5 points. Covers
    /// the plotted ranges of every auxiliary function plus asymptotic tails.
    pub fn default_scan() -> Self {
        Self::log(1e-6, 1e6, 100_000).expect("static grid")
    }

    /// The i-th grid point; endpoints are reproduced exactly.
    pub fn point(&self, i: usize) -> f64 {
        debug_assert!(i < self.points);
        if i == 0 {
            return self.x_min;
        }
        if i == self.points - 1 {
            return self.x_max;
        }
        let t = i as f64 / (self.points - 1) as f64;
        match self.spacing {
            GridSpacing::Log => (self.x_min.ln() + t * (self.x_max.ln() - self.x_min.ln())).exp(),
            GridSpacing::Linear => self.x_min + t * (self.x_max - self.x_min),
        }
    }

    pub fn values(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.points).map(move |i| self.point(i))
    }
}

/// Grid estimate of the ratio bounds m ≤ f₁''/f₂'' ≤ M. An estimate, not a
/// proof: the scan upgrades the plots the claims were read from, nothing more.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RatioBounds {
    /// Infimum estimate (the m of the two-generator divergence bound).
    pub inf: f64,
    /// Supremum estimate (the M of the bound).
    pub sup: f64,
    pub arg_inf: f64,
    pub arg_sup: f64,
    pub grid: GridSpec,
}

/// Scan f₁''/f₂'' over the grid. Errors if f₂'' fails to be strictly
/// positive at any grid point, which would void the ratio-bound hypothesis.
pub fn ratio_extrema<F1, F2>(f1_second: F1, f2_second: F2, grid: &GridSpec) -> Result<RatioBounds>
where
    F1: Fn(f64) -> Result<f64>,
    F2: Fn(f64) -> Result<f64>,
{
    let mut inf = f64::INFINITY;
    let mut sup = f64::NEG_INFINITY;
    let mut arg_inf = grid.x_min;
    let mut arg_sup = grid.x_min;
    for x in grid.values() {
        let denom = f2_second(x)?;
        if !(denom > 0.0) {
            return Err(Error::Domain(format!(
                "f2'' must be strictly positive on the grid; got {denom} at x = {x}"
            )));
        }
        let ratio = f1_second(x)? / denom;
        if ratio < inf {
            inf = ratio;
            arg_inf = x;
        }
        if ratio > sup {
            sup = ratio;
            arg_sup = x;
        }
    }
    Ok(RatioBounds { inf, sup, arg_inf, arg_sup, grid: *grid })
}
