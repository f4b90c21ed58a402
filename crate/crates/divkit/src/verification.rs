//! Numeric reproduction of the analytic devices behind the chain proofs:
//! the scalar auxiliary functions m1-m3 and k1-k7, the bracketed scalar
//! inequalities, the nine generator-ratio functions with their limits at
//! x = 1, and counterexample search for claims of incomparability.
//!
//! Every auxiliary function is claimed nonnegative on (0, ∞); the scans
//! replace the original graphical arguments with dense grid evidence. The
//! printed k2 is a known misprint: it evaluates to -1 at x = 1 and diverges
//! to -∞, so the registry carries three candidates,
//!
//! - `k2`: exactly as printed,
//! - `k2_const3`: constant term bumped 2 → 3 (restores k2(1) = 0 but still
//!   diverges to -∞),
//! - `k2_corrected`: leading term doubled, x² → 2x², which both restores
//!   k2(1) = 0 and matches a finite-difference derivative of the dh/dI
//!   ratio through the printed factorization. This is the candidate the
//!   non-negativity claim is actually about.
//!
//! Scan tolerances scale with the local magnitude of the expression's
//! additive terms; k4 reaches 1e63 at the grid tails and absolute
//! tolerances would be meaningless there.

use crate::differences::{difference_generator_second, DifferenceId};
use crate::distributions::{pair_seeds, sample_uniform_simplex, DistributionPair};
use crate::error::{Error, Result};
use crate::generators::GridSpec;
use crate::measures::{coefficient_to_f64, normalized_values, Coefficient};
use crate::parallel::map_indexed;

/// Relative tolerance for non-negativity and monotonicity scans.
pub const SCAN_TOL: f64 = 1e-9;

/// Scalar auxiliary functions and bracketed inequalities. The `IneqNN`
/// entries are arranged as lhs-rhs differences so that each claim is
/// equivalent to the value being nonnegative.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AuxFunctionId {
    M1,
    M2,
    M3,
    K1,
    /// The printed k2 (misprinted; k2(1) = -1).
    K2,
    /// Candidate fix: constant term 2 → 3.
    K2Const3,
    /// Candidate fix: leading term x² → 2x²; the factorization-consistent one.
    K2Corrected,
    K3,
    K4,
    K5,
    K6,
    K7,
    Ineq15,
    Ineq16,
    Ineq17,
    Ineq18,
    Ineq20,
    Ineq21,
    Ineq22,
}

impl AuxFunctionId {
    pub const ALL: [AuxFunctionId; 19] = [
        AuxFunctionId::M1,
        AuxFunctionId::M2,
        AuxFunctionId::M3,
        AuxFunctionId::K1,
        AuxFunctionId::K2,
        AuxFunctionId::K2Const3,
        AuxFunctionId::K2Corrected,
        AuxFunctionId::K3,
        AuxFunctionId::K4,
        AuxFunctionId::K5,
        AuxFunctionId::K6,
        AuxFunctionId::K7,
        AuxFunctionId::Ineq15,
        AuxFunctionId::Ineq16,
        AuxFunctionId::Ineq17,
        AuxFunctionId::Ineq18,
        AuxFunctionId::Ineq20,
        AuxFunctionId::Ineq21,
        AuxFunctionId::Ineq22,
    ];

    /// The ids whose non-negativity claims are expected to hold.
    pub const CLAIMED_NONNEGATIVE: [AuxFunctionId; 17] = [
        AuxFunctionId::M1,
        AuxFunctionId::M2,
        AuxFunctionId::M3,
        AuxFunctionId::K1,
        AuxFunctionId::K2Corrected,
        AuxFunctionId::K3,
        AuxFunctionId::K4,
        AuxFunctionId::K5,
        AuxFunctionId::K6,
        AuxFunctionId::K7,
        AuxFunctionId::Ineq15,
        AuxFunctionId::Ineq16,
        AuxFunctionId::Ineq17,
        AuxFunctionId::Ineq18,
        AuxFunctionId::Ineq20,
        AuxFunctionId::Ineq21,
        AuxFunctionId::Ineq22,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            AuxFunctionId::M1 => "m1",
            AuxFunctionId::M2 => "m2",
            AuxFunctionId::M3 => "m3",
            AuxFunctionId::K1 => "k1",
            AuxFunctionId::K2 => "k2",
            AuxFunctionId::K2Const3 => "k2_const3",
            AuxFunctionId::K2Corrected => "k2_corrected",
            AuxFunctionId::K3 => "k3",
            AuxFunctionId::K4 => "k4",
            AuxFunctionId::K5 => "k5",
            AuxFunctionId::K6 => "k6",
            AuxFunctionId::K7 => "k7",
            AuxFunctionId::Ineq15 => "ineq15",
            AuxFunctionId::Ineq16 => "ineq16",
            AuxFunctionId::Ineq17 => "ineq17",
            AuxFunctionId::Ineq18 => "ineq18",
            AuxFunctionId::Ineq20 => "ineq20",
            AuxFunctionId::Ineq21 => "ineq21",
            AuxFunctionId::Ineq22 => "ineq22",
        }
    }

    pub fn parse(name: &str) -> Result<Self> {
        Self::ALL
            .iter()
            .copied()
            .find(|id| id.name() == name)
            .ok_or_else(|| Error::Domain(format!("unknown function id {name:?}")))
    }

    /// Value and local magnitude (sum of absolute values of the top-level
    /// additive terms of the printed expression).
    pub fn value_and_scale(&self, x: f64) -> Result<(f64, f64)> {
        if !(x > 0.0) || !x.is_finite() {
            return Err(Error::Domain(format!(
                "auxiliary functions are defined for x > 0, got {x}"
            )));
        }
        let terms = aux_terms(*self, x);
        let mut value = 0.0;
        let mut scale = 0.0;
        for t in terms {
            value += t;
            scale += t.abs();
        }
        Ok((value, scale))
    }
}

/// The printed expression value at `x`.
pub fn aux_function(id: AuxFunctionId, x: f64) -> Result<f64> {
    id.value_and_scale(x).map(|(v, _)| v)
}

fn aux_terms(id: AuxFunctionId, x: f64) -> Vec<f64> {
    let sx = x.sqrt();
    let x32 = x * sx;
    let half = 0.5 * (x + 1.0);
    match id {
        AuxFunctionId::M1 => vec![
            0.5 * (x.powi(3) + 1.0) * half.powf(1.5),
            -x32 * 0.5 * (x32 + 1.0),
        ],
        AuxFunctionId::M2 => vec![
            0.5 * (x * x + 1.0) * half.sqrt(),
            -sx * 0.5 * (x32 + 1.0),
        ],
        AuxFunctionId::M3 => vec![half.powf(2.5), -sx * 0.5 * (x32 + 1.0)],
        AuxFunctionId::K1 => vec![
            x.powi(3),
            -8.0 * x * x32,
            -5.0 * x * x,
            -8.0 * x32,
            -5.0 * x,
            -8.0 * sx,
            1.0,
            4.0 * (2.0 * x * (x + 1.0)).sqrt() * (sx + 1.0) * (x + 1.0),
        ],
        AuxFunctionId::K2 => k2_terms(x, 1.0, 2.0),
        AuxFunctionId::K2Const3 => k2_terms(x, 1.0, 3.0),
        AuxFunctionId::K2Corrected => k2_terms(x, 2.0, 2.0),
        AuxFunctionId::K3 => vec![
            2.0 * (x * x + 1.0) * (x * x + x + 1.0),
            2.0 * sx * (x + 1.0) * (x * x + 7.0 * x + 1.0),
            -(x + 1.0) * (x * x + 4.0 * x + 1.0) * (sx + 1.0) * (2.0 * x + 2.0).sqrt(),
        ],
        AuxFunctionId::K4 => {
            let poly_a = ((((((x + 4.0) * x + 6.0) * x + 18.0) * x + 6.0) * x + 4.0) * x) + 1.0;
            let poly_b = ((x * x + 3.0 * x) * x * x) + 3.0 * x + 1.0;
            let poly_c = (((((((x + 4.0) * x + 10.0) * x + 52.0) * x + 58.0) * x + 52.0) * x
                + 10.0)
                * x
                + 4.0)
                * x
                + 1.0;
            vec![
                -12.0
                    * sx
                    * (sx + 1.0)
                    * (x + 1.0).powi(2)
                    * ((x + 1.0) * poly_a - sx * (x * x + 1.0) * poly_b),
                (2.0 * x + 2.0).powf(2.5) * poly_c,
            ]
        }
        AuxFunctionId::K5 => vec![
            8.0 * (x.powi(4) + 3.0 * x * x32 + 3.0 * x32 + 1.0),
            -(x32 + 1.0) * (2.0 * x + 2.0).powf(2.5),
        ],
        AuxFunctionId::K6 => vec![
            (2.0 * x + 2.0).powf(2.5) * (x.powi(4) + 4.0 * x * x + 1.0),
            -4.0 * x * x * (((3.0 * x + 4.0) * x + 4.0) * x * x + 7.0 * x + 6.0),
            -4.0 * sx * ((((6.0 * x + 7.0) * x + 4.0) * x + 4.0) * x + 3.0),
        ],
        AuxFunctionId::K7 => vec![
            2.0 * (x32 * x * x + 3.0 * x * x32 + 4.0 * x * x + 4.0 * x32 + 3.0 * x + 1.0),
            -sx * (2.0 * x + 2.0).powf(2.5),
        ],
        AuxFunctionId::Ineq15 => vec![0.5 * (x32 + 1.0), -half.powf(1.5)],
        AuxFunctionId::Ineq16 => vec![0.5 * (x32 + 1.0), -sx * half.sqrt()],
        AuxFunctionId::Ineq17 => vec![half * 0.5 * (sx + 1.0), -sx * half.sqrt()],
        AuxFunctionId::Ineq18 => vec![0.5 * (x32 + 1.0), -half * 0.5 * (sx + 1.0)],
        AuxFunctionId::Ineq20 => vec![0.5 * (x32 + 1.0), -(0.5 * (sx + 1.0)).powi(3)],
        AuxFunctionId::Ineq21 => vec![(0.5 * (sx + 1.0)).powi(3) * half.powf(1.5), -x32],
        AuxFunctionId::Ineq22 => vec![0.5 * (x32 + 1.0) * half.powf(1.5), -x32],
    }
}

fn k2_terms(x: f64, lead: f64, constant: f64) -> Vec<f64> {
    let sx = x.sqrt();
    vec![
        lead * x * x,
        -x * sx,
        6.0 * x,
        -sx,
        constant,
        -(x + 1.0) * (sx + 1.0) * (2.0 * x + 2.0).sqrt(),
    ]
}

/// Result of a grid scan. For non-negativity scans the minima are over the
/// function value; for monotonicity scans they are over the per-step
/// monotonicity margin.
#[derive(Debug, Clone, PartialEq)]
pub struct ScanReport {
    pub id: String,
    pub grid: GridSpec,
    /// Raw minimum over the grid.
    pub min_value: f64,
    pub argmin: f64,
    /// Minimum of value / max(1, local magnitude); pass ⇔ this ≥ -SCAN_TOL.
    pub scaled_min: f64,
    pub scaled_argmin: f64,
    pub negative_count: usize,
    pub pass: bool,
}

/// Scan an auxiliary function for non-negativity over a grid, with the
/// tolerance scaled by local term magnitude.
pub fn nonnegativity_scan(id: AuxFunctionId, grid: &GridSpec) -> Result<ScanReport> {
    let samples = map_indexed(grid.points, |i| {
        let x = grid.point(i);
        id.value_and_scale(x).map(|vs| (x, vs.0, vs.1))
    });
    let mut min_value = f64::INFINITY;
    let mut argmin = grid.x_min;
    let mut scaled_min = f64::INFINITY;
    let mut scaled_argmin = grid.x_min;
    let mut negative_count = 0usize;
    for sample in samples {
        let (x, value, scale) = sample?;
        if value < min_value {
            min_value = value;
            argmin = x;
        }
        let scaled = value / scale.max(1.0);
        if scaled < scaled_min {
            scaled_min = scaled;
            scaled_argmin = x;
        }
        if value < 0.0 {
            negative_count += 1;
        }
    }
    Ok(ScanReport {
        id: id.name().to_string(),
        grid: *grid,
        min_value,
        argmin,
        scaled_min,
        scaled_argmin,
        negative_count,
        pass: scaled_min >= -SCAN_TOL,
    })
}

/// A quotient of two difference-generator second derivatives, with the
/// rational value its ratio approaches at x = 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GRatioId {
    pub numerator: DifferenceId,
    pub denominator: DifferenceId,
    pub paper_limit: Coefficient,
}

impl GRatioId {
    pub fn name(&self) -> String {
        format!("{}_{}", self.numerator.name(), self.denominator.name())
    }

    pub fn parse(name: &str) -> Result<Self> {
        all_g_ratios()
            .into_iter()
            .find(|g| g.name() == name)
            .ok_or_else(|| Error::Domain(format!("unknown ratio id {name:?}")))
    }
}

/// The nine ratio functions with their limits at x = 1.
pub fn all_g_ratios() -> [GRatioId; 9] {
    let g = |num: &str, den: &str, limit_num: i64, limit_den: i64| GRatioId {
        numerator: DifferenceId::parse(num).expect("table id"),
        denominator: DifferenceId::parse(den).expect("table id"),
        paper_limit: Coefficient::new(limit_num, limit_den),
    };
    [
        g("hDelta", "dDelta", 4, 5),
        g("dDelta", "dh", 5, 1),
        g("dh", "dI", 3, 7),
        g("dI", "hI", 7, 4),
        g("Th", "Td", 4, 3),
        g("Td", "PsiDelta", 3, 16),
        g("Psih", "Psid", 12, 11),
        g("Psid", "PsiT", 11, 8),
        g("Td", "Jd", 9, 1),
    ]
}

/// The ratio value away from the removable 0/0 point at x = 1.
pub fn g_ratio(id: GRatioId, x: f64) -> Result<f64> {
    if (x - 1.0).abs() <= 1e-12 {
        return Err(Error::Domain(
            "ratio is 0/0 at x = 1; use g_limit_at_one".to_string(),
        ));
    }
    let num = difference_generator_second(id.numerator, x)?;
    let den = difference_generator_second(id.denominator, x)?;
    Ok(num / den)
}

/// Offsets used for the limit extrapolation; halving steps so two Richardson
/// levels cancel the h² and h⁴ error terms of the symmetric means.
const LIMIT_OFFSETS: [f64; 3] = [1e-2, 5e-3, 2.5e-3];

/// Limit of the ratio at x = 1 by Richardson extrapolation of symmetric
/// two-sided means. Errors out if the extrapolants fail to settle.
pub fn g_limit_at_one(id: GRatioId) -> Result<f64> {
    let mut means = [0.0f64; 3];
    for (k, h) in LIMIT_OFFSETS.iter().enumerate() {
        let above = g_ratio(id, 1.0 + h)?;
        let below = g_ratio(id, 1.0 - h)?;
        means[k] = 0.5 * (above + below);
    }
    let r1 = (4.0 * means[1] - means[0]) / 3.0;
    let r2 = (4.0 * means[2] - means[1]) / 3.0;
    let limit = (16.0 * r2 - r1) / 15.0;
    if !limit.is_finite() || (r2 - r1).abs() > 1e-6 * limit.abs().max(1.0) {
        return Err(Error::Extrapolation(format!(
            "estimates for {} did not settle: {r1} vs {r2}",
            id.name()
        )));
    }
    Ok(limit)
}

/// Verify by sampled differences that the ratio is nondecreasing on (0, 1)
/// and nonincreasing on (1, ∞); grid points within 1e-6 of 1 are skipped.
/// Together with the limit this pins sup g = g(1).
pub fn g_monotonicity_scan(id: GRatioId, grid: &GridSpec) -> Result<ScanReport> {
    let samples = map_indexed(grid.points, |i| {
        let x = grid.point(i);
        if (x - 1.0).abs() <= 1e-6 {
            Ok(None)
        } else {
            g_ratio(id, x).map(|g| Some((x, g)))
        }
    });
    let mut min_value = f64::INFINITY;
    let mut argmin = grid.x_min;
    let mut scaled_min = f64::INFINITY;
    let mut scaled_argmin = grid.x_min;
    let mut negative_count = 0usize;
    let mut prev: Option<(f64, f64)> = None;
    for sample in samples {
        let Some((x, g)) = sample? else { continue };
        if let Some((px, pg)) = prev {
            // skip the step that straddles x = 1
            if !(px < 1.0 && x > 1.0) {
                let margin = if x < 1.0 { g - pg } else { pg - g };
                if margin < min_value {
                    min_value = margin;
                    argmin = x;
                }
                let scaled = margin / pg.abs().max(1.0);
                if scaled < scaled_min {
                    scaled_min = scaled;
                    scaled_argmin = x;
                }
                if margin < 0.0 {
                    negative_count += 1;
                }
            }
        }
        prev = Some((x, g));
    }
    Ok(ScanReport {
        id: format!("g:{}", id.name()),
        grid: *grid,
        min_value,
        argmin,
        scaled_min,
        scaled_argmin,
        negative_count,
        pass: scaled_min >= -SCAN_TOL,
    })
}

/// Central finite difference of a ratio function.
pub fn g_prime_central(id: GRatioId, x: f64, h: f64) -> Result<f64> {
    Ok((g_ratio(id, x + h)? - g_ratio(id, x - h)?) / (2.0 * h))
}

/// Predicted derivative of the dh/dI ratio from its printed factorization,
/// with the chosen k2 candidate plugged in. Comparing this against
/// [`g_prime_central`] adjudicates which candidate the factorization is
/// actually built from.
pub fn k2_factor_prediction(candidate: AuxFunctionId, x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() || (x - 1.0).abs() <= 1e-12 {
        return Err(Error::Domain(format!("prediction needs x > 0, x ≠ 1, got {x}")));
    }
    let sx = x.sqrt();
    let bracket = x * sx + 1.0 - (2.0 * x * (x + 1.0)).sqrt();
    let prefactor =
        -(sx - 1.0) * (2.0 * x + 2.0).sqrt() / (4.0 * sx * (x + 1.0) * bracket * bracket);
    Ok(prefactor * aux_function(candidate, x)?)
}

/// A sampled pair witnessing one strict ordering of two weighted differences.
#[derive(Debug, Clone, PartialEq)]
pub struct SearchWitness {
    pub sample_index: usize,
    pub p: Vec<f64>,
    pub q: Vec<f64>,
    pub lhs: f64,
    pub rhs: f64,
}

/// Outcome of a counterexample search; `None` on both sides means the budget
/// was exhausted without a strict ordering either way.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct SearchOutcome {
    pub samples_used: usize,
    pub lhs_below_rhs: Option<SearchWitness>,
    pub lhs_above_rhs: Option<SearchWitness>,
}

impl SearchOutcome {
    pub fn both_found(&self) -> bool {
        self.lhs_below_rhs.is_some() && self.lhs_above_rhs.is_some()
    }
}

/// Search random pairs for both strict orderings of `c_l·D_l` versus
/// `c_r·D_r`. Dimensions cycle over 2..=10; stops early once both orderings
/// are witnessed. Ties within rounding noise are not counted as witnesses.
pub fn counterexample_search(
    lhs: (Coefficient, DifferenceId),
    rhs: (Coefficient, DifferenceId),
    budget: usize,
    seed: u64,
) -> SearchOutcome {
    let mut outcome = SearchOutcome::default();
    let (cl, dl) = lhs;
    let (cr, dr) = rhs;
    let cl = coefficient_to_f64(cl);
    let cr = coefficient_to_f64(cr);
    for i in 0..budget {
        outcome.samples_used = i + 1;
        let n = 2 + (i % 9);
        let (sp, sq) = pair_seeds(seed, i as u64);
        let pair = DistributionPair::new(
            sample_uniform_simplex(n, sp).expect("n >= 2"),
            sample_uniform_simplex(n, sq).expect("n >= 2"),
        )
        .expect("equal lengths");
        let values = normalized_values(&pair);
        let l = cl * (values[dl.high().index()] - values[dl.low().index()]);
        let r = cr * (values[dr.high().index()] - values[dr.low().index()]);
        let tie_guard = 1e-13 * l.abs().max(r.abs()).max(1.0);
        let witness = || SearchWitness {
            sample_index: i,
            p: pair.p().values().to_vec(),
            q: pair.q().values().to_vec(),
            lhs: l,
            rhs: r,
        };
        if l < r - tie_guard && outcome.lhs_below_rhs.is_none() {
            outcome.lhs_below_rhs = Some(witness());
        } else if l > r + tie_guard && outcome.lhs_above_rhs.is_none() {
            outcome.lhs_above_rhs = Some(witness());
        }
        if outcome.both_found() {
            break;
        }
    }
    outcome
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn aux_functions_vanish_at_one() {
        for id in AuxFunctionId::ALL {
            let v = aux_function(id, 1.0).unwrap();
            if id == AuxFunctionId::K2 {
                assert_relative_eq!(v, -1.0, max_relative = 1e-12);
            } else {
                assert!(v.abs() <= 1e-12, "{} at 1 gave {v}", id.name());
            }
        }
    }

    #[test]
    fn claimed_nonnegative_functions_pass_coarse_scan() {
        let grid = GridSpec::log(1e-6, 1e6, 2_000).unwrap();
        for id in AuxFunctionId::CLAIMED_NONNEGATIVE {
            let report = nonnegativity_scan(id, &grid).unwrap();
            assert!(
                report.pass,
                "{} scaled min {} at {}",
                id.name(),
                report.scaled_min,
                report.scaled_argmin
            );
            assert_eq!(report.negative_count, 0, "{}", id.name());
        }
    }

    #[test]
    fn printed_k2_fails_scan() {
        let grid = GridSpec::log(1e-6, 1e6, 2_000).unwrap();
        let report = nonnegativity_scan(AuxFunctionId::K2, &grid).unwrap();
        assert!(!report.pass);
        assert!(report.negative_count > 0);
        // near x = 1 the printed form sits at -1
        assert_relative_eq!(
            aux_function(AuxFunctionId::K2, 1.0).unwrap(),
            -1.0,
            max_relative = 1e-12
        );
        // the constant-term fix diverges too: not the real correction
        let report = nonnegativity_scan(AuxFunctionId::K2Const3, &grid).unwrap();
        assert!(!report.pass);
    }

    #[test]
    fn k2_candidates_against_factored_derivative() {
        let id = GRatioId::parse("dh_dI").unwrap();
        for &x in &[0.3, 2.0, 4.0, 9.0] {
            let fd = g_prime_central(id, x, 1e-5 * x).unwrap();
            let corrected = k2_factor_prediction(AuxFunctionId::K2Corrected, x).unwrap();
            assert_relative_eq!(fd, corrected, max_relative = 1e-6);
            for bad in [AuxFunctionId::K2, AuxFunctionId::K2Const3] {
                let model = k2_factor_prediction(bad, x).unwrap();
                assert!(
                    (fd - model).abs() > 0.5 * fd.abs(),
                    "{} unexpectedly matched at {x}",
                    bad.name()
                );
            }
        }
    }

    #[test]
    fn ratio_table_and_parsing() {
        assert_eq!(all_g_ratios().len(), 9);
        let id = GRatioId::parse("Td_Jd").unwrap();
        assert_eq!(id.paper_limit, Coefficient::new(9, 1));
        assert!(GRatioId::parse("nope_nope").is_err());
    }

    #[test]
    fn ratio_values_near_one() {
        let hd_dd = GRatioId::parse("hDelta_dDelta").unwrap();
        for &x in &[1.0 - 1e-3, 1.0 + 1e-3] {
            assert_relative_eq!(g_ratio(hd_dd, x).unwrap(), 0.8, max_relative = 1e-3);
        }
        let td_jd = GRatioId::parse("Td_Jd").unwrap();
        for &x in &[1.0 - 1e-4, 1.0 + 1e-4] {
            assert!((g_ratio(td_jd, x).unwrap() - 9.0).abs() < 1e-2);
        }
        assert!(g_ratio(hd_dd, 1.0).is_err());
    }

    #[test]
    fn ratio_matches_printed_quotients_at_four() {
        // Independent transcriptions of three of the printed ratio displays.
        let x: f64 = 4.0;
        let sx = x.sqrt();
        let printed_dh_di = (2.0 * (x * sx + 1.0) - (x + 1.0) * (2.0 * x + 2.0).sqrt())
            / (2.0 * (x * sx + 1.0 - (2.0 * x * (x + 1.0)).sqrt()));
        assert_relative_eq!(
            g_ratio(GRatioId::parse("dh_dI").unwrap(), x).unwrap(),
            printed_dh_di,
            max_relative = 1e-10
        );

        let printed_psih_psid = (x * sx - 1.0).powi(2) * (2.0 * x + 2.0).powf(1.5)
            / ((x.powi(3) + 1.0) * (2.0 * x + 2.0).powf(1.5) - 8.0 * x * sx * (x * sx + 1.0));
        assert_relative_eq!(
            g_ratio(GRatioId::parse("Psih_Psid").unwrap(), x).unwrap(),
            printed_psih_psid,
            max_relative = 1e-10
        );

        let printed_td_jd = 2.0
            * (4.0 * sx * (x + 1.0) * (x * sx + 1.0) - (x * x + 1.0) * (2.0 * x + 2.0).powf(1.5))
            / ((x + 1.0) * (8.0 * sx * (x * sx + 1.0) - (x + 1.0) * (2.0 * x + 2.0).powf(1.5)));
        assert_relative_eq!(
            g_ratio(GRatioId::parse("Td_Jd").unwrap(), x).unwrap(),
            printed_td_jd,
            max_relative = 1e-10
        );
    }

    #[test]
    fn limits_reproduce_the_rationals() {
        for id in all_g_ratios() {
            let limit = g_limit_at_one(id).unwrap();
            let target = coefficient_to_f64(id.paper_limit);
            assert_relative_eq!(limit, target, max_relative = 1e-7);
        }
    }

    #[test]
    fn monotone_up_then_down() {
        let grid = GridSpec::log(1e-5, 1e5, 2_001).unwrap();
        for name in ["dh_dI", "Td_PsiDelta"] {
            let id = GRatioId::parse(name).unwrap();
            let report = g_monotonicity_scan(id, &grid).unwrap();
            assert!(report.pass, "{name}: min margin {}", report.min_value);
        }
    }

    #[test]
    fn sampled_sup_stays_below_limit() {
        let grid = GridSpec::log(1e-6, 1e6, 4_000).unwrap();
        for id in all_g_ratios() {
            let target = coefficient_to_f64(id.paper_limit);
            for x in grid.values() {
                if (x - 1.0).abs() <= 1e-6 {
                    continue;
                }
                let g = g_ratio(id, x).unwrap();
                assert!(g <= target + 1e-6, "{} at {x}: {g}", id.name());
            }
        }
    }

    #[test]
    fn search_finds_both_orderings() {
        let lhs = (Coefficient::new(12, 1), DifferenceId::parse("Jd").unwrap());
        let rhs = (
            Coefficient::new(1, 4),
            DifferenceId::parse("PsiDelta").unwrap(),
        );
        let outcome = counterexample_search(lhs, rhs, 100_000, 31);
        assert!(outcome.both_found(), "used {}", outcome.samples_used);
    }

    #[test]
    fn search_exhausts_on_equal_sides() {
        let d = DifferenceId::parse("Td").unwrap();
        let outcome = counterexample_search(
            (Coefficient::new(1, 1), d),
            (Coefficient::new(1, 1), d),
            500,
            7,
        );
        assert!(!outcome.both_found());
        assert!(outcome.lhs_below_rhs.is_none() && outcome.lhs_above_rhs.is_none());
        assert_eq!(outcome.samples_used, 500);
    }

    #[test]
    fn search_one_sided_for_a_chain_link() {
        // D_Th ≤ (4/3) D_Td always holds, so only the below-ordering shows up.
        let outcome = counterexample_search(
            (Coefficient::new(1, 1), DifferenceId::parse("Th").unwrap()),
            (Coefficient::new(4, 3), DifferenceId::parse("Td").unwrap()),
            20_000,
            11,
        );
        assert!(outcome.lhs_below_rhs.is_some());
        assert!(outcome.lhs_above_rhs.is_none());
    }
}
