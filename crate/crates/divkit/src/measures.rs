//! Closed-form evaluation of the symmetric divergence measures, the
//! coefficient-normalized chain members, and the two one-parameter families.
//!
//! The seven chain members in rank order, each scaled so that its generator
//! has second derivative 1/4 at x = 1:
//!
//! | rank | member | generator |
//! |------|--------|-----------|
//! | 1 | Δ/4  | ψ₋₁    |
//! | 2 | I    | ψ₀     |
//! | 3 | h    | φ_½ /8 |
//! | 4 | 4d   | ψ_½    |
//! | 5 | J/8  | φ₀ /8  |
//! | 6 | T    | ψ₁     |
//! | 7 | Ψ/16 | ψ₂     |
//!
//! ζ_s (the J-divergence family) is symmetric in s ↔ 1-s; ξ_s (the AG/JS
//! family) uses the parametrization under which ξ₋₁ = Δ/4, ξ₀ = I,
//! ξ_½ = 4d, ξ₁ = T, ξ₂ = Ψ/16 all hold simultaneously.

use num_rational::Ratio;

use crate::distributions::DistributionPair;
use crate::error::{Error, Result};
use crate::generators::{Generator, BRANCH_TOL};
use crate::numeric::Accumulator;

/// Exact rational coefficient, used for chain members and link weights.
pub type Coefficient = Ratio<i64>;

/// Lossless-enough f64 view of a coefficient (numerators and denominators
/// stay far below 2^53 in every registry entry).
pub fn coefficient_to_f64(c: Coefficient) -> f64 {
    *c.numer() as f64 / *c.denom() as f64
}

/// The measures of §1 plus the d-divergence and the two auxiliary
/// coefficients (Bhattacharyya, harmonic mean).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MeasureId {
    /// h = 1 - B = ½ Σ (√p - √q)²
    Hellinger,
    /// Δ = Σ (p-q)²/(p+q)
    Triangular,
    /// Ψ = χ²(P||Q) + χ²(Q||P)
    SymChiSquare,
    /// χ²(P||Q) = Σ (p-q)²/q  (the one asymmetric entry)
    ChiSquare,
    /// J = Σ (p-q)(ln p - ln q)
    JDiv,
    /// I = ½ Σ [p ln(2p/(p+q)) + q ln(2q/(p+q))]
    JensenShannon,
    /// T = Σ ((p+q)/2) ln((p+q)/(2√(pq)))
    AgMean,
    /// d = 1 - Σ ((√p+√q)/2) √((p+q)/2)
    DDiv,
    /// B = Σ √(pq)
    Bhattacharyya,
    /// W = Σ 2pq/(p+q)
    HarmonicMean,
}

impl MeasureId {
    pub const ALL: [MeasureId; 10] = [
        MeasureId::Hellinger,
        MeasureId::Triangular,
        MeasureId::SymChiSquare,
        MeasureId::ChiSquare,
        MeasureId::JDiv,
        MeasureId::JensenShannon,
        MeasureId::AgMean,
        MeasureId::DDiv,
        MeasureId::Bhattacharyya,
        MeasureId::HarmonicMean,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            MeasureId::Hellinger => "hellinger",
            MeasureId::Triangular => "triangular",
            MeasureId::SymChiSquare => "sym_chi_square",
            MeasureId::ChiSquare => "chi_square",
            MeasureId::JDiv => "j_div",
            MeasureId::JensenShannon => "jensen_shannon",
            MeasureId::AgMean => "ag_mean",
            MeasureId::DDiv => "d_div",
            MeasureId::Bhattacharyya => "bhattacharyya",
            MeasureId::HarmonicMean => "harmonic_mean",
        }
    }

    pub fn parse(name: &str) -> Result<Self> {
        Self::ALL
            .iter()
            .copied()
            .find(|m| m.name() == name)
            .ok_or_else(|| Error::Domain(format!("unknown measure id {name:?}")))
    }
}

/// Evaluate a measure on a validated pair.
///
/// J, I and T form each logarithm of a ratio as a difference of logarithms,
/// which keeps extreme-histogram ratios out of the exponent range; the
/// non-logarithmic measures are summed exactly as displayed.
pub fn evaluate(measure: MeasureId, pair: &DistributionPair) -> f64 {
    let mut acc = Accumulator::default();
    match measure {
        MeasureId::Hellinger => {
            for (p, q) in pair.components() {
                let s = p.sqrt() - q.sqrt();
                acc.add(0.5 * s * s);
            }
            acc.total()
        }
        MeasureId::Triangular => {
            for (p, q) in pair.components() {
                acc.add((p - q) * (p - q) / (p + q));
            }
            acc.total()
        }
        MeasureId::SymChiSquare => {
            for (p, q) in pair.components() {
                acc.add((p - q) * (p - q) * (p + q) / (p * q));
            }
            acc.total()
        }
        MeasureId::ChiSquare => {
            for (p, q) in pair.components() {
                acc.add((p - q) * (p - q) / q);
            }
            acc.total()
        }
        MeasureId::JDiv => {
            for (p, q) in pair.components() {
                acc.add((p - q) * (p.ln() - q.ln()));
            }
            acc.total()
        }
        MeasureId::JensenShannon => {
            for (p, q) in pair.components() {
                let lm = (p + q).ln();
                acc.add(0.5 * (p * ((2.0 * p).ln() - lm) + q * ((2.0 * q).ln() - lm)));
            }
            acc.total()
        }
        MeasureId::AgMean => {
            for (p, q) in pair.components() {
                let t = 0.5 * (p + q);
                acc.add(t * ((p + q).ln() - std::f64::consts::LN_2 - 0.5 * (p.ln() + q.ln())));
            }
            acc.total()
        }
        MeasureId::DDiv => {
            acc.add(1.0);
            for (p, q) in pair.components() {
                acc.add(-(0.5 * (p.sqrt() + q.sqrt())) * (0.5 * (p + q)).sqrt());
            }
            acc.total()
        }
        MeasureId::Bhattacharyya => {
            for (p, q) in pair.components() {
                acc.add(p.sqrt() * q.sqrt());
            }
            acc.total()
        }
        MeasureId::HarmonicMean => {
            for (p, q) in pair.components() {
                acc.add(2.0 * p * q / (p + q));
            }
            acc.total()
        }
    }
}

/// ζ_s: the one-parameter J-divergence family, Σ qᵢ φ_s(pᵢ/qᵢ) in closed
/// form. Logarithmic closed form inside the branch window around s ∈ {0,1}.
pub fn zeta(s: f64, pair: &DistributionPair) -> f64 {
    if (s).abs() <= BRANCH_TOL || (s - 1.0).abs() <= BRANCH_TOL {
        return evaluate(MeasureId::JDiv, pair);
    }
    let mut acc = Accumulator::default();
    acc.add(-2.0);
    for (p, q) in pair.components() {
        let lp = p.ln();
        let lq = q.ln();
        acc.add((s * lp + (1.0 - s) * lq).exp());
        acc.add(((1.0 - s) * lp + s * lq).exp());
    }
    acc.total() / (s * (s - 1.0))
}

/// ξ_s: the one-parameter AG/JS family, Σ qᵢ ψ_s(pᵢ/qᵢ) in closed form.
/// ξ₀ = I and ξ₁ = T use the logarithmic closed forms directly.
pub fn xi(s: f64, pair: &DistributionPair) -> f64 {
    if s.abs() <= BRANCH_TOL {
        return evaluate(MeasureId::JensenShannon, pair);
    }
    if (s - 1.0).abs() <= BRANCH_TOL {
        return evaluate(MeasureId::AgMean, pair);
    }
    let mut acc = Accumulator::default();
    acc.add(-1.0);
    for (p, q) in pair.components() {
        let mean_pow = (s * (0.5 * (p + q)).ln()).exp();
        acc.add(0.5 * (p.powf(1.0 - s) + q.powf(1.0 - s)) * mean_pow);
    }
    acc.total() / (s * (s - 1.0))
}

/// Rank 1..=7 in the normalized chain.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rank(u8);

impl Rank {
    pub const ALL: [Rank; 7] =
        [Rank(1), Rank(2), Rank(3), Rank(4), Rank(5), Rank(6), Rank(7)];

    pub fn new(rank: u8) -> Result<Self> {
        if (1..=7).contains(&rank) {
            Ok(Rank(rank))
        } else {
            Err(Error::Domain(format!("rank must be 1..=7, got {rank}")))
        }
    }

    pub fn get(&self) -> u8 {
        self.0
    }

    pub fn index(&self) -> usize {
        usize::from(self.0) - 1
    }

    /// Short symbol used in difference and chain names.
    pub fn symbol(&self) -> &'static str {
        match self.0 {
            1 => "Delta",
            2 => "I",
            3 => "h",
            4 => "d",
            5 => "J",
            6 => "T",
            _ => "Psi",
        }
    }

    pub fn from_symbol(sym: &str) -> Result<Self> {
        Rank::ALL
            .iter()
            .copied()
            .find(|r| r.symbol() == sym)
            .ok_or_else(|| Error::Domain(format!("unknown chain member symbol {sym:?}")))
    }
}

/// One coefficient-normalized chain member.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormalizedMeasure {
    pub rank: Rank,
    pub base: MeasureId,
    pub coefficient: Coefficient,
}

/// The seven members in rank order: Δ/4 ≤ I ≤ h ≤ 4d ≤ J/8 ≤ T ≤ Ψ/16.
pub fn normalized_chain() -> [NormalizedMeasure; 7] {
    let m = |rank, base, num, den| NormalizedMeasure {
        rank: Rank(rank),
        base,
        coefficient: Coefficient::new(num, den),
    };
    [
        m(1, MeasureId::Triangular, 1, 4),
        m(2, MeasureId::JensenShannon, 1, 1),
        m(3, MeasureId::Hellinger, 1, 1),
        m(4, MeasureId::DDiv, 4, 1),
        m(5, MeasureId::JDiv, 1, 8),
        m(6, MeasureId::AgMean, 1, 1),
        m(7, MeasureId::SymChiSquare, 1, 16),
    ]
}

/// coefficient × base measure for one rank.
pub fn normalized_value(rank: Rank, pair: &DistributionPair) -> f64 {
    let member = normalized_chain()[rank.index()];
    coefficient_to_f64(member.coefficient) * evaluate(member.base, pair)
}

/// All seven normalized values at once (the chain evaluators feed on this).
pub fn normalized_values(pair: &DistributionPair) -> [f64; 7] {
    let mut out = [0.0; 7];
    for member in normalized_chain() {
        out[member.rank.index()] =
            coefficient_to_f64(member.coefficient) * evaluate(member.base, pair);
    }
    out
}

/// The generator whose Csiszár divergence equals the rank's normalized
/// member; every one of them has f''(1) = 1/4.
pub fn normalized_generator(rank: Rank) -> Generator {
    match rank.get() {
        1 => Generator::psi(-1.0),
        2 => Generator::psi(0.0),
        3 => Generator::phi(0.5).scaled(0.125),
        4 => Generator::psi(0.5),
        5 => Generator::phi(0.0).scaled(0.125),
        6 => Generator::psi(1.0),
        _ => Generator::psi(2.0),
    }
}
