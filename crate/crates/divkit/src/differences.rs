//! Difference-of-divergence measures, their generator second derivatives,
//! and the registry of every published inequality chain with its evaluator.
//!
//! A difference measure D_XY is the gap between two normalized chain
//! members, high rank minus low rank, e.g. D_Psid = Ψ/16 - 4d. The chain
//! ordering makes every such gap nonnegative. For the six differences that
//! involve the d-divergence the second derivative of the difference
//! generator is also available in the printed closed form, which must agree
//! with the generic composition f''_high - f''_low to 1e-12 relative.
//!
//! Chains live in a registry under stable names (eq1, eq2, eq3, eq9, eq23,
//! eq50, eq54, eq55, remark3_i..remark3_ix, remark4_chain1, remark4_chain2).
//! Two of them are stored twice: once exactly as printed (`PaperVerbatim`)
//! and once with the member that algebra over the propositions yields
//! (`DerivedCorrected`). The verbatim variants exist to document the
//! misprints, and one of them genuinely fails.

use crate::distributions::DistributionPair;
use crate::error::{Error, Result};
use crate::measures::{
    coefficient_to_f64, normalized_generator, normalized_values, Coefficient, Rank,
};
use crate::parallel::map_indexed;

/// Ordered pair of chain ranks with `high > low`, naming the measure
/// `normalized(high) - normalized(low)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DifferenceId {
    high: Rank,
    low: Rank,
}

impl DifferenceId {
    pub fn new(high: Rank, low: Rank) -> Result<Self> {
        if high <= low {
            return Err(Error::Domain(format!(
                "difference needs rank(high) > rank(low), got {} vs {}",
                high.get(),
                low.get()
            )));
        }
        Ok(Self { high, low })
    }

    pub fn high(&self) -> Rank {
        self.high
    }

    pub fn low(&self) -> Rank {
        self.low
    }

    /// Concatenated member symbols, e.g. `Psid` for Ψ/16 - 4d, `dDelta`
    /// for 4d - Δ/4.
    pub fn name(&self) -> String {
        format!("{}{}", self.high.symbol(), self.low.symbol())
    }

    pub fn parse(name: &str) -> Result<Self> {
        for hi in Rank::ALL {
            if let Some(rest) = name.strip_prefix(hi.symbol()) {
                if let Ok(lo) = Rank::from_symbol(rest) {
                    return Self::new(hi, lo);
                }
            }
        }
        Err(Error::Domain(format!("unknown difference id {name:?}")))
    }

    fn of(high_sym: &str, low_sym: &str) -> Self {
        Self::new(
            Rank::from_symbol(high_sym).expect("registry symbol"),
            Rank::from_symbol(low_sym).expect("registry symbol"),
        )
        .expect("registry rank order")
    }

    /// The six differences of the convexity lemma, the ones involving the
    /// d-divergence.
    pub fn d_family() -> [DifferenceId; 6] {
        [
            Self::of("Psi", "d"),
            Self::of("T", "d"),
            Self::of("J", "d"),
            Self::of("d", "h"),
            Self::of("d", "I"),
            Self::of("d", "Delta"),
        ]
    }

    /// Every admissible rank pair; 21 entries.
    pub fn all() -> Vec<DifferenceId> {
        let mut out = Vec::with_capacity(21);
        for hi in Rank::ALL {
            for lo in Rank::ALL {
                if hi > lo {
                    out.push(Self { high: hi, low: lo });
                }
            }
        }
        out
    }
}

/// normalized(high) - normalized(low); never below -1e-12 on valid pairs.
pub fn difference(id: DifferenceId, pair: &DistributionPair) -> f64 {
    let values = normalized_values(pair);
    values[id.high.index()] - values[id.low.index()]
}

/// Second derivative of the difference generator via composition.
pub fn second_composed(id: DifferenceId, x: f64) -> Result<f64> {
    Ok(normalized_generator(id.high).second(x)? - normalized_generator(id.low).second(x)?)
}

fn check_positive(x: f64) -> Result<()> {
    if x > 0.0 && x.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("argument must be positive, got {x}")))
    }
}

/// Second derivative of the difference generator in the printed closed form;
/// available only for the six d-involving differences.
pub fn second_closed(id: DifferenceId, x: f64) -> Option<Result<f64>> {
    let name = id.name();
    let v = match name.as_str() {
        "Psid" => closed_psid(x),
        "Td" => closed_td(x),
        "Jd" => closed_jd(x),
        "dh" => closed_dh(x),
        "dI" => closed_di(x),
        "dDelta" => closed_ddelta(x),
        _ => return None,
    };
    Some(v)
}

/// Closed form where printed, composition otherwise.
pub fn difference_generator_second(id: DifferenceId, x: f64) -> Result<f64> {
    match second_closed(id, x) {
        Some(v) => v,
        None => second_composed(id, x),
    }
}

fn closed_psid(x: f64) -> Result<f64> {
    check_positive(x)?;
    let bracket = 0.5 * (x.powi(3) + 1.0) * (0.5 * (x + 1.0)).powf(1.5)
        - x.powf(1.5) * 0.5 * (x.powf(1.5) + 1.0);
    Ok(bracket / (x.powi(3) * (x + 1.0) * (2.0 * x + 2.0).sqrt()))
}

fn closed_td(x: f64) -> Result<f64> {
    check_positive(x)?;
    let bracket =
        0.5 * (x * x + 1.0) * (0.5 * (x + 1.0)).sqrt() - x.sqrt() * 0.5 * (x.powf(1.5) + 1.0);
    Ok(bracket / (x * x * (x + 1.0) * (2.0 * x + 2.0).sqrt()))
}

fn closed_jd(x: f64) -> Result<f64> {
    check_positive(x)?;
    let bracket = (0.5 * (x + 1.0)).powf(2.5) - x.sqrt() * 0.5 * (x.powf(1.5) + 1.0);
    Ok(bracket / (x * x * (x + 1.0) * (2.0 * x + 2.0).sqrt()))
}

fn closed_dh(x: f64) -> Result<f64> {
    check_positive(x)?;
    let bracket = 0.5 * (x.powf(1.5) + 1.0) - (0.5 * (x + 1.0)).powf(1.5);
    Ok(bracket / (x.powf(1.5) * (x + 1.0) * (2.0 * x + 2.0).sqrt()))
}

fn closed_di(x: f64) -> Result<f64> {
    check_positive(x)?;
    let bracket = 0.5 * (x.powf(1.5) + 1.0) - x.sqrt() * (0.5 * (x + 1.0)).sqrt();
    Ok(bracket / (x.powf(1.5) * (x + 1.0) * (2.0 * x + 2.0).sqrt()))
}

fn closed_ddelta(x: f64) -> Result<f64> {
    check_positive(x)?;
    let bracket = 0.5 * (x.powf(1.5) + 1.0) * (0.5 * (x + 1.0)).powf(1.5) - x.powf(1.5);
    Ok(8.0 / (2.0 * x.powf(1.5) * (x + 1.0).powi(3) * (2.0 * x + 2.0).sqrt())
        * (0.5 * (x + 1.0)).sqrt()
        * bracket)
}

/// Whether a chain variant is the printed text or the algebraically
/// rederived member set. Only `DerivedCorrected` variants gate verification
/// exit codes; verbatim variants document the misprints.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    PaperVerbatim,
    DerivedCorrected,
}

impl Provenance {
    pub fn name(&self) -> &'static str {
        match self {
            Provenance::PaperVerbatim => "paper_verbatim",
            Provenance::DerivedCorrected => "derived_corrected",
        }
    }
}

/// One chain member, evaluated against the normalized septuple.
#[derive(Debug, Clone, PartialEq)]
pub enum ChainTerm {
    /// A bare normalized chain member.
    Rank(Rank),
    /// A difference measure.
    Difference(DifferenceId),
    /// A rational combination Σ cᵢ · normalized(rankᵢ).
    Combination(Vec<(Coefficient, Rank)>),
}

impl ChainTerm {
    fn value(&self, normalized: &[f64; 7]) -> f64 {
        match self {
            ChainTerm::Rank(r) => normalized[r.index()],
            ChainTerm::Difference(d) => normalized[d.high.index()] - normalized[d.low.index()],
            ChainTerm::Combination(parts) => parts
                .iter()
                .map(|(c, r)| coefficient_to_f64(*c) * normalized[r.index()])
                .sum(),
        }
    }
}

/// Coefficient-weighted chain member with a display label.
#[derive(Debug, Clone, PartialEq)]
pub struct ChainLink {
    pub coefficient: Coefficient,
    pub term: ChainTerm,
    pub label: String,
}

impl ChainLink {
    pub fn value(&self, normalized: &[f64; 7]) -> f64 {
        coefficient_to_f64(self.coefficient) * self.term.value(normalized)
    }
}

/// An ordered chain of members; each adjacent pair is one inequality claim.
#[derive(Debug, Clone, PartialEq)]
pub struct InequalityChain {
    pub name: String,
    pub provenance: Provenance,
    pub links: Vec<ChainLink>,
}

impl InequalityChain {
    /// Number of adjacent inequalities.
    pub fn inequality_count(&self) -> usize {
        self.links.len() - 1
    }

    pub fn link_values(&self, normalized: &[f64; 7]) -> Vec<f64> {
        self.links.iter().map(|l| l.value(normalized)).collect()
    }
}

/// Per-link slacks (right member minus left member) for one pair. A link
/// passes at tolerance `tol` iff its slack is at least `-tol`.
pub fn check_chain(chain: &InequalityChain, pair: &DistributionPair) -> Vec<f64> {
    let values = chain.link_values(&normalized_values(pair));
    values.windows(2).map(|w| w[1] - w[0]).collect()
}

/// One recorded chain violation.
#[derive(Debug, Clone, PartialEq)]
pub struct ChainFailure {
    pub pair_index: usize,
    pub p: Vec<f64>,
    pub q: Vec<f64>,
    pub link_index: usize,
    pub lhs: f64,
    pub rhs: f64,
}

/// Aggregated evidence for one chain over a pair set.
#[derive(Debug, Clone, PartialEq)]
pub struct ChainReport {
    pub name: String,
    pub provenance: Provenance,
    pub pairs_tested: usize,
    pub link_count: usize,
    pub tolerance: f64,
    /// Index of the inequality attaining the worst slack.
    pub worst_link: usize,
    /// Minimum over pairs and links of (rhs - lhs); +inf when no pairs ran.
    pub worst_slack: f64,
    pub failure_count: usize,
    /// First few witnesses; the count above is not capped.
    pub failures: Vec<ChainFailure>,
}

impl ChainReport {
    pub fn passed(&self) -> bool {
        self.failure_count == 0
    }
}

/// How many failure witnesses a report retains.
pub const MAX_STORED_FAILURES: usize = 20;

/// Evaluate every chain over every pair. Septuples are computed once per
/// pair (fanned out across workers, merged in index order), so output is
/// deterministic given the pair order.
pub fn run_chains(
    chains: &[InequalityChain],
    pairs: &[DistributionPair],
    tol: f64,
) -> Vec<ChainReport> {
    let septuples = map_indexed(pairs.len(), |i| normalized_values(&pairs[i]));
    chains
        .iter()
        .map(|chain| {
            let mut worst_slack = f64::INFINITY;
            let mut worst_link = 0usize;
            let mut failure_count = 0usize;
            let mut failures = Vec::new();
            for (pair_index, normalized) in septuples.iter().enumerate() {
                let values = chain.link_values(normalized);
                for (link_index, w) in values.windows(2).enumerate() {
                    let slack = w[1] - w[0];
                    if slack < worst_slack {
                        worst_slack = slack;
                        worst_link = link_index;
                    }
                    if slack < -tol {
                        failure_count += 1;
                        if failures.len() < MAX_STORED_FAILURES {
                            failures.push(ChainFailure {
                                pair_index,
                                p: pairs[pair_index].p().values().to_vec(),
                                q: pairs[pair_index].q().values().to_vec(),
                                link_index,
                                lhs: w[0],
                                rhs: w[1],
                            });
                        }
                    }
                }
            }
            ChainReport {
                name: chain.name.clone(),
                provenance: chain.provenance,
                pairs_tested: pairs.len(),
                link_count: chain.inequality_count(),
                tolerance: tol,
                worst_link,
                worst_slack,
                failure_count,
                failures,
            }
        })
        .collect()
}

fn rank_link(symbol: &str) -> ChainLink {
    let rank = Rank::from_symbol(symbol).expect("registry symbol");
    let label = match rank.get() {
        1 => "Delta/4",
        2 => "I",
        3 => "h",
        4 => "4d",
        5 => "J/8",
        6 => "T",
        _ => "Psi/16",
    };
    ChainLink {
        coefficient: Coefficient::new(1, 1),
        term: ChainTerm::Rank(rank),
        label: label.to_string(),
    }
}

fn diff_link(num: i64, den: i64, high: &str, low: &str) -> ChainLink {
    let id = DifferenceId::of(high, low);
    let coefficient = Coefficient::new(num, den);
    let label = if coefficient == Coefficient::new(1, 1) {
        format!("D_{}", id.name())
    } else {
        format!("{coefficient}*D_{}", id.name())
    };
    ChainLink {
        coefficient,
        term: ChainTerm::Difference(id),
        label,
    }
}

/// Combination over normalized ranks; `label` carries the display form in
/// raw-measure notation.
fn combo_link(label: &str, parts: &[(i64, i64, &str)]) -> ChainLink {
    ChainLink {
        coefficient: Coefficient::new(1, 1),
        term: ChainTerm::Combination(
            parts
                .iter()
                .map(|(num, den, sym)| {
                    (
                        Coefficient::new(*num, *den),
                        Rank::from_symbol(sym).expect("registry symbol"),
                    )
                })
                .collect(),
        ),
        label: label.to_string(),
    }
}

fn chain(name: &str, provenance: Provenance, links: Vec<ChainLink>) -> InequalityChain {
    InequalityChain {
        name: name.to_string(),
        provenance,
        links,
    }
}

/// Every chain the toolkit certifies, in the stable name vocabulary.
pub fn chain_registry() -> Vec<InequalityChain> {
    use Provenance::{DerivedCorrected, PaperVerbatim};

    let eq23_prefix = || {
        vec![
            diff_link(1, 1, "h", "Delta"),
            diff_link(4, 5, "d", "Delta"),
            diff_link(4, 1, "d", "h"),
            diff_link(12, 7, "d", "I"),
            diff_link(3, 1, "h", "I"),
            diff_link(1, 1, "T", "h"),
            diff_link(4, 3, "T", "d"),
        ]
    };

    let remark4_chain1 = |provenance, third: ChainLink, tenth: ChainLink| {
        chain(
            "remark4_chain1",
            provenance,
            vec![
                rank_link("Delta"),
                rank_link("I"),
                third,
                rank_link("h"),
                combo_link("(J+8I)/16", &[(1, 2, "J"), (1, 2, "I")]),
                combo_link("(T+2h)/3", &[(1, 3, "T"), (2, 3, "h")]),
                rank_link("J"),
                combo_link("(8T+Delta)/12", &[(2, 3, "T"), (1, 3, "Delta")]),
                rank_link("T"),
                tenth,
                rank_link("Psi"),
            ],
        )
    };

    vec![
        chain(
            "eq1",
            DerivedCorrected,
            ["Delta", "I", "h", "J", "T", "Psi"]
                .iter()
                .map(|s| rank_link(s))
                .collect(),
        ),
        chain(
            "eq2",
            DerivedCorrected,
            vec![
                diff_link(1, 1, "I", "Delta"),
                diff_link(2, 3, "h", "Delta"),
                diff_link(1, 2, "J", "Delta"),
                diff_link(1, 3, "T", "Delta"),
                diff_link(1, 1, "T", "J"),
                diff_link(2, 3, "T", "h"),
                diff_link(2, 1, "J", "h"),
                diff_link(1, 6, "Psi", "Delta"),
                diff_link(1, 5, "Psi", "I"),
                diff_link(2, 9, "Psi", "h"),
                diff_link(1, 4, "Psi", "J"),
                diff_link(1, 3, "Psi", "T"),
            ],
        ),
        chain(
            "eq3",
            DerivedCorrected,
            vec![
                diff_link(2, 3, "h", "Delta"),
                diff_link(2, 1, "h", "I"),
                diff_link(1, 1, "T", "J"),
            ],
        ),
        chain(
            "eq9",
            DerivedCorrected,
            Rank::ALL.iter().map(|r| rank_link(r.symbol())).collect(),
        ),
        chain("eq23", DerivedCorrected, {
            let mut links = eq23_prefix();
            links.extend([
                diff_link(1, 4, "Psi", "Delta"),
                diff_link(1, 3, "Psi", "h"),
                diff_link(4, 11, "Psi", "d"),
                diff_link(1, 2, "Psi", "T"),
            ]);
            links
        }),
        chain(
            "eq50",
            DerivedCorrected,
            vec![diff_link(1, 1, "Psi", "Delta"), diff_link(4, 3, "Psi", "h")],
        ),
        chain("eq54", DerivedCorrected, {
            let mut links = eq23_prefix();
            links.push(diff_link(12, 1, "J", "d"));
            links
        }),
        chain(
            "eq55",
            DerivedCorrected,
            vec![diff_link(1, 4, "J", "h"), diff_link(1, 1, "J", "d")],
        ),
        chain(
            "remark3_i",
            DerivedCorrected,
            vec![
                combo_link("(16d+3I)/7", &[(4, 7, "d"), (3, 7, "I")]),
                rank_link("h"),
                combo_link("(64d+Delta)/20", &[(4, 5, "d"), (1, 5, "Delta")]),
            ],
        ),
        chain(
            "remark3_i",
            PaperVerbatim,
            vec![
                combo_link("(16d+3I)/7", &[(4, 7, "d"), (3, 7, "I")]),
                rank_link("h"),
                combo_link("(64d+3Delta)/20", &[(4, 5, "d"), (3, 5, "Delta")]),
            ],
        ),
        chain(
            "remark3_ii",
            DerivedCorrected,
            vec![
                rank_link("h"),
                combo_link("(T+3I)/4", &[(1, 4, "T"), (3, 4, "I")]),
            ],
        ),
        chain(
            "remark3_iii",
            DerivedCorrected,
            vec![
                rank_link("h"),
                combo_link("(Psi+12Delta)/64", &[(1, 4, "Psi"), (3, 4, "Delta")]),
            ],
        ),
        chain(
            "remark3_iv",
            DerivedCorrected,
            vec![
                rank_link("d"),
                combo_link("(T+3h)/4", &[(1, 4, "T"), (3, 4, "h")]),
            ],
        ),
        chain(
            "remark3_v",
            DerivedCorrected,
            vec![
                rank_link("d"),
                combo_link("(Psi+176h)/192", &[(1, 12, "Psi"), (11, 12, "h")]),
            ],
        ),
        chain(
            "remark3_vi",
            DerivedCorrected,
            vec![
                rank_link("d"),
                combo_link("(3J+8h)/8", &[(3, 1, "J"), (1, 1, "h")]),
            ],
        ),
        chain(
            "remark3_vii",
            DerivedCorrected,
            vec![
                rank_link("T"),
                combo_link("(3Psi+512d)/176", &[(3, 11, "Psi"), (8, 11, "d")]),
            ],
        ),
        chain(
            "remark3_viii",
            DerivedCorrected,
            vec![
                combo_link("(32d+T)/9", &[(8, 9, "d"), (1, 9, "T")]),
                rank_link("J"),
            ],
        ),
        chain(
            "remark3_ix",
            DerivedCorrected,
            vec![
                combo_link("4T+3Delta/16", &[(4, 1, "T"), (3, 4, "Delta")]),
                combo_link("3Psi/64+16d", &[(3, 4, "Psi"), (4, 1, "d")]),
            ],
        ),
        remark4_chain1(
            DerivedCorrected,
            combo_link("(8h+Delta)/12", &[(2, 3, "h"), (1, 3, "Delta")]),
            combo_link("(Psi+6J)/64", &[(1, 4, "Psi"), (3, 4, "J")]),
        ),
        remark4_chain1(
            PaperVerbatim,
            combo_link("(9h+Delta)/12", &[(3, 4, "h"), (1, 3, "Delta")]),
            combo_link("(Psi+6J)/642", &[(8, 321, "Psi"), (8, 107, "J")]),
        ),
        chain(
            "remark4_chain2",
            DerivedCorrected,
            vec![
                rank_link("J"),
                combo_link(
                    "(Psi+192h-4Delta)/192",
                    &[(1, 12, "Psi"), (1, 1, "h"), (-1, 12, "Delta")],
                ),
                combo_link("(Psi+128h)/144", &[(1, 9, "Psi"), (8, 9, "h")]),
                rank_link("Psi"),
            ],
        ),
    ]
}

/// Look up chain variants by name.
pub fn chains_named(name: &str) -> Vec<InequalityChain> {
    chain_registry()
        .into_iter()
        .filter(|c| c.name == name)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::distributions::{sample_pairs, validate, ValidationPolicy};
    use crate::generators::GridSpec;
    use approx::assert_relative_eq;

    fn reference_pair() -> DistributionPair {
        let policy = ValidationPolicy::reject();
        DistributionPair::new(
            validate(&[0.5, 0.5], &policy).unwrap(),
            validate(&[0.25, 0.75], &policy).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn reference_differences() {
        let pair = reference_pair();
        // frozen extended-precision values
        assert_relative_eq!(
            difference(DifferenceId::of("Psi", "d"), &pair),
            0.002_196_555_326_376_636_5,
            max_relative = 1e-10
        );
        assert_relative_eq!(
            difference(DifferenceId::of("d", "Delta"), &pair),
            0.000_928_444_673_623_363_5,
            max_relative = 1e-10
        );
    }

    #[test]
    fn differences_vanish_on_equal_pair() {
        let p = crate::distributions::sample_uniform_simplex(4, 9).unwrap();
        let same = DistributionPair::new(p.clone(), p).unwrap();
        for id in DifferenceId::all() {
            assert!(difference(id, &same).abs() < 1e-14);
        }
    }

    #[test]
    fn differences_nonnegative_on_random_pairs() {
        for pair in sample_pairs(6, 300, 5).unwrap() {
            for id in DifferenceId::all() {
                assert!(difference(id, &pair) >= -1e-12, "{}", id.name());
            }
        }
    }

    #[test]
    fn difference_generator_second_vanishes_at_one() {
        for id in DifferenceId::all() {
            assert!(difference_generator_second(id, 1.0).unwrap().abs() < 1e-15);
        }
    }

    #[test]
    fn closed_forms_match_composition() {
        let grid = GridSpec::log(1e-6, 1e6, 2_000).unwrap();
        for id in DifferenceId::d_family() {
            for x in grid.values() {
                let closed = second_closed(id, x).unwrap().unwrap();
                let composed = second_composed(id, x).unwrap();
                let scale = closed.abs().max(composed.abs()).max(1e-300);
                assert!(
                    (closed - composed).abs() / scale <= 1e-12,
                    "{} at {x}: {closed} vs {composed}",
                    id.name()
                );
            }
        }
    }

    #[test]
    fn psid_second_nonnegative_on_grid() {
        let grid = GridSpec::log(1e-6, 1e6, 5_000).unwrap();
        let id = DifferenceId::of("Psi", "d");
        for x in grid.values() {
            assert!(difference_generator_second(id, x).unwrap() >= 0.0, "x={x}");
        }
    }

    #[test]
    fn names_round_trip() {
        for id in DifferenceId::all() {
            assert_eq!(DifferenceId::parse(&id.name()).unwrap(), id);
        }
        assert!(DifferenceId::parse("hPsi").is_err()); // wrong order
        assert!(DifferenceId::parse("zz").is_err());
        assert!(DifferenceId::new(Rank::new(3).unwrap(), Rank::new(3).unwrap()).is_err());
    }

    #[test]
    fn registry_structure() {
        let registry = chain_registry();
        let eq23 = registry
            .iter()
            .find(|c| c.name == "eq23")
            .expect("eq23 present");
        assert_eq!(eq23.links.len(), 11);
        let expected = [
            (1, 1),
            (4, 5),
            (4, 1),
            (12, 7),
            (3, 1),
            (1, 1),
            (4, 3),
            (1, 4),
            (1, 3),
            (4, 11),
            (1, 2),
        ];
        for (link, (num, den)) in eq23.links.iter().zip(expected) {
            assert_eq!(link.coefficient, Coefficient::new(num, den));
        }

        let eq2 = registry.iter().find(|c| c.name == "eq2").unwrap();
        assert_eq!(eq2.links.len(), 12);
        assert_eq!(eq2.links[0].coefficient, Coefficient::new(1, 1));
        assert_eq!(
            eq2.links[0].term,
            ChainTerm::Difference(DifferenceId::of("I", "Delta"))
        );
        assert_eq!(eq2.links[1].coefficient, Coefficient::new(2, 3));
        assert_eq!(
            eq2.links[1].term,
            ChainTerm::Difference(DifferenceId::of("h", "Delta"))
        );

        // eq9 has 7 members, hence 6 inequalities
        let eq9 = registry.iter().find(|c| c.name == "eq9").unwrap();
        assert_eq!(eq9.inequality_count(), 6);

        // remark4_chain1 derived variant ends at Psi/16 with the /64 member
        let r4 = registry
            .iter()
            .find(|c| c.name == "remark4_chain1" && c.provenance == Provenance::DerivedCorrected)
            .unwrap();
        assert_eq!(r4.links.last().unwrap().label, "Psi/16");
        assert_eq!(r4.links[9].label, "(Psi+6J)/64");
        match &r4.links[9].term {
            ChainTerm::Combination(parts) => {
                assert_eq!(
                    parts[0],
                    (Coefficient::new(1, 4), Rank::from_symbol("Psi").unwrap())
                );
                assert_eq!(
                    parts[1],
                    (Coefficient::new(3, 4), Rank::from_symbol("J").unwrap())
                );
            }
            other => panic!("expected combination, got {other:?}"),
        }

        // both dual-variant chains are stored twice
        for name in ["remark3_i", "remark4_chain1"] {
            let variants = chains_named(name);
            assert_eq!(variants.len(), 2, "{name}");
            assert!(variants
                .iter()
                .any(|c| c.provenance == Provenance::PaperVerbatim));
            assert!(variants
                .iter()
                .any(|c| c.provenance == Provenance::DerivedCorrected));
        }

        // stable vocabulary
        let mut names: Vec<String> = registry.iter().map(|c| c.name.clone()).collect();
        names.dedup();
        assert_eq!(
            names,
            [
                "eq1",
                "eq2",
                "eq3",
                "eq9",
                "eq23",
                "eq50",
                "eq54",
                "eq55",
                "remark3_i",
                "remark3_ii",
                "remark3_iii",
                "remark3_iv",
                "remark3_v",
                "remark3_vi",
                "remark3_vii",
                "remark3_viii",
                "remark3_ix",
                "remark4_chain1",
                "remark4_chain2",
            ]
        );
    }

    #[test]
    fn eq9_slacks_on_reference_pair() {
        let eq9 = chains_named("eq9").remove(0);
        let pair = reference_pair();
        let slacks = check_chain(&eq9, &pair);
        assert_eq!(slacks.len(), 6);
        assert!(slacks.iter().all(|&s| s >= 0.0));
        // first gap: I - Delta/4 on the reference pair
        assert_relative_eq!(slacks[0], 0.000_488_742_235_271_896_7, max_relative = 1e-9);
    }

    #[test]
    fn equal_pair_gives_zero_slacks() {
        let p = crate::distributions::sample_uniform_simplex(3, 77).unwrap();
        let same = DistributionPair::new(p.clone(), p).unwrap();
        for chain in chain_registry() {
            for slack in check_chain(&chain, &same) {
                assert!(slack.abs() < 1e-14, "{}", chain.name);
            }
        }
    }

    #[test]
    fn run_chains_flags_only_the_misprinted_variant() {
        let pairs = sample_pairs(2, 400, 4242).unwrap();
        let registry = chain_registry();
        let reports = run_chains(&registry, &pairs, 1e-12);
        for report in &reports {
            let verbatim_r4 =
                report.name == "remark4_chain1" && report.provenance == Provenance::PaperVerbatim;
            if verbatim_r4 {
                assert!(!report.passed(), "misprinted chain should fail");
                assert!(!report.failures.is_empty());
                assert!(report.failures.len() <= MAX_STORED_FAILURES);
            } else {
                assert!(
                    report.passed(),
                    "{} ({}) worst slack {}",
                    report.name,
                    report.provenance.name(),
                    report.worst_slack
                );
            }
        }
    }

    #[test]
    fn run_chains_empty_pair_set() {
        let reports = run_chains(&chain_registry(), &[], 1e-12);
        assert!(reports.iter().all(|r| r.pairs_tested == 0));
        assert!(reports.iter().all(|r| r.worst_slack.is_infinite()));
    }
}
