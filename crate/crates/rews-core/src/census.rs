//! Exhaustive enumeration, class/degree censuses, closed-form counts, and
//! deterministic random sampling.
//!
//! All counting is exact: census cells and formula values are
//! arbitrary-precision integers, ratios are exact rationals.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exec;
use crate::separability::{separable_degree_brute, separable_degree_fast};
use crate::state::{Rews, StructuralClass, MAX_ANALYSIS_QUBITS};

/// Largest qubit count whose 2^{2^n} states can be enumerated exhaustively.
pub const MAX_ENUMERATION_QUBITS: u32 = 4;

/// Exact binomial coefficient B(n, k).
pub fn binomial(n: u64, k: u64) -> BigUint {
    num_integer::binomial(BigUint::from(n), BigUint::from(k))
}

/// All 2^{2^n} states in ascending packed-sign-integer order (bit x of the
/// integer has weight 2^x).
pub fn enumerate_all(n: u32) -> Result<impl Iterator<Item = Rews>> {
    if n == 0 || n > MAX_ENUMERATION_QUBITS {
        return Err(Error::AnalysisLimit {
            what: "exhaustive enumeration",
            n,
            max: MAX_ENUMERATION_QUBITS,
        });
    }
    let total = 1u64 << (1u64 << n);
    Ok((0..total).map(move |v| Rews::from_sign_integer(n, v).expect("n <= 4")))
}

/// Deterministic uniform sampling of sign vectors.
///
/// Sample i is drawn from a counter-based generator keyed by `(seed, i)`
/// (ChaCha8 with the sample index as the stream id), so any index range can
/// be produced independently and in parallel with identical results.
pub fn sample_random(n: u32, count: u64, seed: u64) -> Result<impl Iterator<Item = Rews>> {
    if n == 0 || n > MAX_ANALYSIS_QUBITS {
        return Err(Error::AnalysisLimit {
            what: "random sampling",
            n,
            max: MAX_ANALYSIS_QUBITS,
        });
    }
    Ok((0..count).map(move |i| sample_at(n, seed, i)))
}

/// The i-th sample of the `(n, seed)` stream.
pub fn sample_at(n: u32, seed: u64, index: u64) -> Rews {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    let words = (1usize << n).div_ceil(64).max(1);
    let mut bits = Vec::with_capacity(1usize << n);
    'fill: for _ in 0..words {
        let mut w = rng.next_u64();
        for _ in 0..64 {
            bits.push(w & 1 == 1);
            w >>= 1;
            if bits.len() == 1usize << n {
                break 'fill;
            }
        }
    }
    Rews::new(n, &bits).expect("sampled length is 2^n")
}

/// How the census computes each state's separable degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DeltaMethod {
    Brute,
    /// Closed-form dispatch where available, brute-force search elsewhere.
    FastWithFallback,
}

impl DeltaMethod {
    fn degree_of(self, state: &Rews) -> u32 {
        match self {
            DeltaMethod::Brute => separable_degree_brute(state).expect("n <= 4").delta,
            DeltaMethod::FastWithFallback => separable_degree_fast(state)
                .unwrap_or_else(|| separable_degree_brute(state).expect("n <= 4").delta),
        }
    }
}

/// Census row key: structural degree, class, separable degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct CensusKey {
    pub delta: u64,
    pub class: StructuralClass,
    pub sep_degree: u32,
}

/// Exact enumeration counts keyed by (Δ, class, δ).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CensusTable {
    n: u32,
    rows: BTreeMap<CensusKey, BigUint>,
}

impl CensusTable {
    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn rows(&self) -> impl Iterator<Item = (&CensusKey, &BigUint)> {
        self.rows.iter()
    }

    pub fn total(&self) -> BigUint {
        self.rows.values().sum()
    }

    /// Count of states at one structural degree.
    pub fn degree_marginal(&self, delta: u64) -> BigUint {
        self.rows
            .iter()
            .filter(|(k, _)| k.delta == delta)
            .map(|(_, c)| c)
            .sum()
    }

    /// Count of states in one structural class.
    pub fn class_marginal(&self, class: StructuralClass) -> BigUint {
        self.rows
            .iter()
            .filter(|(k, _)| k.class == class)
            .map(|(_, c)| c)
            .sum()
    }

    /// Count of states at one separable degree.
    pub fn separable_marginal(&self, sep_degree: u32) -> BigUint {
        self.rows
            .iter()
            .filter(|(k, _)| k.sep_degree == sep_degree)
            .map(|(_, c)| c)
            .sum()
    }
}

fn census_impl(n: u32, method: DeltaMethod, parallel: bool) -> Result<CensusTable> {
    if n == 0 || n > MAX_ENUMERATION_QUBITS {
        return Err(Error::AnalysisLimit {
            what: "census enumeration",
            n,
            max: MAX_ENUMERATION_QUBITS,
        });
    }
    let total = 1u64 << (1u64 << n);
    let rows = exec::fold_range(
        total,
        parallel,
        BTreeMap::<CensusKey, u64>::new,
        |mut acc, v| {
            let state = Rews::from_sign_integer(n, v).expect("n <= 4");
            let key = CensusKey {
                delta: state.structural_degree(),
                class: state.classify(),
                sep_degree: method.degree_of(&state),
            };
            *acc.entry(key).or_insert(0) += 1;
            acc
        },
        |mut a, b| {
            for (k, c) in b {
                *a.entry(k).or_insert(0) += c;
            }
            a
        },
    );
    Ok(CensusTable {
        n,
        rows: rows
            .into_iter()
            .map(|(k, c)| (k, BigUint::from(c)))
            .collect(),
    })
}

/// Full (Δ, class, δ) census over all 2^{2^n} states.
pub fn census(n: u32, method: DeltaMethod) -> Result<CensusTable> {
    census_impl(n, method, true)
}

/// Reference single-threaded census; bit-for-bit equal to [`census`].
pub fn census_sequential(n: u32, method: DeltaMethod) -> Result<CensusTable> {
    census_impl(n, method, false)
}

/// A closed-form count paired with an optional brute-force cross-check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormulaReport {
    pub id: String,
    pub n: u32,
    pub degree: Option<u64>,
    pub formula_value: BigUint,
    pub brute_value: Option<BigUint>,
    pub note: String,
}

impl FormulaReport {
    pub fn matched(&self) -> Option<bool> {
        self.brute_value.as_ref().map(|b| *b == self.formula_value)
    }
}

/// Number of fully separable n-qubit states: 2^{n+1} (one per affine form).
pub fn count_fully_separable_formula(n: u32) -> BigUint {
    BigUint::one() << (n + 1)
}

fn exact_half(value: BigUint, what: &str) -> BigUint {
    assert!(
        (&value % 2u32).is_zero(),
        "{what} must be even, got {value}"
    );
    value >> 1
}

/// Closed-form count of 2-separable balanced n-qubit states:
/// (1/2)·Σ_{k=1}^{n−1} B(n,k)·B(2^k,2^{k−1})·[2^{2^{n−k}} − (1/2)·B(2^{n−k},2^{n−k−1})].
///
/// Both halvings are checked to divide exactly.
pub fn count_two_separable_balanced_formula(n: u32) -> BigUint {
    assert!(n >= 2, "the balanced 2-separable count needs n >= 2");
    let mut sum = BigUint::zero();
    for k in 1..n {
        let rest = n - k;
        let positions = binomial(u64::from(n), u64::from(k));
        let balanced_block = binomial(1 << k, 1 << (k - 1));
        let half_balanced_rest = exact_half(
            binomial(1 << rest, 1 << (rest - 1)),
            "central binomial of the rest block",
        );
        let rest_states = (BigUint::one() << (1u64 << rest)) - half_balanced_rest;
        sum += positions * balanced_block * rest_states;
    }
    exact_half(sum, "the 2-separable balanced sum")
}

fn class_d_range(n: u32, degree: u64) -> Result<()> {
    let full = 1u64 << n;
    let in_d = degree >= 2 && degree % 2 == 0 && degree * degree < full;
    if !in_d {
        return Err(Error::DegreeOutOfClass {
            n,
            degree,
            expected: "even-low (D)",
        });
    }
    Ok(())
}

/// Closed-form count of 2-separable states at an even-low structural degree:
/// n·B(2^{n−1}, M/2).
pub fn count_two_separable_class_d_formula(n: u32, degree: u64) -> Result<BigUint> {
    class_d_range(n, degree)?;
    Ok(BigUint::from(u64::from(n)) * binomial(1 << (n - 1), degree / 2))
}

/// Exact fraction of 2-separable states among all states at one structural
/// degree, for the even-low class and its mirror.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatioReport {
    pub n: u32,
    pub degree: u64,
    /// 2-separable count, n·B(2^{n−1}, m/2) with m the low-side degree.
    pub numerator: BigUint,
    /// Total count, B(2^n, m).
    pub denominator: BigUint,
}

impl RatioReport {
    pub fn ratio(&self) -> BigRational {
        BigRational::new(
            BigInt::from(self.numerator.clone()),
            BigInt::from(self.denominator.clone()),
        )
    }
}

impl fmt::Display for RatioReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "n={} degree={}: {}/{} = {}",
            self.n,
            self.degree,
            self.numerator,
            self.denominator,
            self.ratio()
        )
    }
}

/// Ratio of the 2-separable count to the total count at degree `m`, which
/// must lie in the even-low class (D) or its mirror (E). The mirror side is
/// evaluated through 2^n − m.
pub fn entangled_fraction_report(n: u32, degree: u64) -> Result<RatioReport> {
    let full = 1u64 << n;
    let low = if degree * 2 > full { full - degree } else { degree };
    class_d_range(n, low).map_err(|_| Error::DegreeOutOfClass {
        n,
        degree,
        expected: "even-low (D) or its mirror (E)",
    })?;
    Ok(RatioReport {
        n,
        degree,
        numerator: BigUint::from(u64::from(n)) * binomial(1 << (n - 1), low / 2),
        denominator: binomial(full, low),
    })
}

/// The fraction series at a fixed mirror offset 2^n − M, across a range of n.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatioSeries {
    pub codegree: u64,
    pub reports: Vec<RatioReport>,
    pub strictly_decreasing: bool,
}

/// Evaluates the mirror-side fraction for every n in the range at fixed
/// 2^n − M = `codegree`, and reports whether the series strictly decreases.
pub fn entangled_fraction_series(
    codegree: u64,
    n_range: std::ops::RangeInclusive<u32>,
) -> Result<RatioSeries> {
    let mut reports = Vec::new();
    for n in n_range {
        let full = 1u64 << n;
        reports.push(entangled_fraction_report(n, full - codegree)?);
    }
    let strictly_decreasing = reports
        .windows(2)
        .all(|w| w[0].ratio() > w[1].ratio());
    Ok(RatioSeries {
        codegree,
        reports,
        strictly_decreasing,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate_all(1).unwrap().count(), 4);
        assert_eq!(enumerate_all(2).unwrap().count(), 16);
        assert_eq!(enumerate_all(3).unwrap().count(), 256);
        assert!(matches!(
            enumerate_all(5),
            Err(Error::AnalysisLimit { n: 5, max: 4, .. })
        ));
    }

    #[test]
    fn enumeration_is_ascending_and_distinct() {
        let ints: Vec<u64> = enumerate_all(2)
            .unwrap()
            .map(|s| s.sign_integer().unwrap())
            .collect();
        assert_eq!(ints, (0..16).collect::<Vec<u64>>());
    }

    #[test]
    fn census_n2_class_counts() {
        let table = census(2, DeltaMethod::Brute).unwrap();
        assert_eq!(table.total(), BigUint::from(16u32));
        assert_eq!(table.class_marginal(StructuralClass::Odd), 8u32.into());
        assert_eq!(table.class_marginal(StructuralClass::Constant), 2u32.into());
        assert_eq!(table.class_marginal(StructuralClass::Balanced), 6u32.into());
        assert_eq!(table.class_marginal(StructuralClass::EvenLow), 0u32.into());
        // δ marginals: the 8 odd states are fully entangled, the rest split
        assert_eq!(table.separable_marginal(1), 8u32.into());
        assert_eq!(table.separable_marginal(2), 8u32.into());
    }

    #[test]
    fn census_n3_class_counts() {
        let table = census(3, DeltaMethod::FastWithFallback).unwrap();
        assert_eq!(table.total(), BigUint::from(256u32));
        assert_eq!(table.class_marginal(StructuralClass::Odd), 128u32.into());
        assert_eq!(table.class_marginal(StructuralClass::Constant), 2u32.into());
        assert_eq!(table.class_marginal(StructuralClass::Balanced), 70u32.into());
        assert_eq!(table.class_marginal(StructuralClass::EvenLow), 28u32.into());
        assert_eq!(
            table.class_marginal(StructuralClass::EvenLowMirror),
            28u32.into()
        );
        assert_eq!(table.class_marginal(StructuralClass::EvenMid), 0u32.into());
    }

    #[test]
    fn census_marginals_match_binomials() {
        for n in 1..=3u32 {
            let table = census(n, DeltaMethod::FastWithFallback).unwrap();
            for d in 0..=(1u64 << n) {
                assert_eq!(
                    table.degree_marginal(d),
                    binomial(1 << n, d),
                    "n={n} delta={d}"
                );
            }
        }
    }

    #[test]
    fn parallel_and_sequential_censuses_agree() {
        for method in [DeltaMethod::Brute, DeltaMethod::FastWithFallback] {
            assert_eq!(
                census(3, method).unwrap(),
                census_sequential(3, method).unwrap()
            );
        }
    }

    #[test]
    fn fully_separable_count() {
        assert_eq!(count_fully_separable_formula(3), BigUint::from(16u32));
        assert_eq!(count_fully_separable_formula(2), BigUint::from(8u32));
    }

    #[test]
    fn balanced_two_separable_formula_values() {
        assert_eq!(
            count_two_separable_balanced_formula(2),
            BigUint::from(6u32)
        );
        assert_eq!(
            count_two_separable_balanced_formula(3),
            BigUint::from(66u32)
        );
    }

    #[test]
    fn class_d_formula_values() {
        assert_eq!(
            count_two_separable_class_d_formula(3, 2).unwrap(),
            BigUint::from(12u32)
        );
        assert_eq!(
            count_two_separable_class_d_formula(4, 2).unwrap(),
            BigUint::from(32u32)
        );
        assert!(count_two_separable_class_d_formula(4, 4).is_err());
        assert!(count_two_separable_class_d_formula(4, 3).is_err());
    }

    #[test]
    fn fraction_reports() {
        let r = entangled_fraction_report(4, 14).unwrap();
        assert_eq!(r.numerator, BigUint::from(32u32));
        assert_eq!(r.denominator, BigUint::from(120u32));

        let r = entangled_fraction_report(5, 30).unwrap();
        assert_eq!(r.numerator, BigUint::from(80u32));
        assert_eq!(r.denominator, BigUint::from(496u32));

        assert!(entangled_fraction_report(4, 8).is_err());
    }

    #[test]
    fn fraction_series_decreases() {
        let series = entangled_fraction_series(2, 4..=10).unwrap();
        assert_eq!(series.reports.len(), 7);
        assert!(series.strictly_decreasing);
    }

    #[test]
    fn sampling_is_deterministic_and_shaped() {
        let a: Vec<Rews> = sample_random(3, 10, 42).unwrap().collect();
        let b: Vec<Rews> = sample_random(3, 10, 42).unwrap().collect();
        assert_eq!(a, b);
        assert!(a.iter().all(|s| s.n() == 3 && s.len() == 8));

        let c: Vec<Rews> = sample_random(3, 10, 43).unwrap().collect();
        assert_ne!(a, c);

        // counter-based: any index can be regenerated in isolation
        assert_eq!(sample_at(3, 42, 7), a[7]);

        assert!(matches!(
            sample_random(17, 1, 0),
            Err(Error::AnalysisLimit { .. })
        ));
    }

    #[test]
    fn sampled_degrees_follow_the_binomial_law() {
        // Δ over uniform sign vectors is Binomial(2^n, 1/2); check each bin
        // against its expectation within 3σ for a fixed seed
        let n = 3u32;
        let samples = 100_000u64;
        let mut counts = [0u64; 9];
        for s in sample_random(n, samples, 1).unwrap() {
            counts[s.structural_degree() as usize] += 1;
        }
        for (d, &observed) in counts.iter().enumerate() {
            let p = binomial(8, d as u64)
                .to_string()
                .parse::<f64>()
                .unwrap()
                / 256.0;
            let mean = samples as f64 * p;
            let sigma = (samples as f64 * p * (1.0 - p)).sqrt();
            assert!(
                (observed as f64 - mean).abs() <= 3.0 * sigma,
                "delta={d}: observed {observed}, expected {mean:.1} ± {:.1}",
                3.0 * sigma
            );
        }
    }

    #[test]
    fn census_rejects_large_n() {
        assert!(matches!(
            census(5, DeltaMethod::Brute),
            Err(Error::AnalysisLimit { .. })
        ));
    }

    #[test]
    fn mirror_symmetry_of_degree_marginals() {
        let table = census(3, DeltaMethod::FastWithFallback).unwrap();
        for d in 0..=8u64 {
            assert_eq!(table.degree_marginal(d), table.degree_marginal(8 - d));
        }
    }
}
