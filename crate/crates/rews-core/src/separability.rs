//! Exact separable degree via ±1 rank-1 bipartition factoring.
//!
//! A sign vector factors across a qubit bipartition exactly when, reshaped as
//! a ±1 matrix with rows indexed by one side and columns by the other, every
//! row equals the first row or its complement. The brute-force search below
//! recurses on that test over all bipartitions and maximizes the block count;
//! the fast path dispatches on the structural class where a closed
//! characterization of the degree exists.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::qubits::QubitSet;
use crate::state::{Rews, Sign, StructuralClass, MAX_ANALYSIS_QUBITS};

/// Sign-normalizes a state: the returned copy has its first amplitude
/// positive, with the stripped sign reported separately.
pub fn normalize(state: &Rews) -> (Rews, Sign) {
    if state.bit(0) {
        (state.negate(), Sign::Minus)
    } else {
        (state.clone(), Sign::Plus)
    }
}

/// One tensor factor of a factorization, hosted on a set of qubit positions.
///
/// The factor state is sign-normalized (local index 0 carries a + sign); any
/// stripped minus signs live in the factorization's global sign.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factor {
    pub qubits: QubitSet,
    pub state: Rews,
}

/// A full tensor decomposition: disjoint factors covering {1..n} plus one
/// explicit global sign.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    factors: Vec<Factor>,
    global_sign: Sign,
}

impl Factorization {
    fn new(mut factors: Vec<Factor>, global_sign: Sign) -> Self {
        factors.sort_by_key(|f| f.qubits.mask().trailing_zeros());
        debug_assert!(factors.iter().all(|f| !f.state.bit(0)));
        Factorization {
            factors,
            global_sign,
        }
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    pub fn global_sign(&self) -> Sign {
        self.global_sign
    }

    /// Number of blocks; by construction this is the separable degree the
    /// factorization witnesses.
    pub fn block_count(&self) -> u32 {
        self.factors.len() as u32
    }

    /// Rebuilds the n-qubit state the factorization decomposes.
    pub fn reconstruct(&self, n: u32) -> Result<Rews> {
        Rews::from_fn(n, |x| {
            let mut bit = self.global_sign.is_minus();
            for f in &self.factors {
                bit ^= f.state.bit(f.qubits.extract(x, n));
            }
            bit
        })
    }

    /// Human-readable one-line rendering, factors in ascending qubit order.
    pub fn describe(&self) -> String {
        let mut out = format!("(sign {})", self.global_sign);
        for f in &self.factors {
            out.push_str(&format!(" {}={}", f.qubits, f.state));
        }
        out
    }
}

/// How a separable degree was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Brute,
    Fast,
}

/// Separable degree δ together with a witnessing factorization.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeparabilityReport {
    pub delta: u32,
    pub witness: Factorization,
    pub method: Method,
}

/// Result of factoring across one bipartition: both factors sign-normalized,
/// the residual sign explicit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bipartition {
    pub on_set: Rews,
    pub on_complement: Rews,
    pub sign: Sign,
}

/// Tries to split `state` across `set` versus its complement.
///
/// Returns `None` when the state is entangled across this cut. On success
/// `sign × (on_set ⊗ on_complement)`, with each factor mapped back to its
/// qubit positions, reproduces the input bit-for-bit.
pub fn bipartition_factor(state: &Rews, set: QubitSet) -> Result<Option<Bipartition>> {
    let n = state.n();
    set.check_proper_subset(n)?;
    let comp = set.complement(n);
    let rows = 1u64 << set.len();
    let cols = 1u64 << comp.len();

    let row_base: Vec<u64> = (0..rows).map(|i| set.scatter(i, n)).collect();
    let col_base: Vec<u64> = (0..cols).map(|j| comp.scatter(j, n)).collect();

    let mut first_row = vec![false; cols as usize];
    for (j, base) in col_base.iter().enumerate() {
        first_row[j] = state.bit(row_base[0] | base);
    }

    let mut row_flags = vec![false; rows as usize];
    for i in 1..rows as usize {
        let mut rel: Option<bool> = None;
        for (j, base) in col_base.iter().enumerate() {
            let flip = state.bit(row_base[i] | base) ^ first_row[j];
            match rel {
                None => rel = Some(flip),
                Some(r) if r != flip => return Ok(None),
                _ => {}
            }
        }
        row_flags[i] = rel.unwrap_or(false);
    }

    let on_set = Rews::new(set.len(), &row_flags)?;
    let raw_complement = Rews::new(comp.len(), &first_row)?;
    let (on_complement, sign) = normalize(&raw_complement);
    Ok(Some(Bipartition {
        on_set,
        on_complement,
        sign,
    }))
}

/// A factorization whose blocks address the local qubits 1..w of a w-qubit
/// sub-state; memoized per top-level brute-force call.
type Memo = HashMap<Rews, Factorization>;

fn remap_block(local: QubitSet, host: &[u32]) -> QubitSet {
    let mut mask = 0u32;
    for q in local.iter() {
        mask |= 1 << (host[(q - 1) as usize] - 1);
    }
    QubitSet::from_mask(mask)
}

fn brute_rec(state: &Rews, memo: &mut Memo) -> Factorization {
    if let Some(hit) = memo.get(state) {
        return hit.clone();
    }
    let n = state.n();
    let (norm, sign) = normalize(state);
    let mut best = Factorization::new(
        vec![Factor {
            qubits: QubitSet::full(n),
            state: norm,
        }],
        sign,
    );
    for side in QubitSet::bipartition_sides(n) {
        let Some(bp) = bipartition_factor(state, side).expect("side is a proper subset") else {
            continue;
        };
        let left = brute_rec(&bp.on_set, memo);
        let right = brute_rec(&bp.on_complement, memo);
        if left.block_count() + right.block_count() > best.block_count() {
            let side_hosts = side.to_vec();
            let comp_hosts = side.complement(n).to_vec();
            let mut factors = Vec::with_capacity((left.block_count() + right.block_count()) as usize);
            for f in left.factors() {
                factors.push(Factor {
                    qubits: remap_block(f.qubits, &side_hosts),
                    state: f.state.clone(),
                });
            }
            for f in right.factors() {
                factors.push(Factor {
                    qubits: remap_block(f.qubits, &comp_hosts),
                    state: f.state.clone(),
                });
            }
            let total_sign = bp
                .sign
                .combine(left.global_sign())
                .combine(right.global_sign());
            best = Factorization::new(factors, total_sign);
        }
    }
    memo.insert(state.clone(), best.clone());
    best
}

/// Exact separable degree by exhaustive recursive factoring.
///
/// Bipartitions are visited in ascending mask order of the side containing
/// qubit 1, and the first witness reaching the maximal block count is kept,
/// so the reported factorization is deterministic.
pub fn separable_degree_brute(state: &Rews) -> Result<SeparabilityReport> {
    let n = state.n();
    if n > MAX_ANALYSIS_QUBITS {
        return Err(Error::AnalysisLimit {
            what: "separable-degree search",
            n,
            max: MAX_ANALYSIS_QUBITS,
        });
    }
    let mut memo = Memo::new();
    let witness = brute_rec(state, &mut memo);
    debug_assert_eq!(witness.reconstruct(n).unwrap(), *state);
    Ok(SeparabilityReport {
        delta: witness.block_count(),
        witness,
        method: Method::Brute,
    })
}

/// Outcome of stripping single-qubit ±(|0⟩+|1⟩)/√2 factors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Peeled {
    /// Original positions of the peeled qubits.
    pub qubits: QubitSet,
    /// State left on the unpeeled qubits (ascending original order), with all
    /// residual signs absorbed; `None` when every qubit peeled.
    pub remainder: Option<Rews>,
    /// Product of the minus signs stripped from the peeled factors.
    pub sign: Sign,
}

/// Greedily extracts every single qubit that factors off as ±(|0⟩+|1⟩)/√2.
///
/// The remainder carries no further such qubit; `sign × (|+⟩ on each peeled
/// qubit) ⊗ remainder` reproduces the input.
pub fn peel_constant_qubits(state: &Rews) -> Peeled {
    let mut remainder = state.clone();
    let mut hosts: Vec<u32> = (1..=state.n()).collect();
    let mut peeled = QubitSet::EMPTY;
    let mut sign = Sign::Plus;

    'outer: loop {
        let w = remainder.n();
        if w == 1 {
            if remainder.is_constant() {
                if remainder.bit(0) {
                    sign = sign.flipped();
                }
                peeled = peeled.union(QubitSet::singleton(hosts[0]));
                return Peeled {
                    qubits: peeled,
                    remainder: None,
                    sign,
                };
            }
            break;
        }
        for local in 1..=w {
            let side = QubitSet::singleton(local);
            let bp = bipartition_factor(&remainder, side)
                .expect("singletons are proper subsets")
                .filter(|bp| bp.on_set.structural_degree() == 0);
            if let Some(bp) = bp {
                peeled = peeled.union(QubitSet::singleton(hosts[(local - 1) as usize]));
                hosts.remove((local - 1) as usize);
                // push the split-off sign into the remainder
                remainder = if bp.sign.is_minus() {
                    bp.on_complement.negate()
                } else {
                    bp.on_complement
                };
                continue 'outer;
            }
        }
        break;
    }
    Peeled {
        qubits: peeled,
        remainder: Some(remainder),
        sign,
    }
}

/// Parameters of the dyadic split M = 2^q(2p+1), taken of M itself for
/// degrees up to 2^{n−1} and of 2^n − M above it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DecompositionParams {
    pub n: u32,
    pub degree: u64,
    pub q: u32,
    pub p: u64,
    pub mirrored: bool,
}

impl DecompositionParams {
    pub fn new(n: u32, degree: u64) -> Result<Self> {
        let full = 1u64 << n;
        if degree == 0 || degree >= full {
            return Err(Error::DegreeOutOfClass {
                n,
                degree,
                expected: "non-constant",
            });
        }
        let mirrored = degree > full / 2;
        let m = if mirrored { full - degree } else { degree };
        let q = m.trailing_zeros();
        let p = ((m >> q) - 1) / 2;
        Ok(DecompositionParams {
            n,
            degree,
            q,
            p,
            mirrored,
        })
    }

    /// The dyadic part this split decomposes, M or 2^n − M.
    pub fn split_value(&self) -> u64 {
        (1u64 << self.q) * (2 * self.p + 1)
    }
}

/// Separable degree without search, for the classes with a closed
/// characterization; `None` means the caller must fall back to brute force.
///
/// Covered: odd degrees (fully entangled), constants and affine states
/// (fully separable, which also settles every balanced state at n = 2), and
/// the even low classes D/E plus the power-of-two cases of F/G, where the
/// degree is one more than the number of strippable constant qubits. Not
/// covered: F/G with an odd cofactor and balanced non-affine states.
pub fn separable_degree_fast(state: &Rews) -> Option<u32> {
    fast_report(state).map(|r| r.delta)
}

/// Like [`separable_degree_fast`] but assembling the witness factorization
/// the dispatched rule implies.
pub fn fast_report(state: &Rews) -> Option<SeparabilityReport> {
    let n = state.n();
    let degree = state.structural_degree();
    let full = state.len();

    if degree & 1 == 1 {
        let (norm, sign) = normalize(state);
        return Some(SeparabilityReport {
            delta: 1,
            witness: Factorization::new(
                vec![Factor {
                    qubits: QubitSet::full(n),
                    state: norm,
                }],
                sign,
            ),
            method: Method::Fast,
        });
    }

    if let Some(form) = state.affine_form() {
        // covers both constant states (a = 0) and, at n = 2, every balanced
        // state; the product splits into one single-qubit factor per position
        let factors = (1..=n)
            .map(|j| {
                let bits = [false, form.coefficient(j, n)];
                Factor {
                    qubits: QubitSet::singleton(j),
                    state: Rews::new(1, &bits).expect("one qubit"),
                }
            })
            .collect();
        let sign = if form.constant { Sign::Minus } else { Sign::Plus };
        return Some(SeparabilityReport {
            delta: n,
            witness: Factorization::new(factors, sign),
            method: Method::Fast,
        });
    }

    let peelable = match state.classify() {
        StructuralClass::EvenLow | StructuralClass::EvenLowMirror => true,
        StructuralClass::EvenMid => degree.is_power_of_two(),
        StructuralClass::EvenMidMirror => (full - degree).is_power_of_two(),
        _ => false,
    };
    if !peelable {
        return None;
    }

    let params = DecompositionParams::new(n, degree).expect("non-constant degree");
    let peeled = peel_constant_qubits(state);
    let k = peeled.qubits.len();
    assert!(
        k <= params.q,
        "peeled {k} constant qubits but the dyadic valuation is {}",
        params.q
    );
    let remainder = peeled
        .remainder
        .expect("non-constant states keep a remainder");
    let (norm, rem_sign) = normalize(&remainder);
    let mut factors: Vec<Factor> = peeled
        .qubits
        .iter()
        .map(|q| Factor {
            qubits: QubitSet::singleton(q),
            state: Rews::constant(1, Sign::Plus).expect("one qubit"),
        })
        .collect();
    factors.push(Factor {
        qubits: peeled.qubits.complement(n),
        state: norm,
    });
    Some(SeparabilityReport {
        delta: k + 1,
        witness: Factorization::new(factors, peeled.sign.combine(rem_sign)),
        method: Method::Fast,
    })
}

/// Separable degree, preferring the closed-form dispatch and falling back to
/// the exhaustive search.
pub fn separable_degree(state: &Rews) -> Result<u32> {
    match separable_degree_fast(state) {
        Some(d) => Ok(d),
        None => Ok(separable_degree_brute(state)?.delta),
    }
}

/// Membership in S_k: whether the state splits into at least k blocks.
pub fn is_k_separable(state: &Rews, k: u32) -> Result<bool> {
    let n = state.n();
    if k == 0 || k > n {
        return Err(Error::KOutOfRange { k, limit: n, n });
    }
    Ok(separable_degree(state)? >= k)
}
