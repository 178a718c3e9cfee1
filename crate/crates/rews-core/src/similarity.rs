//! Common tensor factors between two states: k-identical parts and the
//! similar degree Γ.
//!
//! Matching is position-free: the shared factor may live on different qubit
//! subsets in the two states. Factors are compared after sign normalization,
//! with any minus signs pushed into the remainders, so e.g. |−⟩⊗|+⟩ and
//! |+⟩⊗|−⟩ share the 1-qubit part |−⟩.

use crate::error::{Error, Result};
use crate::qubits::QubitSet;
use crate::separability::bipartition_factor;
use crate::state::Rews;

/// A common k-qubit factor and where it sits in each state.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdenticalPart {
    /// Sign-normalized shared factor.
    pub factor: Rews,
    pub host_in_first: QubitSet,
    pub host_in_second: QubitSet,
}

/// Similar degree Γ with a witnessing part when 1 ≤ Γ ≤ n−1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimilarityReport {
    pub gamma: u32,
    pub part: Option<IdenticalPart>,
}

fn check_same_n(psi: &Rews, phi: &Rews) -> Result<u32> {
    if psi.n() != phi.n() {
        return Err(Error::DimensionMismatch {
            left: psi.n(),
            right: phi.n(),
        });
    }
    Ok(psi.n())
}

/// First k-qubit part shared by the two states, searching host-subset pairs
/// in ascending (first, second) mask order.
pub fn k_identical(psi: &Rews, phi: &Rews, k: u32) -> Result<Option<IdenticalPart>> {
    let n = check_same_n(psi, phi)?;
    if k == 0 || k >= n {
        return Err(Error::KOutOfRange { k, limit: n - 1, n });
    }
    // factorable subsets of the second state, computed once
    let phi_factors: Vec<(QubitSet, Rews)> = QubitSet::subsets_of_size(n, k)
        .filter_map(|t| {
            bipartition_factor(phi, t)
                .expect("proper subset")
                .map(|bp| (t, bp.on_set))
        })
        .collect();
    if phi_factors.is_empty() {
        return Ok(None);
    }
    for s in QubitSet::subsets_of_size(n, k) {
        let Some(bp) = bipartition_factor(psi, s).expect("proper subset") else {
            continue;
        };
        for (t, phi_factor) in &phi_factors {
            if bp.on_set == *phi_factor {
                return Ok(Some(IdenticalPart {
                    factor: bp.on_set,
                    host_in_first: s,
                    host_in_second: *t,
                }));
            }
        }
    }
    Ok(None)
}

/// Every k-qubit part the two states share, one entry per matching host
/// pair, in the same search order as [`k_identical`].
pub fn k_identical_parts(psi: &Rews, phi: &Rews, k: u32) -> Result<Vec<IdenticalPart>> {
    let n = check_same_n(psi, phi)?;
    if k == 0 || k >= n {
        return Err(Error::KOutOfRange { k, limit: n - 1, n });
    }
    let phi_factors: Vec<(QubitSet, Rews)> = QubitSet::subsets_of_size(n, k)
        .filter_map(|t| {
            bipartition_factor(phi, t)
                .expect("proper subset")
                .map(|bp| (t, bp.on_set))
        })
        .collect();
    let mut parts = Vec::new();
    if phi_factors.is_empty() {
        return Ok(parts);
    }
    for s in QubitSet::subsets_of_size(n, k) {
        let Some(bp) = bipartition_factor(psi, s).expect("proper subset") else {
            continue;
        };
        for (t, phi_factor) in &phi_factors {
            if bp.on_set == *phi_factor {
                parts.push(IdenticalPart {
                    factor: bp.on_set.clone(),
                    host_in_first: s,
                    host_in_second: *t,
                });
            }
        }
    }
    Ok(parts)
}

/// Similar degree: n for equal states (−ψ is a different state and is never
/// n-identical with ψ), otherwise the largest k with a shared k-qubit part.
pub fn similar_degree(psi: &Rews, phi: &Rews) -> Result<SimilarityReport> {
    let n = check_same_n(psi, phi)?;
    if psi == phi {
        return Ok(SimilarityReport {
            gamma: n,
            part: None,
        });
    }
    for k in (1..n).rev() {
        if let Some(part) = k_identical(psi, phi, k)? {
            return Ok(SimilarityReport {
                gamma: k,
                part: Some(part),
            });
        }
    }
    Ok(SimilarityReport {
        gamma: 0,
        part: None,
    })
}
