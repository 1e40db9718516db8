//! Schur and Bogomolov multipliers through the nonabelian exterior square.
//!
//! `G ^ G` is realised as the derived subgroup of a covering extension `G~`
//! built by the tails method. `M(G)` is the kernel `M*` of the commutator map
//! `G ^ G -> [G, G]`, `M0*` is spanned by the images of commuting pairs, and
//! `B0(G) = M* / M0*`.

mod criterion;
mod extension;
mod exterior;
mod verify;

use num_bigint::BigUint;
use serde::Serialize;

pub use criterion::{criterion_class3, CommutatorWitness, CriterionReport};
pub use extension::{
    build_covering_extension, default_tail_exponent, order_primes, CoveringExtension, Relation, MAX_TAIL_MODULUS,
};
pub use exterior::{commuting_pairs, exterior_square, m0_subgroup, ExteriorSquare};
pub use verify::{verify_power_expansions, verify_tau_identities, VerificationReport};

use crate::arith::AbelianInvariants;
use crate::error::{Error, Result};
use crate::pcgroup::{default_max_order, FiniteGroup, GroupElement, PcPresentation};

#[derive(Clone, Debug)]
pub struct EngineOptions {
    /// Tail exponent `L`; `None` selects [`default_tail_exponent`].
    pub tail_exponent: Option<u32>,
    /// Recompute with `L + 1` and require identical invariants.
    pub stability_check: bool,
    /// Enumeration bound for the commuting-pair search.
    pub max_order: u128,
}

impl Default for EngineOptions {
    fn default() -> Self {
        EngineOptions {
            tail_exponent: None,
            stability_check: true,
            max_order: default_max_order(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EngineResult {
    pub multiplier: AbelianInvariants,
    /// `None` when only the multiplier was requested.
    pub bogomolov: Option<AbelianInvariants>,
    pub tail_exponent: u32,
    /// `Some(true)` once the `L + 1` recomputation agreed; `None` if skipped.
    pub stable: Option<bool>,
    #[serde(serialize_with = "crate::serialize_biguint")]
    pub exterior_square_order: BigUint,
    #[serde(serialize_with = "crate::serialize_biguint")]
    pub derived_order: BigUint,
}

fn run_once(
    pres: &PcPresentation,
    tail_exponent: u32,
    pairs: Option<&[(GroupElement, GroupElement)]>,
) -> Result<(ExteriorSquare, Option<AbelianInvariants>)> {
    let ext = exterior_square(pres, tail_exponent)?;
    let b0 = match pairs {
        Some(pairs) => {
            let m0 = ext.m0_from_pairs(pairs)?;
            Some(ext.bogomolov_from(&m0)?)
        }
        None => None,
    };
    Ok((ext, b0))
}

/// Computes `M(G)` and optionally `B0(G)`, with the tail-exponent stability
/// check unless disabled.
pub fn compute(pres: &PcPresentation, options: &EngineOptions, with_bogomolov: bool) -> Result<EngineResult> {
    let report = pres.check_consistency();
    if !report.is_consistent() {
        return Err(Error::Inconsistent {
            failures: report.failures.into_iter().map(|f| f.overlap).collect(),
        });
    }
    let l = options.tail_exponent.unwrap_or_else(|| default_tail_exponent(pres));
    let pairs = if with_bogomolov {
        let group = FiniteGroup::new(pres, options.max_order)?;
        Some(commuting_pairs(&group))
    } else {
        None
    };
    let (ext, b0) = run_once(pres, l, pairs.as_deref())?;
    let mut stable = None;
    if options.stability_check {
        let (ext2, b02) = run_once(pres, l + 1, pairs.as_deref())?;
        if ext2.multiplier() != ext.multiplier() || b02 != b0 {
            return Err(Error::UnstableTailExponent { exponent: l });
        }
        stable = Some(true);
    }
    Ok(EngineResult {
        multiplier: ext.multiplier().clone(),
        bogomolov: b0,
        tail_exponent: l,
        stable,
        exterior_square_order: ext.order().clone(),
        derived_order: ext.base_derived().order().clone(),
    })
}

/// Invariants of `M(G)` with default options.
pub fn schur_multiplier(pres: &PcPresentation) -> Result<AbelianInvariants> {
    compute(pres, &EngineOptions::default(), false).map(|r| r.multiplier)
}

/// Invariants of `B0(G) = M* / M0*` with default options.
pub fn bogomolov_multiplier(pres: &PcPresentation) -> Result<AbelianInvariants> {
    compute(pres, &EngineOptions::default(), true).map(|r| r.bogomolov.expect("requested"))
}

#[cfg(test)]
mod tests;
