//! `G ^ G` realised as the derived subgroup of the covering extension, the
//! map onto `[G, G]`, and the subgroups `M*` and `M0*`.

use std::collections::BTreeSet;

use num_bigint::{BigInt, BigUint};

use super::extension::{build_covering_extension, CoveringExtension};
use crate::arith::{section_invariants, subgroup_invariants, to_bigint_vec, AbelianInvariants};
use crate::error::{Error, Result};
use crate::pcgroup::{FiniteGroup, GroupElement, PcPresentation, Subgroup};

#[derive(Clone, Debug)]
pub struct ExteriorSquare {
    extension: CoveringExtension,
    /// `((i, j), [g~i, g~j])` for `i > j`.
    commutator_generators: Vec<((usize, usize), GroupElement)>,
    derived: Subgroup,
    base_derived: Subgroup,
    m_star: Subgroup,
    multiplier: AbelianInvariants,
}

/// Computes `G ^ G` with tail exponent `L` and checks exactness:
/// `|G ^ G| = |[G, G]| * |M*|` and the projection is onto `[G, G]`.
pub fn exterior_square(pres: &PcPresentation, tail_exponent: u32) -> Result<ExteriorSquare> {
    ExteriorSquare::new(build_covering_extension(pres, tail_exponent)?)
}

impl ExteriorSquare {
    pub fn new(extension: CoveringExtension) -> Result<Self> {
        let lifted = extension.lifted();
        let base = extension.base();
        let n = base.len();
        let gens = lifted.generators();
        let mut commutator_generators = Vec::new();
        for i in 0..n {
            for j in 0..i {
                commutator_generators.push(((i, j), lifted.commutator(&gens[i], &gens[j])));
            }
        }
        let tij: Vec<GroupElement> = commutator_generators.iter().map(|(_, t)| t.clone()).collect();
        let derived = Subgroup::generated_by(lifted, &tij);
        let closure = Subgroup::normal_closure(lifted, &tij);
        if closure.pcgs() != derived.pcgs() {
            return Err(Error::Verification(
                "the commutators of lifted generators do not generate a normal subgroup".into(),
            ));
        }

        let base_derived = base.derived_subgroup();
        let m_star_pcgs: Vec<GroupElement> = derived.pcgs().iter().filter(|b| b.depth() >= n).cloned().collect();
        let m_star = Subgroup::generated_by(lifted, &m_star_pcgs);
        let images: Vec<GroupElement> = derived.pcgs().iter().map(|b| extension.project(b)).collect();
        let image = Subgroup::generated_by(base, &images);
        if image.pcgs() != base_derived.pcgs() {
            return Err(Error::Verification("the commutator map is not onto [G, G]".into()));
        }
        if *derived.order() != base_derived.order() * m_star.order() {
            return Err(Error::Verification(format!(
                "exactness fails: |G ^ G| = {} but |[G, G]| * |M*| = {} * {}",
                derived.order(),
                base_derived.order(),
                m_star.order()
            )));
        }
        for b in m_star.pcgs() {
            if !gens.iter().all(|g| lifted.commute(b, g)) {
                return Err(Error::Verification("M* is not central".into()));
            }
        }
        let vectors: Vec<Vec<BigInt>> = m_star.pcgs().iter().map(|b| to_bigint_vec(&extension.tail_vector(b))).collect();
        let multiplier = subgroup_invariants(&extension.tail_relations(), &vectors)?;
        Ok(ExteriorSquare {
            extension,
            commutator_generators,
            derived,
            base_derived,
            m_star,
            multiplier,
        })
    }

    pub fn extension(&self) -> &CoveringExtension {
        &self.extension
    }

    /// `t_ij = [g~i, g~j]` for `i > j`, the images of `gi ^ gj`.
    pub fn commutator_generators(&self) -> &[((usize, usize), GroupElement)] {
        &self.commutator_generators
    }

    /// `G ^ G` as a subgroup of `G~`.
    pub fn derived(&self) -> &Subgroup {
        &self.derived
    }

    pub fn order(&self) -> &BigUint {
        self.derived.order()
    }

    /// `[G, G]` in the base group.
    pub fn base_derived(&self) -> &Subgroup {
        &self.base_derived
    }

    /// `kappa*`: `G ^ G -> [G, G]`, the projection dropping the tails.
    pub fn kappa_star(&self, x: &GroupElement) -> GroupElement {
        self.extension.project(x)
    }

    /// `M* = ker kappa*`, inside the tails.
    pub fn m_star(&self) -> &Subgroup {
        &self.m_star
    }

    pub fn m_star_vectors(&self) -> Vec<Vec<u64>> {
        self.m_star.pcgs().iter().map(|b| self.extension.tail_vector(b)).collect()
    }

    /// Invariants of `M(G) = M*`.
    pub fn multiplier(&self) -> &AbelianInvariants {
        &self.multiplier
    }

    /// `[x~, y~]` for lifts of `x, y` in `G`.
    pub fn lifted_commutator(&self, x: &GroupElement, y: &GroupElement) -> GroupElement {
        let e = &self.extension;
        e.lifted().commutator(&e.lift_element(x), &e.lift_element(y))
    }

    /// `M0*` from commuting pairs `(x, y)` of the base group.
    pub fn m0_from_pairs(&self, pairs: &[(GroupElement, GroupElement)]) -> Result<Subgroup> {
        let lifted = self.extension.lifted();
        let mut comms = BTreeSet::new();
        for (x, y) in pairs {
            let c = self.lifted_commutator(x, y);
            if !self.extension.in_tails(&c) || !self.m_star.contains(lifted, &c) {
                return Err(Error::Verification(format!(
                    "commutator of commuting lifts {} and {} is not in M*",
                    self.extension.base().format_element(x),
                    self.extension.base().format_element(y)
                )));
            }
            if !c.is_identity() {
                comms.insert(c);
            }
        }
        let comms: Vec<GroupElement> = comms.into_iter().collect();
        Ok(Subgroup::generated_by(lifted, &comms))
    }

    /// Invariants of `M* / M0*`.
    pub fn bogomolov_from(&self, m0: &Subgroup) -> Result<AbelianInvariants> {
        let upper: Vec<Vec<BigInt>> = self.m_star_vectors().iter().map(|v| to_bigint_vec(v)).collect();
        let lower: Vec<Vec<BigInt>> = m0
            .pcgs()
            .iter()
            .map(|b| to_bigint_vec(&self.extension.tail_vector(b)))
            .collect();
        section_invariants(&self.extension.tail_relations(), &upper, &lower)
    }
}

/// Pairs `(x, y)` with `x` a class representative and `y` running over the
/// pcgs of `C_G(x)`. For fixed `x` the map `y -> [x~, y~]` is a homomorphism
/// from `C_G(x)` into the central tails, and conjugation fixes every element
/// of `M*`, so these pairs span the same subgroup as all commuting pairs.
pub fn commuting_pairs(group: &FiniteGroup<'_>) -> Vec<(GroupElement, GroupElement)> {
    let mut pairs = Vec::new();
    for rep in group.conjugacy_class_reps() {
        let c = group.centralizer(&rep);
        for y in c.pcgs() {
            pairs.push((rep.clone(), y.clone()));
        }
    }
    pairs
}

/// `M0*` for the exterior square, enumerating `G` within `bound`.
pub fn m0_subgroup(ext: &ExteriorSquare, bound: u128) -> Result<Subgroup> {
    let group = FiniteGroup::new(ext.extension().base(), bound)?;
    ext.m0_from_pairs(&commuting_pairs(&group))
}
