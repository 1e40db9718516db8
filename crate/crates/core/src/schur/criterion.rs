//! A presentation-level sufficient condition for a trivial Bogomolov
//! multiplier: class at most 3, `p > 3`, and every nontrivial commutator of
//! pcgs elements is a distinct absolute pcgs element.

use num_bigint::BigUint;
use serde::Serialize;

use super::extension::order_primes;
use crate::pcgroup::PcPresentation;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CommutatorWitness {
    /// `[g_i, g_j]` with `i > j`.
    pub i: usize,
    pub j: usize,
    /// The commutator as a word.
    pub value: String,
    /// Index of the pcgs element it equals, if it is a single generator.
    pub generator: Option<usize>,
    /// Whether that generator's order equals its relative order.
    pub absolute: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CriterionReport {
    pub applies: bool,
    pub witnesses: Vec<CommutatorWitness>,
    pub reason: Option<String>,
}

pub fn criterion_class3(pres: &PcPresentation) -> CriterionReport {
    let n = pres.len();
    let gens = pres.generators();
    let mut witnesses = Vec::new();
    for i in 0..n {
        for j in 0..i {
            let c = pres.commutator(&gens[i], &gens[j]);
            if c.is_identity() {
                continue;
            }
            let word = c.word();
            let generator = match word.as_slice() {
                [(k, 1)] => Some(*k),
                _ => None,
            };
            let absolute = generator.is_some_and(|k| pres.element_order(&gens[k]) == BigUint::from(pres.relative_order(k)));
            witnesses.push(CommutatorWitness {
                i,
                j,
                value: pres.format_element(&c),
                generator,
                absolute,
            });
        }
    }
    let fail = |reason: String, witnesses| CriterionReport {
        applies: false,
        witnesses,
        reason: Some(reason),
    };
    if witnesses.is_empty() {
        return CriterionReport {
            applies: true,
            witnesses,
            reason: None,
        };
    }
    let primes = order_primes(pres);
    if primes.len() != 1 {
        return fail("not a p-group".into(), witnesses);
    }
    if primes[0] <= 3 {
        return fail(format!("p = {} is not greater than 3", primes[0]), witnesses);
    }
    match pres.nilpotency_class() {
        Some(c) if c <= 3 => {}
        Some(c) => return fail(format!("nilpotency class {c} exceeds 3"), witnesses),
        None => return fail("not nilpotent".into(), witnesses),
    }
    if let Some(w) = witnesses.iter().find(|w| w.generator.is_none()) {
        let names = pres.names();
        return fail(
            format!("[{}, {}] = {} is not a single pcgs element", names[w.i], names[w.j], w.value),
            witnesses,
        );
    }
    if let Some(w) = witnesses.iter().find(|w| !w.absolute) {
        return fail(format!("{} is not absolute", w.value), witnesses);
    }
    let mut seen = std::collections::HashSet::new();
    if let Some(w) = witnesses.iter().find(|w| !seen.insert(w.generator)) {
        return fail(format!("{} occurs as more than one commutator", w.value), witnesses);
    }
    CriterionReport {
        applies: true,
        witnesses,
        reason: None,
    }
}
