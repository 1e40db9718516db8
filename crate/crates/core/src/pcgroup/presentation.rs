use std::fmt;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An element of a polycyclically presented group, stored as its normal
/// form `g1^e1 g2^e2 ... gn^en` with `0 <= ei < ri`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GroupElement {
    exponents: Vec<u64>,
}

impl GroupElement {
    pub fn identity(n: usize) -> Self {
        GroupElement {
            exponents: vec![0; n],
        }
    }

    pub fn exponents(&self) -> &[u64] {
        &self.exponents
    }

    pub fn len(&self) -> usize {
        self.exponents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exponents.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.exponents.iter().all(|&e| e == 0)
    }

    /// Index of the first nonzero exponent (`len()` for the identity).
    pub fn depth(&self) -> usize {
        self.exponents
            .iter()
            .position(|&e| e != 0)
            .unwrap_or(self.exponents.len())
    }

    /// Exponent at [`depth`](Self::depth), or 0 for the identity.
    pub fn leading_exponent(&self) -> u64 {
        self.exponents.get(self.depth()).copied().unwrap_or(0)
    }

    /// The word `[(i, ei)]` over nonzero exponents.
    pub fn word(&self) -> Vec<(usize, i64)> {
        self.exponents
            .iter()
            .enumerate()
            .filter(|(_, &e)| e != 0)
            .map(|(i, &e)| (i, e as i64))
            .collect()
    }

    pub(crate) fn from_exponents(exponents: Vec<u64>) -> Self {
        GroupElement { exponents }
    }

    pub(crate) fn exponents_mut(&mut self) -> &mut Vec<u64> {
        &mut self.exponents
    }
}

/// A polycyclic presentation: generators `g1..gn` with relative orders `ri`,
/// power relations `gi^ri = w_ii` (a normal word in `g_{i+1}..gn`) and
/// conjugate relations `gj^gi = w_ij` for `i < j`. Omitted relations are
/// trivial: `gi^ri = 1` and `gj^gi = gj`.
#[derive(Clone, PartialEq, Eq)]
pub struct PcPresentation {
    names: Vec<String>,
    relative_orders: Vec<u64>,
    powers: Vec<Option<GroupElement>>,
    /// `conjugates[i][j]` for `i < j`; `None` means trivial.
    conjugates: Vec<Vec<Option<GroupElement>>>,
    /// Generators with index `>= central_from` are central and their power
    /// relations stay inside that block.
    central_from: usize,
    power_words: Vec<Vec<(usize, i64)>>,
    power_inverses: Vec<Vec<(usize, i64)>>,
    conjugate_words: Vec<Vec<Option<Word>>>,
}

/// Word as `(generator, exponent)` pairs.
type Word = Vec<(usize, i64)>;

impl PcPresentation {
    /// Builds a presentation from explicit data, validating the index rules.
    ///
    /// `powers[i]` and `conjugates` entries are exponent vectors of length `n`.
    pub fn new(
        names: Vec<String>,
        relative_orders: Vec<u64>,
        powers: Vec<Option<Vec<u64>>>,
        conjugates: Vec<((usize, usize), Vec<u64>)>,
    ) -> Result<Self> {
        let n = names.len();
        if relative_orders.len() != n || powers.len() != n {
            return Err(Error::Dimension {
                expected: n,
                actual: relative_orders.len().min(powers.len()),
            });
        }
        let mut b = PresentationBuilder::new(names, relative_orders)?;
        for (i, p) in powers.into_iter().enumerate() {
            if let Some(p) = p {
                b.set_power(i, p)?;
            }
        }
        for ((i, j), w) in conjugates {
            b.set_conjugate(i, j, w)?;
        }
        Ok(b.build())
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn relative_orders(&self) -> &[u64] {
        &self.relative_orders
    }

    pub fn relative_order(&self, i: usize) -> u64 {
        self.relative_orders[i]
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Right-hand side of `gi^ri`, `None` when trivial.
    pub fn power_relation(&self, i: usize) -> Option<&GroupElement> {
        self.powers[i].as_ref()
    }

    /// Right-hand side of `gj^gi` for `i < j`, `None` when trivial.
    pub fn conjugate_relation(&self, i: usize, j: usize) -> Option<&GroupElement> {
        assert!(i < j, "conjugate relations are stored for i < j");
        self.conjugates[i][j].as_ref()
    }

    pub(crate) fn central_from(&self) -> usize {
        self.central_from
    }

    pub(crate) fn power_word(&self, i: usize) -> &[(usize, i64)] {
        &self.power_words[i]
    }

    pub(crate) fn power_inverse_word(&self, i: usize) -> &[(usize, i64)] {
        &self.power_inverses[i]
    }

    pub(crate) fn conjugate_word(&self, i: usize, j: usize) -> Option<&[(usize, i64)]> {
        self.conjugate_words[i][j].as_deref()
    }

    /// Product of the relative orders (the group order when consistent).
    pub fn order(&self) -> BigUint {
        self.relative_orders.iter().map(|&r| BigUint::from(r)).product()
    }

    /// [`order`](Self::order) as a machine integer, `None` on overflow.
    pub fn order_u128(&self) -> Option<u128> {
        self.relative_orders
            .iter()
            .try_fold(1u128, |acc, &r| acc.checked_mul(r as u128))
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement::identity(self.len())
    }

    pub fn generator(&self, i: usize) -> GroupElement {
        let mut g = self.identity();
        g.exponents[i] = 1;
        g
    }

    pub fn generators(&self) -> Vec<GroupElement> {
        (0..self.len()).map(|i| self.generator(i)).collect()
    }

    /// Validates an exponent vector against the relative orders.
    pub fn element(&self, exponents: Vec<u64>) -> Result<GroupElement> {
        if exponents.len() != self.len() {
            return Err(Error::Dimension {
                expected: self.len(),
                actual: exponents.len(),
            });
        }
        if let Some(i) = (0..self.len()).find(|&i| exponents[i] >= self.relative_orders[i]) {
            return Err(Error::InvalidParameter(format!(
                "exponent {} of {} is not below its relative order {}",
                exponents[i], self.names[i], self.relative_orders[i]
            )));
        }
        Ok(GroupElement { exponents })
    }

    /// Formats an element as a word, `1` for the identity.
    pub fn format_element(&self, x: &GroupElement) -> String {
        format_word(&self.names, x)
    }

    /// True when all relations are trivial.
    pub fn all_relations_trivial(&self) -> bool {
        self.powers.iter().all(Option::is_none) && self.conjugates.iter().flatten().all(Option::is_none)
    }

    /// Serializes to the line-oriented presentation format.
    pub fn to_source(&self) -> String {
        let mut out = String::new();
        out.push_str("gens: ");
        out.push_str(&self.names.join(" "));
        out.push('\n');
        for (name, r) in self.names.iter().zip(&self.relative_orders) {
            out.push_str(&format!("order {name} {r}\n"));
        }
        for (i, p) in self.powers.iter().enumerate() {
            if let Some(p) = p {
                out.push_str(&format!("pow {} = {}\n", self.names[i], self.format_element(p)));
            }
        }
        for i in 0..self.len() {
            for j in i + 1..self.len() {
                if let Some(w) = &self.conjugates[i][j] {
                    out.push_str(&format!(
                        "conj {}^{} = {}\n",
                        self.names[j],
                        self.names[i],
                        self.format_element(w)
                    ));
                }
            }
        }
        out
    }
}

impl fmt::Debug for PcPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_source())
    }
}

pub(crate) fn format_word(names: &[String], x: &GroupElement) -> String {
    let parts: Vec<String> = x
        .exponents
        .iter()
        .enumerate()
        .filter(|(_, &e)| e != 0)
        .map(|(i, &e)| {
            if e == 1 {
                names[i].clone()
            } else {
                format!("{}^{}", names[i], e)
            }
        })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join(" ")
    }
}

/// Incremental construction with the index rules enforced on every relation.
pub(crate) struct PresentationBuilder {
    names: Vec<String>,
    relative_orders: Vec<u64>,
    powers: Vec<Option<GroupElement>>,
    conjugates: Vec<Vec<Option<GroupElement>>>,
}

impl PresentationBuilder {
    pub(crate) fn new(names: Vec<String>, relative_orders: Vec<u64>) -> Result<Self> {
        let n = names.len();
        if let Some(i) = relative_orders.iter().position(|&r| r < 2) {
            return Err(Error::InvalidParameter(format!(
                "relative order of {} must be at least 2",
                names[i]
            )));
        }
        Ok(PresentationBuilder {
            names,
            relative_orders,
            powers: vec![None; n],
            conjugates: vec![vec![None; n]; n],
        })
    }

    fn check_normal(&self, w: &[u64], min_index: usize, what: &str) -> Result<()> {
        if w.len() != self.names.len() {
            return Err(Error::Dimension {
                expected: self.names.len(),
                actual: w.len(),
            });
        }
        for (k, &e) in w.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if k < min_index {
                return Err(Error::InvalidParameter(format!(
                    "{what}: right-hand side mentions {} which is not permitted",
                    self.names[k]
                )));
            }
            if e >= self.relative_orders[k] {
                return Err(Error::InvalidParameter(format!(
                    "{what}: exponent {e} of {} is not below its relative order",
                    self.names[k]
                )));
            }
        }
        Ok(())
    }

    pub(crate) fn set_power(&mut self, i: usize, w: Vec<u64>) -> Result<()> {
        self.check_normal(&w, i + 1, &format!("power relation of {}", self.names[i]))?;
        self.powers[i] = (w.iter().any(|&e| e != 0)).then(|| GroupElement::from_exponents(w));
        Ok(())
    }

    /// Sets `gj^gi = w` for `i < j`; `w` may only involve generators of index `>= j`.
    pub(crate) fn set_conjugate(&mut self, i: usize, j: usize, w: Vec<u64>) -> Result<()> {
        if i >= j || j >= self.names.len() {
            return Err(Error::InvalidParameter(format!(
                "conjugate relation needs a lower-index conjugator (got {i}, {j})"
            )));
        }
        let what = format!("conjugate relation {}^{}", self.names[j], self.names[i]);
        self.check_normal(&w, j, &what)?;
        let mut trivial = vec![0u64; self.names.len()];
        trivial[j] = 1;
        self.conjugates[i][j] = (w != trivial).then(|| GroupElement::from_exponents(w));
        Ok(())
    }

    pub(crate) fn build(self) -> PcPresentation {
        let n = self.names.len();
        let is_central = |k: usize| -> bool {
            (0..k).all(|i| self.conjugates[i][k].is_none()) && (k + 1..n).all(|l| self.conjugates[k][l].is_none())
        };
        let mut central_from = n;
        while central_from > 0 {
            let k = central_from - 1;
            let closed = self.powers[k]
                .as_ref()
                .is_none_or(|w| w.exponents[..central_from].iter().all(|&e| e == 0));
            if is_central(k) && closed {
                central_from = k;
            } else {
                break;
            }
        }
        let power_words: Vec<Vec<(usize, i64)>> = self
            .powers
            .iter()
            .map(|p| p.as_ref().map_or_else(Vec::new, GroupElement::word))
            .collect();
        let power_inverses = power_words
            .iter()
            .map(|w| w.iter().rev().map(|&(g, e)| (g, -e)).collect())
            .collect();
        let conjugate_words = self
            .conjugates
            .iter()
            .map(|row| row.iter().map(|c| c.as_ref().map(GroupElement::word)).collect())
            .collect();
        PcPresentation {
            names: self.names,
            relative_orders: self.relative_orders,
            powers: self.powers,
            conjugates: self.conjugates,
            central_from,
            power_words,
            power_inverses,
            conjugate_words,
        }
    }
}
