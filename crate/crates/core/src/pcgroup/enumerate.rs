//! Element enumeration: conjugacy classes, centralizers, the center and
//! maximal abelian subgroups of groups small enough to list.

use std::collections::{HashMap, HashSet, VecDeque};

use num_traits::ToPrimitive;

use super::presentation::{GroupElement, PcPresentation};
use super::subgroup::{Sifter, Subgroup};
use crate::error::{Error, Result};

/// Default bound on the order of groups that are enumerated element by element.
pub const DEFAULT_MAX_ORDER: u128 = 10_000_000;

/// Environment variable overriding [`DEFAULT_MAX_ORDER`].
pub const MAX_ORDER_ENV: &str = "BMULT_MAX_ORDER";

/// The enumeration bound, honouring `BMULT_MAX_ORDER` when it is set to a
/// positive integer.
pub fn default_max_order() -> u128 {
    std::env::var(MAX_ORDER_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .filter(|&v: &u128| v > 0)
        .unwrap_or(DEFAULT_MAX_ORDER)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjugacyClass {
    /// The member with the smallest enumeration index.
    pub representative: GroupElement,
    pub size: u64,
}

/// A presentation whose elements can be listed, with mixed-radix indexing
/// (`e1` most significant, so index order is lexicographic order).
pub struct FiniteGroup<'a> {
    pres: &'a PcPresentation,
    order: usize,
    generator_inverses: Vec<GroupElement>,
}

impl<'a> FiniteGroup<'a> {
    pub fn new(pres: &'a PcPresentation, bound: u128) -> Result<Self> {
        let order = match pres.order_u128() {
            Some(o) if o <= bound => o,
            o => {
                return Err(Error::EnumerationBound {
                    order: o.unwrap_or(u128::MAX),
                    bound,
                })
            }
        };
        Ok(FiniteGroup {
            pres,
            order: order.to_usize().expect("enumeration bound exceeds address space"),
            generator_inverses: pres.generators().iter().map(|g| pres.inverse(g)).collect(),
        })
    }

    pub fn presentation(&self) -> &'a PcPresentation {
        self.pres
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn index_of(&self, x: &GroupElement) -> usize {
        x.exponents()
            .iter()
            .zip(self.pres.relative_orders())
            .fold(0usize, |acc, (&e, &r)| acc * r as usize + e as usize)
    }

    pub fn element_at(&self, mut index: usize) -> GroupElement {
        let rel = self.pres.relative_orders();
        let mut e = vec![0u64; rel.len()];
        for (slot, &r) in e.iter_mut().zip(rel).rev() {
            *slot = (index % r as usize) as u64;
            index /= r as usize;
        }
        self.pres.element(e).expect("index in range")
    }

    pub fn elements(&self) -> impl Iterator<Item = GroupElement> + '_ {
        (0..self.order).map(|i| self.element_at(i))
    }

    fn conjugate_by_generator(&self, x: &GroupElement, k: usize) -> GroupElement {
        let p = self.pres;
        let t = p.multiply(&self.generator_inverses[k], x);
        p.multiply(&t, &p.generator(k))
    }

    /// Conjugacy classes in order of their representatives' indices.
    pub fn conjugacy_classes(&self) -> Vec<ConjugacyClass> {
        let n = self.pres.len();
        let mut seen = vec![false; self.order];
        let mut classes = Vec::new();
        let mut queue = VecDeque::new();
        for start in 0..self.order {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let rep = self.element_at(start);
            queue.push_back(rep.clone());
            let mut size = 0u64;
            while let Some(x) = queue.pop_front() {
                size += 1;
                for k in 0..n {
                    let y = self.conjugate_by_generator(&x, k);
                    let iy = self.index_of(&y);
                    if !seen[iy] {
                        seen[iy] = true;
                        queue.push_back(y);
                    }
                }
            }
            classes.push(ConjugacyClass {
                representative: rep,
                size,
            });
        }
        classes
    }

    pub fn conjugacy_class_reps(&self) -> Vec<GroupElement> {
        self.conjugacy_classes().into_iter().map(|c| c.representative).collect()
    }

    /// `C_G(x)`, generated by Schreier generators of the conjugation orbit.
    pub fn centralizer(&self, x: &GroupElement) -> Subgroup {
        let p = self.pres;
        let n = p.len();
        // orbit point index -> transversal t with x^t = point
        let mut transversal: HashMap<usize, GroupElement> = HashMap::new();
        let mut order: Vec<(usize, GroupElement)> = Vec::new();
        transversal.insert(self.index_of(x), p.identity());
        order.push((self.index_of(x), x.clone()));
        let mut head = 0;
        while head < order.len() {
            let (ia, a) = order[head].clone();
            head += 1;
            for k in 0..n {
                let b = self.conjugate_by_generator(&a, k);
                let ib = self.index_of(&b);
                if !transversal.contains_key(&ib) {
                    let t = p.multiply(&transversal[&ia], &p.generator(k));
                    transversal.insert(ib, t);
                    order.push((ib, b));
                }
            }
        }
        let target = self.order / order.len();
        let mut sifter = Sifter::new(p);
        sifter.add(x.clone());
        sifter.close(&[]);
        let subgroup_order = |s: &Sifter<'_>| -> usize {
            Subgroup::from_table_order(p, s).to_usize().unwrap_or(usize::MAX)
        };
        'outer: for (ia, a) in &order {
            for k in 0..n {
                if subgroup_order(&sifter) == target {
                    break 'outer;
                }
                let b = self.conjugate_by_generator(a, k);
                let tb = &transversal[&self.index_of(&b)];
                let s = p.multiply(&p.multiply(&transversal[ia], &p.generator(k)), &p.inverse(tb));
                debug_assert!(p.commute(&s, x));
                if sifter.add(s) {
                    sifter.close(&[]);
                }
            }
        }
        let c = Subgroup::from_sifter(p, vec![x.clone()], &sifter);
        debug_assert_eq!(c.order().to_usize(), Some(target));
        c
    }

    /// The center, generated by the singleton classes.
    pub fn center(&self) -> Subgroup {
        let gens: Vec<GroupElement> = self
            .conjugacy_classes()
            .into_iter()
            .filter(|c| c.size == 1)
            .map(|c| c.representative)
            .collect();
        Subgroup::generated_by(self.pres, &gens)
    }

    /// All maximal abelian subgroups, sorted by their canonical pcgs.
    ///
    /// Every maximal abelian subgroup contains the center, so a depth-first
    /// search over abelian subgroups `A >= Z(G)`, extending by elements of
    /// `C_G(A) \ A`, reaches each of them; the self-centralizing ones are
    /// exactly the maximal ones.
    pub fn maximal_abelian_subgroups(&self) -> Vec<Subgroup> {
        let p = self.pres;
        let center = self.center();
        let all: Vec<GroupElement> = self.elements().collect();
        let mut visited: HashSet<Vec<GroupElement>> = HashSet::new();
        let mut found: Vec<Subgroup> = Vec::new();
        let mut stack: Vec<(Subgroup, Vec<GroupElement>)> = Vec::new();
        visited.insert(center.pcgs().to_vec());
        let c0: Vec<GroupElement> = all
            .into_iter()
            .filter(|y| center.pcgs().iter().all(|a| p.commute(a, y)))
            .collect();
        stack.push((center, c0));
        while let Some((a, ca)) = stack.pop() {
            if num_bigint::BigUint::from(ca.len()) == *a.order() {
                found.push(a);
                continue;
            }
            for y in &ca {
                if a.contains(p, y) {
                    continue;
                }
                let child = a.join(p, std::slice::from_ref(y));
                if !visited.insert(child.pcgs().to_vec()) {
                    continue;
                }
                let cchild: Vec<GroupElement> = ca.iter().filter(|z| p.commute(y, z)).cloned().collect();
                stack.push((child, cchild));
            }
        }
        found.sort_by(|a, b| a.pcgs().cmp(b.pcgs()));
        found
    }
}
