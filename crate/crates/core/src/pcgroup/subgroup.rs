//! Subgroups represented by canonical induced polycyclic generating sequences.

use num_bigint::BigUint;
use num_integer::Integer;

use super::presentation::{GroupElement, PcPresentation};

/// A subgroup given by generators and its canonical induced pcgs.
///
/// The induced pcgs has at most one element per depth; the element at depth
/// `d` has a leading exponent dividing `r_d`, and its exponents at deeper
/// depths occupied by other pcgs elements are reduced below their leading
/// exponents. This makes the pcgs a canonical description of the subgroup.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subgroup {
    generators: Vec<GroupElement>,
    pcgs: Vec<GroupElement>,
    order: BigUint,
}

fn inverse_mod(a: u64, m: u64) -> u64 {
    let e = (a as i128).extended_gcd(&(m as i128));
    debug_assert_eq!(e.gcd, 1);
    e.x.rem_euclid(m as i128) as u64
}

/// Incremental induced-pcgs construction by sifting.
pub(crate) struct Sifter<'a> {
    pres: &'a PcPresentation,
    table: Vec<Option<GroupElement>>,
}

impl<'a> Sifter<'a> {
    pub(crate) fn new(pres: &'a PcPresentation) -> Self {
        Sifter {
            pres,
            table: vec![None; pres.len()],
        }
    }

    /// Residue of `x` after dividing out the current table; identity iff
    /// `x` lies in the group generated by the table entries (once closed).
    pub(crate) fn residue(&self, x: &GroupElement) -> GroupElement {
        let pres = self.pres;
        let mut x = x.clone();
        loop {
            let d = x.depth();
            if d == pres.len() {
                return x;
            }
            let Some(b) = &self.table[d] else { return x };
            let (e, lb) = (x.exponents()[d], b.exponents()[d]);
            if e % lb != 0 {
                return x;
            }
            let inv = pres.inverse(&pres.power(b, e / lb));
            x = pres.multiply(&x, &inv);
        }
    }

    /// Adds `x` to the generated group; returns whether the table changed.
    pub(crate) fn add(&mut self, x: GroupElement) -> bool {
        let pres = self.pres;
        let mut changed = false;
        let mut work = vec![x];
        while let Some(x) = work.pop() {
            let x = self.residue(&x);
            let d = x.depth();
            if d == pres.len() {
                continue;
            }
            let r = pres.relative_order(d);
            let e = x.exponents()[d];
            match self.table[d].take() {
                None => {
                    let g = e.gcd(&r);
                    if g == e {
                        self.table[d] = Some(x);
                    } else {
                        let u = inverse_mod(e / g, r / g);
                        let y = pres.power(&x, u);
                        self.table[d] = Some(y);
                        work.push(x);
                    }
                }
                Some(b) => {
                    // e is not a multiple of the leading exponent of b.
                    let lb = b.exponents()[d];
                    let eg = (lb as i128).extended_gcd(&(e as i128));
                    let u = eg.x.rem_euclid(r as i128) as u64;
                    let v = eg.y.rem_euclid(r as i128) as u64;
                    let c = pres.multiply(&pres.power(&b, u), &pres.power(&x, v));
                    debug_assert_eq!(c.exponents()[d], eg.gcd as u64 % r);
                    self.table[d] = Some(c);
                    work.push(b);
                    work.push(x);
                }
            }
            changed = true;
        }
        changed
    }

    fn entries(&self) -> Vec<GroupElement> {
        self.table.iter().flatten().cloned().collect()
    }

    /// Closes the table under powers, commutators, and conjugation by
    /// `conjugators`.
    pub(crate) fn close(&mut self, conjugators: &[GroupElement]) {
        let pres = self.pres;
        loop {
            let mut changed = false;
            let elems = self.entries();
            for b in &elems {
                let d = b.depth();
                let s = pres.relative_order(d) / b.exponents()[d];
                changed |= self.add(pres.power(b, s));
            }
            for (j, bj) in elems.iter().enumerate() {
                for bi in &elems[..j] {
                    changed |= self.add(pres.commutator(bj, bi));
                }
                for g in conjugators {
                    changed |= self.add(pres.conjugate(bj, g));
                }
            }
            if !changed {
                return;
            }
        }
    }

    /// Canonical pcgs: exponents at occupied deeper depths are reduced.
    pub(crate) fn canonical(&self) -> Vec<GroupElement> {
        let pres = self.pres;
        let n = pres.len();
        let mut table = self.table.clone();
        for d in (0..n).rev() {
            let Some(mut b) = table[d].take() else { continue };
            for (d2, slot) in table.iter().enumerate().skip(d + 1) {
                let Some(c) = slot else { continue };
                let lc = c.exponents()[d2];
                let k = b.exponents()[d2] / lc;
                if k > 0 {
                    b = pres.multiply(&b, &pres.inverse(&pres.power(c, k)));
                }
            }
            table[d] = Some(b);
        }
        table.into_iter().flatten().collect()
    }
}

impl Subgroup {
    pub fn trivial(pres: &PcPresentation) -> Self {
        Self::generated_by(pres, &[])
    }

    pub fn whole(pres: &PcPresentation) -> Self {
        Self::generated_by(pres, &pres.generators())
    }

    pub fn generated_by(pres: &PcPresentation, generators: &[GroupElement]) -> Self {
        Self::build(pres, generators, &[])
    }

    /// Smallest subgroup containing `generators` and normalised by `conjugators`.
    pub fn closure_under(pres: &PcPresentation, generators: &[GroupElement], conjugators: &[GroupElement]) -> Self {
        Self::build(pres, generators, conjugators)
    }

    /// Normal closure of `generators` in the whole group.
    pub fn normal_closure(pres: &PcPresentation, generators: &[GroupElement]) -> Self {
        Self::build(pres, generators, &pres.generators())
    }

    fn build(pres: &PcPresentation, generators: &[GroupElement], conjugators: &[GroupElement]) -> Self {
        let mut s = Sifter::new(pres);
        for g in generators {
            s.add(g.clone());
        }
        s.close(conjugators);
        let pcgs = s.canonical();
        Self::from_pcgs(pres, generators.to_vec(), pcgs)
    }

    fn from_pcgs(pres: &PcPresentation, generators: Vec<GroupElement>, pcgs: Vec<GroupElement>) -> Self {
        let order = pcgs
            .iter()
            .map(|b| {
                let d = b.depth();
                BigUint::from(pres.relative_order(d) / b.exponents()[d])
            })
            .product();
        Subgroup {
            generators,
            pcgs,
            order,
        }
    }

    pub(crate) fn from_sifter(pres: &PcPresentation, generators: Vec<GroupElement>, s: &Sifter<'_>) -> Self {
        Self::from_pcgs(pres, generators, s.canonical())
    }

    /// Order of the group generated by a closed sifter table.
    pub(crate) fn from_table_order(pres: &PcPresentation, s: &Sifter<'_>) -> BigUint {
        s.table
            .iter()
            .enumerate()
            .filter_map(|(d, b)| b.as_ref().map(|b| BigUint::from(pres.relative_order(d) / b.exponents()[d])))
            .product()
    }

    /// The subgroup generated by `self` and `extra`.
    pub fn join(&self, pres: &PcPresentation, extra: &[GroupElement]) -> Self {
        let mut s = Sifter::new(pres);
        for b in &self.pcgs {
            s.table[b.depth()] = Some(b.clone());
        }
        for x in extra {
            s.add(x.clone());
        }
        s.close(&[]);
        let mut gens = self.generators.clone();
        gens.extend_from_slice(extra);
        Self::from_pcgs(pres, gens, s.canonical())
    }

    pub fn generators(&self) -> &[GroupElement] {
        &self.generators
    }

    /// The canonical induced pcgs, ordered by depth.
    pub fn pcgs(&self) -> &[GroupElement] {
        &self.pcgs
    }

    pub fn order(&self) -> &BigUint {
        &self.order
    }

    pub fn is_trivial(&self) -> bool {
        self.pcgs.is_empty()
    }

    pub fn contains(&self, pres: &PcPresentation, x: &GroupElement) -> bool {
        let mut s = Sifter::new(pres);
        for b in &self.pcgs {
            s.table[b.depth()] = Some(b.clone());
        }
        s.residue(x).is_identity()
    }

    pub fn is_subgroup_of(&self, pres: &PcPresentation, other: &Subgroup) -> bool {
        self.pcgs.iter().all(|b| other.contains(pres, b))
    }

    pub fn is_abelian(&self, pres: &PcPresentation) -> bool {
        self.pcgs
            .iter()
            .enumerate()
            .all(|(j, a)| self.pcgs[..j].iter().all(|b| pres.commute(a, b)))
    }

    /// Relative orders of the pcgs: `r_d / lead_d` for each element.
    pub fn pcgs_relative_orders(&self, pres: &PcPresentation) -> Vec<u64> {
        self.pcgs
            .iter()
            .map(|b| {
                let d = b.depth();
                pres.relative_order(d) / b.exponents()[d]
            })
            .collect()
    }

    /// All elements, as normal words in the pcgs. Panics if the order does
    /// not fit in memory; callers check bounds first.
    pub fn elements(&self, pres: &PcPresentation) -> Vec<GroupElement> {
        let orders = self.pcgs_relative_orders(pres);
        let mut out = vec![pres.identity()];
        for (b, &s) in self.pcgs.iter().zip(&orders).rev() {
            let mut next = Vec::with_capacity(out.len() * s as usize);
            let mut power = pres.identity();
            for _ in 0..s {
                for y in &out {
                    next.push(pres.multiply(&power, y));
                }
                power = pres.multiply(&power, b);
            }
            out = next;
        }
        out
    }
}
