//! The covering central extension obtained by adding one central tail per
//! defining relation and imposing the consistency conditions.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::arith::{smith_decomposition, AbelianInvariants, IntMatrix};
use crate::error::{Error, Result};
use crate::pcgroup::{GroupElement, PcPresentation, PresentationBuilder};

/// Largest tail modulus accepted; keeps exponent arithmetic inside `u64`.
pub const MAX_TAIL_MODULUS: u64 = 1 << 40;

/// A defining relation of a pc presentation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    /// `gi^ri = w`
    Power(usize),
    /// `gj^gi = w` with `i < j`
    Conjugate(usize, usize),
}

/// `G~`: a consistent central extension of `G` by the tail module `T`,
/// generated by the images of one tail per relation modulo the consistency
/// relations and the working exponent.
#[derive(Clone, Debug)]
pub struct CoveringExtension {
    base: PcPresentation,
    lifted: PcPresentation,
    tail_exponent: u32,
    modulus: u64,
    relations: Vec<Relation>,
    tail_orders: Vec<u64>,
    relation_tails: Vec<Vec<u64>>,
}

/// Distinct primes dividing the group order, ascending.
pub fn order_primes(pres: &PcPresentation) -> Vec<u64> {
    let mut primes = Vec::new();
    for &r in pres.relative_orders() {
        let mut m = r;
        let mut d = 2;
        while d * d <= m {
            if m % d == 0 {
                primes.push(d);
                while m % d == 0 {
                    m /= d;
                }
            }
            d += 1;
        }
        if m > 1 {
            primes.push(m);
        }
    }
    primes.sort_unstable();
    primes.dedup();
    primes
}

/// Twice the largest exponent of a prime in `|G|`; for a `p`-group of order
/// `p^k` this is `2k`, making the tail modulus `|G|^2`.
pub fn default_tail_exponent(pres: &PcPresentation) -> u32 {
    let order = pres.order();
    order_primes(pres)
        .into_iter()
        .map(|p| {
            let mut k = 0;
            let mut m = order.clone();
            let p = BigUint::from(p);
            while (&m % &p).is_zero() {
                m /= &p;
                k += 1;
            }
            k
        })
        .max()
        .map_or(1, |k: u32| 2 * k)
}

fn tail_modulus(pres: &PcPresentation, tail_exponent: u32) -> Result<u64> {
    let rad: u64 = order_primes(pres).iter().product();
    let q = (rad as u128).checked_pow(tail_exponent);
    match q {
        Some(q) if q <= MAX_TAIL_MODULUS as u128 => Ok(q as u64),
        _ => Err(Error::InvalidParameter(format!(
            "tail modulus {rad}^{tail_exponent} exceeds {MAX_TAIL_MODULUS}; use a smaller tail exponent"
        ))),
    }
}

fn relation_list(n: usize) -> Vec<Relation> {
    let mut rels: Vec<Relation> = (0..n).map(Relation::Power).collect();
    for i in 0..n {
        for j in i + 1..n {
            rels.push(Relation::Conjugate(i, j));
        }
    }
    rels
}

/// Builds `G~` with tails taken in `(Z/q)^m` where `q = rad(|G|)^L`.
pub fn build_covering_extension(pres: &PcPresentation, tail_exponent: u32) -> Result<CoveringExtension> {
    if tail_exponent == 0 {
        return Err(Error::InvalidParameter("tail exponent must be at least 1".into()));
    }
    let report = pres.check_consistency();
    if !report.is_consistent() {
        return Err(Error::Inconsistent {
            failures: report.failures.into_iter().map(|f| f.overlap).collect(),
        });
    }
    let n = pres.len();
    let relations = relation_list(n);
    let m = relations.len();
    if n == 0 {
        return Ok(CoveringExtension {
            base: pres.clone(),
            lifted: pres.clone(),
            tail_exponent,
            modulus: 1,
            relations,
            tail_orders: vec![],
            relation_tails: vec![],
        });
    }
    let q = tail_modulus(pres, tail_exponent)?;

    // Free tails: every relation gets its own generator of order q.
    let free_tails: Vec<Vec<u64>> = (0..m)
        .map(|r| {
            let mut v = vec![0; m];
            v[r] = 1;
            v
        })
        .collect();
    let free = lift(pres, &relations, &vec![q; m], &free_tails)?;

    let mut columns: Vec<Vec<BigInt>> = Vec::new();
    for ev in free.overlap_evaluations() {
        let (l, r) = (ev.left.exponents(), ev.right.exponents());
        if l[..n] != r[..n] {
            return Err(Error::Verification(format!(
                "overlap {} differs outside the tails although the base is consistent",
                ev.label
            )));
        }
        let diff: Vec<BigInt> = (n..n + m)
            .map(|k| BigInt::from((l[k] as i128 - r[k] as i128).rem_euclid(q as i128)))
            .collect();
        if diff.iter().any(|x| !x.is_zero()) {
            columns.push(diff);
        }
    }
    for k in 0..m {
        let mut c = vec![BigInt::zero(); m];
        c[k] = BigInt::from(q);
        columns.push(c);
    }
    let d = IntMatrix::from_columns(m, &columns);
    let snf = smith_decomposition(&d);
    let diag = snf.diagonal();

    // New coordinates x -> U x; keep the nontrivial factors.
    let kept: Vec<(usize, u64)> = diag
        .iter()
        .enumerate()
        .filter_map(|(k, s)| {
            let s = s.to_u64().expect("tail factor divides the modulus");
            (s > 1).then_some((k, s))
        })
        .collect();
    let tail_orders: Vec<u64> = kept.iter().map(|&(_, s)| s).collect();
    let relation_tails: Vec<Vec<u64>> = (0..m)
        .map(|r| {
            kept.iter()
                .map(|&(k, s)| {
                    let u = &snf.u[(k, r)];
                    u.mod_floor(&BigInt::from(s)).to_u64().unwrap()
                })
                .collect()
        })
        .collect();

    let lifted = lift(pres, &relations, &tail_orders, &relation_tails)?;
    let report = lifted.check_consistency();
    if !report.is_consistent() {
        return Err(Error::Verification(format!(
            "covering extension is inconsistent at {}",
            report.failures[0].overlap
        )));
    }
    Ok(CoveringExtension {
        base: pres.clone(),
        lifted,
        tail_exponent,
        modulus: q,
        relations,
        tail_orders,
        relation_tails,
    })
}

/// The base presentation with each relation multiplied by its tail word.
fn lift(
    pres: &PcPresentation,
    relations: &[Relation],
    tail_orders: &[u64],
    tails: &[Vec<u64>],
) -> Result<PcPresentation> {
    let n = pres.len();
    let k = tail_orders.len();
    let mut names: Vec<String> = pres.names().to_vec();
    names.extend((1..=k).map(|i| format!("t{i}")));
    while names[n..].iter().any(|t| pres.names().contains(t)) {
        for name in &mut names[n..] {
            name.insert(0, '_');
        }
    }
    let mut orders = pres.relative_orders().to_vec();
    orders.extend_from_slice(tail_orders);
    let mut b = PresentationBuilder::new(names, orders)?;
    let with_tail = |w: Option<&GroupElement>, default: Vec<u64>, tail: &[u64]| -> Vec<u64> {
        let mut v = w.map_or(default, |w| w.exponents().to_vec());
        v.extend_from_slice(tail);
        v
    };
    for (rel, tail) in relations.iter().zip(tails) {
        match *rel {
            Relation::Power(i) => b.set_power(i, with_tail(pres.power_relation(i), vec![0; n], tail))?,
            Relation::Conjugate(i, j) => {
                let mut trivial = vec![0; n];
                trivial[j] = 1;
                b.set_conjugate(i, j, with_tail(pres.conjugate_relation(i, j), trivial, tail))?
            }
        }
    }
    Ok(b.build())
}

impl CoveringExtension {
    pub fn base(&self) -> &PcPresentation {
        &self.base
    }

    /// The presentation of `G~`: the base generators followed by the tails.
    pub fn lifted(&self) -> &PcPresentation {
        &self.lifted
    }

    pub fn tail_exponent(&self) -> u32 {
        self.tail_exponent
    }

    /// The working modulus `rad(|G|)^L`.
    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    /// Orders of the tail generators of `G~`.
    pub fn tail_orders(&self) -> &[u64] {
        &self.tail_orders
    }

    /// The tail of each relation, in tail-generator coordinates.
    pub fn relation_tails(&self) -> &[Vec<u64>] {
        &self.relation_tails
    }

    /// Invariants of the central subgroup `T` spanned by the tails.
    pub fn tail_module(&self) -> AbelianInvariants {
        AbelianInvariants::from_cyclic_orders(&self.tail_orders)
    }

    pub fn base_len(&self) -> usize {
        self.base.len()
    }

    /// The lift of `x` in `G` read as the same normal word in `G~`.
    pub fn lift_element(&self, x: &GroupElement) -> GroupElement {
        let mut e = x.exponents().to_vec();
        e.resize(self.lifted.len(), 0);
        self.lifted.element(e).expect("base exponents are in range")
    }

    /// Image in `G` (drops the tails).
    pub fn project(&self, x: &GroupElement) -> GroupElement {
        self.base
            .element(x.exponents()[..self.base.len()].to_vec())
            .expect("base exponents are in range")
    }

    /// Tail coordinates of an element.
    pub fn tail_vector(&self, x: &GroupElement) -> Vec<u64> {
        x.exponents()[self.base.len()..].to_vec()
    }

    /// True when `x` lies in the tail subgroup `T`.
    pub fn in_tails(&self, x: &GroupElement) -> bool {
        x.exponents()[..self.base.len()].iter().all(|&e| e == 0)
    }

    /// Relations of `T` as a diagonal matrix (columns span the relation lattice).
    pub(crate) fn tail_relations(&self) -> IntMatrix {
        IntMatrix::diagonal(&self.tail_orders)
    }
}
