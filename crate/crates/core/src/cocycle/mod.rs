//! Brute-force cohomology oracle: `H^2(G, Z/N)` from explicit normalized
//! 2-cocycles, the multiplier as `H^2(G, Q/Z)`, restriction to subgroups,
//! and `B0(G)` as the intersection of the kernels of restriction to the
//! maximal abelian subgroups.
//!
//! `Q/Z` coefficients are realised at level `N = |G|`: `H^2(G, Q/Z)` is
//! `H^2(G, Z/N)` modulo the Bockstein image of `Hom(G, Z/N)`.

mod space;
mod table;

use std::collections::HashSet;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

pub use space::{CochainSystem, CocycleSpace, Elimination};
pub use table::GroupTable;

use crate::arith::{homomorphism_kernel_invariants, kernel_mod_rows, AbelianInvariants, FiniteQuotient, IntMatrix};
use crate::error::{Error, Result};
use crate::pcgroup::{FiniteGroup, GroupElement, PcPresentation, Subgroup};

/// Default bound on `|G|` for the oracle.
pub const DEFAULT_ORACLE_BOUND: u128 = 64;

#[derive(Clone, Debug)]
pub struct OracleOptions {
    /// Largest group order accepted.
    pub bound: u128,
    /// Coefficient modulus; `None` selects `|G|`.
    pub modulus: Option<u64>,
    pub system: CochainSystem,
    pub elimination: Elimination,
}

impl Default for OracleOptions {
    fn default() -> Self {
        OracleOptions {
            bound: DEFAULT_ORACLE_BOUND,
            modulus: None,
            system: CochainSystem::default(),
            elimination: Elimination::default(),
        }
    }
}

/// A quotient of `Z^2(H, Z/N)` for a subgroup `H` of an enumerated group:
/// either `H^2(H, Z/N)` or, with the Bockstein image removed, `H^2(H, Q/Z)`.
#[derive(Clone, Debug)]
pub struct CohomologyClasses {
    space: CocycleSpace,
    members: Vec<usize>,
    quotient: FiniteQuotient,
    bockstein: bool,
}

impl CohomologyClasses {
    fn new(space: CocycleSpace, members: Vec<usize>, elimination: Elimination, bockstein: bool) -> Result<Self> {
        let n = space.modulus();
        let cocycles = space.cocycle_generators(elimination);
        let mut relations = space.coboundary_generators().to_vec();
        if bockstein {
            relations.extend(bockstein_generators(&space));
        }
        let quotient = FiniteQuotient::new(&cocycles, &relations, space.ncols(), n)?;
        let classes = CohomologyClasses {
            space,
            members,
            quotient,
            bockstein,
        };
        classes.verify()?;
        Ok(classes)
    }

    fn verify(&self) -> Result<()> {
        for (i, rep) in self.basis().iter().enumerate() {
            if !self.space.satisfies_equations(rep) || !self.space.is_cocycle_table(&self.space.table_of(rep)) {
                return Err(Error::Verification(format!("class representative {i} is not a cocycle")));
            }
            let coords = self.quotient.coordinates(rep)?;
            if coords.iter().enumerate().any(|(j, c)| *c != BigInt::from(u8::from(i == j))) {
                return Err(Error::Verification(format!(
                    "class representative {i} does not have unit coordinates"
                )));
            }
        }
        Ok(())
    }

    pub fn invariants(&self) -> &AbelianInvariants {
        self.quotient.invariants()
    }

    /// Representative cocycles of the cyclic factors.
    pub fn basis(&self) -> &[Vec<u64>] {
        self.quotient.representatives()
    }

    /// Orders of the cyclic factors, aligned with [`basis`](Self::basis).
    pub fn factors(&self) -> &[BigInt] {
        self.quotient.factors()
    }

    pub fn space(&self) -> &CocycleSpace {
        &self.space
    }

    /// Enumeration indices (in the ambient group) of the subgroup's elements;
    /// local element `i` is `members()[i]`.
    pub fn members(&self) -> &[usize] {
        &self.members
    }

    /// Whether the Bockstein image was removed, i.e. these are `Q/Z` classes.
    pub fn is_multiplier(&self) -> bool {
        self.bockstein
    }

    /// Coordinates of the class of a cocycle vector.
    pub fn coordinates(&self, v: &[u64]) -> Result<Vec<BigInt>> {
        self.quotient.coordinates(v)
    }
}

/// Generators of `Hom(H, Z/N)` as value tables on the elements.
fn characters(table: &GroupTable, n: u64) -> Vec<Vec<u64>> {
    let m = table.order();
    let ns = table.generators().len();
    if ns == 0 {
        return Vec::new();
    }
    // a(y) as a combination of the generator values, propagated along the tree.
    let mut forms = vec![vec![0u64; ns]; m];
    for &y in &table.bfs()[1..] {
        let (p, k) = table.tree_edge(y);
        let mut f = forms[p].clone();
        f[k] = (f[k] + 1) % n;
        forms[y] = f;
    }
    let mut rows = Vec::new();
    for y in 0..m {
        for (k, &s) in table.generators().iter().enumerate() {
            let ys = table.mul(y, s);
            let row: Vec<u64> = (0..ns)
                .map(|j| (forms[ys][j] + 2 * n - forms[y][j] - u64::from(j == k)) % n)
                .collect();
            if row.iter().any(|&x| x != 0) {
                rows.push(row);
            }
        }
    }
    kernel_mod_rows(&rows, ns, n)
        .into_iter()
        .map(|a| {
            forms
                .iter()
                .map(|f| f.iter().zip(&a).map(|(&x, &y)| x * y % n).sum::<u64>() % n)
                .collect()
        })
        .collect()
}

/// Bockstein images of a generating set of `Hom(H, Z/N)`: the carry cocycles
/// `(a(x) + a(y) - a(xy)) / N`.
fn bockstein_generators(space: &CocycleSpace) -> Vec<Vec<u64>> {
    let table = space.table();
    let m = table.order();
    let n = space.modulus();
    characters(table, n)
        .into_iter()
        .map(|a| {
            let mut f = vec![0u64; m * m];
            for x in 0..m {
                for y in 0..m {
                    f[x * m + y] = (a[x] + a[y] - a[table.mul(x, y)]) / n;
                }
            }
            space.vector_of(&f)
        })
        .collect()
}

fn default_modulus(order: usize) -> u64 {
    (order as u64).max(2)
}

fn enumerate<'a>(pres: &'a PcPresentation, options: &OracleOptions) -> Result<FiniteGroup<'a>> {
    let order = pres.order_u128().unwrap_or(u128::MAX);
    if order > options.bound {
        return Err(Error::OracleBound {
            order,
            bound: options.bound,
        });
    }
    if let Some(n) = options.modulus {
        if !(2..crate::arith::MAX_MODULUS).contains(&n) {
            return Err(Error::InvalidParameter(format!("coefficient modulus {n} out of range")));
        }
    }
    FiniteGroup::new(pres, options.bound)
}

/// `H^2(G, Z/N)` with `N` taken from the options (default `|G|`).
pub fn second_cohomology(pres: &PcPresentation, options: &OracleOptions) -> Result<CohomologyClasses> {
    let group = enumerate(pres, options)?;
    let n = options.modulus.unwrap_or_else(|| default_modulus(group.order()));
    let space = CocycleSpace::new(GroupTable::of_group(&group), n, options.system);
    CohomologyClasses::new(space, (0..group.order()).collect(), options.elimination, false)
}

/// The oracle bound to one enumerated group, holding its multiplier classes.
pub struct CocycleOracle<'a> {
    group: FiniteGroup<'a>,
    options: OracleOptions,
    modulus: u64,
    multiplier: CohomologyClasses,
}

impl<'a> CocycleOracle<'a> {
    pub fn new(pres: &'a PcPresentation, options: &OracleOptions) -> Result<Self> {
        let group = enumerate(pres, options)?;
        let modulus = options.modulus.unwrap_or_else(|| default_modulus(group.order()));
        let space = CocycleSpace::new(GroupTable::of_group(&group), modulus, options.system);
        let multiplier = CohomologyClasses::new(space, (0..group.order()).collect(), options.elimination, true)?;
        Ok(CocycleOracle {
            group,
            options: options.clone(),
            modulus,
            multiplier,
        })
    }

    pub fn group(&self) -> &FiniteGroup<'a> {
        &self.group
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// `H^2(G, Q/Z)` at level `N`.
    pub fn multiplier_classes(&self) -> &CohomologyClasses {
        &self.multiplier
    }

    pub fn multiplier(&self) -> &AbelianInvariants {
        self.multiplier.invariants()
    }

    /// `H^2(A, Q/Z)` at the same level `N`.
    pub fn subgroup_classes(&self, a: &Subgroup) -> Result<CohomologyClasses> {
        let (table, members) = GroupTable::of_subgroup(&self.group, a)?;
        let space = CocycleSpace::new(table, self.modulus, self.options.system);
        CohomologyClasses::new(space, members, self.options.elimination, true)
    }

    /// Matrix of `res: H^2(G, Q/Z) -> H^2(A, Q/Z)` in the invariant-factor
    /// bases; rows index the factors of `H^2(A, Q/Z)`.
    pub fn restriction_matrix(&self, a: &Subgroup) -> Result<IntMatrix> {
        restriction_between(&self.multiplier, &self.subgroup_classes(a)?)
    }

    /// `B0(G)` as the intersection of the kernels of restriction to the
    /// maximal abelian subgroups.
    pub fn bogomolov(&self) -> Result<AbelianInvariants> {
        self.kernel_intersection(&self.group.maximal_abelian_subgroups())
    }

    /// Intersection of the kernels of restriction to each subgroup in `subgroups`.
    pub fn kernel_intersection(&self, subgroups: &[Subgroup]) -> Result<AbelianInvariants> {
        let src = self.multiplier.factors().to_vec();
        let mut rows: Vec<Vec<BigInt>> = Vec::new();
        let mut dst: Vec<BigInt> = Vec::new();
        for a in subgroups {
            let target = self.subgroup_classes(a)?;
            let r = restriction_between(&self.multiplier, &target)?;
            for i in 0..r.rows() {
                rows.push(r.row(i).to_vec());
            }
            dst.extend(target.factors().iter().cloned());
        }
        if src.is_empty() || rows.is_empty() {
            return Ok(self.multiplier().clone());
        }
        let mut phi = IntMatrix::zeros(rows.len(), src.len());
        for (i, row) in rows.into_iter().enumerate() {
            for (j, x) in row.into_iter().enumerate() {
                phi[(i, j)] = x;
            }
        }
        homomorphism_kernel_invariants(&phi, &src, &dst)
    }

    /// Distinct subgroups generated by at most two commuting elements.
    pub fn bicyclic_subgroups(&self) -> Vec<Subgroup> {
        let pres = self.group.presentation();
        let elements: Vec<GroupElement> = self.group.elements().collect();
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for (i, x) in elements.iter().enumerate().skip(1) {
            for y in &elements[i..] {
                if !pres.commute(x, y) {
                    continue;
                }
                let h = Subgroup::generated_by(pres, &[x.clone(), y.clone()]);
                if seen.insert(h.pcgs().to_vec()) {
                    out.push(h);
                }
            }
        }
        out.sort_by(|a, b| a.pcgs().cmp(b.pcgs()));
        out
    }
}

/// Matrix of restriction from `from` to `to`, where `to`'s members are
/// members of `from`, in the invariant-factor bases of both.
pub fn restriction_between(from: &CohomologyClasses, to: &CohomologyClasses) -> Result<IntMatrix> {
    if from.space.modulus() != to.space.modulus() || from.bockstein != to.bockstein {
        return Err(Error::InvalidParameter(
            "restriction requires classes of the same kind and coefficient level".into(),
        ));
    }
    let positions: Vec<usize> = to
        .members
        .iter()
        .map(|g| from.members.binary_search(g).map_err(|_| Error::NotInSubmodule))
        .collect::<Result<_>>()?;
    let mf = from.space.group_order();
    let mt = to.space.group_order();
    let mut columns = Vec::with_capacity(from.basis().len());
    for rep in from.basis() {
        let f = from.space.table_of(rep);
        let mut g = vec![0u64; mt * mt];
        for (a, &pa) in positions.iter().enumerate() {
            for (b, &pb) in positions.iter().enumerate() {
                g[a * mt + b] = f[pa * mf + pb];
            }
        }
        let v = to.space.vector_of(&g);
        if !to.space.satisfies_equations(&v) {
            return Err(Error::Verification("restricted cochain is not a cocycle".into()));
        }
        columns.push(to.coordinates(&v)?);
    }
    Ok(IntMatrix::from_columns(to.factors().len(), &columns))
}

/// `M(G)` computed as `H^2(G, Q/Z)`.
pub fn multiplier_oracle(pres: &PcPresentation, options: &OracleOptions) -> Result<AbelianInvariants> {
    Ok(CocycleOracle::new(pres, options)?.multiplier().clone())
}

/// `B0(G)` computed as the intersection of kernels of restriction.
pub fn b0_oracle(pres: &PcPresentation, options: &OracleOptions) -> Result<AbelianInvariants> {
    CocycleOracle::new(pres, options)?.bogomolov()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OracleReport {
    pub multiplier: AbelianInvariants,
    pub bogomolov: AbelianInvariants,
    pub modulus: u64,
    pub maximal_abelian_subgroups: usize,
    /// Whether the intersection over bicyclic subgroups gives the same
    /// invariants; `None` if not requested.
    pub bicyclic_agrees: Option<bool>,
}

/// Multiplier and `B0(G)` in one pass, optionally comparing against the
/// intersection over bicyclic subgroups.
pub fn oracle_report(pres: &PcPresentation, options: &OracleOptions, bicyclic: bool) -> Result<OracleReport> {
    let oracle = CocycleOracle::new(pres, options)?;
    let maximal = oracle.group.maximal_abelian_subgroups();
    let bogomolov = oracle.kernel_intersection(&maximal)?;
    let bicyclic_agrees = if bicyclic {
        Some(oracle.kernel_intersection(&oracle.bicyclic_subgroups())? == bogomolov)
    } else {
        None
    };
    Ok(OracleReport {
        multiplier: oracle.multiplier().clone(),
        bogomolov,
        modulus: oracle.modulus,
        maximal_abelian_subgroups: maximal.len(),
        bicyclic_agrees,
    })
}

/// Reduces each entry of `m` modulo the row's target factor.
pub fn reduce_rows(m: &IntMatrix, factors: &[BigInt]) -> IntMatrix {
    let mut out = m.clone();
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            let x = &m[(i, j)] % &factors[i];
            out[(i, j)] = if x < BigInt::zero() { x + &factors[i] } else { x };
        }
    }
    out
}
