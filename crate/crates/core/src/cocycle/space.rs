//! Normalized 2-cochains with values in `Z/N` and the linear system cutting
//! out the cocycles.

use std::collections::BTreeMap;

use super::table::GroupTable;
use crate::arith::{howell_form, kernel_mod_rows, IntMatrix, StreamingEchelon};

/// Which unknowns and equations describe `Z^2(G, Z/N)`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum CochainSystem {
    /// Unknowns `f(x, s)` for `x != 1` and `s` in the generating set; `f(x, y)`
    /// is propagated along the spanning tree and the equations are the
    /// cocycle identities on non-tree edges. Associativity against a
    /// generating set implies associativity everywhere, since the right
    /// nucleus of the loop `A x G` is a subloop.
    #[default]
    Reduced,
    /// Unknowns `f(x, y)` for `x, y != 1` and one equation per triple.
    Full,
}

/// How the equation rows are brought to Howell form.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Elimination {
    /// Rows are inserted one at a time into a [`StreamingEchelon`].
    #[default]
    Streaming,
    /// All rows are materialized and reduced at once.
    Dense,
}

/// Normalized 2-cochains `G x G -> Z/N` in the coordinates of a
/// [`CochainSystem`], with the cocycle equations and coboundary generators.
#[derive(Clone, Debug)]
pub struct CocycleSpace {
    table: GroupTable,
    modulus: u64,
    system: CochainSystem,
    ncols: usize,
    relations: Vec<Vec<(usize, u64)>>,
    coboundaries: Vec<Vec<u64>>,
}

fn residue(x: i64, n: u64) -> u64 {
    x.rem_euclid(n as i64) as u64
}

fn sparse_row(acc: BTreeMap<usize, i64>, n: u64) -> Vec<(usize, u64)> {
    acc.into_iter()
        .map(|(c, x)| (c, residue(x, n)))
        .filter(|&(_, x)| x != 0)
        .collect()
}

impl CocycleSpace {
    pub fn new(table: GroupTable, modulus: u64, system: CochainSystem) -> Self {
        let m = table.order();
        let ns = table.generators().len();
        let ncols = match system {
            CochainSystem::Reduced => (m - 1) * ns,
            CochainSystem::Full => (m - 1) * (m - 1),
        };
        let mut space = CocycleSpace {
            table,
            modulus,
            system,
            ncols,
            relations: Vec::new(),
            coboundaries: Vec::new(),
        };
        space.relations = match system {
            CochainSystem::Reduced => space.reduced_relations(),
            CochainSystem::Full => space.full_relations(),
        };
        space.coboundaries = (1..m)
            .map(|g| {
                let t = space.coboundary_table(|x| u64::from(x == g));
                space.vector_of(&t)
            })
            .collect();
        space
    }

    fn var(&self, x: usize, y: usize) -> Option<usize> {
        if x == 0 {
            return None;
        }
        match self.system {
            CochainSystem::Reduced => Some((x - 1) * self.table.generators().len() + y),
            CochainSystem::Full => (y != 0).then(|| (x - 1) * (self.table.order() - 1) + (y - 1)),
        }
    }

    /// `f(x, y)` as an integer combination of reduced unknowns, for every `y`.
    fn propagated_forms(&self, x: usize) -> Vec<BTreeMap<usize, i64>> {
        let t = &self.table;
        let mut forms = vec![BTreeMap::new(); t.order()];
        for &y in &t.bfs()[1..] {
            let (p, k) = t.tree_edge(y);
            let mut f = forms[p].clone();
            if let Some(v) = self.var(t.mul(x, p), k) {
                *f.entry(v).or_insert(0) += 1;
            }
            if let Some(v) = self.var(p, k) {
                *f.entry(v).or_insert(0) -= 1;
            }
            f.retain(|_, c| *c != 0);
            forms[y] = f;
        }
        forms
    }

    fn reduced_relations(&self) -> Vec<Vec<(usize, u64)>> {
        let t = &self.table;
        let n = self.modulus;
        let mut rows = Vec::new();
        for x in 1..t.order() {
            let forms = self.propagated_forms(x);
            for y in 0..t.order() {
                for (k, &s) in t.generators().iter().enumerate() {
                    if t.is_tree_edge(y, k) {
                        continue;
                    }
                    // f(x, ys) - f(x, y) - f(xy, s) + f(y, s) = 0
                    let mut acc = forms[t.mul(y, s)].clone();
                    for (&v, &c) in &forms[y] {
                        *acc.entry(v).or_insert(0) -= c;
                    }
                    if let Some(v) = self.var(t.mul(x, y), k) {
                        *acc.entry(v).or_insert(0) -= 1;
                    }
                    if let Some(v) = self.var(y, k) {
                        *acc.entry(v).or_insert(0) += 1;
                    }
                    let row = sparse_row(acc, n);
                    if !row.is_empty() {
                        rows.push(row);
                    }
                }
            }
        }
        rows
    }

    fn full_relations(&self) -> Vec<Vec<(usize, u64)>> {
        let t = &self.table;
        let m = t.order();
        let mut rows = Vec::new();
        for x in 1..m {
            for y in 1..m {
                for z in 1..m {
                    // f(x, y) + f(xy, z) - f(y, z) - f(x, yz) = 0
                    let mut acc = BTreeMap::new();
                    for (a, b, c) in [
                        (x, y, 1),
                        (t.mul(x, y), z, 1),
                        (y, z, -1),
                        (x, t.mul(y, z), -1),
                    ] {
                        if b != 0 {
                            if let Some(v) = self.var(a, b) {
                                *acc.entry(v).or_insert(0i64) += c;
                            }
                        }
                    }
                    let row = sparse_row(acc, self.modulus);
                    if !row.is_empty() {
                        rows.push(row);
                    }
                }
            }
        }
        rows
    }

    pub fn table(&self) -> &GroupTable {
        &self.table
    }

    pub fn group_order(&self) -> usize {
        self.table.order()
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn system(&self) -> CochainSystem {
        self.system
    }

    /// Number of unknowns.
    pub fn ncols(&self) -> usize {
        self.ncols
    }

    /// Cocycle equations as sparse residue rows.
    pub fn relations(&self) -> &[Vec<(usize, u64)>] {
        &self.relations
    }

    /// The cocycle equations as a dense integer matrix.
    pub fn cocycle_matrix(&self) -> IntMatrix {
        let mut m = IntMatrix::zeros(self.relations.len(), self.ncols);
        for (i, row) in self.relations.iter().enumerate() {
            for &(c, x) in row {
                m[(i, c)] = x.into();
            }
        }
        m
    }

    /// `delta(e_g)` for every non-identity `g`.
    pub fn coboundary_generators(&self) -> &[Vec<u64>] {
        &self.coboundaries
    }

    /// Howell form of the row span of the cocycle equations.
    pub fn equation_echelon(&self, elimination: Elimination) -> Vec<Vec<u64>> {
        let n = self.modulus;
        match elimination {
            Elimination::Streaming => {
                let mut e = StreamingEchelon::new(self.ncols, n);
                for row in &self.relations {
                    e.insert_sparse(row);
                }
                e.finish()
            }
            Elimination::Dense => {
                let dense: Vec<Vec<u64>> = self
                    .relations
                    .iter()
                    .map(|row| {
                        let mut v = vec![0; self.ncols];
                        for &(c, x) in row {
                            v[c] = x;
                        }
                        v
                    })
                    .collect();
                howell_form(&dense, self.ncols, n)
            }
        }
    }

    /// Generators of `Z^2(G, Z/N)` in Howell form.
    pub fn cocycle_generators(&self, elimination: Elimination) -> Vec<Vec<u64>> {
        if self.ncols == 0 {
            return Vec::new();
        }
        kernel_mod_rows(&self.equation_echelon(elimination), self.ncols, self.modulus)
    }

    pub fn satisfies_equations(&self, v: &[u64]) -> bool {
        let n = self.modulus as u128;
        v.len() == self.ncols
            && self
                .relations
                .iter()
                .all(|row| row.iter().map(|&(c, x)| x as u128 * v[c] as u128).sum::<u128>() % n == 0)
    }

    /// The full table `f(x, y)` (index `x * |G| + y`) of a cochain vector.
    pub fn table_of(&self, v: &[u64]) -> Vec<u64> {
        assert_eq!(v.len(), self.ncols, "cochain length mismatch");
        let t = &self.table;
        let m = t.order();
        let n = self.modulus;
        let mut f = vec![0u64; m * m];
        match self.system {
            CochainSystem::Full => {
                for x in 1..m {
                    for y in 1..m {
                        f[x * m + y] = v[self.var(x, y).expect("non-identity pair")];
                    }
                }
            }
            CochainSystem::Reduced => {
                let u = |x: usize, k: usize| self.var(x, k).map_or(0, |i| v[i]);
                for x in 1..m {
                    for &y in &t.bfs()[1..] {
                        let (p, k) = t.tree_edge(y);
                        f[x * m + y] = (f[x * m + p] + u(t.mul(x, p), k) + n - u(p, k)) % n;
                    }
                }
            }
        }
        f
    }

    /// Coordinates of a normalized cochain given by its full table.
    pub fn vector_of(&self, f: &[u64]) -> Vec<u64> {
        let m = self.table.order();
        assert_eq!(f.len(), m * m, "table size mismatch");
        let mut v = vec![0u64; self.ncols];
        match self.system {
            CochainSystem::Full => {
                for x in 1..m {
                    for y in 1..m {
                        v[self.var(x, y).expect("non-identity pair")] = f[x * m + y];
                    }
                }
            }
            CochainSystem::Reduced => {
                for x in 1..m {
                    for (k, &s) in self.table.generators().iter().enumerate() {
                        v[self.var(x, k).expect("non-identity x")] = f[x * m + s];
                    }
                }
            }
        }
        v
    }

    /// `delta(c)(x, y) = c(x) + c(y) - c(xy)` as a full table.
    pub fn coboundary_table(&self, c: impl Fn(usize) -> u64) -> Vec<u64> {
        let t = &self.table;
        let m = t.order();
        let n = self.modulus;
        let c: Vec<u64> = (0..m).map(|x| c(x) % n).collect();
        let mut f = vec![0u64; m * m];
        for x in 0..m {
            for y in 0..m {
                f[x * m + y] = (c[x] + c[y] + n - c[t.mul(x, y)]) % n;
            }
        }
        f
    }

    /// Checks the normalized cocycle identity on every triple.
    pub fn is_cocycle_table(&self, f: &[u64]) -> bool {
        let t = &self.table;
        let m = t.order();
        let n = self.modulus;
        if f.len() != m * m || (0..m).any(|x| !f[x].is_multiple_of(n) || !f[x * m].is_multiple_of(n)) {
            return false;
        }
        (1..m).all(|x| {
            (1..m).all(|y| {
                let xy = t.mul(x, y);
                (1..m).all(|z| {
                    let lhs = f[x * m + y] + f[xy * m + z];
                    let rhs = f[y * m + z] + f[x * m + t.mul(y, z)];
                    (lhs + 2 * n - rhs).is_multiple_of(n)
                })
            })
        })
    }
}
