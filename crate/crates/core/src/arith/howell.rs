//! Linear algebra over `Z/N` for composite `N`: Howell (strong echelon)
//! forms, kernels, and quotients of submodules of `(Z/N)^k`.
//!
//! Residues are stored as `u64` in `[0, N)`. The modulus is limited to
//! `N < 2^31` so that products of two residues fit in a `u64`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use super::abelian::AbelianInvariants;
use super::matrix::{smith_decomposition, IntMatrix};
use crate::error::{Error, Result};

pub const MAX_MODULUS: u64 = 1 << 31;

fn check_modulus(n: u64) {
    assert!((2..MAX_MODULUS).contains(&n), "modulus {n} out of range");
}

/// Extended gcd on non-negative integers: `(g, s, t)` with `s*a + t*b = g`.
fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    if b == 0 {
        (a, 1, 0)
    } else {
        let (g, s, t) = ext_gcd(b, a.rem_euclid(b));
        (g, t, s - (a.div_euclid(b)) * t)
    }
}

fn to_residue(x: i128, n: u64) -> u64 {
    x.rem_euclid(n as i128) as u64
}

/// A unit `u` mod `n` with `u * a = gcd(a, n) (mod n)`; `a` must be nonzero mod `n`.
fn normalizing_unit(a: u64, n: u64) -> u64 {
    let g = a.gcd(&n);
    let (a1, n1) = (a / g, n / g);
    let (_, s, _) = ext_gcd(a1 as i128, n1 as i128);
    let mut u = to_residue(s, n1);
    while u.gcd(&n) != 1 {
        u += n1;
    }
    u % n
}

fn scale(row: &[u64], k: u64, n: u64) -> Vec<u64> {
    row.iter().map(|&x| x * k % n).collect()
}

/// dst += k * src (mod n)
fn axpy(dst: &mut [u64], src: &[u64], k: u64, n: u64) {
    if k == 0 {
        return;
    }
    for (d, &s) in dst.iter_mut().zip(src) {
        if s != 0 {
            *d = (*d + k * s) % n;
        }
    }
}

/// Replaces rows `a`, `b` by a unimodular combination whose entries in
/// column `c` are `(gcd, 0)`.
fn gcd_combine(a: &mut Vec<u64>, b: &mut Vec<u64>, c: usize, n: u64) {
    let (x, y) = (a[c] as i128, b[c] as i128);
    let (g, s, t) = ext_gcd(x, y);
    let (s, t) = (to_residue(s, n), to_residue(t, n));
    let (yg, xg) = (to_residue(y / g, n), to_residue(-(x / g), n));
    let new_a: Vec<u64> = a.iter().zip(b.iter()).map(|(&p, &q)| (s * p + t * q) % n).collect();
    let new_b: Vec<u64> = a.iter().zip(b.iter()).map(|(&p, &q)| (yg * p + xg * q) % n).collect();
    *a = new_a;
    *b = new_b;
    debug_assert_eq!(b[c], 0);
}

fn leading(row: &[u64]) -> Option<usize> {
    row.iter().position(|&x| x != 0)
}

/// Howell form of the row span of `rows` over `Z/n`: echelon, pivots
/// dividing `n`, entries above pivots reduced, and closed under annihilators.
/// The result depends only on the span.
pub fn howell_form(rows: &[Vec<u64>], ncols: usize, n: u64) -> Vec<Vec<u64>> {
    check_modulus(n);
    let mut a: Vec<Vec<u64>> = rows
        .iter()
        .map(|r| {
            assert_eq!(r.len(), ncols, "row length mismatch");
            r.iter().map(|&x| x % n).collect()
        })
        .filter(|r: &Vec<u64>| r.iter().any(|&x| x != 0))
        .collect();
    let mut r = 0;
    for c in 0..ncols {
        if r >= a.len() {
            break;
        }
        let Some(first) = (r..a.len()).find(|&i| a[i][c] != 0) else {
            continue;
        };
        a.swap(r, first);
        for i in r + 1..a.len() {
            if a[i][c] != 0 {
                let (head, tail) = a.split_at_mut(i);
                gcd_combine(&mut head[r], &mut tail[0], c, n);
            }
        }
        let u = normalizing_unit(a[r][c], n);
        if u != 1 {
            a[r] = scale(&a[r], u, n);
        }
        let h = a[r][c];
        let ann = n / h;
        if ann != n {
            let extra = scale(&a[r], ann, n);
            if extra.iter().any(|&x| x != 0) {
                a.push(extra);
            }
        }
        for i in 0..r {
            let q = a[i][c] / h;
            if q != 0 {
                let pivot = a[r].clone();
                axpy(&mut a[i], &pivot, n - q, n);
            }
        }
        r += 1;
    }
    a.truncate(r);
    debug_assert!(a.iter().all(|row| leading(row).is_some()));
    a
}

/// Generators of `{x in (Z/n)^cols : M x = 0 (mod n)}` in Howell form.
pub fn kernel_mod(m: &IntMatrix, n: u64) -> Vec<Vec<u64>> {
    check_modulus(n);
    let big_n = BigInt::from(n);
    let rows: Vec<Vec<u64>> = (0..m.rows())
        .map(|i| {
            m.row(i)
                .iter()
                .map(|x| x.mod_floor(&big_n).to_u64().expect("residue fits"))
                .collect()
        })
        .collect();
    kernel_mod_rows(&rows, m.cols(), n)
}

/// Kernel of the matrix given by residue rows (each of length `ncols`).
pub fn kernel_mod_rows(rows: &[Vec<u64>], ncols: usize, n: u64) -> Vec<Vec<u64>> {
    let r = rows.len();
    // Augment the transpose with an identity and read off rows with zero left part.
    let aug: Vec<Vec<u64>> = (0..ncols)
        .map(|j| {
            let mut v = Vec::with_capacity(r + ncols);
            v.extend(rows.iter().map(|row| row[j] % n));
            v.extend((0..ncols).map(|k| u64::from(k == j)));
            v
        })
        .collect();
    let h = howell_form(&aug, r + ncols, n);
    let kernel: Vec<Vec<u64>> = h
        .into_iter()
        .filter(|row| row[..r].iter().all(|&x| x == 0))
        .map(|row| row[r..].to_vec())
        .collect();
    howell_form(&kernel, ncols, n)
}

/// Streaming echelon builder: rows are inserted one at a time (dense or
/// sparse) and reduced against the current pivots, so a tall system never
/// has to be materialized. [`finish`](Self::finish) returns exactly the
/// Howell form that [`howell_form`] produces for the same span.
#[derive(Clone, Debug)]
pub struct StreamingEchelon {
    n: u64,
    ncols: usize,
    pivots: Vec<Option<Vec<u64>>>,
    /// Additions of `< n^2` allowed before a lazily reduced row must be normalized.
    lazy_budget: u64,
}

impl StreamingEchelon {
    pub fn new(ncols: usize, n: u64) -> Self {
        check_modulus(n);
        StreamingEchelon {
            n,
            ncols,
            pivots: vec![None; ncols],
            lazy_budget: (u64::MAX / (n * n)).saturating_sub(1).max(1),
        }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank_bound(&self) -> usize {
        self.pivots.iter().filter(|p| p.is_some()).count()
    }

    pub fn insert_sparse(&mut self, entries: &[(usize, u64)]) {
        let mut v = vec![0u64; self.ncols];
        for &(c, x) in entries {
            v[c] = (v[c] + x % self.n) % self.n;
        }
        self.insert(v);
    }

    pub fn insert(&mut self, row: Vec<u64>) {
        assert_eq!(row.len(), self.ncols, "row length mismatch");
        let n = self.n;
        let mut queue = vec![row];
        while let Some(mut v) = queue.pop() {
            let mut pending = 0u64;
            let mut c = 0;
            loop {
                while c < self.ncols {
                    v[c] %= n;
                    if v[c] != 0 {
                        break;
                    }
                    c += 1;
                }
                if c == self.ncols {
                    break;
                }
                match &mut self.pivots[c] {
                    None => {
                        for x in v.iter_mut() {
                            *x %= n;
                        }
                        let u = normalizing_unit(v[c], n);
                        if u != 1 {
                            v = scale(&v, u, n);
                        }
                        let ann = n / v[c];
                        if ann != n {
                            let extra = scale(&v, ann, n);
                            if extra.iter().any(|&x| x != 0) {
                                queue.push(extra);
                            }
                        }
                        self.pivots[c] = Some(v);
                        break;
                    }
                    Some(p) => {
                        let h = p[c];
                        if v[c] % h == 0 {
                            let k = n - v[c] / h;
                            if pending >= self.lazy_budget {
                                for x in v[c..].iter_mut() {
                                    *x %= n;
                                }
                                pending = 0;
                            }
                            for (x, &y) in v[c..].iter_mut().zip(&p[c..]) {
                                *x += k * y;
                            }
                            pending += 1;
                            v[c] = 0;
                            c += 1;
                        } else {
                            for x in v.iter_mut() {
                                *x %= n;
                            }
                            pending = 0;
                            let mut old = p.clone();
                            gcd_combine(&mut old, &mut v, c, n);
                            let u = normalizing_unit(old[c], n);
                            if u != 1 {
                                old = scale(&old, u, n);
                            }
                            let ann = n / old[c];
                            if ann != n {
                                let extra = scale(&old, ann, n);
                                if extra.iter().any(|&x| x != 0) {
                                    queue.push(extra);
                                }
                            }
                            *p = old;
                            c += 1;
                        }
                    }
                }
            }
        }
    }

    /// Canonical Howell form of everything inserted so far.
    pub fn finish(&self) -> Vec<Vec<u64>> {
        let rows: Vec<Vec<u64>> = self.pivots.iter().flatten().cloned().collect();
        howell_form(&rows, self.ncols, self.n)
    }
}

/// A submodule of `(Z/n)^k` held as a Howell basis, supporting membership
/// tests and coefficient extraction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HowellBasis {
    n: u64,
    ncols: usize,
    rows: Vec<Vec<u64>>,
    pivot_cols: Vec<usize>,
}

impl HowellBasis {
    pub fn new(gens: &[Vec<u64>], ncols: usize, n: u64) -> Self {
        Self::from_howell(howell_form(gens, ncols, n), ncols, n)
    }

    /// Wraps rows already in Howell form.
    pub fn from_howell(rows: Vec<Vec<u64>>, ncols: usize, n: u64) -> Self {
        let pivot_cols = rows.iter().map(|r| leading(r).expect("nonzero row")).collect();
        HowellBasis {
            n,
            ncols,
            rows,
            pivot_cols,
        }
    }

    pub fn modulus(&self) -> u64 {
        self.n
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rows(&self) -> &[Vec<u64>] {
        &self.rows
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Number of elements of the submodule.
    pub fn cardinality(&self) -> BigInt {
        self.rows
            .iter()
            .zip(&self.pivot_cols)
            .map(|(r, &c)| BigInt::from(self.n / r[c]))
            .product()
    }

    /// Reduces `v` against the basis; returns the remainder and coefficients.
    /// `v` is in the span exactly when the remainder is zero.
    pub fn reduce(&self, v: &[u64]) -> (Vec<u64>, Vec<u64>) {
        assert_eq!(v.len(), self.ncols, "vector length mismatch");
        let n = self.n;
        let mut v: Vec<u64> = v.iter().map(|&x| x % n).collect();
        let mut coeffs = vec![0u64; self.rows.len()];
        for (i, (row, &c)) in self.rows.iter().zip(&self.pivot_cols).enumerate() {
            let q = v[c] / row[c];
            if q != 0 {
                axpy(&mut v, row, n - q, n);
                coeffs[i] = q;
            }
        }
        (v, coeffs)
    }

    pub fn contains(&self, v: &[u64]) -> bool {
        self.reduce(v).0.iter().all(|&x| x == 0)
    }

    /// Coefficients expressing `v` in the basis, or an error if `v` is outside.
    pub fn coefficients(&self, v: &[u64]) -> Result<Vec<u64>> {
        let (rem, coeffs) = self.reduce(v);
        if rem.iter().any(|&x| x != 0) {
            return Err(Error::NotInSubmodule);
        }
        Ok(coeffs)
    }

    /// Linear combination of the basis rows.
    pub fn combine(&self, coeffs: &[BigInt]) -> Vec<u64> {
        let big_n = BigInt::from(self.n);
        let mut out = vec![0u64; self.ncols];
        for (row, k) in self.rows.iter().zip(coeffs) {
            let k = k.mod_floor(&big_n).to_u64().expect("residue fits");
            axpy(&mut out, row, k, self.n);
        }
        out
    }

    /// Integer relation lattice of the basis rows (columns of the result):
    /// every integer vector `c` with `sum c_i row_i = 0` is in its span.
    pub fn syzygies(&self) -> IntMatrix {
        let k = self.rows.len();
        let mut cols = Vec::with_capacity(k);
        for (i, (row, &c)) in self.rows.iter().zip(&self.pivot_cols).enumerate() {
            let ann = self.n / row[c];
            let shifted = scale(row, ann, self.n);
            let coeffs = self
                .coefficients(&shifted)
                .expect("annihilator multiple lies in a Howell span");
            let mut col: Vec<BigInt> = coeffs.iter().map(|&x| -BigInt::from(x)).collect();
            col[i] += BigInt::from(ann);
            cols.push(col);
        }
        IntMatrix::from_columns(k, &cols)
    }
}

/// The quotient `A / B` of submodules `B <= A <= (Z/n)^k`, with canonical
/// coordinates and representatives for its invariant-factor decomposition.
#[derive(Clone, Debug)]
pub struct FiniteQuotient {
    basis: HowellBasis,
    invariants: AbelianInvariants,
    /// Rows of `U` for the nontrivial invariant factors.
    coordinate_rows: Vec<Vec<BigInt>>,
    factors: Vec<BigInt>,
    representatives: Vec<Vec<u64>>,
}

impl FiniteQuotient {
    pub fn new(a_gens: &[Vec<u64>], b_gens: &[Vec<u64>], ncols: usize, n: u64) -> Result<Self> {
        let basis = HowellBasis::new(a_gens, ncols, n);
        let k = basis.len();
        let mut rel = basis.syzygies();
        let mut extra = Vec::with_capacity(b_gens.len());
        for b in b_gens {
            if b.len() != ncols {
                return Err(Error::Dimension {
                    expected: ncols,
                    actual: b.len(),
                });
            }
            let c = basis.coefficients(b)?;
            extra.push(c.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>());
        }
        if !extra.is_empty() {
            rel = rel.hcat(&IntMatrix::from_columns(k, &extra));
        }
        let d = smith_decomposition(&rel);
        let diag = d.diagonal();
        let mut coordinate_rows = Vec::new();
        let mut factors = Vec::new();
        let mut representatives = Vec::new();
        for (i, di) in diag.iter().enumerate() {
            // `rel` has full row rank (it contains n * e_i up to reduction).
            debug_assert!(!di.is_zero());
            if *di == BigInt::from(1) {
                continue;
            }
            coordinate_rows.push(d.u.row(i).to_vec());
            factors.push(di.clone());
            representatives.push(basis.combine(&d.u_inv.column(i)));
        }
        let orders: Vec<u64> = factors.iter().map(|f| f.to_u64().expect("factor divides n")).collect();
        let invariants = AbelianInvariants::from_cyclic_orders(&orders);
        Ok(FiniteQuotient {
            basis,
            invariants,
            coordinate_rows,
            factors,
            representatives,
        })
    }

    pub fn invariants(&self) -> &AbelianInvariants {
        &self.invariants
    }

    /// Orders of the cyclic factors, aligned with [`representatives`](Self::representatives).
    pub fn factors(&self) -> &[BigInt] {
        &self.factors
    }

    pub fn representatives(&self) -> &[Vec<u64>] {
        &self.representatives
    }

    pub fn ambient(&self) -> &HowellBasis {
        &self.basis
    }

    /// Coordinates of the class of `v` (which must lie in `A`).
    pub fn coordinates(&self, v: &[u64]) -> Result<Vec<BigInt>> {
        let c: Vec<BigInt> = self.basis.coefficients(v)?.into_iter().map(BigInt::from).collect();
        Ok(self
            .coordinate_rows
            .iter()
            .zip(&self.factors)
            .map(|(row, f)| {
                let y: BigInt = row.iter().zip(&c).map(|(a, b)| a * b).sum();
                y.mod_floor(f)
            })
            .collect())
    }

    pub fn is_zero_class(&self, v: &[u64]) -> Result<bool> {
        Ok(self.coordinates(v)?.iter().all(Zero::is_zero))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_kernel(rows: &[Vec<u64>], ncols: usize, n: u64) -> Vec<Vec<u64>> {
        let mut out = Vec::new();
        let total = n.pow(ncols as u32);
        for code in 0..total {
            let mut x = vec![0u64; ncols];
            let mut c = code;
            for xi in x.iter_mut() {
                *xi = c % n;
                c /= n;
            }
            if rows
                .iter()
                .all(|r| r.iter().zip(&x).map(|(a, b)| a * b).sum::<u64>() % n == 0)
            {
                out.push(x);
            }
        }
        out
    }

    #[test]
    fn kernel_examples() {
        let k = kernel_mod(&IntMatrix::from_rows(&[vec![2i64]]), 4);
        assert_eq!(k, vec![vec![2]]);
        assert!(kernel_mod(&IntMatrix::from_rows(&[vec![1i64]]), 5).is_empty());
        assert_eq!(kernel_mod(&IntMatrix::from_rows(&[vec![0i64]]), 6), vec![vec![1]]);
    }

    #[test]
    fn kernel_against_enumeration() {
        let cases: Vec<(Vec<Vec<u64>>, u64)> = vec![
            (vec![vec![2, 4, 0], vec![0, 3, 3]], 6),
            (vec![vec![1, 1, 1]], 8),
            (vec![vec![4, 2], vec![2, 6]], 8),
            (vec![vec![3, 0, 6]], 6),
        ];
        for (rows, n) in cases {
            let ncols = rows[0].len();
            let k = HowellBasis::new(&kernel_mod_rows(&rows, ncols, n), ncols, n);
            let brute = brute_kernel(&rows, ncols, n);
            assert_eq!(k.cardinality(), BigInt::from(brute.len()));
            for x in &brute {
                assert!(k.contains(x));
            }
        }
    }

    #[test]
    fn howell_canonical_under_row_operations() {
        let rows = vec![vec![2u64, 4, 6], vec![3, 0, 9]];
        let mixed = vec![vec![5u64, 4, 15], vec![3, 0, 9], vec![8, 4, 0]];
        assert_eq!(howell_form(&rows, 3, 12), howell_form(&mixed, 3, 12));
    }

    #[test]
    fn annihilator_rows_present() {
        // Span of (2, 1) mod 4 contains (0, 2) = 2*(2,1).
        let h = howell_form(&[vec![2, 1]], 2, 4);
        assert_eq!(h, vec![vec![2, 1], vec![0, 2]]);
    }

    #[test]
    fn quotient_coordinates() {
        // (Z/4)^2 / <(2,2)>: Z/2 x Z/4.
        let a = vec![vec![1u64, 0], vec![0, 1]];
        let q = FiniteQuotient::new(&a, &[vec![2, 2]], 2, 4).unwrap();
        assert_eq!(q.invariants(), &AbelianInvariants::from_cyclic_orders(&[2, 4]));
        assert!(q.is_zero_class(&[2, 2]).unwrap());
        assert!(!q.is_zero_class(&[2, 0]).unwrap());
        for rep in q.representatives() {
            assert!(!q.is_zero_class(rep).unwrap());
        }
        assert!(FiniteQuotient::new(&[vec![2, 0]], &[vec![1, 0]], 2, 4).is_err());
    }

    #[test]
    fn streaming_matches_dense() {
        let rows = vec![vec![6u64, 4, 2, 0], vec![3, 3, 0, 9], vec![0, 8, 4, 4], vec![9, 7, 2, 9]];
        let mut s = StreamingEchelon::new(4, 12);
        for r in &rows {
            s.insert(r.clone());
        }
        assert_eq!(s.finish(), howell_form(&rows, 4, 12));
        let mut sp = StreamingEchelon::new(4, 12);
        sp.insert_sparse(&[(0, 6), (1, 4), (2, 2)]);
        assert_eq!(sp.finish(), howell_form(&rows[..1], 4, 12));
    }

    fn arb_system() -> impl proptest::strategy::Strategy<Value = (Vec<Vec<u64>>, usize, u64)> {
        use proptest::prelude::*;
        (1usize..4, 2u64..9, 0usize..4).prop_flat_map(|(c, n, r)| {
            prop::collection::vec(prop::collection::vec(0..n, c), r).prop_map(move |rows| (rows, c, n))
        })
    }

    proptest::proptest! {
        #[test]
        fn kernel_matches_enumeration((rows, ncols, n) in arb_system()) {
            let gens = kernel_mod_rows(&rows, ncols, n);
            let brute = brute_kernel(&rows, ncols, n);
            for x in &gens {
                proptest::prop_assert!(brute.contains(x));
            }
            let k = HowellBasis::new(&gens, ncols, n);
            proptest::prop_assert_eq!(k.cardinality(), BigInt::from(brute.len()));
            for x in &brute {
                proptest::prop_assert!(k.contains(x));
            }
        }
    }
}
