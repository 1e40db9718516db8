//! Dense integer matrices and the Smith normal form.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Dense row-major matrix of arbitrary-precision integers.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<BigInt>) -> Self {
        assert_eq!(data.len(), rows * cols, "entry count must equal rows * cols");
        IntMatrix { rows, cols, data }
    }

    /// Builds a matrix from row slices of machine integers.
    ///
    /// Panics if the rows have different lengths.
    pub fn from_rows<T: Copy + Into<BigInt>>(rows: &[Vec<T>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged rows");
            data.extend(r.iter().map(|&x| x.into()));
        }
        IntMatrix {
            rows: rows.len(),
            cols,
            data,
        }
    }

    /// Builds a matrix whose columns are the given vectors, each of length `rows`.
    pub fn from_columns(rows: usize, columns: &[Vec<BigInt>]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows, "column length mismatch");
            for (i, x) in c.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        m
    }

    pub fn diagonal<T: Copy + Into<BigInt>>(entries: &[T]) -> Self {
        let n = entries.len();
        let mut m = Self::zeros(n, n);
        for (i, &d) in entries.iter().enumerate() {
            m[(i, i)] = d.into();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "inner dimensions differ");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// Concatenates `self` and `other` side by side.
    pub fn hcat(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.rows, other.rows);
        let cols = self.cols + other.cols;
        let mut out = Self::zeros(self.rows, cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(i, j)] = self[(i, j)].clone();
            }
            for j in 0..other.cols {
                out[(i, self.cols + j)] = other[(i, j)].clone();
            }
        }
        out
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[(k, k)].is_zero() {
                match (k + 1..n).find(|&i| !a[(i, k)].is_zero()) {
                    Some(i) => {
                        a.swap_rows(i, k);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)]) / &prev;
                    a[(i, j)] = v;
                }
            }
            prev = a[(k, k)].clone();
        }
        sign * a[(n - 1, n - 1)].clone()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[dst] += q * row[src]
    fn add_row_multiple(&mut self, dst: usize, src: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let s = &self.data[src * self.cols + j];
            if !s.is_zero() {
                let v = s * q;
                self.data[dst * self.cols + j] += v;
            }
        }
    }

    /// col[dst] += q * col[src]
    fn add_col_multiple(&mut self, dst: usize, src: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let s = &self.data[i * self.cols + src];
            if !s.is_zero() {
                let v = s * q;
                self.data[i * self.cols + dst] += v;
            }
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let x = &mut self.data[i * self.cols + j];
            *x = -std::mem::take(x);
        }
    }

    fn negate_col(&mut self, j: usize) {
        for i in 0..self.rows {
            let x = &mut self.data[i * self.cols + j];
            *x = -std::mem::take(x);
        }
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;

    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for (j, x) in self.row(i).iter().enumerate() {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// Full Smith decomposition `U * M * V = S`, also carrying `U^{-1}`.
#[derive(Clone, Debug)]
pub struct SmithDecomposition {
    pub s: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
    pub u_inv: IntMatrix,
    /// Number of nonzero diagonal entries.
    pub rank: usize,
}

impl SmithDecomposition {
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.s.rows.min(self.s.cols))
            .map(|i| self.s[(i, i)].clone())
            .collect()
    }
}

/// Computes `(S, U, V)` with `U * M * V = S`, `S` diagonal with `d1 | d2 | ...`
/// (zeros last) and `U`, `V` unimodular.
pub fn smith_normal_form(m: &IntMatrix) -> (IntMatrix, IntMatrix, IntMatrix) {
    let d = smith_decomposition(m);
    (d.s, d.u, d.v)
}

pub fn smith_decomposition(m: &IntMatrix) -> SmithDecomposition {
    let (rows, cols) = (m.rows, m.cols);
    let mut a = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut u_inv = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);
    let mut rank = 0;

    // Row operations on `a` are mirrored on `u` (rows) and inversely on `u_inv` (columns).
    let row_add = |a: &mut IntMatrix, u: &mut IntMatrix, ui: &mut IntMatrix, dst, src, q: &BigInt| {
        a.add_row_multiple(dst, src, q);
        u.add_row_multiple(dst, src, q);
        ui.add_col_multiple(src, dst, &-q);
    };

    for t in 0..rows.min(cols) {
        loop {
            // Pivot on the smallest nonzero entry of the trailing block.
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    let x = &a[(i, j)];
                    if x.is_zero() {
                        continue;
                    }
                    match best {
                        Some((bi, bj)) if a[(bi, bj)].abs() <= x.abs() => {}
                        _ => best = Some((i, j)),
                    }
                }
            }
            let Some((pi, pj)) = best else {
                return finish(a, u, v, u_inv, rank);
            };
            a.swap_rows(t, pi);
            u.swap_rows(t, pi);
            u_inv.swap_cols(t, pi);
            a.swap_cols(t, pj);
            v.swap_cols(t, pj);

            let mut clean = true;
            for i in t + 1..rows {
                if a[(i, t)].is_zero() {
                    continue;
                }
                let q = -a[(i, t)].div_floor(&a[(t, t)]);
                row_add(&mut a, &mut u, &mut u_inv, i, t, &q);
                if !a[(i, t)].is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..cols {
                if a[(t, j)].is_zero() {
                    continue;
                }
                let q = -a[(t, j)].div_floor(&a[(t, t)]);
                a.add_col_multiple(j, t, &q);
                v.add_col_multiple(j, t, &q);
                if !a[(t, j)].is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            // Enforce divisibility of the whole trailing block by the pivot.
            let pivot = a[(t, t)].clone();
            let offender = (t + 1..rows)
                .find(|&i| (t + 1..cols).any(|j| !a[(i, j)].is_multiple_of(&pivot)));
            match offender {
                Some(i) => row_add(&mut a, &mut u, &mut u_inv, t, i, &BigInt::one()),
                None => break,
            }
        }
        if a[(t, t)].is_negative() {
            a.negate_row(t);
            u.negate_row(t);
            u_inv.negate_col(t);
        }
        rank += 1;
    }
    finish(a, u, v, u_inv, rank)
}

fn finish(s: IntMatrix, u: IntMatrix, v: IntMatrix, u_inv: IntMatrix, rank: usize) -> SmithDecomposition {
    SmithDecomposition {
        s,
        u,
        v,
        u_inv,
        rank,
    }
}

/// Basis (as matrix columns) of the integer kernel `{x : M x = 0}`.
pub fn integer_kernel(m: &IntMatrix) -> IntMatrix {
    let d = smith_decomposition(m);
    let cols: Vec<Vec<BigInt>> = (d.rank..m.cols).map(|j| d.v.column(j)).collect();
    IntMatrix::from_columns(m.cols, &cols)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diag_of(m: &IntMatrix) -> Vec<i64> {
        let d = smith_decomposition(m);
        d.diagonal()
            .iter()
            .map(|x| i64::try_from(x).unwrap())
            .collect()
    }

    fn check_decomposition(m: &IntMatrix) {
        let d = smith_decomposition(m);
        assert_eq!(d.u.mul(m).mul(&d.v), d.s);
        assert_eq!(d.u.mul(&d.u_inv), IntMatrix::identity(m.rows()));
        assert_eq!(d.u.determinant().abs(), BigInt::one());
        assert_eq!(d.v.determinant().abs(), BigInt::one());
        for i in 0..d.s.rows() {
            for j in 0..d.s.cols() {
                if i != j {
                    assert!(d.s[(i, j)].is_zero());
                }
            }
        }
        let diag = d.diagonal();
        for w in diag.windows(2) {
            if !w[1].is_zero() {
                assert!(w[1].is_multiple_of(&w[0]), "{:?}", diag);
            } else if w[0].is_zero() {
                assert!(w[1].is_zero());
            }
        }
    }

    #[test]
    fn identity_and_zero() {
        let one = IntMatrix::from_rows(&[vec![1i64]]);
        let (s, u, v) = smith_normal_form(&one);
        assert_eq!(s, one);
        assert_eq!(u, one);
        assert_eq!(v, one);
        let zero = IntMatrix::from_rows(&[vec![0i64]]);
        assert_eq!(smith_normal_form(&zero).0, zero);
    }

    #[test]
    fn two_by_two() {
        let m = IntMatrix::from_rows(&[vec![2i64, 4], vec![6, 8]]);
        assert_eq!(diag_of(&m), vec![2, 4]);
        check_decomposition(&m);
    }

    #[test]
    fn rectangular_and_degenerate() {
        for m in [
            IntMatrix::from_rows(&[vec![0i64, 0, 0], vec![0, 0, 0]]),
            IntMatrix::from_rows(&[vec![3i64, 0, 6], vec![9, 12, 0]]),
            IntMatrix::from_rows(&[vec![4i64], vec![6], vec![10]]),
            IntMatrix::zeros(2, 0),
            IntMatrix::zeros(0, 3),
        ] {
            check_decomposition(&m);
        }
        assert_eq!(diag_of(&IntMatrix::from_rows(&[vec![4i64], vec![6], vec![10]])), vec![2]);
    }

    #[test]
    fn kernel_is_annihilated() {
        let m = IntMatrix::from_rows(&[vec![1i64, 2, 3], vec![2, 4, 6]]);
        let k = integer_kernel(&m);
        assert_eq!(k.cols(), 2);
        assert!(m.mul(&k).is_zero());
    }

    #[test]
    fn determinant_small() {
        let m = IntMatrix::from_rows(&[vec![2i64, 1, 0], vec![1, 3, 1], vec![0, 1, 4]]);
        assert_eq!(m.determinant(), BigInt::from(18));
    }

    fn arb_matrix() -> impl proptest::strategy::Strategy<Value = IntMatrix> {
        use proptest::prelude::*;
        (0usize..5, 0usize..5).prop_flat_map(|(r, c)| {
            prop::collection::vec(-20i64..20, r * c)
                .prop_map(move |v| IntMatrix::from_vec(r, c, v.into_iter().map(BigInt::from).collect()))
        })
    }

    /// Product of elementary row operations `(dst, src, q)` applied to the identity.
    fn unimodular(n: usize, ops: &[(usize, usize, i64)]) -> IntMatrix {
        let mut m = IntMatrix::identity(n);
        for &(i, j, q) in ops {
            if n > 1 && i % n != j % n {
                m.add_row_multiple(i % n, j % n, &BigInt::from(q));
            }
        }
        m
    }

    proptest::proptest! {
        #[test]
        fn decomposition_reconstructs(m in arb_matrix()) {
            check_decomposition(&m);
            let d = smith_decomposition(&m);
            let v_inv = {
                let k = smith_decomposition(&d.v);
                k.v.mul(&k.u)
            };
            proptest::prop_assert_eq!(d.u_inv.mul(&d.s).mul(&v_inv), m);
        }

        #[test]
        fn diagonal_invariant_under_unimodular_factors(
            m in arb_matrix(),
            left in proptest::collection::vec((0usize..5, 0usize..5, -3i64..4), 0..6),
            right in proptest::collection::vec((0usize..5, 0usize..5, -3i64..4), 0..6),
        ) {
            let p = unimodular(m.rows(), &left);
            let q = unimodular(m.cols(), &right).transpose();
            proptest::prop_assert_eq!(smith_decomposition(&p.mul(&m).mul(&q)).diagonal(), smith_decomposition(&m).diagonal());
        }

        #[test]
        fn cokernel_invariant_under_column_permutation_and_sign(
            m in arb_matrix(),
            perm_seed in proptest::collection::vec(0usize..5, 5),
            signs in proptest::collection::vec(proptest::bool::ANY, 5),
        ) {
            let mut order: Vec<usize> = (0..m.cols()).collect();
            for (i, &s) in perm_seed.iter().enumerate().take(m.cols()) {
                order.swap(i, s % m.cols());
            }
            let cols: Vec<Vec<BigInt>> = order
                .iter()
                .map(|&j| {
                    let c = m.column(j);
                    if signs[j] { c.into_iter().map(|x| -x).collect() } else { c }
                })
                .collect();
            let permuted = IntMatrix::from_columns(m.rows(), &cols);
            proptest::prop_assert_eq!(
                crate::arith::cokernel_invariants(&permuted),
                crate::arith::cokernel_invariants(&m)
            );
        }
    }
}
