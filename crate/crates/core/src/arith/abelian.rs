//! Finitely generated abelian groups as invariant factors, and the lattice
//! computations that produce them.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::matrix::{integer_kernel, smith_decomposition, IntMatrix};
use crate::error::{Error, Result};

/// `Z/d1 + ... + Z/dk + Z^free_rank` with `d1 | d2 | ... | dk`, every `di >= 2`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AbelianInvariants {
    torsion: Vec<BigUint>,
    free_rank: usize,
}

impl AbelianInvariants {
    pub fn trivial() -> Self {
        Self::default()
    }

    /// Invariants of `Z^n / diag(orders)`; zero entries contribute free rank,
    /// unit entries vanish, and the rest are rearranged into a divisibility chain.
    pub fn from_cyclic_orders(orders: &[u64]) -> Self {
        cokernel_invariants(&IntMatrix::diagonal(orders))
    }

    pub fn torsion(&self) -> &[BigUint] {
        &self.torsion
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn is_trivial(&self) -> bool {
        self.torsion.is_empty() && self.free_rank == 0
    }

    /// Group order, or `None` when the group is infinite.
    pub fn order(&self) -> Option<BigUint> {
        (self.free_rank == 0).then(|| self.torsion.iter().product())
    }

    /// Torsion factors as machine integers; `None` if one does not fit.
    pub fn torsion_u64(&self) -> Option<Vec<u64>> {
        self.torsion.iter().map(ToPrimitive::to_u64).collect()
    }

    fn from_diagonal(diag: impl IntoIterator<Item = BigInt>, generators: usize) -> Self {
        let mut torsion = Vec::new();
        let mut nonzero = 0;
        for d in diag {
            if d.is_zero() {
                continue;
            }
            nonzero += 1;
            let d = d.magnitude().clone();
            if !d.is_one() {
                torsion.push(d);
            }
        }
        AbelianInvariants {
            torsion,
            free_rank: generators - nonzero,
        }
    }
}

impl fmt::Display for AbelianInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts: Vec<String> = self.torsion.iter().map(|d| format!("Z/{d}")).collect();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".into()),
            r => parts.push(format!("Z^{r}")),
        }
        write!(f, "{}", parts.join(" x "))
    }
}

/// Serialized as `{"torsion": [..], "free_rank": r}` with machine-sized factors.
impl Serialize for AbelianInvariants {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::{Error as _, SerializeStruct};
        let torsion = self
            .torsion_u64()
            .ok_or_else(|| S::Error::custom("invariant factor exceeds 64 bits"))?;
        let mut st = s.serialize_struct("AbelianInvariants", 2)?;
        st.serialize_field("torsion", &torsion)?;
        st.serialize_field("free_rank", &self.free_rank)?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for AbelianInvariants {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            torsion: Vec<u64>,
            free_rank: usize,
        }
        let raw = Raw::deserialize(d)?;
        let mut orders = raw.torsion;
        orders.extend(std::iter::repeat_n(0, raw.free_rank));
        Ok(AbelianInvariants::from_cyclic_orders(&orders))
    }
}

/// Invariants of `Z^n / colspan(M)` where `M` has `n` rows.
pub fn cokernel_invariants(m: &IntMatrix) -> AbelianInvariants {
    let d = smith_decomposition(m);
    AbelianInvariants::from_diagonal(d.diagonal(), m.rows())
}

/// Invariants of `A / <gens>` where `A = Z^n / colspan(ambient_relations)`.
pub fn subgroup_quotient_invariants(
    ambient_relations: &IntMatrix,
    subgroup_generators: &[Vec<BigInt>],
) -> Result<AbelianInvariants> {
    let n = ambient_relations.rows();
    check_dims(n, subgroup_generators)?;
    let gens = IntMatrix::from_columns(n, subgroup_generators);
    Ok(cokernel_invariants(&ambient_relations.hcat(&gens)))
}

/// Invariants of the subgroup generated by `gens` inside `Z^n / colspan(relations)`.
pub fn subgroup_invariants(relations: &IntMatrix, gens: &[Vec<BigInt>]) -> Result<AbelianInvariants> {
    let n = relations.rows();
    check_dims(n, gens)?;
    let outer = IntMatrix::from_columns(n, gens).hcat(relations);
    lattice_quotient_invariants(&outer, relations)
}

/// Invariants of `(H + L) / (K + L)` where `L = colspan(relations)` and
/// `K <= H` are given by generators; typical use is `M* / M0*` inside a
/// finite abelian section.
pub fn section_invariants(
    relations: &IntMatrix,
    upper: &[Vec<BigInt>],
    lower: &[Vec<BigInt>],
) -> Result<AbelianInvariants> {
    let n = relations.rows();
    check_dims(n, upper)?;
    check_dims(n, lower)?;
    let outer = IntMatrix::from_columns(n, upper).hcat(relations);
    let inner = IntMatrix::from_columns(n, lower).hcat(relations);
    lattice_quotient_invariants(&outer, &inner)
}

/// Invariants of `colspan(outer) / colspan(inner)`; fails if the inner
/// lattice is not contained in the outer one.
pub fn lattice_quotient_invariants(outer: &IntMatrix, inner: &IntMatrix) -> Result<AbelianInvariants> {
    let n = outer.rows();
    if inner.rows() != n {
        return Err(Error::Dimension {
            expected: n,
            actual: inner.rows(),
        });
    }
    let d = smith_decomposition(outer);
    let diag = d.diagonal();
    // In coordinates y = U v the outer lattice is d_1 Z + ... + d_r Z.
    let mut coords = IntMatrix::zeros(d.rank, inner.cols());
    for j in 0..inner.cols() {
        let y = d.u.mul_vec(&inner.column(j));
        for (i, yi) in y.iter().enumerate() {
            if i < d.rank {
                let (q, r) = yi.div_rem(&diag[i]);
                if !r.is_zero() {
                    return Err(Error::NotInSubmodule);
                }
                coords[(i, j)] = q;
            } else if !yi.is_zero() {
                return Err(Error::NotInSubmodule);
            }
        }
    }
    Ok(cokernel_invariants(&coords))
}

/// Kernel of `phi: (+) Z/src_i -> (+) Z/dst_j` given by the integer matrix
/// `phi` (rows indexed by the target), returned as invariants of the kernel.
pub fn homomorphism_kernel_invariants(phi: &IntMatrix, src: &[BigInt], dst: &[BigInt]) -> Result<AbelianInvariants> {
    let (m, n) = (phi.rows(), phi.cols());
    if src.len() != n || dst.len() != m {
        return Err(Error::Dimension {
            expected: n,
            actual: src.len(),
        });
    }
    // x in kernel iff phi x + diag(dst) y = 0 for some integer y.
    let neg_dst: Vec<BigInt> = dst.iter().map(|d| -d).collect();
    let mut dst_diag = IntMatrix::zeros(m, m);
    for (i, d) in neg_dst.into_iter().enumerate() {
        dst_diag[(i, i)] = d;
    }
    let k = integer_kernel(&phi.hcat(&dst_diag));
    let mut proj = IntMatrix::zeros(n, k.cols());
    for j in 0..k.cols() {
        for i in 0..n {
            proj[(i, j)] = k[(i, j)].clone();
        }
    }
    let mut src_diag = IntMatrix::zeros(n, n);
    for (i, d) in src.iter().enumerate() {
        src_diag[(i, i)] = d.clone();
    }
    lattice_quotient_invariants(&proj.hcat(&src_diag), &src_diag)
}

fn check_dims(n: usize, vs: &[Vec<BigInt>]) -> Result<()> {
    match vs.iter().find(|v| v.len() != n) {
        Some(v) => Err(Error::Dimension {
            expected: n,
            actual: v.len(),
        }),
        None => Ok(()),
    }
}

pub(crate) fn to_bigint_vec(v: &[u64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn inv(torsion: &[u64], free: usize) -> AbelianInvariants {
        AbelianInvariants {
            torsion: torsion.iter().map(|&d| BigUint::from(d)).collect(),
            free_rank: free,
        }
    }

    fn bv(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn cokernel_examples() {
        assert_eq!(cokernel_invariants(&IntMatrix::diagonal(&[2i64, 3])), inv(&[6], 0));
        assert_eq!(cokernel_invariants(&IntMatrix::zeros(2, 0)), inv(&[], 2));
        assert_eq!(cokernel_invariants(&IntMatrix::identity(3)), inv(&[], 0));
        assert_eq!(AbelianInvariants::from_cyclic_orders(&[4, 6, 1, 0]), inv(&[2, 12], 1));
    }

    #[test]
    fn subgroup_quotient_examples() {
        let z4 = IntMatrix::diagonal(&[4i64]);
        assert_eq!(subgroup_quotient_invariants(&z4, &[bv(&[2])]).unwrap(), inv(&[2], 0));
        let z6 = IntMatrix::diagonal(&[6i64]);
        assert_eq!(subgroup_quotient_invariants(&z6, &[]).unwrap(), inv(&[6], 0));
        let z5 = IntMatrix::diagonal(&[5i64]);
        assert!(subgroup_quotient_invariants(&z5, &[bv(&[1])]).unwrap().is_trivial());
        assert!(matches!(
            subgroup_quotient_invariants(&z5, &[bv(&[1, 0])]),
            Err(Error::Dimension { .. })
        ));
    }

    #[test]
    fn subgroups_and_sections() {
        // <(2,0),(0,3)> in Z/4 x Z/9 is Z/2 x Z/3 = Z/6.
        let rel = IntMatrix::diagonal(&[4i64, 9]);
        let h = [bv(&[2, 0]), bv(&[0, 3])];
        assert_eq!(subgroup_invariants(&rel, &h).unwrap(), inv(&[6], 0));
        assert_eq!(section_invariants(&rel, &h, &[bv(&[2, 0])]).unwrap(), inv(&[3], 0));
        assert_eq!(section_invariants(&rel, &h, &h).unwrap(), inv(&[], 0));
    }

    #[test]
    fn lattice_containment_is_checked() {
        let outer = IntMatrix::diagonal(&[2i64]);
        let inner = IntMatrix::diagonal(&[3i64]);
        assert!(matches!(lattice_quotient_invariants(&outer, &inner), Err(Error::NotInSubmodule)));
    }

    #[test]
    fn kernel_of_homomorphism() {
        // Z/4 -> Z/2, x -> x: kernel Z/2.
        let phi = IntMatrix::from_rows(&[vec![1i64]]);
        let k = homomorphism_kernel_invariants(&phi, &bv(&[4]), &bv(&[2])).unwrap();
        assert_eq!(k, inv(&[2], 0));
        // Z/3 x Z/3 -> Z/3, (x,y) -> x+y: kernel Z/3.
        let phi = IntMatrix::from_rows(&[vec![1i64, 1]]);
        let k = homomorphism_kernel_invariants(&phi, &bv(&[3, 3]), &bv(&[3])).unwrap();
        assert_eq!(k, inv(&[3], 0));
        // Zero target: everything is in the kernel.
        let phi = IntMatrix::zeros(0, 2);
        let k = homomorphism_kernel_invariants(&phi, &bv(&[2, 4]), &[]).unwrap();
        assert_eq!(k, inv(&[2, 4], 0));
    }

    #[test]
    fn display_and_serde_shape() {
        assert_eq!(inv(&[2, 4], 1).to_string(), "Z/2 x Z/4 x Z");
        assert_eq!(inv(&[], 0).to_string(), "0");
    }
}
