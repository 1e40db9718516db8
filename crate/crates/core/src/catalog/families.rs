use std::str::FromStr;

use super::CatalogEntry;
use crate::error::{Error, Result};
use crate::pcgroup::parse_presentation;

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

/// Least quadratic non-residue modulo an odd prime.
pub(crate) fn least_nonresidue(p: u64) -> u64 {
    (2..p)
        .find(|&r| (1..p).all(|x| x * x % p != r))
        .expect("odd primes have non-residues")
}

/// Checks `p` for the order-`p^5` families: prime and `> 3`, with 3
/// accepted under a warning.
fn family_prime(p: u64, warnings: &mut Vec<String>) -> Result<()> {
    if !is_prime(p) || p < 3 {
        return Err(Error::InvalidParameter(format!("p = {p} must be a prime greater than 3")));
    }
    if p == 3 {
        warnings.push("p = 3 lies outside the p > 3 range of this family".into());
    }
    Ok(())
}

fn finish(
    key: String,
    prime: Option<u64>,
    residue: Option<u64>,
    provenance: &str,
    warnings: Vec<String>,
    source: &str,
) -> Result<CatalogEntry> {
    let presentation = parse_presentation(source)?;
    let report = presentation.check_consistency();
    if !report.is_consistent() {
        return Err(Error::Inconsistent {
            failures: report.failures.into_iter().map(|f| format!("{key}: {}", f.overlap)).collect(),
        });
    }
    Ok(CatalogEntry {
        key,
        prime,
        residue,
        provenance: provenance.into(),
        warnings,
        presentation,
    })
}

/// `[a1,a2] = [a3,a4] = a1^p = b`, other `p`-th powers trivial.
///
/// Stored as `a2^a1 = a2 b^(p-1)` and `a4^a3 = a4 b^(p-1)`.
pub fn phi5_2111(p: u64) -> Result<CatalogEntry> {
    let mut warnings = vec![];
    family_prime(p, &mut warnings)?;
    let src = format!(
        "gens: a1 a2 a3 a4 b\n\
         order a1 {p}\norder a2 {p}\norder a3 {p}\norder a4 {p}\norder b {p}\n\
         pow a1 = b\n\
         conj a2^a1 = a2 b^{q}\n\
         conj a4^a3 = a4 b^{q}\n",
        q = p - 1
    );
    finish(format!("phi5_2111?p={p}"), Some(p), None, "James family Phi5(2111), class 2", warnings, &src)
}

/// `[a_i,a] = a_(i+1)` for `i = 1,2`, `[a1,b] = a3`, and
/// `a^p = a1^p a2^C(p,2) a3^C(p,3) = a2^p = a3^p = b^p = 1`.
///
/// The pcgs is ordered `a, b, a1, a2, a3`; the power relation of `a1` is the
/// expansion solved for `a1^p`, which is trivial for `p > 3`.
pub fn phi7_15(p: u64) -> Result<CatalogEntry> {
    let mut warnings = vec![];
    family_prime(p, &mut warnings)?;
    let e2 = (p - binomial(p, 2) % p) % p;
    let e3 = (p - binomial(p, 3) % p) % p;
    let mut pow = String::new();
    let rhs: Vec<String> = [("a2", e2), ("a3", e3)]
        .iter()
        .filter(|(_, e)| *e != 0)
        .map(|(g, e)| if *e == 1 { g.to_string() } else { format!("{g}^{e}") })
        .collect();
    if !rhs.is_empty() {
        pow = format!("pow a1 = {}\n", rhs.join(" "));
    }
    let src = format!(
        "gens: a b a1 a2 a3\n\
         order a {p}\norder b {p}\norder a1 {p}\norder a2 {p}\norder a3 {p}\n\
         {pow}\
         conj a1^a = a1 a2\n\
         conj a2^a = a2 a3\n\
         conj a1^b = a1 a3\n"
    );
    finish(format!("phi7_15?p={p}"), Some(p), None, "James family Phi7(1^5), class 3", warnings, &src)
}

/// `[b2,b1] = b3`, `[b3,b1] = [b2,b5] = b4`, `b2^(p) = b4^r`, and
/// `b1^p = b3^p = b4^p = b5^p = 1`, where `b2^(p) = b2^p b3^C(p,2) b4^C(p,3)`.
///
/// The pcgs is ordered `b1, b5, b2, b3, b4`. With `literal` set, the extra
/// relation `[b3,b5] = b4` is added as well; by the Hall-Witt identity that
/// forces `b4 = 1` when `[b5,b1] = 1`, so the literal form is inconsistent
/// and is rejected.
pub fn phi7_2111br(p: u64, r: u64, literal: bool) -> Result<CatalogEntry> {
    let mut warnings = vec![];
    family_prime(p, &mut warnings)?;
    let nonresidue = least_nonresidue(p);
    if r != 1 && r != nonresidue {
        return Err(Error::InvalidParameter(format!(
            "r = {r} is not admissible for p = {p}: use 1 or {nonresidue}"
        )));
    }
    warnings.push(
        "b2^(p) is expanded as b2^p b3^C(p,2) b4^C(p,3) by analogy with the a1^(p) convention; \
         check against the original tables before relying on this entry"
            .into(),
    );
    if !literal {
        warnings.push("the relation [b3,b5] = b4 is omitted: together with the others it is inconsistent".into());
    }
    let e3 = (p - binomial(p, 2) % p) % p;
    let e4 = (r % p + p - binomial(p, 3) % p) % p;
    let rhs: Vec<String> = [("b3", e3), ("b4", e4)]
        .iter()
        .filter(|(_, e)| *e != 0)
        .map(|(g, e)| if *e == 1 { g.to_string() } else { format!("{g}^{e}") })
        .collect();
    let pow = if rhs.is_empty() {
        String::new()
    } else {
        format!("pow b2 = {}\n", rhs.join(" "))
    };
    let extra = if literal { "conj b3^b5 = b3 b4\n" } else { "" };
    let src = format!(
        "gens: b1 b5 b2 b3 b4\n\
         order b1 {p}\norder b5 {p}\norder b2 {p}\norder b3 {p}\norder b4 {p}\n\
         {pow}\
         conj b2^b1 = b2 b3\n\
         conj b3^b1 = b3 b4\n\
         conj b2^b5 = b2 b4\n\
         {extra}"
    );
    let key = if literal {
        format!("phi7_2111br?p={p}&r={r}&literal=1")
    } else {
        format!("phi7_2111br?p={p}&r={r}")
    };
    finish(key, Some(p), Some(r), "James family Phi7(2111)b_r, class 3", warnings, &src)
}

/// `<a1, a2, b | [a1,a2] = b = a1^p, b^(p^2) = a2^(p^2) = 1>` with pcgs
/// `a1, a2, b` of relative orders `p, p^2, p^2`.
pub fn phi8_32(p: u64) -> Result<CatalogEntry> {
    let mut warnings = vec![];
    family_prime(p, &mut warnings)?;
    let q = p * p;
    let src = format!(
        "gens: a1 a2 b\n\
         order a1 {p}\norder a2 {q}\norder b {q}\n\
         pow a1 = b\n\
         conj a2^a1 = a2 b^{}\n\
         conj b^a2 = b^{}\n",
        q - 1,
        p + 1
    );
    finish(format!("phi8_32?p={p}"), Some(p), None, "James family Phi8(32), class 3", warnings, &src)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Phi9Variant {
    /// All power relations trivial, so `a1^p = 1`.
    ALike,
    /// `a1^p = a4`, giving `a1` order `p^2`.
    BLike,
}

impl FromStr for Phi9Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "a_like" => Ok(Phi9Variant::ALike),
            "b_like" => Ok(Phi9Variant::BLike),
            _ => Err(Error::InvalidParameter(format!(
                "unknown variant `{s}` (expected a_like or b_like)"
            ))),
        }
    }
}

/// `[a_i, a] = a_(i+1)` for `i = 1,2,3`, all other commutators trivial.
///
/// Only part of the power structure of this family is fixed by these
/// relations, so the entry is a representative, not a specific member.
pub fn phi9_skeleton(p: u64, variant: Phi9Variant) -> Result<CatalogEntry> {
    let mut warnings = vec![];
    family_prime(p, &mut warnings)?;
    let (name, pow) = match variant {
        Phi9Variant::ALike => ("a_like", ""),
        Phi9Variant::BLike => ("b_like", "pow a1 = a4\n"),
    };
    warnings.push(
        "power relations are a consistent choice, not a transcription of a specific group in the family".into(),
    );
    let src = format!(
        "gens: a a1 a2 a3 a4\n\
         order a {p}\norder a1 {p}\norder a2 {p}\norder a3 {p}\norder a4 {p}\n\
         {pow}\
         conj a1^a = a1 a2\n\
         conj a2^a = a2 a3\n\
         conj a3^a = a3 a4\n"
    );
    finish(
        format!("phi9_skeleton?p={p}&variant={name}"),
        Some(p),
        None,
        "James family Phi9 skeleton, class 4",
        warnings,
        &src,
    )
}

/// `Z/n1 x ... x Z/nk`, one pcgs generator per factor.
pub fn abelian(orders: &[u64]) -> Result<CatalogEntry> {
    if let Some(o) = orders.iter().find(|&&o| o < 2) {
        return Err(Error::InvalidParameter(format!("cyclic order {o} must be at least 2")));
    }
    let names: Vec<String> = (1..=orders.len()).map(|i| format!("x{i}")).collect();
    let mut src = format!("gens: {}\n", names.join(" "));
    for (n, o) in names.iter().zip(orders) {
        src.push_str(&format!("order {n} {o}\n"));
    }
    let list: Vec<String> = orders.iter().map(u64::to_string).collect();
    finish(
        format!("abelian?orders={}", list.join(",")),
        None,
        None,
        "standard family: abelian",
        vec![],
        &src,
    )
}

/// `<a, b, c | b^a = b c>` with all generators of order `p`.
pub fn heisenberg(p: u64) -> Result<CatalogEntry> {
    if !is_prime(p) {
        return Err(Error::InvalidParameter(format!("p = {p} is not prime")));
    }
    let src = format!("gens: a b c\norder a {p}\norder b {p}\norder c {p}\nconj b^a = b c\n");
    let prime = Some(p);
    finish(format!("heisenberg?p={p}"), prime, None, "standard family: Heisenberg", vec![], &src)
}

fn log2_exact(n: u64, min: u64, what: &str) -> Result<u32> {
    if n < min || !n.is_power_of_two() {
        return Err(Error::InvalidParameter(format!(
            "{what} order {n} must be a power of 2 and at least {min}"
        )));
    }
    Ok(n.trailing_zeros())
}

/// Shared pcgs `a, b1, ..., b(k-1)` with `b_i = b^(2^(i-1))` for the
/// dihedral and quaternion groups of order `2^k`.
fn two_group_source(k: u32, a_square_central: bool) -> String {
    let m = (k - 1) as usize;
    let bs: Vec<String> = (1..=m).map(|i| format!("b{i}")).collect();
    let mut src = format!("gens: a {}\norder a 2\n", bs.join(" "));
    for b in &bs {
        src.push_str(&format!("order {b} 2\n"));
    }
    if a_square_central {
        src.push_str(&format!("pow a = {}\n", bs[m - 1]));
    }
    for i in 0..m - 1 {
        src.push_str(&format!("pow {} = {}\n", bs[i], bs[i + 1]));
    }
    // b_i^a = b^(-2^(i-1)) = b^(2^(k-1) - 2^(i-1)), written in binary on b_i..b_m.
    let rotation = 1u64 << m;
    for i in 0..m {
        let e = rotation - (1u64 << i);
        let rhs: Vec<&str> = (0..m).filter(|&j| e >> j & 1 == 1).map(|j| bs[j].as_str()).collect();
        if rhs != [bs[i].as_str()] {
            src.push_str(&format!("conj {}^a = {}\n", bs[i], rhs.join(" ")));
        }
    }
    src
}

/// Dihedral group of order `n = 2^k >= 4`.
pub fn dihedral(n: u64) -> Result<CatalogEntry> {
    let k = log2_exact(n, 4, "dihedral")?;
    let src = two_group_source(k, false);
    finish(format!("dihedral?order={n}"), Some(2), None, "standard family: dihedral", vec![], &src)
}

/// Generalized quaternion group of order `n = 2^k >= 8`.
pub fn quaternion(n: u64) -> Result<CatalogEntry> {
    let k = log2_exact(n, 8, "quaternion")?;
    let src = two_group_source(k, true);
    finish(format!("quaternion?order={n}"), Some(2), None, "standard family: quaternion", vec![], &src)
}
