use std::collections::HashSet;

use num_bigint::BigUint;
use proptest::prelude::*;

use super::*;
use crate::error::Error;

fn heisenberg(p: u64) -> PcPresentation {
    parse_presentation(&format!(
        "gens: a b c\norder a {p}\norder b {p}\norder c {p}\nconj b^a = b c\n"
    ))
    .unwrap()
}

fn quaternion() -> PcPresentation {
    parse_presentation("gens: a b c\norder a 2\norder b 2\norder c 2\npow a = c\npow b = c\nconj b^a = b c\n").unwrap()
}

fn dihedral8() -> PcPresentation {
    parse_presentation("gens: a b c\norder a 2\norder b 2\norder c 2\npow b = c\nconj b^a = b c\n").unwrap()
}

fn phi8(p: u64) -> PcPresentation {
    let q = p * p;
    parse_presentation(&format!(
        "gens: a1 a2 b\norder a1 {p}\norder a2 {q}\norder b {q}\npow a1 = b\nconj a2^a1 = a2 b^{}\nconj b^a2 = b^{}\n",
        q - 1,
        p + 1
    ))
    .unwrap()
}

fn el(p: &PcPresentation, e: &[u64]) -> GroupElement {
    p.element(e.to_vec()).unwrap()
}

#[test]
fn heisenberg_collection() {
    let h = heisenberg(5);
    assert_eq!(h.relative_orders(), &[5, 5, 5]);
    assert_eq!(h.collect(&[(1, 1), (0, 1)]), el(&h, &[1, 1, 1]));
    assert_eq!(h.collect(&[]), h.identity());
    let (a, b, c) = (h.generator(0), h.generator(1), h.generator(2));
    assert_eq!(h.commutator(&b, &a), c);
    assert_eq!(h.element_order(&a), BigUint::from(5u32));
    assert_eq!(h.element_order(&h.identity()), BigUint::from(1u32));
    assert_eq!(h.multiply(&a, &h.inverse(&a)), h.identity());
}

#[test]
fn power_relation_is_reproduced() {
    let q = quaternion();
    let a = q.generator(0);
    assert_eq!(q.power(&a, 2), q.generator(2));
    assert_eq!(q.collect(&[(0, 2)]), q.generator(2));
    assert_eq!(q.element_order(&a), BigUint::from(4u32));
}

#[test]
fn self_reference_rejected() {
    let err = parse_presentation("gens: a b\norder a 2\norder b 2\npow a = a\n").unwrap_err();
    assert!(matches!(err, Error::Semantic { line: 4, .. }), "{err}");
}

#[test]
fn rejects_bad_sources() {
    let cases = [
        ("gens: a\norder a 1\n", 2),
        ("gens: a b\norder a 2\norder b 2\nconj a^b = a\n", 4),
        ("gens: a b c\norder a 2\norder b 2\norder c 2\nconj c^b = a\n", 5),
        ("gens: a b\norder a 3\norder b 3\npow a = b^-1\n", 4),
        ("gens: a b\norder a 3\norder b 3\npow a = b^3\n", 4),
        ("gens: a b c\norder a 3\norder b 3\norder c 3\npow a = c b\n", 5),
        ("gens: a b\norder a 3\norder b 3\npow a = z\n", 4),
        ("gens: a b\norder a 3\n", 1),
    ];
    for (src, line) in cases {
        match parse_presentation(src) {
            Err(Error::Semantic { line: l, .. }) => assert_eq!(l, line, "{src}"),
            other => panic!("expected semantic error for {src:?}, got {other:?}"),
        }
    }
}

#[test]
fn syntax_errors_carry_positions() {
    match parse_presentation("gens: a\norder a 2\nfrob a\n") {
        Err(Error::Syntax { line: 3, column: 1, .. }) => {}
        other => panic!("{other:?}"),
    }
    match parse_presentation("gens: a b\norder a 2\norder b 2\npow a = b^x\n") {
        Err(Error::Syntax { line: 4, column: 11, .. }) => {}
        other => panic!("{other:?}"),
    }
    match parse_presentation("gens: a\norder a two\n") {
        Err(Error::Syntax { line: 2, column: 9, .. }) => {}
        other => panic!("{other:?}"),
    }
}

#[test]
fn comments_and_metadata() {
    let doc = parse_document("# header\nkey: h3\nprime: 3\ngens: a b c # pcgs\norder a 3\norder b 3\norder c 3\nconj b^a = b c\n").unwrap();
    assert_eq!(doc.metadata("key"), Some("h3"));
    assert_eq!(doc.metadata("prime"), Some("3"));
    assert_eq!(doc.presentation, heisenberg(3));
}

#[test]
fn source_round_trip() {
    for p in [heisenberg(7), quaternion(), phi8(5)] {
        assert_eq!(parse_presentation(&p.to_source()).unwrap(), p);
    }
}

#[test]
fn consistency_examples() {
    assert!(heisenberg(3).is_consistent());
    assert!(quaternion().is_consistent());
    assert!(dihedral8().is_consistent());
    assert!(phi8(5).is_consistent());
    let abelian = parse_presentation("gens: x y z\norder x 4\norder y 6\norder z 2\n").unwrap();
    assert!(abelian.is_consistent());
    let tampered = parse_presentation("gens: a b c\norder a 3\norder b 3\norder c 3\nconj b^a = c\n").unwrap();
    let report = tampered.check_consistency();
    assert!(!report.is_consistent());
    assert!(!report.failures.is_empty());
    // a^3 = b with b^a = b^2 is not an automorphism-compatible choice
    let bad_power = parse_presentation("gens: a b\norder a 3\norder b 3\npow a = b\nconj b^a = b^2\n").unwrap();
    assert!(!bad_power.is_consistent());
}

fn multiplication_table(p: &PcPresentation) -> (FiniteGroup<'_>, Vec<Vec<usize>>) {
    let g = FiniteGroup::new(p, 10_000).unwrap();
    let elems: Vec<GroupElement> = g.elements().collect();
    let table = elems
        .iter()
        .map(|x| elems.iter().map(|y| g.index_of(&p.multiply(x, y))).collect())
        .collect();
    (g, table)
}

#[test]
fn heisenberg_table_is_associative() {
    let h = heisenberg(3);
    let (_, t) = multiplication_table(&h);
    let n = t.len();
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                assert_eq!(t[t[x][y]][z], t[x][t[y][z]]);
            }
        }
    }
}

#[test]
fn inconsistent_table_is_not_associative() {
    let bad = parse_presentation("gens: a b c\norder a 3\norder b 3\norder c 3\nconj b^a = c\n").unwrap();
    let (_, t) = multiplication_table(&bad);
    let n = t.len();
    let assoc = (0..n).all(|x| (0..n).all(|y| (0..n).all(|z| t[t[x][y]][z] == t[x][t[y][z]])));
    assert!(!assoc);
}

/// Count of normal forms reachable from the identity by right
/// multiplication with generators.
fn reachable(p: &PcPresentation) -> usize {
    let mut seen = HashSet::new();
    let mut stack = vec![p.identity()];
    seen.insert(p.identity());
    while let Some(x) = stack.pop() {
        for g in p.generators() {
            let y = p.multiply(&x, &g);
            if seen.insert(y.clone()) {
                stack.push(y);
            }
        }
    }
    seen.len()
}

#[test]
fn reachable_count_matches_order() {
    for p in [heisenberg(3), heisenberg(5), quaternion(), dihedral8(), phi8(3)] {
        let order = p.order_u128().unwrap() as usize;
        assert!(order <= 2000);
        assert_eq!(reachable(&p), order);
    }
}

#[test]
fn heisenberg_classes() {
    let h = heisenberg(3);
    let g = FiniteGroup::new(&h, 1000).unwrap();
    let classes = g.conjugacy_classes();
    assert_eq!(classes.len(), 11);
    assert_eq!(classes.iter().map(|c| c.size).sum::<u64>(), 27);
    let c = h.generator(2);
    assert_eq!(g.centralizer(&c).order(), &BigUint::from(27u32));
    for class in &classes {
        let cent = g.centralizer(&class.representative);
        assert_eq!(cent.order() * BigUint::from(class.size), BigUint::from(27u32));
        assert!(cent.contains(&h, &class.representative));
    }
    assert_eq!(g.center().order(), &BigUint::from(3u32));
}

#[test]
fn abelian_enumeration() {
    let a = parse_presentation("gens: x y\norder x 4\norder y 2\npow x = y\n").unwrap();
    let g = FiniteGroup::new(&a, 100).unwrap();
    assert_eq!(g.conjugacy_classes().len(), 8);
    let max = g.maximal_abelian_subgroups();
    assert_eq!(max.len(), 1);
    assert_eq!(max[0].order(), &BigUint::from(8u32));
    assert_eq!(a.nilpotency_class(), Some(1));
    assert!(a.derived_subgroup().is_trivial());
}

#[test]
fn maximal_abelian_examples() {
    let h = heisenberg(3);
    let g = FiniteGroup::new(&h, 1000).unwrap();
    let max = g.maximal_abelian_subgroups();
    assert_eq!(max.len(), 4);
    let z = g.center();
    for m in &max {
        assert_eq!(m.order(), &BigUint::from(9u32));
        assert!(m.is_abelian(&h));
        assert!(z.is_subgroup_of(&h, m));
    }

    let q = quaternion();
    let g = FiniteGroup::new(&q, 1000).unwrap();
    let max = g.maximal_abelian_subgroups();
    assert_eq!(max.len(), 3);
    for m in &max {
        assert_eq!(m.order(), &BigUint::from(4u32));
        assert_eq!(q.element_order(&m.pcgs()[0]), BigUint::from(4u32), "cyclic of order 4");
    }
}

#[test]
fn series_examples() {
    let h = heisenberg(5);
    assert_eq!(h.nilpotency_class(), Some(2));
    let d = h.derived_subgroup();
    assert_eq!(d.pcgs(), &[h.generator(2)]);
    assert_eq!(phi8(5).nilpotency_class(), Some(3));
    assert_eq!(phi8(5).order(), BigUint::from(3125u32));
    let trivial = PcPresentation::new(vec![], vec![], vec![], vec![]).unwrap();
    assert_eq!(trivial.nilpotency_class(), Some(0));
    // S3 is not nilpotent
    let s3 = parse_presentation("gens: a b\norder a 2\norder b 3\nconj b^a = b^2\n").unwrap();
    assert!(s3.is_consistent());
    assert_eq!(s3.nilpotency_class(), None);
    assert_eq!(s3.derived_subgroup().order(), &BigUint::from(3u32));
}

#[test]
fn non_prime_relative_orders_in_subgroups() {
    let p = phi8(3);
    let a2 = p.generator(1);
    let s = Subgroup::generated_by(&p, &[p.power(&a2, 3)]);
    assert_eq!(s.order(), &BigUint::from(3u32));
    let s = Subgroup::generated_by(&p, std::slice::from_ref(&a2));
    assert_eq!(s.order(), &BigUint::from(9u32));
    assert_eq!(Subgroup::whole(&p).order(), &BigUint::from(243u32));
}

fn small_groups() -> Vec<PcPresentation> {
    vec![heisenberg(3), quaternion(), dihedral8(), phi8(3)]
}

fn arb_word(n: usize) -> impl Strategy<Value = Vec<(usize, i64)>> {
    prop::collection::vec((0..n, -5i64..12), 0..12)
}

proptest! {
    #[test]
    fn collection_confluence(gi in 0usize..4, u in arb_word(3), v in arb_word(3)) {
        let p = &small_groups()[gi];
        let mut uv = u.clone();
        uv.extend_from_slice(&v);
        let direct = p.collect(&uv);
        let nu = p.collect(&u);
        let nv = p.collect(&v);
        let mut w = nu.word();
        w.extend(nv.word());
        prop_assert_eq!(&direct, &p.collect(&w));
        prop_assert_eq!(direct, p.multiply(&nu, &nv));
    }

    #[test]
    fn convention_lock(gi in 0usize..4, u in arb_word(3), v in arb_word(3)) {
        let p = &small_groups()[gi];
        let x = p.collect(&u);
        let y = p.collect(&v);
        let mut w: Vec<(usize, i64)> = x.word().into_iter().rev().map(|(g, e)| (g, -e)).collect();
        w.extend(y.word().into_iter().rev().map(|(g, e)| (g, -e)));
        w.extend(x.word());
        w.extend(y.word());
        prop_assert_eq!(p.collect(&w), p.commutator(&x, &y));
        prop_assert_eq!(p.conjugate(&x, &y), p.multiply(&x, &p.commutator(&x, &y)));
    }

    #[test]
    fn centralizer_order_divides(gi in 0usize..4, u in arb_word(3)) {
        let p = &small_groups()[gi];
        let g = FiniteGroup::new(p, 10_000).unwrap();
        let x = p.collect(&u);
        let c = g.centralizer(&x);
        prop_assert!(c.contains(p, &x));
        prop_assert_eq!(BigUint::from(g.order()) % c.order(), BigUint::from(0u32));
        for b in c.pcgs() {
            prop_assert!(p.commute(b, &x));
        }
    }

    #[test]
    fn maximal_abelian_contain_center(gi in 0usize..4) {
        let p = &small_groups()[gi];
        let g = FiniteGroup::new(p, 10_000).unwrap();
        let z = g.center();
        for m in g.maximal_abelian_subgroups() {
            prop_assert!(m.is_abelian(p));
            prop_assert!(z.is_subgroup_of(p, &m));
        }
    }
}
