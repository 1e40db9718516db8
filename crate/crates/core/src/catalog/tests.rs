use num_bigint::BigUint;

use super::*;
use crate::schur::{compute, EngineOptions};

fn phi_entries(p: u64) -> Vec<(CatalogEntry, usize)> {
    let r = families::least_nonresidue(p);
    vec![
        (phi5_2111(p).unwrap(), 2),
        (phi7_15(p).unwrap(), 3),
        (phi7_2111br(p, 1, false).unwrap(), 3),
        (phi7_2111br(p, r, false).unwrap(), 3),
        (phi8_32(p).unwrap(), 3),
        (phi9_skeleton(p, Phi9Variant::ALike).unwrap(), 4),
        (phi9_skeleton(p, Phi9Variant::BLike).unwrap(), 4),
    ]
}

#[test]
fn phi_entries_have_order_and_class() {
    for p in [5u64, 7, 11, 13] {
        for (e, class) in phi_entries(p) {
            let pres = &e.presentation;
            assert!(pres.is_consistent(), "{}", e.key);
            assert_eq!(pres.order(), BigUint::from(p).pow(5), "{}", e.key);
            assert_eq!(pres.nilpotency_class(), Some(class), "{}", e.key);
        }
    }
}

#[test]
fn residue_parameter() {
    assert_eq!(families::least_nonresidue(5), 2);
    assert_eq!(families::least_nonresidue(7), 3);
    assert!(phi7_2111br(5, 2, false).is_ok());
    assert!(matches!(phi7_2111br(5, 3, false), Err(Error::InvalidParameter(_))));
    assert!(matches!(phi7_2111br(5, 2, true), Err(Error::Inconsistent { .. })));
    assert!(matches!(phi5_2111(4), Err(Error::InvalidParameter(_))));
    assert!(matches!(phi5_2111(2), Err(Error::InvalidParameter(_))));
    let e = phi5_2111(3).unwrap();
    assert!(!e.warnings.is_empty());
}

#[test]
fn descriptors() {
    let e = entry("phi7_2111br?p=5&r=2").unwrap();
    assert_eq!(e.key, "phi7_2111br?p=5&r=2");
    assert_eq!(e.residue, Some(2));
    assert_eq!(entry("abelian?orders=2,2").unwrap().presentation.order(), BigUint::from(4u32));
    assert!(matches!(entry("nosuch?p=5"), Err(Error::UnknownKey(_))));
    assert!(matches!(entry("phi8_32"), Err(Error::InvalidParameter(_))));
    assert!(matches!(entry("phi8_32?p=5&x=1"), Err(Error::InvalidParameter(_))));
    assert!(matches!(entry("phi9_skeleton?p=5&variant=c"), Err(Error::InvalidParameter(_))));
    for k in KEYS {
        assert!(!k.parameters.is_empty());
    }
}

#[test]
fn emitted_entries_round_trip() {
    for (e, _) in phi_entries(5) {
        let text = emit(&e);
        let back = load_presentation_str(&text, "x").unwrap();
        assert_eq!(back.presentation, e.presentation);
        assert_eq!(back.key, e.key);
        assert_eq!(back.prime, Some(5));
    }
}

#[test]
fn malformed_file_reports_line() {
    let err = load_presentation_str("gens: a b\norder a 5\norder b 5\nconj a^b = a\n", "x").unwrap_err();
    assert!(matches!(err, Error::Semantic { line: 4, .. }), "{err}");
    let err = load_presentation_str("gens: a b c\norder a 3\norder b 3\norder c 3\nconj b^a = c\n", "x").unwrap_err();
    assert!(matches!(err, Error::Inconsistent { .. }));
    let err = load_presentation_file(Path::new("/nonexistent/file.pc")).unwrap_err();
    assert!(matches!(err, Error::Io { .. }));
}

#[test]
fn two_groups() {
    for n in [4u64, 8, 16, 32] {
        let d = dihedral(n).unwrap().presentation;
        assert_eq!(d.order(), BigUint::from(n));
        let a = d.generator(0);
        let b = d.generator(1);
        assert_eq!(d.element_order(&b), BigUint::from(n / 2));
        assert_eq!(d.conjugate(&b, &a), d.inverse(&b));
    }
    for n in [8u64, 16, 32] {
        let q = quaternion(n).unwrap().presentation;
        let a = q.generator(0);
        let b = q.generator(1);
        assert_eq!(q.element_order(&a), BigUint::from(4u32));
        assert_eq!(q.element_order(&b), BigUint::from(n / 2));
        assert_eq!(q.conjugate(&b, &a), q.inverse(&b));
    }
    assert!(dihedral(12).is_err());
    assert!(quaternion(4).is_err());
}

#[test]
fn phi_entries_have_trivial_bogomolov_at_5() {
    for (e, _) in phi_entries(5) {
        let r = compute(&e.presentation, &EngineOptions::default(), true).unwrap();
        assert!(r.bogomolov.as_ref().unwrap().is_trivial(), "{}: {:?}", e.key, r);
    }
}
