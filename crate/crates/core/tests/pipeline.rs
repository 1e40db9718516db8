use bmult_core::arith::AbelianInvariants;
use bmult_core::catalog::{self, emit, load_presentation_file, load_presentation_str};
use bmult_core::cocycle::{b0_oracle, multiplier_oracle, OracleOptions};
use bmult_core::schur::{compute, EngineOptions};
use bmult_core::Error;

fn inv(orders: &[u64]) -> AbelianInvariants {
    AbelianInvariants::from_cyclic_orders(orders)
}

#[test]
fn engine_and_oracle_agree_through_public_api() {
    for key in ["dihedral?order=8", "quaternion?order=8", "heisenberg?p=3", "abelian?orders=4,2"] {
        let p = catalog::entry(key).unwrap().presentation;
        let r = compute(&p, &EngineOptions::default(), true).unwrap();
        let opts = OracleOptions::default();
        assert_eq!(r.multiplier, multiplier_oracle(&p, &opts).unwrap(), "{key}");
        assert_eq!(r.bogomolov.unwrap(), b0_oracle(&p, &opts).unwrap(), "{key}");
        assert_eq!(r.stable, Some(true));
    }
}

#[test]
fn nontrivial_fixture_from_disk() {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/../../fixtures/b0_nontrivial_64.pc");
    let entry = load_presentation_file(path.as_ref()).unwrap();
    assert_eq!(entry.key, "b0_nontrivial_64");
    let r = compute(&entry.presentation, &EngineOptions::default(), true).unwrap();
    assert_eq!(r.multiplier, inv(&[2, 4]));
    assert_eq!(r.bogomolov.unwrap(), inv(&[2]));
}

#[test]
fn emitted_entries_reload_to_the_same_result() {
    let entry = catalog::entry("phi8_32?p=5").unwrap();
    let reloaded = load_presentation_str(&emit(&entry), "unused").unwrap();
    assert_eq!(reloaded.key, entry.key);
    let opts = EngineOptions::default();
    let a = compute(&entry.presentation, &opts, true).unwrap();
    let b = compute(&reloaded.presentation, &opts, true).unwrap();
    assert_eq!(a.multiplier, b.multiplier);
    assert_eq!(a.bogomolov, b.bogomolov);
    assert!(a.bogomolov.unwrap().is_trivial());
}

#[test]
fn oracle_refuses_large_groups_by_default() {
    let p = catalog::entry("phi5_2111?p=5").unwrap().presentation;
    assert!(matches!(
        multiplier_oracle(&p, &OracleOptions::default()),
        Err(Error::OracleBound { .. })
    ));
}
