use num_bigint::BigUint;

use super::*;
use crate::pcgroup::parse_presentation;

fn pres(src: &str) -> PcPresentation {
    parse_presentation(src).unwrap()
}

fn heisenberg(p: u64) -> PcPresentation {
    pres(&format!("gens: a b c\norder a {p}\norder b {p}\norder c {p}\nconj b^a = b c\n"))
}

fn quaternion() -> PcPresentation {
    pres("gens: a b c\norder a 2\norder b 2\norder c 2\npow a = c\npow b = c\nconj b^a = b c\n")
}

fn dihedral8() -> PcPresentation {
    pres("gens: a b c\norder a 2\norder b 2\norder c 2\npow b = c\nconj b^a = b c\n")
}

fn inv(orders: &[u64]) -> AbelianInvariants {
    AbelianInvariants::from_cyclic_orders(orders)
}

#[test]
fn cyclic_has_trivial_multiplier() {
    for src in ["gens: a\norder a 5\n", "gens: a b\norder a 2\norder b 2\npow a = b\n"] {
        let p = pres(src);
        let ext = exterior_square(&p, default_tail_exponent(&p)).unwrap();
        assert!(ext.multiplier().is_trivial());
        assert!(ext.derived().is_trivial());
    }
}

#[test]
fn known_multipliers() {
    let cases = [
        (pres("gens: a b\norder a 2\norder b 2\n"), inv(&[2])),
        (pres("gens: a b\norder a 3\norder b 3\n"), inv(&[3])),
        (pres("gens: a b c\norder a 2\norder b 2\norder c 2\npow a = b\n"), inv(&[2])),
        (heisenberg(3), inv(&[3, 3])),
        (quaternion(), inv(&[])),
        (dihedral8(), inv(&[2])),
        (pres("gens: a b\norder a 2\norder b 3\nconj b^a = b^2\n"), inv(&[])),
    ];
    for (p, expected) in cases {
        let r = compute(&p, &EngineOptions::default(), true).unwrap();
        assert_eq!(r.multiplier, expected, "{p:?}");
        assert!(r.bogomolov.unwrap().is_trivial());
        assert_eq!(r.stable, Some(true));
        assert_eq!(r.exterior_square_order, &r.derived_order * r.multiplier.order().unwrap());
    }
}

#[test]
fn heisenberg_exterior_square_order() {
    let h = heisenberg(3);
    let ext = exterior_square(&h, 6).unwrap();
    assert_eq!(ext.order(), &BigUint::from(27u32));
    assert!(ext.derived().is_abelian(ext.extension().lifted()));
    let m0 = m0_subgroup(&ext, 1000).unwrap();
    assert_eq!(m0.pcgs(), ext.m_star().pcgs());
}

#[test]
fn lifted_presentation_projects_to_base() {
    let h = heisenberg(5);
    let cov = build_covering_extension(&h, 6).unwrap();
    let lifted = cov.lifted();
    assert!(lifted.is_consistent());
    for i in 0..h.len() {
        let w = lifted.power(&lifted.generator(i), h.relative_order(i));
        assert_eq!(cov.project(&w), h.power(&h.generator(i), h.relative_order(i)));
        assert!(cov.in_tails(&lifted.multiply(&w, &cov.lift_element(&h.inverse(&cov.project(&w))))));
    }
    let class = lifted.nilpotency_class().unwrap();
    assert!(class <= h.nilpotency_class().unwrap() + 1);
}

#[test]
fn identities_hold_on_small_groups() {
    for p in [heisenberg(3), quaternion(), dihedral8(), heisenberg(5)] {
        let ext = exterior_square(&p, default_tail_exponent(&p)).unwrap();
        let tau = verify_tau_identities(&ext, 200, 7, 10_000);
        assert!(tau.passed(), "{:?}", tau.violations);
        let pw = verify_power_expansions(&ext, 200, 11);
        assert!(pw.passed(), "{:?}", pw.violations);
        assert!(pw.checks > 0);
    }
}

#[test]
fn criterion_examples() {
    let r = criterion_class3(&heisenberg(5));
    assert!(r.applies, "{r:?}");
    assert_eq!(r.witnesses.len(), 1);
    assert_eq!(r.witnesses[0].generator, Some(2));
    assert!(criterion_class3(&pres("gens: a b\norder a 5\norder b 5\n")).applies);
    let h3 = criterion_class3(&heisenberg(3));
    assert!(!h3.applies);
    // Z/p^2 x| Z/p: [b, a] = b^p is a single generator but b^p is the commutator
    let r = criterion_class3(&pres(
        "gens: a b c\norder a 5\norder b 5\norder c 5\npow b = c\nconj b^a = b c\n",
    ));
    assert!(r.applies, "{r:?}");
}

#[test]
fn inconsistent_input_is_rejected() {
    let bad = pres("gens: a b c\norder a 3\norder b 3\norder c 3\nconj b^a = c\n");
    assert!(matches!(
        compute(&bad, &EngineOptions::default(), false),
        Err(Error::Inconsistent { .. })
    ));
}

#[test]
fn multiplier_subgroups_are_fixed_by_lifted_generators() {
    let groups = [
        heisenberg(3),
        quaternion(),
        dihedral8(),
        crate::catalog::entry("phi5_2111?p=5").unwrap().presentation,
        crate::catalog::entry("phi8_32?p=3").unwrap().presentation,
    ];
    for p in groups {
        let ext = exterior_square(&p, default_tail_exponent(&p)).unwrap();
        let m0 = m0_subgroup(&ext, 100_000).unwrap();
        let lifted = ext.extension().lifted();
        for sub in [ext.m_star(), &m0] {
            assert!(sub.is_subgroup_of(lifted, ext.m_star()));
            for x in sub.pcgs() {
                for g in lifted.generators().iter().take(ext.extension().base_len()) {
                    assert_eq!(&lifted.conjugate(x, g), x);
                }
            }
        }
    }
}
