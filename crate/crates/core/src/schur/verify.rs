//! Sampled checks of commutator identities in the covering extension.

use num_integer::Integer;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::exterior::ExteriorSquare;
use super::extension::order_primes;
use crate::pcgroup::{FiniteGroup, GroupElement, PcPresentation};

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    /// Identities that were exercised, e.g. `"tau(e)"`.
    pub identities: Vec<String>,
    pub checks: u64,
    pub violations: Vec<String>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok && self.violations.len() < 20 {
            self.violations.push(what());
        }
    }

    fn uses(&mut self, name: &str) {
        if !self.identities.iter().any(|n| n == name) {
            self.identities.push(name.to_string());
        }
    }
}

fn random_element(pres: &PcPresentation, rng: &mut ChaCha8Rng) -> GroupElement {
    let e = pres.relative_orders().iter().map(|&r| rng.gen_range(0..r)).collect();
    pres.element(e).unwrap()
}

fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

/// Checks, on `samples` random tuples, the realisations in `G~` of:
/// independence of `[g~, h~]` from the choice of lifts, `[[g,h]~, k~] = [[g~,h~], k~]`,
/// `[[g1~,h1~], [g2~,h2~]] = [[g1,h1]~, [g2,h2]~]`, the order of `[g~,h~]`
/// dividing `gcd(|g|, |h|)` for commuting `g, h`, abelian `G ^ G` for class
/// at most 2, and `class(G~) <= class(G) + 1`.
///
/// Commuting pairs are drawn from centralizers when `|G| <= bound`.
pub fn verify_tau_identities(ext: &ExteriorSquare, samples: usize, seed: u64, bound: u128) -> VerificationReport {
    let mut rep = VerificationReport::default();
    let cov = ext.extension();
    let base = cov.base();
    let lifted = cov.lifted();
    let n = base.len();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let tail_element = |rng: &mut ChaCha8Rng| {
        let mut e = vec![0u64; lifted.len()];
        for (k, &d) in cov.tail_orders().iter().enumerate() {
            e[n + k] = rng.gen_range(0..d);
        }
        lifted.element(e).unwrap()
    };
    let lift = |x: &GroupElement| cov.lift_element(x);

    let class = base.nilpotency_class();
    if let Some(c) = class {
        rep.uses("class bound");
        let lc = lifted.nilpotency_class();
        rep.record(lc.is_some_and(|l| l <= c + 1), || format!("class of G~ is {lc:?}, class of G is {c}"));
        if c <= 2 {
            rep.uses("tau(c)");
            rep.record(ext.derived().is_abelian(lifted), || "G ^ G is not abelian for class <= 2".into());
        }
    }

    for _ in 0..samples {
        let (g, h, k, l) = (
            random_element(base, &mut rng),
            random_element(base, &mut rng),
            random_element(base, &mut rng),
            random_element(base, &mut rng),
        );
        let (gl, hl, kl, ll) = (lift(&g), lift(&h), lift(&k), lift(&l));
        let gh = lifted.commutator(&gl, &hl);

        rep.uses("tau(d)");
        let z1 = tail_element(&mut rng);
        let z2 = tail_element(&mut rng);
        let other = lifted.commutator(&lifted.multiply(&gl, &z1), &lifted.multiply(&hl, &z2));
        rep.record(other == gh, || {
            format!("[g~, h~] depends on the lifts for g = {}, h = {}", base.format_element(&g), base.format_element(&h))
        });

        rep.uses("tau(e)");
        let left = lifted.commutator(&lift(&base.commutator(&g, &h)), &kl);
        let right = lifted.commutator(&gh, &kl);
        rep.record(left == right, || {
            format!(
                "[[g,h]~, k~] != [[g~,h~], k~] for g = {}, h = {}, k = {}",
                base.format_element(&g),
                base.format_element(&h),
                base.format_element(&k)
            )
        });

        rep.uses("tau(f)");
        let kl_comm = lifted.commutator(&kl, &ll);
        let left = lifted.commutator(&gh, &kl_comm);
        let right = lifted.commutator(&lift(&base.commutator(&g, &h)), &lift(&base.commutator(&k, &l)));
        rep.record(left == right, || {
            format!(
                "tau(f) fails for {}, {}, {}, {}",
                base.format_element(&g),
                base.format_element(&h),
                base.format_element(&k),
                base.format_element(&l)
            )
        });

        rep.uses("tau(m ^ m = 1)");
        rep.record(lifted.commutator(&gl, &gl).is_identity(), || "[g~, g~] != 1".into());
    }

    // Commuting pairs: class representatives with centralizer elements,
    // conjugated by random elements.
    if let Ok(group) = FiniteGroup::new(base, bound) {
        rep.uses("tau(g)");
        let reps = group.conjugacy_class_reps();
        let cents: Vec<_> = reps.iter().map(|x| group.centralizer(x)).collect();
        for _ in 0..samples {
            let idx = rng.gen_range(0..reps.len());
            let c = &cents[idx];
            let mut y = base.identity();
            for (b, s) in c.pcgs().iter().zip(c.pcgs_relative_orders(base)) {
                y = base.multiply(&y, &base.power(b, rng.gen_range(0..s)));
            }
            let u = random_element(base, &mut rng);
            let x = base.conjugate(&reps[idx], &u);
            let y = base.conjugate(&y, &u);
            let m = base.element_order(&x);
            let nn = base.element_order(&y);
            let ord = lifted.element_order(&ext.lifted_commutator(&x, &y));
            let g = m.gcd(&nn);
            rep.record((&g % &ord).is_zero(), || {
                format!(
                    "order {ord} of [x~, y~] does not divide gcd({m}, {nn}) for x = {}, y = {}",
                    base.format_element(&x),
                    base.format_element(&y)
                )
            });
        }
    }
    rep
}

/// Checks `[x, y^n] = [x,y]^n [x,y,y]^C(n,2) [x,y,y,y]^C(n,3)` when `G` has
/// class at most 3, and
/// `[x^n, y] = [x,y]^n [x,y,x]^C(n,2) [x,y,x,x]^C(n,3) [x,y,x,x,x]^C(n,4) [x,y,x,[x,y]]^s(n)`
/// with `s(n) = n(n-1)(2n-1)/6` when `G~` has class at most 5, for random
/// `x, y` in `G~` and `n` in `1..=p^2`.
pub fn verify_power_expansions(ext: &ExteriorSquare, samples: usize, seed: u64) -> VerificationReport {
    let mut rep = VerificationReport::default();
    let cov = ext.extension();
    let base = cov.base();
    let h = cov.lifted();
    let p = order_primes(base).into_iter().max().unwrap_or(2);
    let class3 = base.nilpotency_class().is_some_and(|c| c <= 3);
    let class5 = h.nilpotency_class().is_some_and(|c| c <= 5);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let x = random_element(h, &mut rng);
        let y = random_element(h, &mut rng);
        let n = rng.gen_range(1..=p * p);
        let xy = h.commutator(&x, &y);
        if class3 {
            rep.uses("power expansion, class 3");
            let xyy = h.commutator(&xy, &y);
            let xyyy = h.commutator(&xyy, &y);
            let left = h.commutator(&x, &h.power(&y, n));
            let mut right = h.power(&xy, n);
            right = h.multiply(&right, &h.power(&xyy, binomial(n, 2)));
            right = h.multiply(&right, &h.power(&xyyy, binomial(n, 3)));
            rep.record(left == right, || {
                format!("class-3 expansion fails for x = {}, y = {}, n = {n}", h.format_element(&x), h.format_element(&y))
            });
        }
        if class5 {
            rep.uses("power expansion, class 5");
            let xyx = h.commutator(&xy, &x);
            let xyxx = h.commutator(&xyx, &x);
            let xyxxx = h.commutator(&xyxx, &x);
            let xyx_xy = h.commutator(&xyx, &xy);
            let sigma = n * (n - 1) * (2 * n - 1) / 6;
            let left = h.commutator(&h.power(&x, n), &y);
            let mut right = h.power(&xy, n);
            right = h.multiply(&right, &h.power(&xyx, binomial(n, 2)));
            right = h.multiply(&right, &h.power(&xyxx, binomial(n, 3)));
            right = h.multiply(&right, &h.power(&xyxxx, binomial(n, 4)));
            right = h.multiply(&right, &h.power(&xyx_xy, sigma));
            rep.record(left == right, || {
                format!("class-5 expansion fails for x = {}, y = {}, n = {n}", h.format_element(&x), h.format_element(&y))
            });
        }
    }
    rep
}
