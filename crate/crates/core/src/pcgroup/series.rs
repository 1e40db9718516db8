//! Derived subgroup and the lower central series.

use super::presentation::{GroupElement, PcPresentation};
use super::subgroup::Subgroup;

impl PcPresentation {
    /// `[G, G]`, the normal closure of the generator commutators.
    pub fn derived_subgroup(&self) -> Subgroup {
        let gens = self.generators();
        let mut comms = Vec::new();
        for (j, gj) in gens.iter().enumerate() {
            for gi in &gens[..j] {
                comms.push(self.commutator(gj, gi));
            }
        }
        Subgroup::normal_closure(self, &comms)
    }

    /// `[H, G]` for a normal subgroup `H`.
    pub fn commutator_with_group(&self, h: &Subgroup) -> Subgroup {
        let gens = self.generators();
        let comms: Vec<GroupElement> = h
            .pcgs()
            .iter()
            .flat_map(|b| gens.iter().map(move |g| (b, g)))
            .map(|(b, g)| self.commutator(b, g))
            .collect();
        Subgroup::normal_closure(self, &comms)
    }

    /// `G = γ1 > γ2 > ...`, ending at the first repeated term (the trivial
    /// group when `G` is nilpotent).
    pub fn lower_central_series(&self) -> Vec<Subgroup> {
        let mut series = vec![Subgroup::whole(self)];
        loop {
            let next = self.commutator_with_group(series.last().unwrap());
            if next.pcgs() == series.last().unwrap().pcgs() {
                return series;
            }
            let done = next.is_trivial();
            series.push(next);
            if done {
                return series;
            }
        }
    }

    /// Nilpotency class (0 for the trivial group), `None` if not nilpotent.
    pub fn nilpotency_class(&self) -> Option<usize> {
        let series = self.lower_central_series();
        series.last().unwrap().is_trivial().then(|| series.len() - 1)
    }
}
