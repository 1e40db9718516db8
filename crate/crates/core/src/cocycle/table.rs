//! Multiplication tables for groups small enough to hold `|G|^2` entries.

use super::super::pcgroup::{FiniteGroup, Subgroup};
use crate::error::Result;

/// A finite group as a multiplication table on `0..order`, with `0` the
/// identity, together with a generating set and a BFS spanning tree of the
/// right Cayley graph for that set.
#[derive(Clone, Debug)]
pub struct GroupTable {
    order: usize,
    mul: Vec<u32>,
    generators: Vec<usize>,
    /// Elements in BFS order from the identity.
    bfs: Vec<usize>,
    /// `tree[y] = (p, k)` with `p * generators[k] = y`; unused for the identity.
    tree: Vec<(usize, usize)>,
}

impl GroupTable {
    /// Builds a table from a closed multiplication function.
    pub fn new(order: usize, generators: Vec<usize>, mut product: impl FnMut(usize, usize) -> usize) -> Self {
        assert!(order >= 1 && order <= u32::MAX as usize);
        let mut mul = Vec::with_capacity(order * order);
        for x in 0..order {
            for y in 0..order {
                let z = product(x, y);
                debug_assert!(z < order);
                mul.push(z as u32);
            }
        }
        let mut tree = vec![(usize::MAX, usize::MAX); order];
        let mut seen = vec![false; order];
        seen[0] = true;
        let mut bfs = vec![0];
        let mut head = 0;
        while head < bfs.len() {
            let p = bfs[head];
            head += 1;
            for (k, &s) in generators.iter().enumerate() {
                let y = mul[p * order + s] as usize;
                if !seen[y] {
                    seen[y] = true;
                    tree[y] = (p, k);
                    bfs.push(y);
                }
            }
        }
        assert_eq!(bfs.len(), order, "generators do not generate the table");
        GroupTable {
            order,
            mul,
            generators,
            bfs,
            tree,
        }
    }

    /// The whole enumerated group, generated by its pcgs generators.
    pub fn of_group(group: &FiniteGroup<'_>) -> Self {
        let pres = group.presentation();
        let elements: Vec<_> = group.elements().collect();
        let generators = pres.generators().iter().map(|g| group.index_of(g)).collect();
        GroupTable::new(group.order(), generators, |x, y| {
            group.index_of(&pres.multiply(&elements[x], &elements[y]))
        })
    }

    /// The subgroup `a` of `group`; returns the table and the sorted list of
    /// enumeration indices of its members (local index `i` is `members[i]`).
    pub fn of_subgroup(group: &FiniteGroup<'_>, a: &Subgroup) -> Result<(Self, Vec<usize>)> {
        let pres = group.presentation();
        let mut members: Vec<usize> = a.elements(pres).iter().map(|x| group.index_of(x)).collect();
        members.sort_unstable();
        members.dedup();
        let elements: Vec<_> = members.iter().map(|&i| group.element_at(i)).collect();
        let local = |g: usize| members.binary_search(&g).expect("subgroup is closed");
        let generators = a.pcgs().iter().map(|x| local(group.index_of(x))).collect();
        let table = GroupTable::new(members.len(), generators, |x, y| {
            local(group.index_of(&pres.multiply(&elements[x], &elements[y])))
        });
        Ok((table, members))
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    #[inline]
    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.mul[x * self.order + y] as usize
    }

    pub(crate) fn bfs(&self) -> &[usize] {
        &self.bfs
    }

    /// Spanning-tree edge into `y != 0`.
    pub(crate) fn tree_edge(&self, y: usize) -> (usize, usize) {
        self.tree[y]
    }

    pub(crate) fn is_tree_edge(&self, y: usize, k: usize) -> bool {
        let z = self.mul(y, self.generators[k]);
        z != 0 && self.tree[z] == (y, k)
    }
}
