//! Overlap tests deciding whether a presentation is consistent.

use serde::Serialize;

use super::presentation::{GroupElement, PcPresentation};

/// One overlap whose two collection orders disagree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OverlapFailure {
    /// The overlap, e.g. `(c b) a = c (b a)`.
    pub overlap: String,
    pub left: String,
    pub right: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ConsistencyReport {
    pub failures: Vec<OverlapFailure>,
}

impl ConsistencyReport {
    pub fn is_consistent(&self) -> bool {
        self.failures.is_empty()
    }
}

/// An overlap word together with both of its collected forms.
pub(crate) struct OverlapEvaluation {
    pub label: String,
    pub left: GroupElement,
    pub right: GroupElement,
}

impl PcPresentation {
    /// Evaluates every overlap of the standard test set:
    /// `(gk gj) gi` vs `gk (gj gi)` for `k > j > i`,
    /// `(gj^rj) gi` vs `gj^(rj-1) (gj gi)` and `gj (gi^ri)` vs `(gj gi) gi^(ri-1)` for `j > i`,
    /// and `(gi^ri) gi` vs `gi (gi^ri)`.
    pub(crate) fn overlap_evaluations(&self) -> Vec<OverlapEvaluation> {
        let n = self.len();
        let names = self.names();
        let g = |i: usize| self.generator(i);
        let pair = |j: usize, i: usize| self.collect(&[(j, 1), (i, 1)]);
        let pow = |i: usize, e: u64| self.collect(&[(i, e as i64)]);
        let mut out = Vec::new();
        for k in 0..n {
            for j in 0..k {
                for i in 0..j {
                    out.push(OverlapEvaluation {
                        label: format!("({} {}) {} = {} ({} {})", names[k], names[j], names[i], names[k], names[j], names[i]),
                        left: self.multiply(&pair(k, j), &g(i)),
                        right: self.multiply(&g(k), &pair(j, i)),
                    });
                }
            }
        }
        for j in 0..n {
            let rj = self.relative_order(j);
            for i in 0..j {
                out.push(OverlapEvaluation {
                    label: format!("({}^{rj}) {} = {}^{} ({} {})", names[j], names[i], names[j], rj - 1, names[j], names[i]),
                    left: self.multiply(&pow(j, rj), &g(i)),
                    right: self.multiply(&pow(j, rj - 1), &pair(j, i)),
                });
                let ri = self.relative_order(i);
                out.push(OverlapEvaluation {
                    label: format!("{} ({}^{ri}) = ({} {}) {}^{}", names[j], names[i], names[j], names[i], names[i], ri - 1),
                    left: self.multiply(&g(j), &pow(i, ri)),
                    right: self.multiply(&pair(j, i), &pow(i, ri - 1)),
                });
            }
        }
        for (i, name) in names.iter().enumerate().take(n) {
            let ri = self.relative_order(i);
            out.push(OverlapEvaluation {
                label: format!("({name}^{ri}) {name} = {name} ({name}^{ri})"),
                left: self.multiply(&pow(i, ri), &g(i)),
                right: self.multiply(&g(i), &pow(i, ri)),
            });
        }
        out
    }

    /// Runs the overlap test set. The presentation is consistent (every
    /// element has a unique normal form, so the order is the product of the
    /// relative orders) exactly when no overlap fails.
    pub fn check_consistency(&self) -> ConsistencyReport {
        let failures = self
            .overlap_evaluations()
            .into_iter()
            .filter(|ev| ev.left != ev.right)
            .map(|ev| OverlapFailure {
                overlap: ev.label,
                left: self.format_element(&ev.left),
                right: self.format_element(&ev.right),
            })
            .collect();
        ConsistencyReport { failures }
    }

    pub fn is_consistent(&self) -> bool {
        self.check_consistency().is_consistent()
    }
}
