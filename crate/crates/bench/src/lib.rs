//! Shared inputs for the benchmarks.

use bmult_core::catalog;
use bmult_core::pcgroup::PcPresentation;

/// Catalog presentation for `descriptor`; panics on an unknown key.
pub fn presentation(descriptor: &str) -> PcPresentation {
    catalog::entry(descriptor)
        .unwrap_or_else(|e| panic!("{descriptor}: {e}"))
        .presentation
}

/// Deterministic words of the given length over `ngens` generators,
/// with exponents in `-3..=3`.
pub fn words(ngens: usize, count: usize, len: usize) -> Vec<Vec<(usize, i64)>> {
    (0..count)
        .map(|w| {
            (0..len)
                .map(|i| {
                    let k = w * 31 + i * 17 + 7;
                    (k % ngens, (k % 7) as i64 - 3)
                })
                .collect()
        })
        .collect()
}

/// Pseudo-random `rows x cols` integer matrix with entries in `-bound..=bound`.
pub fn matrix_rows(rows: usize, cols: usize, bound: i64) -> Vec<Vec<i64>> {
    (0..rows)
        .map(|i| {
            (0..cols)
                .map(|j| ((i * 131 + j * 71 + i * j * 13) as i64 % (2 * bound + 1)) - bound)
                .collect()
        })
        .collect()
}
