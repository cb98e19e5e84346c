//! Fixtures shared by the benchmarks.

use knotgenus::PdCode;

/// Standard `(2, k)` torus knot diagram with `k` crossings, `k` odd.
pub fn torus_2k(k: u32) -> PdCode {
    let m = 2 * k;
    let w = |x: u32| (x - 1) % m + 1;
    let crossings: Vec<[u32; 4]> = (1..=k)
        .map(|i| [w(2 * i - 1), w(2 * i - 1 + k), w(2 * i), w(2 * i + k)])
        .collect();
    PdCode::new(crossings).expect("torus diagram is valid")
}
