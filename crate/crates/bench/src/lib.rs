//! Shared inputs for the benchmarks in `benches/`.

use wpl_core::{TiltingCandidate, Wpl};

pub fn wpl(n: i64) -> Wpl {
    Wpl::new(n).expect("n >= 2")
}

/// The first `count` Triple-form tilting bundles of `wpl`, plus the canonical one.
pub fn sample_tilting(wpl: &Wpl, count: usize) -> Vec<TiltingCandidate> {
    let mut out = vec![wpl.canonical_tilting(wpl.zero())];
    out.extend(wpl.triple_space().expect("n >= 3").into_iter().take(count).map(|(_, t)| t));
    out
}
