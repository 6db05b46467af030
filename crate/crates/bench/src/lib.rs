//! Shared inputs for the benchmarks in `benches/`.

use std::sync::Arc;

use xmodlab_core::catalogue::{by_name, standard, Entry};
use xmodlab_core::flat::ScanOptions;
use xmodlab_core::xmod::CrossedModule;

/// Catalogue entries with at most `max` elements in total.
pub fn corpus(max: usize) -> Vec<Entry> {
    standard().into_iter().filter(|e| e.object.size() <= max).collect()
}

pub fn object(name: &str) -> Arc<CrossedModule> {
    by_name(name).unwrap_or_else(|| panic!("no catalogue entry `{name}`"))
}

/// Scan options small enough for repeated timing.
pub fn quick_scan() -> ScanOptions {
    ScanOptions { max_squares: 40, max_sequences: 40, ..ScanOptions::default() }
}
