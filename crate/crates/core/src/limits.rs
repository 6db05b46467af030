/// Search and size budgets shared by every exhaustive algorithm in the crate.
///
/// The defaults are sized for desk-scale inputs (groups of a few hundred
/// elements per level). Any operation that would exceed a budget returns
/// [`Error::SizeLimitExceeded`](crate::Error::SizeLimitExceeded) instead of
/// running unbounded.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Largest group order a builder or construction may produce. Default 5000.
    pub max_order: usize,
    /// Node budget for a single backtracking search. Default 5,000,000.
    pub max_search_nodes: usize,
    /// Largest number of homomorphisms or morphisms a single enumeration may return.
    /// Default 200,000.
    pub max_results: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_order: 5000,
            max_search_nodes: 5_000_000,
            max_results: 200_000,
        }
    }
}
