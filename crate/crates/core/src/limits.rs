/// Bounds on the exhaustive searches. Exceeding one raises
/// [`Error::ResourceLimit`](crate::Error::ResourceLimit).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub max_cycles: usize,
    pub max_pairs: usize,
    pub max_param_points: u64,
    pub congruence_depth: usize,
    /// Largest vertex count for which every vertex subset is swept.
    pub max_subset_vertices: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_cycles: 10_000,
            max_pairs: 10_000,
            max_param_points: 1_000_000,
            congruence_depth: 12,
            max_subset_vertices: 16,
        }
    }
}
