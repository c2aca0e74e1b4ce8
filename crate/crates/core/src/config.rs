/// Size ceilings for the exponential exact computations. Everything above a
/// ceiling returns `ExactLimitExceeded` instead of silently running forever.
#[derive(Clone, Copy, Debug)]
pub struct Limits {
    /// Exact ETD/SETD sweep all `2^m` hypotheses up to this width.
    pub etd_exact_m_limit: usize,
    /// Exact density enumerates all `2^n` row subsets up to this count.
    pub den_exact_n_limit: usize,
    /// Exact minimum-depth search up to this row count.
    pub opt_exact_n_limit: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            etd_exact_m_limit: 16,
            den_exact_n_limit: 20,
            opt_exact_n_limit: 24,
        }
    }
}
