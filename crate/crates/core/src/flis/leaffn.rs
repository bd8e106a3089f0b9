use num_rational::Ratio;

/// Maximum number of leaves of an induced subtree of order `n` in a P2
/// tiling.
pub fn leaf_function_formula(n: u64) -> u64 {
    match n {
        0 | 1 => 0,
        2..=18 => n / 2 + 1,
        _ => {
            let r = n % 17;
            8 * (n / 17) + r / 2 + 1 + u64::from(r == 1)
        }
    }
}

/// Least linear upper bound of the leaf function: `(8n + 26) / 17`.
pub fn overline_leaf_function(n: u64) -> Ratio<i64> {
    Ratio::new(8 * n as i64 + 26, 17)
}

/// Whether the leaf function meets its linear upper bound at `n`.
pub fn is_saturated(n: u64) -> bool {
    Ratio::from_integer(leaf_function_formula(n) as i64) == overline_leaf_function(n)
}
