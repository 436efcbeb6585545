//! Resource caps for the enumerations.

/// Upper bounds on enumeration sizes. Exceeding one is reported as an error
/// rather than silently truncating.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Caps {
    pub nested_sets: u64,
    pub b_trees: u64,
    pub permutations: u64,
    pub linear_extensions: u64,
    pub multiset_size: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            nested_sets: 10_000_000,
            b_trees: 1_000_000,
            permutations: 1_000_000,
            linear_extensions: 1_000_000,
            multiset_size: 64,
        }
    }
}

impl Caps {
    /// Every count cap set to `n`; the multiset cap is left alone.
    pub fn uniform(n: u64) -> Self {
        Caps {
            nested_sets: n,
            b_trees: n,
            permutations: n,
            linear_extensions: n,
            ..Caps::default()
        }
    }

    /// Defaults, overridden by `NESTO_CAP` when it holds a positive integer.
    pub fn from_env() -> Self {
        match std::env::var("NESTO_CAP").ok().and_then(|v| v.trim().parse::<u64>().ok()) {
            Some(n) if n > 0 => Caps::uniform(n),
            _ => Caps::default(),
        }
    }
}
