use serde::{Deserialize, Serialize};

/// Size guards bounding every exhaustive loop.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Limits {
    /// Largest finite ring accepted.
    pub ring_size: u64,
    /// Largest module that may be enumerated element by element.
    pub module_size: u64,
    /// Cap on candidate generator-image assignments in a hom search.
    pub hom_candidates: u64,
    /// Cap on the length of basis products over a PID.
    pub pid_exponent: u32,
    /// Cap on |Λ_n| in truncated constructions.
    pub sequences: u64,
    /// Maximal truncation level.
    pub level: usize,
}

pub const GUARD_ENV: &str = "TORSIONLAB_GUARD";

impl Default for Limits {
    fn default() -> Self {
        Limits {
            ring_size: 4096,
            module_size: 1 << 20,
            hom_candidates: 1_000_000,
            pid_exponent: 8,
            sequences: 256,
            level: 3,
        }
    }
}

impl Limits {
    /// Defaults with the ring guard taken from `TORSIONLAB_GUARD` when set.
    pub fn from_env() -> Self {
        let mut l = Limits::default();
        if let Ok(v) = std::env::var(GUARD_ENV) {
            if let Ok(n) = v.trim().parse::<u64>() {
                l.ring_size = n;
            }
        }
        l
    }
}
