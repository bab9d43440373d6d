//! Enumeration size guards.
//!
//! Every exhaustive search in the crate consults these limits before it
//! starts. The environment variable `CROSSED_FORGE_MAX_ENUM` replaces all
//! three limits with a single value.

use num_bigint::BigUint;

use crate::error::{AlgebraError, Result};

pub const ENV_MAX_ENUM: &str = "CROSSED_FORGE_MAX_ENUM";

pub const DEFAULT_MAX_RING: u64 = 10_000;
pub const DEFAULT_MAX_GROUP: u64 = 24;
pub const DEFAULT_MAX_PRODUCT: u64 = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub max_ring: u64,
    pub max_group: u64,
    pub max_product: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_ring: DEFAULT_MAX_RING, max_group: DEFAULT_MAX_GROUP, max_product: DEFAULT_MAX_PRODUCT }
    }
}

impl Limits {
    /// Defaults, unless `CROSSED_FORGE_MAX_ENUM` holds a positive integer.
    pub fn current() -> Self {
        match std::env::var(ENV_MAX_ENUM).ok().and_then(|v| v.trim().parse::<u64>().ok()) {
            Some(n) if n > 0 => Limits { max_ring: n, max_group: n, max_product: n },
            _ => Limits::default(),
        }
    }
}

pub(crate) fn guard_ring(what: &str, size: Option<u64>) -> Result<u64> {
    let limit = Limits::current().max_ring;
    check(what, size, limit)
}

pub(crate) fn guard_group(what: &str, size: Option<u64>) -> Result<u64> {
    let limit = Limits::current().max_group;
    check(what, size, limit)
}

/// Guard for enumerating every element of a crossed product, `|A|^|G|`.
pub(crate) fn guard_product(what: &str, ring_size: u64, group_order: u64) -> Result<u64> {
    let limit = Limits::current().max_product;
    let total = BigUint::from(ring_size).pow(group_order as u32);
    match u64::try_from(&total) {
        Ok(n) if n <= limit => Ok(n),
        _ => Err(AlgebraError::SizeGuard { what: what.to_string(), size: total.to_string(), limit }),
    }
}

fn check(what: &str, size: Option<u64>, limit: u64) -> Result<u64> {
    match size {
        Some(n) if n <= limit => Ok(n),
        Some(n) => Err(AlgebraError::SizeGuard { what: what.to_string(), size: n.to_string(), limit }),
        None => Err(AlgebraError::UnsupportedEnumeration(format!("{what} is infinite or too large to count"))),
    }
}
