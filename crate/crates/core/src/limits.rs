//! Process-wide caps on the sizes handed to the exponential algorithms.
//!
//! The defaults suit desk-scale work; the CLI exposes each one as a flag.

use std::sync::atomic::{AtomicUsize, Ordering};

use crate::error::{Error, Result};

pub const DEFAULT_VERTEX_CAP: usize = 128;
pub const DEFAULT_ISOMORPHISM_CAP: usize = 64;
pub const DEFAULT_GROUP_ENUMERATION_CAP: usize = 64;
pub const DEFAULT_AUTOMORPHISM_COUNT_CAP: usize = 1_000_000;

static VERTEX_CAP: AtomicUsize = AtomicUsize::new(DEFAULT_VERTEX_CAP);
static ISOMORPHISM_CAP: AtomicUsize = AtomicUsize::new(DEFAULT_ISOMORPHISM_CAP);
static GROUP_ENUMERATION_CAP: AtomicUsize = AtomicUsize::new(DEFAULT_GROUP_ENUMERATION_CAP);
static AUTOMORPHISM_COUNT_CAP: AtomicUsize = AtomicUsize::new(DEFAULT_AUTOMORPHISM_COUNT_CAP);

/// Largest graph handed to the automorphism engine.
pub fn vertex_cap() -> usize {
    VERTEX_CAP.load(Ordering::Relaxed)
}

pub fn set_vertex_cap(cap: usize) {
    VERTEX_CAP.store(cap, Ordering::Relaxed);
}

/// Largest graph accepted by the isomorphism test.
pub fn isomorphism_cap() -> usize {
    ISOMORPHISM_CAP.load(Ordering::Relaxed)
}

pub fn set_isomorphism_cap(cap: usize) {
    ISOMORPHISM_CAP.store(cap, Ordering::Relaxed);
}

/// Largest abelian group whose automorphisms are enumerated explicitly.
pub fn group_enumeration_cap() -> usize {
    GROUP_ENUMERATION_CAP.load(Ordering::Relaxed)
}

pub fn set_group_enumeration_cap(cap: usize) {
    GROUP_ENUMERATION_CAP.store(cap, Ordering::Relaxed);
}

/// Largest number of group automorphisms materialised as a list.
pub fn automorphism_count_cap() -> usize {
    AUTOMORPHISM_COUNT_CAP.load(Ordering::Relaxed)
}

pub fn set_automorphism_count_cap(cap: usize) {
    AUTOMORPHISM_COUNT_CAP.store(cap, Ordering::Relaxed);
}

pub(crate) fn check(what: &'static str, actual: usize, limit: usize) -> Result<()> {
    if actual > limit {
        Err(Error::SizeLimit {
            what,
            actual,
            limit,
        })
    } else {
        Ok(())
    }
}
