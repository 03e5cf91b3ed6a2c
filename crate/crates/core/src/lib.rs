//! Gelfand models for the Hecke algebras of the classical Weyl groups.
//!
//! The crate builds the modules `M` and `N` spanned by certain involutions in
//! a Weyl group of twice the rank, computes their canonical bases, and turns
//! the resulting mu-coefficients into W-graphs whose cells, molecules and
//! dualities can be inspected.

pub mod gelfand;
pub mod hecke;
pub mod laurent;
pub mod parabolic;
pub mod report;
pub mod weyl;
pub mod wgraph;

pub use laurent::Laurent;
pub use report::Report;
pub use weyl::{CoxeterType, Generator, GroupType, WeylElement};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error("invalid element: {0}")]
    InvalidElement(String),
    #[error("group mismatch: {0} vs {1}")]
    GroupMismatch(String, String),
    #[error("generator {0} does not belong to {1}")]
    InvalidGenerator(String, String),
    #[error("not an involution: {0}")]
    NotInvolution(String),
    #[error("generator {0} is a weak ascent or descent of {1}")]
    WeakMove(String, String),
    #[error("operation needs family {expected}, got {got}")]
    WrongFamily { expected: String, got: String },
    #[error("{group} exceeds the rank cap {cap} (raise it explicitly to proceed)")]
    RankCap { group: String, cap: usize },
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

/// Per-family rank limits applied before expensive constructions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RankCaps {
    pub a: usize,
    pub bc: usize,
    pub d: usize,
}

impl Default for RankCaps {
    fn default() -> Self {
        Self { a: 9, bc: 5, d: 6 }
    }
}

impl RankCaps {
    pub fn unlimited() -> Self {
        Self {
            a: usize::MAX,
            bc: usize::MAX,
            d: usize::MAX,
        }
    }

    pub fn check(&self, group: &GroupType) -> Result<()> {
        let cap = match group.ty {
            CoxeterType::A => self.a,
            CoxeterType::BC => self.bc,
            CoxeterType::D => self.d,
        };
        if group.rank > cap {
            return Err(Error::RankCap {
                group: group.to_string(),
                cap,
            });
        }
        Ok(())
    }
}
