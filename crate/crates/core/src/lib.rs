//! Stability of circulant and abelian Cayley graphs.
//!
//! The crate builds Cayley graphs of finite abelian groups (circulants being the
//! cyclic case), computes automorphism groups of graphs and of their canonical
//! double covers, and classifies graphs as stable, trivially unstable or
//! nontrivially unstable. Around that core sit Wilson's arithmetic instability
//! conditions, the compatible-adjacency-matrix search, the Boolean square and
//! Cartesian skeleton, and an exhaustive survey engine.
//!
//! ```
//! use circstab::{graph::circulant, stability::classify, stability::Status};
//!
//! let g = circulant(12, &[3, 4, 8, 9]).unwrap();
//! assert_eq!(classify(&g).unwrap().status, Status::Stable);
//! ```

pub mod abelian;
pub mod autgroup;
pub mod bitset;
pub mod compat;
pub mod error;
pub mod graph;
pub mod limits;
pub mod oracle;
pub mod skeleton;
pub mod stability;
pub mod survey;
pub mod wilson;

pub use error::{Error, Result};
