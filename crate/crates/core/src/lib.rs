//! Exact computation of the K-groups of crossed products by unipotent
//! skew products on tori, together with the surrounding combinatorics,
//! discrete group arithmetic and quotient invariants.

pub mod combinatorics;
pub mod dynamics;
pub mod error;
pub mod exactmat;
pub mod exterior;
pub mod groups;
pub mod ktheory;
pub mod quotients;

pub use error::{Error, Result};
pub use exactmat::{FGAbelianGroup, ZMatrix};
