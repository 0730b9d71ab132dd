//! Exact computation of persistence for commutative quiver representations
//! over a prime field.
//!
//! The crate is layered bottom-up:
//!
//! * [`linalg`]: matrices and the subspace calculus over GF(p).
//! * [`quiver`]: finite quivers, DAG checks and path enumeration.
//! * [`gmodule`]: representations, commutativity validation, limits,
//!   colimits, the induced map `lim → colim` and its image.
//! * [`preradical`]: α/ω preradicals and their lattice operations evaluated
//!   against a representation, plus information-flow queries.
//! * [`simplicial`]: simplicial homology and graph filtrations turned into
//!   representations.
//! * [`sample`]: random generators for DAGs and commutative representations.
//!
//! ```
//! use qflow_core::{Field, Matrix, Representation};
//!
//! let f = Field::new(5)?;
//! let m = |rows: &[&[i64]], cols| Matrix::from_rows(f, cols, rows);
//! let rep = Representation::from_named(
//!     f,
//!     &[("s", 2), ("a", 2), ("b", 1), ("t", 2)],
//!     vec![
//!         ("sa", "s", "a", m(&[&[1, 2], &[0, 1]], 2)?),
//!         ("sb", "s", "b", m(&[&[1, 1]], 2)?),
//!         ("at", "a", "t", m(&[&[1, 4], &[1, 4]], 2)?),
//!         ("bt", "b", "t", m(&[&[1], &[1]], 1)?),
//!     ],
//! )?
//! .validated()?;
//! assert_eq!(rep.persistence()?.dim(), 1);
//! # Ok::<(), qflow_core::Error>(())
//! ```

pub mod error;
pub mod gmodule;
pub mod linalg;
pub mod preradical;
pub mod quiver;
pub mod sample;
pub mod simplicial;

pub use error::{Error, Result};

pub use gmodule::{ColimitData, LimitData, Persistence, Representation};
pub use linalg::{Field, Matrix, QuotientSpace, Subspace};
pub use quiver::{Path, Quiver};
