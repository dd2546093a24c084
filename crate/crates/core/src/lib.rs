//! Symplectic Berele insertion and its q-deformation.
//!
//! Words over `1 < 1̄ < 2 < 2̄ < … < n < n̄` are inserted into symplectic
//! tableaux ([`tableau`]), or equivalently into symplectic Gelfand-Tsetlin
//! patterns by particle dynamics ([`pattern`]). The q-deformed dynamics
//! ([`qinsert`]) turn each insertion into an exact finite distribution over
//! patterns. [`kernels`] and [`symfunc`] hold the kernels and symmetric
//! functions governing the induced shape process, and [`chain`] samples it.
//!
//! All arithmetic is exact ([`exact::ExactScalar`]).
//!
//! ```
//! use bereleq::tableau::{berele_word, parse_word};
//!
//! let w = parse_word("3' 2 1' 3' 1 2 1", 3).unwrap();
//! let (p, f) = berele_word(&w, 3).unwrap();
//! assert_eq!(p.shape().parts(), &[2, 2, 1]);
//! assert_eq!(f.len(), 7);
//! ```

pub mod chain;
pub mod cli;
pub mod error;
pub mod exact;
pub mod kernels;
pub mod partition;
pub mod pattern;
pub mod qinsert;
pub mod report;
pub mod symfunc;
pub mod tableau;

pub use error::{Error, Result};
pub use exact::{ExactScalar, QContext};
pub use kernels::ParamContext;
pub use partition::Partition;
pub use pattern::GtPattern;
pub use report::IdentityReport;
pub use tableau::{Letter, OscillatingTableau, SymplecticTableau};
