//! Exact k-anonymity by entry suppression.
//!
//! A table is k-anonymous when every row is identical to at least `k - 1`
//! others. [`fpt`] finds a minimum number of entries to replace by `*` so
//! that this holds, with a running time exponential only in the number of
//! columns and the per-column alphabet sizes. [`oracle`] solves the same
//! problem by enumerating partitions and serves as the reference on small
//! tables. [`reductions`] builds the clique and vertex-cover gadgets showing
//! why such parameters are needed.
//!
//! ```
//! use kanon::fpt::{solve_min, SolverOptions};
//! use kanon::table::Table;
//!
//! let table = Table::from_records(vec![
//!     vec!["a", "x"], vec!["a", "y"], vec!["b", "x"], vec!["b", "x"],
//! ])?;
//! let report = solve_min(&table, 2, &SolverOptions::default())?;
//! assert_eq!(report.cost, 2);
//! assert_eq!(table.suppressed_records(&report.clustering)[0], vec!["a", "*"]);
//! # Ok::<(), kanon::Error>(())
//! ```

pub mod error;
pub mod fpt;
pub mod instances;
pub mod io;
pub mod matching;
pub mod oracle;
pub mod reductions;
pub mod table;

pub use error::{Error, Result};
