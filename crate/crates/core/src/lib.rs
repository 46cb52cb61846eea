//! Minimal triples of the generalized Markoff equation
//! `a^2 + b^2 + c^2 = 3abc + m`.
//!
//! Every positive solution descends, through Vieta involutions, to one of
//! finitely many *minimal* triples, and each minimal triple roots its own
//! solution tree. The crate enumerates minimal triples two independent ways
//! (direct search within explicit size bounds, and fundamental solutions of
//! the form `x^2 - 3axy + y^2`), counts the `(1, b, c)` family in closed
//! form, walks solution trees, and runs range surveys over `m`.
//!
//! ```
//! use markoff::{enumerate_minimal_bruteforce, enumerate_minimal_via_forms};
//!
//! let direct = enumerate_minimal_bruteforce(12).unwrap();
//! let forms = enumerate_minimal_via_forms(12).unwrap();
//! assert_eq!(direct, forms);
//! assert_eq!(direct.to_string(), "{(1, 1, 5), (1, 2, 7)}");
//! ```

pub mod cli;
pub mod count1bc;
pub mod enumerate;
pub mod error;
pub mod forms;
pub mod kernel;
pub mod survey;
pub mod tree;
pub mod triple;

pub use count1bc::{
    count_1bc, decompose_m1, enumerate_1bc, exists_1bc, CountResult, Decomposed, Decomposition1bc,
};
pub use enumerate::{enumerate_minimal_bruteforce, CountSummary, MinimalSet, MAX_ENUM_M};
pub use error::{Error, Result};
pub use forms::{
    enumerate_minimal_via_forms, fundamental_solutions, fundamental_to_triple,
    triple_to_fundamental, verify_cardinality_identity, wn_count, FormContext, FundamentalSolution,
    TaElement,
};
pub use survey::{scan, Method, SurveyRecord};
pub use tree::{children, expand, locate, roots, ExpandOptions, Location, Move, SolutionTree};
pub use triple::{MTriple, MinimalTriple, Order, OrderedTriple, Slot};
