//! Framed chord diagrams, their ribbon graphs, partial duality and the
//! partial-dual polynomial, with an executable check of the framed
//! four-term relations.
//!
//! ```
//! use framed_chord::{Diagram, IntPolynomial, partial_dual_polynomial};
//!
//! let torus: Diagram = "(a, b, a, b)".parse().unwrap();
//! let p: IntPolynomial = partial_dual_polynomial(&torus).unwrap();
//! assert_eq!(p.to_string(), "2 + 2*z^2");
//! ```

pub mod diagram;
pub mod error;
pub mod fourterm;
pub mod pdual;
pub mod poly;
pub mod sample;
pub mod surface;

pub use diagram::{parse, Adjacency, ChordEnd, ChordId, Diagram, EndPos, Framing, Sign};
pub use error::{AmbientError, DiagramError, PolyError};
pub use fourterm::{
    build_family, check_family, enumerate_partial_duals_of_active, random_ambient, Ambient, FourTermFamily,
    Relation,
};
pub use pdual::{full_dual, partial_dual, partial_dual_by_labels, DualResult};
pub use poly::{partial_dual_polynomial, partial_dual_polynomial_with, Enumeration, Polynomial};
pub use surface::{
    boundary_components, corner_structure, euler_genus, is_orientable, surface_stats, CornerPairing, SurfaceStats,
};

/// Exact integer polynomial used for partial-dual polynomials and their combinations.
pub type IntPolynomial = Polynomial<num_bigint::BigInt>;
/// Machine-integer polynomial, enough for a single diagram under the default cap.
pub type Polynomial64 = Polynomial<i64>;
