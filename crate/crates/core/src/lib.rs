//! Computation of the c₂-invariant of decompleted 4-regular graphs over prime
//! fields, together with the edge-partition enumerations and swap involutions
//! used to show that c₂ at p = 2 does not depend on the decompletion vertex.
//!
//! Three independent routes compute c₂ and are checked against each other:
//! direct point counting of the Kirchhoff polynomial, the three-edge
//! denominator, and counting tree/forest edge partitions.

pub mod error;
pub mod field;
pub mod graph;
pub mod identities;
pub mod involutions;
pub mod partitions;
pub mod point_count;
pub mod polynomials;
pub mod verify;

pub use error::{Error, Result};
pub use field::{all_assignments, det_mod_p, Fp, FpMatrix, Prime};
pub use graph::{classify_adjacent_pair, decomplete, CaseKind, CaseLabel, Graph};
pub use partitions::{EdgeBipartition, EdgeSet, GeneralEdgePartition, VertexPartition};
pub use point_count::{c2_denom, c2_direct, c2_partition, count_zeros, C2Report};
pub use polynomials::{Assignment, PolynomialHandle};
