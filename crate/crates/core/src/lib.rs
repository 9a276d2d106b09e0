//! Combinatorial encodings of simple topological drawings: abstract rotation
//! systems, chord diagrams, pseudochord arrangements and the T-representation
//! of drawings, with the counting bounds built on them.

pub mod arrangements;
pub mod bounds;
pub mod chords;
pub mod count;
pub mod drawings;
pub mod graph;
pub mod rotsys;
pub mod search;

pub use arrangements::{AlphaCode, Arrangement, ArrangementError, PerimetricOrder};
pub use count::ExactCount;
pub use drawings::{Drawing, DrawingError};
pub use graph::{Edge, EdgePair, GraphError, Label, SimpleGraph};
pub use rotsys::{CyclicPerm, RotationSystem, RotsysError, Sign};
