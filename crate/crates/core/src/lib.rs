//! Persistent homology of directed simplicial complexes.
//!
//! Chains carry paired boundary maps `∂⁺`/`∂⁻` and may take coefficients in
//! the semiring ℕ or in ℚ. Filtrations come from asymmetric dissimilarity
//! matrices via the directed Rips construction. Undirected persistence is
//! computed by column reduction over ℚ; the directed submodule in dimension
//! one is spanned by elementary circuits.

pub mod chain;
pub mod coeff;
pub mod complex;
pub mod diagram;
pub mod directed;
pub mod error;
pub mod linalg;
pub mod metrics;
pub mod reduction;
pub mod rips;
pub mod semihomology;

pub use chain::{Chain, NatChain, RatChain};
pub use coeff::{Coefficient, Natural, Rational};
pub use complex::{DirectedComplex, DirectedSimplex};
pub use diagram::{Bar, DiagramKind, Extended, PersistenceDiagram};
pub use directed::{directed_persistence, subbarcode_match, RankFunction, SubbarcodeMatching};
pub use error::{Error, Result};
pub use metrics::{bottleneck, correspondence_distortion, stability_check, MapPair, StabilityConfig, StabilityReport};
pub use reduction::undirected_diagrams;
pub use rips::{build_filtration, DissimilarityMatrix, FilteredComplex};
pub use semihomology::{is_homologous, Homologous, HomologousWitness, SearchLimits};
