//! Exact-arithmetic toolkit for rational Dehn surgery on links.
//!
//! Everything here is combinatorial and exact: slopes are reduced fractions
//! over big integers, manifolds enter as framed links (linking matrix plus
//! one surgery slope per component), and the only invariant computed is
//! first homology together with what follows from it. No floating point, no
//! geometry, no isotopy.
//!
//! # Module tour
//!
//! * [`slope`]: extended rationals `p/q` (including `inf`) with the torus
//!   intersection distance and the twist/shift actions surgery moves induce.
//! * [`link`]: [`FramedLink`], the algebraic shadow of a surgery diagram,
//!   plus sublink selection and a JSON wire format.
//! * [`pd`]: signed planar-diagram codes and their linking matrices.
//! * [`matrix`]: exact integer matrices, Bareiss determinants, and Smith
//!   normal form.
//! * [`homology`]: the surgery presentation matrix and the first homology
//!   of the surgered manifold, by two independent routes.
//! * [`adjacency`]: necessary conditions for a framed link to realize
//!   n-adjacency to the three-sphere, pair classification, and the
//!   split-Hopf certificate.
//! * [`chain`]: chain presentations (linear plumbings), Kirby-calculus
//!   moves, and lens-space identification.
//! * [`dual`]: slopes of the dual link that undoes a surgery, again by two
//!   independent routes.
//! * [`enumerate`]: bounded exhaustive searches over slope assignments.
//! * [`corpus`]: small built-in diagrams and link specs used by the tool
//!   and the examples.
//! * [`verify`]: the frozen reference checks gating a build.
//!
//! The `dehn` binary is a thin shell over these modules; the `examples/`
//! directory shows one worked session per capability.
//!
//! # Example
//!
//! ```
//! use dehn::{ChainPresentation, LensSpace};
//!
//! let chain: ChainPresentation = "1/2, 1, 1/2".parse()?;
//! let lens = chain.to_lens()?;
//! assert_eq!(lens, LensSpace::new(3, 2)?);
//! assert_eq!(lens.orientation_reversed(), LensSpace::new(3, 1)?);
//! # Ok::<(), dehn::ChainError>(())
//! ```

pub mod adjacency;
pub mod cf;
pub mod chain;
pub mod corpus;
pub mod dual;
pub mod enumerate;
pub mod homology;
pub mod link;
pub mod matrix;
pub mod pd;
pub mod slope;
pub mod verify;

pub use adjacency::{
    certify_split_hopf_form, check_pair_classification, integral_adjacency_check,
    is_integer_homology_sphere, necessary_conditions, necessary_conditions_with, AdjacencyError,
    AdjacencyReport, NecessaryOptions, SplitHopfStructure, Verdict, Violation,
};
pub use cf::{evaluate_chain, expand_negative, CfError};
pub use chain::{chain_h1_order, ChainError, ChainMove, ChainPresentation, LensSpace, MeridianMark};
pub use corpus::CorpusError;
pub use dual::{
    dual_slopes_by_moves, dual_slopes_integral, linking_agrees_up_to_orientation, DualData,
    DualError,
};
pub use enumerate::{
    enumerate_hopf_brunnian_slopes, enumerate_pair_solutions, enumerate_triple_obstructions,
    EnumerateError, HopfBrunnianSlopes, PairSolution, PairSolutions, TripleObstruction,
};
pub use homology::{h1, h1_order, presentation_matrix, AbelianGroup, HomologyError, Order};
pub use link::{FramedLink, LinkError, SublinkSelector};
pub use matrix::{IntMatrix, MatrixError, SmithDecomposition};
pub use pd::{parse_pd, Diagram, PdError};
pub use slope::{Slope, SlopeError};
pub use verify::{check_names, run_all, CheckResult, VerifyContext, VerifySummary};
