//! Exponential-sum solvers for moment expansions of quantum models.
//!
//! One moment sequence μ_j = ⟨φ|H^j|φ⟩, computed exactly for
//! Gaussian-polynomial trial states under polynomial potentials, feeds two
//! fits: Z_N(t), an exponential model of the generating function whose
//! parameters estimate energies and overlaps, and E^(N)(t), the
//! connected-moments expansion whose constant term estimates the ground
//! energy. Both reduce to the classic exponential-fitting equations, solved
//! here by the Hankel linear system and by the Hankel pencil, with a dense
//! diagonalization oracle as ground truth.

pub mod catalog;
pub mod cmx;
pub mod config;
pub mod moments;
pub mod output;
pub mod poly;
pub mod prony;
pub mod reference;
pub mod scalar;
pub mod series;
pub mod state;

pub use cmx::{
    cmx_from_connected, correlation_squared, eval_en, eval_un, eval_zn, order_scan,
    zn_from_moments, CmxApproximant, CmxError, ZnApproximant,
};
pub use moments::{connected_moments, ConnectedMoments, MomentSequence};
pub use prony::{
    build_hankel, classify_roots, solve_amplitudes, solve_linear_prony, solve_secular,
    LimitBehavior, PronyError, PronyProblem, PronySolution, RootDiagnostics, SolveMethod,
};
pub use reference::{diagonalize, exact_c2_ho, exact_e_ho, rrk_oracle, SpectralReference};
pub use state::{
    apply_hamiltonian, inner_product, normalize, GaussianPolyState, PolynomialHamiltonian,
    StateError,
};
