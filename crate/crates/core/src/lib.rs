//! Fock-basis machinery for photon-subtracted two-mode squeezed vacuum states.
//!
//! The crate covers three layers:
//!
//! * [`fock`] — closed-form coefficients of the tapped-and-conditioned states:
//!   Schmidt coefficients, beam-splitter coefficients, detection probabilities,
//!   density-matrix elements of the on/off-conditioned mixed state, mean photon
//!   numbers.
//! * [`negativity`] — the block-diagonal partial transpose, a symmetric
//!   eigensolver, and negativity / logarithmic negativity, both numeric and in
//!   the analytic special cases (pure Schmidt states, squeezed vacuum, the
//!   ideal `T -> 1` limit).
//! * [`teleport`], [`densecoding`], [`sweep`] — the operational measures
//!   (coherent-state teleportation fidelity and QPSK dense-coding mutual
//!   information) and the parameter sweeps / crossover solves that compare them
//!   against the unsubtracted squeezed vacuum.

pub mod densecoding;
pub mod error;
pub mod fock;
pub mod linalg;
pub mod negativity;
pub mod quad;
pub mod special;
pub mod sweep;
pub mod teleport;

pub use densecoding::{channel_matrix, i_mixed, i_pure, i_sq, mutual_information, ChannelMatrix4, SignalParams};
pub use error::{Error, Result};
pub use fock::{
    bs_coeff, mean_photon_mixed, mean_photon_sq, mixed_density_element, pdet_mixed, pdet_pure,
    pure_subtracted_state, schmidt_coeff, squeezed_vacuum_state, DensityElementKey, ModelParams,
    SchmidtState,
};
pub use linalg::symmetric_eigenvalues;
pub use negativity::{
    build_pt_blocks, limit_t1_negativity, negativity_from_blocks, schmidt_negativity,
    schmidt_pt_blocks, sv_negativity, BlockDiagonalPT, EntanglementReport, PtBlock,
};
pub use special::erf;
pub use sweep::{dense_coding_limit_study, find_crossing, sweep, CrossoverResult, Measure, SweepRecord};
pub use teleport::{fid_mixed, fid_pure, fid_sq, fid_xp_integrand, FidelityResult};

/// Which entangled resource a measure is evaluated on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Resource {
    /// The unsubtracted two-mode squeezed vacuum.
    Sq,
    /// Photon subtraction heralded by number-resolving detectors (pure).
    Pure,
    /// Photon subtraction heralded by on/off detectors (mixed).
    Mixed,
}

impl std::fmt::Display for Resource {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Resource::Sq => write!(f, "sq"),
            Resource::Pure => write!(f, "pure"),
            Resource::Mixed => write!(f, "mixed"),
        }
    }
}

impl std::str::FromStr for Resource {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sq" => Ok(Resource::Sq),
            "pure" => Ok(Resource::Pure),
            "mixed" => Ok(Resource::Mixed),
            _ => Err(Error::Parse(format!("unknown resource `{s}` (expected sq|pure|mixed)"))),
        }
    }
}
