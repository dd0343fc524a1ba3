//! Imperfect teleportation of the critical transverse-field Ising chain.
//!
//! The crate models a many-body teleportation protocol in which Alice holds the
//! critical Ising ground state, entangles it qubit-by-qubit with Bob's product
//! state through partial entanglers exp(i u O_j^A O_j^B), and measures her
//! register along an arbitrary axis. The surviving state on Bob's side is the
//! critical state deformed by a weak-measurement factor whose strength is
//! alpha = -ln tan u. Modules:
//!
//! * [`state`] - statevector / density-matrix primitives with log-domain weights;
//! * [`ising`] - exact diagonalization of the critical chain, pristine
//!   correlators, and full counting statistics of axis magnetizations;
//! * [`protocol`] - the teleportation pipeline: brute force, closed form,
//!   decoding, deformations, outcome sampling, and the single-qubit primer;
//! * [`gaussian`] - free-fermion engine for the x-axis (marginal) deformation:
//!   quench modes, correlation matrices, entropies, effective central charges,
//!   and deformed correlator exponents;
//! * [`strange`] - large-alpha expansion: strange correlators, perturbative
//!   entropies, and parent Hamiltonians of the deformed states;
//! * [`mixed`] - outcome-averaged (decohered) teleported density matrices,
//!   string-correlator identities, and negativity scaling scans;
//! * [`fit`] + [`scenario`] - fitting utilities, experiment configs, and the
//!   CSV/JSON runners behind the CLI and the examples.

pub mod error;
pub mod fit;
pub mod gaussian;
pub mod ising;
pub mod lapack;
pub mod mixed;
pub mod numeric;
pub mod protocol;
pub mod scenario;
pub mod state;
pub mod strange;

pub use error::{Error, Result};
pub use state::{DensityMatrix, Statevector, UnitVector3};
