//! Exact ground-state analysis of projector-sum Hamiltonians on qubit chains.
//!
//! The model places `n` qubits on a line and sums, over every window of `k`
//! adjacent sites, the projector onto the all-ones pattern of that window.
//! The Hamiltonian is diagonal in the computational basis, so the energy of a
//! basis state is the number of all-ones windows it contains and the ground
//! states are exactly the bit strings without a run of `k` ones.
//!
//! - [`model`]: lattice parameters, basis states and the energy function.
//! - [`degeneracy`]: ground-state counts by enumeration, by the k-step
//!   recurrence and by the modular row criterion (k = 2).
//! - [`dense`]: explicit Kronecker-lifted matrices for small chains, used as
//!   an oracle for the structural claims.
//! - [`spectral`]: characteristic roots, Pisot checks and convergence of the
//!   per-site ground-state count.
//! - [`verify`]: the cross-checking suite run by `kchain verify`.

pub mod degeneracy;
pub mod dense;
pub mod error;
pub mod model;
pub mod spectral;
pub mod verify;

pub use degeneracy::{
    count_enumerate, count_enumerate_with_workers, count_modular, count_recurrence,
    identity_check, kernel_basis, recurrence_sequence, DegeneracyResult, IdentityReport, Method,
    RecurrenceSeeds,
};
pub use dense::{
    build_dense, check_structure, kernel_vs_image, kron, DenseHamiltonian, KernelImageReport,
    Matrix, StructureReport,
};
pub use error::{Error, Result};
pub use model::{local_matrix, total_energy, window_energy, BasisState, LatticeSpec, LocalOperatorMatrix};
pub use spectral::{
    all_roots, binet_estimate, dominant_root, per_site_sequence, pisot_check, BinetEstimate,
    CharPoly, ConvergencePoint, PisotReport, RootSet,
};
