//! Numerical verification: sparse unitaries, circuit simulation, exact
//! reference operators and randomized equivalence trials.

pub mod matrix;
pub mod oracle;
pub mod simulate;
pub mod trials;

pub use matrix::Matrix;
pub use oracle::{
    controlled_block, equivalent, exact_term_exponential, fermionic_operator_matrix,
    fermionic_term_matrix, pauli_sum_matrix, projector_matrix, Equivalence,
};
pub use simulate::{dense_unitary, simulate_basis, MAX_SIMULATED_QUBITS};
pub use trials::{
    generate_trials, run_trial, run_trials, summarize, Fault, TrialOutcome, TrialSpec, TrialSummary,
};
