//! Reversible circuit synthesis from permutations.
//!
//! Three backends turn a permutation of `{0,1}^n` into a netlist:
//!
//! * [`toffoli::synth_general`]: any permutation, variated Toffoli gates,
//!   `n` data lines plus one borrowed line.
//! * [`even::synth_even`]: even permutations, variated Toffoli gates, no
//!   extra line.
//! * [`fredkin::synth_conservative`]: weight-preserving permutations,
//!   Fredkin gates, one ancilla line.
//!
//! Every result can be checked exhaustively with [`verify::verify_realizes`].

pub mod analysis;
pub mod circuit;
pub mod error;
pub mod even;
pub mod format;
pub mod fredkin;
pub mod perm;
pub mod toffoli;
pub mod verify;

pub use circuit::{Alphabet, Circuit, Gate, GateKind, LineRole};
pub use error::{Error, Result};
pub use perm::{Parity, Permutation};
pub use verify::{verify_realizes, Backend, SynthesisReport, Verdict};
