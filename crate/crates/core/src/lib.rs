//! Periodic-point obstructions to clock weak factors of cellular automata.
//!
//! A cellular automaton `F` maps constant configurations to constant
//! configurations, inducing `φ_F` on the alphabet. If the clock automaton
//! `C_q^{(k)}` is a weak factor of `F` (a continuous `π` with
//! `π ∘ F = C_q ∘ π`, not necessarily shift-commuting), then `q` divides
//! every least period of `F`, in particular the gcd `g_F` of the cycle
//! lengths of `φ_F`. This crate computes `φ_F`, `g_F` and the analogous
//! gcds over torus state spaces, turns them into verdicts, and constructs
//! the reductions `C_m -> C_q` for `q | m` that show the bound is sharp.
//!
//! Modules:
//! - [`ca`]: automata, torus configurations and the global map.
//! - [`rules`]: rule specs, named builders and the rule-table file format.
//! - [`cycles`]: functional graph cycle decomposition.
//! - [`obstruction`]: `g_F`, torus gcds, verdicts and witnesses.
//! - [`clock`]: clock automata and verified residue reductions.
//! - [`cli`]: the command-line front end.

pub mod ca;
pub mod cli;
pub mod clock;
pub mod cycles;
pub mod error;
pub mod obstruction;
pub mod rules;

pub use ca::{AlphabetMap, CellularAutomaton, Symbol, TorusConfig};
pub use clock::{mod_reduction, verify_equivariance, ClockAutomaton, FactorWitness};
pub use cycles::{cycle_report, CycleReport};
pub use error::{Error, Result};
pub use obstruction::{
    constant_periodic_point, g_of, prime_witness, refined_obstruction, torus_period_gcd, Outcome,
    Verdict,
};
pub use rules::{build, parse_rule_spec, RuleSpec};
