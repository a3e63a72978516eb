//! Compilation of SAT-reconfiguration instances into token-sliding instances
//! on circle graphs.

pub mod cnf;
pub mod extract;
pub mod flips;
pub mod instance;
pub mod layout;
pub mod verify;

pub use cnf::{Assignment, CnfFormula, Literal};
pub use extract::{extract_assignment, moving_variable};
pub use flips::{flip_sequence, simulate_flips};
pub use instance::{df_assignment, satr_to_dsr, DsrInstance};
pub use layout::{build_reduction, Host, PathKind, ReductionLayout, ReductionParams, Role};
pub use verify::{verify_structure, StructureCheck, StructureReport};
