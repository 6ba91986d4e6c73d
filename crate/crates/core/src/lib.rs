//! Plan reuse over SAS+ instances: the planning model, the reuse decision
//! problems and their solvers, reduction gadgets with source oracles, and the
//! instance file format.

pub mod bench;
pub mod error;
pub mod examples;
pub mod io;
pub mod reductions;
pub mod reuse;
pub mod sas;
pub mod solvers;

pub use error::{Error, Result};
pub use io::{parse_instance, serialize_instance, Document, ParseError, ParseErrorKind};
pub use reuse::{compute_parameters, verify, Case, Certificate, Flavor, Infix, ParamReport, ReuseInstance, ReuseQuery};
pub use sas::{Action, ActionId, PartialState, Plan, PlanningInstance, State, Value, VarId, Variable};
pub use solvers::{solve, Algorithm, SolveResult, SolveStats, SolverConfig};
