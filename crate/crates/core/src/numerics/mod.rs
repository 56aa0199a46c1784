//! Floating-point dynamics and equilibrium location.

mod newton;
mod ode;

pub use newton::{solve_class_map, solve_in_class, ClassMap, ClassSolveResult, SolveOptions};
pub use ode::{integrate, ode_rhs, Kinetics, Trajectory};
