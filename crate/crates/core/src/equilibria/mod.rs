//! Complex balancing equilibria: binomial equations, deficiencies, existence,
//! explicit solutions and realization of prescribed right-hand sides.

mod monomial;
mod solutions;
mod system;

pub use monomial::{power_product_equals, Base, Exponents, MonomialVector};
pub use solutions::{
    existence_test, parametrization, particular_solution, particular_solution_candidate,
    realize_rates, verify_monomial, verify_point, verify_point_f64, ExistenceVerdict,
    Parametrization,
};
pub use system::{
    binomial_system, deficiencies, kappa_at, kinetic_generators, spanning_relation,
    spanning_relation_check, stoichiometric_generators, BinomialSystem, DeficiencyReport,
    SpanningRelation,
};
