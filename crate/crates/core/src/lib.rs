//! Exact domination-family parameters (γ, γ_t, b, b_t, r, r_t) and the
//! 3SAT gadget reductions that make the perturbation parameters NP-hard on
//! bipartite graphs, together with checkers that confirm each step of those
//! reductions on concrete instances.

pub(crate) mod bits;
pub mod cnf;
pub mod domset;
pub mod graph;
pub mod perturb;
pub mod reduction;
pub mod verify;

pub use cnf::{Assignment, CnfError, CnfInstance, Literal};
pub use domset::{DomError, DomResult, Domination};
pub use graph::{Graph, GraphError, Label};
pub use perturb::{MaxK, Parameter, PerturbError, PerturbResult, PerturbValue};
pub use reduction::{ReductionError, ReductionOutput, Role};
pub use verify::{ClaimCheck, VerificationReport};
