//! Quivers, potentials and their mutations.

mod degree;
mod dynkin;
mod mutation;
mod normal_form;
mod potential;
mod quiver;

use alloc::string::String;

pub use degree::{validate_superpotential_degree, DegreeReport, DegreeViolation};
pub use dynkin::{dynkin_type, is_mutation_dynkin, DynkinFamily, DynkinSearch, DynkinType};
pub use mutation::{mutate_qp, premutate_qp, reduce_qp, Qp};
pub use normal_form::{normal_form, NormalForm};
pub use potential::{least_rotation, Coeff, PathSum, Potential};
pub use quiver::{
    mutate_quiver, validate_quiver, Arrow, Quiver, ValidationFlags, ValidationReport, Violation,
};

pub(crate) use quiver::{check_mutable, starred, CompositeNamer};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum QpError {
    #[error("vertex {vertex} is not in 1..={n}")]
    InvalidVertex { vertex: usize, n: usize },
    #[error("arrow {id}: vertex {vertex} out of range 1..={n}")]
    VertexOutOfRange { id: String, vertex: usize, n: usize },
    #[error("duplicate arrow id {0}")]
    DuplicateArrowId(String),
    #[error("quiver is not cluster-legal: {0}")]
    NotClusterLegal(String),
    #[error("arrow {0} has degree other than 1; mutation needs an ungraded quiver")]
    GradedArrow(String),
    #[error("vertex {0} lies on a loop or 2-cycle")]
    TwoCycleAtVertex(usize),
    #[error("cycle ({0}) is not a closed composable path")]
    NotComposable(String),
    #[error("unknown arrow {0}")]
    UnknownArrow(String),
    #[error("reduction did not terminate within bound {0}")]
    ReductionCapExceeded(usize),
    #[error("2-cycle term ({0}) cannot be eliminated by a linear substitution")]
    NonlinearTwoCycle(String),
    #[error("2-cycle {0} survives reduction (degenerate potential)")]
    DegenerateTwoCycles(String),
    #[error("degree condition violated: {0}")]
    DegreeViolation(String),
    #[error("degree N is not set")]
    MissingDegree,
    #[error("degree N must be at least 3, got {0}")]
    InvalidDegreeN(u32),
}
