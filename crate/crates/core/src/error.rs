use thiserror::Error;

use crate::wps::Cqs;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("unknown family id {id}; available ids: {available}")]
    UnknownFamily { id: u32, available: String },

    #[error("catalog parse error: {0}")]
    Parse(String),

    #[error("family {id}: invariant violated: {invariant}")]
    Invariant { id: u32, invariant: String },

    #[error("duplicate family id {0}")]
    DuplicateId(u32),

    #[error("bad assumption tag {tag:?}: {reason}")]
    BadTag { tag: String, reason: String },

    #[error("not isolated/ill-formed germ: {0}")]
    IllFormedGerm(String),

    #[error("generic member not quasismooth at coordinate point {0}")]
    NotQuasismooth(usize),

    #[error("coordinate point {0} does not lie on the generic member")]
    NotOnX(usize),

    #[error("coordinate point {0} is a smooth point")]
    SmoothCentre(usize),

    #[error("centre {0} is not a terminal cyclic quotient singularity")]
    NonTerminal(Cqs),

    #[error("ambiguous singularity type at coordinate point {index}: {candidates:?}")]
    Ambiguous { index: usize, candidates: Vec<Cqs> },

    #[error("degenerate general member: no monomials of degree {0}")]
    DegenerateMember(i64),

    #[error("no coordinate realisation of basket point {0}")]
    NonCoordinateCentre(Cqs),

    #[error("unknown centre {spec} for family {id}")]
    UnknownCentre { id: u32, spec: String },

    #[error("column set does not span a strictly convex cone")]
    NonConvex,

    #[error("ray ({0}, {1}) is not spanned by any column")]
    RayNotFound(i64, i64),

    #[error("wall ({0}, {1}) lies on the boundary of the movable cone")]
    WallOnBoundary(i64, i64),

    #[error("endpoint class not in strict Eff interior (crepant or invalid)")]
    EndpointNotInterior,

    #[error("degenerate fiber data: {0}")]
    DegenerateFiber(String),

    #[error("hypothesis (3) of the nef criterion fails: c = {0} exceeds 1/r")]
    NefHypothesis(String),

    #[error("empty comparison set")]
    EmptyComparisonSet,

    #[error("lift integrality failed: {0}")]
    Integrality(String),
}
