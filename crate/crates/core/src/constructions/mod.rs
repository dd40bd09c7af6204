//! Constructions of minor models in structured hosts.
//!
//! Each construction takes the structure a proof step starts from (a tree
//! with a matched path, a `Lambda(T)` member, a path decomposition, a
//! separation certificate) and returns a pattern, a host and a model. The
//! models are plain [`MinorModel`](crate::MinorModel) values, so every
//! result can be checked with [`verify_model`](crate::solvers::model::verify_model)
//! and, on small hosts, against the exact minor search.

pub mod bounds;
pub mod double_wheel;
pub mod es;
pub mod extend;
pub mod pw2;
pub mod wheel;
pub mod xi;
pub mod yurt;
pub mod zeta;

use thiserror::Error;

use crate::graph::{Graph, GraphError};
use crate::patterns::PatternError;
use crate::solvers::model::{verify_model, MinorModel, ModelViolation};

/// Output of a construction: the host it worked in, the pattern it found and
/// the model of that pattern in the host. `order` is the family parameter of
/// the pattern (rim length for wheels, `k` for ladders and yurts).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Construction {
    pub host: Graph,
    pub pattern: Graph,
    pub model: MinorModel,
    pub order: usize,
}

impl Construction {
    pub fn verify(&self) -> Result<(), Vec<ModelViolation>> {
        verify_model(&self.host, &self.pattern, &self.model)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Pattern(#[from] PatternError),
    #[error(transparent)]
    Es(#[from] es::EsError),
}

pub(crate) fn precondition(msg: impl Into<String>) -> ConstructionError {
    ConstructionError::Precondition(msg.into())
}

pub(crate) fn invalid(msg: impl Into<String>) -> ConstructionError {
    ConstructionError::InvalidInput(msg.into())
}
