use thiserror::Error;

use crate::poly::{PolyError, Polynomial};

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Poly(#[from] PolyError),

    /// A resource cap was hit. `partial` holds whatever basis or generator
    /// list had been built when the cap triggered.
    #[error("budget exhausted in {context} after {steps} steps")]
    Budget { context: String, steps: usize, partial: Vec<Polynomial> },

    /// An input violates a mathematical precondition.
    #[error("hypothesis failed: {0}")]
    Hypothesis(String),

    /// A generator of a global ideal does not restrict into the paired
    /// local ideal.
    #[error("containment fails: the leaf jet of {generator} is not in the local ideal at order {order}")]
    Containment { generator: String, order: u32 },

    /// The available jet order was not enough to decide a question.
    #[error("inconclusive at jet order {order}: {reason}")]
    Inconclusive { order: u32, reason: String },

    /// A certificate that should hold by construction did not verify.
    #[error("certificate failure: {0}")]
    Certificate(String),

    #[error("unsupported: {0}")]
    Unsupported(String),
}

impl Error {
    pub fn budget(context: &str, steps: usize, partial: Vec<Polynomial>) -> Self {
        Error::Budget { context: context.to_string(), steps, partial }
    }

    pub fn is_budget(&self) -> bool {
        matches!(self, Error::Budget { .. })
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
