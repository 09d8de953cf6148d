//! Crate-wide error type.
//!
//! Variants are grouped by the stage that produces them: file/parse problems,
//! alignment problems, and estimation problems. The CLI maps each group to a
//! distinct exit code, so new variants should slot into one of the groups.

use thiserror::Error;

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// Underlying I/O failure, tagged with the path involved.
    #[error("cannot access {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    /// Malformed content in an input file.
    #[error("parse error at {path}:{line}: {msg}")]
    Parse {
        path: String,
        line: usize,
        msg: String,
    },

    /// The same quarter appears twice in one series file.
    #[error("duplicate quarter {quarter} in {path}: lines {first_line} and {second_line}")]
    DuplicateQuarter {
        path: String,
        quarter: String,
        first_line: usize,
        second_line: usize,
    },

    /// A constructed value or configuration violates its own invariants.
    #[error("invalid input: {msg}")]
    Validation { msg: String },

    /// Series could not be brought onto a common contiguous quarter range.
    #[error("alignment failed: {msg}")]
    Alignment { msg: String },

    /// A named series is absent from the dataset.
    #[error("series '{name}' not found in dataset")]
    MissingSeries { name: String },

    /// An argument is outside the mathematical domain of an operation.
    #[error("domain error: {msg}")]
    Domain { msg: String },

    /// Not enough observations to run the requested estimation.
    #[error("insufficient data: {msg}")]
    InsufficientData { msg: String },

    /// A normal-equations or Newton-step matrix failed the positive-definite
    /// check, which in a regression context signals collinear regressors.
    #[error("matrix not positive definite at pivot {pivot}{detail}: regressors may be collinear")]
    Singular { pivot: usize, detail: String },

    /// Probit estimation diverged or never met the convergence test; the usual
    /// cause is linearly separable classes, for which no finite MLE exists.
    #[error("probit did not converge: {msg}; the classes may be linearly separable")]
    Separation { msg: String },

    /// Data that makes an estimator meaningless, e.g. a single-class indicator.
    #[error("degenerate data: {msg}")]
    DegenerateData { msg: String },
}

impl Error {
    /// Process exit code the CLI uses for this error: 2 for parse/input
    /// problems, 3 for alignment problems, 4 for estimation problems.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Io { .. }
            | Error::Parse { .. }
            | Error::DuplicateQuarter { .. }
            | Error::Validation { .. } => 2,
            Error::Alignment { .. } | Error::MissingSeries { .. } => 3,
            Error::Domain { .. }
            | Error::InsufficientData { .. }
            | Error::Singular { .. }
            | Error::Separation { .. }
            | Error::DegenerateData { .. } => 4,
        }
    }
}
