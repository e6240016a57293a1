//! Library side of the `ringcodes` command-line tool: problem files, command
//! implementations and their JSON output.

pub mod commands;
pub mod problem;

use thiserror::Error;

pub use commands::{run, Command, Options, Report};
pub use problem::{parse_problem, parse_vector, render_code, render_pcs, Problem};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("{0}")]
    Core(#[from] ringcodes::Error),

    #[error("{0}")]
    Usage(String),

    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
}

impl CliError {
    /// 0 success, 2 validation failure, 3 parse failure, 4 budget exceeded,
    /// 1 anything else.
    pub fn exit_code(&self) -> i32 {
        use ringcodes::Error as E;
        match self {
            CliError::Parse { .. } => 3,
            CliError::Core(e) => match e {
                E::BudgetExceeded { .. } => 4,
                E::ConditionIViolation { .. }
                | E::ConditionIIViolation { .. }
                | E::ConditionIIIViolation { .. }
                | E::InvalidPresentation(_)
                | E::DualMismatch
                | E::LengthMismatch { .. } => 2,
                E::InvalidRing(_) | E::RingMismatch { .. } | E::ResidueOutOfRange { .. } => 3,
                _ => 1,
            },
            CliError::Usage(_) | CliError::Io { .. } => 1,
        }
    }

    /// Short machine-readable name used in JSON error objects.
    pub fn kind(&self) -> &'static str {
        use ringcodes::Error as E;
        match self {
            CliError::Parse { .. } => "parse",
            CliError::Usage(_) => "usage",
            CliError::Io { .. } => "io",
            CliError::Core(e) => match e {
                E::InvalidRing(_) => "invalid_ring",
                E::RingMismatch { .. } => "ring_mismatch",
                E::ResidueOutOfRange { .. } => "residue_out_of_range",
                E::LengthMismatch { .. } => "length_mismatch",
                E::BudgetExceeded { .. } => "budget_exceeded",
                E::Overflow(_) => "overflow",
                E::ConditionIViolation { .. } => "condition_i",
                E::ConditionIIViolation { .. } => "condition_ii",
                E::ConditionIIIViolation { .. } => "condition_iii",
                E::InvalidPresentation(_) => "invalid_presentation",
                E::DualMismatch => "dual_mismatch",
                E::InternalInconsistency(_) => "internal",
                E::DegenerateCode => "degenerate_code",
                E::BeyondRadius { .. } => "beyond_radius",
                E::NonIntegerCoefficient { .. } => "non_integer_coefficient",
                E::NotLinear => "not_linear",
            },
        }
    }
}
