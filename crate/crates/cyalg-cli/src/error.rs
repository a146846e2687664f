use cyalg::abc::AbcError;
use cyalg::ar_shadow::ArError;
use cyalg::dimer::DimerError;
use cyalg::findim::FindimError;
use cyalg::preprojective::PreprojError;
use cyalg::quiver_algebra::QuiverError;
use cyalg::sign_dg::SignDgError;
use thiserror::Error;

/// Input errors exit with 2, everything else with 1.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{file}: {source}")]
    Io {
        file: String,
        source: std::io::Error,
    },
    #[error("{}", at(file, *line, message))]
    Parse {
        file: String,
        line: usize,
        message: String,
    },
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Math(String),
}

fn at(file: &str, line: usize, message: &str) -> String {
    if line == 0 {
        format!("{file}: {message}")
    } else {
        format!("{file}:{line}: {message}")
    }
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Math(_) => 1,
            _ => 2,
        }
    }

    fn input(file: &str, e: impl std::fmt::Display) -> Self {
        CliError::Input(format!("{file}: {e}"))
    }

    fn math(file: &str, e: impl std::fmt::Display) -> Self {
        CliError::Math(format!("{file}: {e}"))
    }

    pub fn quiver(file: &str, e: QuiverError) -> Self {
        match e {
            QuiverError::Parse { line, message } => CliError::Parse {
                file: file.into(),
                line,
                message,
            },
            QuiverError::NonStabilizing { .. } | QuiverError::NotSurjective { .. } => {
                Self::math(file, e)
            }
            other => Self::input(file, other),
        }
    }

    pub fn findim(file: &str, e: FindimError) -> Self {
        match e {
            FindimError::Quiver(q) => Self::quiver(file, q),
            other => Self::math(file, other),
        }
    }

    pub fn abc(file: &str, e: AbcError) -> Self {
        match e {
            AbcError::Quiver(q) => Self::quiver(file, q),
            AbcError::Findim(f) => Self::findim(file, f),
            AbcError::PositiveDegree(_) | AbcError::InvalidParameter(_) | AbcError::MissingCy => {
                Self::input(file, e)
            }
            other => Self::math(file, other),
        }
    }

    pub fn preproj(file: &str, e: PreprojError) -> Self {
        match e {
            PreprojError::Quiver(q) => Self::quiver(file, q),
            PreprojError::Abc(a) => Self::abc(file, a),
            PreprojError::Findim(f) => Self::findim(file, f),
            other => Self::input(file, other),
        }
    }

    pub fn sign_dg(file: &str, e: SignDgError) -> Self {
        match e {
            SignDgError::Quiver(q) => Self::quiver(file, q),
            SignDgError::Parse { line, message } => CliError::Parse {
                file: file.into(),
                line,
                message,
            },
            SignDgError::NotAResolution { .. } => Self::math(file, e),
            other => Self::input(file, other),
        }
    }

    pub fn dimer(file: &str, e: DimerError) -> Self {
        match e {
            DimerError::Quiver(q) => Self::quiver(file, q),
            DimerError::SignDg(s) => Self::sign_dg(file, s),
            DimerError::Parse { line, message } => CliError::Parse {
                file: file.into(),
                line,
                message,
            },
            DimerError::NotTorus { .. }
            | DimerError::Disconnected
            | DimerError::NoOrderWeights
            | DimerError::NotComplex { .. } => Self::math(file, e),
            other => Self::input(file, other),
        }
    }

    pub fn ar(file: &str, e: ArError) -> Self {
        match e {
            ArError::Quiver(q) => Self::quiver(file, q),
            ArError::Abc(a) => Self::abc(file, a),
            ArError::Findim(f) => Self::findim(file, f),
            ArError::InvalidParameter(_) => Self::input(file, e),
            other => Self::math(file, other),
        }
    }
}
