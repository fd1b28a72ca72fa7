use thiserror::Error;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("registry miss: {0}")]
    RegistryMiss(String),
    #[error("{} verdict failure(s):\n  {}", .0.len(), .0.join("\n  "))]
    VerdictFailure(Vec<String>),
    #[error("internal error: {0}")]
    Internal(String),
}

impl HarnessError {
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Parse(_) | Self::RegistryMiss(_) => 1,
            Self::VerdictFailure(_) => 2,
            Self::Internal(_) => 3,
        }
    }
}

macro_rules! internal_from {
    ($($t:ty),*) => {$(
        impl From<$t> for HarnessError {
            fn from(e: $t) -> Self {
                Self::Internal(e.to_string())
            }
        }
    )*};
}

internal_from!(
    mourre_core::OperatorError,
    mourre_hs::HsError,
    mourre_estimate::EstimateError,
    mourre_lap::LapError,
    std::io::Error,
    serde_json::Error
);

impl From<mourre_symbols::SymbolError> for HarnessError {
    fn from(e: mourre_symbols::SymbolError) -> Self {
        match e {
            mourre_symbols::SymbolError::UnknownSymbol(_) => Self::RegistryMiss(e.to_string()),
            _ => Self::Parse(e.to_string()),
        }
    }
}

impl From<mourre_models::ModelError> for HarnessError {
    fn from(e: mourre_models::ModelError) -> Self {
        use mourre_models::ModelError as M;
        match e {
            M::RegistryMiss(_) => Self::RegistryMiss(e.to_string()),
            M::BadParameter(_) | M::TooSmall { .. } => Self::Parse(e.to_string()),
            M::Operator(mourre_core::OperatorError::Parse { .. }) => Self::Parse(e.to_string()),
            _ => Self::Internal(e.to_string()),
        }
    }
}
