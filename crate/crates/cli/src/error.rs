use kmhecke::{DatumError, FamilyError, HeckeError, PrincipalError, ScalarError, StabilizerError};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("config error: {0}")]
    Config(String),
    #[error("invalid datum: {0}")]
    Datum(#[from] DatumError),
    #[error("invalid scalar: {0}")]
    Scalar(#[from] ScalarError),
    #[error("{what} = {bound} is too small; try {suggested}")]
    BoundTooSmall { what: &'static str, bound: i64, suggested: i64 },
    #[error("{context}: {source}")]
    Principal { context: String, source: PrincipalError },
    #[error(transparent)]
    Stabilizer(StabilizerError),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

impl CliError {
    /// 2 for usage and configuration problems, 3 for broken invariants.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Invariant(_) | CliError::Stabilizer(StabilizerError::KacMoodyViolation(_)) => 3,
            _ => 2,
        }
    }

    pub fn principal(context: impl Into<String>) -> impl FnOnce(PrincipalError) -> Self {
        let context = context.into();
        move |source| match source {
            PrincipalError::NoDominantVector(b) => CliError::BoundTooSmall { what: "bounds.probe_coeff", bound: b, suggested: 2 * b },
            source => CliError::Principal { context, source },
        }
    }
}

impl From<StabilizerError> for CliError {
    fn from(e: StabilizerError) -> Self {
        match e {
            StabilizerError::Hecke(HeckeError::Datum(d)) => CliError::Datum(d),
            e => CliError::Stabilizer(e),
        }
    }
}

impl From<HeckeError> for CliError {
    fn from(e: HeckeError) -> Self {
        match e {
            HeckeError::Datum(d) => CliError::Datum(d),
            e => CliError::Stabilizer(StabilizerError::Hecke(e)),
        }
    }
}

impl From<FamilyError> for CliError {
    fn from(e: FamilyError) -> Self {
        match e {
            FamilyError::Scalar(s) => CliError::Scalar(s),
            FamilyError::Stabilizer(s) => s.into(),
            e => CliError::Config(e.to_string()),
        }
    }
}
