use crate::asymptotics::AsympError;
use crate::combinatorial_identities::IdentityError;
use crate::dfinite::DFiniteError;
use crate::exact_series::SeriesError;
use crate::guessing::GuessError;
use crate::parse::ParseError;
use crate::walk_engine::StepSetError;

/// Any error raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    StepSet(#[from] StepSetError),
    #[error(transparent)]
    Identity(#[from] IdentityError),
    #[error(transparent)]
    Guess(#[from] GuessError),
    #[error(transparent)]
    DFinite(#[from] DFiniteError),
    #[error(transparent)]
    Asymp(#[from] AsympError),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

impl Error {
    /// Variant name of the underlying module error, e.g. `RepeatedRoot`.
    pub fn kind(&self) -> String {
        let debug = match self {
            Error::Series(e) => format!("{e:?}"),
            Error::StepSet(e) => format!("{e:?}"),
            Error::Identity(e) => format!("{e:?}"),
            Error::Guess(e) => format!("{e:?}"),
            Error::DFinite(e) => format!("{e:?}"),
            Error::Asymp(e) => format!("{e:?}"),
            Error::Parse(e) => format!("{e:?}"),
        };
        debug
            .split(|c: char| !c.is_alphanumeric())
            .next()
            .unwrap_or_default()
            .to_string()
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kinds() {
        assert_eq!(
            Error::from(AsympError::RepeatedRoot("1".into())).kind(),
            "RepeatedRoot"
        );
        assert_eq!(Error::from(AsympError::RamifiedCase).kind(), "RamifiedCase");
        assert_eq!(
            Error::from(GuessError::InconclusiveOrder { order: 3 }).kind(),
            "InconclusiveOrder"
        );
    }
}
