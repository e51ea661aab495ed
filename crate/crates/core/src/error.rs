use thiserror::Error;

use crate::circuit::{CircuitError, ParseError};
use crate::graph::GraphError;
use crate::lc::LcError;
use crate::oracle::OracleError;
use crate::pattern::PatternError;
use crate::tableau::TableauError;
use crate::tracker::TrackError;

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Circuit(#[from] CircuitError),
    #[error(transparent)]
    Tableau(#[from] TableauError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Track(#[from] TrackError),
    #[error(transparent)]
    Pattern(#[from] PatternError),
    #[error(transparent)]
    Lc(#[from] LcError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
