//! Error taxonomy shared by the whole crate.
//!
//! Four failure classes cover everything the numerics can do wrong:
//! out-of-domain arguments, missing tabulated data, iteration that fails to
//! converge (always reported with enough context to reproduce), and
//! degenerate mode parameters where a formula loses meaning.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// An argument lies outside the mathematical domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A lookup into the atomic data tables found nothing.
    #[error("data error: {0}")]
    Data(String),

    /// An iterative scheme (quadrature, root bracketing, series truncation)
    /// failed to converge or produced a non-finite value.
    #[error("numerical error: {0}")]
    Numerics(String),

    /// Mode parameters are degenerate and a derived quantity is undefined.
    #[error("degenerate mode: {0}")]
    Degenerate(String),
}

pub type Result<T> = std::result::Result<T, Error>;
