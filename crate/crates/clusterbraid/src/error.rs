use clusterbraid_core::exchange::ExchangeError;
use clusterbraid_core::presentation::PresentationError;
use clusterbraid_core::qp::QpError;
use clusterbraid_core::surface::SurfaceError;

use crate::format::ParseError;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("{0}")]
    Parse(#[from] ParseError),
    #[error("{0}")]
    Qp(#[from] QpError),
    #[error("{0}")]
    Presentation(#[from] PresentationError),
    #[error("{0}")]
    Exchange(#[from] ExchangeError),
    #[error("{0}")]
    Surface(#[from] SurfaceError),
    #[error("vertex {vertex} is not in 1..={n}")]
    InvalidVertex { vertex: usize, n: usize },
    #[error("unknown claim `{0}`")]
    UnknownClaim(String),
    #[error("unknown presentation kind `{0}` (expected br, at or cbr)")]
    UnknownKind(String),
    #[error("nothing to undo")]
    EmptyHistory,
}

impl Error {
    /// Stable machine-readable code.
    pub fn code(&self) -> &'static str {
        match self {
            Error::Parse(_) => "parse_error",
            Error::Qp(QpError::InvalidVertex { .. }) | Error::InvalidVertex { .. } => "invalid_vertex",
            Error::Qp(_) => "qp_error",
            Error::Presentation(_) => "presentation_error",
            Error::Exchange(ExchangeError::CapExceeded { .. }) => "cap_exceeded",
            Error::Exchange(_) => "exchange_error",
            Error::Surface(_) => "surface_error",
            Error::UnknownClaim(_) => "unknown_claim",
            Error::UnknownKind(_) => "unknown_kind",
            Error::EmptyHistory => "empty_history",
        }
    }
}
