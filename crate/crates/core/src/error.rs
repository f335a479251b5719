use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SspError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("format error: {0}")]
    Format(String),
    #[error("capacity exceeded: {0}")]
    Capacity(String),
    #[error("composition error: {0}")]
    Composition(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, SspError>;

macro_rules! bail {
    ($variant:ident, $($arg:tt)*) => {
        return Err($crate::error::SspError::$variant(format!($($arg)*)))
    };
}
pub(crate) use bail;
