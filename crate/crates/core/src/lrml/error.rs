use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LrmlError {
    #[error("xml error at {line}:{col}: {message}")]
    Xml { message: String, line: u32, col: u32 },
    #[error("invalid structure at {line}:{col}: {message}")]
    Structural { message: String, line: u32, col: u32 },
    #[error("dangling reference to key '{key}'")]
    DanglingReference { key: String },
    #[error("reference to key '{key}' is invalid: {message}")]
    BadReference { key: String, message: String },
    #[error("duplicate key '{key}'")]
    DuplicateKey { key: String },
}
