use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] autoseq::Error),

    #[error("{path}: {source}")]
    InFile { path: String, source: autoseq::Error },

    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },

    #[error("`{0}` is built in; pass --force to replace it")]
    Builtin(String),

    #[error("`{0}` is already bound")]
    Duplicate(String),

    #[error("unknown representation `{0}` (neither a loaded name nor a file)")]
    UnknownName(String),

    #[error("{0}")]
    Usage(String),
}
