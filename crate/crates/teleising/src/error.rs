use thiserror::Error;

#[derive(Error, Debug)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("cannot normalize a (near-)zero vector (norm = {norm:.3e})")]
    ZeroVector { norm: f64 },

    #[error("forced outcome has probability {prob:.3e} below the {floor:.0e} floor")]
    ImprobableOutcome { prob: f64, floor: f64 },

    #[error("dense representation over {sites} sites exceeds the cap of {cap} sites")]
    DenseCap { sites: usize, cap: usize },

    #[error("{what} did not converge: {detail}")]
    NotConverged { what: &'static str, detail: String },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("LAPACK {routine} failed with info = {info}")]
    Lapack { routine: &'static str, info: i32 },

    #[error("config error: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
