use std::io;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("input contains no edges or nodes")]
    EmptyInput,

    #[error("graph has no nodes")]
    EmptyGraph,

    #[error("node {node} out of range for graph with {n} nodes")]
    NodeOutOfRange { node: usize, n: usize },

    #[error("unknown node label {0:?}")]
    UnknownLabel(String),

    #[error("graph not connected")]
    NotConnected,

    #[error("closeness needs at least 2 nodes, graph has {0}")]
    TooFewNodes(usize),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("sample size k={k} must lie in 1..={n}")]
    InvalidSampleSize { k: usize, n: usize },

    #[error("degenerate profile: {0}")]
    DegenerateProfile(String),

    #[error("normal equations singular after {retries} damping retries")]
    Singular { retries: usize },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error(transparent)]
    Io(#[from] io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
