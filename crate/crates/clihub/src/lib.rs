//! Command-line tools, annotation store and HTTP API for the code-mixed
//! corpus pipeline.

pub mod agreement;
pub mod api;
pub mod cli;
pub mod config;
pub mod export;
pub mod guidelines;
pub mod manifest;
pub mod store;
pub mod summary;
