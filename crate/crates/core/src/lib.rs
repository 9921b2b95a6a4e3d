//! Toolkit for building sentiment corpora of Bengali-English code-mixed
//! social media text: stream filtering, word-level language tagging,
//! hybrid sentiment tagging, agreement and complexity metrics, and the
//! JSON release format.

pub mod config;
pub mod corpus;
pub mod langid;
pub mod learners;
pub mod lexicon;
pub mod sentiment;
pub mod text;
