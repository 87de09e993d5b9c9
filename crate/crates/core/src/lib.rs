#![allow(clippy::needless_range_loop)]

pub mod algebra;
pub mod cli;
pub mod decide;
pub mod extraction;
pub mod fields;
pub mod linking;
pub mod mesh;
pub mod seifert;
