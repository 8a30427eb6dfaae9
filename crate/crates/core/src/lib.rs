//! Construction and exhaustive verification of involutive non-degenerate
//! set-theoretic solutions of the Yang–Baxter equation and of finite left
//! braces.

pub mod abgroup;
pub mod artifact;
pub mod brace;
pub mod constructions;
pub mod cycring;
pub mod par;
mod search;
pub mod ybcore;
