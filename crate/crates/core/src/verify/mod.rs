//! Independent cross-checks: a brute-force oracle and structural theorems.

pub mod meta;
pub mod oracle;
