pub mod algebra;
pub mod gf;
pub mod linalg;
pub mod rewrite;
pub mod constructors;
pub mod radical;
pub mod props;
pub mod verify;
pub mod dsl;
pub mod report;
pub mod corpus;
pub mod search;
pub mod suite;
pub mod cli;
