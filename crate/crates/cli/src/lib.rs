pub mod dsl;
pub mod env;
pub mod run;
