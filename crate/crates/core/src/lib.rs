pub mod cone;
pub mod error;
pub mod intmat;
pub mod modsheaf;
pub mod monoid;
pub mod scheme;
pub mod spec;
pub mod zeta;
pub mod zext;
