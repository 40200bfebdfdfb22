pub mod acceptance;
pub mod charclass;
pub mod groebner;
pub mod polyring;
pub mod presentations;
pub mod report;
pub mod series;
pub mod spanning;
pub mod symfunc;
pub mod weyl;
