//! Exact reconstruction of the degree-12, weight-12 Siegel cusp form that is
//! a rational combination of the theta series of the 24 Niemeier lattices.

pub mod acceptance;
pub mod codes;
pub mod cuspform;
pub mod exactq;
pub mod gf2quad;
pub mod golay;
pub mod hecke;
pub mod niemeier;
pub mod qseries;
pub mod reference;
pub mod rootsys;
pub mod subcount;
