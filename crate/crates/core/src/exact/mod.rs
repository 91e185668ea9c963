//! Exact arithmetic foundation: big rationals, cyclotomic fields, rational
//! functions of the formal q, log-linear values, and truncated power series.

pub mod cyclotomic;
pub mod loglinear;
pub mod ratfunc;
pub mod series;

pub use cyclotomic::{euler_phi, CyclotomicNumber, Rat};
pub use loglinear::{LogLin, LogLinCyclo, LogLinearValue};
pub use ratfunc::{PolyC, RationalFunctionQ};
pub use series::FormalPowerSeries;
