//! Exact formal power series and umbral calculus for binomial-type sequences.

pub mod conjugation;
pub mod asymptotic;
pub mod error;
pub mod laurent;
pub mod numeric;
pub mod operator;
pub mod param_poly;
pub mod poly;
pub mod presets;
pub mod rational;
pub mod report;
pub mod ring;
pub mod series;
pub mod sheffer;
pub mod stirling;
pub mod umbral;
pub mod verify;

pub use asymptotic::{AsymptoticSeries, LnPoly};
pub use error::{Error, Result};
pub use laurent::Laurent;
pub use param_poly::{ParamPoly, Symbol};
pub use poly::Poly;
pub use rational::Rational;
pub use ring::Ring;
pub use series::{ArithOp, ParamSeries, PowerSeries, RatSeries, Var};
