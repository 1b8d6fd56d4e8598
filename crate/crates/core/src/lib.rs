//! Multigraded apolarity on simplicial toric varieties.
//!
//! A [`fan::FanModel`] fixes the Cox ring `S = k[x_ρ]` graded by the class
//! group. Forms live in the dual module `T`, which `S` acts on by contraction.
//! From there the crate computes apolar ideals, catalecticant ranks and the
//! rank bounds they give, ideal-theoretic length certificates, and probes of
//! secant varieties.

pub mod abelian;
pub mod apolarity;
pub mod bounds;
pub mod fan;
pub mod fixtures;
pub mod ideals;
pub mod linalg;
pub mod ring;
pub mod secant;
pub mod syntax;

use thiserror::Error;

pub use abelian::{DegreeClass, GradedGroup};
pub use fan::FanModel;
pub use linalg::Rational;
pub use ring::{GradedRing, MultiPoly, Side};

#[derive(Debug, Error)]
pub enum Error {
    #[error("InputError: {0}")]
    Input(String),
    #[error(transparent)]
    Group(#[from] abelian::GroupError),
    #[error(transparent)]
    Fan(#[from] fan::FanError),
    #[error(transparent)]
    Parse(#[from] syntax::ParseError),
    #[error(transparent)]
    Ring(#[from] ring::RingError),
    #[error(transparent)]
    Apolarity(#[from] apolarity::ApolarityError),
    #[error(transparent)]
    Ideal(#[from] ideals::IdealError),
    #[error(transparent)]
    Secant(#[from] secant::SecantError),
}

impl Error {
    pub fn name(&self) -> &'static str {
        match self {
            Error::Input(_) => "InputError",
            Error::Group(e) => e.name(),
            Error::Fan(e) => e.name(),
            Error::Parse(_) => "ParseError",
            Error::Ring(e) => e.name(),
            Error::Apolarity(e) => e.name(),
            Error::Ideal(e) => e.name(),
            Error::Secant(e) => e.name(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
