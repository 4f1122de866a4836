//! Binary quadratic form class groups, ideal arithmetic in imaginary
//! quadratic orders, and the ideal-counting functions built on them.

mod cmpair;
mod counting;
mod forms;
mod ideals;

pub use cmpair::{enumerate_elements, make_small_cm_pair, CmPair, IdealData};
pub use counting::{
    diff_set, genus_of, genus_represents, prime_divisors, r_class, represented_value_coprime,
    rho, rho_genus, rho_genus_hilbert, rho_m, rho_oracle, rho_p, s_set, Q,
};
pub use forms::{ClassGroup, Discriminant, QuadClass};
pub use ideals::{
    canonical_root, ideals_of_norm, prime_ideal_class, split_type, KIdeal, LocalPart, SplitType,
};

use std::fmt;

/// Errors from class-group and ideal constructions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QuadError {
    NotADiscriminant(i64),
    NotAdmissible(i64),
    NotFundamental(i64),
    DifferentField(i64, i64),
    GenusArgumentNotCoprime(i64, i64),
    ZeroArgument(&'static str),
    CompositionEscaped,
    SearchFailed,
}

impl fmt::Display for QuadError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QuadError::NotADiscriminant(d) => {
                write!(f, "{} is not a negative discriminant (need 0 or 1 mod 4)", d)
            }
            QuadError::NotAdmissible(d) => {
                write!(f, "{} is not admissible (need D = 1 mod 8 and 3 not dividing D)", d)
            }
            QuadError::NotFundamental(d) => write!(f, "{} is not fundamental", d),
            QuadError::DifferentField(d1, d2) => {
                write!(f, "{} and {} generate different quadratic fields", d1, d2)
            }
            QuadError::GenusArgumentNotCoprime(c, d0) => {
                write!(f, "genus argument {} is not coprime to {}", c, d0)
            }
            QuadError::ZeroArgument(op) => write!(f, "{}: argument must be nonzero", op),
            QuadError::CompositionEscaped => write!(f, "composition left the reduced-form list"),
            QuadError::SearchFailed => write!(f, "representative search exceeded its bound"),
        }
    }
}

impl std::error::Error for QuadError {}
