//! Local computations behind the valuation formulas: closed-form local
//! Whittaker series with a shell-sum oracle, the delta_p / delta'_p case
//! tables at primes dividing D, the 2- and 3-adic sum tables, and the
//! derivative counts rho'_p.

mod delta23;
mod deltap;
mod whittaker;

pub use delta23::{
    delta2_sum, delta2_table, delta2_table_sum, delta3_count_split, delta3_prime_table_inert,
    delta3_sum, delta3_sum_prime, delta3_table_inert, delta3_table_split, rho2_ext, rho3_ext,
    rho_prime_3s3, AlphaCoords,
};
pub use deltap::{
    delta_p, delta_p_fundamental, delta_p_prime, delta_p_prime_fundamental, delta_p_via_whittaker,
    DeltaContext,
};
pub use whittaker::{
    hilbert_q, suggested_depth, unit_legendre, val_q, whittaker_closed, whittaker_oracle,
    LaurentPoly, LocalSetup, WhittakerCase, WhittakerError, WhittakerSeries, QB,
};

use num_rational::Rational64;

use crate::arith::{kronecker, val_i64};

/// rho'_p(m) for p not dividing 6D: o_p(m) + 1 when p is inert in the field
/// of discriminant d0 and o_p(m) is odd (p sits in the obstruction set),
/// else 0. Equals 2 sum_{j >= 1} rho_p(m / p^{2j-1}).
pub fn rho_prime(d0: i64, p: i64, m: i64) -> Rational64 {
    debug_assert!(m > 0);
    if kronecker(d0, p) != -1 {
        return Rational64::from_integer(0);
    }
    let v = val_i64(m, p).unwrap();
    if v % 2 == 1 {
        Rational64::from_integer(v + 1)
    } else {
        Rational64::from_integer(0)
    }
}
