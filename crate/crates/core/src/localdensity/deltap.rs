//! The local factors delta_p(n, alpha~) and delta'_p(n, alpha~) at primes
//! p | D = D0 t^2, as closed case tables keyed on r = o_p(D0 t),
//! r0 = o_p(D0), the valuations of the coordinates of alpha~, and
//! alpha = 1 - alpha~_2^2 / (a t).
//!
//! Inputs: alpha~ = x1 + x2 sqrt(D0) in the composed ideal with
//! Nm(alpha~)/a = -D0 t - n; delta_p vanishes when p lies in the local
//! obstruction set of -n a, and delta'_p vanishes when it does not.

use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use num_traits::{One, Signed, Zero};

use crate::arith::{hilbert_symbol, kronecker, valuation_rat};

use super::whittaker::{unit_legendre, val_q, QB};

pub type Q = Rational64;

/// Everything fixed about the pair (only the element varies).
#[derive(Clone, Copy, Debug)]
pub struct DeltaContext {
    pub d0: i64,
    pub t: i64,
    /// Norm of the composed ideal (coprime to 6 b D by construction).
    pub a: i64,
}

impl DeltaContext {
    pub fn d(&self) -> i64 {
        self.d0 * self.t * self.t
    }

    /// epsilon(p) for the field of discriminant d0: 1 split, -1 inert, 0 ramified.
    pub fn eps(&self, p: i64) -> i32 {
        kronecker(self.d0, p)
    }

    /// Is p in Diff(-n/(D0 t), N_1) = S(D0, -n a)?
    pub fn in_diff(&self, n: i64, p: i64) -> bool {
        debug_assert!(n > 0);
        hilbert_symbol(-n * self.a, self.d0, p) == -1
    }
}

fn val_or_max(x: &Q, p: i64) -> i64 {
    if x.is_zero() {
        return i64::MAX;
    }
    valuation_rat(
        &BigInt::from(*x.numer()),
        &BigInt::from(*x.denom()),
        &BigInt::from(p),
    )
    .unwrap()
}

fn qpow(p: i64, e: i64) -> Q {
    debug_assert!(e.abs() < 40);
    if e >= 0 {
        Q::from_integer(p.pow(e as u32))
    } else {
        Q::new(1, p.pow((-e) as u32))
    }
}

/// chi_p(x): Legendre symbol of the unit part with respect to the
/// uniformizer -p; the tables only use it on even-valuation arguments,
/// where the sign of the uniformizer drops out.
fn chi_p(x: &Q, p: i64) -> i32 {
    let q = QB::new(BigInt::from(*x.numer()), BigInt::from(*x.denom()));
    debug_assert!(val_q(&q, p).unwrap().rem_euclid(2) == 0);
    unit_legendre(&q, p)
}

/// Local data of one element.
struct ElementData {
    o1: i64,
    o2: i64,
    /// alpha = 1 - x2^2/(a t) = -(x1^2 + a n)/(a D0 t)
    alpha: Q,
    o_alpha: i64,
}

fn element_data(ctx: &DeltaContext, x1: &Q, x2: &Q, p: i64, n: i64) -> ElementData {
    let o1 = val_or_max(x1, p);
    let o2 = val_or_max(x2, p);
    let at = Q::from_integer(ctx.a * ctx.t);
    let alpha = Q::one() - x2 * x2 / at;
    let o_alpha = val_or_max(&alpha, p);
    if cfg!(debug_assertions) && n >= 0 {
        // the two expressions for alpha agree on genuine elements
        let lhs = alpha * Q::from_integer(ctx.a * ctx.d0 * ctx.t);
        let rhs = -(x1 * x1 + Q::from_integer(ctx.a * n));
        debug_assert_eq!(lhs, rhs, "element does not satisfy the norm relation");
    }
    ElementData {
        o1,
        o2,
        alpha,
        o_alpha,
    }
}

/// delta_p(n, alpha~) for p | D. `n = 0` is the constant-term case.
pub fn delta_p(ctx: &DeltaContext, n: i64, x1: &Q, x2: &Q, p: i64) -> Q {
    assert!(ctx.d() % p == 0, "p must divide D");
    assert!(n >= 0);
    let r = crate::arith::val_i64(ctx.d0 * ctx.t, p).unwrap();
    let r0 = crate::arith::val_i64(ctx.d0, p).unwrap();
    let e = element_data(ctx, x1, x2, p, n);
    let in_sqrt_d_o = e.o1 >= r && e.o2 >= r - r0;
    if n == 0 {
        // Case (ii)
        if r > r0 {
            return Q::zero();
        }
        debug_assert_eq!((r, r0), (1, 1));
        return if in_sqrt_d_o { Q::one() } else { Q::zero() };
    }
    if ctx.in_diff(n, p) {
        return Q::zero();
    }
    let on = crate::arith::val_i64(n, p).unwrap();
    let eps = ctx.eps(p) as i64;
    let inv_l = Q::one() - Q::new(eps, p); // 1/L_p(1, eps)
    if in_sqrt_d_o {
        if 2 * r - r0 <= on && on < 2 * r && (on - r0).rem_euclid(2) == 0 {
            let chi = chi_p(&(Q::from_integer(ctx.a * n) / Q::from_integer(ctx.d0)), p);
            return qpow(p, (on - r0) / 2) * Q::from_integer(1 + chi as i64);
        }
        if on >= 2 * r && eps == 1 {
            // r0 = 0 here (split p cannot divide D0)
            debug_assert_eq!(r0, 0);
            return qpow(p, r) * inv_l * Q::from_integer(on - 2 * r + 1);
        }
        if on >= 2 * r && eps != 1 {
            return qpow(p, r - (r0 + 1) / 2) * Q::from_integer(2 + eps) * inv_l;
        }
        return Q::zero();
    }
    if r == r0 {
        // p | D0, p does not divide t; r = r0 = 1 for fundamental odd D0
        if 0 <= e.o_alpha && e.o_alpha < e.o1 && e.o1 < r && e.o_alpha.rem_euclid(2) == 0 {
            let chi = chi_p(&(-Q::from_integer(ctx.a * ctx.t) * e.alpha), p);
            return qpow(p, e.o_alpha) * Q::from_integer(1 + chi as i64);
        }
        if e.o1 <= e.o_alpha.min(r - 1) {
            return qpow(p, e.o1.div_euclid(2));
        }
        return Q::zero();
    }
    // r0 < r
    if e.o1.min(e.o2) == 0 {
        return Q::one();
    }
    Q::zero()
}

/// delta'_p(n, alpha~) for p | D; nonzero only when p is in the local
/// obstruction set (for n > 0) or in the p | t constant-term case.
pub fn delta_p_prime(ctx: &DeltaContext, n: i64, x1: &Q, x2: &Q, p: i64) -> Q {
    assert!(ctx.d() % p == 0, "p must divide D");
    assert!(n >= 0);
    let r = crate::arith::val_i64(ctx.d0 * ctx.t, p).unwrap();
    let r0 = crate::arith::val_i64(ctx.d0, p).unwrap();
    let e = element_data(ctx, x1, x2, p, n);
    let in_sqrt_d_o = e.o1 >= r && e.o2 >= r - r0;
    let in_t_o = e.o1.min(e.o2) >= r - r0;
    if n == 0 {
        // Case (ii)
        if r > r0 {
            return Q::from_integer(1 - ctx.eps(p) as i64);
        }
        return Q::zero();
    }
    if !ctx.in_diff(n, p) {
        return Q::zero();
    }
    let on = crate::arith::val_i64(n, p).unwrap();
    let eps = ctx.eps(p) as i64;
    if in_sqrt_d_o {
        if r <= on && on < 2 * r - r0 {
            return (qpow(p, on - r + 1) - Q::one()) / Q::from_integer(p - 1);
        }
        if 2 * r - r0 <= on && on < 2 * r {
            let hi = qpow(p, (on - r0 + 2) / 2); // ceil((on - r0 + 1)/2)
            let lo = qpow(p, (on - r0 + 1) / 2); // floor
            return (hi + lo - qpow(p, r - r0) - Q::one()) / Q::from_integer(p - 1);
        }
        if on >= 2 * r {
            let lead = (Q::from_integer(2) * qpow(p, r - (r0 + 1) / 2)
                - qpow(p, r - r0)
                - Q::one())
                / Q::from_integer(p - 1);
            let inv_l = Q::one() - Q::new(eps, p);
            let slope = Q::from_integer(2 + eps) * qpow(p, r - (r0 + 1) / 2) * inv_l
                / Q::from_integer(2);
            let count = Q::from_integer(on - 2 * (r0 / 2) + r0 - 2 * r + 1);
            return lead + slope * count;
        }
        return Q::zero();
    }
    if in_t_o && r0 < r {
        return Q::one();
    }
    if r == r0 && e.o_alpha < e.o1 && e.o1 < r {
        let oa = e.o_alpha;
        let mut v = Q::from_integer(2) * (qpow(p, (oa + 1) / 2) - Q::one())
            / Q::from_integer(p - 1);
        if oa.rem_euclid(2) == 0 {
            v += qpow(p, oa / 2);
        }
        return v;
    }
    if 0 < e.o1.min(e.o2) && e.o1.min(e.o2) < r - r0 {
        return Q::one();
    }
    Q::zero()
}

/// Specialized values for fundamental D (r = r0 = 1):
/// delta_p = 2 / 1 / 0 depending on eps_p(-n a) and o_p(n);
/// delta'_p = o_p(n) when p is in the obstruction set.
pub fn delta_p_fundamental(ctx: &DeltaContext, n: i64, p: i64) -> Q {
    debug_assert_eq!(ctx.t, 1);
    if ctx.in_diff(n, p) {
        return Q::zero();
    }
    let on = crate::arith::val_i64(n, p).unwrap();
    if on >= 1 {
        Q::from_integer(2)
    } else {
        Q::one()
    }
}

pub fn delta_p_prime_fundamental(ctx: &DeltaContext, n: i64, p: i64) -> Q {
    debug_assert_eq!(ctx.t, 1);
    if !ctx.in_diff(n, p) {
        return Q::zero();
    }
    Q::from_integer(crate::arith::val_i64(n, p).unwrap())
}

/// Bridge to the closed Whittaker forms, used to certify the tables:
/// delta_p(n, alpha~) = f(1) and delta'_p(n, alpha~) = -f'(1) where f is the
/// normalized closed form with Delta = D0, kappa = -t/a, m = -n/(D0 t),
/// mu = -alpha~ / sqrt(D).
pub fn delta_p_via_whittaker(
    ctx: &DeltaContext,
    n: i64,
    x1: &Q,
    x2: &Q,
    p: i64,
) -> Option<(BigRational, BigRational)> {
    use super::whittaker::{whittaker_closed, LocalSetup};
    let to_qb = |x: &Q| QB::new(BigInt::from(*x.numer()), BigInt::from(*x.denom()));
    let delta = QB::from_integer(BigInt::from(ctx.d0));
    let kappa = -QB::new(BigInt::from(ctx.t), BigInt::from(ctx.a));
    // mu = -(x1 + x2 sqrt(D0)) / (t sqrt(D0)) = -x2/t - (x1/(t D0)) sqrt(D0)
    let mu1 = -to_qb(x2) / QB::from_integer(BigInt::from(ctx.t));
    let mu2 = -to_qb(x1) / QB::from_integer(BigInt::from(ctx.t * ctx.d0));
    let m = -QB::new(BigInt::from(n), BigInt::from(ctx.d0 * ctx.t));
    let setup = LocalSetup::new(p, delta, kappa, mu1, mu2).ok()?;
    let (w, _) = whittaker_closed(&setup, &m);
    let value = w.value_at_center()?;
    let deriv = -w.deriv_at_one()?;
    Some((value, deriv))
}
