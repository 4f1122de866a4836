//! Ideal-counting functions for the field Q(sqrt(D0)): the global count
//! rho(n), its local factors rho_p, the M-deprived product rho^(M), the
//! class-restricted count r_A, genus-restricted counts, and the sets of
//! primes where the local quadratic character is -1.

use num_rational::Rational64;
use num_traits::Zero;

use crate::arith::{hilbert_symbol, kronecker, val_i64};

use super::forms::{ClassGroup, QuadClass};
use super::QuadError;

pub type Q = Rational64;

/// Local factor rho_p(n) for n >= 1, for the field of discriminant d0.
pub fn rho_p(d0: i64, n: i64, p: i64) -> i64 {
    debug_assert!(n >= 1);
    let v = val_i64(n, p).unwrap();
    match kronecker(d0, p) {
        1 => v + 1,
        -1 => 1 - (v % 2),
        _ => 1,
    }
}

/// rho^(M)(x): product of rho_p over p not dividing M, with the conventions
/// rho^(M)(0) = rho(0) = h/2 and rho^(M)(x) = 0 for x not a nonnegative
/// integer. Pass M = 1 for the plain rho.
pub fn rho_m(group0: &ClassGroup, x: Q, m_excl: i64) -> Q {
    debug_assert!(group0.disc.is_fundamental());
    if x.is_zero() {
        return Q::new(group0.h() as i64, 2);
    }
    if !x.is_integer() || x < Q::zero() {
        return Q::zero();
    }
    let n = x.to_integer();
    let d0 = group0.disc.value();
    let mut count = 1i64;
    let mut rest = n;
    let mut p = 2i64;
    while rest > 1 {
        if rest % p == 0 {
            if m_excl % p != 0 {
                count *= rho_p(d0, n, p);
                if count == 0 {
                    return Q::zero();
                }
            }
            while rest % p == 0 {
                rest /= p;
            }
        }
        p += 1;
    }
    Q::from_integer(count)
}

pub fn rho(group0: &ClassGroup, x: Q) -> Q {
    rho_m(group0, x, 1)
}

/// Class-restricted count r_A(n): ideals of norm n in the class A, with
/// r_A(0) = 1/2. A form class and its opposite represent the same integers,
/// so the count is insensitive to the orientation of the correspondence.
pub fn r_class(group: &ClassGroup, class: &QuadClass, x: Q) -> Q {
    if x.is_zero() {
        return Q::new(1, 2);
    }
    if !x.is_integer() || x < Q::zero() {
        return Q::zero();
    }
    let n = x.to_integer();
    debug_assert!(group.index_of(class).is_some());
    let reps = class.representations(n);
    // Units contribute +/-1; D < -4 throughout (admissible D are < -4).
    Q::new(reps.len() as i64, 2)
}

/// Brute-force ideal count of norm n in the maximal order: every integral
/// ideal is g * [a, (b + sqrt(D))/2] with g^2 * a = n, b^2 = D mod 4a.
pub fn rho_oracle(d0: i64, n: i64) -> i64 {
    debug_assert!(n >= 1);
    let mut count = 0i64;
    let mut g = 1i64;
    while g * g <= n {
        if n % (g * g) == 0 {
            let a = n / (g * g);
            for b in 0..(2 * a) {
                if (b * b - d0).rem_euclid(4 * a) == 0 {
                    count += 1;
                }
            }
        }
        g += 1;
    }
    count
}

/// S(D, n): finite primes where the local character of Q(sqrt(D)) is -1 at n.
pub fn s_set(d: i64, n: i64) -> Result<Vec<i64>, QuadError> {
    if n == 0 {
        return Err(QuadError::ZeroArgument("s_set"));
    }
    let mut out = Vec::new();
    let mut candidates = vec![2i64];
    let mut m = (n.abs() as i128 * d.abs() as i128) as i64;
    // only p | 2nD can carry a nontrivial symbol
    let mut p = 2i64;
    while m > 1 {
        if m % p == 0 {
            if !candidates.contains(&p) {
                candidates.push(p);
            }
            while m % p == 0 {
                m /= p;
            }
        }
        p += 1;
    }
    for p in candidates {
        if hilbert_symbol(n, d, p) == -1 {
            out.push(p);
        }
    }
    out.sort_unstable();
    Ok(out)
}

/// Diff(-n/(D0 t), N_1) = S(D0, -n a) for the CM-pair data (a = ideal norm).
pub fn diff_set(d0: i64, _t: i64, a: i64, n: i64) -> Result<Vec<i64>, QuadError> {
    s_set(d0, -n * a)
}

/// Genus vector of a class: the Legendre symbols (v|p) over odd primes p | D0,
/// evaluated at any represented value v coprime to 2 D0.
pub fn genus_of(group0: &ClassGroup, class: &QuadClass) -> Result<Vec<i32>, QuadError> {
    let d0 = group0.disc.value();
    if !group0.disc.is_fundamental() {
        return Err(QuadError::NotFundamental(d0));
    }
    let v = represented_value_coprime(class, 2 * d0);
    let mut out = Vec::new();
    for p in prime_divisors(-d0) {
        out.push(kronecker(v, p));
    }
    Ok(out)
}

/// Smallest represented value coprime to `m` (scans small vectors).
pub fn represented_value_coprime(class: &QuadClass, m: i64) -> i64 {
    use num_integer::Integer;
    for bound in 1i64..200 {
        for x in -bound..=bound {
            for y in -bound..=bound {
                if x.abs().max(y.abs()) != bound && bound > 1 {
                    continue;
                }
                let v = class.eval(x, y);
                if v > 0 && v.gcd(&m) == 1 {
                    return v;
                }
            }
        }
    }
    unreachable!("primitive form represents values coprime to any modulus")
}

pub fn prime_divisors(mut n: i64) -> Vec<i64> {
    n = n.abs();
    let mut out = Vec::new();
    let mut p = 2i64;
    while n > 1 {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    out
}

/// Does the genus of `class` represent `c` at every place over D0?
///
/// Tested with Hilbert symbols, so c need not be coprime to D0: the genus
/// represents c iff (c * v, D0)_p = 1 for all p | D0, where v is a value of
/// the class coprime to 2 D0.
pub fn genus_represents(group0: &ClassGroup, class: &QuadClass, c: i64) -> bool {
    debug_assert!(c != 0);
    let d0 = group0.disc.value();
    let v = represented_value_coprime(class, 2 * d0);
    for p in prime_divisors(-d0) {
        let cv = c as i128 * v as i128;
        debug_assert!(cv.unsigned_abs() < i64::MAX as u128);
        if hilbert_symbol(cv as i64, d0, p) != 1 {
            return false;
        }
    }
    true
}

/// rho_g(m; c): ideals of norm m whose class lies in a genus representing c.
/// Requires gcd(c, D0) = 1; the Hilbert-symbol variant used internally by the
/// resultant formulas has no such restriction.
pub fn rho_genus(group0: &ClassGroup, m: Q, c: i64) -> Result<Q, QuadError> {
    use num_integer::Integer;
    let d0 = group0.disc.value();
    if c == 0 || c.gcd(&d0) != 1 {
        return Err(QuadError::GenusArgumentNotCoprime(c, d0));
    }
    Ok(rho_genus_hilbert(group0, m, c))
}

/// Same as `rho_genus` but accepts any nonzero c (local representability via
/// Hilbert symbols at each p | D0).
pub fn rho_genus_hilbert(group0: &ClassGroup, m: Q, c: i64) -> Q {
    let mut total = Q::zero();
    for class in &group0.classes {
        if genus_represents(group0, class, c) {
            total += r_class(group0, class, m);
        }
    }
    total
}
