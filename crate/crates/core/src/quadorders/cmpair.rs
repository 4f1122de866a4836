//! Construction of the coupled CM-point representatives: ideals
//! a_i = [a_i, t_i (b + sqrt(D0))/2] with prime norms a_i = t_i mod 48,
//! a shared b = 1 mod 48, and the composed ideal
//! atilde_0 = [a, (-btilde + sqrt(D0))/2] of norm a = a1 a2.

use num_integer::Integer;
use num_rational::Rational64;

use crate::arith::kronecker;

use super::forms::{crt2, ClassGroup, Discriminant, QuadClass};
use super::QuadError;

type Q = Rational64;

/// Concrete ideal [a, (b + sqrt(D0))/2]-style data. For the composed ideal
/// the generator uses -tilde_b; `b` keeps the shared CM-point datum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealData {
    /// Norm of the ideal.
    pub a: i64,
    /// Shared square root of D0 (mod 4 a1 a2), b = 1 mod 48.
    pub b: i64,
    pub d0: i64,
    /// Solution of tilde_b = b mod 2 a1, tilde_b = -b mod 2 a2,
    /// tilde_b = b mod 4D.
    pub tilde_b: i64,
}

/// Small-CM representative pair plus the composed ideal data.
#[derive(Clone, Debug)]
pub struct CmPair {
    pub d1: Discriminant,
    pub d2: Discriminant,
    pub a1: i64,
    pub a2: i64,
    pub b: i64,
    pub tilde_b: i64,
}

impl CmPair {
    pub fn d0(&self) -> i64 {
        self.d1.fundamental_part()
    }

    pub fn norm(&self) -> i64 {
        self.a1 * self.a2
    }

    pub fn ideal1(&self) -> IdealData {
        IdealData {
            a: self.a1,
            b: self.b,
            d0: self.d0(),
            tilde_b: self.tilde_b,
        }
    }

    pub fn ideal2(&self) -> IdealData {
        IdealData {
            a: self.a2,
            b: self.b,
            d0: self.d0(),
            tilde_b: self.tilde_b,
        }
    }

    pub fn composed(&self) -> IdealData {
        IdealData {
            a: self.norm(),
            b: self.b,
            d0: self.d0(),
            tilde_b: self.tilde_b,
        }
    }

    /// Class of atilde_0 in Cl(D0).
    pub fn composed_class(&self, group0: &ClassGroup) -> QuadClass {
        group0.class_of_ideal(self.norm(), -self.tilde_b)
    }
}

/// Search bound for the prime norms a_i.
const NORM_SEARCH_BOUND: i64 = 1_000_000;

/// Find representatives per the coupled construction. `class_i` lives in the
/// class group of `d_i`.
pub fn make_small_cm_pair(
    group1: &ClassGroup,
    class1: &QuadClass,
    group2: &ClassGroup,
    class2: &QuadClass,
) -> Result<CmPair, QuadError> {
    let d1 = group1.disc;
    let d2 = group2.disc;
    if !d1.yz_admissible() || !d2.yz_admissible() {
        return Err(QuadError::NotAdmissible(d1.value().min(d2.value())));
    }
    if d1.fundamental_part() != d2.fundamental_part() {
        return Err(QuadError::DifferentField(d1.value(), d2.value()));
    }
    let _d0 = d1.fundamental_part();
    let big_d = d1.value() / d1.fundamental_part() * d2.value(); // t1^2 * D0 * t2^2 = lcm
    let (a1, r1) = find_prime_norm(group1, class1, 0)?;
    let (a2, r2) = find_prime_norm(group2, class2, a1)?;

    // b = 1 mod 48, b = r_i mod a_i (a_i odd primes > 48, pairwise coprime).
    let b48 = crt2(1, 48, r1, a1).expect("coprime moduli");
    let b = crt2(b48, 48 * a1, r2, a2).expect("coprime moduli");

    // tilde_b: = b mod 2 a1, = -b mod 2 a2, = b mod 4D.
    let tb1 = crt2(b, 2 * a1, -b, 2 * a2).ok_or(QuadError::SearchFailed)?;
    let tilde_b = crt2(tb1, 2 * a1 * a2, b, 4 * big_d.abs()).ok_or(QuadError::SearchFailed)?;

    let pair = CmPair {
        d1,
        d2,
        a1,
        a2,
        b,
        tilde_b,
    };
    debug_assert!(check_pair(&pair, class1, class2, group1, group2));
    Ok(pair)
}

fn check_pair(
    pair: &CmPair,
    class1: &QuadClass,
    class2: &QuadClass,
    group1: &ClassGroup,
    group2: &ClassGroup,
) -> bool {
    let d0 = pair.d0();
    let d = pair.d1.value() / d0 * pair.d2.value();
    let (a1, a2, b, tb) = (pair.a1, pair.a2, pair.b, pair.tilde_b);
    let a = a1 * a2;
    // a_i are primes, so gcd(a_i, 6bD) = 1 means a_i divides none of 6, b, D
    let coprime = a1.gcd(&a2) == 1
        && 6 % a1 != 0
        && b % a1 != 0
        && d % a1 != 0
        && 6 % a2 != 0
        && b % a2 != 0
        && d % a2 != 0;
    let roots = (b as i128 * b as i128 - d0 as i128).rem_euclid(4 * a1 as i128) == 0
        && (b as i128 * b as i128 - d0 as i128).rem_euclid(4 * a2 as i128) == 0;
    let congr48 = (a1 - pair.d1.conductor()) % 48 == 0
        && (a2 - pair.d2.conductor()) % 48 == 0
        && (b - 1) % 48 == 0;
    let tb_ok = (tb - b).rem_euclid(2 * a1) == 0
        && (tb + b).rem_euclid(2 * a2) == 0
        && (tb - b).rem_euclid(4 * d.abs()) == 0
        && (tb as i128 * tb as i128 - d0 as i128).rem_euclid(4 * a as i128) == 0;
    let t1 = pair.d1.conductor();
    let t2 = pair.d2.conductor();
    let class_ok = group1.class_of_ideal(a1, mul_mod(t1, b, 2 * a1)) == *class1
        && group2.class_of_ideal(a2, mul_mod(t2, b, 2 * a2)) == *class2;
    coprime && roots && congr48 && tb_ok && class_ok
}

fn mul_mod(x: i64, y: i64, m: i64) -> i64 {
    ((x as i128 * y as i128).rem_euclid(m as i128)) as i64
}

#[cfg_attr(not(test), allow(dead_code))]
fn gcd_abs(a: i64, b: i64) -> i64 {
    a.abs().gcd(&b.abs())
}

/// Smallest prime q = t mod 48, (D|q) = 1, q != avoid, such that the ideal
/// [q, t(b+sqrt(D0))/2] (for a suitable root b of D0 mod q) lies in `class`.
/// Returns (q, root mod q).
fn find_prime_norm(
    group: &ClassGroup,
    class: &QuadClass,
    avoid: i64,
) -> Result<(i64, i64), QuadError> {
    let d = group.disc.value();
    let d0 = group.disc.fundamental_part();
    let t = group.disc.conductor();
    let mut q = t;
    while q <= NORM_SEARCH_BOUND {
        q += 48;
        if q == avoid || !crate::arith::is_prime(&num_bigint::BigInt::from(q)) {
            continue;
        }
        if kronecker(d, q) != 1 {
            continue;
        }
        let root = match crate::arith::sqrt_mod_prime(d0, q) {
            Some(r) => r,
            None => continue,
        };
        for r in [root, q - root] {
            // b = r mod q and b odd pins b mod 2q, hence the form class of
            // [q, t(b + sqrt(D0))/2] in Cl(D).
            let b2q = crt2(r, q, 1, 2).expect("coprime moduli");
            let bq = ((t as i128 * b2q as i128).rem_euclid(2 * q as i128)) as i64;
            debug_assert_eq!(
                (bq as i128 * bq as i128 - d as i128).rem_euclid(4 * q as i128),
                0
            );
            if group.class_of_ideal(q, bq) == *class {
                return Ok((q, r));
            }
        }
    }
    Err(QuadError::SearchFailed)
}

/// All elements of the ideal [a, (-tilde_b + sqrt(D0))/2] with norm n,
/// as coordinate pairs (x1, x2) meaning x1 + x2*sqrt(D0), both in (1/2)Z.
/// Both signs are included; the zero element is returned only for n = 0.
pub fn enumerate_elements(ideal: &IdealData, n: i64) -> Vec<(Q, Q)> {
    let mut out = Vec::new();
    if n < 0 {
        return out;
    }
    if n == 0 {
        out.push((Q::from_integer(0), Q::from_integer(0)));
        return out;
    }
    let a = ideal.a;
    if n % a != 0 {
        return out;
    }
    // reduce the generator mod 2a; the lattice is unchanged
    let br = ideal.tilde_b.rem_euclid(2 * a);
    let c = ((br as i128 * br as i128 - ideal.d0 as i128) / (4 * a as i128)) as i64;
    let form = QuadClass {
        a,
        b: -br,
        c,
    };
    for (x, y) in form.representations(n / a) {
        // element a*x + y*(-br + sqrt(D0))/2
        let x1 = Q::new(2 * a * x - y * br, 2);
        let x2 = Q::new(y, 2);
        debug_assert_eq!(
            x1 * x1 - Q::from_integer(ideal.d0) * x2 * x2,
            Q::from_integer(n)
        );
        out.push((x1, x2));
    }
    out
}
