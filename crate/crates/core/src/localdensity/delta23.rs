//! The 2-adic and 3-adic local contributions: per-level tables
//! delta_2(m, alpha; d2) for d2 | 8 and delta_3(m, alpha; d3) for d3 | 3
//! (split and inert shapes), and their sums over d | s, which the summed
//! counting identities re-express through rho_p and lattice membership.
//!
//! alpha is carried as the coordinate pair of sqrt(D) * alpha: two 2- (or 3-)
//! adic rationals, congruent mod 2 in the 2-adic case. Valuations transfer
//! unchanged because sqrt(D) is a local unit at 2 and at any split 3.

use num_rational::Rational64;
use num_traits::{One, Signed, Zero};

pub type Q = Rational64;

/// 2-adic (or 3-adic) data of one alpha: the coordinates of sqrt(D) alpha.
#[derive(Clone, Copy, Debug)]
pub struct AlphaCoords {
    pub x1: Q,
    pub x2: Q,
}

impl AlphaCoords {
    pub fn min_val(&self, p: i64) -> i64 {
        val(&self.x1, p).min(val(&self.x2, p))
    }

    /// Largest k with sqrt(D) alpha / 2^k still in the 2-adic lattice
    /// {x1 = x2 mod 2}. Divisibility "2^k | alpha" in the tables is meant in
    /// this lattice sense, not coordinatewise.
    pub fn lat_val2(&self) -> i64 {
        let mut k = 0i64;
        while self.in_lattice_scaled(1 << (k + 1), 2) {
            k += 1;
        }
        if self.x1.is_zero() && self.x2.is_zero() {
            return i64::MAX / 4;
        }
        k
    }

    /// sqrt(D) alpha / b lies in the local lattice {x1 = x2 mod 2} (p = 2)
    /// or Z_p^2 / Z_p[sqrt(D0)] (p = 3).
    pub fn in_lattice_scaled(&self, b: i64, p: i64) -> bool {
        let y1 = self.x1 / Q::from_integer(b);
        let y2 = self.x2 / Q::from_integer(b);
        if val(&y1, p) < 0 || val(&y2, p) < 0 {
            return false;
        }
        if p == 2 {
            // congruent mod 2
            let diff = y1 - y2;
            val(&diff, 2) >= 1
        } else {
            true
        }
    }
}

pub fn val(x: &Q, p: i64) -> i64 {
    if x.is_zero() {
        return i64::MAX / 4;
    }
    crate::arith::valuation_rat(
        &num_bigint::BigInt::from(*x.numer()),
        &num_bigint::BigInt::from(*x.denom()),
        &num_bigint::BigInt::from(p),
    )
    .unwrap()
}

/// x mod 2^k (or 3^k) for a p-integral rational, as an i64 residue.
pub fn residue(x: &Q, modulus: i64, p: i64) -> i64 {
    debug_assert!(val(x, p) >= 0);
    let m = modulus;
    let num = x.numer().rem_euclid(m);
    let mut den = x.denom().rem_euclid(m);
    // invert den mod m (den coprime to p, m a p-power)
    let mut inv = 0i64;
    for cand in 0..m {
        if (den * cand).rem_euclid(m) == 1 {
            inv = cand;
            break;
        }
    }
    debug_assert!(inv != 0 || m == 1);
    den = inv;
    (num * den).rem_euclid(m)
}

fn o2(m: &Q) -> i64 {
    val(m, 2)
}

/// Local factor rho_2 extended to rationals: 2 always splits here, so
/// rho_2(x) = o_2(x) + 1 for 2-integral x, 1 at x = 0, else 0.
pub fn rho2_ext(x: &Q) -> Q {
    if x.is_zero() {
        return Q::one();
    }
    let v = val(x, 2);
    if v < 0 {
        Q::zero()
    } else {
        Q::from_integer(v + 1)
    }
}

/// rho_3 extended to rationals, for the field with (D|3) = eps3.
pub fn rho3_ext(x: &Q, eps3: i32) -> Q {
    if x.is_zero() {
        return Q::one();
    }
    let v = val(x, 3);
    if v < 0 {
        return Q::zero();
    }
    match eps3 {
        1 => Q::from_integer(v + 1),
        -1 => Q::from_integer(1 - (v % 2)),
        _ => unreachable!("3 never divides an admissible D"),
    }
}

/// delta_2(m, alpha; d2) per the explicit table, d2 | 8.
pub fn delta2_table(m: &Q, alpha: &AlphaCoords, d2: i64) -> Q {
    let mt = Q::one() - m; // m-tilde
    if !m.is_zero() && o2(m) < 0 {
        return Q::zero();
    }
    let om = if m.is_zero() { i64::MAX / 4 } else { o2(m) };
    let av = alpha.lat_val2();
    let exact = |k: i64| av == k;
    let divis = |k: i64| av >= k;
    let res = |x: &Q, md: i64| residue(x, md, 2);
    match d2 {
        1 => {
            if m.is_zero() {
                Q::one()
            } else if om == 0 && divis(1) {
                Q::one()
            } else if om >= 2 {
                Q::from_integer(om - 1)
            } else {
                Q::zero()
            }
        }
        2 => {
            if m.is_zero() {
                return Q::one();
            }
            if om == 0 {
                if divis(2) {
                    return Q::one();
                }
                if exact(1) {
                    return match res(m, 8) {
                        5 => Q::one(),
                        1 => -Q::one(),
                        _ => Q::zero(),
                    };
                }
                return Q::zero();
            }
            if om == 2 {
                Q::one()
            } else if om >= 3 {
                Q::from_integer(om - 5)
            } else {
                Q::zero()
            }
        }
        4 => {
            let base = if m.is_zero() {
                Q::one()
            } else if om == 0 {
                if divis(3) {
                    Q::one()
                } else if exact(2) {
                    match res(m, 32) {
                        17 => Q::one(),
                        1 => -Q::one(),
                        _ => Q::zero(),
                    }
                } else if res(m, 8) == 5 && o2(&mt) >= 2 {
                    match res(&mt, 16) {
                        4 => -Q::one(),
                        12 => Q::one(),
                        _ => Q::zero(),
                    }
                } else {
                    Q::zero()
                }
            } else if om == 2 {
                match res(m, 16) {
                    4 => -Q::one(),
                    12 => Q::one(),
                    _ => Q::zero(),
                }
            } else if om == 4 {
                Q::one()
            } else if om >= 5 {
                Q::from_integer(om - 7)
            } else {
                Q::zero()
            };
            base * Q::from_integer(2)
        }
        8 => {
            let base = if m.is_zero() {
                Q::one()
            } else if om == 0 {
                if divis(4) {
                    Q::one()
                } else if exact(3) {
                    match res(m, 128) {
                        65 => Q::one(),
                        1 => -Q::one(),
                        _ => Q::zero(),
                    }
                } else if exact(2) {
                    match res(m, 64) {
                        17 => Q::one(),
                        49 => -Q::one(),
                        _ => Q::zero(),
                    }
                } else if res(m, 8) == 5 && o2(&mt) >= 2 {
                    // sign orientation fixed by the summed counting identity
                    match res(&mt, 32) {
                        28 => Q::one(),
                        12 => -Q::one(),
                        _ => Q::zero(),
                    }
                } else {
                    Q::zero()
                }
            } else if om == 2 {
                // sign orientation fixed by the summed counting identity
                // (the per-level print has the opposite, inconsistent sign)
                match res(m, 32) {
                    12 => -Q::one(),
                    28 => Q::one(),
                    _ => Q::zero(),
                }
            } else if om == 4 {
                match res(m, 64) {
                    16 => -Q::one(),
                    48 => Q::one(),
                    _ => Q::zero(),
                }
            } else if om == 6 {
                Q::one()
            } else if om >= 7 {
                Q::from_integer(om - 9)
            } else {
                Q::zero()
            };
            base * Q::from_integer(4)
        }
        _ => panic!("d2 must divide 8"),
    }
}

/// Counting side of the 2-adic identity:
/// s2 * sum_{r2 | s2, m mtilde/(4 r2^2) = 3 mod s2/r2} sum_{AB = 2 r2}
///     rho_2(m/A^2) 1_{lattice}(sqrt(D) alpha / B).
pub fn delta2_sum(s2: i64, m: &Q, alpha: &AlphaCoords) -> Q {
    debug_assert!(8 % s2 == 0);
    let mt = Q::one() - m;
    let mut total = Q::zero();
    let mut r2 = 1;
    while r2 <= s2 {
        let modulus = s2 / r2;
        let v = m * &mt / Q::from_integer(4 * r2 * r2);
        let pass = if modulus == 1 {
            true
        } else {
            let diff = v - Q::from_integer(3);
            diff.is_zero() || val(&diff, 2) >= val(&Q::from_integer(modulus), 2)
        };
        if pass {
            let mut ab = 1;
            while ab <= 2 * r2 {
                if (2 * r2) % ab == 0 {
                    let a = ab;
                    let b = 2 * r2 / ab;
                    let rho = rho2_ext(&(m / Q::from_integer(a * a)));
                    if !rho.is_zero() && alpha.in_lattice_scaled(b, 2) {
                        total += rho;
                    }
                }
                ab *= 2;
            }
        }
        r2 *= 2;
    }
    total * Q::from_integer(s2)
}

/// Sum of the delta_2 table over d2 | s2 (left side of the identity).
pub fn delta2_table_sum(s2: i64, m: &Q, alpha: &AlphaCoords) -> Q {
    let mut total = Q::zero();
    let mut d2 = 1;
    while d2 <= s2 {
        total += delta2_table(m, alpha, d2);
        d2 *= 2;
    }
    total
}

/// delta_3(m, alpha; 3) in the split case ((D|3) = 1).
pub fn delta3_table_split(m: &Q, alpha: &AlphaCoords) -> Q {
    let mt = Q::one() - m;
    let prod = m * &mt;
    if !m.is_zero() && val(m, 3) < 0 {
        return Q::zero();
    }
    if m.is_zero() || mt.is_zero() {
        return Q::from_integer(2);
    }
    let om = val(m, 3);
    let oprod = val(&prod, 3);
    if oprod == 0 {
        Q::from_integer(2)
    } else if om == oprod && om >= 1 {
        Q::from_integer(2 * (om - 2))
    } else if oprod > 0 && om == 0 {
        // 3 1_3(alpha/3) - 1
        if alpha.min_val(3) >= 1 {
            Q::from_integer(2)
        } else {
            -Q::one()
        }
    } else {
        Q::zero()
    }
}

/// delta_3(m, alpha; 3) in the inert case ((D|3) = -1).
pub fn delta3_table_inert(m: &Q) -> Q {
    let mt = Q::one() - m;
    let prod = m * &mt;
    if !m.is_zero() && val(m, 3) < 0 {
        return Q::zero();
    }
    if m.is_zero() || mt.is_zero() {
        return Q::from_integer(2);
    }
    let oprod = val(&prod, 3);
    if oprod == 0 {
        -Q::one()
    } else if oprod >= 1 && oprod % 2 == 0 {
        Q::from_integer(2)
    } else {
        Q::zero()
    }
}

/// delta'_3(m, alpha; 3), inert case, for 2 nmid o_3(m) >= 1 and m != 0.
pub fn delta3_prime_table_inert(m: &Q) -> Q {
    if m.is_zero() || val(m, 3) < 0 {
        return Q::zero();
    }
    let om = val(m, 3);
    if om >= 1 && om % 2 == 1 {
        Q::from_integer(om) - Q::new(1, 2)
    } else {
        Q::zero()
    }
}

/// Sum over d3 | s3 of delta_3(m, alpha; d3). The d3 = 1 term is the plain
/// local factor rho_3.
pub fn delta3_sum(s3: i64, eps3: i32, m: &Q, alpha: &AlphaCoords) -> Q {
    debug_assert!(s3 == 1 || s3 == 3);
    let mut total = rho3_ext(m, eps3);
    // inert with odd valuation: the d3 = 1 value vanishes (it sits in the
    // derivative); rho3_ext already returns 0 there.
    if s3 == 3 {
        total += match eps3 {
            1 => delta3_table_split(m, alpha),
            -1 => delta3_table_inert(m),
            _ => unreachable!(),
        };
    }
    total
}

/// Sum over d3 | s3 of delta'_3(m, alpha; d3) = s3 * rho'_{3 s3}(m); only the
/// inert case contributes.
pub fn delta3_sum_prime(s3: i64, eps3: i32, m: &Q) -> Q {
    debug_assert!(s3 == 1 || s3 == 3);
    if eps3 != -1 || m.is_zero() || val(m, 3) < 0 {
        return Q::zero();
    }
    let om = val(m, 3);
    if om < 1 || om % 2 == 0 {
        return Q::zero();
    }
    // d3 = 1 contributes (o+1)/2; d3 = 3 contributes o - 1/2
    let mut total = Q::new(om + 1, 2);
    if s3 == 3 {
        total += Q::from_integer(om) - Q::new(1, 2);
    }
    total
}

/// rho'_{3 s3}(m) = (o_3(m / s3) + 1)/2 under the inert/odd-valuation gate.
pub fn rho_prime_3s3(s3: i64, eps3: i32, m: &Q) -> Q {
    let total = delta3_sum_prime(s3, eps3, m);
    total / Q::from_integer(s3)
}

/// Counting side of the 3-adic identity (split case):
/// s3 sum_{s3' | r3 | s3, m mtilde / r3^2 = 1 mod s3/r3} sum_{AB = r3}
///     rho_3(m/A^2) 1_{lattice}(sqrt(D) alpha / B).
pub fn delta3_count_split(s3: i64, m: &Q, alpha: &AlphaCoords) -> Q {
    let mt = Q::one() - m;
    let mut total = Q::zero();
    let mut r3 = 1;
    while r3 <= s3 {
        let modulus = s3 / r3;
        let v = m * &mt / Q::from_integer(r3 * r3);
        let pass = if modulus == 1 {
            true
        } else {
            let diff = v - Q::one();
            diff.is_zero() || val(&diff, 3) >= 1
        };
        if pass {
            let mut a = 1;
            while a <= r3 {
                if r3 % a == 0 {
                    let b = r3 / a;
                    let rho = rho3_ext(&(m / Q::from_integer(a * a)), 1);
                    if !rho.is_zero() && alpha.in_lattice_scaled(b, 3) {
                        total += rho;
                    }
                }
                a *= 3;
            }
        }
        r3 *= 3;
    }
    total * Q::from_integer(s3)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Q {
        Q::from_integer(n)
    }

    /// Consistent sweep data: alpha coordinates in the 2-adic lattice
    /// {x1 = x2 mod 2} with mtilde = w * x1 * x2 and m = 1 - mtilde.
    fn sweep_2adic(mut f: impl FnMut(&Q, &AlphaCoords)) {
        for v1 in 0..=5i64 {
            for u1 in (1..32i64).step_by(2) {
                for v2 in v1..=5i64 {
                    for u2 in (1..32i64).step_by(2) {
                        let x1 = q(u1 * (1 << v1));
                        let x2 = q(u2 * (1 << v2));
                        if (x1 - x2).numer() % 2 != 0 {
                            continue;
                        }
                        for w_step in 0..4i64 {
                            let w = q(1 + 8 * w_step);
                            let mt = w * x1 * x2;
                            let m = Q::one() - mt;
                            let alpha = AlphaCoords { x1, x2 };
                            f(&m, &alpha);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn delta2_spec_values() {
        // s2 = 1, o2(m) = 0, 2 | alpha (lattice divisibility) -> 1
        let alpha = AlphaCoords { x1: q(2), x2: q(6) };
        let m = Q::one() - q(12); // mtilde = 12, m odd
        assert_eq!(delta2_table(&m, &alpha, 1), Q::one());
        // componentwise-even but not lattice-divisible alpha does not count
        let alpha_bad = AlphaCoords { x1: q(2), x2: q(4) };
        let m_bad = Q::one() - q(8);
        assert_eq!(delta2_table(&m_bad, &alpha_bad, 1), Q::zero());
        // s2 = 2, 4 | alpha (m = 1 mod 16) -> table sum 2
        let alpha4 = AlphaCoords { x1: q(4), x2: q(4) };
        let m4 = Q::one() - q(16); // m = -15 = 1 mod 16
        assert_eq!(delta2_table_sum(2, &m4, &alpha4), q(2));
        // s2 = 2, o2(m) = 2 -> sum 2
        let alpha_odd = AlphaCoords { x1: q(1), x2: q(5) };
        let m_v2 = q(4) * q(-LOOKUP_ODD);
        let mt = Q::one() - m_v2;
        // need consistency mtilde = unit * Nm: mtilde odd here
        assert_eq!(val(&mt, 2), 0);
        assert_eq!(delta2_table_sum(2, &m_v2, &alpha_odd), q(2));
    }

    const LOOKUP_ODD: i64 = 3;

    #[test]
    fn delta2_identity_exhaustive() {
        // the acceptance-grade sweep lives in tests/acceptance.rs; this is a
        // smaller smoke version
        let mut cases = 0u64;
        sweep_2adic(|m, alpha| {
            for s2 in [1i64, 2, 4, 8] {
                let lhs = delta2_table_sum(s2, m, alpha);
                let rhs = delta2_sum(s2, m, alpha);
                assert_eq!(lhs, rhs, "s2={} m={} alpha={:?}", s2, m, alpha);
                cases += 1;
            }
        });
        assert!(cases > 10_000);
    }

    #[test]
    fn delta3_split_identity() {
        // consistent split data: mtilde = w x1 x2, w = 1 mod 3
        let mut cases = 0u64;
        for v1 in 0..=3i64 {
            for u1 in [1i64, 2, 4, 5, 7, 8] {
                for v2 in 0..=3i64 {
                    for u2 in [1i64, 2, 4, 5] {
                        let x1 = q(u1 * 3i64.pow(v1 as u32));
                        let x2 = q(u2 * 3i64.pow(v2 as u32));
                        for w_step in 0..3i64 {
                            let w = q(1 + 3 * w_step);
                            let mt = w * x1 * x2;
                            let m = Q::one() - mt;
                            let alpha = AlphaCoords { x1, x2 };
                            for s3 in [1i64, 3] {
                                let lhs = delta3_sum(s3, 1, &m, &alpha);
                                let rhs = delta3_count_split(s3, &m, &alpha);
                                assert_eq!(lhs, rhs, "s3={} m={} a={:?}", s3, m, alpha);
                                cases += 1;
                            }
                        }
                    }
                }
            }
        }
        assert!(cases > 500);
    }

    #[test]
    fn delta3_inert_identity() {
        // inert data: Nm(alpha) = x1^2 - D0 x2^2 with (D0|3) = -1; its
        // 3-valuation is always even.
        for x1 in -8i64..=8 {
            for x2 in -8i64..=8 {
                let nm = q(x1 * x1 + 31 * x2 * x2); // D0 = -31: (D|3) = -1... check: -31 = 2 mod 3, (2|3) = -1
                if nm.is_zero() {
                    continue;
                }
                for w_step in 0..3i64 {
                    let w = q(1 + 3 * w_step);
                    let mt = w * nm;
                    let m = Q::one() - mt;
                    let alpha = AlphaCoords { x1: q(x1), x2: q(x2) };
                    for s3 in [1i64, 3] {
                        let lhs = delta3_sum(s3, -1, &m, &alpha);
                        let rhs =
                            q(s3) * rho3_ext(&(m * (Q::one() - m) / q(s3 * s3)), -1);
                        assert_eq!(lhs, rhs, "s3={} m={}", s3, m);
                        // derivative identity
                        let lhsp = delta3_sum_prime(s3, -1, &m);
                        let om = if m.is_zero() { 0 } else { val(&m, 3) };
                        let rhsp = if !m.is_zero() && om >= 1 && om % 2 == 1 {
                            let oms3 = val(&(m / q(s3)), 3);
                            q(s3) * Q::new(oms3 + 1, 2)
                        } else {
                            Q::zero()
                        };
                        assert_eq!(lhsp, rhsp, "s3={} m={}", s3, m);
                    }
                }
            }
        }
    }

    #[test]
    fn delta3_spec_point_values() {
        // (D|3) = -1, s3 = 1, o3(m) = 1: derivative sum = (o+1)/2 = 1
        let m = q(3) * q(2); // o3 = 1
        assert_eq!(rho_prime_3s3(1, -1, &m), Q::one());
        // split, o3(m(1-m)) = 0: delta_3(m, alpha; 3) = 2
        let alpha = AlphaCoords { x1: q(1), x2: q(1) };
        let m_unit = q(5); // m(1-m) = -20, o3 = 0
        assert_eq!(delta3_table_split(&m_unit, &alpha), q(2));
    }
}
