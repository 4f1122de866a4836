//! Exact integer utilities: factorization, Kronecker and Hilbert symbols,
//! p-adic valuations, divisor counting.
//!
//! Everything here is plain multiprecision integer arithmetic; half-integer
//! exponents (which show up in ramified valuations) are stored doubled so the
//! bookkeeping stays exact.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// A prime power p^e.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimePower {
    pub p: BigInt,
    pub e: u32,
}

/// Signed factored integer with exponents in (1/2)Z.
///
/// Exponents are stored doubled (`twice_exp`), so `p -> 3` means p^(3/2).
/// No entry maps to zero.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct FactorizationMap {
    pub sign: i8,
    twice_exp: BTreeMap<BigInt, i64>,
}

impl FactorizationMap {
    pub fn one() -> Self {
        FactorizationMap {
            sign: 1,
            twice_exp: BTreeMap::new(),
        }
    }

    /// Build from integer exponents.
    pub fn from_integer_exponents(sign: i8, entries: &[(i64, i64)]) -> Self {
        let mut m = FactorizationMap::one();
        m.sign = sign;
        for &(p, e) in entries {
            m.add_twice(BigInt::from(p), 2 * e);
        }
        m
    }

    /// Add `t/2` to the exponent of `p`, dropping the entry if it cancels.
    pub fn add_twice(&mut self, p: BigInt, t: i64) {
        let cur = self.twice_exp.entry(p.clone()).or_insert(0);
        *cur += t;
        if *cur == 0 {
            self.twice_exp.remove(&p);
        }
    }

    /// Doubled exponent of `p` (0 if absent).
    pub fn twice_exponent(&self, p: &BigInt) -> i64 {
        self.twice_exp.get(p).copied().unwrap_or(0)
    }

    pub fn primes(&self) -> impl Iterator<Item = &BigInt> {
        self.twice_exp.keys()
    }

    pub fn entries_twice(&self) -> impl Iterator<Item = (&BigInt, i64)> {
        self.twice_exp.iter().map(|(p, &t)| (p, t))
    }

    pub fn is_trivial(&self) -> bool {
        self.twice_exp.is_empty()
    }

    /// True when every exponent is a nonnegative integer.
    pub fn is_integral(&self) -> bool {
        self.twice_exp.values().all(|&t| t >= 0 && t % 2 == 0)
    }

    /// Reassemble the value; requires integral exponents.
    pub fn to_bigint(&self) -> BigInt {
        assert!(self.is_integral(), "half-integer exponents do not reassemble");
        let mut n = BigInt::from(self.sign);
        for (p, &t) in &self.twice_exp {
            n *= p.pow((t / 2) as u32);
        }
        n
    }

    /// Pointwise sum of exponents (product of the underlying values).
    pub fn mul(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.sign *= other.sign;
        for (p, &t) in &other.twice_exp {
            out.add_twice(p.clone(), t);
        }
        out
    }

    /// Entries with the sign forgotten; what the verifier compares.
    pub fn abs(&self) -> Self {
        FactorizationMap {
            sign: 1,
            twice_exp: self.twice_exp.clone(),
        }
    }
}

impl fmt::Display for FactorizationMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.sign < 0 {
            write!(f, "-")?;
        }
        if self.twice_exp.is_empty() {
            return write!(f, "1");
        }
        let mut first = true;
        for (p, &t) in &self.twice_exp {
            if !first {
                write!(f, " * ")?;
            }
            first = false;
            if t == 2 {
                write!(f, "{}", p)?;
            } else if t % 2 == 0 {
                write!(f, "{}^{}", p, t / 2)?;
            } else {
                write!(f, "{}^({}/2)", p, t)?;
            }
        }
        Ok(())
    }
}

/// Deterministic Miller-Rabin for the sizes we factor (resultants of small
/// class polynomials, well under 10^40).
pub fn is_prime(n: &BigInt) -> bool {
    if *n < BigInt::from(2) {
        return false;
    }
    let small: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &p in &small {
        let bp = BigInt::from(p);
        if *n == bp {
            return true;
        }
        if (n % &bp).is_zero() {
            return false;
        }
    }
    let n_minus_1: BigInt = n - 1;
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d: BigInt = &n_minus_1 >> s;
    'witness: for &a in &small {
        let mut x = BigInt::from(a).modpow(&d, n);
        if x.is_one() || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n_minus_1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn pollard_rho(n: &BigInt) -> BigInt {
    // Brent's cycle variant; n is odd, composite, and has no factor <= 10^6.
    let one = BigInt::one();
    let mut c = BigInt::from(1);
    loop {
        let mut x = BigInt::from(2);
        let mut y = BigInt::from(2);
        let mut d = BigInt::one();
        let f = |v: &BigInt| (v * v + &c) % n;
        while d.is_one() {
            x = f(&x);
            y = f(&f(&y));
            let diff = if x >= y { &x - &y } else { &y - &x };
            if diff.is_zero() {
                break;
            }
            d = diff.gcd(n);
        }
        if !d.is_one() && d != *n {
            return d;
        }
        c += &one;
    }
}

fn factor_into(n: BigInt, out: &mut BTreeMap<BigInt, i64>) {
    if n.is_one() {
        return;
    }
    if is_prime(&n) {
        *out.entry(n).or_insert(0) += 1;
        return;
    }
    let d = pollard_rho(&n);
    let q = &n / &d;
    factor_into(d, out);
    factor_into(q, out);
}

/// Factor a nonzero integer. Trial division up to 10^6, then Pollard rho.
pub fn factorize(n: &BigInt) -> Result<FactorizationMap, ArithError> {
    if n.is_zero() {
        return Err(ArithError::ZeroArgument("factorize"));
    }
    let mut m = FactorizationMap::one();
    if n.is_negative() {
        m.sign = -1;
    }
    let mut rest = n.abs();
    let mut p: u64 = 2;
    while p <= 1_000_000 && BigInt::from(p) * BigInt::from(p) <= rest {
        let bp = BigInt::from(p);
        while (&rest % &bp).is_zero() {
            rest /= &bp;
            m.add_twice(bp.clone(), 2);
        }
        p = if p == 2 { 3 } else { p + 2 };
    }
    if !rest.is_one() {
        let mut tail = BTreeMap::new();
        factor_into(rest, &mut tail);
        for (q, e) in tail {
            m.add_twice(q, 2 * e);
        }
    }
    Ok(m)
}

/// Errors from the exact-arithmetic layer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ArithError {
    ZeroArgument(&'static str),
    NonPositive(&'static str),
}

impl fmt::Display for ArithError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ArithError::ZeroArgument(op) => write!(f, "{}: argument must be nonzero", op),
            ArithError::NonPositive(op) => write!(f, "{}: argument must be positive", op),
        }
    }
}

impl std::error::Error for ArithError {}

/// Kronecker symbol (a|n), extended to all integers n.
pub fn kronecker(a: i64, n: i64) -> i32 {
    let mut a = a as i128;
    let mut n = n as i128;
    if n == 0 {
        return if a == 1 || a == -1 { 1 } else { 0 };
    }
    let mut result: i32 = 1;
    if n < 0 {
        n = -n;
        if a < 0 {
            result = -result;
        }
    }
    // (a|2) factor per trailing twos of n.
    let t = n.trailing_zeros();
    n >>= t;
    if t > 0 {
        if a % 2 == 0 {
            return 0;
        }
        let r = ((a % 8) + 8) % 8;
        if t % 2 == 1 && (r == 3 || r == 5) {
            result = -result;
        }
    }
    a = ((a % n) + n) % n;
    // Jacobi symbol on odd positive n.
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            let r = n % 8;
            if r == 3 || r == 5 {
                result = -result;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            result = -result;
        }
        a %= n;
    }
    if n == 1 {
        result
    } else {
        0
    }
}

/// p-adic valuation; `None` encodes o_p(0) = infinity.
pub fn valuation(n: &BigInt, p: &BigInt) -> Option<i64> {
    if n.is_zero() {
        return None;
    }
    let mut v = 0i64;
    let mut rest = n.clone();
    loop {
        let (q, r) = rest.div_rem(p);
        if r.is_zero() {
            v += 1;
            rest = q;
        } else {
            return Some(v);
        }
    }
}

/// Valuation of a rational num/den (den nonzero); None for num = 0.
pub fn valuation_rat(num: &BigInt, den: &BigInt, p: &BigInt) -> Option<i64> {
    let vn = valuation(num, p)?;
    let vd = valuation(den, p).expect("denominator must be nonzero");
    Some(vn - vd)
}

/// Convenience valuation on machine integers.
pub fn val_i64(n: i64, p: i64) -> Option<i64> {
    valuation(&BigInt::from(n), &BigInt::from(p))
}

/// Number of positive divisors.
pub fn sigma0(n: i64) -> Result<i64, ArithError> {
    if n <= 0 {
        return Err(ArithError::NonPositive("sigma0"));
    }
    let f = factorize(&BigInt::from(n)).expect("nonzero");
    let mut count = 1i64;
    for (_, t) in f.entries_twice() {
        count *= t / 2 + 1;
    }
    Ok(count)
}

/// Hilbert symbol (a, b)_p over Q_p for a prime p (p = 2 included).
///
/// Nonzero a, b. Standard tame/wild formulas.
pub fn hilbert_symbol(a: i64, b: i64, p: i64) -> i32 {
    assert!(a != 0 && b != 0, "hilbert symbol needs nonzero arguments");
    let (alpha, u) = split_val(a, p);
    let (beta, v) = split_val(b, p);
    if p == 2 {
        // (2^alpha u, 2^beta v)_2 = (-1)^{eps(u)eps(v) + alpha*omega(v) + beta*omega(u)}
        let eps = |x: i64| ((x.rem_euclid(4) - 1) / 2) % 2; // (x-1)/2 mod 2
        let omega = |x: i64| {
            let r = x.rem_euclid(8);
            ((r * r - 1) / 8) % 2
        };
        let e = eps(u) * eps(v) + alpha * omega(v) + beta * omega(u);
        if e % 2 == 0 {
            1
        } else {
            -1
        }
    } else {
        // (p^alpha u, p^beta v)_p = (-1|p)^{alpha beta} (u|p)^beta (v|p)^alpha
        let mut r = 1i32;
        if (alpha * beta) % 2 == 1 && kronecker(-1, p) == -1 {
            r = -r;
        }
        if beta % 2 == 1 {
            r *= kronecker(u, p);
        }
        if alpha % 2 == 1 {
            r *= kronecker(v, p);
        }
        r
    }
}

fn split_val(x: i64, p: i64) -> (i64, i64) {
    let mut v = 0i64;
    let mut u = x;
    while u % p == 0 {
        u /= p;
        v += 1;
    }
    (v, u)
}

/// Tonelli-Shanks square root of a mod odd prime p; None when a is not a
/// residue. Returns r with 0 <= r <= p/2.
pub fn sqrt_mod_prime(a: i64, p: i64) -> Option<i64> {
    let a = a.rem_euclid(p);
    if a == 0 {
        return Some(0);
    }
    if kronecker(a, p) != 1 {
        return None;
    }
    let pow = |mut b: i64, mut e: i64| -> i64 {
        let mut acc = 1i64;
        b = b.rem_euclid(p);
        while e > 0 {
            if e & 1 == 1 {
                acc = (acc as i128 * b as i128 % p as i128) as i64;
            }
            b = (b as i128 * b as i128 % p as i128) as i64;
            e >>= 1;
        }
        acc
    };
    let r = if p % 4 == 3 {
        pow(a, (p + 1) / 4)
    } else {
        // full Tonelli-Shanks
        let mut q = p - 1;
        let mut s = 0;
        while q % 2 == 0 {
            q /= 2;
            s += 1;
        }
        let z = (2..p).find(|&z| kronecker(z, p) == -1).unwrap();
        let mut m = s;
        let mut c = pow(z, q);
        let mut t = pow(a, q);
        let mut r = pow(a, (q + 1) / 2);
        while t != 1 {
            let mut i = 0;
            let mut tt = t;
            while tt != 1 {
                tt = (tt as i128 * tt as i128 % p as i128) as i64;
                i += 1;
            }
            let mut b = c;
            for _ in 0..(m - i - 1) {
                b = (b as i128 * b as i128 % p as i128) as i64;
            }
            m = i;
            c = (b as i128 * b as i128 % p as i128) as i64;
            t = (t as i128 * c as i128 % p as i128) as i64;
            r = (r as i128 * b as i128 % p as i128) as i64;
        }
        r
    };
    let r = r.min(p - r);
    debug_assert_eq!((r as i128 * r as i128).rem_euclid(p as i128), a as i128);
    Some(r)
}

/// Primes up to `n` inclusive.
pub fn primes_up_to(n: i64) -> Vec<i64> {
    if n < 2 {
        return vec![];
    }
    let n = n as usize;
    let mut sieve = vec![true; n + 1];
    sieve[0] = false;
    sieve[1] = false;
    let mut p = 2usize;
    while p * p <= n {
        if sieve[p] {
            let mut q = p * p;
            while q <= n {
                sieve[q] = false;
                q += p;
            }
        }
        p += 1;
    }
    sieve
        .iter()
        .enumerate()
        .filter_map(|(i, &b)| if b { Some(i as i64) } else { None })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn factorize_unit_and_small() {
        let f = factorize(&BigInt::from(1)).unwrap();
        assert_eq!(f.sign, 1);
        assert!(f.is_trivial());

        let f = factorize(&BigInt::from(-12)).unwrap();
        assert_eq!(f.sign, -1);
        assert_eq!(f.twice_exponent(&BigInt::from(2)), 4);
        assert_eq!(f.twice_exponent(&BigInt::from(3)), 2);
    }

    #[test]
    fn factorize_example_discriminant() {
        // 3^12 * 11^2 * 23^2 * 31
        let n = BigInt::from(3).pow(12) * BigInt::from(11 * 11) * BigInt::from(23 * 23)
            * BigInt::from(31);
        let f = factorize(&n).unwrap();
        assert_eq!(f.twice_exponent(&BigInt::from(3)), 24);
        assert_eq!(f.twice_exponent(&BigInt::from(11)), 4);
        assert_eq!(f.twice_exponent(&BigInt::from(23)), 4);
        assert_eq!(f.twice_exponent(&BigInt::from(31)), 2);
        assert_eq!(f.to_bigint(), n);
    }

    #[test]
    fn factorize_rejects_zero() {
        assert!(factorize(&BigInt::zero()).is_err());
    }

    #[test]
    fn kronecker_small_cases() {
        for a in -20i64..20 {
            assert_eq!(kronecker(a, 1), 1);
        }
        // (5|11) = 1: 4^2 = 16 = 5 mod 11
        assert_eq!(kronecker(5, 11), 1);
        // -31 = 1 mod 8, so (-31|2) = 1; cross-check by squares mod 8
        assert_eq!(kronecker(-31, 2), 1);
        let squares_mod8: Vec<i64> = (1..8).step_by(2).map(|x: i64| (x * x) % 8).collect();
        assert!(squares_mod8.contains(&((-31i64).rem_euclid(8))));
    }

    #[test]
    fn kronecker_matches_legendre_enumeration() {
        for &p in &[3i64, 5, 7, 11, 13, 31] {
            for a in 1..p {
                let is_square = (1..p).any(|x| (x * x) % p == a);
                let expect = if is_square { 1 } else { -1 };
                assert_eq!(kronecker(a, p), expect, "a={} p={}", a, p);
            }
            assert_eq!(kronecker(p, p), 0);
        }
    }

    #[test]
    fn valuations() {
        assert_eq!(val_i64(48, 2), Some(4));
        assert_eq!(val_i64(12, 3), Some(1));
        assert_eq!(
            valuation_rat(&BigInt::from(4), &BigInt::from(25), &BigInt::from(5)),
            Some(-2)
        );
        assert_eq!(val_i64(0, 7), None);
    }

    #[test]
    fn sigma0_values() {
        assert_eq!(sigma0(1).unwrap(), 1);
        assert_eq!(sigma0(7).unwrap(), 2);
        // divisors of 12: 1,2,3,4,6,12
        let divisors = (1..=12).filter(|d| 12 % d == 0).count() as i64;
        assert_eq!(sigma0(12).unwrap(), divisors);
        assert!(sigma0(0).is_err());
    }

    #[test]
    fn hilbert_product_formula() {
        // prod_p (a,b)_p over all p (incl. infinity) = 1
        let inf = |a: i64, b: i64| if a < 0 && b < 0 { -1 } else { 1 };
        for &(a, b) in &[(-31, -3), (5, 7), (-7, -14), (12, -75), (-31, -62)] {
            let mut prod = inf(a, b);
            for p in primes_up_to(200) {
                prod *= hilbert_symbol(a, b, p);
            }
            assert_eq!(prod, 1, "a={} b={}", a, b);
        }
    }

    proptest! {
        #[test]
        fn kronecker_multiplicative_in_n(a in -50i64..50, n1 in 1i64..200, n2 in 1i64..200) {
            prop_assert_eq!(kronecker(a, n1 * n2), kronecker(a, n1) * kronecker(a, n2));
        }

        #[test]
        fn valuation_additive(m in 1i64..10_000, n in 1i64..10_000, pi in 0usize..4) {
            let p = [2i64, 3, 5, 7][pi];
            let vm = val_i64(m, p).unwrap();
            let vn = val_i64(n, p).unwrap();
            prop_assert_eq!(val_i64(m * n, p).unwrap(), vm + vn);
        }

        #[test]
        fn factorize_roundtrip(n in 1i64..1_000_000) {
            let f = factorize(&BigInt::from(n)).unwrap();
            prop_assert_eq!(f.to_bigint(), BigInt::from(n));
        }
    }
}
