//! Fixed-point arbitrary-precision real and complex arithmetic.
//!
//! A `BigReal` at precision `prec` stores round(value * 2^prec) as a big
//! integer. Binary operations carry the minimum precision of their operands,
//! and default comparison tolerance is 2^(-prec/2). This is not ball
//! arithmetic: checked integer rounding (round at prec, confirm at 2*prec)
//! is done one level up, in `classpoly`.

use std::collections::HashMap;
use std::sync::Mutex;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BigReal {
    mant: BigInt,
    prec: u32,
}

impl BigReal {
    pub fn zero(prec: u32) -> Self {
        BigReal {
            mant: BigInt::zero(),
            prec,
        }
    }

    pub fn from_i64(v: i64, prec: u32) -> Self {
        BigReal {
            mant: BigInt::from(v) << prec,
            prec,
        }
    }

    pub fn from_bigint(v: &BigInt, prec: u32) -> Self {
        BigReal {
            mant: v.clone() << prec,
            prec,
        }
    }

    /// num / den at the given precision, rounded to nearest.
    pub fn from_ratio(num: &BigInt, den: &BigInt, prec: u32) -> Self {
        assert!(!den.is_zero());
        let mut n = num.clone() << (prec + 1);
        let mut d = den.clone();
        if d.is_negative() {
            n = -n;
            d = -d;
        }
        let q = div_round_half(&n, &d);
        BigReal { mant: q, prec }
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.mant
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.mant.is_negative()
    }

    pub fn neg(&self) -> Self {
        BigReal {
            mant: -&self.mant,
            prec: self.prec,
        }
    }

    pub fn abs(&self) -> Self {
        BigReal {
            mant: self.mant.abs(),
            prec: self.prec,
        }
    }

    /// Change precision (extend with zeros or round off).
    pub fn with_prec(&self, prec: u32) -> Self {
        if prec >= self.prec {
            BigReal {
                mant: &self.mant << (prec - self.prec),
                prec,
            }
        } else {
            let shift = self.prec - prec;
            let half = BigInt::from(1) << (shift - 1);
            BigReal {
                mant: (&self.mant + half) >> shift,
                prec,
            }
        }
    }

    fn align(&self, other: &Self) -> (BigInt, BigInt, u32) {
        let prec = self.prec.min(other.prec);
        (
            self.with_prec(prec).mant,
            other.with_prec(prec).mant,
            prec,
        )
    }

    pub fn add(&self, other: &Self) -> Self {
        let (a, b, prec) = self.align(other);
        BigReal { mant: a + b, prec }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let (a, b, prec) = self.align(other);
        BigReal { mant: a - b, prec }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let prec = self.prec.min(other.prec);
        let prod = &self.mant * &other.mant;
        let shift = self.prec + other.prec - prec;
        let half = BigInt::from(1) << (shift - 1);
        BigReal {
            mant: (prod + half) >> shift,
            prec,
        }
    }

    pub fn mul_i64(&self, k: i64) -> Self {
        BigReal {
            mant: &self.mant * k,
            prec: self.prec,
        }
    }

    pub fn div(&self, other: &Self) -> Self {
        assert!(!other.mant.is_zero(), "division by zero");
        let prec = self.prec.min(other.prec);
        let a = self.with_prec(prec);
        let b = other.with_prec(prec);
        let mut num = &a.mant << (prec + 1);
        let mut den = b.mant;
        if den.is_negative() {
            num = -num;
            den = -den;
        }
        BigReal {
            mant: div_round_half(&num, &den),
            prec,
        }
    }

    pub fn shr(&self, k: u32) -> Self {
        BigReal {
            mant: &self.mant >> k,
            prec: self.prec,
        }
    }

    pub fn shl(&self, k: u32) -> Self {
        BigReal {
            mant: &self.mant << k,
            prec: self.prec,
        }
    }

    /// Nonnegative square root.
    pub fn sqrt(&self) -> Self {
        assert!(!self.mant.is_negative(), "sqrt of a negative value");
        let scaled: BigInt = &self.mant << self.prec;
        BigReal {
            mant: scaled.sqrt(),
            prec: self.prec,
        }
    }

    pub fn to_f64(&self) -> f64 {
        let bits = self.mant.bits() as i64;
        if bits <= 52 {
            return self.mant.to_f64().unwrap_or(0.0) / 2f64.powi(self.prec as i32);
        }
        let shift = bits - 52;
        let head = (&self.mant >> shift).to_f64().unwrap_or(0.0);
        head * 2f64.powi((shift - self.prec as i64) as i32)
    }

    /// log2 of |value|, as a rough f64 (for tail-bound planning).
    pub fn log2_abs(&self) -> f64 {
        if self.mant.is_zero() {
            return f64::NEG_INFINITY;
        }
        let bits = self.mant.bits() as f64;
        bits - self.prec as f64
    }

    /// Nearest integer with the distance to it (as an f64 in [0, 0.5]).
    pub fn round_to_integer(&self) -> (BigInt, f64) {
        let one = BigInt::from(1) << self.prec;
        let half = &one >> 1;
        let shifted: BigInt = &self.mant + &half;
        let n = shifted.div_floor(&one);
        let frac = &self.mant - (&n << self.prec);
        let offset = BigReal {
            mant: frac,
            prec: self.prec,
        };
        (n, offset.to_f64().abs())
    }

    /// |self - other| < 2^(-tol_bits)?
    pub fn close_to(&self, other: &Self, tol_bits: u32) -> bool {
        let diff = self.sub(other).abs();
        diff.log2_abs() < -(tol_bits as f64)
    }
}

fn div_round_half(num2: &BigInt, den: &BigInt) -> BigInt {
    // num2 is the numerator pre-shifted one extra bit; round to nearest
    let q = num2.div_floor(den);
    (q + 1) >> 1
}

/// Complex value with tracked working precision.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BigComplex {
    pub re: BigReal,
    pub im: BigReal,
}

impl BigComplex {
    pub fn new(re: BigReal, im: BigReal) -> Self {
        BigComplex { re, im }
    }

    pub fn zero(prec: u32) -> Self {
        BigComplex {
            re: BigReal::zero(prec),
            im: BigReal::zero(prec),
        }
    }

    pub fn from_i64(re: i64, im: i64, prec: u32) -> Self {
        BigComplex {
            re: BigReal::from_i64(re, prec),
            im: BigReal::from_i64(im, prec),
        }
    }

    pub fn prec(&self) -> u32 {
        self.re.prec().min(self.im.prec())
    }

    pub fn add(&self, other: &Self) -> Self {
        BigComplex {
            re: self.re.add(&other.re),
            im: self.im.add(&other.im),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        BigComplex {
            re: self.re.sub(&other.re),
            im: self.im.sub(&other.im),
        }
    }

    pub fn neg(&self) -> Self {
        BigComplex {
            re: self.re.neg(),
            im: self.im.neg(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let ac = self.re.mul(&other.re);
        let bd = self.im.mul(&other.im);
        let ad = self.re.mul(&other.im);
        let bc = self.im.mul(&other.re);
        BigComplex {
            re: ac.sub(&bd),
            im: ad.add(&bc),
        }
    }

    pub fn conj(&self) -> Self {
        BigComplex {
            re: self.re.clone(),
            im: self.im.neg(),
        }
    }

    pub fn norm_sq(&self) -> BigReal {
        self.re.mul(&self.re).add(&self.im.mul(&self.im))
    }

    pub fn abs(&self) -> BigReal {
        self.norm_sq().sqrt()
    }

    pub fn div(&self, other: &Self) -> Self {
        let den = other.norm_sq();
        let num = self.mul(&other.conj());
        BigComplex {
            re: num.re.div(&den),
            im: num.im.div(&den),
        }
    }

    pub fn mul_real(&self, r: &BigReal) -> Self {
        BigComplex {
            re: self.re.mul(r),
            im: self.im.mul(r),
        }
    }

    pub fn pow_u32(&self, mut e: u32) -> Self {
        let prec = self.prec();
        let mut acc = BigComplex::from_i64(1, 0, prec);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    pub fn close_to(&self, other: &Self, tol_bits: u32) -> bool {
        self.re.close_to(&other.re, tol_bits) && self.im.close_to(&other.im, tol_bits)
    }
}

/// Guard bits used inside the transcendental routines.
const GUARD: u32 = 32;

static PI_CACHE: OnceLock<Mutex<HashMap<u32, BigReal>>> = OnceLock::new();

/// pi at the given precision (Machin's formula, cached per precision).
pub fn pi(prec: u32) -> BigReal {
    let cache = PI_CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(v) = cache.lock().unwrap().get(&prec) {
        return v.clone();
    }
    let wp = prec + GUARD;
    // pi = 16 atan(1/5) - 4 atan(1/239)
    let a = atan_inv_int(5, wp).mul_i64(16);
    let b = atan_inv_int(239, wp).mul_i64(4);
    let val = a.sub(&b).with_prec(prec);
    cache.lock().unwrap().insert(prec, val.clone());
    val
}

/// atan(1/x) for integer x >= 2, by the alternating series.
fn atan_inv_int(x: i64, prec: u32) -> BigReal {
    let mut term = BigReal::from_ratio(&BigInt::from(1), &BigInt::from(x), prec);
    let xsq = x * x;
    let mut sum = term.clone();
    let mut k = 1i64;
    loop {
        // term_k = 1 / ((2k+1) x^{2k+1}), alternating
        term = BigReal {
            mant: div_round_half(&(&term.mant << 1), &BigInt::from(xsq)),
            prec,
        };
        let contrib = BigReal {
            mant: div_round_half(&(&term.mant << 1), &BigInt::from(2 * k + 1)),
            prec,
        };
        if contrib.mant.is_zero() {
            break;
        }
        if k % 2 == 1 {
            sum = sum.sub(&contrib);
        } else {
            sum = sum.add(&contrib);
        }
        k += 1;
    }
    sum
}

/// exp(x) for real x, by halving reduction and Taylor series.
pub fn exp_real(x: &BigReal) -> BigReal {
    let prec = x.prec();
    let wp = prec + GUARD + 2 * (x.log2_abs().max(0.0) as u32 + 8);
    let x = x.with_prec(wp);
    // halve until |x| < 2^-4
    let mut halvings = 0u32;
    let mut r = x;
    while r.log2_abs() > -4.0 {
        r = r.shr(1);
        halvings += 1;
    }
    let mut sum = BigReal::from_i64(1, wp);
    let mut term = BigReal::from_i64(1, wp);
    let mut k = 1i64;
    loop {
        term = term.mul(&r);
        term = BigReal {
            mant: div_round_half(&(&term.mant << 1), &BigInt::from(k)),
            prec: wp,
        };
        if term.mant.is_zero() {
            break;
        }
        sum = sum.add(&term);
        k += 1;
    }
    for _ in 0..halvings {
        sum = sum.mul(&sum);
    }
    sum.with_prec(prec)
}

/// (cos x, sin x) for real x.
pub fn cos_sin(x: &BigReal) -> (BigReal, BigReal) {
    let prec = x.prec();
    let wp = prec + GUARD + 2 * (x.log2_abs().max(0.0) as u32 + 8);
    let mut x = x.with_prec(wp);
    // reduce modulo 2 pi
    let two_pi = pi(wp).shl(1);
    if x.log2_abs() > 2.0 {
        let k = x.div(&two_pi);
        let (kint, _) = k.round_to_integer();
        x = x.sub(&BigReal::from_bigint(&kint, wp).mul(&two_pi));
    }
    // halve until small, then double with angle formulas
    let mut halvings = 0u32;
    while x.log2_abs() > -4.0 {
        x = x.shr(1);
        halvings += 1;
    }
    let mut cos = BigReal::from_i64(1, wp);
    let mut sin = BigReal::zero(wp);
    // Taylor: cos = sum (-1)^k x^{2k}/(2k)!, sin = sum (-1)^k x^{2k+1}/(2k+1)!
    let mut term = BigReal::from_i64(1, wp);
    let mut k = 1i64;
    let mut which_sin = true; // next term belongs to sin (x^1), then cos (x^2), ...
    let mut sign = 1i64; // sign for x^{2m+1} and x^{2m+2} pair handling below
    loop {
        term = term.mul(&x);
        term = BigReal {
            mant: div_round_half(&(&term.mant << 1), &BigInt::from(k)),
            prec: wp,
        };
        if term.mant.is_zero() {
            break;
        }
        if which_sin {
            // k odd: x^k/k! goes to sin with sign (-1)^{(k-1)/2}
            if sign > 0 {
                sin = sin.add(&term);
            } else {
                sin = sin.sub(&term);
            }
        } else {
            // k even: x^k/k! goes to cos with sign (-1)^{k/2}
            if sign > 0 {
                cos = cos.sub(&term); // first even term is -x^2/2
            } else {
                cos = cos.add(&term);
            }
        }
        if !which_sin {
            sign = -sign;
        }
        which_sin = !which_sin;
        k += 1;
    }
    for _ in 0..halvings {
        let c2 = cos.mul(&cos).shl(1).sub(&BigReal::from_i64(1, wp));
        let s2 = sin.mul(&cos).shl(1);
        cos = c2;
        sin = s2;
    }
    (cos.with_prec(prec), sin.with_prec(prec))
}

/// exp(z) for complex z.
pub fn exp_complex(z: &BigComplex) -> BigComplex {
    let r = exp_real(&z.re);
    let (c, s) = cos_sin(&z.im);
    BigComplex {
        re: r.mul(&c),
        im: r.mul(&s),
    }
}

/// e^{2 pi i k / n} at the given precision.
pub fn root_of_unity(k: i64, n: i64, prec: u32) -> BigComplex {
    let kk = k.rem_euclid(n);
    let angle = pi(prec + GUARD)
        .shl(1)
        .mul_i64(kk)
        .div(&BigReal::from_i64(n, prec + GUARD));
    let (c, s) = cos_sin(&angle);
    BigComplex {
        re: c.with_prec(prec),
        im: s.with_prec(prec),
    }
}

/// Arithmetic-geometric mean of positive a, b.
pub fn agm(a: &BigReal, b: &BigReal) -> BigReal {
    let prec = a.prec().min(b.prec());
    let wp = prec + GUARD;
    let mut a = a.with_prec(wp);
    let mut b = b.with_prec(wp);
    loop {
        let am = a.add(&b).shr(1);
        let gm = a.mul(&b).sqrt();
        if am.close_to(&gm, prec + 8) {
            return am.with_prec(prec);
        }
        a = am;
        b = gm;
    }
}
