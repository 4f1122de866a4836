//! Exact integer polynomials from numeric roots: minimal polynomials of the
//! powered class invariants, their discriminants and resultants (both by the
//! subresultant algorithm, no floating point), and the per-class numeric
//! discriminant factors disc(D; s, A).

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::bigfloat::{BigComplex, BigReal};
use crate::quadorders::{ClassGroup, QuadClass, QuadError};
use crate::webereval::{class_invariant_power, WeberError};

/// Integer polynomial, coefficients ascending, leading coefficient nonzero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.len() > 1 && coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn zero() -> Self {
        IntPolynomial {
            coeffs: vec![BigInt::zero()],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn leading(&self) -> &BigInt {
        self.coeffs.last().unwrap()
    }

    pub fn derivative(&self) -> IntPolynomial {
        if self.degree() == 0 {
            return IntPolynomial::zero();
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * BigInt::from(i))
            .collect();
        IntPolynomial::new(coeffs)
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    fn scale(&self, k: &BigInt) -> IntPolynomial {
        IntPolynomial::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    fn shift_mul(&self, k: usize) -> IntPolynomial {
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend_from_slice(&self.coeffs);
        IntPolynomial::new(coeffs)
    }

    fn sub(&self, other: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) - other.coeff(i)).collect();
        IntPolynomial::new(coeffs)
    }

    fn divide_exact(&self, k: &BigInt) -> IntPolynomial {
        IntPolynomial::new(
            self.coeffs
                .iter()
                .map(|c| {
                    debug_assert!((c % k).is_zero());
                    c / k
                })
                .collect(),
        )
    }

    /// Pseudo-remainder: lc(b)^{deg a - deg b + 1} * a mod b.
    fn pseudo_rem(&self, b: &IntPolynomial) -> IntPolynomial {
        let db = b.degree();
        let lcb = b.leading().clone();
        let mut r = self.clone();
        let mut e = (self.degree() - db) as i64 + 1;
        while !r.is_zero() && r.degree() >= db {
            let lead = r.leading().clone();
            let dr = r.degree();
            r = r.scale(&lcb).sub(&b.scale(&lead).shift_mul(dr - db));
            e -= 1;
            debug_assert!(r.is_zero() || r.degree() < dr);
        }
        for _ in 0..e {
            r = r.scale(&lcb);
        }
        r
    }
}

impl std::fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() && self.degree() > 0 {
                continue;
            }
            if !first {
                write!(f, " {} ", if c.is_negative() { "-" } else { "+" })?;
            } else if c.is_negative() {
                write!(f, "-")?;
            }
            let a = c.abs();
            match i {
                0 => write!(f, "{}", a)?,
                1 => {
                    if a.is_one() {
                        write!(f, "X")?
                    } else {
                        write!(f, "{}*X", a)?
                    }
                }
                _ => {
                    if a.is_one() {
                        write!(f, "X^{}", i)?
                    } else {
                        write!(f, "{}*X^{}", a, i)?
                    }
                }
            }
            first = false;
        }
        Ok(())
    }
}

/// Exact resultant by the subresultant polynomial remainder sequence.
/// Sign convention: Res(P, Q) = lc(P)^{deg Q} lc(Q)^{deg P} prod (x_i - y_j),
/// so for monic P, Q it is prod over root pairs of (x_i - y_j).
pub fn resultant(p: &IntPolynomial, q: &IntPolynomial) -> BigInt {
    if p.is_zero() || q.is_zero() {
        return BigInt::zero();
    }
    let (mut a, mut b);
    let mut s = 1i32;
    if p.degree() >= q.degree() {
        a = p.clone();
        b = q.clone();
    } else {
        a = q.clone();
        b = p.clone();
        if p.degree() % 2 == 1 && q.degree() % 2 == 1 {
            s = -s;
        }
    }
    if b.degree() == 0 {
        let r = b.coeff(0).pow(a.degree() as u32);
        return if s < 0 { -r } else { r };
    }
    let mut g = BigInt::one();
    let mut h = BigInt::one();
    loop {
        let da = a.degree();
        let db = b.degree();
        let delta = (da - db) as u32;
        if da % 2 == 1 && db % 2 == 1 {
            s = -s;
        }
        let r = a.pseudo_rem(&b);
        a = b;
        let denom = &g * h.pow(delta);
        b = if r.is_zero() {
            IntPolynomial::zero()
        } else {
            r.divide_exact(&denom)
        };
        g = a.leading().clone();
        h = if delta == 0 {
            h
        } else {
            let num = g.pow(delta);
            let den = h.pow(delta - 1);
            debug_assert!((&num % &den).is_zero());
            num / den
        };
        if b.is_zero() {
            return BigInt::zero();
        }
        if b.degree() == 0 {
            let da = a.degree() as u32;
            let num = b.coeff(0).pow(da);
            let den = h.pow(da.saturating_sub(1));
            debug_assert!((&num % &den).is_zero());
            let r = num / den;
            return if s < 0 { -r } else { r };
        }
    }
}

/// Discriminant with the standard sign:
/// disc(P) = (-1)^{d(d-1)/2} Res(P, P') / lc(P). Degree 1 gives 1.
pub fn poly_discriminant(p: &IntPolynomial) -> BigInt {
    let d = p.degree();
    assert!(d >= 1, "discriminant needs degree >= 1");
    if d == 1 {
        return BigInt::one();
    }
    let res = resultant(p, &p.derivative());
    debug_assert!((&res % p.leading()).is_zero());
    let r = res / p.leading();
    if (d * (d - 1) / 2) % 2 == 1 {
        -r
    } else {
        r
    }
}

/// How a numeric rounding went: the largest distance from a coefficient to
/// its nearest integer, and the precision used. Accepted iff < 0.25 and the
/// doubled-precision recomputation reproduces the same integers.
#[derive(Clone, Debug)]
pub struct RoundingReport {
    pub max_offset: f64,
    pub prec_used: u32,
}

#[derive(Debug)]
pub enum ClasspolyError {
    NotAdmissible(i64),
    TrivialClass,
    Precision(RoundingReport),
    Weber(WeberError),
    Quad(QuadError),
}

impl std::fmt::Display for ClasspolyError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ClasspolyError::NotAdmissible(d) => write!(f, "discriminant {} not admissible", d),
            ClasspolyError::TrivialClass => write!(f, "the twisting class must be non-trivial"),
            ClasspolyError::Precision(r) => write!(
                f,
                "rounding failed at {} bits (max offset {})",
                r.prec_used, r.max_offset
            ),
            ClasspolyError::Weber(e) => write!(f, "{}", e),
            ClasspolyError::Quad(e) => write!(f, "{}", e),
        }
    }
}

impl std::error::Error for ClasspolyError {}

impl From<WeberError> for ClasspolyError {
    fn from(e: WeberError) -> Self {
        ClasspolyError::Weber(e)
    }
}

impl From<QuadError> for ClasspolyError {
    fn from(e: QuadError) -> Self {
        ClasspolyError::Quad(e)
    }
}

/// Hard ceiling on the working precision.
pub const PREC_CAP: u32 = 65_536;

/// All class invariant powers f(A)^{24/s}, in class-group order.
fn invariant_powers(
    group: &ClassGroup,
    s: u32,
    prec: u32,
) -> Result<Vec<BigComplex>, ClasspolyError> {
    group
        .classes
        .par_iter()
        .map(|f| class_invariant_power(f, s, prec).map_err(ClasspolyError::from))
        .collect()
}

fn product_poly(roots: &[BigComplex], prec: u32) -> Vec<BigComplex> {
    // coefficients of prod (X - r_i), ascending
    let mut coeffs = vec![BigComplex::from_i64(1, 0, prec)];
    for r in roots {
        let mut next = vec![BigComplex::zero(prec); coeffs.len() + 1];
        for (i, c) in coeffs.iter().enumerate() {
            next[i + 1] = next[i + 1].add(c);
            next[i] = next[i].sub(&c.mul(r));
        }
        coeffs = next;
    }
    coeffs
}

fn round_real_coeffs(
    coeffs: &[BigComplex],
    prec: u32,
) -> Result<(Vec<BigInt>, f64), RoundingReport> {
    let mut out = Vec::with_capacity(coeffs.len());
    let mut max_offset = 0f64;
    for c in coeffs {
        // imaginary part must be numerically zero
        if c.im.log2_abs() > -((prec / 2) as f64) {
            return Err(RoundingReport {
                max_offset: f64::INFINITY,
                prec_used: prec,
            });
        }
        let (n, offset) = c.re.round_to_integer();
        max_offset = max_offset.max(offset);
        if offset >= 0.25 {
            return Err(RoundingReport {
                max_offset,
                prec_used: prec,
            });
        }
        out.push(n);
    }
    Ok((out, max_offset))
}

/// Minimal polynomial prod_{A in Cl(D)} (X - f(A)^{24/s}) as an exact integer
/// polynomial. Rounds at `prec`, re-rounds at `2 prec`, and accepts only when
/// both agree; on failure the precision doubles up to the cap.
pub fn minimal_polynomial(
    group: &ClassGroup,
    s: u32,
    prec: u32,
) -> Result<(IntPolynomial, RoundingReport), ClasspolyError> {
    if !group.disc.yz_admissible() {
        return Err(ClasspolyError::NotAdmissible(group.disc.value()));
    }
    assert!(24 % s == 0, "s must divide 24");
    let mut prec = prec.max(64);
    loop {
        match try_min_poly(group, s, prec) {
            Ok(ok) => return Ok(ok),
            Err(report) => {
                if 2 * prec > PREC_CAP {
                    return Err(ClasspolyError::Precision(report));
                }
                prec *= 2;
            }
        }
    }
}

fn try_min_poly(
    group: &ClassGroup,
    s: u32,
    prec: u32,
) -> Result<(IntPolynomial, RoundingReport), RoundingReport> {
    let compute = |p: u32| -> Result<(Vec<BigInt>, f64), RoundingReport> {
        let roots = invariant_powers(group, s, p).map_err(|_| RoundingReport {
            max_offset: f64::INFINITY,
            prec_used: p,
        })?;
        let coeffs = product_poly(&roots, p);
        round_real_coeffs(&coeffs, p)
    };
    let (lo, max_offset) = compute(prec)?;
    let (hi, _) = compute(2 * prec)?;
    if lo != hi {
        return Err(RoundingReport {
            max_offset,
            prec_used: prec,
        });
    }
    Ok((
        IntPolynomial::new(lo),
        RoundingReport {
            max_offset,
            prec_used: prec,
        },
    ))
}

/// Which conjugation pairing produced the rational norm of disc(D; s, A).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NormPairing {
    /// A = A^{-1}: the value itself is rational.
    SelfPaired,
    /// Paired with the inverse class; norm = disc(A) * disc(A^{-1}).
    ConjugatePaired,
}

#[derive(Clone, Debug)]
pub struct DiscClassNumeric {
    pub value: BigComplex,
    /// Rational norm: disc * disc(inverse twist) (or disc itself when the
    /// twist is 2-torsion), rounded to an exact integer.
    pub norm_q: BigInt,
    pub pairing: NormPairing,
    /// conj(disc(A)) matches disc(A^{-1}) numerically.
    pub pairing_verified: bool,
    pub report: RoundingReport,
}

/// disc(D; s, A~) = prod_{A} (f(A)^{24/s} - f(A A~)^{24/s}) numerically,
/// together with its rational norm rounded to an integer.
pub fn disc_class_numeric(
    group: &ClassGroup,
    s: u32,
    twist_idx: usize,
    prec: u32,
) -> Result<DiscClassNumeric, ClasspolyError> {
    if !group.disc.yz_admissible() {
        return Err(ClasspolyError::NotAdmissible(group.disc.value()));
    }
    if twist_idx == group.identity_index() {
        return Err(ClasspolyError::TrivialClass);
    }
    let mut prec = prec.max(64);
    loop {
        match try_disc_class(group, s, twist_idx, prec) {
            Ok(v) => return Ok(v),
            Err(report) => {
                if 2 * prec > PREC_CAP {
                    return Err(ClasspolyError::Precision(report));
                }
                prec *= 2;
            }
        }
    }
}

fn disc_product(values: &[BigComplex], group: &ClassGroup, twist_idx: usize) -> BigComplex {
    let prec = values[0].prec();
    let mut prod = BigComplex::from_i64(1, 0, prec);
    for i in 0..group.h() {
        let j = group.compose_idx(i, twist_idx);
        prod = prod.mul(&values[i].sub(&values[j]));
    }
    prod
}

fn try_disc_class(
    group: &ClassGroup,
    s: u32,
    twist_idx: usize,
    prec: u32,
) -> Result<DiscClassNumeric, RoundingReport> {
    let fail = |p: u32| RoundingReport {
        max_offset: f64::INFINITY,
        prec_used: p,
    };
    let inv_idx = group.inverse_idx(twist_idx);
    let pairing = if inv_idx == twist_idx {
        NormPairing::SelfPaired
    } else {
        NormPairing::ConjugatePaired
    };
    let round_at = |p: u32| -> Result<(BigComplex, BigInt, f64, bool), RoundingReport> {
        let values = invariant_powers(group, s, p).map_err(|_| fail(p))?;
        let value = disc_product(&values, group, twist_idx);
        let (norm, verified) = match pairing {
            NormPairing::SelfPaired => (value.clone(), value.im.log2_abs() < -((p / 2) as f64)),
            NormPairing::ConjugatePaired => {
                let other = disc_product(&values, group, inv_idx);
                (value.mul(&other), value.conj().close_to(&other, p / 2))
            }
        };
        let (n, offset) = round_real_coeffs(std::slice::from_ref(&norm), p)
            .map(|(v, off)| (v.into_iter().next().unwrap(), off))?;
        Ok((value, n, offset, verified))
    };
    let (value, n_lo, max_offset, verified) = round_at(prec)?;
    let (_, n_hi, _, _) = round_at(2 * prec)?;
    if n_lo != n_hi {
        return Err(RoundingReport {
            max_offset,
            prec_used: prec,
        });
    }
    Ok(DiscClassNumeric {
        value,
        norm_q: n_lo,
        pairing,
        pairing_verified: verified,
        report: RoundingReport {
            max_offset,
            prec_used: prec,
        },
    })
}

/// Check helper used by tests and the verifier: the product of the numeric
/// per-class discs over all non-trivial twists equals the polynomial
/// discriminant up to sign.
pub fn disc_product_all(
    group: &ClassGroup,
    s: u32,
    prec: u32,
) -> Result<(BigInt, RoundingReport), ClasspolyError> {
    if !group.disc.yz_admissible() {
        return Err(ClasspolyError::NotAdmissible(group.disc.value()));
    }
    let mut prec = prec.max(64);
    loop {
        let attempt = (|p: u32| -> Result<(BigInt, f64), RoundingReport> {
            let values = invariant_powers(group, s, p).map_err(|_| RoundingReport {
                max_offset: f64::INFINITY,
                prec_used: p,
            })?;
            let mut prod = BigComplex::from_i64(1, 0, p);
            for t in 0..group.h() {
                if t == group.identity_index() {
                    continue;
                }
                prod = prod.mul(&disc_product(&values, group, t));
            }
            round_real_coeffs(std::slice::from_ref(&prod), p)
                .map(|(v, off)| (v.into_iter().next().unwrap(), off))
        })(prec);
        match attempt {
            Ok((n, max_offset)) => {
                return Ok((
                    n,
                    RoundingReport {
                        max_offset,
                        prec_used: prec,
                    },
                ))
            }
            Err(report) => {
                if 2 * prec > PREC_CAP {
                    return Err(ClasspolyError::Precision(report));
                }
                prec *= 2;
            }
        }
    }
}

/// Serialize coefficients as decimal strings, ascending degree.
pub fn coeffs_as_strings(p: &IntPolynomial) -> Vec<String> {
    p.coeffs().iter().map(|c| c.to_string()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadorders::Discriminant;
    use std::str::FromStr;

    fn group(d: i64) -> ClassGroup {
        ClassGroup::new(Discriminant::new(d).unwrap()).unwrap()
    }

    fn poly(coeffs: &[i64]) -> IntPolynomial {
        IntPolynomial::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// Bareiss fraction-free determinant of the Sylvester matrix; the
    /// independent oracle for the subresultant code.
    fn sylvester_resultant(p: &IntPolynomial, q: &IntPolynomial) -> BigInt {
        let m = p.degree();
        let n = q.degree();
        if m == 0 {
            return p.coeff(0).pow(n as u32);
        }
        if n == 0 {
            return q.coeff(0).pow(m as u32);
        }
        let size = m + n;
        let mut mat = vec![vec![BigInt::zero(); size]; size];
        for row in 0..n {
            for (k, c) in p.coeffs().iter().enumerate() {
                mat[row][row + (m - k)] = c.clone();
            }
        }
        for row in 0..m {
            for (k, c) in q.coeffs().iter().enumerate() {
                mat[n + row][row + (n - k)] = c.clone();
            }
        }
        // Bareiss
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..size - 1 {
            if mat[k][k].is_zero() {
                let swap = (k + 1..size).find(|&r| !mat[r][k].is_zero());
                match swap {
                    Some(r) => {
                        mat.swap(k, r);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..size {
                for j in k + 1..size {
                    let v = (&mat[i][j] * &mat[k][k] - &mat[i][k] * &mat[k][j]) / &prev;
                    mat[i][j] = v;
                }
                mat[i][k] = BigInt::zero();
            }
            prev = mat[k][k].clone();
        }
        sign * mat[size - 1][size - 1].clone()
    }

    #[test]
    fn resultant_small_cases() {
        // Res(X - 1, X - 3) = 1 - 3 = -2 under the monic product convention
        assert_eq!(resultant(&poly(&[-1, 1]), &poly(&[-3, 1])), BigInt::from(-2));
        let p = poly(&[-1, 0, 2, 5]);
        assert_eq!(resultant(&p, &p), BigInt::zero());
        // constants
        assert_eq!(resultant(&poly(&[7]), &poly(&[0, 0, 1])), BigInt::from(49));
    }

    #[test]
    fn resultant_matches_sylvester_oracle() {
        let cases: Vec<(Vec<i64>, Vec<i64>)> = vec![
            (vec![-1, 3, 1], vec![2, -5, 0, 1]),
            (vec![4, 0, -7, 1, 2], vec![-3, 1]),
            (vec![1, 1, 1, 1], vec![-2, 0, 3]),
            (vec![5, -4, 3, -2, 1], vec![1, 2, 3, 4, 5]),
            (vec![0, 1, 0, 1], vec![1, 0, 1]),
            (vec![-6, 11, -6, 1], vec![-1, 1]),
        ];
        for (a, b) in cases {
            let p = poly(&a);
            let q = poly(&b);
            assert_eq!(resultant(&p, &q), sylvester_resultant(&p, &q), "{:?} {:?}", a, b);
            // swap symmetry
            let sgn = if (p.degree() * q.degree()) % 2 == 1 { -1 } else { 1 };
            assert_eq!(resultant(&q, &p), BigInt::from(sgn) * resultant(&p, &q));
        }
    }

    #[test]
    fn discriminant_small_cases() {
        // disc(X^2 + 1) = -4
        assert_eq!(poly_discriminant(&poly(&[1, 0, 1])), BigInt::from(-4));
        // disc(X - 1) = 1 by convention
        assert_eq!(poly_discriminant(&poly(&[-1, 1])), BigInt::one());
        // disc(X^3 - 165 X^2 + 9642 X - 1) = -3^12 * 11^2 * 23^2 * 31
        let p = poly(&[-1, 9642, -165, 1]);
        let expected = -BigInt::from(3).pow(12) * 11 * 11 * 23 * 23 * 31;
        assert_eq!(poly_discriminant(&p), expected);
        // discriminant via both routes: subresultant vs Sylvester oracle
        let res_route = {
            let r = sylvester_resultant(&p, &p.derivative());
            let d = p.degree();
            let s = if (d * (d - 1) / 2) % 2 == 1 { -1 } else { 1 };
            BigInt::from(s) * r / p.leading()
        };
        assert_eq!(poly_discriminant(&p), res_route);
    }

    #[test]
    fn minimal_polynomial_golden_d31() {
        let g = group(-31);
        let (p, report) = minimal_polynomial(&g, 1, 192).unwrap();
        assert_eq!(p, poly(&[-1, 9642, -165, 1]));
        assert!(report.max_offset < 0.25);
    }

    #[test]
    fn minimal_polynomial_golden_d7() {
        let g = group(-7);
        let (p, _) = minimal_polynomial(&g, 1, 192).unwrap();
        assert_eq!(p, poly(&[-1, 1]));
    }

    #[test]
    fn minimal_polynomial_golden_d175() {
        let g = group(-175);
        let (p, _) = minimal_polynomial(&g, 1, 256).unwrap();
        let expected = IntPolynomial::new(vec![
            BigInt::one(),
            BigInt::from_str("-273301922603526").unwrap(),
            BigInt::from_str("23843150292975").unwrap(),
            BigInt::from_str("293236687600").unwrap(),
            BigInt::from_str("1046370975").unwrap(),
            BigInt::from_str("-45771").unwrap(),
            BigInt::one(),
        ]);
        assert_eq!(p, expected);
    }

    #[test]
    fn golden_resultant_7_175() {
        let g1 = group(-7);
        let g2 = group(-175);
        let (p1, _) = minimal_polynomial(&g1, 1, 192).unwrap();
        let (p2, _) = minimal_polynomial(&g2, 1, 256).unwrap();
        let r = resultant(&p1, &p2);
        let expected = -BigInt::from(3).pow(14) * 5 * 49 * BigInt::from(19).pow(3) * 31;
        assert_eq!(r, expected);
    }

    #[test]
    fn disc_class_numeric_golden_d31() {
        let g = group(-31);
        let idx = g.index_of(&QuadClass { a: 2, b: 1, c: 4 }).unwrap();
        let d = disc_class_numeric(&g, 1, idx, 192).unwrap();
        assert!(d.pairing_verified);
        assert_eq!(d.pairing, NormPairing::ConjugatePaired);
        let expected = BigInt::from(3).pow(12) * 11 * 11 * 23 * 23 * 31;
        assert_eq!(d.norm_q.abs(), expected);
        // the value itself is nonzero to tolerance
        assert!(d.value.abs().log2_abs() > -96.0);
        // trivial twist is a domain error
        assert!(matches!(
            disc_class_numeric(&g, 1, g.identity_index(), 192),
            Err(ClasspolyError::TrivialClass)
        ));
    }

    #[test]
    fn disc_products_match_poly_discriminant() {
        for (d, s) in [(-31i64, 1u32), (-31, 24), (-47, 1), (-23, 2)] {
            let g = group(d);
            let (p, _) = minimal_polynomial(&g, s, 192).unwrap();
            let disc = poly_discriminant(&p);
            let (prod, _) = disc_product_all(&g, s, 192).unwrap();
            assert_eq!(prod.abs(), disc.abs(), "D={} s={}", d, s);
        }
    }

    #[test]
    fn unit_constant_coefficient() {
        for d in [-7i64, -23, -31, -47, -71] {
            let g = group(d);
            for s in [1u32, 2, 3, 24] {
                let (p, _) = minimal_polynomial(&g, s, 192).unwrap();
                assert!(p.coeff(0).abs().is_one(), "D={} s={}", d, s);
                assert!(p.leading().is_one());
                assert_eq!(p.degree(), g.h());
            }
        }
    }

    #[test]
    fn rerounding_at_double_precision_is_identical() {
        let g = group(-31);
        let (p1, _) = minimal_polynomial(&g, 1, 128).unwrap();
        let (p2, _) = minimal_polynomial(&g, 1, 512).unwrap();
        assert_eq!(p1, p2);
    }
}
