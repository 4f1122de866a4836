//! Binary quadratic forms, reduction, Gauss composition, and class groups.
//!
//! A class is represented by its unique reduced positive definite form
//! (a, b, c) with b^2 - 4ac = D < 0. The ideal attached to (a, b, c) is
//! [a, (b + sqrt(D))/2], and the associated CM point is (-b + sqrt(D))/(2a).

use crate::arith::kronecker;
use num_integer::Integer;

use super::QuadError;

/// Negative discriminant D = D0 * t^2 with D0 fundamental.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Discriminant {
    d: i64,
    d0: i64,
    t: i64,
}

impl Discriminant {
    pub fn new(d: i64) -> Result<Self, QuadError> {
        if d >= 0 || !(d % 4 == 0 || d.rem_euclid(4) == 1) {
            return Err(QuadError::NotADiscriminant(d));
        }
        // Fundamental part: strip square factors, then fix the residue mod 4.
        let mut m = -d;
        let mut sqfree = 1i64;
        let mut t = 1i64;
        let mut p = 2i64;
        while p * p <= m {
            let mut e = 0;
            while m % p == 0 {
                m /= p;
                e += 1;
            }
            sqfree *= p.pow((e % 2) as u32);
            t *= p.pow((e / 2) as u32);
            p += 1;
        }
        sqfree *= m;
        let mut d0 = -sqfree;
        if d0.rem_euclid(4) != 1 {
            d0 *= 4;
            debug_assert_eq!(t % 2, 0);
            t /= 2;
        }
        debug_assert_eq!(d0 * t * t, d);
        Ok(Discriminant { d, d0, t })
    }

    pub fn value(&self) -> i64 {
        self.d
    }

    pub fn fundamental_part(&self) -> i64 {
        self.d0
    }

    pub fn conductor(&self) -> i64 {
        self.t
    }

    pub fn is_fundamental(&self) -> bool {
        self.t == 1
    }

    /// D = 1 mod 8 and 3 does not divide D.
    pub fn yz_admissible(&self) -> bool {
        self.d.rem_euclid(8) == 1 && self.d % 3 != 0
    }
}

/// A reduced primitive positive definite form (a, b, c).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuadClass {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

impl QuadClass {
    pub fn discriminant(&self) -> i64 {
        self.b * self.b - 4 * self.a * self.c
    }

    /// Reduce an arbitrary positive definite form.
    pub fn reduce(mut a: i64, mut b: i64, mut c: i64) -> QuadClass {
        let d = b * b - 4 * a * c;
        debug_assert!(a > 0 && d < 0);
        loop {
            // normalize: -a < b <= a
            if b > a || b <= -a {
                let r = (b + a - 1).div_euclid(2 * a);
                b -= 2 * r * a;
                c = (b * b - d) / (4 * a);
            }
            if a > c {
                let (na, nb) = (c, -b);
                a = na;
                b = nb;
                c = (b * b - d) / (4 * a);
                continue;
            }
            break;
        }
        if a == c && b < 0 {
            b = -b;
        }
        debug_assert!(-a < b && b <= a && a <= c);
        debug_assert_eq!(b * b - 4 * a * c, d);
        QuadClass { a, b, c }
    }

    pub fn is_reduced(&self) -> bool {
        -self.a < self.b
            && self.b <= self.a
            && self.a <= self.c
            && !(self.a == self.c && self.b < 0)
    }

    pub fn is_primitive(&self) -> bool {
        self.a.gcd(&self.b).gcd(&self.c) == 1
    }

    /// Principal (identity) class of discriminant D.
    pub fn principal(d: i64) -> QuadClass {
        if d.rem_euclid(4) == 1 {
            QuadClass::reduce(1, 1, (1 - d) / 4)
        } else {
            QuadClass::reduce(1, 0, -d / 4)
        }
    }

    pub fn inverse(&self) -> QuadClass {
        QuadClass::reduce(self.a, -self.b, self.c)
    }

    /// Value a*x^2 + b*x*y + c*y^2.
    pub fn eval(&self, x: i64, y: i64) -> i64 {
        self.a * x * x + self.b * x * y + self.c * y * y
    }

    /// Representations of n (all integer pairs, both signs).
    pub fn representations(&self, n: i64) -> Vec<(i64, i64)> {
        let mut out = Vec::new();
        if n < 0 {
            return out;
        }
        if n == 0 {
            out.push((0, 0));
            return out;
        }
        let d = self.discriminant();
        // a x^2 + b x y + c y^2 = n  =>  (2ax + by)^2 - d y^2 = 4 a n
        let ybound = {
            let num = 4.0 * self.a as f64 * n as f64 / (-d) as f64;
            num.sqrt() as i64 + 2
        };
        for y in -ybound..=ybound {
            // solve a x^2 + (b y) x + (c y^2 - n) = 0
            let disc = d * y * y + 4 * self.a * n;
            if disc < 0 {
                continue;
            }
            let s = isqrt(disc);
            if s * s != disc {
                continue;
            }
            for sign in [1i64, -1] {
                let num = -self.b * y + sign * s;
                if num.rem_euclid(2 * self.a) == 0 {
                    let x = num / (2 * self.a);
                    if self.eval(x, y) == n {
                        out.push((x, y));
                    }
                }
                if s == 0 {
                    break;
                }
            }
        }
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Gauss composition via concordant representatives.
    pub fn compose(&self, other: &QuadClass) -> QuadClass {
        let d = self.discriminant();
        debug_assert_eq!(d, other.discriminant());
        // Replace `other` by an equivalent form whose leading coefficient is
        // coprime to ours.
        let g = coprime_representative(other, self.a);
        let (a1, b1) = (self.a, self.b);
        let (a2, b2) = (g.a, g.b);
        debug_assert_eq!(a1.gcd(&a2), 1);
        // Common middle coefficient: b = b1 mod 2a1, b = b2 mod 2a2.
        let b = crt2(b1, 2 * a1, b2, 2 * a2).expect("concordance CRT");
        let a3 = a1 * a2;
        let num = b * b - d;
        debug_assert_eq!(num.rem_euclid(4 * a3), 0);
        QuadClass::reduce(a3, b, num / (4 * a3))
    }

    /// self^k (k may be negative).
    pub fn pow(&self, k: i64) -> QuadClass {
        let d = self.discriminant();
        let mut base = if k < 0 { self.inverse() } else { *self };
        let mut k = k.unsigned_abs();
        let mut acc = QuadClass::principal(d);
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.compose(&base);
            }
            base = base.compose(&base);
            k >>= 1;
        }
        acc
    }
}

/// Equivalent form with leading coefficient coprime to `m`, found by scanning
/// small primitive vectors.
fn coprime_representative(f: &QuadClass, m: i64) -> QuadClass {
    for bound in 1i64..200 {
        for x in -bound..=bound {
            for y in -bound..=bound {
                if x.abs().max(y.abs()) != bound && bound > 1 {
                    continue;
                }
                if x.gcd(&y) != 1 {
                    continue;
                }
                let v = f.eval(x, y);
                if v != 0 && v.gcd(&m) == 1 {
                    // extend (x, y) to a unimodular matrix [[x, z], [y, w]]
                    let (gcd, w, z) = extgcd(x, y);
                    debug_assert_eq!(gcd, 1);
                    let (z, w) = (-z, w);
                    debug_assert_eq!(x * w - y * z, 1);
                    let a = f.eval(x, y);
                    let b = 2 * (f.a * x * z + f.c * y * w) + f.b * (x * w + y * z);
                    let c = f.eval(z, w);
                    debug_assert_eq!(b * b - 4 * a * c, f.discriminant());
                    return QuadClass { a, b, c };
                }
            }
        }
    }
    unreachable!("primitive form represents values coprime to any modulus");
}

pub(crate) fn extgcd(a: i64, b: i64) -> (i64, i64, i64) {
    if b == 0 {
        let s = if a < 0 { -1 } else { 1 };
        return (a.abs(), s, 0);
    }
    let (g, x, y) = extgcd(b, a.rem_euclid(b));
    (g, y, x - a.div_euclid(b) * y)
}

/// x = r1 mod m1, x = r2 mod m2 (moduli need not be coprime).
pub(crate) fn crt2(r1: i64, m1: i64, r2: i64, m2: i64) -> Option<i64> {
    let (g, p, _q) = extgcd(m1, m2);
    if (r2 - r1).rem_euclid(g) != 0 {
        return None;
    }
    let lcm = m1 / g * m2;
    let diff = (r2 - r1) / g;
    let x = r1 as i128 + (m1 as i128) * (p as i128 * diff as i128).rem_euclid((m2 / g) as i128);
    Some((x.rem_euclid(lcm as i128)) as i64)
}

pub(crate) fn isqrt(n: i64) -> i64 {
    if n < 0 {
        return -1;
    }
    let mut x = (n as f64).sqrt() as i64;
    while x * x > n {
        x -= 1;
    }
    while (x + 1) * (x + 1) <= n {
        x += 1;
    }
    x
}

/// The full class group of discriminant D, with composition table.
#[derive(Clone, Debug)]
pub struct ClassGroup {
    pub disc: Discriminant,
    pub classes: Vec<QuadClass>,
    table: Vec<Vec<usize>>,
}

impl ClassGroup {
    pub fn new(disc: Discriminant) -> Result<Self, QuadError> {
        let d = disc.value();
        let mut classes = Vec::new();
        let amax = isqrt(-d / 3);
        for a in 1..=amax.max(1) {
            for b in (-a + 1)..=a {
                let num = b * b - d;
                if num % (4 * a) != 0 {
                    continue;
                }
                let c = num / (4 * a);
                if c < a {
                    continue;
                }
                if a == c && b < 0 {
                    continue;
                }
                let f = QuadClass { a, b, c };
                if f.is_primitive() {
                    classes.push(f);
                }
            }
        }
        classes.sort();
        let index: std::collections::HashMap<QuadClass, usize> =
            classes.iter().enumerate().map(|(i, f)| (*f, i)).collect();
        let h = classes.len();
        let mut table = vec![vec![0usize; h]; h];
        for i in 0..h {
            for j in 0..h {
                let f = classes[i].compose(&classes[j]);
                table[i][j] = *index.get(&f).ok_or(QuadError::CompositionEscaped)?;
            }
        }
        Ok(ClassGroup {
            disc,
            classes,
            table,
        })
    }

    pub fn h(&self) -> usize {
        self.classes.len()
    }

    pub fn index_of(&self, f: &QuadClass) -> Option<usize> {
        self.classes.binary_search(f).ok()
    }

    pub fn identity_index(&self) -> usize {
        self.index_of(&QuadClass::principal(self.disc.value()))
            .expect("principal class present")
    }

    pub fn compose_idx(&self, i: usize, j: usize) -> usize {
        self.table[i][j]
    }

    pub fn inverse_idx(&self, i: usize) -> usize {
        self.index_of(&self.classes[i].inverse())
            .expect("inverse class present")
    }

    /// Class of the ideal [a, (b + sqrt(D))/2].
    pub fn class_of_ideal(&self, a: i64, b: i64) -> QuadClass {
        let d = self.disc.value();
        let num = b * b - d;
        assert!(a > 0 && num.rem_euclid(4 * a) == 0, "not an ideal basis");
        QuadClass::reduce(a, b, num / (4 * a))
    }

    /// Ring class number identity h_D = h_{D0} * t * prod_{p|t}(1 - (D0|p)/p),
    /// used as a construction-time cross-check for non-maximal orders.
    pub fn check_class_number_formula(&self, h_fundamental: usize) -> bool {
        let d0 = self.disc.fundamental_part();
        let mut expected = h_fundamental as i64;
        let mut m = self.disc.conductor();
        let mut p = 2i64;
        while m > 1 {
            if m % p == 0 {
                let mut e = 0u32;
                while m % p == 0 {
                    m /= p;
                    e += 1;
                }
                expected *= p.pow(e - 1) * (p - kronecker(d0, p) as i64);
            }
            p += 1;
        }
        self.h() as i64 == expected
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn discriminant_decomposition() {
        let d = Discriminant::new(-175).unwrap();
        assert_eq!(d.fundamental_part(), -7);
        assert_eq!(d.conductor(), 5);
        assert!(d.yz_admissible());
        assert!(Discriminant::new(-31).unwrap().yz_admissible());
        assert!(!Discriminant::new(-15).unwrap().yz_admissible()); // 3 | 15
        assert!(Discriminant::new(-5).is_err()); // -5 = 3 mod 4
    }

    #[test]
    fn admissibility_of_minus_23() {
        // -23 mod 8 = 1 and 3 does not divide 23, so it IS admissible.
        let d = Discriminant::new(-23).unwrap();
        assert!(d.yz_admissible());
    }

    #[test]
    fn class_group_minus_31() {
        let g = ClassGroup::new(Discriminant::new(-31).unwrap()).unwrap();
        assert_eq!(g.h(), 3);
        let forms: Vec<(i64, i64, i64)> = g.classes.iter().map(|f| (f.a, f.b, f.c)).collect();
        assert!(forms.contains(&(1, 1, 8)));
        assert!(forms.contains(&(2, 1, 4)));
        assert!(forms.contains(&(2, -1, 4)));
    }

    #[test]
    fn class_numbers() {
        for (d, h) in [(-7, 1), (-31, 3), (-175, 6), (-23, 3), (-95, 8), (-400, 4)] {
            let g = ClassGroup::new(Discriminant::new(d).unwrap()).unwrap();
            assert_eq!(g.h(), h, "D = {}", d);
        }
    }

    #[test]
    fn group_laws() {
        for d in [-31i64, -47, -95, -175] {
            let g = ClassGroup::new(Discriminant::new(d).unwrap()).unwrap();
            let h = g.h();
            let e = g.identity_index();
            for i in 0..h {
                assert_eq!(g.compose_idx(i, e), i);
                assert_eq!(g.compose_idx(e, i), i);
                assert_eq!(g.compose_idx(i, g.inverse_idx(i)), e);
                // rows and columns are permutations
                let row: std::collections::BTreeSet<usize> =
                    (0..h).map(|j| g.compose_idx(i, j)).collect();
                assert_eq!(row.len(), h);
            }
            // associativity spot check
            for i in 0..h.min(4) {
                for j in 0..h.min(4) {
                    for k in 0..h.min(4) {
                        let ij_k = g.compose_idx(g.compose_idx(i, j), k);
                        let i_jk = g.compose_idx(i, g.compose_idx(j, k));
                        assert_eq!(ij_k, i_jk);
                    }
                }
            }
        }
    }

    #[test]
    fn class_number_formula_for_orders() {
        let h7 = ClassGroup::new(Discriminant::new(-7).unwrap()).unwrap().h();
        for t in [2i64, 3, 4, 5] {
            let d = Discriminant::new(-7 * t * t).unwrap();
            let g = ClassGroup::new(d).unwrap();
            assert!(g.check_class_number_formula(h7), "t = {}", t);
        }
        let h31 = ClassGroup::new(Discriminant::new(-31).unwrap()).unwrap().h();
        for t in [2i64, 3, 4, 5] {
            let d = Discriminant::new(-31 * t * t).unwrap();
            let g = ClassGroup::new(d).unwrap();
            assert!(g.check_class_number_formula(h31), "t = {}", t);
        }
        let h15 = ClassGroup::new(Discriminant::new(-15).unwrap()).unwrap().h();
        for t in [2i64, 3, 4, 5] {
            let d = Discriminant::new(-15 * t * t).unwrap();
            let g = ClassGroup::new(d).unwrap();
            assert!(g.check_class_number_formula(h15), "t = {}", t);
        }
    }

    #[test]
    fn representations_basic() {
        let f = QuadClass { a: 1, b: 1, c: 8 }; // principal, D = -31
        let reps = f.representations(8);
        // x^2 + xy + 8y^2 = 8: (0, 1), (0, -1), (-1, 1), (1, -1)
        assert_eq!(reps.len(), 4);
    }
}
