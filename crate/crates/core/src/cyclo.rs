//! Exact arithmetic in the cyclotomic field Q(zeta_12) and its residue fields.
//!
//! Elements are stored on the power basis (1, z, z^2, z^3) where z is a
//! primitive 12th root of unity with minimal polynomial x^4 - x^2 + 1.
//! Degree overflow in products is folded back with z^4 = z^2 - 1.
//! The coordinates are arbitrary-precision rationals kept in lowest terms,
//! so equality is plain coordinate equality.

use num_bigint::{BigInt, Sign};
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CycloError {
    #[error("division by zero in Q(zeta_12)")]
    DivisionByZero,
    #[error("denominator not invertible modulo {0}")]
    BadDenominator(u8),
    #[error("element is not in the real subfield Q(sqrt 3)")]
    NotReal,
    #[error("element is not rational")]
    NotRational,
}

/// Exact element of Q(zeta_12): `c[0] + c[1] z + c[2] z^2 + c[3] z^3`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycNum {
    c: [BigRational; 4],
}

fn rat_i64(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl CycNum {
    pub fn new(c: [BigRational; 4]) -> Self {
        CycNum { c }
    }

    pub fn coords(&self) -> &[BigRational; 4] {
        &self.c
    }

    pub fn zero() -> Self {
        CycNum::new([
            BigRational::zero(),
            BigRational::zero(),
            BigRational::zero(),
            BigRational::zero(),
        ])
    }

    pub fn one() -> Self {
        CycNum::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        let mut c = Self::zero();
        c.c[0] = rat_i64(n);
        c
    }

    pub fn from_rational(q: BigRational) -> Self {
        let mut c = Self::zero();
        c.c[0] = q;
        c
    }

    /// n/d as a rational scalar.
    pub fn from_frac(n: i64, d: i64) -> Self {
        Self::from_rational(BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    /// zeta, the chosen primitive 12th root of unity.
    pub fn zeta() -> Self {
        Self::zeta_pow(1)
    }

    /// zeta^k for any integer k (k may be negative).
    pub fn zeta_pow(k: i64) -> Self {
        let k = k.rem_euclid(12) as usize;
        // Powers 0..=3 are basis vectors; 4 and 5 fold once; zeta^6 = -1.
        let mut c = Self::zero();
        match k {
            0..=3 => c.c[k] = BigRational::one(),
            4 => {
                c.c[2] = BigRational::one();
                c.c[0] = -BigRational::one();
            }
            5 => {
                c.c[3] = BigRational::one();
                c.c[1] = -BigRational::one();
            }
            _ => c = -Self::zeta_pow((k - 6) as i64),
        }
        c
    }

    /// r = zeta + zeta^{-1}, a square root of 3 (equals 2 zeta - zeta^3).
    pub fn sqrt3() -> Self {
        Self::zeta() + Self::zeta_pow(-1)
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|x| x.is_zero())
    }

    pub fn is_rational(&self) -> bool {
        self.c[1].is_zero() && self.c[2].is_zero() && self.c[3].is_zero()
    }

    pub fn rational_part(&self) -> Result<BigRational, CycloError> {
        if self.is_rational() {
            Ok(self.c[0].clone())
        } else {
            Err(CycloError::NotRational)
        }
    }

    /// Complex conjugation, i.e. the Galois map zeta -> zeta^{-1}.
    pub fn conj(&self) -> Self {
        let [c0, c1, c2, c3] = &self.c;
        CycNum::new([c0 + c2, c1.clone(), -c2, -(c1 + c3)])
    }

    /// Galois map zeta -> zeta^5.
    pub fn galois5(&self) -> Self {
        let [c0, c1, c2, c3] = &self.c;
        CycNum::new([c0 + c2, -c1, -c2, c1 + c3])
    }

    /// Galois map zeta -> zeta^7.
    pub fn galois7(&self) -> Self {
        let [c0, c1, c2, c3] = &self.c;
        CycNum::new([c0.clone(), -c1, c2.clone(), -c3])
    }

    /// Rational field norm, the product of all four Galois conjugates.
    pub fn norm(&self) -> BigRational {
        let n = self.clone() * self.galois5() * self.galois7() * self.conj();
        debug_assert!(n.is_rational());
        n.c[0].clone()
    }

    /// Multiplicative inverse via the norm form: the product of the three
    /// nontrivial Galois conjugates divided by the rational norm.
    pub fn inv(&self) -> Result<Self, CycloError> {
        if self.is_zero() {
            return Err(CycloError::DivisionByZero);
        }
        let adj = self.galois5() * self.galois7() * self.conj();
        let n = self.norm();
        Ok(adj.scale(&n.recip()))
    }

    fn scale(&self, q: &BigRational) -> Self {
        CycNum::new([&self.c[0] * q, &self.c[1] * q, &self.c[2] * q, &self.c[3] * q])
    }

    /// Numerical embedding with zeta = e^{i pi/6}.
    pub fn embed(&self) -> Complex64 {
        let rt3 = 3f64.sqrt();
        let powers = [
            Complex64::new(1.0, 0.0),
            Complex64::new(rt3 / 2.0, 0.5),
            Complex64::new(0.5, rt3 / 2.0),
            Complex64::new(0.0, 1.0),
        ];
        let mut acc = Complex64::new(0.0, 0.0);
        for (q, p) in self.c.iter().zip(powers.iter()) {
            acc += p * rat_to_f64(q);
        }
        acc
    }

    /// Exact sign of an element of the real subfield Q(r) = Q(sqrt 3).
    ///
    /// The element must be fixed by conjugation, i.e. of the form a + b r
    /// with a = c0 and b = c1/2 (forcing c2 = 0 and c1 = -2 c3).
    pub fn real_sign(&self) -> Result<Ordering, CycloError> {
        if !self.c[2].is_zero() || self.c[1] != -(&self.c[3] + &self.c[3]) {
            return Err(CycloError::NotReal);
        }
        let a = self.c[0].clone();
        let b = &self.c[1] / rat_i64(2);
        // sign of a + b sqrt(3), decided by comparing a^2 with 3 b^2.
        let sa = rat_sign(&a);
        let sb = rat_sign(&b);
        Ok(match (sa, sb) {
            (Ordering::Equal, s) => s,
            (s, Ordering::Equal) => s,
            (Ordering::Greater, Ordering::Greater) => Ordering::Greater,
            (Ordering::Less, Ordering::Less) => Ordering::Less,
            (sa, _) => {
                let lhs = &a * &a;
                let rhs = rat_i64(3) * &b * &b;
                match lhs.cmp(&rhs) {
                    Ordering::Greater => sa,
                    Ordering::Less => sa.reverse(),
                    Ordering::Equal => Ordering::Equal,
                }
            }
        })
    }

    /// Reduction into F_4 (zeta -> omega) or F_9 (zeta -> i).
    pub fn reduce_mod(&self, p: u8) -> Result<GFElem, CycloError> {
        let delta_pows: [GFElem; 4] = match p {
            2 => [
                GFElem::new(2, 1, 0),
                GFElem::new(2, 0, 1),
                GFElem::new(2, 1, 1), // omega^2 = 1 + omega
                GFElem::new(2, 1, 0), // omega^3 = 1
            ],
            3 => [
                GFElem::new(3, 1, 0),
                GFElem::new(3, 0, 1),
                GFElem::new(3, 2, 0), // i^2 = -1
                GFElem::new(3, 0, 2), // i^3 = -i
            ],
            _ => panic!("characteristic must be 2 or 3"),
        };
        let mut acc = GFElem::new(p, 0, 0);
        for (q, d) in self.c.iter().zip(delta_pows.iter()) {
            let num = bigint_mod(q.numer(), p);
            let den = bigint_mod(q.denom(), p);
            if den == 0 {
                // The ratio is stored reduced, so num shares no factor p.
                return Err(CycloError::BadDenominator(p));
            }
            let scalar = GFElem::new(p, num, 0) * GFElem::new(p, den, 0).inv();
            acc = acc + scalar * d.clone();
        }
        Ok(acc)
    }

    /// Stable byte serialization used for hashing and cache keys.
    pub fn ser_bytes(&self, out: &mut Vec<u8>) {
        for q in &self.c {
            ser_bigint(q.numer(), out);
            ser_bigint(q.denom(), out);
        }
    }
}

fn ser_bigint(n: &BigInt, out: &mut Vec<u8>) {
    let (sign, bytes) = n.to_bytes_le();
    out.push(match sign {
        Sign::Minus => 0,
        Sign::NoSign => 1,
        Sign::Plus => 2,
    });
    out.extend_from_slice(&(bytes.len() as u32).to_le_bytes());
    out.extend_from_slice(&bytes);
}

fn rat_sign(q: &BigRational) -> Ordering {
    if q.is_zero() {
        Ordering::Equal
    } else if q.is_positive() {
        Ordering::Greater
    } else {
        Ordering::Less
    }
}

pub fn rat_to_f64(q: &BigRational) -> f64 {
    // Good enough for the magnitudes arising here.
    let n = q.numer();
    let d = q.denom();
    bigint_to_f64(n) / bigint_to_f64(d)
}

fn bigint_to_f64(n: &BigInt) -> f64 {
    let (sign, digits) = n.to_u64_digits();
    let mut acc = 0f64;
    for d in digits.iter().rev() {
        acc = acc * 1.8446744073709552e19 + *d as f64;
    }
    if sign == Sign::Minus {
        -acc
    } else {
        acc
    }
}

fn bigint_mod(n: &BigInt, p: u8) -> u8 {
    let m = n % BigInt::from(p as i64);
    let m = if m.sign() == Sign::Minus { m + BigInt::from(p as i64) } else { m };
    let digits = m.to_u64_digits().1;
    if digits.is_empty() {
        0
    } else {
        digits[0] as u8
    }
}

impl Add for CycNum {
    type Output = CycNum;
    fn add(self, rhs: CycNum) -> CycNum {
        &self + &rhs
    }
}

impl Add<&CycNum> for CycNum {
    type Output = CycNum;
    fn add(self, rhs: &CycNum) -> CycNum {
        &self + rhs
    }
}

impl<'a> Add<&'a CycNum> for &'a CycNum {
    type Output = CycNum;
    fn add(self, rhs: &CycNum) -> CycNum {
        CycNum::new([
            &self.c[0] + &rhs.c[0],
            &self.c[1] + &rhs.c[1],
            &self.c[2] + &rhs.c[2],
            &self.c[3] + &rhs.c[3],
        ])
    }
}

impl Sub for CycNum {
    type Output = CycNum;
    fn sub(self, rhs: CycNum) -> CycNum {
        &self - &rhs
    }
}

impl Sub<&CycNum> for CycNum {
    type Output = CycNum;
    fn sub(self, rhs: &CycNum) -> CycNum {
        &self - rhs
    }
}

impl<'a> Sub<&'a CycNum> for &'a CycNum {
    type Output = CycNum;
    fn sub(self, rhs: &CycNum) -> CycNum {
        CycNum::new([
            &self.c[0] - &rhs.c[0],
            &self.c[1] - &rhs.c[1],
            &self.c[2] - &rhs.c[2],
            &self.c[3] - &rhs.c[3],
        ])
    }
}

impl Neg for CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        CycNum::new([-&self.c[0], -&self.c[1], -&self.c[2], -&self.c[3]])
    }
}

impl Neg for &CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        CycNum::new([-&self.c[0], -&self.c[1], -&self.c[2], -&self.c[3]])
    }
}

impl Mul for CycNum {
    type Output = CycNum;
    fn mul(self, rhs: CycNum) -> CycNum {
        &self * &rhs
    }
}

impl Mul<&CycNum> for CycNum {
    type Output = CycNum;
    fn mul(self, rhs: &CycNum) -> CycNum {
        &self * rhs
    }
}

impl<'a> Mul<&'a CycNum> for &'a CycNum {
    type Output = CycNum;
    fn mul(self, rhs: &CycNum) -> CycNum {
        let mut conv = [
            BigRational::zero(),
            BigRational::zero(),
            BigRational::zero(),
            BigRational::zero(),
            BigRational::zero(),
            BigRational::zero(),
            BigRational::zero(),
        ];
        for i in 0..4 {
            if self.c[i].is_zero() {
                continue;
            }
            for j in 0..4 {
                if rhs.c[j].is_zero() {
                    continue;
                }
                conv[i + j] += &self.c[i] * &rhs.c[j];
            }
        }
        // Fold with z^4 = z^2 - 1, z^5 = z^3 - z, z^6 = -1.
        let mut c = [
            conv[0].clone(),
            conv[1].clone(),
            conv[2].clone(),
            conv[3].clone(),
        ];
        c[2] += &conv[4];
        c[0] -= &conv[4];
        c[3] += &conv[5];
        c[1] -= &conv[5];
        c[0] -= &conv[6];
        CycNum::new(c)
    }
}

impl Div for CycNum {
    type Output = Result<CycNum, CycloError>;
    fn div(self, rhs: CycNum) -> Result<CycNum, CycloError> {
        Ok(&self * &rhs.inv()?)
    }
}

impl fmt::Debug for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({} + {} z + {} z^2 + {} z^3)",
            self.c[0], self.c[1], self.c[2], self.c[3]
        )
    }
}

impl fmt::Display for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Element of F_4 = F_2[omega] (1 + omega + omega^2 = 0) or
/// F_9 = F_3[i] (i^2 = -1), stored as a + b delta with residues mod p.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct GFElem {
    pub p: u8,
    pub a: u8,
    pub b: u8,
}

impl GFElem {
    pub fn new(p: u8, a: u8, b: u8) -> Self {
        GFElem {
            p,
            a: a % p,
            b: b % p,
        }
    }

    pub fn zero(p: u8) -> Self {
        GFElem::new(p, 0, 0)
    }

    pub fn one(p: u8) -> Self {
        GFElem::new(p, 1, 0)
    }

    pub fn is_zero(&self) -> bool {
        self.a == 0 && self.b == 0
    }

    /// Frobenius x -> x^p, which is the nontrivial field automorphism.
    pub fn frob(&self) -> Self {
        match self.p {
            2 => GFElem::new(2, (self.a + self.b) % 2, self.b),
            3 => GFElem::new(3, self.a, (3 - self.b) % 3),
            _ => unreachable!(),
        }
    }

    /// Inverse by Fermat exponentiation x^(q-2), q = p^2.
    pub fn inv(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero in GF({})", self.p * self.p);
        let e = if self.p == 2 { 2u32 } else { 7u32 };
        let mut acc = GFElem::one(self.p);
        for _ in 0..e {
            acc = acc * *self;
        }
        acc
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = *self;
        let mut acc = GFElem::one(self.p);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }
}

impl Add for GFElem {
    type Output = GFElem;
    fn add(self, rhs: GFElem) -> GFElem {
        assert_eq!(self.p, rhs.p);
        GFElem::new(self.p, (self.a + rhs.a) % self.p, (self.b + rhs.b) % self.p)
    }
}

impl Neg for GFElem {
    type Output = GFElem;
    fn neg(self) -> GFElem {
        GFElem::new(self.p, (self.p - self.a) % self.p, (self.p - self.b) % self.p)
    }
}

impl Sub for GFElem {
    type Output = GFElem;
    fn sub(self, rhs: GFElem) -> GFElem {
        self + (-rhs)
    }
}

impl Mul for GFElem {
    type Output = GFElem;
    fn mul(self, rhs: GFElem) -> GFElem {
        assert_eq!(self.p, rhs.p);
        let (a, b, c, d) = (
            self.a as u16,
            self.b as u16,
            rhs.a as u16,
            rhs.b as u16,
        );
        let p = self.p as u16;
        match self.p {
            2 => {
                // (a + b w)(c + d w) with w^2 = 1 + w.
                let lo = (a * c + b * d) % 2;
                let hi = (a * d + b * c + b * d) % 2;
                GFElem::new(2, lo as u8, hi as u8)
            }
            3 => {
                // (a + b i)(c + d i) with i^2 = -1.
                let lo = (a * c + 2 * b * d) % p;
                let hi = (a * d + b * c) % p;
                GFElem::new(3, lo as u8, hi as u8)
            }
            _ => unreachable!(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn approx_eq(a: Complex64, b: Complex64, tol: f64) -> bool {
        (a - b).norm() < tol
    }

    #[test]
    fn zeta_inverse_is_zeta_minus_zeta_cubed() {
        let z = CycNum::zeta();
        let zinv = z.inv().unwrap();
        assert_eq!(zinv, CycNum::zeta() - CycNum::zeta_pow(3));
        assert_eq!(z * zinv, CycNum::one());
    }

    #[test]
    fn r_squares_to_three() {
        // Independent oracle: the numerical embedding must sit at sqrt(3).
        let r = CycNum::sqrt3();
        assert_eq!(r, CycNum::from_int(2) * CycNum::zeta() - CycNum::zeta_pow(3));
        assert_eq!(&r * &r, CycNum::from_int(3));
        assert!(approx_eq(r.embed(), Complex64::new(1.7320508075688772, 0.0), 1e-12));
    }

    #[test]
    fn c_times_conj_is_two_minus_r() {
        // c = zeta^2 - zeta, the slope parameter of the order-3 mirror.
        let c = CycNum::zeta_pow(2) - CycNum::zeta();
        let want = CycNum::from_int(2) - CycNum::sqrt3();
        assert_eq!(&c * &c.conj(), want);
        let emb = (&c * &c.conj()).embed();
        assert!(approx_eq(emb, Complex64::new(2.0 - 1.7320508075688772, 0.0), 1e-12));
        // And c equals (r-1)(zeta^3-1)/2.
        let alt = (CycNum::sqrt3() - CycNum::one())
            * (CycNum::zeta_pow(3) - CycNum::one())
            * CycNum::from_frac(1, 2);
        assert_eq!(c, alt);
    }

    #[test]
    fn conj_fixes_rationals_and_r() {
        assert_eq!(CycNum::one().conj(), CycNum::one());
        assert_eq!(CycNum::sqrt3().conj(), CycNum::sqrt3());
        let z = CycNum::zeta();
        assert_eq!(z.conj(), CycNum::zeta() - CycNum::zeta_pow(3));
        // conj is an involution and e^{i pi/6} maps to e^{-i pi/6}.
        assert_eq!(z.conj().conj(), z);
        assert!(approx_eq(
            z.conj().embed(),
            Complex64::new(1.7320508075688772 / 2.0, -0.5),
            1e-12
        ));
    }

    #[test]
    fn zeta_six_is_minus_one_by_repeated_mul() {
        let mut acc = CycNum::one();
        for _ in 0..6 {
            acc = acc * CycNum::zeta();
        }
        assert_eq!(acc, -CycNum::one());
        let mut acc12 = acc.clone();
        for _ in 0..6 {
            acc12 = acc12 * CycNum::zeta();
        }
        assert_eq!(acc12, CycNum::one());
    }

    #[test]
    fn embedding_anchors() {
        assert!(approx_eq(CycNum::zeta_pow(3).embed(), Complex64::new(0.0, 1.0), 1e-12));
        assert!(approx_eq(
            (CycNum::one() - CycNum::sqrt3()).embed(),
            Complex64::new(-0.7320508075688772, 0.0),
            1e-12
        ));
    }

    #[test]
    fn reduction_anchors() {
        let one = CycNum::one();
        assert_eq!(one.reduce_mod(2).unwrap(), GFElem::one(2));
        assert_eq!(one.reduce_mod(3).unwrap(), GFElem::one(3));
        assert_eq!(CycNum::zeta().reduce_mod(2).unwrap(), GFElem::new(2, 0, 1));
        assert_eq!(CycNum::zeta().reduce_mod(3).unwrap(), GFElem::new(3, 0, 1));
        // 1/2 reduces mod 3 (2^-1 = 2) but not mod 2.
        let half = CycNum::from_frac(1, 2);
        assert_eq!(half.reduce_mod(3).unwrap(), GFElem::new(3, 2, 0));
        assert_eq!(half.reduce_mod(2), Err(CycloError::BadDenominator(2)));
    }

    #[test]
    fn real_sign_exact() {
        assert_eq!(CycNum::sqrt3().real_sign().unwrap(), Ordering::Greater);
        let x = CycNum::one() - CycNum::sqrt3(); // 1 - sqrt(3) < 0
        assert_eq!(x.real_sign().unwrap(), Ordering::Less);
        assert_eq!(CycNum::zero().real_sign().unwrap(), Ordering::Equal);
        // 7/4 - sqrt(3) > 0 needs the squared comparison branch.
        let y = CycNum::from_frac(7, 4) - CycNum::sqrt3();
        assert_eq!(y.real_sign().unwrap(), Ordering::Greater);
        assert!(CycNum::zeta().real_sign().is_err());
    }

    #[test]
    fn gf_field_axioms_smoke() {
        for p in [2u8, 3] {
            let q = (p as u16 * p as u16) as u8;
            let mut elems = vec![];
            for a in 0..p {
                for b in 0..p {
                    elems.push(GFElem::new(p, a, b));
                }
            }
            assert_eq!(elems.len(), q as usize);
            for e in &elems {
                if !e.is_zero() {
                    assert_eq!(*e * e.inv(), GFElem::one(p));
                    // multiplicative order divides q - 1
                    assert_eq!(e.pow(q as u64 - 1), GFElem::one(p));
                }
                assert_eq!(e.frob().frob(), *e);
            }
        }
    }
}
