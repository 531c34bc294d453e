//! Exact arithmetic in Q and Q(z).
//!
//! A [`Scalar`] is a rational function num/den in one variable z with
//! arbitrary-precision rational coefficients, kept in canonical form:
//! gcd(num, den) = 1 and den monic. Equality is therefore structural.
//! The variable z stands for q, hbar or t depending on the computation;
//! only one symbolic variable is ever alive at a time, all remaining
//! parameters are specialized to rationals up front.

use num::{BigInt, BigRational, One, Signed, Zero};
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use crate::error::{Error, Result};

/// Arbitrary-precision rational number.
pub type Rational = BigRational;

/// Convenience constructor for small rationals.
pub fn rat(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Convenience constructor for integers.
pub fn rint(n: i64) -> Rational {
    BigRational::from(BigInt::from(n))
}

/// Dense univariate polynomial over Q, ascending degree order.
///
/// Canonical form: the coefficient vector is empty for the zero polynomial
/// and has a nonzero last element otherwise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    coeffs: Vec<Rational>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        if c.is_zero() {
            Poly::zero()
        } else {
            Poly { coeffs: vec![c] }
        }
    }

    /// The monomial c * z^k. Zero coefficient gives the zero polynomial.
    pub fn monomial(c: Rational, k: usize) -> Self {
        if c.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![Rational::zero(); k + 1];
        coeffs[k] = c;
        Poly { coeffs }
    }

    pub fn from_coeffs(coeffs: Vec<Rational>) -> Self {
        let mut p = Poly { coeffs };
        p.normalize();
        p
    }

    fn normalize(&mut self) {
        while self.coeffs.last().map_or(false, |c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn leading_coeff(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for k in 0..n {
            coeffs.push(self.coeff(k) + other.coeff(k));
        }
        Poly::from_coeffs(coeffs)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for k in 0..n {
            coeffs.push(self.coeff(k) - other.coeff(k));
        }
        Poly::from_coeffs(coeffs)
    }

    pub fn neg(&self) -> Poly {
        Poly {
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                coeffs[i + j] += a * b;
            }
        }
        Poly::from_coeffs(coeffs)
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Euclidean division: self = q * div + r with deg r < deg div.
    pub fn divrem(&self, div: &Poly) -> (Poly, Poly) {
        assert!(!div.is_zero(), "polynomial division by zero");
        let dlead = div.leading_coeff().unwrap().clone();
        let ddeg = div.degree().unwrap();
        let mut rem = self.clone();
        let mut quot = Poly::zero();
        while let Some(rdeg) = rem.degree() {
            if rdeg < ddeg {
                break;
            }
            let c = rem.leading_coeff().unwrap() / &dlead;
            let shift = rdeg - ddeg;
            let term = Poly::monomial(c, shift);
            rem = rem.sub(&term.mul(div));
            quot = quot.add(&term);
        }
        (quot, rem)
    }

    /// Monic greatest common divisor by the Euclidean algorithm.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.divrem(&b);
            a = b;
            b = r;
        }
        a.into_monic()
    }

    fn into_monic(mut self) -> Poly {
        if let Some(lead) = self.leading_coeff().cloned() {
            if !lead.is_one() {
                for c in &mut self.coeffs {
                    *c = &*c / &lead;
                }
            }
        }
        self
    }

    pub fn eval(&self, point: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * point + c;
        }
        acc
    }

    fn fmt_with(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if out.is_empty() {
                if c.is_negative() {
                    out.push('-');
                }
            } else if c.is_negative() {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            let unit_coeff = mag.is_one() && k > 0;
            if !unit_coeff {
                out.push_str(&mag.to_string());
            }
            if k > 0 {
                if !unit_coeff {
                    out.push('*');
                }
                out.push_str(var);
                if k > 1 {
                    out.push_str(&format!("^{}", k));
                }
            }
        }
        out
    }
}

/// Element of the rational function field Q(z), canonical form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Scalar {
    num: Poly,
    den: Poly,
}

impl Scalar {
    fn new(num: Poly, den: Poly) -> Scalar {
        assert!(!den.is_zero(), "scalar with zero denominator");
        let mut s = Scalar { num, den };
        s.reduce();
        s
    }

    fn reduce(&mut self) {
        if self.num.is_zero() {
            self.den = Poly::one();
            return;
        }
        let g = self.num.gcd(&self.den);
        if g.degree() > Some(0) || !g.coeff(0).is_one() {
            self.num = self.num.divrem(&g).0;
            self.den = self.den.divrem(&g).0;
        }
        let lead = self.den.leading_coeff().unwrap().clone();
        if !lead.is_one() {
            self.den = self.den.scale(&(Rational::one() / &lead));
            self.num = self.num.scale(&(Rational::one() / &lead));
        }
    }

    pub fn zero() -> Scalar {
        Scalar {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    pub fn one() -> Scalar {
        Scalar {
            num: Poly::one(),
            den: Poly::one(),
        }
    }

    pub fn from_rat(c: Rational) -> Scalar {
        Scalar {
            num: Poly::constant(c),
            den: Poly::one(),
        }
    }

    pub fn from_int(n: i64) -> Scalar {
        Scalar::from_rat(rint(n))
    }

    /// The symbolic variable z.
    pub fn z() -> Scalar {
        Scalar {
            num: Poly::monomial(Rational::one(), 1),
            den: Poly::one(),
        }
    }

    /// z^k for any integer k, negative exponents included.
    pub fn z_pow(k: i64) -> Scalar {
        if k >= 0 {
            Scalar {
                num: Poly::monomial(Rational::one(), k as usize),
                den: Poly::one(),
            }
        } else {
            Scalar {
                num: Poly::one(),
                den: Poly::monomial(Rational::one(), (-k) as usize),
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self == &Scalar::one()
    }

    /// True when the scalar is a constant (degree-zero) rational.
    pub fn as_rational(&self) -> Option<Rational> {
        if self.den.degree() == Some(0) && self.num.degree().map_or(true, |d| d == 0) {
            Some(self.num.coeff(0) / self.den.coeff(0))
        } else {
            None
        }
    }

    pub fn add(&self, other: &Scalar) -> Scalar {
        Scalar::new(
            self.num.mul(&other.den).add(&other.num.mul(&self.den)),
            self.den.mul(&other.den),
        )
    }

    pub fn sub(&self, other: &Scalar) -> Scalar {
        Scalar::new(
            self.num.mul(&other.den).sub(&other.num.mul(&self.den)),
            self.den.mul(&other.den),
        )
    }

    pub fn mul(&self, other: &Scalar) -> Scalar {
        Scalar::new(self.num.mul(&other.num), self.den.mul(&other.den))
    }

    pub fn neg(&self) -> Scalar {
        Scalar {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn div(&self, other: &Scalar) -> Result<Scalar> {
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Scalar::new(
            self.num.mul(&other.den),
            self.den.mul(&other.num),
        ))
    }

    pub fn inv(&self) -> Result<Scalar> {
        Scalar::one().div(self)
    }

    /// Integer power, negative exponents allowed for nonzero scalars.
    pub fn pow(&self, k: i64) -> Result<Scalar> {
        if k < 0 {
            return self.inv()?.pow(-k);
        }
        let mut acc = Scalar::one();
        for _ in 0..k {
            acc = acc.mul(self);
        }
        Ok(acc)
    }

    /// Exact evaluation at a rational point; poles are an error.
    pub fn eval_at(&self, point: &Rational) -> Result<Rational> {
        let d = self.den.eval(point);
        if d.is_zero() {
            return Err(Error::Pole(point.to_string()));
        }
        Ok(self.num.eval(point) / d)
    }

    /// Renders using the given variable name, e.g. "(q^2+1)/q".
    pub fn display_with(&self, var: &str) -> String {
        if self.num.is_zero() {
            return "0".to_string();
        }
        let num_s = self.num.fmt_with(var);
        if self.den == Poly::one() {
            return num_s;
        }
        let den_s = self.den.fmt_with(var);
        let num_wrapped = if self.num.coeffs.iter().filter(|c| !c.is_zero()).count() > 1 {
            format!("({})", num_s)
        } else {
            num_s
        };
        let den_wrapped = if self.den.coeffs.iter().filter(|c| !c.is_zero()).count() > 1 {
            format!("({})", den_s)
        } else {
            den_s
        };
        format!("{}/{}", num_wrapped, den_wrapped)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_with("z"))
    }
}

macro_rules! scalar_binop {
    ($trait:ident, $method:ident, $imp:ident) => {
        impl $trait for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                Scalar::$imp(self, rhs)
            }
        }
    };
}

scalar_binop!(Add, add, add);
scalar_binop!(Sub, sub, sub);
scalar_binop!(Mul, mul, mul);

impl Div for &Scalar {
    type Output = Scalar;
    fn div(self, rhs: &Scalar) -> Scalar {
        Scalar::div(self, rhs).expect("division by zero scalar")
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::neg(self)
    }
}

/// q-integer in the one-sided convention: (z^m - 1)/(z - 1).
pub fn qnum(m: i64) -> Scalar {
    let num = Scalar::z_pow(m).sub(&Scalar::one());
    let den = Scalar::z().sub(&Scalar::one());
    num.div(&den).expect("z - 1 is nonzero")
}

/// q-integer in the symmetric convention: (z^m - z^-m)/(z - z^-1).
pub fn qnum_sym(m: i64) -> Scalar {
    let num = Scalar::z_pow(m).sub(&Scalar::z_pow(-m));
    let den = Scalar::z().sub(&Scalar::z_pow(-1));
    num.div(&den).expect("z - 1/z is nonzero")
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q() -> Scalar {
        Scalar::z()
    }

    #[test]
    fn test_product_of_linear_factors() {
        let a = q().sub(&Scalar::one());
        let b = q().add(&Scalar::one());
        let expect = q().mul(&q()).sub(&Scalar::one());
        assert_eq!(a.mul(&b), expect);
    }

    #[test]
    fn test_gcd_normalization() {
        let num = q().mul(&q()).sub(&Scalar::one());
        let den = q().sub(&Scalar::one());
        assert_eq!(num.div(&den).unwrap(), q().add(&Scalar::one()));
    }

    #[test]
    fn test_division_by_zero() {
        assert!(Scalar::one().div(&Scalar::zero()).is_err());
    }

    #[test]
    fn test_qnum_values() {
        assert!(qnum(0).is_zero());
        // 1 + z + z^2
        let expect = Scalar::one().add(&q()).add(&q().mul(&q()));
        assert_eq!(qnum(3), expect);
        // -1/z
        assert_eq!(qnum(-1), Scalar::z_pow(-1).neg());
    }

    #[test]
    fn test_qnum_sym_values() {
        assert!(qnum_sym(0).is_zero());
        assert_eq!(qnum_sym(1), Scalar::one());
        assert_eq!(qnum_sym(2), q().add(&Scalar::z_pow(-1)));
    }

    #[test]
    fn test_eval_at() {
        let s = q().mul(&q()).add(&Scalar::one()).div(&q()).unwrap();
        assert_eq!(s.eval_at(&rint(2)).unwrap(), rat(5, 2));
        assert!(Scalar::one()
            .div(&q().sub(&Scalar::one()))
            .unwrap()
            .eval_at(&rint(1))
            .is_err());
    }

    #[test]
    fn test_qnum_classical_limit() {
        for m in -10i64..=10 {
            assert_eq!(qnum(m).eval_at(&rint(1)).unwrap(), rint(m));
        }
    }

    #[test]
    fn test_qnum_sym_relation_to_qnum() {
        // m-sym = z^{1-m} * qnum(2m)/qnum(2) for m >= 1.
        for m in 1i64..=6 {
            let rhs = Scalar::z_pow(1 - m)
                .mul(&qnum(2 * m))
                .div(&qnum(2))
                .unwrap();
            assert_eq!(qnum_sym(m), rhs);
        }
    }

    #[test]
    fn test_display() {
        let s = q().mul(&q()).add(&Scalar::one()).div(&q()).unwrap();
        assert_eq!(s.display_with("q"), "(q^2 + 1)/q");
        assert_eq!(qnum(-1).display_with("q"), "-1/q");
        assert_eq!(Scalar::from_rat(rat(3, 2)).display_with("q"), "3/2");
    }

    fn arb_scalar() -> impl Strategy<Value = Scalar> {
        let coeff = (-4i64..=4).prop_map(rint);
        let poly = prop::collection::vec(coeff, 0..4).prop_map(Poly::from_coeffs);
        (poly.clone(), poly).prop_map(|(n, d)| {
            let den = if d.is_zero() { Poly::one() } else { d };
            Scalar::new(n, den)
        })
    }

    proptest! {
        #[test]
        fn prop_field_axioms(a in arb_scalar(), b in arb_scalar(), c in arb_scalar()) {
            prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
            prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            prop_assert_eq!(a.add(&b), b.add(&a));
            prop_assert_eq!(a.mul(&b), b.mul(&a));
            prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
            prop_assert_eq!(a.sub(&a), Scalar::zero());
            if !a.is_zero() {
                prop_assert_eq!(a.mul(&a.inv().unwrap()), Scalar::one());
            }
        }

        #[test]
        fn prop_canonical_equality(a in arb_scalar(), b in arb_scalar()) {
            // a/b computed two ways lands in the same canonical form
            if !b.is_zero() {
                let x = a.div(&b).unwrap();
                let y = a.mul(&b.inv().unwrap());
                prop_assert_eq!(x, y);
            }
        }
    }
}
