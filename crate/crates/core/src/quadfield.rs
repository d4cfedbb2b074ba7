//! Exact arithmetic in `Q(√D)` and the Binet evaluation of the transformed
//! k-Lucas sequence.
//!
//! For `D = k² + 4` the characteristic roots of the order-2 recurrence are
//! `λ₁,₂ = ((2r+k) ± √D)/2`, and `b_n = λ₁ⁿ + λ₂ⁿ`. Everything here is
//! symbolic: the irrational parts cancel exactly rather than to within a
//! tolerance.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::transform::TransformParams;
use crate::{Error, Result};

/// Reduced fraction with positive denominator.
pub type Rational = BigRational;

/// `a + b√D` with rational `a`, `b` and `D` a positive non-square integer.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuadElement {
    a: Rational,
    b: Rational,
    d: BigInt,
}

fn is_square(d: &BigInt) -> bool {
    let s = d.sqrt();
    &s * &s == *d
}

impl QuadElement {
    pub fn new(a: Rational, b: Rational, d: impl Into<BigInt>) -> Result<Self> {
        let d = d.into();
        if !d.is_positive() || is_square(&d) {
            return Err(Error::SquareRadicand(d));
        }
        Ok(QuadElement { a, b, d })
    }

    /// Embeds the rational `a` as `a + 0√D`.
    pub fn rational(a: Rational, d: impl Into<BigInt>) -> Result<Self> {
        Self::new(a, Rational::zero(), d)
    }

    pub fn one(d: impl Into<BigInt>) -> Result<Self> {
        Self::rational(Rational::one(), d)
    }

    pub fn rational_part(&self) -> &Rational {
        &self.a
    }

    pub fn irrational_part(&self) -> &Rational {
        &self.b
    }

    pub fn radicand(&self) -> &BigInt {
        &self.d
    }

    fn same_field(&self, other: &Self) -> Result<()> {
        if self.d != other.d {
            return Err(Error::FieldMismatch(self.d.clone(), other.d.clone()));
        }
        Ok(())
    }

    fn with_parts(&self, a: Rational, b: Rational) -> Self {
        QuadElement {
            a,
            b,
            d: self.d.clone(),
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        Ok(self.with_parts(&self.a + &other.a, &self.b + &other.b))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        Ok(self.with_parts(&self.a - &other.a, &self.b - &other.b))
    }

    /// `(a+b√D)(c+e√D) = (ac + beD) + (ae + bc)√D`
    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        Ok(self.mul_unchecked(other))
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        let d = Rational::from_integer(self.d.clone());
        self.with_parts(
            &self.a * &other.a + &self.b * &other.b * d,
            &self.a * &other.b + &self.b * &other.a,
        )
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        Ok(self.mul_unchecked(&other.inverse()?))
    }

    pub fn neg(&self) -> Self {
        self.with_parts(-&self.a, -&self.b)
    }

    /// `a − b√D`
    pub fn conj(&self) -> Self {
        self.with_parts(self.a.clone(), -&self.b)
    }

    /// `(a+b√D)(a−b√D) = a² − b²D`
    pub fn norm(&self) -> Rational {
        &self.a * &self.a - &self.b * &self.b * Rational::from_integer(self.d.clone())
    }

    pub fn inverse(&self) -> Result<Self> {
        let n = self.norm();
        if n.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let c = self.conj();
        Ok(self.with_parts(c.a / &n, c.b / n))
    }

    /// `x^n` by binary powering; `x^0 = 1`.
    pub fn pow(&self, mut n: u64) -> Self {
        let mut acc = self.with_parts(Rational::one(), Rational::zero());
        let mut base = self.clone();
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul_unchecked(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul_unchecked(&base);
            }
        }
        acc
    }

    /// The value as an integer, if the irrational part is zero and the
    /// rational part has denominator 1.
    pub fn to_integer(&self) -> Option<BigInt> {
        (self.b.is_zero() && self.a.is_integer()).then(|| self.a.to_integer())
    }
}

impl fmt::Display for QuadElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.b.is_negative() { '-' } else { '+' };
        write!(f, "{} {} {}√{}", self.a, sign, self.b.abs(), self.d)
    }
}

/// Roots `λ₁ = ((2r+k) + √(k²+4))/2`, `λ₂ = ((2r+k) − √(k²+4))/2` of
/// `λ² − (2r+k)λ + (r²+kr−1) = 0`.
pub fn char_roots(params: &TransformParams) -> (QuadElement, QuadElement) {
    let half = Rational::new(BigInt::one(), BigInt::from(2));
    let a = Rational::from_integer(params.trace()) * &half;
    let lambda1 = QuadElement::new(a, half, params.disc()).expect("k²+4 is a non-square for k ≠ 0");
    let lambda2 = lambda1.conj();
    (lambda1, lambda2)
}

/// `b_n = λ₁ⁿ + λ₂ⁿ`, evaluated exactly in `Q(√(k²+4))`.
pub fn binet_term(params: &TransformParams, n: u64) -> Result<BigInt> {
    let (l1, l2) = char_roots(params);
    let sum = l1.pow(n).checked_add(&l2.pow(n))?;
    sum.to_integer().ok_or_else(|| {
        Error::InternalInconsistency(format!(
            "Binet sum for k={}, r={}, n={n} is not an integer: {sum}",
            params.k(),
            params.r()
        ))
    })
}

/// `(λ₁ⁿ − λ₂ⁿ)/(λ₁ − λ₂)`, the Fibonacci-type companion of [`binet_term`].
pub fn binet_fibonacci_term(params: &TransformParams, n: u64) -> Result<BigInt> {
    let (l1, l2) = char_roots(params);
    let num = l1.pow(n).checked_sub(&l2.pow(n))?;
    let value = num.checked_div(&l1.checked_sub(&l2)?)?;
    value.to_integer().ok_or_else(|| {
        Error::InternalInconsistency(format!(
            "Fibonacci-type Binet value for k={}, r={}, n={n} is not an integer: {value}",
            params.k(),
            params.r()
        ))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::recurrences::k_lucas_spec;
    use crate::transform::{iterated_fibonacci_spec, iterated_lucas_spec};
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn el(a: Rational, b: Rational, d: i64) -> QuadElement {
        QuadElement::new(a, b, d).unwrap()
    }

    fn params(k: i64, r: u64) -> TransformParams {
        TransformParams::new(k, r).unwrap()
    }

    #[test]
    fn rejects_square_radicands() {
        for d in [0, 1, 4, 9, 16, -5] {
            assert!(matches!(QuadElement::one(d), Err(Error::SquareRadicand(_))));
        }
        assert!(QuadElement::one(5).is_ok());
    }

    #[test]
    fn mul_examples() {
        let x = el(q(1, 1), q(1, 1), 5);
        assert_eq!(x.checked_mul(&x.conj()).unwrap(), el(q(-4, 1), q(0, 1), 5));

        let phi = el(q(1, 2), q(1, 2), 5);
        let phi2 = phi.checked_mul(&phi).unwrap();
        assert_eq!(phi2, el(q(3, 2), q(1, 2), 5));
        assert_eq!(
            phi2,
            phi.checked_add(&QuadElement::one(5).unwrap()).unwrap()
        );

        let c = QuadElement::rational(q(3, 7), 11).unwrap();
        let e = QuadElement::rational(q(-2, 5), 11).unwrap();
        assert_eq!(
            c.checked_mul(&e).unwrap(),
            QuadElement::rational(q(-6, 35), 11).unwrap()
        );
    }

    #[test]
    fn mismatched_fields_rejected() {
        let x = QuadElement::one(5).unwrap();
        let y = QuadElement::one(8).unwrap();
        assert!(matches!(x.checked_mul(&y), Err(Error::FieldMismatch(_, _))));
        assert!(matches!(x.checked_add(&y), Err(Error::FieldMismatch(_, _))));
    }

    #[test]
    fn pow_examples() {
        let x = el(q(3, 2), q(1, 2), 5);
        assert_eq!(x.pow(0), QuadElement::one(5).unwrap());
        assert_eq!(x.pow(2), el(q(7, 2), q(3, 2), 5));
        assert_eq!(x.pow(3), el(q(9, 1), q(4, 1), 5));
        assert_eq!(x.pow(3), x.pow(2).checked_mul(&x).unwrap());
    }

    #[test]
    fn inverse_and_division() {
        let x = el(q(2, 3), q(-5, 7), 13);
        let one = QuadElement::one(13).unwrap();
        assert_eq!(x.checked_mul(&x.inverse().unwrap()).unwrap(), one);
        let zero = QuadElement::rational(Rational::zero(), 13).unwrap();
        assert_eq!(zero.inverse(), Err(Error::DivisionByZero));
    }

    #[test]
    fn char_roots_examples() {
        let (l1, l2) = char_roots(&params(1, 1));
        assert_eq!(l1, el(q(3, 2), q(1, 2), 5));
        assert_eq!(l2, el(q(3, 2), q(-1, 2), 5));
        assert_eq!(l1.checked_add(&l2).unwrap().to_integer(), Some(3.into()));
        assert_eq!(l1.checked_mul(&l2).unwrap().to_integer(), Some(1.into()));

        let (g1, g2) = char_roots(&params(1, 0));
        assert_eq!(g1, el(q(1, 2), q(1, 2), 5));
        assert_eq!(g2, el(q(1, 2), q(-1, 2), 5));

        let (p1, p2) = char_roots(&params(2, 1));
        assert_eq!(p1, el(q(2, 1), q(1, 2), 8));
        assert_eq!(p2, el(q(2, 1), q(-1, 2), 8));
        assert_eq!(p1.checked_add(&p2).unwrap().to_integer(), Some(4.into()));
        assert_eq!(p1.checked_mul(&p2).unwrap().to_integer(), Some(2.into()));
    }

    #[test]
    fn roots_satisfy_characteristic_equation() {
        for k in [-7, -1, 1, 2, 5] {
            for r in 0..6 {
                let p = params(k, r);
                let (l1, l2) = char_roots(&p);
                assert_eq!(l1.checked_add(&l2).unwrap().to_integer(), Some(p.trace()));
                assert_eq!(l1.checked_mul(&l2).unwrap().to_integer(), Some(p.det()));
                // shifting the r = 0 roots by r
                let (a1, a2) = char_roots(&params(k, 0));
                let shift =
                    QuadElement::rational(Rational::from_integer(r.into()), p.disc()).unwrap();
                assert_eq!(a1.checked_add(&shift).unwrap(), l1);
                assert_eq!(a2.checked_add(&shift).unwrap(), l2);
            }
        }
    }

    #[test]
    fn binet_examples() {
        assert_eq!(binet_term(&params(1, 1), 3).unwrap(), BigInt::from(18));
        assert_eq!(binet_term(&params(4, 3), 0).unwrap(), BigInt::from(2));
        assert_eq!(binet_term(&params(1, 2), 4).unwrap(), BigInt::from(175));
    }

    #[test]
    fn binet_matches_recurrence() {
        for k in [-3, 1, 2, 3, 4, 5] {
            for r in 0..5 {
                let p = params(k, r);
                let terms = iterated_lucas_spec(&p).terms(51);
                let fib = iterated_fibonacci_spec(&p).terms(51);
                for n in 0..=50u64 {
                    assert_eq!(binet_term(&p, n).unwrap(), terms[n as usize]);
                    assert_eq!(binet_fibonacci_term(&p, n).unwrap(), fib[n as usize]);
                }
            }
        }
        let l = k_lucas_spec(1).unwrap().terms(10);
        for (n, t) in l.iter().enumerate() {
            assert_eq!(&binet_term(&params(1, 0), n as u64).unwrap(), t);
        }
    }

    fn arb_element() -> impl Strategy<Value = QuadElement> {
        (-40i64..40, 1i64..12, -40i64..40, 1i64..12)
            .prop_map(|(an, ad, bn, bd)| el(q(an, ad), q(bn, bd), 7))
    }

    proptest! {
        #[test]
        fn conj_distributes(x in arb_element(), y in arb_element()) {
            let lhs = x.checked_mul(&y).unwrap().conj();
            let rhs = x.conj().checked_mul(&y.conj()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn norm_is_multiplicative(x in arb_element(), y in arb_element()) {
            let xy = x.checked_mul(&y).unwrap();
            prop_assert_eq!(xy.norm(), x.norm() * y.norm());
            prop_assert!(x.checked_mul(&x.conj()).unwrap().irrational_part().is_zero());
        }
    }
}
