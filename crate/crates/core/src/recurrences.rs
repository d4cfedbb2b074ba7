//! Second-order linear recurrences with integer coefficients.
//!
//! A [`SequenceSpec`] describes `x_{n+1} = p·x_n + q·x_{n−1}` together with
//! its two initial terms. Terms are available by straight iteration or by
//! powering the companion matrix `[[p, q], [1, 0]]`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::{Error, Result};

/// `x_{n+1} = p·x_n + q·x_{n−1}` with initial terms `x0`, `x1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SequenceSpec {
    pub p: BigInt,
    pub q: BigInt,
    pub x0: BigInt,
    pub x1: BigInt,
}

/// A modulus `m ≥ 2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Modulus(BigInt);

impl Modulus {
    pub fn new(m: impl Into<BigInt>) -> Result<Self> {
        let m = m.into();
        if m < BigInt::from(2) {
            return Err(Error::InvalidModulus(m));
        }
        Ok(Modulus(m))
    }

    pub fn get(&self) -> &BigInt {
        &self.0
    }

    /// Least nonnegative residue of `x`.
    pub fn reduce(&self, x: &BigInt) -> BigInt {
        x.mod_floor(&self.0)
    }
}

impl fmt::Display for Modulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// The k-Lucas numbers: `L_{n+1} = k·L_n + L_{n−1}`, `L_0 = 2`, `L_1 = k`.
pub fn k_lucas_spec(k: i64) -> Result<SequenceSpec> {
    if k == 0 {
        return Err(Error::ZeroK);
    }
    Ok(SequenceSpec::new(k, 1, 2, k))
}

/// The k-Fibonacci numbers: same recurrence as k-Lucas, initial terms 0, 1.
pub fn k_fibonacci_spec(k: i64) -> Result<SequenceSpec> {
    if k == 0 {
        return Err(Error::ZeroK);
    }
    Ok(SequenceSpec::new(k, 1, 0, 1))
}

type Mat2 = [[BigInt; 2]; 2];

fn mat_mul(a: &Mat2, b: &Mat2, modulus: Option<&Modulus>) -> Mat2 {
    let entry = |i: usize, j: usize| {
        let v = &a[i][0] * &b[0][j] + &a[i][1] * &b[1][j];
        match modulus {
            Some(m) => m.reduce(&v),
            None => v,
        }
    };
    [[entry(0, 0), entry(0, 1)], [entry(1, 0), entry(1, 1)]]
}

impl SequenceSpec {
    pub fn new(
        p: impl Into<BigInt>,
        q: impl Into<BigInt>,
        x0: impl Into<BigInt>,
        x1: impl Into<BigInt>,
    ) -> Self {
        SequenceSpec {
            p: p.into(),
            q: q.into(),
            x0: x0.into(),
            x1: x1.into(),
        }
    }

    /// The first `count` terms `x_0 … x_{count−1}`.
    pub fn terms(&self, count: usize) -> Vec<BigInt> {
        let mut out = Vec::with_capacity(count);
        let (mut prev, mut cur) = (self.x0.clone(), self.x1.clone());
        for _ in 0..count {
            let next = &self.p * &cur + &self.q * &prev;
            out.push(std::mem::replace(
                &mut prev,
                std::mem::replace(&mut cur, next),
            ));
        }
        out
    }

    /// Term `x_n` by binary powering of the companion matrix.
    pub fn term_at(&self, n: u64) -> BigInt {
        self.matrix_term(n, None)
    }

    /// `x_n mod m`, in `[0, m−1]`.
    pub fn term_at_mod(&self, n: u64, m: &Modulus) -> BigInt {
        self.matrix_term(n, Some(m))
    }

    fn matrix_term(&self, mut n: u64, modulus: Option<&Modulus>) -> BigInt {
        let reduce = |x: &BigInt| match modulus {
            Some(m) => m.reduce(x),
            None => x.clone(),
        };
        let mut base: Mat2 = [
            [reduce(&self.p), reduce(&self.q)],
            [BigInt::one(), BigInt::zero()],
        ];
        let mut acc: Mat2 = [
            [BigInt::one(), BigInt::zero()],
            [BigInt::zero(), BigInt::one()],
        ];
        while n > 0 {
            if n & 1 == 1 {
                acc = mat_mul(&acc, &base, modulus);
            }
            n >>= 1;
            if n > 0 {
                base = mat_mul(&base, &base, modulus);
            }
        }
        // M^n · (x1, x0)ᵀ = (x_{n+1}, x_n)ᵀ
        reduce(&(&acc[1][0] * &self.x1 + &acc[1][1] * &self.x0))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::transform::{iterated_lucas_spec, TransformParams};

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn lucas_presets() {
        let l1 = k_lucas_spec(1).unwrap();
        assert_eq!(l1, SequenceSpec::new(1, 1, 2, 1));
        assert_eq!(l1.terms(6), ints(&[2, 1, 3, 4, 7, 11]));
        assert_eq!(k_lucas_spec(2).unwrap().terms(5), ints(&[2, 2, 6, 14, 34]));
        assert_eq!(
            k_lucas_spec(3).unwrap().terms(5),
            ints(&[2, 3, 11, 36, 119])
        );
    }

    #[test]
    fn fibonacci_presets() {
        assert_eq!(
            k_fibonacci_spec(1).unwrap().terms(7),
            ints(&[0, 1, 1, 2, 3, 5, 8])
        );
        assert_eq!(
            k_fibonacci_spec(2).unwrap().terms(6),
            ints(&[0, 1, 2, 5, 12, 29])
        );
        assert_eq!(k_fibonacci_spec(1).unwrap().term_at(0), BigInt::zero());
    }

    #[test]
    fn zero_k_rejected() {
        assert_eq!(k_lucas_spec(0), Err(Error::ZeroK));
        assert_eq!(k_fibonacci_spec(0), Err(Error::ZeroK));
    }

    #[test]
    fn terms_prefixes() {
        assert_eq!(k_lucas_spec(1).unwrap().terms(5), ints(&[2, 1, 3, 4, 7]));
        assert!(k_lucas_spec(5).unwrap().terms(0).is_empty());
        assert_eq!(k_lucas_spec(2).unwrap().terms(4), ints(&[2, 2, 6, 14]));
        assert_eq!(k_lucas_spec(7).unwrap().terms(1), ints(&[2]));
    }

    #[test]
    fn term_at_examples() {
        let spec = iterated_lucas_spec(&TransformParams::new(1, 1).unwrap());
        assert_eq!(spec.term_at(10), BigInt::from(15127));
        // b^{(1)}_{1,n} = L_{2n}
        assert_eq!(spec.term_at(10), k_lucas_spec(1).unwrap().term_at(20));
        assert_eq!(spec.term_at(0), BigInt::from(2));
        assert_eq!(k_lucas_spec(2).unwrap().term_at(4), BigInt::from(34));
    }

    #[test]
    fn term_at_mod_examples() {
        let spec = iterated_lucas_spec(&TransformParams::new(1, 1).unwrap());
        let m100 = Modulus::new(100).unwrap();
        assert_eq!(spec.term_at_mod(10, &m100), BigInt::from(27));
        assert_eq!(spec.term_at_mod(0, &m100), BigInt::from(2));
        assert_eq!(
            spec.term_at_mod(10, &Modulus::new(2).unwrap()),
            BigInt::one()
        );
    }

    #[test]
    fn modulus_guard() {
        assert!(matches!(Modulus::new(1), Err(Error::InvalidModulus(_))));
        assert!(matches!(Modulus::new(-7), Err(Error::InvalidModulus(_))));
        assert!(Modulus::new(2).is_ok());
    }

    #[test]
    fn negative_residues_normalised() {
        // k = -3 gives negative odd-index terms
        let spec = k_lucas_spec(-3).unwrap();
        let m = Modulus::new(10).unwrap();
        assert_eq!(spec.term_at(1), BigInt::from(-3));
        assert_eq!(spec.term_at_mod(1, &m), BigInt::from(7));
    }

    #[test]
    fn matrix_matches_iteration_up_to_512() {
        let specs = [
            k_lucas_spec(1).unwrap(),
            k_fibonacci_spec(3).unwrap(),
            iterated_lucas_spec(&TransformParams::new(2, 3).unwrap()),
            iterated_lucas_spec(&TransformParams::new(-4, 1).unwrap()),
            SequenceSpec::new(-2, 5, 7, -11),
        ];
        let moduli = [
            Modulus::new(2).unwrap(),
            Modulus::new(97).unwrap(),
            Modulus::new(1_000_000_007u64).unwrap(),
        ];
        for spec in &specs {
            let t = spec.terms(513);
            for (n, expected) in t.iter().enumerate() {
                let got = spec.term_at(n as u64);
                assert_eq!(&got, expected, "{spec:?} n={n}");
                for m in &moduli {
                    assert_eq!(spec.term_at_mod(n as u64, m), m.reduce(&got));
                }
            }
        }
    }
}
