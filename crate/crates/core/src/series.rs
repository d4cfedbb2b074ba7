//! Truncated formal power series with exact rational coefficients.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::quadfield::Rational;
use crate::transform::TransformParams;
use crate::{Error, Result};

/// `Σ_{i<order} c_i xⁱ`, truncated at a fixed positive order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PowerSeries {
    coeffs: Vec<Rational>,
}

impl PowerSeries {
    pub fn new(coeffs: Vec<Rational>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::EmptySeries);
        }
        Ok(PowerSeries { coeffs })
    }

    /// A polynomial with integer coefficients, zero-padded (or truncated)
    /// to `order` terms.
    pub fn from_integers<I, T>(coeffs: I, order: usize) -> Result<Self>
    where
        I: IntoIterator<Item = T>,
        T: Into<BigInt>,
    {
        let mut c: Vec<Rational> = coeffs
            .into_iter()
            .take(order)
            .map(|x| Rational::from_integer(x.into()))
            .collect();
        c.resize(order, Rational::zero());
        Self::new(c)
    }

    pub fn one(order: usize) -> Result<Self> {
        Self::from_integers([1], order)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Truncated Cauchy product.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.order() != other.order() {
            return Err(Error::OrderMismatch(self.order(), other.order()));
        }
        let coeffs = (0..self.order())
            .map(|n| {
                (0..=n)
                    .map(|i| &self.coeffs[i] * &other.coeffs[n - i])
                    .sum()
            })
            .collect();
        Ok(PowerSeries { coeffs })
    }

    /// Reciprocal by forward substitution:
    /// `g_0 = 1/f_0`, `g_n = −(Σ_{i=1..n} f_i g_{n−i}) / f_0`.
    pub fn inverse(&self) -> Result<Self> {
        let f0 = &self.coeffs[0];
        if f0.is_zero() {
            return Err(Error::ZeroConstantTerm);
        }
        let inv0 = f0.recip();
        let mut g: Vec<Rational> = Vec::with_capacity(self.order());
        g.push(inv0.clone());
        for n in 1..self.order() {
            let s: Rational = (1..=n).map(|i| &self.coeffs[i] * &g[n - i]).sum();
            g.push(-s * &inv0);
        }
        Ok(PowerSeries { coeffs: g })
    }

    /// Coefficients as integers, if every one has denominator 1.
    pub fn to_integers(&self) -> Option<Vec<BigInt>> {
        self.coeffs
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect()
    }
}

/// Numerator `2 − (2r+k)x` and denominator `1 − (2r+k)x + (r²+kr−1)x²` of
/// the generating function of the transformed k-Lucas sequence.
pub fn gf_parts(params: &TransformParams, order: usize) -> Result<(PowerSeries, PowerSeries)> {
    let t = params.trace();
    let num = PowerSeries::from_integers([BigInt::from(2), -&t], order)?;
    let den = PowerSeries::from_integers([BigInt::one(), -t, params.det()], order)?;
    Ok((num, den))
}

/// First `count` Maclaurin coefficients of the rational generating function.
pub fn gf_expand(params: &TransformParams, count: usize) -> Result<Vec<Rational>> {
    let (num, den) = gf_parts(params, count)?;
    Ok(num.mul(&den.inverse()?)?.coeffs)
}

/// [`gf_expand`] with integrality of every coefficient enforced.
pub fn gf_expand_integers(params: &TransformParams, count: usize) -> Result<Vec<BigInt>> {
    let coeffs = gf_expand(params, count)?;
    PowerSeries { coeffs }.to_integers().ok_or_else(|| {
        Error::InternalInconsistency(format!(
            "generating function for k={}, r={} has a non-integral coefficient",
            params.k(),
            params.r()
        ))
    })
}
