//! The binomial transform, its r-fold iteration, and the closed-form
//! recurrences for the transformed k-Lucas and k-Fibonacci sequences.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::recurrences::SequenceSpec;
use crate::{Error, Result};

/// The pair `(k, r)`: base sequence parameter and number of transform
/// applications.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TransformParams {
    k: i64,
    r: u64,
}

impl TransformParams {
    pub fn new(k: i64, r: u64) -> Result<Self> {
        if k == 0 {
            return Err(Error::ZeroK);
        }
        Ok(TransformParams { k, r })
    }

    pub fn k(&self) -> i64 {
        self.k
    }

    pub fn r(&self) -> u64 {
        self.r
    }

    /// `2r + k`, the sum of the characteristic roots.
    pub fn trace(&self) -> BigInt {
        BigInt::from(2) * self.r + self.k
    }

    /// `r² + kr − 1`, the product of the characteristic roots.
    pub fn det(&self) -> BigInt {
        let r = BigInt::from(self.r);
        &r * &r + BigInt::from(self.k) * &r - 1
    }

    /// `k² + 4`; independent of `r`.
    pub fn disc(&self) -> BigInt {
        let k = BigInt::from(self.k);
        &k * &k + 4
    }
}

/// Row `n` of Pascal's triangle, `C(n, 0) … C(n, n)`.
pub fn binomial_row(n: usize) -> Vec<BigInt> {
    let mut row = Vec::with_capacity(n + 1);
    let mut c = BigInt::one();
    for j in 0..=n {
        row.push(c.clone());
        // C(n, j+1) = C(n, j)·(n−j)/(j+1), always exact
        c = c * (n - j) / (j + 1);
    }
    row
}

/// `b_n = Σ_{i=0..n} C(n, i)·x_i` over the given prefix.
pub fn binomial_transform(prefix: &[BigInt]) -> Vec<BigInt> {
    (0..prefix.len())
        .map(|n| binomial_row(n).iter().zip(prefix).map(|(c, x)| c * x).sum())
        .collect()
}

/// Applies [`binomial_transform`] `r` times.
pub fn iterate_transform(prefix: &[BigInt], r: u64) -> Vec<BigInt> {
    let mut cur = prefix.to_vec();
    for _ in 0..r {
        cur = binomial_transform(&cur);
    }
    cur
}

/// Recurrence for the r-fold transform of k-Lucas:
/// `b_{n+1} = (2r+k)·b_n − (r²+kr−1)·b_{n−1}`, `b_0 = 2`, `b_1 = 2r+k`.
pub fn iterated_lucas_spec(params: &TransformParams) -> SequenceSpec {
    SequenceSpec {
        p: params.trace(),
        q: -params.det(),
        x0: BigInt::from(2),
        x1: params.trace(),
    }
}

/// Same recurrence as [`iterated_lucas_spec`] with initial terms 0, 1.
pub fn iterated_fibonacci_spec(params: &TransformParams) -> SequenceSpec {
    SequenceSpec {
        p: params.trace(),
        q: -params.det(),
        x0: BigInt::zero(),
        x1: BigInt::one(),
    }
}

/// Level-`r` term `n+1` from level `r` term `n` and the level `r−1` prefix:
/// `b^{(r)}_{n+1} = b^{(r)}_n + Σ_{j=0..n} C(n, j)·b^{(r−1)}_{j+1}`.
pub fn lemma_step(level_r: &[BigInt], level_r_minus_1: &[BigInt], n: usize) -> Result<BigInt> {
    if level_r.len() < n + 1 {
        return Err(Error::PrefixTooShort {
            needed: n + 1,
            got: level_r.len(),
        });
    }
    if level_r_minus_1.len() < n + 2 {
        return Err(Error::PrefixTooShort {
            needed: n + 2,
            got: level_r_minus_1.len(),
        });
    }
    let sum: BigInt = binomial_row(n)
        .iter()
        .zip(&level_r_minus_1[1..])
        .map(|(c, x)| c * x)
        .sum();
    Ok(&level_r[n] + sum)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::recurrences::{k_fibonacci_spec, k_lucas_spec};
    use proptest::prelude::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn params(k: i64, r: u64) -> TransformParams {
        TransformParams::new(k, r).unwrap()
    }

    // Factorial-based C(n, j), independent of the multiplicative row.
    fn choose(n: u64, j: u64) -> BigInt {
        let fact = |m: u64| (1..=m).fold(BigInt::one(), |acc, i| acc * i);
        fact(n) / (fact(j) * fact(n - j))
    }

    #[test]
    fn pascal_row_matches_factorials() {
        for n in 0..40 {
            let row = binomial_row(n);
            for (j, c) in row.iter().enumerate() {
                assert_eq!(*c, choose(n as u64, j as u64));
            }
        }
    }

    #[test]
    fn params_derived_quantities() {
        let p = params(3, 2);
        assert_eq!(p.trace(), BigInt::from(7));
        assert_eq!(p.det(), BigInt::from(9));
        assert_eq!(p.disc(), BigInt::from(13));
        assert_eq!(TransformParams::new(0, 4), Err(Error::ZeroK));
    }

    #[test]
    fn binomial_transform_examples() {
        assert_eq!(
            binomial_transform(&ints(&[2, 1, 3, 4])),
            ints(&[2, 3, 7, 18])
        );
        assert_eq!(binomial_transform(&ints(&[0, 0, 0])), ints(&[0, 0, 0]));
        assert_eq!(
            binomial_transform(&ints(&[2, 2, 6, 14])),
            ints(&[2, 4, 12, 40])
        );
        assert!(binomial_transform(&[]).is_empty());
    }

    #[test]
    fn iterate_transform_examples() {
        let lucas = ints(&[2, 1, 3, 4, 7]);
        assert_eq!(iterate_transform(&lucas, 0), lucas);
        assert_eq!(iterate_transform(&lucas, 2), ints(&[2, 5, 15, 50, 175]));
        assert_eq!(
            iterate_transform(&ints(&[0, 1, 1, 2, 3]), 2),
            ints(&[0, 1, 5, 20, 75])
        );
    }

    #[test]
    fn iterated_spec_examples() {
        let s = iterated_lucas_spec(&params(1, 1));
        assert_eq!(s, SequenceSpec::new(3, -1, 2, 3));
        assert_eq!(s.terms(5), ints(&[2, 3, 7, 18, 47]));

        let s = iterated_lucas_spec(&params(1, 2));
        assert_eq!(s, SequenceSpec::new(5, -5, 2, 5));
        assert_eq!(s.terms(5), ints(&[2, 5, 15, 50, 175]));

        for k in [-3, 1, 2, 9] {
            assert_eq!(iterated_lucas_spec(&params(k, 0)), k_lucas_spec(k).unwrap());
            assert_eq!(
                iterated_fibonacci_spec(&params(k, 0)),
                k_fibonacci_spec(k).unwrap()
            );
        }

        assert_eq!(
            iterated_fibonacci_spec(&params(1, 1)).terms(5),
            ints(&[0, 1, 3, 8, 21])
        );
        assert_eq!(
            iterated_fibonacci_spec(&params(1, 2)).terms(5),
            ints(&[0, 1, 5, 20, 75])
        );
    }

    #[test]
    fn lemma_step_examples() {
        let l0 = ints(&[2, 1, 3, 4, 7]);
        let l1 = ints(&[2, 3, 7, 18, 47]);
        let l2 = ints(&[2, 5, 15, 50, 175]);
        assert_eq!(lemma_step(&l1, &l0, 2).unwrap(), BigInt::from(18));
        assert_eq!(lemma_step(&l2, &l1, 1).unwrap(), BigInt::from(15));
        assert_eq!(lemma_step(&l1, &l0, 0).unwrap(), BigInt::from(3));
    }

    #[test]
    fn lemma_step_rejects_short_prefixes() {
        let l0 = ints(&[2, 1, 3]);
        let l1 = ints(&[2, 3, 7]);
        assert_eq!(
            lemma_step(&l1, &l0, 2),
            Err(Error::PrefixTooShort { needed: 4, got: 3 })
        );
        assert_eq!(
            lemma_step(&l1[..1], &l0, 1),
            Err(Error::PrefixTooShort { needed: 2, got: 1 })
        );
    }

    #[test]
    fn oracle_equivalence_small_grid() {
        for k in [-5, -1, 1, 2, 3] {
            let lucas = k_lucas_spec(k).unwrap().terms(20);
            let fib = k_fibonacci_spec(k).unwrap().terms(20);
            for r in 0..4 {
                let p = params(k, r);
                assert_eq!(
                    iterate_transform(&lucas, r),
                    iterated_lucas_spec(&p).terms(20)
                );
                assert_eq!(
                    iterate_transform(&fib, r),
                    iterated_fibonacci_spec(&p).terms(20)
                );
            }
        }
    }

    #[test]
    fn lemma_r1_consequence() {
        for k in 1..=4 {
            let lucas = k_lucas_spec(k).unwrap().terms(34);
            let b = binomial_transform(&lucas);
            for n in 0..=32usize {
                let sum: BigInt = (0..=n)
                    .map(|j| choose(n as u64, j as u64) * &lucas[j + 1])
                    .sum();
                assert_eq!(&b[n + 1] - &b[n], sum);
            }
        }
    }

    proptest! {
        #[test]
        fn transform_is_linear(
            xs in prop::collection::vec(-50i64..50, 0..24),
            ys in prop::collection::vec(-50i64..50, 0..24),
            a in -9i64..9,
            b in -9i64..9,
        ) {
            let len = xs.len().min(ys.len());
            let x = ints(&xs[..len]);
            let y = ints(&ys[..len]);
            let combo: Vec<BigInt> = x.iter().zip(&y).map(|(u, v)| u * a + v * b).collect();
            let lhs = binomial_transform(&combo);
            let rhs: Vec<BigInt> = binomial_transform(&x)
                .iter()
                .zip(binomial_transform(&y))
                .map(|(u, v)| u * a + v * b)
                .collect();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn discriminant_independent_of_r(k in -1000i64..1000, r in 0u64..1000) {
            prop_assume!(k != 0);
            let p = params(k, r);
            prop_assert_eq!(p.trace() * p.trace() - p.det() * 4, p.disc());
        }
    }
}
