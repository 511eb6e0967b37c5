//! Dense matrices over exact rationals.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::design::IntMatrix;

pub type Rational = BigRational;

pub fn rational(numer: i64, denom: i64) -> Rational {
    BigRational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn integer(x: i64) -> Rational {
    BigRational::from_integer(BigInt::from(x))
}

/// `"p/q"` for non-integers, `"p"` for integers.
pub fn to_ratio_string(x: &Rational) -> String {
    x.to_string()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl RatMatrix {
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        let data = (0..rows * cols).map(|k| f(k / cols, k % cols)).collect();
        Self { rows, cols, data }
    }

    pub fn from_int(m: &IntMatrix) -> Self {
        Self::from_fn(m.rows(), m.cols(), |r, c| integer(m.get(r, c)))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Rational {
        &self.data[r * self.cols + c]
    }

    pub fn mul(&self, rhs: &RatMatrix) -> RatMatrix {
        assert_eq!(self.cols, rhs.rows, "inner dimensions differ");
        let mut out = vec![Rational::zero(); self.rows * rhs.cols];
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = &self.data[r * self.cols + k];
                if a.is_zero() {
                    continue;
                }
                for c in 0..rhs.cols {
                    let b = &rhs.data[k * rhs.cols + c];
                    if !b.is_zero() {
                        out[r * rhs.cols + c] += a * b;
                    }
                }
            }
        }
        RatMatrix {
            rows: self.rows,
            cols: rhs.cols,
            data: out,
        }
    }

    pub fn mul_int(&self, rhs: &IntMatrix) -> RatMatrix {
        self.mul(&RatMatrix::from_int(rhs))
    }

    pub fn int_mul(lhs: &IntMatrix, rhs: &RatMatrix) -> RatMatrix {
        RatMatrix::from_int(lhs).mul(rhs)
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.data.iter().map(|x| x.to_f64().expect("finite rational")).collect()
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols && (0..self.rows).all(|r| (0..r).all(|c| self.get(r, c) == self.get(c, r)))
    }
}
