use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

/// Integer polynomial in `t`, coefficients stored from `t^0` upward with no
/// trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Polynomial {
    coeffs: Vec<BigInt>,
}

impl Polynomial {
    pub fn zero() -> Polynomial {
        Polynomial { coeffs: vec![] }
    }

    pub fn one() -> Polynomial {
        Polynomial::from_coeffs(vec![BigInt::one()])
    }

    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Polynomial {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Polynomial {
        Polynomial::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// `t^n`
    pub fn power(n: usize) -> Polynomial {
        let mut coeffs = vec![BigInt::zero(); n + 1];
        coeffs[n] = BigInt::one();
        Polynomial { coeffs }
    }

    /// `t - k`
    pub fn linear(k: i64) -> Polynomial {
        Polynomial::from_coeffs(vec![BigInt::from(-k), BigInt::one()])
    }

    /// `t (t - 1) ... (t - n + 1)`
    pub fn falling_factorial(n: usize) -> Polynomial {
        (0..n as i64).fold(Polynomial::one(), |p, k| p.mul_linear(k))
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| c.is_one())
    }

    /// Nonzero coefficients alternate in sign, starting positive at the top.
    pub fn signs_alternate(&self) -> bool {
        let Some(d) = self.degree() else { return true };
        self.coeffs.iter().enumerate().all(|(i, c)| {
            if c.is_zero() {
                true
            } else if (d - i) % 2 == 0 {
                c.is_positive()
            } else {
                c.is_negative()
            }
        })
    }

    /// Horner evaluation.
    pub fn evaluate(&self, t: &BigInt) -> BigInt {
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * t + c)
    }

    pub fn eval_i64(&self, t: i64) -> BigInt {
        self.evaluate(&BigInt::from(t))
    }

    /// `self * (t - k)`
    pub fn mul_linear(&self, k: i64) -> Polynomial {
        if self.is_zero() {
            return Polynomial::zero();
        }
        let k = BigInt::from(k);
        let mut out = vec![BigInt::zero(); self.coeffs.len() + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i + 1] += c;
            out[i] -= c * &k;
        }
        Polynomial::from_coeffs(out)
    }

    /// Exact division by `t - k`; `None` if the remainder is nonzero.
    pub fn div_linear(&self, k: i64) -> Option<Polynomial> {
        if self.is_zero() {
            return Some(Polynomial::zero());
        }
        let k = BigInt::from(k);
        let d = self.coeffs.len() - 1;
        let mut q = vec![BigInt::zero(); d];
        let mut carry = BigInt::zero();
        for i in (0..=d).rev() {
            let cur = &self.coeffs[i] + &carry * &k;
            if i == 0 {
                return cur.is_zero().then(|| Polynomial::from_coeffs(q));
            }
            q[i - 1] = cur.clone();
            carry = cur;
        }
        unreachable!()
    }

    /// Exact division by `t (t - 1) ... (t - n + 1)`.
    pub fn div_falling_factorial(&self, n: usize) -> Option<Polynomial> {
        (0..n as i64).try_fold(self.clone(), |p, k| p.div_linear(k))
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let zero = BigInt::zero();
        let coeffs = (0..len)
            .map(|i| self.coeffs.get(i).unwrap_or(&zero) + rhs.coeffs.get(i).unwrap_or(&zero))
            .collect();
        Polynomial::from_coeffs(coeffs)
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let zero = BigInt::zero();
        let coeffs = (0..len)
            .map(|i| self.coeffs.get(i).unwrap_or(&zero) - rhs.coeffs.get(i).unwrap_or(&zero))
            .collect();
        Polynomial::from_coeffs(coeffs)
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Polynomial::from_coeffs(out)
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.abs();
            match (i, a.is_one()) {
                (0, _) => write!(f, "{a}")?,
                (1, true) => f.write_str("t")?,
                (1, false) => write!(f, "{a}t")?,
                (_, true) => write!(f, "t^{i}")?,
                (_, false) => write!(f, "{a}t^{i}")?,
            }
        }
        Ok(())
    }
}
