use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigUint;

use super::field::Field;

/// Dense univariate polynomial, lowest degree first, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct UPoly<K> {
    coeffs: Vec<K>,
}

impl<K: Field> UPoly<K> {
    pub fn new(mut coeffs: Vec<K>) -> Self {
        while coeffs.last().is_some_and(Field::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant(c: K) -> Self {
        Self::new(vec![c])
    }

    /// The monomial `c·X^k`.
    pub fn monomial(c: K, k: usize) -> Self {
        let mut coeffs = vec![c.zero_like(); k];
        coeffs.push(c);
        Self::new(coeffs)
    }

    /// `X`, using `unit` to fix the coefficient field.
    pub fn x(unit: &K) -> Self {
        Self::monomial(unit.one_like(), 1)
    }

    /// `∏ (X - r)`.
    pub fn from_roots(unit: &K, roots: &[K]) -> Self {
        roots
            .iter()
            .fold(Self::constant(unit.one_like()), |acc, r| {
                acc * Self::new(vec![-r.clone(), unit.one_like()])
            })
    }

    pub fn coeffs(&self) -> &[K] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> Option<&K> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.lead().is_some_and(Field::is_one)
    }

    pub fn coeff(&self, i: usize) -> Option<&K> {
        self.coeffs.get(i)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn scale(&self, c: &K) -> Self {
        Self::new(self.coeffs.iter().map(|a| a.clone() * c).collect())
    }

    pub fn monic(&self) -> Self {
        match self.lead() {
            None => Self::zero(),
            Some(l) => self.scale(&l.inv().expect("nonzero leading coefficient")),
        }
    }

    pub fn eval(&self, at: &K) -> K {
        let mut acc = at.zero_like();
        for c in self.coeffs.iter().rev() {
            acc = acc * at + c;
        }
        acc
    }

    /// `f(X + shift)`, by Horner's rule over polynomials.
    pub fn shift(&self, shift: &K) -> Self {
        if self.coeffs.len() <= 1 {
            return self.clone();
        }
        let lin = Self::new(vec![shift.clone(), shift.one_like()]);
        let mut acc = Self::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * &lin + &Self::constant(c.clone());
        }
        acc
    }

    /// Composition `self(other)`.
    pub fn compose(&self, other: &Self) -> Self {
        let mut acc = Self::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * other + &Self::constant(c.clone());
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.from_i64_like(i as i64) * c)
                .collect(),
        )
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let dd = divisor.degree().expect("division by zero polynomial");
        let lead_inv = divisor.coeffs[dd].inv().expect("field leading coefficient");
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![lead_inv.zero_like(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = rem[k + dd].clone() * &lead_inv;
            if !c.is_zero() {
                for (j, d) in divisor.coeffs.iter().enumerate() {
                    rem[k + j] = rem[k + j].clone() - &(c.clone() * d);
                }
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (Self::new(quot), Self::new(rem))
    }

    pub fn rem(&self, divisor: &Self) -> Self {
        self.div_rem(divisor).1
    }

    /// Monic gcd (zero only when both inputs are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `self^e mod modulus` by square and multiply.
    pub fn pow_mod(&self, e: &BigUint, modulus: &Self) -> Self {
        let unit = modulus.lead().expect("nonzero modulus");
        let base = self.rem(modulus);
        let mut acc = Self::constant(unit.one_like()).rem(modulus);
        for i in (0..e.bits()).rev() {
            acc = (acc.clone() * &acc).rem(modulus);
            if e.bit(i) {
                acc = (acc * &base).rem(modulus);
            }
        }
        acc
    }

    /// `self^e`; the zero polynomial stays zero even for `e = 0`.
    pub fn pow(&self, e: u32) -> Self {
        let mut acc = match self.coeffs.first() {
            Some(c) => Self::constant(c.one_like()),
            None => return Self::zero(),
        };
        for _ in 0..e {
            acc = acc * self;
        }
        acc
    }

    pub fn map<L: Field>(&self, f: impl Fn(&K) -> L) -> UPoly<L> {
        UPoly::new(self.coeffs.iter().map(f).collect())
    }

    /// Renders with the given variable name, highest degree first.
    pub fn display_with(&self, var: &str) -> String {
        let mut parts = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            parts.push(match (i, c.is_one()) {
                (0, _) => format!("{c}"),
                (_, true) => mono,
                _ => format!("({c})*{mono}"),
            });
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

impl<K: Field> fmt::Display for UPoly<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with("X"))
    }
}

impl<'a, K: Field> Add<&'a UPoly<K>> for UPoly<K> {
    type Output = UPoly<K>;
    fn add(mut self, rhs: &'a UPoly<K>) -> UPoly<K> {
        if self.coeffs.len() < rhs.coeffs.len() {
            let zero = rhs.coeffs[0].zero_like();
            self.coeffs.resize(rhs.coeffs.len(), zero);
        }
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a = a.clone() + b;
        }
        UPoly::new(self.coeffs)
    }
}

impl<'a, K: Field> Sub<&'a UPoly<K>> for UPoly<K> {
    type Output = UPoly<K>;
    fn sub(self, rhs: &'a UPoly<K>) -> UPoly<K> {
        self + &(-rhs.clone())
    }
}

impl<'a, K: Field> Mul<&'a UPoly<K>> for UPoly<K> {
    type Output = UPoly<K>;
    fn mul(self, rhs: &'a UPoly<K>) -> UPoly<K> {
        if self.is_zero() || rhs.is_zero() {
            return UPoly::zero();
        }
        let zero = self.coeffs[0].zero_like();
        let mut out = vec![zero; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + &(a.clone() * b);
            }
        }
        UPoly::new(out)
    }
}

impl<K: Field> Add for UPoly<K> {
    type Output = UPoly<K>;
    fn add(self, rhs: UPoly<K>) -> UPoly<K> {
        self + &rhs
    }
}

impl<K: Field> Sub for UPoly<K> {
    type Output = UPoly<K>;
    fn sub(self, rhs: UPoly<K>) -> UPoly<K> {
        self - &rhs
    }
}

impl<K: Field> Mul for UPoly<K> {
    type Output = UPoly<K>;
    fn mul(self, rhs: UPoly<K>) -> UPoly<K> {
        self * &rhs
    }
}

impl<K: Field> Neg for UPoly<K> {
    type Output = UPoly<K>;
    fn neg(self) -> UPoly<K> {
        UPoly {
            coeffs: self.coeffs.into_iter().map(|c| -c).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::field::rat;
    use num_rational::BigRational;

    fn q(cs: &[i64]) -> UPoly<BigRational> {
        UPoly::new(cs.iter().map(|&c| rat(c, 1)).collect())
    }

    #[test]
    fn shift_matches_composition() {
        let f = q(&[1, -2, 0, 3]);
        let s = rat(5, 2);
        let lin = UPoly::new(vec![s.clone(), rat(1, 1)]);
        assert_eq!(f.shift(&s), f.compose(&lin));
        assert_eq!(f.shift(&s).eval(&rat(0, 1)), f.eval(&s));
    }

    #[test]
    fn division_identity() {
        let a = q(&[3, 1, 4, 1, 5, 9]);
        let b = q(&[2, 7, 1]);
        let (qt, r) = a.div_rem(&b);
        assert_eq!(qt * &b + &r, a);
        assert!(r.degree().unwrap() < 2);
    }

    #[test]
    fn gcd_of_products() {
        let one = rat(1, 1);
        let a = UPoly::from_roots(&one, &[rat(1, 1), rat(2, 1), rat(-1, 3)]);
        let b = UPoly::from_roots(&one, &[rat(2, 1), rat(-1, 3), rat(7, 1)]);
        assert_eq!(a.gcd(&b), UPoly::from_roots(&one, &[rat(2, 1), rat(-1, 3)]));
    }

    #[test]
    fn trailing_zeros_trimmed() {
        assert_eq!(q(&[1, 0, 0]).degree(), Some(0));
        assert!(q(&[0, 0]).is_zero());
        assert_eq!((q(&[1, 1]) - &q(&[1, 1])).degree(), None);
    }
}
