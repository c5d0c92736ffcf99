//! Rank-one Dunkl operator `T = ∂ - c (1 - s)/t` on `k[t]`, where `s` is
//! `f(t) ↦ f(-t)`.
//!
//! Operators are compared extensionally on `t^k`. The checked bracket is
//! `[T, t] = 1 - 2c·s`, i.e. `[y, x]` with `x = t` and `y = T`.

use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::Zero;

use crate::arith::{rat, UPoly};
use crate::{Error, Result};

/// The identity the certificate establishes.
pub const CONVENTION: &str = "[y, x] = 1 - 2c*s with x = t, y = T";

/// Coefficients of polynomials in `t`: numbers, or polynomials in `c`.
pub trait Coefficient:
    Clone
    + PartialEq
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn integer(&self, n: i64) -> Self;
    fn is_zero_coeff(&self) -> bool;
}

impl Coefficient for BigRational {
    fn integer(&self, n: i64) -> Self {
        rat(n, 1)
    }
    fn is_zero_coeff(&self) -> bool {
        Zero::is_zero(self)
    }
}

impl Coefficient for UPoly<BigRational> {
    fn integer(&self, n: i64) -> Self {
        UPoly::constant(rat(n, 1))
    }
    fn is_zero_coeff(&self) -> bool {
        self.is_zero()
    }
}

/// Dense polynomial in `t`, low degree first, without trailing zeros.
#[derive(Clone, Debug, PartialEq)]
pub struct TPoly<C>(Vec<C>);

impl<C: Coefficient> TPoly<C> {
    pub fn new(mut coeffs: Vec<C>) -> Self {
        while coeffs.last().is_some_and(C::is_zero_coeff) {
            coeffs.pop();
        }
        Self(coeffs)
    }

    pub fn monomial(unit: &C, k: usize) -> Self {
        let mut v = vec![unit.integer(0); k];
        v.push(unit.integer(1));
        Self::new(v)
    }

    pub fn coeffs(&self) -> &[C] {
        &self.0
    }

    fn zip(&self, other: &Self, f: impl Fn(C, C) -> C, zero: &C) -> Self {
        let len = self.0.len().max(other.0.len());
        let get = |v: &[C], i: usize| v.get(i).cloned().unwrap_or_else(|| zero.clone());
        Self::new(
            (0..len)
                .map(|i| f(get(&self.0, i), get(&other.0, i)))
                .collect(),
        )
    }

    pub fn sub(&self, other: &Self, zero: &C) -> Self {
        self.zip(other, |a, b| a - b, zero)
    }

    pub fn scale(&self, c: &C) -> Self {
        Self::new(self.0.iter().map(|a| a.clone() * c.clone()).collect())
    }

    /// Multiplication by `t`.
    pub fn times_t(&self, zero: &C) -> Self {
        if self.0.is_empty() {
            return self.clone();
        }
        let mut v = vec![zero.clone()];
        v.extend(self.0.iter().cloned());
        Self::new(v)
    }

    /// `f(-t)`.
    pub fn reflect(&self) -> Self {
        Self::new(
            self.0
                .iter()
                .enumerate()
                .map(|(i, a)| if i % 2 == 1 { -a.clone() } else { a.clone() })
                .collect(),
        )
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, a)| a.integer(i as i64) * a.clone())
                .collect(),
        )
    }

    /// Exact division by `t`; `None` if the constant term is nonzero.
    pub fn div_t(&self) -> Option<Self> {
        match self.0.first() {
            None => Some(self.clone()),
            Some(a0) if a0.is_zero_coeff() => Some(Self::new(self.0[1..].to_vec())),
            Some(_) => None,
        }
    }
}

/// `T f = f' - c (f - s f)/t`.
pub fn dunkl_apply<C: Coefficient>(c: &C, f: &TPoly<C>) -> TPoly<C> {
    let zero = c.integer(0);
    let diff = f
        .sub(&f.reflect(), &zero)
        .div_t()
        .expect("f - f(-t) has no constant term");
    f.derivative().sub(&diff.scale(c), &zero)
}

#[derive(Clone, Debug, PartialEq)]
pub struct DunklCertificate<C> {
    pub c: C,
    pub bound: usize,
    pub convention: &'static str,
    /// `λ_k` with `[T, t] t^k = λ_k t^k`, for `k = 0..=bound`.
    pub bracket_eigenvalues: Vec<C>,
    /// `s t = -t s` on every checked monomial.
    pub reflection_anticommutes: bool,
}

fn verify_generic<C: Coefficient>(c: C, bound: usize) -> Result<DunklCertificate<C>> {
    let zero = c.integer(0);
    let two_c = c.integer(2) * c.clone();
    let mut eigenvalues = Vec::with_capacity(bound + 1);
    for k in 0..=bound {
        let f = TPoly::monomial(&c, k);
        let lhs =
            dunkl_apply(&c, &f.times_t(&zero)).sub(&dunkl_apply(&c, &f).times_t(&zero), &zero);
        let rhs = f.sub(&f.reflect().scale(&two_c), &zero);
        if lhs != rhs {
            return Err(Error::RelationMismatch(k));
        }
        if f.times_t(&zero).reflect() != f.reflect().times_t(&zero).scale(&c.integer(-1)) {
            return Err(Error::RelationMismatch(k));
        }
        eigenvalues.push(lhs.coeffs().get(k).cloned().unwrap_or_else(|| zero.clone()));
    }
    Ok(DunklCertificate {
        c,
        bound,
        convention: CONVENTION,
        bracket_eigenvalues: eigenvalues,
        reflection_anticommutes: true,
    })
}

/// Checks `[T, t] = 1 - 2c·s` and `s t = -t s` on `t^k`, `k ≤ bound`.
pub fn dunkl_verify(c: &BigRational, bound: usize) -> Result<DunklCertificate<BigRational>> {
    if bound == 0 {
        return Err(Error::RelationMismatch(0));
    }
    verify_generic(c.clone(), bound)
}

/// The same check with `c` an indeterminate.
pub fn dunkl_verify_symbolic(bound: usize) -> Result<DunklCertificate<UPoly<BigRational>>> {
    if bound == 0 {
        return Err(Error::RelationMismatch(0));
    }
    let c = UPoly::new(vec![rat(0, 1), rat(1, 1)]);
    verify_generic(c, bound)
}

/// Numeric polynomial in `t` as a [`TPoly`].
pub fn from_upoly(f: &UPoly<BigRational>) -> TPoly<BigRational> {
    TPoly::new(f.coeffs().to_vec())
}

pub fn to_upoly(f: &TPoly<BigRational>) -> UPoly<BigRational> {
    UPoly::new(f.coeffs().to_vec())
}
