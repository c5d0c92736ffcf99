//! Finite fields F_q = F_p[z]/(f), one extension level over the prime field.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use super::field::Field;
use super::poly::UPoly;
use crate::{Error, Result};

const MAX_CHARACTERISTIC: u64 = 1 << 31;

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n.is_multiple_of(2) {
        return false;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Characteristic `p`, monic modulus `f` (lowest degree first), and `q = p^deg f`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FieldDescriptor {
    p: u64,
    modulus: Vec<u64>,
    order: BigUint,
}

impl FieldDescriptor {
    /// The prime field F_p, presented as F_p[z]/(z).
    pub fn prime(p: u64) -> Result<Arc<Self>> {
        check_characteristic(p)?;
        Ok(Arc::new(Self {
            p,
            modulus: vec![0, 1],
            order: BigUint::from(p),
        }))
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn order(&self) -> &BigUint {
        &self.order
    }

    pub fn is_prime_field(&self) -> bool {
        self.degree() == 1
    }
}

impl fmt::Display for FieldDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_prime_field() {
            write!(f, "F_{}", self.p)
        } else {
            write!(
                f,
                "F_{}[z]/({})",
                self.p,
                format_raw_poly(&self.modulus, "z")
            )
        }
    }
}

fn check_characteristic(p: u64) -> Result<()> {
    if p >= MAX_CHARACTERISTIC {
        return Err(Error::CharacteristicTooLarge(p));
    }
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    Ok(())
}

/// Builds F_p[z]/(f) after checking that `f` is irreducible over F_p.
///
/// `f` is given lowest degree first; entries are reduced mod `p`.
pub fn make_extension_field(p: u64, f: &[i64]) -> Result<Arc<FieldDescriptor>> {
    check_characteristic(p)?;
    let mut modulus: Vec<u64> = f.iter().map(|&c| reduce_i64(c, p)).collect();
    while modulus.last() == Some(&0) {
        modulus.pop();
    }
    if modulus.len() < 2 || *modulus.last().unwrap() != 1 {
        return Err(Error::BadModulus);
    }
    if modulus.len() > 2 {
        let prime = FieldDescriptor::prime(p)?;
        let poly = UPoly::new(
            modulus
                .iter()
                .map(|&c| FieldElement::from_u64(&prime, c))
                .collect(),
        );
        if !super::factor::is_irreducible(&poly)? {
            return Err(Error::Reducible(format_raw_poly(&modulus, "z")));
        }
    }
    let degree = modulus.len() - 1;
    Ok(Arc::new(FieldDescriptor {
        p,
        modulus,
        order: BigUint::from(p).pow(degree as u32),
    }))
}

fn reduce_i64(c: i64, p: u64) -> u64 {
    (c as i128).rem_euclid(p as i128) as u64
}

fn format_raw_poly(coeffs: &[u64], var: &str) -> String {
    let mut parts = Vec::new();
    for (i, &c) in coeffs.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let term = match (i, c) {
            (0, c) => c.to_string(),
            (1, 1) => var.to_string(),
            (1, c) => format!("{c}*{var}"),
            (i, 1) => format!("{var}^{i}"),
            (i, c) => format!("{c}*{var}^{i}"),
        };
        parts.push(term);
    }
    if parts.is_empty() {
        "0".to_string()
    } else {
        parts.join(" + ")
    }
}

/// An element of F_q, stored as its residue polynomial of degree `< d`.
#[derive(Clone)]
pub struct FieldElement {
    field: Arc<FieldDescriptor>,
    residue: Vec<u64>,
}

impl FieldElement {
    pub fn zero(field: &Arc<FieldDescriptor>) -> Self {
        Self {
            field: field.clone(),
            residue: vec![0; field.degree()],
        }
    }

    pub fn one(field: &Arc<FieldDescriptor>) -> Self {
        Self::from_u64(field, 1)
    }

    pub fn from_u64(field: &Arc<FieldDescriptor>, c: u64) -> Self {
        let mut e = Self::zero(field);
        e.residue[0] = c % field.p;
        e
    }

    pub fn from_i64(field: &Arc<FieldDescriptor>, c: i64) -> Self {
        Self::from_u64(field, reduce_i64(c, field.p))
    }

    /// Reduces an arbitrary coefficient list (lowest first) modulo `(p, f)`.
    pub fn from_coeffs(field: &Arc<FieldDescriptor>, coeffs: &[i64]) -> Self {
        let raw: Vec<u64> = coeffs.iter().map(|&c| reduce_i64(c, field.p)).collect();
        Self {
            field: field.clone(),
            residue: reduce_raw(raw, &field.modulus, field.p),
        }
    }

    /// The class of `z`.
    pub fn generator(field: &Arc<FieldDescriptor>) -> Self {
        Self::from_coeffs(field, &[0, 1])
    }

    /// Reduces `a/b` into F_q; fails when `p` divides the denominator.
    pub fn from_rational(field: &Arc<FieldDescriptor>, r: &BigRational) -> Result<Self> {
        let p = BigInt::from(field.p);
        if r.denom().mod_floor(&p).is_zero() {
            return Err(Error::Specialization(format!(
                "p = {} divides the denominator of {}",
                field.p,
                super::field::format_rational(r)
            )));
        }
        let num = Self::from_bigint(field, r.numer());
        let den = Self::from_bigint(field, r.denom());
        Ok(num * den.inv().expect("denominator is a unit"))
    }

    fn from_bigint(field: &Arc<FieldDescriptor>, n: &BigInt) -> Self {
        let p = BigInt::from(field.p);
        let c = n.mod_floor(&p).to_u64().expect("reduced below p");
        Self::from_u64(field, c)
    }

    pub(crate) fn from_residue(field: &Arc<FieldDescriptor>, residue: Vec<u64>) -> Self {
        debug_assert_eq!(residue.len(), field.degree());
        Self {
            field: field.clone(),
            residue,
        }
    }

    pub fn field(&self) -> &Arc<FieldDescriptor> {
        &self.field
    }

    pub fn residue(&self) -> &[u64] {
        &self.residue
    }

    pub fn same_field(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.field, &other.field) || *self.field == *other.field
    }

    pub fn in_prime_subfield(&self) -> bool {
        self.residue[1..].iter().all(|&c| c == 0)
    }

    pub fn frobenius(&self) -> Self {
        self.pow_u64(self.field.p)
    }

    /// `t^p - t`; its kernel is exactly the prime subfield.
    pub fn artin_schreier(&self) -> Self {
        self.frobenius() - self
    }

    pub fn pow_big(&self, e: &BigUint) -> Self {
        let mut acc = self.one_like();
        for i in (0..e.bits()).rev() {
            acc = acc.square();
            if e.bit(i) {
                acc = acc * self;
            }
        }
        acc
    }

    pub fn to_i64_coeffs(&self) -> Vec<i64> {
        self.residue.iter().map(|&c| c as i64).collect()
    }

    fn check(&self, other: &Self) {
        assert!(
            self.same_field(other),
            "arithmetic between {} and {}",
            self.field,
            other.field
        );
    }
}

fn reduce_raw(mut raw: Vec<u64>, modulus: &[u64], p: u64) -> Vec<u64> {
    let d = modulus.len() - 1;
    while raw.len() > d {
        let lead = raw.pop().unwrap();
        if lead != 0 {
            let shift = raw.len() - d;
            for (i, &m) in modulus[..d].iter().enumerate() {
                let sub = mul_mod(lead, m, p);
                raw[shift + i] = (raw[shift + i] + p - sub) % p;
            }
        }
    }
    raw.resize(d, 0);
    raw
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.residue == other.residue && self.same_field(other)
    }
}

impl Eq for FieldElement {}

impl Hash for FieldElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.field.p.hash(state);
        self.residue.hash(state);
    }
}

impl PartialOrd for FieldElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Orders by field, then by residue coefficients from the highest degree down.
impl Ord for FieldElement {
    fn cmp(&self, other: &Self) -> Ordering {
        self.field
            .p
            .cmp(&other.field.p)
            .then_with(|| self.field.modulus.cmp(&other.field.modulus))
            .then_with(|| self.residue.iter().rev().cmp(other.residue.iter().rev()))
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} in {}", self, self.field)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.in_prime_subfield() {
            write!(f, "{}", self.residue[0])
        } else {
            write!(f, "{}", format_raw_poly(&self.residue, "z"))
        }
    }
}

impl<'a> Add<&'a FieldElement> for FieldElement {
    type Output = FieldElement;
    fn add(mut self, rhs: &'a FieldElement) -> FieldElement {
        self.check(rhs);
        let p = self.field.p;
        for (a, &b) in self.residue.iter_mut().zip(&rhs.residue) {
            *a = (*a + b) % p;
        }
        self
    }
}

impl<'a> Sub<&'a FieldElement> for FieldElement {
    type Output = FieldElement;
    fn sub(mut self, rhs: &'a FieldElement) -> FieldElement {
        self.check(rhs);
        let p = self.field.p;
        for (a, &b) in self.residue.iter_mut().zip(&rhs.residue) {
            *a = (*a + p - b) % p;
        }
        self
    }
}

impl<'a> Mul<&'a FieldElement> for FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: &'a FieldElement) -> FieldElement {
        self.check(rhs);
        let p = self.field.p;
        if self.field.degree() == 1 {
            return FieldElement {
                residue: vec![mul_mod(self.residue[0], rhs.residue[0], p)],
                field: self.field,
            };
        }
        let d = self.field.degree();
        let mut raw = vec![0u64; 2 * d - 1];
        for (i, &a) in self.residue.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in rhs.residue.iter().enumerate() {
                raw[i + j] = (raw[i + j] + mul_mod(a, b, p)) % p;
            }
        }
        FieldElement {
            residue: reduce_raw(raw, &self.field.modulus, p),
            field: self.field,
        }
    }
}

impl Add for FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: FieldElement) -> FieldElement {
        self + &rhs
    }
}

impl Sub for FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: FieldElement) -> FieldElement {
        self - &rhs
    }
}

impl Mul for FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: FieldElement) -> FieldElement {
        self * &rhs
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(mut self) -> FieldElement {
        let p = self.field.p;
        for a in self.residue.iter_mut() {
            *a = (p - *a) % p;
        }
        self
    }
}

impl Field for FieldElement {
    fn zero_like(&self) -> Self {
        Self::zero(&self.field)
    }

    fn one_like(&self) -> Self {
        Self::one(&self.field)
    }

    fn is_zero(&self) -> bool {
        self.residue.iter().all(|&c| c == 0)
    }

    fn from_bigint_like(&self, n: &BigInt) -> Self {
        Self::from_bigint(&self.field, n)
    }

    fn inv(&self) -> Option<Self> {
        if Field::is_zero(self) {
            return None;
        }
        let exp = self.field.order() - BigUint::from(2u32);
        let inv = self.pow_big(&exp);
        debug_assert!((inv.clone() * self).is_one());
        Some(inv)
    }

    fn characteristic(&self) -> u64 {
        self.field.p
    }

    fn is_one(&self) -> bool {
        self.residue[0] == 1 && self.in_prime_subfield()
    }
}

/// Every element of F_q in residue order. Only sensible for small `q`.
pub fn enumerate_field(field: &Arc<FieldDescriptor>) -> Vec<FieldElement> {
    let q = field
        .order()
        .to_usize()
        .expect("field too large to enumerate");
    let d = field.degree();
    (0..q)
        .map(|mut idx| {
            let mut residue = vec![0u64; d];
            for slot in residue.iter_mut() {
                *slot = (idx as u64) % field.p;
                idx /= field.p as usize;
            }
            FieldElement {
                field: field.clone(),
                residue,
            }
        })
        .collect()
}
