//! Prime search for specializations of parameters into finite fields.
//!
//! Rational parameters reduce into `F_p` for every prime dividing none of their
//! denominators. An algebraic irrational parameter lands outside `F_p` exactly
//! when its minimal polynomial keeps an irreducible factor of degree `e ≥ 2`
//! mod `p`; the image is then the class of `z` in `F_p[z]/(factor)`.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::arith::factor::{distinct_degree_profile, factors_of_degree, first_irreducible, roots};
use crate::arith::{is_prime, make_extension_field, FieldDescriptor, FieldElement, FqPoly, UPoly};
use crate::{Error, Result};

/// Default prime ceiling for the irrational search.
pub const DEFAULT_CEILING: u64 = 10_000;

/// An algebraic number given by its minimal polynomial over ℚ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraicParam {
    minpoly: Vec<BigInt>,
    label: String,
}

impl AlgebraicParam {
    /// `minpoly` is low-degree first, with integer coefficients of content 1.
    /// Irreducibility is the caller's responsibility; only squarefreeness is
    /// checked.
    pub fn new(minpoly: Vec<BigInt>, label: impl Into<String>) -> Result<Self> {
        let mut minpoly = minpoly;
        while minpoly.last().is_some_and(Zero::is_zero) {
            minpoly.pop();
        }
        if minpoly.len() < 2 {
            return Err(Error::InvalidParameter(
                "minimal polynomial must have degree at least 1".into(),
            ));
        }
        let content = minpoly.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
        if !content.is_one() {
            return Err(Error::InvalidParameter(format!(
                "minimal polynomial has content {content}"
            )));
        }
        let param = Self {
            minpoly,
            label: label.into(),
        };
        let f = param.rational_poly();
        if f.gcd(&f.derivative()).degree() != Some(0) {
            return Err(Error::InvalidParameter(
                "minimal polynomial is not squarefree".into(),
            ));
        }
        Ok(param)
    }

    pub fn from_i64(minpoly: &[i64], label: impl Into<String>) -> Result<Self> {
        Self::new(minpoly.iter().map(|&c| BigInt::from(c)).collect(), label)
    }

    pub fn minpoly(&self) -> &[BigInt] {
        &self.minpoly
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn degree(&self) -> usize {
        self.minpoly.len() - 1
    }

    pub fn is_irrational(&self) -> bool {
        self.degree() >= 2
    }

    fn rational_poly(&self) -> UPoly<BigRational> {
        UPoly::new(
            self.minpoly
                .iter()
                .map(|c| BigRational::from_integer(c.clone()))
                .collect(),
        )
    }

    fn leading(&self) -> &BigInt {
        self.minpoly.last().expect("degree at least 1")
    }

    /// Whether `p` divides the leading coefficient, so the reduction drops
    /// degree.
    pub fn is_bad_prime(&self, p: u64) -> bool {
        (self.leading() % BigInt::from(p)).is_zero()
    }

    /// The minimal polynomial with coefficients reduced into `field`.
    pub fn reduce(&self, field: &Arc<FieldDescriptor>) -> FqPoly {
        UPoly::new(
            self.minpoly
                .iter()
                .map(|c| {
                    FieldElement::from_rational(field, &BigRational::from_integer(c.clone()))
                        .expect("integers always reduce")
                })
                .collect(),
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecializationCertificate {
    pub p: u64,
    pub field: Arc<FieldDescriptor>,
    pub residue: FieldElement,
    pub in_fp: bool,
}

impl SpecializationCertificate {
    /// Re-checks the residue against the minimal polynomial and the Frobenius
    /// test for `in_fp`.
    pub fn verify(&self, param: &AlgebraicParam) -> bool {
        let f = param.reduce(&self.field);
        let fixed = self.residue.frobenius() == self.residue;
        self.residue.field() == &self.field
            && crate::arith::Field::is_zero(&f.eval(&self.residue))
            && fixed == self.in_fp
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalSpecialization {
    pub p: u64,
    pub residues: Vec<FieldElement>,
}

fn divides_denominator(p: u64, r: &BigRational) -> bool {
    (r.denom() % BigInt::from(p)).is_zero()
}

/// The first `count` primes dividing no denominator, with reduced residues.
pub fn find_primes_rational(params: &[BigRational], count: usize) -> Vec<RationalSpecialization> {
    let mut out = Vec::with_capacity(count);
    let mut p = 1u64;
    while out.len() < count {
        p += 1;
        if !is_prime(p) || params.iter().any(|r| divides_denominator(p, r)) {
            continue;
        }
        let field = FieldDescriptor::prime(p).expect("p is prime");
        let residues = params
            .iter()
            .map(|r| FieldElement::from_rational(&field, r).expect("denominator is a unit"))
            .collect();
        out.push(RationalSpecialization { p, residues });
    }
    out
}

/// Specializes `param` at `p` outside `F_p`, if the minimal polynomial has an
/// irreducible factor of degree at least 2 there. The smallest such degree is
/// used, with the first factor in canonical order.
pub fn specialize_at(param: &AlgebraicParam, p: u64) -> Result<Option<SpecializationCertificate>> {
    let prime = FieldDescriptor::prime(p)?;
    if param.is_bad_prime(p) {
        return Ok(None);
    }
    let f = param.reduce(&prime);
    let profile = distinct_degree_profile(&f)?;
    let Some(&e) = profile.keys().find(|&&e| e >= 2) else {
        return Ok(None);
    };
    let factor = factors_of_degree(&f, e)?
        .into_iter()
        .next()
        .expect("profile promises a factor");
    let modulus: Vec<i64> = factor
        .coeffs()
        .iter()
        .map(|c| c.to_i64_coeffs()[0])
        .collect();
    let field = make_extension_field(p, &modulus)?;
    let residue = FieldElement::generator(&field);
    let in_fp = residue.frobenius() == residue;
    Ok(Some(SpecializationCertificate {
        p,
        field,
        residue,
        in_fp,
    }))
}

/// Scans primes upward from 2 to `ceiling` and returns up to `count`
/// certificates with `in_fp = false`.
pub fn find_primes_irrational(
    param: &AlgebraicParam,
    count: usize,
    ceiling: u64,
) -> Result<Vec<SpecializationCertificate>> {
    if !param.is_irrational() {
        return Err(Error::InvalidParameter(
            "parameter is rational (degree 1)".into(),
        ));
    }
    let mut out = Vec::new();
    for p in (2..=ceiling).filter(|&p| is_prime(p)) {
        if out.len() == count {
            break;
        }
        if let Some(cert) = specialize_at(param, p)? {
            out.push(cert);
        }
    }
    if out.is_empty() && count > 0 {
        return Err(Error::ExhaustedSearch(ceiling));
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Separation {
    Separated,
    Merged,
}

/// Compares `t1^p - t1` with `t2^p - t2`.
pub fn as_separation(t1: &FieldElement, t2: &FieldElement) -> Result<Separation> {
    if !t1.same_field(t2) {
        return Err(Error::FieldMismatch);
    }
    Ok(if t1.artin_schreier() == t2.artin_schreier() {
        Separation::Merged
    } else {
        Separation::Separated
    })
}

/// A root of `v` before specialization.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Parameter {
    Rational(BigRational),
    Algebraic(AlgebraicParam),
    /// Explicit residue coefficients in the field given by a modulus.
    Element(Vec<i64>),
}

#[derive(Clone, Debug)]
pub struct Specialized {
    pub field: Arc<FieldDescriptor>,
    pub values: Vec<FieldElement>,
}

fn lcm_all(xs: impl Iterator<Item = usize>) -> usize {
    xs.fold(1, |a, b| a.lcm(&b))
}

/// Specializes parameters into one finite field of characteristic `p`.
///
/// With an explicit `modulus` the field is `F_p[z]/(modulus)`. Otherwise it is
/// `F_p` when every parameter is rational; with algebraic parameters, each
/// distinct minimal polynomial picks its smallest factor degree `e ≥ 2`
/// (or 1 if it splits), and the field has degree the lcm of these. If only one
/// minimal polynomial occurs, the field is cut out by its first factor of that
/// degree.
///
/// Parameters sharing a label share a value. Distinct labels with the same
/// minimal polynomial take successive roots in ascending order.
pub fn specialize(params: &[Parameter], p: u64, modulus: Option<&[i64]>) -> Result<Specialized> {
    let prime = FieldDescriptor::prime(p)?;
    let mut minpolys: Vec<&AlgebraicParam> = Vec::new();
    for param in params {
        if let Parameter::Algebraic(a) = param {
            if a.is_bad_prime(p) {
                return Err(Error::Specialization(format!(
                    "{p} divides the leading coefficient of the minimal polynomial of {}",
                    a.label()
                )));
            }
            if !minpolys.iter().any(|m| m.minpoly() == a.minpoly()) {
                minpolys.push(a);
            }
        }
    }
    let field = match modulus {
        Some(m) => make_extension_field(p, m)?,
        None if params.iter().any(|x| matches!(x, Parameter::Element(_))) => {
            return Err(Error::Specialization(
                "explicit field elements need a modulus".into(),
            ))
        }
        None if minpolys.is_empty() => prime.clone(),
        None => {
            let mut degrees = Vec::new();
            for a in &minpolys {
                let profile = distinct_degree_profile(&a.reduce(&prime))?;
                degrees.push(profile.keys().copied().find(|&e| e >= 2).unwrap_or(1));
            }
            let e = lcm_all(degrees.iter().copied());
            if minpolys.len() == 1 && e >= 2 {
                let factor = factors_of_degree(&minpolys[0].reduce(&prime), e)?
                    .into_iter()
                    .next()
                    .expect("profile promises a factor");
                let m: Vec<i64> = factor
                    .coeffs()
                    .iter()
                    .map(|c| c.to_i64_coeffs()[0])
                    .collect();
                make_extension_field(p, &m)?
            } else if e == 1 {
                prime.clone()
            } else {
                make_extension_field(p, &first_irreducible(p, e)?)?
            }
        }
    };

    let mut root_cache: BTreeMap<Vec<BigInt>, Vec<FieldElement>> = BTreeMap::new();
    let mut label_values: BTreeMap<String, FieldElement> = BTreeMap::new();
    let mut next_root: BTreeMap<Vec<BigInt>, usize> = BTreeMap::new();
    let mut values = Vec::with_capacity(params.len());
    for param in params {
        let value = match param {
            Parameter::Rational(r) => FieldElement::from_rational(&field, r)?,
            Parameter::Element(coeffs) => {
                if coeffs.len() > field.degree() {
                    return Err(Error::Specialization(format!(
                        "element has {} coefficients but the field has degree {}",
                        coeffs.len(),
                        field.degree()
                    )));
                }
                FieldElement::from_coeffs(&field, coeffs)
            }
            Parameter::Algebraic(a) => {
                if let Some(v) = label_values.get(a.label()) {
                    v.clone()
                } else {
                    let key = a.minpoly().to_vec();
                    if !root_cache.contains_key(&key) {
                        root_cache.insert(key.clone(), roots(&a.reduce(&field))?);
                    }
                    let available = &root_cache[&key];
                    let idx = next_root.entry(key).or_insert(0);
                    let v = available.get(*idx).cloned().ok_or_else(|| {
                        Error::Specialization(format!(
                            "minimal polynomial of {} has only {} roots in a field of order {}",
                            a.label(),
                            available.len(),
                            field.order()
                        ))
                    })?;
                    *idx += 1;
                    label_values.insert(a.label().to_string(), v.clone());
                    v
                }
            }
        };
        values.push(value);
    }
    Ok(Specialized { field, values })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, Field};

    fn primes(v: &[RationalSpecialization]) -> Vec<u64> {
        v.iter().map(|s| s.p).collect()
    }

    #[test]
    fn rational_examples() {
        let r = find_primes_rational(&[rat(3, 4)], 3);
        assert_eq!(primes(&r), vec![3, 5, 7]);
        for s in &r {
            let four = FieldElement::from_u64(s.residues[0].field(), 4);
            assert_eq!(
                s.residues[0].clone() * &four,
                FieldElement::from_u64(four.field(), 3)
            );
        }
        assert_eq!(
            primes(&find_primes_rational(&[rat(1, 2), rat(5, 1)], 1)),
            vec![3]
        );
        assert_eq!(primes(&find_primes_rational(&[rat(1, 6)], 2)), vec![5, 7]);
        assert!(find_primes_rational(&[rat(1, 6)], 0).is_empty());
    }

    #[test]
    fn sqrt2_search() {
        let s2 = AlgebraicParam::from_i64(&[-2, 0, 1], "s").unwrap();
        let certs = find_primes_irrational(&s2, 5, 200).unwrap();
        let ps: Vec<u64> = certs.iter().map(|c| c.p).collect();
        assert!(ps.contains(&5));
        assert!(!ps.contains(&7));
        let c5 = certs.iter().find(|c| c.p == 5).unwrap();
        assert_eq!(c5.field.order(), &25u32.into());
        for c in &certs {
            assert!(!c.in_fp);
            assert!(c.verify(&s2));
        }
        assert_eq!(specialize_at(&s2, 7).unwrap(), None);
    }

    #[test]
    fn golden_ratio_includes_three() {
        let phi = AlgebraicParam::from_i64(&[-1, -1, 1], "phi").unwrap();
        let certs = find_primes_irrational(&phi, 3, 100).unwrap();
        assert_eq!(certs[0].p, 2);
        assert!(certs.iter().any(|c| c.p == 3));
        assert!(certs.iter().all(|c| c.verify(&phi)));
    }

    #[test]
    fn search_exhaustion_and_bad_inputs() {
        // z^2 - 2 splits mod 7 and ramifies mod 2, so nothing below 3 works
        let s2 = AlgebraicParam::from_i64(&[-2, 0, 1], "s").unwrap();
        assert_eq!(
            find_primes_irrational(&s2, 1, 2),
            Err(Error::ExhaustedSearch(2))
        );
        let q = AlgebraicParam::from_i64(&[-1, 2], "half").unwrap();
        assert!(matches!(
            find_primes_irrational(&q, 1, 50),
            Err(Error::InvalidParameter(_))
        ));
        assert!(AlgebraicParam::from_i64(&[2, 0, 4], "c").is_err());
        assert!(AlgebraicParam::from_i64(&[1, 2, 1], "sq").is_err());
        assert!(AlgebraicParam::from_i64(&[5], "k").is_err());
    }

    #[test]
    fn non_monic_minpoly_skips_leading_primes() {
        // 2z^2 - 3: sqrt(3/2)
        let a = AlgebraicParam::from_i64(&[-3, 0, 2], "a").unwrap();
        let certs = find_primes_irrational(&a, 4, 100).unwrap();
        assert!(certs.iter().all(|c| c.p != 2 && c.verify(&a)));
    }

    #[test]
    fn separation_examples() {
        let f = make_extension_field(5, &[-2, 0, 1]).unwrap();
        let zero = FieldElement::zero(&f);
        let s = FieldElement::generator(&f);
        assert_eq!(as_separation(&zero, &s).unwrap(), Separation::Separated);
        assert_eq!(s.artin_schreier(), FieldElement::from_coeffs(&f, &[0, 3]));
        let three = FieldElement::from_u64(&f, 3);
        assert_eq!(as_separation(&zero, &three).unwrap(), Separation::Merged);
        assert_eq!(as_separation(&s, &s).unwrap(), Separation::Merged);
        let other = FieldElement::zero(&FieldDescriptor::prime(5).unwrap());
        assert_eq!(as_separation(&zero, &other), Err(Error::FieldMismatch));
    }

    #[test]
    fn specialize_mixed_parameters() {
        let s2 = AlgebraicParam::from_i64(&[-2, 0, 1], "s").unwrap();
        let sp = specialize(
            &[
                Parameter::Rational(rat(0, 1)),
                Parameter::Algebraic(s2.clone()),
            ],
            5,
            None,
        )
        .unwrap();
        assert_eq!(sp.field.degree(), 2);
        assert!(sp.values[0].is_zero());
        assert!(s2.reduce(&sp.field).eval(&sp.values[1]).is_zero());
        assert!(!sp.values[1].in_prime_subfield());

        // same label, same value; new label, the conjugate
        let s2b = AlgebraicParam::from_i64(&[-2, 0, 1], "t").unwrap();
        let sp = specialize(
            &[
                Parameter::Algebraic(s2.clone()),
                Parameter::Algebraic(s2.clone()),
                Parameter::Algebraic(s2b.clone()),
            ],
            5,
            None,
        )
        .unwrap();
        assert_eq!(sp.values[0], sp.values[1]);
        assert_eq!(sp.values[2], -sp.values[0].clone());

        // a third label has no root left
        let s2c = AlgebraicParam::from_i64(&[-2, 0, 1], "u").unwrap();
        let err = specialize(
            &[
                Parameter::Algebraic(s2.clone()),
                Parameter::Algebraic(s2b),
                Parameter::Algebraic(s2c),
            ],
            5,
            None,
        );
        assert!(matches!(err, Err(Error::Specialization(_))));

        // sqrt2 and a root of z^3 + z + 1 (irreducible mod 5): F_{5^6}
        let c2 = AlgebraicParam::from_i64(&[1, 1, 0, 1], "c").unwrap();
        let sp = specialize(
            &[Parameter::Algebraic(s2), Parameter::Algebraic(c2.clone())],
            5,
            None,
        )
        .unwrap();
        assert_eq!(sp.field.degree(), 6);
        assert!(c2.reduce(&sp.field).eval(&sp.values[1]).is_zero());
    }

    #[test]
    fn specialize_rejections() {
        assert!(matches!(
            specialize(&[Parameter::Rational(rat(1, 7))], 7, None),
            Err(Error::Specialization(_))
        ));
        assert!(matches!(
            specialize(&[Parameter::Element(vec![0, 1])], 5, None),
            Err(Error::Specialization(_))
        ));
        let sp = specialize(&[Parameter::Element(vec![1, 1])], 5, Some(&[-2, 0, 1])).unwrap();
        assert_eq!(sp.values[0].residue(), &[1, 1]);
        assert_eq!(
            specialize(&[Parameter::Rational(rat(1, 2))], 5, Some(&[1, 0, 1])).unwrap_err(),
            Error::Reducible("z^2 + 1".into())
        );
    }
}
