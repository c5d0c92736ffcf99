//! Coset partitions of specialized roots and the cyclic bound they give.

use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;

use crate::arith::{FieldElement, UPoly};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coset {
    pub representative: FieldElement,
    pub multiplicity: usize,
    /// `t^p - t` for the representative; constant on the coset.
    pub artin_schreier_value: FieldElement,
    pub singular: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetReport {
    pub p: u64,
    pub q: BigUint,
    pub n: usize,
    pub cosets: Vec<Coset>,
    pub gcd: usize,
}

impl CosetReport {
    pub fn multiplicities(&self) -> Vec<usize> {
        self.cosets.iter().map(|c| c.multiplicity).collect()
    }

    /// `"Z/dZ"`.
    pub fn bound(&self) -> String {
        format!("Z/{}Z", self.gcd)
    }

    pub fn singular_points(&self) -> Vec<SingularPoint> {
        singular_locus(&self.cosets)
    }
}

/// The point `x_p = y_p = 0`, `h_p = h_value` of the center's spectrum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SingularPoint {
    pub h_value: FieldElement,
}

impl fmt::Display for SingularPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(x_p, y_p, h_p) = (0, 0, {})", self.h_value)
    }
}

fn check_same_field(roots: &[FieldElement]) -> Result<()> {
    match roots.split_first() {
        Some((first, rest)) if rest.iter().any(|r| !r.same_field(first)) => {
            Err(Error::FieldMismatch)
        }
        _ => Ok(()),
    }
}

/// Groups roots by `t ~ t'` iff `t - t'` lies in the prime field.
/// Representatives appear in order of first occurrence.
pub fn coset_partition(roots: &[FieldElement]) -> Result<Vec<(FieldElement, usize)>> {
    check_same_field(roots)?;
    let mut parts: Vec<(FieldElement, usize)> = Vec::new();
    for t in roots {
        match parts
            .iter_mut()
            .find(|(rep, _)| (t.clone() - rep).in_prime_subfield())
        {
            Some((_, a)) => *a += 1,
            None => parts.push((t.clone(), 1)),
        }
    }
    Ok(parts)
}

/// Groups roots by equal values of `t^p - t`, in order of first occurrence.
pub fn artin_schreier_partition(roots: &[FieldElement]) -> Result<Vec<(FieldElement, usize)>> {
    check_same_field(roots)?;
    let mut parts: Vec<(FieldElement, FieldElement, usize)> = Vec::new();
    for t in roots {
        let value = t.artin_schreier();
        match parts.iter_mut().find(|(_, v, _)| *v == value) {
            Some((_, _, a)) => *a += 1,
            None => parts.push((t.clone(), value, 1)),
        }
    }
    Ok(parts.into_iter().map(|(t, _, a)| (t, a)).collect())
}

pub fn singular_locus(cosets: &[Coset]) -> Vec<SingularPoint> {
    cosets
        .iter()
        .filter(|c| c.multiplicity > 1)
        .map(|c| SingularPoint {
            h_value: c.artin_schreier_value.clone(),
        })
        .collect()
}

pub fn galois_bound(roots: &[FieldElement]) -> Result<CosetReport> {
    let first = roots.first().ok_or(Error::MissingRoots)?;
    let field = first.field();
    let cosets: Vec<Coset> = coset_partition(roots)?
        .into_iter()
        .map(|(rep, a)| Coset {
            artin_schreier_value: rep.artin_schreier(),
            representative: rep,
            multiplicity: a,
            singular: a > 1,
        })
        .collect();
    let gcd = cosets.iter().fold(0usize, |d, c| d.gcd(&c.multiplicity));
    Ok(CosetReport {
        p: field.characteristic(),
        q: field.order().clone(),
        n: roots.len(),
        cosets,
        gcd,
    })
}

/// `∏ (T - (t_j^p - t_j))`; its root multiplicities are the coset sizes.
pub fn artin_schreier_product(roots: &[FieldElement]) -> Result<UPoly<FieldElement>> {
    check_same_field(roots)?;
    let first = roots.first().ok_or(Error::MissingRoots)?;
    let values: Vec<FieldElement> = roots.iter().map(FieldElement::artin_schreier).collect();
    Ok(UPoly::from_roots(
        &FieldElement::one(first.field()),
        &values,
    ))
}

/// Multiplicity of `r` as a root of `f` (nonzero `f`).
pub fn root_multiplicity(f: &UPoly<FieldElement>, r: &FieldElement) -> usize {
    let one = FieldElement::one(r.field());
    let linear = UPoly::new(vec![-r.clone(), one]);
    let mut g = f.clone();
    let mut m = 0;
    while !g.is_zero() {
        let (q, rem) = g.div_rem(&linear);
        if !rem.is_zero() {
            break;
        }
        g = q;
        m += 1;
    }
    m
}

/// Smallest `d` over a batch of per-prime reports.
pub fn aggregate_bound(reports: &[CosetReport]) -> Option<usize> {
    reports.iter().map(|r| r.gcd).min()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{make_extension_field, Field, FieldDescriptor};

    fn f25_roots(pairs: &[(i64, i64)]) -> Vec<FieldElement> {
        let f = make_extension_field(5, &[-2, 0, 1]).unwrap();
        pairs
            .iter()
            .map(|&(a, b)| FieldElement::from_coeffs(&f, &[a, b]))
            .collect()
    }

    fn fp_roots(p: u64, rs: &[i64]) -> Vec<FieldElement> {
        let f = FieldDescriptor::prime(p).unwrap();
        rs.iter().map(|&r| FieldElement::from_i64(&f, r)).collect()
    }

    #[test]
    fn partition_examples() {
        let parts = coset_partition(&fp_roots(7, &[0, 5])).unwrap();
        assert_eq!(parts.iter().map(|p| p.1).collect::<Vec<_>>(), vec![2]);

        let parts = coset_partition(&f25_roots(&[(0, 0), (0, 1)])).unwrap();
        assert_eq!(parts.iter().map(|p| p.1).collect::<Vec<_>>(), vec![1, 1]);

        let parts = coset_partition(&f25_roots(&[(0, 0), (0, 0), (0, 1)])).unwrap();
        assert_eq!(parts.iter().map(|p| p.1).collect::<Vec<_>>(), vec![2, 1]);
    }

    #[test]
    fn singular_examples() {
        let r = galois_bound(&fp_roots(7, &[0, 5])).unwrap();
        let pts = r.singular_points();
        assert_eq!(pts.len(), 1);
        assert!(pts[0].h_value.is_zero());

        let r = galois_bound(&f25_roots(&[(0, 0), (0, 1)])).unwrap();
        assert!(r.singular_points().is_empty());

        let r = galois_bound(&f25_roots(&[(0, 0), (0, 0), (0, 1)])).unwrap();
        let pts = r.singular_points();
        assert_eq!(pts.len(), 1);
        assert!(pts[0].h_value.is_zero());
    }

    #[test]
    fn bound_examples() {
        for p in [2, 3, 5, 7, 11] {
            let r = galois_bound(&fp_roots(p, &[0, 0, 0])).unwrap();
            assert_eq!((r.gcd, r.bound()), (3, "Z/3Z".to_string()));
        }
        let r = galois_bound(&f25_roots(&[(0, 0), (0, 1)])).unwrap();
        assert_eq!(r.gcd, 1);
        assert_eq!(r.q, BigUint::from(25u32));
        // 3*sqrt2 is the value t^5 - t at t = sqrt2
        assert_eq!(
            r.cosets[1].artin_schreier_value,
            FieldElement::from_coeffs(r.cosets[1].representative.field(), &[0, 3])
        );
        let r = galois_bound(&fp_roots(7, &[0, 5])).unwrap();
        assert_eq!(r.bound(), "Z/2Z");
        assert_eq!(aggregate_bound(&[]), None);
    }

    #[test]
    fn mixed_fields_rejected() {
        let mut roots = fp_roots(7, &[0]);
        roots.extend(fp_roots(5, &[1]));
        assert_eq!(coset_partition(&roots), Err(Error::FieldMismatch));
        assert_eq!(galois_bound(&roots), Err(Error::FieldMismatch));
        assert_eq!(galois_bound(&[]), Err(Error::MissingRoots));
    }

    #[test]
    fn multiplicities_match_product_roots() {
        let roots = f25_roots(&[(1, 0), (0, 1), (3, 0), (2, 1), (4, 4)]);
        let report = galois_bound(&roots).unwrap();
        let f = artin_schreier_product(&roots).unwrap();
        for c in &report.cosets {
            assert_eq!(
                root_multiplicity(&f, &c.artin_schreier_value),
                c.multiplicity
            );
        }
        assert_eq!(report.multiplicities(), vec![2, 2, 1]);
    }
}
