//! The center of `A(v)` over a field of characteristic `p`.
//!
//! The center is generated by `x^p`, `y^p` and `h^p - h`, subject to
//! `x^p y^p = ∏ (h_p - (t_i^p - t_i))`. [`center_witness`] builds the
//! generators together with every commutator and the relation residual as
//! explicit normal forms; [`brute_force_center`] recomputes the center up to a
//! filtration degree by plain linear algebra, independently of that
//! description.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::arith::linalg::{same_span, span_rank};
use crate::arith::{DenseMatrix, Field, UPoly};
use crate::gwa::{GwaAlgebra, GwaElement, GwaGenerators};
use crate::{Error, Result};

/// Upper limit on the monomial basis handled by the brute-force oracle.
pub const MAX_ORACLE_BASIS: usize = 4096;

#[derive(Clone, Debug)]
pub struct Commutator<K> {
    pub generator: &'static str,
    pub with: &'static str,
    pub value: GwaElement<K>,
}

#[derive(Clone, Debug)]
pub struct CenterWitness<K> {
    pub x_p: GwaElement<K>,
    pub y_p: GwaElement<K>,
    pub h_p: GwaElement<K>,
    /// `[g, u]` for `g ∈ {x_p, y_p, h_p}`, `u ∈ {x, y, h}`.
    pub commutators: Vec<Commutator<K>>,
    /// `x_p y_p - ∏ (h_p - (t_i^p - t_i))`, when the roots of `v` are known.
    pub relation: Option<GwaElement<K>>,
}

impl<K: Field> CenterWitness<K> {
    pub fn all_central(&self) -> bool {
        self.commutators.iter().all(|c| c.value.is_zero())
    }

    pub fn relation_holds(&self) -> Option<bool> {
        self.relation.as_ref().map(GwaElement::is_zero)
    }
}

fn characteristic<K: Field>(alg: &GwaAlgebra<K>) -> Result<u32> {
    match alg.characteristic() {
        0 => Err(Error::CharacteristicZero),
        p => Ok(p as u32),
    }
}

/// Computes the witness without judging it.
pub fn center_witness<K: Field>(alg: &Arc<GwaAlgebra<K>>) -> Result<CenterWitness<K>> {
    let p = characteristic(alg)?;
    let (x, y, h) = (alg.x(), alg.y(), alg.h());
    let x_p = x.pow(p);
    let y_p = y.pow(p);
    let h_p = &h.pow(p) - &h;
    let mut commutators = Vec::with_capacity(9);
    for (gname, g) in [("x_p", &x_p), ("y_p", &y_p), ("h_p", &h_p)] {
        for (uname, u) in [("x", &x), ("y", &y), ("h", &h)] {
            commutators.push(Commutator {
                generator: gname,
                with: uname,
                value: g.commutator(u)?,
            });
        }
    }
    let relation = match alg.roots() {
        Some(roots) => Some(relation_residual(alg, &x_p, &y_p, &h_p, roots)?),
        None => None,
    };
    Ok(CenterWitness {
        x_p,
        y_p,
        h_p,
        commutators,
        relation,
    })
}

fn relation_residual<K: Field>(
    alg: &Arc<GwaAlgebra<K>>,
    x_p: &GwaElement<K>,
    y_p: &GwaElement<K>,
    h_p: &GwaElement<K>,
    roots: &[K],
) -> Result<GwaElement<K>> {
    let p = characteristic(alg)? as u64;
    let rhs = roots.iter().fold(alg.one(), |acc, t| {
        let as_value = t.pow_u64(p) - t;
        &acc * &(h_p - &alg.constant(as_value))
    });
    x_p.try_mul(y_p)?.try_sub(&rhs)
}

/// Builds `x^p, y^p, h^p - h` and checks all nine commutators vanish.
pub fn central_generators<K: Field>(alg: &Arc<GwaAlgebra<K>>) -> Result<CenterWitness<K>> {
    let w = center_witness(alg)?;
    if let Some(bad) = w.commutators.iter().find(|c| !c.value.is_zero()) {
        return Err(Error::CentralityFailure {
            generator: bad.generator.to_string(),
            with: bad.with.to_string(),
        });
    }
    Ok(w)
}

/// Returns the (zero) residual `x_p y_p - ∏ (h_p - (t_i^p - t_i))`.
pub fn verify_center_relation<K: Field>(alg: &Arc<GwaAlgebra<K>>) -> Result<GwaElement<K>> {
    let roots = alg.roots().ok_or(Error::MissingRoots)?;
    let p = characteristic(alg)?;
    let x_p = alg.x().pow(p);
    let y_p = alg.y().pow(p);
    let h_p = &alg.h().pow(p) - &alg.h();
    let residual = relation_residual(alg, &x_p, &y_p, &h_p, roots)?;
    if residual.is_zero() {
        Ok(residual)
    } else {
        Err(Error::RelationFailure)
    }
}

#[derive(Clone, Debug)]
pub struct CenterBasis<K> {
    pub degree_bound: usize,
    /// Basis of the central elements of filtration degree `≤ degree_bound`,
    /// grouped by weight.
    pub elements: Vec<GwaElement<K>>,
    /// Number of basis monomials the oracle solved over.
    pub monomials: usize,
}

/// Weight blocks `k → [h-degrees]` of the monomial basis of degree `≤ bound`.
fn monomial_blocks(n: usize, bound: usize) -> BTreeMap<i64, usize> {
    let mut blocks = BTreeMap::new();
    let kmax = (bound / n) as i64;
    for k in -kmax..=kmax {
        let rest = bound - n * k.unsigned_abs() as usize;
        blocks.insert(k, rest / 2 + 1);
    }
    blocks
}

/// Solves `[z, x] = [z, y] = [z, h] = 0` over all monomials of filtration
/// degree `≤ bound`.
///
/// Brackets with `x`, `y`, `h` move weight `k` to `k+1`, `k-1`, `k`, so
/// distinct weight blocks never share an equation and are solved separately.
pub fn brute_force_center<K: Field>(
    alg: &Arc<GwaAlgebra<K>>,
    bound: usize,
) -> Result<CenterBasis<K>> {
    let blocks = monomial_blocks(alg.degree(), bound);
    let monomials: usize = blocks.values().sum();
    if monomials > MAX_ORACLE_BASIS {
        return Err(Error::DegreeTooLarge(bound));
    }
    let gens = [alg.x(), alg.y(), alg.h()];
    let mut elements = Vec::new();
    for (&k, &count) in &blocks {
        let basis: Vec<GwaElement<K>> = (0..count)
            .map(|m| alg.monomial(alg.unit().clone(), k, m))
            .collect();
        let mut brackets = Vec::with_capacity(3 * count);
        for b in &basis {
            for g in &gens {
                brackets.push(b.commutator(g)?);
            }
        }
        let (vectors, len) = coordinates(&brackets);
        let columns: Vec<Vec<K>> = vectors.chunks(3).map(|c| c.concat()).collect();
        let m = DenseMatrix::from_columns(&columns, 3 * len, alg.unit())?;
        for null in m.nullspace() {
            let z = basis
                .iter()
                .zip(&null)
                .filter(|(_, c)| !c.is_zero())
                .fold(alg.zero(), |acc, (b, c)| &acc + &b.scale(c));
            elements.push(z);
        }
    }
    Ok(CenterBasis {
        degree_bound: bound,
        elements,
        monomials,
    })
}

/// Coordinates of elements in the `(weight, h-degree)` monomial basis spanned
/// by all of them.
pub fn coordinates<K: Field>(elems: &[GwaElement<K>]) -> (Vec<Vec<K>>, usize) {
    let mut index: BTreeMap<(i64, usize), usize> = BTreeMap::new();
    for e in elems {
        for (&k, p) in e.terms() {
            for (m, c) in p.coeffs().iter().enumerate() {
                if !c.is_zero() {
                    let next = index.len();
                    index.entry((k, m)).or_insert(next);
                }
            }
        }
    }
    let len = index.len();
    let vectors = elems
        .iter()
        .map(|e| {
            let unit = e.algebra().unit();
            let mut v = vec![unit.zero_like(); len];
            for (&k, p) in e.terms() {
                for (m, c) in p.coeffs().iter().enumerate() {
                    if !c.is_zero() {
                        v[index[&(k, m)]] = c.clone();
                    }
                }
            }
            v
        })
        .collect();
    (vectors, len)
}

/// Products `x_p^a y_p^b h_p^c` of filtration degree `≤ bound`.
pub fn generator_monomials<K: Field>(
    alg: &Arc<GwaAlgebra<K>>,
    bound: usize,
) -> Result<Vec<GwaElement<K>>> {
    let p = characteristic(alg)? as usize;
    let n = alg.degree();
    let x_p = alg.x().pow(p as u32);
    let y_p = alg.y().pow(p as u32);
    let h_p = &alg.h().pow(p as u32) - &alg.h();
    let mut out = Vec::new();
    for a in 0..=bound / (n * p) {
        for b in 0..=(bound / (n * p)).saturating_sub(a) {
            let xy_deg = n * p * (a + b);
            if xy_deg > bound {
                continue;
            }
            for c in 0..=(bound - xy_deg) / (2 * p) {
                let e = &(&x_p.pow(a as u32) * &y_p.pow(b as u32)) * &h_p.pow(c as u32);
                if e.filtration_degree().is_some_and(|d| d <= bound) {
                    out.push(e);
                }
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SpanComparison {
    pub oracle_rank: usize,
    pub generated_rank: usize,
    pub joint_rank: usize,
}

impl SpanComparison {
    pub fn equal(&self) -> bool {
        self.oracle_rank == self.joint_rank && self.generated_rank == self.joint_rank
    }
}

/// Compares the oracle's center with the span of generator monomials.
pub fn compare_with_generators<K: Field>(
    alg: &Arc<GwaAlgebra<K>>,
    bound: usize,
) -> Result<SpanComparison> {
    let oracle = brute_force_center(alg, bound)?.elements;
    let generated = generator_monomials(alg, bound)?;
    let all: Vec<GwaElement<K>> = oracle.iter().chain(&generated).cloned().collect();
    let (vectors, len) = coordinates(&all);
    let (ov, gv) = vectors.split_at(oracle.len());
    let unit = alg.unit();
    let cmp = SpanComparison {
        oracle_rank: span_rank(ov, len, unit),
        generated_rank: span_rank(gv, len, unit),
        joint_rank: span_rank(&vectors, len, unit),
    };
    debug_assert_eq!(cmp.equal(), same_span(ov, gv, len, unit));
    Ok(cmp)
}

/// `∏ (T - (t_j^p - t_j))` as a polynomial in `T`.
pub fn artin_schreier_polynomial<K: Field>(roots: &[K], p: u64) -> Option<UPoly<K>> {
    let unit = roots.first()?.one_like();
    let values: Vec<K> = roots.iter().map(|t| t.pow_u64(p) - t).collect();
    Some(UPoly::from_roots(&unit, &values))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{make_extension_field, rat, FieldDescriptor, FieldElement};
    use crate::gwa::SymbolPoly;

    fn fp_alg(p: u64, roots: &[i64]) -> Arc<GwaAlgebra<FieldElement>> {
        let f = FieldDescriptor::prime(p).unwrap();
        GwaAlgebra::from_roots(
            roots
                .iter()
                .map(|&r| FieldElement::from_i64(&f, r))
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn generators_are_central() {
        for (p, roots) in [(3, vec![0, 0]), (5, vec![1]), (2, vec![0])] {
            let alg = fp_alg(p, &roots);
            let w = central_generators(&alg).unwrap();
            assert_eq!(w.commutators.len(), 9);
            assert!(w.all_central());
            assert_eq!(w.relation_holds(), Some(true));
        }
    }

    #[test]
    fn relation_instances() {
        // F_3, v = h^2: x^3 y^3 = (h^3 - h)^2
        let alg = fp_alg(3, &[0, 0]);
        assert!(verify_center_relation(&alg).unwrap().is_zero());
        let h3 = &alg.h().pow(3) - &alg.h();
        assert_eq!(&alg.x().pow(3) * &alg.y().pow(3), h3.pow(2));

        // F_5, v = h - 1: x^5 y^5 = h^5 - h
        let alg = fp_alg(5, &[1]);
        assert_eq!(
            &alg.x().pow(5) * &alg.y().pow(5),
            &alg.h().pow(5) - &alg.h()
        );

        // F_25 with t = (0, sqrt 2): x^5 y^5 = h_5 (h_5 - 3 sqrt 2)
        let f25 = make_extension_field(5, &[-2, 0, 1]).unwrap();
        let s = FieldElement::generator(&f25);
        let alg = GwaAlgebra::from_roots(vec![FieldElement::zero(&f25), s.clone()]).unwrap();
        let h5 = &alg.h().pow(5) - &alg.h();
        let three_s = FieldElement::from_coeffs(&f25, &[0, 3]);
        let rhs = &h5 * &(&h5 - &alg.constant(three_s));
        assert_eq!(&alg.x().pow(5) * &alg.y().pow(5), rhs);
        assert!(verify_center_relation(&alg).unwrap().is_zero());
    }

    #[test]
    fn relation_needs_roots_and_positive_characteristic() {
        let f5 = FieldDescriptor::prime(5).unwrap();
        let v = UPoly::new(vec![
            FieldElement::from_i64(&f5, 2),
            FieldElement::zero(&f5),
            FieldElement::one(&f5),
        ]);
        let alg = GwaAlgebra::new(v).unwrap();
        assert!(matches!(
            verify_center_relation(&alg),
            Err(Error::MissingRoots)
        ));
        assert!(central_generators(&alg).unwrap().relation.is_none());

        let q = GwaAlgebra::from_roots(vec![rat(1, 2)]).unwrap();
        assert!(matches!(
            central_generators(&q),
            Err(Error::CharacteristicZero)
        ));
    }

    #[test]
    fn oracle_f3_v_h_degree_6() {
        let alg = fp_alg(3, &[0]);
        let basis = brute_force_center(&alg, 6).unwrap();
        assert_eq!(basis.elements.len(), 6);
        let (x, y, h) = (alg.x(), alg.y(), alg.h());
        let expected = vec![
            alg.one(),
            x.pow(3),
            y.pow(3),
            x.pow(6),
            y.pow(6),
            &h.pow(3) - &h,
        ];
        let all: Vec<_> = basis.elements.iter().chain(&expected).cloned().collect();
        let (vecs, len) = coordinates(&all);
        let (a, b) = vecs.split_at(basis.elements.len());
        assert!(same_span(a, b, len, alg.unit()));
        // the relation collapses x^3 y^3 into the h-part
        assert_eq!(&x.pow(3) * &y.pow(3), &h.pow(3) - &h);
    }

    #[test]
    fn oracle_small_bounds() {
        let alg = fp_alg(2, &[0]);
        let basis = brute_force_center(&alg, 2).unwrap();
        let expected = vec![alg.one(), alg.x().pow(2), alg.y().pow(2)];
        let all: Vec<_> = basis.elements.iter().chain(&expected).cloned().collect();
        let (vecs, len) = coordinates(&all);
        let (a, b) = vecs.split_at(basis.elements.len());
        assert_eq!(a.len(), 3);
        assert!(same_span(a, b, len, alg.unit()));

        for alg in [fp_alg(5, &[1, 2]), fp_alg(3, &[0, 0, 1])] {
            let basis = brute_force_center(&alg, 0).unwrap();
            assert_eq!(basis.elements, vec![alg.one()]);
        }
    }

    #[test]
    fn oracle_weights_divisible_by_p() {
        for (p, roots) in [(2, vec![0, 1]), (3, vec![0, 0]), (3, vec![1])] {
            let alg = fp_alg(p, &roots);
            for z in brute_force_center(&alg, 8).unwrap().elements {
                assert!(z.terms().keys().all(|k| k % p as i64 == 0));
            }
        }
    }

    #[test]
    fn oracle_rejects_huge_bounds() {
        let alg = fp_alg(3, &[0]);
        assert!(matches!(
            brute_force_center(&alg, 400),
            Err(Error::DegreeTooLarge(400))
        ));
    }

    #[test]
    fn generator_symbols_are_pth_powers() {
        let alg = fp_alg(3, &[0, 1]);
        let w = central_generators(&alg).unwrap();
        let one = alg.unit().clone();
        assert_eq!(
            w.x_p.top_symbol().unwrap(),
            SymbolPoly::monomial(2, 3, 0, 0, one.clone())
        );
        assert_eq!(
            w.y_p.top_symbol().unwrap(),
            SymbolPoly::monomial(2, 0, 3, 0, one.clone())
        );
        assert_eq!(
            w.h_p.top_symbol().unwrap(),
            SymbolPoly::monomial(2, 0, 0, 3, one)
        );
    }

    #[test]
    fn oracle_matches_generator_span() {
        for (p, roots, bound) in [
            (2, vec![0], 12),
            (3, vec![0], 14),
            (3, vec![0, 0], 16),
            (5, vec![1], 12),
            (2, vec![0, 1], 12),
        ] {
            let alg = fp_alg(p, &roots);
            let cmp = compare_with_generators(&alg, bound).unwrap();
            assert!(cmp.equal(), "p={p} roots={roots:?}: {cmp:?}");
            assert!(cmp.oracle_rank > 1);
        }
    }
}
