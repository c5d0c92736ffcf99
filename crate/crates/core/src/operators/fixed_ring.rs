//! The fixed ring of the Weyl algebra under `t ↦ ζt`, `∂ ↦ ζ^{-1}∂` with
//! `ζ` a primitive `n`-th root of unity, presented as `A(vmap)`.
//!
//! `X = t^n`, `Y = σ ∂^n`, `H = α t∂ + β`. The slope `α` is read off from
//! `[t∂, X]`; `σ` makes `vmap` monic; `β` places the roots of `vmap` so that
//! they sum to those of `∏_{i=1..n} (h + i/n)`.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::weyl::WeylElement;
use crate::arith::linalg::span_rank;
use crate::arith::{rat, UPoly};
use crate::gwa::{GwaAlgebra, GwaElement};
use crate::{Error, Result};

type W = WeylElement<BigRational>;

#[derive(Clone, Debug)]
pub struct FixedRingIso {
    pub n: usize,
    pub x: W,
    pub y: W,
    pub h: W,
    pub alpha: BigRational,
    pub beta: BigRational,
    /// `Y = y_scale · ∂^n`.
    pub y_scale: BigRational,
    pub vmap: UPoly<BigRational>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationCheck {
    pub name: &'static str,
    pub holds: bool,
}

/// `∏_{i=1..n} (h + i/n)`.
pub fn target_polynomial(n: usize) -> UPoly<BigRational> {
    let roots: Vec<BigRational> = (1..=n).map(|i| rat(-(i as i64), n as i64)).collect();
    UPoly::from_roots(&BigRational::one(), &roots)
}

fn one() -> BigRational {
    BigRational::one()
}

/// Writes `target` as a polynomial in `g = α t∂`, peeling the diagonal terms
/// `t^k ∂^k` from the top.
fn as_polynomial_in(target: &W, g: &W, alpha: &BigRational) -> Result<UPoly<BigRational>> {
    let top = target
        .terms()
        .keys()
        .map(|&(a, b)| {
            if a == b {
                Ok(a)
            } else {
                Err(Error::NoSolution(format!("t^{a} d^{b} is not diagonal")))
            }
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .max()
        .unwrap_or(0);
    let mut rem = target.clone();
    let mut coeffs = vec![BigRational::zero(); top + 1];
    for k in (0..=top).rev() {
        let c = rem.coeff(k, k) / alpha.pow(k as i32);
        rem = &rem - &g.pow(k as u32).scale(&c);
        coeffs[k] = c;
    }
    if !rem.is_zero() {
        return Err(Error::NoSolution(
            "not a polynomial in the Euler operator".into(),
        ));
    }
    Ok(UPoly::new(coeffs))
}

pub fn build_fixed_ring_iso(n: usize) -> Result<FixedRingIso> {
    if n < 2 {
        return Err(Error::NoSolution("n must be at least 2".into()));
    }
    let x = W::monomial(one(), n, 0);
    let d_n = W::monomial(one(), 0, n);
    let euler = W::euler(&one());

    let bracket = euler.commutator(&x);
    let lambda = bracket.coeff(n, 0);
    if lambda.is_zero() || bracket != x.scale(&lambda) {
        return Err(Error::NoSolution("[t d, X] is not a multiple of X".into()));
    }
    let alpha = lambda.recip();
    let h0 = euler.scale(&alpha);

    let q = as_polynomial_in(&(&x * &d_n), &h0, &alpha)?;
    if q.degree() != Some(n) {
        return Err(Error::NoSolution(format!(
            "X Y has degree {:?} in H",
            q.degree()
        )));
    }
    let y_scale = q.lead().expect("nonzero").recip();
    let q = q.scale(&y_scale);
    let y = d_n.scale(&y_scale);

    // roots of q(H - β) are those of q shifted by β
    let target = target_polynomial(n);
    let n_rat = BigRational::from_integer(BigInt::from(n));
    let q_sum = -q.coeff(n - 1).cloned().unwrap_or_default();
    let target_sum = -target.coeff(n - 1).cloned().unwrap_or_default();
    let beta = (target_sum - q_sum) / n_rat;
    let vmap = q.shift(&-beta.clone());
    let h = &h0 + &W::constant(beta.clone());

    let iso = FixedRingIso {
        n,
        x,
        y,
        h,
        alpha,
        beta,
        y_scale,
        vmap,
    };
    if let Some(bad) = iso.relations().into_iter().find(|r| !r.holds) {
        return Err(Error::NoSolution(format!("relation {} fails", bad.name)));
    }
    Ok(iso)
}

impl FixedRingIso {
    /// `vmap` evaluated at `H + s` inside the Weyl algebra.
    fn vmap_at(&self, s: i64) -> W {
        W::eval_poly(&self.vmap.shift(&rat(s, 1)), &self.h)
    }

    pub fn relations(&self) -> Vec<RelationCheck> {
        let (x, y, h) = (&self.x, &self.y, &self.h);
        let one = W::one(&BigRational::one());
        vec![
            RelationCheck {
                name: "HX = X(H+1)",
                holds: h * x == x * &(h + &one),
            },
            RelationCheck {
                name: "HY = Y(H-1)",
                holds: h * y == y * &(h - &one),
            },
            RelationCheck {
                name: "XY = vmap(H)",
                holds: x * y == self.vmap_at(0),
            },
            RelationCheck {
                name: "YX = vmap(H+1)",
                holds: y * x == self.vmap_at(1),
            },
        ]
    }

    /// Every term `t^a ∂^b` has `a ≡ b (mod n)`.
    pub fn generators_invariant(&self) -> bool {
        [&self.x, &self.y, &self.h]
            .iter()
            .all(|e| is_invariant(e, self.n))
    }

    pub fn matches_target(&self) -> bool {
        self.vmap == target_polynomial(self.n)
    }

    /// Rational roots of `vmap` with multiplicity, ascending.
    pub fn vmap_roots(&self) -> Vec<BigRational> {
        rational_roots(&self.vmap)
    }

    /// The image of an element of `A(vmap)` under `x ↦ X, y ↦ Y, h ↦ H`.
    pub fn map_element(&self, e: &GwaElement<BigRational>) -> Result<W> {
        if e.algebra().v() != &self.vmap {
            return Err(Error::AlgebraMismatch);
        }
        let mut out = W::zero(&one());
        for (&k, p) in e.terms() {
            let g = if k >= 0 {
                self.x.pow(k as u32)
            } else {
                self.y.pow((-k) as u32)
            };
            out = &out + &(&g * &W::eval_poly(p, &self.h));
        }
        Ok(out)
    }

    pub fn algebra(&self) -> Result<Arc<GwaAlgebra<BigRational>>> {
        GwaAlgebra::new(self.vmap.clone())
    }

    /// Compares the span of images of `x^i h^m`, `y^j h^m` of Weyl degree
    /// `≤ max_degree` with the invariant monomials of that degree.
    pub fn image_check(&self, max_degree: usize) -> ImageCheck {
        let n = self.n;
        let mut images = Vec::new();
        for i in 0..=max_degree / n {
            for m in 0..=(max_degree - n * i) / 2 {
                let hm = self.h.pow(m as u32);
                images.push(&self.x.pow(i as u32) * &hm);
                if i > 0 {
                    images.push(&self.y.pow(i as u32) * &hm);
                }
            }
        }
        let monomials: Vec<W> = invariant_monomials(n, max_degree)
            .into_iter()
            .map(|(a, b)| W::monomial(one(), a, b))
            .collect();
        let mut index = BTreeMap::new();
        for e in images.iter().chain(&monomials) {
            for &key in e.terms().keys() {
                let next = index.len();
                index.entry(key).or_insert(next);
            }
        }
        let coords = |es: &[W]| -> Vec<Vec<BigRational>> {
            es.iter()
                .map(|e| {
                    let mut v = vec![BigRational::zero(); index.len()];
                    for (key, c) in e.terms() {
                        v[index[key]] = c.clone();
                    }
                    v
                })
                .collect()
        };
        let (ic, mc) = (coords(&images), coords(&monomials));
        let joint: Vec<Vec<BigRational>> = ic.iter().chain(&mc).cloned().collect();
        let len = index.len();
        ImageCheck {
            max_degree,
            invariant_monomials: monomials.len(),
            image_rank: span_rank(&ic, len, &one()),
            joint_rank: span_rank(&joint, len, &one()),
            max_image_degree: images.iter().filter_map(W::total_degree).max().unwrap_or(0),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ImageCheck {
    pub max_degree: usize,
    pub invariant_monomials: usize,
    pub image_rank: usize,
    pub joint_rank: usize,
    pub max_image_degree: usize,
}

impl ImageCheck {
    /// Images lie among the invariants and span all of them.
    pub fn spans(&self) -> bool {
        self.image_rank == self.invariant_monomials
            && self.joint_rank == self.invariant_monomials
            && self.max_image_degree <= self.max_degree
    }
}

pub fn is_invariant(e: &W, n: usize) -> bool {
    e.terms().keys().all(|&(a, b)| a % n == b % n)
}

/// `(a, b)` with `a ≡ b (mod n)` and `a + b ≤ max_degree`.
pub fn invariant_monomials(n: usize, max_degree: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for a in 0..=max_degree {
        for b in 0..=max_degree - a {
            if a % n == b % n {
                out.push((a, b));
            }
        }
    }
    out
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    let mut out = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= n {
        if (&n % &d).is_zero() {
            out.push(d.clone());
            out.push(&n / &d);
        }
        d += 1;
    }
    out
}

/// Rational roots with multiplicity by the rational root test.
pub fn rational_roots(f: &UPoly<BigRational>) -> Vec<BigRational> {
    let mut out = Vec::new();
    let mut g = f.clone();
    while g.degree().unwrap_or(0) > 0 && g.coeff(0).is_none_or(Zero::is_zero) {
        out.push(BigRational::zero());
        g = UPoly::new(g.coeffs()[1..].to_vec());
    }
    let Some(deg) = g.degree() else {
        return out;
    };
    let lcm = g
        .coeffs()
        .iter()
        .fold(BigInt::one(), |l, c| l.lcm(c.denom()));
    let ints: Vec<BigInt> = g
        .coeffs()
        .iter()
        .map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer())
        .collect();
    if deg == 0 {
        return out;
    }
    let mut candidates = Vec::new();
    for p in divisors(&ints[0]) {
        for q in divisors(&ints[deg]) {
            let r = BigRational::new(p.clone(), q);
            candidates.push(r.clone());
            candidates.push(-r);
        }
    }
    candidates.sort();
    candidates.dedup();
    for r in candidates {
        let linear = UPoly::new(vec![-r.clone(), one()]);
        loop {
            let (quot, rem) = g.div_rem(&linear);
            if !rem.is_zero() || g.degree() == Some(0) {
                break;
            }
            out.push(r.clone());
            g = quot;
        }
    }
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn euler_expansions() {
        // t^2 d^2 = E(E-1), d^2 t^2 = (E+1)(E+2)
        let e = W::euler(&one());
        let c = |k: i64| W::constant(rat(k, 1));
        let t2d2 = &e * &(&e - &c(1));
        let d2t2 = &(&e + &c(1)) * &(&e + &c(2));
        assert_eq!(W::monomial(one(), 2, 2), t2d2);
        assert_eq!(&W::monomial(one(), 0, 2) * &W::monomial(one(), 2, 0), d2t2);
    }

    #[test]
    fn n2_normalization() {
        let iso = build_fixed_ring_iso(2).unwrap();
        assert_eq!(iso.alpha, rat(1, 2));
        assert_eq!(iso.beta, rat(-1, 1));
        assert_eq!(iso.y_scale, rat(1, 4));
        // (h + 1/2)(h + 1)
        assert_eq!(iso.vmap, UPoly::new(vec![rat(1, 2), rat(3, 2), rat(1, 1)]));
        assert_eq!(iso.vmap_roots(), vec![rat(-1, 1), rat(-1, 2)]);
        assert!(iso.matches_target());
        assert!(iso.generators_invariant());
        for g in [&iso.x, &iso.y, &iso.h] {
            assert_eq!(&g.rescale(&rat(-1, 1)), g);
        }
    }

    #[test]
    fn n3_and_beyond() {
        for n in 3..=5 {
            let iso = build_fixed_ring_iso(n).unwrap();
            assert_eq!(iso.vmap.degree(), Some(n));
            assert!(iso.relations().iter().all(|r| r.holds));
            assert!(iso.matches_target());
            let roots: Vec<BigRational> =
                (1..=n).rev().map(|i| rat(-(i as i64), n as i64)).collect();
            assert_eq!(iso.vmap_roots(), roots);
        }
        assert!(build_fixed_ring_iso(1).is_err());
    }

    #[test]
    fn image_spans_invariants() {
        for n in [2, 3] {
            let iso = build_fixed_ring_iso(n).unwrap();
            let check = iso.image_check(12);
            assert!(check.spans(), "{check:?}");
        }
        assert_eq!(
            invariant_monomials(2, 2),
            vec![(0, 0), (0, 2), (1, 1), (2, 0)]
        );
    }

    #[test]
    fn gwa_map_is_multiplicative() {
        use crate::gwa::GwaGenerators;
        let iso = build_fixed_ring_iso(3).unwrap();
        let alg = iso.algebra().unwrap();
        let a = &(&alg.x().pow(2) * &alg.h()) + &alg.y();
        let b = &alg.y().pow(3) - &alg.h().pow(2);
        let ab = iso.map_element(&(&a * &b)).unwrap();
        assert_eq!(
            ab,
            &iso.map_element(&a).unwrap() * &iso.map_element(&b).unwrap()
        );
        let other = GwaAlgebra::from_roots(vec![rat(0, 1)]).unwrap();
        assert_eq!(iso.map_element(&other.x()), Err(Error::AlgebraMismatch));
    }

    #[test]
    fn rational_root_finder() {
        let f = UPoly::from_roots(&one(), &[rat(0, 1), rat(2, 3), rat(2, 3), rat(-5, 1)]);
        assert_eq!(
            rational_roots(&f),
            vec![rat(-5, 1), rat(0, 1), rat(2, 3), rat(2, 3)]
        );
        let g = UPoly::new(vec![rat(2, 1), rat(0, 1), rat(1, 1)]);
        assert!(rational_roots(&g).is_empty());
    }
}
