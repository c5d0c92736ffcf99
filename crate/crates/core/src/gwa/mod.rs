//! Normal-form arithmetic in the generalized Weyl algebra `A(v)`.
//!
//! Presentation used throughout:
//!
//! ```text
//! xy = v(h),  yx = v(h+1),  hx = x(h+1),  hy = y(h-1)
//! ```
//!
//! Every element is written uniquely as `Σ_k e_k · p_k(h)` where `e_k = x^k`
//! for `k > 0`, `y^{-k}` for `k < 0` and `1` for `k = 0`; the integer `k` is
//! the weight (eigenvalue of `ad h`). Polynomials in `h` sit to the right.

mod parse;
mod symbol;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_rational::BigRational;

use crate::arith::{Field, UPoly};
use crate::{Error, Result};

pub use symbol::SymbolPoly;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GwaAlgebra<K> {
    unit: K,
    v: UPoly<K>,
    roots: Option<Vec<K>>,
}

impl<K: Field> GwaAlgebra<K> {
    pub fn new(v: UPoly<K>) -> Result<Arc<Self>> {
        if v.degree().unwrap_or(0) == 0 || !v.is_monic() {
            return Err(Error::NotMonic);
        }
        Ok(Arc::new(Self {
            unit: v.lead().unwrap().one_like(),
            v,
            roots: None,
        }))
    }

    /// `v = ∏ (h - t_i)`; repeated roots are allowed.
    pub fn from_roots(roots: Vec<K>) -> Result<Arc<Self>> {
        let unit = roots.first().ok_or(Error::NotMonic)?.one_like();
        let v = UPoly::from_roots(&unit, &roots);
        Ok(Arc::new(Self {
            unit,
            v,
            roots: Some(roots),
        }))
    }

    pub fn v(&self) -> &UPoly<K> {
        &self.v
    }

    pub fn roots(&self) -> Option<&[K]> {
        self.roots.as_deref()
    }

    /// `n = deg v`, the filtration weight of `x` and `y`.
    pub fn degree(&self) -> usize {
        self.v.degree().unwrap()
    }

    pub fn unit(&self) -> &K {
        &self.unit
    }

    pub fn characteristic(&self) -> u64 {
        self.unit.characteristic()
    }

    /// `v(h + s)`.
    fn v_at(&self, s: i64) -> UPoly<K> {
        self.v.shift(&self.unit.from_i64_like(s))
    }

    /// The polynomial `c(h)` with `e_a · e_b = e_{a+b} · c(h)`.
    fn cross_factor(&self, a: i64, b: i64) -> UPoly<K> {
        let one = UPoly::constant(self.unit.clone());
        if a == 0 || b == 0 || (a > 0) == (b > 0) {
            return one;
        }
        let (i, j) = (a.unsigned_abs() as i64, b.unsigned_abs() as i64);
        let shifts: Vec<i64> = if a > 0 {
            // x^i y^j
            if i >= j {
                (0..j).map(|k| -k).collect()
            } else {
                (0..i).map(|k| -k - (j - i)).collect()
            }
        } else {
            // y^i x^j
            if i >= j {
                (1..=j).collect()
            } else {
                (1..=i).map(|k| k + (j - i)).collect()
            }
        };
        shifts.into_iter().fold(one, |acc, s| acc * self.v_at(s))
    }
}

impl GwaAlgebra<BigRational> {
    /// Heuristic simplicity screen over ℚ: no repeated roots and no two roots
    /// differing by a nonzero integer. Not a proof of simplicity.
    pub fn simplicity_advisory(&self) -> Option<bool> {
        let roots = self.roots.as_ref()?;
        for (a, ra) in roots.iter().enumerate() {
            for rb in &roots[a + 1..] {
                if (ra - rb).is_integer() {
                    return Some(false);
                }
            }
        }
        Some(true)
    }
}

#[derive(Clone, Debug)]
pub struct GwaElement<K> {
    alg: Arc<GwaAlgebra<K>>,
    terms: BTreeMap<i64, UPoly<K>>,
}

/// Result of iterating `ad(g)` on an element.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Nilpotence {
    Order(usize),
    NotNilpotentWithinBound,
}

pub trait GwaGenerators<K> {
    fn zero(&self) -> GwaElement<K>;
    fn one(&self) -> GwaElement<K>;
    fn x(&self) -> GwaElement<K>;
    fn y(&self) -> GwaElement<K>;
    fn h(&self) -> GwaElement<K>;
    fn constant(&self, c: K) -> GwaElement<K>;
    /// `e_weight · h^m` times `c`.
    fn monomial(&self, c: K, weight: i64, m: usize) -> GwaElement<K>;
    /// `e_weight · p(h)`.
    fn term(&self, weight: i64, p: UPoly<K>) -> GwaElement<K>;
}

impl<K: Field> GwaGenerators<K> for Arc<GwaAlgebra<K>> {
    fn zero(&self) -> GwaElement<K> {
        GwaElement {
            alg: self.clone(),
            terms: BTreeMap::new(),
        }
    }

    fn one(&self) -> GwaElement<K> {
        self.constant(self.unit.clone())
    }

    fn x(&self) -> GwaElement<K> {
        self.monomial(self.unit.clone(), 1, 0)
    }

    fn y(&self) -> GwaElement<K> {
        self.monomial(self.unit.clone(), -1, 0)
    }

    fn h(&self) -> GwaElement<K> {
        self.monomial(self.unit.clone(), 0, 1)
    }

    fn constant(&self, c: K) -> GwaElement<K> {
        self.monomial(c, 0, 0)
    }

    fn monomial(&self, c: K, weight: i64, m: usize) -> GwaElement<K> {
        self.term(weight, UPoly::monomial(c, m))
    }

    fn term(&self, weight: i64, p: UPoly<K>) -> GwaElement<K> {
        let mut e = self.zero();
        e.add_term(weight, p);
        e
    }
}

impl<K: Field> GwaElement<K> {
    pub fn algebra(&self) -> &Arc<GwaAlgebra<K>> {
        &self.alg
    }

    /// Weight → polynomial in `h`, all nonzero.
    pub fn terms(&self) -> &BTreeMap<i64, UPoly<K>> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of `e_weight · h^m`.
    pub fn coeff(&self, weight: i64, m: usize) -> K {
        self.terms
            .get(&weight)
            .and_then(|p| p.coeff(m).cloned())
            .unwrap_or_else(|| self.alg.unit.zero_like())
    }

    fn add_term(&mut self, weight: i64, p: UPoly<K>) {
        if p.is_zero() {
            return;
        }
        let sum = match self.terms.remove(&weight) {
            Some(old) => old + &p,
            None => p,
        };
        if !sum.is_zero() {
            self.terms.insert(weight, sum);
        }
    }

    fn check(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.alg, &other.alg) || self.alg == other.alg {
            Ok(())
        } else {
            Err(Error::AlgebraMismatch)
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = self.clone();
        for (&k, p) in &other.terms {
            out.add_term(k, p.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&other.clone().neg())
    }

    /// Normal form of `self · other`.
    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let alg = &self.alg;
        let mut out = alg.zero();
        for (&a, pa) in &self.terms {
            for (&b, pb) in &other.terms {
                // e_a pa(h) e_b pb(h) = e_a e_b pa(h + b) pb(h)
                let moved = pa.shift(&alg.unit.from_i64_like(b));
                let poly = alg.cross_factor(a, b) * &moved * pb;
                out.add_term(a + b, poly);
            }
        }
        Ok(out)
    }

    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.try_mul(other)?.try_sub(&other.try_mul(self)?)
    }

    pub fn scale(&self, c: &K) -> Self {
        let mut out = self.alg.zero();
        for (&k, p) in &self.terms {
            out.add_term(k, p.scale(c));
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = self.alg.one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Filtration degree with `deg x = deg y = n`, `deg h = 2`; `None` for zero.
    pub fn filtration_degree(&self) -> Option<usize> {
        let n = self.alg.degree();
        self.terms
            .iter()
            .map(|(&k, p)| n * k.unsigned_abs() as usize + 2 * p.degree().unwrap())
            .max()
    }

    /// Highest-degree part mapped into `k[X, Y, H]/(XY - H^n)`.
    pub fn top_symbol(&self) -> Result<SymbolPoly<K>> {
        let top = self.filtration_degree().ok_or(Error::ZeroElement)?;
        let n = self.alg.degree();
        let mut sym = SymbolPoly::zero(n);
        for (&k, p) in &self.terms {
            let m = p.degree().unwrap();
            if n * k.unsigned_abs() as usize + 2 * m != top {
                continue;
            }
            let (xe, ye) = if k >= 0 {
                (k as u32, 0)
            } else {
                (0, (-k) as u32)
            };
            sym.add_monomial(xe, ye, m as u32, p.lead().unwrap().clone());
        }
        Ok(sym)
    }

    /// Parses `coef * x^i * h^m + ...`; any product of generators is accepted
    /// and normalized. Rational literals are mapped into the field by `coef`.
    pub fn parse(
        alg: &Arc<GwaAlgebra<K>>,
        src: &str,
        coef: &dyn Fn(&BigRational) -> Result<K>,
        generator: Option<&K>,
    ) -> Result<Self> {
        parse::parse(alg, src, coef, generator)
    }
}

/// Smallest `k ≤ bound` with `ad(g)^k (a) = 0`.
pub fn ad_nilpotence_order<K: Field>(
    g: &GwaElement<K>,
    a: &GwaElement<K>,
    bound: usize,
) -> Result<Nilpotence> {
    let mut cur = a.clone();
    for k in 0..=bound {
        if cur.is_zero() {
            return Ok(Nilpotence::Order(k));
        }
        if k < bound {
            cur = g.commutator(&cur)?;
        }
    }
    Ok(Nilpotence::NotNilpotentWithinBound)
}

impl<K: Field> PartialEq for GwaElement<K> {
    fn eq(&self, other: &Self) -> bool {
        self.check(other).is_ok() && self.terms == other.terms
    }
}

impl<K: Field> Eq for GwaElement<K> {}

impl<K: Field> fmt::Display for GwaElement<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (&k, p) in &self.terms {
            for (m, c) in p.coeffs().iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let mut factors = vec![format!("({c})")];
                match k {
                    0 => {}
                    1 => factors.push("x".into()),
                    -1 => factors.push("y".into()),
                    k if k > 0 => factors.push(format!("x^{k}")),
                    k => factors.push(format!("y^{}", -k)),
                }
                match m {
                    0 => {}
                    1 => factors.push("h".into()),
                    m => factors.push(format!("h^{m}")),
                }
                parts.push(factors.join(" * "));
            }
        }
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

impl<K: Field> Mul for &GwaElement<K> {
    type Output = GwaElement<K>;
    fn mul(self, rhs: &GwaElement<K>) -> GwaElement<K> {
        self.try_mul(rhs).expect("elements of the same algebra")
    }
}

impl<K: Field> Add for &GwaElement<K> {
    type Output = GwaElement<K>;
    fn add(self, rhs: &GwaElement<K>) -> GwaElement<K> {
        self.try_add(rhs).expect("elements of the same algebra")
    }
}

impl<K: Field> Sub for &GwaElement<K> {
    type Output = GwaElement<K>;
    fn sub(self, rhs: &GwaElement<K>) -> GwaElement<K> {
        self.try_sub(rhs).expect("elements of the same algebra")
    }
}

impl<K: Field> Neg for GwaElement<K> {
    type Output = GwaElement<K>;
    fn neg(self) -> GwaElement<K> {
        GwaElement {
            alg: self.alg,
            terms: self.terms.into_iter().map(|(k, p)| (k, -p)).collect(),
        }
    }
}
