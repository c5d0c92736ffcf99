use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::binomial;

use crate::arith::{Field, UPoly};

/// Element of the first Weyl algebra, `Σ c_{a,b} t^a ∂^b` with `∂t = t∂ + 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeylElement<K> {
    unit: K,
    terms: BTreeMap<(usize, usize), K>,
}

fn falling(n: usize, k: usize) -> BigInt {
    (0..k).fold(BigInt::from(1), |acc, i| acc * BigInt::from(n - i))
}

impl<K: Field> WeylElement<K> {
    pub fn zero(unit: &K) -> Self {
        Self {
            unit: unit.one_like(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(unit: &K) -> Self {
        Self::monomial(unit.one_like(), 0, 0)
    }

    pub fn constant(c: K) -> Self {
        Self::monomial(c, 0, 0)
    }

    /// `c t^a ∂^b`.
    pub fn monomial(c: K, a: usize, b: usize) -> Self {
        let mut out = Self::zero(&c);
        out.add_term(a, b, c);
        out
    }

    pub fn t(unit: &K) -> Self {
        Self::monomial(unit.one_like(), 1, 0)
    }

    pub fn d(unit: &K) -> Self {
        Self::monomial(unit.one_like(), 0, 1)
    }

    /// The Euler operator `t∂`.
    pub fn euler(unit: &K) -> Self {
        Self::monomial(unit.one_like(), 1, 1)
    }

    pub fn unit(&self) -> &K {
        &self.unit
    }

    pub fn terms(&self) -> &BTreeMap<(usize, usize), K> {
        &self.terms
    }

    pub fn coeff(&self, a: usize, b: usize) -> K {
        self.terms
            .get(&(a, b))
            .cloned()
            .unwrap_or_else(|| self.unit.zero_like())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Largest `a + b` over the terms; `None` for zero.
    pub fn total_degree(&self) -> Option<usize> {
        self.terms.keys().map(|(a, b)| a + b).max()
    }

    fn add_term(&mut self, a: usize, b: usize, c: K) {
        if c.is_zero() {
            return;
        }
        let sum = match self.terms.remove(&(a, b)) {
            Some(old) => old + &c,
            None => c,
        };
        if !sum.is_zero() {
            self.terms.insert((a, b), sum);
        }
    }

    pub fn scale(&self, c: &K) -> Self {
        let mut out = Self::zero(&self.unit);
        for (&(a, b), x) in &self.terms {
            out.add_term(a, b, x.clone() * c);
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(&self.unit), |acc, _| &acc * self)
    }

    pub fn commutator(&self, other: &Self) -> Self {
        &(self * other) - &(other * self)
    }

    /// Substitutes `t ↦ λt`, `∂ ↦ λ^{-1}∂`.
    pub fn rescale(&self, lambda: &K) -> Self {
        let inv = lambda.inv().expect("nonzero scaling");
        let mut out = Self::zero(&self.unit);
        for (&(a, b), c) in &self.terms {
            let f = lambda.pow_u64(a as u64) * &inv.pow_u64(b as u64);
            out.add_term(a, b, c.clone() * &f);
        }
        out
    }

    /// Evaluates a polynomial at this element.
    pub fn eval_poly(poly: &UPoly<K>, at: &Self) -> Self {
        let mut acc = Self::zero(&at.unit);
        for c in poly.coeffs().iter().rev() {
            acc = &(&acc * at) + &Self::constant(c.clone());
        }
        acc
    }

    /// Applies the operator to a polynomial in `t`.
    pub fn act(&self, f: &UPoly<K>) -> UPoly<K> {
        let mut out = vec![
            self.unit.zero_like();
            f.coeffs().len() + self.terms.keys().map(|k| k.0).max().unwrap_or(0)
        ];
        for (&(a, b), c) in &self.terms {
            for (k, fk) in f.coeffs().iter().enumerate() {
                if k < b || fk.is_zero() {
                    continue;
                }
                let factor = self.unit.from_bigint_like(&falling(k, b));
                out[k - b + a] = out[k - b + a].clone() + &(c.clone() * fk * &factor);
            }
        }
        UPoly::new(out)
    }
}

impl<K: Field> Add for &WeylElement<K> {
    type Output = WeylElement<K>;
    fn add(self, rhs: Self) -> WeylElement<K> {
        let mut out = self.clone();
        for (&(a, b), c) in &rhs.terms {
            out.add_term(a, b, c.clone());
        }
        out
    }
}

impl<K: Field> Sub for &WeylElement<K> {
    type Output = WeylElement<K>;
    fn sub(self, rhs: Self) -> WeylElement<K> {
        self + &(-rhs.clone())
    }
}

impl<K: Field> Neg for WeylElement<K> {
    type Output = WeylElement<K>;
    fn neg(self) -> WeylElement<K> {
        let unit = self.unit.clone();
        WeylElement {
            terms: self.terms.into_iter().map(|(k, c)| (k, -c)).collect(),
            unit,
        }
    }
}

impl<K: Field> Mul for &WeylElement<K> {
    type Output = WeylElement<K>;
    /// `(t^a ∂^b)(t^c ∂^d) = Σ_k C(b,k) c(c-1)…(c-k+1) t^{a+c-k} ∂^{b+d-k}`.
    fn mul(self, rhs: Self) -> WeylElement<K> {
        let mut out = WeylElement::zero(&self.unit);
        for (&(a, b), x) in &self.terms {
            for (&(c, d), y) in &rhs.terms {
                let xy = x.clone() * y;
                for k in 0..=b.min(c) {
                    let n = binomial(BigInt::from(b), BigInt::from(k)) * falling(c, k);
                    let coef = xy.clone() * &self.unit.from_bigint_like(&n);
                    out.add_term(a + c - k, b + d - k, coef);
                }
            }
        }
        out
    }
}

impl<K: Field> fmt::Display for WeylElement<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(&(a, b), c)| {
                let mut s = Vec::new();
                if !c.is_one() || (a == 0 && b == 0) {
                    s.push(format!("({c})"));
                }
                for (name, e) in [("t", a), ("d", b)] {
                    match e {
                        0 => {}
                        1 => s.push(name.to_string()),
                        e => s.push(format!("{name}^{e}")),
                    }
                }
                s.join("*")
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;
    use num_rational::BigRational;

    type W = WeylElement<BigRational>;

    fn one() -> BigRational {
        rat(1, 1)
    }

    /// Oracle: rewrite words in `t`, `d` with `dt → td + 1` until sorted.
    fn rewrite(word: &[u8]) -> W {
        let mut pending = vec![(word.to_vec(), 1i64)];
        let mut out = W::zero(&one());
        while let Some((w, c)) = pending.pop() {
            match w.windows(2).position(|p| p == b"dt") {
                Some(i) => {
                    let mut swapped = w.clone();
                    swapped.swap(i, i + 1);
                    let dropped = [&w[..i], &w[i + 2..]].concat();
                    pending.push((swapped, c));
                    pending.push((dropped, c));
                }
                None => {
                    let a = w.iter().filter(|&&b| b == b't').count();
                    out = &out + &W::monomial(rat(c, 1), a, w.len() - a);
                }
            }
        }
        out
    }

    fn word(w: &[u8]) -> W {
        w.iter().fold(W::one(&one()), |acc, &b| {
            let g = if b == b't' {
                W::t(&one())
            } else {
                W::d(&one())
            };
            &acc * &g
        })
    }

    #[test]
    fn product_examples() {
        let (t, d) = (W::t(&one()), W::d(&one()));
        assert_eq!(&d * &t, &W::euler(&one()) + &W::one(&one()));
        assert_eq!(&t * &d, W::euler(&one()));
        let lhs = &d.pow(2) * &t.pow(2);
        let expected =
            &(&W::monomial(one(), 2, 2) + &W::monomial(rat(4, 1), 1, 1)) + &W::constant(rat(2, 1));
        assert_eq!(lhs, expected);
    }

    #[test]
    fn agrees_with_rewriting() {
        for len in 0..8 {
            for bits in 0..(1u32 << len) {
                let w: Vec<u8> = (0..len)
                    .map(|i| if bits >> i & 1 == 1 { b't' } else { b'd' })
                    .collect();
                assert_eq!(word(&w), rewrite(&w));
            }
        }
    }

    #[test]
    fn action_on_polynomials() {
        // (t d + d^2)(t^3 + 2t) = 3t^3 + 2t + 6t
        let op = &W::euler(&one()) + &W::d(&one()).pow(2);
        let f = UPoly::new(vec![rat(0, 1), rat(2, 1), rat(0, 1), rat(1, 1)]);
        let g = op.act(&f);
        assert_eq!(
            g,
            UPoly::new(vec![rat(0, 1), rat(8, 1), rat(0, 1), rat(3, 1)])
        );
        // the action is a module action
        let a = &W::d(&one()) * &W::t(&one()).pow(2);
        let b = &W::t(&one()) + &W::d(&one()).pow(2);
        assert_eq!((&a * &b).act(&f), a.act(&b.act(&f)));
    }

    #[test]
    fn rescaling_fixes_invariants() {
        let m = rat(-1, 1);
        for (a, b, fixed) in [(2, 0, true), (0, 2, true), (1, 1, true), (1, 0, false)] {
            let e = W::monomial(one(), a, b);
            assert_eq!(e.rescale(&m) == e, fixed);
        }
    }
}
