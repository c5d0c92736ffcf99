use std::collections::BTreeMap;
use std::fmt;

use crate::arith::Field;

/// Element of `k[X, Y, H]/(XY - H^n)`, stored with no monomial divisible by
/// `XY`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymbolPoly<K> {
    n: usize,
    terms: BTreeMap<(u32, u32, u32), K>,
}

impl<K: Field> SymbolPoly<K> {
    pub fn zero(n: usize) -> Self {
        Self {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn monomial(n: usize, x: u32, y: u32, h: u32, c: K) -> Self {
        let mut s = Self::zero(n);
        s.add_monomial(x, y, h, c);
        s
    }

    pub fn add_monomial(&mut self, x: u32, y: u32, h: u32, c: K) {
        let m = x.min(y);
        let key = (x - m, y - m, h + m * self.n as u32);
        let sum = match self.terms.remove(&key) {
            Some(old) => old + &c,
            None => c,
        };
        if !sum.is_zero() {
            self.terms.insert(key, sum);
        }
    }

    /// `(X-exponent, Y-exponent, H-exponent)` → coefficient.
    pub fn terms(&self) -> &BTreeMap<(u32, u32, u32), K> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n, "symbols from different quotients");
        let mut out = Self::zero(self.n);
        for (&(x1, y1, h1), a) in &self.terms {
            for (&(x2, y2, h2), b) in &other.terms {
                out.add_monomial(x1 + x2, y1 + y2, h1 + h2, a.clone() * b);
            }
        }
        out
    }
}

impl<K: Field> fmt::Display for SymbolPoly<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(&(x, y, h), c)| {
                let mut s = if c.is_one() {
                    Vec::new()
                } else {
                    vec![format!("({c})")]
                };
                for (name, e) in [("X", x), ("Y", y), ("H", h)] {
                    match e {
                        0 => {}
                        1 => s.push(name.to_string()),
                        e => s.push(format!("{name}^{e}")),
                    }
                }
                if s.is_empty() {
                    "1".to_string()
                } else {
                    s.join("*")
                }
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}
