//! Degree information for polynomials over finite fields: squarefree
//! decomposition, distinct-degree profiles, and gcd splitting of
//! equal-degree parts.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::field::Field;
use super::finite::FieldElement;
use super::poly::UPoly;
use crate::{Error, Result};

pub type FqPoly = UPoly<FieldElement>;

/// Fixed seed for the splitting candidates; results are sorted afterwards, so
/// the seed only affects running time.
const SPLIT_SEED: u64 = 0x5eed_f00d;

fn unit_of(f: &FqPoly) -> Result<FieldElement> {
    f.lead().cloned().ok_or(Error::ZeroPolynomial)
}

/// Coefficientwise `p`-th root of a polynomial whose exponents are all
/// multiples of `p`.
fn pth_root(f: &FqPoly, unit: &FieldElement) -> FqPoly {
    let field = unit.field();
    let p = field.characteristic() as usize;
    // a^{1/p} = a^{q/p}
    let exp = field.order() / BigUint::from(p);
    FqPoly::new(
        f.coeffs()
            .iter()
            .step_by(p)
            .map(|c| c.pow_big(&exp))
            .collect(),
    )
}

/// Squarefree decomposition: monic `(g_i, i)` with `f = lead · ∏ g_i^i`.
pub fn squarefree_decomposition(f: &FqPoly) -> Result<Vec<(FqPoly, usize)>> {
    let unit = unit_of(f)?.one_like();
    let mut out = Vec::new();
    sqf_into(&f.monic(), 1, &unit, &mut out);
    out.sort_by_key(|a| a.1);
    Ok(out)
}

fn sqf_into(f: &FqPoly, scale: usize, unit: &FieldElement, out: &mut Vec<(FqPoly, usize)>) {
    if f.degree().unwrap_or(0) == 0 {
        return;
    }
    let p = unit.characteristic() as usize;
    let deriv = f.derivative();
    if deriv.is_zero() {
        sqf_into(&pth_root(f, unit), scale * p, unit, out);
        return;
    }
    let mut c = f.gcd(&deriv);
    let mut w = f.div_rem(&c).0;
    let mut i = 1;
    while !w.is_one() {
        let y = w.gcd(&c);
        let z = w.div_rem(&y).0;
        if z.degree().unwrap_or(0) > 0 {
            out.push((z, i * scale));
        }
        i += 1;
        w = y;
        c = c.div_rem(&w).0;
    }
    if !c.is_one() {
        sqf_into(&pth_root(&c, unit), scale * p, unit, out);
    }
}

/// Distinct-degree split of a monic squarefree polynomial: `(e, g_e)` where
/// `g_e` is the product of all irreducible factors of degree `e`.
pub fn distinct_degree_split(f: &FqPoly) -> Vec<(usize, FqPoly)> {
    let Some(unit) = f.lead().map(|l| l.one_like()) else {
        return Vec::new();
    };
    let q = unit.field().order().clone();
    let x = FqPoly::x(&unit);
    let mut rest = f.monic();
    let mut frob = x.clone();
    let mut out = Vec::new();
    let mut e = 1;
    while rest.degree().unwrap_or(0) >= 2 * e {
        frob = frob.pow_mod(&q, &rest);
        let g = rest.gcd(&(frob.clone() - &x));
        if !g.is_one() {
            rest = rest.div_rem(&g).0;
            frob = frob.rem(&rest);
            out.push((e, g));
        }
        e += 1;
    }
    if let Some(d) = rest.degree().filter(|&d| d > 0) {
        out.push((d, rest));
    }
    out
}

/// Degrees of the irreducible factors of `f`, counted with multiplicity:
/// a map from degree to number of factors of that degree.
pub fn distinct_degree_profile(f: &FqPoly) -> Result<BTreeMap<usize, usize>> {
    let mut profile = BTreeMap::new();
    for (g, mult) in squarefree_decomposition(f)? {
        for (e, part) in distinct_degree_split(&g) {
            *profile.entry(e).or_insert(0) += mult * part.degree().unwrap() / e;
        }
    }
    Ok(profile)
}

pub fn is_irreducible(f: &FqPoly) -> Result<bool> {
    let d = f.degree().ok_or(Error::ZeroPolynomial)?;
    if d == 0 {
        return Ok(false);
    }
    let profile = distinct_degree_profile(f)?;
    Ok(profile.len() == 1 && profile.get(&d) == Some(&1))
}

fn random_poly(rng: &mut ChaCha8Rng, unit: &FieldElement, below: usize) -> FqPoly {
    let field = unit.field();
    let p = field.characteristic();
    let coeffs = (0..below)
        .map(|_| {
            let residue = (0..field.degree()).map(|_| rng.gen_range(0..p)).collect();
            FieldElement::from_residue(field, residue)
        })
        .collect();
    FqPoly::new(coeffs)
}

/// Splits a monic squarefree polynomial whose irreducible factors all have
/// degree `e` into those factors, sorted canonically.
pub fn equal_degree_split(f: &FqPoly, e: usize) -> Vec<FqPoly> {
    let mut rng = ChaCha8Rng::seed_from_u64(SPLIT_SEED);
    let mut done = Vec::new();
    let mut todo = vec![f.monic()];
    while let Some(g) = todo.pop() {
        let d = g.degree().unwrap_or(0);
        if d == 0 {
            continue;
        }
        if d == e {
            done.push(g);
            continue;
        }
        let unit = g.lead().unwrap().clone();
        let field = unit.field().clone();
        let p = field.characteristic();
        loop {
            let a = random_poly(&mut rng, &unit, d);
            if a.degree().unwrap_or(0) == 0 {
                continue;
            }
            let b = if p == 2 {
                // trace from F_{q^e} down to F_2
                let steps = field.degree() * e;
                let mut term = a.clone();
                let mut acc = a.clone();
                for _ in 1..steps {
                    term = (term.clone() * &term).rem(&g);
                    acc = acc + &term;
                }
                acc
            } else {
                let exp = (field.order().pow(e as u32) - 1u32) / 2u32;
                a.pow_mod(&exp, &g) - &FqPoly::constant(unit.one_like())
            };
            let h = g.gcd(&b);
            let hd = h.degree().unwrap_or(0);
            if hd > 0 && hd < d {
                let other = g.div_rem(&h).0;
                todo.push(h);
                todo.push(other);
                break;
            }
        }
    }
    done.sort_by(canonical_order);
    done
}

/// Orders polynomials by degree, then coefficients from the top down.
pub fn canonical_order(a: &FqPoly, b: &FqPoly) -> std::cmp::Ordering {
    a.degree()
        .cmp(&b.degree())
        .then_with(|| a.coeffs().iter().rev().cmp(b.coeffs().iter().rev()))
}

/// Monic irreducible factors of `f` of degree exactly `e`, sorted canonically.
pub fn factors_of_degree(f: &FqPoly, e: usize) -> Result<Vec<FqPoly>> {
    let mut out = Vec::new();
    for (g, _) in squarefree_decomposition(f)? {
        for (deg, part) in distinct_degree_split(&g) {
            if deg == e {
                out.extend(equal_degree_split(&part, e));
            }
        }
    }
    out.sort_by(canonical_order);
    out.dedup();
    Ok(out)
}

/// Distinct roots of `f` in its coefficient field, in ascending order.
pub fn roots(f: &FqPoly) -> Result<Vec<FieldElement>> {
    let mut out: Vec<FieldElement> = factors_of_degree(f, 1)?
        .into_iter()
        .map(|lin| -lin.coeffs()[0].clone())
        .collect();
    out.sort();
    Ok(out)
}

/// First monic irreducible polynomial of degree `e` over F_p in
/// lexicographic order of its lower coefficients.
pub fn first_irreducible(p: u64, e: usize) -> Result<Vec<i64>> {
    let prime = super::finite::FieldDescriptor::prime(p)?;
    let total = (p as u128).pow(e as u32);
    for idx in 0..total {
        let mut rest = idx;
        let mut coeffs = Vec::with_capacity(e + 1);
        for _ in 0..e {
            coeffs.push((rest % p as u128) as i64);
            rest /= p as u128;
        }
        coeffs.push(1);
        let poly = FqPoly::new(
            coeffs
                .iter()
                .map(|&c| FieldElement::from_i64(&prime, c))
                .collect(),
        );
        if is_irreducible(&poly)? {
            return Ok(coeffs);
        }
    }
    Err(Error::NoSolution(format!(
        "no irreducible of degree {e} mod {p}"
    )))
}
