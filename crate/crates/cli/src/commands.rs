use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::{json, Value};

use cherednik::arith::format_rational;
use cherednik::center::{brute_force_center, center_witness, compare_with_generators};
use cherednik::cheb::{
    find_primes_irrational, find_primes_rational, specialize, AlgebraicParam, Specialized,
    DEFAULT_CEILING,
};
use cherednik::cm::{
    cm_catalog_point, cm_membership, random_invertible, tangent_dimension, Membership, Witness,
};
use cherednik::galois::{artin_schreier_partition, galois_bound};
use cherednik::operators::{build_fixed_ring_iso, dunkl_verify, dunkl_verify_symbolic};
use cherednik::{
    DenseMatrix, Error, FieldDescriptor, FieldElement, GwaAlgebra, GwaElement, MatrixPair,
    Rational, UPoly,
};

use crate::input::{
    rational, BruteForceInput, ChebInput, CmInput, DunklInput, FieldRoots, FixedRingInput,
    GwaInput, GwaOp, RootInput,
};
use crate::{CmdError, Outcome};

type Run = Result<(Value, Outcome), CmdError>;

pub fn dispatch(command: &str, input: &Value) -> Run {
    match command {
        "galois-bound" => with_input(input, galois_bound_cmd),
        "center-verify" => with_input(input, center_verify),
        "bruteforce-center" => with_input(input, bruteforce_center),
        "dunkl-verify" => with_input(input, dunkl),
        "fixed-ring" => with_input(input, fixed_ring),
        "cm-check" => with_input(input, cm_check),
        "cheb-search" => with_input(input, cheb_search),
        "gwa" => with_input(input, gwa),
        other => Err(CmdError::Schema(format!("unknown command {other:?}"))),
    }
}

fn with_input<T, F>(input: &Value, f: F) -> Run
where
    T: DeserializeOwned + Serialize,
    F: FnOnce(&T) -> Result<Outcome, CmdError>,
{
    let parsed: T =
        serde_json::from_value(input.clone()).map_err(|e| CmdError::Schema(e.to_string()))?;
    let echo = serde_json::to_value(&parsed).map_err(|e| CmdError::Internal(e.to_string()))?;
    Ok((echo, f(&parsed)?))
}

pub fn element_json(e: &FieldElement) -> Value {
    json!(e.residue())
}

fn rat_json(r: &Rational) -> Value {
    Value::String(format_rational(r))
}

fn order_json(f: &FieldDescriptor) -> Value {
    match u64::try_from(f.order()) {
        Ok(q) => json!(q),
        Err(_) => Value::String(f.order().to_string()),
    }
}

fn field_json(f: &FieldDescriptor) -> Value {
    json!({ "p": f.characteristic(), "q": order_json(f), "modulus": f.modulus() })
}

fn specialize_roots(
    p: u64,
    roots: &[RootInput],
    modulus: Option<&[i64]>,
) -> Result<Specialized, CmdError> {
    if roots.is_empty() {
        return Err(CmdError::Schema("at least one root is required".into()));
    }
    let params = roots
        .iter()
        .map(RootInput::to_parameter)
        .collect::<Result<Vec<_>, _>>()?;
    Ok(specialize(&params, p, modulus)?)
}

fn galois_bound_cmd(input: &FieldRoots) -> Result<Outcome, CmdError> {
    let sp = specialize_roots(input.p, &input.roots, input.modulus.as_deref())?;
    let report = galois_bound(&sp.values)?;
    let by_value: Vec<usize> = artin_schreier_partition(&sp.values)?
        .iter()
        .map(|x| x.1)
        .collect();
    let sum_ok = report.multiplicities().iter().sum::<usize>() == report.n;
    let partitions_agree = by_value == report.multiplicities();
    let cosets: Vec<Value> = report
        .cosets
        .iter()
        .map(|c| {
            json!({
                "rep": element_json(&c.representative),
                "multiplicity": c.multiplicity,
                "as_value": element_json(&c.artin_schreier_value),
                "singular": c.singular,
            })
        })
        .collect();
    let singular: Vec<Value> = report
        .singular_points()
        .iter()
        .map(|s| element_json(&s.h_value))
        .collect();
    Ok(Outcome {
        certificates: json!({
            "p": report.p,
            "q": order_json(&sp.field),
            "modulus": sp.field.modulus(),
            "roots": sp.values.iter().map(element_json).collect::<Vec<_>>(),
            "cosets": cosets,
            "gcd": report.gcd,
            "bound": report.bound(),
            "singular_locus": singular,
            "checks": { "multiplicities_sum_to_n": sum_ok, "partitions_agree": partitions_agree },
        }),
        pass: sum_ok && partitions_agree,
    })
}

fn finite_gwa(
    p: u64,
    roots: &[RootInput],
    modulus: Option<&[i64]>,
) -> Result<(Specialized, Arc<GwaAlgebra<FieldElement>>), CmdError> {
    let sp = specialize_roots(p, roots, modulus)?;
    let alg = GwaAlgebra::from_roots(sp.values.clone())?;
    Ok((sp, alg))
}

fn center_verify(input: &FieldRoots) -> Result<Outcome, CmdError> {
    let (sp, alg) = finite_gwa(input.p, &input.roots, input.modulus.as_deref())?;
    let w = center_witness(&alg)?;
    let commutators: Vec<Value> = w
        .commutators
        .iter()
        .map(|c| json!({ "generator": c.generator, "with": c.with, "value": c.value.to_string() }))
        .collect();
    let relation = w.relation.as_ref().expect("roots are known");
    let lhs = &w.x_p * &w.y_p;
    let rhs = lhs.try_sub(relation)?;
    Ok(Outcome {
        certificates: json!({
            "field": field_json(&sp.field),
            "roots": sp.values.iter().map(element_json).collect::<Vec<_>>(),
            "v": alg.v().display_with("h"),
            "generators": {
                "x_p": w.x_p.to_string(),
                "y_p": w.y_p.to_string(),
                "h_p": w.h_p.to_string(),
            },
            "commutators": commutators,
            "relation": {
                "lhs": lhs.to_string(),
                "rhs": rhs.to_string(),
                "residual": relation.to_string(),
            },
            "as_values": sp.values.iter().map(|t| element_json(&t.artin_schreier())).collect::<Vec<_>>(),
        }),
        pass: w.all_central() && relation.is_zero(),
    })
}

fn bruteforce_center(input: &BruteForceInput) -> Result<Outcome, CmdError> {
    let (sp, alg) = finite_gwa(input.p, &input.roots, input.modulus.as_deref())?;
    let basis = brute_force_center(&alg, input.degree_bound)?;
    let cmp = compare_with_generators(&alg, input.degree_bound)?;
    let p = input.p as i64;
    let weights_ok = basis
        .elements
        .iter()
        .all(|z| z.terms().keys().all(|k| k % p == 0));
    Ok(Outcome {
        certificates: json!({
            "field": field_json(&sp.field),
            "v": alg.v().display_with("h"),
            "degree_bound": input.degree_bound,
            "monomials": basis.monomials,
            "basis": basis.elements.iter().map(|z| z.to_string()).collect::<Vec<_>>(),
            "oracle_rank": cmp.oracle_rank,
            "generated_rank": cmp.generated_rank,
            "joint_rank": cmp.joint_rank,
            "spans_equal": cmp.equal(),
            "weights_divisible_by_p": weights_ok,
        }),
        pass: cmp.equal() && weights_ok,
    })
}

fn dunkl(input: &DunklInput) -> Result<Outcome, CmdError> {
    let c = rational(&input.c)?;
    if input.degree_bound == 0 {
        return Err(CmdError::Schema("degree_bound must be at least 1".into()));
    }
    let cert = dunkl_verify(&c, input.degree_bound).map_err(|e| match e {
        Error::RelationMismatch(k) => {
            CmdError::Failed(e.to_string(), json!({ "first_failure": k }))
        }
        other => other.into(),
    })?;
    let symbolic = dunkl_verify_symbolic(input.degree_bound)?;
    Ok(Outcome {
        certificates: json!({
            "c": rat_json(&c),
            "degree_bound": input.degree_bound,
            "convention": cert.convention,
            "bracket_eigenvalues": cert.bracket_eigenvalues.iter().map(rat_json).collect::<Vec<_>>(),
            "symbolic_eigenvalues": symbolic
                .bracket_eigenvalues
                .iter()
                .map(|p| p.display_with("c"))
                .collect::<Vec<_>>(),
            "reflection_anticommutes": cert.reflection_anticommutes,
        }),
        pass: cert.reflection_anticommutes,
    })
}

fn poly_json(p: &UPoly<Rational>) -> Value {
    json!(p.coeffs().iter().map(format_rational).collect::<Vec<_>>())
}

fn fixed_ring(input: &FixedRingInput) -> Result<Outcome, CmdError> {
    if input.n < 2 {
        return Err(CmdError::Schema("n must be at least 2".into()));
    }
    let iso = build_fixed_ring_iso(input.n)?;
    let relations = iso.relations();
    let image = iso.image_check(input.degree_bound);
    let pass = relations.iter().all(|r| r.holds) && iso.generators_invariant() && image.spans();
    Ok(Outcome {
        certificates: json!({
            "n": iso.n,
            "X": iso.x.to_string(),
            "Y": iso.y.to_string(),
            "H": iso.h.to_string(),
            "alpha": rat_json(&iso.alpha),
            "beta": rat_json(&iso.beta),
            "y_scale": rat_json(&iso.y_scale),
            "vmap": poly_json(&iso.vmap),
            "vmap_display": iso.vmap.display_with("h"),
            "vmap_roots": iso.vmap_roots().iter().map(rat_json).collect::<Vec<_>>(),
            "matches_product": iso.matches_target(),
            "relations": relations.iter().map(|r| json!({ "name": r.name, "holds": r.holds })).collect::<Vec<_>>(),
            "generators_invariant": iso.generators_invariant(),
            "image_check": {
                "max_degree": image.max_degree,
                "invariant_monomials": image.invariant_monomials,
                "image_rank": image.image_rank,
                "joint_rank": image.joint_rank,
            },
        }),
        pass,
    })
}

fn matrix(rows: &[Vec<String>]) -> Result<DenseMatrix<Rational>, CmdError> {
    let parsed = rows
        .iter()
        .map(|r| r.iter().map(|s| rational(s)).collect::<Result<Vec<_>, _>>())
        .collect::<Result<Vec<_>, _>>()?;
    Ok(DenseMatrix::from_rows(
        parsed,
        &cherednik::arith::rat(1, 1),
    )?)
}

fn matrix_json(m: &DenseMatrix<Rational>) -> Value {
    json!((0..m.rows())
        .map(|i| m.row(i).iter().map(format_rational).collect::<Vec<_>>())
        .collect::<Vec<_>>())
}

fn membership_json(m: &Membership<Rational>) -> Value {
    match m {
        Membership::Member => Value::Null,
        Membership::NonMember(Witness::ZeroMatrix) => json!({ "zero_matrix": true }),
        Membership::NonMember(Witness::Minor { rows, cols, value }) => json!({
            "rows": [rows.0, rows.1],
            "cols": [cols.0, cols.1],
            "value": format_rational(value),
        }),
    }
}

fn cm_check(input: &CmInput) -> Result<Outcome, CmdError> {
    let pair = match (&input.eigenvalues, &input.diagonal, &input.a, &input.b) {
        (Some(ev), Some(d), None, None) => {
            let ev = ev
                .iter()
                .map(|s| rational(s))
                .collect::<Result<Vec<_>, _>>()?;
            let d = d
                .iter()
                .map(|s| rational(s))
                .collect::<Result<Vec<_>, _>>()?;
            cm_catalog_point(&ev, &d)?
        }
        (None, None, Some(a), Some(b)) => MatrixPair::new(matrix(a)?, matrix(b)?)?,
        _ => {
            return Err(CmdError::Schema(
                "give either eigenvalues and diagonal, or matrices a and b".into(),
            ))
        }
    };
    let n = pair.n();
    let membership = cm_membership(&pair);
    let member = membership.is_member();
    let tangent = if member {
        Some(tangent_dimension(&pair)?)
    } else {
        None
    };
    let mut rng = ChaCha8Rng::seed_from_u64(input.seed);
    let unit = cherednik::arith::rat(1, 1);
    let mut conj = Vec::new();
    let mut consistent = true;
    for _ in 0..input.conjugations {
        let g = random_invertible(n, &unit, 3, &mut rng);
        let c = pair.conjugate(&g)?;
        let cm = cm_membership(&c).is_member();
        let ct = if cm {
            Some(tangent_dimension(&c)?)
        } else {
            None
        };
        consistent &= cm == member && ct == tangent;
        conj.push(json!({ "g": matrix_json(&g), "member": cm, "tangent_dimension": ct }));
    }
    Ok(Outcome {
        certificates: json!({
            "n": n,
            "a": matrix_json(pair.a()),
            "b": matrix_json(pair.b()),
            "moment": matrix_json(&pair.moment()),
            "member": member,
            "witness": membership_json(&membership),
            "tangent_dimension": tangent,
            "expected_tangent_dimension": n * n + 2 * n - 1,
            "conjugations": conj,
        }),
        pass: member && consistent,
    })
}

fn cheb_search(input: &ChebInput) -> Result<Outcome, CmdError> {
    if input.count == 0 {
        return Err(CmdError::Schema("count must be at least 1".into()));
    }
    match (&input.params, &input.minpoly) {
        (Some(params), None) => {
            let rs = params
                .iter()
                .map(|s| rational(s))
                .collect::<Result<Vec<_>, _>>()?;
            let found = find_primes_rational(&rs, input.count);
            let primes: Vec<Value> = found
                .iter()
                .map(|s| json!({ "p": s.p, "residues": s.residues.iter().map(element_json).collect::<Vec<_>>() }))
                .collect();
            Ok(Outcome {
                certificates: json!({ "mode": "rational", "primes": primes }),
                pass: true,
            })
        }
        (None, Some(minpoly)) => {
            let param = AlgebraicParam::from_i64(minpoly, "z")?;
            let ceiling = input.ceiling.unwrap_or(DEFAULT_CEILING);
            let certs =
                find_primes_irrational(&param, input.count, ceiling).map_err(|e| match e {
                    Error::ExhaustedSearch(_) => {
                        CmdError::Failed(e.to_string(), json!({ "ceiling": ceiling }))
                    }
                    other => other.into(),
                })?;
            let mut pass = true;
            let list: Vec<Value> = certs
                .iter()
                .map(|c| {
                    let verified = c.verify(&param);
                    pass &= verified && !c.in_fp;
                    json!({
                        "p": c.p,
                        "q": order_json(&c.field),
                        "modulus": c.field.modulus(),
                        "residue": element_json(&c.residue),
                        "in_fp": c.in_fp,
                        "verified": verified,
                    })
                })
                .collect();
            Ok(Outcome {
                certificates: json!({ "mode": "irrational", "ceiling": ceiling, "certificates": list }),
                pass,
            })
        }
        _ => Err(CmdError::Schema(
            "give exactly one of params (rationals) or minpoly".into(),
        )),
    }
}

fn gwa_result<K: cherednik::Field>(
    alg: &Arc<GwaAlgebra<K>>,
    input: &GwaInput,
    coef: &dyn Fn(&Rational) -> cherednik::Result<K>,
    generator: Option<&K>,
) -> Result<Outcome, CmdError> {
    let a = GwaElement::parse(alg, &input.a, coef, generator)?;
    let b = input
        .b
        .as_ref()
        .map(|s| GwaElement::parse(alg, s, coef, generator))
        .transpose()?;
    let result = match (input.op, b) {
        (GwaOp::Normalize, None) => a,
        (GwaOp::Mul, Some(b)) => a.try_mul(&b)?,
        (GwaOp::Commutator, Some(b)) => a.commutator(&b)?,
        (GwaOp::Normalize, Some(_)) => {
            return Err(CmdError::Schema("normalize takes only a".into()))
        }
        _ => return Err(CmdError::Schema("this op needs both a and b".into())),
    };
    let symbol = result.top_symbol().ok().map(|s| s.to_string());
    Ok(Outcome {
        certificates: json!({
            "v": alg.v().display_with("h"),
            "result": result.to_string(),
            "filtration_degree": result.filtration_degree(),
            "top_symbol": symbol,
        }),
        pass: true,
    })
}

fn gwa(input: &GwaInput) -> Result<Outcome, CmdError> {
    match input.p {
        Some(p) => {
            let (sp, alg) = finite_gwa(p, &input.roots, input.modulus.as_deref())?;
            let field = sp.field.clone();
            let coef = move |r: &Rational| FieldElement::from_rational(&field, r);
            let z = FieldElement::generator(&sp.field);
            let generator = (sp.field.degree() > 1).then_some(&z);
            gwa_result(&alg, input, &coef, generator)
        }
        None => {
            if input.modulus.is_some() {
                return Err(CmdError::Schema("modulus needs p".into()));
            }
            let roots = input
                .roots
                .iter()
                .map(|r| match r {
                    RootInput::Rational { value } => rational(value),
                    _ => Err(CmdError::Schema(
                        "over the rationals every root must be rational".into(),
                    )),
                })
                .collect::<Result<Vec<_>, _>>()?;
            if roots.is_empty() {
                return Err(CmdError::Schema("at least one root is required".into()));
            }
            let alg = GwaAlgebra::from_roots(roots)?;
            let coef = |r: &Rational| Ok(r.clone());
            gwa_result(&alg, input, &coef, None)
        }
    }
}
