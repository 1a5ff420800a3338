//! Exhaustive bounded search for solutions of the derived functional system,
//! with matrix-level confirmation of every survivor.
//!
//! Candidates are linear forms c1*u + c2*v per function.  The filter
//! evaluates the derived equations on a small spectral grid, which is exact:
//! every residual is a polynomial of degree at most 3 in each of u, v, w, so
//! vanishing on a 4x4x4 grid implies vanishing identically.

use std::collections::BTreeMap;

use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::{
    build_operator, klein_algebra, theorem31_quadruple, two_dim_algebra, x3_algebra,
    CoefficientTriple, ColouredParams, FiniteAlgebra,
};
use crate::commutator::{coloured_commutator, coloured_system_residuals};
use crate::error::{Error, Result};
use crate::functional::{derive_system, SystemPart, FUNCTION_NAMES};
use crate::ring::{Payload, Ring, RingDescriptor, ScalarValue};
use crate::tensor::{ColouredOperator, LegShape};

const CANDIDATE_LIMIT: u128 = 100_000_000;
const GRID: [i64; 4] = [0, 1, 2, 3];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchShape {
    /// Four parameters (p, q, p', q') in the first family's linear shape,
    /// searched with the full eight-condition matrix oracle.
    Family1,
    /// Free linear forms c1*u + c2*v for each of the six functions,
    /// confirmed against the [[A,A,A]] and [[A,C,C]] commutators.
    Linear6,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum SearchDomain {
    /// Integer grid [-bound .. bound] per coefficient.
    Grid { bound: i64 },
    /// All residues of the prime field F_modulus per coefficient.
    PrimeField { modulus: u64 },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SearchConfig {
    pub shape: SearchShape,
    pub domain: SearchDomain,
    /// Algebras used by the matrix-level confirmation: dim2, x3, klein.
    pub verify_on: Vec<String>,
    #[serde(default)]
    pub dedup_scaling: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifiedSolution {
    /// Raw coefficient tuple in enumeration order.
    pub coefficients: Vec<i64>,
    /// Expression per function name, e.g. alpha -> "u - v".
    pub assignment: BTreeMap<String, String>,
}

/// Compiled multilinear equation: sum of coef * vals[i]*vals[j]*vals[k].
struct CompiledEq {
    terms: Vec<(i64, [usize; 3])>,
}

fn compile_systems() -> Vec<CompiledEq> {
    let mut out = Vec::new();
    for part in [SystemPart::Aaa, SystemPart::Acc] {
        let sys = derive_system(part);
        for eq in &sys.equations {
            let Payload::Poly(map) = &eq.payload else { unreachable!() };
            // clear denominators
            let mut denom_lcm = num_bigint::BigInt::one();
            for coef in map.values() {
                denom_lcm = denom_lcm.lcm(coef.denom());
            }
            let mut terms = Vec::new();
            for (mono, coef) in map {
                let int = (coef * num_rational::BigRational::from_integer(denom_lcm.clone()))
                    .to_integer();
                let c = int.to_i64().expect("coefficient fits i64");
                let mut idxs = Vec::new();
                for (i, e) in mono.0.iter().enumerate() {
                    for _ in 0..*e {
                        idxs.push(i);
                    }
                }
                assert_eq!(idxs.len(), 3);
                terms.push((c, [idxs[0], idxs[1], idxs[2]]));
            }
            out.push(CompiledEq { terms });
        }
    }
    out
}

/// (c1, c2) per function, in FUNCTION_NAMES order.
type LinearForms = [(i64, i64); 6];

fn forms_from_tuple(shape: SearchShape, tuple: &[i64]) -> LinearForms {
    match shape {
        SearchShape::Family1 => {
            let (p, q, pp, qp) = (tuple[0], tuple[1], tuple[2], tuple[3]);
            [
                (p, -p),   // alpha = p(u-v)
                (q, -q),   // beta = q(u-v)
                (p, -q),   // gamma = pu - qv
                (p, -qp),  // eta = pu - q'v
                (q, -pp),  // zeta = qu - p'v
                (p, -pp),  // delta = pu - p'v
            ]
        }
        SearchShape::Linear6 => {
            let mut forms = [(0i64, 0i64); 6];
            for i in 0..6 {
                forms[i] = (tuple[2 * i], tuple[2 * i + 1]);
            }
            forms
        }
    }
}

/// Evaluates the 18 indeterminates at a spectral point; order matches
/// indeterminate_names(): function-major, pair order (uv, uw, vw).
fn indeterminate_values(forms: &LinearForms, u: i64, v: i64, w: i64) -> [i64; 18] {
    let mut vals = [0i64; 18];
    let pairs = [(u, v), (u, w), (v, w)];
    for (fi, (c1, c2)) in forms.iter().enumerate() {
        for (pi, (x, y)) in pairs.iter().enumerate() {
            vals[fi * 3 + pi] = c1 * x + c2 * y;
        }
    }
    vals
}

fn passes_filter(eqs: &[CompiledEq], forms: &LinearForms, modulus: Option<u64>) -> bool {
    for &u in &GRID {
        for &v in &GRID {
            for &w in &GRID {
                let vals = indeterminate_values(forms, u, v, w);
                for eq in eqs {
                    let mut acc: i128 = 0;
                    for (c, [i, j, k]) in &eq.terms {
                        acc += *c as i128
                            * vals[*i] as i128
                            * vals[*j] as i128
                            * vals[*k] as i128;
                    }
                    let zero = match modulus {
                        None => acc == 0,
                        Some(p) => acc.rem_euclid(p as i128) == 0,
                    };
                    if !zero {
                        return false;
                    }
                }
            }
        }
    }
    true
}

fn verify_ring() -> Ring {
    RingDescriptor::poly(&["sigma", "u", "v"]).unwrap()
}

fn algebra_by_name(name: &str, ring: &Ring) -> Result<FiniteAlgebra> {
    match name {
        "dim2" => Ok(two_dim_algebra(&ScalarValue::var(ring, "sigma")?)),
        "x3" => Ok(x3_algebra(ring)),
        "klein" => Ok(klein_algebra(ring)),
        other => Err(Error::Document(format!("unknown verify_on algebra `{other}`"))),
    }
}

fn linear_poly(ring: &Ring, c1: i64, c2: i64) -> Result<ScalarValue> {
    let u = ScalarValue::var(ring, "u")?;
    let v = ScalarValue::var(ring, "v")?;
    Ok(u.mul(&ScalarValue::from_int(ring, c1))
        .add(&v.mul(&ScalarValue::from_int(ring, c2))))
}

/// Symbolic matrix-level confirmation of one filtered candidate.
fn verify_candidate(
    shape: SearchShape,
    tuple: &[i64],
    forms: &LinearForms,
    verify_on: &[String],
) -> Result<bool> {
    let ring = verify_ring();
    for name in verify_on {
        let alg = algebra_by_name(name, &ring)?;
        match shape {
            SearchShape::Family1 => {
                let params = ColouredParams {
                    p: ScalarValue::from_int(&ring, tuple[0]),
                    q: ScalarValue::from_int(&ring, tuple[1]),
                    r1: ScalarValue::from_int(&ring, tuple[2]),
                    r2: ScalarValue::from_int(&ring, tuple[3]),
                };
                let quad = theorem31_quadruple(&alg, 1, &params)?;
                if !coloured_system_residuals(&quad)?.all_zero {
                    return Ok(false);
                }
            }
            SearchShape::Linear6 => {
                let triple = |i: usize| -> Result<CoefficientTriple> {
                    CoefficientTriple::new(
                        linear_poly(&ring, forms[i].0, forms[i].1)?,
                        linear_poly(&ring, forms[i + 1].0, forms[i + 1].1)?,
                        linear_poly(&ring, forms[i + 2].0, forms[i + 2].1)?,
                    )
                };
                let a = ColouredOperator::new(build_operator(&alg, &triple(0)?)?)?;
                let c = ColouredOperator::new(build_operator(&alg, &triple(3)?)?)?;
                let shape3 = LegShape::cube(alg.dim);
                if !coloured_commutator(&a, &a, &a, shape3)?.is_zero() {
                    return Ok(false);
                }
                if !coloured_commutator(&a, &c, &c, shape3)?.is_zero() {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

fn assignment_strings(forms: &LinearForms) -> BTreeMap<String, String> {
    let ring = RingDescriptor::poly(&["u", "v"]).unwrap();
    FUNCTION_NAMES
        .iter()
        .zip(forms)
        .map(|(f, (c1, c2))| {
            let p = linear_poly(&ring, *c1, *c2).unwrap();
            (f.to_string(), p.to_string())
        })
        .collect()
}

fn tuple_len(shape: SearchShape) -> usize {
    match shape {
        SearchShape::Family1 => 4,
        SearchShape::Linear6 => 12,
    }
}

fn decode(index: u64, radix: u64, len: usize, map: impl Fn(u64) -> i64) -> Vec<i64> {
    let mut digits = vec![0i64; len];
    let mut rest = index;
    for d in (0..len).rev() {
        digits[d] = map(rest % radix);
        rest /= radix;
    }
    digits
}

/// Enumerates all candidate tuples, filters by the derived system, confirms
/// survivors with the matrix oracle, and returns them in lexicographic
/// coefficient order.  Deterministic regardless of thread count.
pub fn search_solutions(config: &SearchConfig) -> Result<Vec<VerifiedSolution>> {
    let len = tuple_len(config.shape);
    let (radix, map, modulus): (u64, Box<dyn Fn(u64) -> i64 + Sync>, Option<u64>) =
        match config.domain {
            SearchDomain::Grid { bound } => {
                if bound < 0 {
                    return Err(Error::Document("grid bound must be >= 0".into()));
                }
                let r = (2 * bound + 1) as u64;
                (r, Box::new(move |d| d as i64 - bound), None)
            }
            SearchDomain::PrimeField { modulus } => {
                // validate primality up front
                let _ = RingDescriptor::prime_field(modulus)?;
                (modulus, Box::new(|d| d as i64), Some(modulus))
            }
        };
    let count = (radix as u128).pow(len as u32);
    if count > CANDIDATE_LIMIT {
        return Err(Error::SearchSpaceTooLarge(count, CANDIDATE_LIMIT));
    }
    let count = count as u64;
    let eqs = compile_systems();
    let shape = config.shape;

    // filter in parallel; indices ascend, so sorting restores lexicographic order
    let mut survivors: Vec<(u64, Vec<i64>, LinearForms)> = (0..count)
        .into_par_iter()
        .filter_map(|idx| {
            let tuple = decode(idx, radix, len, &map);
            let forms = forms_from_tuple(shape, &tuple);
            passes_filter(&eqs, &forms, modulus).then_some((idx, tuple, forms))
        })
        .collect();
    survivors.sort_by_key(|(idx, _, _)| *idx);

    let mut out = Vec::new();
    for (_, tuple, forms) in survivors {
        if modulus.is_some() {
            // prime-field candidates are confirmed on the same exact grid
            if !verify_candidate_fp(shape, &tuple, modulus.unwrap(), &config.verify_on)? {
                continue;
            }
        } else if !verify_candidate(shape, &tuple, &forms, &config.verify_on)? {
            continue;
        }
        out.push(VerifiedSolution {
            coefficients: tuple,
            assignment: assignment_strings(&forms),
        });
    }
    if config.dedup_scaling {
        out = dedup_scaling(out);
    }
    Ok(out)
}

/// Grid-pointwise confirmation over F_p: operators are instantiated at each
/// spectral point (and each sigma sample for dim2) and the commutators are
/// checked numerically; exactness again follows from the degree bound.
fn verify_candidate_fp(
    shape: SearchShape,
    tuple: &[i64],
    modulus: u64,
    verify_on: &[String],
) -> Result<bool> {
    let field = RingDescriptor::prime_field(modulus)?;
    let forms = forms_from_tuple(shape, tuple);
    let eval = |i: usize, x: i64, y: i64| -> ScalarValue {
        ScalarValue::from_int(&field, forms[i].0 * x + forms[i].1 * y)
    };
    for name in verify_on {
        let sigmas: Vec<i64> = if name == "dim2" { vec![0, 1, 2, 3] } else { vec![0] };
        for sigma in sigmas {
            let alg = match name.as_str() {
                "dim2" => two_dim_algebra(&ScalarValue::from_int(&field, sigma)),
                "x3" => x3_algebra(&field),
                "klein" => klein_algebra(&field),
                other => {
                    return Err(Error::Document(format!(
                        "unknown verify_on algebra `{other}`"
                    )))
                }
            };
            let shape3 = LegShape::cube(alg.dim);
            for &u in &GRID {
                for &v in &GRID {
                    for &w in &GRID {
                        let op = |i: usize, x: i64, y: i64| -> Result<crate::tensor::RingMatrix> {
                            build_operator(
                                &alg,
                                &CoefficientTriple::new(
                                    eval(i, x, y),
                                    eval(i + 1, x, y),
                                    eval(i + 2, x, y),
                                )?,
                            )
                        };
                        // [[A,A,A]] at (u,v,w)
                        let r = op(0, u, v)?;
                        let s = op(0, u, w)?;
                        let t = op(0, v, w)?;
                        if !crate::commutator::yb_commutator(&r, &s, &t, shape3)?.is_zero() {
                            return Ok(false);
                        }
                        // [[A,C,C]] at (u,v,w)
                        let s = op(3, u, w)?;
                        let t = op(3, v, w)?;
                        if !crate::commutator::yb_commutator(&r, &s, &t, shape3)?.is_zero() {
                            return Ok(false);
                        }
                    }
                }
            }
        }
    }
    Ok(true)
}

fn dedup_scaling(solutions: Vec<VerifiedSolution>) -> Vec<VerifiedSolution> {
    let mut seen: Vec<Vec<num_rational::BigRational>> = Vec::new();
    let mut out = Vec::new();
    for sol in solutions {
        let vec: Vec<num_rational::BigRational> = sol
            .coefficients
            .iter()
            .map(|c| num_rational::BigRational::from_integer((*c).into()))
            .collect();
        let lead = vec.iter().find(|c| !c.is_zero()).cloned();
        let normalized: Vec<num_rational::BigRational> = match lead {
            Some(l) => vec.iter().map(|c| c / &l).collect(),
            None => vec.clone(),
        };
        if seen.contains(&normalized) {
            continue;
        }
        seen.push(normalized);
        out.push(sol);
    }
    out
}
