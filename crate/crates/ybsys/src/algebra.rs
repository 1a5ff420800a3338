//! Finite-dimensional commutative algebras given by structure constants and
//! the algebra -> Yang-Baxter operator constructions, including the two
//! solution families built from the three-term map
//! a (x) b -> alpha 1 (x) ab + beta ab (x) 1 - gamma b (x) a.

use crate::error::{Error, Result};
use crate::ring::{Ring, ScalarValue};
use crate::tensor::{coloured_ring, ColouredOperator, RingMatrix};

/// Unital algebra with product e_i e_j = sum_k c[i][j][k] e_k.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteAlgebra {
    pub ring: Ring,
    pub dim: usize,
    pub unit_index: usize,
    /// structure_constants[i][j][k]
    pub structure_constants: Vec<Vec<Vec<ScalarValue>>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraReport {
    /// basis index j with e_unit * e_j != e_j, if any
    pub unital_failure: Option<usize>,
    /// (i, j) with e_i e_j != e_j e_i, if any
    pub commutative_failure: Option<(usize, usize)>,
    /// (i, j, k) with (e_i e_j) e_k != e_i (e_j e_k), if any
    pub associative_failure: Option<(usize, usize, usize)>,
}

impl AlgebraReport {
    pub fn all_pass(&self) -> bool {
        self.unital_failure.is_none()
            && self.commutative_failure.is_none()
            && self.associative_failure.is_none()
    }
}

impl FiniteAlgebra {
    pub fn new(
        ring: &Ring,
        dim: usize,
        unit_index: usize,
        structure_constants: Vec<Vec<Vec<ScalarValue>>>,
    ) -> Result<Self> {
        if unit_index >= dim {
            return Err(Error::InvalidAlgebra("unit index out of range".into()));
        }
        if structure_constants.len() != dim
            || structure_constants
                .iter()
                .any(|p| p.len() != dim || p.iter().any(|q| q.len() != dim))
        {
            return Err(Error::InvalidAlgebra("structure constant shape".into()));
        }
        for plane in &structure_constants {
            for row in plane {
                for v in row {
                    if v.ring != *ring {
                        return Err(Error::RingMismatch(
                            "structure constant in foreign ring".into(),
                        ));
                    }
                }
            }
        }
        Ok(FiniteAlgebra {
            ring: ring.clone(),
            dim,
            unit_index,
            structure_constants,
        })
    }

    pub fn c(&self, i: usize, j: usize, k: usize) -> &ScalarValue {
        &self.structure_constants[i][j][k]
    }

    /// Maps every structure constant into `target`, which must declare all
    /// variables they use.
    pub fn into_ring(&self, target: &Ring) -> Result<FiniteAlgebra> {
        let mut constants = Vec::with_capacity(self.dim);
        for plane in &self.structure_constants {
            let mut rows = Vec::with_capacity(self.dim);
            for row in plane {
                rows.push(
                    row.iter()
                        .map(|v| v.into_ring(target))
                        .collect::<Result<Vec<_>>>()?,
                );
            }
            constants.push(rows);
        }
        FiniteAlgebra::new(target, self.dim, self.unit_index, constants)
    }
}

/// Checks the unital / commutative / associative hypotheses, reporting a
/// witness index tuple for each failure.
pub fn validate_algebra(alg: &FiniteAlgebra) -> AlgebraReport {
    let dim = alg.dim;
    let one = ScalarValue::one(&alg.ring);

    let mut unital_failure = None;
    'unital: for j in 0..dim {
        for k in 0..dim {
            let expect = if k == j { &one } else { &ScalarValue::zero(&alg.ring) };
            if alg.c(alg.unit_index, j, k) != expect {
                unital_failure = Some(j);
                break 'unital;
            }
        }
    }

    let mut commutative_failure = None;
    'comm: for i in 0..dim {
        for j in 0..i {
            for k in 0..dim {
                if alg.c(i, j, k) != alg.c(j, i, k) {
                    commutative_failure = Some((i, j));
                    break 'comm;
                }
            }
        }
    }

    let mut associative_failure = None;
    'assoc: for i in 0..dim {
        for j in 0..dim {
            for k in 0..dim {
                for l in 0..dim {
                    let mut lhs = ScalarValue::zero(&alg.ring);
                    let mut rhs = ScalarValue::zero(&alg.ring);
                    for m in 0..dim {
                        lhs = lhs.add(&alg.c(i, j, m).mul(alg.c(m, k, l)));
                        rhs = rhs.add(&alg.c(j, k, m).mul(alg.c(i, m, l)));
                    }
                    if lhs != rhs {
                        associative_failure = Some((i, j, k));
                        break 'assoc;
                    }
                }
            }
        }
    }

    AlgebraReport {
        unital_failure,
        commutative_failure,
        associative_failure,
    }
}

/// k[X]/(X^2 - sigma) with basis {1, x}.  `sigma` may be symbolic.
pub fn two_dim_algebra(sigma: &ScalarValue) -> FiniteAlgebra {
    let ring = sigma.ring.clone();
    let zero = ScalarValue::zero(&ring);
    let one = ScalarValue::one(&ring);
    let c = vec![
        vec![
            vec![one.clone(), zero.clone()],
            vec![zero.clone(), one.clone()],
        ],
        vec![
            vec![zero.clone(), one.clone()],
            vec![sigma.clone(), zero.clone()],
        ],
    ];
    FiniteAlgebra::new(&ring, 2, 0, c).unwrap()
}

/// k[X]/(X^3) with basis {1, x, x^2}.
pub fn x3_algebra(ring: &Ring) -> FiniteAlgebra {
    let dim = 3;
    let mut c =
        vec![vec![vec![ScalarValue::zero(ring); dim]; dim]; dim];
    for i in 0..dim {
        for j in 0..dim {
            if i + j < dim {
                c[i][j][i + j] = ScalarValue::one(ring);
            }
        }
    }
    FiniteAlgebra::new(ring, dim, 0, c).unwrap()
}

/// Group algebra of Z/2 x Z/2 (Klein four-group); e_i e_j = e_{i xor j}.
pub fn klein_algebra(ring: &Ring) -> FiniteAlgebra {
    let dim = 4;
    let mut c =
        vec![vec![vec![ScalarValue::zero(ring); dim]; dim]; dim];
    for i in 0..dim {
        for j in 0..dim {
            c[i][j][i ^ j] = ScalarValue::one(ring);
        }
    }
    FiniteAlgebra::new(ring, dim, 0, c).unwrap()
}

/// The noncommutative 2x2 matrix algebra, for negative testing; basis
/// e11, e12, e21, e22 with e_{ab} e_{cd} = delta_{bc} e_{ad}.
pub fn matrix2_algebra(ring: &Ring) -> FiniteAlgebra {
    let dim = 4;
    let idx = |a: usize, b: usize| a * 2 + b;
    let mut c =
        vec![vec![vec![ScalarValue::zero(ring); dim]; dim]; dim];
    for a in 0..2 {
        for b in 0..2 {
            for d in 0..2 {
                c[idx(a, b)][idx(b, d)][idx(a, d)] = ScalarValue::one(ring);
            }
        }
    }
    // not unital w.r.t. a basis element; validation is expected to fail
    FiniteAlgebra::new(ring, dim, 0, c).unwrap()
}

/// Coefficients (alpha, beta, gamma) of the three-term operator ansatz.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoefficientTriple {
    pub alpha: ScalarValue,
    pub beta: ScalarValue,
    pub gamma: ScalarValue,
}

impl CoefficientTriple {
    pub fn new(alpha: ScalarValue, beta: ScalarValue, gamma: ScalarValue) -> Result<Self> {
        if alpha.ring != beta.ring || beta.ring != gamma.ring {
            return Err(Error::RingMismatch("coefficient triple rings differ".into()));
        }
        Ok(CoefficientTriple { alpha, beta, gamma })
    }
}

/// Matrix of a (x) b -> alpha 1 (x) ab + beta ab (x) 1 - gamma b (x) a in
/// the tensor basis (first factor most significant).
pub fn build_operator(alg: &FiniteAlgebra, t: &CoefficientTriple) -> Result<RingMatrix> {
    if !validate_algebra(alg).all_pass() {
        return Err(Error::InvalidAlgebra(
            "operator construction requires a unital commutative associative algebra".into(),
        ));
    }
    if t.alpha.ring != alg.ring {
        return Err(Error::RingMismatch("triple not over the algebra ring".into()));
    }
    let d = alg.dim;
    let u = alg.unit_index;
    let mut m = RingMatrix::zero(&alg.ring, d * d, d * d);
    for i in 0..d {
        for j in 0..d {
            let col = i * d + j;
            for k in 0..d {
                let c = alg.c(i, j, k);
                if c.is_zero() {
                    continue;
                }
                let row1 = u * d + k; // 1 (x) e_k
                let row2 = k * d + u; // e_k (x) 1
                let a = m.at(row1, col).add(&t.alpha.mul(c));
                *m.at_mut(row1, col) = a;
                let b = m.at(row2, col).add(&t.beta.mul(c));
                *m.at_mut(row2, col) = b;
            }
            let row3 = j * d + i; // b (x) a
            let g = m.at(row3, col).sub(&t.gamma);
            *m.at_mut(row3, col) = g;
        }
    }
    Ok(m)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    Theorem21,
    Theorem31Case1,
    Theorem31Case2,
    User,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstantQuadruple {
    pub a: RingMatrix,
    pub b: RingMatrix,
    pub c: RingMatrix,
    pub d: RingMatrix,
    pub provenance: Provenance,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColouredQuadruple {
    pub a: ColouredOperator,
    pub b: ColouredOperator,
    pub c: ColouredOperator,
    pub d: ColouredOperator,
    pub provenance: Provenance,
}

/// A = lambda-operator, B = C = 1-operator, D = lambda'-operator.
pub fn theorem21_quadruple(
    alg: &FiniteAlgebra,
    lambda: &ScalarValue,
    lambda_prime: &ScalarValue,
) -> Result<ConstantQuadruple> {
    let one = ScalarValue::one(&alg.ring);
    let a = build_operator(
        alg,
        &CoefficientTriple::new(lambda.clone(), one.clone(), one.clone())?,
    )?;
    let bc = build_operator(
        alg,
        &CoefficientTriple::new(one.clone(), one.clone(), one.clone())?,
    )?;
    let d = build_operator(
        alg,
        &CoefficientTriple::new(lambda_prime.clone(), one.clone(), one)?,
    )?;
    Ok(ConstantQuadruple {
        a,
        b: bc.clone(),
        c: bc,
        d,
        provenance: Provenance::Theorem21,
    })
}

/// Parameters of the coloured families.  Case 1 uses (p, q, p', q'); case 2
/// uses (p, q, l, m) where l, m stand for the second family's extra pair of
/// scalars (renamed from lambda, mu to avoid clashing with the constant
/// family's lambda).
#[derive(Debug, Clone)]
pub struct ColouredParams {
    pub p: ScalarValue,
    pub q: ScalarValue,
    pub r1: ScalarValue,
    pub r2: ScalarValue,
}

fn lin(a: &ScalarValue, x: &ScalarValue, b: &ScalarValue, y: &ScalarValue) -> ScalarValue {
    // a*x - b*y
    a.mul(x).sub(&b.mul(y))
}

/// Coloured coefficient triples of the two Theorem families.
pub fn theorem31_triples(
    ring: &Ring,
    case: u8,
    params: &ColouredParams,
) -> Result<[CoefficientTriple; 4]> {
    let u = ScalarValue::var(ring, "u")?;
    let v = ScalarValue::var(ring, "v")?;
    let p = &params.p;
    let q = &params.q;
    match case {
        1 => {
            let (pp, qp) = (&params.r1, &params.r2); // p', q'
            let a = CoefficientTriple::new(
                p.mul(&u.sub(&v)),
                q.mul(&u.sub(&v)),
                lin(p, &u, q, &v),
            )?;
            let b = CoefficientTriple::new(
                lin(pp, &u, q, &v),
                lin(qp, &u, p, &v),
                lin(pp, &u, p, &v),
            )?;
            let c = CoefficientTriple::new(
                lin(p, &u, qp, &v),
                lin(q, &u, pp, &v),
                lin(p, &u, pp, &v),
            )?;
            let d = CoefficientTriple::new(
                pp.mul(&u.sub(&v)),
                qp.mul(&u.sub(&v)),
                lin(pp, &u, qp, &v),
            )?;
            Ok([a, b, c, d])
        }
        2 => {
            let (l, m) = (&params.r1, &params.r2);
            let lu_mv = lin(l, &u, m, &v); // l*u - m*v
            let mu_lv = lin(m, &u, l, &v); // m*u - l*v
            let a = CoefficientTriple::new(
                p.mul(&u.sub(&v)),
                q.mul(&u.sub(&v)),
                lin(p, &u, q, &v),
            )?;
            let b = CoefficientTriple::new(
                q.mul(&mu_lv),
                p.mul(&mu_lv),
                q.mul(m).mul(&u).sub(&p.mul(l).mul(&v)),
            )?;
            let c = CoefficientTriple::new(
                p.mul(&lu_mv),
                q.mul(&lu_mv),
                p.mul(l).mul(&u).sub(&q.mul(m).mul(&v)),
            )?;
            let d = CoefficientTriple::new(
                q.mul(&u.sub(&v)),
                p.mul(&u.sub(&v)),
                lin(q, &u, p, &v),
            )?;
            Ok([a, b, c, d])
        }
        n => Err(Error::UnknownCase(n)),
    }
}

/// The four coloured operators of the requested family case over `alg`.
pub fn theorem31_quadruple(
    alg: &FiniteAlgebra,
    case: u8,
    params: &ColouredParams,
) -> Result<ColouredQuadruple> {
    let [ta, tb, tc, td] = theorem31_triples(&alg.ring, case, params)?;
    let a = ColouredOperator::new(build_operator(alg, &ta)?)?;
    let b = ColouredOperator::new(build_operator(alg, &tb)?)?;
    let c = ColouredOperator::new(build_operator(alg, &tc)?)?;
    let d = ColouredOperator::new(build_operator(alg, &td)?)?;
    Ok(ColouredQuadruple {
        a,
        b,
        c,
        d,
        provenance: if case == 1 {
            Provenance::Theorem31Case1
        } else {
            Provenance::Theorem31Case2
        },
    })
}

/// Ring carrying sigma, lambda, lambda' for the constant family.
pub fn theorem21_ring() -> Ring {
    crate::ring::RingDescriptor::poly(&["sigma", "lambda", "lambda'"]).unwrap()
}

/// Coloured ring for case 1: sigma, p, q, p', q' plus spectral u, v.
pub fn theorem31_case1_ring() -> Ring {
    coloured_ring(&["sigma", "p", "q", "p'", "q'"]).unwrap()
}

/// Coloured ring for case 2: sigma, p, q, l, m plus spectral u, v.
pub fn theorem31_case2_ring() -> Ring {
    coloured_ring(&["sigma", "p", "q", "l", "m"]).unwrap()
}

pub fn case1_params(ring: &Ring) -> Result<ColouredParams> {
    Ok(ColouredParams {
        p: ScalarValue::var(ring, "p")?,
        q: ScalarValue::var(ring, "q")?,
        r1: ScalarValue::var(ring, "p'")?,
        r2: ScalarValue::var(ring, "q'")?,
    })
}

pub fn case2_params(ring: &Ring) -> Result<ColouredParams> {
    Ok(ColouredParams {
        p: ScalarValue::var(ring, "p")?,
        q: ScalarValue::var(ring, "q")?,
        r1: ScalarValue::var(ring, "l")?,
        r2: ScalarValue::var(ring, "m")?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_scalar;
    use crate::ring::RingDescriptor;
    use crate::tensor::flip;

    fn mat_from_strs(ring: &Ring, rows: usize, cols: usize, strs: &[&str]) -> RingMatrix {
        let entries = strs.iter().map(|s| parse_scalar(s, ring).unwrap()).collect();
        RingMatrix::from_entries(ring, rows, cols, entries).unwrap()
    }

    #[test]
    fn two_dim_algebra_validates_symbolically() {
        let ring = RingDescriptor::poly(&["sigma"]).unwrap();
        let sigma = ScalarValue::var(&ring, "sigma").unwrap();
        let alg = two_dim_algebra(&sigma);
        assert!(validate_algebra(&alg).all_pass());
        // x * x = sigma * 1
        assert_eq!(alg.c(1, 1, 0), &sigma);
        assert!(alg.c(1, 1, 1).is_zero());
    }

    #[test]
    fn two_dim_algebra_specialisations() {
        let ring = RingDescriptor::rational();
        let alg0 = two_dim_algebra(&ScalarValue::zero(&ring));
        assert!(alg0.c(1, 1, 0).is_zero());
        let alg1 = two_dim_algebra(&ScalarValue::one(&ring));
        assert_eq!(alg1.c(1, 1, 0), &ScalarValue::one(&ring));
    }

    #[test]
    fn x3_algebra_validates() {
        let ring = RingDescriptor::rational();
        assert!(validate_algebra(&x3_algebra(&ring)).all_pass());
    }

    #[test]
    fn klein_algebra_validates() {
        let ring = RingDescriptor::rational();
        assert!(validate_algebra(&klein_algebra(&ring)).all_pass());
    }

    #[test]
    fn matrix_algebra_fails_commutativity() {
        let ring = RingDescriptor::rational();
        let report = validate_algebra(&matrix2_algebra(&ring));
        // e12 * e21 != e21 * e12
        assert!(report.commutative_failure.is_some());
    }

    #[test]
    fn build_operator_matches_eq10() {
        let ring = theorem21_ring();
        let sigma = ScalarValue::var(&ring, "sigma").unwrap();
        let lambda = ScalarValue::var(&ring, "lambda").unwrap();
        let one = ScalarValue::one(&ring);
        let alg = two_dim_algebra(&sigma);
        let a = build_operator(
            &alg,
            &CoefficientTriple::new(lambda, one.clone(), one).unwrap(),
        )
        .unwrap();
        let expect = mat_from_strs(
            &ring,
            4,
            4,
            &[
                "lambda", "0", "0", "sigma*(lambda+1)",
                "0", "lambda", "lambda-1", "0",
                "0", "0", "1", "0",
                "0", "0", "0", "-1",
            ],
        );
        assert_eq!(a, expect);
    }

    #[test]
    fn build_operator_matches_eq11() {
        let ring = theorem21_ring();
        let sigma = ScalarValue::var(&ring, "sigma").unwrap();
        let one = ScalarValue::one(&ring);
        let alg = two_dim_algebra(&sigma);
        let b = build_operator(
            &alg,
            &CoefficientTriple::new(one.clone(), one.clone(), one).unwrap(),
        )
        .unwrap();
        let expect = mat_from_strs(
            &ring,
            4,
            4,
            &[
                "1", "0", "0", "2*sigma",
                "0", "1", "0", "0",
                "0", "0", "1", "0",
                "0", "0", "0", "-1",
            ],
        );
        assert_eq!(b, expect);
    }

    #[test]
    fn pure_flip_triple() {
        let ring = RingDescriptor::rational();
        let alg = two_dim_algebra(&ScalarValue::one(&ring));
        let zero = ScalarValue::zero(&ring);
        let one = ScalarValue::one(&ring);
        let m = build_operator(
            &alg,
            &CoefficientTriple::new(zero.clone(), zero, one).unwrap(),
        )
        .unwrap();
        let neg_flip = flip(&ring, 2)
            .scale(&ScalarValue::from_int(&ring, -1))
            .unwrap();
        assert_eq!(m, neg_flip);
    }

    #[test]
    fn build_operator_rejects_noncommutative() {
        let ring = RingDescriptor::rational();
        let alg = matrix2_algebra(&ring);
        let one = ScalarValue::one(&ring);
        let err = build_operator(
            &alg,
            &CoefficientTriple::new(one.clone(), one.clone(), one).unwrap(),
        );
        assert!(matches!(err, Err(Error::InvalidAlgebra(_))));
    }

    #[test]
    fn theorem21_matches_eqs_10_to_12() {
        let ring = theorem21_ring();
        let sigma = ScalarValue::var(&ring, "sigma").unwrap();
        let lambda = ScalarValue::var(&ring, "lambda").unwrap();
        let lambda_p = ScalarValue::var(&ring, "lambda'").unwrap();
        let alg = two_dim_algebra(&sigma);
        let quad = theorem21_quadruple(&alg, &lambda, &lambda_p).unwrap();
        assert_eq!(quad.b, quad.c);
        let d_expect = mat_from_strs(
            &ring,
            4,
            4,
            &[
                "lambda'", "0", "0", "sigma*(lambda'+1)",
                "0", "lambda'", "lambda'-1", "0",
                "0", "0", "1", "0",
                "0", "0", "0", "-1",
            ],
        );
        assert_eq!(quad.d, d_expect);
    }

    #[test]
    fn theorem21_lambda_collapse() {
        let ring = theorem21_ring();
        let sigma = ScalarValue::var(&ring, "sigma").unwrap();
        let lambda = ScalarValue::var(&ring, "lambda").unwrap();
        let alg = two_dim_algebra(&sigma);
        let quad = theorem21_quadruple(&alg, &lambda, &lambda).unwrap();
        assert_eq!(quad.a, quad.d);
    }

    #[test]
    fn build_operator_linear_in_each_coefficient() {
        let ring = RingDescriptor::poly(&["sigma", "a1", "a2"]).unwrap();
        let sigma = ScalarValue::var(&ring, "sigma").unwrap();
        let alg = two_dim_algebra(&sigma);
        let a1 = ScalarValue::var(&ring, "a1").unwrap();
        let a2 = ScalarValue::var(&ring, "a2").unwrap();
        let zero = ScalarValue::zero(&ring);
        let one = ScalarValue::one(&ring);
        let m_sum = build_operator(
            &alg,
            &CoefficientTriple::new(a1.add(&a2), one.clone(), zero.clone()).unwrap(),
        )
        .unwrap();
        let m1 = build_operator(
            &alg,
            &CoefficientTriple::new(a1, one.clone(), zero.clone()).unwrap(),
        )
        .unwrap();
        let m2 = build_operator(
            &alg,
            &CoefficientTriple::new(a2, zero.clone(), zero).unwrap(),
        )
        .unwrap();
        assert_eq!(m_sum, m1.add(&m2).unwrap());
    }

    #[test]
    fn case1_d_collapses_to_a_when_params_match() {
        let ring = coloured_ring(&["sigma", "p", "q"]).unwrap();
        let p = ScalarValue::var(&ring, "p").unwrap();
        let q = ScalarValue::var(&ring, "q").unwrap();
        let params = ColouredParams {
            p: p.clone(),
            q: q.clone(),
            r1: p,
            r2: q,
        };
        let sigma = ScalarValue::var(&ring, "sigma").unwrap();
        let alg = two_dim_algebra(&sigma);
        let quad = theorem31_quadruple(&alg, 1, &params).unwrap();
        assert_eq!(quad.a, quad.d);
    }

    #[test]
    fn unknown_case_rejected() {
        let ring = theorem31_case1_ring();
        let params = case1_params(&ring).unwrap();
        assert!(matches!(
            theorem31_triples(&ring, 3, &params),
            Err(Error::UnknownCase(3))
        ));
    }
}
