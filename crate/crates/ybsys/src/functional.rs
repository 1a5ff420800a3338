//! The functional-equation system attached to the coloured three-term
//! ansatz: a corrected transcription of the printed equations, an
//! independent first-principles derivation, symbolic evaluation, and a
//! sampling audit of transcription versus derivation.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::parse::parse_scalar;
use crate::ring::{Payload, Ring, RingDescriptor, ScalarValue};

pub const FUNCTION_NAMES: [&str; 6] = ["alpha", "beta", "gamma", "eta", "zeta", "delta"];
pub const PAIR_NAMES: [&str; 3] = ["uv", "uw", "vw"];

/// The 18 scalar indeterminates f_xy, grouped by function then pair.
pub fn indeterminate_names() -> Vec<String> {
    let mut names = Vec::with_capacity(18);
    for f in FUNCTION_NAMES {
        for p in PAIR_NAMES {
            names.push(format!("{f}_{p}"));
        }
    }
    names
}

/// Polynomial ring on the 18 indeterminates.
pub fn system_ring() -> Ring {
    RingDescriptor::poly(&indeterminate_names()).unwrap()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SystemPart {
    Aaa,
    Acc,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SystemOrigin {
    Transcribed,
    DerivedAaa,
    DerivedAcc,
}

#[derive(Debug, Clone)]
pub struct FunctionalSystem {
    pub ring: Ring,
    pub equations: Vec<ScalarValue>,
    pub labels: Vec<String>,
    pub origin: SystemOrigin,
    /// Typographical repairs applied while transcribing, if any.
    pub repairs: Vec<String>,
}

const TRANSCRIBED_AAA: [&str; 5] = [
    // e1
    "(beta_vw - gamma_vw)*(alpha_uv*beta_uw - alpha_uw*beta_uv) \
     + (alpha_uv - gamma_uv)*(alpha_vw*beta_uw - alpha_uw*beta_vw)",
    // e2 (printed text drops the `= 0`; read as `= 0`)
    "beta_vw*(beta_uv - gamma_uv)*(alpha_uw - gamma_uw) \
     + (alpha_vw - gamma_vw)*(beta_uw*gamma_uv - beta_uv*gamma_uw)",
    // e3
    "alpha_uv*beta_vw*(alpha_uw - gamma_uw) + alpha_vw*gamma_uw*(gamma_uv - alpha_uv) \
     + gamma_vw*(alpha_uv*gamma_uw - alpha_uw*gamma_uv)",
    // e4
    "alpha_uv*beta_vw*(beta_uw - gamma_uw) + beta_vw*gamma_uw*(gamma_uv - beta_uv) \
     + gamma_vw*(beta_uv*gamma_uw - beta_uw*gamma_uv)",
    // e5
    "alpha_uv*(alpha_vw - gamma_vw)*(beta_uw - gamma_uw) \
     + (beta_uv - gamma_uv)*(alpha_uw*gamma_vw - alpha_vw*gamma_uw)",
];

const TRANSCRIBED_ACC: [&str; 5] = [
    // e6
    "(alpha_uv - gamma_uv)*(zeta_uw*eta_vw - eta_uw*zeta_vw) \
     + (alpha_uv*zeta_uw - beta_uv*eta_uw)*(zeta_vw - delta_vw)",
    // e7 (printed `delta(v,w)0` read as `delta(v,w)) = 0`)
    "(gamma_uv - beta_uv)*(eta_uw*delta_vw - delta_uw*eta_vw) \
     + alpha_uv*(delta_uw - zeta_uw)*(eta_vw - delta_vw)",
    // e8
    "gamma_uv*(zeta_uw*delta_vw - delta_uw*zeta_vw) + beta_uv*delta_uw*(zeta_vw - delta_vw) \
     + alpha_uv*(delta_uw - zeta_uw)*zeta_vw",
    // e9
    "(beta_uv - gamma_uv)*(eta_uw - delta_uw)*zeta_vw \
     + (beta_uv*delta_uw - gamma_uv*zeta_uw)*(delta_vw - eta_vw)",
    // e10
    "gamma_uv*(delta_uw*eta_vw - eta_uw*delta_vw) + alpha_uv*delta_uw*(delta_vw - eta_vw) \
     + alpha_uv*(eta_uw - delta_uw)*zeta_vw",
];

/// The printed equations of the requested half, typos minimally repaired.
pub fn transcribed_system(part: SystemPart) -> FunctionalSystem {
    let ring = system_ring();
    let (texts, labels, repairs): (&[&str], Vec<String>, Vec<String>) = match part {
        SystemPart::Aaa => (
            &TRANSCRIBED_AAA,
            (1..=5).map(|i| format!("e{i}")).collect(),
            vec!["e2: missing `=` before the trailing 0 restored".to_string()],
        ),
        SystemPart::Acc => (
            &TRANSCRIBED_ACC,
            (6..=10).map(|i| format!("e{i}")).collect(),
            vec!["e7: `delta(v,w)0` read as `delta(v,w)) = 0`".to_string()],
        ),
    };
    let equations = texts
        .iter()
        .map(|t| parse_scalar(t, &ring).unwrap())
        .collect();
    FunctionalSystem {
        ring,
        equations,
        labels,
        origin: SystemOrigin::Transcribed,
        repairs,
    }
}

// --- first-principles derivation -----------------------------------------

/// A leg of the tensor cube: a monomial in three independent commuting
/// indeterminates (the generic inputs of the commutator).
type Leg = [u8; 3];
type Basis3 = [Leg; 3];

fn leg_mul(a: Leg, b: Leg) -> Leg {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}

const LEG_UNIT: Leg = [0, 0, 0];

struct TensorState {
    ring: Ring,
    terms: BTreeMap<Basis3, ScalarValue>,
}

impl TensorState {
    fn start(ring: &Ring) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(
            [[1, 0, 0], [0, 1, 0], [0, 0, 1]],
            ScalarValue::one(ring),
        );
        TensorState {
            ring: ring.clone(),
            terms,
        }
    }

    fn add(&mut self, basis: Basis3, coef: ScalarValue) {
        if coef.is_zero() {
            return;
        }
        let entry = self
            .terms
            .entry(basis)
            .or_insert_with(|| ScalarValue::zero(&self.ring));
        *entry = entry.add(&coef);
        if entry.is_zero() {
            self.terms.remove(&basis);
        }
    }

    /// Applies x (x) y -> fa 1 (x) xy + fb xy (x) 1 - fg y (x) x on legs
    /// (l1, l2), identity elsewhere.
    fn apply(&self, l1: usize, l2: usize, fa: &ScalarValue, fb: &ScalarValue, fg: &ScalarValue) -> TensorState {
        let mut out = TensorState {
            ring: self.ring.clone(),
            terms: BTreeMap::new(),
        };
        for (basis, coef) in &self.terms {
            let x = basis[l1];
            let y = basis[l2];
            let xy = leg_mul(x, y);
            let mut b1 = *basis;
            b1[l1] = LEG_UNIT;
            b1[l2] = xy;
            out.add(b1, coef.mul(fa));
            let mut b2 = *basis;
            b2[l1] = xy;
            b2[l2] = LEG_UNIT;
            out.add(b2, coef.mul(fb));
            let mut b3 = *basis;
            b3[l1] = y;
            b3[l2] = x;
            out.add(b3, coef.neg().mul(fg));
        }
        out
    }

    fn sub(&self, other: &TensorState) -> TensorState {
        let mut out = TensorState {
            ring: self.ring.clone(),
            terms: self.terms.clone(),
        };
        for (basis, coef) in &other.terms {
            out.add(*basis, coef.neg());
        }
        out
    }
}

struct Triple {
    alpha: ScalarValue,
    beta: ScalarValue,
    gamma: ScalarValue,
}

fn indeterminate(ring: &Ring, f: &str, pair: &str) -> Triple {
    let g = |name: &str| ScalarValue::var(ring, &format!("{name}_{pair}")).unwrap();
    match f {
        "A" => Triple {
            alpha: g("alpha"),
            beta: g("beta"),
            gamma: g("gamma"),
        },
        _ => Triple {
            alpha: g("eta"),
            beta: g("zeta"),
            gamma: g("delta"),
        },
    }
}

/// Makes the polynomial monic in its graded-lex leading coefficient, for
/// duplicate detection up to scalar multiples.
fn normalize(p: &ScalarValue) -> ScalarValue {
    match &p.payload {
        Payload::Poly(m) if !m.is_empty() => {
            let lead = m.iter().next_back().unwrap().1.clone();
            let inv = ScalarValue::from_rat(&p.ring, lead.recip());
            p.mul(&inv)
        }
        _ => p.clone(),
    }
}

/// Expands the coloured commutator on a generic tensor a (x) b (x) c with
/// the three-term ansatz on each slot and collects the nonzero coefficient
/// polynomials of the independent tensor monomials, deduplicated up to
/// scalar multiples.
pub fn derive_system(part: SystemPart) -> FunctionalSystem {
    let ring = system_ring();
    // slot operators: legs (0,1) at pair uv, legs (0,2) at uw, legs (1,2) at vw
    let (f12, f13, f23) = match part {
        SystemPart::Aaa => ("A", "A", "A"),
        SystemPart::Acc => ("A", "C", "C"),
    };
    let t12 = indeterminate(&ring, f12, "uv");
    let t13 = indeterminate(&ring, f13, "uw");
    let t23 = indeterminate(&ring, f23, "vw");

    let start = TensorState::start(&ring);
    // R12 S13 T23 applied to a vector acts T23 first
    let lhs = start
        .apply(1, 2, &t23.alpha, &t23.beta, &t23.gamma)
        .apply(0, 2, &t13.alpha, &t13.beta, &t13.gamma)
        .apply(0, 1, &t12.alpha, &t12.beta, &t12.gamma);
    let rhs = start
        .apply(0, 1, &t12.alpha, &t12.beta, &t12.gamma)
        .apply(0, 2, &t13.alpha, &t13.beta, &t13.gamma)
        .apply(1, 2, &t23.alpha, &t23.beta, &t23.gamma);
    let residual = lhs.sub(&rhs);

    let mut equations: Vec<ScalarValue> = Vec::new();
    let mut labels = Vec::new();
    for (basis, coef) in &residual.terms {
        let norm = normalize(coef);
        if norm.is_zero() {
            continue;
        }
        if equations.iter().any(|e| *e == norm) {
            continue;
        }
        labels.push(format!(
            "coeff[{}]",
            basis
                .iter()
                .map(fmt_leg)
                .collect::<Vec<_>>()
                .join("(x)")
        ));
        equations.push(norm);
    }
    FunctionalSystem {
        ring,
        equations,
        labels,
        origin: match part {
            SystemPart::Aaa => SystemOrigin::DerivedAaa,
            SystemPart::Acc => SystemOrigin::DerivedAcc,
        },
        repairs: Vec::new(),
    }
}

fn fmt_leg(leg: &Leg) -> String {
    let names = ["a", "b", "c"];
    let mut s = String::new();
    for (i, e) in leg.iter().enumerate() {
        for _ in 0..*e {
            s.push_str(names[i]);
        }
    }
    if s.is_empty() {
        s.push('1');
    }
    s
}

// --- assignments and evaluation -------------------------------------------

/// Polynomials in the spectral pair (u, v) for each of the six function
/// names, over one parameter ring.
#[derive(Debug, Clone)]
pub struct FunctionAssignment {
    pub ring: Ring,
    pub polys: BTreeMap<String, ScalarValue>,
}

impl FunctionAssignment {
    pub fn new(ring: &Ring, polys: BTreeMap<String, ScalarValue>) -> Result<Self> {
        for f in FUNCTION_NAMES {
            let p = polys
                .get(f)
                .ok_or_else(|| Error::UnboundParameter(f.to_string()))?;
            if p.ring != *ring {
                return Err(Error::RingMismatch(format!("assignment for {f} in foreign ring")));
            }
        }
        Ok(FunctionAssignment {
            ring: ring.clone(),
            polys,
        })
    }

    pub fn from_exprs(ring: &Ring, exprs: &BTreeMap<String, String>) -> Result<Self> {
        let mut polys = BTreeMap::new();
        for f in FUNCTION_NAMES {
            let text = exprs
                .get(f)
                .ok_or_else(|| Error::UnboundParameter(f.to_string()))?;
            polys.insert(f.to_string(), parse_scalar(text, ring)?);
        }
        FunctionAssignment::new(ring, polys)
    }
}

/// Family 1: alpha = p(u-v), beta = q(u-v), gamma = pu - qv,
/// eta = pu - q'v, zeta = qu - p'v, delta = pu - p'v.
pub fn family1_assignment(ring: &Ring) -> Result<FunctionAssignment> {
    let mut polys = BTreeMap::new();
    for (f, e) in [
        ("alpha", "p*(u - v)"),
        ("beta", "q*(u - v)"),
        ("gamma", "p*u - q*v"),
        ("eta", "p*u - q'*v"),
        ("zeta", "q*u - p'*v"),
        ("delta", "p*u - p'*v"),
    ] {
        polys.insert(f.to_string(), parse_scalar(e, ring)?);
    }
    FunctionAssignment::new(ring, polys)
}

/// Family 2: the alpha/beta/gamma half of family 1 with
/// eta = p(l u - m v), zeta = q(l u - m v), delta = p l u - q m v.
pub fn family2_assignment(ring: &Ring) -> Result<FunctionAssignment> {
    let mut polys = BTreeMap::new();
    for (f, e) in [
        ("alpha", "p*(u - v)"),
        ("beta", "q*(u - v)"),
        ("gamma", "p*u - q*v"),
        ("eta", "p*(l*u - m*v)"),
        ("zeta", "q*(l*u - m*v)"),
        ("delta", "p*l*u - q*m*v"),
    ] {
        polys.insert(f.to_string(), parse_scalar(e, ring)?);
    }
    FunctionAssignment::new(ring, polys)
}

/// Substitutes each indeterminate f_xy by the assignment evaluated at the
/// corresponding spectral pair, over the (u, v, w)-extended parameter ring.
pub fn eval_system(
    sys: &FunctionalSystem,
    assignment: &FunctionAssignment,
) -> Result<Vec<ScalarValue>> {
    let target = crate::commutator::spectral_ring(&assignment.ring)?;
    let pairs: [(&str, &str, &str); 3] = [("uv", "u", "v"), ("uw", "u", "w"), ("vw", "v", "w")];
    let mut bindings = BTreeMap::new();
    for f in FUNCTION_NAMES {
        let poly = &assignment.polys[f];
        for (pair, first, second) in pairs {
            let mut spectral = BTreeMap::new();
            spectral.insert("u".to_string(), ScalarValue::var(&target, first)?);
            spectral.insert("v".to_string(), ScalarValue::var(&target, second)?);
            let value = poly.substitute(&spectral, &target)?;
            bindings.insert(format!("{f}_{pair}"), value);
        }
    }
    sys.equations
        .iter()
        .map(|eq| eq.substitute(&bindings, &target))
        .collect()
}

// --- sampling audit --------------------------------------------------------

#[derive(Debug, Clone)]
pub struct AuditDiscrepancy {
    pub point_index: usize,
    pub transcribed_zero: bool,
    pub derived_zero: bool,
    pub failing_labels: Vec<String>,
}

#[derive(Debug, Clone)]
pub struct AuditReport {
    pub part: SystemPart,
    pub modulus: u64,
    pub points: usize,
    pub discrepancies: Vec<AuditDiscrepancy>,
    /// Transcription repairs carried over; these explain known print defects.
    pub explained: Vec<String>,
}

impl AuditReport {
    pub fn unexplained_discrepancies(&self) -> usize {
        self.discrepancies.len()
    }
}

/// Compares the vanishing loci of the transcribed and derived systems at
/// `points` pseudorandom prime-field points.  A detector, not a proof; any
/// disagreement is reported.
pub fn audit_systems(part: SystemPart, points: usize, modulus: u64, seed: u64) -> Result<AuditReport> {
    let transcribed = transcribed_system(part);
    let derived = derive_system(part);
    let field = RingDescriptor::prime_field(modulus)?;
    let names = indeterminate_names();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut discrepancies = Vec::new();
    for idx in 0..points {
        let mut bindings = BTreeMap::new();
        for name in &names {
            let value = ScalarValue::from_int(&field, rng.gen_range(0..modulus) as i64);
            bindings.insert(name.clone(), value);
        }
        let t_zero_labels: Vec<String> = transcribed
            .equations
            .iter()
            .zip(&transcribed.labels)
            .filter(|(eq, _)| !eq.substitute(&bindings, &field).unwrap().is_zero())
            .map(|(_, l)| l.clone())
            .collect();
        let d_zero = derived
            .equations
            .iter()
            .all(|eq| eq.substitute(&bindings, &field).unwrap().is_zero());
        let t_zero = t_zero_labels.is_empty();
        if t_zero != d_zero {
            discrepancies.push(AuditDiscrepancy {
                point_index: idx,
                transcribed_zero: t_zero,
                derived_zero: d_zero,
                failing_labels: t_zero_labels,
            });
        }
    }
    Ok(AuditReport {
        part,
        modulus,
        points,
        discrepancies,
        explained: transcribed.repairs.clone(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{
        build_operator, theorem31_case1_ring, theorem31_case2_ring, two_dim_algebra,
        CoefficientTriple,
    };
    use crate::commutator::coloured_commutator;
    use crate::tensor::{ColouredOperator, LegShape};

    #[test]
    fn transcription_counts_and_labels() {
        let aaa = transcribed_system(SystemPart::Aaa);
        let acc = transcribed_system(SystemPart::Acc);
        assert_eq!(aaa.equations.len(), 5);
        assert_eq!(acc.equations.len(), 5);
        assert_eq!(aaa.labels, vec!["e1", "e2", "e3", "e4", "e5"]);
        assert_eq!(acc.labels, vec!["e6", "e7", "e8", "e9", "e10"]);
        assert_eq!(aaa.repairs.len(), 1);
        assert_eq!(acc.repairs.len(), 1);
    }

    #[test]
    fn all_equations_pair_multilinear() {
        for part in [SystemPart::Aaa, SystemPart::Acc] {
            for eq in &transcribed_system(part).equations {
                assert!(is_pair_multilinear(eq), "transcribed: {eq}");
            }
            for eq in &derive_system(part).equations {
                assert!(is_pair_multilinear(eq), "derived: {eq}");
            }
        }
    }

    fn assert_annihilates(sys: &FunctionalSystem, assignment: &FunctionAssignment) {
        for (r, label) in eval_system(sys, assignment).unwrap().iter().zip(&sys.labels) {
            assert!(r.is_zero(), "{label} residual {r}");
        }
    }

    #[test]
    fn family1_solves_both_parts() {
        let ring = theorem31_case1_ring();
        let a = family1_assignment(&ring).unwrap();
        for part in [SystemPart::Aaa, SystemPart::Acc] {
            assert_annihilates(&transcribed_system(part), &a);
            assert_annihilates(&derive_system(part), &a);
        }
    }

    #[test]
    fn family2_solves_both_parts() {
        let ring = theorem31_case2_ring();
        let a = family2_assignment(&ring).unwrap();
        for part in [SystemPart::Aaa, SystemPart::Acc] {
            assert_annihilates(&transcribed_system(part), &a);
            assert_annihilates(&derive_system(part), &a);
        }
    }

    #[test]
    fn zero_assignment_annihilates() {
        let ring = crate::tensor::coloured_ring::<&str>(&[]).unwrap();
        let polys: BTreeMap<String, ScalarValue> = FUNCTION_NAMES
            .iter()
            .map(|f| (f.to_string(), ScalarValue::zero(&ring)))
            .collect();
        let a = FunctionAssignment::new(&ring, polys).unwrap();
        for part in [SystemPart::Aaa, SystemPart::Acc] {
            assert_annihilates(&derive_system(part), &a);
        }
    }

    /// An arbitrary non-solution must leave a nonzero residual, and the
    /// matrix-level coloured commutator on the two-dimensional algebra must
    /// detect the same failure.
    #[test]
    fn non_solution_detected_functionally_and_matrixwise() {
        let ring = crate::tensor::coloured_ring(&["sigma"]).unwrap();
        let u = ScalarValue::var(&ring, "u").unwrap();
        let v = ScalarValue::var(&ring, "v").unwrap();
        let mut polys = BTreeMap::new();
        for f in FUNCTION_NAMES {
            polys.insert(f.to_string(), u.clone());
        }
        polys.insert("gamma".to_string(), v.clone());
        polys.insert("delta".to_string(), v.clone());
        let a = FunctionAssignment::new(&ring, polys).unwrap();
        let residuals = eval_system(&derive_system(SystemPart::Aaa), &a).unwrap();
        assert!(residuals.iter().any(|r| !r.is_zero()));

        let alg = two_dim_algebra(&ScalarValue::var(&ring, "sigma").unwrap());
        let triple = CoefficientTriple::new(u.clone(), u.clone(), v.clone()).unwrap();
        let op = ColouredOperator::new(build_operator(&alg, &triple).unwrap()).unwrap();
        let comm = coloured_commutator(&op, &op, &op, LegShape::cube(2)).unwrap();
        assert!(!comm.is_zero());
    }

    /// Conversely a functional solution yields a vanishing matrix commutator.
    #[test]
    fn family1_matrix_commutator_vanishes() {
        let ring = theorem31_case1_ring();
        let a = family1_assignment(&ring).unwrap();
        let alg = two_dim_algebra(&ScalarValue::var(&ring, "sigma").unwrap());
        let triple = CoefficientTriple::new(
            a.polys["alpha"].clone(),
            a.polys["beta"].clone(),
            a.polys["gamma"].clone(),
        )
        .unwrap();
        let op = ColouredOperator::new(build_operator(&alg, &triple).unwrap()).unwrap();
        let comm = coloured_commutator(&op, &op, &op, LegShape::cube(2)).unwrap();
        assert!(comm.is_zero());
    }

    #[test]
    fn audit_finds_no_discrepancies() {
        for part in [SystemPart::Aaa, SystemPart::Acc] {
            let report = audit_systems(part, 50, 10_007, 7).unwrap();
            assert_eq!(report.unexplained_discrepancies(), 0);
            assert_eq!(report.explained.len(), 1);
        }
    }

    #[test]
    fn audit_is_deterministic() {
        let r1 = audit_systems(SystemPart::Aaa, 10, 10_007, 3).unwrap();
        let r2 = audit_systems(SystemPart::Aaa, 10, 10_007, 3).unwrap();
        assert_eq!(r1.discrepancies.len(), r2.discrepancies.len());
    }
}

/// Structural check: homogeneous of total degree 3 with exactly one
/// indeterminate from each argument pair per monomial.
pub fn is_pair_multilinear(eq: &ScalarValue) -> bool {
    let ring = &eq.ring;
    let pair_of = |idx: usize| -> usize {
        let name = &ring.vars[idx];
        PAIR_NAMES
            .iter()
            .position(|p| name.ends_with(&format!("_{p}")))
            .unwrap()
    };
    match &eq.payload {
        Payload::Poly(m) => m.keys().all(|mono| {
            let mut per_pair = [0u32; 3];
            let mut total = 0u32;
            for (i, e) in mono.0.iter().enumerate() {
                if *e > 0 {
                    per_pair[pair_of(i)] += e;
                    total += e;
                }
            }
            total == 3 && per_pair == [1, 1, 1]
        }),
        _ => false,
    }
}
