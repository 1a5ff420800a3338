//! Exact coefficient arithmetic: rationals, multivariate polynomials over the
//! rationals, and prime fields, with canonical forms throughout.
//!
//! Polynomials are stored as sorted monomial maps in graded lexicographic
//! order with respect to the declared variable order, so equality of values
//! is equality of payloads.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RingKind {
    Rational,
    PolyRational,
    PrimeField,
}

/// Shared, immutable description of a coefficient ring.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RingDescriptor {
    pub kind: RingKind,
    /// Declared variable order (poly_rational only).
    pub vars: Vec<String>,
    /// Field characteristic (prime_field only, 0 otherwise).
    pub modulus: u64,
}

pub type Ring = Arc<RingDescriptor>;

fn valid_var_name(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'')
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

impl RingDescriptor {
    pub fn rational() -> Ring {
        Arc::new(RingDescriptor {
            kind: RingKind::Rational,
            vars: Vec::new(),
            modulus: 0,
        })
    }

    pub fn poly<S: AsRef<str>>(vars: &[S]) -> Result<Ring> {
        let mut seen = std::collections::BTreeSet::new();
        let vars: Vec<String> = vars.iter().map(|s| s.as_ref().to_string()).collect();
        for v in &vars {
            if !valid_var_name(v) {
                return Err(Error::InvalidDescriptor(format!("bad variable name `{v}`")));
            }
            if !seen.insert(v.clone()) {
                return Err(Error::InvalidDescriptor(format!("duplicate variable `{v}`")));
            }
        }
        Ok(Arc::new(RingDescriptor {
            kind: RingKind::PolyRational,
            vars,
            modulus: 0,
        }))
    }

    pub fn prime_field(p: u64) -> Result<Ring> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if p >= 1 << 31 {
            return Err(Error::InvalidDescriptor("modulus too large".into()));
        }
        Ok(Arc::new(RingDescriptor {
            kind: RingKind::PrimeField,
            vars: Vec::new(),
            modulus: p,
        }))
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    /// New poly ring with `extra` appended to this ring's variable list.
    pub fn extend<S: AsRef<str>>(ring: &Ring, extra: &[S]) -> Result<Ring> {
        let mut vars: Vec<String> = ring.vars.clone();
        vars.extend(extra.iter().map(|s| s.as_ref().to_string()));
        RingDescriptor::poly(&vars)
    }
}

/// Exponent vector in the declared variable order; ordered graded-lex.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| {
                // lex on exponents: higher exponent on an earlier variable is larger
                for (a, b) in self.0.iter().zip(&other.0) {
                    match a.cmp(b) {
                        Ordering::Equal => continue,
                        ord => return ord,
                    }
                }
                Ordering::Equal
            })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Payload {
    Rat(BigRational),
    Poly(BTreeMap<Monomial, BigRational>),
    Fp(u64),
}

/// An element of a coefficient ring in canonical form.  Two values over the
/// same ring are equal iff their payloads are identical.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ScalarValue {
    pub ring: Ring,
    pub payload: Payload,
}

fn fp_inv(a: u64, p: u64) -> u64 {
    // Fermat: a^(p-2) mod p
    let mut base = a as u128;
    let mut exp = p - 2;
    let m = p as u128;
    let mut acc: u128 = 1;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        exp >>= 1;
    }
    acc as u64
}

fn rat_to_fp(r: &BigRational, p: u64) -> u64 {
    let pm = BigInt::from(p);
    let num = ((r.numer() % &pm) + &pm) % &pm;
    let den = ((r.denom() % &pm) + &pm) % &pm;
    let num: u64 = num.try_into().unwrap();
    let den: u64 = den.try_into().unwrap();
    assert!(den != 0, "denominator divisible by modulus");
    (num as u128 * fp_inv(den, p) as u128 % p as u128) as u64
}

impl ScalarValue {
    pub fn zero(ring: &Ring) -> Self {
        let payload = match ring.kind {
            RingKind::Rational => Payload::Rat(BigRational::zero()),
            RingKind::PolyRational => Payload::Poly(BTreeMap::new()),
            RingKind::PrimeField => Payload::Fp(0),
        };
        ScalarValue {
            ring: ring.clone(),
            payload,
        }
    }

    pub fn one(ring: &Ring) -> Self {
        Self::from_int(ring, 1)
    }

    pub fn from_int(ring: &Ring, n: i64) -> Self {
        Self::from_bigint(ring, BigInt::from(n))
    }

    pub fn from_bigint(ring: &Ring, n: BigInt) -> Self {
        Self::from_rat(ring, BigRational::from_integer(n))
    }

    pub fn from_rat(ring: &Ring, r: BigRational) -> Self {
        let payload = match ring.kind {
            RingKind::Rational => Payload::Rat(r),
            RingKind::PolyRational => {
                let mut m = BTreeMap::new();
                if !r.is_zero() {
                    m.insert(Monomial::one(ring.vars.len()), r);
                }
                Payload::Poly(m)
            }
            RingKind::PrimeField => Payload::Fp(rat_to_fp(&r, ring.modulus)),
        };
        ScalarValue {
            ring: ring.clone(),
            payload,
        }
    }

    pub fn rational(ring: &Ring, num: i64, den: i64) -> Self {
        Self::from_rat(
            ring,
            BigRational::new(BigInt::from(num), BigInt::from(den)),
        )
    }

    pub fn var(ring: &Ring, name: &str) -> Result<Self> {
        match ring.kind {
            RingKind::PolyRational => {
                let idx = ring
                    .var_index(name)
                    .ok_or_else(|| Error::UndeclaredVariable(name.to_string()))?;
                let mut exps = vec![0u32; ring.vars.len()];
                exps[idx] = 1;
                let mut m = BTreeMap::new();
                m.insert(Monomial(exps), BigRational::one());
                Ok(ScalarValue {
                    ring: ring.clone(),
                    payload: Payload::Poly(m),
                })
            }
            _ => Err(Error::UndeclaredVariable(name.to_string())),
        }
    }

    pub fn is_zero(&self) -> bool {
        match &self.payload {
            Payload::Rat(r) => r.is_zero(),
            Payload::Poly(m) => m.is_empty(),
            Payload::Fp(x) => *x == 0,
        }
    }

    pub fn same_ring(&self, other: &ScalarValue) -> bool {
        self.ring == other.ring
    }

    fn check(&self, other: &ScalarValue) {
        assert!(
            self.same_ring(other),
            "ring mismatch in scalar arithmetic"
        );
    }

    pub fn add(&self, other: &ScalarValue) -> ScalarValue {
        self.check(other);
        let payload = match (&self.payload, &other.payload) {
            (Payload::Rat(a), Payload::Rat(b)) => Payload::Rat(a + b),
            (Payload::Fp(a), Payload::Fp(b)) => Payload::Fp((a + b) % self.ring.modulus),
            (Payload::Poly(a), Payload::Poly(b)) => {
                let mut out = a.clone();
                for (mono, coef) in b {
                    let entry = out.entry(mono.clone()).or_insert_with(BigRational::zero);
                    *entry += coef;
                    if entry.is_zero() {
                        out.remove(mono);
                    }
                }
                Payload::Poly(out)
            }
            _ => unreachable!(),
        };
        ScalarValue {
            ring: self.ring.clone(),
            payload,
        }
    }

    pub fn neg(&self) -> ScalarValue {
        let payload = match &self.payload {
            Payload::Rat(a) => Payload::Rat(-a),
            Payload::Fp(a) => Payload::Fp(if *a == 0 { 0 } else { self.ring.modulus - a }),
            Payload::Poly(a) => {
                Payload::Poly(a.iter().map(|(m, c)| (m.clone(), -c)).collect())
            }
        };
        ScalarValue {
            ring: self.ring.clone(),
            payload,
        }
    }

    pub fn sub(&self, other: &ScalarValue) -> ScalarValue {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &ScalarValue) -> ScalarValue {
        self.check(other);
        let payload = match (&self.payload, &other.payload) {
            (Payload::Rat(a), Payload::Rat(b)) => Payload::Rat(a * b),
            (Payload::Fp(a), Payload::Fp(b)) => {
                Payload::Fp((*a as u128 * *b as u128 % self.ring.modulus as u128) as u64)
            }
            (Payload::Poly(a), Payload::Poly(b)) => {
                let mut out: BTreeMap<Monomial, BigRational> = BTreeMap::new();
                for (ma, ca) in a {
                    for (mb, cb) in b {
                        let m = ma.mul(mb);
                        let entry = out.entry(m.clone()).or_insert_with(BigRational::zero);
                        *entry += ca * cb;
                        if entry.is_zero() {
                            out.remove(&m);
                        }
                    }
                }
                Payload::Poly(out)
            }
            _ => unreachable!(),
        };
        ScalarValue {
            ring: self.ring.clone(),
            payload,
        }
    }

    pub fn pow(&self, exp: u32) -> ScalarValue {
        let mut acc = ScalarValue::one(&self.ring);
        for _ in 0..exp {
            acc = acc.mul(self);
        }
        acc
    }

    /// Multiplicative inverse; defined for nonzero rationals, nonzero prime
    /// field elements and nonzero constant polynomials.
    /// Quotient self / divisor when the division is exact in the ring;
    /// errors otherwise.  Polynomial case: long division on graded-lex
    /// leading terms.
    pub fn div_exact(&self, divisor: &ScalarValue) -> Result<ScalarValue> {
        self.check(divisor);
        if divisor.is_zero() {
            return Err(Error::BadDivision);
        }
        match (&self.payload, &divisor.payload) {
            (Payload::Poly(a), Payload::Poly(b)) => {
                let (lead_m, lead_c) = b.iter().next_back().unwrap();
                let mut rem = a.clone();
                let mut quo: BTreeMap<Monomial, BigRational> = BTreeMap::new();
                while let Some((rm, rc)) = rem.iter().next_back().map(|(m, c)| (m.clone(), c.clone())) {
                    let exps: Option<Vec<u32>> = rm
                        .0
                        .iter()
                        .zip(&lead_m.0)
                        .map(|(x, y)| x.checked_sub(*y))
                        .collect();
                    let Some(exps) = exps else {
                        return Err(Error::BadDivision);
                    };
                    let qm = Monomial(exps);
                    let qc = &rc / lead_c;
                    for (bm, bc) in b {
                        let m = qm.mul(bm);
                        let entry = rem.entry(m.clone()).or_insert_with(BigRational::zero);
                        *entry -= &qc * bc;
                        if entry.is_zero() {
                            rem.remove(&m);
                        }
                    }
                    quo.insert(qm, qc);
                }
                Ok(ScalarValue {
                    ring: self.ring.clone(),
                    payload: Payload::Poly(quo),
                })
            }
            _ => Ok(self.mul(&divisor.inverse()?)),
        }
    }

    pub fn inverse(&self) -> Result<ScalarValue> {
        if self.is_zero() {
            return Err(Error::BadDivision);
        }
        let payload = match &self.payload {
            Payload::Rat(a) => Payload::Rat(a.recip()),
            Payload::Fp(a) => Payload::Fp(fp_inv(*a, self.ring.modulus)),
            Payload::Poly(m) => {
                if m.len() == 1 {
                    let (mono, coef) = m.iter().next().unwrap();
                    if mono.degree() == 0 {
                        let mut out = BTreeMap::new();
                        out.insert(mono.clone(), coef.recip());
                        Payload::Poly(out)
                    } else {
                        return Err(Error::BadDivision);
                    }
                } else {
                    return Err(Error::BadDivision);
                }
            }
        };
        Ok(ScalarValue {
            ring: self.ring.clone(),
            payload,
        })
    }

    /// As a rational constant, if this value is constant.
    pub fn as_rational(&self) -> Option<BigRational> {
        match &self.payload {
            Payload::Rat(r) => Some(r.clone()),
            Payload::Fp(x) => Some(BigRational::from_integer(BigInt::from(*x))),
            Payload::Poly(m) => {
                if m.is_empty() {
                    Some(BigRational::zero())
                } else if m.len() == 1 {
                    let (mono, coef) = m.iter().next().unwrap();
                    (mono.degree() == 0).then(|| coef.clone())
                } else {
                    None
                }
            }
        }
    }

    /// Indices of variables occurring in this value.
    pub fn support(&self) -> Vec<usize> {
        match &self.payload {
            Payload::Poly(m) => {
                let n = self.ring.vars.len();
                let mut used = vec![false; n];
                for mono in m.keys() {
                    for (i, e) in mono.0.iter().enumerate() {
                        if *e > 0 {
                            used[i] = true;
                        }
                    }
                }
                (0..n).filter(|i| used[*i]).collect()
            }
            _ => Vec::new(),
        }
    }

    /// Simultaneously substitutes bound variables and maps the result into
    /// `target`.  Unbound variables must be declared in `target`; bound
    /// values must live in `target`.  Ring homomorphism.
    pub fn substitute(
        &self,
        bindings: &BTreeMap<String, ScalarValue>,
        target: &Ring,
    ) -> Result<ScalarValue> {
        for v in bindings.values() {
            if v.ring != *target {
                return Err(Error::RingMismatch(
                    "binding value not in target ring".into(),
                ));
            }
        }
        match &self.payload {
            Payload::Rat(r) => Ok(ScalarValue::from_rat(target, r.clone())),
            Payload::Fp(_) => Err(Error::RingMismatch(
                "cannot substitute in a prime-field scalar".into(),
            )),
            Payload::Poly(m) => {
                // per-variable image in the target ring
                let mut images: Vec<Option<ScalarValue>> = Vec::new();
                for name in &self.ring.vars {
                    if let Some(v) = bindings.get(name) {
                        images.push(Some(v.clone()));
                    } else if target.kind == RingKind::PolyRational
                        && target.var_index(name).is_some()
                    {
                        images.push(Some(ScalarValue::var(target, name)?));
                    } else {
                        images.push(None);
                    }
                }
                let mut acc = ScalarValue::zero(target);
                for (mono, coef) in m {
                    let mut term = ScalarValue::from_rat(target, coef.clone());
                    for (i, e) in mono.0.iter().enumerate() {
                        if *e == 0 {
                            continue;
                        }
                        let img = images[i].as_ref().ok_or_else(|| {
                            Error::UndeclaredVariable(self.ring.vars[i].clone())
                        })?;
                        term = term.mul(&img.pow(*e));
                    }
                    acc = acc.add(&term);
                }
                Ok(acc)
            }
        }
    }

    /// Maps this value into `target` without binding any variable.
    pub fn into_ring(&self, target: &Ring) -> Result<ScalarValue> {
        if &self.ring == target {
            return Ok(self.clone());
        }
        match &self.payload {
            Payload::Rat(r) => Ok(ScalarValue::from_rat(target, r.clone())),
            _ => self.substitute(&BTreeMap::new(), target),
        }
    }
}

fn fmt_rat(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for ScalarValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.payload {
            Payload::Rat(r) => write!(f, "{}", fmt_rat(r)),
            Payload::Fp(x) => write!(f, "{x}"),
            Payload::Poly(m) => {
                if m.is_empty() {
                    return write!(f, "0");
                }
                let mut first = true;
                // graded-lex descending
                for (mono, coef) in m.iter().rev() {
                    let neg = coef.is_negative();
                    let abs = coef.abs();
                    let mut factors: Vec<String> = Vec::new();
                    if !abs.is_one() || mono.degree() == 0 {
                        factors.push(fmt_rat(&abs));
                    }
                    for (i, e) in mono.0.iter().enumerate() {
                        match e {
                            0 => {}
                            1 => factors.push(self.ring.vars[i].clone()),
                            _ => factors.push(format!("{}^{}", self.ring.vars[i], e)),
                        }
                    }
                    let term = factors.join("*");
                    if first {
                        if neg {
                            write!(f, "-{term}")?;
                        } else {
                            write!(f, "{term}")?;
                        }
                        first = false;
                    } else if neg {
                        write!(f, " - {term}")?;
                    } else {
                        write!(f, " + {term}")?;
                    }
                }
                Ok(())
            }
        }
    }
}

pub fn scalar_eq(a: &ScalarValue, b: &ScalarValue) -> Result<bool> {
    if !a.same_ring(b) {
        return Err(Error::RingMismatch("scalar_eq across rings".into()));
    }
    Ok(a.payload == b.payload)
}
