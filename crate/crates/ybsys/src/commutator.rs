//! Constant and coloured Yang-Baxter commutators and the WXZ, reflection
//! and coloured system checkers.

use std::collections::BTreeMap;

use crate::algebra::{ColouredQuadruple, ConstantQuadruple};
use crate::error::{Error, Result};
use crate::ring::{Ring, RingDescriptor, ScalarValue};
use crate::tensor::{
    embed12, embed13, embed23, plus_conj, plusplus_conj, ColouredOperator, LegShape, RingMatrix,
};

/// Labelled residual matrices of a system check.
#[derive(Debug, Clone)]
pub struct SystemReport {
    pub labels: Vec<String>,
    pub residuals: Vec<RingMatrix>,
    pub all_zero: bool,
}

impl SystemReport {
    fn new(labels: Vec<String>, residuals: Vec<RingMatrix>) -> Self {
        let all_zero = residuals.iter().all(|r| r.is_zero());
        SystemReport {
            labels,
            residuals,
            all_zero,
        }
    }

    /// (label, row, col) of the first nonzero residual entry, if any.
    pub fn first_failure(&self) -> Option<(String, usize, usize)> {
        for (label, res) in self.labels.iter().zip(&self.residuals) {
            if let Some((i, j)) = res.first_nonzero() {
                return Some((label.clone(), i, j));
            }
        }
        None
    }
}

/// [R,S,T] = R12 S13 T23 - T23 S13 R12.
pub fn yb_commutator(
    r: &RingMatrix,
    s: &RingMatrix,
    t: &RingMatrix,
    shape: LegShape,
) -> Result<RingMatrix> {
    if r.ring != s.ring || s.ring != t.ring {
        return Err(Error::RingMismatch("commutator rings differ".into()));
    }
    let r12 = embed12(r, shape)?;
    let s13 = embed13(s, shape)?;
    let t23 = embed23(t, shape)?;
    let lhs = r12.mul(&s13)?.mul(&t23)?;
    let rhs = t23.mul(&s13)?.mul(&r12)?;
    lhs.sub(&rhs)
}

/// Ring of the coloured residuals: the operator ring with the spectral pair
/// (u, v) replaced by the three colours u, v, w.
pub fn spectral_ring(operator_ring: &Ring) -> Result<Ring> {
    let vars: Vec<String> = operator_ring
        .vars
        .iter()
        .filter(|v| v.as_str() != "u" && v.as_str() != "v")
        .cloned()
        .collect();
    let mut vars = vars;
    vars.extend(["u".to_string(), "v".to_string(), "w".to_string()]);
    RingDescriptor::poly(&vars)
}

fn bind_pair(
    x: &ColouredOperator,
    first: &str,
    second: &str,
    target: &Ring,
) -> Result<RingMatrix> {
    let mut bindings = BTreeMap::new();
    bindings.insert("u".to_string(), ScalarValue::var(target, first)?);
    bindings.insert("v".to_string(), ScalarValue::var(target, second)?);
    x.matrix.substitute(&bindings, target)
}

/// [[R,S,T]] = R12(u,v) S13(u,w) T23(v,w) - T23(v,w) S13(u,w) R12(u,v),
/// over the operator ring extended by the third colour w.
pub fn coloured_commutator(
    r: &ColouredOperator,
    s: &ColouredOperator,
    t: &ColouredOperator,
    shape: LegShape,
) -> Result<RingMatrix> {
    if r.ring() != s.ring() || s.ring() != t.ring() {
        return Err(Error::RingMismatch("coloured commutator rings differ".into()));
    }
    let target = spectral_ring(r.ring())?;
    let r_uv = bind_pair(r, "u", "v", &target)?;
    let s_uw = bind_pair(s, "u", "w", &target)?;
    let t_vw = bind_pair(t, "v", "w", &target)?;
    let r12 = embed12(&r_uv, shape)?;
    let s13 = embed13(&s_uw, shape)?;
    let t23 = embed23(&t_vw, shape)?;
    let lhs = r12.mul(&s13)?.mul(&t23)?;
    let rhs = t23.mul(&s13)?.mul(&r12)?;
    lhs.sub(&rhs)
}

fn square_side(m: &RingMatrix, what: &str) -> Result<usize> {
    if m.rows != m.cols {
        return Err(Error::DimMismatch(format!("{what} is not square")));
    }
    let n = (m.rows as f64).sqrt().round() as usize;
    if n * n != m.rows {
        return Err(Error::DimMismatch(format!("{what} is not n^2 x n^2")));
    }
    Ok(n)
}

/// The four conditions [W,W,W], [Z,Z,Z], [W,X,X], [X,X,Z] of a WXZ system.
pub fn wxz_residuals(w: &RingMatrix, x: &RingMatrix, z: &RingMatrix) -> Result<SystemReport> {
    let n = square_side(w, "W")?;
    let np = square_side(z, "Z")?;
    if x.rows != n * np || x.cols != n * np {
        return Err(Error::DimMismatch("X must act on V (x) V'".into()));
    }
    let labels = vec![
        "[W,W,W]".to_string(),
        "[Z,Z,Z]".to_string(),
        "[W,X,X]".to_string(),
        "[X,X,Z]".to_string(),
    ];
    let residuals = vec![
        yb_commutator(w, w, w, LegShape::cube(n))?,
        yb_commutator(z, z, z, LegShape::cube(np))?,
        yb_commutator(w, x, x, LegShape { n1: n, n2: n, n3: np })?,
        yb_commutator(x, x, z, LegShape { n1: n, n2: np, n3: np })?,
    ];
    Ok(SystemReport::new(labels, residuals))
}

pub const REFLECTION_LABELS: [&str; 8] = [
    "[A,A,A]",
    "[D,D,D]",
    "[A,C,C]",
    "[D,B,B]",
    "[A,B+,B+]",
    "[D,C+,C+]",
    "[A,C,B+]",
    "[D,B,C+]",
];

/// The eight consistency conditions of the reflection-type exchange relation.
pub fn reflection_residuals(quad: &ConstantQuadruple) -> Result<SystemReport> {
    let (a, b, c, d) = (&quad.a, &quad.b, &quad.c, &quad.d);
    let n = square_side(a, "A")?;
    for (m, what) in [(b, "B"), (c, "C"), (d, "D")] {
        if square_side(m, what)? != n {
            return Err(Error::DimMismatch(format!("{what} dimension differs from A")));
        }
    }
    let shape = LegShape::cube(n);
    let b_plus = plus_conj(b, n)?;
    let c_plus = plus_conj(c, n)?;
    let residuals = vec![
        yb_commutator(a, a, a, shape)?,
        yb_commutator(d, d, d, shape)?,
        yb_commutator(a, c, c, shape)?,
        yb_commutator(d, b, b, shape)?,
        yb_commutator(a, &b_plus, &b_plus, shape)?,
        yb_commutator(d, &c_plus, &c_plus, shape)?,
        yb_commutator(a, c, &b_plus, shape)?,
        yb_commutator(d, b, &c_plus, shape)?,
    ];
    Ok(SystemReport::new(
        REFLECTION_LABELS.iter().map(|s| s.to_string()).collect(),
        residuals,
    ))
}

pub const COLOURED_LABELS: [&str; 8] = [
    "[[A,A,A]]",
    "[[D,D,D]]",
    "[[A,C,C]]",
    "[[D,B,B]]",
    "[[A,B++,B++]]",
    "[[D,C++,C++]]",
    "[[A,C,B++]]",
    "[[D,B,C++]]",
];

/// The eight conditions of the coloured Yang-Baxter system.
pub fn coloured_system_residuals(quad: &ColouredQuadruple) -> Result<SystemReport> {
    let (a, b, c, d) = (&quad.a, &quad.b, &quad.c, &quad.d);
    let n = square_side(&a.matrix, "A")?;
    let shape = LegShape::cube(n);
    let b_pp = plusplus_conj(b)?;
    let c_pp = plusplus_conj(c)?;
    let residuals = vec![
        coloured_commutator(a, a, a, shape)?,
        coloured_commutator(d, d, d, shape)?,
        coloured_commutator(a, c, c, shape)?,
        coloured_commutator(d, b, b, shape)?,
        coloured_commutator(a, &b_pp, &b_pp, shape)?,
        coloured_commutator(d, &c_pp, &c_pp, shape)?,
        coloured_commutator(a, c, &b_pp, shape)?,
        coloured_commutator(d, b, &c_pp, shape)?,
    ];
    Ok(SystemReport::new(
        COLOURED_LABELS.iter().map(|s| s.to_string()).collect(),
        residuals,
    ))
}
