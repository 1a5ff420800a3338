//! Ring-generic dense matrices, Kronecker products, tensor-leg embeddings,
//! the flip matrix and the `+` / `++` conjugations.
//!
//! Convention: entry (i, j) is the coefficient of output basis vector i in
//! the image of input basis vector j (column action).  Composite indices are
//! lexicographic with the first tensor factor most significant.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::ring::{Ring, RingDescriptor, ScalarValue};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingMatrix {
    pub ring: Ring,
    pub rows: usize,
    pub cols: usize,
    entries: Vec<ScalarValue>,
}

/// Dimensions of the three tensor legs V, V', V''.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LegShape {
    pub n1: usize,
    pub n2: usize,
    pub n3: usize,
}

impl LegShape {
    pub fn cube(n: usize) -> Self {
        LegShape { n1: n, n2: n, n3: n }
    }
}

impl RingMatrix {
    pub fn zero(ring: &Ring, rows: usize, cols: usize) -> Self {
        RingMatrix {
            ring: ring.clone(),
            rows,
            cols,
            entries: vec![ScalarValue::zero(ring); rows * cols],
        }
    }

    pub fn identity(ring: &Ring, n: usize) -> Self {
        let mut m = Self::zero(ring, n, n);
        for i in 0..n {
            *m.at_mut(i, i) = ScalarValue::one(ring);
        }
        m
    }

    pub fn from_entries(ring: &Ring, rows: usize, cols: usize, entries: Vec<ScalarValue>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimMismatch(format!(
                "{}x{} matrix needs {} entries, got {}",
                rows,
                cols,
                rows * cols,
                entries.len()
            )));
        }
        for e in &entries {
            if e.ring != *ring {
                return Err(Error::RingMismatch("matrix entry in foreign ring".into()));
            }
        }
        Ok(RingMatrix {
            ring: ring.clone(),
            rows,
            cols,
            entries,
        })
    }

    pub fn at(&self, i: usize, j: usize) -> &ScalarValue {
        &self.entries[i * self.cols + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut ScalarValue {
        &mut self.entries[i * self.cols + j]
    }

    pub fn entries(&self) -> &[ScalarValue] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    /// Row/column of the first nonzero entry, if any.
    pub fn first_nonzero(&self) -> Option<(usize, usize)> {
        self.entries
            .iter()
            .position(|e| !e.is_zero())
            .map(|k| (k / self.cols, k % self.cols))
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    if i == j {
                        *self.at(i, j) == ScalarValue::one(&self.ring)
                    } else {
                        self.at(i, j).is_zero()
                    }
                })
            })
    }

    fn check_ring(&self, other: &RingMatrix) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch("matrix rings differ".into()));
        }
        Ok(())
    }

    pub fn add(&self, other: &RingMatrix) -> Result<RingMatrix> {
        self.check_ring(other)?;
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimMismatch("add: shapes differ".into()));
        }
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.add(b))
            .collect();
        Ok(RingMatrix {
            ring: self.ring.clone(),
            rows: self.rows,
            cols: self.cols,
            entries,
        })
    }

    pub fn sub(&self, other: &RingMatrix) -> Result<RingMatrix> {
        self.add(&other.scale(&ScalarValue::from_int(&self.ring, -1))?)
    }

    pub fn scale(&self, c: &ScalarValue) -> Result<RingMatrix> {
        if c.ring != self.ring {
            return Err(Error::RingMismatch("scale: scalar in foreign ring".into()));
        }
        Ok(RingMatrix {
            ring: self.ring.clone(),
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|e| e.mul(c)).collect(),
        })
    }

    pub fn mul(&self, other: &RingMatrix) -> Result<RingMatrix> {
        self.check_ring(other)?;
        if self.cols != other.rows {
            return Err(Error::DimMismatch(format!(
                "mul: {}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = RingMatrix::zero(&self.ring, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.at(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let prod = a.mul(b);
                    let cur = out.at(i, j).add(&prod);
                    *out.at_mut(i, j) = cur;
                }
            }
        }
        Ok(out)
    }

    /// Applies a scalar substitution entrywise.
    pub fn substitute(
        &self,
        bindings: &BTreeMap<String, ScalarValue>,
        target: &Ring,
    ) -> Result<RingMatrix> {
        let entries = self
            .entries
            .iter()
            .map(|e| e.substitute(bindings, target))
            .collect::<Result<Vec<_>>>()?;
        Ok(RingMatrix {
            ring: target.clone(),
            rows: self.rows,
            cols: self.cols,
            entries,
        })
    }

    pub fn into_ring(&self, target: &Ring) -> Result<RingMatrix> {
        let entries = self
            .entries
            .iter()
            .map(|e| e.into_ring(target))
            .collect::<Result<Vec<_>>>()?;
        Ok(RingMatrix {
            ring: target.clone(),
            rows: self.rows,
            cols: self.cols,
            entries,
        })
    }
}

/// Kronecker product; kron(A,B)[(i*p2+k),(j*q2+l)] = A[i,j]*B[k,l].
pub fn kron(a: &RingMatrix, b: &RingMatrix) -> Result<RingMatrix> {
    if a.ring != b.ring {
        return Err(Error::RingMismatch("kron rings differ".into()));
    }
    let mut out = RingMatrix::zero(&a.ring, a.rows * b.rows, a.cols * b.cols);
    for i in 0..a.rows {
        for j in 0..a.cols {
            let aij = a.at(i, j);
            if aij.is_zero() {
                continue;
            }
            for k in 0..b.rows {
                for l in 0..b.cols {
                    let bkl = b.at(k, l);
                    if bkl.is_zero() {
                        continue;
                    }
                    *out.at_mut(i * b.rows + k, j * b.cols + l) = aij.mul(bkl);
                }
            }
        }
    }
    Ok(out)
}

/// The permutation matrix P on V(x)V sending e_i (x) e_j to e_j (x) e_i.
pub fn flip(ring: &Ring, n: usize) -> RingMatrix {
    let mut m = RingMatrix::zero(ring, n * n, n * n);
    for i in 0..n {
        for j in 0..n {
            *m.at_mut(j * n + i, i * n + j) = ScalarValue::one(ring);
        }
    }
    m
}

/// R acting on legs 1,2 of V(x)V'(x)V'': R (x) I_{n3}.
pub fn embed12(r: &RingMatrix, shape: LegShape) -> Result<RingMatrix> {
    let n12 = shape.n1 * shape.n2;
    if r.rows != n12 || r.cols != n12 {
        return Err(Error::DimMismatch(format!(
            "embed12 expects {n12}x{n12}, got {}x{}",
            r.rows, r.cols
        )));
    }
    kron(r, &RingMatrix::identity(&r.ring, shape.n3))
}

/// T acting on legs 2,3: I_{n1} (x) T.
pub fn embed23(t: &RingMatrix, shape: LegShape) -> Result<RingMatrix> {
    let n23 = shape.n2 * shape.n3;
    if t.rows != n23 || t.cols != n23 {
        return Err(Error::DimMismatch(format!(
            "embed23 expects {n23}x{n23}, got {}x{}",
            t.rows, t.cols
        )));
    }
    kron(&RingMatrix::identity(&t.ring, shape.n1), t)
}

/// S acting on legs 1,3: entry ((i,j,k),(i',j',k')) = S[(i,k),(i',k')] delta_{j,j'}.
pub fn embed13(s: &RingMatrix, shape: LegShape) -> Result<RingMatrix> {
    let n13 = shape.n1 * shape.n3;
    if s.rows != n13 || s.cols != n13 {
        return Err(Error::DimMismatch(format!(
            "embed13 expects {n13}x{n13}, got {}x{}",
            s.rows, s.cols
        )));
    }
    let (n1, n2, n3) = (shape.n1, shape.n2, shape.n3);
    let n = n1 * n2 * n3;
    let mut out = RingMatrix::zero(&s.ring, n, n);
    for i in 0..n1 {
        for j in 0..n2 {
            for k in 0..n3 {
                for ip in 0..n1 {
                    for kp in 0..n3 {
                        let v = s.at(i * n3 + k, ip * n3 + kp);
                        if v.is_zero() {
                            continue;
                        }
                        let row = (i * n2 + j) * n3 + k;
                        let col = (ip * n2 + j) * n3 + kp;
                        *out.at_mut(row, col) = v.clone();
                    }
                }
            }
        }
    }
    Ok(out)
}

/// X+ = P X P on an n^2 x n^2 matrix.
pub fn plus_conj(x: &RingMatrix, n: usize) -> Result<RingMatrix> {
    if x.rows != n * n || x.cols != n * n {
        return Err(Error::DimMismatch(format!(
            "plus_conj expects {0}x{0}, got {1}x{2}",
            n * n,
            x.rows,
            x.cols
        )));
    }
    let p = flip(&x.ring, n);
    p.mul(x)?.mul(&p)
}

/// A matrix over a poly ring containing the designated spectral variables
/// `u`, `v` (plus parameters); the coloured-operator carrier.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColouredOperator {
    pub matrix: RingMatrix,
}

pub const SPECTRAL_VARS: [&str; 2] = ["u", "v"];

impl ColouredOperator {
    pub fn new(matrix: RingMatrix) -> Result<Self> {
        let ring = &matrix.ring;
        for name in SPECTRAL_VARS {
            if ring.var_index(name).is_none() {
                return Err(Error::RingMismatch(format!(
                    "coloured operator ring must declare `{name}`"
                )));
            }
        }
        Ok(ColouredOperator { matrix })
    }

    pub fn ring(&self) -> &Ring {
        &self.matrix.ring
    }

    pub fn dim(&self) -> usize {
        (self.matrix.rows as f64).sqrt() as usize
    }

    /// Whether the entries are free of the spectral variables.
    pub fn is_constant(&self) -> bool {
        let ring = self.ring();
        let iu = ring.var_index("u").unwrap();
        let iv = ring.var_index("v").unwrap();
        self.matrix
            .entries()
            .iter()
            .all(|e| !e.support().contains(&iu) && !e.support().contains(&iv))
    }

    /// Rebinds the spectral pair (u, v) to two variables of `target`.
    pub fn bind_spectral(&self, first: &str, second: &str, target: &Ring) -> Result<RingMatrix> {
        let mut bindings = BTreeMap::new();
        bindings.insert("u".to_string(), ScalarValue::var(target, first)?);
        bindings.insert("v".to_string(), ScalarValue::var(target, second)?);
        self.matrix.substitute(&bindings, target)
    }
}

/// X++(u,v) = P X(v,u) P.
pub fn plusplus_conj(x: &ColouredOperator) -> Result<ColouredOperator> {
    let ring = x.ring().clone();
    let mut swap = BTreeMap::new();
    swap.insert("u".to_string(), ScalarValue::var(&ring, "v")?);
    swap.insert("v".to_string(), ScalarValue::var(&ring, "u")?);
    let swapped = x.matrix.substitute(&swap, &ring)?;
    let n = x.dim();
    if n * n != x.matrix.rows || x.matrix.rows != x.matrix.cols {
        return Err(Error::DimMismatch("plusplus_conj needs a square n^2 matrix".into()));
    }
    ColouredOperator::new(plus_conj(&swapped, n)?)
}

/// Parameter ring of a family of coloured operators with `params` appended
/// by the spectral variables u, v.
pub fn coloured_ring<S: AsRef<str>>(params: &[S]) -> Result<Ring> {
    let mut vars: Vec<String> = params.iter().map(|s| s.as_ref().to_string()).collect();
    vars.push("u".into());
    vars.push("v".into());
    RingDescriptor::poly(&vars)
}
