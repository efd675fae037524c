use std::fmt;

use crate::error::{AlgebraError, Result};
use crate::groebner::{reduce_by_basis, reduced_basis, ModuleElement};
use crate::poly::Polynomial;
use crate::ring::{PolyRing, RingSpec};

/// A dense matrix of polynomials, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    ring: PolyRing,
    rows: usize,
    cols: usize,
    entries: Vec<Polynomial>,
}

impl PolyMatrix {
    pub fn zero(ring: &PolyRing, rows: usize, cols: usize) -> Self {
        PolyMatrix { ring: ring.clone(), rows, cols, entries: vec![ring.zero(); rows * cols] }
    }

    pub fn from_rows(ring: &PolyRing, rows: Vec<Vec<Polynomial>>) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != cols) {
            return Err(AlgebraError::DimensionMismatch("ragged matrix rows".into()));
        }
        let n = rows.len();
        let entries: Vec<Polynomial> = rows.into_iter().flatten().collect();
        if entries.iter().any(|e| e.ring() != ring) {
            return Err(AlgebraError::RingMismatch("matrix entry outside the ring".into()));
        }
        Ok(PolyMatrix { ring: ring.clone(), rows: n, cols, entries })
    }

    /// Columns given as module elements of length `rows`.
    pub fn from_columns(ring: &PolyRing, rows: usize, cols: &[ModuleElement]) -> Result<Self> {
        let mut m = Self::zero(ring, rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            if c.len() != rows {
                return Err(AlgebraError::DimensionMismatch(format!("column {c} has length {}", c.len())));
            }
            for (i, e) in c.entries().iter().enumerate() {
                m.set(i, j, e.clone());
            }
        }
        Ok(m)
    }

    pub fn ring(&self) -> &PolyRing {
        &self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Polynomial {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Polynomial) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn column(&self, j: usize) -> Vec<Polynomial> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn row(&self, i: usize) -> Vec<Polynomial> {
        self.entries[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn transpose(&self) -> PolyMatrix {
        let mut t = Self::zero(&self.ring, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        if self.cols != other.rows {
            return Err(AlgebraError::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zero(&self.ring, self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = self.ring.zero();
                for k in 0..self.cols {
                    let (a, b) = (self.get(i, k), other.get(k, j));
                    if !a.is_zero() && !b.is_zero() {
                        acc = &acc + &(a * b);
                    }
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    pub fn map(&self, f: impl Fn(&Polynomial) -> Polynomial) -> PolyMatrix {
        PolyMatrix { ring: self.ring.clone(), rows: self.rows, cols: self.cols, entries: self.entries.iter().map(f).collect() }
    }

    /// Determinant of the submatrix on the given rows and columns.
    pub fn minor(&self, rows: &[usize], cols: &[usize]) -> Polynomial {
        debug_assert_eq!(rows.len(), cols.len());
        match rows.len() {
            0 => self.ring.one(),
            1 => self.get(rows[0], cols[0]).clone(),
            _ => {
                let mut acc = self.ring.zero();
                let rest_rows = &rows[1..];
                for (k, &c) in cols.iter().enumerate() {
                    let a = self.get(rows[0], c);
                    if a.is_zero() {
                        continue;
                    }
                    let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
                    let term = a * &self.minor(rest_rows, &rest);
                    acc = if k % 2 == 0 { &acc + &term } else { &acc - &term };
                }
                acc
            }
        }
    }

    /// All `k x k` minors, rows and columns in combination order.
    pub fn minors(&self, k: usize) -> Vec<Polynomial> {
        let mut out = Vec::new();
        for rs in combinations(self.rows, k) {
            for cs in combinations(self.cols, k) {
                out.push(self.minor(&rs, &cs));
            }
        }
        out
    }
}

impl fmt::Display for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for i in 0..self.rows {
            if i > 0 {
                f.write_str(", ")?;
            }
            let row: Vec<String> = self.row(i).iter().map(|e| e.to_string()).collect();
            write!(f, "[{}]", row.join(", "))?;
        }
        f.write_str("]")
    }
}

/// `k`-subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    if k <= n {
        go(0, n, k, &mut cur, &mut out);
    }
    out
}

/// Finite presentation `coker(A^c -> A^b)` over a ring `A` (possibly a quotient):
/// `b` generators (rows) and `c` relations (columns).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PresentationMatrix {
    spec: RingSpec,
    matrix: PolyMatrix,
}

impl PresentationMatrix {
    /// Entries are reduced modulo the base ideal of `spec`; zero relations are dropped.
    pub fn new(spec: &RingSpec, matrix: PolyMatrix, limit: u64) -> Result<Self> {
        if matrix.ring() != spec.ring() {
            return Err(AlgebraError::RingMismatch("presentation matrix outside the ring".into()));
        }
        let j0 = reduced_basis(spec.ring(), spec.base(), limit)?;
        let reduced = matrix.map(|e| reduce_by_basis(e, &j0));
        let keep: Vec<usize> = (0..reduced.cols()).filter(|&j| reduced.column(j).iter().any(|e| !e.is_zero())).collect();
        let mut m = PolyMatrix::zero(spec.ring(), reduced.rows(), keep.len());
        for (jj, &j) in keep.iter().enumerate() {
            for i in 0..reduced.rows() {
                m.set(i, jj, reduced.get(i, j).clone());
            }
        }
        Ok(PresentationMatrix { spec: spec.clone(), matrix: m })
    }

    pub fn spec(&self) -> &RingSpec {
        &self.spec
    }

    pub fn matrix(&self) -> &PolyMatrix {
        &self.matrix
    }

    pub fn generators(&self) -> usize {
        self.matrix.rows()
    }

    pub fn relations(&self) -> usize {
        self.matrix.cols()
    }
}

impl fmt::Display for PresentationMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.matrix)
    }
}
