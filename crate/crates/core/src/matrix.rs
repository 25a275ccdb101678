//! Dense matrices over the polynomial ring, and exact scalar matrices.

use crate::poly::Poly;
use crate::scalar::Coeff;

/// Dense row-major matrix of polynomials.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Matrix<K> {
    rows: usize,
    cols: usize,
    nvars: usize,
    entries: Vec<Poly<K>>,
}

impl<K: Coeff> Matrix<K> {
    pub fn zero(rows: usize, cols: usize, nvars: usize) -> Matrix<K> {
        Matrix { rows, cols, nvars, entries: vec![Poly::zero(nvars); rows * cols] }
    }

    pub fn identity(n: usize, nvars: usize) -> Matrix<K> {
        let mut m = Matrix::zero(n, n, nvars);
        for i in 0..n {
            m.set(i, i, Poly::one(nvars));
        }
        m
    }

    pub fn from_rows(nvars: usize, rows: Vec<Vec<Poly<K>>>) -> Matrix<K> {
        let r = rows.len();
        let c = rows.first().map(|x| x.len()).unwrap_or(0);
        let mut entries = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged matrix rows");
            for p in row {
                assert_eq!(p.nvars(), nvars);
                entries.push(p);
            }
        }
        Matrix { rows: r, cols: c, nvars, entries }
    }

    pub fn from_columns(nvars: usize, rows: usize, cols: Vec<Vec<Poly<K>>>) -> Matrix<K> {
        let c = cols.len();
        let mut m = Matrix::zero(rows, c, nvars);
        for (j, col) in cols.into_iter().enumerate() {
            assert_eq!(col.len(), rows, "column of wrong height");
            for (i, p) in col.into_iter().enumerate() {
                m.set(i, j, p);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn get(&self, i: usize, j: usize) -> &Poly<K> {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: Poly<K>) {
        assert_eq!(p.nvars(), self.nvars);
        self.entries[i * self.cols + j] = p;
    }

    pub fn column(&self, j: usize) -> Vec<Poly<K>> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Poly<K>>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|p| p.is_zero())
    }

    pub fn map<F: Fn(&Poly<K>) -> Poly<K>>(&self, f: F) -> Matrix<K> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            nvars: self.nvars,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    pub fn neg(&self) -> Matrix<K> {
        self.map(|p| p.neg())
    }

    pub fn scale(&self, f: &Poly<K>) -> Matrix<K> {
        self.map(|p| p.mul(f))
    }

    pub fn add(&self, other: &Matrix<K>) -> Matrix<K> {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (e, o) in out.entries.iter_mut().zip(&other.entries) {
            *e = e.add(o);
        }
        out
    }

    pub fn mul(&self, other: &Matrix<K>) -> Matrix<K> {
        assert_eq!(self.cols, other.rows, "matrix shape mismatch");
        let mut out = Matrix::zero(self.rows, other.cols, self.nvars);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let cur = out.get(i, j).add(&a.mul(b));
                    out.set(i, j, cur);
                }
            }
        }
        out
    }

    /// Apply to a column vector.
    pub fn apply(&self, v: &[Poly<K>]) -> Vec<Poly<K>> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut acc = Poly::zero(self.nvars);
                for j in 0..self.cols {
                    acc = acc.add(&self.get(i, j).mul(&v[j]));
                }
                acc
            })
            .collect()
    }

    /// Horizontal concatenation.
    pub fn hstack(&self, other: &Matrix<K>) -> Matrix<K> {
        assert_eq!(self.rows, other.rows);
        let mut out = Matrix::zero(self.rows, self.cols + other.cols, self.nvars);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j).clone());
            }
            for j in 0..other.cols {
                out.set(i, self.cols + j, other.get(i, j).clone());
            }
        }
        out
    }

    /// Evaluate every entry at a point.
    pub fn eval(&self, coords: &[K]) -> ScalarMat<K> {
        ScalarMat {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|p| p.eval(coords)).collect(),
        }
    }

    /// Determinant by cofactor expansion along the first column (desk-scale
    /// matrices only).
    pub fn det(&self) -> Poly<K> {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return Poly::one(self.nvars);
        }
        if n == 1 {
            return self.get(0, 0).clone();
        }
        let mut acc = Poly::zero(self.nvars);
        for i in 0..n {
            let a = self.get(i, 0);
            if a.is_zero() {
                continue;
            }
            let mut sub = Matrix::zero(n - 1, n - 1, self.nvars);
            let mut ii = 0;
            for r in 0..n {
                if r == i {
                    continue;
                }
                for c in 1..n {
                    sub.set(ii, c - 1, self.get(r, c).clone());
                }
                ii += 1;
            }
            let term = a.mul(&sub.det());
            acc = if i % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
        }
        acc
    }

    /// All `size × size` minors, as polynomials (no reduction).
    pub fn minors(&self, size: usize) -> Vec<Poly<K>> {
        if size > self.rows || size > self.cols {
            return Vec::new();
        }
        let row_sets = combinations(self.rows, size);
        let col_sets = combinations(self.cols, size);
        let mut out = Vec::new();
        for rs in &row_sets {
            for cs in &col_sets {
                let mut sub = Matrix::zero(size, size, self.nvars);
                for (a, &r) in rs.iter().enumerate() {
                    for (b, &c) in cs.iter().enumerate() {
                        sub.set(a, b, self.get(r, c).clone());
                    }
                }
                out.push(sub.det());
            }
        }
        out
    }

    /// Render as rows of polynomial literals.
    pub fn display(&self, vars: &[String]) -> String {
        let rows: Vec<String> = (0..self.rows)
            .map(|i| {
                let entries: Vec<String> =
                    (0..self.cols).map(|j| self.get(i, j).display(vars)).collect();
                entries.join(", ")
            })
            .collect();
        format!("[{}]", rows.join("; "))
    }
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        let need = k - cur.len();
        for i in start..=n.saturating_sub(need) {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    if k <= n {
        rec(0, n, k, &mut cur, &mut out);
    }
    out
}

/// Dense matrix of field elements (a fiber of a polynomial matrix).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ScalarMat<K> {
    rows: usize,
    cols: usize,
    entries: Vec<K>,
}

impl<K: Coeff> ScalarMat<K> {
    pub fn new(rows: usize, cols: usize, entries: Vec<K>) -> ScalarMat<K> {
        assert_eq!(entries.len(), rows * cols);
        ScalarMat { rows, cols, entries }
    }

    pub fn zero(rows: usize, cols: usize) -> ScalarMat<K> {
        ScalarMat { rows, cols, entries: vec![K::zero(); rows * cols] }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &K {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, k: K) {
        self.entries[i * self.cols + j] = k;
    }

    /// Rank by row echelon reduction.
    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        let mut rank = 0;
        let mut row = 0;
        for col in 0..m.cols {
            // find pivot
            let mut piv = None;
            for r in row..m.rows {
                if !m.get(r, col).is_zero() {
                    piv = Some(r);
                    break;
                }
            }
            let Some(p) = piv else { continue };
            // swap into place
            if p != row {
                for c in 0..m.cols {
                    let a = m.get(row, c).clone();
                    let b = m.get(p, c).clone();
                    m.set(row, c, b);
                    m.set(p, c, a);
                }
            }
            let inv = m.get(row, col).try_inv().expect("nonzero pivot");
            for c in col..m.cols {
                let v = m.get(row, c).clone() * inv.clone();
                m.set(row, c, v);
            }
            for r in (row + 1)..m.rows {
                let f = m.get(r, col).clone();
                if f.is_zero() {
                    continue;
                }
                for c in col..m.cols {
                    let v = m.get(r, c).clone() - f.clone() * m.get(row, c).clone();
                    m.set(r, c, v);
                }
            }
            rank += 1;
            row += 1;
            if row == m.rows {
                break;
            }
        }
        rank
    }

    /// Kernel dimension by *column* echelon elimination — an independent
    /// code path from [`ScalarMat::rank`], used by the brute-force oracle.
    pub fn kernel_dim(&self) -> usize {
        let mut m = self.clone();
        let mut eliminated_cols = 0;
        let mut col = 0;
        for row in 0..m.rows {
            let mut piv = None;
            for c in col..m.cols {
                if !m.get(row, c).is_zero() {
                    piv = Some(c);
                    break;
                }
            }
            let Some(p) = piv else { continue };
            if p != col {
                for r in 0..m.rows {
                    let a = m.get(r, col).clone();
                    let b = m.get(r, p).clone();
                    m.set(r, col, b);
                    m.set(r, p, a);
                }
            }
            let inv = m.get(row, col).try_inv().expect("nonzero pivot");
            for r in 0..m.rows {
                let v = m.get(r, col).clone() * inv.clone();
                m.set(r, col, v);
            }
            for c in 0..m.cols {
                if c == col {
                    continue;
                }
                let f = m.get(row, c).clone();
                if f.is_zero() {
                    continue;
                }
                for r in 0..m.rows {
                    let v = m.get(r, c).clone() - f.clone() * m.get(r, col).clone();
                    m.set(r, c, v);
                }
            }
            eliminated_cols += 1;
            col += 1;
            if col == m.cols {
                break;
            }
        }
        self.cols - eliminated_cols
    }
}
