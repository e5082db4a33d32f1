//! Dense exact linear algebra over a generic scalar.
//!
//! Row-major matrices with reduced row echelon form as the canonical
//! representative of a row space. Everything here is exact when the scalar
//! is exact; there is no pivot thresholding.

use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq)]
pub struct Mat<S> {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<S>,
}

impl<S: Scalar> Mat<S> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            data: vec![S::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            *m.at_mut(i, i) = S::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<S>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        Mat {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn at(&self, r: usize, c: usize) -> &S {
        &self.data[r * self.cols + c]
    }

    pub fn at_mut(&mut self, r: usize, c: usize) -> &mut S {
        &mut self.data[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[S] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<S>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                *t.at_mut(c, r) = self.at(r, c).clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(r, k).clone();
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let v = out.at(r, c).clone() + a.clone() * other.at(k, c).clone();
                    *out.at_mut(r, c) = v;
                }
            }
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a.clone() - b.clone())
            .collect();
        Mat {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn scale(&self, s: &S) -> Self {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a.clone() * s.clone()).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|a| a.is_zero())
    }

    /// In-place reduction to reduced row echelon form (leading ones, zero
    /// rows dropped). Returns the pivot columns. Rows end up sorted by
    /// pivot column, so equal row spaces yield identical matrices.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut lead = 0usize;
        let mut r = 0usize;
        while r < self.rows && lead < self.cols {
            // find pivot in column `lead` at or below row r
            let mut piv = None;
            for i in r..self.rows {
                if !self.at(i, lead).is_zero() {
                    piv = Some(i);
                    break;
                }
            }
            let Some(p) = piv else {
                lead += 1;
                continue;
            };
            self.swap_rows(r, p);
            let inv = S::one() / self.at(r, lead).clone();
            for c in lead..self.cols {
                let v = self.at(r, c).clone() * inv.clone();
                *self.at_mut(r, c) = v;
            }
            for i in 0..self.rows {
                if i != r && !self.at(i, lead).is_zero() {
                    let f = self.at(i, lead).clone();
                    for c in lead..self.cols {
                        let v = self.at(i, c).clone() - f.clone() * self.at(r, c).clone();
                        *self.at_mut(i, c) = v;
                    }
                }
            }
            pivots.push(lead);
            r += 1;
            lead += 1;
        }
        // drop zero rows
        self.truncate_rows(pivots.len());
        pivots
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    fn truncate_rows(&mut self, n: usize) {
        self.data.truncate(n * self.cols);
        self.rows = n;
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref().len()
    }

    /// Basis of the right null space `{x : A x = 0}`.
    pub fn nullspace(&self) -> Vec<Vec<S>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut basis = Vec::new();
        for &f in &free {
            let mut v = vec![S::zero(); self.cols];
            v[f] = S::one();
            for (ri, &pc) in pivots.iter().enumerate() {
                v[pc] = S::zero() - m.at(ri, f).clone();
            }
            basis.push(v);
        }
        basis
    }

    /// Solves `A x = b` exactly. `None` when inconsistent; for
    /// underdetermined systems an arbitrary particular solution is returned.
    pub fn solve(&self, b: &[S]) -> Option<Vec<S>> {
        assert_eq!(self.rows, b.len());
        let mut aug = Mat::zeros(self.rows, self.cols + 1);
        for r in 0..self.rows {
            for c in 0..self.cols {
                *aug.at_mut(r, c) = self.at(r, c).clone();
            }
            *aug.at_mut(r, self.cols) = b[r].clone();
        }
        let pivots = aug.rref();
        if pivots.contains(&self.cols) {
            return None; // pivot in the augmented column
        }
        let mut x = vec![S::zero(); self.cols];
        for (ri, &pc) in pivots.iter().enumerate() {
            x[pc] = aug.at(ri, self.cols).clone();
        }
        Some(x)
    }

    pub fn det(&self) -> S {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut m = self.clone();
        let mut det = S::one();
        for col in 0..n {
            let mut piv = None;
            for r in col..n {
                if !m.at(r, col).is_zero() {
                    piv = Some(r);
                    break;
                }
            }
            let Some(p) = piv else {
                return S::zero();
            };
            if p != col {
                m.swap_rows(p, col);
                det = S::zero() - det;
            }
            let d = m.at(col, col).clone();
            det = det * d.clone();
            for r in col + 1..n {
                if m.at(r, col).is_zero() {
                    continue;
                }
                let f = m.at(r, col).clone() / d.clone();
                for c in col..n {
                    let v = m.at(r, c).clone() - f.clone() * m.at(col, c).clone();
                    *m.at_mut(r, c) = v;
                }
            }
        }
        det
    }

    pub fn trace(&self) -> S {
        assert_eq!(self.rows, self.cols);
        (0..self.rows).fold(S::zero(), |acc, i| acc + self.at(i, i).clone())
    }

    /// Exact inverse; `None` when singular.
    pub fn inverse(&self) -> Option<Self> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        if self.rank() < n {
            return None;
        }
        let mut out = Mat::zeros(n, n);
        for j in 0..n {
            let mut e = vec![S::zero(); n];
            e[j] = S::one();
            let col = self.solve(&e)?;
            for i in 0..n {
                *out.at_mut(i, j) = col[i].clone();
            }
        }
        Some(out)
    }

    /// Characteristic polynomial coefficients `[c_0, ..., c_{n-1}, 1]` of
    /// `det(xI - A)` via Faddeev-LeVerrier. Exact over a field scalar.
    pub fn charpoly(&self) -> Vec<S> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut coeffs = vec![S::zero(); n + 1];
        coeffs[n] = S::one();
        let mut m = Mat::zeros(n, n);
        for k in 1..=n {
            // M_k = A M_{k-1} + c_{n-k+1} I
            let mut mk = self.mul(&m);
            let c = coeffs[n - k + 1].clone();
            for i in 0..n {
                let v = mk.at(i, i).clone() + c.clone();
                *mk.at_mut(i, i) = v;
            }
            m = mk;
            let mut kfrac = S::zero();
            for _ in 0..k {
                kfrac = kfrac + S::one();
            }
            coeffs[n - k] = S::zero() - self.mul_trace(&m) / kfrac;
        }
        coeffs
    }

    fn mul_trace(&self, other: &Self) -> S {
        // trace(self * other) without forming the product... both square n x n
        let mut t = S::zero();
        for i in 0..self.rows {
            for k in 0..self.cols {
                t = t + self.at(i, k).clone() * other.at(k, i).clone();
            }
        }
        t
    }
}

/// Row-space intersection via the Zassenhaus block trick.
pub fn rowspace_intersection<S: Scalar>(a: &Mat<S>, b: &Mat<S>) -> Mat<S> {
    assert_eq!(a.cols, b.cols);
    let n = a.cols;
    let mut block = Mat::zeros(a.rows + b.rows, 2 * n);
    for r in 0..a.rows {
        for c in 0..n {
            *block.at_mut(r, c) = a.at(r, c).clone();
            *block.at_mut(r, n + c) = a.at(r, c).clone();
        }
    }
    for r in 0..b.rows {
        for c in 0..n {
            *block.at_mut(a.rows + r, c) = b.at(r, c).clone();
        }
    }
    let pivots = block.rref();
    // rows whose pivot lies in the right block give the intersection
    let mut rows = Vec::new();
    for (ri, &pc) in pivots.iter().enumerate() {
        if pc >= n {
            rows.push(block.row(ri)[n..].to_vec());
        }
    }
    let mut m = if rows.is_empty() {
        Mat::zeros(0, n)
    } else {
        Mat::from_rows(rows)
    };
    m.rref();
    m
}
