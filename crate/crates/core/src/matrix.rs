//! Small dense matrices over rational functions, with exact determinants
//! and linear solves via fraction-free (Bareiss) elimination on a
//! denominator-cleared Laurent matrix.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::context::{Axis, Context};
use crate::laurent::LaurentPoly;
use crate::ratfunc::RatFunc;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<RatFunc>,
}

impl Matrix {
    pub fn zero(ctx: Context, rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![RatFunc::zero(ctx); rows * cols],
        }
    }

    pub fn identity(ctx: Context, n: usize) -> Self {
        let mut m = Matrix::zero(ctx, n, n);
        for i in 0..n {
            *m.at_mut(i, i) = RatFunc::one(ctx);
        }
        m
    }

    pub fn from_rows(ctx: Context, rows: Vec<Vec<RatFunc>>) -> Self {
        let r = rows.len();
        let c = rows.first().map(|x| x.len()).unwrap_or(0);
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            data.extend(row);
        }
        let _ = ctx;
        Matrix { rows: r, cols: c, data }
    }

    pub fn at(&self, i: usize, j: usize) -> &RatFunc {
        &self.data[i * self.cols + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut RatFunc {
        &mut self.data[i * self.cols + j]
    }

    pub fn context(&self) -> Context {
        *self.data[0].context()
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(other.data.iter()) {
            *a = a.add(b);
        }
        out
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(other.data.iter()) {
            *a = a.sub(b);
        }
        out
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows);
        let ctx = self.context();
        let mut out = Matrix::zero(ctx, self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = RatFunc::zero(ctx);
                for k in 0..self.cols {
                    acc = acc.add(&self.at(i, k).mul(other.at(k, j)));
                }
                *out.at_mut(i, j) = acc;
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[RatFunc]) -> Vec<RatFunc> {
        assert_eq!(self.cols, v.len());
        let ctx = self.context();
        (0..self.rows)
            .map(|i| {
                let mut acc = RatFunc::zero(ctx);
                for k in 0..self.cols {
                    acc = acc.add(&self.at(i, k).mul(&v[k]));
                }
                acc
            })
            .collect()
    }

    pub fn scale(&self, f: &RatFunc) -> Matrix {
        let mut out = self.clone();
        for a in out.data.iter_mut() {
            *a = a.mul(f);
        }
        out
    }

    /// Entry-wise formal partial derivative.
    pub fn partial(&self, axis: Axis) -> Matrix {
        let mut out = self.clone();
        for a in out.data.iter_mut() {
            *a = a.partial(axis);
        }
        out
    }

    pub fn map<F: Fn(&RatFunc) -> RatFunc>(&self, f: F) -> Matrix {
        let mut out = self.clone();
        for a in out.data.iter_mut() {
            *a = f(a);
        }
        out
    }

    pub fn try_map<E, F: Fn(&RatFunc) -> Result<RatFunc, E>>(
        &self,
        f: F,
    ) -> Result<Matrix, E> {
        let mut out = self.clone();
        for a in out.data.iter_mut() {
            *a = f(a)?;
        }
        Ok(out)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|a| a.is_zero())
    }

    /// Clear denominators: returns (Laurent matrix M, scalar D) with
    /// `self = M / D`.
    fn cleared(&self) -> (Vec<LaurentPoly>, LaurentPoly) {
        let ctx = self.context();
        let mut common = LaurentPoly::one(ctx);
        for a in self.data.iter() {
            // Multiply denominators together unless already absorbed.
            if a.denominator().num_terms() > 1 || a.as_laurent().is_none() {
                common = common.mul(a.denominator());
            }
        }
        let cleared = self
            .data
            .iter()
            .map(|a| {
                a.numerator()
                    .mul(&common.div_exact(a.denominator()).expect("factor divides"))
            })
            .collect();
        (cleared, common)
    }

    /// Exact determinant via Bareiss elimination over the Laurent ring.
    pub fn det(&self) -> RatFunc {
        assert_eq!(self.rows, self.cols, "determinant of a square matrix");
        let n = self.rows;
        let ctx = self.context();
        if n == 0 {
            return RatFunc::one(ctx);
        }
        let (mut m, d) = self.cleared();
        let det_cleared = bareiss_det(&mut m, n, ctx);
        // det(self) = det_cleared / d^n
        let mut den = LaurentPoly::one(ctx);
        for _ in 0..n {
            den = den.mul(&d);
        }
        RatFunc::new(det_cleared, den).expect("nonzero denominator")
    }

    /// Solve `self * x = rhs` exactly (square, nonsingular); returns
    /// `None` when singular.
    pub fn solve(&self, rhs: &[RatFunc]) -> Option<Vec<RatFunc>> {
        assert_eq!(self.rows, self.cols);
        assert_eq!(self.rows, rhs.len());
        let n = self.rows;
        let ctx = self.context();
        let det = self.det();
        if det.is_zero() {
            return None;
        }
        // Cramer's rule with column replacement; n is small here.
        let mut out = Vec::with_capacity(n);
        for j in 0..n {
            let mut mj = self.clone();
            for i in 0..n {
                *mj.at_mut(i, j) = rhs[i].clone();
            }
            out.push(mj.det().div(&det).expect("nonzero det"));
        }
        let _ = ctx;
        Some(out)
    }

    /// Exact inverse via adjugate/determinant; `Err` when singular.
    pub fn inverse(&self) -> Result<Matrix, String> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let ctx = self.context();
        let det = self.det();
        if det.is_zero() {
            return Err(String::from("singular matrix"));
        }
        let mut out = Matrix::zero(ctx, n, n);
        for i in 0..n {
            for j in 0..n {
                let minor = self.minor(j, i);
                let mut c = minor.det();
                if (i + j) % 2 == 1 {
                    c = c.neg();
                }
                *out.at_mut(i, j) = c.div(&det).expect("nonzero det");
            }
        }
        Ok(out)
    }

    fn minor(&self, skip_row: usize, skip_col: usize) -> Matrix {
        let ctx = self.context();
        let n = self.rows;
        let mut out = Matrix::zero(ctx, n - 1, n - 1);
        let mut r = 0;
        for i in 0..n {
            if i == skip_row {
                continue;
            }
            let mut c = 0;
            for j in 0..n {
                if j == skip_col {
                    continue;
                }
                *out.at_mut(r, c) = self.at(i, j).clone();
                c += 1;
            }
            r += 1;
        }
        out
    }
}

/// Bareiss fraction-free determinant over the Laurent polynomial ring;
/// every interior division is exact by construction.
fn bareiss_det(m: &mut [LaurentPoly], n: usize, ctx: Context) -> LaurentPoly {
    let idx = |i: usize, j: usize| i * n + j;
    let mut sign_flip = false;
    let mut prev = LaurentPoly::one(ctx);
    for k in 0..n.saturating_sub(1) {
        if m[idx(k, k)].is_zero() {
            let Some(swap) = (k + 1..n).find(|&i| !m[idx(i, k)].is_zero()) else {
                return LaurentPoly::zero(ctx);
            };
            for j in 0..n {
                m.swap(idx(k, j), idx(swap, j));
            }
            sign_flip = !sign_flip;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = m[idx(k, k)]
                    .mul(&m[idx(i, j)])
                    .sub(&m[idx(i, k)].mul(&m[idx(k, j)]));
                m[idx(i, j)] = t.div_exact(&prev).expect("Bareiss division is exact");
            }
            m[idx(i, k)] = LaurentPoly::zero(ctx);
        }
        prev = m[idx(k, k)].clone();
    }
    let mut det = m[idx(n - 1, n - 1)].clone();
    if sign_flip {
        det = det.neg();
    }
    det
}
