//! Exact dense linear algebra over the field carriers (Q and Q(i)).
//!
//! Everything is Gauss-Jordan based: reduced row echelon form with exact
//! division, from which rank, inverses, general solutions of `A X = B`,
//! and the full-rank factorization all follow. Finite Z_n carriers never
//! come through here; they are handled by exhaustive scans.

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::scalar::GaussianRational;

/// The field operations the elimination code needs. Implemented for
/// exact rationals and Gaussian rationals.
pub trait FieldScalar: Clone + PartialEq {
    fn zero() -> Self;
    fn one() -> Self;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    /// `None` exactly for zero.
    fn inv(&self) -> Option<Self>;
    fn is_zero(&self) -> bool;
    fn conj(&self) -> Self;
    /// Real/imaginary coordinates over Q, used to turn conjugate-linear
    /// systems into plain rational ones.
    fn to_rational_parts(&self) -> Vec<BigRational>;
    fn from_rational_parts(parts: &[BigRational]) -> Self;
    const PARTS: usize;
}

impl FieldScalar for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self.clone()
    }
    fn inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn conj(&self) -> Self {
        self.clone()
    }
    fn to_rational_parts(&self) -> Vec<BigRational> {
        vec![self.clone()]
    }
    fn from_rational_parts(parts: &[BigRational]) -> Self {
        parts[0].clone()
    }
    const PARTS: usize = 1;
}

impl FieldScalar for GaussianRational {
    fn zero() -> Self {
        GaussianRational::zero()
    }
    fn one() -> Self {
        GaussianRational::one()
    }
    fn add(&self, o: &Self) -> Self {
        GaussianRational::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        GaussianRational::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        GaussianRational::mul(self, o)
    }
    fn neg(&self) -> Self {
        GaussianRational::neg(self)
    }
    fn inv(&self) -> Option<Self> {
        GaussianRational::inv(self)
    }
    fn is_zero(&self) -> bool {
        GaussianRational::is_zero(self)
    }
    fn conj(&self) -> Self {
        GaussianRational::conj(self)
    }
    fn to_rational_parts(&self) -> Vec<BigRational> {
        vec![self.re.clone(), self.im.clone()]
    }
    fn from_rational_parts(parts: &[BigRational]) -> Self {
        GaussianRational::new(parts[0].clone(), parts[1].clone())
    }
    const PARTS: usize = 2;
}

/// Dense matrix in row-major order. Zero-sized dimensions are legal and
/// behave like the empty products they are, which lets rank-zero
/// factorizations flow through the generic formulas.
#[derive(Debug, Clone, PartialEq)]
pub struct Mat<F> {
    pub rows: usize,
    pub cols: usize,
    data: Vec<F>,
}

impl<F: FieldScalar> Mat<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            data: vec![F::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            *m.at_mut(i, i) = F::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> F) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Mat { rows, cols, data }
    }

    pub fn at(&self, r: usize, c: usize) -> &F {
        &self.data[r * self.cols + c]
    }

    pub fn at_mut(&mut self, r: usize, c: usize) -> &mut F {
        &mut self.data[r * self.cols + c]
    }

    pub fn transpose(&self) -> Self {
        Mat::from_fn(self.cols, self.rows, |r, c| self.at(c, r).clone())
    }

    /// Conjugate transpose when `conjugate`, plain transpose otherwise.
    pub fn star(&self, conjugate: bool) -> Self {
        if conjugate {
            Mat::from_fn(self.cols, self.rows, |r, c| self.at(c, r).conj())
        } else {
            self.transpose()
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.cols, o.rows, "inner dimensions must agree");
        Mat::from_fn(self.rows, o.cols, |i, j| {
            let mut acc = F::zero();
            for k in 0..self.cols {
                acc = acc.add(&self.at(i, k).mul(o.at(k, j)));
            }
            acc
        })
    }

    pub fn sub(&self, o: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Mat::from_fn(self.rows, self.cols, |i, j| self.at(i, j).sub(o.at(i, j)))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(F::is_zero)
    }

    /// Columns of `self` followed by columns of `o`.
    pub fn hstack(&self, o: &Self) -> Self {
        assert_eq!(self.rows, o.rows);
        Mat::from_fn(self.rows, self.cols + o.cols, |r, c| {
            if c < self.cols {
                self.at(r, c).clone()
            } else {
                o.at(r, c - self.cols).clone()
            }
        })
    }

    /// Rows of `self` followed by rows of `o`.
    pub fn vstack(&self, o: &Self) -> Self {
        assert_eq!(self.cols, o.cols);
        Mat::from_fn(self.rows + o.rows, self.cols, |r, c| {
            if r < self.rows {
                self.at(r, c).clone()
            } else {
                o.at(r - self.rows, c).clone()
            }
        })
    }

    /// Reduced row echelon form together with the pivot column indices.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| !m.at(r, col).is_zero()) else {
                continue;
            };
            if p != row {
                for c in 0..m.cols {
                    let tmp = m.at(p, c).clone();
                    *m.at_mut(p, c) = m.at(row, c).clone();
                    *m.at_mut(row, c) = tmp;
                }
            }
            let inv = m.at(row, col).inv().expect("pivot is nonzero");
            for c in 0..m.cols {
                *m.at_mut(row, c) = m.at(row, c).mul(&inv);
            }
            for r in 0..m.rows {
                if r != row && !m.at(r, col).is_zero() {
                    let factor = m.at(r, col).clone();
                    for c in 0..m.cols {
                        let delta = factor.mul(m.at(row, c));
                        *m.at_mut(r, c) = m.at(r, c).sub(&delta);
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Two-sided inverse of a square matrix, `None` when singular. The
    /// 0 x 0 matrix is its own inverse.
    pub fn inverse(&self) -> Option<Self> {
        assert_eq!(self.rows, self.cols, "inverse needs a square matrix");
        let n = self.rows;
        let (red, pivots) = self.hstack(&Mat::identity(n)).rref();
        if pivots.len() != n || pivots.iter().enumerate().any(|(i, &p)| p != i) {
            return None;
        }
        Some(Mat::from_fn(n, n, |r, c| red.at(r, n + c).clone()))
    }

    /// A particular solution of `self * X = B` with free variables set
    /// to zero, or `None` when the system is inconsistent.
    pub fn solve(&self, b: &Self) -> Option<Self> {
        assert_eq!(self.rows, b.rows);
        let (red, pivots) = self.hstack(b).rref();
        // A pivot beyond the coefficient block marks an inconsistency.
        if pivots.iter().any(|&p| p >= self.cols) {
            return None;
        }
        let mut x = Mat::zeros(self.cols, b.cols);
        for (r, &p) in pivots.iter().enumerate() {
            for c in 0..b.cols {
                *x.at_mut(p, c) = red.at(r, self.cols + c).clone();
            }
        }
        Some(x)
    }

    /// Full-rank factorization `self = c * r` with `c` of full column
    /// rank and `r` of full row rank (both rank many). Rank zero yields
    /// genuinely empty factors.
    pub fn full_rank_factorization(&self) -> (Self, Self) {
        let (red, pivots) = self.rref();
        let rank = pivots.len();
        let c = Mat::from_fn(self.rows, rank, |r, k| self.at(r, pivots[k]).clone());
        let r = Mat::from_fn(rank, self.cols, |k, j| red.at(k, j).clone());
        (c, r)
    }

    /// Column space containment: every column of `x` lies in the column
    /// space of `self`.
    pub fn contains_columns_of(&self, x: &Self) -> bool {
        self.solve(x).is_some()
    }

    /// `self^k`; `k = 0` gives the identity.
    pub fn pow(&self, k: u32) -> Self {
        assert_eq!(self.rows, self.cols);
        let mut acc = Mat::identity(self.rows);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }
}

/// Solve for a `d x d` matrix `Z` satisfying `apply(Z) = rhs`, where
/// `apply` is real-linear in `Z` (entrywise conjugation is allowed, so
/// Hermitian-deviation constraints fit). The system is assembled over Q
/// by probing `apply` on basis matrices, splitting Gaussian values into
/// real and imaginary coordinates; a particular solution is mapped back
/// to `F`. Returns `None` when no solution exists.
pub fn solve_real_linear_matrix_system<F: FieldScalar>(
    d: usize,
    apply: impl Fn(&Mat<F>) -> Vec<Mat<F>>,
    rhs: &[Mat<F>],
) -> Option<Mat<F>> {
    let parts = F::PARTS;
    let unknowns = d * d * parts;
    let flatten = |mats: &[Mat<F>]| -> Vec<BigRational> {
        let mut out = Vec::new();
        for m in mats {
            for r in 0..m.rows {
                for c in 0..m.cols {
                    out.extend(m.at(r, c).to_rational_parts());
                }
            }
        }
        out
    };
    let b = flatten(rhs);
    let total_rows = b.len();
    let mut coeffs = Mat::<BigRational>::zeros(total_rows, unknowns);
    for u in 0..unknowns {
        let (cell, part) = (u / parts, u % parts);
        let (r, c) = (cell / d, cell % d);
        let mut basis = Mat::<F>::zeros(d, d);
        let mut unit_parts = vec![<BigRational as Zero>::zero(); parts];
        unit_parts[part] = <BigRational as One>::one();
        *basis.at_mut(r, c) = F::from_rational_parts(&unit_parts);
        let image = flatten(&apply(&basis));
        assert_eq!(image.len(), total_rows, "apply must have a fixed shape");
        for (row, v) in image.into_iter().enumerate() {
            *coeffs.at_mut(row, u) = v;
        }
    }
    let rhs_col = Mat::from_fn(total_rows, 1, |r, _| b[r].clone());
    let sol = coeffs.solve(&rhs_col)?;
    let z = Mat::from_fn(d, d, |r, c| {
        let cell = r * d + c;
        let parts_vec: Vec<BigRational> = (0..parts)
            .map(|p| sol.at(cell * parts + p, 0).clone())
            .collect();
        F::from_rational_parts(&parts_vec)
    });
    debug_assert!(
        apply(&z)
            .iter()
            .zip(rhs)
            .all(|(got, want)| got == want),
        "probe-assembled system must reproduce the right-hand side"
    );
    Some(z)
}
