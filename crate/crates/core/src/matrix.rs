//! Dense exact matrices.
//!
//! Ranks of interest are small (at most a few dozen), so everything is
//! stored row-major in a flat `Vec` and all algorithms are the textbook
//! cubic or quartic ones: Bareiss elimination for determinants, the
//! Berkowitz recurrence for characteristic polynomials, Gauss-Jordan over
//! an arbitrary exact [`Field`] for kernels and solves, and unimodular
//! column reduction for integer kernels.

use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type IntMatrix = Matrix<BigInt>;
pub type RatMatrix = Matrix<BigRational>;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T> Matrix<T> {
    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    /// Builds a matrix from row vectors. Returns `None` for ragged input.
    pub fn from_rows(rows: Vec<Vec<T>>) -> Option<Self> {
        let n = rows.len();
        let m = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != m) {
            return None;
        }
        Some(Matrix { rows: n, cols: m, data: rows.into_iter().flatten().collect() })
    }

    pub fn map<U>(&self, f: impl FnMut(&T) -> U) -> Matrix<U> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }
}

impl<T: Clone> Matrix<T> {
    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn column(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(cols: &[Vec<T>]) -> Option<Self> {
        let m = Matrix::from_rows(cols.to_vec())?;
        Some(m.transpose())
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        Matrix::from_fn(rows.len(), cols.len(), |i, j| self[(rows[i], cols[j])].clone())
    }
}

impl<T: Clone + Zero + One> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix::from_fn(rows, cols, |_, _| T::zero())
    }

    pub fn identity(n: usize) -> Self {
        Matrix::from_fn(n, n, |i, j| if i == j { T::one() } else { T::zero() })
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }
}

impl<T: Clone + Zero + One + PartialEq> Matrix<T> {
    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let x = &self[(i, j)];
                    if i == j {
                        x.is_one()
                    } else {
                        x.is_zero()
                    }
                })
            })
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.cols + j]
    }
}

impl<T> Matrix<T>
where
    T: Clone + Zero,
    for<'a> &'a T: Mul<&'a T, Output = T>,
{
    /// Matrix product. Panics on a shape mismatch, which is a caller bug.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matrix shape mismatch");
        Matrix::from_fn(self.rows, other.cols, |i, j| {
            let mut acc = T::zero();
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if !a.is_zero() {
                    acc = acc + a * &other[(k, j)];
                }
            }
            acc
        })
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(self.cols, v.len(), "matrix/vector shape mismatch");
        (0..self.rows)
            .map(|i| {
                let mut acc = T::zero();
                for (a, x) in self.row(i).iter().zip(v) {
                    if !a.is_zero() {
                        acc = acc + a * x;
                    }
                }
                acc
            })
            .collect()
    }
}

impl<T> Matrix<T>
where
    T: Clone + Zero + One,
    for<'a> &'a T: Mul<&'a T, Output = T>,
{
    /// Non-negative power by repeated squaring.
    pub fn pow(&self, mut k: u64) -> Self {
        assert!(self.is_square());
        let mut base = self.clone();
        let mut acc = Matrix::identity(self.rows);
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }
}

impl<T> Matrix<T>
where
    T: Clone,
    for<'a> &'a T: Add<&'a T, Output = T> + Sub<&'a T, Output = T>,
{
    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix::from_fn(self.rows, self.cols, |i, j| &self[(i, j)] + &other[(i, j)])
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix::from_fn(self.rows, self.cols, |i, j| &self[(i, j)] - &other[(i, j)])
    }
}

impl IntMatrix {
    pub fn from_i64(rows: &[Vec<i64>]) -> Option<Self> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect())
    }

    pub fn to_rational(&self) -> RatMatrix {
        self.map(|x| BigRational::from_integer(x.clone()))
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> BigInt {
        assert!(self.is_square());
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.to_rows();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(i) => {
                        a.swap(i, k);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let t = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = t / &prev;
                }
                a[i][k] = BigInt::zero();
            }
            prev = a[k][k].clone();
        }
        sign * &a[n - 1][n - 1]
    }
}

impl RatMatrix {
    /// Returns the integer matrix if every entry is integral.
    pub fn to_integer(&self) -> Option<IntMatrix> {
        if self.data.iter().all(|x| x.is_integer()) {
            Some(self.map(|x| x.to_integer()))
        } else {
            None
        }
    }
}

/// Coefficients (descending powers, leading 1) of `det(xI - A)` by the
/// Berkowitz recurrence. Division free, so it works over any commutative
/// ring.
pub fn berkowitz<T>(a: &Matrix<T>) -> Vec<T>
where
    T: Clone + Zero + One + Neg<Output = T>,
    for<'a> &'a T: Mul<&'a T, Output = T> + Add<&'a T, Output = T>,
{
    assert!(a.is_square());
    let n = a.rows();
    let mut poly = vec![T::one()];
    for r in 0..n {
        // Toeplitz column: 1, -a_rr, -R C, -R M C, ..., -R M^{r-1} C
        let mut col = Vec::with_capacity(r + 2);
        col.push(T::one());
        col.push(-a[(r, r)].clone());
        let mut w: Vec<T> = (0..r).map(|i| a[(i, r)].clone()).collect();
        for k in 0..r {
            let mut dot = T::zero();
            for j in 0..r {
                dot = &dot + &(&a[(r, j)] * &w[j]);
            }
            col.push(-dot);
            if k + 1 < r {
                w = (0..r)
                    .map(|i| {
                        let mut s = T::zero();
                        for j in 0..r {
                            s = &s + &(&a[(i, j)] * &w[j]);
                        }
                        s
                    })
                    .collect();
            }
        }
        let next: Vec<T> = (0..r + 2)
            .map(|i| {
                let mut s = T::zero();
                for j in 0..=i.min(r) {
                    s = &s + &(&col[i - j] * &poly[j]);
                }
                s
            })
            .collect();
        poly = next;
    }
    poly
}

/// Exact field arithmetic, passed as a context object so that elements of
/// an extension field do not need to carry their modulus around.
pub trait Field {
    type Elem: Clone + PartialEq;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse; `a` must be non-zero.
    fn inv(&self, a: &Self::Elem) -> Self::Elem;
    fn from_rational(&self, q: &BigRational) -> Self::Elem;

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.mul(a, &self.inv(b))
    }
}

/// The rational numbers.
#[derive(Clone, Copy, Debug, Default)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> BigRational {
        a.recip()
    }
    fn from_rational(&self, q: &BigRational) -> BigRational {
        q.clone()
    }
}

/// Reduced row echelon form in place. Returns the pivot columns.
pub fn rref<F: Field>(field: &F, m: &mut [Vec<F::Elem>]) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !field.is_zero(&m[i][c])) else {
            continue;
        };
        m.swap(r, p);
        let inv = field.inv(&m[r][c]);
        for j in c..cols {
            m[r][j] = field.mul(&m[r][j], &inv);
        }
        for i in 0..rows {
            if i != r && !field.is_zero(&m[i][c]) {
                let f = m[i][c].clone();
                for j in c..cols {
                    if !field.is_zero(&m[r][j]) {
                        let t = field.mul(&f, &m[r][j]);
                        m[i][j] = field.sub(&m[i][j], &t);
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Basis of the right kernel `{x : A x = 0}` of a `rows x ncols` matrix.
pub fn kernel<F: Field>(field: &F, a: &[Vec<F::Elem>], ncols: usize) -> Vec<Vec<F::Elem>> {
    let mut m = a.to_vec();
    let pivots = rref(field, &mut m);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![field.zero(); ncols];
            v[f] = field.one();
            for (row, &p) in pivots.iter().enumerate() {
                v[p] = field.neg(&m[row][f]);
            }
            v
        })
        .collect()
}

pub fn rank<F: Field>(field: &F, a: &[Vec<F::Elem>]) -> usize {
    let mut m = a.to_vec();
    rref(field, &mut m).len()
}

/// Solves `A x = b`. Returns `None` when the system is inconsistent; for an
/// underdetermined system the free variables are set to zero.
pub fn solve<F: Field>(field: &F, a: &[Vec<F::Elem>], b: &[F::Elem]) -> Option<Vec<F::Elem>> {
    let ncols = a.first().map_or(0, Vec::len);
    let mut m: Vec<Vec<F::Elem>> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let pivots = rref(field, &mut m);
    if pivots.last() == Some(&ncols) {
        return None;
    }
    let mut x = vec![field.zero(); ncols];
    for (row, &p) in pivots.iter().enumerate() {
        x[p] = m[row][ncols].clone();
    }
    Some(x)
}

/// Inverse of a square matrix over a field, `None` if singular.
pub fn inverse<F: Field>(field: &F, a: &[Vec<F::Elem>]) -> Option<Vec<Vec<F::Elem>>> {
    let n = a.len();
    let mut m: Vec<Vec<F::Elem>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { field.one() } else { field.zero() }));
            r
        })
        .collect();
    let pivots = rref(field, &mut m);
    if pivots.len() < n || pivots[n - 1] >= n {
        return None;
    }
    Some(m.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Z-basis of the integer kernel `{x in Z^n : A x = 0}`, returned as a list
/// of vectors. Uses unimodular column operations, so the basis spans the
/// full saturated kernel rather than a finite-index sublattice.
pub fn integer_kernel(a: &IntMatrix) -> Vec<Vec<BigInt>> {
    let m = a.rows();
    let n = a.cols();
    let mut work = a.to_rows();
    // columns of `u` track the unimodular transform
    let mut u: Vec<Vec<BigInt>> = IntMatrix::identity(n).to_rows();
    let mut pivot_col = 0;
    for row in 0..m {
        if pivot_col == n {
            break;
        }
        // gather the gcd of work[row][pivot_col..] into pivot_col
        loop {
            let nonzero: Vec<usize> = (pivot_col..n).filter(|&j| !work[row][j].is_zero()).collect();
            if nonzero.is_empty() {
                break;
            }
            let best = *nonzero.iter().min_by_key(|&&j| work[row][j].abs()).unwrap();
            swap_cols(&mut work, pivot_col, best);
            swap_cols(&mut u, pivot_col, best);
            let mut done = true;
            for j in pivot_col + 1..n {
                if work[row][j].is_zero() {
                    continue;
                }
                let q = work[row][j].div_floor(&work[row][pivot_col]);
                col_axpy(&mut work, j, pivot_col, &q);
                col_axpy(&mut u, j, pivot_col, &q);
                if !work[row][j].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if !work[row][pivot_col].is_zero() {
            pivot_col += 1;
        }
    }
    (pivot_col..n).map(|j| u.iter().map(|r| r[j].clone()).collect()).collect()
}

fn swap_cols(m: &mut [Vec<BigInt>], a: usize, b: usize) {
    if a != b {
        for r in m.iter_mut() {
            r.swap(a, b);
        }
    }
}

// column[target] -= q * column[source]
fn col_axpy(m: &mut [Vec<BigInt>], target: usize, source: usize, q: &BigInt) {
    for r in m.iter_mut() {
        let t = &r[source] * q;
        r[target] -= t;
    }
}

/// Signs of an exact congruence diagonalization of a symmetric rational
/// matrix: `(positive, negative, zero)` counts.
pub fn inertia(gram: &RatMatrix) -> (usize, usize, usize) {
    assert!(gram.is_square());
    let n = gram.rows();
    let mut a = gram.to_rows();
    let (mut plus, mut minus, mut zero) = (0, 0, 0);
    for i in 0..n {
        if a[i][i].is_zero() {
            if let Some(j) = (i + 1..n).find(|&j| !a[j][j].is_zero()) {
                a.swap(i, j);
                for row in a.iter_mut() {
                    row.swap(i, j);
                }
            } else if let Some(j) = (i + 1..n).find(|&j| !a[i][j].is_zero()) {
                // add row/col j to row/col i; new diagonal is 2 a_ij
                for k in 0..n {
                    let t = a[j][k].clone();
                    a[i][k] += t;
                }
                for k in 0..n {
                    let t = a[k][j].clone();
                    a[k][i] += t;
                }
            }
        }
        let pivot = a[i][i].clone();
        if pivot.is_zero() {
            zero += 1;
            continue;
        }
        if pivot.is_positive() {
            plus += 1;
        } else {
            minus += 1;
        }
        for j in i + 1..n {
            if a[j][i].is_zero() {
                continue;
            }
            let f = &a[j][i] / &pivot;
            for k in i..n {
                let t = &f * &a[i][k];
                a[j][k] -= t;
            }
        }
        for j in i + 1..n {
            a[i][j] = BigRational::zero();
        }
    }
    (plus, minus, zero)
}
