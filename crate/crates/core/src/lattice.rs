//! Integral lattices, their vectors, and certified isometries.
//!
//! Every vector and isometry carries its owning [`Lattice`]; the lattice is
//! reference counted and compared by identity, so mixing classes from two
//! separately constructed lattices is an error even when their Gram
//! matrices agree.

use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering as AtomicOrdering};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::matrix::{inertia, inverse, IntMatrix, RatMatrix, Rationals};

static NEXT_LATTICE_ID: AtomicU64 = AtomicU64::new(1);

#[derive(Debug)]
struct LatticeInner {
    id: u64,
    gram: IntMatrix,
    gram_q: RatMatrix,
    gram_inv: RatMatrix,
    signature: (usize, usize),
}

/// A free Z-module with a non-degenerate symmetric integral form.
#[derive(Clone, Debug)]
pub struct Lattice(Arc<LatticeInner>);

impl PartialEq for Lattice {
    fn eq(&self, other: &Self) -> bool {
        self.0.id == other.0.id
    }
}

impl Eq for Lattice {}

impl Lattice {
    pub fn new(gram: IntMatrix) -> Result<Self> {
        if !gram.is_square() {
            return Err(Error::NotSquare { rows: gram.rows(), cols: gram.cols() });
        }
        let n = gram.rows();
        if n == 0 {
            return Err(Error::DegenerateForm);
        }
        for i in 0..n {
            for j in i + 1..n {
                if gram[(i, j)] != gram[(j, i)] {
                    return Err(Error::NotSymmetric { row: i, col: j });
                }
            }
        }
        if gram.determinant().is_zero() {
            return Err(Error::DegenerateForm);
        }
        let gram_q = gram.to_rational();
        let (plus, minus, _) = inertia(&gram_q);
        let inv = inverse(&Rationals, &gram_q.to_rows()).ok_or(Error::DegenerateForm)?;
        let gram_inv = RatMatrix::from_rows(inv).expect("square inverse");
        Ok(Lattice(Arc::new(LatticeInner {
            id: NEXT_LATTICE_ID.fetch_add(1, AtomicOrdering::Relaxed),
            gram,
            gram_q,
            gram_inv,
            signature: (plus, minus),
        })))
    }

    /// `Z^{1,n}`: rank `n + 1`, form `diag(1, -1, ..., -1)`.
    pub fn lorentzian(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::DegenerateSignature(0));
        }
        let gram = IntMatrix::from_fn(n + 1, n + 1, |i, j| match (i, j) {
            (0, 0) => BigInt::one(),
            _ if i == j => -BigInt::one(),
            _ => BigInt::zero(),
        });
        Self::new(gram)
    }

    pub fn id(&self) -> u64 {
        self.0.id
    }

    pub fn rank(&self) -> usize {
        self.0.gram.rows()
    }

    pub fn gram(&self) -> &IntMatrix {
        &self.0.gram
    }

    pub fn gram_rational(&self) -> &RatMatrix {
        &self.0.gram_q
    }

    pub fn gram_inverse(&self) -> &RatMatrix {
        &self.0.gram_inv
    }

    /// `(n_plus, n_minus)`.
    pub fn signature(&self) -> (usize, usize) {
        self.0.signature
    }

    pub fn is_hyperbolic(&self) -> bool {
        self.0.signature.0 == 1
    }

    pub fn determinant(&self) -> BigInt {
        self.0.gram.determinant()
    }

    /// Whether this lattice is literally `Z^{1,rank-1}` in the standard basis.
    pub fn is_standard_lorentzian(&self) -> bool {
        let g = &self.0.gram;
        (0..self.rank()).all(|i| {
            (0..self.rank()).all(|j| {
                let expected = match (i, j) {
                    (0, 0) => 1,
                    _ if i == j => -1,
                    _ => 0,
                };
                g[(i, j)] == BigInt::from(expected)
            })
        })
    }

    pub fn vector(&self, coords: Vec<BigRational>) -> Result<LatticeVector> {
        if coords.len() != self.rank() {
            return Err(Error::DimensionMismatch { expected: self.rank(), found: coords.len() });
        }
        Ok(LatticeVector { lattice: self.clone(), coords })
    }

    pub fn vector_from_integers(&self, coords: &[BigInt]) -> Result<LatticeVector> {
        self.vector(coords.iter().cloned().map(BigRational::from_integer).collect())
    }

    pub fn vector_from_i64(&self, coords: &[i64]) -> Result<LatticeVector> {
        self.vector(coords.iter().map(|&c| BigRational::from_integer(c.into())).collect())
    }

    pub fn zero_vector(&self) -> LatticeVector {
        LatticeVector { lattice: self.clone(), coords: vec![BigRational::zero(); self.rank()] }
    }

    pub fn basis_vector(&self, i: usize) -> LatticeVector {
        let mut v = self.zero_vector();
        v.coords[i] = BigRational::one();
        v
    }

    /// The bilinear form on raw coordinate vectors.
    pub fn pair_coords(&self, v: &[BigRational], w: &[BigRational]) -> BigRational {
        let g = &self.0.gram;
        let mut acc = BigRational::zero();
        for (i, vi) in v.iter().enumerate() {
            if vi.is_zero() {
                continue;
            }
            let mut row = BigRational::zero();
            for (j, wj) in w.iter().enumerate() {
                if !wj.is_zero() && !g[(i, j)].is_zero() {
                    row += wj * BigRational::from_integer(g[(i, j)].clone());
                }
            }
            acc += vi * row;
        }
        acc
    }

    /// A class of positive square, used as the reference for ray signs.
    /// For `Z^{1,n}` this is `e0`. Other forms are searched over basis
    /// vectors and sums or differences of two basis vectors.
    pub fn positive_class(&self) -> Option<LatticeVector> {
        let n = self.rank();
        let positive = |v: &LatticeVector| v.square().is_positive();
        for i in 0..n {
            let v = self.basis_vector(i);
            if positive(&v) {
                return Some(v);
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                for s in [1i64, -1] {
                    let mut v = self.basis_vector(i);
                    v.coords[j] = BigRational::from_integer(s.into());
                    if positive(&v) {
                        return Some(v);
                    }
                }
            }
        }
        None
    }
}

/// A rational class in a lattice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeVector {
    lattice: Lattice,
    coords: Vec<BigRational>,
}

impl LatticeVector {
    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<BigRational> {
        self.coords
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    fn same_lattice(&self, other: &LatticeVector) -> Result<()> {
        if self.lattice == other.lattice {
            Ok(())
        } else {
            Err(Error::LatticeMismatch)
        }
    }

    pub fn pair(&self, other: &LatticeVector) -> Result<BigRational> {
        self.same_lattice(other)?;
        Ok(self.lattice.pair_coords(&self.coords, &other.coords))
    }

    pub fn square(&self) -> BigRational {
        self.lattice.pair_coords(&self.coords, &self.coords)
    }

    pub fn add(&self, other: &LatticeVector) -> Result<LatticeVector> {
        self.same_lattice(other)?;
        let coords = self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect();
        Ok(LatticeVector { lattice: self.lattice.clone(), coords })
    }

    pub fn sub(&self, other: &LatticeVector) -> Result<LatticeVector> {
        self.same_lattice(other)?;
        let coords = self.coords.iter().zip(&other.coords).map(|(a, b)| a - b).collect();
        Ok(LatticeVector { lattice: self.lattice.clone(), coords })
    }

    pub fn scale(&self, q: &BigRational) -> LatticeVector {
        LatticeVector { lattice: self.lattice.clone(), coords: self.coords.iter().map(|c| c * q).collect() }
    }

    pub fn neg(&self) -> LatticeVector {
        LatticeVector { lattice: self.lattice.clone(), coords: self.coords.iter().map(|c| -c).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn is_integral(&self) -> bool {
        self.coords.iter().all(|c| c.is_integer())
    }

    pub fn to_integers(&self) -> Option<Vec<BigInt>> {
        self.is_integral().then(|| self.coords.iter().map(|c| c.to_integer()).collect())
    }

    /// The primitive integral vector on the same ray. The zero vector is
    /// returned unchanged.
    pub fn primitive(&self) -> LatticeVector {
        if self.is_zero() {
            return self.clone();
        }
        let den = self.coords.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
        let ints: Vec<BigInt> = self.coords.iter().map(|c| (c * BigRational::from_integer(den.clone())).to_integer()).collect();
        let g = ints.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
        let coords = ints.into_iter().map(|c| BigRational::from_integer(c / &g)).collect();
        LatticeVector { lattice: self.lattice.clone(), coords }
    }

    /// Whether `self = q * other` for some rational `q > 0`.
    pub fn same_ray(&self, other: &LatticeVector) -> bool {
        if self.lattice != other.lattice || self.is_zero() || other.is_zero() {
            return false;
        }
        let mut ratio: Option<BigRational> = None;
        for (a, b) in self.coords.iter().zip(&other.coords) {
            match (a.is_zero(), b.is_zero()) {
                (true, true) => continue,
                (true, false) | (false, true) => return false,
                _ => {}
            }
            let r = a / b;
            match &ratio {
                None => ratio = Some(r),
                Some(q) if *q != r => return false,
                _ => {}
            }
        }
        ratio.is_some_and(|q| q.is_positive())
    }
}

impl fmt::Display for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// An integral matrix `M` with `M^T G M = G` and `det M = +-1`, acting on
/// column coordinate vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Isometry {
    lattice: Lattice,
    matrix: IntMatrix,
}

impl Isometry {
    /// Certifies `m` as an isometry of `lattice`. Unimodularity is checked
    /// first, so a scaling matrix reports `NotUnimodular` rather than the
    /// form violation it also causes.
    pub fn certify(m: IntMatrix, lattice: &Lattice) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::NotSquare { rows: m.rows(), cols: m.cols() });
        }
        if m.rows() != lattice.rank() {
            return Err(Error::DimensionMismatch { expected: lattice.rank(), found: m.rows() });
        }
        let det = m.determinant();
        if det.abs() != BigInt::one() {
            return Err(Error::NotUnimodular { det: det.to_string() });
        }
        let lhs = m.transpose().mul(lattice.gram()).mul(&m);
        let g = lattice.gram();
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                if lhs[(i, j)] != g[(i, j)] {
                    return Err(Error::FormNotPreserved { row: i, col: j });
                }
            }
        }
        Ok(Isometry { lattice: lattice.clone(), matrix: m })
    }

    pub fn identity(lattice: &Lattice) -> Self {
        Isometry { lattice: lattice.clone(), matrix: IntMatrix::identity(lattice.rank()) }
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn rank(&self) -> usize {
        self.matrix.rows()
    }

    pub fn determinant(&self) -> BigInt {
        self.matrix.determinant()
    }

    pub fn is_identity(&self) -> bool {
        self.matrix.is_identity()
    }

    pub fn apply(&self, v: &LatticeVector) -> Result<LatticeVector> {
        if v.lattice != self.lattice {
            return Err(Error::LatticeMismatch);
        }
        Ok(LatticeVector { lattice: self.lattice.clone(), coords: self.apply_coords(&v.coords) })
    }

    pub fn apply_coords(&self, v: &[BigRational]) -> Vec<BigRational> {
        let n = self.rank();
        (0..n)
            .map(|i| {
                let mut s = BigRational::zero();
                for (j, vj) in v.iter().enumerate() {
                    let m = &self.matrix[(i, j)];
                    if !m.is_zero() && !vj.is_zero() {
                        s += vj * BigRational::from_integer(m.clone());
                    }
                }
                s
            })
            .collect()
    }

    /// `self . other`, i.e. apply `other` first.
    pub fn compose(&self, other: &Isometry) -> Result<Isometry> {
        if self.lattice != other.lattice {
            return Err(Error::LatticeMismatch);
        }
        Ok(Isometry { lattice: self.lattice.clone(), matrix: self.matrix.mul(&other.matrix) })
    }

    /// Exact inverse `G^{-1} M^T G`, integral because `M` is unimodular and
    /// preserves the form.
    pub fn inverse(&self) -> Isometry {
        let l = &self.lattice;
        let inv = l.gram_inverse().mul(&self.matrix.transpose().to_rational()).mul(l.gram_rational());
        let matrix = inv.to_integer().expect("inverse of a certified isometry is integral");
        Isometry { lattice: l.clone(), matrix }
    }

    pub fn power(&self, k: i64) -> Isometry {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        Isometry { lattice: self.lattice.clone(), matrix: base.matrix.pow(k.unsigned_abs()) }
    }
}

/// Eichler transvection `x -> x + (x.v) w - (x.w) v - (w.w)/2 (x.v) v` for an
/// isotropic `v` and `w` orthogonal to it. It is a unipotent isometry fixing
/// `v`; the result is certified, so non-integral data is reported as an error.
pub fn eichler_transvection(v: &LatticeVector, w: &LatticeVector) -> Result<Isometry> {
    if !v.square().is_zero() {
        return Err(Error::InvalidArgument("transvection needs an isotropic vector".into()));
    }
    if !v.pair(w)?.is_zero() {
        return Err(Error::InvalidArgument("transvection needs w orthogonal to v".into()));
    }
    let l = v.lattice();
    let half_ww = w.square() / BigRational::from_integer(2.into());
    let cols: Vec<Vec<BigRational>> = (0..l.rank())
        .map(|j| {
            let x = l.basis_vector(j);
            let xv = x.pair(v).unwrap();
            let xw = x.pair(w).unwrap();
            (0..l.rank())
                .map(|i| &x.coords[i] + &xv * &w.coords[i] - &xw * &v.coords[i] - &half_ww * &xv * &v.coords[i])
                .collect()
        })
        .collect();
    let m = RatMatrix::from_columns(&cols).expect("square").to_integer().ok_or(Error::NotIntegral)?;
    Isometry::certify(m, l)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    fn swap12(l: &Lattice) -> Isometry {
        let n = l.rank();
        let m = IntMatrix::from_fn(n, n, |i, j| {
            let src = match j {
                1 => 2,
                2 => 1,
                _ => j,
            };
            if i == src {
                BigInt::one()
            } else {
                BigInt::zero()
            }
        });
        Isometry::certify(m, l).unwrap()
    }

    // reflection in e0 - e1 - e2 - e3 written out by hand
    fn cremona(l: &Lattice) -> Isometry {
        let n = l.rank();
        let mut rows = IntMatrix::identity(n).to_rows();
        let block = [[2, 1, 1, 1], [-1, 0, -1, -1], [-1, -1, 0, -1], [-1, -1, -1, 0]];
        for i in 0..4 {
            for j in 0..4 {
                rows[i][j] = BigInt::from(block[i][j]);
            }
        }
        Isometry::certify(IntMatrix::from_rows(rows).unwrap(), l).unwrap()
    }

    #[test]
    fn lorentzian_basics() {
        let l = Lattice::lorentzian(1).unwrap();
        assert_eq!(l.gram(), &IntMatrix::from_i64(&[vec![1, 0], vec![0, -1]]).unwrap());
        let l10 = Lattice::lorentzian(10).unwrap();
        assert_eq!(l10.rank(), 11);
        assert_eq!(l10.signature(), (1, 10));
        assert!(matches!(Lattice::lorentzian(0), Err(Error::DegenerateSignature(0))));
        let a = l.vector_from_i64(&[1, 1]).unwrap();
        let b = l.vector_from_i64(&[1, -1]).unwrap();
        assert_eq!(a.pair(&b).unwrap(), q(2));
    }

    #[test]
    fn pairings_on_z_1_10() {
        let l = Lattice::lorentzian(10).unwrap();
        assert_eq!(l.basis_vector(1).square(), q(-1));
        assert_eq!(l.basis_vector(0).pair(&l.basis_vector(1)).unwrap(), q(0));
        let mut k = vec![1i64; 11];
        k[0] = -3;
        assert_eq!(l.vector_from_i64(&k).unwrap().square(), q(-1));
    }

    #[test]
    fn mismatched_lattices_are_rejected() {
        let a = Lattice::lorentzian(2).unwrap();
        let b = Lattice::lorentzian(2).unwrap();
        assert!(matches!(a.basis_vector(0).pair(&b.basis_vector(0)), Err(Error::LatticeMismatch)));
    }

    #[test]
    fn certification() {
        let l = Lattice::lorentzian(2).unwrap();
        assert!(Isometry::certify(IntMatrix::identity(3), &l).is_ok());
        swap12(&l);
        let scaled = IntMatrix::from_i64(&[vec![2, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]).unwrap();
        assert!(matches!(Isometry::certify(scaled, &l), Err(Error::NotUnimodular { .. })));
        let shear = IntMatrix::from_i64(&[vec![1, 1, 0], vec![0, 1, 0], vec![0, 0, 1]]).unwrap();
        assert!(matches!(Isometry::certify(shear, &l), Err(Error::FormNotPreserved { row: 0, col: 1 })));
    }

    #[test]
    fn group_operations() {
        let l = Lattice::lorentzian(3).unwrap();
        let c = cremona(&l);
        assert!(c.power(2).is_identity());
        let g = c.compose(&swap12(&l)).unwrap().compose(&cremona(&l).compose(&swap12(&l)).unwrap()).unwrap();
        assert!(g.compose(&g.inverse()).unwrap().is_identity());
        assert_eq!(g.power(-3), g.inverse().power(3));
    }

    #[test]
    fn transvection_is_unipotent_and_fixes_its_vector() {
        let l = Lattice::lorentzian(2).unwrap();
        let v = l.vector_from_i64(&[1, 1, 0]).unwrap();
        let w = l.vector_from_i64(&[0, 0, 2]).unwrap();
        let e = eichler_transvection(&v, &w).unwrap();
        assert_eq!(e.apply(&v).unwrap(), v);
        let minus_id = e.matrix().sub(&IntMatrix::identity(3));
        assert!(minus_id.pow(3).is_zero());
        assert!(!minus_id.is_zero());
    }

    #[test]
    fn primitive_and_rays() {
        let l = Lattice::lorentzian(2).unwrap();
        let v = l.vector(vec![BigRational::new(2.into(), 3.into()), q(0), BigRational::new((-4).into(), 3.into())]).unwrap();
        let p = v.primitive();
        assert_eq!(p, l.vector_from_i64(&[1, 0, -2]).unwrap());
        assert!(v.same_ray(&p));
        assert!(!v.same_ray(&p.neg()));
    }

    fn word_strategy() -> impl Strategy<Value = Vec<u8>> {
        prop::collection::vec(0u8..3, 0..12)
    }

    fn isometry_from_word(l: &Lattice, word: &[u8]) -> Isometry {
        let gens = [cremona(l), swap12(l), {
            // swap of e3, e4
            let n = l.rank();
            let m = IntMatrix::from_fn(n, n, |i, j| {
                let src = match j {
                    3 => 4,
                    4 => 3,
                    _ => j,
                };
                if i == src {
                    BigInt::one()
                } else {
                    BigInt::zero()
                }
            });
            Isometry::certify(m, l).unwrap()
        }];
        word.iter().fold(Isometry::identity(l), |acc, &k| acc.compose(&gens[k as usize]).unwrap())
    }

    proptest! {
        #[test]
        fn isometries_preserve_pairings(word in word_strategy(), v in prop::collection::vec(-5i64..=5, 5), w in prop::collection::vec(-5i64..=5, 5)) {
            let l = Lattice::lorentzian(4).unwrap();
            let g = isometry_from_word(&l, &word);
            let v = l.vector_from_i64(&v).unwrap();
            let w = l.vector_from_i64(&w).unwrap();
            prop_assert_eq!(g.apply(&v).unwrap().pair(&g.apply(&w).unwrap()).unwrap(), v.pair(&w).unwrap());
        }

        #[test]
        fn certification_closed_under_inverse_and_square(word in word_strategy()) {
            let l = Lattice::lorentzian(4).unwrap();
            let g = isometry_from_word(&l, &word);
            prop_assert!(Isometry::certify(g.inverse().matrix().clone(), &l).is_ok());
            prop_assert!(Isometry::certify(g.power(2).matrix().clone(), &l).is_ok());
        }

        #[test]
        fn non_isometries_stay_rejected_after_inversion(word in word_strategy(), a in 1i64..4) {
            // g composed with a shear is unimodular but not an isometry
            let l = Lattice::lorentzian(4).unwrap();
            let g = isometry_from_word(&l, &word);
            let mut shear = IntMatrix::identity(5);
            shear[(1, 2)] = BigInt::from(a);
            let m = g.matrix().mul(&shear);
            prop_assert!(Isometry::certify(m, &l).is_err());
        }

        #[test]
        fn signature_is_invariant_under_base_change(word in word_strategy(), a in -3i64..=3) {
            let l = Lattice::lorentzian(4).unwrap();
            let mut shear = IntMatrix::identity(5);
            shear[(0, 3)] = BigInt::from(a);
            let p = isometry_from_word(&l, &word).matrix().mul(&shear);
            let conj = p.transpose().mul(l.gram()).mul(&p);
            prop_assert_eq!(Lattice::new(conj).unwrap().signature(), (1, 4));
        }
    }
}
