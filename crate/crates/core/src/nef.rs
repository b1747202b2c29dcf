//! Leading eigenvector rays, power iteration, and the invariant splitting.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::algebraic::AlgebraicReal;
use crate::error::{Error, Result};
use crate::lattice::{Isometry, Lattice, LatticeVector};
use crate::matrix::{inertia, kernel, rank, Field, IntMatrix, RatMatrix, Rationals};
use crate::number_field::{NfElem, NumberField};
use crate::poly::IntPolynomial;
use crate::spectral::{invariant_exponents, spectral_data, EntropyClass, SpectralData};

/// A class with coordinates in `Q(lambda)`.
#[derive(Clone, Debug)]
pub struct NumberFieldVector {
    field: Arc<NumberField>,
    lattice: Lattice,
    coords: Vec<NfElem>,
}

impl NumberFieldVector {
    pub fn new(field: Arc<NumberField>, lattice: Lattice, coords: Vec<NfElem>) -> Result<Self> {
        if coords.len() != lattice.rank() {
            return Err(Error::DimensionMismatch { expected: lattice.rank(), found: coords.len() });
        }
        Ok(NumberFieldVector { field, lattice, coords })
    }

    /// A rational class viewed over `Q`.
    pub fn from_rational(v: &LatticeVector) -> Self {
        let field = Arc::new(NumberField::rationals());
        let coords = v.coords().iter().map(|c| field.from_rational(c)).collect();
        NumberFieldVector { field, lattice: v.lattice().clone(), coords }
    }

    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn coords(&self) -> &[NfElem] {
        &self.coords
    }

    pub fn lambda(&self) -> &AlgebraicReal {
        self.field.generator()
    }

    pub fn is_rational(&self) -> bool {
        self.coords.iter().all(NfElem::is_rational)
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| self.field.is_zero(c))
    }

    // the field in which both operands live; rational vectors embed anywhere
    fn common_field(&self, other: &NumberFieldVector) -> Result<Arc<NumberField>> {
        if self.lattice != other.lattice {
            return Err(Error::LatticeMismatch);
        }
        if self.field.modulus() == other.field.modulus() || other.is_rational() {
            Ok(self.field.clone())
        } else if self.is_rational() {
            Ok(other.field.clone())
        } else {
            Err(Error::InvalidArgument("classes live in different number fields".into()))
        }
    }

    pub fn pair(&self, other: &NumberFieldVector) -> Result<NfElem> {
        let k = self.common_field(other)?;
        Ok(pair_in(&k, &self.lattice, &self.coords, &other.coords))
    }

    pub fn pair_rational(&self, v: &LatticeVector) -> Result<NfElem> {
        if v.lattice() != &self.lattice {
            return Err(Error::LatticeMismatch);
        }
        let g = self.lattice.gram();
        let n = self.lattice.rank();
        let k = &self.field;
        let mut acc = k.zero();
        for i in 0..n {
            // (G v)_i is rational
            let gv: BigRational = (0..n)
                .filter(|&j| !g[(i, j)].is_zero())
                .map(|j| BigRational::from_integer(g[(i, j)].clone()) * &v.coords()[j])
                .sum();
            if !gv.is_zero() {
                acc = k.add(&acc, &k.scale(&self.coords[i], &gv));
            }
        }
        Ok(acc)
    }

    pub fn square(&self) -> NfElem {
        pair_in(&self.field, &self.lattice, &self.coords, &self.coords)
    }

    pub fn add(&self, other: &NumberFieldVector) -> Result<NumberFieldVector> {
        let k = self.common_field(other)?;
        let coords = self.coords.iter().zip(&other.coords).map(|(a, b)| k.add(a, b)).collect();
        Ok(NumberFieldVector { field: k, lattice: self.lattice.clone(), coords })
    }

    pub fn scale(&self, c: &NfElem) -> NumberFieldVector {
        let coords = self.coords.iter().map(|a| self.field.mul(a, c)).collect();
        NumberFieldVector { field: self.field.clone(), lattice: self.lattice.clone(), coords }
    }

    pub fn neg(&self) -> NumberFieldVector {
        let coords = self.coords.iter().map(|a| self.field.neg(a)).collect();
        NumberFieldVector { field: self.field.clone(), lattice: self.lattice.clone(), coords }
    }

    pub fn apply(&self, g: &Isometry) -> Result<NumberFieldVector> {
        if g.lattice() != &self.lattice {
            return Err(Error::LatticeMismatch);
        }
        let coords = apply_in(&self.field, g.matrix(), &self.coords);
        Ok(NumberFieldVector { field: self.field.clone(), lattice: self.lattice.clone(), coords })
    }

    /// `Some(c)` with `self = c * other` when the vectors are proportional.
    pub fn ratio_to(&self, other: &NumberFieldVector) -> Result<Option<NfElem>> {
        let k = self.common_field(other)?;
        Ok(proportionality(&k, &self.coords, &other.coords).map_err(|_| ()).ok().flatten())
    }

    /// Whether `self` and `other` span the same ray (positive ratio).
    pub fn same_ray(&self, other: &NumberFieldVector) -> Result<bool> {
        let k = self.common_field(other)?;
        Ok(match self.ratio_to(other)? {
            Some(c) => k.sign(&c) == Ordering::Greater,
            None => false,
        })
    }

    /// Clears denominators and the integer content of all coordinates, so
    /// the result lies in `Z[lambda]^rank` and is primitive in that sense.
    pub fn normalized(&self) -> NumberFieldVector {
        let k = &self.field;
        let den = k.common_denominator(&self.coords);
        let scaled: Vec<NfElem> =
            self.coords.iter().map(|c| k.scale(c, &BigRational::from_integer(den.clone()))).collect();
        let content = k.content(&scaled);
        let coords = if content.is_zero() {
            scaled
        } else {
            let inv = BigRational::new(BigInt::one(), content);
            scaled.iter().map(|c| k.scale(c, &inv)).collect()
        };
        NumberFieldVector { field: self.field.clone(), lattice: self.lattice.clone(), coords }
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.coords.iter().map(|c| self.field.to_f64(c)).collect()
    }

    /// Coordinates as rationals, if they all are.
    pub fn to_lattice_vector(&self) -> Option<LatticeVector> {
        let coords: Option<Vec<BigRational>> = self.coords.iter().map(NfElem::as_rational).collect();
        self.lattice.vector(coords?).ok()
    }
}

impl fmt::Display for NumberFieldVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", c.poly())?;
        }
        write!(f, ")")
    }
}

fn pair_in(k: &NumberField, lattice: &Lattice, u: &[NfElem], v: &[NfElem]) -> NfElem {
    let g = lattice.gram();
    let n = lattice.rank();
    let mut acc = k.zero();
    for i in 0..n {
        if k.is_zero(&u[i]) {
            continue;
        }
        let mut gv = k.zero();
        for j in 0..n {
            if !g[(i, j)].is_zero() && !k.is_zero(&v[j]) {
                gv = k.add(&gv, &k.scale(&v[j], &BigRational::from_integer(g[(i, j)].clone())));
            }
        }
        acc = k.add(&acc, &k.mul(&u[i], &gv));
    }
    acc
}

fn apply_in(k: &NumberField, m: &IntMatrix, v: &[NfElem]) -> Vec<NfElem> {
    let n = m.rows();
    (0..n)
        .map(|i| {
            let mut s = k.zero();
            for (j, vj) in v.iter().enumerate() {
                if !m[(i, j)].is_zero() && !k.is_zero(vj) {
                    s = k.add(&s, &k.scale(vj, &BigRational::from_integer(m[(i, j)].clone())));
                }
            }
            s
        })
        .collect()
}

// Ok(Some(c)) if a = c b; Ok(None) if not proportional; Err(index pair)
// witnessing the failure.
pub(crate) fn proportionality(
    k: &NumberField,
    a: &[NfElem],
    b: &[NfElem],
) -> std::result::Result<Option<NfElem>, (usize, usize)> {
    let pivot = match b.iter().position(|x| !k.is_zero(x)) {
        Some(p) => p,
        None => return Ok(None),
    };
    let c = k.div(&a[pivot], &b[pivot]);
    for i in 0..a.len() {
        if k.sub(&a[i], &k.mul(&c, &b[i])) != k.zero() {
            return Err((pivot, i));
        }
    }
    Ok(Some(c))
}

/// The eigenvector rays `L+` (eigenvalue `lambda`) and `L-` (eigenvalue
/// `1/lambda`), normalized to be content free in `Z[lambda]` and positive
/// against the lattice's reference positive class.
#[derive(Clone, Debug)]
pub struct LeadingRays {
    pub lambda: AlgebraicReal,
    pub plus: NumberFieldVector,
    pub minus: NumberFieldVector,
}

impl LeadingRays {
    /// `L = L+ + L-`.
    pub fn sum(&self) -> NumberFieldVector {
        self.plus.add(&self.minus).expect("same field and lattice")
    }
}

pub fn leading_eigenvectors(g: &Isometry) -> Result<LeadingRays> {
    let data = spectral_data(g)?;
    leading_eigenvectors_from(g, &data)
}

/// As [`leading_eigenvectors`] with the spectral data already at hand.
pub fn leading_eigenvectors_from(g: &Isometry, data: &SpectralData) -> Result<LeadingRays> {
    let lambda = match &data.class {
        EntropyClass::Null => return Err(Error::NotPositiveEntropy),
        EntropyClass::Positive(l) => l.clone(),
    };
    let field = Arc::new(NumberField::new(lambda.clone()));
    let lattice = g.lattice().clone();
    let h = lattice
        .positive_class()
        .ok_or_else(|| Error::ContractViolated("lattice has no positive class".into()))?;
    let ginv = g.inverse();
    let plus = eigen_ray(&field, g, data, &h)?;
    let minus = eigen_ray(&field, &ginv, data, &h)?;

    let k = &field;
    if !k.is_zero(&plus.square()) || !k.is_zero(&minus.square()) {
        return Err(Error::ContractViolated("leading rays are not isotropic".into()));
    }
    if k.sign(&plus.pair(&minus)?) != Ordering::Greater {
        return Err(Error::ContractViolated("L+ . L- is not positive".into()));
    }
    let sum = plus.add(&minus)?;
    if k.sign(&sum.square()) != Ordering::Greater {
        return Err(Error::ContractViolated("(L+ + L-)^2 is not positive".into()));
    }
    Ok(LeadingRays { lambda, plus, minus })
}

// Eigenvector of `g` for `lambda`, where the salem factor of `g` is `f` and
// the characteristic polynomial is `f * c`. For any integral `u`, the vector
// `(f(x) / (x - lambda))(M) c(M) u` is killed by `M - lambda`.
fn eigen_ray(
    field: &Arc<NumberField>,
    g: &Isometry,
    data: &SpectralData,
    h: &LatticeVector,
) -> Result<NumberFieldVector> {
    let k: &NumberField = field;
    let f = &data.split.salem_factor;
    let c = data.split.cyclotomic_product();
    let m = g.matrix();
    let n = g.rank();
    let lambda = k.lambda();

    // synthetic division f(x) = (x - lambda) q(x) over Q(lambda)
    let fc = f.coeffs();
    let d = fc.len() - 1;
    let mut q = vec![k.zero(); d];
    let mut carry = k.zero();
    for i in (1..=d).rev() {
        carry = k.add(&k.mul(&carry, &lambda), &k.from_rational(&BigRational::from_integer(fc[i].clone())));
        q[i - 1] = carry.clone();
    }

    let cm = poly_of_matrix(&c, m);
    let lattice = g.lattice();
    for start in std::iter::once(h.clone()).chain((0..n).map(|i| lattice.basis_vector(i))) {
        let u: Vec<BigInt> = start.to_integers().expect("integral start");
        let mut w = cm.mul_vec(&u);
        let mut v = vec![k.zero(); n];
        for qj in &q {
            for (vi, wi) in v.iter_mut().zip(&w) {
                if !wi.is_zero() {
                    *vi = k.add(vi, &k.scale(qj, &BigRational::from_integer(wi.clone())));
                }
            }
            w = m.mul_vec(&w);
        }
        if v.iter().all(|x| k.is_zero(x)) {
            continue;
        }
        let mv = apply_in(k, m, &v);
        let lv: Vec<NfElem> = v.iter().map(|x| k.mul(&lambda, x)).collect();
        if mv != lv {
            return Err(Error::ContractViolated("eigenvector check M v = lambda v failed".into()));
        }
        let vec = NumberFieldVector { field: field.clone(), lattice: lattice.clone(), coords: v }.normalized();
        let s = k.sign(&vec.pair_rational(h)?);
        return match s {
            Ordering::Greater => Ok(vec),
            Ordering::Less => Ok(vec.neg()),
            Ordering::Equal => Err(Error::ContractViolated("leading ray is orthogonal to a positive class".into())),
        };
    }
    // every start vector was killed, so no eigenvector was found at all
    Err(Error::EigenspaceDimensionNot1(0))
}

fn poly_of_matrix(p: &IntPolynomial, m: &IntMatrix) -> IntMatrix {
    let n = m.rows();
    p.coeffs()
        .iter()
        .rev()
        .fold(IntMatrix::zeros(n, n), |acc, c| acc.mul(m).add(&IntMatrix::identity(n).map(|x| x * c)))
}

/// Dimension of the `lambda`-eigenspace computed by Gaussian elimination
/// over `Q(lambda)`. Slower than [`leading_eigenvectors`]; used to audit the
/// simplicity of the leading eigenvalue.
pub fn leading_eigenspace_dimension(g: &Isometry, lambda: &AlgebraicReal) -> usize {
    let k = NumberField::new(lambda.clone());
    let l = k.lambda();
    let n = g.rank();
    let rows: Vec<Vec<NfElem>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let mij = k.from_integer(&g.matrix()[(i, j)]);
                    if i == j {
                        k.sub(&mij, &l)
                    } else {
                        mij
                    }
                })
                .collect()
        })
        .collect();
    kernel(&k, &rows, n).len()
}

/// Result of [`power_iterate`].
#[derive(Clone, Debug)]
pub struct PowerIteration {
    /// Unit vector (Euclidean norm in coordinates) along the limit ray.
    pub direction: Vec<f64>,
    pub iterations: usize,
    /// Estimated remaining angular error when the loop stopped.
    pub residual: f64,
    /// Angle to the exact `L+` ray, when requested.
    pub angle_to_exact: Option<f64>,
}

/// Iterates `v <- g v / lambda` from the class `b` until the estimated
/// distance to the limit ray drops below `tol`.
pub fn power_iterate(g: &Isometry, b: &LatticeVector, max_iter: usize, tol: f64) -> Result<PowerIteration> {
    power_iterate_with(g, b, max_iter, tol, false)
}

pub fn power_iterate_with(
    g: &Isometry,
    b: &LatticeVector,
    max_iter: usize,
    tol: f64,
    compare_exact: bool,
) -> Result<PowerIteration> {
    if b.lattice() != g.lattice() {
        return Err(Error::LatticeMismatch);
    }
    // written this way so that NaN is rejected too
    #[allow(clippy::neg_cmp_op_on_partial_ord)]
    if !(tol > 0.0) {
        return Err(Error::InvalidArgument("tolerance must be positive".into()));
    }
    let data = spectral_data(g)?;
    let lambda = match &data.class {
        EntropyClass::Null => return Err(Error::NotPositiveEntropy),
        EntropyClass::Positive(l) => l.clone(),
    };
    let h = g.lattice().positive_class().ok_or_else(|| Error::InvalidStartVector("no positive class".into()))?;
    if b.square() <= BigRational::zero() {
        return Err(Error::InvalidStartVector(format!("B^2 = {} is not positive", b.square())));
    }
    if b.pair(&h)? <= BigRational::zero() {
        return Err(Error::InvalidStartVector("B is not on the positive side of the cone".into()));
    }
    let lf = lambda.to_f64();
    let n = g.rank();
    let m: Vec<Vec<f64>> =
        (0..n).map(|i| (0..n).map(|j| g.matrix()[(i, j)].to_f64().unwrap_or(f64::NAN)).collect()).collect();
    let mut v: Vec<f64> = b.coords().iter().map(|c| c.to_f64().unwrap_or(f64::NAN)).collect();
    let mut dir = unit(&v);
    let mut residual = f64::INFINITY;
    for it in 1..=max_iter {
        v = (0..n).map(|i| (0..n).map(|j| m[i][j] * v[j]).sum::<f64>() / lf).collect();
        let next = unit(&v);
        let change = distance(&next, &dir);
        dir = next;
        // geometric tail: the remaining error is about change / (lambda - 1)
        residual = change / (lf - 1.0);
        if residual < tol / 10.0 {
            let angle_to_exact = if compare_exact { Some(angle_to(&dir, &leading_eigenvectors_from(g, &data)?.plus)) } else { None };
            return Ok(PowerIteration { direction: dir, iterations: it, residual, angle_to_exact });
        }
    }
    Err(Error::NoConvergence { iterations: max_iter, residual })
}

fn unit(v: &[f64]) -> Vec<f64> {
    let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    v.iter().map(|x| x / norm).collect()
}

fn distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt()
}

/// Angle between a float direction and an exact ray, evaluated from a
/// high-precision rational approximation of the ray.
pub fn angle_to(direction: &[f64], ray: &NumberFieldVector) -> f64 {
    let exact = unit(&ray.to_f64());
    let d = unit(direction);
    let chord = distance(&d, &exact);
    2.0 * (chord / 2.0).min(1.0).asin()
}

/// `NS_Q = V_g + V_{g^s = 1}`.
#[derive(Clone, Debug)]
pub struct SplittingBasis {
    pub v_g_basis: Vec<LatticeVector>,
    pub fixed_basis: Vec<LatticeVector>,
    pub s: u64,
    pub e: usize,
}

pub fn invariant_splitting(g: &Isometry) -> Result<SplittingBasis> {
    let data = spectral_data(g)?;
    let rays = leading_eigenvectors_from(g, &data)?;
    let (s, e) = invariant_exponents(g)?;
    let lattice = g.lattice();
    let n = g.rank();
    let m = g.matrix();

    let fm = poly_of_matrix(&data.split.salem_factor, m).to_rational();
    let v_g = rational_kernel(&fm);
    let ms = m.pow(s).sub(&IntMatrix::identity(n)).to_rational();
    let fixed = rational_kernel(&ms);
    let deg_f = data.split.salem_factor.degree().unwrap_or(0);
    if v_g.len() != deg_f {
        return Err(Error::SplittingFailed(format!("dim V_g = {}, expected {deg_f}", v_g.len())));
    }
    if fixed.len() != e {
        return Err(Error::SplittingFailed(format!("dim of the g^s-fixed space = {}, expected {e}", fixed.len())));
    }
    let combined: Vec<Vec<BigRational>> = v_g.iter().chain(&fixed).cloned().collect();
    if rank(&Rationals, &combined) != n {
        return Err(Error::SplittingFailed("the two subspaces do not span".into()));
    }
    let v_g: Vec<LatticeVector> = v_g.into_iter().map(|c| lattice.vector(c).expect("rank")).collect();
    let fixed: Vec<LatticeVector> = fixed.into_iter().map(|c| lattice.vector(c).expect("rank")).collect();
    let k = rays.plus.field();
    for v in &fixed {
        if !k.is_zero(&rays.plus.pair_rational(v)?) || !k.is_zero(&rays.minus.pair_rational(v)?) {
            return Err(Error::SplittingFailed(format!("fixed vector {v} is not orthogonal to L+ and L-")));
        }
        if g.power(s as i64).apply(v)? != *v {
            return Err(Error::SplittingFailed(format!("fixed vector {v} is moved by g^{s}")));
        }
    }
    let gram = RatMatrix::from_fn(fixed.len(), fixed.len(), |i, j| fixed[i].pair(&fixed[j]).unwrap());
    let (plus, _, _) = inertia(&gram);
    if plus != 0 {
        return Err(Error::SplittingFailed("the fixed space is not negative semi-definite".into()));
    }
    Ok(SplittingBasis { v_g_basis: v_g, fixed_basis: fixed, s, e })
}

fn rational_kernel(a: &RatMatrix) -> Vec<Vec<BigRational>> {
    let basis = kernel(&Rationals, &a.to_rows(), a.cols());
    // integral, primitive representatives read better
    basis
        .into_iter()
        .map(|v| {
            let den = v.iter().fold(BigInt::one(), |l, c| num_integer::Integer::lcm(&l, c.denom()));
            let ints: Vec<BigInt> = v.iter().map(|c| (c * BigRational::from_integer(den.clone())).to_integer()).collect();
            let g = ints.iter().fold(BigInt::zero(), |g, c| num_integer::Integer::gcd(&g, c));
            ints.into_iter().map(|c| BigRational::from_integer(c / &g)).collect()
        })
        .collect()
}

/// Indices of the curves `C` with `M . C < 0`.
pub fn check_nef_against(m: &NumberFieldVector, curves: &[LatticeVector]) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for (i, c) in curves.iter().enumerate() {
        if m.field().sign(&m.pair_rational(c)?) == Ordering::Less {
            out.push(i);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weyl::{coxeter_element_matrix, RootSystem};

    fn cox(n: usize) -> Isometry {
        coxeter_element_matrix(&RootSystem::new(n).unwrap(), None).unwrap()
    }

    #[test]
    fn coxeter_ten_rays() {
        let g = cox(10);
        let rays = leading_eigenvectors(&g).unwrap();
        let k = rays.plus.field();
        assert!(k.is_zero(&rays.plus.square()));
        assert!(k.is_zero(&rays.minus.square()));
        assert_eq!(k.sign(&rays.plus.pair(&rays.minus).unwrap()), Ordering::Greater);
        // g L+ = lambda L+
        let image = rays.plus.apply(&g).unwrap();
        assert_eq!(image.ratio_to(&rays.plus).unwrap(), Some(k.lambda()));
        // irrational: some coordinate ratio has degree >= 2
        assert!(!rays.plus.is_rational());
    }

    #[test]
    fn inverse_swaps_the_rays() {
        let g = cox(11);
        let a = leading_eigenvectors(&g).unwrap();
        let b = leading_eigenvectors(&g.inverse()).unwrap();
        assert!(b.plus.same_ray(&a.minus).unwrap());
        assert!(b.minus.same_ray(&a.plus).unwrap());
    }

    #[test]
    fn eigenspace_is_one_dimensional_by_elimination() {
        let g = cox(10);
        let rays = leading_eigenvectors(&g).unwrap();
        assert_eq!(leading_eigenspace_dimension(&g, &rays.lambda), 1);
    }

    #[test]
    fn null_entropy_is_rejected() {
        let l = Lattice::lorentzian(3).unwrap();
        assert!(matches!(leading_eigenvectors(&Isometry::identity(&l)), Err(Error::NotPositiveEntropy)));
        let e0 = l.basis_vector(0);
        assert!(matches!(power_iterate(&Isometry::identity(&l), &e0, 10, 1e-8), Err(Error::NotPositiveEntropy)));
    }

    #[test]
    fn power_iteration_converges_to_l_plus() {
        let g = cox(10);
        let e0 = g.lattice().basis_vector(0);
        let r = power_iterate_with(&g, &e0, 500, 1e-8, true).unwrap();
        assert!(r.iterations <= 500);
        assert!(r.angle_to_exact.unwrap() < 1e-8);
    }

    #[test]
    fn power_iteration_rejects_bad_start() {
        let g = cox(10);
        let e1 = g.lattice().basis_vector(1);
        assert!(matches!(power_iterate(&g, &e1, 10, 1e-8), Err(Error::InvalidStartVector(_))));
        let minus_e0 = g.lattice().basis_vector(0).neg();
        assert!(matches!(power_iterate(&g, &minus_e0, 10, 1e-8), Err(Error::InvalidStartVector(_))));
    }

    #[test]
    fn power_iteration_reports_non_convergence() {
        let g = cox(10);
        let e0 = g.lattice().basis_vector(0);
        assert!(matches!(power_iterate(&g, &e0, 3, 1e-12), Err(Error::NoConvergence { iterations: 3, .. })));
    }

    #[test]
    fn splitting_for_coxeter_ten() {
        let g = cox(10);
        let sp = invariant_splitting(&g).unwrap();
        assert_eq!(sp.v_g_basis.len(), 10);
        assert_eq!(sp.fixed_basis.len(), 1);
        let mut k = vec![1i64; 11];
        k[0] = -3;
        let kv = g.lattice().vector_from_i64(&k).unwrap();
        assert!(sp.fixed_basis[0].same_ray(&kv) || sp.fixed_basis[0].same_ray(&kv.neg()));
    }

    #[test]
    fn nef_checks() {
        let l = Lattice::lorentzian(1).unwrap();
        let e0 = NumberFieldVector::from_rational(&l.basis_vector(0));
        let curves = vec![l.basis_vector(1), l.vector_from_i64(&[1, -1]).unwrap()];
        assert!(check_nef_against(&e0, &curves).unwrap().is_empty());
        let e1 = NumberFieldVector::from_rational(&l.basis_vector(1));
        assert_eq!(check_nef_against(&e1, &curves[..1]).unwrap(), vec![0]);
    }

    #[test]
    fn l_plus_is_nef_against_simple_roots_and_exceptional_classes() {
        let rs = RootSystem::new(10).unwrap();
        let g = coxeter_element_matrix(&rs, None).unwrap();
        let rays = leading_eigenvectors(&g).unwrap();
        // L+ pairs to zero with K, so sign against roots is what it is;
        // record the exact outcome
        let roots: Vec<LatticeVector> = rs.simple_roots().to_vec();
        let violations = check_nef_against(&rays.plus, &roots).unwrap();
        let k = rays.plus.field();
        for (i, r) in roots.iter().enumerate() {
            let s = k.sign(&rays.plus.pair_rational(r).unwrap());
            assert_eq!(violations.contains(&i), s == Ordering::Less);
        }
        assert!(k.is_zero(&rays.plus.pair_rational(rs.canonical()).unwrap()));
    }
}
