//! The real number field `Q(lambda)` for an algebraic real `lambda`.
//!
//! Elements are polynomials in `lambda` of degree below the field degree,
//! reduced modulo the defining polynomial. Signs are decided exactly by
//! interval evaluation at a refined isolating interval for `lambda`.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::algebraic::AlgebraicReal;
use crate::matrix::{berkowitz, Field, RatMatrix};
use crate::poly::{IntPolynomial, QPoly};
use crate::sturm::SturmSequence;

/// An element of `Q(lambda)`, stored as its reduced polynomial in `lambda`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct NfElem(QPoly);

impl NfElem {
    pub fn poly(&self) -> &QPoly {
        &self.0
    }

    /// Coefficients of `1, lambda, lambda^2, ...`, padded to `degree`.
    pub fn coefficients(&self, degree: usize) -> Vec<BigRational> {
        (0..degree).map(|i| self.0.coeff(i)).collect()
    }

    pub fn is_rational(&self) -> bool {
        self.0.degree().unwrap_or(0) == 0
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        self.is_rational().then(|| self.0.coeff(0))
    }
}

/// `Q(lambda)` for `lambda` a root of an irreducible polynomial.
///
/// Irreducibility is the caller's responsibility; the residual factor of an
/// isometry's characteristic polynomial is irreducible whenever the Salem
/// contract checks pass.
#[derive(Clone, Debug)]
pub struct NumberField {
    modulus: QPoly,
    generator: AlgebraicReal,
    // generator refined once up front so that most sign queries are cheap
    refined: AlgebraicReal,
}

impl NumberField {
    pub fn new(generator: AlgebraicReal) -> Self {
        let modulus = generator.poly().to_rational().monic();
        let target = BigRational::new(BigInt::one(), BigInt::one() << 80);
        let refined = generator.clone().refined(&target);
        NumberField { modulus, generator, refined }
    }

    /// The field `Q` itself, presented as `Q(1)`.
    pub fn rationals() -> Self {
        Self::new(AlgebraicReal::from_integer(1))
    }

    pub fn degree(&self) -> usize {
        self.modulus.degree().unwrap_or(0)
    }

    pub fn generator(&self) -> &AlgebraicReal {
        &self.generator
    }

    pub fn modulus(&self) -> &QPoly {
        &self.modulus
    }

    /// `lambda` as a field element.
    pub fn lambda(&self) -> NfElem {
        self.reduce(QPoly::new(vec![BigRational::zero(), BigRational::one()]))
    }

    pub fn reduce(&self, p: QPoly) -> NfElem {
        if self.degree() == 0 {
            return NfElem(p);
        }
        NfElem(p.rem(&self.modulus))
    }

    pub fn from_coefficients(&self, coeffs: Vec<BigRational>) -> NfElem {
        self.reduce(QPoly::new(coeffs))
    }

    pub fn from_integer(&self, n: &BigInt) -> NfElem {
        NfElem(QPoly::constant(BigRational::from_integer(n.clone())))
    }

    pub fn pow(&self, a: &NfElem, mut k: u64) -> NfElem {
        let mut base = a.clone();
        let mut acc = self.one();
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            k >>= 1;
            if k > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// Enclosure of `a(lambda)` for `lambda` in `[lo, hi]`.
    fn enclose(a: &QPoly, lo: &BigRational, hi: &BigRational) -> (BigRational, BigRational) {
        let mut acc = (BigRational::zero(), BigRational::zero());
        for c in a.coeffs().iter().rev() {
            let prods = [&acc.0 * lo, &acc.0 * hi, &acc.1 * lo, &acc.1 * hi];
            let mn = prods.iter().min().unwrap().clone();
            let mx = prods.iter().max().unwrap().clone();
            acc = (mn + c, mx + c);
        }
        acc
    }

    /// Exact sign of `a` as a real number.
    pub fn sign(&self, a: &NfElem) -> Ordering {
        if a.0.is_zero() {
            return Ordering::Equal;
        }
        if let Some(q) = a.as_rational() {
            return q.cmp(&BigRational::zero());
        }
        let mut g = self.refined.clone();
        loop {
            let (lo, hi) = Self::enclose(&a.0, g.lo(), g.hi());
            if lo.is_positive() {
                return Ordering::Greater;
            }
            if hi.is_negative() {
                return Ordering::Less;
            }
            if g.is_exact() {
                return Ordering::Equal;
            }
            if g.width() < BigRational::new(BigInt::one(), BigInt::one() << 2000) {
                // a non-zero reduced element vanishing at lambda means the
                // modulus was reducible; decide via the gcd
                let gcd = a.0.gcd(&self.modulus);
                if gcd.degree().unwrap_or(0) > 0
                    && SturmSequence::new(&gcd).count_roots_closed(g.lo(), g.hi()) == 1
                {
                    return Ordering::Equal;
                }
            }
            g.bisect();
        }
    }

    pub fn is_positive(&self, a: &NfElem) -> bool {
        self.sign(a) == Ordering::Greater
    }

    pub fn to_f64(&self, a: &NfElem) -> f64 {
        self.approximate(a, 60).to_f64_lossy()
    }

    /// Rational approximation of `a(lambda)` with error below `2^-bits`
    /// relative to the magnitude of the coefficients.
    pub fn approximate(&self, a: &NfElem, bits: u32) -> BigRational {
        let mut g = self.refined.clone();
        let scale: BigRational = a.0.coeffs().iter().map(|c| c.abs()).sum::<BigRational>() + BigRational::one();
        let degree_scale = BigRational::from_integer(BigInt::from(self.degree().max(1)));
        let target = BigRational::new(BigInt::one(), BigInt::one() << (bits + 8));
        loop {
            let (lo, hi) = Self::enclose(&a.0, g.lo(), g.hi());
            if (&hi - &lo) <= &target * &scale || g.is_exact() {
                return (lo + hi) / BigRational::from_integer(BigInt::from(2));
            }
            let w = g.width() / &degree_scale;
            g.refine_to(&(w / BigRational::from_integer(BigInt::from(16))));
        }
    }

    /// Matrix of multiplication by `a` on the basis `1, lambda, ...`.
    fn multiplication_matrix(&self, a: &NfElem) -> RatMatrix {
        let d = self.degree();
        let cols: Vec<Vec<BigRational>> = (0..d)
            .map(|j| {
                let mut basis = vec![BigRational::zero(); j + 1];
                basis[j] = BigRational::one();
                let prod = self.mul(a, &NfElem(QPoly::new(basis)));
                prod.coefficients(d)
            })
            .collect();
        RatMatrix::from_columns(&cols).unwrap_or_else(|| RatMatrix::zeros(0, 0))
    }

    /// The element as a standalone algebraic real: its defining polynomial
    /// is the square-free part of its characteristic polynomial over `Q`,
    /// which is its minimal polynomial.
    pub fn to_algebraic_real(&self, a: &NfElem) -> AlgebraicReal {
        if let Some(q) = a.as_rational() {
            return AlgebraicReal::from_rational(&q);
        }
        let mut desc = berkowitz(&self.multiplication_matrix(a));
        desc.reverse();
        let poly: IntPolynomial = QPoly::new(desc).square_free().to_primitive_integer();
        let sturm = SturmSequence::new(&poly.to_rational());
        let mut g = self.refined.clone();
        loop {
            let (lo, hi) = Self::enclose(&a.0, g.lo(), g.hi());
            if sturm.count_roots_closed(&lo, &hi) == 1 {
                return AlgebraicReal::new(poly, lo, hi).expect("isolating interval verified by Sturm count");
            }
            g.bisect();
        }
    }

    /// Clears denominators of a list of elements: returns the positive
    /// integer `l` such that `l * a_i` has integral coefficients for all `i`.
    pub fn common_denominator(&self, elems: &[NfElem]) -> BigInt {
        elems
            .iter()
            .flat_map(|e| e.0.coeffs().iter())
            .fold(BigInt::one(), |l, c| l.lcm(c.denom()))
    }

    /// Gcd of all integer coefficients of integral elements.
    pub fn content(&self, elems: &[NfElem]) -> BigInt {
        elems
            .iter()
            .flat_map(|e| e.0.coeffs().iter())
            .fold(BigInt::zero(), |g, c| g.gcd(c.numer()))
    }

    pub fn scale(&self, a: &NfElem, q: &BigRational) -> NfElem {
        NfElem(a.0.scale(q))
    }
}

trait LossyF64 {
    fn to_f64_lossy(&self) -> f64;
}

impl LossyF64 for BigRational {
    fn to_f64_lossy(&self) -> f64 {
        num_traits::ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
}

impl Field for NumberField {
    type Elem = NfElem;

    fn zero(&self) -> NfElem {
        NfElem(QPoly::zero())
    }
    fn one(&self) -> NfElem {
        NfElem(QPoly::constant(BigRational::one()))
    }
    fn is_zero(&self, a: &NfElem) -> bool {
        a.0.is_zero()
    }
    fn add(&self, a: &NfElem, b: &NfElem) -> NfElem {
        NfElem(a.0.add(&b.0))
    }
    fn sub(&self, a: &NfElem, b: &NfElem) -> NfElem {
        NfElem(a.0.sub(&b.0))
    }
    fn mul(&self, a: &NfElem, b: &NfElem) -> NfElem {
        if a.is_rational() {
            return NfElem(b.0.scale(&a.0.coeff(0)));
        }
        if b.is_rational() {
            return NfElem(a.0.scale(&b.0.coeff(0)));
        }
        self.reduce(a.0.mul(&b.0))
    }
    fn neg(&self, a: &NfElem) -> NfElem {
        NfElem(a.0.neg())
    }
    fn inv(&self, a: &NfElem) -> NfElem {
        assert!(!a.0.is_zero(), "inverse of zero in Q(lambda)");
        if let Some(q) = a.as_rational() {
            return NfElem(QPoly::constant(q.recip()));
        }
        let (g, s, _) = a.0.ext_gcd(&self.modulus);
        assert_eq!(g.degree(), Some(0), "modulus is reducible: element {a:?} is a zero divisor");
        self.reduce(s)
    }
    fn from_rational(&self, q: &BigRational) -> NfElem {
        NfElem(QPoly::constant(q.clone()))
    }
}
