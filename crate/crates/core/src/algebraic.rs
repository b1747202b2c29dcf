//! Real algebraic numbers as (defining polynomial, isolating interval).

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::matrix::{berkowitz, RatMatrix};
use crate::poly::{IntPolynomial, QPoly};
use crate::sturm::{isolate_roots, root_bound, SturmSequence};

/// Default refinement target for isolating intervals, `10^-12`.
pub fn default_tolerance() -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(10u64).pow(12))
}

/// A real root of a square-free integer polynomial, pinned down by an
/// interval `[lo, hi]` that contains exactly one root.
///
/// Either `lo == hi` (the number is that rational), or `lo < hi` and the
/// polynomial is non-zero at both endpoints, so it changes sign across the
/// interval. The polynomial is the minimal polynomial for every value the
/// crate derives from a Salem factor; in general it is only guaranteed to be
/// square-free.
#[derive(Clone, Debug)]
pub struct AlgebraicReal {
    poly: IntPolynomial,
    lo: BigRational,
    hi: BigRational,
}

impl AlgebraicReal {
    /// Validates that `[lo, hi]` isolates exactly one root of the
    /// square-free part of `poly`.
    pub fn new(poly: IntPolynomial, lo: BigRational, hi: BigRational) -> Result<Self> {
        if poly.degree().unwrap_or(0) == 0 {
            return Err(Error::InvalidArgument("defining polynomial must be non-constant".into()));
        }
        if lo > hi {
            return Err(Error::InvalidArgument("empty isolating interval".into()));
        }
        let poly = poly.square_free();
        let sturm = SturmSequence::new(&poly.to_rational());
        let n = sturm.count_roots_closed(&lo, &hi);
        if n != 1 {
            return Err(Error::InvalidArgument(format!("interval [{lo}, {hi}] contains {n} roots of {poly}")));
        }
        Ok(Self::normalized(poly, lo, hi))
    }

    // Caller guarantees exactly one root in [lo, hi] and a square-free poly.
    fn normalized(poly: IntPolynomial, lo: BigRational, hi: BigRational) -> Self {
        if poly.eval(&lo).is_zero() {
            return AlgebraicReal { poly, hi: lo.clone(), lo };
        }
        if poly.eval(&hi).is_zero() {
            return AlgebraicReal { poly, lo: hi.clone(), hi };
        }
        AlgebraicReal { poly, lo, hi }
    }

    pub fn from_rational(q: &BigRational) -> Self {
        let poly = IntPolynomial::new(vec![-q.numer().clone(), q.denom().clone()]).primitive();
        AlgebraicReal { poly, lo: q.clone(), hi: q.clone() }
    }

    pub fn from_integer(n: i64) -> Self {
        Self::from_rational(&BigRational::from_integer(n.into()))
    }

    /// All distinct real roots of `p`, increasing.
    pub fn real_roots(p: &IntPolynomial) -> Vec<AlgebraicReal> {
        let sf = p.square_free();
        let qp = sf.to_rational();
        let b = root_bound(&qp);
        isolate_roots(&qp, &-b.clone(), &b)
            .into_iter()
            .map(|(lo, hi)| AlgebraicReal { poly: sf.clone(), lo, hi })
            .collect()
    }

    /// Distinct real roots of `p` strictly greater than `threshold`.
    pub fn roots_above(p: &IntPolynomial, threshold: &BigRational) -> Vec<AlgebraicReal> {
        let sf = p.square_free();
        let qp = sf.to_rational();
        let b = root_bound(&qp);
        if &b <= threshold {
            return Vec::new();
        }
        isolate_roots(&qp, threshold, &b)
            .into_iter()
            .map(|(lo, hi)| AlgebraicReal { poly: sf.clone(), lo, hi })
            .collect()
    }

    pub fn poly(&self) -> &IntPolynomial {
        &self.poly
    }

    pub fn lo(&self) -> &BigRational {
        &self.lo
    }

    pub fn hi(&self) -> &BigRational {
        &self.hi
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    /// Exact rational value, when the defining polynomial is linear or the
    /// interval has collapsed onto a root.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.is_exact() {
            return Some(self.lo.clone());
        }
        if self.poly.degree() == Some(1) {
            let c = self.poly.coeffs();
            return Some(BigRational::new(-c[0].clone(), c[1].clone()));
        }
        None
    }

    /// Halves the isolating interval once.
    pub fn bisect(&mut self) {
        if self.is_exact() {
            return;
        }
        let m = (&self.lo + &self.hi) / BigRational::from_integer(BigInt::from(2));
        let pm = self.poly.eval(&m);
        if pm.is_zero() {
            self.lo = m.clone();
            self.hi = m;
            return;
        }
        let plo = self.poly.eval(&self.lo);
        if plo.is_positive() != pm.is_positive() {
            self.hi = m;
        } else {
            self.lo = m;
        }
    }

    pub fn refine_to(&mut self, width: &BigRational) {
        while self.width() > *width {
            self.bisect();
        }
    }

    pub fn refined(mut self, width: &BigRational) -> Self {
        self.refine_to(width);
        self
    }

    /// Closest `f64`, obtained by refining a copy to below double precision.
    pub fn to_f64(&self) -> f64 {
        let mut c = self.clone();
        let scale = c.lo.abs().max(c.hi.abs()).max(BigRational::one());
        let target = scale * BigRational::new(BigInt::one(), BigInt::one() << 60);
        c.refine_to(&target);
        let mid = (&c.lo + &c.hi) / BigRational::from_integer(BigInt::from(2));
        mid.to_f64().unwrap_or(f64::NAN)
    }

    /// Rational approximation within `width` of the true value.
    pub fn approximation(&self, width: &BigRational) -> BigRational {
        let c = self.clone().refined(width);
        (&c.lo + &c.hi) / BigRational::from_integer(BigInt::from(2))
    }

    pub fn cmp_rational(&self, q: &BigRational) -> Ordering {
        let mut c = self.clone();
        loop {
            if c.is_exact() {
                return c.lo.cmp(q);
            }
            if &c.hi < q {
                return Ordering::Less;
            }
            if &c.lo > q {
                return Ordering::Greater;
            }
            if c.poly.eval(q).is_zero() {
                // q lies in the interval and is a root; it is the only one
                return Ordering::Equal;
            }
            c.bisect();
        }
    }

    /// Exact equality: the intervals overlap and the gcd of the defining
    /// polynomials has a root in the overlap.
    pub fn equals(&self, other: &AlgebraicReal) -> bool {
        let lo = if self.lo > other.lo { &self.lo } else { &other.lo };
        let hi = if self.hi < other.hi { &self.hi } else { &other.hi };
        if lo > hi {
            return false;
        }
        let g = self.poly.to_rational().gcd(&other.poly.to_rational());
        if g.degree().unwrap_or(0) == 0 {
            return false;
        }
        SturmSequence::new(&g).count_roots_closed(lo, hi) == 1
    }

    pub fn compare(&self, other: &AlgebraicReal) -> Ordering {
        if self.equals(other) {
            return Ordering::Equal;
        }
        let (mut a, mut b) = (self.clone(), other.clone());
        loop {
            if a.hi < b.lo {
                return Ordering::Less;
            }
            if b.hi < a.lo {
                return Ordering::Greater;
            }
            if a.width() >= b.width() && !a.is_exact() {
                a.bisect();
            } else {
                b.bisect();
            }
        }
    }

    pub fn sign(&self) -> Ordering {
        self.cmp_rational(&BigRational::zero())
    }

    /// `self^k` for `k >= 1`. The defining polynomial is the square-free
    /// part of the characteristic polynomial of the k-th power of the
    /// companion matrix, i.e. the resultant `Res_y(p(y), x - y^k)` up to sign.
    pub fn pow(&self, k: u32) -> Result<AlgebraicReal> {
        if k == 0 {
            return Ok(Self::from_integer(1));
        }
        if let Some(q) = self.as_rational() {
            return Ok(Self::from_rational(&num_traits::pow(q, k as usize)));
        }
        let poly = power_polynomial(&self.poly, k);
        let sturm = SturmSequence::new(&poly.to_rational());
        let mut base = self.clone();
        loop {
            let (lo, hi) = interval_pow(&base.lo, &base.hi, k);
            if sturm.count_roots_closed(&lo, &hi) == 1 {
                return Ok(Self::normalized(poly, lo, hi));
            }
            base.bisect();
        }
    }

    /// `1 / self`; fails for zero.
    pub fn recip(&self) -> Result<AlgebraicReal> {
        if self.sign() == Ordering::Equal {
            return Err(Error::InvalidArgument("reciprocal of zero".into()));
        }
        if let Some(q) = self.as_rational() {
            return Ok(Self::from_rational(&q.recip()));
        }
        let mut c = self.clone();
        // shrink until the interval excludes zero
        while !((c.lo.is_positive() && c.hi.is_positive()) || (c.lo.is_negative() && c.hi.is_negative())) {
            c.bisect();
        }
        let poly = c.poly.reversed().primitive();
        Ok(Self::normalized(poly, c.hi.recip(), c.lo.recip()))
    }

    /// Positive real `q`-th root of a positive number.
    pub fn nth_root(&self, q: u32) -> Result<AlgebraicReal> {
        if self.sign() != Ordering::Greater {
            return Err(Error::InvalidArgument("root of a non-positive number".into()));
        }
        if q <= 1 {
            return Ok(self.clone());
        }
        let poly = self.poly.compose_power(q as usize).square_free();
        let sturm = SturmSequence::new(&poly.to_rational());
        let mut base = self.clone();
        while !base.lo.is_positive() {
            base.bisect();
        }
        loop {
            let prec = base.width().max(BigRational::new(BigInt::one(), BigInt::from(1u64) << 200)) / BigRational::from_integer(BigInt::from(4));
            let lo = rational_root_floor(&base.lo, q, &prec);
            let hi = rational_root_ceil(&base.hi, q, &prec);
            if sturm.count_roots_closed(&lo, &hi) == 1 {
                return Ok(Self::normalized(poly, lo, hi));
            }
            base.bisect();
        }
    }
}

impl fmt::Display for AlgebraicReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(q) = self.as_rational() {
            return write!(f, "{q}");
        }
        write!(f, "root of {} in [{}, {}]", self.poly, self.lo, self.hi)
    }
}

/// Square-free polynomial whose roots include the k-th powers of the roots
/// of `p`, computed as the characteristic polynomial of `C^k` where `C` is
/// the companion matrix of `p`.
pub fn power_polynomial(p: &IntPolynomial, k: u32) -> IntPolynomial {
    let qp = p.to_rational().monic();
    let d = qp.degree().unwrap_or(0);
    let companion = RatMatrix::from_fn(d, d, |i, j| {
        if j + 1 == d {
            -qp.coeff(i)
        } else if i == j + 1 {
            BigRational::one()
        } else {
            BigRational::zero()
        }
    });
    let ck = companion.pow(k as u64);
    let mut desc = berkowitz(&ck);
    desc.reverse();
    QPoly::new(desc).square_free().to_primitive_integer()
}

fn interval_pow(lo: &BigRational, hi: &BigRational, k: u32) -> (BigRational, BigRational) {
    let a = num_traits::pow(lo.clone(), k as usize);
    let b = num_traits::pow(hi.clone(), k as usize);
    if lo.is_negative() && hi.is_positive() && k.is_multiple_of(2) {
        (BigRational::zero(), a.max(b))
    } else if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

// Largest-ish rational r >= 0 with r^q <= x, within `prec` of the true root.
fn rational_root_floor(x: &BigRational, q: u32, prec: &BigRational) -> BigRational {
    let (lo, _) = root_bracket(x, q, prec);
    lo
}

fn rational_root_ceil(x: &BigRational, q: u32, prec: &BigRational) -> BigRational {
    let (_, hi) = root_bracket(x, q, prec);
    hi
}

fn root_bracket(x: &BigRational, q: u32, prec: &BigRational) -> (BigRational, BigRational) {
    let two = BigRational::from_integer(BigInt::from(2));
    let mut lo = BigRational::zero();
    let mut hi = x.clone().max(BigRational::one());
    while &(&hi - &lo) > prec {
        let m = (&lo + &hi) / &two;
        if num_traits::pow(m.clone(), q as usize) <= *x {
            lo = m;
        } else {
            hi = m;
        }
    }
    (lo, hi)
}
