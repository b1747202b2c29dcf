//! Characteristic polynomials, cyclotomic peeling, Salem factors and entropy.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::algebraic::{default_tolerance, AlgebraicReal};
use crate::error::{Error, Result};
use crate::lattice::Isometry;
use crate::matrix::berkowitz;
use crate::poly::IntPolynomial;
use crate::sturm::SturmSequence;

/// `det(xI - M)` as an ascending coefficient list.
pub fn char_poly(g: &Isometry) -> IntPolynomial {
    let mut desc = berkowitz(g.matrix());
    desc.reverse();
    IntPolynomial::new(desc)
}

pub fn euler_phi(k: u64) -> u64 {
    let mut n = k;
    let mut result = k;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

fn mobius(k: u64) -> i8 {
    let mut n = k;
    let mut sign = 1i8;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

/// The k-th cyclotomic polynomial, as `prod_{d | k} (x^d - 1)^{mu(k/d)}`.
pub fn cyclotomic(k: u64) -> IntPolynomial {
    assert!(k >= 1, "cyclotomic index must be positive");
    let mut num = IntPolynomial::one();
    let mut den = IntPolynomial::one();
    for d in (1..=k).filter(|d| k.is_multiple_of(*d)) {
        match mobius(k / d) {
            1 => num = num.mul(&IntPolynomial::binomial(d as usize, 1)),
            -1 => den = den.mul(&IntPolynomial::binomial(d as usize, 1)),
            _ => {}
        }
    }
    num.exact_div_monic(&den).expect("cyclotomic quotient is exact")
}

/// `P = salem_factor * prod Phi_k^m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SalemSplit {
    pub salem_factor: IntPolynomial,
    /// `(k, multiplicity)`, increasing in `k`.
    pub cyclo_part: Vec<(u64, usize)>,
    /// lcm of the peeled indices; 1 when nothing was peeled.
    pub s_exponent: u64,
    /// Total degree of the cyclotomic part.
    pub e_exponent: usize,
}

impl SalemSplit {
    pub fn cyclotomic_product(&self) -> IntPolynomial {
        self.cyclo_part
            .iter()
            .fold(IntPolynomial::one(), |acc, &(k, m)| acc.mul(&cyclotomic(k).pow(m)))
    }

    pub fn recompose(&self) -> IntPolynomial {
        self.salem_factor.mul(&self.cyclotomic_product())
    }

    pub fn is_null_entropy(&self) -> bool {
        self.salem_factor.degree() == Some(0)
    }
}

/// Divides out every cyclotomic factor of a monic integer polynomial with
/// constant term +-1. Indices up to `2 deg^2` are tried, which is enough
/// because `phi(k) >= sqrt(k / 2)`.
pub fn peel_cyclotomic(p: &IntPolynomial) -> Result<SalemSplit> {
    if !p.is_monic() {
        return Err(Error::NonMonic);
    }
    let c0 = p.coeff(0);
    if c0.abs() != BigInt::one() {
        return Err(Error::BadConstantTerm(c0.to_string()));
    }
    let deg = p.degree().unwrap_or(0) as u64;
    let mut rest = p.clone();
    let mut parts = Vec::new();
    for k in 1..=(2 * deg * deg).max(1) {
        let remaining = rest.degree().unwrap_or(0) as u64;
        if remaining == 0 {
            break;
        }
        if euler_phi(k) > remaining {
            continue;
        }
        let phi = cyclotomic(k);
        let mut m = 0;
        while let Some(q) = rest.exact_div_monic(&phi) {
            rest = q;
            m += 1;
        }
        if m > 0 {
            parts.push((k, m));
        }
    }
    let s = parts.iter().fold(1u64, |l, &(k, _)| l.lcm(&k));
    let e = parts.iter().map(|&(k, m)| euler_phi(k) as usize * m).sum();
    Ok(SalemSplit { salem_factor: rest, cyclo_part: parts, s_exponent: s, e_exponent: e })
}

#[derive(Clone, Debug)]
pub enum EntropyClass {
    Null,
    Positive(AlgebraicReal),
}

impl EntropyClass {
    pub fn is_positive(&self) -> bool {
        matches!(self, EntropyClass::Positive(_))
    }

    pub fn lambda(&self) -> Option<&AlgebraicReal> {
        match self {
            EntropyClass::Null => None,
            EntropyClass::Positive(l) => Some(l),
        }
    }
}

/// Everything the spectral layer knows about one isometry.
#[derive(Clone, Debug)]
pub struct SpectralData {
    pub char_poly: IntPolynomial,
    pub split: SalemSplit,
    pub class: EntropyClass,
}

/// Checks the residual factor of a hyperbolic isometry: reciprocal,
/// square-free, exactly one real root above 1. Returns that root.
///
/// Given these, the residual is irreducible: a factor not vanishing at
/// `lambda` or `1/lambda` would have all its roots on the unit circle and
/// so be cyclotomic, which peeling has excluded.
pub fn check_salem_contract(f: &IntPolynomial) -> Result<AlgebraicReal> {
    if f.degree().unwrap_or(0) < 2 {
        return Err(Error::SalemContractViolated(format!("residual factor {f} has degree below 2")));
    }
    if !f.is_palindromic() {
        return Err(Error::SalemContractViolated(format!("residual factor {f} is not reciprocal")));
    }
    if !f.is_square_free() {
        return Err(Error::SalemContractViolated(format!("residual factor {f} has a repeated root")));
    }
    let above = SturmSequence::new(&f.to_rational()).count_roots_above(&BigRational::one());
    if above != 1 {
        return Err(Error::SalemContractViolated(format!("residual factor {f} has {above} real roots above 1")));
    }
    Ok(AlgebraicReal::roots_above(f, &BigRational::one()).remove(0))
}

pub fn spectral_data(g: &Isometry) -> Result<SpectralData> {
    spectral_data_with_tolerance(g, &default_tolerance())
}

/// As [`spectral_data`], refining `lambda` to an interval of width at most
/// `tol`.
pub fn spectral_data_with_tolerance(g: &Isometry, tol: &BigRational) -> Result<SpectralData> {
    let (plus, minus) = g.lattice().signature();
    if plus != 1 {
        return Err(Error::SignatureUnsupported { plus, minus });
    }
    let cp = char_poly(g);
    let split = peel_cyclotomic(&cp)?;
    let class = if split.is_null_entropy() {
        EntropyClass::Null
    } else {
        let lambda = check_salem_contract(&split.salem_factor)?.refined(tol);
        EntropyClass::Positive(lambda)
    };
    Ok(SpectralData { char_poly: cp, split, class })
}

pub fn classify_entropy(g: &Isometry) -> Result<EntropyClass> {
    Ok(spectral_data(g)?.class)
}

/// `x^10 + x^9 - x^7 - x^6 - x^5 - x^4 - x^3 + x + 1`.
pub fn lehmer_polynomial() -> IntPolynomial {
    IntPolynomial::from_i64(&[1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1])
}

/// Largest real root of the Lehmer polynomial, about 1.17628081826.
pub fn lehmer_number() -> AlgebraicReal {
    AlgebraicReal::roots_above(&lehmer_polynomial(), &BigRational::one()).remove(0)
}

/// Exact comparison of `lambda` against the Lehmer number.
pub fn lehmer_comparison(lambda: &AlgebraicReal) -> Ordering {
    lambda.compare(&lehmer_number())
}

/// `lambda >= lambda_Lehmer`, decided exactly.
pub fn lehmer_check(lambda: &AlgebraicReal) -> bool {
    lehmer_comparison(lambda) != Ordering::Less
}

/// `(s, e)`: `g^s` acts trivially on the cyclotomic part, which has
/// degree `e`. The claim is re-verified on the characteristic polynomial of
/// `g^s`.
pub fn invariant_exponents(g: &Isometry) -> Result<(u64, usize)> {
    let data = spectral_data(g)?;
    if !data.class.is_positive() {
        return Err(Error::NotPositiveEntropy);
    }
    let (s, e) = (data.split.s_exponent, data.split.e_exponent);
    let gs = g.power(s as i64);
    let again = peel_cyclotomic(&char_poly(&gs))?;
    let expected: Vec<(u64, usize)> = if e == 0 { vec![] } else { vec![(1, e)] };
    if again.cyclo_part != expected {
        return Err(Error::VerificationFailed(format!(
            "cyclotomic part of g^{s} is {:?}, expected {:?}",
            again.cyclo_part, expected
        )));
    }
    Ok((s, e))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AuditResult {
    Verified,
    Unchecked,
}

/// Degree above which the irreducibility audit does not run.
pub const AUDIT_MAX_DEGREE: usize = 12;
const AUDIT_BUDGET: u128 = 4_000_000;

/// Searches for a monic integer factor of `f` of every degree up to
/// `deg f / 2` by Kronecker interpolation: a factor `h` satisfies
/// `h(x_i) | f(x_i)`, and `|h(x_i)|` is bounded through the Mignotte bound
/// on its coefficients. Only monic `f` is supported (the Salem case).
pub fn irreducibility_audit(f: &IntPolynomial) -> Result<AuditResult> {
    let deg = f.degree().unwrap_or(0);
    if deg < 2 {
        return Err(Error::InvalidArgument(format!("audit needs degree >= 2, got {f}")));
    }
    if !f.is_monic() {
        return Err(Error::NonMonic);
    }
    if deg > AUDIT_MAX_DEGREE {
        return Ok(AuditResult::Unchecked);
    }
    // rational roots first; they also guarantee f(x) != 0 at the points used
    let mut values = BTreeMap::new();
    for x in -12i64..=12 {
        let v = f.eval_int(&BigInt::from(x));
        if v.is_zero() {
            return Err(Error::ReducibleSalemFactor { factor: IntPolynomial::from_i64(&[-x, 1]).to_string() });
        }
        values.insert(x, v);
    }
    // ||f||_2 rounded up; coefficient j of a degree-d factor is at most C(d, j) * norm
    let norm = f.norm_squared().sqrt() + BigInt::one();
    let mut pool: Vec<(i64, BigInt)> = values.into_iter().collect();
    pool.sort_by_key(|(x, v)| (*x != 0, v.abs(), x.abs()));
    for d in 1..=deg / 2 {
        match kronecker_search(f, d, &pool, &norm) {
            Search::Found(h) => return Err(Error::ReducibleSalemFactor { factor: h.to_string() }),
            Search::Exhausted => {}
            Search::OverBudget => return Ok(AuditResult::Unchecked),
        }
    }
    Ok(AuditResult::Verified)
}

enum Search {
    Found(IntPolynomial),
    Exhausted,
    OverBudget,
}

fn kronecker_search(f: &IntPolynomial, d: usize, pool: &[(i64, BigInt)], norm: &BigInt) -> Search {
    let binom = |n: usize, k: usize| -> BigInt { (0..k).fold(BigInt::one(), |acc, i| acc * (n - i) / (i + 1)) };
    // candidate values at each point, with a Mignotte-type bound
    let mut points = Vec::new();
    let mut candidates: Vec<Vec<i128>> = Vec::new();
    for (x, fx) in pool.iter().take(d) {
        let bound: BigInt = (0..=d).map(|j| binom(d, j) * norm * BigInt::from(x.abs()).pow(j as u32)).sum();
        let divs = match divisors(&fx.abs(), &bound) {
            Some(v) => v,
            None => return Search::OverBudget,
        };
        let mut vals = Vec::with_capacity(divs.len() * 2);
        for dv in divs {
            vals.push(dv);
            vals.push(-dv);
        }
        points.push(*x);
        candidates.push(vals);
    }
    let total: u128 = candidates.iter().map(|c| c.len() as u128).product();
    if total > AUDIT_BUDGET {
        return Search::OverBudget;
    }
    // h(x) = prod (x - x_i) + sum_i v_i l_i(x); scaled by a common
    // denominator so everything stays in i128
    let base = points.iter().fold(vec![1i128], |acc, &xi| poly_mul_linear(&acc, xi));
    let mut lagrange = Vec::with_capacity(d);
    let mut denom = 1i128;
    for (i, &xi) in points.iter().enumerate() {
        let mut num = vec![1i128];
        let mut den = 1i128;
        for (j, &xj) in points.iter().enumerate() {
            if i != j {
                num = poly_mul_linear(&num, xj);
                den *= (xi - xj) as i128;
            }
        }
        denom = lcm_i128(denom, den.abs());
        lagrange.push((num, den));
    }
    let scaled: Vec<Vec<i128>> = lagrange
        .iter()
        .map(|(num, den)| num.iter().map(|c| c * (denom / den)).collect())
        .collect();
    let coeff_bounds: Vec<BigInt> = (0..=d).map(|j| binom(d, j) * norm).collect();
    let mut idx = vec![0usize; d];
    loop {
        let mut h = vec![0i128; d];
        for (i, &k) in idx.iter().enumerate() {
            let v = candidates[i][k];
            for (hj, cj) in h.iter_mut().zip(&scaled[i]) {
                *hj += v * cj;
            }
        }
        if h.iter().all(|c| c % denom == 0) {
            let mut coeffs: Vec<BigInt> = h.iter().map(|c| BigInt::from(c / denom)).collect();
            coeffs.push(BigInt::zero());
            for (c, b) in coeffs.iter_mut().zip(&base) {
                *c += BigInt::from(*b);
            }
            let within = coeffs.iter().zip(&coeff_bounds).all(|(c, b)| c.abs() <= *b);
            let cand = IntPolynomial::new(coeffs);
            if within && cand.degree() == Some(d) && f.exact_div_monic(&cand).is_some() {
                return Search::Found(cand);
            }
        }
        // odometer
        let mut pos = 0;
        loop {
            if pos == d {
                return Search::Exhausted;
            }
            idx[pos] += 1;
            if idx[pos] < candidates[pos].len() {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
    }
}

fn poly_mul_linear(p: &[i128], root: i64) -> Vec<i128> {
    let mut out = vec![0i128; p.len() + 1];
    for (i, c) in p.iter().enumerate() {
        out[i + 1] += c;
        out[i] -= c * root as i128;
    }
    out
}

fn lcm_i128(a: i128, b: i128) -> i128 {
    a / a.gcd(&b) * b
}

// Positive divisors of n not exceeding `bound`; None if n is too large to
// factor by trial division.
fn divisors(n: &BigInt, bound: &BigInt) -> Option<Vec<i128>> {
    let mut m = n.to_u128()?;
    if m > 1 << 62 {
        return None;
    }
    let mut primes: Vec<(u128, u32)> = Vec::new();
    let mut p = 2u128;
    while p * p <= m {
        let mut e = 0;
        while m % p == 0 {
            m /= p;
            e += 1;
        }
        if e > 0 {
            primes.push((p, e));
        }
        p += 1;
    }
    if m > 1 {
        primes.push((m, 1));
    }
    let mut divs = vec![1u128];
    for (p, e) in primes {
        let mut next = Vec::new();
        for d in &divs {
            let mut pk = 1u128;
            for _ in 0..=e {
                next.push(d * pk);
                pk *= p;
            }
        }
        divs = next;
    }
    let bound = bound.to_u128().unwrap_or(u128::MAX);
    let mut out: Vec<i128> = divs.into_iter().filter(|&d| d <= bound).map(|d| d as i128).collect();
    out.sort_unstable();
    Some(out)
}
