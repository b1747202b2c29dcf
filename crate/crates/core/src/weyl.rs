//! The Weyl group `W_n` acting on `Z^{1,n}`: simple roots, reflections,
//! Coxeter elements and their Salem numbers.
//!
//! Simple roots follow the usual `E_n` convention: `a0 = e0 - e1 - e2 - e3`
//! (the Cremona root) and `ai = ei - e(i+1)` for `1 <= i <= n - 1`. All of
//! them are orthogonal to `K = -3 e0 + e1 + ... + en`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::algebraic::AlgebraicReal;
use crate::error::{Error, Result};
use crate::lattice::{Isometry, Lattice, LatticeVector};
use crate::matrix::{Field, IntMatrix};
use crate::nef::{leading_eigenvectors_from, LeadingRays};
use crate::poly::IntPolynomial;
use crate::spectral::{lehmer_check, spectral_data, EntropyClass, SalemSplit, SpectralData};

/// Largest `n` accepted by [`coxeter_salem_table`].
pub const TABLE_MAX_N: usize = 40;

/// Simple roots of `W_n` on `Z^{1,n}`.
#[derive(Clone, Debug)]
pub struct RootSystem {
    n: usize,
    lattice: Lattice,
    canonical: LatticeVector,
    simple_roots: Vec<LatticeVector>,
}

impl RootSystem {
    pub fn new(n: usize) -> Result<Self> {
        Self::on_lattice(&Lattice::lorentzian(n)?)
    }

    /// Root system on an existing standard Lorentzian lattice, so that its
    /// isometries can act on classes already living there.
    pub fn on_lattice(lattice: &Lattice) -> Result<Self> {
        let n = lattice.rank().saturating_sub(1);
        if n < 3 {
            return Err(Error::InvalidArgument(format!("W_n needs n >= 3, got n = {n}")));
        }
        if !lattice.is_standard_lorentzian() {
            return Err(Error::InvalidArgument("root system needs the standard form diag(1, -1, ..., -1)".into()));
        }
        let mut k = vec![1i64; n + 1];
        k[0] = -3;
        let canonical = lattice.vector_from_i64(&k)?;
        let mut simple_roots = Vec::with_capacity(n);
        let mut a0 = vec![0i64; n + 1];
        a0[..4].copy_from_slice(&[1, -1, -1, -1]);
        simple_roots.push(lattice.vector_from_i64(&a0)?);
        for i in 1..n {
            let mut a = vec![0i64; n + 1];
            a[i] = 1;
            a[i + 1] = -1;
            simple_roots.push(lattice.vector_from_i64(&a)?);
        }
        Ok(RootSystem { n, lattice: lattice.clone(), canonical, simple_roots })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn canonical(&self) -> &LatticeVector {
        &self.canonical
    }

    pub fn simple_roots(&self) -> &[LatticeVector] {
        &self.simple_roots
    }

    pub fn simple_reflection(&self, i: usize) -> Result<Isometry> {
        let root = self
            .simple_roots
            .get(i)
            .ok_or_else(|| Error::InvalidArgument(format!("no simple root {i} in W_{}", self.n)))?;
        reflection(root)
    }
}

/// `s(x) = x + (x . a) a` for an integral root with `a^2 = -2`.
pub fn reflection(alpha: &LatticeVector) -> Result<Isometry> {
    let sq = alpha.square();
    if sq != BigRational::from_integer((-2).into()) || !alpha.is_integral() {
        return Err(Error::NotMinusTwoRoot(sq.to_string()));
    }
    let l = alpha.lattice();
    let a = alpha.to_integers().expect("integral");
    let g = l.gram();
    let n = l.rank();
    let ga: Vec<BigInt> = (0..n).map(|j| (0..n).map(|k| &g[(j, k)] * &a[k]).sum()).collect();
    let m = IntMatrix::from_fn(n, n, |i, j| {
        let delta = if i == j { BigInt::one() } else { BigInt::zero() };
        delta + &a[i] * &ga[j]
    });
    Isometry::certify(m, l)
}

/// Product `s_{w[0]} s_{w[1]} ... ` of simple reflections.
pub fn weyl_word(rs: &RootSystem, word: &[usize]) -> Result<Isometry> {
    let mut acc = Isometry::identity(rs.lattice());
    for &i in word {
        acc = acc.compose(&rs.simple_reflection(i)?)?;
    }
    Ok(acc)
}

fn check_order(n: usize, order: &[usize]) -> Result<()> {
    let mut seen = vec![false; n];
    if order.len() != n {
        return Err(Error::InvalidOrder(format!("expected a permutation of 0..{n}, got {} entries", order.len())));
    }
    for &i in order {
        if i >= n || seen[i] {
            return Err(Error::InvalidOrder(format!("{order:?} is not a permutation of 0..{n}")));
        }
        seen[i] = true;
    }
    Ok(())
}

/// Product of all simple reflections, in index order unless `order` is
/// given.
pub fn coxeter_element_matrix(rs: &RootSystem, order: Option<&[usize]>) -> Result<Isometry> {
    let default: Vec<usize> = (0..rs.n).collect();
    let order = order.unwrap_or(&default);
    check_order(rs.n, order)?;
    weyl_word(rs, order)
}

/// How a null-entropy element behaves under powers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NullOrder {
    /// `w^order = 1`.
    Finite(u64),
    /// `w^s - 1` is nilpotent of the given index (at least 2), so every power
    /// of `w` differs from the identity.
    Infinite { s: u64, nilpotency_index: usize },
}

#[derive(Clone, Debug)]
pub struct CoxeterReport {
    pub n: usize,
    pub order: Vec<usize>,
    pub element: Isometry,
    pub char_poly: IntPolynomial,
    pub split: SalemSplit,
    pub lambda: Option<AlgebraicReal>,
    pub leading: Option<LeadingRays>,
    pub null_order: Option<NullOrder>,
}

/// Order of a quasi-unipotent element whose characteristic polynomial is a
/// product of cyclotomics with lcm of indices `s`: finite iff `w^s = 1`,
/// i.e. iff the minimal polynomial is square-free.
pub fn null_order(w: &Isometry, s: u64) -> NullOrder {
    let n = w.rank();
    let ws = w.matrix().pow(s);
    if ws.is_identity() {
        let mut order = s;
        // smallest divisor of s that already works
        for d in (1..=s).filter(|d| s.is_multiple_of(*d)) {
            if w.matrix().pow(d).is_identity() {
                order = d;
                break;
            }
        }
        return NullOrder::Finite(order);
    }
    let nil = ws.sub(&IntMatrix::identity(n));
    let mut p = nil.clone();
    let mut index = 1;
    while !p.is_zero() {
        p = p.mul(&nil);
        index += 1;
    }
    NullOrder::Infinite { s, nilpotency_index: index }
}

pub fn coxeter_element(n: usize, order: Option<&[usize]>) -> Result<CoxeterReport> {
    let rs = RootSystem::new(n)?;
    let w = coxeter_element_matrix(&rs, order)?;
    let data = spectral_data(&w)?;
    let SpectralData { char_poly, split, class } = data.clone();
    let (lambda, leading, null) = match class {
        EntropyClass::Positive(l) => {
            let rays = leading_eigenvectors_from(&w, &data)?;
            let k = rays.plus.field();
            if !k.is_zero(&rays.plus.pair_rational(rs.canonical())?)
                || !k.is_zero(&rays.minus.pair_rational(rs.canonical())?)
            {
                return Err(Error::ContractViolated("leading rays are not orthogonal to K".into()));
            }
            (Some(l), Some(rays), None)
        }
        EntropyClass::Null => (None, None, Some(null_order(&w, split.s_exponent))),
    };
    if w.apply(rs.canonical())? != *rs.canonical() {
        return Err(Error::ContractViolated("Coxeter element moves K".into()));
    }
    Ok(CoxeterReport {
        n,
        order: order.map(<[usize]>::to_vec).unwrap_or_else(|| (0..n).collect()),
        element: w,
        char_poly,
        split,
        lambda,
        leading,
        null_order: null,
    })
}

#[derive(Clone, Debug)]
pub struct TableRow {
    pub n: usize,
    pub lambda: Option<AlgebraicReal>,
    pub salem_degree: usize,
    pub s: u64,
    pub e: usize,
    pub lehmer_ok: Option<bool>,
}

impl TableRow {
    pub fn is_positive(&self) -> bool {
        self.lambda.is_some()
    }
}

/// One row per `n` in `from..=to`, computed in parallel and returned in
/// order. Every positive-entropy row is checked against the Lehmer bound.
pub fn coxeter_salem_table(from: usize, to: usize) -> Result<Vec<TableRow>> {
    if !(3 <= from && from <= to && to <= TABLE_MAX_N) {
        return Err(Error::InvalidArgument(format!("table range must satisfy 3 <= from <= to <= {TABLE_MAX_N}")));
    }
    let rows: Result<Vec<TableRow>> = (from..=to)
        .into_par_iter()
        .map(|n| {
            let rs = RootSystem::new(n)?;
            let w = coxeter_element_matrix(&rs, None)?;
            let data = spectral_data(&w)?;
            let lambda = data.class.lambda().cloned();
            if n >= 10 && lambda.as_ref().is_none_or(|l| l.cmp_rational(&BigRational::one()).is_le()) {
                return Err(Error::ContractViolated(format!("lambda(w) is not above 1 for n = {n}")));
            }
            let lehmer_ok = lambda.as_ref().map(lehmer_check);
            if lehmer_ok == Some(false) {
                return Err(Error::ContractViolated(format!("lambda(w) is below the Lehmer number for n = {n}")));
            }
            Ok(TableRow {
                n,
                salem_degree: if lambda.is_some() { data.split.salem_factor.degree().unwrap_or(0) } else { 0 },
                s: data.split.s_exponent,
                e: data.split.e_exponent,
                lambda,
                lehmer_ok,
            })
        })
        .collect();
    rows
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::{char_poly, lehmer_number, lehmer_polynomial};
    use proptest::prelude::*;

    #[test]
    fn roots_are_minus_two_and_orthogonal_to_k() {
        let rs = RootSystem::new(10).unwrap();
        for a in rs.simple_roots() {
            assert_eq!(a.square(), BigRational::from_integer((-2).into()));
            assert!(a.pair(rs.canonical()).unwrap().is_zero());
        }
        assert_eq!(rs.canonical().square(), BigRational::from_integer((-1).into()));
    }

    #[test]
    fn reflections() {
        let rs = RootSystem::new(3).unwrap();
        let l = rs.lattice();
        let swap = reflection(&l.vector_from_i64(&[0, 1, -1, 0]).unwrap()).unwrap();
        assert_eq!(swap.apply(&l.basis_vector(1)).unwrap(), l.basis_vector(2));
        let cremona = rs.simple_reflection(0).unwrap();
        assert!(cremona.power(2).is_identity());
        // e0 -> 2e0 - e1 - e2 - e3
        assert_eq!(cremona.apply(&l.basis_vector(0)).unwrap(), l.vector_from_i64(&[2, -1, -1, -1]).unwrap());
        let a = &rs.simple_roots()[0];
        assert_eq!(cremona.apply(a).unwrap(), a.neg());
        assert!(matches!(reflection(&l.basis_vector(1)), Err(Error::NotMinusTwoRoot(_))));
    }

    #[test]
    fn coxeter_ten_is_lehmer() {
        let r = coxeter_element(10, None).unwrap();
        assert_eq!(r.split.salem_factor, lehmer_polynomial());
        assert_eq!(r.char_poly, lehmer_polynomial().mul(&IntPolynomial::from_i64(&[-1, 1])));
        assert!(r.lambda.unwrap().equals(&lehmer_number()));
        assert!(!r.element.power(30).is_identity());
    }

    #[test]
    fn coxeter_eight_has_order_thirty() {
        let r = coxeter_element(8, None).unwrap();
        assert!(r.lambda.is_none());
        assert_eq!(r.null_order, Some(NullOrder::Finite(30)));
        // direct powers: nothing smaller works
        let w = &r.element;
        let first = (1..=30u64).find(|&k| w.matrix().pow(k).is_identity());
        assert_eq!(first, Some(30));
    }

    #[test]
    fn coxeter_nine_is_parabolic() {
        let r = coxeter_element(9, None).unwrap();
        assert!(r.lambda.is_none());
        match r.null_order {
            Some(NullOrder::Infinite { nilpotency_index, .. }) => assert!(nilpotency_index >= 3),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn bad_orders_are_rejected() {
        assert!(matches!(coxeter_element(4, Some(&[0, 1, 1, 2])), Err(Error::InvalidOrder(_))));
        assert!(matches!(coxeter_element(4, Some(&[0, 1])), Err(Error::InvalidOrder(_))));
        assert!(coxeter_element(2, None).is_err());
        assert!(coxeter_salem_table(2, 5).is_err());
        assert!(coxeter_salem_table(5, 41).is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        #[test]
        fn words_fix_k_and_preserve_the_form(word in prop::collection::vec(0usize..10, 0..=50)) {
            let rs = RootSystem::new(10).unwrap();
            let w = weyl_word(&rs, &word).unwrap();
            prop_assert!(Isometry::certify(w.matrix().clone(), rs.lattice()).is_ok());
            prop_assert_eq!(w.apply(rs.canonical()).unwrap(), rs.canonical().clone());
        }

        #[test]
        fn coxeter_char_poly_is_order_independent(perm in Just((0usize..11).collect::<Vec<_>>()).prop_shuffle()) {
            let rs = RootSystem::new(11).unwrap();
            let default = char_poly(&coxeter_element_matrix(&rs, None).unwrap());
            let other = char_poly(&coxeter_element_matrix(&rs, Some(&perm)).unwrap());
            prop_assert_eq!(default, other);
        }
    }
}
