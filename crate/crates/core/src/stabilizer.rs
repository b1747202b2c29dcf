//! Multipliers of isometries stabilizing a ray, multiplicative dependence of
//! multipliers, class averaging over finite groups and the isotropic fixed
//! ray of null-entropy groups.

use std::cmp::Ordering;
use std::collections::HashSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::algebraic::AlgebraicReal;
use crate::error::{Error, Result};
use crate::lattice::{Isometry, LatticeVector};
use crate::matrix::{inertia, integer_kernel, Field, IntMatrix};
use crate::nef::{proportionality, NumberFieldVector};
use crate::number_field::NfElem;
use crate::spectral::{classify_entropy, lehmer_number, spectral_data, EntropyClass};

/// Default cap on the degree of algebraic numbers handled by the
/// dependence search.
pub const DEFAULT_MAX_DEGREE: usize = 64;

#[derive(Clone, Debug)]
pub enum Multiplier {
    One,
    /// `alpha > 1`.
    Expanding(AlgebraicReal),
    /// `alpha = 1 / beta` with `beta > 1`; holds `beta`.
    Inverse(AlgebraicReal),
}

impl Multiplier {
    /// `alpha` itself.
    pub fn value(&self) -> Result<AlgebraicReal> {
        match self {
            Multiplier::One => Ok(AlgebraicReal::from_integer(1)),
            Multiplier::Expanding(a) => Ok(a.clone()),
            Multiplier::Inverse(b) => b.recip(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct MultiplierRecord {
    pub generator_id: String,
    pub alpha: Multiplier,
    /// `alpha` as an element of the field of the class.
    pub ratio: NfElem,
    pub entropy_class: EntropyClass,
}

impl MultiplierRecord {
    /// `alpha = 1` exactly when `g` has null entropy. This holds for nef
    /// classes; a failure means the class is not nef.
    pub fn is_consistent(&self) -> bool {
        matches!(self.alpha, Multiplier::One) != self.entropy_class.is_positive()
    }
}

/// The exact ratio `alpha` with `g M = alpha M`, checked positive against
/// the reference class of the lattice.
pub fn multiplier(g: &Isometry, m: &NumberFieldVector) -> Result<MultiplierRecord> {
    multiplier_named("g", g, m)
}

pub fn multiplier_named(id: &str, g: &Isometry, m: &NumberFieldVector) -> Result<MultiplierRecord> {
    if m.is_zero() {
        return Err(Error::ZeroClass);
    }
    let gm = m.apply(g)?;
    let k = m.field();
    let ratio = match proportionality(k, gm.coords(), m.coords()) {
        Ok(Some(c)) => c,
        Ok(None) => return Err(Error::ZeroClass),
        Err((i, j)) => return Err(Error::NotStabilized { i, j }),
    };
    if let Some(h) = m.lattice().positive_class() {
        // alpha = (H . gM) / (H . M)
        let num = gm.pair_rational(&h)?;
        let den = m.pair_rational(&h)?;
        if !k.is_zero(&den) && k.div(&num, &den) != ratio {
            return Err(Error::ContractViolated("multiplier disagrees with the reference pairing".into()));
        }
    }
    if k.sign(&ratio) != Ordering::Greater {
        return Err(Error::ContractViolated("multiplier is not positive; the class is not on a g-stable ray".into()));
    }
    let alpha = if ratio == k.one() {
        Multiplier::One
    } else {
        let a = k.to_algebraic_real(&ratio);
        match a.cmp_rational(&BigRational::one()) {
            Ordering::Greater => Multiplier::Expanding(a),
            _ => Multiplier::Inverse(a.recip()?),
        }
    };
    Ok(MultiplierRecord { generator_id: id.to_string(), alpha, ratio, entropy_class: classify_entropy(g)? })
}

pub fn multiplier_of_class(g: &Isometry, m: &LatticeVector) -> Result<MultiplierRecord> {
    multiplier(g, &NumberFieldVector::from_rational(m))
}

#[derive(Clone, Debug)]
pub struct IndependenceReport {
    pub i: usize,
    pub j: usize,
    /// Exponent bound used for the exhausted search.
    pub bound: u64,
}

#[derive(Clone, Debug)]
pub enum Dependence {
    /// `alphas[i] = generator^exponents[i]`.
    Generator { generator: AlgebraicReal, exponents: Vec<u64>, bound: u64 },
    Independent(IndependenceReport),
}

/// Least `B >= 1` with `lambda_Lehmer^B >= alpha`, that is
/// `ceil(log alpha / log lambda_Lehmer)`, decided exactly.
pub fn exponent_bound(alpha: &AlgebraicReal) -> Result<u64> {
    let lehmer = lehmer_number();
    // start from the floating estimate and correct it exactly
    let est = (alpha.to_f64().ln() / lehmer.to_f64().ln()).ceil().max(1.0) as u64;
    let mut b = est.saturating_sub(1).max(1);
    while lehmer.pow(b as u32)?.compare(alpha) == Ordering::Less {
        b += 1;
    }
    while b > 1 && lehmer.pow((b - 1) as u32)?.compare(alpha) != Ordering::Less {
        b -= 1;
    }
    Ok(b)
}

pub fn multiplier_generator(alphas: &[AlgebraicReal]) -> Result<Dependence> {
    multiplier_generator_with(alphas, DEFAULT_MAX_DEGREE)
}

/// Decides whether all `alphas` are integer powers of one number. Any
/// common base is at least Lehmer's number, so the exponents of a relation
/// `alpha_i^a = alpha_j^b` are bounded by `B` and the search is exhaustive.
pub fn multiplier_generator_with(alphas: &[AlgebraicReal], max_degree: usize) -> Result<Dependence> {
    if alphas.is_empty() {
        return Err(Error::InvalidArgument("no multipliers given".into()));
    }
    for a in alphas {
        if a.cmp_rational(&BigRational::one()) != Ordering::Greater {
            return Err(Error::InvalidArgument(format!("multiplier {a} is not > 1")));
        }
        let degree = a.poly().degree().unwrap_or(0);
        if degree > max_degree {
            return Err(Error::DegreeTooLarge { degree, max: max_degree });
        }
    }
    let max = alphas.iter().skip(1).fold(&alphas[0], |m, a| if a.compare(m) == Ordering::Greater { a } else { m });
    let bound = exponent_bound(max)?;

    let pairs: Vec<(usize, usize)> =
        (0..alphas.len()).flat_map(|i| (i + 1..alphas.len()).map(move |j| (i, j))).collect();
    let relations: Vec<Option<(u64, u64)>> = pairs
        .par_iter()
        .map(|&(i, j)| find_relation(&alphas[i], &alphas[j], bound))
        .collect::<Result<_>>()?;
    if let Some(t) = relations.iter().position(Option::is_none) {
        let (i, j) = pairs[t];
        return Ok(Dependence::Independent(IndependenceReport { i, j, bound }));
    }
    // log alpha_i = r_i log alpha_0 with r_i = a / b from alpha_0^a = alpha_i^b
    let ratios: Vec<BigRational> = std::iter::once(BigRational::one())
        .chain(relations[..alphas.len() - 1].iter().map(|r| {
            let (a, b) = r.expect("checked");
            BigRational::new(BigInt::from(a), BigInt::from(b))
        }))
        .collect();
    let num_gcd = ratios.iter().fold(BigInt::zero(), |g, r| g.gcd(r.numer()));
    let den_lcm = ratios.iter().fold(BigInt::one(), |l, r| l.lcm(r.denom()));
    let step = BigRational::new(num_gcd.clone(), den_lcm.clone());
    let exponents: Vec<u64> = ratios.iter().map(|r| (r / &step).to_integer().to_u64().expect("positive")).collect();
    let generator = alphas[0]
        .pow(num_gcd.to_u32().ok_or_else(|| Error::InvalidArgument("exponent overflow".into()))?)?
        .nth_root(den_lcm.to_u32().ok_or_else(|| Error::InvalidArgument("exponent overflow".into()))?)?;
    Ok(Dependence::Generator { generator, exponents, bound })
}

// (a, b) coprime with x^a = y^b and 1 <= a, b <= bound
fn find_relation(x: &AlgebraicReal, y: &AlgebraicReal, bound: u64) -> Result<Option<(u64, u64)>> {
    let (lx, ly) = (x.to_f64().ln(), y.to_f64().ln());
    for a in 1..=bound {
        for b in 1..=bound {
            if a.gcd(&b) != 1 {
                continue;
            }
            // cheap filter; exact check below
            let diff = (a as f64 * lx - b as f64 * ly).abs();
            if diff > 1e-6 * (a as f64 * lx).max(1.0) {
                continue;
            }
            if x.pow(a as u32)?.equals(&y.pow(b as u32)?) {
                return Ok(Some((a, b)));
            }
        }
    }
    Ok(None)
}

fn check_closed(h: &[Isometry]) -> Result<()> {
    let set: HashSet<&IntMatrix> = h.iter().map(Isometry::matrix).collect();
    for a in h {
        if a.lattice() != h[0].lattice() {
            return Err(Error::LatticeMismatch);
        }
        if !set.contains(a.inverse().matrix()) {
            return Err(Error::NotClosedUnderComposition);
        }
        for b in h {
            if !set.contains(a.compose(b)?.matrix()) {
                return Err(Error::NotClosedUnderComposition);
            }
        }
    }
    Ok(())
}

/// `M' = sum_{h in H} h M` for a finite matrix group `H`.
pub fn average_class(m: &LatticeVector, h: &[Isometry]) -> Result<LatticeVector> {
    average_class_normalized_by(m, h, None)
}

/// As [`average_class`]; when `g` normalizes `H` and stabilizes the ray of
/// `M`, also checks that it stabilizes the ray of `M'`.
pub fn average_class_normalized_by(m: &LatticeVector, h: &[Isometry], g: Option<&Isometry>) -> Result<LatticeVector> {
    if h.is_empty() {
        return Err(Error::InvalidArgument("empty group".into()));
    }
    check_closed(h)?;
    if m.lattice() != h[0].lattice() {
        return Err(Error::LatticeMismatch);
    }
    let mut total = m.lattice().zero_vector();
    for x in h {
        total = total.add(&x.apply(m)?)?;
    }
    for x in h {
        if x.apply(&total)? != total {
            return Err(Error::ContractViolated("average is not fixed by the group".into()));
        }
    }
    if let Some(g) = g {
        let set: HashSet<&IntMatrix> = h.iter().map(Isometry::matrix).collect();
        let ginv = g.inverse();
        let normalizes = h.iter().all(|x| g.compose(x).and_then(|y| y.compose(&ginv)).is_ok_and(|c| set.contains(c.matrix())));
        let gm = g.apply(m)?;
        if normalizes && proportional(&gm, m) && !total.is_zero() && !proportional(&g.apply(&total)?, &total) {
            return Err(Error::ContractViolated("normalizer does not stabilize the averaged ray".into()));
        }
    }
    Ok(total)
}

fn proportional(a: &LatticeVector, b: &LatticeVector) -> bool {
    let n = a.rank();
    (0..n).all(|i| (0..n).all(|j| &a.coords()[i] * &b.coords()[j] == &a.coords()[j] * &b.coords()[i]))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Uniqueness {
    /// The isotropic ray in the fixed space is unique.
    Certified,
    /// Further isotropic rays exist; those found are listed.
    NotUnique(Vec<LatticeVector>),
}

#[derive(Clone, Debug)]
pub struct FixedRay {
    /// Primitive integral, positive against the reference class.
    pub ray: LatticeVector,
    pub fixed_dim: usize,
    pub uniqueness: Uniqueness,
    /// Whether every generator has finite order. A group generated by
    /// finite-order elements may still be infinite, so this only records
    /// what could be checked.
    pub finite_order_generators: bool,
}

/// Coefficient box for the isotropic search in fixed spaces of dimension
/// at least 3.
pub const ISOTROPIC_SEARCH_BOX: i64 = 6;

/// The isotropic ray in the common fixed space of null-entropy isometries.
pub fn common_isotropic_fixed_ray(gens: &[Isometry]) -> Result<FixedRay> {
    if gens.is_empty() {
        return Err(Error::InvalidArgument("no generators".into()));
    }
    let lattice = gens[0].lattice().clone();
    let mut finite = true;
    for (index, g) in gens.iter().enumerate() {
        if g.lattice() != &lattice {
            return Err(Error::LatticeMismatch);
        }
        let data = spectral_data(g)?;
        if data.class.is_positive() {
            return Err(Error::NotNullEntropy { index });
        }
        finite &= g.power(data.split.s_exponent as i64).is_identity();
    }
    let n = lattice.rank();
    let rows: Vec<Vec<BigInt>> = gens
        .iter()
        .flat_map(|g| (0..n).map(move |i| (0..n).map(|j| &g.matrix()[(i, j)] - BigInt::from(i == j)).collect::<Vec<_>>()))
        .collect();
    let basis = integer_kernel(&IntMatrix::from_rows(rows).expect("rectangular"));
    let dim = basis.len();
    let not_found = Error::NotFound { fixed_dim: dim, finite_image: finite };
    if dim == 0 {
        return Err(not_found);
    }
    let vectors: Vec<LatticeVector> = basis.iter().map(|b| lattice.vector_from_integers(b).unwrap()).collect();
    let q = IntMatrix::from_fn(dim, dim, |i, j| vectors[i].pair(&vectors[j]).unwrap().to_integer());
    let combine = |c: &[BigInt]| -> LatticeVector {
        let mut v = lattice.zero_vector();
        for (ci, b) in c.iter().zip(&vectors) {
            v = v.add(&b.scale(&BigRational::from_integer(ci.clone()))).unwrap();
        }
        orient(v.primitive())
    };
    let (plus, _, _) = inertia(&q.to_rational());

    if plus == 0 {
        // negative semi-definite: the isotropic vectors form the radical,
        // which has dimension at most one in a hyperbolic lattice
        let radical = integer_kernel(&q);
        return match radical.len() {
            0 => Err(not_found),
            1 => Ok(FixedRay {
                ray: combine(&radical[0]),
                fixed_dim: dim,
                uniqueness: Uniqueness::Certified,
                finite_order_generators: finite,
            }),
            _ => Err(Error::ContractViolated("isotropic subspace of dimension > 1".into())),
        };
    }

    // F contains a positive class, so the form on F is non-degenerate
    let rays: Vec<LatticeVector> = if dim == 1 {
        vec![]
    } else if dim == 2 {
        binary_isotropic(&q).iter().map(|c| combine(c)).collect()
    } else {
        search_isotropic(&q).iter().map(|c| combine(c)).collect()
    };
    let mut unique_rays: Vec<LatticeVector> = Vec::new();
    for r in rays {
        if !unique_rays.contains(&r) {
            unique_rays.push(r);
        }
    }
    if unique_rays.is_empty() {
        return Err(not_found);
    }
    // one rational isotropic line in a non-degenerate space of dimension
    // >= 2 forces others, except a degenerate binary form (excluded above)
    let ray = unique_rays[0].clone();
    let uniqueness = if unique_rays.len() == 1 && dim == 2 {
        Uniqueness::Certified
    } else {
        Uniqueness::NotUnique(unique_rays[1..].to_vec())
    };
    Ok(FixedRay { ray, fixed_dim: dim, uniqueness, finite_order_generators: finite })
}

fn orient(v: LatticeVector) -> LatticeVector {
    match v.lattice().positive_class() {
        Some(h) if v.pair(&h).is_ok_and(|p| p.is_negative()) => v.neg(),
        _ => v,
    }
}

// isotropic lines of a x^2 + 2 b x y + c y^2
fn binary_isotropic(q: &IntMatrix) -> Vec<Vec<BigInt>> {
    let (a, b, c) = (q[(0, 0)].clone(), q[(0, 1)].clone(), q[(1, 1)].clone());
    let disc = &b * &b - &a * &c;
    if disc.is_negative() {
        return vec![];
    }
    let root = disc.sqrt();
    if &root * &root != disc {
        return vec![];
    }
    if a.is_zero() {
        // y (2 b x + c y) = 0
        let mut out = vec![vec![BigInt::one(), BigInt::zero()]];
        if !b.is_zero() {
            out.push(vec![c.clone(), -BigInt::from(2) * &b]);
        }
        return out;
    }
    // x / y = (-b +- root) / a
    let mut out = vec![vec![-&b + &root, a.clone()]];
    if !root.is_zero() {
        out.push(vec![-&b - &root, a.clone()]);
    }
    out.into_iter()
        .map(|v| {
            let g = v[0].gcd(&v[1]);
            v.into_iter().map(|x| x / &g).collect()
        })
        .collect()
}

fn search_isotropic(q: &IntMatrix) -> Vec<Vec<BigInt>> {
    let k = q.rows();
    let qi: Vec<Vec<i64>> = (0..k).map(|i| (0..k).map(|j| q[(i, j)].to_i64().unwrap_or(i64::MAX / 4)).collect()).collect();
    let side = (2 * ISOTROPIC_SEARCH_BOX + 1) as usize;
    let total = side.checked_pow(k as u32).unwrap_or(usize::MAX).min(4_000_000);
    let mut out = Vec::new();
    let mut c = vec![0i64; k];
    for code in 0..total {
        let mut t = code;
        for x in c.iter_mut() {
            *x = (t % side) as i64 - ISOTROPIC_SEARCH_BOX;
            t /= side;
        }
        // one representative per line: first non-zero entry positive
        match c.iter().find(|x| **x != 0) {
            Some(x) if *x > 0 => {}
            _ => continue,
        }
        if c.iter().fold(0i64, |g, x| g.gcd(x)) != 1 {
            continue;
        }
        let mut s: i128 = 0;
        for i in 0..k {
            for j in 0..k {
                s += c[i] as i128 * qi[i][j] as i128 * c[j] as i128;
            }
        }
        if s == 0 {
            out.push(c.iter().map(|&x| BigInt::from(x)).collect());
        }
    }
    out
}

/// Result of enumerating words in the generators and their inverses.
#[derive(Clone, Debug)]
pub struct WordScan {
    pub words_checked: usize,
    /// First word (in enumeration order) of positive entropy, with its
    /// spectral radius.
    pub first_positive: Option<(String, AlgebraicReal)>,
}

/// Classifies every word of length at most `bound`. Says nothing about
/// longer words.
pub fn scan_words(gens: &[Isometry], bound: usize) -> Result<WordScan> {
    if gens.is_empty() {
        return Err(Error::InvalidArgument("no generators".into()));
    }
    let letters: Vec<(String, Isometry)> = gens
        .iter()
        .enumerate()
        .flat_map(|(i, g)| [(format!("g{i}"), g.clone()), (format!("g{i}^-1"), g.inverse())])
        .collect();
    let mut frontier: Vec<(Vec<usize>, Isometry)> = vec![(vec![], Isometry::identity(gens[0].lattice()))];
    let mut checked = 0;
    for _ in 0..bound {
        let next: Vec<(Vec<usize>, Isometry)> = frontier
            .iter()
            .flat_map(|(w, m)| {
                letters.iter().enumerate().filter_map(move |(l, (_, g))| {
                    // skip immediate cancellations x x^-1
                    if w.last().is_some_and(|&p| p / 2 == l / 2 && p != l) {
                        return None;
                    }
                    let mut w2 = w.clone();
                    w2.push(l);
                    Some((w2, m.compose(g).expect("same lattice")))
                })
            })
            .collect();
        let classes: Vec<EntropyClass> = next.par_iter().map(|(_, m)| classify_entropy(m)).collect::<Result<_>>()?;
        checked += next.len();
        if let Some(t) = classes.iter().position(EntropyClass::is_positive) {
            let word = next[t].0.iter().map(|&l| letters[l].0.as_str()).collect::<Vec<_>>().join(" ");
            let lambda = classes[t].lambda().expect("positive").clone();
            return Ok(WordScan { words_checked: checked, first_positive: Some((word, lambda)) });
        }
        frontier = next;
    }
    Ok(WordScan { words_checked: checked, first_positive: None })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{eichler_transvection, Lattice};
    use crate::nef::leading_eigenvectors;
    use crate::spectral::lehmer_number;
    use crate::weyl::{coxeter_element_matrix, RootSystem};

    fn coxeter(n: usize) -> Isometry {
        coxeter_element_matrix(&RootSystem::new(n).unwrap(), None).unwrap()
    }

    fn perm(l: &Lattice, p: &[usize]) -> Isometry {
        // e_j -> e_{p[j]}
        let n = l.rank();
        Isometry::certify(IntMatrix::from_fn(n, n, |i, j| BigInt::from(p[j] == i)), l).unwrap()
    }

    #[test]
    fn multiplier_of_leading_rays() {
        let g = coxeter(10);
        let rays = leading_eigenvectors(&g).unwrap();
        let rec = multiplier(&g, &rays.plus).unwrap();
        match &rec.alpha {
            Multiplier::Expanding(a) => assert!(a.equals(&rays.lambda)),
            other => panic!("{other:?}"),
        }
        assert!(rec.is_consistent());
        let inv = multiplier(&g.inverse(), &rays.plus).unwrap();
        match &inv.alpha {
            Multiplier::Inverse(b) => assert!(b.equals(&rays.lambda)),
            other => panic!("{other:?}"),
        }
        let minus = multiplier(&g, &rays.minus).unwrap();
        let k = rays.plus.field();
        assert_eq!(k.mul(&rec.ratio, &minus.ratio), k.one());
    }

    #[test]
    fn moved_class_is_not_stabilized() {
        let g = coxeter(10);
        let e0 = g.lattice().basis_vector(0);
        assert!(matches!(multiplier_of_class(&g, &e0), Err(Error::NotStabilized { .. })));
        assert!(matches!(multiplier_of_class(&g, &g.lattice().zero_vector()), Err(Error::ZeroClass)));
    }

    #[test]
    fn fixed_class_has_multiplier_one() {
        let l = Lattice::lorentzian(2).unwrap();
        let g = perm(&l, &[0, 2, 1]);
        let rec = multiplier_of_class(&g, &l.basis_vector(0)).unwrap();
        assert!(matches!(rec.alpha, Multiplier::One));
        assert!(rec.is_consistent());
    }

    #[test]
    fn lehmer_powers_share_a_generator() {
        let l = lehmer_number();
        let alphas = vec![l.pow(2).unwrap(), l.pow(3).unwrap()];
        match multiplier_generator(&alphas).unwrap() {
            Dependence::Generator { generator, exponents, .. } => {
                assert!(generator.equals(&l));
                assert_eq!(exponents, vec![2, 3]);
            }
            other => panic!("{other:?}"),
        }
        match multiplier_generator(&alphas[..1]).unwrap() {
            Dependence::Generator { generator, exponents, .. } => {
                assert!(generator.equals(&alphas[0]));
                assert_eq!(exponents, vec![1]);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn distinct_salem_numbers_are_independent() {
        let l10 = lehmer_number();
        let l11 = classify_entropy(&coxeter(11)).unwrap().lambda().unwrap().clone();
        match multiplier_generator(&[l10, l11]).unwrap() {
            Dependence::Independent(r) => assert_eq!((r.i, r.j), (0, 1)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn exponent_bound_matches_logarithms() {
        let l = lehmer_number();
        assert_eq!(exponent_bound(&l).unwrap(), 1);
        assert_eq!(exponent_bound(&l.pow(5).unwrap()).unwrap(), 5);
        assert_eq!(exponent_bound(&AlgebraicReal::from_integer(2)).unwrap(), 5); // 1.176^4 < 2 < 1.176^5
    }

    #[test]
    fn averaging() {
        let l = Lattice::lorentzian(3).unwrap();
        let e1 = l.basis_vector(1);
        let id = Isometry::identity(&l);
        assert_eq!(average_class(&e1, std::slice::from_ref(&id)).unwrap(), e1);
        let swap = perm(&l, &[0, 2, 1, 3]);
        assert_eq!(average_class(&e1, &[id.clone(), swap.clone()]).unwrap(), l.vector_from_i64(&[0, 1, 1, 0]).unwrap());
        let c = perm(&l, &[0, 2, 3, 1]);
        let group = vec![id.clone(), c.clone(), c.compose(&c).unwrap()];
        let avg = average_class(&e1, &group).unwrap();
        assert_eq!(avg, l.vector_from_i64(&[0, 1, 1, 1]).unwrap());
        assert!(matches!(average_class(&e1, &[id, c]), Err(Error::NotClosedUnderComposition)));
    }

    #[test]
    fn parabolic_fixed_ray() {
        let l = Lattice::lorentzian(2).unwrap();
        let v = l.vector_from_i64(&[1, 1, 0]).unwrap();
        let w = l.vector_from_i64(&[0, 0, 2]).unwrap();
        let g = eichler_transvection(&v, &w).unwrap();
        let r = common_isotropic_fixed_ray(&[g]).unwrap();
        assert_eq!(r.ray, v);
        assert_eq!(r.fixed_dim, 1);
        assert_eq!(r.uniqueness, Uniqueness::Certified);
        assert!(!r.finite_order_generators);
    }

    #[test]
    fn identity_has_many_isotropic_rays() {
        for n in [1, 3] {
            let l = Lattice::lorentzian(n).unwrap();
            let r = common_isotropic_fixed_ray(&[Isometry::identity(&l)]).unwrap();
            assert!(matches!(r.uniqueness, Uniqueness::NotUnique(_)));
            assert!(r.ray.square().is_zero());
        }
    }

    #[test]
    fn positive_entropy_generator_is_rejected() {
        let g = coxeter(10);
        let id = Isometry::identity(g.lattice());
        assert!(matches!(common_isotropic_fixed_ray(&[id, g]), Err(Error::NotNullEntropy { index: 1 })));
    }

    #[test]
    fn anisotropic_fixed_space() {
        // the swap of e1, e2 on Z^{1,2} fixes e0 and e1 + e2: form diag(1, -2)
        let l = Lattice::lorentzian(2).unwrap();
        let g = perm(&l, &[0, 2, 1]);
        assert!(matches!(common_isotropic_fixed_ray(&[g]), Err(Error::NotFound { fixed_dim: 2, finite_image: true })));
    }

    #[test]
    fn word_scan_finds_coxeter_element() {
        let rs = RootSystem::new(10).unwrap();
        let refl: Vec<Isometry> = (0..10).map(|i| rs.simple_reflection(i).unwrap()).collect();
        let w = coxeter_element_matrix(&rs, None).unwrap();
        let scan = scan_words(&[refl[0].clone(), w.clone()], 1).unwrap();
        assert_eq!(scan.first_positive.as_ref().map(|(s, _)| s.as_str()), Some("g1"));
        let none = scan_words(&refl[..2], 3).unwrap();
        assert!(none.first_positive.is_none());
    }
}
