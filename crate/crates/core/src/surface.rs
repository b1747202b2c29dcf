//! Blowup models of rational surfaces: periodic curves, minimality,
//! equivariant blowdown and the anti-canonical divisor `Delta`.
//!
//! The model never invents geometry. Every statement about "all curves" is
//! made relative to the declared curve configuration.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::lattice::{Isometry, Lattice, LatticeVector};
use crate::matrix::{integer_kernel, solve, IntMatrix, RatMatrix, Rationals};
use crate::matrix::Field;
use crate::nef::leading_eigenvectors_from;
use crate::spectral::{char_poly, spectral_data, SpectralData};
use crate::zariski::{is_negative_definite_indices, CurveConfig};

/// Lattice, canonical class and declared curves.
#[derive(Clone, Debug)]
pub struct SurfaceModel {
    lattice: Lattice,
    canonical: LatticeVector,
    curves: CurveConfig,
}

/// `Z^{1,n}` with `K = -3 e0 + e1 + ... + en` and no curves.
pub fn blowup_model(n: usize) -> Result<SurfaceModel> {
    let lattice = Lattice::lorentzian(n)?;
    let mut k = vec![1i64; n + 1];
    k[0] = -3;
    let canonical = lattice.vector_from_i64(&k)?;
    let model = SurfaceModel { curves: CurveConfig::empty(&lattice), lattice, canonical };
    debug_assert_eq!(model.canonical.square(), BigRational::from_integer(BigInt::from(9 - n as i64)));
    Ok(model)
}

impl SurfaceModel {
    pub fn new(lattice: &Lattice, canonical: LatticeVector, curves: CurveConfig) -> Result<Self> {
        if canonical.lattice() != lattice || curves.lattice() != lattice {
            return Err(Error::LatticeMismatch);
        }
        Ok(SurfaceModel { lattice: lattice.clone(), canonical, curves })
    }

    pub fn with_curves(&self, curves: CurveConfig) -> Result<Self> {
        Self::new(&self.lattice, self.canonical.clone(), curves)
    }

    /// Convenience for integral curve coordinates.
    pub fn with_named_curves(&self, curves: &[(&str, Vec<i64>)]) -> Result<Self> {
        let list = curves
            .iter()
            .map(|(n, c)| Ok((n.to_string(), self.lattice.vector_from_i64(c)?)))
            .collect::<Result<Vec<_>>>()?;
        self.with_curves(CurveConfig::new(&self.lattice, list)?)
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn canonical(&self) -> &LatticeVector {
        &self.canonical
    }

    pub fn curves(&self) -> &CurveConfig {
        &self.curves
    }

    /// Picard number minus one.
    pub fn n(&self) -> usize {
        self.lattice.rank() - 1
    }

    pub fn is_exceptional_class(&self, c: &LatticeVector) -> bool {
        let minus_one = -BigRational::one();
        c.square() == minus_one && c.pair(&self.canonical).ok() == Some(minus_one)
    }

    pub fn is_minus_two_class(&self, c: &LatticeVector) -> bool {
        c.square() == BigRational::from_integer((-2).into()) && c.pair(&self.canonical).ok() == Some(BigRational::zero())
    }
}

fn check_lattice(g: &Isometry, model: &SurfaceModel) -> Result<()> {
    if g.lattice() != model.lattice() {
        return Err(Error::LatticeMismatch);
    }
    Ok(())
}

/// Indices of declared curves with `g^s C = C`. Every `g`-periodic class
/// satisfies this for the `s` of the cyclotomic part of `g`, so this is
/// the set of periodic curves.
pub fn periodic_indices(g: &Isometry, model: &SurfaceModel, data: &SpectralData) -> Result<Vec<usize>> {
    check_lattice(g, model)?;
    let gs = g.power(data.split.s_exponent as i64);
    let cfg = model.curves();
    let mut out = Vec::new();
    for i in 0..cfg.len() {
        if gs.apply(cfg.class(i))? == *cfg.class(i) {
            out.push(i);
        }
    }
    Ok(out)
}

pub fn periodic_set(g: &Isometry, model: &SurfaceModel) -> Result<Vec<String>> {
    let data = spectral_data(g)?;
    let cfg = model.curves();
    Ok(periodic_indices(g, model, &data)?.into_iter().map(|i| cfg.name(i).to_string()).collect())
}

/// The declared curves orthogonal to `L+`, checked to agree with the curves
/// orthogonal to `L-` and to `L+ + L-`, and with the periodic curves.
pub fn stab_set(g: &Isometry, model: &SurfaceModel) -> Result<Vec<String>> {
    check_lattice(g, model)?;
    let data = spectral_data(g)?;
    Ok(stab_indices(g, model, &data)?.into_iter().map(|i| model.curves().name(i).to_string()).collect())
}

fn stab_indices(g: &Isometry, model: &SurfaceModel, data: &SpectralData) -> Result<Vec<usize>> {
    let rays = leading_eigenvectors_from(g, data)?;
    let k = rays.plus.field().clone();
    if !k.is_zero(&rays.plus.pair_rational(model.canonical())?)
        || !k.is_zero(&rays.minus.pair_rational(model.canonical())?)
    {
        return Err(Error::ContractViolated("L+ or L- pairs non-trivially with K".into()));
    }
    let sum = rays.sum();
    let cfg = model.curves();
    let mut out = Vec::new();
    for i in 0..cfg.len() {
        let c = cfg.class(i);
        let p = k.is_zero(&rays.plus.pair_rational(c)?);
        let m = k.is_zero(&rays.minus.pair_rational(c)?);
        let s = k.is_zero(&sum.pair_rational(c)?);
        if p != m || p != s {
            return Err(Error::NullSetMismatch {
                curve: cfg.name(i).to_string(),
                detail: format!("L+ . C = 0: {p}, L- . C = 0: {m}, L . C = 0: {s}"),
            });
        }
        if p {
            out.push(i);
        }
    }
    let periodic = periodic_indices(g, model, data)?;
    if let Some(&i) = out.iter().find(|i| !periodic.contains(i)) {
        return Err(Error::ContractViolated(format!("{} is orthogonal to L but not periodic", cfg.name(i))));
    }
    if !is_negative_definite_indices(cfg, &out) {
        return Err(Error::ContractViolated("Gram matrix of Null(L) is not negative definite".into()));
    }
    if out.len() >= model.lattice().rank() {
        return Err(Error::ContractViolated("Null(L) has at least rank-many curves".into()));
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Minimality {
    Minimal,
    NotMinimal(Vec<String>),
}

/// Looks for a non-empty `g`-stable set of disjoint `(-1)`-classes among
/// the periodic declared curves (for positive entropy these are exactly
/// `Stab(g)`). `(-1)`-classes meeting another candidate are dropped.
pub fn minimality_check(g: &Isometry, model: &SurfaceModel) -> Result<Minimality> {
    check_lattice(g, model)?;
    let data = spectral_data(g)?;
    let candidates =
        if data.class.is_positive() { stab_indices(g, model, &data)? } else { periodic_indices(g, model, &data)? };
    let cfg = model.curves();
    let exceptional: Vec<usize> = candidates.into_iter().filter(|&i| model.is_exceptional_class(cfg.class(i))).collect();
    let disjoint: Vec<usize> = exceptional
        .iter()
        .copied()
        .filter(|&i| exceptional.iter().all(|&j| i == j || cfg.class(i).pair(cfg.class(j)).is_ok_and(|p| p.is_zero())))
        .collect();
    for &i in &disjoint {
        let image = g.apply(cfg.class(i))?;
        match cfg.find_class(&image) {
            Some(j) if disjoint.contains(&j) => {}
            Some(_) => {
                // the image meets another (-1)-class; g preserves pairings,
                // so this cannot happen for a consistent model
                return Err(Error::ContractViolated(format!("g moves {} out of the disjoint set", cfg.name(i))));
            }
            None => return Err(Error::OrbitNotClosed { curve: cfg.name(i).to_string() }),
        }
    }
    if disjoint.is_empty() {
        Ok(Minimality::Minimal)
    } else {
        Ok(Minimality::NotMinimal(disjoint.iter().map(|&i| cfg.name(i).to_string()).collect()))
    }
}

/// Output of [`equivariant_blowdown`].
#[derive(Clone, Debug)]
pub struct Blowdown {
    pub model: SurfaceModel,
    pub isometry: Isometry,
    /// New basis vectors written in the old coordinates.
    pub basis: Vec<LatticeVector>,
    /// Whether the new basis puts the form in `diag(1, -1, ..., -1)`.
    pub lorentzian_basis: bool,
}

/// Contracts a `g`-stable set of disjoint `(-1)`-classes: the new lattice
/// is their orthogonal complement, `g` restricts to it, the canonical class
/// becomes `K - sum E` and every remaining curve `C` becomes
/// `C + sum (C . E) E`.
pub fn equivariant_blowdown(g: &Isometry, sigma: &[String], model: &SurfaceModel) -> Result<Blowdown> {
    check_lattice(g, model)?;
    let cfg = model.curves();
    let idx: Vec<usize> = sigma.iter().map(|n| cfg.index_of(n)).collect::<Result<_>>()?;
    if idx.is_empty() {
        return Err(Error::InvalidArgument("nothing to contract".into()));
    }
    for &i in &idx {
        let c = cfg.class(i);
        if !model.is_exceptional_class(c) {
            return Err(Error::NotExceptionalClass {
                curve: cfg.name(i).to_string(),
                square: c.square().to_string(),
                canonical: c.pair(model.canonical())?.to_string(),
            });
        }
    }
    for (a, &i) in idx.iter().enumerate() {
        for &j in &idx[a + 1..] {
            if i == j || !cfg.class(i).pair(cfg.class(j))?.is_zero() {
                return Err(Error::NotDisjoint { a: cfg.name(i).to_string(), b: cfg.name(j).to_string() });
            }
        }
    }
    let classes: Vec<&LatticeVector> = idx.iter().map(|&i| cfg.class(i)).collect();
    for &i in &idx {
        let image = g.apply(cfg.class(i))?;
        if !classes.iter().any(|c| **c == image) {
            return Err(Error::NotGStable { curve: cfg.name(i).to_string() });
        }
    }

    let lattice = model.lattice();
    let n = lattice.rank();
    // Sigma-perp = kernel of the rows (G e)^T
    let rows: Vec<Vec<BigInt>> = classes
        .iter()
        .map(|c| {
            let e = c.to_integers().expect("integral");
            (0..n).map(|j| (0..n).map(|k| &e[k] * &lattice.gram()[(k, j)]).sum()).collect()
        })
        .collect();
    let kernel = integer_kernel(&IntMatrix::from_rows(rows).expect("rectangular"));
    if kernel.len() != n - classes.len() {
        return Err(Error::NoIntegralBasis(format!("complement has rank {}, expected {}", kernel.len(), n - classes.len())));
    }
    let gram_of = |basis: &[Vec<BigInt>]| -> IntMatrix {
        let vs: Vec<LatticeVector> = basis.iter().map(|b| lattice.vector_from_integers(b).unwrap()).collect();
        IntMatrix::from_fn(vs.len(), vs.len(), |i, j| vs[i].pair(&vs[j]).unwrap().to_integer())
    };
    let raw_gram = gram_of(&kernel);
    let (basis, lorentzian) = match lorentzian_normal_form(&raw_gram) {
        Some(change) => {
            // columns of `change` are the new basis in kernel coordinates
            let m = kernel.len();
            let nb: Vec<Vec<BigInt>> = (0..m)
                .map(|c| (0..n).map(|r| (0..m).map(|k| &kernel[k][r] * &change[k][c]).sum()).collect())
                .collect();
            (nb, true)
        }
        None => (kernel, false),
    };
    let gram = gram_of(&basis);
    let new_lattice = if lorentzian { Lattice::lorentzian(basis.len() - 1)? } else { Lattice::new(gram.clone())? };
    debug_assert_eq!(new_lattice.gram(), &gram);
    if gram.determinant().abs() != BigInt::one() {
        return Err(Error::NoIntegralBasis(format!("complement is not unimodular; Gram {:?}", gram.to_rows())));
    }

    // coordinates of old classes in the new basis
    let basis_cols: Vec<Vec<BigRational>> =
        basis.iter().map(|b| b.iter().cloned().map(BigRational::from_integer).collect()).collect();
    let a_rows: Vec<Vec<BigRational>> =
        (0..n).map(|r| basis_cols.iter().map(|b| b[r].clone()).collect()).collect();
    let coords_of = |v: &[BigRational]| -> Result<Vec<BigRational>> {
        solve(&Rationals, &a_rows, v).ok_or_else(|| Error::ContractViolated("class is not in the complement".into()))
    };

    let mut columns = Vec::with_capacity(basis.len());
    for b in &basis_cols {
        columns.push(coords_of(&g.apply_coords(b))?);
    }
    let induced = RatMatrix::from_columns(&columns)
        .expect("square")
        .to_integer()
        .ok_or_else(|| Error::NoIntegralBasis("restriction of g is not integral".into()))?;
    let isometry = Isometry::certify(induced, &new_lattice)?;

    let mut k_proj = model.canonical().clone();
    for c in &classes {
        k_proj = k_proj.sub(c)?;
    }
    let canonical = new_lattice.vector(coords_of(k_proj.coords())?)?;
    let mut kept = Vec::new();
    for i in 0..cfg.len() {
        if idx.contains(&i) {
            continue;
        }
        let mut c = cfg.class(i).clone();
        for e in &classes {
            c = c.add(&e.scale(&cfg.class(i).pair(e)?))?;
        }
        kept.push((cfg.name(i).to_string(), new_lattice.vector(coords_of(c.coords())?)?));
    }
    let new_model = SurfaceModel::new(&new_lattice, canonical, CurveConfig::new(&new_lattice, kept)?)?;

    // spectral conservation: same residual factor, and the permutation on
    // Sigma accounts for the rest of the characteristic polynomial
    let before = spectral_data(g)?;
    let after = spectral_data(&isometry)?;
    if before.split.salem_factor != after.split.salem_factor {
        return Err(Error::ContractViolated(format!(
            "Salem factor changed from {} to {}",
            before.split.salem_factor, after.split.salem_factor
        )));
    }
    let perm = IntMatrix::from_fn(classes.len(), classes.len(), |i, j| {
        let image = g.apply(classes[j]).unwrap();
        if image == *classes[i] {
            BigInt::one()
        } else {
            BigInt::zero()
        }
    });
    let perm_cp = {
        let mut desc = crate::matrix::berkowitz(&perm);
        desc.reverse();
        crate::poly::IntPolynomial::new(desc)
    };
    if after.char_poly.mul(&perm_cp) != char_poly(g) {
        return Err(Error::ContractViolated("characteristic polynomials do not factor through the blowdown".into()));
    }

    Ok(Blowdown {
        model: new_model,
        isometry,
        basis: basis.iter().map(|b| lattice.vector_from_integers(b).unwrap()).collect(),
        lorentzian_basis: lorentzian,
    })
}

const NORMAL_FORM_COEFF: i64 = 4;
const NORMAL_FORM_SUPPORT: usize = 3;

/// Basis change (as columns) taking a unimodular Gram matrix of signature
/// `(1, m)` to `diag(1, -1, ..., -1)`, found by peeling off vectors of
/// square `+1` and then `-1` with small coefficients. `None` when the
/// bounded search fails.
pub fn lorentzian_normal_form(gram: &IntMatrix) -> Option<Vec<Vec<BigInt>>> {
    let m = gram.rows();
    let g: Vec<Vec<i64>> = (0..m).map(|i| (0..m).map(|j| gram[(i, j)].to_i64()).collect::<Option<_>>()).collect::<Option<_>>()?;
    // current sublattice basis, as integer vectors in the original coordinates
    let mut basis: Vec<Vec<i64>> = (0..m).map(|i| (0..m).map(|j| i64::from(i == j)).collect()).collect();
    let mut found: Vec<Vec<i64>> = Vec::with_capacity(m);
    let pair = |u: &[i64], v: &[i64]| -> i64 {
        let mut s = 0;
        for i in 0..m {
            if u[i] == 0 {
                continue;
            }
            for j in 0..m {
                s += u[i] * g[i][j] * v[j];
            }
        }
        s
    };
    for step in 0..m {
        let target = if step == 0 { 1 } else { -1 };
        let k = basis.len();
        let v = small_vectors(k).find_map(|coeffs| {
            let mut v = vec![0i64; m];
            for (c, b) in coeffs.iter().zip(&basis) {
                if *c != 0 {
                    for (vi, bi) in v.iter_mut().zip(b) {
                        *vi += c * bi;
                    }
                }
            }
            (pair(&v, &v) == target).then_some(v)
        })?;
        // orthogonal complement of v inside the current span
        let row: Vec<BigInt> = basis.iter().map(|b| BigInt::from(pair(b, &v))).collect();
        let ker = integer_kernel(&IntMatrix::from_rows(vec![row]).expect("row"));
        let next: Vec<Vec<i64>> = ker
            .iter()
            .map(|c| {
                let mut w = vec![0i64; m];
                for (ci, b) in c.iter().zip(&basis) {
                    let ci = ci.to_i64().unwrap_or(0);
                    for (wi, bi) in w.iter_mut().zip(b) {
                        *wi += ci * bi;
                    }
                }
                w
            })
            .collect();
        found.push(v);
        basis = next;
    }
    let cols: Vec<Vec<BigInt>> = found.iter().map(|v| v.iter().map(|&x| BigInt::from(x)).collect()).collect();
    // rows of the returned matrix index old coordinates
    Some((0..m).map(|r| cols.iter().map(|c| c[r].clone()).collect()).collect())
}

// Coefficient vectors of length k with at most NORMAL_FORM_SUPPORT non-zero
// entries bounded by NORMAL_FORM_COEFF, by increasing support.
fn small_vectors(k: usize) -> impl Iterator<Item = Vec<i64>> {
    let values: Vec<i64> = (1..=NORMAL_FORM_COEFF).flat_map(|c| [c, -c]).collect();
    (1..=NORMAL_FORM_SUPPORT.min(k)).flat_map(move |s| {
        let values = values.clone();
        combinations(k, s).flat_map(move |pos| {
            let values = values.clone();
            let total = values.len().pow(s as u32);
            (0..total).map(move |mut code| {
                let mut v = vec![0i64; k];
                for &p in &pos {
                    v[p] = values[code % values.len()];
                    code /= values.len();
                }
                v
            })
        })
    })
}

fn combinations(n: usize, k: usize) -> impl Iterator<Item = Vec<usize>> {
    let mut current: Option<Vec<usize>> = if k <= n { Some((0..k).collect()) } else { None };
    std::iter::from_fn(move || {
        let out = current.clone()?;
        let mut c = out.clone();
        let mut i = k;
        loop {
            if i == 0 {
                current = None;
                break;
            }
            i -= 1;
            if c[i] < n - k + i {
                c[i] += 1;
                for j in i + 1..k {
                    c[j] = c[j - 1] + 1;
                }
                current = Some(c);
                break;
            }
        }
        Some(out)
    })
}

/// Lattice-level shadow of the rational-tree condition on `Stab(g)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeConditions {
    pub all_at_most_minus_two: bool,
    pub some_at_most_minus_three: bool,
}

#[derive(Clone, Debug)]
pub struct StabReport {
    pub stab_set: Vec<String>,
    /// `Delta = sum a_i C_i` over the components with `a_i > 0`.
    pub delta: Option<Vec<(String, BigRational)>>,
    /// Least `d` with `d Delta` integral.
    pub d_index: Option<BigInt>,
    /// gcd of the coefficients of `d Delta`.
    pub gcd: Option<BigInt>,
    pub minus_two_extras: Vec<String>,
    /// Declared curves `C` with `(K + Delta) . C != 0`.
    pub pairing_violations: Vec<String>,
    /// Present when `d >= 2`. Whether the components form rational trees
    /// is not decidable from lattice data; only these conditions are.
    pub tree_conditions: Option<TreeConditions>,
    pub warnings: Vec<String>,
}

/// Solves `(K + sum a_i C_i) . C_j = 0` over `Stab(g)`.
pub fn anticanonical_delta(g: &Isometry, model: &SurfaceModel) -> Result<StabReport> {
    check_lattice(g, model)?;
    if let Minimality::NotMinimal(sigma) = minimality_check(g, model)? {
        return Err(Error::NotMinimal(sigma));
    }
    let data = spectral_data(g)?;
    let stab = stab_indices(g, model, &data)?;
    if stab.is_empty() {
        return Err(Error::EmptyStab);
    }
    let cfg = model.curves();
    let k = model.canonical();
    for &i in &stab {
        let sq = cfg.class(i).square();
        if sq > BigRational::from_integer((-2).into()) {
            return Err(Error::SelfIntersectionTooLarge { curve: cfg.name(i).to_string(), square: sq.to_string() });
        }
    }
    let a: Vec<Vec<BigRational>> = stab
        .iter()
        .map(|&i| stab.iter().map(|&j| BigRational::from_integer(cfg.gram()[(i, j)].clone())).collect())
        .collect();
    let b: Vec<BigRational> = stab.iter().map(|&j| -k.pair(cfg.class(j)).expect("same lattice")).collect();
    let sol = solve(&Rationals, &a, &b).ok_or_else(|| Error::ContractViolated("singular stab Gram matrix".into()))?;
    if sol.iter().any(|x| x.is_negative()) {
        let parts: Vec<String> = stab.iter().zip(&sol).map(|(&i, x)| format!("{}: {x}", cfg.name(i))).collect();
        return Err(Error::NegativeCoefficient { solution: parts.join(", ") });
    }

    let names: Vec<String> = stab.iter().map(|&i| cfg.name(i).to_string()).collect();
    let support: Vec<usize> = (0..stab.len()).filter(|&t| sol[t].is_positive()).collect();
    let mut warnings = Vec::new();
    let mut minus_two_extras = Vec::new();
    for t in (0..stab.len()).filter(|t| sol[*t].is_zero()) {
        let c = cfg.class(stab[t]);
        let disjoint = support.iter().all(|&u| c.pair(cfg.class(stab[u])).is_ok_and(|p| p.is_zero()));
        if model.is_minus_two_class(c) && disjoint {
            minus_two_extras.push(names[t].clone());
        } else {
            warnings.push(format!("{} has coefficient 0 but is not a (-2)-class disjoint from Supp(Delta)", names[t]));
        }
    }

    let mut report = StabReport {
        stab_set: names.clone(),
        delta: None,
        d_index: None,
        gcd: None,
        minus_two_extras,
        pairing_violations: vec![],
        tree_conditions: None,
        warnings,
    };
    if support.is_empty() {
        return Ok(report);
    }
    let delta: Vec<(String, BigRational)> = support.iter().map(|&t| (names[t].clone(), sol[t].clone())).collect();
    let d = delta.iter().fold(BigInt::one(), |l, (_, a)| l.lcm(a.denom()));
    let gcd = delta.iter().fold(BigInt::zero(), |g, (_, a)| g.gcd(&(a * BigRational::from_integer(d.clone())).to_integer()));
    if !gcd.is_one() {
        report.warnings.push(format!("gcd of the coefficients of d Delta is {gcd}, not 1"));
    }
    let mut k_delta = k.clone();
    for &t in &support {
        k_delta = k_delta.add(&cfg.class(stab[t]).scale(&sol[t]))?;
    }
    for i in 0..cfg.len() {
        if !k_delta.pair(cfg.class(i))?.is_zero() {
            report.pairing_violations.push(cfg.name(i).to_string());
        }
    }
    if d > BigInt::one() {
        let two = BigRational::from_integer((-2).into());
        let three = BigRational::from_integer((-3).into());
        report.tree_conditions = Some(TreeConditions {
            all_at_most_minus_two: stab.iter().all(|&i| cfg.class(i).square() <= two),
            some_at_most_minus_three: stab.iter().any(|&i| cfg.class(i).square() <= three),
        });
    }
    report.delta = Some(delta);
    report.d_index = Some(d);
    report.gcd = Some(gcd);
    Ok(report)
}

/// Largest index `d` compatible with the log Enriques bound.
pub const INDEX_BOUND: u32 = 21;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IndexDiagnostic {
    Ok,
    Warning(String),
}

/// Advisory check `d <= 21`.
pub fn index_diagnostic(report: &StabReport) -> Result<IndexDiagnostic> {
    let d = report.d_index.as_ref().ok_or_else(|| Error::InvalidArgument("report has no index d".into()))?;
    Ok(index_diagnostic_for(d))
}

pub fn index_diagnostic_for(d: &BigInt) -> IndexDiagnostic {
    match d.cmp(&BigInt::from(INDEX_BOUND)) {
        Ordering::Greater => IndexDiagnostic::Warning(format!("index d = {d} exceeds {INDEX_BOUND}")),
        _ => IndexDiagnostic::Ok,
    }
}
