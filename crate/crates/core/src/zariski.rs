//! Zariski decomposition of a class against a declared configuration of
//! curves, by Fujita's support-growing iteration.
//!
//! Nefness and effectivity only make sense relative to the configuration:
//! `P` is certified to pair non-negatively with every declared curve and `N`
//! is a positive combination of declared curves with negative definite
//! intersection matrix.

use std::collections::BTreeSet;

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::lattice::{Lattice, LatticeVector};
use crate::matrix::{solve, IntMatrix, Rationals};

/// Named integral curve classes in one lattice.
#[derive(Clone, Debug)]
pub struct CurveConfig {
    lattice: Lattice,
    names: Vec<String>,
    classes: Vec<LatticeVector>,
    gram: IntMatrix,
}

impl CurveConfig {
    pub fn new(lattice: &Lattice, curves: Vec<(String, LatticeVector)>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        let mut names = Vec::with_capacity(curves.len());
        let mut classes = Vec::with_capacity(curves.len());
        for (name, class) in curves {
            if !seen.insert(name.clone()) {
                return Err(Error::DuplicateCurve(name));
            }
            if class.lattice() != lattice {
                return Err(Error::LatticeMismatch);
            }
            if !class.is_integral() {
                return Err(Error::NotIntegral);
            }
            names.push(name);
            classes.push(class);
        }
        let gram = IntMatrix::from_fn(classes.len(), classes.len(), |i, j| {
            classes[i].pair(&classes[j]).expect("same lattice").to_integer()
        });
        Ok(CurveConfig { lattice: lattice.clone(), names, classes, gram })
    }

    pub fn empty(lattice: &Lattice) -> Self {
        CurveConfig { lattice: lattice.clone(), names: vec![], classes: vec![], gram: IntMatrix::zeros(0, 0) }
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn classes(&self) -> &[LatticeVector] {
        &self.classes
    }

    pub fn gram(&self) -> &IntMatrix {
        &self.gram
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn class(&self, i: usize) -> &LatticeVector {
        &self.classes[i]
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.names.iter().position(|n| n == name).ok_or_else(|| Error::UnknownCurve(name.to_string()))
    }

    pub fn get(&self, name: &str) -> Result<&LatticeVector> {
        Ok(&self.classes[self.index_of(name)?])
    }

    /// Index of the curve with exactly this class, if declared.
    pub fn find_class(&self, class: &LatticeVector) -> Option<usize> {
        self.classes.iter().position(|c| c == class)
    }

    /// The configuration with curves listed in the order `perm`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        let names = perm.iter().map(|&i| self.names[i].clone()).collect();
        let classes: Vec<LatticeVector> = perm.iter().map(|&i| self.classes[i].clone()).collect();
        let gram = IntMatrix::from_fn(perm.len(), perm.len(), |i, j| self.gram[(perm[i], perm[j])].clone());
        CurveConfig { lattice: self.lattice.clone(), names, classes, gram }
    }

    /// Sub-configuration on the given indices, in that order.
    pub fn subset(&self, idx: &[usize]) -> Self {
        self.permuted(idx)
    }

    /// Whether distinct curves pair non-negatively, as distinct irreducible
    /// curves on a surface do.
    pub fn is_curve_like(&self) -> bool {
        (0..self.len()).all(|i| (0..self.len()).all(|j| i == j || !self.gram[(i, j)].is_negative()))
    }
}

/// Negative definiteness of the principal submatrix on `idx` via leading
/// principal minors: `(-1)^k det_k > 0` for every `k`.
pub fn is_negative_definite_indices(cfg: &CurveConfig, idx: &[usize]) -> bool {
    (1..=idx.len()).all(|k| {
        let det = cfg.gram.submatrix(&idx[..k], &idx[..k]).determinant();
        if k % 2 == 0 {
            det.is_positive()
        } else {
            det.is_negative()
        }
    })
}

pub fn is_negative_definite(names: &[&str], cfg: &CurveConfig) -> Result<bool> {
    let idx: Vec<usize> = names.iter().map(|n| cfg.index_of(n)).collect::<Result<_>>()?;
    Ok(is_negative_definite_indices(cfg, &idx))
}

/// `D = P + N` with `N = sum a_i N_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZariskiPair {
    pub positive: LatticeVector,
    pub negative: LatticeVector,
    /// `(name, a_i)` with `a_i > 0`, in configuration order.
    pub components: Vec<(String, BigRational)>,
}

impl ZariskiPair {
    pub fn support(&self) -> Vec<&str> {
        self.components.iter().map(|(n, _)| n.as_str()).collect()
    }
}

// Solves (sum a_i C_i) . C_j = D . C_j over the support `s`.
fn solve_support(d: &LatticeVector, cfg: &CurveConfig, s: &[usize]) -> Result<Vec<BigRational>> {
    if !is_negative_definite_indices(cfg, s) {
        let names: Vec<&str> = s.iter().map(|&i| cfg.name(i)).collect();
        return Err(Error::NotPseudoEffectiveRelative(format!("support {names:?} is not negative definite")));
    }
    let a: Vec<Vec<BigRational>> = s
        .iter()
        .map(|&i| s.iter().map(|&j| BigRational::from_integer(cfg.gram[(i, j)].clone())).collect())
        .collect();
    let b: Vec<BigRational> = s.iter().map(|&j| d.pair(cfg.class(j)).expect("same lattice")).collect();
    Ok(solve(&Rationals, &a, &b).expect("negative definite system is regular"))
}

fn combination(cfg: &CurveConfig, s: &[usize], a: &[BigRational]) -> LatticeVector {
    let mut n = cfg.lattice.zero_vector();
    for (&i, ai) in s.iter().zip(a) {
        n = n.add(&cfg.class(i).scale(ai)).expect("same lattice");
    }
    n
}

pub fn zariski_decompose(d: &LatticeVector, cfg: &CurveConfig) -> Result<ZariskiPair> {
    decompose_seeded(d, cfg, &[])
}

/// Fujita iteration started from the support `seed` instead of the empty
/// set. Any seed inside the true support of `N` leads to the same answer;
/// the coefficients are only required to be positive at the end.
pub fn decompose_seeded(d: &LatticeVector, cfg: &CurveConfig, seed: &[usize]) -> Result<ZariskiPair> {
    if d.lattice() != cfg.lattice() {
        return Err(Error::LatticeMismatch);
    }
    let mut support: Vec<usize> = seed.to_vec();
    support.sort_unstable();
    support.dedup();
    let mut coeffs: Vec<BigRational> = Vec::new();
    let mut positive = d.clone();
    if !support.is_empty() {
        coeffs = solve_support(d, cfg, &support)?;
        positive = d.sub(&combination(cfg, &support, &coeffs))?;
    }
    for _round in 0..=cfg.len() {
        let fresh: Vec<usize> = (0..cfg.len())
            .filter(|i| !support.contains(i))
            .filter(|&i| positive.pair(cfg.class(i)).expect("same lattice").is_negative())
            .collect();
        if fresh.is_empty() {
            break;
        }
        let before = support.len();
        support.extend(fresh);
        support.sort_unstable();
        debug_assert!(support.len() > before, "support never shrinks");
        coeffs = solve_support(d, cfg, &support)?;
        if seed.is_empty() {
            if let Some(k) = coeffs.iter().position(|a| !a.is_positive()) {
                return Err(Error::NotPseudoEffectiveRelative(format!(
                    "coefficient of {} is {} <= 0",
                    cfg.name(support[k]),
                    coeffs[k]
                )));
            }
        }
        positive = d.sub(&combination(cfg, &support, &coeffs))?;
    }
    if let Some(k) = coeffs.iter().position(|a| !a.is_positive()) {
        return Err(Error::NotPseudoEffectiveRelative(format!(
            "coefficient of {} is {} <= 0",
            cfg.name(support[k]),
            coeffs[k]
        )));
    }
    let negative = combination(cfg, &support, &coeffs);
    let pair = ZariskiPair {
        positive,
        negative,
        components: support.iter().zip(&coeffs).map(|(&i, a)| (cfg.name(i).to_string(), a.clone())).collect(),
    };
    certify(d, cfg, &pair, &support)?;
    Ok(pair)
}

fn certify(d: &LatticeVector, cfg: &CurveConfig, z: &ZariskiPair, support: &[usize]) -> Result<()> {
    let violated = |what: &str| Err(Error::ContractViolated(format!("Zariski decomposition: {what}")));
    if z.positive.add(&z.negative)? != *d {
        return violated("P + N != D");
    }
    if !is_negative_definite_indices(cfg, support) {
        return violated("support is not negative definite");
    }
    for i in 0..cfg.len() {
        let p = z.positive.pair(cfg.class(i))?;
        if p.is_negative() {
            // only reachable when the loop ran out of rounds
            return Err(Error::NotPseudoEffectiveRelative(format!("P . {} = {p} < 0", cfg.name(i))));
        }
        if support.contains(&i) && !p.is_zero() {
            return violated("P does not vanish on the support");
        }
    }
    Ok(())
}

/// Outcome of [`zariski_uniqueness_probe`].
#[derive(Clone, Debug)]
pub struct ProbeReport {
    pub trials: usize,
    /// The common decomposition, or the common failure message.
    pub outcome: std::result::Result<ZariskiPair, String>,
}

/// Re-runs the decomposition on shuffled copies of `cfg`, each seeded with a
/// random support between the initially negative curves and the final
/// support, and checks that `N` never changes. Trials run in parallel; the
/// random choices are derived from `seed`.
pub fn zariski_uniqueness_probe(d: &LatticeVector, cfg: &CurveConfig, trials: usize, seed: u64) -> Result<ProbeReport> {
    let base = zariski_decompose(d, cfg);
    let initial: Vec<usize> =
        (0..cfg.len()).filter(|&i| d.pair(cfg.class(i)).map(|p| p.is_negative()).unwrap_or(false)).collect();
    let support: Vec<usize> = match &base {
        Ok(z) => z.components.iter().map(|(n, _)| cfg.index_of(n).expect("known")).collect(),
        Err(_) => vec![],
    };
    let results: Vec<Result<()>> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = StdRng::seed_from_u64(seed.wrapping_add(t as u64));
            let mut perm: Vec<usize> = (0..cfg.len()).collect();
            perm.shuffle(&mut rng);
            let shuffled = cfg.permuted(&perm);
            let position = |orig: usize| perm.iter().position(|&p| p == orig).expect("permutation");
            match &base {
                Ok(z) => {
                    let seed_set: Vec<usize> = support
                        .iter()
                        .filter(|i| initial.contains(i) || rng.gen_bool(0.5))
                        .map(|&i| position(i))
                        .collect();
                    let again = decompose_seeded(d, &shuffled, &seed_set)
                        .map_err(|e| Error::NonUniqueResult(format!("trial {t} failed: {e}")))?;
                    if again.negative != z.negative {
                        return Err(Error::NonUniqueResult(format!(
                            "trial {t}: N = {} differs from {}",
                            again.negative, z.negative
                        )));
                    }
                    Ok(())
                }
                Err(e) => match zariski_decompose(d, &shuffled) {
                    Err(e2) if e2.code() == e.code() => Ok(()),
                    Err(e2) => Err(Error::NonUniqueResult(format!("trial {t}: failure changed to {e2}"))),
                    Ok(z) => Err(Error::NonUniqueResult(format!("trial {t}: decomposed to N = {}", z.negative))),
                },
            }
        })
        .collect();
    for r in results {
        r?;
    }
    Ok(ProbeReport { trials, outcome: base.map_err(|e| e.to_string()) })
}

/// The pairing fact behind Zariski's lemma, relative to `cfg`: if `m` is
/// nef against `cfg` and non-zero, `d` decomposes against `cfg` and is
/// non-zero, and `m . d = 0`, then `d^2 <= 0`, with equality only if
/// `m^2 = 0` and `d` is proportional to `m`.
///
/// Returns `None` when the hypotheses do not hold, otherwise whether the
/// conclusion does.
pub fn orthogonal_pairing_conclusion(m: &LatticeVector, d: &LatticeVector, cfg: &CurveConfig) -> Result<Option<bool>> {
    if m.is_zero() || d.is_zero() || !m.pair(d)?.is_zero() {
        return Ok(None);
    }
    for c in cfg.classes() {
        if m.pair(c)?.is_negative() {
            return Ok(None);
        }
    }
    if zariski_decompose(d, cfg).is_err() {
        return Ok(None);
    }
    let d2 = d.square();
    if d2.is_positive() {
        return Ok(Some(false));
    }
    if d2.is_zero() {
        let proportional = m.same_ray(d) || m.same_ray(&d.neg());
        return Ok(Some(m.square().is_zero() && proportional));
    }
    Ok(Some(true))
}
