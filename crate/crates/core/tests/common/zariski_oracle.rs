use hyplat::lattice::LatticeVector;
use hyplat::matrix::{solve, Rationals};
use hyplat::zariski::{is_negative_definite_indices, CurveConfig};
use num_rational::BigRational;
use num_traits::{Signed, Zero};

/// All-subsets search for `N`: a negative definite support `S` with
/// strictly positive coefficients solving `(D - N) . C = 0` on `S`, and
/// `D - N` non-negative on every curve. Returns `Err` when two supports
/// qualify with different `N`.
pub fn oracle_negative_part(d: &LatticeVector, cfg: &CurveConfig) -> Result<Option<LatticeVector>, String> {
    let n = cfg.len();
    let mut found: Option<LatticeVector> = None;
    for mask in 0u32..(1 << n) {
        let s: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
        if !is_negative_definite_indices(cfg, &s) {
            continue;
        }
        let a: Vec<Vec<BigRational>> = s
            .iter()
            .map(|&i| s.iter().map(|&j| cfg.class(i).pair(cfg.class(j)).unwrap()).collect())
            .collect();
        let b: Vec<BigRational> = s.iter().map(|&j| d.pair(cfg.class(j)).unwrap()).collect();
        let x = if s.is_empty() { vec![] } else { solve(&Rationals, &a, &b).unwrap() };
        if x.iter().any(|v| !v.is_positive()) {
            continue;
        }
        let mut neg = d.lattice().zero_vector();
        for (&i, xi) in s.iter().zip(&x) {
            neg = neg.add(&cfg.class(i).scale(xi)).unwrap();
        }
        let pos = d.sub(&neg).unwrap();
        if (0..n).any(|i| pos.pair(cfg.class(i)).unwrap().is_negative()) {
            continue;
        }
        debug_assert!(s.iter().all(|&i| pos.pair(cfg.class(i)).unwrap().is_zero()));
        match &found {
            Some(prev) if *prev != neg => return Err(format!("supports disagree: {prev} vs {neg}")),
            _ => found = Some(neg),
        }
    }
    Ok(found)
}
