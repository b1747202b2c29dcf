//! Sturm sequences and real-root isolation over the rationals.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::poly::QPoly;

/// Signed remainder sequence `p, p', -rem(p, p'), ...` of a square-free
/// polynomial.
#[derive(Clone, Debug)]
pub struct SturmSequence {
    seq: Vec<QPoly>,
}

impl SturmSequence {
    /// The input is replaced by its square-free part, so the sequence counts
    /// distinct roots.
    pub fn new(p: &QPoly) -> Self {
        let p = p.square_free();
        let mut seq = vec![p.clone()];
        let mut prev = p.clone();
        let mut cur = p.derivative();
        while !cur.is_zero() {
            seq.push(cur.clone());
            let r = prev.rem(&cur).neg();
            prev = cur;
            cur = r;
        }
        SturmSequence { seq }
    }

    pub fn polynomial(&self) -> &QPoly {
        &self.seq[0]
    }

    /// Sign changes at `x`, zeros skipped.
    pub fn variations(&self, x: &BigRational) -> usize {
        count_changes(self.seq.iter().map(|p| sign(&p.eval(x))))
    }

    fn variations_at_infinity(&self, positive: bool) -> usize {
        count_changes(self.seq.iter().map(|p| {
            let d = p.degree().unwrap_or(0);
            let s = sign(p.leading().unwrap_or(&BigRational::zero()));
            if !positive && d % 2 == 1 {
                -s
            } else {
                s
            }
        }))
    }

    /// Number of distinct real roots in the half-open interval `(a, b]`.
    pub fn count_roots(&self, a: &BigRational, b: &BigRational) -> usize {
        if a >= b {
            return 0;
        }
        self.variations(a).saturating_sub(self.variations(b))
    }

    /// Number of distinct real roots in the closed interval `[a, b]`.
    pub fn count_roots_closed(&self, a: &BigRational, b: &BigRational) -> usize {
        let at_a = usize::from(self.seq[0].eval(a).is_zero());
        if a == b {
            return at_a;
        }
        at_a + self.count_roots(a, b)
    }

    pub fn count_real_roots(&self) -> usize {
        self.variations_at_infinity(false).saturating_sub(self.variations_at_infinity(true))
    }

    /// Roots strictly greater than `a`.
    pub fn count_roots_above(&self, a: &BigRational) -> usize {
        self.variations(a).saturating_sub(self.variations_at_infinity(true))
    }
}

fn sign(x: &BigRational) -> i8 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

fn count_changes(signs: impl Iterator<Item = i8>) -> usize {
    let mut last = 0i8;
    let mut n = 0;
    for s in signs.filter(|&s| s != 0) {
        if last != 0 && s != last {
            n += 1;
        }
        last = s;
    }
    n
}

/// Cauchy bound: every complex root has modulus strictly below the result.
pub fn root_bound(p: &QPoly) -> BigRational {
    let lead = p.leading().cloned().unwrap_or_else(BigRational::one).abs();
    let m = p
        .coeffs()
        .iter()
        .take(p.coeffs().len().saturating_sub(1))
        .map(|c| c.abs() / &lead)
        .fold(BigRational::zero(), |a, b| if b > a { b } else { a });
    m + BigRational::one()
}

/// Isolating intervals for the distinct real roots of `p` inside `(lo, hi]`,
/// sorted increasingly. Each returned pair `(a, b)` either has `a == b`
/// (an exact rational root) or satisfies `a < b`, `p(a) != 0`, `p(b) != 0`
/// with exactly one root in between.
pub fn isolate_roots(p: &QPoly, lo: &BigRational, hi: &BigRational) -> Vec<(BigRational, BigRational)> {
    let sturm = SturmSequence::new(p);
    let sf = sturm.polynomial().clone();
    let mut out = Vec::new();
    let mut stack = vec![(lo.clone(), hi.clone())];
    let two = BigRational::from_integer(BigInt::from(2));
    while let Some((a, b)) = stack.pop() {
        let c = sturm.count_roots(&a, &b);
        if c == 0 {
            continue;
        }
        if c == 1 {
            out.push(tighten_single(&sturm, a, b));
            continue;
        }
        let m = (&a + &b) / &two;
        stack.push((a, m.clone()));
        stack.push((m, b));
    }
    out.sort_by(|x, y| x.0.cmp(&y.0));
    debug_assert!(out.iter().all(|(a, b)| a == b || (!sf.eval(a).is_zero() && !sf.eval(b).is_zero())));
    out
}

// Given exactly one root in (a, b], returns an interval satisfying the
// endpoint contract of `isolate_roots`.
fn tighten_single(sturm: &SturmSequence, mut a: BigRational, mut b: BigRational) -> (BigRational, BigRational) {
    let p = sturm.polynomial();
    if p.eval(&b).is_zero() {
        return (b.clone(), b);
    }
    let two = BigRational::from_integer(BigInt::from(2));
    while p.eval(&a).is_zero() {
        let m = (&a + &b) / &two;
        if p.eval(&m).is_zero() {
            if sturm.count_roots(&m, &b) == 0 {
                return (m.clone(), m);
            }
            a = m;
        } else if sturm.count_roots(&a, &m) == 1 {
            b = m;
        } else {
            a = m;
        }
    }
    (a, b)
}
