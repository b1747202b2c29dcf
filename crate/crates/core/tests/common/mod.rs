#![allow(dead_code)]

use hyplat::lattice::{Isometry, Lattice, LatticeVector};
use hyplat::weyl::{weyl_word, RootSystem};
use proptest::prelude::*;

/// Words in the simple reflections of `W_n`.
pub fn word_strategy(n: usize, max_len: usize) -> impl Strategy<Value = Vec<usize>> {
    proptest::collection::vec(0..n, 1..=max_len)
}

pub fn word(rs: &RootSystem, letters: &[usize]) -> Isometry {
    weyl_word(rs, letters).unwrap()
}

/// Coxeter element of the `E10` sub-diagram (roots `alpha_0 .. alpha_9`)
/// inside `W_n`, `n >= 10`. It acts on `e0 .. e10` like the Coxeter
/// element of `W_10` and fixes `e11, ..., en`.
pub fn e10_coxeter_in(rs: &RootSystem) -> Isometry {
    word(rs, &(0..10).collect::<Vec<_>>())
}

/// `-3 e0 + e1 + ... + e10` on `Z^{1,n}`.
pub fn k10(l: &Lattice) -> LatticeVector {
    let mut k = vec![0i64; l.rank()];
    k[0] = -3;
    for x in &mut k[1..=10] {
        *x = 1;
    }
    l.vector_from_i64(&k).unwrap()
}

pub fn ivec(l: &Lattice, c: &[i64]) -> LatticeVector {
    l.vector_from_i64(c).unwrap()
}

/// A Coxeter element for a random ordering of the simple roots,
/// conjugated by a random word: positive entropy for `n >= 10`.
pub fn coxeter_conjugate_strategy(n: usize, max_len: usize) -> impl Strategy<Value = (Vec<usize>, Vec<usize>)> {
    (Just((0..n).collect::<Vec<_>>()).prop_shuffle(), proptest::collection::vec(0..n, 0..=max_len))
}

pub fn coxeter_conjugate(rs: &RootSystem, order: &[usize], conj: &[usize]) -> Isometry {
    let u = if conj.is_empty() { Isometry::identity(rs.lattice()) } else { word(rs, conj) };
    u.compose(&word(rs, order)).unwrap().compose(&u.inverse()).unwrap()
}
