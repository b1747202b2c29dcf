mod common;

use common::{coxeter_conjugate, coxeter_conjugate_strategy};
use hyplat::matrix::Field;
use hyplat::nef::{invariant_splitting, leading_eigenvectors, power_iterate, NumberFieldVector};
use hyplat::spectral::spectral_data;
use hyplat::weyl::RootSystem;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn leading_rays_are_isotropic_and_orthogonal_to_k((order, conj) in coxeter_conjugate_strategy(10, 20)) {
        let rs = RootSystem::new(10).unwrap();
        let g = coxeter_conjugate(&rs, &order, &conj);
        let data = spectral_data(&g).unwrap();
        prop_assume!(data.class.is_positive());
        let rays = leading_eigenvectors(&g).unwrap();
        let k = rays.plus.field().clone();
        prop_assert!(k.is_zero(&rays.plus.square()));
        prop_assert!(k.is_zero(&rays.minus.square()));
        prop_assert!(k.is_positive(&rays.plus.pair(&rays.minus).unwrap()));
        prop_assert!(k.is_zero(&rays.plus.pair_rational(rs.canonical()).unwrap()));
        prop_assert!(k.is_zero(&rays.minus.pair_rational(rs.canonical()).unwrap()));

        // no positive multiple of L+ is rational: some coordinate ratio is irrational
        let c = rays.plus.coords();
        let pivot = c.iter().position(|x| !k.is_zero(x)).unwrap();
        prop_assert!(c.iter().any(|x| !k.div(x, &c[pivot]).is_rational()));
    }

    #[test]
    fn periodic_classes_are_orthogonal_and_negative((order, conj) in coxeter_conjugate_strategy(11, 20)) {
        let rs = RootSystem::new(11).unwrap();
        let g = coxeter_conjugate(&rs, &order, &conj);
        let data = spectral_data(&g).unwrap();
        prop_assume!(data.class.is_positive());
        let rays = leading_eigenvectors(&g).unwrap();
        let split = invariant_splitting(&g).unwrap();
        let k = rays.plus.field().clone();
        let gs = g.power(split.s as i64);
        for d in &split.fixed_basis {
            prop_assert_eq!(&gs.apply(d).unwrap(), d);
            prop_assert!(k.is_zero(&rays.plus.pair_rational(d).unwrap()));
            prop_assert!(k.is_zero(&rays.minus.pair_rational(d).unwrap()));
            prop_assert!(d.square().is_negative());
        }
    }

    #[test]
    fn rays_ignore_positive_rescaling((order, conj) in coxeter_conjugate_strategy(10, 12), scale in 1i64..20) {
        let rs = RootSystem::new(10).unwrap();
        let g = coxeter_conjugate(&rs, &order, &conj);
        prop_assume!(spectral_data(&g).unwrap().class.is_positive());
        let rays = leading_eigenvectors(&g).unwrap();
        let k = rays.plus.field().clone();
        let q = BigRational::from_integer(BigInt::from(scale));
        let scaled = rays.plus.scale(&k.from_coefficients(vec![q]));
        prop_assert!(scaled.same_ray(&rays.plus).unwrap());
        let (a, b) = (scaled.normalized(), rays.plus.normalized());
        prop_assert_eq!(a.coords(), b.coords());

        let b = rs.lattice().basis_vector(0);
        let p1 = power_iterate(&g, &b, 4000, 1e-10);
        let p2 = power_iterate(&g, &b.scale(&BigRational::from_integer(BigInt::from(scale))), 4000, 1e-10);
        if let (Ok(p1), Ok(p2)) = (p1, p2) {
            let dot: f64 = p1.direction.iter().zip(&p2.direction).map(|(a, b)| a * b).sum();
            prop_assert!((dot - 1.0).abs() < 1e-9);
        }
    }
}

#[test]
fn rational_classes_embed() {
    let rs = RootSystem::new(10).unwrap();
    let v = NumberFieldVector::from_rational(rs.canonical());
    assert!(v.is_rational());
    assert_eq!(v.to_lattice_vector().as_ref(), Some(rs.canonical()));
}
