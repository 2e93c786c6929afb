//! Algebraic invariants of the MAP model.

use hdc_core::{bind, bundle, cosine, rng, BipolarHypervector, BundleVector, Components};
use proptest::prelude::*;

fn all_bipolar(dim: usize) -> Vec<BipolarHypervector> {
    (0..1usize << dim)
        .map(|bits| {
            let cs = (0..dim)
                .map(|i| if bits >> i & 1 == 1 { 1i8 } else { -1i8 })
                .collect();
            BipolarHypervector::new(cs).unwrap()
        })
        .collect()
}

#[test]
fn binding_self_inverse_exhaustive_at_dim_4() {
    for a in all_bipolar(4) {
        let identity = bind(&a, &a).unwrap();
        assert!(identity.components().iter().all(|&c| c == 1));
        for b in all_bipolar(4) {
            let recovered = bind(&bind(&a, &b).unwrap(), &b).unwrap();
            assert_eq!(recovered, a);
        }
    }
}

#[test]
fn binding_self_inverse_randomized_at_dim_10000() {
    let mut r = rng::root(11);
    for _ in 0..5 {
        let a = BipolarHypervector::random(10_000, &mut r).unwrap();
        let b = BipolarHypervector::random(10_000, &mut r).unwrap();
        assert_eq!(bind(&bind(&a, &b).unwrap(), &b).unwrap(), a);
    }
}

#[test]
fn binding_distributes_over_raw_bundling() {
    let mut r = rng::root(12);
    let a = BipolarHypervector::random(512, &mut r).unwrap();
    let b = BipolarHypervector::random(512, &mut r).unwrap();
    let c = BipolarHypervector::random(512, &mut r).unwrap();

    let bundled = bundle(&[&a, &b]).unwrap();
    let lhs: Vec<i64> = bundled
        .components()
        .iter()
        .zip(c.components())
        .map(|(&s, &x)| s * x as i64)
        .collect();
    let rhs = bundle(&[&bind(&c, &a).unwrap(), &bind(&c, &b).unwrap()]).unwrap();
    assert_eq!(lhs, rhs.components());
}

#[test]
fn bundle_is_more_similar_to_members_than_to_noise() {
    for seed in 0..100u64 {
        let mut r = rng::root(1000 + seed);
        let a = BipolarHypervector::random(10_000, &mut r).unwrap();
        let b = BipolarHypervector::random(10_000, &mut r).unwrap();
        let c = BipolarHypervector::random(10_000, &mut r).unwrap();
        let d = BipolarHypervector::random(10_000, &mut r).unwrap();
        let s = bundle(&[&a, &b, &c]).unwrap();
        let member = cosine(&a, &s).unwrap();
        let outsider = cosine(&d, &s).unwrap();
        assert!(
            member > outsider + 0.1,
            "seed {seed}: member {member}, outsider {outsider}"
        );
    }
}

#[test]
fn permutation_preserves_norm_and_multiset() {
    let mut r = rng::root(13);
    let v = BipolarHypervector::random(64, &mut r).unwrap();
    let p = v.permute(17);
    assert_eq!(v.to_bundle().squared_norm(), p.to_bundle().squared_norm());
    let mut a = v.components().to_vec();
    let mut b = p.components().to_vec();
    a.sort_unstable();
    b.sort_unstable();
    assert_eq!(a, b);
}

#[test]
fn permutation_breaks_bind_commutativity() {
    // Randomized search at D=16 must find a witness pair.
    let mut r = rng::root(14);
    let found = (0..100).any(|_| {
        let a = BipolarHypervector::random(16, &mut r).unwrap();
        let b = BipolarHypervector::random(16, &mut r).unwrap();
        bind(&a, &b.permute(1)).unwrap() != bind(&b, &a.permute(1)).unwrap()
    });
    assert!(found);
}

#[test]
fn cosine_is_scale_invariant_for_positive_scaling() {
    let a = BundleVector::new(vec![3, -1, 2, 0]);
    let scaled = BundleVector::new(vec![6, -2, 4, 0]);
    let b = BundleVector::new(vec![1, 1, -1, 2]);
    let plain = cosine(&a, &b).unwrap();
    let with_scale = cosine(&scaled, &b).unwrap();
    assert!((plain - with_scale).abs() < 1e-12);
}

proptest! {
    #[test]
    fn cosine_is_symmetric_and_bounded(
        a in prop::collection::vec(-5i64..=5, 16),
        b in prop::collection::vec(-5i64..=5, 16),
    ) {
        let av = BundleVector::new(a);
        let bv = BundleVector::new(b);
        if let (Ok(ab), Ok(ba)) = (cosine(&av, &bv), cosine(&bv, &av)) {
            prop_assert!((ab - ba).abs() < 1e-12);
            prop_assert!(ab.abs() <= 1.0 + 1e-12);
        }
    }

    #[test]
    fn permute_inverse_roundtrip(shift in 0i64..32, bits in 0u32..(1 << 16)) {
        let cs: Vec<i8> = (0..16).map(|i| if bits >> i & 1 == 1 { 1 } else { -1 }).collect();
        let v = BipolarHypervector::new(cs).unwrap();
        let d = 16i64;
        prop_assert_eq!(v.permute(shift).permute(d - (shift % d)), v);
    }
}
