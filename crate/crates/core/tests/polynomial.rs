use lintersect::exactnum::Rational;
use lintersect::polymethod::{
    certify_cross_intersecting, independence_certificate, intersection_poly, replay_certificate,
};
use lintersect::setfamily::{intersection_size, LSet, Subset, SubsetFamily};
use num_traits::Zero;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// `prod (|a ∩ b| - l)` computed directly on integers.
fn direct_product(a: Subset, b: Subset, l: &LSet) -> Rational {
    let k = intersection_size(a, b) as i64;
    let v: i64 = l.values().iter().map(|&li| k - li as i64).product();
    Rational::from_integer(v.into())
}

fn lset_strategy(max: u32) -> impl Strategy<Value = LSet> {
    prop::collection::btree_set(0..max, 1..=3).prop_map(|s| LSet::new(s.into_iter().collect()).unwrap())
}

#[test]
fn reduction_exact_on_every_point_small_n() {
    for n in 1..=5u32 {
        for lvals in [vec![0], vec![1], vec![0, 1], vec![0, 2], vec![1, 2, 3]] {
            let l = LSet::new(lvals).unwrap();
            for a in 0..1u64 << n {
                let a = Subset::from_mask(a);
                let p = intersection_poly(a, &l, n);
                assert!(p.degree() <= l.s());
                for b in 0..1u64 << n {
                    let b = Subset::from_mask(b);
                    assert_eq!(p.evaluate(b), direct_product(a, b, &l));
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn reduction_exact_on_every_point(n in 6u32..=10, a in any::<u64>(), l in lset_strategy(5)) {
        let a = Subset::from_mask(a & Subset::full(n).mask());
        let p = intersection_poly(a, &l, n);
        prop_assert!(p.degree() <= l.s());
        for b in 0..1u64 << n {
            let b = Subset::from_mask(b);
            prop_assert_eq!(p.evaluate(b), direct_product(a, b, &l));
        }
    }

    #[test]
    fn rank_invariant_under_order_and_scaling(
        n in 2u32..=6,
        masks in prop::collection::vec(any::<u64>(), 1..10),
        l in lset_strategy(4),
        seed in any::<u64>(),
        scales in prop::collection::vec((-5i64..=5).prop_filter("nonzero", |v| *v != 0), 10),
    ) {
        let polys: Vec<_> = masks
            .iter()
            .map(|m| intersection_poly(Subset::from_mask(m & Subset::full(n).mask()), &l, n))
            .collect();
        let base = independence_certificate(&polys);
        let mut shuffled = polys.clone();
        shuffled.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        let scaled: Vec<_> = shuffled
            .iter()
            .zip(scales.iter().cycle())
            .map(|(p, &c)| p.scale(&Rational::from_integer(c.into())))
            .collect();
        let other = independence_certificate(&scaled);
        prop_assert_eq!(base.rank, other.rank);
        prop_assert_eq!(base.independent, other.independent);
        prop_assert!(base.rank <= polys.len());
    }
}

/// Random maximal-by-greedy family with pairwise intersections in `L` and
/// sizes outside `L`.
fn random_family(n: u32, l: &LSet, rng: &mut ChaCha8Rng) -> SubsetFamily {
    let mut pool: Vec<u64> = (0..1u64 << n)
        .filter(|&m| !l.contains(m.count_ones()))
        .collect();
    pool.shuffle(rng);
    let mut chosen: Vec<u64> = Vec::new();
    for m in pool {
        if chosen.iter().all(|&c| l.contains((c & m).count_ones())) {
            chosen.push(m);
        }
    }
    SubsetFamily::new(n, chosen.into_iter().map(Subset::from_mask).collect()).unwrap()
}

#[test]
fn single_family_certificates_hold() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let ls = [vec![0], vec![1], vec![0, 1], vec![0, 2], vec![1, 2], vec![0, 1, 2]];
    let mut runs = 0;
    for n in 2..=7u32 {
        for lvals in &ls {
            let l = LSet::new(lvals.clone()).unwrap();
            for _ in 0..3 {
                let a = random_family(n, &l, &mut rng);
                if a.is_empty() {
                    continue;
                }
                let cert = certify_cross_intersecting(&a, &a, &l).unwrap();
                assert!(cert.all_ok(), "n={n} L={l} family:\n{}", a.to_text());
                let replay = replay_certificate(&cert.to_text()).unwrap();
                assert!(replay.independent);
                runs += 1;
            }
        }
    }
    assert!(runs > 50);
}

#[test]
fn zero_polynomial_is_dependent() {
    let l = LSet::new(vec![0]).unwrap();
    let p = intersection_poly(Subset::from_elements([1]), &l, 3);
    let z = p.scale(&Rational::zero());
    let cert = independence_certificate(&[p, z]);
    assert_eq!(cert.rank, 1);
    assert!(!cert.independent);
}
