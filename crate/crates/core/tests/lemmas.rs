use lintersect::setfamily::{
    core_overlap_check, find_l_violation, helly_reduce, intersection_size, is_l_intersecting,
    is_t_wise_l_intersecting, union_size_check, LSet, LemmaError, Subset, SubsetFamily,
};
use proptest::prelude::*;

fn family(n: u32, masks: &[u64]) -> Option<SubsetFamily> {
    let mut v: Vec<u64> = masks.iter().map(|m| m & Subset::full(n).mask()).collect();
    v.sort_unstable();
    v.dedup();
    SubsetFamily::new(n, v.into_iter().map(Subset::from_mask).collect()).ok()
}

/// Smallest subfamily with empty common intersection, by trying every index
/// subset in order of size.
fn min_empty_subfamily(masks: &[u64], n: u32) -> Option<usize> {
    let full = (1u64 << n) - 1;
    let m = masks.len();
    let mut best: Option<usize> = None;
    for pick in 1u32..(1 << m) {
        let meet = (0..m).filter(|i| pick >> i & 1 == 1).fold(full, |acc, i| acc & masks[i]);
        if meet == 0 {
            let size = pick.count_ones() as usize;
            best = Some(best.map_or(size, |b| b.min(size)));
        }
    }
    best
}

fn family_strategy(max_n: u32, max_members: usize) -> impl Strategy<Value = (u32, Vec<u64>)> {
    (1..=max_n).prop_flat_map(move |n| (Just(n), prop::collection::vec(0u64..(1 << n), 1..=max_members)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn helly_matches_brute_force((n, masks) in family_strategy(6, 8)) {
        let Some(f) = family(n, &masks) else { return Ok(()) };
        let raw: Vec<u64> = f.members().iter().map(|s| s.mask()).collect();
        let k = f.max_size() as usize;
        match (helly_reduce(&f), min_empty_subfamily(&raw, n)) {
            (Ok(h), Some(min)) => {
                prop_assert!(h.common_intersection().is_empty());
                prop_assert!(h.len() <= k + 1);
                prop_assert!(min <= k + 1);
                prop_assert!(h.len() >= min);
                prop_assert!(h.members().iter().all(|m| f.members().contains(m)));
            }
            (Err(LemmaError::NonemptyIntersection(_)), None) => {}
            (got, oracle) => prop_assert!(false, "helly {got:?} vs oracle {oracle:?}"),
        }
    }

    #[test]
    fn twise_with_t2_is_pairwise((n, masks) in family_strategy(6, 8), lvals in prop::collection::btree_set(0u32..6, 1..4)) {
        let Some(f) = family(n, &masks) else { return Ok(()) };
        let l = LSet::new(lvals.into_iter().collect()).unwrap();
        prop_assert_eq!(is_t_wise_l_intersecting(&f, &l, 2), is_l_intersecting(&f, &l));
    }

    #[test]
    fn union_size_holds_for_intersecting_families((n, masks) in family_strategy(8, 6)) {
        let Some(f) = family(n, &masks) else { return Ok(()) };
        let one = LSet::new((1..=8).collect()).unwrap();
        if f.len() >= 2 && find_l_violation(&f, &one).is_none() {
            prop_assert_eq!(union_size_check(&f), Ok(true));
        }
    }
}

#[test]
fn core_overlap_exhaustive_small() {
    // Every H of at most 3 members over [5] and every F; the full n <= 6,
    // |H| <= 4 sweep runs in the acceptance suite.
    let n = 5;
    let all: Vec<u64> = (1..1u64 << n).collect();
    let mut checked = 0;
    for size in 1..=3usize {
        let mut idx: Vec<usize> = (0..size).collect();
        loop {
            let h: Vec<u64> = idx.iter().map(|&i| all[i]).collect();
            if h.iter().fold(u64::MAX, |a, m| a & m) == 0 {
                let fam = SubsetFamily::new(n, h.iter().map(|&m| Subset::from_mask(m)).collect()).unwrap();
                for f in 0..1u64 << n {
                    let fs = Subset::from_mask(f);
                    if h.contains(&f) {
                        continue;
                    }
                    let l1 = h.iter().map(|&m| intersection_size(fs, Subset::from_mask(m))).min().unwrap();
                    for l in 1..=l1 {
                        assert_eq!(core_overlap_check(&fam, fs, l), Ok(true), "H={h:?} F={f:b} l1={l}");
                        checked += 1;
                    }
                }
            }
            let Some(i) = (0..size).rev().find(|&i| idx[i] < i + all.len() - size) else { break };
            idx[i] += 1;
            for j in i + 1..size {
                idx[j] = idx[j - 1] + 1;
            }
        }
    }
    assert!(checked > 0);
}

#[test]
fn union_size_exhaustive_pairs_and_triples() {
    let n = 6u32;
    let one = LSet::new((1..=6).collect()).unwrap();
    for a in 1u64..1 << n {
        for b in a + 1..1 << n {
            if a & b == 0 {
                continue;
            }
            let f = SubsetFamily::new(n, vec![Subset::from_mask(a), Subset::from_mask(b)]).unwrap();
            assert!(is_l_intersecting(&f, &one));
            assert_eq!(union_size_check(&f), Ok(true));
        }
    }
}
