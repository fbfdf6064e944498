//! Acceptance gate: one PASS/FAIL line per criterion, with wall-clock limits.
//! Run with `cargo test -p lintersect-cli --test acceptance`.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::time::{Duration, Instant};

use lintersect::bounds::{binomial_tail_check, ekr_bound, q_tail_check, snevily_positive_bound, Universe};
use lintersect::exactnum::{binom, binom_sum, qbinom, Natural, Rational};
use lintersect::polymethod::{certify_cross_intersecting, replay_certificate};
use lintersect::qspace::{enumerate_subspaces, is_l_intersecting_subspaces, is_sperner, lym_sum};
use lintersect::search::{max_pairwise_family, solve, witness_satisfies, Candidates, SearchProblem, Witness};
use lintersect::setfamily::{
    core_overlap_check, helly_reduce, is_l_intersecting, union_size_check, IntersectionSpec, LSet, LemmaError, Mode,
    SizeRule, Subset, SubsetFamily,
};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

type Outcome = Result<String, String>;

/// Name, wall-clock limit, check.
type Criterion = (&'static str, Duration, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn lset(v: &[u32]) -> LSet {
    LSet::new(v.to_vec()).unwrap()
}

fn spec(l: &[u32], k: Option<Vec<u32>>, rule: SizeRule) -> IntersectionSpec {
    IntersectionSpec::new(lset(l), k, 2, Mode::Pairwise, rule).unwrap()
}

fn nat(x: usize) -> Natural {
    Natural::from(x)
}

fn run_search(universe: Universe, spec: IntersectionSpec) -> Result<(usize, Witness), String> {
    let p = SearchProblem::new(universe, spec);
    let r = solve(&p).map_err(|e| e.to_string())?;
    ensure!(r.completed, "search did not complete");
    ensure!(witness_satisfies(&p, &r.witness), "witness fails the constraints");
    ensure!(r.witness.len() == r.optimum, "witness size {} vs optimum {}", r.witness.len(), r.optimum);
    Ok((r.optimum, r.witness))
}

fn subspace_counts() -> Outcome {
    let mut total4 = 0;
    for n in 0..=5u32 {
        for k in 0..=n {
            let got = enumerate_subspaces(n, 2, Some(k)).map_err(|e| e.to_string())?.len();
            let want = qbinom(n as u64, k as i64, 2).unwrap();
            ensure!(nat(got) == want, "n={n} k={k}: {got} subspaces, qbinom {want}");
            if n == 4 {
                total4 += got;
            }
        }
    }
    let at_42 = enumerate_subspaces(4, 2, Some(2)).unwrap().len();
    let at_52 = enumerate_subspaces(5, 2, Some(2)).unwrap().len();
    ensure!((at_42, at_52, total4) == (35, 155, 67), "got {at_42}, {at_52}, {total4}");
    Ok(format!("(4,2)={at_42} (5,2)={at_52} total(4)={total4}"))
}

fn ekr_tightness() -> Outcome {
    let mut parts = Vec::new();
    for (n, k, want) in [(5u32, 2u32, 4usize), (6, 3, 10)] {
        let start = Instant::now();
        let l: Vec<u32> = (1..k).collect();
        let (opt, _) = run_search(Universe::Sets { n }, spec(&l, Some(vec![k]), SizeRule::InK))?;
        let bound = ekr_bound(n, k).value;
        ensure!(opt == want && nat(opt) == bound, "(n,k)=({n},{k}): optimum {opt}, C(n-1,k-1)={bound}");
        ensure!(start.elapsed() < Duration::from_secs(10), "(n,k)=({n},{k}) took {:?}", start.elapsed());
        parts.push(format!("({n},{k})->{opt}"));
    }
    Ok(parts.join(" "))
}

fn prefix_tightness() -> Outcome {
    let (opt, w) = run_search(Universe::Sets { n: 6 }, spec(&[0, 1], None, SizeRule::NotInL))?;
    ensure!(nat(opt) == binom(6, 2), "optimum {opt}, C(6,2) = 15");
    let Witness::Sets(f) = w else { return Err("wrong witness kind".into()) };
    ensure!(is_l_intersecting(&f, &lset(&[0, 1])), "witness not L-intersecting");
    ensure!(f.members().iter().all(|m| m.len() >= 2), "witness has a member of size in L");
    Ok(format!("optimum {opt}, witness sizes {:?}", f.size_profile()))
}

fn star_tightness() -> Outcome {
    let (opt, _) = run_search(Universe::Sets { n: 5 }, spec(&[1], None, SizeRule::None))?;
    let bound = snevily_positive_bound(5, 1, Some(1)).value;
    ensure!(opt == 5 && nat(opt) == binom_sum(4, 0, 1) && nat(opt) == bound, "optimum {opt}, bound {bound}");
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let path = dir.path().join("star.txt");
    std::fs::write(&path, "set-family n=5\n1\n1 2\n1 3\n1 4\n1 5\n").map_err(|e| e.to_string())?;
    let out = Command::new(env!("CARGO_BIN_EXE_lintersect"))
        .args(["check", path.to_str().unwrap(), "--L", "1"])
        .output()
        .map_err(|e| e.to_string())?;
    ensure!(out.status.code() == Some(0), "check exited {:?}: {}", out.status.code(), String::from_utf8_lossy(&out.stdout));
    Ok(format!("optimum {opt}; star passes `check --L 1`"))
}

fn subspace_tightness() -> Outcome {
    let (opt, _) = run_search(Universe::Subspaces { n: 3, q: 2 }, spec(&[1], None, SizeRule::NotInL))?;
    let want = qbinom(3, 1, 2).unwrap();
    ensure!(nat(opt) == want, "optimum {opt}, qbinom(3,1,2) = {want}");
    Ok(format!("optimum {opt}"))
}

fn lym_equality() -> Outcome {
    let fam = enumerate_subspaces(4, 2, Some(2)).map_err(|e| e.to_string())?;
    ensure!(is_l_intersecting_subspaces(&fam, &lset(&[0, 1])), "not {{0,1}}-intersecting");
    ensure!(is_sperner(&fam), "not Sperner");
    ensure!(nat(fam.len()) == qbinom(4, 2, 2).unwrap(), "size {}", fam.len());
    let lym = lym_sum(&fam).map_err(|e| e.to_string())?;
    ensure!(lym == Rational::from_integer(1.into()), "LYM sum {lym}");
    Ok(format!("size {}, LYM sum {lym}", fam.len()))
}

fn certificate() -> Outcome {
    let pairs = SubsetFamily::uniform(4, 2);
    let l = lset(&[0, 1]);
    let cert = certify_cross_intersecting(&pairs, &pairs, &l).map_err(|e| e.to_string())?;
    ensure!(cert.all_ok(), "certificate not all ok: {cert:?}");
    ensure!(cert.certificate.independent && cert.certificate.rank == 10, "rank {}", cert.certificate.rank);
    ensure!(cert.m + cert.q_count == 10, "m + |Q| = {}", cert.m + cert.q_count);
    ensure!(cert.full_dimension == binom_sum(4, 0, 2) && cert.full_dimension == nat(11), "dimension {}", cert.full_dimension);
    let replay = replay_certificate(&cert.to_text()).map_err(|e| format!("replay: {e}"))?;
    ensure!(replay.independent && replay.rank == 10 && replay.poly_count == 10, "replay {replay:?}");
    Ok(format!("rank 10, m + |Q| = {} <= {}, replay ok", cert.m + cert.q_count, cert.full_dimension))
}

/// Calls `visit` on every `size`-subset of `0..len` in lex order.
fn for_each_choice(len: usize, size: usize, mut visit: impl FnMut(&[usize])) {
    if size > len {
        return;
    }
    let mut idx: Vec<usize> = (0..size).collect();
    loop {
        visit(&idx);
        let Some(i) = (0..size).rev().find(|&i| idx[i] < i + len - size) else { return };
        idx[i] += 1;
        for j in i + 1..size {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Smallest number of members with empty common intersection.
fn min_empty_subfamily(masks: &[u64], full: u64) -> Option<usize> {
    (1u32..1 << masks.len())
        .filter(|pick| (0..masks.len()).filter(|i| pick >> i & 1 == 1).fold(full, |acc, i| acc & masks[i]) == 0)
        .map(|pick| pick.count_ones() as usize)
        .min()
}

fn helly_agrees(n: u32, masks: &[u64]) -> Result<(), String> {
    let f = SubsetFamily::new(n, masks.iter().map(|&m| Subset::from_mask(m)).collect()).unwrap();
    let k = f.max_size() as usize;
    match (helly_reduce(&f), min_empty_subfamily(masks, Subset::full(n).mask())) {
        (Ok(h), Some(min)) => {
            ensure!(h.common_intersection().is_empty(), "n={n} {masks:?}: nonempty result");
            ensure!(h.len() <= k + 1 && h.len() >= min, "n={n} {masks:?}: size {} (k={k}, min {min})", h.len());
            ensure!(h.members().iter().all(|m| f.members().contains(m)), "n={n} {masks:?}: not a subfamily");
            Ok(())
        }
        (Err(LemmaError::NonemptyIntersection(_)), None) => Ok(()),
        (got, oracle) => Err(format!("n={n} {masks:?}: helly {got:?}, oracle {oracle:?}")),
    }
}

fn lemma_properties() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut helly_cases = 0usize;
    for n in 1..=4u32 {
        let all: Vec<u64> = (0..1u64 << n).collect();
        for size in 1..=8usize {
            let mut err = None;
            for_each_choice(all.len(), size, |idx| {
                if err.is_none() {
                    let masks: Vec<u64> = idx.iter().map(|&i| all[i]).collect();
                    err = helly_agrees(n, &masks).err();
                    helly_cases += 1;
                }
            });
            if let Some(e) = err {
                return Err(e);
            }
        }
    }
    for n in 5..=6u32 {
        for _ in 0..20_000 {
            let size = rng.gen_range(1..=8);
            let mut masks: Vec<u64> = (0..1u64 << n).collect();
            masks.shuffle(&mut rng);
            masks.truncate(size);
            helly_agrees(n, &masks)?;
            helly_cases += 1;
        }
    }

    let mut overlap_cases = 0usize;
    for n in 1..=6u32 {
        let all: Vec<u64> = (0..1u64 << n).collect();
        for size in 1..=4usize {
            let mut err = None;
            for_each_choice(all.len(), size, |idx| {
                let h: Vec<u64> = idx.iter().map(|&i| all[i]).collect();
                if err.is_some() || h.iter().fold(u64::MAX, |a, m| a & m) != 0 {
                    return;
                }
                let fam = SubsetFamily::new(n, h.iter().map(|&m| Subset::from_mask(m)).collect()).unwrap();
                let q = h.iter().fold(0, |a, m| a | m);
                for f in all.iter().copied().filter(|f| !h.contains(f)) {
                    let l1 = h.iter().map(|m| (m & f).count_ones()).min().unwrap();
                    for l in 1..=l1 {
                        overlap_cases += 1;
                        if core_overlap_check(&fam, Subset::from_mask(f), l) != Ok(true) || (q & f).count_ones() < l + 1 {
                            err = Some(format!("core overlap fails: n={n} H={h:?} F={f:b} l1={l}"));
                        }
                    }
                }
            });
            if let Some(e) = err {
                return Err(e);
            }
        }
    }

    let mut union_cases = 0usize;
    let union_ok = |n: u32, h: &[u64]| -> Result<(), String> {
        let k = h.iter().map(|m| m.count_ones()).max().unwrap() as usize;
        let t = h.len();
        let union = h.iter().fold(0, |a, m| a | m).count_ones() as usize;
        let fam = SubsetFamily::new(n, h.iter().map(|&m| Subset::from_mask(m)).collect()).unwrap();
        ensure!(union_size_check(&fam) == Ok(true), "union size check fails on {h:?}");
        ensure!(union <= k + (t - 1) * (k - 1), "oracle: |union| = {union} on {h:?}");
        Ok(())
    };
    let intersecting = |h: &[u64]| h.iter().enumerate().all(|(i, a)| h[i + 1..].iter().all(|b| a & b != 0));
    let all6: Vec<u64> = (1..1u64 << 6).collect();
    for size in 2..=3usize {
        let mut err = None;
        for_each_choice(all6.len(), size, |idx| {
            let h: Vec<u64> = idx.iter().map(|&i| all6[i]).collect();
            if err.is_none() && intersecting(&h) {
                union_cases += 1;
                err = union_ok(6, &h).err();
            }
        });
        if let Some(e) = err {
            return Err(e);
        }
    }
    for _ in 0..20_000 {
        let n = rng.gen_range(2..=8u32);
        let t = rng.gen_range(2..=6usize);
        let mut pool: Vec<u64> = (1..1u64 << n).collect();
        pool.shuffle(&mut rng);
        let mut h: Vec<u64> = Vec::new();
        for m in pool {
            if h.len() < t && h.iter().all(|a| a & m != 0) {
                h.push(m);
            }
        }
        if h.len() >= 2 {
            union_cases += 1;
            union_ok(n, &h)?;
        }
    }

    let mut grid = 0;
    for s in 0..=6u32 {
        for n in (s * s)..=60 {
            let c = binomial_tail_check(n, s);
            ensure!(c.hypothesis_met && c.holds, "binomial tail fails at n={n} s={s}");
            grid += 1;
        }
    }
    for q in [2u64, 3] {
        for s in 1..=4u32 {
            for n in (2 * s + 1)..=14 {
                let c = q_tail_check(n, s, q).map_err(|e| e.to_string())?;
                ensure!(c.hypothesis_met && c.holds, "q tail fails at n={n} s={s} q={q}");
                grid += 1;
            }
        }
    }
    Ok(format!(
        "helly {helly_cases}, core overlap {overlap_cases}, union size {union_cases}, tail grids {grid} cases"
    ))
}

fn scan_conformance() -> Outcome {
    let runs: [&[&str]; 3] = [
        &["scan", "--n", "4..8", "--s", "1..3", "--size-rule", "all", "--t", "2,3", "--time-budget", "0.5"],
        &["scan", "--universe", "subspaces", "--q", "2", "--n", "2..4", "--s", "1..2", "--size-rule", "all", "--time-budget", "1"],
        &["scan", "--universe", "subspaces", "--q", "3", "--n", "2..3", "--s", "1..2", "--size-rule", "all", "--time-budget", "1"],
    ];
    let mut summary = Vec::new();
    for args in runs {
        let out = Command::new(env!("CARGO_BIN_EXE_lintersect")).args(args).output().map_err(|e| e.to_string())?;
        let records: Vec<Value> = String::from_utf8_lossy(&out.stdout)
            .lines()
            .map(|l| serde_json::from_str(l).map_err(|e| e.to_string()))
            .collect::<Result<_, _>>()?;
        let violating: Vec<&Value> = records.iter().filter(|r| !r["violations"].as_array().unwrap().is_empty()).collect();
        ensure!(out.status.code() != Some(4) && violating.is_empty(), "violations: {violating:?}");
        ensure!(matches!(out.status.code(), Some(0)), "scan exited {:?}", out.status.code());
        let incomplete = records.iter().filter(|r| r["completed"] == false).count();
        summary.push(format!("{} records ({incomplete} over budget)", records.len()));
    }
    Ok(format!("no violations: {}", summary.join(", ")))
}

/// Largest compatible subfamily by checking every subset of the pool.
fn naive_max(cands: &[u64], l: &LSet, sperner: bool) -> usize {
    let c = cands.len();
    let compat: Vec<u32> = (0..c)
        .map(|i| {
            (0..c)
                .filter(|&j| {
                    let (a, b) = (cands[i], cands[j]);
                    let comparable = a & b == a || a & b == b;
                    i != j && l.contains((a & b).count_ones()) && !(sperner && comparable)
                })
                .fold(0u32, |acc, j| acc | 1 << j)
        })
        .collect();
    let mut best = 0;
    for pick in 0u32..1 << c {
        let size = pick.count_ones() as usize;
        if size > best && (0..c).all(|i| pick >> i & 1 == 0 || pick & !(compat[i] | 1 << i) == 0) {
            best = size;
        }
    }
    best
}

fn oracle_equivalence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut sizes = Vec::new();
    for case in 0..50 {
        let n = rng.gen_range(3..=8u32);
        let mut pool: Vec<u64> = (0..1u64 << n).collect();
        pool.shuffle(&mut rng);
        pool.truncate(rng.gen_range(8..=20));
        let s = rng.gen_range(1..=3u32.min(n));
        let mut lvals: Vec<u32> = (0..n).collect();
        lvals.shuffle(&mut rng);
        lvals.truncate(s as usize);
        lvals.sort_unstable();
        let l = LSet::new(lvals).unwrap();
        let sperner = rng.gen_bool(0.3);
        let p = SearchProblem::new(Universe::Sets { n }, IntersectionSpec::pairwise(l.clone()))
            .with_sperner(sperner)
            .restricted_to(Candidates::Sets(pool.iter().map(|&m| Subset::from_mask(m)).collect()));
        let r = max_pairwise_family(&p).map_err(|e| e.to_string())?;
        let naive = naive_max(&pool, &l, sperner);
        ensure!(r.completed && r.optimum == naive, "case {case}: n={n} L={l} pool {pool:?}: search {} naive {naive}", r.optimum);
        ensure!(witness_satisfies(&p, &r.witness), "case {case}: bad witness");
        sizes.push(pool.len());
    }
    Ok(format!("50/50 match, pool sizes {}..={}", sizes.iter().min().unwrap(), sizes.iter().max().unwrap()))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("subspace counts equal Gaussian binomials", Duration::from_secs(5), subspace_counts),
        ("EKR optima 4 and 10", Duration::from_secs(20), ekr_tightness),
        ("n=6, L={0,1}, sizes outside L: optimum 15", Duration::from_secs(60), prefix_tightness),
        ("n=5, L={1}: optimum 5, star passes check", Duration::from_secs(10), star_tightness),
        ("subspaces n=3, q=2, L={1}: optimum 7", Duration::from_secs(10), subspace_tightness),
        ("2-dim subspaces of GF(2)^4: 35 members, LYM = 1", Duration::from_secs(10), lym_equality),
        ("pairs of [4], L={0,1}: certificate rank 10", Duration::from_secs(10), certificate),
        ("lemma properties and tail grids", Duration::from_secs(120), lemma_properties),
        ("scan conformance, no bound violations", Duration::from_secs(600), scan_conformance),
        ("clique search equals naive oracle", Duration::from_secs(120), oracle_equivalence),
    ];
    let mut failed = 0;
    for (i, (name, limit, check)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(detail) if elapsed > limit => Err(format!("{detail}; over the {limit:?} limit")),
            other => other,
        };
        match outcome {
            Ok(detail) => println!("PASS  {:>2}  {name}  [{elapsed:.2?}]  {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL  {:>2}  {name}  [{elapsed:.2?}]  {why}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", 10 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
