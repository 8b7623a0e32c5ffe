//! Exhaustive and brute-force oracles for the permutation statistics.

use permlab_core::bijections::record_map;
use permlab_core::metrics::*;
use permlab_core::rng::stream;
use permlab_core::{Partition, Permutation};

/// Longest strictly monotone subsequence by the quadratic DP.
fn longest(seq: &[u32], increasing: bool) -> usize {
    let mut best = vec![1usize; seq.len()];
    for i in 0..seq.len() {
        for j in 0..i {
            if (seq[j] < seq[i]) == increasing {
                best[i] = best[i].max(best[j] + 1);
            }
        }
    }
    best.into_iter().max().unwrap_or(0)
}

/// max |A| over position subsets whose restriction has no monotone
/// subsequence (of the opposite kind) longer than `k`.
fn brute_union(word: &[u32], k: usize, increasing: bool) -> usize {
    let n = word.len();
    (0u32..1 << n)
        .filter_map(|mask| {
            let sub: Vec<u32> = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| word[i]).collect();
            (longest(&sub, !increasing) <= k).then_some(sub.len())
        })
        .max()
        .unwrap()
}

#[test]
fn greene_invariants_match_subset_oracle_on_s8() {
    let mut rng = stream(21, 0, 0);
    for _ in 0..1000 {
        let s = Permutation::random(8, &mut rng);
        let g = rsk_and_greene(&s, 3).unwrap();
        let w = s.word();
        for k in 1..=3 {
            assert_eq!(g.increasing_union(k), brute_union(&w, k, true), "{s} I_{k}");
            assert_eq!(g.decreasing_union(k), brute_union(&w, k, false), "{s} D_{k}");
        }
    }
}

#[test]
fn lis_and_lds_match_the_quadratic_dp() {
    for s in Permutation::all(7) {
        let w = s.word();
        assert_eq!(lis_length(&s), longest(&w, true));
        assert_eq!(lds_length(&s), longest(&w, false));
        assert_eq!(rsk_shape(&s).rows()[0], lis_length(&s));
        assert_eq!(rsk_shape(&s).columns()[0], lds_length(&s));
    }
}

/// Exact (mean, variance) over S_n as reduced fractions.
fn enumerate_moments(n: usize, f: impl Fn(&Permutation) -> u128) -> (Ratio, Ratio) {
    let count: i128 = (1..=n as i128).product();
    let (mut s1, mut s2) = (0i128, 0i128);
    for s in Permutation::all(n) {
        let v = f(&s) as i128;
        s1 += v;
        s2 += v * v;
    }
    let mean = Ratio::new(s1, count).unwrap();
    let var = Ratio::new(s2 * count - s1 * s1, count * count).unwrap();
    (mean, var)
}

fn check_exact(n: usize, stat: Statistic, f: impl Fn(&Permutation) -> u128) {
    let (mean, var) = enumerate_moments(n, f);
    if var.num == 0 {
        assert_eq!(exact_moments(n, &stat), Err(permlab_core::Error::DegenerateVariance));
        return;
    }
    let p = exact_moments(n, &stat).unwrap();
    let e = p.exact.expect("small n is exact");
    assert_eq!((e.mean, e.variance), (mean, var), "{} n={n}", stat.label());
    assert_eq!(p.mean, mean.to_f64());
}

#[test]
fn exact_moments_match_enumeration() {
    for n in 2..=6 {
        for q in 1..=3 {
            check_exact(n, Statistic::rho_q(q), |s| spearman_rho_q(s, q).unwrap());
        }
        check_exact(n, Statistic::new(StatisticId::KendallTau), |s| kendall_tau(s) as u128);
        check_exact(n, Statistic::new(StatisticId::CycleCount), |s| s.num_cycles() as u128);
        for skip in 1..n {
            if n >= 3 {
                for q in 1..=2 {
                    check_exact(n, Statistic::oscillation(q, skip), |s| oscillation(s, q, skip).unwrap());
                }
            }
        }
    }
}

#[test]
fn footrule_moments_at_three() {
    let e = exact_moments(3, &Statistic::rho_q(1)).unwrap().exact.unwrap();
    assert_eq!(e.mean, Ratio::new(8, 3).unwrap());
    assert_eq!(e.variance, Ratio::new(20, 9).unwrap());
}

#[test]
fn normalized_footrule_is_standardized_on_s3() {
    let p = exact_moments(3, &Statistic::rho_q(1)).unwrap();
    let z: Vec<f64> =
        Permutation::all(3).map(|s| normalize(spearman_rho_q(&s, 1).unwrap() as f64, &p).unwrap()).collect();
    let mean = z.iter().sum::<f64>() / 6.0;
    let var = z.iter().map(|v| v * v).sum::<f64>() / 6.0;
    assert!(mean.abs() < 1e-14);
    assert!((var - 1.0).abs() < 1e-14);
}

#[test]
fn second_order_identity_is_constant() {
    for n in 1..=6u128 {
        let constant = |s: &Permutation| {
            let sq = s.square();
            let (a, b): (u128, u128) =
                (1..=n as u32).fold((0, 0), |(a, b), i| (a + (i * s.apply(i)) as u128, b + (i * sq.apply(i)) as u128));
            second_order_oscillation(s) + 8 * a - 2 * b
        };
        let want = 6 * (1..=n).map(|k| k * k).sum::<u128>();
        for s in Permutation::all(n as usize) {
            assert_eq!(constant(&s), want, "{s}");
        }
    }
}

fn footrule_distance(a: &Permutation, b: &Permutation) -> u128 {
    spearman_rho_q(&a.inverse().compose(b).unwrap(), 1).unwrap()
}

#[test]
fn footrule_distance_is_a_metric_on_s5() {
    let all: Vec<Permutation> = Permutation::all(5).collect();
    let mut rng = stream(22, 0, 0);
    for a in &all {
        for b in &all {
            let d = footrule_distance(a, b);
            assert_eq!(d == 0, a == b);
            assert_eq!(d, footrule_distance(b, a));
        }
    }
    use rand::seq::IndexedRandom;
    for _ in 0..20_000 {
        let (a, b, c) = (all.choose(&mut rng).unwrap(), all.choose(&mut rng).unwrap(), all.choose(&mut rng).unwrap());
        assert!(footrule_distance(a, c) <= footrule_distance(a, b) + footrule_distance(b, c));
    }
}

#[test]
fn hamming_distance_is_bi_invariant() {
    let mut rng = stream(23, 0, 0);
    let ham = |a: &Permutation, b: &Permutation| class_statistics(&a.inverse().compose(b).unwrap()).hamming;
    for _ in 0..2000 {
        let n = 9;
        let [s, p, a, b] = [(); 4].map(|_| Permutation::random(n, &mut rng));
        let left = a.compose(&s).unwrap().compose(&b).unwrap();
        let right = a.compose(&p).unwrap().compose(&b).unwrap();
        assert_eq!(ham(&left, &right), ham(&s, &p));
    }
}

#[test]
fn class_statistics_are_class_functions() {
    for n in 1..=5 {
        let all: Vec<Permutation> = Permutation::all(n).collect();
        for s in &all {
            let base = class_statistics(s);
            for g in &all {
                let conj = g.compose(s).unwrap().compose(&g.inverse()).unwrap();
                assert_eq!(class_statistics(&conj), base);
            }
        }
    }
    for s in Permutation::all(6) {
        let c = class_statistics(&s);
        assert_eq!(c.cycle_count as usize, s.num_cycles());
        assert_eq!(c.cayley as usize, 6 - s.num_cycles());
        assert_eq!(c.hamming as usize, 6 - s.cycle_type().multiplicity(1));
    }
}

#[test]
fn statistic_tags_cover_every_class_flag() {
    for s in Permutation::all(5) {
        let conj = record_map(&s);
        for id in [StatisticId::Hamming, StatisticId::Cayley, StatisticId::CycleCount] {
            assert!(id.is_class_function());
            let stat = Statistic::new(id);
            if conj.cycle_type() == s.cycle_type() {
                assert_eq!(stat.evaluate(&conj).unwrap(), stat.evaluate(&s).unwrap());
            }
        }
    }
    assert!(Partition::all(5).len() == 7);
}

#[test]
fn kendall_and_rho_inverse_symmetry_on_s6() {
    for s in Permutation::all(6) {
        let inv = s.inverse();
        assert_eq!(kendall_tau(&s), kendall_tau(&inv));
        for q in 1..=3 {
            assert_eq!(spearman_rho_q(&s, q).unwrap(), spearman_rho_q(&inv, q).unwrap());
        }
        assert_eq!(spearman_rho_inf(&s).rho_inf, spearman_rho_inf(&inv).rho_inf);
    }
}
