//! Exhaustive small-n oracles. Each one compares a library routine against a
//! brute-force recomputation and counts mismatches.

use std::collections::{HashMap, HashSet};

use permlab_core::bijections::{
    bracket_split, conditional_class_map, cyclify, record_map, record_map_inverse, sqrt_rearrangement,
};
use permlab_core::metrics::{
    exact_moments, oscillation, rsk_and_greene, second_order_oscillation, NormalizationParams, Ratio, Statistic,
    StatisticId,
};
use permlab_core::rng::stream;
use permlab_core::{Partition, Permutation};
use serde::Serialize;

use crate::{Error, Result};

/// Names accepted by [`run`]; `all` runs every other oracle.
pub const NAMES: [&str; 9] = [
    "record_map",
    "sqrt_rearrangement",
    "bracket_split",
    "class_map",
    "second_order",
    "cyclify",
    "greene",
    "moments",
    "all",
];

const MAX_EXAMPLES: usize = 5;

type Evaluator = Box<dyn Fn(&[u32]) -> u128>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OracleReport {
    pub name: String,
    pub checked: u64,
    pub mismatches: u64,
    /// The first few failing cases.
    pub examples: Vec<String>,
}

impl OracleReport {
    fn new(name: &str) -> Self {
        Self { name: name.to_owned(), checked: 0, mismatches: 0, examples: Vec::new() }
    }

    fn check(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.mismatches += 1;
            if self.examples.len() < MAX_EXAMPLES {
                self.examples.push(describe());
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.mismatches == 0 && self.checked > 0
    }
}

pub fn run(name: &str) -> Result<Vec<OracleReport>> {
    let one = |r: OracleReport| Ok(vec![r]);
    match name {
        "record_map" => one(record_map_oracle()),
        "sqrt_rearrangement" => one(sqrt_oracle()),
        "bracket_split" => one(bracket_split_oracle()),
        "class_map" => one(class_map_oracle()),
        "second_order" => one(second_order_oracle()),
        "cyclify" => one(cyclify_oracle()),
        "greene" => one(greene_oracle()),
        "moments" => one(moments_oracle()),
        "all" => NAMES[..NAMES.len() - 1].iter().map(|n| run(n).map(|mut v| v.remove(0))).collect(),
        other => Err(Error::UnknownOracle(other.to_owned())),
    }
}

fn factorial(n: usize) -> usize {
    (1..=n).product()
}

fn record_map_oracle() -> OracleReport {
    let mut r = OracleReport::new("record_map");
    let mut image = HashSet::new();
    for s in Permutation::all(7) {
        let t = record_map(&s);
        r.check(record_map_inverse(&t) == s, || format!("inverse fails at {s}"));
        image.insert(t);
    }
    r.check(image.len() == factorial(7), || format!("image has {} elements", image.len()));
    r
}

fn sqrt_oracle() -> OracleReport {
    let mut r = OracleReport::new("sqrt_rearrangement");
    for n in 1..=7 {
        let mut image = HashSet::new();
        for s in Permutation::all(n) {
            let t = sqrt_rearrangement(&s);
            r.check(t.cycle_type() == s.cycle_type(), || format!("cycle type changes at {s}"));
            image.insert(t);
        }
        r.check(image.len() == factorial(n), || format!("not injective on S_{n}"));
    }
    r
}

fn bracket_split_oracle() -> OracleReport {
    let mut r = OracleReport::new("bracket_split");
    for n in 1..=7 {
        for s in Permutation::all(n) {
            let composed = bracket_split(&sqrt_rearrangement(&s));
            let square: Vec<u32> = (1..=n as u32).map(|i| s.apply(s.apply(i))).collect();
            r.check(composed.word() == square, || format!("beta(tau({s})) = {composed}"));
        }
    }
    r
}

/// Every permutation of the target class must have exactly `n!/|C_λ|`
/// preimages.
fn class_map_oracle() -> OracleReport {
    let mut r = OracleReport::new("class_map");
    for n in 1..=6 {
        for lambda in Partition::all(n) {
            let mut counts: HashMap<Permutation, usize> = HashMap::new();
            for s in Permutation::all(n) {
                match conditional_class_map(&s, &lambda) {
                    Ok(t) => *counts.entry(t).or_default() += 1,
                    Err(e) => r.check(false, || format!("{lambda:?} at {s}: {e}")),
                }
            }
            let class: usize = Permutation::all(n).filter(|p| p.cycle_type() == lambda).count();
            r.check(counts.len() == class, || format!("{lambda:?}: image size {} vs class {class}", counts.len()));
            for (t, c) in counts {
                r.check(t.cycle_type() == lambda && c * class == factorial(n), || {
                    format!("{lambda:?}: {t} has {c} preimages")
                });
            }
        }
    }
    r
}

/// `ρ₂^{(2)}(σ) + 8 Σ iσ(i) − 2 Σ iσ²(i) = 6 Σ k²`.
fn second_order_oracle() -> OracleReport {
    let mut r = OracleReport::new("second_order");
    for n in 1..=6usize {
        let want: u128 = 6 * (1..=n as u128).map(|k| k * k).sum::<u128>();
        for s in Permutation::all(n) {
            let w = s.word();
            let direct: u128 = (0..n)
                .map(|i| {
                    let (x, y, z) = (i as i128 + 1, w[i] as i128, w[w[i] as usize - 1] as i128);
                    ((z - y) - (y - x)).pow(2) as u128
                })
                .sum();
            let cross: u128 = (0..n).map(|i| (i as u128 + 1) * w[i] as u128).sum();
            let cross2: u128 = (0..n).map(|i| (i as u128 + 1) * w[w[i] as usize - 1] as u128).sum();
            let lib = second_order_oscillation(&s);
            r.check(lib == direct, || format!("{s}: library {lib}, direct {direct}"));
            r.check(direct + 8 * cross - 2 * cross2 == want, || format!("{s}: identity fails"));
        }
    }
    r
}

fn rho_q_direct(w: &[u32], q: u32) -> u128 {
    w.iter().enumerate().map(|(i, &v)| u128::from((i as u32 + 1).abs_diff(v)).pow(q)).sum()
}

fn cyclify_oracle() -> OracleReport {
    let mut r = OracleReport::new("cyclify");
    for n in 2..=6 {
        for s in Permutation::all(n) {
            let w = s.word();
            for i0 in 1..=n as u32 {
                let c = match cyclify(&s, i0) {
                    Ok(c) => c,
                    Err(e) => {
                        r.check(false, || format!("{s} i0={i0}: {e}"));
                        continue;
                    }
                };
                r.check(c.num_cycles() == 1, || format!("{s} i0={i0}: {c} is not an n-cycle"));
                for q in 1..=2 {
                    // consecutive displacement along the word, cyclically
                    let osc: u128 = (0..n).map(|i| u128::from(w[i].abs_diff(w[(i + 1) % n])).pow(q)).sum();
                    let lib = oscillation(&s, q, 1).unwrap_or(u128::MAX);
                    r.check(lib == osc, || format!("{s}: oscillation_{q} {lib} vs {osc}"));
                    r.check(rho_q_direct(&c.word(), q) == osc, || format!("{s} i0={i0}: rho_{q}(cyclify) != osc"));
                }
            }
        }
    }
    r
}

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

/// Largest subset that splits into `k` increasing sequences, i.e. whose
/// longest decreasing subsequence is at most `k`.
fn brute_union(word: &[u32], k: usize, increasing: bool) -> usize {
    let n = word.len();
    (0u32..1 << n)
        .filter_map(|mask| {
            let sub: Vec<u32> = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| word[i]).collect();
            (longest(&sub, !increasing) <= k).then_some(sub.len())
        })
        .max()
        .unwrap_or(0)
}

fn greene_oracle() -> OracleReport {
    let mut r = OracleReport::new("greene");
    let mut rng = stream(0x6772_6565_6e65, 0, 0);
    for _ in 0..1000 {
        let s = Permutation::random(8, &mut rng);
        let w = s.word();
        let g = match rsk_and_greene(&s, 3) {
            Ok(g) => g,
            Err(e) => {
                r.check(false, || format!("{s}: {e}"));
                continue;
            }
        };
        for k in 1..=3 {
            let (i, d) = (brute_union(&w, k, true), brute_union(&w, k, false));
            r.check(g.increasing_union(k) == i, || format!("{s}: I union {k} = {} vs {i}", g.increasing_union(k)));
            r.check(g.decreasing_union(k) == d, || format!("{s}: D union {k} = {} vs {d}", g.decreasing_union(k)));
        }
    }
    r
}

/// Exact mean and variance over `S_n` by enumeration.
fn enumerate(n: usize, f: impl Fn(&[u32]) -> u128) -> (Option<Ratio>, Option<Ratio>) {
    let count = factorial(n) as i128;
    let (mut s1, mut s2) = (0i128, 0i128);
    for s in Permutation::all(n) {
        let v = f(&s.word()) as i128;
        s1 += v;
        s2 += v * v;
    }
    (Ratio::new(s1, count), Ratio::new(s2 * count - s1 * s1, count * count))
}

fn moments_oracle() -> OracleReport {
    let mut r = OracleReport::new("moments");
    let inversions = |w: &[u32]| -> u128 {
        let mut c = 0;
        for i in 0..w.len() {
            for j in i + 1..w.len() {
                c += u128::from(w[i] > w[j]);
            }
        }
        c
    };
    let cycles = |w: &[u32]| -> u128 {
        let mut seen = vec![false; w.len()];
        let mut c = 0;
        for start in 0..w.len() {
            if !seen[start] {
                c += 1;
                let mut i = start;
                while !seen[i] {
                    seen[i] = true;
                    i = w[i] as usize - 1;
                }
            }
        }
        c
    };
    for n in 2..=6 {
        let mut cases: Vec<(Statistic, Evaluator)> = Vec::new();
        for q in 1..=3 {
            cases.push((Statistic::rho_q(q), Box::new(move |w| rho_q_direct(w, q))));
        }
        cases.push((Statistic::new(StatisticId::KendallTau), Box::new(inversions)));
        cases.push((Statistic::new(StatisticId::CycleCount), Box::new(cycles)));
        for (stat, f) in cases {
            let (mean, var) = enumerate(n, f);
            let got = exact_moments(n, &stat).ok().and_then(|p: NormalizationParams| p.exact);
            r.check(got.map(|e| (Some(e.mean), Some(e.variance))) == Some((mean, var)), || {
                format!("{} n={n}: library {got:?}, enumeration {mean:?} {var:?}", stat.label())
            });
        }
    }
    let footrule = exact_moments(3, &Statistic::rho_q(1)).ok().and_then(|p| p.exact);
    r.check(footrule.map(|e| (e.mean, e.variance)) == Ratio::new(8, 3).zip(Ratio::new(20, 9)), || {
        format!("rho_1 at n=3: {footrule:?}")
    });
    r
}
