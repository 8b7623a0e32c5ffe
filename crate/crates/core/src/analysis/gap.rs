use alloc::vec;
use alloc::vec::Vec;

use crate::{Error, Result};

/// Paired observations `(x, y)` of two statistics on the same sample point.
#[derive(Debug, Clone, PartialEq)]
pub struct PairedSample {
    pairs: Vec<(f64, f64)>,
}

impl PairedSample {
    pub fn new(pairs: Vec<(f64, f64)>) -> Result<Self> {
        if pairs.iter().any(|(x, y)| x.is_nan() || y.is_nan()) {
            return Err(Error::NotANumber);
        }
        Ok(Self { pairs })
    }

    pub fn from_columns(xs: &[f64], ys: &[f64]) -> Result<Self> {
        if xs.len() != ys.len() {
            return Err(Error::SizeMismatch { left: xs.len(), right: ys.len() });
        }
        Self::new(xs.iter().copied().zip(ys.iter().copied()).collect())
    }

    pub fn pairs(&self) -> &[(f64, f64)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// `E[X^j Y^k]` over the sample.
    pub fn mixed_moment(&self, j: i32, k: i32) -> Result<f64> {
        if self.is_empty() {
            return Err(Error::EmptySample);
        }
        let s: f64 = self.pairs.iter().map(|&(x, y)| libm::pow(x, j as f64) * libm::pow(y, k as f64)).sum();
        Ok(s / self.len() as f64)
    }

    /// `E[X^j Y^k] − E[X^j] E[Y^k]`.
    pub fn moment_defect(&self, j: i32, k: i32) -> Result<f64> {
        Ok(self.mixed_moment(j, k)? - self.mixed_moment(j, 0)? * self.mixed_moment(0, k)?)
    }
}

/// `sup_{x,y} |F̂(x, y) − F̂_X(x) F̂_Y(y)|` for the empirical joint law.
///
/// Both sides are step functions constant on the cells of the observed
/// coordinate grid, so the sup is a max over grid cells. The sweep runs over
/// distinct `x` values in increasing order; at time `k` (points with
/// `x ≤ current`) the scaled defect in `y`-column `j` is
/// `N·C_j − k·G_j`, a line in `k` whose intercept grows by `N` on a suffix
/// of columns each time a point is added. A kinetic segment tree keeps the
/// max and min of these lines, giving `O(N log² N)` overall.
pub fn independence_gap(s: &PairedSample) -> Result<f64> {
    let n = s.len();
    if n == 0 {
        return Err(Error::EmptySample);
    }
    let ys: Vec<f64> = s.pairs.iter().map(|p| p.1).collect();
    let (y_rank, distinct_y) = dense_ranks(&ys);
    let mut g = vec![0i64; distinct_y];
    for &r in &y_rank {
        g[r] += 1;
    }
    for j in 1..distinct_y {
        g[j] += g[j - 1];
    }
    let neg: Vec<i64> = g.iter().map(|v| -v).collect();
    let mut upper = KineticMax::new(&neg);
    let mut lower = KineticMax::new(&g);

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_unstable_by(|&a, &b| s.pairs[a].0.total_cmp(&s.pairs[b].0));
    let big_n = n as i64;
    let mut best = 0i64;
    let mut i = 0;
    while i < n {
        let x = s.pairs[order[i]].0;
        while i < n && s.pairs[order[i]].0 == x {
            let r = y_rank[order[i]];
            upper.add_suffix(r, big_n);
            lower.add_suffix(r, -big_n);
            i += 1;
        }
        upper.advance(i as i64);
        lower.advance(i as i64);
        best = best.max(upper.max()).max(lower.max());
    }
    Ok(best as f64 / (big_n * big_n) as f64)
}

/// Batch-means standard error of the gap: split the sample into `batches`
/// contiguous blocks, take the gap of each, and return `sd / √batches`.
/// The gap fluctuates on the `1/√size` scale, so this is the spread of the
/// full-sample gap.
pub fn independence_gap_batch_std_err(s: &PairedSample, batches: usize) -> Result<f64> {
    if batches < 2 || s.len() < 2 * batches {
        return Err(Error::OutOfRange("need at least two points in each of two or more batches"));
    }
    let size = s.len() / batches;
    let gaps: Vec<f64> = (0..batches)
        .map(|b| {
            let part = PairedSample { pairs: s.pairs[b * size..(b + 1) * size].to_vec() };
            independence_gap(&part)
        })
        .collect::<Result<_>>()?;
    let k = batches as f64;
    let mean = gaps.iter().sum::<f64>() / k;
    let var = gaps.iter().map(|g| (g - mean) * (g - mean)).sum::<f64>() / (k - 1.0);
    Ok(libm::sqrt(var / k))
}

fn dense_ranks(v: &[f64]) -> (Vec<usize>, usize) {
    let mut sorted: Vec<f64> = v.to_vec();
    sorted.sort_unstable_by(f64::total_cmp);
    sorted.dedup();
    let ranks = v.iter().map(|x| sorted.partition_point(|s| s < x)).collect();
    (ranks, sorted.len())
}

/// Max of lines `b_j + s_j·t` under suffix additions to `b` and a monotone
/// clock `t`. Each node stores its current best line and the earliest time
/// at which that choice may change.
struct KineticMax {
    len: usize,
    b: Vec<i64>,
    s: Vec<i64>,
    melt: Vec<i64>,
    lazy: Vec<i64>,
    now: i64,
}

const NEVER: i64 = i64::MAX;

impl KineticMax {
    fn new(slopes: &[i64]) -> Self {
        let len = slopes.len();
        let size = 4 * len.max(1);
        let mut t =
            Self { len, b: vec![0; size], s: vec![0; size], melt: vec![NEVER; size], lazy: vec![0; size], now: 0 };
        t.build(1, 0, len - 1, slopes);
        t
    }

    fn build(&mut self, node: usize, l: usize, r: usize, slopes: &[i64]) {
        if l == r {
            self.s[node] = slopes[l];
            return;
        }
        let m = (l + r) / 2;
        self.build(2 * node, l, m, slopes);
        self.build(2 * node + 1, m + 1, r, slopes);
        self.pull(node);
    }

    fn value(&self, node: usize) -> i64 {
        self.b[node] + self.s[node] * self.now
    }

    fn pull(&mut self, node: usize) {
        let (l, r) = (2 * node, 2 * node + 1);
        let (vl, vr) = (self.value(l), self.value(r));
        let (win, lose) = if vl > vr || (vl == vr && self.s[l] >= self.s[r]) { (l, r) } else { (r, l) };
        self.b[node] = self.b[win];
        self.s[node] = self.s[win];
        let mut melt = self.melt[l].min(self.melt[r]);
        let ds = self.s[lose] - self.s[win];
        if ds > 0 {
            // first integer t with b_lose + s_lose t > b_win + s_win t
            let t = (self.b[win] - self.b[lose]).div_euclid(ds) + 1;
            melt = melt.min(t);
        }
        self.melt[node] = melt;
    }

    fn apply(&mut self, node: usize, v: i64) {
        self.b[node] += v;
        self.lazy[node] += v;
    }

    fn push(&mut self, node: usize) {
        let v = core::mem::take(&mut self.lazy[node]);
        if v != 0 {
            self.apply(2 * node, v);
            self.apply(2 * node + 1, v);
        }
    }

    fn add_suffix(&mut self, from: usize, v: i64) {
        let hi = self.len - 1;
        self.add(1, 0, hi, from, v);
    }

    fn add(&mut self, node: usize, l: usize, r: usize, from: usize, v: i64) {
        if r < from {
            return;
        }
        if from <= l {
            self.apply(node, v);
            return;
        }
        self.push(node);
        let m = (l + r) / 2;
        self.add(2 * node, l, m, from, v);
        self.add(2 * node + 1, m + 1, r, from, v);
        self.pull(node);
    }

    fn advance(&mut self, t: i64) {
        debug_assert!(t >= self.now);
        self.now = t;
        let hi = self.len - 1;
        self.heaten(1, 0, hi);
    }

    fn heaten(&mut self, node: usize, l: usize, r: usize) {
        if self.melt[node] > self.now {
            return;
        }
        self.push(node);
        let m = (l + r) / 2;
        self.heaten(2 * node, l, m);
        self.heaten(2 * node + 1, m + 1, r);
        self.pull(node);
    }

    fn max(&self) -> i64 {
        self.value(1)
    }
}
