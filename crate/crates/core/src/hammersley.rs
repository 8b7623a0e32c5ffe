//! Hammersley's device: i.i.d. uniform points in the unit square, their
//! coordinate ranks, and the induced uniform permutation.
//!
//! For a point `p` in a sample `P` of size `n`:
//! `X(p)`/`Y(p)` count points weakly left of/below `p` (self included),
//! `X′ = n − X`, `Y′ = n − Y`, `f = |X − Y|`,
//! `h = (X + Y′) ∧ (X′ + Y)` and `g` is the Euclidean distance to the
//! diagonal `{x = y}`. Then `max f = ρ_∞(σ_P)` and `min h = n − ρ_∞(σ_P)`.

use alloc::vec::Vec;
use core::cmp::Ordering;

use rand::distr::Distribution;
use rand::Rng;
use rand_distr::Poisson;
use serde::{Deserialize, Serialize};

use crate::{Error, Permutation, Result};

/// Points in `[0, 1]²` with pairwise distinct x and pairwise distinct y.
/// Serializes as a JSON array of `[x, y]` pairs.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PointSample {
    points: Vec<(f64, f64)>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SampleMode {
    FixedN(usize),
    /// Poisson point process with homogeneous rate `ν`.
    Poisson(f64),
}

impl PointSample {
    /// Validates coordinate ranges and distinctness.
    pub fn new(points: Vec<(f64, f64)>) -> Result<Self> {
        if points.iter().any(|&(x, y)| !(0.0..=1.0).contains(&x) || !(0.0..=1.0).contains(&y)) {
            return Err(Error::OutOfRange("coordinates must lie in [0, 1]"));
        }
        let sample = Self { points };
        if sample.has_collision() {
            return Err(Error::DuplicateCoordinate);
        }
        Ok(sample)
    }

    pub fn points(&self) -> &[(f64, f64)] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    fn has_collision(&self) -> bool {
        first_collision(&self.points, |p| p.0).is_some() || first_collision(&self.points, |p| p.1).is_some()
    }
}

/// Index of a point whose coordinate repeats an earlier one, if any.
fn first_collision(points: &[(f64, f64)], coord: impl Fn(&(f64, f64)) -> f64) -> Option<usize> {
    let mut order: Vec<usize> = (0..points.len()).collect();
    order.sort_unstable_by(|&a, &b| cmp_f64(coord(&points[a]), coord(&points[b])).then(a.cmp(&b)));
    order.windows(2).find(|w| coord(&points[w[0]]) == coord(&points[w[1]])).map(|w| w[1])
}

fn cmp_f64(a: f64, b: f64) -> Ordering {
    a.partial_cmp(&b).unwrap_or(Ordering::Equal)
}

fn uniform_point<R: Rng + ?Sized>(rng: &mut R) -> (f64, f64) {
    (rng.random::<f64>(), rng.random::<f64>())
}

/// Replaces colliding points with fresh draws until all coordinates differ.
fn resolve_collisions<R: Rng + ?Sized>(points: &mut [(f64, f64)], rng: &mut R) {
    loop {
        let dup = first_collision(points, |p| p.0).or_else(|| first_collision(points, |p| p.1));
        match dup {
            Some(i) => points[i] = uniform_point(rng),
            None => return,
        }
    }
}

pub fn sample_points<R: Rng + ?Sized>(mode: SampleMode, rng: &mut R) -> Result<PointSample> {
    let n = match mode {
        SampleMode::FixedN(n) => n,
        SampleMode::Poisson(nu) => {
            let dist = Poisson::new(nu).map_err(|_| Error::OutOfRange("Poisson rate must be > 0"))?;
            let count: f64 = dist.sample(rng);
            count as usize
        }
    };
    let mut points: Vec<(f64, f64)> = (0..n).map(|_| uniform_point(rng)).collect();
    resolve_collisions(&mut points, rng);
    Ok(PointSample { points })
}

/// Appends one fresh uniform point (redrawn on a coordinate collision).
pub fn add_point<R: Rng + ?Sized>(sample: &PointSample, rng: &mut R) -> PointSample {
    let mut points = sample.points.clone();
    let fresh = loop {
        let p = uniform_point(rng);
        if points.iter().all(|q| q.0 != p.0 && q.1 != p.1) {
            break p;
        }
    };
    points.push(fresh);
    PointSample { points }
}

/// 1-based `(X, Y)` ranks for each point.
fn ranks(sample: &PointSample) -> Result<(Vec<u32>, Vec<u32>)> {
    let pts = &sample.points;
    let rank_by = |coord: fn(&(f64, f64)) -> f64| -> Result<Vec<u32>> {
        let mut order: Vec<usize> = (0..pts.len()).collect();
        order.sort_unstable_by(|&a, &b| cmp_f64(coord(&pts[a]), coord(&pts[b])));
        let mut rank = alloc::vec![0u32; pts.len()];
        for (r, w) in order.iter().enumerate() {
            if r > 0 && coord(&pts[order[r - 1]]) == coord(&pts[*w]) {
                return Err(Error::DuplicateCoordinate);
            }
            rank[*w] = r as u32 + 1;
        }
        Ok(rank)
    };
    Ok((rank_by(|p| p.0)?, rank_by(|p| p.1)?))
}

/// `σ_P(X(p)) = Y(p)`. Independent of the order points are listed in.
pub fn to_permutation(sample: &PointSample) -> Result<Permutation> {
    if sample.is_empty() {
        return Err(Error::EmptySample);
    }
    let (x, y) = ranks(sample)?;
    let mut images = alloc::vec![0u32; sample.len()];
    for (xr, yr) in x.iter().zip(&y) {
        images[(*xr - 1) as usize] = *yr - 1;
    }
    Ok(Permutation::from_zero_based_unchecked(images))
}

/// Per-point rank functionals, indexed like the input sample.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PointStats {
    pub x_rank: Vec<u32>,
    pub y_rank: Vec<u32>,
    pub x_right: Vec<u32>,
    pub y_above: Vec<u32>,
    pub f: Vec<u32>,
    pub h: Vec<u32>,
    pub g: Vec<f64>,
}

impl PointStats {
    pub fn max_f(&self) -> Option<u32> {
        self.f.iter().copied().max()
    }

    pub fn min_h(&self) -> Option<u32> {
        self.h.iter().copied().min()
    }
}

fn diagonal_distance(p: (f64, f64)) -> f64 {
    (p.0 - p.1).abs() / core::f64::consts::SQRT_2
}

pub fn point_stats(sample: &PointSample) -> Result<PointStats> {
    let n = sample.len() as u32;
    let (x_rank, y_rank) = ranks(sample)?;
    let x_right: Vec<u32> = x_rank.iter().map(|x| n - x).collect();
    let y_above: Vec<u32> = y_rank.iter().map(|y| n - y).collect();
    let f = x_rank.iter().zip(&y_rank).map(|(x, y)| x.abs_diff(*y)).collect();
    let h = (0..sample.len()).map(|i| (x_rank[i] + y_above[i]).min(x_right[i] + y_rank[i])).collect();
    let g = sample.points.iter().map(|&p| diagonal_distance(p)).collect();
    Ok(PointStats { x_rank, y_rank, x_right, y_above, f, h, g })
}

/// Extremal points, as indices into the sample. Ties go to the lowest index.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExtremalPoints {
    /// argmax f (= argmin h)
    pub p_star: usize,
    /// argmax g
    pub p_bar: usize,
    /// argmax g over points strictly above the diagonal; `None` when there
    /// are none (a censored draw).
    pub p_tilde: Option<usize>,
    pub h_at_bar: u32,
    pub g_at_bar: f64,
    pub h_at_tilde: Option<u32>,
}

fn argmax_by<T: Copy>(values: impl Iterator<Item = (usize, T)>, better: impl Fn(T, T) -> bool) -> Option<usize> {
    let mut best: Option<(usize, T)> = None;
    for (i, v) in values {
        if best.is_none_or(|(_, b)| better(v, b)) {
            best = Some((i, v));
        }
    }
    best.map(|(i, _)| i)
}

pub fn extremal_points(sample: &PointSample) -> Result<ExtremalPoints> {
    if sample.is_empty() {
        return Err(Error::EmptySample);
    }
    let stats = point_stats(sample)?;
    let p_star = argmax_by(stats.f.iter().copied().enumerate(), |a, b| a > b).expect("nonempty");
    let p_bar = argmax_by(stats.g.iter().copied().enumerate(), |a, b| a > b).expect("nonempty");
    let above = sample.points.iter().enumerate().filter(|(_, p)| p.1 > p.0).map(|(i, _)| (i, stats.g[i]));
    let p_tilde = argmax_by(above, |a, b| a > b);
    Ok(ExtremalPoints {
        p_star,
        p_bar,
        p_tilde,
        h_at_bar: stats.h[p_bar],
        g_at_bar: stats.g[p_bar],
        h_at_tilde: p_tilde.map(|i| stats.h[i]),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metrics::spearman_rho_inf;
    use crate::rng::stream;
    use alloc::vec;

    fn example() -> PointSample {
        PointSample::new(vec![(0.1, 0.2), (0.5, 0.9), (0.8, 0.4)]).unwrap()
    }

    #[test]
    fn to_permutation_examples() {
        assert_eq!(to_permutation(&example()).unwrap().word(), vec![1, 3, 2]);
        let mut shuffled = example().points().to_vec();
        shuffled.reverse();
        assert_eq!(to_permutation(&PointSample::new(shuffled).unwrap()).unwrap().word(), vec![1, 3, 2]);
        let diag = PointSample::new(vec![(0.3, 0.3), (0.1, 0.1), (0.7, 0.7)]).unwrap();
        assert!(to_permutation(&diag).unwrap().is_identity());
        assert_eq!(to_permutation(&PointSample::default()), Err(Error::EmptySample));
    }

    #[test]
    fn duplicates_rejected() {
        assert_eq!(PointSample::new(vec![(0.1, 0.2), (0.1, 0.5)]).unwrap_err(), Error::DuplicateCoordinate);
        assert!(PointSample::new(vec![(1.5, 0.2)]).is_err());
    }

    #[test]
    fn point_stats_example() {
        let s = point_stats(&example()).unwrap();
        assert_eq!((s.x_rank[1], s.y_rank[1], s.x_right[1], s.y_above[1]), (2, 3, 1, 0));
        assert_eq!((s.f[1], s.h[1]), (1, 2));
        assert_eq!(s.max_f(), Some(1));
        assert_eq!(s.min_h(), Some(2));
        let rho = spearman_rho_inf(&to_permutation(&example()).unwrap());
        assert_eq!(rho.rho_inf, 1);
        assert_eq!(rho.h, 2);

        let single = point_stats(&PointSample::new(vec![(0.4, 0.6)]).unwrap()).unwrap();
        assert_eq!((single.x_rank[0], single.y_rank[0], single.f[0], single.h[0]), (1, 1, 0, 1));
    }

    #[test]
    fn extremal_example() {
        // f = (0, 1, 1): tie between points 1 and 2 goes to the lower index
        let e = extremal_points(&example()).unwrap();
        assert_eq!(point_stats(&example()).unwrap().f, vec![0, 1, 1]);
        assert_eq!(e.p_star, 1);
        assert_eq!(e.p_bar, 1);
        assert_eq!(e.h_at_bar, 2);
        assert!((e.g_at_bar - 0.4 / core::f64::consts::SQRT_2).abs() < 1e-15);
        assert_eq!(e.p_tilde, Some(1));

        let below = PointSample::new(vec![(0.5, 0.1), (0.9, 0.3)]).unwrap();
        assert_eq!(extremal_points(&below).unwrap().p_tilde, None);
        assert_eq!(extremal_points(&PointSample::default()), Err(Error::EmptySample));
    }

    #[test]
    fn sampling_modes() {
        let mut rng = stream(1, 2, 3);
        assert!(sample_points(SampleMode::FixedN(0), &mut rng).unwrap().is_empty());
        assert_eq!(sample_points(SampleMode::FixedN(50), &mut rng).unwrap().len(), 50);
        assert!(sample_points(SampleMode::Poisson(0.0), &mut rng).is_err());
        let one = add_point(&PointSample::default(), &mut rng);
        assert!(to_permutation(&one).unwrap().is_identity());
    }

    #[test]
    fn collisions_are_resampled() {
        let mut rng = stream(9, 9, 9);
        let mut pts = vec![(0.5, 0.5), (0.5, 0.2), (0.1, 0.2)];
        resolve_collisions(&mut pts, &mut rng);
        assert!(PointSample::new(pts).is_ok());
    }
}
