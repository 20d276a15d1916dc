//! Radon matches: `(2d+2)`-subsets whose Radon partition in `R^{2d}` has
//! both parts present as simplices of the complex.

use itertools::Itertools;
use rand::seq::index;
use rayon::prelude::*;
use serde::Serialize;

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::geometry::{radon_partition_of, PointConfiguration};
use crate::scalar::Scalar;
use crate::seed::rng_from_seed;
use crate::threshold::binomial_saturating;

/// Default cap on the number of subsets an exhaustive pass may visit.
pub const DEFAULT_BUDGET: u64 = 10_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum MatchMode {
    Exhaustive,
    Sampled,
    Census,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MatchReport {
    /// Subsets examined.
    pub checked: u64,
    /// Radon matches among them (census mode: balanced splits).
    pub matches: u64,
    pub mode: MatchMode,
    /// Subsets whose split was classified for balance.
    pub balanced_checked: u64,
    /// Matches (census: subsets) whose parts have sizes `⌊k/2⌋, ⌈k/2⌉`.
    pub balanced_hits: u64,
    /// `C(n, k)` for the subset size `k`, saturating.
    pub total_subsets: u64,
    /// `matches / checked · total_subsets`.
    pub estimate: f64,
}

impl MatchReport {
    fn new(mode: MatchMode, total_subsets: u64) -> Self {
        Self {
            checked: 0,
            matches: 0,
            mode,
            balanced_checked: 0,
            balanced_hits: 0,
            total_subsets,
            estimate: 0.0,
        }
    }

    fn merge(mut self, other: Self) -> Self {
        self.checked += other.checked;
        self.matches += other.matches;
        self.balanced_checked += other.balanced_checked;
        self.balanced_hits += other.balanced_hits;
        self
    }

    fn finish(mut self) -> Self {
        self.estimate = if self.checked == 0 {
            0.0
        } else {
            self.matches as f64 / self.checked as f64 * self.total_subsets as f64
        };
        self
    }

    /// `matches / checked`, 0 when nothing was checked.
    pub fn density(&self) -> f64 {
        if self.checked == 0 {
            0.0
        } else {
            self.matches as f64 / self.checked as f64
        }
    }

    /// Census: `balanced_hits / balanced_checked`.
    pub fn balanced_fraction(&self) -> f64 {
        if self.balanced_checked == 0 {
            0.0
        } else {
            self.balanced_hits as f64 / self.balanced_checked as f64
        }
    }
}

fn check_inputs<T: Scalar>(x: &SimplicialComplex, config: &PointConfiguration<T>, d: usize) -> Result<()> {
    if d == 0 {
        return Err(Error::pre("d must be at least 1"));
    }
    if config.m() != 2 * d {
        return Err(Error::pre(format!(
            "configuration lives in R^{}, expected R^{}",
            config.m(),
            2 * d
        )));
    }
    if config.len() != x.n() {
        return Err(Error::pre(format!(
            "configuration has {} points but the complex has n = {}",
            config.len(),
            x.n()
        )));
    }
    Ok(())
}

/// Could some split of `subset` into two nonempty parts have both parts
/// present in `x`? Cheap filter run before any geometry.
fn has_candidate_split(x: &SimplicialComplex, subset: &[usize], buf: &mut Vec<usize>, other: &mut Vec<usize>) -> bool {
    let k = subset.len();
    // masks containing element 0 enumerate each unordered split once
    for mask in 0u64..(1 << (k - 1)) {
        let mask = (mask << 1) | 1;
        if mask == (1 << k) - 1 {
            continue;
        }
        buf.clear();
        other.clear();
        for (i, &v) in subset.iter().enumerate() {
            if mask & (1 << i) != 0 {
                buf.push(v);
            } else {
                other.push(v);
            }
        }
        if x.contains_vertices(buf) && x.contains_vertices(other) {
            return true;
        }
    }
    false
}

/// Classifies one subset: `Some(balanced)` for a match, `None` otherwise.
///
/// Since complexes are downward closed, a part's full simplex is present
/// iff its top face is.
fn classify_subset<T: Scalar>(
    x: &SimplicialComplex,
    config: &PointConfiguration<T>,
    subset: &[usize],
    buf: &mut Vec<usize>,
    other: &mut Vec<usize>,
) -> Result<Option<bool>> {
    if !has_candidate_split(x, subset, buf, other) {
        return Ok(None);
    }
    let p = radon_partition_of(config, subset)?;
    if x.contains_vertices(&p.part_a) && x.contains_vertices(&p.part_b) {
        let (lo, _) = p.split_sizes();
        Ok(Some(lo == subset.len() / 2))
    } else {
        Ok(None)
    }
}

/// Visits every `(2d+2)`-subset in lexicographic order and counts Radon
/// matches. Work is split by smallest element across threads; the result
/// does not depend on the split.
pub fn count_radon_matches<T: Scalar>(
    x: &SimplicialComplex,
    config: &PointConfiguration<T>,
    d: usize,
    budget: u64,
) -> Result<MatchReport> {
    check_inputs(x, config, d)?;
    let n = x.n();
    let k = 2 * d + 2;
    let total = binomial_saturating(n as u64, k as u64);
    if total > budget {
        return Err(Error::BudgetExceeded {
            required: total,
            budget,
        });
    }
    let report = (0..n)
        .into_par_iter()
        .map(|first| -> Result<MatchReport> {
            let mut r = MatchReport::new(MatchMode::Exhaustive, total);
            let (mut buf, mut other, mut subset) = (Vec::new(), Vec::new(), Vec::with_capacity(k));
            for rest in (first + 1..n).combinations(k - 1) {
                subset.clear();
                subset.push(first);
                subset.extend_from_slice(&rest);
                r.checked += 1;
                r.balanced_checked += 1;
                if let Some(balanced) = classify_subset(x, config, &subset, &mut buf, &mut other)? {
                    r.matches += 1;
                    r.balanced_hits += balanced as u64;
                }
            }
            Ok(r)
        })
        .try_reduce(|| MatchReport::new(MatchMode::Exhaustive, total), |a, b| Ok(a.merge(b)))?;
    Ok(report.finish())
}

/// Early-exit existence check. Walks pairs of vertex-disjoint faces of
/// complementary sizes `(a, 2d+2-a)` present in `x` and asks whether they
/// form the Radon partition of their union.
pub fn has_radon_match<T: Scalar>(x: &SimplicialComplex, config: &PointConfiguration<T>, d: usize) -> Result<bool> {
    check_inputs(x, config, d)?;
    let k = 2 * d + 2;
    for a in 1..=k / 2 {
        let b = k - a;
        let small = x.faces(a - 1);
        let large = x.faces(b - 1);
        if small.is_empty() || large.is_empty() {
            continue;
        }
        // first hit in face order, so the outcome (including which error
        // surfaces on degenerate input) does not depend on scheduling
        let hit = small.par_iter().enumerate().find_map_first(|(i, f)| {
            let start = if a == b { i + 1 } else { 0 };
            for g in &large[start..] {
                if !f.is_disjoint(g) {
                    continue;
                }
                match radon_partition_of(config, &f.union(g)) {
                    Err(e) => return Some(Err(e)),
                    Ok(p) if p.is_pair(f.vertices(), g.vertices()) => return Some(Ok(())),
                    Ok(_) => {}
                }
            }
            None
        });
        let found = match hit {
            Some(Err(e)) => return Err(e),
            Some(Ok(())) => true,
            None => false,
        };
        if found {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Counts matches over every pair of complementary faces; equals the
/// exhaustive count but scales with the face counts instead of `C(n, 2d+2)`.
pub fn count_radon_matches_by_faces<T: Scalar>(
    x: &SimplicialComplex,
    config: &PointConfiguration<T>,
    d: usize,
) -> Result<u64> {
    check_inputs(x, config, d)?;
    let k = 2 * d + 2;
    let mut total = 0u64;
    for a in 1..=k / 2 {
        let b = k - a;
        let small = x.faces(a - 1);
        let large = x.faces(b - 1);
        let count = small
            .par_iter()
            .enumerate()
            .map(|(i, f)| -> Result<u64> {
                let start = if a == b { i + 1 } else { 0 };
                let mut c = 0;
                for g in &large[start..] {
                    if f.is_disjoint(g) {
                        let p = radon_partition_of(config, &f.union(g))?;
                        c += p.is_pair(f.vertices(), g.vertices()) as u64;
                    }
                }
                Ok(c)
            })
            .try_reduce(|| 0, |p, q| Ok(p + q))?;
        total += count;
    }
    Ok(total)
}

/// Draws `trials` uniform `(2d+2)`-subsets and reports the hit fraction;
/// `estimate` is the unbiased match-count estimate.
pub fn sample_radon_matches<T: Scalar>(
    x: &SimplicialComplex,
    config: &PointConfiguration<T>,
    d: usize,
    trials: u64,
    seed: u64,
) -> Result<MatchReport> {
    check_inputs(x, config, d)?;
    if trials == 0 {
        return Err(Error::pre("sampled mode needs at least one trial"));
    }
    let n = x.n();
    let k = 2 * d + 2;
    if n < k {
        return Err(Error::pre(format!("need at least {k} vertices to sample subsets")));
    }
    let total = binomial_saturating(n as u64, k as u64);
    let mut rng = rng_from_seed(seed);
    let mut r = MatchReport::new(MatchMode::Sampled, total);
    let (mut buf, mut other) = (Vec::new(), Vec::new());
    for _ in 0..trials {
        let mut subset = index::sample(&mut rng, n, k).into_vec();
        subset.sort_unstable();
        r.checked += 1;
        r.balanced_checked += 1;
        if let Some(balanced) = classify_subset(x, config, &subset, &mut buf, &mut other)? {
            r.matches += 1;
            r.balanced_hits += balanced as u64;
        }
    }
    Ok(r.finish())
}

/// Fraction of `(m+2)`-subsets whose Radon partition is balanced. With at
/// least `m + 3` points the fraction must be at least `1/(m+3)`; a smaller
/// value is reported as a postcondition failure.
pub fn balanced_split_census<T: Scalar>(config: &PointConfiguration<T>, budget: u64) -> Result<MatchReport> {
    let m = config.m();
    let n = config.len();
    let k = m + 2;
    if n < k {
        return Err(Error::pre(format!("census needs at least m+2 = {k} points, got {n}")));
    }
    let total = binomial_saturating(n as u64, k as u64);
    if total > budget {
        return Err(Error::BudgetExceeded {
            required: total,
            budget,
        });
    }
    let report = (0..n)
        .into_par_iter()
        .map(|first| -> Result<MatchReport> {
            let mut r = MatchReport::new(MatchMode::Census, total);
            let mut subset = Vec::with_capacity(k);
            for rest in (first + 1..n).combinations(k - 1) {
                subset.clear();
                subset.push(first);
                subset.extend_from_slice(&rest);
                let p = radon_partition_of(config, &subset)?;
                r.checked += 1;
                r.balanced_checked += 1;
                if p.split_sizes().0 == k / 2 {
                    r.matches += 1;
                    r.balanced_hits += 1;
                }
            }
            Ok(r)
        })
        .try_reduce(|| MatchReport::new(MatchMode::Census, total), |a, b| Ok(a.merge(b)))?
        .finish();
    if n >= m + 3 && report.balanced_hits * (m as u64 + 3) < report.balanced_checked {
        return Err(Error::Postcondition(format!(
            "balanced fraction {}/{} is below 1/{}",
            report.balanced_hits,
            report.balanced_checked,
            m + 3
        )));
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::Face;
    use crate::Rational;

    fn face(v: &[usize]) -> Face {
        Face::new(v.to_vec()).unwrap()
    }

    fn convex_octagon() -> PointConfiguration<Rational> {
        // points on the parabola y = x^2 are in convex position
        let rows: Vec<Vec<i64>> = (0..8).map(|i| vec![i, i * i]).collect();
        let refs: Vec<&[i64]> = rows.iter().map(|r| r.as_slice()).collect();
        PointConfiguration::from_ints(2, &refs).unwrap()
    }

    fn complete_graph(n: usize) -> SimplicialComplex {
        let edges = (0..n).combinations(2).map(|e| face(&e));
        SimplicialComplex::downward_closure(n, 1, edges).unwrap()
    }

    #[test]
    fn full_skeleton_on_four_points() {
        let x = complete_graph(4);
        // (1,2) is inside the triangle: the 1 + 3 split needs a 2-face
        let c = PointConfiguration::<Rational>::from_ints(2, &[&[0, 0], &[5, 1], &[2, 7], &[1, 2]]).unwrap();
        let r = count_radon_matches(&x, &c, 1, DEFAULT_BUDGET).unwrap();
        assert_eq!((r.checked, r.matches), (1, 0));
        assert!(!has_radon_match(&x, &c, 1).unwrap());
        let c = PointConfiguration::<Rational>::from_ints(2, &[&[0, 0], &[5, 1], &[2, 7], &[-3, 4]]).unwrap();
        let r = count_radon_matches(&x, &c, 1, DEFAULT_BUDGET).unwrap();
        assert_eq!((r.checked, r.matches), (1, 1));
        assert!(has_radon_match(&x, &c, 1).unwrap());
    }

    #[test]
    fn no_faces_no_matches() {
        let x = SimplicialComplex::vertices_only(8, 1);
        let c = convex_octagon();
        // single vertices are faces, but a 1 + 3 split needs a triangle
        let r = count_radon_matches(&x, &c, 1, DEFAULT_BUDGET).unwrap();
        assert_eq!(r.matches, 0);
        assert!(!has_radon_match(&x, &c, 1).unwrap());
        let s = sample_radon_matches(&x, &c, 1, 50, 1).unwrap();
        assert_eq!(s.matches, 0);
    }

    #[test]
    fn complete_graph_convex_position() {
        let x = complete_graph(8);
        let c = convex_octagon();
        let r = count_radon_matches(&x, &c, 1, DEFAULT_BUDGET).unwrap();
        assert_eq!(r.checked, 70);
        assert_eq!(r.matches, 70);
        assert_eq!(r.balanced_hits, 70);
        assert_eq!(count_radon_matches_by_faces(&x, &c, 1).unwrap(), 70);
    }

    #[test]
    fn budget_guard() {
        let x = complete_graph(8);
        let e = count_radon_matches(&x, &convex_octagon(), 1, 69);
        assert!(matches!(
            e,
            Err(Error::BudgetExceeded {
                required: 70,
                budget: 69
            })
        ));
    }

    #[test]
    fn census_convex_position() {
        let r = balanced_split_census(&convex_octagon(), DEFAULT_BUDGET).unwrap();
        assert_eq!(r.checked, 70);
        assert_eq!(r.balanced_fraction(), 1.0);
    }

    #[test]
    fn census_single_subset_interior_point() {
        let c = PointConfiguration::<Rational>::from_ints(2, &[&[0, 0], &[3, 0], &[0, 3], &[1, 1]]).unwrap();
        let r = balanced_split_census(&c, DEFAULT_BUDGET).unwrap();
        assert_eq!((r.checked, r.balanced_hits), (1, 0));
    }

    #[test]
    fn dimension_mismatch() {
        let x = complete_graph(4);
        let c =
            PointConfiguration::<Rational>::from_ints(3, &[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]).unwrap();
        assert!(matches!(
            count_radon_matches(&x, &c, 1, 10),
            Err(Error::Precondition(_))
        ));
    }
}
