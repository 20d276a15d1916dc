use super::linalg::kernel;
use super::predicates::lifted;
use super::{Point, PointConfiguration};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// The unique split of `m + 2` generic points in `R^m` into two parts with
/// intersecting convex hulls, with the affine dependence that proves it.
///
/// `lambda[i]` belongs to `ids[i]`. It satisfies `Σ λ_i p_i = 0` and
/// `Σ λ_i = 0`, is positive exactly on `part_a`, and is scaled so that
/// `Σ_{a ∈ part_a} λ_a = 1`. The smallest label always lies in `part_a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RadonPartition<T> {
    pub ids: Vec<usize>,
    pub part_a: Vec<usize>,
    pub part_b: Vec<usize>,
    pub lambda: Vec<T>,
}

impl<T: Scalar> RadonPartition<T> {
    /// Convex weights on `part_a` (in `part_a` order), summing to 1.
    pub fn weights_a(&self) -> Vec<T> {
        self.ids
            .iter()
            .zip(&self.lambda)
            .filter(|(_, l)| l.is_positive())
            .map(|(_, l)| l.clone())
            .collect()
    }

    /// Convex weights on `part_b` (in `part_b` order), summing to 1.
    pub fn weights_b(&self) -> Vec<T> {
        self.ids
            .iter()
            .zip(&self.lambda)
            .filter(|(_, l)| l.is_negative())
            .map(|(_, l)| -l.clone())
            .collect()
    }

    /// Smaller part size first.
    pub fn split_sizes(&self) -> (usize, usize) {
        let (a, b) = (self.part_a.len(), self.part_b.len());
        (a.min(b), a.max(b))
    }

    /// Whether `{part_a, part_b}` equals `{x, y}` as an unordered pair of
    /// sorted label sets.
    pub fn is_pair(&self, x: &[usize], y: &[usize]) -> bool {
        (self.part_a == x && self.part_b == y) || (self.part_a == y && self.part_b == x)
    }
}

/// Radon partition of `m + 2` points in `R^m`; labels are `0..m+2`.
pub fn radon_partition<T: Scalar>(points: &[Point<T>]) -> Result<RadonPartition<T>> {
    let ids: Vec<usize> = (0..points.len()).collect();
    partition_with_ids(points, ids)
}

/// Radon partition of the labeled points `ids` (sorted) of `config`.
pub fn radon_partition_of<T: Scalar>(config: &PointConfiguration<T>, ids: &[usize]) -> Result<RadonPartition<T>> {
    partition_with_ids(&config.select(ids), ids.to_vec())
}

fn partition_with_ids<T: Scalar>(points: &[Point<T>], ids: Vec<usize>) -> Result<RadonPartition<T>> {
    let k = points.len();
    if k < 2 || points.iter().any(|p| p.dim() + 2 != k) {
        return Err(Error::pre(format!(
            "a Radon partition needs m+2 points in R^m, got {k} points"
        )));
    }
    let basis = kernel(lifted(points), k);
    if basis.len() != 1 {
        return Err(Error::Degenerate { subset: ids });
    }
    let mut lambda = basis.into_iter().next().expect("one kernel vector");
    if lambda.iter().any(|l| l.is_zero()) {
        return Err(Error::Degenerate { subset: ids });
    }
    let first = (0..k).min_by_key(|&i| ids[i]).expect("nonempty");
    if lambda[first].is_negative() {
        lambda.iter_mut().for_each(|l| *l = -l.clone());
    }
    let positive_sum = lambda
        .iter()
        .filter(|l| l.is_positive())
        .fold(T::zero(), |acc, l| acc + l.clone());
    lambda.iter_mut().for_each(|l| *l = l.clone() / positive_sum.clone());

    let mut part_a = Vec::new();
    let mut part_b = Vec::new();
    for (id, l) in ids.iter().zip(&lambda) {
        if l.is_positive() {
            part_a.push(*id);
        } else {
            part_b.push(*id);
        }
    }
    part_a.sort_unstable();
    part_b.sort_unstable();
    Ok(RadonPartition {
        ids,
        part_a,
        part_b,
        lambda,
    })
}

/// True iff the labeled sets `a` and `b` (sorted, disjoint, together
/// `m + 2` points) form the Radon partition of their union. For generic
/// points this is exactly "the convex hulls of `a` and `b` meet".
pub(crate) fn is_radon_pair<T: Scalar>(a: &[usize], b: &[usize], config: &PointConfiguration<T>) -> Result<bool> {
    let mut union: Vec<usize> = a.iter().chain(b).copied().collect();
    union.sort_unstable();
    let p = radon_partition_of(config, &union)?;
    Ok(p.is_pair(a, b))
}

/// Whether the `d`-simplices on the vertex-disjoint `(d+1)`-sets `a` and
/// `b` meet in `R^{2d}`.
pub fn simplices_intersect<T: Scalar>(a: &[usize], b: &[usize], config: &PointConfiguration<T>) -> Result<bool> {
    let d = a.len().saturating_sub(1);
    if a.is_empty() || a.len() != b.len() {
        return Err(Error::pre("simplices must both have d+1 vertices"));
    }
    if config.m() != 2 * d {
        return Err(Error::pre(format!(
            "configuration lives in R^{}, expected R^{}",
            config.m(),
            2 * d
        )));
    }
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    a.sort_unstable();
    b.sort_unstable();
    if a.iter().any(|v| b.binary_search(v).is_ok()) {
        return Err(Error::pre("simplices must be vertex-disjoint"));
    }
    is_radon_pair(&a, &b, config)
}
