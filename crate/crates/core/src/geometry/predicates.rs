use itertools::Itertools;
use serde::Serialize;

use super::linalg::{determinant, rank};
use super::{Point, PointConfiguration};
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::threshold::binomial;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn of<T: Scalar>(v: &T) -> Self {
        match v.sign() {
            0 => Sign::Zero,
            1 => Sign::Positive,
            _ => Sign::Negative,
        }
    }

    pub fn to_i8(self) -> i8 {
        match self {
            Sign::Negative => -1,
            Sign::Zero => 0,
            Sign::Positive => 1,
        }
    }

    pub fn flip(self) -> Self {
        match self {
            Sign::Negative => Sign::Positive,
            Sign::Zero => Sign::Zero,
            Sign::Positive => Sign::Negative,
        }
    }
}

impl Serialize for Sign {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_i8(self.to_i8())
    }
}

/// Rows are the coordinates, last row all ones; one column per point.
pub(crate) fn lifted<T: Scalar>(points: &[Point<T>]) -> Vec<Vec<T>> {
    let m = points.first().map_or(0, Point::dim);
    let mut rows: Vec<Vec<T>> = (0..m)
        .map(|r| points.iter().map(|p| p.coords()[r].clone()).collect())
        .collect();
    rows.push(vec![T::one(); points.len()]);
    rows
}

/// Sign of `det [p_1 ... p_{m+1}; 1 ... 1]` for `m + 1` points in `R^m`.
pub fn orientation<T: Scalar>(points: &[Point<T>]) -> Sign {
    let m = points.len().saturating_sub(1);
    assert!(
        points.iter().all(|p| p.dim() == m),
        "orientation needs m+1 points in R^m"
    );
    Sign::of(&determinant(lifted(points)))
}

/// True iff the points are affinely independent (at most `m + 1` of them
/// can be).
pub fn affinely_independent<T: Scalar>(points: &[Point<T>]) -> bool {
    if points.is_empty() {
        return true;
    }
    rank(lifted(points), points.len()) == points.len()
}

/// Lexicographic rank of a sorted `k`-subset of `[n]`.
pub(crate) fn subset_rank(n: usize, subset: &[usize]) -> usize {
    let k = subset.len();
    let total = binomial(n as u64, k as u64);
    let tail: u64 = subset
        .iter()
        .enumerate()
        .map(|(i, &c)| binomial((n - 1 - c) as u64, (k - i) as u64))
        .sum();
    (total - 1 - tail) as usize
}

/// Orientation signs of all `(m+1)`-subsets of a labeled configuration, in
/// lexicographic subset order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct OrderType {
    pub m: usize,
    pub n: usize,
    pub signs: Vec<Sign>,
}

impl OrderType {
    /// Sign of the sorted `(m+1)`-subset `subset`.
    pub fn sign_of(&self, subset: &[usize]) -> Sign {
        assert_eq!(subset.len(), self.m + 1);
        self.signs[subset_rank(self.n, subset)]
    }

    /// Signs of the affine dependence of the sorted `(m+2)`-subset `ids`,
    /// normalized so the first entry is positive.
    ///
    /// By Cramer's rule the dependence is `λ_i = (-1)^i det(M_{ĩ})` where
    /// `M_{ĩ}` drops column `i`, so the partition is read off the order
    /// type without touching coordinates.
    pub fn radon_signs(&self, ids: &[usize]) -> Vec<Sign> {
        assert_eq!(ids.len(), self.m + 2);
        let mut signs: Vec<Sign> = (0..ids.len())
            .map(|i| {
                let rest: Vec<usize> = ids
                    .iter()
                    .enumerate()
                    .filter(|&(j, _)| j != i)
                    .map(|(_, &v)| v)
                    .collect();
                let s = self.sign_of(&rest);
                if i % 2 == 0 {
                    s
                } else {
                    s.flip()
                }
            })
            .collect();
        if signs[0] == Sign::Negative {
            signs.iter_mut().for_each(|s| *s = s.flip());
        }
        signs
    }
}

/// Requires every `(m+1)`-subset to be nondegenerate.
pub fn order_type<T: Scalar>(config: &PointConfiguration<T>) -> Result<OrderType> {
    let m = config.m();
    let n = config.len();
    if n < m + 1 {
        return Err(Error::pre(format!(
            "order type needs at least {} points, got {n}",
            m + 1
        )));
    }
    let mut signs = Vec::with_capacity(binomial(n as u64, m as u64 + 1) as usize);
    for subset in (0..n).combinations(m + 1) {
        let s = orientation(&config.select(&subset));
        if s == Sign::Zero {
            return Err(Error::Degenerate { subset });
        }
        signs.push(s);
    }
    Ok(OrderType { m, n, signs })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    fn pts(rows: &[&[i64]]) -> Vec<Point<Rational>> {
        rows.iter().map(|r| Point::from_ints(r)).collect()
    }

    #[test]
    fn orientation_examples() {
        assert_eq!(orientation(&pts(&[&[0, 0], &[1, 0], &[0, 1]])), Sign::Positive);
        assert_eq!(orientation(&pts(&[&[0, 0], &[1, 0], &[2, 0]])), Sign::Zero);
        assert_eq!(orientation(&pts(&[&[0, 0], &[0, 1], &[1, 0]])), Sign::Negative);
        assert_eq!(orientation(&pts(&[&[3], &[5]])), Sign::Negative);
    }

    #[test]
    fn independence() {
        assert!(affinely_independent(&pts(&[&[0, 0], &[1, 0], &[0, 1]])));
        assert!(!affinely_independent(&pts(&[&[0, 0], &[1, 1], &[2, 2]])));
        assert!(affinely_independent(&pts(&[&[0, 0, 0, 0], &[1, 0, 0, 0]])));
    }

    #[test]
    fn subset_rank_matches_enumeration() {
        for n in 1..9 {
            for k in 1..=n {
                for (i, s) in (0..n).combinations(k).enumerate() {
                    assert_eq!(subset_rank(n, &s), i);
                }
            }
        }
    }

    #[test]
    fn convex_quadrilateral_order_type() {
        let c = PointConfiguration::<Rational>::from_ints(2, &[&[0, 0], &[2, 0], &[2, 2], &[0, 2]]).unwrap();
        let ot = order_type(&c).unwrap();
        assert_eq!(ot.signs, vec![Sign::Positive; 4]);
        assert_eq!(ot, order_type(&c.clone()).unwrap());
    }

    #[test]
    fn degenerate_order_type_names_subset() {
        let c = PointConfiguration::<Rational>::from_ints(2, &[&[0, 0], &[1, 1], &[5, 0], &[2, 2]]).unwrap();
        match order_type(&c) {
            Err(Error::Degenerate { subset }) => assert_eq!(subset, vec![0, 1, 3]),
            other => panic!("expected degeneracy, got {other:?}"),
        }
    }
}
