//! Exact geometry of labeled point configurations.
//!
//! Every sign and every solve goes through [`linalg`] over the caller's
//! scalar field; with [`Rational`](crate::Rational) all answers are exact.

mod embed;
pub mod linalg;
mod predicates;
mod radon;
mod random;

use std::fmt::Display;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

pub use embed::{build_embedding, faces_compatible, verify_embedding, EmbedOptions, DEFAULT_RETRY_BUDGET};
pub use predicates::{affinely_independent, order_type, orientation, OrderType, Sign};
pub use radon::{radon_partition, radon_partition_of, simplices_intersect, RadonPartition};
pub use random::{random_configuration, with_degeneracy_retry};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Point<T> {
    coords: Vec<T>,
}

impl<T: Scalar> Point<T> {
    pub fn new(coords: Vec<T>) -> Self {
        Self { coords }
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        Self::new(coords.iter().map(|&c| T::from_i64_exact(c)).collect())
    }

    pub fn coords(&self) -> &[T] {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn sub(&self, other: &Self) -> Vec<T> {
        self.coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a.clone() - b.clone())
            .collect()
    }

    pub fn squared_distance(&self, other: &Self) -> T {
        self.sub(other)
            .into_iter()
            .fold(T::zero(), |acc, x| acc + x.clone() * x)
    }

    /// `Σ w_i p_i`.
    pub fn combination<'a>(weights: &[T], points: impl IntoIterator<Item = &'a Self>) -> Self
    where
        T: 'a,
    {
        let mut out: Option<Vec<T>> = None;
        for (w, p) in weights.iter().zip(points) {
            let acc = out.get_or_insert_with(|| vec![T::zero(); p.dim()]);
            for (a, c) in acc.iter_mut().zip(&p.coords) {
                *a = a.clone() + w.clone() * c.clone();
            }
        }
        Self::new(out.unwrap_or_default())
    }
}

/// `n` labeled points in `R^m`; labels are the indices `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointConfiguration<T> {
    m: usize,
    points: Vec<Point<T>>,
}

impl<T: Scalar> PointConfiguration<T> {
    pub fn new(m: usize, points: Vec<Point<T>>) -> Result<Self> {
        if let Some((i, p)) = points.iter().enumerate().find(|(_, p)| p.dim() != m) {
            return Err(Error::pre(format!(
                "point {i} has dimension {} in a configuration of dimension {m}",
                p.dim()
            )));
        }
        Ok(Self { m, points })
    }

    pub fn from_ints(m: usize, rows: &[&[i64]]) -> Result<Self> {
        Self::new(m, rows.iter().map(|r| Point::from_ints(r)).collect())
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Point<T>] {
        &self.points
    }

    pub fn point(&self, i: usize) -> &Point<T> {
        &self.points[i]
    }

    /// The points with the given labels, in that order.
    pub fn select(&self, ids: &[usize]) -> Vec<Point<T>> {
        ids.iter().map(|&i| self.points[i].clone()).collect()
    }

    /// Image under `x ↦ A x + b`.
    pub fn affine_image(&self, a: &[Vec<T>], b: &[T]) -> Self {
        let points = self
            .points
            .iter()
            .map(|p| {
                Point::new(
                    a.iter()
                        .zip(b)
                        .map(|(row, bi)| {
                            row.iter()
                                .zip(p.coords())
                                .fold(bi.clone(), |acc, (x, y)| acc + x.clone() * y.clone())
                        })
                        .collect(),
                )
            })
            .collect();
        Self { m: a.len(), points }
    }
}

/// Wire form: `{"m": 2, "points": [["1/2", "3"], [0, 1]]}`.
#[derive(Serialize, Deserialize)]
struct ConfigurationJson {
    m: usize,
    points: Vec<Vec<serde_json::Value>>,
}

impl<T: Scalar + Display + FromStr> PointConfiguration<T> {
    pub fn to_json_string(&self) -> String {
        let raw = ConfigurationJson {
            m: self.m,
            points: self
                .points
                .iter()
                .map(|p| {
                    p.coords
                        .iter()
                        .map(|c| serde_json::Value::String(c.to_string()))
                        .collect()
                })
                .collect(),
        };
        serde_json::to_string(&raw).expect("configuration serializes")
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let raw: ConfigurationJson = serde_json::from_str(s)?;
        let mut points = Vec::with_capacity(raw.points.len());
        for row in raw.points {
            let mut coords = Vec::with_capacity(row.len());
            for v in row {
                let text = match &v {
                    serde_json::Value::String(s) => s.clone(),
                    serde_json::Value::Number(n) if n.is_i64() || n.is_u64() => n.to_string(),
                    other => {
                        return Err(Error::Parse(format!(
                            "coordinate {other} is not a rational string or integer"
                        )))
                    }
                };
                let c = text
                    .trim()
                    .parse::<T>()
                    .map_err(|_| Error::Parse(format!("malformed rational {text:?}")))?;
                coords.push(c);
            }
            points.push(Point::new(coords));
        }
        Self::new(raw.m, points)
    }
}
