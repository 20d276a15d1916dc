use rand::Rng;

use super::{Point, PointConfiguration};
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::seed::{derive_seed, rng_from_seed};

/// `n` points in `R^m` with integer coordinates uniform in
/// `[0, coord_bound)`. Genericity is not checked up front; callers that
/// hit a zero sign go through [`with_degeneracy_retry`].
pub fn random_configuration<T: Scalar>(
    n: usize,
    m: usize,
    coord_bound: u64,
    seed: u64,
) -> Result<PointConfiguration<T>> {
    if n == 0 || m == 0 {
        return Err(Error::pre("random configuration needs n >= 1 and m >= 1"));
    }
    if coord_bound < (n * m) as u64 {
        return Err(Error::pre(format!(
            "coord_bound {coord_bound} is below n*m = {}",
            n * m
        )));
    }
    if coord_bound > i64::MAX as u64 {
        return Err(Error::pre("coord_bound must fit in i64"));
    }
    let mut rng = rng_from_seed(seed);
    let points = (0..n)
        .map(|_| {
            Point::new(
                (0..m)
                    .map(|_| T::from_i64_exact(rng.gen_range(0..coord_bound) as i64))
                    .collect(),
            )
        })
        .collect();
    PointConfiguration::new(m, points)
}

/// Runs `op(seed)`; on a degeneracy error runs it once more with a derived
/// seed and returns whatever that gives.
pub fn with_degeneracy_retry<R>(seed: u64, mut op: impl FnMut(u64) -> Result<R>) -> Result<R> {
    match op(seed) {
        Err(Error::Degenerate { .. }) => op(derive_seed(seed, u64::MAX, 1)),
        other => other,
    }
}
