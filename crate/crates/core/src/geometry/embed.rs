//! Straight-line embeddings of collapsible `d`-complexes in `R^{2d}`.

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::predicates::affinely_independent;
use super::radon::is_radon_pair;
use super::{Point, PointConfiguration};
use crate::collapse::PeelResult;
use crate::complex::{Face, SimplicialComplex};
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::seed::rng_from_seed;

pub const DEFAULT_RETRY_BUDGET: usize = 32;

#[derive(Clone, Copy, Debug)]
pub struct EmbedOptions {
    /// Attempts per face before giving up.
    pub retry_budget: usize,
    /// Fresh vertices get integer coordinates in `[0, coord_bound)`.
    pub coord_bound: u64,
}

impl Default for EmbedOptions {
    fn default() -> Self {
        Self {
            retry_budget: DEFAULT_RETRY_BUDGET,
            coord_bound: 1 << 20,
        }
    }
}

/// Two `d`-faces placed in `R^{2d}` meet properly: vertex-disjoint faces
/// must not be a Radon pair, faces sharing vertices must span an affinely
/// independent union (so they meet exactly in the shared face).
/// Degenerate positions count as incompatible.
pub fn faces_compatible<T: Scalar>(f: &Face, g: &Face, config: &PointConfiguration<T>) -> bool {
    if f.is_disjoint(g) {
        matches!(is_radon_pair(f.vertices(), g.vertices(), config), Ok(false))
    } else {
        affinely_independent(&config.select(&f.union(g)))
    }
}

/// Exact check that the `d`-faces of `x` are embedded by `config` in
/// `R^{2d}`: every face is a nondegenerate simplex and every pair of faces
/// is [compatible](faces_compatible).
pub fn verify_embedding<T: Scalar>(x: &SimplicialComplex, config: &PointConfiguration<T>, d: usize) -> bool {
    if d == 0 || config.m() != 2 * d {
        return false;
    }
    let faces = x.faces(d);
    if faces.iter().any(|f| f.max_vertex() >= config.len()) {
        return false;
    }
    if !faces
        .par_iter()
        .all(|f| affinely_independent(&config.select(f.vertices())))
    {
        return false;
    }
    (0..faces.len())
        .into_par_iter()
        .all(|i| faces[i + 1..].iter().all(|g| faces_compatible(&faces[i], g, config)))
}

fn random_point<T: Scalar>(rng: &mut ChaCha8Rng, m: usize, bound: u64) -> Point<T> {
    Point::new(
        (0..m)
            .map(|_| T::from_i64_exact(rng.gen_range(0..bound) as i64))
            .collect(),
    )
}

/// Direction inside a random affine `d`-flat through `sigma`: a random
/// transversal vector plus a random combination of the edge vectors of
/// `sigma`.
fn random_flat_direction<T: Scalar>(rng: &mut ChaCha8Rng, sigma: &[Point<T>], m: usize) -> Vec<T> {
    loop {
        let mut u: Vec<T> = (0..m).map(|_| T::from_i64_exact(rng.gen_range(-1000..=1000))).collect();
        for p in &sigma[1..] {
            let r = T::from_i64_exact(rng.gen_range(-3..=3));
            for (ui, e) in u.iter_mut().zip(p.sub(&sigma[0])) {
                *ui = ui.clone() + r.clone() * e;
            }
        }
        if u.iter().any(|c| !c.is_zero()) {
            return u;
        }
    }
}

/// Largest `δ = 2^{-k} ≤ 1` with `(2δ|u|)^2 ≤ min_sq`.
fn initial_step<T: Scalar>(u: &[T], min_sq: &T) -> T {
    let norm_sq = u.iter().fold(T::zero(), |acc, c| acc + c.clone() * c.clone());
    let four = T::from_i64_exact(4);
    let half = T::one() / T::two();
    let mut delta = T::one();
    while four.clone() * delta.clone() * delta.clone() * norm_sq.clone() > *min_sq {
        delta = delta * half.clone();
    }
    delta
}

/// Places the vertices of a complex whose pure `d`-part collapses to an
/// empty 2-core, face by face in reverse peel order.
///
/// For each face, new vertices other than the largest are fresh random
/// points. The largest new vertex goes next to the barycenter of the
/// remaining `d` vertices `σ`, displaced by `δ·u` with `u` a direction in a
/// random `d`-flat through `σ` and `δ` at most half the distance to the
/// nearest placed point. A placement that breaks the embedding is retried
/// with `δ` halved and fresh randomness, up to `retry_budget` times.
/// Vertices outside every `d`-face are placed last, at random.
pub fn build_embedding<T: Scalar>(
    x: &SimplicialComplex,
    d: usize,
    peel: &PeelResult,
    seed: u64,
    opts: EmbedOptions,
) -> Result<PointConfiguration<T>> {
    if d == 0 {
        return Err(Error::pre("embedding dimension d must be at least 1"));
    }
    if !peel.core_is_empty() {
        return Err(Error::pre(format!(
            "the d-face hypergraph has a nonempty 2-core ({} faces)",
            peel.core.len()
        )));
    }
    let m = 2 * d;
    let n = x.n();
    let bound = opts.coord_bound.max(1);
    let mut rng = rng_from_seed(seed);
    let mut placed: Vec<Option<Point<T>>> = vec![None; n];
    let mut placed_faces: Vec<Face> = Vec::new();
    let half = T::one() / T::two();

    for face in peel.attachment_order() {
        if face.len() != d + 1 || face.max_vertex() >= n {
            return Err(Error::pre(format!("peel face {face:?} is not a d-face on [n]")));
        }
        let fresh: Vec<usize> = face
            .vertices()
            .iter()
            .copied()
            .filter(|&v| placed[v].is_none())
            .collect();
        let Some((&free, others)) = fresh.split_last() else {
            return Err(Error::pre(format!(
                "face {face:?} brings no new vertex; not a peel order"
            )));
        };
        let sigma_ids: Vec<usize> = face.vertices().iter().copied().filter(|&v| v != free).collect();

        let mut done = false;
        for attempt in 0..opts.retry_budget {
            for &o in others {
                placed[o] = Some(random_point(&mut rng, m, bound));
            }
            let sigma: Vec<Point<T>> = sigma_ids
                .iter()
                .map(|&v| placed[v].clone().expect("sigma is placed"))
                .collect();
            let inv_d = T::one() / T::from_usize_exact(d);
            let bary = Point::combination(&vec![inv_d; d], &sigma);
            let u = random_flat_direction(&mut rng, &sigma, m);

            let min_sq = placed
                .iter()
                .enumerate()
                .filter(|(v, _)| !sigma_ids.contains(v) && *v != free)
                .filter_map(|(_, p)| p.as_ref())
                .map(|p| p.squared_distance(&bary))
                .fold(None::<T>, |acc, s| match acc {
                    Some(a) if a <= s => Some(a),
                    _ => Some(s),
                });
            let norm_sq = u.iter().fold(T::zero(), |acc, c| acc + c.clone() * c.clone());
            let min_sq = min_sq.unwrap_or(norm_sq);
            let mut delta = initial_step(&u, &min_sq);
            for _ in 0..attempt {
                delta = delta * half.clone();
            }
            let v = Point::new(
                bary.coords()
                    .iter()
                    .zip(&u)
                    .map(|(b, c)| b.clone() + delta.clone() * c.clone())
                    .collect(),
            );
            placed[free] = Some(v);

            let config = snapshot(&placed, m);
            let ok = affinely_independent(&config.select(face.vertices()))
                && placed_faces.iter().all(|g| faces_compatible(face, g, &config));
            if ok {
                done = true;
                break;
            }
        }
        if !done {
            return Err(Error::ConstructionFailed {
                face: face.clone(),
                attempts: opts.retry_budget,
            });
        }
        placed_faces.push(face.clone());
    }

    for slot in placed.iter_mut().filter(|p| p.is_none()) {
        *slot = Some(random_point(&mut rng, m, bound));
    }
    let config = PointConfiguration::new(m, placed.into_iter().map(|p| p.expect("all placed")).collect())?;
    if !verify_embedding(x, &config, d) {
        return Err(Error::Postcondition(
            "constructed configuration failed verification".into(),
        ));
    }
    Ok(config)
}

/// Configuration of the points placed so far; unplaced slots get the
/// origin and are never referenced by the faces being checked.
fn snapshot<T: Scalar>(placed: &[Option<Point<T>>], m: usize) -> PointConfiguration<T> {
    let origin = Point::new(vec![T::zero(); m]);
    PointConfiguration::new(
        m,
        placed
            .iter()
            .map(|p| p.clone().unwrap_or_else(|| origin.clone()))
            .collect(),
    )
    .expect("all placed points live in R^m")
}
