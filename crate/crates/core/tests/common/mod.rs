#![allow(dead_code)]

use itertools::Itertools;
use linembed::{AlphaVector, Face, Point, Rational, SimplicialComplex};
use num_traits::{One, Signed, Zero};

/// Feasibility of `A x = b, x ≥ 0` by a two-phase simplex (phase one only),
/// exact, with Bland's rule.
pub fn lp_feasible(a: &[Vec<Rational>], b: &[Rational]) -> bool {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let width = cols + rows + 1;
    let mut t: Vec<Vec<Rational>> = Vec::with_capacity(rows);
    for (i, (row, bi)) in a.iter().zip(b).enumerate() {
        let mut r = Vec::with_capacity(width);
        r.extend(row.iter().cloned());
        r.extend((0..rows).map(|j| if j == i { Rational::one() } else { Rational::zero() }));
        r.push(bi.clone());
        if bi.is_negative() {
            for (j, c) in r.iter_mut().enumerate() {
                // artificial column stays +1
                if j < cols || j == width - 1 {
                    *c = -c.clone();
                }
            }
        }
        t.push(r);
    }
    let mut basis: Vec<usize> = (cols..cols + rows).collect();
    let cost = |j: usize| if j >= cols { Rational::one() } else { Rational::zero() };
    loop {
        let reduced = |j: usize, t: &[Vec<Rational>], basis: &[usize]| {
            let mut r = cost(j);
            for (i, &bj) in basis.iter().enumerate() {
                r -= cost(bj) * &t[i][j];
            }
            r
        };
        let Some(enter) = (0..cols + rows).find(|&j| reduced(j, &t, &basis).is_negative()) else {
            break;
        };
        let mut leave: Option<(usize, Rational)> = None;
        for i in 0..rows {
            if t[i][enter].is_positive() {
                let ratio = &t[i][width - 1] / &t[i][enter];
                let better = match &leave {
                    None => true,
                    Some((l, best)) => ratio < *best || (ratio == *best && basis[i] < basis[*l]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        let (pivot_row, _) = leave.expect("phase one is bounded");
        let p = t[pivot_row][enter].clone();
        for c in t[pivot_row].iter_mut() {
            *c = &*c / &p;
        }
        let pivot = t[pivot_row].clone();
        for (i, row) in t.iter_mut().enumerate() {
            if i != pivot_row && !row[enter].is_zero() {
                let f = row[enter].clone();
                for (c, pc) in row.iter_mut().zip(&pivot) {
                    *c -= &f * pc;
                }
            }
        }
        basis[pivot_row] = enter;
    }
    basis
        .iter()
        .enumerate()
        .filter(|(_, &bj)| bj >= cols)
        .all(|(i, _)| t[i][width - 1].is_zero())
}

/// Whether `conv(a) ∩ conv(b)` is nonempty, as an LP over convex weights.
pub fn hulls_intersect(a: &[Point<Rational>], b: &[Point<Rational>]) -> bool {
    let m = a[0].dim();
    let cols = a.len() + b.len();
    let mut rows = Vec::with_capacity(m + 2);
    for k in 0..m {
        let mut r: Vec<Rational> = a.iter().map(|p| p.coords()[k].clone()).collect();
        r.extend(b.iter().map(|p| -p.coords()[k].clone()));
        rows.push(r);
    }
    let mut ra = vec![Rational::zero(); cols];
    let mut rb = vec![Rational::zero(); cols];
    ra[..a.len()].iter_mut().for_each(|c| *c = Rational::one());
    rb[a.len()..].iter_mut().for_each(|c| *c = Rational::one());
    rows.push(ra);
    rows.push(rb);
    let mut rhs = vec![Rational::zero(); m];
    rhs.push(Rational::one());
    rhs.push(Rational::one());
    lp_feasible(&rows, &rhs)
}

/// Whether `q` lies in `conv(points)`, as an LP.
pub fn in_hull(q: &Point<Rational>, points: &[Point<Rational>]) -> bool {
    hulls_intersect(std::slice::from_ref(q), points)
}

/// Induced subcomplex of `y` on `vertices`.
pub fn induced(y: &SimplicialComplex, vertices: &[usize]) -> SimplicialComplex {
    let faces = y
        .all_faces()
        .filter(|f| f.vertices().iter().all(|v| vertices.binary_search(v).is_ok()))
        .cloned()
        .collect::<Vec<Face>>();
    SimplicialComplex::from_faces(y.n(), y.dim_cap(), faces).expect("induced subcomplexes are closed")
}

/// `min f_dot` over all nonempty subcomplexes of `y` (≤ 16 vertices).
///
/// With `α ≥ 0`, adding faces on a fixed vertex set never raises `f_dot`,
/// so induced subcomplexes suffice.
pub fn min_subcomplex_f_dot(y: &SimplicialComplex, alpha: &AlphaVector<Rational>, d: usize) -> Rational {
    let vs = y.vertex_ids();
    assert!(vs.len() <= 16, "exhaustive search is for small complexes");
    (1..=vs.len())
        .flat_map(|k| vs.iter().copied().combinations(k))
        .map(|s| {
            let sub = induced(y, &s);
            linembed::collapse::f_dot(&sub, alpha, d)
                .finite()
                .cloned()
                .expect("finite alpha on dims 1..=d")
        })
        .min()
        .expect("y has a vertex")
}

pub fn rational(num: i64, den: i64) -> Rational {
    Rational::new(num.into(), den.into())
}

pub fn face(v: &[usize]) -> Face {
    Face::new(v.to_vec()).unwrap()
}
