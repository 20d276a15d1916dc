//! Exponent arithmetic for the multiparameter model.
//!
//! The expected number of `(s-1)`-faces of `X(n; n^{-α})` grows like
//! `n^{s - α·v_s}` where `v_s = (C(s,2), C(s,3), ...)`. Everything here is
//! built on that exponent: the sparse/dense classification in dimension
//! `2d`, the overlap exponents that control the variance of Radon-match
//! counts, and finite-grid verifiers for the combinatorial inequalities
//! the threshold rests on.

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{FromPrimitive, One, Signed, Zero};
use serde::Serialize;

use crate::alpha::{AlphaEntry, AlphaVector, Exponent};
use crate::scalar::Scalar;

/// Absolute tolerance for the `Critical` label.
pub const CRITICAL_TOLERANCE: f64 = 1e-12;

/// `C(n, k)`, zero when `k > n`. Panics on `u64` overflow.
pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    u64::try_from(acc).expect("binomial coefficient overflows u64")
}

/// `C(n, k)` saturating at `u64::MAX`, for budget checks.
pub fn binomial_saturating(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return u64::MAX;
        }
    }
    acc as u64
}

/// `v_s = (C(s, i+1))_{i ≥ 1}` up to the last nonzero entry `C(s, s)`.
pub fn binom_vector(s: usize) -> Vec<u64> {
    assert!(s >= 1, "binom_vector needs s >= 1");
    (1..s).map(|i| binomial(s as u64, i as u64 + 1)).collect()
}

/// `Σ_i coeffs[i-1]·α_i`, or `None` (meaning `+∞`) when an infinite entry
/// meets a positive coefficient.
fn weighted_alpha<T: Scalar>(alpha: &AlphaVector<T>, coeffs: impl IntoIterator<Item = (usize, u64)>) -> Option<T> {
    let mut acc = T::zero();
    for (i, c) in coeffs {
        if c == 0 {
            continue;
        }
        match alpha.get(i) {
            AlphaEntry::Infinite => return None,
            AlphaEntry::Finite(a) => acc = acc + a * T::from_u64_exact(c),
        }
    }
    Some(acc)
}

/// `s - α·v_s`.
pub fn face_exponent<T: Scalar>(s: usize, alpha: &AlphaVector<T>) -> Exponent<T> {
    let v = binom_vector(s);
    match weighted_alpha(alpha, v.into_iter().enumerate().map(|(i, c)| (i + 1, c))) {
        None => Exponent::NegInfinite,
        Some(w) => Exponent::Finite(T::from_usize_exact(s) - w),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExponentReport {
    pub s: usize,
    /// `s - α·v_s`; `-inf` serializes as `null`.
    pub exponent: f64,
    pub neg_infinite: bool,
}

pub fn exponent_report<T: Scalar>(s: usize, alpha: &AlphaVector<T>) -> ExponentReport {
    let e = face_exponent(s, alpha);
    ExponentReport {
        s,
        exponent: e.to_f64(),
        neg_infinite: matches!(e, Exponent::NegInfinite),
    }
}

/// Regime of `d + 1 - α·v_{d+1}` relative to 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Classification {
    /// Below 1: expected to embed in `R^{2d}`.
    Sparse,
    /// Above 1: expected not to embed.
    Dense,
    /// Within [`CRITICAL_TOLERANCE`] of 1; no prediction.
    Critical,
}

pub fn classify<T: Scalar>(d: usize, alpha: &AlphaVector<T>) -> Classification {
    assert!(d >= 1, "classify needs d >= 1");
    match face_exponent(d + 1, alpha) {
        Exponent::NegInfinite => Classification::Sparse,
        Exponent::Finite(e) => {
            let tol = T::from_f64(CRITICAL_TOLERANCE).expect("scalar represents the tolerance");
            let gap = e - T::one();
            if gap.abs() <= tol {
                Classification::Critical
            } else if gap.is_negative() {
                Classification::Sparse
            } else {
                Classification::Dense
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct JansonReport<T> {
    pub d: usize,
    pub min_exponent: Exponent<T>,
    pub argmin: [usize; 4],
}

/// Minimizes `Σ_{i=1}^4 (m_i - α·v_{m_i})` over `m ∈ {1, ..., d+1}^4` with
/// some `m_i ≥ 2`. Ties resolve to the lexicographically first tuple.
pub fn janson_exponent<T: Scalar>(d: usize, alpha: &AlphaVector<T>) -> JansonReport<T> {
    assert!(d >= 1, "janson_exponent needs d >= 1");
    let terms: Vec<Exponent<T>> = (1..=d + 1).map(|m| face_exponent(m, alpha)).collect();
    let mut best: Option<(Exponent<T>, [usize; 4])> = None;
    let k = d + 1;
    for code in 0..k.pow(4) {
        let m = [
            code / (k * k * k) + 1,
            code / (k * k) % k + 1,
            code / k % k + 1,
            code % k + 1,
        ];
        if m.iter().all(|&mi| mi < 2) {
            continue;
        }
        // sum in sorted order so permuted tuples tie exactly under f64
        let mut sorted = m;
        sorted.sort_unstable();
        let total = sorted
            .iter()
            .fold(Exponent::Finite(T::zero()), |acc, &mi| acc.plus(terms[mi - 1].clone()));
        if best.as_ref().is_none_or(|(b, _)| total.lt(b)) {
            best = Some((total, m));
        }
    }
    let (min_exponent, argmin) = best.expect("d >= 1 admits a tuple");
    JansonReport {
        d,
        min_exponent,
        argmin,
    }
}

/// Number of `k`-faces of the `d`-simplex meeting both a fixed `t`-subset
/// of its vertices and its complement.
pub fn g_count(t: usize, d: usize, k: usize) -> i64 {
    assert!(
        (1..=d + 1).contains(&t) && k <= d,
        "g_count needs 1 <= t <= d+1, k <= d"
    );
    let c = |a: usize| binomial(a as u64, k as u64 + 1) as i64;
    c(d + 1) - c(t) - c(d + 1 - t)
}

/// Upper bound on the change of `f_0 - Σ α_i f_i` when a `d`-face bringing
/// `t` new vertices is attached to a weakly connected complex:
/// `t - Σ_{k=1}^{d} α_k (C(t, k+1) + g(t, d, k))`.
///
/// The `k = d` term is always `α_d`, the cost of the new `d`-face itself.
pub fn gamma_bound<T: Scalar>(t: usize, d: usize, alpha: &AlphaVector<T>) -> Exponent<T> {
    assert!((1..=d).contains(&t), "gamma_bound needs 1 <= t <= d");
    let coeffs = (1..=d).map(|k| {
        let c = binomial(t as u64, k as u64 + 1) as i64 + g_count(t, d, k);
        (k, c as u64)
    });
    match weighted_alpha(alpha, coeffs) {
        None => Exponent::NegInfinite,
        Some(w) => Exponent::Finite(T::from_usize_exact(t) - w),
    }
}

/// Compositions of `total` into `parts` nonnegative parts, in lexicographic
/// order. Calls `visit` on each; stops early when it returns `false`.
fn for_each_composition(total: usize, parts: usize, mut visit: impl FnMut(&[usize]) -> bool) -> bool {
    fn rec(rest: usize, slot: usize, buf: &mut Vec<usize>, visit: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        if slot + 1 == buf.len() {
            buf[slot] = rest;
            return visit(buf);
        }
        for c in 0..=rest {
            buf[slot] = c;
            if !rec(rest - c, slot + 1, buf, visit) {
                return false;
            }
        }
        true
    }
    if parts == 0 {
        return visit(&[]);
    }
    let mut buf = vec![0; parts];
    rec(total, 0, &mut buf, &mut visit)
}

/// Points `α ≥ 0` on `{Σ_j w_j α_j = target}` over coordinates `1..=dims`:
/// a barycentric grid of the simplex whose vertices are
/// `α_j = target / w_j`. Every vertex is on the grid.
fn simplex_grid(
    weights: &[u64],
    target: &BigRational,
    resolution: usize,
    mut visit: impl FnMut(&AlphaVector<BigRational>) -> bool,
) -> bool {
    let r = BigRational::from_usize(resolution).expect("usize fits");
    let vertices: Vec<BigRational> = weights
        .iter()
        .map(|&w| target / BigRational::from_u64(w).expect("u64 fits"))
        .collect();
    for_each_composition(resolution, weights.len(), |c| {
        let entries = c
            .iter()
            .zip(&vertices)
            .map(|(&cj, vj)| AlphaEntry::Finite(BigRational::from_usize(cj).expect("usize fits") / &r * vj))
            .collect();
        let alpha = AlphaVector::new(entries).expect("grid points are nonnegative");
        visit(&alpha)
    })
}

/// `eps` read as the decimal it prints as, so `0.1` means exactly `1/10`.
fn exact_eps(eps: f64) -> BigRational {
    assert!(eps.is_finite(), "eps must be finite");
    let text = eps.to_string();
    let (int, frac) = text.split_once('.').unwrap_or((&text, ""));
    let digits: BigInt = format!("{int}{frac}").parse().expect("f64 prints as a decimal");
    Ratio::new(digits, BigInt::from(10u32).pow(frac.len() as u32))
}

/// Which half of the f-vector inequality to check.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FVectorPart {
    /// `s - α·v_s = 1 - ε` forces `s + 1 - α·v_{s+1} < 0` (`s ≥ 2`).
    Upward,
    /// `s - α·v_s = 1 + ε` forces `s - 1 - α·v_{s-1} > 1` (`s ≥ 3`).
    Downward,
}

/// Checks one part of the f-vector inequality on a grid of the constraint
/// surface, in exact rational arithmetic.
///
/// For the upward part `α_s` does not enter the constraint and only lowers
/// the conclusion, so it is pinned at 0. An empty constraint region (the
/// downward part with `ε > s - 1`) passes vacuously.
pub fn verify_fvector_part(part: FVectorPart, s: usize, eps: f64, grid_resolution: usize) -> bool {
    assert!(eps > 0.0, "eps must be positive");
    assert!(grid_resolution >= 1, "grid resolution must be positive");
    let eps = exact_eps(eps);
    let s_q = BigRational::from_usize(s).expect("usize fits");
    let one = BigRational::one();
    let weights = binom_vector(s);
    match part {
        FVectorPart::Upward => {
            assert!(s >= 2, "upward part needs s >= 2");
            // α·v_s = s - 1 + ε
            let target = &s_q - &one + &eps;
            simplex_grid(&weights, &target, grid_resolution, |alpha| {
                let alpha = alpha
                    .with_entry(s, AlphaEntry::Finite(BigRational::zero()))
                    .expect("valid");
                face_exponent(s + 1, &alpha).lt_value(&BigRational::zero())
            })
        }
        FVectorPart::Downward => {
            assert!(s >= 3, "downward part needs s >= 3");
            let target = &s_q - &one - &eps;
            if target.is_negative() {
                return true;
            }
            simplex_grid(&weights, &target, grid_resolution, |alpha| {
                face_exponent(s - 1, alpha).gt_value(&one)
            })
        }
    }
}

/// Both applicable parts for this `s`: the upward part always, the
/// downward part when `s ≥ 3`.
pub fn verify_fvector_lemma(s: usize, eps: f64, grid_resolution: usize) -> bool {
    verify_fvector_part(FVectorPart::Upward, s, eps, grid_resolution)
        && (s < 3 || verify_fvector_part(FVectorPart::Downward, s, eps, grid_resolution))
}

/// Value of the upward conclusion at the simplex vertex where only
/// `α_{j-1}` is nonzero: `2 - ε - (s - 1 + ε)·j/(s - j + 1)`.
pub fn fvector_vertex_value(s: usize, j: usize, eps: f64) -> BigRational {
    assert!((2..=s).contains(&j));
    let eps = exact_eps(eps);
    let q = |v: usize| BigRational::from_usize(v).expect("usize fits");
    q(2) - &eps - (q(s) - q(1) + &eps) * q(j) / q(s - j + 1)
}

/// Checks `γ(t) < 0` for every `t ∈ {1..d}` on a grid of
/// `{α ≥ 0 : d + 1 - α·v_{d+1} = 1 - ε}`, exactly.
pub fn verify_gamma_bound(d: usize, eps: f64, grid_resolution: usize) -> bool {
    assert!(d >= 1 && eps > 0.0 && grid_resolution >= 1);
    let eps = exact_eps(eps);
    let target = BigRational::from_usize(d).expect("usize fits") + eps;
    let weights = binom_vector(d + 1);
    let zero = BigRational::zero();
    simplex_grid(&weights, &target, grid_resolution, |alpha| {
        (1..=d).all(|t| gamma_bound(t, d, alpha).lt_value(&zero))
    })
}

/// `t/(n-1) ≤ (C(n,k) - C(n-t,k)) / C(n,k)` in exact rationals.
pub fn check_ratio_claim(n: usize, t: usize, k: usize) -> bool {
    assert!(
        n >= 2 && (1..n).contains(&t) && (2..=n).contains(&k),
        "check_ratio_claim domain"
    );
    let c = |a: usize| BigInt::from(binomial(a as u64, k as u64));
    let lhs = Ratio::new(BigInt::from(t), BigInt::from(n - 1));
    let rhs = Ratio::new(c(n) - c(n - t), c(n));
    lhs <= rhs
}

/// `C(d+1, i+1) ≤ d/(i+1) · (2·C(d,i) - C(m,i))` in exact rationals.
pub fn check_degree_claim(d: usize, i: usize, m: usize) -> bool {
    assert!(d >= 1 && (1..=d).contains(&i) && m < d, "check_degree_claim domain");
    let c = |a: usize, b: usize| BigInt::from(binomial(a as u64, b as u64));
    let lhs = Ratio::from_integer(c(d + 1, i + 1));
    let rhs =
        Ratio::new(BigInt::from(d), BigInt::from(i + 1)) * Ratio::from_integer(BigInt::from(2) * c(d, i) - c(m, i));
    lhs <= rhs
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a(s: &str) -> AlphaVector {
        s.parse().unwrap()
    }

    #[test]
    fn binom_vectors() {
        assert_eq!(binom_vector(1), Vec::<u64>::new());
        assert_eq!(binom_vector(2), vec![1]);
        assert_eq!(binom_vector(3), vec![3, 1]);
        assert_eq!(binom_vector(5), vec![10, 10, 5, 1]);
    }

    #[test]
    fn pascal_splitting() {
        for s in 1..20 {
            let v = binom_vector(s);
            let w = binom_vector(s + 1);
            for i in 0..w.len() {
                let prev_same = v.get(i).copied().unwrap_or(0);
                let prev_lower = if i == 0 { s as u64 } else { v[i - 1] };
                assert_eq!(w[i], prev_same + prev_lower, "s={s} i={i}");
            }
        }
    }

    #[test]
    fn face_exponent_examples() {
        assert_eq!(face_exponent(2, &a("0.5")), Exponent::Finite(1.5));
        assert_eq!(face_exponent(3, &a("0,3")), Exponent::Finite(0.0));
        let e = face_exponent(4, &a("0.1,0.2,0.3")).to_f64();
        assert!((e - 2.3).abs() < 1e-12);
        assert_eq!(face_exponent(3, &a("0.5")), Exponent::NegInfinite);
        assert_eq!(face_exponent(1, &a("inf")), Exponent::Finite(1.0));
    }

    #[test]
    fn classify_examples() {
        assert_eq!(classify(2, &a("0,2.5")), Classification::Sparse);
        assert_eq!(classify(1, &a("1.0")), Classification::Critical);
        assert_eq!(classify(1, &a("0.7")), Classification::Dense);
        assert_eq!(classify(2, &a("0,inf")), Classification::Sparse);
    }

    #[test]
    fn janson_examples() {
        let r = janson_exponent(1, &a("0.8"));
        assert!((r.min_exponent.to_f64() - 4.2).abs() < 1e-12);
        assert_eq!(r.argmin, [1, 1, 1, 2]);
        let r = janson_exponent(1, &a("0"));
        assert_eq!(r.min_exponent, Exponent::Finite(5.0));
        assert_eq!(r.argmin, [1, 1, 1, 2]);
        // once m = 2 is cheaper than m = 1 every slot takes it
        let r = janson_exponent(1, &a("1.5"));
        assert_eq!(r.argmin, [2, 2, 2, 2]);
    }

    #[test]
    fn g_count_examples() {
        assert_eq!(g_count(1, 2, 1), 2);
        assert_eq!(g_count(2, 3, 1), 4);
        for d in 1..6 {
            for k in 0..=d {
                assert_eq!(g_count(d + 1, d, k), 0);
            }
        }
    }

    #[test]
    fn gamma_examples() {
        for a1 in [0.0, 0.3, 1.7] {
            let g = gamma_bound(1, 1, &AlphaVector::finite(vec![a1]).unwrap());
            assert!((g.to_f64() - (1.0 - a1)).abs() < 1e-15);
        }
        assert_eq!(gamma_bound(1, 2, &a("1.5,0")), Exponent::Finite(-2.0));
    }

    #[test]
    fn claims_at_equality() {
        assert!(check_ratio_claim(5, 4, 2));
        assert!(check_ratio_claim(10, 1, 2));
        assert!(check_degree_claim(1, 1, 0));
        assert!(check_degree_claim(3, 1, 2));
    }

    #[test]
    fn eps_is_read_as_a_decimal() {
        assert_eq!(exact_eps(0.1), Ratio::new(BigInt::from(1), BigInt::from(10)));
        assert_eq!(exact_eps(1.0), BigRational::one());
        assert_eq!(exact_eps(2.25), Ratio::new(BigInt::from(9), BigInt::from(4)));
    }

    #[test]
    fn composition_count() {
        let mut count = 0;
        for_each_composition(4, 3, |_| {
            count += 1;
            true
        });
        assert_eq!(count, 15);
    }

    #[test]
    fn fvector_vertex_case() {
        let v = fvector_vertex_value(4, 2, 0.1);
        assert!(v < BigRational::zero());
    }

    #[test]
    fn small_grid_verification() {
        assert!(verify_fvector_lemma(2, 0.5, 10));
        assert!(verify_fvector_lemma(4, 0.1, 6));
        assert!(verify_gamma_bound(3, 0.2, 6));
    }
}
