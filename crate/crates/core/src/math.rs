//! Small numerical utilities: quadrature, tridiagonal solves, interpolation,
//! quantiles, and dense Cholesky factors for low-dimensional covariances.

/// Adaptive Simpson quadrature of `f` on `[a, b]`.
///
/// Recursion refines until the local Richardson error estimate is below
/// `tol` (scaled by interval share), so narrow features near the endpoints
/// are resolved. `max_depth` bounds the recursion.
pub fn adaptive_simpson<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64, max_depth: u32) -> f64 {
    let fa = f(a);
    let fb = f(b);
    let m = 0.5 * (a + b);
    let fm = f(m);
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    simpson_recurse(f, a, b, fa, fm, fb, whole, tol, max_depth)
}

#[allow(clippy::too_many_arguments)]
fn simpson_recurse<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> f64 {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * tol {
        left + right + delta / 15.0
    } else {
        simpson_recurse(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)
            + simpson_recurse(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)
    }
}

/// Solve a tridiagonal system in place (Thomas algorithm).
///
/// `sub[i]` couples row `i` to `i-1` (sub[0] unused), `sup[i]` couples row
/// `i` to `i+1` (last entry unused). Overwrites `rhs` with the solution.
pub fn solve_tridiagonal(sub: &[f64], diag: &[f64], sup: &[f64], rhs: &mut [f64]) {
    let n = diag.len();
    debug_assert!(sub.len() == n && sup.len() == n && rhs.len() == n);
    let mut c_star = vec![0.0; n];
    let mut denom = diag[0];
    c_star[0] = sup[0] / denom;
    rhs[0] /= denom;
    for i in 1..n {
        denom = diag[i] - sub[i] * c_star[i - 1];
        c_star[i] = sup[i] / denom;
        rhs[i] = (rhs[i] - sub[i] * rhs[i - 1]) / denom;
    }
    for i in (0..n - 1).rev() {
        rhs[i] -= c_star[i] * rhs[i + 1];
    }
}

/// Piecewise-linear interpolation of `(xs, ys)` at `x`, clamped to the ends.
///
/// `xs` must be strictly increasing.
pub fn lerp_clamped(xs: &[f64], ys: &[f64], x: f64) -> f64 {
    debug_assert_eq!(xs.len(), ys.len());
    let n = xs.len();
    if x <= xs[0] {
        return ys[0];
    }
    if x >= xs[n - 1] {
        return ys[n - 1];
    }
    // binary search for the bracketing interval
    let idx = match xs.binary_search_by(|v| v.partial_cmp(&x).unwrap()) {
        Ok(i) => return ys[i],
        Err(i) => i,
    };
    let (x0, x1) = (xs[idx - 1], xs[idx]);
    let (y0, y1) = (ys[idx - 1], ys[idx]);
    y0 + (y1 - y0) * (x - x0) / (x1 - x0)
}

/// Quantile of a sample by linear interpolation of order statistics
/// (the common "type 7" definition). `p` in [0, 1].
pub fn quantile(sorted: &[f64], p: f64) -> f64 {
    let n = sorted.len();
    assert!(n > 0, "quantile of empty sample");
    if n == 1 {
        return sorted[0];
    }
    let h = p.clamp(0.0, 1.0) * (n - 1) as f64;
    let lo = h.floor() as usize;
    let hi = (lo + 1).min(n - 1);
    let frac = h - lo as f64;
    sorted[lo] + frac * (sorted[hi] - sorted[lo])
}

/// Sort a copy of `values` and return the `p` quantile.
pub fn quantile_of(values: &[f64], p: f64) -> f64 {
    let mut v = values.to_vec();
    v.sort_by(|a, b| a.partial_cmp(b).unwrap());
    quantile(&v, p)
}

/// Sample mean.
pub fn mean(values: &[f64]) -> f64 {
    values.iter().sum::<f64>() / values.len() as f64
}

/// Population standard deviation (1/N normalization).
pub fn std_pop(values: &[f64]) -> f64 {
    let m = mean(values);
    (values.iter().map(|v| (v - m) * (v - m)).sum::<f64>() / values.len() as f64).sqrt()
}

/// Dense lower-triangular Cholesky factor of a symmetric matrix stored
/// row-major in `a` (d x d). Returns `None` if the matrix is not positive
/// definite.
pub fn cholesky(a: &[f64], d: usize) -> Option<Vec<f64>> {
    let mut l = vec![0.0; d * d];
    for i in 0..d {
        for j in 0..=i {
            let mut sum = a[i * d + j];
            for k in 0..j {
                sum -= l[i * d + k] * l[j * d + k];
            }
            if i == j {
                if sum <= 0.0 || !sum.is_finite() {
                    return None;
                }
                l[i * d + i] = sum.sqrt();
            } else {
                l[i * d + j] = sum / l[j * d + j];
            }
        }
    }
    Some(l)
}

/// Forward-substitute `L z = v` for lower-triangular `L` (row-major, d x d).
pub fn forward_solve(l: &[f64], d: usize, v: &[f64]) -> Vec<f64> {
    let mut z = vec![0.0; d];
    for i in 0..d {
        let mut sum = v[i];
        for k in 0..i {
            sum -= l[i * d + k] * z[k];
        }
        z[i] = sum / l[i * d + i];
    }
    z
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simpson_integrates_polynomial_exactly() {
        // x^3 on [0,2] -> 4; Simpson is exact for cubics
        let v = adaptive_simpson(&|x: f64| x * x * x, 0.0, 2.0, 1e-12, 40);
        assert!((v - 4.0).abs() < 1e-12);
    }

    #[test]
    fn simpson_resolves_narrow_gaussian() {
        // integral of exp(-(x/s)^2) over [0, inf) = s*sqrt(pi)/2; the tail
        // beyond pi/2 is negligible for s = 0.01
        let s = 0.01;
        let v = adaptive_simpson(
            &|x: f64| (-(x / s) * (x / s)).exp(),
            0.0,
            std::f64::consts::FRAC_PI_2,
            1e-14,
            60,
        );
        let exact = s * std::f64::consts::PI.sqrt() / 2.0;
        assert!((v - exact).abs() / exact < 1e-9, "got {v}, want {exact}");
    }

    #[test]
    fn tridiagonal_matches_dense_solution() {
        // [2 1 0; 1 3 1; 0 1 2] x = [3, 10, 7] -> x = [0.25, 2.5, 2.25]
        let sub = [0.0, 1.0, 1.0];
        let diag = [2.0, 3.0, 2.0];
        let sup = [1.0, 1.0, 0.0];
        let mut rhs = [3.0, 10.0, 7.0];
        solve_tridiagonal(&sub, &diag, &sup, &mut rhs);
        assert!((rhs[0] - 0.25).abs() < 1e-13);
        assert!((rhs[1] - 2.5).abs() < 1e-13);
        assert!((rhs[2] - 2.25).abs() < 1e-13);
    }

    #[test]
    fn lerp_clamps_and_interpolates() {
        let xs = [0.0, 1.0, 3.0];
        let ys = [0.0, 2.0, 6.0];
        assert_eq!(lerp_clamped(&xs, &ys, -1.0), 0.0);
        assert_eq!(lerp_clamped(&xs, &ys, 4.0), 6.0);
        assert!((lerp_clamped(&xs, &ys, 2.0) - 4.0).abs() < 1e-14);
    }

    #[test]
    fn quantile_endpoints_and_median() {
        let v = [1.0, 2.0, 3.0, 4.0, 5.0];
        assert_eq!(quantile(&v, 0.0), 1.0);
        assert_eq!(quantile(&v, 1.0), 5.0);
        assert_eq!(quantile(&v, 0.5), 3.0);
    }

    #[test]
    fn cholesky_roundtrip() {
        // A = L L^T with L = [[2,0],[1,3]]
        let a = [4.0, 2.0, 2.0, 10.0];
        let l = cholesky(&a, 2).unwrap();
        assert!((l[0] - 2.0).abs() < 1e-14);
        assert!((l[2] - 1.0).abs() < 1e-14);
        assert!((l[3] - 3.0).abs() < 1e-14);
        let z = forward_solve(&l, 2, &[2.0, 7.0]);
        assert!((z[0] - 1.0).abs() < 1e-14);
        assert!((z[1] - 2.0).abs() < 1e-14);
    }
}
