//! Small numeric utilities: Gauss-Legendre panels, tanh-sinh (double
//! exponential) quadrature for endpoint singularities, log-sum-exp, and the
//! real dilogarithm on [-1, 1].

/// Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1].
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 2);
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..(n + 1) / 2 {
        // Chebyshev-like initial guess, then Newton on P_n.
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

/// Composite Gauss-Legendre integration of `f` over [a, b].
pub fn integrate_gl<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, panels: usize, order: usize) -> f64 {
    let (nodes, weights) = gauss_legendre(order);
    let h = (b - a) / panels as f64;
    let mut total = 0.0;
    for p in 0..panels {
        let (lo, hi) = (a + p as f64 * h, a + (p + 1) as f64 * h);
        let (c, d) = (0.5 * (lo + hi), 0.5 * (hi - lo));
        for (x, w) in nodes.iter().zip(&weights) {
            total += w * d * f(c + d * x);
        }
    }
    total
}

/// Tanh-sinh quadrature over [a, b] for integrands with endpoint
/// singularities. The integrand receives (x, x - a, b - x); the distances are
/// computed in a cancellation-free way so factors like ln(b - x) stay accurate
/// arbitrarily close to the endpoints.
pub fn tanh_sinh<F: Fn(f64, f64, f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> f64 {
    let d = 0.5 * (b - a);
    let c = 0.5 * (a + b);
    let half_pi = std::f64::consts::FRAC_PI_2;
    // sum contributions at t = k*h; |t| beyond ~4 underflows the weights
    let eval = |t: f64| -> f64 {
        let u = half_pi * t.sinh();
        let ch = u.cosh();
        let w = half_pi * t.cosh() / (ch * ch);
        if w < 1e-300 {
            return 0.0;
        }
        // distance to the nearer endpoint: d * (1 -+ tanh u) = d * e^{-+u}/cosh u
        let dist_hi = d * (-u).exp() / ch; // b - x
        let dist_lo = d * u.exp() / ch; // x - a
        let x = c + d * u.tanh();
        let val = f(x, dist_lo, dist_hi);
        if val.is_finite() {
            d * w * val
        } else {
            0.0
        }
    };
    let t_max = 4.0;
    let mut h = 1.0;
    let mut total = h * eval(0.0);
    let mut k = 1;
    while (k as f64) * h <= t_max {
        total += h * (eval(k as f64 * h) + eval(-(k as f64) * h));
        k += 1;
    }
    for _level in 0..12 {
        // refine: halve h, add values at odd multiples
        let h2 = h / 2.0;
        let mut add = 0.0;
        let mut k = 1;
        while (k as f64) * h2 <= t_max {
            add += eval(k as f64 * h2) + eval(-(k as f64) * h2);
            k += 2;
        }
        let new_total = total / 2.0 + h2 * add;
        let delta = (new_total - total).abs();
        total = new_total;
        h = h2;
        if delta < tol * total.abs().max(1.0) && _level >= 2 {
            break;
        }
    }
    total
}

/// ln(sum exp(x_i)) computed stably.
pub fn logsumexp(xs: &[f64]) -> f64 {
    let m = xs.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    if !m.is_finite() {
        return m;
    }
    m + xs.iter().map(|x| (x - m).exp()).sum::<f64>().ln()
}

/// Real dilogarithm Li_2(x) for x in [-1, 1].
pub fn dilog(x: f64) -> f64 {
    const PI2_6: f64 = std::f64::consts::PI * std::f64::consts::PI / 6.0;
    assert!((-1.0..=1.0).contains(&x), "dilog domain is [-1, 1], got {x}");
    if x == 1.0 {
        return PI2_6;
    }
    if x == -1.0 {
        return -PI2_6 / 2.0;
    }
    if x.abs() <= 0.5 {
        return dilog_series(x);
    }
    if x > 0.5 {
        // Li2(x) + Li2(1-x) = pi^2/6 - ln x ln(1-x)
        return PI2_6 - x.ln() * (1.0 - x).ln() - dilog_series(1.0 - x);
    }
    // x < -0.5: Li2(x) = -Li2(x/(x-1)) - ln^2(1-x)/2
    let y = x / (x - 1.0); // in (1/3, 1/2] for x in [-1, -0.5)
    -dilog_series(y) - 0.5 * (1.0 - x).ln().powi(2)
}

fn dilog_series(x: f64) -> f64 {
    debug_assert!(x.abs() <= 0.5 + 1e-12);
    let mut term = x;
    let mut sum = 0.0;
    for k in 1..200 {
        sum += term / ((k * k) as f64);
        term *= x;
        if term.abs() < 1e-18 {
            break;
        }
    }
    sum
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn gl_integrates_polynomials_exactly() {
        // order-8 GL is exact through degree 15
        let val = integrate_gl(|x| x.powi(12) - 3.0 * x.powi(5) + 2.0, -1.0, 1.0, 1, 8);
        let exact = 2.0 / 13.0 + 4.0;
        assert!((val - exact).abs() < 1e-14);
    }

    #[test]
    fn gl_panels_handle_oscillation() {
        let j = 40.0;
        let val = integrate_gl(|x| (j * x).cos(), 0.0, PI, 60, 12);
        let exact = (j * PI).sin() / j;
        assert!((val - exact).abs() < 1e-13);
    }

    #[test]
    fn tanh_sinh_log_singularity() {
        // int_0^1 ln(x) dx = -1, using the stable distance argument
        let val = tanh_sinh(|_, dist_lo, _| dist_lo.ln(), 0.0, 1.0, 1e-13);
        assert!((val + 1.0).abs() < 1e-11, "got {val}");
    }

    #[test]
    fn tanh_sinh_sqrt_singularity() {
        // int_0^1 1/sqrt(x) dx = 2
        let val = tanh_sinh(|_, dist_lo, _| dist_lo.sqrt().recip(), 0.0, 1.0, 1e-13);
        assert!((val - 2.0).abs() < 1e-11, "got {val}");
    }

    #[test]
    fn logsumexp_matches_direct() {
        let xs = [-1000.0, -1001.0, -999.5];
        // direct exp would underflow; compare against the shifted closed form
        let expected = -999.5 + (1.0 + (-0.5f64).exp() + (-1.5f64).exp()).ln();
        assert!((logsumexp(&xs) - expected).abs() < 1e-12);
        let small = [0.3, -0.2, 1.1];
        let direct: f64 = small.iter().map(|x: &f64| x.exp()).sum();
        assert!((logsumexp(&small) - direct.ln()).abs() < 1e-12);
    }

    #[test]
    fn dilog_reference_values() {
        let pi2 = PI * PI;
        assert!((dilog(1.0) - pi2 / 6.0).abs() < 1e-15);
        assert!((dilog(-1.0) + pi2 / 12.0).abs() < 1e-15);
        // Li2(1/2) = pi^2/12 - ln^2(2)/2
        let want = pi2 / 12.0 - 0.5 * 2f64.ln().powi(2);
        assert!((dilog(0.5) - want).abs() < 1e-15);
        // spot check against the defining series at x = -0.73 summed far out
        let x: f64 = -0.73;
        let mut direct = 0.0;
        for k in 1..2000 {
            direct += x.powi(k) / ((k * k) as f64);
        }
        assert!((dilog(x) - direct).abs() < 1e-14);
    }
}
