//! Free-fermion engine for the uniform x-axis deformation of the critical
//! chain: quench modes, Majorana correlation matrices, entanglement entropies
//! with their effective log coefficients, and Toeplitz-determinant spin
//! correlators.
//!
//! The deformed state e^{(alpha/2) sum_j X_j} |psi_c⟩ stays Gaussian in the
//! Jordan-Wigner fermions, so everything here reduces to one scalar symbol
//! M(theta, alpha) and its Fourier coefficients
//!   H(d) = (1/2pi) ∫ e^{i d theta} M(theta, alpha) dtheta,
//! real because M(-theta) = conj M(theta). In spin language
//! H(d) = ⟨Z_0 X_1..X_{d-1} Z_d⟩ for d >= 1, H(-d) = ⟨Y_0 X_1..X_{d-1} Y_d⟩,
//! and H(0) = -⟨X⟩.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::lapack;
use crate::numeric::{dilog, integrate_gl, tanh_sinh};
use crate::state::Statevector;

/// Absolute tolerance for the effective-coefficient quadratures.
const QUAD_TOL: f64 = 1e-10;
/// Dense reconstruction cap for `QuenchModes::statevector`.
const MODE_STATE_SITE_CAP: usize = 16;
/// Eigenvalues of a correlation matrix may leak past [-1, 1] by at most this.
const EIGEN_LEAK: f64 = 1e-8;

/// One paired momentum mode of the deformed chain, normalized so that
/// u^2 + v^2 = 1. Momenta are the positive half-integers of the even-parity
/// sector; the negative-k partner has the same u and opposite v.
#[derive(Clone, Copy, Debug)]
pub struct ModePair {
    pub k: f64,
    pub u: f64,
    pub v: f64,
}

/// Paired-mode amplitudes of e^{(alpha/2) sum X} |psi_c⟩ over the
/// half-integer momentum grid.
#[derive(Clone, Debug)]
pub struct QuenchModes {
    pub l: usize,
    pub alpha: f64,
    modes: Vec<ModePair>,
}

/// Imaginary-time evolution of the paired-mode amplitudes: u picks up
/// e^{-alpha}, v picks up e^{+alpha} relative to the critical ground state.
pub fn quench_modes(l: usize, alpha: f64) -> Result<QuenchModes> {
    if l < 2 || l % 2 != 0 {
        return Err(Error::InvalidParameter(format!(
            "quench modes need an even chain length >= 2, got {l}"
        )));
    }
    if !alpha.is_finite() {
        return Err(Error::InvalidParameter("alpha must be finite".into()));
    }
    let mut modes = Vec::with_capacity(l / 2);
    for k2 in (1..l).step_by(2) {
        let k = k2 as f64 / 2.0;
        let pk = std::f64::consts::PI * k / l as f64;
        let u = -0.5 * (-alpha).exp() * (2.0 - 2.0 * pk.sin().abs()).sqrt();
        let v = alpha.exp() * (2.0 * pk).sin()
            / (2.0 * ((1.0 - (2.0 * pk).cos()) * (1.0 - pk.sin().abs())).sqrt());
        let norm = u.hypot(v);
        modes.push(ModePair {
            k,
            u: u / norm,
            v: v / norm,
        });
    }
    Ok(QuenchModes { l, alpha, modes })
}

impl QuenchModes {
    pub fn pairs(&self) -> &[ModePair] {
        &self.modes
    }

    /// Dense 2^L reconstruction: fills each (k, -k) pair on top of the
    /// all-spins-minus-x fermion vacuum using string-dressed creation
    /// operators.
    pub fn statevector(&self) -> Result<Statevector> {
        if self.l > MODE_STATE_SITE_CAP {
            return Err(Error::DenseCap {
                sites: self.l,
                cap: MODE_STATE_SITE_CAP,
            });
        }
        let dim = 1usize << self.l;
        let zero = Complex64::new(0.0, 0.0);
        let mut amps = vec![zero; dim];
        let scale = (dim as f64).sqrt().recip();
        for (idx, a) in amps.iter_mut().enumerate() {
            *a = Complex64::new(
                if (idx.count_ones() & 1) == 1 { -scale } else { scale },
                0.0,
            );
        }
        let mut tmp = vec![zero; dim];
        let mut tmp2 = vec![zero; dim];
        for m in &self.modes {
            let theta = 2.0 * std::f64::consts::PI * m.k / self.l as f64;
            tmp.iter_mut().for_each(|a| *a = zero);
            tmp2.iter_mut().for_each(|a| *a = zero);
            for j in 0..self.l {
                let phase = Complex64::from_polar(1.0, -theta * j as f64);
                creation_into(&amps, self.l, j, phase, &mut tmp);
            }
            for j in 0..self.l {
                let phase = Complex64::from_polar(1.0, theta * j as f64);
                creation_into(&tmp, self.l, j, phase, &mut tmp2);
            }
            // the pair amplitude carries an explicit i relative to the real
            // (u, v); this is what makes the position-space state real
            let vl = Complex64::new(0.0, m.v / self.l as f64);
            for (a, t) in amps.iter_mut().zip(&tmp2) {
                *a = m.u * *a + vl * t;
            }
        }
        Statevector::from_amplitudes(amps)
    }
}

/// out += phase * c^dag_j |in⟩ with c^dag_j = (prod_{k<j} X_k)(Z_j - iY_j)/2.
/// Occupation lives in the x basis: the on-site factor sends |-x⟩ to |+x⟩
/// and kills |+x⟩; the string then flips every lower site.
fn creation_into(
    input: &[Complex64],
    l: usize,
    j: usize,
    phase: Complex64,
    out: &mut [Complex64],
) {
    let bit = 1usize << j;
    let low = bit - 1;
    let dim = 1usize << l;
    let mut idx = 0usize;
    while idx < dim {
        if idx & bit == 0 {
            let t = phase * 0.5 * (input[idx] - input[idx | bit]);
            out[idx ^ low] += t;
            out[(idx | bit) ^ low] += t;
        }
        idx += 1;
    }
}

/// The scalar symbol M(theta, alpha) whose Fourier coefficients generate
/// every correlator here. Unimodular for all theta != 0, with a jump across
/// theta = 0 between -tanh(2a) -+ i sech(2a).
pub fn symbol(theta: f64, alpha: f64) -> Complex64 {
    let s = (theta / 2.0).sin().abs();
    let ep = (2.0 * alpha).exp();
    let em = (-2.0 * alpha).exp();
    let den = em * (1.0 - s) + ep * (1.0 + s);
    Complex64::new(
        (em * (1.0 - s) - ep * (1.0 + s)) / den,
        -2.0 * theta.signum() * (theta / 2.0).cos() / den,
    )
}

/// Thermodynamic Fourier coefficient H(d) of the symbol. The integrand is
/// analytic on (0, pi], so panelled Gauss-Legendre with enough panels to
/// resolve the e^{i d theta} oscillation converges to full precision.
pub fn cross_correlation(d: i64, alpha: f64) -> f64 {
    let panels = 8 + d.unsigned_abs() as usize;
    let df = d as f64;
    integrate_gl(
        |theta| {
            let m = symbol(theta, alpha);
            (df * theta).cos() * m.re - (df * theta).sin() * m.im
        },
        0.0,
        std::f64::consts::PI,
        panels,
        16,
    ) / std::f64::consts::PI
}

/// Finite-L Fourier coefficient over the half-integer momentum grid.
pub fn cross_correlation_finite(l: usize, d: i64, alpha: f64) -> f64 {
    let df = d as f64;
    let mut sum = 0.0;
    for k2 in (1..l as i64).step_by(2) {
        let theta = std::f64::consts::PI * k2 as f64 / l as f64;
        let m = symbol(theta, alpha);
        sum += (df * theta).cos() * m.re - (df * theta).sin() * m.im;
    }
    2.0 * sum / l as f64
}

/// Where a correlation matrix's Fourier coefficients come from.
#[derive(Clone, Copy, Debug)]
pub enum CorrelationSource {
    Thermodynamic { alpha: f64 },
    Finite { l: usize, alpha: f64 },
}

impl CorrelationSource {
    fn coefficient(&self, d: i64) -> f64 {
        match *self {
            CorrelationSource::Thermodynamic { alpha } => cross_correlation(d, alpha),
            CorrelationSource::Finite { l, alpha } => cross_correlation_finite(l, d, alpha),
        }
    }
}

/// Majorana two-point matrix of a contiguous window of ell sites, real
/// symmetric 2ell x 2ell with rows/columns interleaved (A_0, B_0, A_1, ...).
/// The AA and BB blocks vanish identically for this family of states.
#[derive(Clone, Debug)]
pub struct CorrelationMatrix {
    pub ell: usize,
    data: Vec<f64>,
}

pub fn correlation_matrix(source: CorrelationSource, ell: usize) -> Result<CorrelationMatrix> {
    if ell == 0 {
        return Err(Error::InvalidParameter(
            "correlation window must contain at least one site".into(),
        ));
    }
    if let CorrelationSource::Finite { l, .. } = source {
        if ell > l {
            return Err(Error::DimensionMismatch(format!(
                "window of {ell} sites exceeds the chain length {l}"
            )));
        }
    }
    let span = ell as i64;
    let mut h = Vec::with_capacity(2 * ell - 1);
    for d in (1 - span)..span {
        h.push(source.coefficient(d));
    }
    let at = |d: i64| h[(d + span - 1) as usize];
    let n = 2 * ell;
    let mut data = vec![0.0; n * n];
    for row_site in 0..ell {
        for col_site in 0..ell {
            let d = col_site as i64 - row_site as i64;
            // ⟨A_n B_m⟩ = H(m - n) = ⟨B_m A_n⟩; the matrix is symmetric
            data[(2 * row_site) * n + (2 * col_site + 1)] = at(d);
            data[(2 * row_site + 1) * n + (2 * col_site)] = at(-d);
        }
    }
    Ok(CorrelationMatrix { ell, data })
}

impl CorrelationMatrix {
    pub fn entry(&self, r: usize, c: usize) -> f64 {
        self.data[r * 2 * self.ell + c]
    }

    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        let mut a = self.data.clone();
        lapack::sym_eigenvalues(&mut a, 2 * self.ell)
    }
}

/// Renyi entropies S^(n) of the window from the correlation matrix spectrum.
/// The spectrum comes in -+ pairs; each pair is one fermionic mode with
/// occupation bias lambda, so the product runs over the ell non-negative
/// eigenvalues only. n = 1 is the von Neumann limit.
pub fn entropies_from_correlation(v: &CorrelationMatrix, ns: &[f64]) -> Result<Vec<f64>> {
    let mut evals = v.eigenvalues()?;
    for lam in &evals {
        if lam.abs() > 1.0 + EIGEN_LEAK {
            return Err(Error::NotConverged {
                what: "correlation matrix spectrum",
                detail: format!("eigenvalue {lam} outside [-1, 1]"),
            });
        }
    }
    evals.sort_by(|a, b| b.partial_cmp(a).unwrap());
    evals.truncate(v.ell);
    let clip = 1.0 - 1e-14;
    let mut out = Vec::with_capacity(ns.len());
    for &n in ns {
        if n <= 0.0 {
            return Err(Error::InvalidParameter(format!(
                "entropy order must be positive, got {n}"
            )));
        }
        let mut total = 0.0;
        for &lam in &evals {
            let lam = lam.clamp(-clip, clip);
            let p = 0.5 * (1.0 + lam);
            let q = 0.5 * (1.0 - lam);
            if (n - 1.0).abs() < 1e-12 {
                total -= p * p.ln() + q * q.ln();
            } else {
                total += (p.powf(n) + q.powf(n)).ln() / (1.0 - n);
            }
        }
        out.push(total);
    }
    Ok(out)
}

/// Coefficient of the (1/6)(1 + 1/n) ln(ell) entanglement growth of the
/// deformed state. n = 1 uses the dilogarithm closed form; other orders use
/// the real integral over lambda in [|tanh 2a|, 1] with both endpoint
/// singularities absorbed by the tanh-sinh substitution. Even in alpha.
pub fn c_eff(n: f64, alpha: f64) -> Result<f64> {
    if n < 0.0 || !n.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "effective coefficient order must be finite and >= 0, got {n}"
        )));
    }
    if (n - 1.0).abs() < 1e-12 {
        return Ok(c_eff1_closed(alpha));
    }
    if n == 0.0 {
        return Ok(0.0);
    }
    let t = (2.0 * alpha).tanh().abs();
    let sech = (2.0 * alpha).cosh().recip();
    let pi = std::f64::consts::PI;
    let val = tanh_sinh(
        |lam: f64, d_lo: f64, d_hi: f64| {
            // d_lo = lam - t, d_hi = 1 - lam, both cancellation-free
            let log_factor =
                0.5 * (d_hi * (1.0 + lam)).ln() - ((d_lo * (lam + t)).sqrt() + sech).ln();
            g_n(n, lam, d_hi) * log_factor
        },
        t,
        1.0,
        QUAD_TOL,
    );
    Ok(12.0 / (pi * pi) * val)
}

/// The weight g_n(lambda) of the coefficient integral, written with
/// p = (1+lambda)/2, q = (1-lambda)/2 as
/// n^2/(2(1-n^2)) (p^{n-1} - q^{n-1})/(p^n + q^n); near n = 1 the difference
/// of powers goes through expm1 to avoid cancellation.
fn g_n(n: f64, lam: f64, one_minus_lam: f64) -> f64 {
    let p = 0.5 * (1.0 + lam);
    let q = 0.5 * one_minus_lam;
    let pref = n * n / (2.0 * (1.0 - n * n));
    let diff = if (n - 1.0).abs() < 0.01 {
        ((n - 1.0) * p.ln()).exp_m1() - ((n - 1.0) * q.ln()).exp_m1()
    } else {
        p.powf(n - 1.0) - q.powf(n - 1.0)
    };
    pref * diff / (p.powf(n) + q.powf(n))
}

/// n -> 1 limit of the coefficient integral in closed form. x = sech(2a).
pub fn c_eff1_closed(alpha: f64) -> f64 {
    let x = (2.0 * alpha).cosh().recip();
    let pi = std::f64::consts::PI;
    let xlnx = |t: f64| if t > 0.0 { t * t.ln() } else { 0.0 };
    let bracket = (x + 1.0) * dilog(-x) + (1.0 - x) * dilog(x)
        + x.ln() * (xlnx(1.0 - x) + xlnx(1.0 + x));
    -3.0 / (pi * pi) * bracket
}

/// Scaling dimensions (Delta_Z, Delta_Y) of the axis-z and axis-y two-point
/// functions, from the jump of the symbol across theta = 0.
pub fn fisher_hartwig_exponents(alpha: f64) -> (f64, f64) {
    let pi = std::f64::consts::PI;
    let a = (2.0 * alpha).exp().atan();
    (2.0 * a * a / (pi * pi), 2.0 * (a - pi) * (a - pi) / (pi * pi))
}

/// Two-point functions of the deformed state at the given separations.
#[derive(Clone, Debug)]
pub struct CorrelatorTable {
    pub separations: Vec<usize>,
    /// connected ⟨X_0 X_d⟩
    pub xx_connected: Vec<f64>,
    pub yy: Vec<f64>,
    pub zz: Vec<f64>,
    pub x_mean: f64,
}

/// Thermodynamic-limit correlator table; separations are capped only by the
/// cubic determinant cost.
pub fn marginal_correlators(alpha: f64, separations: &[usize]) -> Result<CorrelatorTable> {
    correlators_from(CorrelationSource::Thermodynamic { alpha }, separations)
}

/// Finite-L correlator table over the even-parity momentum grid; exact for
/// the deformed periodic chain, which makes it directly comparable to dense
/// diagonalization.
pub fn marginal_correlators_finite(
    l: usize,
    alpha: f64,
    separations: &[usize],
) -> Result<CorrelatorTable> {
    correlators_from(CorrelationSource::Finite { l, alpha }, separations)
}

fn correlators_from(source: CorrelationSource, separations: &[usize]) -> Result<CorrelatorTable> {
    let max_d = separations.iter().copied().max().unwrap_or(0) as i64;
    let mut h = Vec::with_capacity(2 * max_d as usize + 3);
    for d in -(max_d + 1)..=(max_d + 1) {
        h.push(source.coefficient(d));
    }
    let at = |d: i64| h[(d + max_d + 1) as usize];
    let mut xx = Vec::with_capacity(separations.len());
    let mut yy = Vec::with_capacity(separations.len());
    let mut zz = Vec::with_capacity(separations.len());
    for &d in separations {
        if d == 0 {
            return Err(Error::InvalidParameter(
                "separation zero has no two-point function".into(),
            ));
        }
        let di = d as i64;
        xx.push(-at(di) * at(-di));
        zz.push(toeplitz_det(&at, d, 1)?);
        yy.push(toeplitz_det(&at, d, -1)?);
    }
    Ok(CorrelatorTable {
        separations: separations.to_vec(),
        xx_connected: xx,
        yy,
        zz,
        x_mean: -at(0),
    })
}

/// det of the d x d Toeplitz matrix with entries H(r - c + shift), via
/// partially pivoted elimination with log-magnitude accumulation.
fn toeplitz_det(at: &dyn Fn(i64) -> f64, d: usize, shift: i64) -> Result<f64> {
    let mut m = vec![0.0; d * d];
    for r in 0..d {
        for c in 0..d {
            m[r * d + c] = at(r as i64 - c as i64 + shift);
        }
    }
    let mut log_abs = 0.0;
    let mut sign = 1.0;
    let mut min_piv = f64::INFINITY;
    let mut max_piv = 0.0f64;
    for col in 0..d {
        let mut piv = col;
        for r in col + 1..d {
            if m[r * d + col].abs() > m[piv * d + col].abs() {
                piv = r;
            }
        }
        let p = m[piv * d + col];
        if p.abs() < 1e-300 {
            return Err(Error::NotConverged {
                what: "Toeplitz determinant",
                detail: format!(
                    "singular pivot at column {col}; condition estimate {:.3e}",
                    max_piv / p.abs().max(f64::MIN_POSITIVE)
                ),
            });
        }
        if piv != col {
            for c in 0..d {
                m.swap(col * d + c, piv * d + c);
            }
            sign = -sign;
        }
        log_abs += p.abs().ln();
        sign *= p.signum();
        min_piv = min_piv.min(p.abs());
        max_piv = max_piv.max(p.abs());
        for r in col + 1..d {
            let f = m[r * d + col] / p;
            if f == 0.0 {
                continue;
            }
            for c in col..d {
                m[r * d + c] -= f * m[col * d + c];
            }
        }
    }
    Ok(sign * log_abs.exp())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fit::{fit_log_coefficient, fit_power_law};
    use crate::ising::critical_ground_state;
    use crate::protocol::{deform, DeformTerm};
    use crate::state::UnitVector3;

    const PI: f64 = std::f64::consts::PI;

    fn fidelity(a: &Statevector, b: &Statevector) -> f64 {
        a.amps()
            .iter()
            .zip(b.amps())
            .map(|(x, y)| x.conj() * y)
            .sum::<Complex64>()
            .norm()
    }

    #[test]
    fn mode_values_match_independent_form() {
        // k/L = 1/4 sits in the L = 2 grid; also sweep an L = 8 chain
        for (l, alpha) in [(2usize, 0.4f64), (8, 0.6), (8, 0.0), (8, -0.9)] {
            let modes = quench_modes(l, alpha).unwrap();
            for m in modes.pairs() {
                let s = (PI * m.k / l as f64).sin();
                let theta = 2.0 * PI * m.k / l as f64;
                let u_alt = -((-2.0 * alpha).exp() * (1.0 - s) / 2.0).sqrt();
                let v_alt = alpha.exp() * (theta / 2.0).cos() / (2.0 * (1.0 - s)).sqrt();
                let norm = u_alt.hypot(v_alt);
                assert!((m.u - u_alt / norm).abs() < 1e-13, "u at k={}", m.k);
                assert!((m.v - v_alt / norm).abs() < 1e-13, "v at k={}", m.k);
            }
        }
    }

    #[test]
    fn symbol_is_unimodular_and_matches_modes() {
        for alpha in [0.0, 0.3, -0.8, 1.7] {
            for i in 1..40 {
                let theta = PI * i as f64 / 40.0;
                assert!((symbol(theta, alpha).norm() - 1.0).abs() < 1e-12);
                assert!((symbol(-theta, alpha) - symbol(theta, alpha).conj()).norm() < 1e-15);
            }
            // the symbol is the (B, A) entry of the mode-space correlator
            let modes = quench_modes(40, alpha).unwrap();
            for m in modes.pairs() {
                for (sgn, v) in [(1.0, m.v), (-1.0, -m.v)] {
                    let theta = sgn * 2.0 * PI * m.k / 40.0;
                    let g = Complex64::new(m.u * m.u - v * v, 2.0 * m.u * v)
                        / (m.u * m.u + v * v);
                    assert!((symbol(theta, alpha) - g).norm() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn pristine_coefficients_hit_the_closed_form() {
        // alpha = 0: H(d) = 1/(pi (d - 1/2)) exactly
        for d in -6i64..=6 {
            let exact = 1.0 / (PI * (d as f64 - 0.5));
            assert!((cross_correlation(d, 0.0) - exact).abs() < 1e-12, "d = {d}");
        }
        assert!((cross_correlation(0, 0.0) + 2.0 / PI).abs() < 1e-12);
        assert!((cross_correlation(1, 0.0) - 2.0 / PI).abs() < 1e-12);
    }

    #[test]
    fn finite_momentum_sums_converge_to_the_thermodynamic_matrix() {
        // the discontinuity of the symbol at theta = 0 limits the midpoint
        // momentum sum to O(d / L^2) accuracy, so a 40-site window needs
        // L in the thousands before every entry settles to 1e-6
        let worst_dev = |l: usize| {
            let a = correlation_matrix(CorrelationSource::Finite { l, alpha: 0.5 }, 40).unwrap();
            let b = correlation_matrix(CorrelationSource::Thermodynamic { alpha: 0.5 }, 40).unwrap();
            let mut worst = 0.0f64;
            for r in 0..80 {
                for c in 0..80 {
                    worst = worst.max((a.entry(r, c) - b.entry(r, c)).abs());
                }
            }
            worst
        };
        let d400 = worst_dev(400);
        let d1200 = worst_dev(1200);
        assert!(d400 < 2e-4, "L = 400 deviation {d400:.3e}");
        let ratio = d400 / d1200;
        assert!((7.0..11.0).contains(&ratio), "not 1/L^2 convergence: {ratio}");
        assert!(worst_dev(6000) < 1e-6);
    }

    #[test]
    fn mode_state_matches_deformed_ground_state() {
        let psi_c = critical_ground_state(12, true).unwrap();
        for alpha in [0.0, 0.7] {
            let modes = quench_modes(12, alpha).unwrap();
            let from_modes = modes.statevector().unwrap();
            let reference = if alpha == 0.0 {
                psi_c.clone()
            } else {
                deform(&psi_c, &[DeformTerm::uniform(alpha, UnitVector3::x_axis())]).unwrap()
            };
            let f = fidelity(&from_modes, &reference);
            assert!(f > 1.0 - 1e-8, "alpha = {alpha}: fidelity {f}");
        }
    }

    #[test]
    fn finite_engine_agrees_with_dense_diagonalization() {
        let l = 12;
        let psi_c = critical_ground_state(l, true).unwrap();
        let x = UnitVector3::x_axis();
        let y = UnitVector3::y_axis();
        let z = UnitVector3::z_axis();
        for alpha in [0.3, 0.8] {
            let psi = deform(&psi_c, &[DeformTerm::uniform(alpha, x)]).unwrap();
            // string form of the Fourier coefficients
            for d in 1..=5usize {
                let mut zops = vec![(0, z)];
                let mut yops = vec![(0, y)];
                for j in 1..d {
                    zops.push((j, x));
                    yops.push((j, x));
                }
                zops.push((d, z));
                yops.push((d, y));
                let h_pos = psi.expectation_pauli_string(&zops).re;
                let h_neg = psi.expectation_pauli_string(&yops).re;
                assert!((cross_correlation_finite(l, d as i64, alpha) - h_pos).abs() < 1e-8);
                assert!((cross_correlation_finite(l, -(d as i64), alpha) - h_neg).abs() < 1e-8);
            }
            let mean_x = psi.expectation_pauli_string(&[(0, x)]).re;
            assert!((cross_correlation_finite(l, 0, alpha) + mean_x).abs() < 1e-8);
            // AA and BB Majorana contractions vanish
            assert!(psi.expectation_pauli_string(&[(0, y), (1, x), (2, z)]).norm() < 1e-10);
            assert!(psi.expectation_pauli_string(&[(0, z), (1, x), (2, y)]).norm() < 1e-10);
            // assembled spin-spin tables
            let seps: Vec<usize> = (1..=5).collect();
            let table = marginal_correlators_finite(l, alpha, &seps).unwrap();
            for (i, &d) in seps.iter().enumerate() {
                let zz = psi.expectation_pauli_string(&[(0, z), (d, z)]).re;
                let yy = psi.expectation_pauli_string(&[(0, y), (d, y)]).re;
                let xx = psi.expectation_pauli_string(&[(0, x), (d, x)]).re;
                assert!((table.zz[i] - zz).abs() < 1e-8, "zz at d = {d}");
                assert!((table.yy[i] - yy).abs() < 1e-8, "yy at d = {d}");
                assert!(
                    (table.xx_connected[i] - (xx - mean_x * mean_x)).abs() < 1e-8,
                    "xx at d = {d}"
                );
            }
            // half-chain von Neumann entropy
            let v = correlation_matrix(CorrelationSource::Finite { l, alpha }, l / 2).unwrap();
            let s_gauss = entropies_from_correlation(&v, &[1.0]).unwrap()[0];
            let region: Vec<usize> = (0..l / 2).collect();
            let s_ed = psi.renyi_entropy(&region, 1.0).unwrap();
            assert!((s_gauss - s_ed).abs() < 1e-8, "entropy at alpha = {alpha}");
        }
    }

    #[test]
    fn entropy_log_growth_matches_the_effective_coefficient() {
        let ells = [50usize, 75, 110, 165, 245, 300];
        for alpha in [0.0, 1.0] {
            let mut svals = Vec::new();
            for &ell in &ells {
                let v =
                    correlation_matrix(CorrelationSource::Thermodynamic { alpha }, ell).unwrap();
                svals.push(entropies_from_correlation(&v, &[1.0]).unwrap()[0]);
            }
            let xs: Vec<f64> = ells.iter().map(|&e| e as f64).collect();
            let (slope, _, _) = fit_log_coefficient(&xs, &svals).unwrap();
            let c_fit = 3.0 * slope;
            let c_expected = c_eff1_closed(alpha);
            assert!(
                (c_fit - c_expected).abs() < 0.02 * c_expected.max(0.1),
                "alpha = {alpha}: fitted {c_fit}, expected {c_expected}"
            );
        }
        // Renyi tower: nonnegative and decreasing in the order
        let v = correlation_matrix(CorrelationSource::Thermodynamic { alpha: 1.0 }, 100).unwrap();
        let s = entropies_from_correlation(&v, &[1.0, 2.0, 3.0, 5.0]).unwrap();
        for w in s.windows(2) {
            assert!(w[1] >= 0.0 && w[0] >= w[1] - 1e-12);
        }
    }

    #[test]
    fn effective_coefficient_anchors() {
        for n in [0.5, 1.0, 2.0, 3.0, 5.0] {
            let c = c_eff(n, 0.0).unwrap();
            assert!((c - 0.5).abs() < 1e-8, "n = {n}: {c}");
        }
        // closed form against the n -> 1 limit of the integral route
        let limit = 0.5 * (c_eff(1.0 + 1e-4, 0.5).unwrap() + c_eff(1.0 - 1e-4, 0.5).unwrap());
        assert!((c_eff1_closed(0.5) - limit).abs() < 1e-6);
        // decays toward zero and is even in alpha
        let mut prev = 0.5;
        for alpha in [0.5, 1.0, 2.0, 3.0] {
            let c = c_eff1_closed(alpha);
            assert!(c < prev && c > 0.0);
            prev = c;
        }
        assert!(c_eff1_closed(4.0) < 0.01);
        assert!((c_eff(2.0, 0.5).unwrap() - c_eff(2.0, -0.5).unwrap()).abs() < 1e-10);
    }

    #[test]
    fn fisher_hartwig_anchor_values() {
        let (dz0, dy0) = fisher_hartwig_exponents(0.0);
        assert!((dz0 - 0.125).abs() < 1e-14);
        assert!((dy0 - 1.125).abs() < 1e-14);
        let (dzi, dyi) = fisher_hartwig_exponents(20.0);
        assert!((dzi - 0.5).abs() < 1e-6);
        assert!((dyi - 0.5).abs() < 1e-6);
        let mut prev = dz0;
        for i in 1..=20 {
            let (dz, _) = fisher_hartwig_exponents(0.2 * i as f64);
            assert!(dz > prev);
            prev = dz;
        }
    }

    #[test]
    fn pristine_correlator_anchors() {
        let t = marginal_correlators(0.0, &[1, 2]).unwrap();
        assert!((t.x_mean - 2.0 / PI).abs() < 1e-10);
        assert!((t.zz[0] - 2.0 / PI).abs() < 1e-10);
        assert!((t.yy[0] + 2.0 / (3.0 * PI)).abs() < 1e-10);
        // 2x2 determinant by hand: H(1)^2 - H(0) H(2)
        let expected = (2.0 / PI) * (2.0 / PI) + (2.0 / PI) * (2.0 / (3.0 * PI));
        assert!((t.zz[1] - expected).abs() < 1e-10);
        let xc = -cross_correlation(1, 0.0) * cross_correlation(-1, 0.0);
        assert!((t.xx_connected[0] - xc).abs() < 1e-14);
    }

    #[test]
    fn correlator_decay_matches_the_predicted_exponents() {
        let alpha = 0.5;
        let seps: Vec<usize> = (0..12).map(|i| 40 + 14 * i).collect();
        let xs: Vec<f64> = seps.iter().map(|&d| d as f64).collect();
        let table = marginal_correlators(alpha, &seps).unwrap();
        let (dz, dy) = fisher_hartwig_exponents(alpha);
        let fz = fit_power_law(&xs, &table.zz).unwrap();
        assert!(
            (fz.exponent + 2.0 * dz).abs() < 0.05 * 2.0 * dz,
            "zz exponent {} vs {}",
            fz.exponent,
            -2.0 * dz
        );
        let fy = fit_power_law(&xs, &table.yy).unwrap();
        assert!(
            (fy.exponent + 2.0 * dy).abs() < 0.05 * 2.0 * dy,
            "yy exponent {} vs {}",
            fy.exponent,
            -2.0 * dy
        );
        let fx = fit_power_law(&xs, &table.xx_connected).unwrap();
        assert!((fx.exponent + 2.0).abs() < 0.04, "xx exponent {}", fx.exponent);
        let amp = (2.0 * alpha).cosh().powi(-2) / (PI * PI);
        assert!(
            (fx.amplitude.abs() - amp).abs() < 0.05 * amp,
            "xx amplitude {} vs {}",
            fx.amplitude,
            amp
        );
    }

    #[test]
    fn correlation_spectrum_stays_in_the_unit_interval() {
        let v = correlation_matrix(CorrelationSource::Thermodynamic { alpha: 0.8 }, 30).unwrap();
        let evals = v.eigenvalues().unwrap();
        assert_eq!(evals.len(), 60);
        for lam in &evals {
            assert!(lam.abs() <= 1.0 + 1e-10);
        }
        // spectrum is symmetric under lambda -> -lambda
        let mut sorted = evals.clone();
        sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
        for i in 0..30 {
            assert!((sorted[i] + sorted[59 - i]).abs() < 1e-9);
        }
    }
}
