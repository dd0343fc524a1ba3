//! Strong-deformation expansion tools built around strange correlators:
//! flip-amplitude tables, truncated expansion states, perturbative Renyi-2
//! entropy, interpolated boundary sums, and parent Hamiltonians.

use crate::error::{Error, Result};
use crate::fit;
use crate::ising;
use crate::state::{Statevector, UnitVector3};
use num_complex::Complex64;

const C0: Complex64 = Complex64::new(0.0, 0.0);
const C1: Complex64 = Complex64::new(1.0, 0.0);

/// Outcome amplitudes below this magnitude make the flip ratios meaningless.
const OVERLAP_FLOOR: f64 = 1e-12;
/// Imaginary parts above this reject the real-table operations.
const IMAG_TOL: f64 = 1e-10;
/// Dense parent-operator applications are capped at this register size.
const PARENT_CAP: usize = 12;
/// Connected tables decaying slower than this exponent sit at the validity
/// edge of the expansion; exports flag them instead of refusing.
const CONTROLLED_DECAY: f64 = 1.5;

/// One- and two-flip overlap ratios for a measured product configuration
/// against a bulk wavefunction, with the connected combination V.
#[derive(Clone, Debug)]
pub struct StrangeCorrelatorTable {
    axis: UnitVector3,
    outcome: Vec<i8>,
    one: Vec<Complex64>,
    // full l x l storage, symmetric, diagonal zeroed and excluded from the API
    two: Vec<Complex64>,
}

impl StrangeCorrelatorTable {
    pub fn sites(&self) -> usize {
        self.one.len()
    }

    pub fn axis(&self) -> UnitVector3 {
        self.axis
    }

    pub fn outcome(&self) -> &[i8] {
        &self.outcome
    }

    /// Single-flip ratio q(j).
    pub fn q1(&self, j: usize) -> Complex64 {
        self.one[j]
    }

    /// Double-flip ratio q(j,k); the diagonal is undefined.
    pub fn q2(&self, j: usize, k: usize) -> Complex64 {
        assert_ne!(j, k, "two-flip table excludes the diagonal");
        self.two[j * self.sites() + k]
    }

    /// Connected combination V(j,k) = q(j,k) - q(j)q(k).
    pub fn v(&self, j: usize, k: usize) -> Complex64 {
        self.q2(j, k) - self.one[j] * self.one[k]
    }

    /// Real q and V (row-major, zero diagonal). Complex tables fall outside
    /// the documented gauge and are rejected with the offending magnitude.
    pub fn real_parts(&self) -> Result<(Vec<f64>, Vec<f64>)> {
        let l = self.sites();
        let mut worst: f64 = 0.0;
        for c in self.one.iter().chain(&self.two) {
            worst = worst.max(c.im.abs());
        }
        if worst > IMAG_TOL {
            return Err(Error::InvalidParameter(format!(
                "strange correlators carry imaginary parts up to {worst:.3e}; \
                 the real-table operations only cover the documented gauge"
            )));
        }
        let q: Vec<f64> = self.one.iter().map(|c| c.re).collect();
        let mut v = vec![0.0; l * l];
        for j in 0..l {
            for k in 0..l {
                if j != k {
                    v[j * l + k] = self.v(j, k).re;
                }
            }
        }
        Ok((q, v))
    }

    /// Fitted exponent of |V| against the periodic chord distance, averaged
    /// over translations. None when fewer than three separations exist.
    pub fn decay_exponent(&self) -> Option<f64> {
        let l = self.sites();
        let mut xs = Vec::new();
        let mut ys = Vec::new();
        for d in 2..=l / 2 {
            let mut mean = 0.0;
            for j in 0..l {
                mean += self.v(j, (j + d) % l).norm();
            }
            mean /= l as f64;
            if mean > 1e-300 {
                xs.push(chord(l, d));
                ys.push(mean.ln());
            }
        }
        if xs.len() < 3 {
            return None;
        }
        let (slope, _, _) = fit::fit_log_coefficient(&xs, &ys).ok()?;
        Some(-slope)
    }

    /// True when the fitted |V| decay is too slow for the expansion to be
    /// trusted; slow decay is reported, never refused.
    pub fn is_uncontrolled(&self) -> bool {
        matches!(self.decay_exponent(), Some(e) if e <= CONTROLLED_DECAY)
    }

    /// CSV export with the outcome and axis recorded as comment headers.
    pub fn csv(&self) -> String {
        let l = self.sites();
        let mut out = String::new();
        let a = self.axis;
        out.push_str(&format!("# axis = {:+.6} {:+.6} {:+.6}\n", a.x, a.y, a.z));
        let signs: String = self
            .outcome
            .iter()
            .map(|&s| if s > 0 { '+' } else { '-' })
            .collect();
        out.push_str(&format!("# outcome = {signs}\n"));
        if let Some(e) = self.decay_exponent() {
            out.push_str(&format!("# v_decay_exponent = {e:.4}\n"));
            let regime = if e <= CONTROLLED_DECAY {
                "uncontrolled (slow connected decay)"
            } else {
                "controlled"
            };
            out.push_str(&format!("# expansion_regime = {regime}\n"));
        }
        out.push_str("site,q_re,q_im\n");
        for (j, q) in self.one.iter().enumerate() {
            out.push_str(&format!("{j},{:.12e},{:.12e}\n", q.re, q.im));
        }
        out.push_str("j,k,q2_re,q2_im,v_re,v_im\n");
        for j in 0..l {
            for k in j + 1..l {
                let (q2, v) = (self.q2(j, k), self.v(j, k));
                out.push_str(&format!(
                    "{j},{k},{:.12e},{:.12e},{:.12e},{:.12e}\n",
                    q2.re, q2.im, v.re, v.im
                ));
            }
        }
        out
    }
}

/// Periodic chord distance for separation d on l sites.
fn chord(l: usize, d: usize) -> f64 {
    let lf = l as f64;
    lf / std::f64::consts::PI * (std::f64::consts::PI * d as f64 / lf).sin()
}

fn validate_signs(signs: &[i8], l: usize, what: &str) -> Result<()> {
    if signs.len() != l {
        return Err(Error::DimensionMismatch(format!(
            "{what} has {} entries for {l} sites",
            signs.len()
        )));
    }
    if signs.iter().any(|s| s.abs() != 1) {
        return Err(Error::InvalidParameter(format!(
            "{what} entries must be +1 or -1"
        )));
    }
    Ok(())
}

/// Ratios of overlaps between the measured configuration and the same
/// configuration with flip operators applied at one or two sites. The overall
/// phase of psi_a drops out of every ratio; the per-flip gauge phase of the
/// fixed eigenbasis is divided off so the ratios match the operator insertion.
pub fn strange_correlators(
    psi_a: &Statevector,
    outcome: &[i8],
    axis: UnitVector3,
) -> Result<StrangeCorrelatorTable> {
    let l = psi_a.sites();
    validate_signs(outcome, l, "outcome string")?;
    let mut rot = psi_a.clone();
    for j in 0..l {
        let vp = axis.eigenvector(1);
        let vm = axis.eigenvector(-1);
        // rows are conjugated eigenvectors: bit j set = minus component
        let m = [
            [vp[0].conj(), vp[1].conj()],
            [vm[0].conj(), vm[1].conj()],
        ];
        rot.apply_one_site(j, &m);
    }
    let amps = rot.amps();
    let mut base = 0usize;
    for (j, &s) in outcome.iter().enumerate() {
        if s < 0 {
            base |= 1 << j;
        }
    }
    let denom = amps[base];
    if denom.norm() <= OVERLAP_FLOOR {
        return Err(Error::InvalidParameter(format!(
            "outcome overlap magnitude {:.3e} is below {OVERLAP_FLOOR:.0e}",
            denom.norm()
        )));
    }
    // bra-side flip: <a| O = (O |a>)^dag contributes the conjugated phase
    let phases: Vec<Complex64> = outcome
        .iter()
        .map(|&s| axis.flip_phase(s).conj())
        .collect();
    let mut one = vec![C0; l];
    let mut two = vec![C0; l * l];
    for j in 0..l {
        one[j] = phases[j] * amps[base ^ (1 << j)] / denom;
    }
    for j in 0..l {
        for k in j + 1..l {
            let q = phases[j] * phases[k] * amps[base ^ (1 << j) ^ (1 << k)] / denom;
            two[j * l + k] = q;
            two[k * l + j] = q;
        }
    }
    Ok(StrangeCorrelatorTable {
        axis,
        outcome: outcome.to_vec(),
        one,
        two,
    })
}

/// Truncation of the post-measurement state on the receiving register in
/// powers of the flip strength u: the all-plus product along the axis, plus
/// i u q(j) single flips, plus (i u)^2 q(j,k) double flips at order 2.
pub fn large_alpha_state(
    psi_a: &Statevector,
    outcome: &[i8],
    axis: UnitVector3,
    u: f64,
    order: u32,
) -> Result<Statevector> {
    if order == 0 || order > 2 {
        return Err(Error::InvalidParameter(format!(
            "expansion order must be 1 or 2, got {order}"
        )));
    }
    let table = strange_correlators(psi_a, outcome, axis)?;
    let l = table.sites();
    let iu = Complex64::new(0.0, u);
    // receiver initialized all-plus; each ket-side flip picks up the gauge
    // phase of the plus eigenstate
    let bp = axis.flip_phase(1);
    let mut amps = vec![C0; 1 << l];
    amps[0] = C1;
    for j in 0..l {
        amps[1 << j] = iu * table.q1(j) * bp;
    }
    if order == 2 {
        for j in 0..l {
            for k in j + 1..l {
                amps[(1 << j) | (1 << k)] = iu * iu * table.q2(j, k) * bp * bp;
            }
        }
    }
    let mut psi = Statevector::from_amplitudes(amps)?;
    rotate_from_basis(&mut psi, axis);
    psi.set_log_norm(0.0);
    Ok(psi)
}

/// Applies the unitary mapping axis-eigenbasis indices to the computational
/// basis, in place.
fn rotate_from_basis(psi: &mut Statevector, axis: UnitVector3) {
    let vp = axis.eigenvector(1);
    let vm = axis.eigenvector(-1);
    let m = [[vp[0], vm[0]], [vp[1], vm[1]]];
    for j in 0..psi.sites() {
        psi.apply_one_site(j, &m);
    }
}

/// Gaussian resummation of the expansion: single-site unitaries generated by
/// i u q(j) acting on the pair-weight factor exp(-(u^2/2) H') applied to the
/// all-plus product, where H' couples flips at j and k with strength 2 V(j,k).
/// Matches the truncated expansion through the two-flip sector.
pub fn gaussian_form_state(table: &StrangeCorrelatorTable, u: f64) -> Result<Statevector> {
    let ctx = ParentContext::new(table, &vec![1i8; table.sites()], u)?;
    let l = table.sites();
    let product = Statevector::product_state(&vec![(table.axis(), 1i8); l]);
    let mut amps = product.amps().to_vec();
    // both factors are diagonal in the flip-axis eigenbasis
    ctx.diagonal_pass(&mut amps, |i| {
        Complex64::from_polar((-0.5 * u * u * ctx.pair[i]).exp(), u * ctx.lin[i])
    });
    Statevector::from_amplitudes(amps)
}

/// Operator flavor for [`parent_hamiltonian_apply`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ParentVariant {
    /// Sum of conjugated-projector squares; annihilates the Gaussian form.
    Exact,
    /// Conjugated Zeeman sum plus the u^2 pair coupling.
    QuadraticApprox,
    /// Similarity transform of the critical chain by the exponential of the
    /// axis magnetization, with strength ln(1/u).
    NonHermitian,
}

/// Shared frames and diagonals for the parent operators.
struct ParentContext {
    l: usize,
    axis: UnitVector3,
    signs: Vec<i8>,
    /// H' eigenvalue per flip-axis-basis index: 2 sum_{j<k} V x_j x_k.
    pair: Vec<f64>,
    /// sum_j q(j) x_j per index.
    lin: Vec<f64>,
    to_perp: [[Complex64; 2]; 2],
    from_perp: [[Complex64; 2]; 2],
}

impl ParentContext {
    fn new(table: &StrangeCorrelatorTable, signs: &[i8], u: f64) -> Result<Self> {
        let l = table.sites();
        if l > PARENT_CAP {
            return Err(Error::DenseCap {
                sites: l,
                cap: PARENT_CAP,
            });
        }
        validate_signs(signs, l, "receiver signs")?;
        if !u.is_finite() || u < 0.0 {
            return Err(Error::InvalidParameter(format!(
                "flip strength must be finite and nonnegative, got {u}"
            )));
        }
        let (q, v) = table.real_parts()?;
        let dim = 1usize << l;
        let mut pair = vec![0.0; dim];
        let mut lin = vec![0.0; dim];
        for idx in 0..dim {
            let x = |j: usize| 1.0 - 2.0 * ((idx >> j) & 1) as f64;
            let mut e = 0.0;
            let mut s = 0.0;
            for j in 0..l {
                s += q[j] * x(j);
                for k in j + 1..l {
                    e += v[j * l + k] * x(j) * x(k);
                }
            }
            pair[idx] = 2.0 * e;
            lin[idx] = s;
        }
        let perp = table.axis().perp();
        let vp = perp.eigenvector(1);
        let vm = perp.eigenvector(-1);
        Ok(Self {
            l,
            axis: table.axis(),
            signs: signs.to_vec(),
            pair,
            lin,
            to_perp: [
                [vp[0].conj(), vp[1].conj()],
                [vm[0].conj(), vm[1].conj()],
            ],
            from_perp: [[vp[0], vm[0]], [vp[1], vm[1]]],
        })
    }

    fn rotate(&self, amps: &mut [Complex64], m: &[[Complex64; 2]; 2]) {
        for j in 0..self.l {
            one_site(amps, j, m);
        }
    }

    /// Rotates into the flip-axis eigenbasis, multiplies by the index
    /// diagonal, rotates back.
    fn diagonal_pass(&self, amps: &mut [Complex64], w: impl Fn(usize) -> Complex64) {
        self.rotate(amps, &self.to_perp);
        for (i, a) in amps.iter_mut().enumerate() {
            *a *= w(i);
        }
        self.rotate(amps, &self.from_perp);
    }

    /// Projector onto the sign-s axis eigenstate at one site.
    fn projector(&self, j: usize) -> [[Complex64; 2]; 2] {
        let o = self.axis.pauli();
        let s = Complex64::new(-0.5 * self.signs[j] as f64, 0.0);
        [
            [0.5 + s * o[0][0], s * o[0][1]],
            [s * o[1][0], 0.5 + s * o[1][1]],
        ]
    }

    /// Conjugated projector at one site; `dagger` swaps the outer weights.
    fn conjugated_projector(
        &self,
        amps: &[Complex64],
        u: f64,
        j: usize,
        dagger: bool,
    ) -> Vec<Complex64> {
        let sign = if dagger { -1.0 } else { 1.0 };
        let mut w = amps.to_vec();
        self.diagonal_pass(&mut w, |i| {
            Complex64::from_polar((sign * 0.5 * u * u * self.pair[i]).exp(), -u * self.lin[i])
        });
        one_site(&mut w, j, &self.projector(j));
        self.diagonal_pass(&mut w, |i| {
            Complex64::from_polar((-sign * 0.5 * u * u * self.pair[i]).exp(), u * self.lin[i])
        });
        w
    }
}

fn one_site(v: &mut [Complex64], site: usize, m: &[[Complex64; 2]; 2]) {
    let bit = 1usize << site;
    for idx in 0..v.len() {
        if idx & bit == 0 {
            let (a, b) = (v[idx], v[idx | bit]);
            v[idx] = m[0][0] * a + m[0][1] * b;
            v[idx | bit] = m[1][0] * a + m[1][1] * b;
        }
    }
}

/// One conjugated projector applied to a state: the annihilator of the
/// Gaussian form associated with the table and receiver signs. Returns raw
/// amplitudes; the input's log-weight is ignored.
pub fn conjugated_projector_apply(
    state: &Statevector,
    table: &StrangeCorrelatorTable,
    signs: &[i8],
    u: f64,
    site: usize,
) -> Result<Vec<Complex64>> {
    let ctx = ParentContext::new(table, signs, u)?;
    if state.sites() != ctx.l {
        return Err(Error::DimensionMismatch(format!(
            "state has {} sites, table has {}",
            state.sites(),
            ctx.l
        )));
    }
    if site >= ctx.l {
        return Err(Error::InvalidParameter(format!(
            "site {site} out of range for {} sites",
            ctx.l
        )));
    }
    Ok(ctx.conjugated_projector(state.amps(), u, site, false))
}

/// Applies the selected parent operator to a state, densely. Returns raw
/// output amplitudes (not renormalized); the input's log-weight is ignored.
pub fn parent_hamiltonian_apply(
    state: &Statevector,
    table: &StrangeCorrelatorTable,
    signs: &[i8],
    u: f64,
    variant: ParentVariant,
) -> Result<Vec<Complex64>> {
    let l = state.sites();
    if l != table.sites() {
        return Err(Error::DimensionMismatch(format!(
            "state has {l} sites, table has {}",
            table.sites()
        )));
    }
    match variant {
        ParentVariant::Exact => {
            let ctx = ParentContext::new(table, signs, u)?;
            let mut acc = vec![C0; 1 << l];
            for j in 0..l {
                let g = ctx.conjugated_projector(state.amps(), u, j, false);
                let gg = ctx.conjugated_projector(&g, u, j, true);
                for (a, b) in acc.iter_mut().zip(&gg) {
                    *a += b;
                }
            }
            Ok(acc)
        }
        ParentVariant::QuadraticApprox => {
            let ctx = ParentContext::new(table, signs, u)?;
            // Zeeman sum -(1/2) sum_j s_j O_j(axis) conjugated by the
            // single-site unitaries
            let mut t = state.amps().to_vec();
            ctx.diagonal_pass(&mut t, |i| Complex64::from_polar(1.0, -u * ctx.lin[i]));
            let mut zee = vec![C0; 1 << l];
            let o = ctx.axis.pauli();
            for j in 0..l {
                let s = Complex64::new(-0.5 * ctx.signs[j] as f64, 0.0);
                let m = [
                    [s * o[0][0], s * o[0][1]],
                    [s * o[1][0], s * o[1][1]],
                ];
                let mut w = t.clone();
                one_site(&mut w, j, &m);
                for (a, b) in zee.iter_mut().zip(&w) {
                    *a += b;
                }
            }
            ctx.diagonal_pass(&mut zee, |i| Complex64::from_polar(1.0, u * ctx.lin[i]));
            // pair coupling u^2 H', diagonal in the flip-axis basis
            let mut quad = state.amps().to_vec();
            ctx.diagonal_pass(&mut quad, |i| Complex64::new(u * u * ctx.pair[i], 0.0));
            for (a, b) in zee.iter_mut().zip(&quad) {
                *a += b;
            }
            Ok(zee)
        }
        ParentVariant::NonHermitian => {
            if l > PARENT_CAP {
                return Err(Error::DenseCap {
                    sites: l,
                    cap: PARENT_CAP,
                });
            }
            validate_signs(signs, l, "receiver signs")?;
            if !(u > 0.0) || !u.is_finite() {
                return Err(Error::InvalidParameter(format!(
                    "similarity strength needs u > 0, got {u}"
                )));
            }
            let alpha = -u.ln();
            let axis = table.axis();
            let exp_axis = |c: f64| {
                let o = axis.pauli();
                let (ch, sh) = (Complex64::new(c.cosh(), 0.0), Complex64::new(c.sinh(), 0.0));
                [
                    [ch + sh * o[0][0], sh * o[0][1]],
                    [sh * o[1][0], ch + sh * o[1][1]],
                ]
            };
            let mut w = state.amps().to_vec();
            for j in 0..l {
                one_site(&mut w, j, &exp_axis(-0.5 * alpha * signs[j] as f64));
            }
            let diag = ising::zz_diagonal(l, true);
            let re: Vec<f64> = w.iter().map(|c| c.re).collect();
            let im: Vec<f64> = w.iter().map(|c| c.im).collect();
            let mut ore = vec![0.0; w.len()];
            let mut oim = vec![0.0; w.len()];
            ising::hamiltonian_matvec(l, &diag, &re, &mut ore);
            ising::hamiltonian_matvec(l, &diag, &im, &mut oim);
            for (slot, (r, i)) in w.iter_mut().zip(ore.iter().zip(&oim)) {
                *slot = Complex64::new(*r, *i);
            }
            for j in 0..l {
                one_site(&mut w, j, &exp_axis(0.5 * alpha * signs[j] as f64));
            }
            Ok(w)
        }
    }
}

/// Leading-order Renyi-2 entropy of a region from the connected table:
/// 2 u^4 sum over boundary-crossing pairs of V^2.
pub fn renyi2_perturbative(
    table: &StrangeCorrelatorTable,
    region: &[usize],
    u: f64,
) -> Result<f64> {
    let l = table.sites();
    let mut inside = vec![false; l];
    for &j in region {
        if j >= l {
            return Err(Error::InvalidParameter(format!(
                "region site {j} out of range for {l} sites"
            )));
        }
        inside[j] = true;
    }
    let (_, v) = table.real_parts()?;
    let mut s = 0.0;
    for j in 0..l {
        if !inside[j] {
            continue;
        }
        for k in 0..l {
            if !inside[k] {
                s += v[j * l + k] * v[j * l + k];
            }
        }
    }
    Ok(2.0 * u.powi(4) * s)
}

/// Continuum interpolation of the boundary-crossing sum of d^{-2 kappa} for a
/// region of length `ell` in a chain of length `l`. The kappa = 1 branch uses
/// the conventional simplified form ln(ell (l - ell)/l), which drops a unit
/// shift that the general expression keeps.
pub fn f_kappa(kappa: f64, ell: f64, l: f64) -> Result<f64> {
    if !kappa.is_finite() || kappa < 0.5 - 1e-12 {
        return Err(Error::InvalidParameter(format!(
            "interpolation requires kappa >= 1/2, got {kappa}"
        )));
    }
    if !(ell >= 1.0 && l - ell >= 1.0) {
        return Err(Error::InvalidParameter(format!(
            "region length {ell} must leave at least one site of {l}"
        )));
    }
    if (kappa - 1.0).abs() < 1e-12 {
        return Ok((ell * (l - ell) / l).ln());
    }
    if (kappa - 0.5).abs() < 1e-12 {
        let r = l - ell + 1.0;
        return Ok(-(ell * ell.ln() - l * l.ln() + r * r.ln()));
    }
    let p = 2.0 - 2.0 * kappa;
    let num = -1.0 + ell.powf(p) - l.powf(p) + (l - ell + 1.0).powf(p);
    let den = 2.0 * (1.0 - 2.0 * kappa) * (kappa - 1.0);
    Ok(num / den)
}

/// Leading-order correlator estimates from the table. Channels are named by
/// geometry: `axis` along the measurement axis, `perp` along the flip axis,
/// `cross` along their cross product. For a z-axis table these are ZZ, XX,
/// and YY respectively.
#[derive(Clone, Debug)]
pub struct PerturbativeCorrelators {
    pub pairs: Vec<(usize, usize)>,
    /// Connected axis-channel estimate per pair:
    /// sin(2uq_j)sin(2uq_k) tanh(2u^2 V) + cos(2uq_j)cos(2uq_k) 4u^4 V^2.
    pub axis_connected: Vec<f64>,
    /// Connected flip-axis estimate per pair: -tanh(2u^2 V).
    pub perp_connected: Vec<f64>,
    /// Connected cross-channel estimate: cos(2uq_j)cos(2uq_k) tanh(2u^2 V).
    pub cross_connected: Vec<f64>,
    /// One-point cross-channel estimate per site: sin(2uq_j).
    pub cross_one_point: Vec<f64>,
    /// Echo of the table's decay diagnostic; slow decay means the estimates
    /// sit at the validity edge.
    pub uncontrolled: bool,
}

/// Evaluates the leading-order channel estimates; requires a real table.
pub fn perturbative_correlators(
    table: &StrangeCorrelatorTable,
    u: f64,
    pairs: &[(usize, usize)],
) -> Result<PerturbativeCorrelators> {
    let l = table.sites();
    let (q, v) = table.real_parts()?;
    let mut axis_c = Vec::with_capacity(pairs.len());
    let mut perp_c = Vec::with_capacity(pairs.len());
    let mut cross_c = Vec::with_capacity(pairs.len());
    for &(j, k) in pairs {
        if j >= l || k >= l || j == k {
            return Err(Error::InvalidParameter(format!(
                "pair ({j},{k}) invalid for {l} sites"
            )));
        }
        let vjk = v[j * l + k];
        let t = (2.0 * u * u * vjk).tanh();
        let (sj, cj) = (2.0 * u * q[j]).sin_cos();
        let (sk, ck) = (2.0 * u * q[k]).sin_cos();
        axis_c.push(sj * sk * t + cj * ck * 4.0 * u.powi(4) * vjk * vjk);
        perp_c.push(-t);
        cross_c.push(cj * ck * t);
    }
    let cross_one = q.iter().map(|&qj| (2.0 * u * qj).sin()).collect();
    Ok(PerturbativeCorrelators {
        pairs: pairs.to_vec(),
        axis_connected: axis_c,
        perp_connected: perp_c,
        cross_connected: cross_c,
        cross_one_point: cross_one,
        uncontrolled: table.is_uncontrolled(),
    })
}
