//! Outcome-averaged teleported ensembles.
//!
//! Averaging the protocol output over all 2^L measurement outcomes leaves a
//! mixed state with product-channel structure. With Bob's corrective unitary
//! applied before the average, each site suffers pure phase damping along its
//! measurement axis: in the axis product basis the entries are the pristine
//! ones damped by sin(2u) per disagreeing site. Without the correction, the
//! average equals the partial trace of the entangled pre-measurement pair,
//! a two-Kraus transfer channel per site. Both ensembles are assembled
//! densely here, together with the correlator pass-through and damping
//! rules and the logarithmic negativity of a block.

use ndarray::Array2;
use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fit;
use crate::ising;
use crate::protocol::{closed_form_penultimate, decode, OutcomeString, ProtocolSpec, SiteFrame};
use crate::state::{DensityMatrix, Statevector, UnitVector3, DENSE_SITE_CAP};

const C0: Complex64 = Complex64::new(0.0, 0.0);
const CI: Complex64 = Complex64::new(0.0, 1.0);

/// The exhaustive outcome sum costs 2^L state builds of 4^L work each; past
/// this size the closed route is the only sensible one.
const OUTCOME_SUM_CAP: usize = 10;

/// Whether Bob applies the outcome-dependent corrective unitary before the
/// ensemble average is taken.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AveragingMode {
    Decoded,
    Undecoded,
}

/// Protocol plus averaging mode; the pair fixes the ensemble completely.
#[derive(Clone, Debug)]
pub struct MixedEnsembleSpec {
    pub protocol: ProtocolSpec,
    pub mode: AveragingMode,
}

impl MixedEnsembleSpec {
    pub fn decoded(protocol: ProtocolSpec) -> Self {
        Self {
            protocol,
            mode: AveragingMode::Decoded,
        }
    }

    pub fn undecoded(protocol: ProtocolSpec) -> Self {
        Self {
            protocol,
            mode: AveragingMode::Undecoded,
        }
    }
}

fn mat2_dagger(m: &[[Complex64; 2]; 2]) -> [[Complex64; 2]; 2] {
    [
        [m[0][0].conj(), m[1][0].conj()],
        [m[0][1].conj(), m[1][1].conj()],
    ]
}

/// Row s of the result is the bra of the sign-s eigenvector, so the matrix
/// maps computational amplitudes to coefficients in the axis eigenbasis
/// (bit 0 for +, bit 1 for -).
fn basis_bra(axis: UnitVector3) -> [[Complex64; 2]; 2] {
    let plus = axis.eigenvector(1);
    let minus = axis.eigenvector(-1);
    [
        [plus[0].conj(), plus[1].conj()],
        [minus[0].conj(), minus[1].conj()],
    ]
}

/// In-place left multiplication of a dim x dim row-major matrix by a
/// one-site operator: rows mix in pairs differing on `site`.
fn left_one_site(mat: &mut [Complex64], dim: usize, site: usize, m: &[[Complex64; 2]; 2]) {
    let bit = 1usize << site;
    for r0 in 0..dim {
        if r0 & bit != 0 {
            continue;
        }
        let r1 = r0 | bit;
        for c in 0..dim {
            let a = mat[r0 * dim + c];
            let b = mat[r1 * dim + c];
            mat[r0 * dim + c] = m[0][0] * a + m[0][1] * b;
            mat[r1 * dim + c] = m[1][0] * a + m[1][1] * b;
        }
    }
}

/// In-place right multiplication: columns mix in pairs differing on `site`.
fn right_one_site(mat: &mut [Complex64], dim: usize, site: usize, m: &[[Complex64; 2]; 2]) {
    let bit = 1usize << site;
    for r in 0..dim {
        let row = r * dim;
        for c0 in 0..dim {
            if c0 & bit != 0 {
                continue;
            }
            let c1 = c0 | bit;
            let a = mat[row + c0];
            let b = mat[row + c1];
            mat[row + c0] = a * m[0][0] + b * m[1][0];
            mat[row + c1] = a * m[0][1] + b * m[1][1];
        }
    }
}

fn density_from_flat(mat: Vec<Complex64>, sites: usize) -> Result<DensityMatrix> {
    let dim = 1usize << sites;
    let arr = Array2::from_shape_vec((dim, dim), mat)
        .map_err(|e| Error::DimensionMismatch(e.to_string()))?;
    DensityMatrix::new(arr, sites)
}

/// Decoded ensemble in the measurement product basis: entry (a, a') is
/// [sin 2u]^{hamming(a, a')} c_a conj(c_{a'}) with c the input coefficients
/// along the per-site measurement axes. Valid for any input state.
fn decoded_product_basis(psi_a: &Statevector, protocol: &ProtocolSpec) -> Result<Vec<Complex64>> {
    let mut coeff = psi_a.clone();
    for (j, f) in protocol.frames().iter().enumerate() {
        coeff.apply_one_site(j, &basis_bra(f.n));
    }
    let dim = coeff.len();
    let s = (2.0 * protocol.u).sin();
    let mut pow = vec![1.0; protocol.l + 1];
    for k in 1..=protocol.l {
        pow[k] = pow[k - 1] * s;
    }
    let mut mat = vec![C0; dim * dim];
    for a in 0..dim {
        let ca = coeff.amp(a);
        if ca == C0 {
            continue;
        }
        for b in 0..dim {
            mat[a * dim + b] = ca * coeff.amp(b).conj() * pow[(a ^ b).count_ones() as usize];
        }
    }
    Ok(mat)
}

/// The two Kraus operators transferring one site through the entangler and
/// the traced-out measurement: K_a = cos(u) |b><a| + i sin(u) O(m)|b><a|O(m),
/// with a the dropped outcome sign along n. Trace preserving for any m.
fn transfer_kraus(f: &SiteFrame, b: i8, u: f64) -> [[[Complex64; 2]; 2]; 2] {
    let cu = Complex64::new(u.cos(), 0.0);
    let isu = CI * u.sin();
    let om = f.m.pauli();
    let apply = |v: &[Complex64; 2]| {
        [
            om[0][0] * v[0] + om[0][1] * v[1],
            om[1][0] * v[0] + om[1][1] * v[1],
        ]
    };
    let bvec = f.n.eigenvector(b);
    let ob = apply(&bvec);
    let mut out = [[[C0; 2]; 2]; 2];
    for (slot, a) in [1i8, -1].into_iter().enumerate() {
        let avec = f.n.eigenvector(a);
        let oa = apply(&avec);
        for r in 0..2 {
            for c in 0..2 {
                out[slot][r][c] = cu * bvec[r] * avec[c].conj() + isu * ob[r] * oa[c].conj();
            }
        }
    }
    out
}

/// Dense ensemble density matrix in the computational basis, via the closed
/// product-channel construction. `assemble_by_outcome_sum` reproduces it
/// term by term where affordable.
pub fn assemble(psi_a: &Statevector, spec: &MixedEnsembleSpec) -> Result<DensityMatrix> {
    let protocol = &spec.protocol;
    protocol.validate()?;
    if psi_a.sites() != protocol.l {
        return Err(Error::DimensionMismatch(format!(
            "state has {} sites, spec has {}",
            psi_a.sites(),
            protocol.l
        )));
    }
    if protocol.l > DENSE_SITE_CAP {
        return Err(Error::DenseCap {
            sites: protocol.l,
            cap: DENSE_SITE_CAP,
        });
    }
    let dim = 1usize << protocol.l;
    match spec.mode {
        AveragingMode::Decoded => {
            let mut mat = decoded_product_basis(psi_a, protocol)?;
            for (j, f) in protocol.frames().iter().enumerate() {
                let bra = basis_bra(f.n);
                left_one_site(&mut mat, dim, j, &mat2_dagger(&bra));
                right_one_site(&mut mat, dim, j, &bra);
            }
            density_from_flat(mat, protocol.l)
        }
        AveragingMode::Undecoded => {
            let mut mat = vec![C0; dim * dim];
            for r in 0..dim {
                let ar = psi_a.amp(r);
                if ar == C0 {
                    continue;
                }
                for c in 0..dim {
                    mat[r * dim + c] = ar * psi_a.amp(c).conj();
                }
            }
            let mut term = vec![C0; mat.len()];
            let mut acc = vec![C0; mat.len()];
            for (j, f) in protocol.frames().iter().enumerate() {
                let kraus = transfer_kraus(f, protocol.bob_signs[j], protocol.u);
                for z in acc.iter_mut() {
                    *z = C0;
                }
                for k in &kraus {
                    term.copy_from_slice(&mat);
                    left_one_site(&mut term, dim, j, k);
                    right_one_site(&mut term, dim, j, &mat2_dagger(k));
                    for (a, t) in acc.iter_mut().zip(&term) {
                        *a += *t;
                    }
                }
                mat.copy_from_slice(&acc);
            }
            density_from_flat(mat, protocol.l)
        }
    }
}

/// The literal average sum_a p_a |psi_a><psi_a| over all 2^L outcomes,
/// decoded or not. Exponential twice over, hence the tighter cap; this is
/// the validation twin of `assemble`.
pub fn assemble_by_outcome_sum(
    psi_a: &Statevector,
    spec: &MixedEnsembleSpec,
) -> Result<DensityMatrix> {
    let protocol = &spec.protocol;
    protocol.validate()?;
    if protocol.l > OUTCOME_SUM_CAP {
        return Err(Error::DenseCap {
            sites: protocol.l,
            cap: OUTCOME_SUM_CAP,
        });
    }
    let dim = 1usize << protocol.l;
    let leg = (protocol.u.sin() * protocol.u.cos()).powi(protocol.l as i32);
    let mut mat = vec![C0; dim * dim];
    for idx in 0..dim {
        let outcome = OutcomeString::from_index(idx, protocol.l);
        let (pen, norm_const) = match closed_form_penultimate(psi_a, protocol, &outcome) {
            Ok(pair) => pair,
            // zero-probability outcomes carry no weight
            Err(Error::ZeroVector { .. }) => continue,
            Err(e) => return Err(e),
        };
        let p = norm_const * leg;
        if p == 0.0 {
            continue;
        }
        let state = match spec.mode {
            AveragingMode::Decoded => decode(&pen, protocol, &outcome)?,
            AveragingMode::Undecoded => pen,
        };
        for r in 0..dim {
            let ar = state.amp(r) * p;
            if ar == C0 {
                continue;
            }
            for c in 0..dim {
                mat[r * dim + c] += ar * state.amp(c).conj();
            }
        }
    }
    density_from_flat(mat, protocol.l)
}

/// Which member of the per-site frame a correlator string runs along.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AxisClass {
    /// The measurement axis n: passes through the decoded average untouched.
    Axis,
    /// The flip axis: damped by sin(2u) per factor in the decoded average,
    /// killed outright in the undecoded one.
    Perp,
    /// n x n_perp, completing the triple.
    Cross,
}

pub fn class_axis(frame: &SiteFrame, class: AxisClass) -> Result<UnitVector3> {
    Ok(match class {
        AxisClass::Axis => frame.n,
        AxisClass::Perp => frame.nperp,
        AxisClass::Cross => {
            let c = frame.n.cross_raw(&frame.nperp);
            UnitVector3::new(c[0], c[1], c[2])?
        }
    })
}

/// Tr[rho O_K] for a Pauli string along one frame axis class, one factor per
/// listed site. Hermitian strings trace to real numbers; residual imaginary
/// parts beyond rounding are rejected.
pub fn mixed_correlator(
    rho: &DensityMatrix,
    protocol: &ProtocolSpec,
    sites: &[usize],
    class: AxisClass,
) -> Result<f64> {
    if rho.sites() != protocol.l {
        return Err(Error::DimensionMismatch(format!(
            "density matrix over {} sites, spec over {}",
            rho.sites(),
            protocol.l
        )));
    }
    let mut seen = vec![false; protocol.l];
    for &s in sites {
        if s >= protocol.l || seen[s] {
            return Err(Error::InvalidParameter(format!(
                "correlator sites {:?} are not distinct sites below {}",
                sites, protocol.l
            )));
        }
        seen[s] = true;
    }
    let frames = protocol.frames();
    let ops: Vec<(usize, UnitVector3)> = sites
        .iter()
        .map(|&j| class_axis(&frames[j], class).map(|ax| (j, ax)))
        .collect::<Result<_>>()?;
    let tr = rho.expectation_pauli_string(&ops);
    if tr.im.abs() > 1e-9 {
        return Err(Error::InvalidParameter(format!(
            "correlator trace has imaginary part {:.3e}; the string is not Hermitian \
             against this matrix",
            tr.im
        )));
    }
    Ok(tr.re)
}

/// Negativity of the decoded ensemble without leaving the measurement
/// product basis: the partial-transpose spectrum is unchanged by the
/// per-site rotations, so the closed-form entries suffice. This halves the
/// work and keeps the matrix real for real coefficient vectors.
pub fn decoded_log_negativity(
    psi_a: &Statevector,
    protocol: &ProtocolSpec,
    region: &[usize],
) -> Result<f64> {
    protocol.validate()?;
    if protocol.l > DENSE_SITE_CAP {
        return Err(Error::DenseCap {
            sites: protocol.l,
            cap: DENSE_SITE_CAP,
        });
    }
    let mat = decoded_product_basis(psi_a, protocol)?;
    let rho = density_from_flat(mat, protocol.l)?;
    rho.negativity(region)
}

#[derive(Clone, Debug, Serialize)]
pub struct NegativityPoint {
    pub l: usize,
    pub alpha: f64,
    pub negativity: f64,
}

/// Fit of E(L) = (c_eff/2) ln L + const at fixed alpha, with the length
/// window and the standard error of the slope recorded.
#[derive(Clone, Debug, Serialize)]
pub struct NegativityFit {
    pub alpha: f64,
    pub c_eff: f64,
    pub intercept: f64,
    pub c_eff_stderr: f64,
    pub ls: Vec<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct NegativityScan {
    pub points: Vec<NegativityPoint>,
    pub fits: Vec<NegativityFit>,
}

impl NegativityScan {
    /// One (L, alpha, negativity) row per computed point.
    pub fn csv(&self) -> String {
        let mut out = String::from("l,alpha,negativity\n");
        for p in &self.points {
            out.push_str(&format!("{},{:.6},{:.12}\n", p.l, p.alpha, p.negativity));
        }
        out
    }

    /// Fit summary, one record per alpha.
    pub fn fit_json(&self) -> String {
        serde_json::to_string_pretty(&self.fits).expect("fit records serialize")
    }
}

/// Half-chain negativity of the decoded ensemble built on the periodic
/// critical chain, across lengths and deformation strengths, with a log-law
/// fit per strength.
pub fn negativity_scan(axis: UnitVector3, ls: &[usize], alphas: &[f64]) -> Result<NegativityScan> {
    if ls.len() < 2 {
        return Err(Error::InvalidParameter(
            "negativity fit needs at least two chain lengths".into(),
        ));
    }
    let mut points = Vec::new();
    let mut fits = Vec::new();
    for &alpha in alphas {
        let mut es = Vec::with_capacity(ls.len());
        for &l in ls {
            let psi = ising::critical_ground_state(l, true)?;
            let protocol = ProtocolSpec::from_alpha(l, alpha, axis);
            let region: Vec<usize> = (0..l / 2).collect();
            let e = decoded_log_negativity(&psi, &protocol, &region)?;
            points.push(NegativityPoint {
                l,
                alpha,
                negativity: e,
            });
            es.push(e);
        }
        let xs: Vec<f64> = ls.iter().map(|&l| l as f64).collect();
        let (slope, intercept, stderr) = fit::fit_log_coefficient(&xs, &es)?;
        fits.push(NegativityFit {
            alpha,
            c_eff: 2.0 * slope,
            intercept,
            c_eff_stderr: 2.0 * stderr,
            ls: ls.to_vec(),
        });
    }
    Ok(NegativityScan { points, fits })
}
