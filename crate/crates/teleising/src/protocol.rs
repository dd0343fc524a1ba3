//! Many-body teleportation with an imperfect entangler, three ways: the
//! brute-force circuit on the joint 2L-qubit register, the closed-form
//! operator product acting on Alice's state alone, and the direct non-unitary
//! deformation of the final decoded state. Also houses outcome sampling,
//! most-probable-outcome search, and the one-qubit protocols.

use crate::error::{Error, Result};
use crate::lapack;
use crate::state::{Statevector, UnitVector3, MIN_OUTCOME_PROB};
use num_complex::Complex64;
use rand::Rng;

const C1: Complex64 = Complex64::new(1.0, 0.0);
const CI: Complex64 = Complex64::new(0.0, 1.0);

/// Residual tolerance for the iterative multi-term deformation.
pub const DEFORM_TOL: f64 = 1e-10;
const DEFORM_MAX_KRYLOV: usize = 80;

/// Exhaustive most-probable-outcome search is limited to this many sites;
/// beyond it the greedy sequential heuristic takes over.
pub const EXHAUSTIVE_SITE_CAP: usize = 8;

#[derive(Clone, Debug)]
pub struct ProtocolSpec {
    /// Chain length L; Alice holds sites 0..L-1 of the joint register and
    /// Bob holds L..2L-1.
    pub l: usize,
    /// Entangler strength, u in [0, pi/2]; u = pi/4 is the perfect protocol.
    pub u: f64,
    /// Common measurement/initialization axis n.
    pub measure_axis: UnitVector3,
    /// Entangler axis m; None means the flip axis n-perp at every site.
    pub entangle_axis: Option<UnitVector3>,
    /// Per-site measurement axes, overriding measure_axis (staggered
    /// protocols rotate n site by site).
    pub site_axes: Option<Vec<UnitVector3>>,
    /// Bob's initialization signs b; defaults to all +1.
    pub bob_signs: Vec<i8>,
}

/// Resolved per-site frame: measurement axis, its flip axis, entangler axis.
#[derive(Clone, Copy, Debug)]
pub struct SiteFrame {
    pub n: UnitVector3,
    pub nperp: UnitVector3,
    pub m: UnitVector3,
}

impl ProtocolSpec {
    pub fn new(l: usize, u: f64, measure_axis: UnitVector3) -> Self {
        Self {
            l,
            u,
            measure_axis,
            entangle_axis: None,
            site_axes: None,
            bob_signs: vec![1; l],
        }
    }

    /// Spec with a given imperfection strength: u = arctan(e^{-alpha}).
    pub fn from_alpha(l: usize, alpha: f64, measure_axis: UnitVector3) -> Self {
        Self::new(l, (-alpha).exp().atan(), measure_axis)
    }

    pub fn with_entangle_axis(mut self, m: UnitVector3) -> Self {
        self.entangle_axis = Some(m);
        self
    }

    pub fn with_site_axes(mut self, axes: Vec<UnitVector3>) -> Self {
        self.site_axes = Some(axes);
        self
    }

    pub fn with_bob_signs(mut self, signs: Vec<i8>) -> Self {
        self.bob_signs = signs;
        self
    }

    /// Imperfection strength alpha = -ln tan(u); zero for the perfect
    /// protocol, +inf as the entangler switches off.
    pub fn alpha(&self) -> f64 {
        -self.u.tan().ln()
    }

    pub fn validate(&self) -> Result<()> {
        if self.l == 0 {
            return Err(Error::InvalidParameter("empty chain".into()));
        }
        if !(0.0..=std::f64::consts::FRAC_PI_2).contains(&self.u) {
            return Err(Error::InvalidParameter(format!(
                "entangler strength u = {} outside [0, pi/2]",
                self.u
            )));
        }
        if self.bob_signs.len() != self.l {
            return Err(Error::DimensionMismatch(format!(
                "bob_signs has {} entries for {} sites",
                self.bob_signs.len(),
                self.l
            )));
        }
        if self.bob_signs.iter().any(|s| s.abs() != 1) {
            return Err(Error::InvalidParameter("bob_signs must be +-1".into()));
        }
        if let Some(axes) = &self.site_axes {
            if axes.len() != self.l {
                return Err(Error::DimensionMismatch(format!(
                    "site_axes has {} entries for {} sites",
                    axes.len(),
                    self.l
                )));
            }
        }
        Ok(())
    }

    pub fn frames(&self) -> Vec<SiteFrame> {
        (0..self.l)
            .map(|j| {
                let n = match &self.site_axes {
                    Some(axes) => axes[j],
                    None => self.measure_axis,
                };
                let nperp = n.perp();
                let m = self.entangle_axis.unwrap_or(nperp);
                SiteFrame { n, nperp, m }
            })
            .collect()
    }
}

/// A string of +-1 measurement outcomes, one per site. The index encoding
/// matches the amplitude convention: bit j = 0 means +1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OutcomeString {
    signs: Vec<i8>,
}

impl OutcomeString {
    pub fn from_signs(signs: Vec<i8>) -> Result<Self> {
        if signs.iter().any(|s| s.abs() != 1) {
            return Err(Error::InvalidParameter("outcome signs must be +-1".into()));
        }
        Ok(Self { signs })
    }

    pub fn from_index(index: usize, l: usize) -> Self {
        let signs = (0..l)
            .map(|j| if (index >> j) & 1 == 0 { 1 } else { -1 })
            .collect();
        Self { signs }
    }

    pub fn index(&self) -> usize {
        self.signs
            .iter()
            .enumerate()
            .map(|(j, &s)| if s < 0 { 1 << j } else { 0 })
            .sum()
    }

    pub fn uniform(l: usize, sign: i8) -> Self {
        Self {
            signs: vec![sign.signum(); l],
        }
    }

    /// Alternating signs starting from `first` at site 0.
    pub fn neel(l: usize, first: i8) -> Self {
        let signs = (0..l)
            .map(|j| if j % 2 == 0 { first } else { -first })
            .collect();
        Self { signs }
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    pub fn sign(&self, j: usize) -> i8 {
        self.signs[j]
    }

    pub fn len(&self) -> usize {
        self.signs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.signs.is_empty()
    }

    pub fn hamming(&self, other: &Self) -> usize {
        self.signs
            .iter()
            .zip(&other.signs)
            .filter(|(a, b)| a != b)
            .count()
    }
}

impl std::fmt::Display for OutcomeString {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for &s in &self.signs {
            write!(f, "{}", if s > 0 { '+' } else { '-' })?;
        }
        Ok(())
    }
}

/// An outcome together with its exact joint probability.
#[derive(Clone, Debug)]
pub struct SampledOutcome {
    pub outcome: OutcomeString,
    pub probability: f64,
    pub log_probability: f64,
}

/// Joint state after Bob initialization and the entangler, before any
/// measurement: |psi_A> (x) |b,n> hit by prod_j exp(i u O_j^A(m) O_j^B(m)).
pub fn entangled_joint(psi_a: &Statevector, spec: &ProtocolSpec) -> Result<Statevector> {
    spec.validate()?;
    if psi_a.sites() != spec.l {
        return Err(Error::DimensionMismatch(format!(
            "state has {} sites, spec has {}",
            psi_a.sites(),
            spec.l
        )));
    }
    let frames = spec.frames();
    let bob_sites: Vec<(UnitVector3, i8)> = frames
        .iter()
        .zip(&spec.bob_signs)
        .map(|(f, &b)| (f.n, b))
        .collect();
    let bob = Statevector::product_state(&bob_sites);
    let mut joint = psi_a.kron(&bob);
    for (j, f) in frames.iter().enumerate() {
        joint.apply_entangler(j, spec.l + j, spec.u, f.m);
    }
    Ok(joint)
}

/// Runs the protocol as an explicit circuit: entangle, then project Alice
/// onto the forced outcome. Returns Bob's normalized penultimate state and
/// the exact outcome probability.
pub fn run_bruteforce(
    psi_a: &Statevector,
    spec: &ProtocolSpec,
    outcome: &OutcomeString,
) -> Result<(Statevector, f64)> {
    if outcome.len() != spec.l {
        return Err(Error::DimensionMismatch(format!(
            "outcome has {} signs for {} sites",
            outcome.len(),
            spec.l
        )));
    }
    let mut joint = entangled_joint(psi_a, spec)?;
    let frames = spec.frames();
    let mut log_p = 0.0;
    for j in 0..spec.l {
        // Alice's remaining qubits always start at register index 0
        let spinor = frames[j].n.eigenvector(outcome.sign(j));
        let p = joint.contract_site(0, &spinor)?;
        log_p += p.ln();
    }
    let p = log_p.exp();
    if p < MIN_OUTCOME_PROB {
        return Err(Error::ImprobableOutcome {
            prob: p,
            floor: MIN_OUTCOME_PROB,
        });
    }
    joint.set_log_norm(0.0);
    Ok((joint, p))
}

fn mat2_mul(a: &[[Complex64; 2]; 2], b: &[[Complex64; 2]; 2]) -> [[Complex64; 2]; 2] {
    let mut c = [[Complex64::new(0.0, 0.0); 2]; 2];
    for (r, row) in c.iter_mut().enumerate() {
        for (col, slot) in row.iter_mut().enumerate() {
            *slot = a[r][0] * b[0][col] + a[r][1] * b[1][col];
        }
    }
    c
}

fn mat2_id() -> [[Complex64; 2]; 2] {
    [[C1, Complex64::new(0.0, 0.0)], [Complex64::new(0.0, 0.0), C1]]
}

fn mat2_scale(a: &[[Complex64; 2]; 2], s: Complex64) -> [[Complex64; 2]; 2] {
    [[a[0][0] * s, a[0][1] * s], [a[1][0] * s, a[1][1] * s]]
}

fn mat2_add(a: &[[Complex64; 2]; 2], b: &[[Complex64; 2]; 2]) -> [[Complex64; 2]; 2] {
    [
        [a[0][0] + b[0][0], a[0][1] + b[0][1]],
        [a[1][0] + b[1][0], a[1][1] + b[1][1]],
    ]
}

fn mat2_dagger(a: &[[Complex64; 2]; 2]) -> [[Complex64; 2]; 2] {
    [
        [a[0][0].conj(), a[1][0].conj()],
        [a[0][1].conj(), a[1][1].conj()],
    ]
}

/// Per-site projector-rotation factor for a tilted entangler axis:
/// U P_d + (1 - P_d), with P_d = (1 - d O(n))/2 projecting onto the state
/// that disagrees with d, and U the rotation taking the flip axis onto m.
/// Returns None when m already is the flip axis. The daggered variant
/// P_d U^dag + (1 - P_d) is what acts first on Alice's state.
fn projector_rotation(frame: &SiteFrame, d: i8, dagger: bool) -> Option<[[Complex64; 2]; 2]> {
    let w = frame.m.cross_raw(&frame.nperp);
    let sin_theta = (w[0] * w[0] + w[1] * w[1] + w[2] * w[2]).sqrt();
    if sin_theta < 1e-12 {
        return None;
    }
    let cos_theta = frame.m.dot(&frame.nperp);
    let w_hat = UnitVector3::new(w[0], w[1], w[2]).expect("nonzero cross product");
    // U = cos(theta) + i sin(theta) w.sigma rotates the flip axis toward m
    let u = mat2_add(
        &mat2_scale(&mat2_id(), Complex64::new(cos_theta, 0.0)),
        &mat2_scale(&w_hat.pauli(), CI * sin_theta),
    );
    let p = mat2_scale(
        &mat2_add(&mat2_id(), &mat2_scale(&frame.n.pauli(), -Complex64::new(d as f64, 0.0))),
        Complex64::new(0.5, 0.0),
    );
    let one_minus_p = mat2_add(&mat2_id(), &mat2_scale(&p, -C1));
    Some(if dagger {
        mat2_add(&mat2_mul(&p, &mat2_dagger(&u)), &one_minus_p)
    } else {
        mat2_add(&mat2_mul(&u, &p), &one_minus_p)
    })
}

/// Bob's penultimate state built operator-by-operator on Alice's L-qubit
/// wavefunction, without ever touching the 2L-qubit register. Returns the
/// state and the normalization constant N; the outcome probability is then
/// N [sin(u) cos(u)]^L.
pub fn closed_form_penultimate(
    psi_a: &Statevector,
    spec: &ProtocolSpec,
    outcome: &OutcomeString,
) -> Result<(Statevector, f64)> {
    spec.validate()?;
    if psi_a.sites() != spec.l || outcome.len() != spec.l {
        return Err(Error::DimensionMismatch(
            "state/outcome length disagrees with the spec".into(),
        ));
    }
    let alpha = spec.alpha();
    if !alpha.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "closed form needs u strictly inside (0, pi/2); u = {}",
            spec.u
        )));
    }
    let frames = spec.frames();
    let mut work = psi_a.clone();
    work.set_log_norm(0.0);
    let inv_sqrt2 = std::f64::consts::FRAC_1_SQRT_2;
    for (j, f) in frames.iter().enumerate() {
        let a = outcome.sign(j);
        let af = a as f64;
        let n_pauli = f.n.pauli();
        // rightmost first: daggered projector rotation for the outcome sign,
        // imaginary-time weight, outcome rotation, the flip to Bob's
        // initialization signs, and the projector rotation for Bob's sign.
        // The weight must act in the n eigenbasis, hence inside both
        // projector-rotation factors.
        let weight = mat2_add(
            &mat2_scale(&mat2_id(), Complex64::new((af * alpha / 2.0).cosh(), 0.0)),
            &mat2_scale(&n_pauli, Complex64::new((af * alpha / 2.0).sinh(), 0.0)),
        );
        let rot = mat2_scale(
            &mat2_add(&mat2_id(), &mat2_scale(&n_pauli, -CI * af)),
            Complex64::new(inv_sqrt2, 0.0),
        );
        let flip = if a == spec.bob_signs[j] {
            mat2_id()
        } else {
            mat2_scale(&f.nperp.pauli(), CI)
        };
        let mut total = mat2_mul(&flip, &mat2_mul(&rot, &weight));
        if let Some(ua_dag) = projector_rotation(f, a, true) {
            total = mat2_mul(&total, &ua_dag);
        }
        if let Some(ub) = projector_rotation(f, spec.bob_signs[j], false) {
            total = mat2_mul(&ub, &total);
        }
        work.apply_one_site(j, &total);
        work.renormalize()?;
    }
    let norm_const = (2.0 * work.log_norm()).exp();
    work.set_log_norm(0.0);
    Ok((work, norm_const))
}

/// Undoes the outcome-dependent unitary factors of the penultimate state
/// (projector rotation for Bob's signs, flip, outcome rotation), leaving
/// the non-unitary deformation of Alice's state (normalized). With a tilted
/// entangler axis the deformation acts on the projector-rotated state; the
/// result never depends on Bob's initialization signs.
pub fn decode(
    psi_penultimate: &Statevector,
    spec: &ProtocolSpec,
    outcome: &OutcomeString,
) -> Result<Statevector> {
    spec.validate()?;
    if psi_penultimate.sites() != spec.l || outcome.len() != spec.l {
        return Err(Error::DimensionMismatch(
            "state/outcome length disagrees with the spec".into(),
        ));
    }
    let frames = spec.frames();
    let mut out = psi_penultimate.clone();
    let inv_sqrt2 = std::f64::consts::FRAC_1_SQRT_2;
    for (j, f) in frames.iter().enumerate() {
        let a = outcome.sign(j) as f64;
        let unflip = if outcome.sign(j) == spec.bob_signs[j] {
            mat2_id()
        } else {
            mat2_scale(&f.nperp.pauli(), -CI)
        };
        let unrot = mat2_scale(
            &mat2_add(&mat2_id(), &mat2_scale(&f.n.pauli(), CI * a)),
            Complex64::new(inv_sqrt2, 0.0),
        );
        let mut total = mat2_mul(&unrot, &unflip);
        if let Some(ub) = projector_rotation(f, spec.bob_signs[j], false) {
            total = mat2_mul(&total, &mat2_dagger(&ub));
        }
        out.apply_one_site(j, &total);
    }
    Ok(out)
}

/// One term of a non-unitary deformation generator:
/// (alpha/2) sum_j signs[j] O_j(axes[j]). Axes and signs of length 1
/// broadcast over the chain.
#[derive(Clone, Debug)]
pub struct DeformTerm {
    pub alpha: f64,
    pub axes: Vec<UnitVector3>,
    pub signs: Vec<i8>,
}

impl DeformTerm {
    pub fn uniform(alpha: f64, axis: UnitVector3) -> Self {
        Self {
            alpha,
            axes: vec![axis],
            signs: vec![1],
        }
    }

    /// Signs (-1)^j, the staggered magnetization pattern.
    pub fn staggered(alpha: f64, axis: UnitVector3, l: usize) -> Self {
        Self {
            alpha,
            axes: vec![axis],
            signs: (0..l).map(|j| if j % 2 == 0 { 1 } else { -1 }).collect(),
        }
    }

    pub fn with_signs(alpha: f64, axis: UnitVector3, signs: Vec<i8>) -> Self {
        Self {
            alpha,
            axes: vec![axis],
            signs,
        }
    }
}

/// Per-site generator coefficient vectors v_j (the generator restricted to
/// site j is v_j . sigma).
fn resolve_deform(terms: &[DeformTerm], l: usize) -> Result<Vec<[f64; 3]>> {
    let mut site_vecs = vec![[0.0f64; 3]; l];
    for term in terms {
        if term.axes.len() != 1 && term.axes.len() != l {
            return Err(Error::DimensionMismatch(format!(
                "term has {} axes for {} sites",
                term.axes.len(),
                l
            )));
        }
        if term.signs.len() != 1 && term.signs.len() != l {
            return Err(Error::DimensionMismatch(format!(
                "term has {} signs for {} sites",
                term.signs.len(),
                l
            )));
        }
        for (j, v) in site_vecs.iter_mut().enumerate() {
            let axis = term.axes[if term.axes.len() == 1 { 0 } else { j }];
            let sign = term.signs[if term.signs.len() == 1 { 0 } else { j }] as f64;
            let c = 0.5 * term.alpha * sign;
            v[0] += c * axis.x;
            v[1] += c * axis.y;
            v[2] += c * axis.z;
        }
    }
    Ok(site_vecs)
}

fn exp_site_vec(v: &[f64; 3]) -> [[Complex64; 2]; 2] {
    let norm = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
    // below the unit-vector threshold e^{v.sigma} = 1 + O(norm)
    if norm < 1e-12 {
        return mat2_id();
    }
    let axis = UnitVector3::new(v[0], v[1], v[2]).expect("nonzero");
    mat2_add(
        &mat2_scale(&mat2_id(), Complex64::new(norm.cosh(), 0.0)),
        &mat2_scale(&axis.pauli(), Complex64::new(norm.sinh(), 0.0)),
    )
}

/// y += (v.sigma at site j) x
fn accumulate_site_pauli(
    j: usize,
    v: &[f64; 3],
    x: &[Complex64],
    y: &mut [Complex64],
) {
    let g = {
        let p = [
            [
                Complex64::new(v[2], 0.0),
                Complex64::new(v[0], -v[1]),
            ],
            [Complex64::new(v[0], v[1]), Complex64::new(-v[2], 0.0)],
        ];
        p
    };
    let mask = 1usize << j;
    let low = mask - 1;
    for base in 0..x.len() / 2 {
        let i0 = ((base & !low) << 1) | (base & low);
        let i1 = i0 | mask;
        y[i0] += g[0][0] * x[i0] + g[0][1] * x[i1];
        y[i1] += g[1][0] * x[i0] + g[1][1] * x[i1];
    }
}

/// e^A |psi> normalized, A = sum over terms of (alpha/2) sum_j s_j O_j(axis).
/// A single term factorizes over sites and is applied exactly; several terms
/// go through a Krylov approximation of the matrix exponential with residual
/// tolerance DEFORM_TOL.
pub fn deform(psi: &Statevector, terms: &[DeformTerm]) -> Result<Statevector> {
    let l = psi.sites();
    let site_vecs = resolve_deform(terms, l)?;
    if terms.len() <= 1 {
        let mut out = psi.clone();
        for (j, v) in site_vecs.iter().enumerate() {
            out.apply_one_site(j, &exp_site_vec(v));
            out.renormalize()?;
        }
        return Ok(out);
    }
    deform_krylov(psi, &site_vecs)
}

/// Site-factorized exponential of the combined generator; exact whenever the
/// generator is a sum of single-site operators. Serves as the independent
/// oracle for the Krylov path.
pub fn deform_site_exact(psi: &Statevector, terms: &[DeformTerm]) -> Result<Statevector> {
    let site_vecs = resolve_deform(terms, psi.sites())?;
    let mut out = psi.clone();
    for (j, v) in site_vecs.iter().enumerate() {
        out.apply_one_site(j, &exp_site_vec(v));
        out.renormalize()?;
    }
    Ok(out)
}

fn deform_krylov(psi: &Statevector, site_vecs: &[[f64; 3]]) -> Result<Statevector> {
    let dim = psi.len();
    let matvec = |x: &[Complex64], y: &mut [Complex64]| {
        for slot in y.iter_mut() {
            *slot = Complex64::new(0.0, 0.0);
        }
        for (j, v) in site_vecs.iter().enumerate() {
            accumulate_site_pauli(j, v, x, y);
        }
    };
    // Hermitian Lanczos in the Krylov space of the generator
    let mut basis: Vec<Vec<Complex64>> = vec![psi.amps().to_vec()];
    let mut alphas: Vec<f64> = Vec::new();
    let mut betas: Vec<f64> = Vec::new();
    let mut prev: Option<Vec<Complex64>> = None;
    let mut stable = 0usize;
    let mut w = vec![Complex64::new(0.0, 0.0); dim];
    for step in 0..DEFORM_MAX_KRYLOV {
        matvec(&basis[step], &mut w);
        let alpha: f64 = w
            .iter()
            .zip(&basis[step])
            .map(|(a, b)| (b.conj() * a).re)
            .sum();
        alphas.push(alpha);
        for b in &basis {
            let c: Complex64 = b.iter().zip(&w).map(|(bi, wi)| bi.conj() * wi).sum();
            for (wi, bi) in w.iter_mut().zip(b) {
                *wi -= c * bi;
            }
        }
        let cand = krylov_exp(&basis, &alphas, &betas)?;
        if let Some(p) = &prev {
            let diff: f64 = cand
                .iter()
                .zip(p)
                .map(|(a, b)| (a - b).norm_sqr())
                .sum::<f64>()
                .sqrt();
            let scale: f64 = cand.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
            if diff <= DEFORM_TOL * scale {
                stable += 1;
                if stable >= 2 {
                    return finish_krylov(psi, cand);
                }
            } else {
                stable = 0;
            }
        }
        prev = Some(cand);
        let beta: f64 = w.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
        if beta < 1e-14 {
            // invariant subspace reached; the current estimate is exact
            return finish_krylov(psi, prev.unwrap());
        }
        betas.push(beta);
        let next: Vec<Complex64> = w.iter().map(|x| x / beta).collect();
        basis.push(next);
    }
    Err(Error::NotConverged {
        what: "Krylov matrix exponential",
        detail: format!("no convergence within {DEFORM_MAX_KRYLOV} iterations"),
    })
}

/// exp(T) e1 in the Krylov basis, T the tridiagonal Rayleigh matrix.
fn krylov_exp(
    basis: &[Vec<Complex64>],
    alphas: &[f64],
    betas: &[f64],
) -> Result<Vec<Complex64>> {
    let k = alphas.len();
    let mut t = vec![0.0; k * k];
    for i in 0..k {
        t[i * k + i] = alphas[i];
        if i + 1 < k {
            t[i * k + i + 1] = betas[i];
            t[(i + 1) * k + i] = betas[i];
        }
    }
    let evals = lapack::sym_eigen(&mut t, k)?;
    // rows of t are eigenvectors; coefficients of exp(T) e1
    let mut coef = vec![0.0; k];
    for (r, &lam) in evals.iter().enumerate() {
        let weight = t[r * k] * lam.exp();
        for (c, slot) in coef.iter_mut().enumerate() {
            *slot += weight * t[r * k + c];
        }
    }
    let dim = basis[0].len();
    let mut out = vec![Complex64::new(0.0, 0.0); dim];
    for (c, b) in coef.iter().zip(basis) {
        for (o, bi) in out.iter_mut().zip(b) {
            *o += Complex64::new(*c, 0.0) * bi;
        }
    }
    Ok(out)
}

fn finish_krylov(psi: &Statevector, amps: Vec<Complex64>) -> Result<Statevector> {
    let mut out = Statevector::from_amplitudes(amps)?;
    out.set_log_norm(psi.log_norm() + out.log_norm());
    Ok(out)
}

/// Measures Alice's qubits one at a time on the post-entangler joint state,
/// each draw conditioned on the previous outcomes.
pub fn sample_outcome_sequential<R: Rng>(
    psi_a: &Statevector,
    spec: &ProtocolSpec,
    rng: &mut R,
) -> Result<(SampledOutcome, Statevector)> {
    let joint = entangled_joint(psi_a, spec)?;
    let sampler = OutcomeSampler {
        joint,
        frames: spec.frames(),
        l: spec.l,
    };
    sampler.sample_with_state(rng)
}

/// Reusable sampler: the entangled joint state is prepared once, then each
/// sample only pays for the sequential contraction sweep.
pub struct OutcomeSampler {
    joint: Statevector,
    frames: Vec<SiteFrame>,
    l: usize,
}

impl OutcomeSampler {
    pub fn prepare(psi_a: &Statevector, spec: &ProtocolSpec) -> Result<Self> {
        Ok(Self {
            joint: entangled_joint(psi_a, spec)?,
            frames: spec.frames(),
            l: spec.l,
        })
    }

    pub fn sample<R: Rng>(&self, rng: &mut R) -> Result<SampledOutcome> {
        self.sample_with_state(rng).map(|(s, _)| s)
    }

    pub fn sample_with_state<R: Rng>(
        &self,
        rng: &mut R,
    ) -> Result<(SampledOutcome, Statevector)> {
        let mut work = self.joint.clone();
        let mut signs = Vec::with_capacity(self.l);
        let mut log_p = 0.0;
        for j in 0..self.l {
            let p_plus = work.outcome_probability(0, self.frames[j].n, 1);
            let sign = if rng.gen::<f64>() < p_plus { 1 } else { -1 };
            let spinor = self.frames[j].n.eigenvector(sign);
            let p = work.contract_site(0, &spinor)?;
            log_p += p.ln();
            signs.push(sign);
        }
        work.set_log_norm(0.0);
        Ok((
            SampledOutcome {
                outcome: OutcomeString::from_signs(signs)?,
                probability: log_p.exp(),
                log_probability: log_p,
            },
            work,
        ))
    }
}

/// Result of a most-probable-outcome search. `exhaustive` is false when the
/// greedy sequential heuristic was used (chains longer than the cap), in
/// which case ties are not detected.
#[derive(Clone, Debug)]
pub struct MostProbable {
    /// All maximizers within relative 1e-12 of the best probability, in
    /// index order (all-plus sorts first).
    pub outcomes: Vec<OutcomeString>,
    pub probability: f64,
    pub exhaustive: bool,
}

pub fn most_probable_outcome(psi_a: &Statevector, spec: &ProtocolSpec) -> Result<MostProbable> {
    let frames = spec.frames();
    if spec.l <= EXHAUSTIVE_SITE_CAP {
        let mut joint = entangled_joint(psi_a, spec)?;
        // rotate each Alice site to its measurement eigenbasis so that the
        // amplitude index low bits enumerate outcomes directly
        for (j, f) in frames.iter().enumerate() {
            let vp = f.n.eigenvector(1);
            let vm = f.n.eigenvector(-1);
            let w = [
                [vp[0].conj(), vp[1].conj()],
                [vm[0].conj(), vm[1].conj()],
            ];
            joint.apply_one_site(j, &w);
        }
        let dim_a = 1usize << spec.l;
        let mut probs = vec![0.0f64; dim_a];
        for (idx, amp) in joint.amps().iter().enumerate() {
            probs[idx & (dim_a - 1)] += amp.norm_sqr();
        }
        let best = probs.iter().cloned().fold(0.0f64, f64::max);
        let outcomes = probs
            .iter()
            .enumerate()
            .filter(|(_, &p)| p >= best * (1.0 - 1e-12))
            .map(|(i, _)| OutcomeString::from_index(i, spec.l))
            .collect();
        Ok(MostProbable {
            outcomes,
            probability: best,
            exhaustive: true,
        })
    } else {
        let mut work = entangled_joint(psi_a, spec)?;
        let mut signs = Vec::with_capacity(spec.l);
        let mut log_p = 0.0;
        for f in &frames {
            let p_plus = work.outcome_probability(0, f.n, 1);
            let sign = if p_plus >= 0.5 { 1 } else { -1 };
            let spinor = f.n.eigenvector(sign);
            let p = work.contract_site(0, &spinor)?;
            log_p += p.ln();
            signs.push(sign);
        }
        Ok(MostProbable {
            outcomes: vec![OutcomeString::from_signs(signs)?],
            probability: log_p.exp(),
            exhaustive: false,
        })
    }
}

/// Canonical three-qubit teleportation with imperfect entanglers
/// U_ij = exp(i u_ij X_i X_j): Bob's qubit after Alice measures both of hers
/// in the computational basis. Register order: Alice's first and second
/// qubits, then Bob's.
pub fn canonical_three_qubit(
    c1: Complex64,
    c2: Complex64,
    u12: f64,
    u2b: f64,
    z1: i8,
    z2: i8,
) -> Result<(Statevector, f64)> {
    let psi_a = Statevector::from_amplitudes(vec![c1, c2])?;
    let rest = Statevector::product_state(&[(UnitVector3::z_axis(), 1); 2]);
    let mut joint = psi_a.kron(&rest);
    let x = UnitVector3::x_axis();
    // resource entanglement first, then the Bell-measurement entangler
    joint.apply_entangler(1, 2, u2b, x);
    joint.apply_entangler(0, 1, u12, x);
    let z = UnitVector3::z_axis();
    let p1 = joint.contract_site(0, &z.eigenvector(z1))?;
    let p2 = joint.contract_site(0, &z.eigenvector(z2))?;
    joint.set_log_norm(0.0);
    Ok((joint, p1 * p2))
}

/// Unnormalized 2x2 map from Alice's input amplitudes to Bob's output for a
/// fixed canonical-protocol outcome.
pub fn canonical_transfer_matrix(
    u12: f64,
    u2b: f64,
    z1: i8,
    z2: i8,
) -> Result<[[Complex64; 2]; 2]> {
    let mut m = [[Complex64::new(0.0, 0.0); 2]; 2];
    for (col, (c1, c2)) in [(C1, Complex64::new(0.0, 0.0)), (Complex64::new(0.0, 0.0), C1)]
        .into_iter()
        .enumerate()
    {
        let psi_a = Statevector::from_amplitudes(vec![c1, c2])?;
        let rest = Statevector::product_state(&[(UnitVector3::z_axis(), 1); 2]);
        let mut joint = psi_a.kron(&rest);
        let x = UnitVector3::x_axis();
        joint.apply_entangler(1, 2, u2b, x);
        joint.apply_entangler(0, 1, u12, x);
        let z = UnitVector3::z_axis();
        joint.contract_site(0, &z.eigenvector(z1))?;
        joint.contract_site(0, &z.eigenvector(z2))?;
        let scale = joint.log_norm().exp();
        m[0][col] = joint.amps()[0] * scale;
        m[1][col] = joint.amps()[1] * scale;
    }
    Ok(m)
}

/// Same map for the two-qubit simplified protocol with entangler
/// exp(i u X_A X_B) and outcome z on Alice's qubit.
pub fn simplified_transfer_matrix(u: f64, z: i8) -> Result<[[Complex64; 2]; 2]> {
    let mut m = [[Complex64::new(0.0, 0.0); 2]; 2];
    for (col, amps) in [
        vec![C1, Complex64::new(0.0, 0.0)],
        vec![Complex64::new(0.0, 0.0), C1],
    ]
    .into_iter()
    .enumerate()
    {
        let psi_a = Statevector::from_amplitudes(amps)?;
        let bob = Statevector::product_state(&[(UnitVector3::z_axis(), 1)]);
        let mut joint = psi_a.kron(&bob);
        joint.apply_entangler(0, 1, u, UnitVector3::x_axis());
        joint.contract_site(0, &UnitVector3::z_axis().eigenvector(z))?;
        let scale = joint.log_norm().exp();
        m[0][col] = joint.amps()[0] * scale;
        m[1][col] = joint.amps()[1] * scale;
    }
    Ok(m)
}

/// Exponent kappa of the canonical protocol's non-unitary factor
/// P = e^{kappa Z} on Bob's qubit: kappa = z1 (alpha_12 + z2 alpha_2B) / 2.
pub fn canonical_exponent(u12: f64, u2b: f64, z1: i8, z2: i8) -> f64 {
    let a12 = -u12.tan().ln();
    let a2b = -u2b.tan().ln();
    0.5 * z1 as f64 * (a12 + z2 as f64 * a2b)
}
