//! Statevector and density-matrix primitives for spin-1/2 registers.
//!
//! Conventions, used consistently across the crate:
//! * site 0 is the least significant bit of the amplitude index;
//! * bit value 0 encodes spin sign +1, bit value 1 encodes sign -1;
//! * sigma^z = diag(1,-1), sigma^x off-diagonal 1, sigma^y off-diagonal (-i, i);
//! * statevectors carry a `log_norm` field: the physical (possibly unnormalized)
//!   vector is exp(log_norm) times the stored unit vector, so weights as small
//!   as exp(-alpha L) from weak-measurement deformations stay representable.

use crate::error::{Error, Result};
use crate::lapack;
use ndarray::Array2;
use num_complex::Complex64;
use rand::Rng;

/// Eigenvalues of reduced density matrices below this are treated as zero.
pub const EIG_CLIP: f64 = 1e-14;
/// Forcing an outcome whose probability is below this floor is an error.
pub const MIN_OUTCOME_PROB: f64 = 1e-14;
/// Default cap on the number of sites for dense density matrices (4^L entries).
pub const DENSE_SITE_CAP: usize = 12;

const C0: Complex64 = Complex64::new(0.0, 0.0);
const C1: Complex64 = Complex64::new(1.0, 0.0);

/// A real unit vector on the Bloch sphere, selecting a measurement axis n.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct UnitVector3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl UnitVector3 {
    /// Normalizes (x, y, z); errors if the norm is numerically zero.
    pub fn new(x: f64, y: f64, z: f64) -> Result<Self> {
        let norm = (x * x + y * y + z * z).sqrt();
        if norm < 1e-12 {
            return Err(Error::ZeroVector { norm });
        }
        Ok(Self {
            x: x / norm,
            y: y / norm,
            z: z / norm,
        })
    }

    pub fn x_axis() -> Self {
        Self { x: 1.0, y: 0.0, z: 0.0 }
    }

    pub fn y_axis() -> Self {
        Self { x: 0.0, y: 1.0, z: 0.0 }
    }

    pub fn z_axis() -> Self {
        Self { x: 0.0, y: 0.0, z: 1.0 }
    }

    /// n = (sin t cos p, sin t sin p, cos t).
    pub fn from_polar(theta: f64, phi: f64) -> Self {
        Self {
            x: theta.sin() * phi.cos(),
            y: theta.sin() * phi.sin(),
            z: theta.cos(),
        }
    }

    pub fn dot(&self, other: &Self) -> f64 {
        self.x * other.x + self.y * other.y + self.z * other.z
    }

    /// Raw (unnormalized) cross product.
    pub fn cross_raw(&self, other: &Self) -> [f64; 3] {
        [
            self.y * other.z - self.z * other.y,
            self.z * other.x - self.x * other.z,
            self.x * other.y - self.y * other.x,
        ]
    }

    /// The companion axis n_perp: for n = (sin t cos p, sin t sin p, cos t)
    /// this is (-cos t cos p, -cos t sin p, sin t). It anticommutes with n.sigma
    /// and flips n-eigenstates. For n = z it evaluates to -x.
    pub fn perp(&self) -> Self {
        let theta = self.z.clamp(-1.0, 1.0).acos();
        let phi = if self.x == 0.0 && self.y == 0.0 {
            0.0
        } else {
            self.y.atan2(self.x)
        };
        Self {
            x: -theta.cos() * phi.cos(),
            y: -theta.cos() * phi.sin(),
            z: theta.sin(),
        }
    }

    /// The 2x2 matrix n.sigma.
    pub fn pauli(&self) -> [[Complex64; 2]; 2] {
        [
            [
                Complex64::new(self.z, 0.0),
                Complex64::new(self.x, -self.y),
            ],
            [
                Complex64::new(self.x, self.y),
                Complex64::new(-self.z, 0.0),
            ],
        ]
    }

    /// Eigenvector of n.sigma with eigenvalue `sign` in the fixed gauge
    /// |+n> = (cos t/2, e^{ip} sin t/2), |-n> = (-sin t/2, e^{ip} cos t/2).
    pub fn eigenvector(&self, sign: i8) -> [Complex64; 2] {
        let theta = self.z.clamp(-1.0, 1.0).acos();
        let phi = if self.x == 0.0 && self.y == 0.0 {
            0.0
        } else {
            self.y.atan2(self.x)
        };
        let (h, p) = ((theta / 2.0).sin_cos(), Complex64::from_polar(1.0, phi));
        let (sin_h, cos_h) = h;
        if sign >= 0 {
            [Complex64::new(cos_h, 0.0), p * sin_h]
        } else {
            [Complex64::new(-sin_h, 0.0), p * cos_h]
        }
    }

    /// Phase picked up when flipping an n-eigenstate with n_perp.sigma:
    /// n_perp.sigma |s, n> = flip_phase(s) |-s, n>.
    pub fn flip_phase(&self, sign: i8) -> Complex64 {
        let op = self.perp().pauli();
        let v = self.eigenvector(sign);
        let w = self.eigenvector(-sign);
        let mut out = C0;
        for r in 0..2 {
            for c in 0..2 {
                out += w[r].conj() * op[r][c] * v[c];
            }
        }
        out
    }
}

/// Pure state of `sites` spins with a separately tracked log-domain weight.
#[derive(Clone, Debug)]
pub struct Statevector {
    amps: Vec<Complex64>,
    sites: usize,
    log_norm: f64,
}

impl Statevector {
    /// Product state of single-site n.sigma eigenstates with the given signs.
    pub fn product_state(axes: &[(UnitVector3, i8)]) -> Self {
        let sites = axes.len();
        let mut amps = vec![C1; 1];
        for &(axis, sign) in axes {
            let v = axis.eigenvector(sign);
            let mut next = vec![C0; amps.len() * 2];
            for (i, a) in amps.iter().enumerate() {
                next[i] = a * v[0];
                next[i + amps.len()] = a * v[1];
            }
            amps = next;
        }
        Self {
            amps,
            sites,
            log_norm: 0.0,
        }
    }

    /// Wraps raw amplitudes; the stored vector is normalized and the input norm
    /// is absorbed into `log_norm`.
    pub fn from_amplitudes(amps: Vec<Complex64>) -> Result<Self> {
        let sites = amps.len().trailing_zeros() as usize;
        if amps.len() == 0 || amps.len() != 1 << sites {
            return Err(Error::DimensionMismatch(format!(
                "amplitude count {} is not a power of two",
                amps.len()
            )));
        }
        let mut sv = Self {
            amps,
            sites,
            log_norm: 0.0,
        };
        let norm = sv.raw_norm();
        if norm < 1e-300 {
            return Err(Error::ZeroVector { norm });
        }
        sv.scale_into_log(norm);
        Ok(sv)
    }

    pub fn sites(&self) -> usize {
        self.sites
    }

    pub fn len(&self) -> usize {
        self.amps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.amps.is_empty()
    }

    pub fn amps(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn amp(&self, index: usize) -> Complex64 {
        self.amps[index]
    }

    /// ln of the physical norm carried alongside the stored unit vector.
    pub fn log_norm(&self) -> f64 {
        self.log_norm
    }

    pub fn set_log_norm(&mut self, value: f64) {
        self.log_norm = value;
    }

    fn raw_norm(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    fn scale_into_log(&mut self, norm: f64) {
        let inv = 1.0 / norm;
        for a in &mut self.amps {
            *a *= inv;
        }
        self.log_norm += norm.ln();
    }

    /// Inner product <self|other> of the stored unit vectors (log_norm ignored).
    pub fn inner(&self, other: &Self) -> Complex64 {
        assert_eq!(self.sites, other.sites, "inner product requires equal registers");
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    /// |<self|other>| of the stored unit vectors.
    pub fn fidelity(&self, other: &Self) -> f64 {
        self.inner(other).norm()
    }

    /// Applies an arbitrary 2x2 operator on one site. Does not renormalize.
    pub fn apply_one_site(&mut self, site: usize, m: &[[Complex64; 2]; 2]) {
        assert!(site < self.sites);
        let mask = 1usize << site;
        let low = mask - 1;
        for base in 0..self.amps.len() / 2 {
            let i0 = ((base & !low) << 1) | (base & low);
            let i1 = i0 | mask;
            let (a0, a1) = (self.amps[i0], self.amps[i1]);
            self.amps[i0] = m[0][0] * a0 + m[0][1] * a1;
            self.amps[i1] = m[1][0] * a0 + m[1][1] * a1;
        }
    }

    /// Applies n.sigma on one site.
    pub fn apply_axis_pauli(&mut self, site: usize, axis: UnitVector3) {
        self.apply_one_site(site, &axis.pauli());
    }

    /// Applies exp(i u (m.sigma)_a (m.sigma)_b) = cos u + i sin u (m.sigma)_a (m.sigma)_b.
    pub fn apply_entangler(&mut self, site_a: usize, site_b: usize, u: f64, axis: UnitVector3) {
        assert!(site_a != site_b && site_a < self.sites && site_b < self.sites);
        let o = axis.pauli();
        let (c, s) = (Complex64::new(u.cos(), 0.0), Complex64::new(0.0, u.sin()));
        let (ma, mb) = (site_a.min(site_b), site_a.max(site_b));
        let (mask_a, mask_b) = (1usize << ma, 1usize << mb);
        let low_a = mask_a - 1;
        let low_b = (1usize << (mb - 1)) - 1; // after the site_a bit was inserted
        for base in 0..self.amps.len() / 4 {
            let t = ((base & !low_b) << 1) | (base & low_b);
            let i00 = ((t & !low_a) << 1) | (t & low_a);
            let idx = [i00, i00 | mask_a, i00 | mask_b, i00 | mask_a | mask_b];
            // local 2-site vector ordered by (bit_b, bit_a)
            let old = [
                self.amps[idx[0]],
                self.amps[idx[1]],
                self.amps[idx[2]],
                self.amps[idx[3]],
            ];
            for (pos, &i) in idx.iter().enumerate() {
                let (ba, bb) = (pos & 1, pos >> 1);
                let mut t2 = C0;
                for pos2 in 0..4 {
                    let (ca, cb) = (pos2 & 1, pos2 >> 1);
                    t2 += o[ba][ca] * o[bb][cb] * old[pos2];
                }
                self.amps[i] = c * old[pos] + s * t2;
            }
        }
    }

    /// exp(c * n.sigma) on one site (non-unitary for real nonzero c).
    /// The norm change is folded into log_norm; the stored vector stays unit.
    pub fn apply_exp_axis(&mut self, site: usize, axis: UnitVector3, c: Complex64) {
        let o = axis.pauli();
        let (ch, sh) = (c.cosh(), c.sinh());
        let m = [
            [ch + sh * o[0][0], sh * o[0][1]],
            [sh * o[1][0], ch + sh * o[1][1]],
        ];
        self.apply_one_site(site, &m);
    }

    /// Renormalizes the stored vector, folding the factor into log_norm.
    pub fn renormalize(&mut self) -> Result<()> {
        let norm = self.raw_norm();
        if norm < 1e-300 {
            return Err(Error::ZeroVector { norm });
        }
        self.scale_into_log(norm);
        Ok(())
    }

    /// Projects one site onto the n.sigma eigenstate with random outcome drawn
    /// from the Born rule. Returns (sign, probability). The site stays in the
    /// register, collapsed; sqrt(p) is folded into log_norm.
    pub fn measure_site<R: Rng + ?Sized>(
        &mut self,
        site: usize,
        axis: UnitVector3,
        rng: &mut R,
    ) -> (i8, f64) {
        let p_plus = self.outcome_probability(site, axis, 1);
        let sign = if rng.gen::<f64>() < p_plus { 1 } else { -1 };
        let p = self
            .project_site(site, axis, sign)
            .expect("Born-rule outcome cannot have vanishing probability");
        (sign, p)
    }

    /// Probability of finding `sign` when measuring n.sigma on `site`.
    pub fn outcome_probability(&self, site: usize, axis: UnitVector3, sign: i8) -> f64 {
        let v = axis.eigenvector(sign);
        let mask = 1usize << site;
        let low = mask - 1;
        let mut p = 0.0;
        for base in 0..self.amps.len() / 2 {
            let i0 = ((base & !low) << 1) | (base & low);
            let amp = v[0].conj() * self.amps[i0] + v[1].conj() * self.amps[i0 | mask];
            p += amp.norm_sqr();
        }
        p
    }

    /// Projects one site onto a forced outcome; errors if its probability is
    /// below `MIN_OUTCOME_PROB`. Returns the probability.
    pub fn project_site(&mut self, site: usize, axis: UnitVector3, sign: i8) -> Result<f64> {
        let v = axis.eigenvector(sign);
        let mask = 1usize << site;
        let low = mask - 1;
        let mut p = 0.0;
        for base in 0..self.amps.len() / 2 {
            let i0 = ((base & !low) << 1) | (base & low);
            let i1 = i0 | mask;
            let overlap = v[0].conj() * self.amps[i0] + v[1].conj() * self.amps[i1];
            p += overlap.norm_sqr();
            self.amps[i0] = overlap * v[0];
            self.amps[i1] = overlap * v[1];
        }
        if p < MIN_OUTCOME_PROB {
            return Err(Error::ImprobableOutcome {
                prob: p,
                floor: MIN_OUTCOME_PROB,
            });
        }
        self.renormalize()?;
        Ok(p)
    }

    /// Contracts one site against a fixed spinor, shrinking the register by one
    /// (sites above shift down). With an n-eigenvector this is projective
    /// measurement that drops the measured qubit. Probability = squared norm of
    /// the contraction, folded into log_norm. Errors below the probability floor.
    pub fn contract_site(&mut self, site: usize, spinor: &[Complex64; 2]) -> Result<f64> {
        assert!(site < self.sites);
        let mask = 1usize << site;
        let low = mask - 1;
        let mut next = vec![C0; self.amps.len() / 2];
        let mut p = 0.0;
        for (base, slot) in next.iter_mut().enumerate() {
            let i0 = ((base & !low) << 1) | (base & low);
            let amp = spinor[0].conj() * self.amps[i0] + spinor[1].conj() * self.amps[i0 | mask];
            p += amp.norm_sqr();
            *slot = amp;
        }
        if p < MIN_OUTCOME_PROB {
            return Err(Error::ImprobableOutcome {
                prob: p,
                floor: MIN_OUTCOME_PROB,
            });
        }
        self.amps = next;
        self.sites -= 1;
        self.renormalize()?;
        Ok(p)
    }

    /// Tensor product: other's sites become the high bits (self keeps 0..self.sites).
    pub fn kron(&self, other: &Self) -> Self {
        let mut amps = vec![C0; self.amps.len() * other.amps.len()];
        for (j, b) in other.amps.iter().enumerate() {
            let off = j * self.amps.len();
            for (i, a) in self.amps.iter().enumerate() {
                amps[off + i] = a * b;
            }
        }
        Self {
            amps,
            sites: self.sites + other.sites,
            log_norm: self.log_norm + other.log_norm,
        }
    }

    /// <psi| prod_k (axis_k.sigma on site_k) |psi> for the stored unit vector.
    pub fn expectation_pauli_string(&self, ops: &[(usize, UnitVector3)]) -> Complex64 {
        let mut work = self.clone();
        for &(site, axis) in ops {
            work.apply_axis_pauli(site, axis);
        }
        self.inner(&work)
    }

    /// Dense reduced density matrix over `region` (site indices, any order;
    /// row/column bit k of the output corresponds to region[k]).
    pub fn reduced_density_matrix(&self, region: &[usize]) -> Result<DensityMatrix> {
        let r = region.len();
        if r > DENSE_SITE_CAP {
            return Err(Error::DenseCap {
                sites: r,
                cap: DENSE_SITE_CAP,
            });
        }
        let mut sorted = region.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != r || sorted.iter().any(|&s| s >= self.sites) {
            return Err(Error::InvalidParameter(format!(
                "region {:?} is not a set of distinct sites below {}",
                region, self.sites
            )));
        }
        let env: Vec<usize> = (0..self.sites).filter(|s| !region.contains(s)).collect();
        let dim = 1usize << r;
        let mut rho = Array2::from_elem((dim, dim), C0);
        let compose = |reg_idx: usize, env_idx: usize| -> usize {
            let mut full = 0usize;
            for (k, &s) in region.iter().enumerate() {
                full |= ((reg_idx >> k) & 1) << s;
            }
            for (k, &s) in env.iter().enumerate() {
                full |= ((env_idx >> k) & 1) << s;
            }
            full
        };
        for e in 0..(1usize << env.len()) {
            for i in 0..dim {
                let ai = self.amps[compose(i, e)];
                if ai == C0 {
                    continue;
                }
                for j in 0..dim {
                    rho[(i, j)] += ai * self.amps[compose(j, e)].conj();
                }
            }
        }
        Ok(DensityMatrix { mat: rho, sites: r })
    }

    /// Renyi entropy of order n for `region`; n = 1 gives von Neumann.
    pub fn renyi_entropy(&self, region: &[usize], n: f64) -> Result<f64> {
        let rho = self.reduced_density_matrix(region)?;
        Ok(rho.renyi_entropy(n))
    }

    /// Logarithmic negativity ln || rho^{T_region} ||_1 of the pure state over
    /// the bipartition (region, rest). Provided mostly for cross-checks against
    /// the mixed-state route.
    pub fn negativity(&self, region: &[usize]) -> Result<f64> {
        let all: Vec<usize> = (0..self.sites).collect();
        let rho = self.reduced_density_matrix(&all)?;
        rho.negativity(region)
    }
}

/// Dense density matrix over a small register.
#[derive(Clone, Debug)]
pub struct DensityMatrix {
    mat: Array2<Complex64>,
    sites: usize,
}

impl DensityMatrix {
    pub fn new(mat: Array2<Complex64>, sites: usize) -> Result<Self> {
        let dim = 1usize << sites;
        if mat.nrows() != dim || mat.ncols() != dim {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} matrix for {} sites",
                mat.nrows(),
                mat.ncols(),
                sites
            )));
        }
        Ok(Self { mat, sites })
    }

    pub fn from_pure(state: &Statevector) -> Result<Self> {
        if state.sites() > DENSE_SITE_CAP {
            return Err(Error::DenseCap {
                sites: state.sites(),
                cap: DENSE_SITE_CAP,
            });
        }
        let dim = state.len();
        let mut mat = Array2::from_elem((dim, dim), C0);
        for i in 0..dim {
            for j in 0..dim {
                mat[(i, j)] = state.amp(i) * state.amp(j).conj();
            }
        }
        Ok(Self {
            mat,
            sites: state.sites(),
        })
    }

    pub fn sites(&self) -> usize {
        self.sites
    }

    pub fn dim(&self) -> usize {
        self.mat.nrows()
    }

    pub fn matrix(&self) -> &Array2<Complex64> {
        &self.mat
    }

    pub fn matrix_mut(&mut self) -> &mut Array2<Complex64> {
        &mut self.mat
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim()).map(|i| self.mat[(i, i)]).sum()
    }

    pub fn max_hermiticity_violation(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..self.dim() {
            for j in i..self.dim() {
                worst = worst.max((self.mat[(i, j)] - self.mat[(j, i)].conj()).norm());
            }
        }
        worst
    }

    fn is_numerically_real(&self) -> bool {
        self.mat.iter().all(|z| z.im.abs() < 1e-13)
    }

    /// Eigenvalues, ascending. Uses the real-symmetric path when possible.
    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        let n = self.dim();
        if self.is_numerically_real() {
            let mut a: Vec<f64> = self.mat.iter().map(|z| z.re).collect();
            lapack::sym_eigenvalues(&mut a, n)
        } else {
            let mut buf: Vec<Complex64> = self.mat.iter().cloned().collect();
            lapack::herm_eigenvalues(&mut buf, n)
        }
    }

    /// Renyi entropy of order n from the eigenvalue spectrum, with clipping at
    /// EIG_CLIP. n = 1 branches to von Neumann; n = 2 uses the exact
    /// Frobenius-norm shortcut Tr rho^2 = sum |rho_ij|^2 (no eigensolve).
    pub fn renyi_entropy(&self, n: f64) -> f64 {
        assert!(n > 0.0, "entropy order must be positive");
        if (n - 2.0).abs() < 1e-12 {
            let purity: f64 = self.mat.iter().map(|z| z.norm_sqr()).sum();
            return -purity.ln();
        }
        let eigs = self.eigenvalues().expect("eigensolve failed");
        if (n - 1.0).abs() < 1e-12 {
            -eigs
                .iter()
                .filter(|&&p| p > EIG_CLIP)
                .map(|&p| p * p.ln())
                .sum::<f64>()
        } else {
            let s: f64 = eigs
                .iter()
                .filter(|&&p| p > EIG_CLIP)
                .map(|&p| p.powf(n))
                .sum();
            s.ln() / (1.0 - n)
        }
    }

    /// Partial transpose over the given subset of sites.
    pub fn partial_transpose(&self, region: &[usize]) -> Self {
        let dim = self.dim();
        let mut mask = 0usize;
        for &s in region {
            assert!(s < self.sites);
            mask |= 1 << s;
        }
        let mut out = Array2::from_elem((dim, dim), C0);
        for r in 0..dim {
            for c in 0..dim {
                // swap the region bits between row and column indices
                let r2 = (r & !mask) | (c & mask);
                let c2 = (c & !mask) | (r & mask);
                out[(r2, c2)] = self.mat[(r, c)];
            }
        }
        Self {
            mat: out,
            sites: self.sites,
        }
    }

    /// Logarithmic negativity ln || rho^{T_region} ||_1.
    pub fn negativity(&self, region: &[usize]) -> Result<f64> {
        let pt = self.partial_transpose(region);
        let eigs = pt.eigenvalues()?;
        Ok(eigs.iter().map(|e| e.abs()).sum::<f64>().ln())
    }

    /// Tr[rho * prod_k (axis_k.sigma on site_k)].
    pub fn expectation_pauli_string(&self, ops: &[(usize, UnitVector3)]) -> Complex64 {
        let mut support = Vec::new();
        let mut mats = Vec::new();
        for &(site, axis) in ops {
            assert!(site < self.sites);
            support.push(site);
            mats.push(axis.pauli());
        }
        let dim = self.dim();
        let k = support.len();
        let mut total = C0;
        // Tr[rho O] = sum_{j,k} rho[j,k] O[k,j]; O factorizes over `support`.
        for j in 0..dim {
            for sub in 0..(1usize << k) {
                let mut kk = j;
                let mut coeff = C1;
                for (t, (&site, m)) in support.iter().zip(&mats).enumerate() {
                    let jb = (j >> site) & 1;
                    let kb = (sub >> t) & 1;
                    kk = (kk & !(1 << site)) | (kb << site);
                    coeff *= m[kb][jb];
                }
                if coeff != C0 {
                    total += self.mat[(j, kk)] * coeff;
                }
            }
        }
        total
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;
    use rand::SeedableRng;
    use rand_chacha::ChaCha12Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn eigenvectors_satisfy_eigen_equation() {
        for axis in [
            UnitVector3::x_axis(),
            UnitVector3::y_axis(),
            UnitVector3::z_axis(),
            UnitVector3::from_polar(0.7, 1.9),
            UnitVector3::from_polar(2.5, -0.4),
        ] {
            let m = axis.pauli();
            for sign in [1i8, -1i8] {
                let v = axis.eigenvector(sign);
                for r in 0..2 {
                    let got = m[r][0] * v[0] + m[r][1] * v[1];
                    let want = v[r] * (sign as f64);
                    assert!((got - want).norm() < 1e-14, "axis {:?} sign {}", axis, sign);
                }
            }
        }
    }

    #[test]
    fn perp_axis_is_orthogonal_and_matches_z_convention() {
        let z = UnitVector3::z_axis();
        let p = z.perp();
        assert!((p.x + 1.0).abs() < 1e-15 && p.y.abs() < 1e-15 && p.z.abs() < 1e-15);
        for axis in [
            UnitVector3::x_axis(),
            UnitVector3::y_axis(),
            UnitVector3::from_polar(1.1, 0.3),
        ] {
            assert!(axis.dot(&axis.perp()).abs() < 1e-14);
        }
        // x -> z and y -> z per the polar-angle convention
        let px = UnitVector3::x_axis().perp();
        assert!(px.z > 0.999 && px.x.abs() < 1e-12);
        let py = UnitVector3::y_axis().perp();
        assert!(py.z > 0.999);
    }

    #[test]
    fn flip_phase_flips_eigenstates() {
        for axis in [
            UnitVector3::z_axis(),
            UnitVector3::x_axis(),
            UnitVector3::from_polar(0.9, 2.2),
        ] {
            for sign in [1i8, -1i8] {
                let ph = axis.flip_phase(sign);
                assert!((ph.norm() - 1.0).abs() < 1e-13);
                // n_perp.sigma |s> must have zero residual outside |-s>
                let op = axis.perp().pauli();
                let v = axis.eigenvector(sign);
                let w = axis.eigenvector(-sign);
                let applied = [
                    op[0][0] * v[0] + op[0][1] * v[1],
                    op[1][0] * v[0] + op[1][1] * v[1],
                ];
                let resid = [(applied[0] - ph * w[0]).norm(), (applied[1] - ph * w[1]).norm()];
                assert!(resid[0] < 1e-14 && resid[1] < 1e-14);
            }
        }
    }

    #[test]
    fn product_state_amplitudes_site0_is_lsb() {
        // |-z> on site 0, |+z> on site 1 -> only index 0b01 populated
        let sv = Statevector::product_state(&[
            (UnitVector3::z_axis(), -1),
            (UnitVector3::z_axis(), 1),
        ]);
        assert!((sv.amp(0b01).norm() - 1.0).abs() < 1e-14);
        assert!(sv.amp(0b00).norm() < 1e-14);
        assert!(sv.amp(0b10).norm() < 1e-14);
        assert!(sv.amp(0b11).norm() < 1e-14);
    }

    #[test]
    fn entangler_matches_kron_oracle_small() {
        // two sites: exp(i u X0 X1) acting on |00> -> cos u |00> + i sin u |11>
        let mut sv = Statevector::product_state(&[
            (UnitVector3::z_axis(), 1),
            (UnitVector3::z_axis(), 1),
        ]);
        let u = 0.37;
        sv.apply_entangler(0, 1, u, UnitVector3::x_axis());
        assert!((sv.amp(0) - c(u.cos(), 0.0)).norm() < 1e-14);
        assert!((sv.amp(3) - c(0.0, u.sin())).norm() < 1e-14);
        assert!(sv.amp(1).norm() < 1e-15 && sv.amp(2).norm() < 1e-15);
    }

    #[test]
    fn entangler_three_site_register_nonadjacent_pair() {
        // exp(i u Z0 Z2) is diagonal: phase e^{iu z0 z2}
        let mut sv = Statevector::from_amplitudes(vec![c(0.5, 0.0); 8]).unwrap();
        let u = 0.81;
        sv.apply_entangler(0, 2, u, UnitVector3::z_axis());
        let mag = 8f64.sqrt().recip();
        for idx in 0..8usize {
            let z0 = if idx & 1 == 0 { 1.0 } else { -1.0 };
            let z2 = if idx & 4 == 0 { 1.0 } else { -1.0 };
            let want = Complex64::from_polar(mag, u * z0 * z2);
            assert!((sv.amp(idx) - want).norm() < 1e-14, "idx {}", idx);
        }
    }

    #[test]
    fn exp_axis_tracks_log_norm() {
        // exp(a Z) on |+z>: physical result e^{a} |+z>, stored unit with log_norm = a
        let mut sv = Statevector::product_state(&[(UnitVector3::z_axis(), 1)]);
        sv.apply_exp_axis(0, UnitVector3::z_axis(), c(0.9, 0.0));
        sv.renormalize().unwrap();
        assert!((sv.log_norm() - 0.9).abs() < 1e-13);
        assert!((sv.amp(0).norm() - 1.0).abs() < 1e-13);
    }

    #[test]
    fn measurement_statistics_on_plus_x() {
        let mut rng = ChaCha12Rng::seed_from_u64(7);
        let mut plus = 0usize;
        let n = 4000;
        for _ in 0..n {
            let mut sv = Statevector::product_state(&[(UnitVector3::x_axis(), 1)]);
            let (sign, p) = sv.measure_site(0, UnitVector3::z_axis(), &mut rng);
            assert!((p - 0.5).abs() < 1e-12);
            if sign == 1 {
                plus += 1;
            }
        }
        let frac = plus as f64 / n as f64;
        assert!((frac - 0.5).abs() < 0.03, "frac = {}", frac);
    }

    #[test]
    fn forced_improbable_outcome_errors() {
        let mut sv = Statevector::product_state(&[(UnitVector3::z_axis(), 1)]);
        let err = sv.project_site(0, UnitVector3::z_axis(), -1);
        assert!(matches!(err, Err(Error::ImprobableOutcome { .. })));
    }

    #[test]
    fn contract_site_reduces_register() {
        let mut sv = Statevector::product_state(&[
            (UnitVector3::x_axis(), 1),
            (UnitVector3::z_axis(), -1),
        ]);
        let v = UnitVector3::x_axis().eigenvector(1);
        let p = sv.contract_site(0, &v).unwrap();
        assert!((p - 1.0).abs() < 1e-13);
        assert_eq!(sv.sites(), 1);
        assert!((sv.amp(1).norm() - 1.0).abs() < 1e-13);
    }

    #[test]
    fn rdm_of_bell_pair_is_maximally_mixed() {
        let amps = vec![c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)];
        let sv = Statevector::from_amplitudes(amps).unwrap();
        let rho = sv.reduced_density_matrix(&[0]).unwrap();
        assert!((rho.matrix()[(0, 0)] - c(0.5, 0.0)).norm() < 1e-14);
        assert!((rho.matrix()[(1, 1)] - c(0.5, 0.0)).norm() < 1e-14);
        assert!(rho.matrix()[(0, 1)].norm() < 1e-14);
        assert!((sv.renyi_entropy(&[0], 1.0).unwrap() - 2f64.ln().abs()).abs() < 1e-12);
        assert!((sv.renyi_entropy(&[0], 2.0).unwrap() - 2f64.ln()).abs() < 1e-12);
        // negativity of a Bell pair: ln(2)
        assert!((sv.negativity(&[0]).unwrap() - 2f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn pauli_string_expectations_on_product_states() {
        let sv = Statevector::product_state(&[
            (UnitVector3::x_axis(), 1),
            (UnitVector3::z_axis(), -1),
        ]);
        let ex = sv.expectation_pauli_string(&[(0, UnitVector3::x_axis())]);
        assert!((ex - c(1.0, 0.0)).norm() < 1e-14);
        let ez = sv.expectation_pauli_string(&[(1, UnitVector3::z_axis())]);
        assert!((ez - c(-1.0, 0.0)).norm() < 1e-14);
        let exz = sv.expectation_pauli_string(&[(0, UnitVector3::x_axis()), (1, UnitVector3::z_axis())]);
        assert!((exz - c(-1.0, 0.0)).norm() < 1e-14);
        let ey = sv.expectation_pauli_string(&[(0, UnitVector3::y_axis())]);
        assert!(ey.norm() < 1e-14);
    }

    #[test]
    fn density_matrix_expectation_matches_pure_state() {
        let mut rng = ChaCha12Rng::seed_from_u64(41);
        let amps: Vec<Complex64> = (0..16)
            .map(|_| c(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5))
            .collect();
        let sv = Statevector::from_amplitudes(amps).unwrap();
        let rho = DensityMatrix::from_pure(&sv).unwrap();
        let ops = [
            (0usize, UnitVector3::y_axis()),
            (2usize, UnitVector3::from_polar(1.2, 0.4)),
        ];
        let a = sv.expectation_pauli_string(&ops);
        let b = rho.expectation_pauli_string(&ops);
        assert!((a - b).norm() < 1e-12, "{} vs {}", a, b);
    }

    #[test]
    fn partial_transpose_preserves_trace_and_hermiticity() {
        let mut rng = ChaCha12Rng::seed_from_u64(3);
        let amps: Vec<Complex64> = (0..8)
            .map(|_| c(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5))
            .collect();
        let sv = Statevector::from_amplitudes(amps).unwrap();
        let rho = DensityMatrix::from_pure(&sv).unwrap();
        let pt = rho.partial_transpose(&[1]);
        assert!((pt.trace() - c(1.0, 0.0)).norm() < 1e-13);
        assert!(pt.max_hermiticity_violation() < 1e-13);
        assert!(((pt.partial_transpose(&[1]).matrix() - rho.matrix())
            .iter()
            .map(|z| z.norm())
            .fold(0.0f64, f64::max))
            < 1e-14);
    }

    #[test]
    fn pure_state_negativity_matches_schmidt_formula() {
        // For a pure state, ||rho^{T_R}||_1 = (sum_i sqrt(p_i))^2 over the
        // Schmidt coefficients p_i of the bipartition.
        let mut rng = ChaCha12Rng::seed_from_u64(11);
        let amps: Vec<Complex64> = (0..32)
            .map(|_| c(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5))
            .collect();
        let sv = Statevector::from_amplitudes(amps).unwrap();
        let neg = sv.negativity(&[0, 2]).unwrap();
        let rho = sv.reduced_density_matrix(&[0, 2]).unwrap();
        let sum_sqrt: f64 = rho
            .eigenvalues()
            .unwrap()
            .iter()
            .filter(|&&p| p > EIG_CLIP)
            .map(|&p| p.sqrt())
            .sum();
        assert!((neg - 2.0 * sum_sqrt.ln()).abs() < 1e-10);
    }
}
