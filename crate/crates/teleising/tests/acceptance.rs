//! Acceptance gate: one test per criterion, one printed verdict line each.
//! Tolerances are pinned here and nowhere else; run with `-- --nocapture`
//! to see the pass lines, failures print their line regardless.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI, TAU};
use std::time::Instant;

use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use teleising::fit::{fit_log_coefficient, fit_power_law};
use teleising::gaussian::{
    c_eff1_closed, correlation_matrix, entropies_from_correlation, fisher_hartwig_exponents,
    marginal_correlators, marginal_correlators_finite, CorrelationSource,
};
use teleising::ising::{
    self, critical_ground_state, fcs_width, scaling_function_variance, FcsDistribution,
};
use teleising::lapack;
use teleising::mixed::{
    assemble, class_axis, mixed_correlator, negativity_scan, AxisClass, MixedEnsembleSpec,
};
use teleising::protocol::{
    closed_form_penultimate, decode, deform, entangled_joint, run_bruteforce, DeformTerm,
    OutcomeSampler, OutcomeString, ProtocolSpec,
};
use teleising::state::{Statevector, UnitVector3};
use teleising::strange::{
    conjugated_projector_apply, gaussian_form_state, parent_hamiltonian_apply, renyi2_perturbative,
    perturbative_correlators, strange_correlators, ParentVariant,
};

fn verdict(criterion: &str, pass: bool, detail: &str) {
    println!("[{}] {criterion}: {detail}", if pass { "pass" } else { "FAIL" });
    assert!(pass, "{criterion}: {detail}");
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_axis(rng: &mut ChaCha8Rng) -> UnitVector3 {
    let theta = (1.0 - 2.0 * rng.gen::<f64>()).acos();
    UnitVector3::from_polar(theta, rng.gen::<f64>() * TAU)
}

fn random_state(l: usize, rng: &mut ChaCha8Rng) -> Statevector {
    let amps: Vec<Complex64> = (0..1usize << l)
        .map(|_| Complex64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5))
        .collect();
    let mut psi = Statevector::from_amplitudes(amps).unwrap();
    psi.set_log_norm(0.0);
    psi
}

fn amp_norm(v: &[Complex64]) -> f64 {
    v.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
}

#[test]
fn c01_closed_form_route_matches_brute_force() {
    let start = Instant::now();
    let mut rng = rng(101);
    let mut worst = 0.0f64;
    for t in 0..20 {
        let l = 2 + t % 5;
        let psi = random_state(l, &mut rng);
        let u = 0.05 + rng.gen::<f64>() * (FRAC_PI_2 - 0.1);
        let mut spec = ProtocolSpec::new(l, u, random_axis(&mut rng));
        if t % 2 == 1 {
            spec.entangle_axis = Some(random_axis(&mut rng));
        }
        spec.bob_signs = (0..l)
            .map(|_| if rng.gen::<bool>() { 1 } else { -1 })
            .collect();
        let mut idx = rng.gen_range(0..1usize << l);
        let (brute, _) = loop {
            // skip outcomes below the brute-force probability floor
            match run_bruteforce(&psi, &spec, &OutcomeString::from_index(idx, l)) {
                Ok(pair) => break pair,
                Err(_) => idx = (idx + 1) % (1 << l),
            }
        };
        let outcome = OutcomeString::from_index(idx, l);
        let (closed, _) = closed_form_penultimate(&psi, &spec, &outcome).unwrap();
        worst = worst.max((closed.fidelity(&brute) - 1.0).abs());
    }
    let elapsed = start.elapsed().as_secs_f64();
    verdict(
        "01 closed-form route matches brute force",
        worst < 1e-10 && elapsed < 60.0,
        &format!("worst overlap dev {worst:.3e} over 20 random tuples (tilted entanglers included), {elapsed:.1}s"),
    );
}

#[test]
fn c02_quarter_pi_entangler_teleports_perfectly() {
    let l = 5;
    let mut rng = rng(102);
    let psi = random_state(l, &mut rng);
    let mut spec = ProtocolSpec::new(l, FRAC_PI_4, UnitVector3::from_polar(0.7, 1.1));
    spec.bob_signs = vec![1, -1, 1, 1, -1];
    let uniform = 0.5f64.powi(l as i32);
    let mut worst_p = 0.0f64;
    let mut worst_f = 0.0f64;
    for idx in 0..1usize << l {
        let outcome = OutcomeString::from_index(idx, l);
        let (pen, n) = closed_form_penultimate(&psi, &spec, &outcome).unwrap();
        let p = n * (spec.u.sin() * spec.u.cos()).powi(l as i32);
        worst_p = worst_p.max((p - uniform).abs());
        let decoded = decode(&pen, &spec, &outcome).unwrap();
        worst_f = worst_f.max((decoded.fidelity(&psi) - 1.0).abs());
    }
    verdict(
        "02 quarter-pi entangler returns the input with uniform outcomes",
        worst_p < 1e-12 && worst_f < 1e-12,
        &format!("probability dev {worst_p:.3e} from 2^-5, decode overlap dev {worst_f:.3e}, 32 outcomes"),
    );
}

#[test]
fn c03_outcome_probabilities_sum_to_one() {
    let mut rng = rng(103);
    let mut worst = 0.0f64;
    for t in 0..5 {
        let l = 3 + t % 4;
        let psi = random_state(l, &mut rng);
        let u = 0.1 + rng.gen::<f64>() * (FRAC_PI_2 - 0.2);
        let mut spec = ProtocolSpec::new(l, u, random_axis(&mut rng));
        if t % 2 == 0 {
            spec.entangle_axis = Some(random_axis(&mut rng));
        }
        spec.bob_signs = (0..l)
            .map(|_| if rng.gen::<bool>() { 1 } else { -1 })
            .collect();
        let w = (u.sin() * u.cos()).powi(l as i32);
        let total: f64 = (0..1usize << l)
            .map(|idx| {
                let outcome = OutcomeString::from_index(idx, l);
                let (_, n) = closed_form_penultimate(&psi, &spec, &outcome).unwrap();
                n * w
            })
            .sum();
        worst = worst.max((total - 1.0).abs());
    }
    verdict(
        "03 normalization constants resolve to unit total probability",
        worst < 1e-10,
        &format!("worst |sum - 1| = {worst:.3e} over 5 random specs"),
    );
}

#[test]
fn c04_pristine_correlations_carry_the_critical_exponents() {
    let start = Instant::now();
    let seps: Vec<usize> = (2..=10).map(|k| 10 * k).collect();
    let sep_f: Vec<f64> = seps.iter().map(|&d| d as f64).collect();
    let table = marginal_correlators(0.0, &seps).unwrap();
    let xx = -fit_power_law(&sep_f, &table.xx_connected).unwrap().exponent;
    let yy = -fit_power_law(&sep_f, &table.yy).unwrap().exponent;
    let zz = -fit_power_law(&sep_f, &table.zz).unwrap().exponent;
    let x_dev = (table.x_mean - 2.0 / PI).abs();
    let elapsed = start.elapsed().as_secs_f64();
    let pass = (xx - 2.0).abs() <= 0.05 * 2.0
        && (yy - 2.25).abs() <= 0.05 * 2.25
        && (zz - 0.25).abs() <= 0.05 * 0.25
        && x_dev < 1e-3
        && elapsed < 60.0;
    verdict(
        "04 pristine power laws and transverse magnetization",
        pass,
        &format!(
            "exponents xx {xx:.4} (want 2), yy {yy:.4} (want 9/4), zz {zz:.4} (want 1/4) within 5%, \
             |<X> - 2/pi| = {x_dev:.2e}, separations 20..100, {elapsed:.1}s"
        ),
    );
}

#[test]
fn c05_marginal_deformation_entropy_and_exponents() {
    let start = Instant::now();
    let ells: Vec<usize> = (1..=7).map(|k| 40 * k + 20).collect();
    let ell_f: Vec<f64> = ells.iter().map(|&e| e as f64).collect();
    let seps: Vec<usize> = vec![8, 12, 16, 24, 32, 48, 64];
    let sep_f: Vec<f64> = seps.iter().map(|&d| d as f64).collect();
    let mut detail = String::new();
    let mut pass = true;
    for alpha in [0.0, 0.25, 0.5, 1.0] {
        let s1: Vec<f64> = ells
            .iter()
            .map(|&ell| {
                let cm =
                    correlation_matrix(CorrelationSource::Thermodynamic { alpha }, ell).unwrap();
                entropies_from_correlation(&cm, &[1.0]).unwrap()[0]
            })
            .collect();
        let (slope, _, _) = fit_log_coefficient(&ell_f, &s1).unwrap();
        let c_eff = 3.0 * slope;
        let closed = c_eff1_closed(alpha);
        pass &= (c_eff - closed).abs() <= 0.02 * closed;

        let table = marginal_correlators(alpha, &seps).unwrap();
        let (dz_th, dy_th) = fisher_hartwig_exponents(alpha);
        let dz = -fit_power_law(&sep_f, &table.zz).unwrap().exponent / 2.0;
        let dy = -fit_power_law(&sep_f, &table.yy).unwrap().exponent / 2.0;
        pass &= (dz - dz_th).abs() <= 0.05 * dz_th && (dy - dy_th).abs() <= 0.05 * dy_th;

        let amp_th = 1.0 / (2.0 * alpha).cosh().powi(2) / PI.powi(2);
        let amp: f64 = table
            .xx_connected
            .iter()
            .zip(&seps)
            .rev()
            .take(3)
            .map(|(&xx, &d)| xx.abs() * (d * d) as f64)
            .sum::<f64>()
            / 3.0;
        pass &= (amp - amp_th).abs() <= 0.05 * amp_th;
        detail.push_str(&format!(
            "a={alpha}: c {c_eff:.4}/{closed:.4}, dz {dz:.4}/{dz_th:.4}, dy {dy:.4}/{dy_th:.4}, amp {amp:.4}/{amp_th:.4}; "
        ));
    }
    let elapsed = start.elapsed().as_secs_f64();
    pass &= elapsed < 600.0;
    verdict(
        "05 marginal measurement entropy coefficient and exponents",
        pass,
        &format!("{detail}{elapsed:.1}s (fit/closed pairs, 2%/5%/5% bars)"),
    );
}

#[test]
fn c06_free_fermion_engine_agrees_with_dense_diagonalization() {
    let l = 12;
    let x = UnitVector3::x_axis();
    let y = UnitVector3::y_axis();
    let z = UnitVector3::z_axis();
    let psi = critical_ground_state(l, true).unwrap();
    let seps: Vec<usize> = (1..=5).collect();
    let mut worst = 0.0f64;
    for alpha in [0.3, 0.8] {
        let ed = deform(&psi, &[DeformTerm::uniform(alpha, x)]).unwrap();
        let table = marginal_correlators_finite(l, alpha, &seps).unwrap();
        let x_mean = ed.expectation_pauli_string(&[(0, x)]).re;
        worst = worst.max((x_mean - table.x_mean).abs());
        for (k, &d) in seps.iter().enumerate() {
            let zz = ed.expectation_pauli_string(&[(0, z), (d, z)]).re;
            let yy = ed.expectation_pauli_string(&[(0, y), (d, y)]).re;
            let xx = ed.expectation_pauli_string(&[(0, x), (d, x)]).re
                - ed.expectation_pauli_string(&[(0, x)]).re
                    * ed.expectation_pauli_string(&[(d, x)]).re;
            worst = worst
                .max((zz - table.zz[k]).abs())
                .max((yy - table.yy[k]).abs())
                .max((xx - table.xx_connected[k]).abs());
        }
        let half: Vec<usize> = (0..l / 2).collect();
        let s_ed = ed.renyi_entropy(&half, 1.0).unwrap();
        let cm = correlation_matrix(CorrelationSource::Finite { l, alpha }, l / 2).unwrap();
        let s_ff = entropies_from_correlation(&cm, &[1.0]).unwrap()[0];
        worst = worst.max((s_ed - s_ff).abs());
    }
    verdict(
        "06 fermion and dense engines agree at finite size",
        worst < 1e-8,
        &format!("worst deviation {worst:.3e} (correlators + half-chain entropy, L=12, two strengths)"),
    );
}

#[test]
fn c07_strong_measurement_expansion_tracks_dense_results() {
    let l = 12;
    let x = UnitVector3::x_axis();
    let z = UnitVector3::z_axis();
    let psi = critical_ground_state(l, true).unwrap();
    let signs = vec![1i8; l];
    let table = strange_correlators(&psi, &signs, z).unwrap();
    let pairs: Vec<(usize, usize)> = (2..=5).map(|d| ((l - d) / 2, (l - d) / 2 + d)).collect();

    // pair correlations at the weaker strength; the leading behavior of the
    // implemented channel is -2 u^2 V, twice the bare pair potential
    let alpha = 3.0;
    let u = (-alpha as f64).exp().atan();
    let spec = ProtocolSpec::from_alpha(l, alpha, z);
    let outcome = OutcomeString::uniform(l, 1);
    let (pen, _) = closed_form_penultimate(&psi, &spec, &outcome).unwrap();
    let pert = perturbative_correlators(&table, u, &pairs).unwrap();
    let mut worst_xx = 0.0f64;
    for (t, &(i, j)) in pairs.iter().enumerate() {
        let ed = pen.expectation_pauli_string(&[(i, x), (j, x)]).re
            - pen.expectation_pauli_string(&[(i, x)]).re
                * pen.expectation_pauli_string(&[(j, x)]).re;
        worst_xx = worst_xx.max((ed - pert.perp_connected[t]).abs() / pert.perp_connected[t].abs());
    }

    // entropy at the stronger strength
    let alpha4 = 4.0;
    let u4 = (-alpha4 as f64).exp().atan();
    let spec4 = ProtocolSpec::from_alpha(l, alpha4, z);
    let (pen4, _) = closed_form_penultimate(&psi, &spec4, &outcome).unwrap();
    let mut s2 = Vec::new();
    for ell in 4..=6 {
        let region: Vec<usize> = (0..ell).collect();
        s2.push(pen4.renyi_entropy(&region, 2.0).unwrap());
    }
    let half: Vec<usize> = (0..l / 2).collect();
    let s2_formula = renyi2_perturbative(&table, &half, u4).unwrap();
    let s2_dev = (s2[2] - s2_formula).abs() / s2_formula;
    let (lo, hi) = s2
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &s| {
            (lo.min(s), hi.max(s))
        });
    let area_var = (hi - lo) / hi;
    verdict(
        "07 strong-measurement pair and entropy expansion",
        worst_xx <= 0.10 && s2_dev <= 0.10 && area_var <= 0.05,
        &format!(
            "xx rel dev {worst_xx:.2e} (seps 2..5), s2 rel dev {s2_dev:.2e}, area-law variation {area_var:.2e}"
        ),
    );
}

#[test]
fn c08_staggered_y_deviations_grow_quadratically() {
    let l = 16;
    let sep = 6;
    let y = UnitVector3::y_axis();
    let z = UnitVector3::z_axis();
    let psi = critical_ground_state(l, true).unwrap();
    let (i, j) = ((l - sep) / 2, (l - sep) / 2 + sep);
    let pristine = psi.expectation_pauli_string(&[(i, z), (j, z)]).re;
    let alphas: Vec<f64> = vec![0.05, 0.1, 0.15, 0.2, 0.25, 0.3, 0.35, 0.4];
    let ln_devs: Vec<f64> = alphas
        .iter()
        .map(|&alpha| {
            let spec = ProtocolSpec::from_alpha(l, alpha, y);
            let outcome = OutcomeString::neel(l, 1);
            let (pen, _) = closed_form_penultimate(&psi, &spec, &outcome).unwrap();
            let state = decode(&pen, &spec, &outcome).unwrap();
            let zz = state.expectation_pauli_string(&[(i, z), (j, z)]).re;
            (zz - pristine).abs().ln()
        })
        .collect();
    let (p, _, stderr) = fit_log_coefficient(&alphas, &ln_devs).unwrap();
    verdict(
        "08 alternating-outcome transverse-axis deviations",
        (p - 2.0).abs() <= 0.4,
        &format!("power {p:.3} +- {stderr:.3} (want 2 +- 0.4), L=16, separation 6"),
    );
}

#[test]
fn c09_counting_statistics_scaling_and_reshaping() {
    let z = UnitVector3::z_axis();
    let x = UnitVector3::x_axis();
    let ls: Vec<usize> = vec![10, 12, 14, 16, 18];
    let ls_f: Vec<f64> = ls.iter().map(|&l| l as f64).collect();
    let mut var_z = Vec::new();
    let mut var_x = Vec::new();
    let mut width_worst = 0.0f64;
    let mut shift14 = 0.0;
    let mut shift18 = 0.0;
    for &l in &ls {
        let psi = critical_ground_state(l, true).unwrap();
        let dz = FcsDistribution::from_state(&psi, z);
        let dx = FcsDistribution::from_state(&psi, x);
        var_z.push(dz.var_m());
        var_x.push(dx.var_m());
        let ratio = (dz.var_m() / scaling_function_variance()).sqrt() / fcs_width(l);
        width_worst = width_worst.max((ratio - 1.0).abs());
        let shift = dx.modified(0.5).peak_f() - dx.peak_f();
        if l == 14 {
            shift14 = shift;
        }
        if l == 18 {
            shift18 = shift;
        }
    }
    let ez = fit_power_law(&ls_f, &var_z).unwrap().exponent;
    let ex = fit_power_law(&ls_f, &var_x).unwrap().exponent;
    let shift_dev = (shift14 - shift18).abs() / shift18.abs();
    let pass = (ez - 1.75).abs() <= 0.175
        && (ex - 1.0).abs() <= 0.10
        && width_worst <= 0.15
        && shift_dev <= 0.15;
    verdict(
        "09 magnetization statistics variance laws and peak shift",
        pass,
        &format!(
            "variance exponents z {ez:.3} (want 7/4), x {ex:.3} (want 1), width prefactor dev {width_worst:.2e}, \
             reweighted peak shift L-dev {shift_dev:.2e}"
        ),
    );
}

#[test]
fn c10_sampled_outcomes_follow_the_bit_statistics() {
    let l = 6;
    let u = 0.7;
    let x = UnitVector3::x_axis();
    let psi = critical_ground_state(l, true).unwrap();
    let spec = ProtocolSpec::new(l, u, x);
    let sampler = OutcomeSampler::prepare(&psi, &spec).unwrap();
    let mut rng = rng(110);
    let n = 100_000;
    let nf = n as f64;
    let mut bit_sum = vec![0.0f64; l];
    let mut pair_sum = vec![0.0f64; l * l];
    for _ in 0..n {
        let s = sampler.sample(&mut rng).unwrap();
        for j in 0..l {
            let aj = s.outcome.sign(j) as f64;
            bit_sum[j] += aj;
            for k in j + 1..l {
                pair_sum[j * l + k] += aj * s.outcome.sign(k) as f64;
            }
        }
    }
    let c2 = (2.0 * u).cos();
    let mut worst_z = 0.0f64;
    for j in 0..l {
        let mean = bit_sum[j] / nf;
        let expected = c2 * psi.expectation_pauli_string(&[(j, x)]).re;
        let sigma = ((1.0 - mean * mean).max(1e-12) / nf).sqrt();
        worst_z = worst_z.max((mean - expected).abs() / sigma);
    }
    for j in 0..l {
        for k in j + 1..l {
            let prod = pair_sum[j * l + k] / nf;
            let conn = prod - (bit_sum[j] / nf) * (bit_sum[k] / nf);
            let raw = psi.expectation_pauli_string(&[(j, x), (k, x)]).re;
            let expected = c2
                * c2
                * (raw
                    - psi.expectation_pauli_string(&[(j, x)]).re
                        * psi.expectation_pauli_string(&[(k, x)]).re);
            let sigma = ((1.0 - prod * prod).max(1e-12) / nf).sqrt();
            worst_z = worst_z.max((conn - expected).abs() / sigma);
        }
    }

    // exhaustive chain-rule probabilities against direct projections
    let l4 = 4;
    let psi4 = critical_ground_state(l4, true).unwrap();
    let spec4 = ProtocolSpec::new(l4, u, x);
    let joint = entangled_joint(&psi4, &spec4).unwrap();
    let frames = spec4.frames();
    let mut worst_p = 0.0f64;
    let mut total = 0.0;
    for idx in 0..1usize << l4 {
        let outcome = OutcomeString::from_index(idx, l4);
        let mut work = joint.clone();
        let mut log_p = 0.0;
        for j in 0..l4 {
            let spinor = frames[j].n.eigenvector(outcome.sign(j));
            log_p += work.contract_site(0, &spinor).unwrap().ln();
        }
        let p_chain = log_p.exp();
        total += p_chain;
        let (_, p_direct) = run_bruteforce(&psi4, &spec4, &outcome).unwrap();
        worst_p = worst_p.max((p_chain - p_direct).abs());
    }
    let pass = worst_z < 4.0 && worst_p < 1e-10 && (total - 1.0).abs() < 1e-10;
    verdict(
        "10 outcome sampling statistics and probabilities",
        pass,
        &format!(
            "max z-score {worst_z:.2} over means and pairs ({n} draws), chain-rule vs direct dev {worst_p:.2e}"
        ),
    );
}

#[test]
fn c11_ensemble_identities_and_negativity_windows() {
    // damping identities on the dense ensemble
    let l = 8;
    let psi = critical_ground_state(l, true).unwrap();
    let mut worst_id = 0.0f64;
    let protocols = [
        ProtocolSpec::new(l, 0.35, UnitVector3::z_axis()),
        ProtocolSpec::new(l, 0.8, UnitVector3::x_axis()),
        ProtocolSpec::new(l, 1.1, UnitVector3::from_polar(1.0, 0.4)),
    ];
    let strings: [&[usize]; 3] = [&[3], &[1, 5], &[0, 3, 6]];
    for protocol in &protocols {
        let rho = assemble(&psi, &MixedEnsembleSpec::decoded(protocol.clone())).unwrap();
        let frames = protocol.frames();
        let s = (2.0 * protocol.u).sin();
        for sites in strings {
            for (class, power) in [
                (AxisClass::Axis, 0i32),
                (AxisClass::Perp, sites.len() as i32),
                (AxisClass::Cross, sites.len() as i32),
            ] {
                let got = mixed_correlator(&rho, protocol, sites, class).unwrap();
                let ops: Vec<(usize, UnitVector3)> = sites
                    .iter()
                    .map(|&j| (j, class_axis(&frames[j], class).unwrap()))
                    .collect();
                let want = s.powi(power) * psi.expectation_pauli_string(&ops).re;
                worst_id = worst_id.max((got - want).abs());
            }
        }
    }

    // negativity growth windows
    let ls = [6, 8, 10, 12];
    let scan_z = negativity_scan(UnitVector3::z_axis(), &ls, &[0.0, 1.0]).unwrap();
    let scan_x = negativity_scan(UnitVector3::x_axis(), &ls, &[0.0, 0.5, 1.0, 1.5]).unwrap();
    let c0 = scan_z.fits[0].c_eff;
    let cz1 = scan_z.fits[1].c_eff;
    let xs: Vec<f64> = scan_x.fits.iter().map(|f| f.c_eff).collect();
    let x_increase = xs
        .windows(2)
        .map(|w| w[1] - w[0])
        .fold(f64::NEG_INFINITY, f64::max);
    let pass = worst_id < 1e-12
        && (0.4..=0.7).contains(&c0)
        && cz1 < 0.1
        && x_increase <= 1e-6;
    verdict(
        "11 averaged-ensemble identities and negativity growth",
        pass,
        &format!(
            "identity dev {worst_id:.2e}, perfect-protocol coefficient {c0:.4} in [0.4, 0.7], \
             relevant-basis coefficient {cz1:.3} < 0.1, transverse-basis max step {x_increase:.2e}"
        ),
    );
}

#[test]
fn c12_parent_operators_are_isospectral_and_frustration_free() {
    let l = 8;
    let dim = 1usize << l;
    let psi = critical_ground_state(l, true).unwrap();
    let all_plus = vec![1i8; l];
    let table = strange_correlators(&psi, &all_plus, UnitVector3::z_axis()).unwrap();

    // reference spectrum from the symmetric dense chain
    let diag = ising::zz_diagonal(l, true);
    let mut hc = vec![0.0f64; dim * dim];
    for j in 0..dim {
        let mut e = vec![0.0f64; dim];
        e[j] = 1.0;
        let mut out = vec![0.0f64; dim];
        ising::hamiltonian_matvec(l, &diag, &e, &mut out);
        for i in 0..dim {
            hc[i * dim + j] = out[i];
        }
    }
    let wc = lapack::sym_eigenvalues(&mut hc, dim).unwrap();

    // the similarity-transformed chain has the same spectrum; conditioning
    // of the transform grows with strength, so the bound is checked at
    // moderate strengths
    let mut worst_spec = 0.0f64;
    for alpha in [1.0, 2.0] {
        let u = (-alpha as f64).exp();
        let mut ha = vec![0.0f64; dim * dim];
        for j in 0..dim {
            let mut amps = vec![Complex64::new(0.0, 0.0); dim];
            amps[j] = Complex64::new(1.0, 0.0);
            let basis = Statevector::from_amplitudes(amps).unwrap();
            let col = parent_hamiltonian_apply(
                &basis,
                &table,
                &all_plus,
                u,
                ParentVariant::NonHermitian,
            )
            .unwrap();
            for i in 0..dim {
                ha[i * dim + j] = col[i].re;
            }
        }
        let mut re: Vec<f64> = lapack::real_eigenvalues(&mut ha, dim)
            .unwrap()
            .into_iter()
            .map(|w| w.re)
            .collect();
        re.sort_by(|a, b| a.partial_cmp(b).unwrap());
        for (a, b) in wc.iter().zip(&re) {
            worst_spec = worst_spec.max((a - b).abs());
        }
    }

    // the projector-square parent annihilates its ground state term by term
    let mut worst_res = 0.0f64;
    for alpha in [3.0, 4.0] {
        let u = (-alpha as f64).exp();
        let gauss = gaussian_form_state(&table, u).unwrap();
        for j in 0..l {
            let r = conjugated_projector_apply(&gauss, &table, &all_plus, u, j).unwrap();
            worst_res = worst_res.max(amp_norm(&r));
        }
        let r = parent_hamiltonian_apply(&gauss, &table, &all_plus, u, ParentVariant::Exact)
            .unwrap();
        worst_res = worst_res.max(amp_norm(&r));
    }
    verdict(
        "12 parent operators: spectrum equality and frustration freedom",
        worst_spec < 1e-10 && worst_res < 1e-6,
        &format!("sorted-spectrum dev {worst_spec:.2e} (strengths 1, 2), residual {worst_res:.2e} (strengths 3, 4)"),
    );
}

#[test]
fn c13_two_axis_scan_shows_the_restoration_ridge() {
    let l = 12;
    let psi = critical_ground_state(l, true).unwrap();
    let axs: Vec<f64> = vec![-0.2, -0.1, 0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8];
    let ays: Vec<f64> = vec![0.0, 0.2, 0.4, 0.6, 0.8];
    let chord =
        |ell: usize| (l as f64 / PI) * (PI * ell as f64 / l as f64).sin();
    let mut worst_ridge = 0.0f64;
    let mut worst_min = f64::NEG_INFINITY;
    for &ay in &ays {
        let mut ridge = f64::INFINITY;
        let mut row_min = f64::INFINITY;
        for &ax in &axs {
            let strength = (ax * ax + ay * ay).sqrt();
            let state = if strength < 1e-14 {
                psi.clone()
            } else {
                let axes: Vec<UnitVector3> = (0..l)
                    .map(|j| {
                        let sy = if j % 2 == 0 { ay } else { -ay };
                        UnitVector3::new(ax, sy, 0.0).unwrap()
                    })
                    .collect();
                deform(
                    &psi,
                    &[DeformTerm {
                        alpha: -strength,
                        axes,
                        signs: vec![1; l],
                    }],
                )
                .unwrap()
            };
            let mut xs = Vec::new();
            let mut ys = Vec::new();
            for ell in 2..=l / 2 {
                let region: Vec<usize> = (0..ell).collect();
                ys.push(state.renyi_entropy(&region, 1.0).unwrap());
                xs.push(chord(ell));
            }
            let (slope, _, _) = fit_log_coefficient(&xs, &ys).unwrap();
            let c = 3.0 * slope;
            ridge = ridge.min((c - 0.5).abs());
            row_min = row_min.min(c);
        }
        worst_ridge = worst_ridge.max(ridge);
        worst_min = worst_min.max(row_min);
    }
    verdict(
        "13 two-axis deformation ridge restores the critical coefficient",
        worst_ridge <= 0.025 && worst_min < 0.45,
        &format!(
            "worst per-row ridge dev {worst_ridge:.3} (5% of 1/2), worst row minimum {worst_min:.3} < 0.45"
        ),
    );
}
