//! Draw outcome strings from the exact joint distribution and compare their
//! statistics with the closed-form rules.
//!
//! For measurement axis n at entangler angle u, each outcome bit satisfies
//! mean(a_j) = cos(2u) <O_j(n)> on the input state, and connected bit pairs
//! reproduce cos^2(2u) times the connected correlator. The sampler draws
//! sites left to right, conditioning the joint state on each result.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use teleising::ising;
use teleising::protocol::{OutcomeSampler, ProtocolSpec};
use teleising::state::UnitVector3;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let l = 6;
    let u = 0.7;
    let x = UnitVector3::x_axis();
    let psi = ising::critical_ground_state(l, true)?;
    let spec = ProtocolSpec::new(l, u, x);
    let sampler = OutcomeSampler::prepare(&psi, &spec)?;
    let mut rng = ChaCha8Rng::seed_from_u64(11);

    let n = 50_000usize;
    let nf = n as f64;
    let mut bit_sum = vec![0.0f64; l];
    let mut pair_sum = vec![0.0f64; l * l];
    for k in 0..n {
        let sampled = sampler.sample(&mut rng)?;
        if k < 4 {
            let pattern: String = sampled
                .outcome
                .signs()
                .iter()
                .map(|&s| if s > 0 { '+' } else { '-' })
                .collect();
            println!("draw {k}: {pattern}  p = {:.4e}", sampled.probability);
        }
        for j in 0..l {
            let aj = sampled.outcome.sign(j) as f64;
            bit_sum[j] += aj;
            for kk in j + 1..l {
                pair_sum[j * l + kk] += aj * sampled.outcome.sign(kk) as f64;
            }
        }
    }

    let c2 = (2.0 * u).cos();
    println!("\nbit means, {n} draws, u = {u} so cos(2u) = {c2:.4}");
    println!("{:>5} {:>10} {:>10} {:>7}", "site", "sampled", "expected", "z");
    let mut worst = 0.0f64;
    for j in 0..l {
        let mean = bit_sum[j] / nf;
        let expected = c2 * psi.expectation_pauli_string(&[(j, x)]).re;
        let sigma = ((1.0 - mean * mean).max(1e-12) / nf).sqrt();
        let z = (mean - expected).abs() / sigma;
        worst = worst.max(z);
        println!("{j:>5} {mean:>10.5} {expected:>10.5} {z:>7.2}");
    }

    println!("\nconnected bit pairs against cos^2(2u) <X_j X_k>_c");
    println!("{:>5} {:>5} {:>10} {:>10} {:>7}", "j", "k", "sampled", "expected", "z");
    for j in 0..l {
        for k in j + 1..l {
            let prod_mean = pair_sum[j * l + k] / nf;
            let conn = prod_mean - (bit_sum[j] / nf) * (bit_sum[k] / nf);
            let raw = psi.expectation_pauli_string(&[(j, x), (k, x)]).re;
            let xj = psi.expectation_pauli_string(&[(j, x)]).re;
            let xk = psi.expectation_pauli_string(&[(k, x)]).re;
            let expected = c2 * c2 * (raw - xj * xk);
            let sigma = ((1.0 - prod_mean * prod_mean).max(1e-12) / nf).sqrt();
            let z = (conn - expected).abs() / sigma;
            worst = worst.max(z);
            if j == 0 {
                println!("{j:>5} {k:>5} {conn:>10.5} {expected:>10.5} {z:>7.2}");
            }
        }
    }
    println!("\nworst z-score over all bits and pairs: {worst:.2} (should stay below ~4)");
    Ok(())
}
