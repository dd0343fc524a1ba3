//! Baseline checks on the critical chain before any teleportation.
//!
//! Uses the free-fermion engine in the thermodynamic limit: two-point
//! functions with their known power laws (ZZ falls as d^{-1/4}, YY as
//! d^{-9/4}, connected XX as d^{-2}), the transverse magnetization 2/pi,
//! and the entanglement entropy of an interval growing as (c/3) ln ell
//! with c = 1/2.

use teleising::fit::{fit_log_coefficient, fit_power_law};
use teleising::gaussian::{
    correlation_matrix, entropies_from_correlation, marginal_correlators, CorrelationSource,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let seps: Vec<usize> = (2..=10).map(|k| 10 * k).collect();
    let table = marginal_correlators(0.0, &seps)?;
    println!("{:>6} {:>14} {:>14} {:>14}", "d", "xx_connected", "yy", "zz");
    for (k, &d) in seps.iter().enumerate() {
        println!(
            "{:>6} {:>14.6e} {:>14.6e} {:>14.6e}",
            d, table.xx_connected[k], table.yy[k], table.zz[k]
        );
    }
    let sep_f: Vec<f64> = seps.iter().map(|&d| d as f64).collect();
    println!(
        "\ndecay powers: xx {:.4} (2), yy {:.4} (9/4), zz {:.4} (1/4)",
        -fit_power_law(&sep_f, &table.xx_connected)?.exponent,
        -fit_power_law(&sep_f, &table.yy)?.exponent,
        -fit_power_law(&sep_f, &table.zz)?.exponent,
    );
    println!(
        "<X> = {:.8} against 2/pi = {:.8}",
        table.x_mean,
        2.0 / std::f64::consts::PI
    );

    let ells: Vec<usize> = (1..=7).map(|k| 40 * k + 20).collect();
    let entropies: Vec<f64> = ells
        .iter()
        .map(|&ell| {
            let cm = correlation_matrix(CorrelationSource::Thermodynamic { alpha: 0.0 }, ell)?;
            Ok(entropies_from_correlation(&cm, &[1.0])?[0])
        })
        .collect::<teleising::error::Result<_>>()?;
    let ell_f: Vec<f64> = ells.iter().map(|&e| e as f64).collect();
    let (slope, _, stderr) = fit_log_coefficient(&ell_f, &entropies)?;
    println!(
        "entropy growth: c_eff = {:.5} +- {:.5} (want 1/2), ell up to {}",
        3.0 * slope,
        3.0 * stderr,
        ells.last().unwrap()
    );
    Ok(())
}
