//! Two competing deformations can cancel: a uniform transverse push
//! e^{a_x M_X} against a staggered e^{a_y M_Y^s}.
//!
//! Alone, each suppresses the effective central charge. Combined, the
//! staggered Y term shifts the point of restored criticality to
//! a_x = a_y^2 at small a_y: along that ridge c_eff returns to 1/2 while
//! the rest of the plane stays visibly damped.

use teleising::fit::fit_log_coefficient;
use teleising::ising;
use teleising::protocol::{deform, DeformTerm};
use teleising::state::{Statevector, UnitVector3};

fn c_eff(state: &Statevector, l: usize) -> Result<f64, Box<dyn std::error::Error>> {
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for ell in 2..=l / 2 {
        let region: Vec<usize> = (0..ell).collect();
        ys.push(state.renyi_entropy(&region, 1.0)?);
        xs.push(
            (l as f64 / std::f64::consts::PI) * (std::f64::consts::PI * ell as f64 / l as f64).sin(),
        );
    }
    Ok(3.0 * fit_log_coefficient(&xs, &ys)?.0)
}

fn two_axis(psi: &Statevector, l: usize, ax: f64, ay: f64) -> Result<Statevector, Box<dyn std::error::Error>> {
    let strength = (ax * ax + ay * ay).sqrt();
    if strength < 1e-14 {
        return Ok(psi.clone());
    }
    let axes: Vec<UnitVector3> = (0..l)
        .map(|j| {
            let sy = if j % 2 == 0 { ay } else { -ay };
            UnitVector3::new(ax, sy, 0.0)
        })
        .collect::<teleising::error::Result<_>>()?;
    let term = DeformTerm {
        alpha: -strength,
        axes,
        signs: vec![1; l],
    };
    Ok(deform(psi, &[term])?)
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let l = 12;
    let psi = ising::critical_ground_state(l, true)?;
    let axs = [-0.2, -0.1, 0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8];
    let ays = [0.0, 0.2, 0.4, 0.6, 0.8];

    print!("{:>6}", "ay\\ax");
    for ax in axs {
        print!("{ax:>7.1}");
    }
    println!();
    for ay in ays {
        print!("{ay:>6.1}");
        let mut ridge_ax = f64::NAN;
        let mut ridge_dev = f64::INFINITY;
        for ax in axs {
            let c = c_eff(&two_axis(&psi, l, ax, ay)?, l)?;
            if (c - 0.5).abs() < ridge_dev {
                ridge_dev = (c - 0.5).abs();
                ridge_ax = ax;
            }
            print!("{c:>7.3}");
        }
        println!("   ridge at ax = {ridge_ax:.1} (ay^2 = {:.2})", ay * ay);
    }
    println!("\nc_eff from chord-length entropy fits at l = {l}; 0.5 marks restored criticality");
    Ok(())
}
