//! One teleported qubit, end to end: entangle, measure, decode.
//!
//! Sweeps the entangler strength and prints, per measurement outcome, the
//! outcome probability and the fidelity of the decoded state against the
//! input. At u = pi/4 the protocol is perfect: both outcomes are equally
//! likely and the decoded state is the input. Away from that point the
//! decoded state is the input pushed by e^{(alpha/2) a Z} with
//! alpha = -ln(tan u).

use num_complex::Complex64;
use teleising::protocol::{
    closed_form_penultimate, decode, deform, run_bruteforce, DeformTerm, OutcomeString,
    ProtocolSpec,
};
use teleising::state::{Statevector, UnitVector3};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut psi = Statevector::from_amplitudes(vec![
        Complex64::new(0.6, 0.2),
        Complex64::new(-0.5, 0.59),
    ])?;
    psi.set_log_norm(0.0);
    let z = UnitVector3::z_axis();

    println!("{:>6} {:>4} {:>12} {:>14} {:>14}", "u", "a", "p(a)", "route dev", "decode infid");
    for u in [0.3, 0.6, std::f64::consts::FRAC_PI_4, 1.0, 1.3] {
        let spec = ProtocolSpec::new(1, u, z);
        for a in [1i8, -1] {
            let outcome = OutcomeString::from_signs(vec![a])?;
            let (pen, n) = closed_form_penultimate(&psi, &spec, &outcome)?;
            let p = n * u.sin() * u.cos();
            let (brute, p_brute) = run_bruteforce(&psi, &spec, &outcome)?;
            let decoded = decode(&pen, &spec, &outcome)?;
            // the decoded state is the axis-aligned non-unitary push of the input
            let target = deform(
                &psi,
                &[DeformTerm {
                    alpha: spec.alpha(),
                    axes: vec![z],
                    signs: vec![a],
                }],
            )?;
            let route_dev = (p - p_brute).abs().max(1.0 - pen.fidelity(&brute));
            println!(
                "{:>6.3} {:>4} {:>12.6} {:>14.2e} {:>14.2e}",
                u,
                a,
                p,
                route_dev,
                1.0 - decoded.fidelity(&target)
            );
        }
    }
    Ok(())
}
