//! Strong measurement along the ordering axis: the teleported state is
//! almost a product state with algebraic crumbs.
//!
//! At large alpha (weak entangler) the z-basis protocol with the uniform
//! outcome lands on a state close to all-up whose connected transverse
//! correlations follow the pair potential inherited from the critical
//! chain: the leading behavior is -2 u^2 V(i, j) with V a connected
//! strange correlator falling as 1/d^4. The second Renyi entropy obeys an
//! area law set by the same potential.

use teleising::ising::critical_ground_state;
use teleising::protocol::{closed_form_penultimate, OutcomeString, ProtocolSpec};
use teleising::state::UnitVector3;
use teleising::strange::{perturbative_correlators, renyi2_perturbative, strange_correlators};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let l = 12;
    let x = UnitVector3::x_axis();
    let z = UnitVector3::z_axis();
    let psi = critical_ground_state(l, true)?;
    let table = strange_correlators(&psi, &vec![1i8; l], z)?;
    let pairs: Vec<(usize, usize)> = (2..=5).map(|d| ((l - d) / 2, (l - d) / 2 + d)).collect();

    for alpha in [3.0, 4.0] {
        let u = (-alpha as f64).exp().atan();
        let spec = ProtocolSpec::from_alpha(l, alpha, z);
        let (pen, _) = closed_form_penultimate(&psi, &spec, &OutcomeString::uniform(l, 1))?;
        let pert = perturbative_correlators(&table, u, &pairs)?;
        println!("alpha = {alpha} (u = {u:.4})");
        println!("{:>4} {:>14} {:>14} {:>10}", "d", "<XX>_c dense", "pair channel", "rel dev");
        for (t, &(i, j)) in pairs.iter().enumerate() {
            let ed = pen.expectation_pauli_string(&[(i, x), (j, x)]).re
                - pen.expectation_pauli_string(&[(i, x)]).re
                    * pen.expectation_pauli_string(&[(j, x)]).re;
            let f = pert.perp_connected[t];
            println!(
                "{:>4} {:>14.6e} {:>14.6e} {:>10.2e}",
                j - i,
                ed,
                f,
                (ed - f).abs() / f.abs()
            );
        }
        println!("{:>4} {:>14} {:>14} {:>10}", "ell", "S2 dense", "S2 channel", "rel dev");
        for ell in 3..=l / 2 {
            let region: Vec<usize> = (0..ell).collect();
            let ed = pen.renyi_entropy(&region, 2.0)?;
            let f = renyi2_perturbative(&table, &region, u)?;
            println!(
                "{:>4} {:>14.6e} {:>14.6e} {:>10.2e}",
                ell,
                ed,
                f,
                (ed - f).abs() / f.abs()
            );
        }
        println!();
    }
    Ok(())
}
