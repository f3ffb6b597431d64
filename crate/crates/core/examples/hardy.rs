//! Holomorphic extension of atomic boundary data and its H^p profile along a
//! radial ladder.

use num_complex::Complex64;
use vekua::atoms::{make_moment_atom, moment_order, AtomicDistribution};
use vekua::hardy::{hardy_extension, hp_norm, poisson_kernels, RadialLadder, DEFAULT_LADDER};

fn main() -> vekua::Result<()> {
    let p = 0.75;
    let mut h = AtomicDistribution::new();
    h.push(
        Complex64::new(1.0, 0.0),
        make_moment_atom(p, moment_order(p), 1.0, 0.5)?,
    );
    h.push(
        Complex64::new(0.5, 0.0),
        make_moment_atom(p, moment_order(p), 4.0, 1.5)?,
    );

    let k = poisson_kernels(0.5, 0.3)?;
    println!("P_0.5(0.3) = {:.6}, Q_0.5(0.3) = {:.6}", k.p, k.q);

    for r in [0.5, 0.9, 0.99] {
        let z = Complex64::from_polar(r, 1.0);
        println!("H({z:.3}) = {:.5}", hardy_extension(&h, z)?);
    }

    let ladder = RadialLadder::new(DEFAULT_LADDER.to_vec(), 4096)?;
    let profile = hp_norm(&|z| hardy_extension(&h, z), p, &ladder)?;
    for (r, v) in &profile.per_radius {
        println!("  r = {r:<6} M_p = {v:.5}");
    }
    println!(
        "H^p estimate {:.5}, contraction {:.3}, stable {}",
        profile.value,
        profile.contraction,
        profile.is_stable()
    );
    Ok(())
}
