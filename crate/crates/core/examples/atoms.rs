//! Builds Haar, moment and constant atoms, validates them, and evaluates an
//! atomic sum together with its quasi-norm bound.

use num_complex::Complex64;
use vekua::atoms::{
    eval_atomic, make_constant_atom, make_haar_atom, make_moment_atom, moment_order,
    quasinorm_upper, validate_atom, AtomicDistribution,
};

fn main() -> vekua::Result<()> {
    let haar = make_haar_atom(1.0, 0.5, 1.0)?;
    let p = 0.3;
    let moment = make_moment_atom(p, moment_order(p), 2.0, 0.8)?;
    let constant = make_constant_atom(p, 0.5)?;
    for (name, atom) in [
        ("haar", &haar),
        ("moment", &moment),
        ("constant", &constant),
    ] {
        let report = validate_atom(atom, 1e-12);
        println!(
            "{name:>8}: p = {}, sup |a| = {:.4}, bound = {:.4}, worst residual {:.1e}, {:?}",
            atom.p,
            atom.sup_abs(),
            atom.size_bound(),
            report.worst(),
            report.verdict
        );
    }
    println!(
        "moment atom with p = {p} annihilates θ^k for k ≤ {}",
        moment_order(p)
    );

    let mut sum = AtomicDistribution::new();
    sum.push(Complex64::new(0.5, 0.0), moment.clone());
    sum.push(
        Complex64::new(-0.25, 0.0),
        make_moment_atom(p, moment_order(p), 4.5, 0.3)?,
    );
    println!(
        "quasi-norm bound (Σ|c|^p)^(1/p) = {:.4}",
        quasinorm_upper(&sum, p)?
    );
    for theta in [1.7, 2.0, 2.3, 4.5] {
        println!("  h({theta}) = {:.4}", eval_atomic(&sum, theta).re);
    }
    Ok(())
}
