//! Periodic Hilbert transform of sampled boundary values and the continuity
//! ratio for a boundary value `Σ cₙaₙ + T(f)_b`.

use num_complex::Complex64;
use vekua::atoms::{make_moment_atom, moment_order, AtomicDistribution};
use vekua::hardy::RadialLadder;
use vekua::hilbert::{
    boundary_trace, continuity_experiment, hilbert_pv, BoundaryValueDecomposition, CircleSample,
};
use vekua::quadrature::build_circle_grid;
use vekua::sources::SourceTerm;
use vekua::vekua::{Kernel, OperatorConfig};

fn main() -> vekua::Result<()> {
    let grid = build_circle_grid(64)?;
    let u = CircleSample::from_fn(&grid, |t| {
        Complex64::new((3.0 * t).cos() + 0.5 * (7.0 * t).sin(), 0.0)
    })?;
    let hu = hilbert_pv(&u)?;
    let expected = CircleSample::from_fn(&grid, |t| {
        Complex64::new((3.0 * t).sin() - 0.5 * (7.0 * t).cos(), 0.0)
    })?;
    let err = hu
        .values
        .iter()
        .zip(&expected.values)
        .map(|(a, b)| (a - b).norm())
        .fold(0.0, f64::max);
    println!("H(cos 3θ + sin 7θ / 2): max error {err:.1e}");

    let grid = build_circle_grid(256)?;
    let cfg = OperatorConfig::default();
    let p = 0.75;
    let f = SourceTerm::monomial(0, 1);
    let mut atoms = AtomicDistribution::new();
    atoms.push(
        Complex64::new(0.8, 0.0),
        make_moment_atom(p, moment_order(p), 2.0, 0.6)?,
    );
    let sample = BoundaryValueDecomposition {
        atomic_part: atoms,
        error_part: boundary_trace(Kernel::T, &f, &grid, &cfg)?,
        p,
        gamma: 2.0,
    };
    let ladder = RadialLadder::new(vec![0.9, 0.99, 0.999], 256)?;
    let report = continuity_experiment(&[sample], &ladder)?;
    for row in &report.rows {
        println!(
            "atomic {:.4}  error {:.4}  denominator {:.4}  ratio {:?}",
            row.transformed_atomic, row.transformed_error, row.denominator, row.ratio
        );
    }
    Ok(())
}
