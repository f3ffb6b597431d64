//! Solves first- and second-order Schwarz problems and checks the PDE and
//! the boundary conditions of each solution.

use num_complex::Complex64;
use vekua::atoms::{make_moment_atom, moment_order, AtomicDistribution};
use vekua::hardy::{BoundaryData, TrigPolynomial};
use vekua::schwarz::{
    boundary_recovery, pde_residual, solve_first, solve_higher, test_battery, CheckConfig,
    SchwarzProblem,
};
use vekua::sources::SourceTerm;
use vekua::vekua::OperatorConfig;

fn main() -> vekua::Result<()> {
    let cfg = OperatorConfig::default();
    let check = CheckConfig::default();
    let points: Vec<Complex64> = [(0.3, 0.4), (0.6, 2.0), (0.8, 4.0)]
        .iter()
        .map(|(r, t)| Complex64::from_polar(*r, *t))
        .collect();

    let p = 0.75;
    let h = BoundaryData::Atomic(AtomicDistribution::single(
        Complex64::new(1.0, 0.0),
        make_moment_atom(p, moment_order(p), 1.0, 0.8)?,
    ));
    let first = solve_first(&SourceTerm::one(), &h, &cfg)?;
    println!(
        "first order: w(0.5) = {:.5}",
        first.eval(Complex64::new(0.5, 0.0))?
    );
    for report in [
        pde_residual(&first, &points, &check)?,
        boundary_recovery(&first, &test_battery(), &check)?,
    ] {
        println!(
            "  {}: worst {:.2e} ({:?})",
            report.check_id,
            report.worst(),
            report.verdict
        );
    }

    let problem = SchwarzProblem::higher(
        SourceTerm::monomial(1, 0),
        vec![h, BoundaryData::Trig(TrigPolynomial::cos(2))],
    );
    let second = solve_higher(&problem, &cfg)?;
    println!(
        "second order: w(0.5i) = {:.5}",
        second.eval(Complex64::new(0.0, 0.5))?
    );
    for report in [
        pde_residual(&second, &points, &check)?,
        boundary_recovery(&second, &test_battery(), &check)?,
    ] {
        println!(
            "  {}: worst {:.2e} ({:?})",
            report.check_id,
            report.worst(),
            report.verdict
        );
    }
    Ok(())
}
