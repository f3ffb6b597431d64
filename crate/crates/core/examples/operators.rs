//! Evaluates `T(f)` and `T̃(f)` for a few catalog sources and compares the
//! quadrature against the closed forms where they exist.

use num_complex::Complex64;
use vekua::sources::SourceTerm;
use vekua::vekua::{apply, wirtinger_dzbar, Kernel, OperatorConfig};

fn main() -> vekua::Result<()> {
    let cfg = OperatorConfig::default();
    let z = Complex64::from_polar(0.6, 0.9);
    let sources = [
        SourceTerm::one(),
        SourceTerm::monomial(1, 2),
        SourceTerm::radial_power(0.8),
        SourceTerm::arc_bump(0.5, 0.7, 1.0),
    ];
    println!("z = {z:.4}");
    for f in &sources {
        let t = apply(Kernel::T, f, z, &cfg)?;
        let tt = apply(Kernel::TTilde, f, z, &cfg)?;
        let exact = f
            .closed_form_t(z)
            .map(|e| format!("{:.2e}", (e - t).norm()))
            .unwrap_or("-".into());
        let dz = wirtinger_dzbar(|w| apply(Kernel::T, f, w, &cfg), z, 1e-3)?;
        println!("{f:?}");
        println!("  T(f)  = {t:.6}   closed-form error {exact}");
        println!("  T~(f) = {tt:.6}");
        println!("  |dzbar T(f) - f| = {:.2e}", (dz - f.sample(z)).norm());
        let edge = apply(Kernel::TTilde, f, Complex64::from_polar(1.0, 2.0), &cfg)?;
        println!("  Re T~(f) on the circle = {:.1e}", edge.re);
    }
    Ok(())
}
