use num_complex::Complex64;
use vekua::sources::SourceTerm;
use vekua::vekua::{apply, Kernel, OperatorConfig};

fn ladder(kernel: Kernel, f: &SourceTerm, z: Complex64) -> Vec<Complex64> {
    [1.0, 2.0, 4.0, 8.0]
        .iter()
        .map(|k| apply(kernel, f, z, &OperatorConfig::default().scaled(*k).unwrap()).unwrap())
        .collect()
}

#[test]
fn arc_bump_values_settle_under_refinement() {
    let f = SourceTerm::arc_bump(5.94, 0.3, 1.0);
    for kernel in [Kernel::T, Kernel::TTilde] {
        for z in [
            Complex64::new(0.32, 0.0),
            Complex64::from_polar(0.9, 5.8),
            Complex64::from_polar(1.0, 2.0),
        ] {
            let v = ladder(kernel, &f, z);
            let steps: Vec<f64> = v.windows(2).map(|w| (w[1] - w[0]).norm()).collect();
            assert!(steps[2] < steps[0], "{kernel:?} {z}: {steps:?}");
            assert!(steps[2] < 1e-5, "{kernel:?} {z}: {steps:?}");
        }
    }
}

#[test]
fn closed_form_sources_are_resolved_at_every_rung() {
    let sources = [
        SourceTerm::monomial(2, 1),
        SourceTerm::radial_power(0.8),
        SourceTerm::monomial(0, 3),
    ];
    let z = Complex64::from_polar(0.7, 1.3);
    for f in &sources {
        let exact = f.closed_form_t(z).unwrap();
        for v in ladder(Kernel::T, f, z) {
            assert!((v - exact).norm() < 1e-6, "{f:?}: {v} vs {exact}");
        }
    }
}
