//! Runs a verification suite and prints one line per check.

use vekua::verify::{run_suite, VerifyConfig};

fn main() -> vekua::Result<()> {
    let suite = std::env::args().nth(1).unwrap_or_else(|| "hilbert".into());
    let cfg = VerifyConfig::default();
    for r in run_suite(&suite, &cfg)? {
        let verdict = format!("{:?}", r.verdict);
        println!("{verdict:<10} {:<45} worst {:.2e}", r.check_id, r.worst());
    }
    Ok(())
}
