//! Runs a named experiment, as `abelian-hnp preset NAME` does. Defaults to
//! `thm1.5-wa`; artifacts go to a temporary directory.

use abelian_hnp::cli::presets::{run_preset, PRESETS};

fn main() -> abelian_hnp::Result<()> {
    let name = std::env::args().nth(1).unwrap_or_else(|| "thm1.5-wa".to_string());
    println!("available: {}", PRESETS.join(", "));
    let dir = std::env::temp_dir().join("abelian-hnp-preset");
    let ok = run_preset(&name, &dir, 0, &mut std::io::stdout())?;
    println!("artifacts in {}", dir.display());
    std::process::exit(if ok { 0 } else { 1 });
}
