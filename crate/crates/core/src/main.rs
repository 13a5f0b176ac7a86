use clap::Parser;

use abelian_hnp::cli::{run, Cli};

fn main() {
    let cli = Cli::parse();
    let mut out = std::io::BufWriter::new(std::io::stdout());
    let code = match run(cli, &mut out) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    };
    drop(out);
    std::process::exit(code);
}
