mod cli;

use std::io::Write;

fn main() -> anyhow::Result<()> {
    let code = cli::run(
        std::env::args_os(),
        &mut std::io::stdout().lock(),
        &mut std::io::stderr().lock(),
    );
    std::io::stdout().flush()?;
    std::process::exit(code);
}
