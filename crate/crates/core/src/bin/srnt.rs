use std::io::{self, Write};
use std::process;

fn main() {
    let stdout = io::stdout();
    let stderr = io::stderr();
    let mut out = io::BufWriter::new(stdout.lock());
    let mut err = stderr.lock();
    let code = srnt::cli::run(std::env::args_os(), &mut out, &mut err);
    let _ = out.flush();
    process::exit(code);
}
