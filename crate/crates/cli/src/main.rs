use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let r = phasespace_cli::run(std::env::args_os());
    if !r.stdout.is_empty() {
        let mut out = std::io::stdout().lock();
        let _ = writeln!(out, "{}", r.stdout.trim_end());
    }
    if !r.stderr.is_empty() {
        eprint!("{}", r.stderr);
    }
    ExitCode::from(r.code as u8)
}
