use std::process::ExitCode;

fn main() -> ExitCode {
    let seed = std::env::var(fraczee_cli::SEED_ENV).ok();
    let mut out = std::io::stdout().lock();
    match fraczee_cli::run(std::env::args_os(), seed.as_deref(), &mut out) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("fraczee: {}", f.msg);
            ExitCode::from(f.code)
        }
    }
}
