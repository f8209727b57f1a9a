use std::process::ExitCode;

fn main() -> ExitCode {
    if let Some(threads) = std::env::var("WMOD_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        // an already-initialized pool is fine; the cap is best effort
        let _ = rayon::ThreadPoolBuilder::new().num_threads(threads.max(1)).build_global();
    }
    let outcome = wmod::cli::run(std::env::args_os());
    match &outcome.output {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &outcome.body) {
                eprintln!("cannot write {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None if outcome.code == 2 => eprint!("{}", outcome.body),
        None => print!("{}", outcome.body),
    }
    ExitCode::from(outcome.code as u8)
}
