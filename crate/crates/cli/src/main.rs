use std::ffi::OsString;
use std::io::Write;
use std::panic;
use std::process::ExitCode;

use sacat_cli::{run, Failure, EXIT_FAIL, EXIT_USAGE};

fn configure_threads() -> Result<(), Failure> {
    let Ok(raw) = std::env::var("SACAT_THREADS") else {
        return Ok(());
    };
    let n: usize = raw.trim().parse().ok().filter(|&n| n > 0).ok_or_else(|| Failure {
        exit_code: EXIT_USAGE,
        message: format!("SACAT_THREADS must be a positive integer, got {raw:?}"),
    })?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| Failure { exit_code: EXIT_FAIL, message: e.to_string() })
}

fn fail(f: &Failure, json: bool) -> ExitCode {
    if json {
        println!("{}", serde_json::to_string_pretty(&f.to_json()).expect("JSON values serialize"));
    }
    eprintln!("error: {}", f.message);
    ExitCode::from(f.exit_code as u8)
}

fn main() -> ExitCode {
    let args: Vec<OsString> = std::env::args_os().collect();
    let wants_json = args.iter().any(|a| a == "--json");
    if let Err(f) = configure_threads() {
        return fail(&f, wants_json);
    }
    panic::set_hook(Box::new(|_| {}));
    let outcome = panic::catch_unwind(|| run(args.clone()));
    let (outcome, json) = match outcome {
        Ok(r) => r,
        Err(p) => {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "unknown".into());
            let f = Failure { exit_code: EXIT_FAIL, message: format!("internal error: {msg}") };
            return fail(&f, wants_json);
        }
    };
    match outcome {
        Ok(report) => {
            let mut out = std::io::stdout().lock();
            let _ = out.write_all(report.render(json && !report.machine.is_null()).as_bytes());
            ExitCode::from(report.exit_code as u8)
        }
        Err(f) => fail(&f, json || wants_json),
    }
}
