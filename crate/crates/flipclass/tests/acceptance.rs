//! One line per acceptance criterion. The h = 6 tier runs only with
//! `FLIPCLASS_HEAVY=1`.

use std::process::ExitCode;

use flipclass::verify::{self, Options, Suite};

fn main() -> ExitCode {
    let heavy = std::env::var("FLIPCLASS_HEAVY").is_ok_and(|v| v == "1");
    let workers = std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1);
    let opts = Options { suite: Suite::Full, heavy, workers, ..Options::default() };
    let checks = verify::run(&opts, |c| println!("{}", c.line()));
    if !heavy {
        println!("[SKIPPED] heavy tier (h = 6); set FLIPCLASS_HEAVY=1 to run it");
    }
    let unexpected: Vec<String> = checks
        .iter()
        .flat_map(|c| c.unexpected_failures().into_iter().map(move |f| format!("{}: {f}", c.id)))
        .collect();
    let passed = checks.iter().filter(|c| c.status == verify::Status::Pass).count();
    println!("acceptance: {passed}/{} criteria passed, {} unexpected failures", checks.len(), unexpected.len());
    if unexpected.is_empty() {
        ExitCode::SUCCESS
    } else {
        for u in &unexpected {
            println!("unexpected failure in {u}");
        }
        ExitCode::FAILURE
    }
}
