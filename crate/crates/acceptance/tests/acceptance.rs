use std::process::ExitCode;

use mourre_lab::acceptance;

fn main() -> ExitCode {
    println!("running {} acceptance criteria", acceptance::TITLES.len());
    let mut failed = 0;
    for id in 1..=acceptance::TITLES.len() {
        let c = acceptance::run(id);
        println!("{}", c.line());
        for f in &c.failures {
            println!("    {f}");
        }
        failed += !c.passed as usize;
    }
    println!("acceptance: {} passed, {failed} failed", acceptance::TITLES.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
