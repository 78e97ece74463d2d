//! Full-size acceptance run: one PASS/FAIL line per criterion. Exits nonzero
//! if any criterion fails.

use projtomo_core::selftest::{criterion_count, run_criterion, Mode};

fn main() {
    let mut failed = 0;
    for id in 1..=criterion_count() {
        let outcome = run_criterion(id, Mode::Full).expect("id in range");
        println!("{}", outcome.line());
        if !outcome.pass {
            failed += 1;
        }
    }
    println!("{} of {} criteria passed", criterion_count() - failed, criterion_count());
    if failed > 0 {
        std::process::exit(1);
    }
}
