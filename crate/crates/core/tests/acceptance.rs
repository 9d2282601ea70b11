//! One PASS/FAIL line per acceptance criterion. Set `CYCLO_LONG=1` to add
//! the q = 5 zeta verification.

use cyclotomic::acceptance::{run, BLOCKED};
use cyclotomic::DEFAULT_SEED;

fn main() {
    let long = std::env::var("CYCLO_LONG").is_ok_and(|v| v != "0");
    let outcomes = run(long, DEFAULT_SEED, |o| println!("{}", o.line()));
    let passed = outcomes.iter().filter(|o| o.passed).count();
    let unexpected: Vec<_> = outcomes.iter().filter(|o| o.unexpected()).map(|o| o.id).collect();
    println!(
        "acceptance: {passed}/{} passed; known failures {:?}; unexpected {:?}",
        outcomes.len(),
        BLOCKED.iter().map(|b| b.0).collect::<Vec<_>>(),
        unexpected
    );
    if !unexpected.is_empty() {
        std::process::exit(1);
    }
}
