//! One line per acceptance criterion. Checks listed in `KNOWN_FAILURES` are
//! printed as failing and do not abort the run; any other failure does.

use std::time::Instant;

use qkm::verify::{criterion, CRITERIA};

/// `T̂_b R_≠/24` from the printed closed formula does not reproduce the
/// creation identity at d = 2 (it even has a λ⁰ term).
const KNOWN_FAILURES: [&str; 1] = ["creation_f1_printed_r_neq"];

fn main() {
    let only: Option<u8> = std::env::args().skip(1).find_map(|a| a.parse().ok());
    let mut unexpected = Vec::new();
    for (id, _) in CRITERIA {
        if only.is_some_and(|o| o != id) {
            continue;
        }
        let t = Instant::now();
        let c = criterion(id).expect("criterion id");
        let status = if c.passed() { "PASS" } else { "FAIL" };
        println!("criterion {:>2} {status} {} ({:.1} s)", c.id, c.title, t.elapsed().as_secs_f64());
        for chk in &c.checks {
            if !chk.passed() {
                println!("    failing: {} d={} {:?}", chk.check, chk.d, chk.detail);
                if !KNOWN_FAILURES.contains(&chk.check.as_str()) {
                    unexpected.push(format!("criterion {id}: {}", chk.check));
                }
            }
        }
        for chk in &c.reported {
            let s = if chk.passed() { "holds" } else { "does not hold" };
            println!("    printed variant {}: {s}", chk.check);
        }
    }
    assert!(unexpected.is_empty(), "unexpected failures: {unexpected:?}");
}
