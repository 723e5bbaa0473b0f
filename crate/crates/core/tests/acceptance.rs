use std::process::ExitCode;
use std::time::Duration;

use siegel_kr::selfcheck::{self, Check};

/// Wall-clock budget per criterion, in order.
const LIMITS: [(&str, Duration); 9] = [
    ("adm-oracle", Duration::from_secs(10)),
    ("phi-length", Duration::from_secs(60)),
    ("z-central", Duration::from_secs(120)),
    ("m-conservation", Duration::from_secs(60)),
    ("kostant-ce", Duration::from_secs(60)),
    ("ball-oracle", Duration::from_secs(60)),
    ("atlas", Duration::from_secs(30)),
    ("interior-cells", Duration::from_secs(30)),
    ("truncations", Duration::from_secs(60)),
];

fn verdict(check: &Check, limit: Duration) -> bool {
    let in_time = check.elapsed <= limit;
    let ok = check.passed && in_time;
    println!(
        "{} [{}] {} ({:.2}s / limit {}s): {}{}",
        if ok { "PASS" } else { "FAIL" },
        check.id,
        check.name,
        check.elapsed.as_secs_f64(),
        limit.as_secs(),
        check.detail,
        if in_time { "" } else { " [time limit exceeded]" }
    );
    ok
}

fn main() -> ExitCode {
    let checks = selfcheck::acceptance_checks();
    assert_eq!(checks.len(), LIMITS.len());
    let mut failures = 0;
    for (check, (id, limit)) in checks.iter().zip(LIMITS) {
        assert_eq!(check.id, id);
        if !verdict(check, limit) {
            failures += 1;
        }
    }
    println!("acceptance: {}/{} criteria pass", checks.len() - failures, checks.len());
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
