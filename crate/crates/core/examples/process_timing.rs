use std::time::Instant;

use homconn_core::process::{default_m_cap, hitting_times, run_process};

fn main() {
    let n: u32 = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(100);
    let cap = default_m_cap(n);
    let start = Instant::now();
    let trace = run_process(n, 1, cap).expect("cap within range");
    let h = hitting_times(&trace);
    println!("n={n} m_cap={cap} elapsed={:?}", start.elapsed());
    println!("{h:?}");
}
