#![no_main]
//! Reports are re-read by tooling; parse-back must be total.

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let _ = workbench_cli::report::parse_report(text);
});
