#![no_main]
//! The scenario parser and object builder must reject arbitrary input
//! gracefully: no panics, no unbounded allocation.

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(scenario) = workbench_cli::scenario::parse_scenario(text) {
        // building the environment parses matrices and checks morphisms;
        // keep the work bounded for large generated documents
        if text.len() < 4096 {
            let _ = workbench_cli::value::build_env(&scenario);
        }
    }
});
