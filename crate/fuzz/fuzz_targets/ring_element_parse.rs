#![no_main]
//! Element expressions come from untrusted scenario files; the parser must
//! never panic and the exponent cap must hold.

use libfuzzer_sys::fuzz_target;
use workbench_core::Ring;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let rings = [
        Ring::integers(),
        Ring::rationals(),
        Ring::modular(8u32).unwrap(),
        Ring::poly(Ring::rationals(), "x").unwrap(),
    ];
    for ring in rings {
        if let Ok(e) = ring.parse(text) {
            // displayed form must re-parse to the same element
            let shown = ring.fmt_elem(&e);
            assert_eq!(ring.parse(&shown).ok(), Some(e));
        }
    }
});
