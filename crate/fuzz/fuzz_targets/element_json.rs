#![no_main]

use libfuzzer_sys::fuzz_target;

use corering::format::{element_from_json, element_to_json};

// The JSON decoder must never panic; accepted elements must re-emit to
// a fixed point of parse -> emit.
fuzz_target!(|data: &[u8]| {
    let Ok(input) = std::str::from_utf8(data) else {
        return;
    };
    if input.len() > 16_384 {
        return;
    }
    if let Ok(element) = element_from_json(input) {
        let emitted = element_to_json(&element);
        let reparsed = element_from_json(&emitted).expect("canonical emission must parse");
        assert_eq!(reparsed, element);
        assert_eq!(element_to_json(&reparsed), emitted, "emission not stable");
    }
});
