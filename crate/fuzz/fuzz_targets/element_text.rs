#![no_main]

use libfuzzer_sys::fuzz_target;

use corering::format::{emit_element_text, parse_element_text};

// The text parser must never panic, and any element it accepts must
// survive an emit -> parse round trip unchanged.
fuzz_target!(|data: &[u8]| {
    let Ok(input) = std::str::from_utf8(data) else {
        return;
    };
    if input.len() > 16_384 {
        return;
    }
    if let Ok(element) = parse_element_text(input, None) {
        let emitted = emit_element_text(&element);
        let reparsed = parse_element_text(&emitted, Some(element.spec().involution))
            .expect("canonical emission must parse");
        assert_eq!(reparsed, element, "round trip changed the element");
    }
});
