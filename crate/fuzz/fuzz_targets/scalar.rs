#![no_main]

use libfuzzer_sys::fuzz_target;

use corering::scalar::{fmt_rational, parse_gaussian, parse_rational, parse_residue};

// Scalar parsers for all three domains: no panics, and display forms
// reparse to the same value.
fuzz_target!(|data: &[u8]| {
    let Ok(input) = std::str::from_utf8(data) else {
        return;
    };
    if input.len() > 4_096 {
        return;
    }
    if let Ok(r) = parse_rational(input) {
        let shown = fmt_rational(&r);
        assert_eq!(parse_rational(&shown).expect("canonical form parses"), r);
    }
    if let Ok(g) = parse_gaussian(input) {
        let shown = g.to_string();
        assert_eq!(parse_gaussian(&shown).expect("canonical form parses"), g);
    }
    for modulus in [2u64, 6, 12, u64::MAX] {
        if let Ok(r) = parse_residue(input, modulus) {
            assert!(r < modulus);
        }
    }
});
