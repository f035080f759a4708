#![no_main]

use libfuzzer_sys::fuzz_target;
use repcolor::io::{parse_weights, write_weights};

fuzz_target!(|data: &[u8]| {
    let Some((&n, rest)) = data.split_first() else { return };
    let n = n as usize % 32;
    let Ok(text) = std::str::from_utf8(rest) else { return };
    if let Ok(w) = parse_weights(text, n) {
        assert_eq!(parse_weights(&write_weights(&w), n).unwrap(), w);
    }
});
