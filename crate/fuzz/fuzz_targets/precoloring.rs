#![no_main]

use libfuzzer_sys::fuzz_target;
use repcolor::io::{parse_precoloring, write_precoloring};

fuzz_target!(|data: &[u8]| {
    let Some((&n, rest)) = data.split_first() else { return };
    let n = n as usize % 32;
    let Ok(text) = std::str::from_utf8(rest) else { return };
    if let Ok(rho) = parse_precoloring(text, n) {
        assert_eq!(parse_precoloring(&write_precoloring(&rho), n).unwrap(), rho);
    }
});
