#![no_main]

use libfuzzer_sys::fuzz_target;
use repcolor::io::{parse_ordering, write_ordering};

fuzz_target!(|data: &[u8]| {
    let Some((&n, rest)) = data.split_first() else { return };
    let n = n as usize % 32;
    let Ok(text) = std::str::from_utf8(rest) else { return };
    if let Ok(ord) = parse_ordering(text, n) {
        assert_eq!(ord.len(), n);
        assert_eq!(parse_ordering(&write_ordering(&ord), n).unwrap(), ord);
    }
});
