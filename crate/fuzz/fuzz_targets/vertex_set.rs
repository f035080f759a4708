#![no_main]

use libfuzzer_sys::fuzz_target;
use repcolor::io::parse_vertex_set;

fuzz_target!(|data: &[u8]| {
    let Some((&n, rest)) = data.split_first() else { return };
    let n = n as usize % 64;
    let Ok(text) = std::str::from_utf8(rest) else { return };
    if let Ok(s) = parse_vertex_set(text, n) {
        assert!(s.iter().all(|&v| v < n));
    }
});
