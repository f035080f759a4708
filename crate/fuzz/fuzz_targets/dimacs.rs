#![no_main]

use libfuzzer_sys::fuzz_target;
use repcolor::io::{parse_dimacs, write_dimacs};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(g) = parse_dimacs(text) {
        // whatever parses must survive a round trip
        let again = parse_dimacs(&write_dimacs(&g)).expect("written graph parses");
        assert_eq!(g, again);
    }
});
