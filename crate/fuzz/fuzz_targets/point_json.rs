#![no_main]

use libfuzzer_sys::fuzz_target;
use repcolor::json::{point_from_json, point_to_json};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(p) = point_from_json(text) {
        let back = point_to_json(&p).to_string();
        assert_eq!(point_from_json(&back).unwrap(), p);
    }
});
