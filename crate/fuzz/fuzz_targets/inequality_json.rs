#![no_main]

use libfuzzer_sys::fuzz_target;
use repcolor::json::{inequality_from_json, inequality_to_json};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(ineq) = inequality_from_json(text) {
        let back = inequality_to_json(&ineq).to_string();
        assert_eq!(inequality_from_json(&back).unwrap(), ineq);
    }
});
