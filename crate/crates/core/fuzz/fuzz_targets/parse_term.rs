#![no_main]

use herbrand::syntax::{parse_raw_term, parse_term_tuple};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(t) = parse_raw_term(text) {
        let printed = t.to_string();
        let back = parse_raw_term(&printed).expect("printed term reparses");
        assert_eq!(back.to_string(), printed);
    }
    let _ = parse_term_tuple(text);
});
