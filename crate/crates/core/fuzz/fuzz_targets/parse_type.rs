#![no_main]

use herbrand::syntax::parse_type;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(t) = parse_type(text) {
        assert_eq!(parse_type(&t.to_string()).expect("printed type reparses"), t);
    }
});
