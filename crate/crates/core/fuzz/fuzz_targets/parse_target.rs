#![no_main]

use herbrand::syntax::{parse_target, print_target};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(a) = parse_target(text) {
        let printed = print_target(&a);
        let back = parse_target(&printed).expect("printed target reparses");
        assert_eq!(print_target(&back), printed);
    }
});
