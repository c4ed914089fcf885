#![no_main]

use herbrand::syntax::{parse_formula, print_formula};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(a) = parse_formula(text) {
        let printed = print_formula(&a);
        let back = parse_formula(&printed).expect("printed formula reparses");
        assert!(back.alpha_eq(&a));
        assert_eq!(print_formula(&back), printed);
        let _ = herbrand::types::up_types(&a);
        let _ = herbrand::interpretation::translate_down(&a);
    }
});
