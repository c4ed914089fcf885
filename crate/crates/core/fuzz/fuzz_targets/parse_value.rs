#![no_main]

use herbrand::semantics::{parse_value, Bound, Model};
use herbrand::syntax::parse_type;
use libfuzzer_sys::fuzz_target;

// First line is the type, the rest the value.
fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Some((ty, value)) = text.split_once('\n') else { return };
    let Ok(ty) = parse_type(ty) else { return };
    let model = Model::new(Bound::new(1, 256, 0).unwrap()).unwrap();
    if let Ok(v) = parse_value(value, &ty, &model) {
        let back = parse_value(&v.to_string(), &ty, &model).expect("printed value reparses");
        assert_eq!(back, v);
    }
});
