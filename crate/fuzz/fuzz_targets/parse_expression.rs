#![no_main]

use libfuzzer_sys::fuzz_target;
use ringproof::syntax::{format_expression, parse_expression};

fuzz_target!(|data: &str| {
    if let Ok(e) = parse_expression(data) {
        let text = format_expression(&e);
        let back = parse_expression(&text).expect("printed expression reparses");
        assert_eq!(format_expression(&back), text);
    }
});
