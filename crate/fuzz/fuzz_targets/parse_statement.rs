#![no_main]

use libfuzzer_sys::fuzz_target;
use ringproof::syntax::{format_statement, parse_statement};

fuzz_target!(|data: &str| {
    if let Ok(st) = parse_statement(data) {
        let text = format_statement(&st);
        let back = parse_statement(&text).expect("printed statement reparses");
        assert_eq!(format_statement(&back), text);
    }
});
