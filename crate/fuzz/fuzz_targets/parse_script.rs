#![no_main]

use libfuzzer_sys::fuzz_target;
use ringproof::syntax::{format_script, parse_script};

fuzz_target!(|data: &str| {
    if let Ok(s) = parse_script(data) {
        let text = format_script(&s);
        let back = parse_script(&text).expect("printed script reparses");
        assert_eq!(format_script(&back), text);
    }
});
