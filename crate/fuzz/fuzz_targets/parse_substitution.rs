#![no_main]

use libfuzzer_sys::fuzz_target;
use ringproof::syntax::{format_substitution, parse_substitution};

fuzz_target!(|data: &str| {
    if let Ok(s) = parse_substitution(data) {
        let text = format_substitution(&s);
        let back = parse_substitution(&text).expect("printed substitution reparses");
        assert_eq!(back, s);
    }
});
