#![no_main]

use libfuzzer_sys::fuzz_target;
use ringproof::checker::{Manifest, TheoremRegistry};

fuzz_target!(|data: &str| {
    if let Ok(m) = Manifest::parse(data) {
        let _ = m.check_order(&TheoremRegistry::new());
        let names: Vec<String> = m.scripts.iter().map(|e| e.name.clone()).collect();
        let _ = m.closure(&names);
        assert_eq!(Manifest::parse(&m.to_toml()).expect("serialized manifest reparses"), m);
    }
});
