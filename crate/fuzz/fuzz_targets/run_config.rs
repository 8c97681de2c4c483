#![no_main]

use libfuzzer_sys::fuzz_target;
use ringproof::checker::RunConfiguration;

fuzz_target!(|data: &str| {
    if let Ok(cfg) = RunConfiguration::parse(data, "fuzz") {
        let _ = cfg.validate();
        let _ = cfg.verify_options();
    }
});
