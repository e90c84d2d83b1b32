#![no_main]

use libfuzzer_sys::fuzz_target;
use norm_inference::models::{QueryGrid, ScenarioSpec};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(spec) = ScenarioSpec::from_json(text) {
        assert_eq!(ScenarioSpec::from_json(&spec.to_json()).as_ref(), Ok(&spec));
        assert_eq!(QueryGrid::default_for(&spec).len(), 8);
    }
});
