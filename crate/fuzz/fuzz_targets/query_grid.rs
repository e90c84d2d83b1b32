#![no_main]

use libfuzzer_sys::fuzz_target;
use norm_inference::models::QueryGrid;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(grid) = QueryGrid::from_json(text) {
        assert!(!grid.is_empty());
    }
});
