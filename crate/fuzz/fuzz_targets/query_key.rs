#![no_main]

use libfuzzer_sys::fuzz_target;
use norm_inference::query::QueryKey;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(key) = text.parse::<QueryKey>() {
        let shown = key.to_string();
        let again: QueryKey = shown.parse().expect("display output parses");
        assert_eq!(again, key);
        let _ = key.condition();
    }
});
