#![no_main]

use libfuzzer_sys::fuzz_target;
use norm_inference::data::{aggregate, parse_ratings};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(table) = parse_ratings(text, None) {
        assert!(table
            .records
            .iter()
            .all(|r| r.rating >= 0.0 && r.rating <= table.scale_max));
        let reparsed = parse_ratings(&table.to_csv(), None).expect("written table parses");
        assert_eq!(reparsed.records.len(), table.records.len());
        if let Some(first) = table.records.first() {
            let _ = aggregate(&table.scenario(&first.scenario), table.scale_max);
        }
    }
});
