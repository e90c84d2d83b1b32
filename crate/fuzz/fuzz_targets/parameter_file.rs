#![no_main]

use libfuzzer_sys::fuzz_target;
use norm_inference::models::{build_structure, parametrize, ParameterFile, ScenarioSpec};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(file) = ParameterFile::from_json(text) {
        let again = ParameterFile::from_json(&file.to_json()).expect("written file parses");
        assert_eq!(again, file);
        let skeleton = build_structure(file.model_kind, &ScenarioSpec::tray_return());
        let _ = parametrize(&skeleton, &file.parameters);
    }
});
