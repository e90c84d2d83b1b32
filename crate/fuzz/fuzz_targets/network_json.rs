#![no_main]

use libfuzzer_sys::fuzz_target;
use norm_inference::bayes::{eliminate_posterior, Assignment, NormNetwork};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(net) = NormNetwork::from_json(text) {
        let again = NormNetwork::from_json(&net.to_json()).expect("written network parses");
        assert_eq!(again.to_json(), net.to_json());
        if let Some(v) = net.structure().variables().first() {
            let _ = eliminate_posterior(&net, &v.name, &Assignment::new());
        }
    }
});
