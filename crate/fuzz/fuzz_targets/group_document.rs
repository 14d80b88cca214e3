#![no_main]

use libfuzzer_sys::fuzz_target;
use tempiric::load_str;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(datum) = load_str(text) {
        let again = load_str(&datum.to_json()).expect("serialized datum reloads");
        assert_eq!(again, datum);
    }
});
