#![no_main]

use libfuzzer_sys::fuzz_target;
use tempiric::builtin;
use tempiric::weights::parse_label;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(l) = parse_label(text) {
        assert_eq!(parse_label(&l.to_string()).unwrap(), l);
    }
    for name in ["SL2R", "SO31", "Sp11"] {
        let d = builtin(name).unwrap();
        if let Ok(l) = d.k.parse_label(text) {
            d.k.validate(&l).unwrap();
        }
    }
});
