#![no_main]

use h4audit::groups::parse_descriptor;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(spec) = parse_descriptor(text) {
        // Whatever parses must print back to the same group.
        let again = parse_descriptor(&spec.to_string()).expect("displayed descriptors parse");
        assert_eq!(again, spec);
        let _ = spec.order();
    }
});
