#![no_main]

use h4audit::audit::revalidate_text;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        let _ = revalidate_text(text);
    }
});
