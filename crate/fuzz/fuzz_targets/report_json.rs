#![no_main]

use h4audit::audit::{revalidate, revalidate_json, AuditReport};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let _ = revalidate_json(text);
    if let Ok(report) = AuditReport::from_json(text) {
        let _ = revalidate(&report);
        let again = AuditReport::from_json(&report.to_json()).expect("canonical json decodes");
        assert_eq!(again, report);
    }
});
