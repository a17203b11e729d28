#![no_main]

use h4audit::groups::{export_csv, import_csv};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(rows) = import_csv(text) {
        let again = import_csv(&export_csv(&rows)).expect("exported tables import");
        assert_eq!(again, rows);
    }
});
