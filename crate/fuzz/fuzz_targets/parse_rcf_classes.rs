#![no_main]

use libfuzzer_sys::fuzz_target;
use matfield::format::{parse_rcf_classes, rcf_classes_doc, RcfClassDoc};

fuzz_target!(|data: &[u8]| {
    let Ok(docs) = serde_json::from_slice::<Vec<RcfClassDoc>>(data) else { return };
    if let Ok(ms) = parse_rcf_classes(&docs) {
        let again = parse_rcf_classes(&rcf_classes_doc(&ms)).unwrap();
        assert_eq!(again.digest(), ms.digest());
    }
});
