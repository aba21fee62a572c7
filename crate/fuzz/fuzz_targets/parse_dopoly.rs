#![no_main]

use libfuzzer_sys::fuzz_target;
use matfield::format::{parse_dopoly, DOPolyDoc};

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(g) = parse_dopoly(s) {
        let text = serde_json::to_string(&DOPolyDoc::from_dopoly(&g)).unwrap();
        let again = parse_dopoly(&text).unwrap();
        assert_eq!(again.terms(), g.terms());
        assert_eq!(again.ctx().modulus(), g.ctx().modulus());
        if g.ctx().order().is_some_and(|q| q <= 729) {
            let _ = g.is_planar();
        }
    }
});
