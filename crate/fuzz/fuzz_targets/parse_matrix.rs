#![no_main]

use libfuzzer_sys::fuzz_target;
use matfield::format::{parse_matrix, MatrixDoc};

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(m) = parse_matrix(s) {
        let text = serde_json::to_string(&MatrixDoc::from_matrix(&m)).unwrap();
        assert_eq!(parse_matrix(&text).unwrap(), m);
    }
});
