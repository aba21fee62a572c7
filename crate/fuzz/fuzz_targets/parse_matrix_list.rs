#![no_main]

use libfuzzer_sys::fuzz_target;
use matfield::format::{parse_matrix_list, MatrixListDoc};
use matfield::PrimeModulus;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(ms) = parse_matrix_list(s) {
        let doc: MatrixListDoc = serde_json::from_str(s).unwrap();
        let p = PrimeModulus::new(doc.p).unwrap();
        let text = serde_json::to_string(&MatrixListDoc::from_matrices(p, doc.n, &ms)).unwrap();
        assert_eq!(parse_matrix_list(&text).unwrap(), ms);
    }
});
