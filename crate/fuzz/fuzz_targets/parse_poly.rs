#![no_main]

use libfuzzer_sys::fuzz_target;
use matfield::FpPoly;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(f) = s.parse::<FpPoly>() {
        assert_eq!(f.to_string().parse::<FpPoly>().unwrap(), f);
    }
});
