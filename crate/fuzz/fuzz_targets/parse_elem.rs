#![no_main]

use libfuzzer_sys::fuzz_target;
use matfield::format::parse_elem;
use matfield::{ExtFieldCtx, PrimeModulus};

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    let ctx = ExtFieldCtx::with_degree(PrimeModulus::new(3).unwrap(), 3).unwrap();
    if let Ok(e) = parse_elem(&ctx, s) {
        let text: Vec<String> = e.coords().iter().map(u32::to_string).collect();
        assert_eq!(parse_elem(&ctx, &text.join(",")).unwrap(), e);
    }
});
