#![no_main]

use libfuzzer_sys::fuzz_target;
use revsynth::format::{parse_netlist, write_netlist};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(c) = parse_netlist(text) {
        let written = write_netlist(&c);
        let back = parse_netlist(&written).unwrap();
        assert_eq!(back, c);
        assert_eq!(write_netlist(&back), written);
        if c.width() <= 10 {
            let _ = c.to_permutation();
        }
    }
});
