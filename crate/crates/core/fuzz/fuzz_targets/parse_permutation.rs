#![no_main]

use libfuzzer_sys::fuzz_target;
use revsynth::format::{parse_permutation, write_permutation, write_truth_table};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(p) = parse_permutation(text) {
        assert_eq!(parse_permutation(&write_permutation(&p)).unwrap(), p);
        assert_eq!(parse_permutation(&write_truth_table(&p)).unwrap(), p);
    }
});
