mod common;

use common::arb_sequence;
use domino::format::{parse, serialize};
use proptest::prelude::*;

proptest! {
    #[test]
    fn serialize_then_parse_is_identity(seq in arb_sequence(30, false)) {
        let text = serialize(&seq);
        prop_assert_eq!(parse(&text).unwrap(), seq.clone());
        prop_assert_eq!(serialize(&parse(&text).unwrap()), text);
    }

    #[test]
    fn parse_never_panics(text in "[ 0-9n#\\n]{0,60}") {
        let _ = parse(&text);
    }
}

#[test]
fn rejects_forward_references_with_line_numbers() {
    let err = parse("n 3\n\n1\n4\n").unwrap_err();
    assert!(err.to_string().contains('3'), "{err}");
    assert!(parse("n 2\n\n").is_err());
    assert!(parse("").is_err());
}
