use frobex_web::{delta_text, extend_cover_text, wild_table_text};

#[test]
fn page_defaults() {
    let out = extend_cover_text(r#"{"p":3,"n":4,"e":1,"map":{"images":["1","y","y"]}}"#).unwrap();
    assert!(out.contains("extends: true") && out.contains("consistent: true"), "{out}");
    assert_eq!(delta_text(r#"{"p":3,"e":1,"images":["0","y","0"]}"#).unwrap(), "2*(y)\n");
    let out = wild_table_text(r#"{"images":{"(1,1)":"1"}}"#).unwrap();
    assert!(out.contains("extends: false") && out.contains("criterion: false"), "{out}");
}

#[test]
fn errors_are_messages() {
    let err = extend_cover_text(r#"{"p":3}"#).unwrap_err();
    assert!(err.contains("n"), "{err}");
    let err = delta_text(r#"{"p":4,"images":["1"]}"#).unwrap_err();
    assert!(err.contains("not prime"), "{err}");
}
