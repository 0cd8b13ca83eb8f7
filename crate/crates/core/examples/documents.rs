//! Building complexes from JSON documents and writing them back.

use hodge_complex::io::{parse_document, to_canonical_string};

fn main() -> hodge_complex::Result<()> {
    let text = r#"{
        "maximal": [[0, 1, 2], [2, 3]],
        "weights": {"scheme": "normalizing", "top": {"0,1,2": 2.0, "2,3": 0.5}},
        "empty": "include"
    }"#;
    let doc = parse_document(text)?;
    for (s, m) in doc.complex.weights().iter() {
        println!("m({s}) = {m}");
    }
    print!("{}", to_canonical_string(&doc));
    Ok(())
}
