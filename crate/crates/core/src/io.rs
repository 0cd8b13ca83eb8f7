//! The JSON complex document, edge lists and the curvature table.
//!
//! ```json
//! {"maximal": [[0,1,2]], "weights": {"scheme": "combinatorial"},
//!  "empty": "auto", "empty_weight": 1.0}
//! ```
//!
//! `weights` is either a `{"0,1": 2.0, ...}` map (key `""` for `∅`) or a
//! scheme object: `{"scheme": "combinatorial"}`, `{"scheme": "normalizing",
//! "top": {...}}`. Two optional keys extend the format: `orientation`, a map
//! `"face|coface" -> ±1` of explicit signs, and `family`, a tag such as
//! `{"name": "fan", "n": 5}` for generated instances.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::io::Read;
use std::path::Path;

use serde_json::{json, Map, Value};

use crate::complex::EmptyPolicy;
use crate::error::{Error, Result};
use crate::orientation::OrientationAssignment;
use crate::schrodinger::{schrodinger_data, Flavor};
use crate::simplex::Simplex;
use crate::weighted::{build_complex, WeightSpec, WeightedComplex};
use crate::weights::WeightScheme;

fn doc_err(key: &str, reason: impl Into<String>) -> Error {
    Error::Document { key: key.to_string(), reason: reason.into() }
}

fn parse_key(key: &str, at: &str) -> Result<Simplex> {
    key.parse().map_err(|_| doc_err(at, format!("bad simplex key `{key}`")))
}

fn weight_map(v: &Value, at: &str) -> Result<BTreeMap<Simplex, f64>> {
    let obj = v.as_object().ok_or_else(|| doc_err(at, "expected an object"))?;
    let mut out = BTreeMap::new();
    for (k, x) in obj {
        let at = format!("{at}.{k}");
        let m = x.as_f64().ok_or_else(|| doc_err(&at, "expected a number"))?;
        out.insert(parse_key(k, &at)?, m);
    }
    Ok(out)
}

/// A parsed complex document.
#[derive(Clone, Debug)]
pub struct ComplexDocument {
    pub complex: WeightedComplex,
    pub family: Option<Value>,
}

impl ComplexDocument {
    pub fn new(complex: WeightedComplex) -> Self {
        ComplexDocument { complex, family: None }
    }

    /// `Some(n)` when the document is tagged as `fan(n)`.
    pub fn fan_size(&self) -> Option<usize> {
        let f = self.family.as_ref()?;
        (f.get("name")?.as_str()? == "fan").then(|| f.get("n")?.as_u64().map(|n| n as usize))?
    }
}

pub fn parse_document(text: &str) -> Result<ComplexDocument> {
    let v: Value = serde_json::from_str(text)?;
    from_value(&v)
}

pub fn from_value(v: &Value) -> Result<ComplexDocument> {
    let obj = v.as_object().ok_or_else(|| doc_err("$", "expected an object"))?;
    for k in obj.keys() {
        if !["maximal", "weights", "empty", "empty_weight", "orientation", "family"].contains(&k.as_str()) {
            return Err(doc_err(k, "unknown key"));
        }
    }
    let maximal: Vec<Vec<usize>> = obj
        .get("maximal")
        .ok_or_else(|| doc_err("maximal", "missing"))
        .and_then(|m| serde_json::from_value(m.clone()).map_err(|e| doc_err("maximal", e.to_string())))?;
    let empty: EmptyPolicy = match obj.get("empty") {
        None => EmptyPolicy::Auto,
        Some(e) => serde_json::from_value(e.clone()).map_err(|_| doc_err("empty", "expected auto, include or exclude"))?,
    };
    let empty_weight = match obj.get("empty_weight") {
        None => 1.0,
        Some(x) => x.as_f64().ok_or_else(|| doc_err("empty_weight", "expected a number"))?,
    };
    let spec = match obj.get("weights") {
        None => WeightSpec::Combinatorial,
        Some(w) => match w.get("scheme") {
            None => WeightSpec::Explicit(weight_map(w, "weights")?),
            Some(s) => match s.as_str() {
                Some("combinatorial") => WeightSpec::Combinatorial,
                Some("normalizing") => WeightSpec::Normalizing(w.get("top").map(|t| weight_map(t, "weights.top")).transpose()?),
                _ => return Err(doc_err("weights.scheme", "expected combinatorial or normalizing")),
            },
        },
    };
    let mut wc = build_complex(&maximal, &spec, empty, empty_weight).map_err(|e| match e {
        Error::Document { .. } => e,
        other => doc_err("weights", other.to_string()),
    })?;
    if let Some(o) = obj.get("orientation") {
        let o = o.as_object().ok_or_else(|| doc_err("orientation", "expected an object"))?;
        let mut signs = BTreeMap::new();
        for (k, x) in o {
            let at = format!("orientation.{k}");
            let (f, c) = k.split_once('|').ok_or_else(|| doc_err(&at, "expected `face|coface`"))?;
            let s = match x.as_i64() {
                Some(1) => 1,
                Some(-1) => -1,
                _ => return Err(doc_err(&at, "sign must be 1 or -1")),
            };
            signs.insert((parse_key(f, &at)?, parse_key(c, &at)?), s);
        }
        wc = WeightedComplex::new(wc.complex().clone(), wc.weights().clone(), OrientationAssignment::Explicit(signs))
            .map_err(|e| doc_err("orientation", e.to_string()))?;
    }
    Ok(ComplexDocument { complex: wc, family: obj.get("family").cloned() })
}

pub fn to_value(doc: &ComplexDocument) -> Value {
    let wc = &doc.complex;
    let c = wc.complex();
    let maximal: Vec<Vec<usize>> =
        c.maximal_simplices().into_iter().filter(|s| !s.is_empty()).map(|s| s.vertices().to_vec()).collect();
    let empty_weight = if c.includes_empty() { wc.m(&Simplex::empty()) } else { 1.0 };
    let weights = match wc.weights().scheme() {
        WeightScheme::Combinatorial => json!({"scheme": "combinatorial"}),
        _ => Value::Object(wc.weights().iter().map(|(s, m)| (s.key(), json!(m))).collect::<Map<_, _>>()),
    };
    let mut out = json!({
        "maximal": maximal,
        "weights": weights,
        "empty": if c.includes_empty() { "include" } else { "exclude" },
        "empty_weight": empty_weight,
    });
    if let OrientationAssignment::Explicit(signs) = wc.orientation() {
        let o: Map<String, Value> = signs.iter().map(|((f, s), &x)| (format!("{}|{}", f.key(), s.key()), json!(x))).collect();
        out["orientation"] = Value::Object(o);
    }
    if let Some(f) = &doc.family {
        out["family"] = f.clone();
    }
    out
}

/// Pretty JSON with sorted keys and a trailing newline.
pub fn to_canonical_string(doc: &ComplexDocument) -> String {
    let mut s = serde_json::to_string_pretty(&to_value(doc)).expect("values are finite");
    s.push('\n');
    s
}

/// Reads `path`, or standard input for `-`.
pub fn read_input(path: &str) -> Result<String> {
    if path == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        Ok(fs::read_to_string(path)?)
    }
}

pub fn load(path: impl AsRef<Path>) -> Result<ComplexDocument> {
    parse_document(&fs::read_to_string(path)?)
}

pub fn save(doc: &ComplexDocument, path: impl AsRef<Path>) -> Result<()> {
    fs::write(path, to_canonical_string(doc))?;
    Ok(())
}

/// One `a b` pair per line; blank lines and `#` comments are skipped.
pub fn parse_edges(text: &str) -> Result<Vec<(usize, usize)>> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let at = format!("line {}", i + 1);
        let nums: Vec<usize> = line
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
            .map(|t| t.parse().map_err(|_| doc_err(&at, format!("bad vertex `{t}`"))))
            .collect::<Result<_>>()?;
        match nums.as_slice() {
            [a, b] => out.push((*a, *b)),
            _ => return Err(doc_err(&at, "expected two vertices")),
        }
    }
    Ok(out)
}

/// Per-simplex table: key, dim, m, c_plus, c_minus, c_H, forman, gamma_plus.
pub fn curvature_csv(wc: &WeightedComplex) -> String {
    let up = schrodinger_data(wc, Flavor::Up);
    let down = schrodinger_data(wc, Flavor::Down);
    let hodge = schrodinger_data(wc, Flavor::Hodge);
    let mut out = String::from("key,dim,m,c_plus,c_minus,c_H,forman,gamma_plus\n");
    for s in wc.complex().simplices() {
        let m = wc.m(s);
        let _ = writeln!(
            out,
            "\"{}\",{},{},{},{},{},{},{}",
            s.key(),
            s.dim(),
            m,
            up.c(s),
            down.c(s),
            hodge.c(s),
            hodge.c(s) / m,
            up.gamma(s)
        );
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_is_stable() {
        let text = r#"{"maximal": [[0,1,2],[2,3]], "weights": {"scheme": "normalizing"}, "empty": "include"}"#;
        let doc = parse_document(text).unwrap();
        let once = to_canonical_string(&doc);
        let twice = to_canonical_string(&parse_document(&once).unwrap());
        assert_eq!(once, twice);
        assert_eq!(doc.complex.m(&Simplex::empty()), 8.0);
    }

    #[test]
    fn fan_round_trip_keeps_signs() {
        let fan = crate::generators::fan(3).unwrap();
        let doc = ComplexDocument { complex: fan.complex, family: Some(json!({"name": "fan", "n": 3})) };
        let text = to_canonical_string(&doc);
        let back = parse_document(&text).unwrap();
        assert_eq!(back.fan_size(), Some(3));
        assert_eq!(to_canonical_string(&back), text);
        assert_eq!(back.complex.theta(&Simplex::from([0, 2]), &Simplex::from([0, 1, 2])), -1.0);
    }

    #[test]
    fn errors_name_the_key() {
        for (text, key) in [
            (r#"{"weights": {}}"#, "maximal"),
            (r#"{"maximal": [[0,1]], "empty": "sometimes"}"#, "empty"),
            (r#"{"maximal": [[0,1]], "weights": {"0,1": "x"}}"#, "weights.0,1"),
            (r#"{"maximal": [[0,1]], "colour": 1}"#, "colour"),
        ] {
            match parse_document(text) {
                Err(Error::Document { key: k, .. }) => assert_eq!(k, key),
                other => panic!("{other:?}"),
            }
        }
    }

    #[test]
    fn edges_and_csv() {
        assert_eq!(parse_edges("0 1\n# c\n1,2\n").unwrap(), vec![(0, 1), (1, 2)]);
        assert!(parse_edges("0 1 2").is_err());
        let wc = WeightedComplex::combinatorial(
            crate::complex::SimplicialComplex::from_maximal([Simplex::from([0, 1, 2])], false).unwrap(),
        );
        let csv = curvature_csv(&wc);
        assert!(csv.lines().any(|l| l.starts_with("\"0,1\",1,1,") && l.contains(",3,3,")));
    }
}
