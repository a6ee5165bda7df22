use std::collections::{BTreeMap, HashMap};
use std::fmt::Write;

use thiserror::Error;

use super::{ordered_faces, ComplexDocument};
use crate::complex::FaceComplex;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum DslError {
    #[error("line {line}, column {col}: expected {expected}")]
    SyntaxError { line: usize, col: usize, expected: String },
    #[error("line {line}: {what} declared again (first on line {first})")]
    DuplicateDeclaration { line: usize, first: usize, what: String },
    #[error("line {line}: `{face}` has dimension 0 and cannot have a {role}")]
    PointRelation { line: usize, face: String, role: &'static str },
}

impl DslError {
    pub fn line(&self) -> usize {
        match self {
            DslError::SyntaxError { line, .. }
            | DslError::DuplicateDeclaration { line, .. }
            | DslError::PointRelation { line, .. } => *line,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum EmitError {
    #[error("face name `{0}` is not ASCII")]
    NonAsciiName(String),
    #[error("face name `{0}` is not a DSL identifier")]
    InvalidIdentifier(String),
}

struct Cursor<'a> {
    chars: Vec<char>,
    pos: usize,
    line: usize,
    _text: &'a str,
}

impl<'a> Cursor<'a> {
    fn new(text: &'a str, line: usize) -> Self {
        Cursor { chars: text.chars().collect(), pos: 0, line, _text: text }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn error(&self, expected: impl Into<String>) -> DslError {
        DslError::SyntaxError { line: self.line, col: self.pos + 1, expected: expected.into() }
    }

    fn ident(&mut self) -> Result<String, DslError> {
        self.skip_ws();
        let start = self.pos;
        match self.chars.get(self.pos) {
            Some(c) if c.is_ascii_alphabetic() || *c == '_' => self.pos += 1,
            _ => return Err(self.error("identifier")),
        }
        while let Some(c) = self.chars.get(self.pos) {
            if c.is_ascii_alphanumeric() || *c == '_' || *c == '\'' {
                self.pos += 1;
            } else {
                break;
            }
        }
        Ok(self.chars[start..self.pos].iter().collect())
    }

    fn number(&mut self) -> Result<usize, DslError> {
        self.skip_ws();
        let start = self.pos;
        while self.chars.get(self.pos).is_some_and(char::is_ascii_digit) {
            self.pos += 1;
        }
        let digits: String = self.chars[start..self.pos].iter().collect();
        digits.parse().map_err(|_| {
            self.pos = start;
            self.error("dimension")
        })
    }

    fn symbol(&mut self, s: &str) -> Result<(), DslError> {
        self.skip_ws();
        let want: Vec<char> = s.chars().collect();
        if self.chars[self.pos..].starts_with(&want) {
            self.pos += want.len();
            Ok(())
        } else {
            Err(self.error(format!("`{s}`")))
        }
    }

    fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.pos == self.chars.len()
    }

    fn end(&mut self) -> Result<(), DslError> {
        if self.at_end() {
            Ok(())
        } else {
            Err(self.error("end of line"))
        }
    }
}

/// Parses the line-oriented complex syntax:
///
/// ```text
/// # comment
/// face <id> : <dim>
/// tgt <id> -> <id>
/// src <id> <- <id>, <id>, ...
/// ```
pub fn parse_dsl(text: &str) -> Result<ComplexDocument, DslError> {
    let mut doc = ComplexDocument::default();
    let mut face_line: HashMap<String, usize> = HashMap::new();
    let mut tgt_line: HashMap<String, usize> = HashMap::new();
    let mut src_line: HashMap<String, usize> = HashMap::new();

    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let mut cur = Cursor::new(raw, line);
        if cur.at_end() || cur.chars[cur.pos] == '#' {
            continue;
        }
        let keyword = cur.ident().map_err(|_| cur.error("`face`, `tgt`, `src` or `#`"))?;
        match keyword.as_str() {
            "face" => {
                let name = cur.ident()?;
                cur.symbol(":")?;
                let dim = cur.number()?;
                cur.end()?;
                if let Some(&first) = face_line.get(&name) {
                    return Err(DslError::DuplicateDeclaration { line, first, what: format!("face `{name}`") });
                }
                face_line.insert(name.clone(), line);
                doc.faces.push((name, dim));
            }
            "tgt" => {
                let name = cur.ident()?;
                cur.symbol("->")?;
                let t = cur.ident()?;
                cur.end()?;
                if let Some(&first) = tgt_line.get(&name) {
                    return Err(DslError::DuplicateDeclaration { line, first, what: format!("target of `{name}`") });
                }
                tgt_line.insert(name.clone(), line);
                doc.targets.push((name, t));
            }
            "src" => {
                let name = cur.ident()?;
                cur.symbol("<-")?;
                let mut list = vec![cur.ident()?];
                while !cur.at_end() {
                    cur.symbol(",")?;
                    list.push(cur.ident()?);
                }
                if let Some(&first) = src_line.get(&name) {
                    return Err(DslError::DuplicateDeclaration { line, first, what: format!("sources of `{name}`") });
                }
                src_line.insert(name.clone(), line);
                doc.sources.push((name, list));
            }
            _ => {
                return Err(DslError::SyntaxError { line, col: 1 + raw.len() - raw.trim_start().len(), expected: "`face`, `tgt`, `src` or `#`".into() })
            }
        }
    }

    let dims: HashMap<&str, usize> = doc.faces.iter().map(|(n, d)| (n.as_str(), *d)).collect();
    let mut point_errors: Vec<DslError> = Vec::new();
    for (table, role) in [(&tgt_line, "target"), (&src_line, "source list")] {
        for (face, &line) in table {
            if dims.get(face.as_str()) == Some(&0) {
                point_errors.push(DslError::PointRelation { line, face: face.clone(), role });
            }
        }
    }
    if let Some(e) = point_errors.into_iter().min_by_key(DslError::line) {
        return Err(e);
    }
    Ok(doc)
}

fn check_ident(name: &str) -> Result<(), EmitError> {
    if !name.is_ascii() {
        return Err(EmitError::NonAsciiName(name.to_string()));
    }
    let mut chars = name.chars();
    let ok = chars.next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'');
    if ok {
        Ok(())
    } else {
        Err(EmitError::InvalidIdentifier(name.to_string()))
    }
}

/// Face declarations by dimension then name, followed by the target and
/// source lines of each positive face in the same order.
pub fn emit_dsl(c: &FaceComplex) -> Result<String, EmitError> {
    let order = ordered_faces(c);
    for &i in &order {
        check_ident(c.name(i))?;
    }
    let mut out = String::new();
    for &i in &order {
        writeln!(out, "face {} : {}", c.name(i), c.dim_of(i)).unwrap();
    }
    for &i in &order {
        if let Some(t) = c.tgt(i) {
            writeln!(out, "tgt {} -> {}", c.name(i), c.name(t)).unwrap();
            let s: Vec<&str> = c.src(i).iter().map(|&y| c.name(y)).collect();
            writeln!(out, "src {} <- {}", c.name(i), s.join(", ")).unwrap();
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum MapError {
    #[error("line {line}: expected `a => b`")]
    Syntax { line: usize },
    #[error("line {line}: `{face}` mapped twice")]
    Duplicate { line: usize, face: String },
    #[error("map JSON must be an object of strings: {0}")]
    Json(String),
}

/// A face map given as lines `a => b` (blank lines and `#` comments
/// allowed), or as a JSON object of strings.
pub fn parse_map(text: &str) -> Result<BTreeMap<String, String>, MapError> {
    if text.trim_start().starts_with('{') {
        return serde_json::from_str(text).map_err(|e| MapError::Json(e.to_string()));
    }
    let mut map = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let t = raw.trim();
        if t.is_empty() || t.starts_with('#') {
            continue;
        }
        let (a, b) = t.split_once("=>").ok_or(MapError::Syntax { line })?;
        let (a, b) = (a.trim(), b.trim());
        if a.is_empty() || b.is_empty() || a.contains(char::is_whitespace) || b.contains(char::is_whitespace) {
            return Err(MapError::Syntax { line });
        }
        if map.insert(a.to_string(), b.to_string()).is_some() {
            return Err(MapError::Duplicate { line, face: a.to_string() });
        }
    }
    Ok(map)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::{arrow, three1, two_cell};
    use crate::complex::ComplexBuilder;

    const ARROW: &str = "face x : 0\nface y : 0\nface f : 1\ntgt f -> y\nsrc f <- x\n";

    #[test]
    fn arrow_document() {
        let doc = parse_dsl(ARROW).unwrap();
        assert_eq!(doc.build().unwrap(), arrow());
        assert_eq!(emit_dsl(&arrow()).unwrap(), ARROW);
    }

    #[test]
    fn whitespace_and_comments() {
        let text = "# two cell\n\n  face x0:0\nface x1 :0\nface x2: 0\nface f1 : 1\nface f2:1\nface h:1\nface alpha : 2\n\
                    tgt f1->x1\nsrc f1<-x0\ntgt f2 -> x2\nsrc f2 <- x1\ntgt h -> x2\nsrc h <- x0\n\
                    src alpha <- f1 ,f2\ntgt alpha -> h\n";
        assert_eq!(parse_dsl(text).unwrap().build().unwrap(), two_cell(2).unwrap());
    }

    #[test]
    fn missing_identifier() {
        assert_eq!(
            parse_dsl("tgt f ->"),
            Err(DslError::SyntaxError { line: 1, col: 9, expected: "identifier".into() })
        );
        assert!(matches!(parse_dsl("face x : 0\nfoo"), Err(DslError::SyntaxError { line: 2, col: 1, .. })));
        assert!(matches!(parse_dsl("face x 0"), Err(DslError::SyntaxError { line: 1, col: 8, .. })));
        assert!(matches!(parse_dsl("face x : two"), Err(DslError::SyntaxError { line: 1, col: 10, .. })));
        assert!(matches!(parse_dsl("src a <- b,"), Err(DslError::SyntaxError { line: 1, col: 12, .. })));
        assert!(matches!(parse_dsl("face α : 2"), Err(DslError::SyntaxError { line: 1, col: 6, .. })));
    }

    #[test]
    fn duplicates() {
        assert_eq!(
            parse_dsl("face x : 0\nface x : 0"),
            Err(DslError::DuplicateDeclaration { line: 2, first: 1, what: "face `x`".into() })
        );
        assert!(matches!(parse_dsl("tgt f -> y\ntgt f -> x"), Err(DslError::DuplicateDeclaration { line: 2, .. })));
    }

    #[test]
    fn point_relations_rejected() {
        let e = parse_dsl("face x : 0\nface y : 0\ntgt x -> y").unwrap_err();
        assert_eq!(e, DslError::PointRelation { line: 3, face: "x".into(), role: "target" });
    }

    #[test]
    fn emit_rejects_non_ascii() {
        let c = ComplexBuilder::new().face("α", 0).build().unwrap();
        assert_eq!(emit_dsl(&c), Err(EmitError::NonAsciiName("α".into())));
        let c = ComplexBuilder::new().face("1a", 0).build().unwrap();
        assert_eq!(emit_dsl(&c), Err(EmitError::InvalidIdentifier("1a".into())));
    }

    #[test]
    fn round_trip_three1() {
        let text = emit_dsl(&three1()).unwrap();
        let back = parse_dsl(&text).unwrap().build().unwrap();
        assert_eq!(back, three1());
        assert_eq!(emit_dsl(&back).unwrap(), text);
    }

    #[test]
    fn maps() {
        let m = parse_map("# arrow into two2\nx => x0\ny=>x1\n\nf => f1\n").unwrap();
        assert_eq!(m.len(), 3);
        assert_eq!(m["y"], "x1");
        assert_eq!(parse_map("x -> y"), Err(MapError::Syntax { line: 1 }));
        assert!(matches!(parse_map("x => a\nx => b"), Err(MapError::Duplicate { line: 2, .. })));
        assert_eq!(parse_map(r#"{"x":"x0"}"#).unwrap()["x"], "x0");
    }
}
