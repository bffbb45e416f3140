//! The line-oriented spec file format.
//!
//! ```text
//! backend artin      # graphpath | kgraph | artin | explicit
//! version 1          # optional
//! atoms a b
//! m a b 3            # or `inf`
//! ```
//!
//! Path backends use `vertex <id>`, `edge <id> <src> <dst> [color <n>]` and,
//! for k-graphs, `square <e> <f> = <f'> <e'>`. Explicit tables use
//! `object <id>`, `mor <id> <src> <dst>` and `comp <f> <g> = <h>`.

use std::fmt;
use std::fmt::Write as _;

use garside_core::spec::{ArtinSpec, CompDecl, EdgeDecl, ExplicitSpec, MorDecl, PathSpec, SquareDecl};
use garside_core::CategorySpec;

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}, column {col}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

#[derive(Clone, Copy)]
struct Token<'a> {
    text: &'a str,
    col: usize,
}

struct Line<'a> {
    number: usize,
    tokens: Vec<Token<'a>>,
    /// Column just past the last character, for "missing argument" errors.
    end: usize,
}

impl<'a> Line<'a> {
    fn err(&self, col: usize, message: impl Into<String>) -> ParseError {
        ParseError { line: self.number, col, message: message.into() }
    }

    fn arg(&self, i: usize, what: &str) -> Result<&'a str, ParseError> {
        self.tokens.get(i).map(|t| t.text).ok_or_else(|| self.err(self.end, format!("expected {}", what)))
    }

    fn expect_len(&self, n: usize) -> Result<(), ParseError> {
        if let Some(t) = self.tokens.get(n) {
            return Err(self.err(t.col, format!("unexpected '{}'", t.text)));
        }
        Ok(())
    }

    fn expect_eq(&self, i: usize) -> Result<(), ParseError> {
        match self.tokens.get(i) {
            Some(t) if t.text == "=" => Ok(()),
            Some(t) => Err(self.err(t.col, format!("expected '=', found '{}'", t.text))),
            None => Err(self.err(self.end, "expected '='")),
        }
    }
}

fn lex(text: &str) -> Vec<Line<'_>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let content = raw.split('#').next().unwrap_or("");
        let mut tokens = Vec::new();
        let mut start = None;
        let mut col = 0;
        for (byte, ch) in content.char_indices() {
            col += 1;
            if ch.is_whitespace() {
                if let Some((b, c)) = start.take() {
                    tokens.push(Token { text: &content[b..byte], col: c });
                }
            } else if start.is_none() {
                start = Some((byte, col));
            }
        }
        if let Some((b, c)) = start {
            tokens.push(Token { text: &content[b..], col: c });
        }
        if !tokens.is_empty() {
            out.push(Line { number: i + 1, tokens, end: col + 1 });
        }
    }
    out
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Tag {
    GraphPath,
    KGraph,
    Artin,
    Explicit,
}

/// Parses a spec file. Names are not resolved here; unknown references
/// surface when the category is built.
pub fn parse_spec(text: &str) -> Result<CategorySpec, ParseError> {
    let lines = lex(text);
    let Some(first) = lines.first() else {
        return Err(ParseError { line: 1, col: 1, message: "empty spec: expected 'backend <kind>'".into() });
    };
    if first.tokens[0].text != "backend" {
        return Err(first.err(first.tokens[0].col, "the first line must be 'backend <kind>'"));
    }
    let tag = match first.arg(1, "a backend kind")? {
        "graphpath" => Tag::GraphPath,
        "kgraph" => Tag::KGraph,
        "artin" => Tag::Artin,
        "explicit" => Tag::Explicit,
        other => {
            return Err(first.err(first.tokens[1].col, format!("unknown backend '{}'", other)));
        }
    };
    first.expect_len(2)?;

    let mut path = PathSpec::default();
    let mut artin = ArtinSpec::default();
    let mut explicit = ExplicitSpec::default();
    let mut body = &lines[1..];
    if let Some(l) = body.first() {
        if l.tokens[0].text == "version" {
            let v = l.arg(1, "a version number")?;
            if v.parse::<u32>() != Ok(FORMAT_VERSION) {
                return Err(l.err(l.tokens[1].col, format!("unsupported format version '{}'", v)));
            }
            l.expect_len(2)?;
            body = &body[1..];
        }
    }

    for l in body {
        let kw = l.tokens[0];
        let wrong = || l.err(kw.col, format!("'{}' is not allowed in a {} spec", kw.text, tag_name(tag)));
        match kw.text {
            "vertex" => {
                if !matches!(tag, Tag::GraphPath | Tag::KGraph) {
                    return Err(wrong());
                }
                path.vertices.push(l.arg(1, "a vertex name")?.to_string());
                l.expect_len(2)?;
            }
            "edge" => {
                if !matches!(tag, Tag::GraphPath | Tag::KGraph) {
                    return Err(wrong());
                }
                let mut color = 1;
                if l.tokens.len() > 4 {
                    if l.tokens[4].text != "color" {
                        return Err(l.err(l.tokens[4].col, format!("expected 'color', found '{}'", l.tokens[4].text)));
                    }
                    let c = l.arg(5, "a color")?;
                    color = match c.parse::<usize>() {
                        Ok(n) if n >= 1 => n,
                        _ => return Err(l.err(l.tokens[5].col, format!("colors are positive integers, got '{}'", c))),
                    };
                    l.expect_len(6)?;
                }
                path.edges.push(EdgeDecl {
                    name: l.arg(1, "an edge name")?.to_string(),
                    src: l.arg(2, "a source vertex")?.to_string(),
                    dst: l.arg(3, "a target vertex")?.to_string(),
                    color,
                });
            }
            "square" => {
                if tag != Tag::KGraph {
                    return Err(wrong());
                }
                let first = l.arg(1, "an edge")?.to_string();
                let second = l.arg(2, "an edge")?.to_string();
                l.expect_eq(3)?;
                let third = l.arg(4, "an edge")?.to_string();
                let fourth = l.arg(5, "an edge")?.to_string();
                l.expect_len(6)?;
                path.squares.push(SquareDecl { first, second, third, fourth });
            }
            "atoms" => {
                if tag != Tag::Artin {
                    return Err(wrong());
                }
                artin.atoms.extend(l.tokens[1..].iter().map(|t| t.text.to_string()));
            }
            "m" => {
                if tag != Tag::Artin {
                    return Err(wrong());
                }
                let a = l.arg(1, "an atom")?.to_string();
                let b = l.arg(2, "an atom")?.to_string();
                let v = l.arg(3, "an integer ≥ 2 or 'inf'")?;
                let m = match v {
                    "inf" | "∞" => None,
                    _ => match v.parse::<u32>() {
                        Ok(n) if n >= 2 => Some(n),
                        _ => return Err(l.err(l.tokens[3].col, format!("m must be an integer ≥ 2 or 'inf', got '{}'", v))),
                    },
                };
                l.expect_len(4)?;
                artin.m.push((a, b, m));
            }
            "object" => {
                if tag != Tag::Explicit {
                    return Err(wrong());
                }
                explicit.objects.push(l.arg(1, "an object name")?.to_string());
                l.expect_len(2)?;
            }
            "mor" => {
                if tag != Tag::Explicit {
                    return Err(wrong());
                }
                explicit.mors.push(MorDecl {
                    name: l.arg(1, "a morphism name")?.to_string(),
                    src: l.arg(2, "a source object")?.to_string(),
                    dst: l.arg(3, "a target object")?.to_string(),
                });
                l.expect_len(4)?;
            }
            "comp" => {
                if tag != Tag::Explicit {
                    return Err(wrong());
                }
                let f = l.arg(1, "a morphism")?.to_string();
                let g = l.arg(2, "a morphism")?.to_string();
                l.expect_eq(3)?;
                let h = l.arg(4, "a morphism")?.to_string();
                l.expect_len(5)?;
                explicit.comps.push(CompDecl { f, g, h });
            }
            "backend" => return Err(l.err(kw.col, "duplicate 'backend' line")),
            "version" => return Err(l.err(kw.col, "'version' must directly follow 'backend'")),
            other => return Err(l.err(kw.col, format!("unknown keyword '{}'", other))),
        }
    }

    Ok(match tag {
        Tag::GraphPath => CategorySpec::GraphPath(path),
        Tag::KGraph => CategorySpec::KGraph(path),
        Tag::Artin => CategorySpec::Artin(artin),
        Tag::Explicit => CategorySpec::Explicit(explicit),
    })
}

fn tag_name(tag: Tag) -> &'static str {
    match tag {
        Tag::GraphPath => "graphpath",
        Tag::KGraph => "kgraph",
        Tag::Artin => "artin",
        Tag::Explicit => "explicit",
    }
}

/// Prints a spec so that [`parse_spec`] reads it back unchanged.
pub fn print_spec(spec: &CategorySpec) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "backend {}", spec.backend_name());
    let _ = writeln!(out, "version {}", FORMAT_VERSION);
    match spec {
        CategorySpec::GraphPath(p) | CategorySpec::KGraph(p) => {
            for v in &p.vertices {
                let _ = writeln!(out, "vertex {}", v);
            }
            for e in &p.edges {
                let _ = write!(out, "edge {} {} {}", e.name, e.src, e.dst);
                if e.color != 1 {
                    let _ = write!(out, " color {}", e.color);
                }
                out.push('\n');
            }
            for s in &p.squares {
                let _ = writeln!(out, "square {} {} = {} {}", s.first, s.second, s.third, s.fourth);
            }
        }
        CategorySpec::Artin(a) => {
            out.push_str("atoms");
            for x in &a.atoms {
                let _ = write!(out, " {}", x);
            }
            out.push('\n');
            for (x, y, m) in &a.m {
                let _ = writeln!(out, "m {} {} {}", x, y, MValue(*m));
            }
        }
        CategorySpec::Explicit(e) => {
            for o in &e.objects {
                let _ = writeln!(out, "object {}", o);
            }
            for m in &e.mors {
                let _ = writeln!(out, "mor {} {} {}", m.name, m.src, m.dst);
            }
            for c in &e.comps {
                let _ = writeln!(out, "comp {} {} = {}", c.f, c.g, c.h);
            }
        }
    }
    out
}

struct MValue(Option<u32>);

impl fmt::Display for MValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            Some(n) => write!(f, "{}", n),
            None => f.write_str("inf"),
        }
    }
}
