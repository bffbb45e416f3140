//! Graphviz export of skeletons and subspace lattices, plus a small
//! syntax checker for the subset of DOT we emit.

use std::fmt::Write as _;

use garside_core::invariants::{Pair, SubspaceLattice};
use garside_core::{Category, GarsideFamily};

const PALETTE: [&str; 6] = ["blue", "red", "darkgreen", "orange", "purple", "brown"];

fn quote(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        match c {
            '"' | '\\' => {
                out.push('\\');
                out.push(c);
            }
            '\n' => out.push_str("\\n"),
            _ => out.push(c),
        }
    }
    out.push('"');
    out
}

/// Objects as nodes and atoms as arrows from domain to target.
pub fn skeleton(cat: &Category) -> String {
    let mut out = String::from("digraph skeleton {\n");
    for o in cat.objects() {
        let _ = writeln!(out, "  {};", quote(o));
    }
    for a in cat.atoms() {
        let color = PALETTE[(a.color.max(1) - 1) % PALETTE.len()];
        let _ = writeln!(
            out,
            "  {} -> {} [label={}, color={}];",
            quote(&cat.objects()[a.src]),
            quote(&cat.objects()[a.dst]),
            quote(&a.name),
            color
        );
    }
    out.push_str("}\n");
    out
}

pub fn pair_label(fam: &GarsideFamily<'_>, p: &Pair) -> String {
    let t = fam.render_set(&p.t).join(", ");
    let d: Vec<&str> = p.d.iter().map(|&v| fam.cat().objects()[v].as_str()).collect();
    format!("T = {{{}}}\nD = {{{}}}", t, d.join(", "))
}

/// Hasse diagram, smaller pairs at the bottom; pairs inside the boundary
/// pair are drawn filled.
pub fn lattice(fam: &GarsideFamily<'_>, lat: &SubspaceLattice) -> String {
    let mut out = String::from("digraph lattice {\n  rankdir=BT;\n  node [shape=box];\n");
    for (i, p) in lat.pairs.iter().enumerate() {
        let style = if lat.in_boundary[i] { ", style=filled, fillcolor=lightgrey" } else { "" };
        let _ = writeln!(out, "  p{} [label={}{}];", i, quote(&pair_label(fam, &p.pair)), style);
    }
    for (i, j) in &lat.hasse {
        let _ = writeln!(out, "  p{} -> p{};", i, j);
    }
    out.push_str("}\n");
    out
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid DOT at byte {pos}: {message}")]
pub struct DotError {
    pub pos: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Id(String),
    Arrow,
    Punct(char),
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>, DotError> {
    let b = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < b.len() {
        let c = b[i];
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c == b'"' {
            let start = i;
            i += 1;
            let mut s = String::new();
            loop {
                match b.get(i) {
                    None => return Err(DotError { pos: start, message: "unterminated string".into() }),
                    Some(b'\\') if i + 1 < b.len() => {
                        i += 1;
                        let ch = text[i..].chars().next().expect("in bounds");
                        s.push(ch);
                        i += ch.len_utf8();
                    }
                    Some(b'"') => {
                        i += 1;
                        break;
                    }
                    Some(_) => {
                        let ch = text[i..].chars().next().expect("in bounds");
                        s.push(ch);
                        i += ch.len_utf8();
                    }
                }
            }
            out.push((start, Tok::Id(s)));
        } else if c == b'-' && b.get(i + 1) == Some(&b'>') {
            out.push((i, Tok::Arrow));
            i += 2;
        } else if b"{}[];,=".contains(&c) {
            out.push((i, Tok::Punct(c as char)));
            i += 1;
        } else if c.is_ascii_alphanumeric() || c == b'_' || c == b'.' || c == b'-' {
            let start = i;
            while i < b.len() && (b[i].is_ascii_alphanumeric() || b[i] == b'_' || b[i] == b'.' || b[i] == b'-') {
                if b[i] == b'-' && b.get(i + 1) == Some(&b'>') {
                    break;
                }
                i += 1;
            }
            out.push((start, Tok::Id(text[start..i].to_string())));
        } else {
            return Err(DotError { pos: i, message: format!("unexpected character '{}'", c as char) });
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
}

impl Parser {
    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |t| t.0)
    }

    fn fail<T>(&self, message: &str) -> Result<T, DotError> {
        Err(DotError { pos: self.pos(), message: message.into() })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|t| &t.1)
    }

    fn punct(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Punct(c)) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn id(&mut self) -> Result<String, DotError> {
        match self.peek() {
            Some(Tok::Id(s)) => {
                let s = s.clone();
                self.at += 1;
                Ok(s)
            }
            _ => self.fail("expected an identifier"),
        }
    }

    fn attrs(&mut self) -> Result<(), DotError> {
        while self.punct('[') {
            while !self.punct(']') {
                self.id()?;
                if !self.punct('=') {
                    return self.fail("expected '=' in attribute");
                }
                self.id()?;
                self.punct(',');
                self.punct(';');
            }
        }
        Ok(())
    }
}

/// Accepts `[strict] (graph|digraph) [id] { stmt* }` where statements are
/// attribute assignments, node statements and edge chains with optional
/// attribute lists. Edge operators must match the graph kind.
pub fn check_dot(text: &str) -> Result<(), DotError> {
    let mut p = Parser { toks: tokenize(text)?, at: 0, end: text.len() };
    let mut kw = p.id()?;
    if kw == "strict" {
        kw = p.id()?;
    }
    let directed = match kw.as_str() {
        "digraph" => true,
        "graph" => false,
        _ => return p.fail("expected 'graph' or 'digraph'"),
    };
    if !directed {
        return p.fail("undirected graphs are not emitted");
    }
    if matches!(p.peek(), Some(Tok::Id(_))) {
        p.id()?;
    }
    if !p.punct('{') {
        return p.fail("expected '{'");
    }
    loop {
        if p.punct('}') {
            break;
        }
        if p.peek().is_none() {
            return p.fail("unexpected end of input, expected '}'");
        }
        let head = p.id()?;
        if matches!(head.as_str(), "node" | "edge" | "graph") && p.peek() == Some(&Tok::Punct('[')) {
            p.attrs()?;
        } else if p.punct('=') {
            p.id()?;
        } else {
            while p.peek() == Some(&Tok::Arrow) {
                p.at += 1;
                p.id()?;
            }
            p.attrs()?;
        }
        p.punct(';');
    }
    if p.peek().is_some() {
        return p.fail("trailing input after the closing brace");
    }
    Ok(())
}
