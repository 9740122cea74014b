//! The `cfk v1` text format.
//!
//! Line-based, UTF-8, LF endings, `#` starts a comment:
//!
//! ```text
//! cfk v1
//! name 4_1
//! gen x 0 0
//! gen a1 0 0
//! gen b1 1 -1
//! gen c1 -1 1
//! gen d1 0 0
//! d a1 = U.b1 + V.c1
//! d b1 = V.d1
//! d c1 = U.d1
//! ```
//!
//! A term is `<monomial>.<id>` or a bare `<id>` for a unit coefficient;
//! monomials read `U`, `V3`, `U2V1` with the U part before the V part
//! and exponent 1 optionally written out. Generators with no `d` line
//! have zero differential. Serialization is canonical: generators in
//! stored order, `d` lines in generator order, terms sorted by
//! (generator index, U exponent, V exponent), exponent 1 without the
//! digit. Parsing a serialized complex gives back the same value, and
//! serializing a parsed file canonicalizes it.

use crate::complex::{CfkComplex, Chain, Generator};
use crate::poly::{BivariatePoly, Monomial, DEFAULT_EXPONENT_CAP};
use std::collections::BTreeMap;
use std::fmt::Write as _;

/// A parse failure with 1-based line and column of the offending token.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

fn err(line: usize, column: usize, message: impl Into<String>) -> ParseError {
    ParseError { line, column, message: message.into() }
}

fn is_id(token: &str) -> bool {
    let mut chars = token.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Splits a line into (column, token) pairs, honoring `#` comments.
fn tokenize(line: &str) -> Vec<(usize, &str)> {
    let content = match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    };
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in content.char_indices() {
        if ch.is_whitespace() {
            if let Some(s) = start.take() {
                out.push((s + 1, &content[s..i]));
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push((s + 1, &content[s..]));
    }
    out
}

fn parse_exponent(digits: &str, line: usize, col: usize) -> Result<u32, ParseError> {
    let value: u64 = digits
        .parse()
        .map_err(|_| err(line, col, format!("bad exponent `{digits}`")))?;
    if value > DEFAULT_EXPONENT_CAP as u64 {
        return Err(err(
            line,
            col,
            format!("exponent {value} exceeds cap {DEFAULT_EXPONENT_CAP}"),
        ));
    }
    Ok(value as u32)
}

/// Parses `U2V1`-style monomials: optional U part, then optional V part,
/// at least one present.
fn parse_monomial(text: &str, line: usize, col: usize) -> Result<Monomial, ParseError> {
    let bytes = text.as_bytes();
    let mut i = 0;
    let mut u_exp = 0u32;
    let mut v_exp = 0u32;
    let mut saw = false;
    if i < bytes.len() && bytes[i] == b'U' {
        saw = true;
        i += 1;
        let start = i;
        while i < bytes.len() && bytes[i].is_ascii_digit() {
            i += 1;
        }
        u_exp = if start == i { 1 } else { parse_exponent(&text[start..i], line, col)? };
    }
    if i < bytes.len() && bytes[i] == b'V' {
        saw = true;
        i += 1;
        let start = i;
        while i < bytes.len() && bytes[i].is_ascii_digit() {
            i += 1;
        }
        v_exp = if start == i { 1 } else { parse_exponent(&text[start..i], line, col)? };
    }
    if !saw || i != bytes.len() {
        return Err(err(line, col, format!("bad monomial `{text}`")));
    }
    Ok(Monomial::new(u_exp, v_exp))
}

/// Parses a differential term: `U2V1.id` or a bare `id`.
fn parse_term(text: &str, line: usize, col: usize) -> Result<(Monomial, &str), ParseError> {
    match text.find('.') {
        Some(dot) => {
            let mono = parse_monomial(&text[..dot], line, col)?;
            let id = &text[dot + 1..];
            if !is_id(id) {
                return Err(err(line, col + dot + 1, format!("bad generator id `{id}`")));
            }
            Ok((mono, id))
        }
        None => {
            if !is_id(text) {
                return Err(err(line, col, format!("bad term `{text}`")));
            }
            Ok((Monomial::ONE, text))
        }
    }
}

/// Parses `cfk v1` text into a structurally faithful complex.
pub fn parse_cfk(text: &str) -> Result<CfkComplex, ParseError> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));

    // Header: first non-blank, non-comment line must read `cfk v1`.
    let mut header_seen = false;
    let mut name: Option<String> = None;
    let mut generators: Vec<Generator> = Vec::new();
    let mut gen_lines: BTreeMap<String, usize> = BTreeMap::new();
    let mut d_lines: Vec<(usize, Vec<(usize, String)>)> = Vec::new();

    for (lineno, raw) in &mut lines {
        let tokens = tokenize(raw);
        if tokens.is_empty() {
            continue;
        }
        if !header_seen {
            let words: Vec<&str> = tokens.iter().map(|(_, t)| *t).collect();
            if words != ["cfk", "v1"] {
                return Err(err(lineno, tokens[0].0, "expected header `cfk v1`"));
            }
            header_seen = true;
            continue;
        }
        let (col0, keyword) = tokens[0];
        match keyword {
            "name" => {
                let &[(coln, n)] = &tokens[1..] else {
                    return Err(err(lineno, col0, "expected `name <token>`"));
                };
                if !is_id(n) && !n.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
                    return Err(err(lineno, coln, format!("bad name token `{n}`")));
                }
                if name.replace(n.to_string()).is_some() {
                    return Err(err(lineno, col0, "duplicate `name` line"));
                }
            }
            "gen" => {
                let &[(coli, id), (colu, gu), (colv, gv)] = &tokens[1..] else {
                    return Err(err(lineno, col0, "expected `gen <id> <gr_u> <gr_v>`"));
                };
                if !is_id(id) {
                    return Err(err(lineno, coli, format!("bad generator id `{id}`")));
                }
                if gen_lines.contains_key(id) {
                    return Err(err(lineno, coli, format!("duplicate generator `{id}`")));
                }
                let gr_u: i32 = gu
                    .parse()
                    .map_err(|_| err(lineno, colu, format!("bad integer `{gu}`")))?;
                let gr_v: i32 = gv
                    .parse()
                    .map_err(|_| err(lineno, colv, format!("bad integer `{gv}`")))?;
                gen_lines.insert(id.to_string(), generators.len());
                generators.push(Generator::new(id, gr_u, gr_v));
            }
            "d" => {
                // `d <id> = <term> [+ <term>]...`; resolved after all gens.
                let rest: Vec<(usize, String)> = tokens[1..]
                    .iter()
                    .map(|(c, t)| (*c, t.to_string()))
                    .collect();
                d_lines.push((lineno, rest));
            }
            other => {
                return Err(err(lineno, col0, format!("unknown directive `{other}`")));
            }
        }
    }

    if !header_seen {
        return Err(err(1, 1, "expected header `cfk v1`"));
    }
    let Some(name) = name else {
        return Err(err(1, 1, "missing `name` line"));
    };

    let mut cx = CfkComplex::new(name, generators)
        .expect("duplicate ids rejected during parsing");

    let mut have_d: BTreeMap<usize, usize> = BTreeMap::new();
    for (lineno, tokens) in d_lines {
        if tokens.len() < 3 {
            return Err(err(lineno, 1, "expected `d <id> = <term> [+ <term>]...`"));
        }
        let (coli, id) = (&tokens[0].0, tokens[0].1.as_str());
        let src = cx
            .index_of(id)
            .ok_or_else(|| err(lineno, *coli, format!("unknown generator `{id}`")))?;
        if have_d.insert(src, lineno).is_some() {
            return Err(err(lineno, *coli, format!("duplicate `d` line for `{id}`")));
        }
        let (cole, eq) = (&tokens[1].0, tokens[1].1.as_str());
        if eq != "=" {
            return Err(err(lineno, *cole, "expected `=`"));
        }
        let mut chain = Chain::zero();
        let mut seen: BTreeMap<(usize, Monomial), ()> = BTreeMap::new();
        let mut expect_term = true;
        for (col, tok) in &tokens[2..] {
            if expect_term {
                let (mono, tid) = parse_term(tok, lineno, *col)?;
                let tgt = cx
                    .index_of(tid)
                    .ok_or_else(|| err(lineno, *col, format!("unknown generator `{tid}`")))?;
                if seen.insert((tgt, mono), ()).is_some() {
                    return Err(err(lineno, *col, format!("duplicate term `{tok}`")));
                }
                chain.add_term(tgt, &BivariatePoly::monomial(mono));
                expect_term = false;
            } else {
                if tok != "+" {
                    return Err(err(lineno, *col, "expected `+` between terms"));
                }
                expect_term = true;
            }
        }
        if expect_term {
            return Err(err(lineno, 1, "dangling `+` or empty term list"));
        }
        let src_id = cx.generator(src).id.clone();
        cx.set_differential(&src_id, chain).expect("known generator");
    }

    Ok(cx)
}

fn render_monomial(m: Monomial) -> String {
    let mut s = String::new();
    match m.u_exp {
        0 => {}
        1 => s.push('U'),
        n => {
            let _ = write!(s, "U{n}");
        }
    }
    match m.v_exp {
        0 => {}
        1 => s.push('V'),
        n => {
            let _ = write!(s, "V{n}");
        }
    }
    s
}

/// Canonical `cfk v1` serialization.
pub fn serialize_cfk(c: &CfkComplex) -> String {
    let mut out = String::new();
    out.push_str("cfk v1\n");
    let _ = writeln!(out, "name {}", c.name());
    for g in c.generators() {
        let _ = writeln!(out, "gen {} {} {}", g.id, g.gr_u, g.gr_v);
    }
    for (src, chain) in c.differentials() {
        if chain.is_zero() {
            continue;
        }
        let mut terms: Vec<(usize, Monomial)> = Vec::new();
        for (tgt, poly) in chain.iter() {
            for m in poly.terms() {
                terms.push((tgt, *m));
            }
        }
        terms.sort_by_key(|(g, m)| (*g, m.u_exp, m.v_exp));
        let rendered: Vec<String> = terms
            .iter()
            .map(|(g, m)| {
                let id = &c.generator(*g).id;
                if m.is_one() {
                    id.clone()
                } else {
                    format!("{}.{}", render_monomial(*m), id)
                }
            })
            .collect();
        let _ = writeln!(out, "d {} = {}", c.generator(src).id, rendered.join(" + "));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{box_sum_complex, unit_box_complex, unknot_complex};

    #[test]
    fn parses_a_unit_box_file() {
        let text = "cfk v1\nname box\ngen a 0 0\ngen b 1 -1\ngen c -1 1\ngen d 0 0\n\
                    d a = U.b + V.c\nd b = V.d\nd c = U.d\n";
        let cx = parse_cfk(text).unwrap();
        assert_eq!(cx.len(), 4);
        assert!(cx.validate().is_empty());
        assert_eq!(cx.find_unit_boxes().len(), 1);
    }

    #[test]
    fn serializes_the_unknot_to_three_lines() {
        let text = serialize_cfk(&unknot_complex());
        assert_eq!(text, "cfk v1\nname unknot\ngen x 0 0\n");
    }

    #[test]
    fn serialized_box_contains_the_box_line() {
        let cx = unit_box_complex(["a", "b", "c", "d"], 0, 0);
        let text = serialize_cfk(&cx);
        assert!(text.contains("d a = U.b + V.c"));
    }

    #[test]
    fn duplicate_term_is_a_parse_error() {
        let text = "cfk v1\nname bad\ngen a 0 0\ngen b 1 -1\nd a = U.b + U.b\n";
        let e = parse_cfk(text).unwrap_err();
        assert!(e.message.contains("duplicate term"));
        assert_eq!(e.line, 5);
    }

    #[test]
    fn duplicate_generator_is_a_parse_error() {
        let text = "cfk v1\nname bad\ngen a 0 0\ngen a 0 0\n";
        let e = parse_cfk(text).unwrap_err();
        assert!(e.message.contains("duplicate generator"));
    }

    #[test]
    fn missing_header_is_a_parse_error() {
        assert!(parse_cfk("name x\n").is_err());
        assert!(parse_cfk("").is_err());
    }

    #[test]
    fn unknown_target_is_a_parse_error() {
        let text = "cfk v1\nname bad\ngen a 0 0\nd a = U.zz\n";
        let e = parse_cfk(text).unwrap_err();
        assert!(e.message.contains("unknown generator"));
    }

    #[test]
    fn comments_and_blank_lines_are_ignored() {
        let text = "# leading comment\n\ncfk v1\n# mid\nname unknot\ngen x 0 0 # trailing\n";
        let cx = parse_cfk(text).unwrap();
        assert_eq!(cx, unknot_complex());
    }

    #[test]
    fn bare_id_term_parses_as_unit_coefficient() {
        let text = "cfk v1\nname nr\ngen a 0 0\ngen b 0 -1\nd a = b\n";
        let cx = parse_cfk(text).unwrap();
        assert_eq!(cx.validate().len(), 1);
    }

    #[test]
    fn round_trips_catalog_style_complexes() {
        let cx = box_sum_complex("kt", &[(1, 1, 1), (0, 0, 2), (-1, -1, 1)]);
        let text = serialize_cfk(&cx);
        let back = parse_cfk(&text).unwrap();
        assert_eq!(back, cx);
        assert_eq!(serialize_cfk(&back), text);
    }

    #[test]
    fn explicit_exponent_one_is_accepted_and_canonicalized() {
        let text = "cfk v1\nname box\ngen a 0 0\ngen b 1 -1\ngen c -1 1\ngen d 0 0\n\
                    d a = U1.b + V1.c\nd b = V.d\nd c = U.d\n";
        let cx = parse_cfk(text).unwrap();
        assert!(serialize_cfk(&cx).contains("d a = U.b + V.c"));
    }

    #[test]
    fn exponent_cap_is_enforced() {
        let text = format!(
            "cfk v1\nname big\ngen a 0 0\ngen b 0 0\nd a = U{}.b\n",
            DEFAULT_EXPONENT_CAP as u64 + 1
        );
        assert!(parse_cfk(&text).is_err());
    }
}
