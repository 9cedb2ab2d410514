//! Line-oriented presentation format.
//!
//! ```text
//! field Q                 # or: field F 2   (also F2, F_2)
//! vertices v1 v2 v3
//! arrow a v1 v2           # arrow a : v1 -> v2
//! arrow b v1 v2
//! arrow c v2 v3
//! relations
//! c*a                     # function-style: a, then c
//! 2*c*b - 1/3*c*a
//! ```

use num_bigint::BigInt;

use super::{Path, Quiver};
use crate::bqa::Presentation;
use crate::error::{Error, Result};
use crate::linalg::{Field, Scalar};

pub fn parse_presentation(text: &str) -> Result<Presentation> {
    parse_presentation_with(text, None)
}

/// Parses a presentation; `field` overrides the file's `field` line.
pub fn parse_presentation_with(text: &str, field: Option<Field>) -> Result<Presentation> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("")))
        .filter(|(_, l)| !l.trim().is_empty());

    let (ln, line) = lines.next().ok_or_else(|| syntax(1, 1, "empty input, expected `field`"))?;
    let file_field = parse_field_line(ln, line)?;
    let field = field.unwrap_or(file_field);

    let (ln, line) = lines.next().ok_or_else(|| syntax(ln + 1, 1, "expected `vertices`"))?;
    let toks = words(line);
    if toks.first().map(|t| t.1) != Some("vertices") {
        return Err(syntax(ln, col_of(&toks, 0), "expected `vertices`"));
    }
    if toks.len() < 2 {
        return Err(syntax(ln, line.len() + 1, "at least one vertex is required"));
    }
    let vertices: Vec<String> = toks[1..].iter().map(|t| t.1.to_string()).collect();
    for (col, name) in &toks[1..] {
        check_vertex_name(ln, *col, name)?;
    }

    let mut arrows: Vec<(String, usize, usize)> = Vec::new();
    let mut in_relations = false;
    let mut raw_relations: Vec<(usize, &str)> = Vec::new();
    for (ln, line) in lines {
        if in_relations {
            raw_relations.push((ln, line));
            continue;
        }
        let toks = words(line);
        match toks[0].1 {
            "arrow" => {
                if toks.len() != 4 {
                    return Err(syntax(ln, toks[0].0, "expected `arrow <name> <source> <target>`"));
                }
                if !is_name(toks[1].1) {
                    return Err(syntax(ln, toks[1].0, &format!("invalid arrow name `{}`", toks[1].1)));
                }
                let mut ends = [0usize; 2];
                for (k, (_, v)) in toks[2..4].iter().enumerate() {
                    ends[k] = vertices
                        .iter()
                        .position(|x| x == v)
                        .ok_or_else(|| Error::UnknownVertex { line: ln, name: v.to_string() })?;
                }
                arrows.push((toks[1].1.to_string(), ends[0], ends[1]));
            }
            "relations" if toks.len() == 1 => in_relations = true,
            other => {
                return Err(syntax(
                    ln,
                    toks[0].0,
                    &format!("expected `arrow` or `relations`, found `{other}`"),
                ))
            }
        }
    }

    let quiver = Quiver::new(vertices, arrows)?;
    let mut generators = Vec::new();
    for (ln, line) in raw_relations {
        let gen = parse_relation(&quiver, field, ln, line)?;
        // Checked here so that the error carries the line number.
        for (p, _) in collect_terms(&gen) {
            if p.len() < 2 {
                return Err(Error::ShortRelation {
                    line: ln,
                    term: quiver.path_string(&p),
                    length: p.len(),
                });
            }
        }
        generators.push(gen);
    }
    Presentation::new(quiver, field, generators)
}

fn collect_terms(gen: &[(Path, Scalar)]) -> Vec<(Path, Scalar)> {
    let mut out: Vec<(Path, Scalar)> = Vec::new();
    for (p, c) in gen {
        match out.iter_mut().find(|(q, _)| q == p) {
            Some((_, x)) => *x = &*x + c,
            None => out.push((p.clone(), c.clone())),
        }
    }
    out.retain(|(_, c)| !c.is_zero());
    out
}

fn syntax(line: usize, column: usize, message: &str) -> Error {
    Error::Syntax { line, column, message: message.to_string() }
}

/// Whitespace-separated words with their 1-based columns.
fn words(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in line.char_indices() {
        if ch.is_whitespace() {
            if let Some(s) = start.take() {
                out.push((s + 1, &line[s..i]));
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push((s + 1, &line[s..]));
    }
    out
}

fn col_of(toks: &[(usize, &str)], i: usize) -> usize {
    toks.get(i).map(|t| t.0).unwrap_or(1)
}

fn is_name(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_alphanumeric() || c == '_' || c == '\'')
}

/// Vertex names may start with a digit; arrow names may not.
fn check_vertex_name(line: usize, column: usize, s: &str) -> Result<()> {
    if s.chars().all(|c| c.is_alphanumeric() || c == '_' || c == '\'') {
        Ok(())
    } else {
        Err(syntax(line, column, &format!("invalid name `{s}`")))
    }
}

fn parse_field_line(ln: usize, line: &str) -> Result<Field> {
    let toks = words(line);
    if toks.first().map(|t| t.1) != Some("field") {
        return Err(syntax(ln, col_of(&toks, 0), "expected `field`"));
    }
    let rest: String = toks[1..].iter().map(|t| t.1).collect::<Vec<_>>().concat();
    if rest == "Q" {
        return Ok(Field::Rational);
    }
    let digits = rest.strip_prefix("F_").or_else(|| rest.strip_prefix('F'));
    match digits.and_then(|d| d.parse::<u64>().ok()) {
        Some(p) => Field::prime(p).map_err(|e| syntax(ln, col_of(&toks, 1), &e.to_string())),
        None => Err(syntax(ln, col_of(&toks, 1), "expected `Q` or `F <prime>`")),
    }
}

#[derive(Debug, PartialEq)]
enum Tok<'a> {
    Name(&'a str),
    Number(&'a str),
    Star,
    Plus,
    Minus,
    Slash,
}

fn lex(ln: usize, line: &str) -> Result<Vec<(usize, Tok<'_>)>> {
    let mut out = Vec::new();
    let bytes: Vec<(usize, char)> = line.char_indices().collect();
    let mut i = 0;
    while i < bytes.len() {
        let (pos, ch) = bytes[i];
        let col = line[..pos].chars().count() + 1;
        if ch.is_whitespace() {
            i += 1;
            continue;
        }
        let single = match ch {
            '*' => Some(Tok::Star),
            '+' => Some(Tok::Plus),
            '-' => Some(Tok::Minus),
            '/' => Some(Tok::Slash),
            _ => None,
        };
        if let Some(t) = single {
            out.push((col, t));
            i += 1;
            continue;
        }
        let word = |pred: &dyn Fn(char) -> bool, i: &mut usize| {
            let start = bytes[*i].0;
            while *i < bytes.len() && pred(bytes[*i].1) {
                *i += 1;
            }
            let end = bytes.get(*i).map(|b| b.0).unwrap_or(line.len());
            &line[start..end]
        };
        if ch.is_ascii_digit() {
            out.push((col, Tok::Number(word(&|c: char| c.is_ascii_digit(), &mut i))));
        } else if ch.is_alphabetic() || ch == '_' {
            out.push((
                col,
                Tok::Name(word(&|c: char| c.is_alphanumeric() || c == '_' || c == '\'', &mut i)),
            ));
        } else {
            return Err(syntax(ln, col, &format!("unexpected character `{ch}`")));
        }
    }
    Ok(out)
}

/// `relline := ["-"] term (("+"|"-") term)*`,
/// `term := [coeff "*"] name ("*" name)*`, `coeff := int | int "/" int`.
fn parse_relation(q: &Quiver, field: Field, ln: usize, line: &str) -> Result<Vec<(Path, Scalar)>> {
    let toks = lex(ln, line)?;
    let end_col = line.chars().count() + 1;
    let mut pos = 0;
    let mut terms = Vec::new();
    let mut sign = 1i64;
    if let Some((_, Tok::Minus)) = toks.first() {
        sign = -1;
        pos += 1;
    }
    loop {
        let (coeff, path) = parse_term(q, field, ln, &toks, &mut pos, end_col)?;
        let c = if sign < 0 { -&coeff } else { coeff };
        terms.push((path, c));
        match toks.get(pos) {
            None => break,
            Some((_, Tok::Plus)) => sign = 1,
            Some((_, Tok::Minus)) => sign = -1,
            Some((col, t)) => return Err(syntax(ln, *col, &format!("expected `+` or `-`, found {t:?}"))),
        }
        pos += 1;
    }
    Ok(terms)
}

fn parse_term(
    q: &Quiver,
    field: Field,
    ln: usize,
    toks: &[(usize, Tok<'_>)],
    pos: &mut usize,
    end_col: usize,
) -> Result<(Scalar, Path)> {
    let col_at = |p: usize| toks.get(p).map(|t| t.0).unwrap_or(end_col);
    let mut coeff = field.one();
    if let Some((col, Tok::Number(n))) = toks.get(*pos) {
        let num: BigInt = n.parse().expect("digits");
        *pos += 1;
        let mut den = BigInt::from(1);
        if let Some((_, Tok::Slash)) = toks.get(*pos) {
            *pos += 1;
            match toks.get(*pos) {
                Some((_, Tok::Number(d))) => {
                    den = d.parse().expect("digits");
                    *pos += 1;
                }
                _ => return Err(syntax(ln, col_at(*pos), "expected a denominator")),
            }
        }
        coeff = field
            .from_ratio(&num, &den)
            .ok_or_else(|| syntax(ln, *col, &format!("denominator vanishes in {field}")))?;
        match toks.get(*pos) {
            Some((_, Tok::Star)) => *pos += 1,
            _ => return Err(syntax(ln, col_at(*pos), "expected `*` after coefficient")),
        }
    }
    let mut names: Vec<&str> = Vec::new();
    loop {
        match toks.get(*pos) {
            Some((_, Tok::Name(n))) => names.push(n),
            _ => return Err(syntax(ln, col_at(*pos), "expected an arrow name")),
        }
        *pos += 1;
        match toks.get(*pos) {
            Some((_, Tok::Star)) => *pos += 1,
            _ => break,
        }
    }
    let mut idx = Vec::with_capacity(names.len());
    for n in &names {
        idx.push(q.arrow_by_name(n).ok_or_else(|| Error::UnknownArrow { line: ln, name: n.to_string() })?);
    }
    for w in idx.windows(2) {
        if q.arrow(w[0]).source != q.arrow(w[1]).target {
            return Err(Error::NotComposable {
                line: ln,
                path: names.join("*"),
                left: q.arrow(w[0]).name.clone(),
                right: q.arrow(w[1]).name.clone(),
            });
        }
    }
    let path = Path::from_arrows(q, idx).expect("checked composable");
    Ok((coeff, path))
}
