//! Line-based text formats for algebras, almost complex structures and
//! family parameter sets.
//!
//! ```text
//! # su(2)
//! dim 3
//! basis A B C
//! metric identity
//! bracket A B -> 2 C
//! bracket B C -> 2 A
//! bracket C A -> 2 B
//! ```
//!
//! `metric rows; 1 0; 0 1` and `acs rows; 0 -1; 1 0` give matrices row by
//! row. Scalars are integers or `p/q`. Brackets not declared are zero and
//! `[v, u]` is filled in from `[u, v]`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use hermitia_core::family::{EtaSign, G8Parameters};
use hermitia_core::{LieAlgebra, Matrix, Rational, SpherePoint, Tolerance};
use num_traits::{One, Zero};

use crate::error::ParseError;

/// An algebra together with an optional almost complex structure.
#[derive(Debug, Clone, PartialEq)]
pub struct AlgebraDocument {
    pub algebra: LieAlgebra<Rational>,
    pub acs: Option<Matrix<Rational>>,
}

/// A whitespace-separated token with its 1-based column.
#[derive(Debug, Clone, Copy)]
struct Token<'a> {
    column: usize,
    text: &'a str,
}

fn strip_comment(line: &str) -> &str {
    line.split('#').next().unwrap_or("")
}

fn tokens(line: &str, offset: usize) -> Vec<Token<'_>> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in line.char_indices() {
        if ch.is_whitespace() {
            if let Some(s) = start.take() {
                out.push(Token {
                    column: offset + line[..s].chars().count() + 1,
                    text: &line[s..i],
                });
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push(Token {
            column: offset + line[..s].chars().count() + 1,
            text: &line[s..],
        });
    }
    out
}

pub fn parse_rational(text: &str) -> Option<Rational> {
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (text, None),
    };
    let valid = |s: &str| {
        let digits = s.strip_prefix(['-', '+']).unwrap_or(s);
        !digits.is_empty() && digits.chars().all(|c| c.is_ascii_digit())
    };
    if !valid(num) || den.is_some_and(|d| !valid(d) || d.starts_with(['-', '+'])) {
        return None;
    }
    let num = num.strip_prefix('+').unwrap_or(num);
    let n: Rational = num.parse().ok()?;
    match den {
        Some(d) => {
            let d: Rational = d.parse().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(n / d)
            }
        }
        None => Some(n),
    }
}

fn scalar(line: usize, tok: Token<'_>) -> Result<Rational, ParseError> {
    parse_rational(tok.text).ok_or_else(|| {
        ParseError::new(
            line,
            tok.column,
            format!("expected an integer or p/q rational, found `{}`", tok.text),
        )
    })
}

/// Parses `rows; a b; c d` (the part after `metric` or `acs`).
fn matrix_rows(
    line_no: usize,
    rest: &str,
    rest_col: usize,
    n: usize,
    what: &str,
) -> Result<Matrix<Rational>, ParseError> {
    let mut segments = Vec::new();
    let mut col = rest_col;
    for seg in rest.split(';') {
        segments.push((col, seg));
        col += seg.chars().count() + 1;
    }
    let (head_col, head) = segments[0];
    let head_tokens = tokens(head, head_col - 1);
    if head_tokens.len() != 1 || head_tokens[0].text != "rows" {
        return Err(ParseError::new(
            line_no,
            head_col,
            format!("expected `{what} identity` or `{what} rows; ...`"),
        ));
    }
    let rows: Vec<(usize, Vec<Token<'_>>)> = segments[1..]
        .iter()
        .map(|&(c, s)| (c, tokens(s, c - 1)))
        .filter(|(_, t)| !t.is_empty())
        .collect();
    if rows.len() != n {
        return Err(ParseError::new(
            line_no,
            rest_col,
            format!("{what} needs {n} rows, found {}", rows.len()),
        ));
    }
    let mut out = Vec::with_capacity(n);
    for (c, row) in rows {
        if row.len() != n {
            return Err(ParseError::new(
                line_no,
                c,
                format!("{what} row needs {n} entries, found {}", row.len()),
            ));
        }
        out.push(row.into_iter().map(|t| scalar(line_no, t)).collect::<Result<Vec<_>, _>>()?);
    }
    Ok(Matrix::from_rows(out).expect("rows checked to be square"))
}

/// Text after the first token, and its starting column.
fn rest_after<'a>(line: &'a str, first: Token<'_>) -> (&'a str, usize) {
    let byte = line
        .char_indices()
        .nth(first.column - 1 + first.text.chars().count())
        .map(|(i, _)| i)
        .unwrap_or(line.len());
    (&line[byte..], first.column + first.text.chars().count())
}

pub fn parse_algebra(text: &str) -> Result<AlgebraDocument, ParseError> {
    let mut dim: Option<usize> = None;
    let mut names: Option<Vec<String>> = None;
    let mut gram: Option<Matrix<Rational>> = None;
    let mut acs: Option<Matrix<Rational>> = None;
    // unordered pair -> (line, coefficients of [lo, hi])
    let mut brackets: BTreeMap<(usize, usize), (usize, Vec<Rational>)> = BTreeMap::new();
    let mut last_line = 0;
    let mut metric_line = 1;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        last_line = line_no;
        let line = strip_comment(raw);
        let toks = tokens(line, 0);
        let Some(&first) = toks.first() else { continue };
        match first.text {
            "dim" => {
                if dim.is_some() {
                    return Err(ParseError::new(line_no, first.column, "duplicate `dim`"));
                }
                if toks.len() != 2 {
                    return Err(ParseError::new(line_no, first.column, "expected `dim <n>`"));
                }
                let n: usize = toks[1].text.parse().ok().filter(|&n| n > 0).ok_or_else(|| {
                    ParseError::new(line_no, toks[1].column, "dimension must be a positive integer")
                })?;
                dim = Some(n);
            }
            "basis" => {
                let n = dim.ok_or_else(|| {
                    ParseError::new(line_no, first.column, "`dim` must come before `basis`")
                })?;
                if names.is_some() {
                    return Err(ParseError::new(line_no, first.column, "duplicate `basis`"));
                }
                let list: Vec<String> = toks[1..].iter().map(|t| t.text.to_string()).collect();
                if list.len() != n {
                    return Err(ParseError::new(
                        line_no,
                        first.column,
                        format!("basis needs {n} names, found {}", list.len()),
                    ));
                }
                for (i, t) in toks[1..].iter().enumerate() {
                    if list[..i].contains(&list[i]) {
                        return Err(ParseError::new(
                            line_no,
                            t.column,
                            format!("basis name `{}` repeated", t.text),
                        ));
                    }
                    if parse_rational(t.text).is_some() || matches!(t.text, "+" | "-" | "->") {
                        return Err(ParseError::new(
                            line_no,
                            t.column,
                            format!("`{}` cannot be a basis name", t.text),
                        ));
                    }
                }
                names = Some(list);
            }
            "metric" | "acs" => {
                let n = require_basis(&names, line_no, first.column)?.len();
                let target = if first.text == "metric" { &mut gram } else { &mut acs };
                if target.is_some() {
                    return Err(ParseError::new(
                        line_no,
                        first.column,
                        format!("duplicate `{}`", first.text),
                    ));
                }
                let m = if toks.len() == 2 && toks[1].text == "identity" {
                    Matrix::identity(n)
                } else {
                    let (rest, col) = rest_after(line, first);
                    matrix_rows(line_no, rest, col, n, first.text)?
                };
                if first.text == "metric" {
                    metric_line = line_no;
                }
                *target = Some(m);
            }
            "bracket" => {
                let basis = require_basis(&names, line_no, first.column)?;
                let (u, v, coeffs) = parse_bracket(line_no, &toks, basis)?;
                let (key, oriented) = if u < v {
                    ((u, v), coeffs)
                } else {
                    ((v, u), coeffs.into_iter().map(|c| -c).collect())
                };
                if let Some((prev_line, prev)) = brackets.get(&key) {
                    if *prev != oriented {
                        return Err(ParseError::new(
                            line_no,
                            first.column,
                            format!(
                                "bracket of {} and {} already declared on line {prev_line} with a different value",
                                basis[key.0], basis[key.1]
                            ),
                        ));
                    }
                } else {
                    brackets.insert(key, (line_no, oriented));
                }
            }
            other => {
                return Err(ParseError::new(
                    line_no,
                    first.column,
                    format!("unknown directive `{other}`"),
                ))
            }
        }
    }

    let names = names.ok_or_else(|| {
        ParseError::new(last_line.max(1), 1, "missing `dim` and `basis` declarations")
    })?;
    let n = names.len();
    let gram = gram.unwrap_or_else(|| Matrix::identity(n));
    let mut algebra = LieAlgebra::new(names, gram, Tolerance::DEFAULT)
        .map_err(|e| ParseError::new(metric_line, 1, e.to_string()))?;
    for ((u, v), (line_no, coeffs)) in brackets {
        algebra
            .set_bracket(u, v, &coeffs)
            .map_err(|e| ParseError::new(line_no, 1, e.to_string()))?;
    }
    Ok(AlgebraDocument { algebra, acs })
}

fn require_basis(
    names: &Option<Vec<String>>,
    line: usize,
    column: usize,
) -> Result<&[String], ParseError> {
    names
        .as_deref()
        .ok_or_else(|| ParseError::new(line, column, "`basis` must be declared first"))
}

/// `bracket u v -> c1 n1 + c2 n2 - n3`; a missing coefficient means 1 and
/// `-> 0` declares a zero bracket.
fn parse_bracket(
    line: usize,
    toks: &[Token<'_>],
    basis: &[String],
) -> Result<(usize, usize, Vec<Rational>), ParseError> {
    let lookup = |t: Token<'_>| {
        basis.iter().position(|b| b == t.text).ok_or_else(|| {
            ParseError::new(line, t.column, format!("`{}` is not a declared basis name", t.text))
        })
    };
    if toks.len() < 5 || toks[3].text != "->" {
        let col = toks.get(3).map_or(toks[0].column, |t| t.column);
        return Err(ParseError::new(line, col, "expected `bracket <u> <v> -> <terms>`"));
    }
    let u = lookup(toks[1])?;
    let v = lookup(toks[2])?;
    if u == v {
        return Err(ParseError::new(line, toks[2].column, "bracket of an element with itself is zero"));
    }
    let mut coeffs = vec![Rational::zero(); basis.len()];
    let rhs = &toks[4..];
    if rhs.len() == 1 && parse_rational(rhs[0].text).is_some_and(|q| q.is_zero()) {
        return Ok((u, v, coeffs));
    }
    let mut i = 0;
    let mut first = true;
    while i < rhs.len() {
        let mut sign = Rational::one();
        if !first {
            match rhs[i].text {
                "+" => {}
                "-" => sign = -sign,
                _ => {
                    return Err(ParseError::new(line, rhs[i].column, "expected `+` or `-` between terms"))
                }
            }
            i += 1;
        }
        first = false;
        let Some(&tok) = rhs.get(i) else {
            let col = rhs.last().map_or(1, |t| t.column);
            return Err(ParseError::new(line, col, "dangling operator"));
        };
        let (coeff, name) = match parse_rational(tok.text) {
            Some(c) => {
                let name = *rhs.get(i + 1).ok_or_else(|| {
                    ParseError::new(line, tok.column, "coefficient without a basis name")
                })?;
                i += 2;
                (c, name)
            }
            None => {
                i += 1;
                (Rational::one(), tok)
            }
        };
        let k = lookup(name)?;
        coeffs[k] += sign * coeff;
    }
    Ok((u, v, coeffs))
}

/// A standalone almost complex structure: one `acs` line in a file that may
/// otherwise hold only comments.
pub fn parse_acs(text: &str, dim: usize) -> Result<Matrix<Rational>, ParseError> {
    let mut found = None;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = strip_comment(raw);
        let toks = tokens(line, 0);
        let Some(&first) = toks.first() else { continue };
        if first.text != "acs" {
            return Err(ParseError::new(line_no, first.column, "expected an `acs rows; ...` line"));
        }
        if found.is_some() {
            return Err(ParseError::new(line_no, first.column, "duplicate `acs`"));
        }
        let (rest, col) = rest_after(line, first);
        found = Some(matrix_rows(line_no, rest, col, dim, "acs")?);
    }
    found.ok_or_else(|| ParseError::new(1, 1, "no `acs` line found"))
}

fn fmt_matrix(out: &mut String, keyword: &str, m: &Matrix<Rational>) {
    let rows: Vec<String> = (0..m.rows())
        .map(|i| m.row(i).iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" "))
        .collect();
    let _ = writeln!(out, "{keyword} rows; {}", rows.join("; "));
}

/// Text that [`parse_algebra`] reads back to the same algebra.
pub fn serialize_algebra(algebra: &LieAlgebra<Rational>, acs: Option<&Matrix<Rational>>) -> String {
    let n = algebra.dim();
    let names = algebra.basis_names();
    let mut out = String::new();
    let _ = writeln!(out, "dim {n}");
    let _ = writeln!(out, "basis {}", names.join(" "));
    if algebra.gram().is_identity(Tolerance::DEFAULT) {
        out.push_str("metric identity\n");
    } else {
        fmt_matrix(&mut out, "metric", algebra.gram());
    }
    for i in 0..n {
        for j in i + 1..n {
            let terms: Vec<String> = algebra
                .basis_bracket(i, j)
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(k, c)| format!("{c} {}", names[k]))
                .collect();
            if !terms.is_empty() {
                let _ = writeln!(out, "bracket {} {} -> {}", names[i], names[j], terms.join(" + "));
            }
        }
    }
    if let Some(j) = acs {
        fmt_matrix(&mut out, "acs", j);
    }
    out
}

/// Coefficients, sphere points and the sign of `eta` for one member of the
/// eight-dimensional family.
#[derive(Debug, Clone, PartialEq)]
pub struct G8Document {
    pub params: G8Parameters<Rational>,
    pub sphere1: Option<SpherePoint<Rational>>,
    pub sphere2: Option<SpherePoint<Rational>>,
    pub eta: EtaSign,
}

/// Whether the first directive of `text` opens a family parameter file.
pub fn is_g8_document(text: &str) -> bool {
    text.lines()
        .flat_map(|l| tokens(strip_comment(l), 0).into_iter().next())
        .next()
        .is_some_and(|t| t.text.starts_with("g8") || t.text.starts_with("sphere") || t.text == "eta")
}

/// ```text
/// g8 { rho = 2, c12 = -2, t15 = -2 }
/// sphere1 = 1 0 0
/// sphere2 = 1 0 0
/// eta = 1
/// ```
pub fn parse_g8(text: &str) -> Result<G8Document, ParseError> {
    let mut values: [Option<Rational>; 13] = Default::default();
    let mut seen_block = false;
    let mut in_block: Option<usize> = None;
    let mut sphere1 = None;
    let mut sphere2 = None;
    let mut eta = None;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let mut line = strip_comment(raw).to_string();
        let mut offset = 0;
        if in_block.is_none() {
            let toks = tokens(&line, 0);
            let Some(&first) = toks.first() else { continue };
            if first.text == "g8" || first.text.starts_with("g8{") {
                if seen_block {
                    return Err(ParseError::new(line_no, first.column, "duplicate `g8` block"));
                }
                let Some(brace) = line.find('{') else {
                    return Err(ParseError::new(line_no, first.column, "expected `g8 {`"));
                };
                seen_block = true;
                in_block = Some(line_no);
                offset = line[..=brace].chars().count();
                line = line[brace + 1..].to_string();
            } else {
                parse_g8_line(line_no, &line, &mut sphere1, &mut sphere2, &mut eta)?;
                continue;
            }
        }
        let (body, closed) = match line.find('}') {
            Some(p) => (&line[..p], Some(p)),
            None => (line.as_str(), None),
        };
        let mut col = offset;
        for entry in body.split(',') {
            let toks = tokens(entry, col);
            col += entry.chars().count() + 1;
            if toks.is_empty() {
                continue;
            }
            if toks.len() != 3 || toks[1].text != "=" {
                return Err(ParseError::new(line_no, toks[0].column, "expected `<name> = <value>`"));
            }
            let i = G8Parameters::<Rational>::index_of(toks[0].text).ok_or_else(|| {
                ParseError::new(
                    line_no,
                    toks[0].column,
                    format!("unknown coefficient `{}`", toks[0].text),
                )
            })?;
            if values[i].is_some() {
                return Err(ParseError::new(
                    line_no,
                    toks[0].column,
                    format!("coefficient `{}` given twice", toks[0].text),
                ));
            }
            values[i] = Some(scalar(line_no, toks[2])?);
        }
        if let Some(p) = closed {
            in_block = None;
            let tail = &line[p + 1..];
            if let Some(t) = tokens(tail, offset + line[..=p].chars().count()).first() {
                return Err(ParseError::new(line_no, t.column, "unexpected text after `}`"));
            }
        }
    }
    if let Some(open) = in_block {
        return Err(ParseError::new(open, 1, "unterminated `g8` block"));
    }
    if !seen_block {
        return Err(ParseError::new(1, 1, "missing `g8 { ... }` block"));
    }
    Ok(G8Document {
        params: G8Parameters::from_array(values.map(|v| v.unwrap_or_else(Rational::zero))),
        sphere1,
        sphere2,
        eta: eta.unwrap_or(EtaSign::Plus),
    })
}

fn parse_g8_line(
    line_no: usize,
    line: &str,
    sphere1: &mut Option<SpherePoint<Rational>>,
    sphere2: &mut Option<SpherePoint<Rational>>,
    eta: &mut Option<EtaSign>,
) -> Result<(), ParseError> {
    let toks = tokens(line, 0);
    let first = toks[0];
    if toks.len() < 2 || toks[1].text != "=" {
        return Err(ParseError::new(line_no, first.column, "expected `<key> = <value>`"));
    }
    let dup = || ParseError::new(line_no, first.column, format!("duplicate `{}`", first.text));
    match first.text {
        "sphere1" | "sphere2" => {
            if toks.len() != 5 {
                return Err(ParseError::new(line_no, first.column, "a sphere point needs three scalars"));
            }
            let [l, m, n] = [2, 3, 4].map(|i| scalar(line_no, toks[i]));
            let p = SpherePoint::new(l?, m?, n?, Tolerance::DEFAULT).map_err(|_| {
                ParseError::new(line_no, toks[2].column, "point is not on the unit sphere")
            })?;
            let slot = if first.text == "sphere1" { sphere1 } else { sphere2 };
            if slot.replace(p).is_some() {
                return Err(dup());
            }
        }
        "eta" => {
            let value = match toks.get(2).map(|t| t.text) {
                Some("1") | Some("+1") if toks.len() == 3 => EtaSign::Plus,
                Some("-1") if toks.len() == 3 => EtaSign::Minus,
                _ => return Err(ParseError::new(line_no, first.column, "expected `eta = 1` or `eta = -1`")),
            };
            if eta.replace(value).is_some() {
                return Err(dup());
            }
        }
        other => {
            return Err(ParseError::new(line_no, first.column, format!("unknown key `{other}`")))
        }
    }
    Ok(())
}
