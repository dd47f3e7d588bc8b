//! Text file formats: field headers, points, arrangements, triple systems
//! and realization ideals.
//!
//! Every writer produces the canonical form its reader accepts, so a
//! read/write cycle is byte-exact.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use cuspline_core::arrange::Arrangement;
use cuspline_core::gf::FieldCtx;
use cuspline_core::projplane::{ProjLine, ProjPoint};
use cuspline_core::realize::RealizationIdeal;
use cuspline_core::triples::TripleSystem;

/// A parse failure at a 1-based line number.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}: {message}")]
pub struct FormatError {
    pub line: usize,
    pub message: String,
}

fn fail<T>(line: usize, message: impl Into<String>) -> Result<T, FormatError> {
    Err(FormatError {
        line,
        message: message.into(),
    })
}

fn lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim_end_matches('\r')))
}

fn parse_num<T: std::str::FromStr>(line: usize, what: &str, s: &str) -> Result<T, FormatError> {
    s.parse()
        .or_else(|_| fail(line, format!("bad {what} {s:?}")))
}

/// Parses `field p=<p> n=<n> modulus=<c0,...,cn>`.
pub fn parse_field_header(line: usize, text: &str) -> Result<FieldCtx, FormatError> {
    let tokens: Vec<&str> = text.split_whitespace().collect();
    let [tag, p, n, modulus] = tokens[..] else {
        return fail(line, "expected `field p=<p> n=<n> modulus=<c0,...,cn>`");
    };
    if tag != "field" {
        return fail(line, "expected a field header");
    }
    let p: u32 = parse_num(line, "characteristic", token_value(line, p, "p")?)?;
    let n: u32 = parse_num(line, "degree", token_value(line, n, "n")?)?;
    let modulus: Vec<u32> = token_value(line, modulus, "modulus")?
        .split(',')
        .map(|c| parse_num(line, "modulus coefficient", c))
        .collect::<Result<_, _>>()?;
    FieldCtx::new(p, n, Some(&modulus)).or_else(|e| fail(line, e.to_string()))
}

fn token_value<'a>(line: usize, token: &'a str, key: &str) -> Result<&'a str, FormatError> {
    match token.split_once('=') {
        Some((k, v)) if k == key => Ok(v),
        _ => fail(line, format!("expected `{key}=...`, found {token:?}")),
    }
}

fn parse_codes(line: usize, text: &str) -> Result<[u32; 3], FormatError> {
    let parts: Vec<&str> = text.split(':').collect();
    let [x, y, z] = parts[..] else {
        return fail(line, format!("expected `x:y:z`, found {text:?}"));
    };
    Ok([
        parse_num(line, "coordinate", x)?,
        parse_num(line, "coordinate", y)?,
        parse_num(line, "coordinate", z)?,
    ])
}

fn header(text: &str) -> Result<(FieldCtx, impl Iterator<Item = (usize, &str)>), FormatError> {
    let mut it = lines(text);
    let Some((n, first)) = it.next() else {
        return fail(1, "empty file");
    };
    Ok((parse_field_header(n, first)?, it))
}

/// A points file: field header, then one `x:y:z` per line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointsFile {
    pub ctx: FieldCtx,
    pub points: Vec<[u32; 3]>,
}

impl PointsFile {
    pub fn parse(text: &str) -> Result<Self, FormatError> {
        let (ctx, rest) = header(text)?;
        let mut points = Vec::new();
        for (n, l) in rest {
            let codes = parse_codes(n, l.trim())?;
            ProjPoint::from_normalized_codes(&ctx, codes).or_else(|e| fail(n, e.to_string()))?;
            points.push(codes);
        }
        Ok(PointsFile { ctx, points })
    }

    pub fn points(&self) -> Vec<ProjPoint<'_>> {
        self.points
            .iter()
            .map(|&c| ProjPoint::from_normalized_codes(&self.ctx, c).expect("validated on parse"))
            .collect()
    }
}

pub fn write_points(ctx: &FieldCtx, points: &[ProjPoint<'_>]) -> String {
    let mut out = format!("{ctx}\n");
    for p in points {
        writeln!(out, "{p}").unwrap();
    }
    out
}

/// An arrangement file: field header, then `<label> a:b:c` per line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArrangementFile {
    pub ctx: FieldCtx,
    pub records: Vec<(i64, [u32; 3])>,
}

impl ArrangementFile {
    pub fn parse(text: &str) -> Result<Self, FormatError> {
        let (ctx, rest) = header(text)?;
        let mut records = Vec::new();
        let mut labels = BTreeSet::new();
        let mut seen = BTreeSet::new();
        for (n, l) in rest {
            let parts: Vec<&str> = l.split_whitespace().collect();
            let [label, line] = parts[..] else {
                return fail(n, "expected `<label> a:b:c`");
            };
            let label: i64 = parse_num(n, "label", label)?;
            let codes = parse_codes(n, line)?;
            ProjLine::from_normalized_codes(&ctx, codes).or_else(|e| fail(n, e.to_string()))?;
            if !labels.insert(label) {
                return fail(n, format!("duplicate label {label}"));
            }
            if !seen.insert(codes) {
                return fail(n, format!("duplicate line {line}"));
            }
            records.push((label, codes));
        }
        Ok(ArrangementFile { ctx, records })
    }

    pub fn arrangement(&self) -> Arrangement<'_> {
        let records = self
            .records
            .iter()
            .map(|&(l, c)| {
                (
                    l,
                    ProjLine::from_normalized_codes(&self.ctx, c).expect("validated on parse"),
                )
            })
            .collect();
        Arrangement::new(&self.ctx, records).expect("validated on parse")
    }
}

pub fn write_arrangement(a: &Arrangement<'_>) -> String {
    let mut out = format!("{}\n", a.ctx());
    for (label, line) in a.iter() {
        writeln!(out, "{label} {line}").unwrap();
    }
    out
}

/// Parses `ground l1 l2 ...` followed by canonical `a b c` lines.
pub fn parse_triple_system(text: &str) -> Result<TripleSystem, FormatError> {
    let mut it = lines(text);
    let Some((n, first)) = it.next() else {
        return fail(1, "empty file");
    };
    let mut tokens = first.split_whitespace();
    if tokens.next() != Some("ground") {
        return fail(n, "expected `ground <labels>`");
    }
    let ground: Vec<i64> = tokens
        .map(|t| parse_num(n, "label", t))
        .collect::<Result<_, _>>()?;
    let members: BTreeSet<i64> = ground.iter().copied().collect();
    if members.len() != ground.len() {
        return fail(n, "duplicate ground label");
    }
    let mut triples: Vec<[i64; 3]> = Vec::new();
    for (n, l) in it {
        let parts: Vec<&str> = l.split_whitespace().collect();
        let [a, b, c] = parts[..] else {
            return fail(n, "expected `a b c`");
        };
        let t = [
            parse_num(n, "label", a)?,
            parse_num(n, "label", b)?,
            parse_num(n, "label", c)?,
        ];
        if !(t[0] < t[1] && t[1] < t[2]) {
            return fail(n, "triple entries must be strictly increasing");
        }
        if let Some(l) = t.iter().find(|l| !members.contains(l)) {
            return fail(n, format!("label {l} is not in the ground set"));
        }
        if triples.last().is_some_and(|prev| *prev >= t) {
            return fail(
                n,
                "triples must be strictly increasing in lexicographic order",
            );
        }
        triples.push(t);
    }
    TripleSystem::new(ground, triples).or_else(|e| fail(1, e.to_string()))
}

pub fn write_triple_system(ts: &TripleSystem) -> String {
    let mut out = String::from("ground");
    for l in ts.ground() {
        write!(out, " {l}").unwrap();
    }
    out.push('\n');
    for [a, b, c] in ts.triples() {
        writeln!(out, "{a} {b} {c}").unwrap();
    }
    out
}

/// The ideal file: `ring vars=...`, an optional normalization line, then
/// the vanishing and non-vanishing sections, one polynomial per line.
pub fn write_ideal(ts: &TripleSystem, ideal: &RealizationIdeal) -> String {
    let mut out = format!("ring vars={}\n", ideal.vars.join(","));
    if let Some(norm) = ideal.normalization {
        write!(out, "normalization={}", norm.kind()).unwrap();
        for (i, [x, y, z]) in norm.fixed() {
            write!(out, " {}={x}:{y}:{z}", ts.ground()[i]).unwrap();
        }
        out.push('\n');
    }
    out.push_str("== vanishing ==\n");
    for p in &ideal.vanishing {
        writeln!(out, "{}", p.render(&ideal.vars)).unwrap();
    }
    out.push_str("== nonvanishing ==\n");
    for p in &ideal.nonvanishing {
        writeln!(out, "{}", p.render(&ideal.vars)).unwrap();
    }
    out
}
