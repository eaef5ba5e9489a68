//! Plain-text polytope files.
//!
//! ```text
//! # comment
//! H d n        or        V d n
//! a_1 ... a_d b          x_1 ... x_d
//! ...                    ...
//! ```
//!
//! Entries are optionally signed integers or `num/den`. Everything after a
//! `#` on a line is ignored, as are blank lines.

use std::fmt::Write;

use crate::error::{Error, Result};
use crate::geometry::{Halfspace, HPolytope, RationalVector, VPolytope};
use crate::rational::{parse_rational, to_compact_string, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Polytope {
    H(HPolytope),
    V(VPolytope),
}

impl Polytope {
    pub fn dim(&self) -> usize {
        match self {
            Polytope::H(p) => p.dim(),
            Polytope::V(p) => p.dim(),
        }
    }
}

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

pub fn parse_polytope(text: &str) -> Result<Polytope> {
    let mut lines = text.lines().enumerate().filter_map(|(i, raw)| {
        let content = raw.split('#').next().unwrap_or("").trim();
        (!content.is_empty()).then_some((i + 1, content))
    });

    let (hline, header) = lines.next().ok_or_else(|| parse_err(1, "missing header"))?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    let [kind, d, n] = fields[..] else {
        return Err(parse_err(hline, "header must be `H d n` or `V d n`"));
    };
    let d: usize = d
        .parse()
        .map_err(|_| parse_err(hline, format!("invalid dimension `{d}`")))?;
    let n: usize = n
        .parse()
        .map_err(|_| parse_err(hline, format!("invalid row count `{n}`")))?;
    if d == 0 {
        return Err(parse_err(hline, "dimension must be positive"));
    }
    let width = match kind {
        "H" => d + 1,
        "V" => d,
        other => return Err(parse_err(hline, format!("unknown kind `{other}`"))),
    };

    let mut rows: Vec<Vec<Rational>> = Vec::with_capacity(n);
    let mut last_line = hline;
    for (lineno, content) in lines {
        last_line = lineno;
        if rows.len() == n {
            return Err(parse_err(lineno, format!("expected {n} rows, found more")));
        }
        let vals = content
            .split_whitespace()
            .map(|t| parse_rational(t).map_err(|m| parse_err(lineno, m)))
            .collect::<Result<Vec<_>>>()?;
        if vals.len() != width {
            return Err(parse_err(
                lineno,
                format!("expected {width} entries, found {}", vals.len()),
            ));
        }
        rows.push(vals);
    }
    if rows.len() != n {
        return Err(parse_err(
            last_line,
            format!("expected {n} rows, found {}", rows.len()),
        ));
    }

    match kind {
        "H" => {
            let rows = rows
                .into_iter()
                .map(|mut r| {
                    let rhs = r.pop().expect("row has d + 1 entries");
                    Halfspace::new(RationalVector::new(r), rhs)
                })
                .collect();
            Ok(Polytope::H(HPolytope::new(d, rows)?))
        }
        _ => {
            let points = rows.into_iter().map(RationalVector::new).collect();
            Ok(Polytope::V(
                VPolytope::new(d, points).map_err(|e| parse_err(hline, e.to_string()))?,
            ))
        }
    }
}

pub fn parse_hpolytope(text: &str) -> Result<HPolytope> {
    match parse_polytope(text)? {
        Polytope::H(p) => Ok(p),
        Polytope::V(_) => Err(parse_err(1, "expected an H-polytope")),
    }
}

pub fn parse_vpolytope(text: &str) -> Result<VPolytope> {
    match parse_polytope(text)? {
        Polytope::V(p) => Ok(p),
        Polytope::H(_) => Err(parse_err(1, "expected a V-polytope")),
    }
}

pub fn serialize_hpolytope(p: &HPolytope) -> String {
    let mut out = format!("H {} {}\n", p.dim(), p.len());
    for r in p.rows() {
        let line: Vec<String> = r
            .normal
            .iter()
            .chain(std::iter::once(&r.rhs))
            .map(to_compact_string)
            .collect();
        writeln!(out, "{}", line.join(" ")).unwrap();
    }
    out
}

pub fn serialize_vpolytope(p: &VPolytope) -> String {
    let mut out = format!("V {} {}\n", p.dim(), p.points().len());
    for v in p.points() {
        let line: Vec<String> = v.iter().map(to_compact_string).collect();
        writeln!(out, "{}", line.join(" ")).unwrap();
    }
    out
}

pub fn serialize_polytope(p: &Polytope) -> String {
    match p {
        Polytope::H(h) => serialize_hpolytope(h),
        Polytope::V(v) => serialize_vpolytope(v),
    }
}
