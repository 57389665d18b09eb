//! Text formats.
//!
//! Ray sets use a line-oriented grammar:
//!
//! ```text
//! ksset 1
//! name <text>
//! dim <d>
//! scalar int | scalar quad <m> | scalar numeric <tol>
//! ray <c_1> ... <c_d>
//! ```
//!
//! Exact components are `a` or `a:b` (meaning `a + b√m`); numeric components
//! are decimal literals. `#` starts a comment. Inequalities are written as
//! `term <i> <w_i>`, `edge <i> <j> <w_ij>`, `classical_bound <α>` and
//! `quantum_value <N>` lines, in that order.

use std::fmt::Write as _;

use crate::algebra::{QuadScalar, Ray, ScalarMode};
use crate::error::{Error, Result};
use crate::inequality::{EdgeTerm, Inequality};
use crate::rayset::{validate_rayset, RaySet};

pub const FORMAT_VERSION: u32 = 1;

/// Non-empty lines with comments stripped, paired with 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let line = line.split('#').next().unwrap_or("").trim();
        (!line.is_empty()).then_some((i + 1, line))
    })
}

fn parse_num<T: std::str::FromStr>(line: usize, s: &str, what: &str) -> Result<T> {
    s.parse()
        .map_err(|_| Error::parse(line, format!("invalid {what} '{s}'")))
}

fn parse_exact(line: usize, s: &str, discriminant: u32) -> Result<QuadScalar> {
    let (rat, irr) = match s.split_once(':') {
        Some(_) if discriminant == 1 => {
            return Err(Error::parse(
                line,
                format!("component '{s}' has an irrational part but scalar is int"),
            ))
        }
        Some((a, b)) => (parse_num(line, a, "component")?, parse_num(line, b, "component")?),
        None => (parse_num(line, s, "component")?, 0),
    };
    QuadScalar::new(rat, irr, discriminant).map_err(|e| Error::parse(line, e.to_string()))
}

fn parse_numeric(line: usize, s: &str) -> Result<f64> {
    let x: f64 = parse_num(line, s, "component")?;
    if !x.is_finite() {
        return Err(Error::parse(line, format!("component '{s}' is not finite")));
    }
    Ok(x)
}

fn parse_scalar_mode(line: usize, args: &[&str]) -> Result<ScalarMode> {
    let mode = match args {
        ["int"] => Ok(ScalarMode::integer()),
        ["quad", m] => ScalarMode::quadratic(parse_num(line, m, "discriminant")?),
        ["numeric", tol] => ScalarMode::numeric(parse_num(line, tol, "tolerance")?),
        _ => {
            return Err(Error::parse(
                line,
                "expected 'scalar int', 'scalar quad <m>' or 'scalar numeric <tol>'",
            ))
        }
    };
    mode.map_err(|e| Error::parse(line, e.to_string()))
}

/// Parses a `ksset 1` file. Rays are canonicalized and validated; errors
/// carry the offending line number.
pub fn parse_rayset(text: &str) -> Result<RaySet> {
    let mut lines = content_lines(text);
    match lines.next() {
        Some((line, header)) => {
            let words: Vec<&str> = header.split_whitespace().collect();
            match words.as_slice() {
                ["ksset", v] if *v == FORMAT_VERSION.to_string() => {}
                ["ksset", v] => {
                    return Err(Error::parse(line, format!("unknown format version '{v}'")))
                }
                _ => return Err(Error::parse(line, "expected header 'ksset 1'")),
            }
        }
        None => return Err(Error::parse(1, "empty file; expected header 'ksset 1'")),
    }

    let mut name: Option<String> = None;
    let mut dim: Option<usize> = None;
    let mut mode: Option<ScalarMode> = None;
    let mut rays = Vec::new();
    let mut ray_lines = Vec::new();
    let mut last_line = 1;

    for (line, content) in lines {
        last_line = line;
        let (keyword, rest) = content
            .split_once(char::is_whitespace)
            .map_or((content, ""), |(k, r)| (k, r.trim()));
        let header_done = !rays.is_empty();
        match keyword {
            "name" | "dim" | "scalar" if header_done => {
                return Err(Error::parse(line, format!("'{keyword}' must precede all rays")))
            }
            "name" => {
                if name.is_some() {
                    return Err(Error::parse(line, "duplicate 'name'"));
                }
                if rest.is_empty() {
                    return Err(Error::parse(line, "empty name"));
                }
                name = Some(rest.to_string());
            }
            "dim" => {
                if dim.is_some() {
                    return Err(Error::parse(line, "duplicate 'dim'"));
                }
                dim = Some(parse_num(line, rest, "dimension")?);
            }
            "scalar" => {
                if mode.is_some() {
                    return Err(Error::parse(line, "duplicate 'scalar'"));
                }
                let args: Vec<&str> = rest.split_whitespace().collect();
                mode = Some(parse_scalar_mode(line, &args)?);
            }
            "ray" => {
                let (Some(d), Some(m)) = (dim, mode) else {
                    return Err(Error::parse(line, "'dim' and 'scalar' must precede rays"));
                };
                let parts: Vec<&str> = rest.split_whitespace().collect();
                if parts.len() != d {
                    return Err(Error::parse(
                        line,
                        format!("ray has {} components, expected {d}", parts.len()),
                    ));
                }
                let ray = match m {
                    ScalarMode::Exact { discriminant } => Ray::exact(
                        parts
                            .iter()
                            .map(|s| parse_exact(line, s, discriminant))
                            .collect::<Result<_>>()?,
                    )?,
                    ScalarMode::Numeric { .. } => Ray::numeric(
                        parts
                            .iter()
                            .map(|s| parse_numeric(line, s))
                            .collect::<Result<_>>()?,
                    ),
                };
                rays.push(ray);
                ray_lines.push(line);
            }
            other => return Err(Error::parse(line, format!("unknown keyword '{other}'"))),
        }
    }

    let name = name.ok_or_else(|| Error::parse(last_line, "missing 'name'"))?;
    let dim = dim.ok_or_else(|| Error::parse(last_line, "missing 'dim'"))?;
    let mode = mode.ok_or_else(|| Error::parse(last_line, "missing 'scalar'"))?;
    validate_rayset(&name, dim, mode, rays).map_err(|e| match e {
        Error::DuplicateRay { first, second } => Error::parse(
            ray_lines[second],
            format!("duplicate ray: colinear with the ray on line {}", ray_lines[first]),
        ),
        Error::ZeroRay { index } => Error::parse(ray_lines[index], "zero ray"),
        Error::DimensionTooSmall(_) | Error::EmptyRaySet => Error::parse(last_line, e.to_string()),
        other => other,
    })
}

fn emit_mode(mode: ScalarMode) -> String {
    match mode {
        ScalarMode::Exact { discriminant: 1 } => "scalar int".into(),
        ScalarMode::Exact { discriminant } => format!("scalar quad {discriminant}"),
        ScalarMode::Numeric { tolerance } => format!("scalar numeric {tolerance}"),
    }
}

/// Canonical text for a ray set; parsing it gives back the same set.
pub fn emit_rayset(rs: &RaySet) -> String {
    let mut out = format!(
        "ksset {FORMAT_VERSION}\nname {}\ndim {}\n{}\n",
        rs.name(),
        rs.dimension(),
        emit_mode(rs.mode())
    );
    for ray in rs.rays() {
        let _ = writeln!(out, "ray {ray}");
    }
    out
}

pub fn emit_inequality(ineq: &Inequality) -> String {
    let mut out = String::new();
    for (i, w) in ineq.vertex_weights().iter().enumerate() {
        let _ = writeln!(out, "term {i} {w}");
    }
    for t in ineq.edge_terms() {
        let _ = writeln!(out, "edge {} {} {}", t.i, t.j, t.weight);
    }
    let _ = writeln!(out, "classical_bound {}", ineq.classical_bound());
    let _ = writeln!(out, "quantum_value {}", ineq.quantum_value());
    out
}

pub fn parse_inequality(text: &str) -> Result<Inequality> {
    let mut terms: Vec<(usize, usize, u64)> = Vec::new();
    let mut edges = Vec::new();
    let mut bound = None;
    let mut value = None;
    let mut last_line = 1;
    for (line, content) in content_lines(text) {
        last_line = line;
        let words: Vec<&str> = content.split_whitespace().collect();
        match words.as_slice() {
            ["term", i, w] => terms.push((line, parse_num(line, i, "index")?, parse_num(line, w, "weight")?)),
            ["edge", i, j, w] => edges.push(EdgeTerm {
                i: parse_num(line, i, "index")?,
                j: parse_num(line, j, "index")?,
                weight: parse_num(line, w, "weight")?,
            }),
            ["classical_bound", a] if bound.is_none() => bound = Some(parse_num(line, a, "bound")?),
            ["quantum_value", n] if value.is_none() => value = Some(parse_num(line, n, "value")?),
            _ => return Err(Error::parse(line, format!("unexpected line '{content}'"))),
        }
    }
    let mut weights = vec![None; terms.len()];
    for &(line, i, w) in &terms {
        match weights.get_mut(i) {
            Some(slot @ None) => *slot = Some(w),
            Some(Some(_)) => return Err(Error::parse(line, format!("duplicate term {i}"))),
            None => return Err(Error::parse(line, format!("term index {i} out of range"))),
        }
    }
    let weights: Vec<u64> = weights.into_iter().map(|w| w.expect("every index filled")).collect();
    Inequality::from_parts(
        weights,
        edges,
        bound.ok_or_else(|| Error::parse(last_line, "missing classical_bound"))?,
        value.ok_or_else(|| Error::parse(last_line, "missing quantum_value"))?,
    )
    .map_err(|e| Error::parse(last_line, e.to_string()))
}
