//! Text formats: facet files and cocycle files.
//!
//! A facet file holds one complex:
//!
//! ```text
//! # comment
//! dim 2
//! vertices 6
//! colors 1 2 3 1 2 3
//! facet 0 1 2
//! facet 0 1 5
//! ```
//!
//! The `colors` line is optional and 1-based; vertex ids are 0-based. The
//! writer emits facets in lexicographic order of their vertex lists.
//!
//! A cocycle file has one `edge u v value` line per edge with a nonzero value.

use std::collections::BTreeMap;

use crate::coloring::Coloring;
use crate::complex::Complex;
use crate::error::{Error, Result};
use crate::face::Face;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FacetFile {
    pub complex: Complex,
    pub coloring: Option<Coloring>,
}

fn strip_comment(line: &str) -> &str {
    line.split('#').next().unwrap_or("").trim()
}

fn parse_usize(tok: &str, line: usize) -> Result<usize> {
    tok.parse().map_err(|_| Error::Parse { line, msg: format!("expected an integer, got {tok:?}") })
}

pub fn parse_complex(text: &str) -> Result<FacetFile> {
    let mut dim: Option<isize> = None;
    let mut n: Option<usize> = None;
    let mut colors: Option<Vec<usize>> = None;
    let mut facets: Vec<(usize, Face)> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let body = strip_comment(raw);
        if body.is_empty() {
            continue;
        }
        let mut toks = body.split_whitespace();
        let key = toks.next().unwrap_or_default();
        let rest: Vec<&str> = toks.collect();
        match key {
            "dim" => {
                let [tok] = rest.as_slice() else {
                    return Err(Error::Parse { line, msg: "dim takes one value".into() });
                };
                dim = Some(tok.parse().map_err(|_| Error::Parse { line, msg: format!("bad dim {tok:?}") })?);
            }
            "vertices" => {
                let [tok] = rest.as_slice() else {
                    return Err(Error::Parse { line, msg: "vertices takes one value".into() });
                };
                let v = parse_usize(tok, line)?;
                if v > Face::MAX_VERTICES {
                    return Err(Error::TooManyVertices(v));
                }
                n = Some(v);
            }
            "colors" => {
                colors = Some(rest.iter().map(|t| parse_usize(t, line)).collect::<Result<_>>()?);
            }
            "facet" => {
                let n = n.ok_or(Error::Parse { line, msg: "facet before vertices line".into() })?;
                let mut face = Face::EMPTY;
                for t in &rest {
                    let v = parse_usize(t, line)?;
                    if v >= n {
                        return Err(Error::BadVertex { id: v, n });
                    }
                    if face.contains(v) {
                        return Err(Error::Parse { line, msg: format!("vertex {v} repeated") });
                    }
                    face = face.with(v);
                }
                facets.push((line, face));
            }
            other => {
                return Err(Error::Parse { line, msg: format!("unknown keyword {other:?}") });
            }
        }
    }
    let n = n.ok_or(Error::Parse { line: 0, msg: "missing vertices line".into() })?;
    let complex = Complex::from_facets(n, facets.iter().map(|f| f.1))?;
    if let Some(d) = dim {
        if d != complex.dim() {
            return Err(Error::Parse {
                line: 0,
                msg: format!("declared dim {d} but facets have dim {}", complex.dim()),
            });
        }
    }
    let coloring = match colors {
        None => None,
        Some(cs) => {
            if cs.len() != n {
                return Err(Error::Parse { line: 0, msg: format!("{} colors for {n} vertices", cs.len()) });
            }
            if cs.contains(&0) {
                return Err(Error::Parse { line: 0, msg: "colors are 1-based".into() });
            }
            Some(Coloring::new(cs)?)
        }
    };
    Ok(FacetFile { complex, coloring })
}

/// Facets as sorted vertex lists, in lexicographic order.
pub fn sorted_facet_lists(c: &Complex) -> Vec<Vec<usize>> {
    let mut lists: Vec<Vec<usize>> = c.facets().iter().map(|f| f.to_vec()).collect();
    lists.sort();
    lists
}

pub fn write_complex(c: &Complex, coloring: Option<&Coloring>) -> String {
    let mut out = String::new();
    out.push_str(&format!("dim {}\nvertices {}\n", c.dim(), c.n()));
    if let Some(k) = coloring {
        let cs: Vec<String> = (0..c.n()).map(|v| k.color(v).to_string()).collect();
        out.push_str(&format!("colors {}\n", cs.join(" ")));
    }
    for f in sorted_facet_lists(c) {
        let vs: Vec<String> = f.iter().map(|v| v.to_string()).collect();
        if vs.is_empty() {
            out.push_str("facet\n");
        } else {
            out.push_str(&format!("facet {}\n", vs.join(" ")));
        }
    }
    out
}

/// Edge values `(u, v) -> value` with `u < v`, read as `ω(u, v)`; the reverse
/// orientation carries the negated value.
pub fn parse_cocycle(text: &str) -> Result<BTreeMap<(usize, usize), i64>> {
    let mut values = BTreeMap::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let body = strip_comment(raw);
        if body.is_empty() {
            continue;
        }
        let toks: Vec<&str> = body.split_whitespace().collect();
        match toks.as_slice() {
            ["edge", u, v, val] => {
                let u = parse_usize(u, line)?;
                let v = parse_usize(v, line)?;
                let val: i64 =
                    val.parse().map_err(|_| Error::Parse { line, msg: format!("bad value {val:?}") })?;
                if u == v {
                    return Err(Error::Parse { line, msg: "loop edge".into() });
                }
                let (key, val) = if u < v { ((u, v), val) } else { ((v, u), -val) };
                if values.insert(key, val).is_some() {
                    return Err(Error::Parse { line, msg: format!("edge {u} {v} given twice") });
                }
            }
            _ => return Err(Error::Parse { line, msg: "expected `edge u v value`".into() }),
        }
    }
    Ok(values)
}

pub fn write_cocycle(values: &BTreeMap<(usize, usize), i64>) -> String {
    values
        .iter()
        .filter(|(_, &v)| v != 0)
        .map(|((u, v), val)| format!("edge {u} {v} {val}\n"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_write() {
        let text = "# triangle\ndim 2\nvertices 4\ncolors 1 2 3 1\nfacet 0 1 2\nfacet 3 1 2 # second\n";
        let ff = parse_complex(text).unwrap();
        assert_eq!(ff.complex.f_vector().counts(), &[1, 4, 5, 2]);
        assert_eq!(ff.coloring.as_ref().unwrap().color(3), 1);
        let out = write_complex(&ff.complex, ff.coloring.as_ref());
        assert_eq!(out, "dim 2\nvertices 4\ncolors 1 2 3 1\nfacet 0 1 2\nfacet 1 2 3\n");
        assert_eq!(parse_complex(&out).unwrap(), ff);
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(parse_complex("vertices 3\nfacet 0 3\n"), Err(Error::BadVertex { id: 3, n: 3 })));
        assert!(matches!(parse_complex("facet 0 1\n"), Err(Error::Parse { .. })));
        assert!(matches!(parse_complex("dim 1\nvertices 3\nfacet 0 1 2\n"), Err(Error::Parse { .. })));
        assert!(matches!(parse_complex("vertices 3\nfoo\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_complex("vertices 2\ncolors 1\nfacet 0 1\n"), Err(Error::Parse { .. })));
    }

    #[test]
    fn cocycle_orientation() {
        let m = parse_cocycle("edge 3 1 2\nedge 0 1 1\n").unwrap();
        assert_eq!(m[&(1, 3)], -2);
        assert_eq!(m[&(0, 1)], 1);
        assert_eq!(write_cocycle(&m), "edge 0 1 1\nedge 1 3 -2\n");
        assert!(parse_cocycle("edge 0 1\n").is_err());
    }
}
