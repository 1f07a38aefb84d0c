//! Line-oriented text format for complexes.
//!
//! ```text
//! # disco-top complex v1
//! simplicial
//! dim 0 3
//! 0
//! 1
//! 2
//! dim 1 2
//! 0 1
//! 1 2
//! ```
//!
//! Line one is the magic header, line two the kind (`simplicial` or
//! `cell <r>`). Each block opens with `dim <k> <count>` followed by exactly
//! `count` face lines of space-separated vertex labels. Cell complexes write
//! each product cell as its factors separated by ` | `. Blank lines and lines
//! starting with `#` after the header are ignored.

use std::fmt::Write as _;

use super::cell::CellComplex;
use super::simplicial::{Face, SimplicialComplex};
use crate::error::{Error, Result};

pub const MAGIC: &str = "# disco-top complex v1";

fn join(face: &[u32]) -> String {
    let mut s = String::new();
    for (i, v) in face.iter().enumerate() {
        if i > 0 {
            s.push(' ');
        }
        let _ = write!(s, "{v}");
    }
    s
}

pub fn write_simplicial(k: &SimplicialComplex) -> String {
    let mut out = format!("{MAGIC}\nsimplicial\n");
    for dim in 0..=k.dimension().map_or(0, |d| d + 1) {
        let faces = k.faces(dim);
        if faces.is_empty() {
            continue;
        }
        let _ = writeln!(out, "dim {dim} {}", faces.len());
        for f in faces {
            out.push_str(&join(f));
            out.push('\n');
        }
    }
    out
}

pub fn write_cell(c: &CellComplex) -> String {
    let mut out = format!("{MAGIC}\ncell {}\n", c.arity());
    for dim in 0..c.dimension().map_or(0, |d| d + 1) {
        let _ = writeln!(out, "dim {dim} {}", c.cells(dim).len());
        for cell in c.cells(dim) {
            let parts: Vec<String> = cell.factors.iter().map(|f| join(f)).collect();
            out.push_str(&parts.join(" | "));
            out.push('\n');
        }
    }
    out
}

pub fn parse_simplicial(text: &str) -> Result<SimplicialComplex> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim()));
    match lines.next() {
        Some((_, l)) if l == MAGIC => {}
        _ => return Err(Error::Parse { line: 1, message: format!("expected header `{MAGIC}`") }),
    }
    let mut lines = lines.filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    match lines.next() {
        Some((_, "simplicial")) => {}
        Some((n, other)) => {
            return Err(Error::Parse { line: n, message: format!("unsupported complex kind `{other}`") })
        }
        None => return Err(Error::Parse { line: 2, message: "missing complex kind".into() }),
    }
    let mut faces: Vec<Face> = Vec::new();
    while let Some((n, line)) = lines.next() {
        let header: Vec<&str> = line.split_whitespace().collect();
        let (dim, count) = match header.as_slice() {
            ["dim", d, c] => (parse_num::<usize>(d, n)?, parse_num::<usize>(c, n)?),
            _ => return Err(Error::Parse { line: n, message: format!("expected `dim <k> <count>`, got `{line}`") }),
        };
        for _ in 0..count {
            let (fl, face_line) =
                lines.next().ok_or_else(|| Error::Parse { line: n, message: "block ended early".into() })?;
            let face = face_line.split_whitespace().map(|t| parse_num::<u32>(t, fl)).collect::<Result<Face>>()?;
            if face.len() != dim + 1 {
                return Err(Error::Parse {
                    line: fl,
                    message: format!("face of {} vertices in a dimension-{dim} block", face.len()),
                });
            }
            faces.push(face);
        }
    }
    SimplicialComplex::from_faces(faces)
}

fn parse_num<T: std::str::FromStr>(token: &str, line: usize) -> Result<T> {
    token.parse().map_err(|_| Error::Parse { line, message: format!("bad number `{token}`") })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{deleted_join2, deleted_product, simplex_skeleton};
    use proptest::prelude::*;

    #[test]
    fn octahedron_text_layout() {
        let oct = deleted_join2(&simplex_skeleton(2, 2).unwrap()).unwrap();
        let text = write_simplicial(&oct);
        assert!(text.starts_with("# disco-top complex v1\nsimplicial\ndim 0 6\n0\n"));
        assert!(text.contains("dim 2 8\n"));
    }

    #[test]
    fn cell_layout_uses_bars() {
        let c = deleted_product(&simplex_skeleton(1, 1).unwrap(), 2).unwrap();
        assert_eq!(write_cell(&c), "# disco-top complex v1\ncell 2\ndim 0 2\n0 | 1\n1 | 0\n");
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let err = parse_simplicial("# disco-top complex v1\nsimplicial\ndim 1 1\n0 x\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 4, .. }));
        assert!(parse_simplicial("nonsense").is_err());
        let not_closed = parse_simplicial("# disco-top complex v1\nsimplicial\ndim 1 1\n0 1\n");
        assert!(matches!(not_closed, Err(Error::MalformedComplex(_))));
    }

    proptest! {
        #[test]
        fn round_trip(gens in proptest::collection::vec(proptest::collection::vec(0u32..9, 1..4), 1..8)) {
            let k = SimplicialComplex::closure_of(gens);
            prop_assert_eq!(parse_simplicial(&write_simplicial(&k)).unwrap(), k);
        }
    }
}
