use std::fmt::Write as _;
use std::path::Path;

use super::{MeshError, Triangulation};

/// Parse the line-oriented `mesh3` format.
///
/// ```text
/// mesh3 <nv> <nt>
/// v <x> <y> <z>     (nv lines)
/// t <i0> <i1> <i2> <i3>   (nt lines, 0-based)
/// ```
/// Lines starting with `#` and blank lines are ignored.
pub fn parse_mesh(text: &str) -> Result<Triangulation, MeshError> {
    let mut header: Option<(usize, usize)> = None;
    let mut verts = Vec::new();
    let mut tets = Vec::new();
    for (no, raw) in text.lines().enumerate() {
        let line = raw.trim();
        let lineno = no + 1;
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |msg: &str| MeshError::Parse {
            line: lineno,
            msg: msg.to_string(),
        };
        let mut tok = line.split_whitespace();
        let tag = tok.next().unwrap();
        let rest: Vec<&str> = tok.collect();
        match (tag, header) {
            ("mesh3", None) => {
                if rest.len() != 2 {
                    return Err(err("header must be `mesh3 <nv> <nt>`"));
                }
                let nv = rest[0].parse().map_err(|_| err("bad vertex count"))?;
                let nt = rest[1].parse().map_err(|_| err("bad tet count"))?;
                header = Some((nv, nt));
            }
            (_, None) => return Err(err("missing `mesh3` header")),
            ("v", Some(_)) => {
                if rest.len() != 3 {
                    return Err(err("vertex line needs 3 coordinates"));
                }
                let mut p = [0.0f64; 3];
                for (k, s) in rest.iter().enumerate() {
                    p[k] = s.parse().map_err(|_| err("bad coordinate"))?;
                    if !p[k].is_finite() {
                        return Err(err("non-finite coordinate"));
                    }
                }
                if !tets.is_empty() {
                    return Err(err("vertex after tetrahedra"));
                }
                verts.push(p);
            }
            ("t", Some(_)) => {
                if rest.len() != 4 {
                    return Err(err("tet line needs 4 indices"));
                }
                let mut t = [0usize; 4];
                for (k, s) in rest.iter().enumerate() {
                    t[k] = s.parse().map_err(|_| err("bad vertex index"))?;
                }
                tets.push(t);
            }
            _ => return Err(err(&format!("unknown record `{tag}`"))),
        }
    }
    let Some((nv, nt)) = header else {
        return Err(MeshError::Parse {
            line: 0,
            msg: "empty mesh file".into(),
        });
    };
    if verts.len() != nv || tets.len() != nt {
        return Err(MeshError::Parse {
            line: 0,
            msg: format!(
                "header announces {nv} vertices / {nt} tets, found {} / {}",
                verts.len(),
                tets.len()
            ),
        });
    }
    Triangulation::new(verts, tets)
}

pub fn load_mesh(path: impl AsRef<Path>) -> Result<Triangulation, MeshError> {
    let text = std::fs::read_to_string(path)?;
    parse_mesh(&text)
}

/// Serialize in the `mesh3` format. Coordinates use Rust's shortest
/// round-trip float formatting, so a reload reproduces them exactly.
pub fn write_mesh(t: &Triangulation) -> String {
    let mut s = String::new();
    writeln!(s, "mesh3 {} {}", t.vertex_count(), t.tet_count()).unwrap();
    for p in t.vertices() {
        writeln!(s, "v {:?} {:?} {:?}", p[0], p[1], p[2]).unwrap();
    }
    for tet in t.tets() {
        writeln!(s, "t {} {} {} {}", tet[0], tet[1], tet[2], tet[3]).unwrap();
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mesh::boundary_of_4_simplex;

    #[test]
    fn parse_four_simplex_file() {
        let text =
            "# boundary of the 4-simplex\nmesh3 5 5\nv 0 0 0\nv 1 0 0\nv 0 1 0\nv 0 0 1\nv 1 1 1\n\
                    t 1 2 3 4\nt 0 2 3 4\nt 0 1 3 4\nt 0 1 2 4\nt 0 1 2 3\n";
        let m = parse_mesh(text).unwrap();
        assert_eq!(m.tet_count(), 5);
        assert_eq!(m.triangles().len(), 10);
    }

    #[test]
    fn malformed_lines() {
        assert!(matches!(
            parse_mesh("mesh3 1 0\nv 0 0\n"),
            Err(MeshError::Parse { line: 2, .. })
        ));
        assert!(matches!(
            parse_mesh("v 0 0 0\n"),
            Err(MeshError::Parse { line: 1, .. })
        ));
        assert!(matches!(
            parse_mesh("mesh3 2 0\nv 0 0 0\n"),
            Err(MeshError::Parse { .. })
        ));
    }

    #[test]
    fn deleting_a_tet_breaks_closedness() {
        let text = write_mesh(&boundary_of_4_simplex());
        let trimmed: Vec<&str> = text
            .lines()
            .filter(|l| *l != text.lines().last().unwrap())
            .collect();
        let fixed = trimmed.join("\n").replacen("mesh3 5 5", "mesh3 5 4", 1);
        assert!(matches!(
            parse_mesh(&fixed),
            Err(MeshError::NotClosed { .. })
        ));
    }

    #[test]
    fn write_then_parse_is_identity() {
        let m = boundary_of_4_simplex();
        let again = parse_mesh(&write_mesh(&m)).unwrap();
        assert_eq!(again.tets(), m.tets());
        assert_eq!(again.vertices(), m.vertices());
    }
}
