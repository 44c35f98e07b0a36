//! Matroid exchange text format.
//!
//! Header `matroid <n> <rank> <backend>`, optionally followed by
//! `# label ...` metadata lines, then the backend payload. Circuit backends
//! list one circuit per line as sorted ids; linear backends list the field
//! modulus, the dimensions, and the matrix row-major. Exports of minors are
//! relabeled onto dense ids `0..n` in ascending order of the original ids.

use super::{Backend, Matroid};
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::geometries::{GeometryKind, GeometryLabel};
use crate::gf::SmallField;
use crate::set::ElemSet;

/// Serialize a matroid, with optional geometry metadata. Circuit and linear
/// backends are written natively; every other backend is exported through
/// its circuit list.
pub fn write_matroid(m: &Matroid, label: Option<&GeometryLabel>, budget: &Budget) -> Result<String> {
    let n = m.size();
    let dense: Vec<usize> = m.ground().iter().collect();
    let to_dense = |s: ElemSet| -> Vec<usize> {
        s.iter().map(|e| dense.iter().position(|&x| x == e).unwrap()).collect()
    };
    let mut out = String::new();
    let native_linear = matches!(m.backend(), Backend::Linear { .. }) && m.is_pristine();
    if native_linear {
        let Backend::Linear { field, rows, cols, entries } = m.backend() else { unreachable!() };
        out.push_str(&format!("matroid {n} {} linear\n", m.full_rank()));
        write_label(&mut out, label);
        out.push_str(&format!("modulus {}\n", field.order()));
        out.push_str(&format!("{rows} {cols}\n"));
        for r in 0..*rows {
            let row: Vec<String> =
                (0..*cols).map(|c| entries[r * cols + c].to_string()).collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
    } else {
        let mut circuits = m.circuits(None, budget)?;
        circuits.sort();
        out.push_str(&format!("matroid {n} {} circuits\n", m.full_rank()));
        write_label(&mut out, label);
        for c in circuits {
            let ids: Vec<String> = to_dense(c).iter().map(|e| e.to_string()).collect();
            out.push_str(&ids.join(" "));
            out.push('\n');
        }
    }
    Ok(out)
}

fn write_label(out: &mut String, label: Option<&GeometryLabel>) {
    if let Some(l) = label {
        out.push_str(&format!("# label kind={} k={}", l.kind.as_str(), l.k));
        if let Some(g) = &l.group {
            out.push_str(&format!(" group={g}"));
        }
        if let Some(q) = l.field {
            out.push_str(&format!(" field={q}"));
        }
        out.push('\n');
    }
}

/// Parse the exchange format. Label comment lines are parsed, not skipped.
pub fn read_matroid(text: &str) -> Result<(Matroid, Option<GeometryLabel>)> {
    let lines: Vec<&str> = text.lines().collect();
    let header = lines.first().ok_or(Error::Parse { line: 1, msg: "empty input".into() })?;
    let toks: Vec<&str> = header.split_whitespace().collect();
    if toks.len() != 4 || toks[0] != "matroid" {
        return Err(Error::Parse { line: 1, msg: format!("bad header `{header}`") });
    }
    let n: usize = toks[1]
        .parse()
        .map_err(|_| Error::Parse { line: 1, msg: format!("bad size `{}`", toks[1]) })?;
    let declared_rank: usize = toks[2]
        .parse()
        .map_err(|_| Error::Parse { line: 1, msg: format!("bad rank `{}`", toks[2]) })?;
    let backend = toks[3];

    let mut label = None;
    let mut idx = 1;
    while idx < lines.len() && lines[idx].starts_with('#') {
        if let Some(rest) = lines[idx].trim().strip_prefix("# label ") {
            label = Some(parse_label(rest, idx + 1)?);
        }
        idx += 1;
    }

    let m = match backend {
        "circuits" => {
            let mut circuits = Vec::new();
            for (off, line) in lines[idx..].iter().enumerate() {
                if line.trim().is_empty() {
                    continue;
                }
                let ids: Vec<usize> = line
                    .split_whitespace()
                    .map(|t| {
                        t.parse().map_err(|_| Error::Parse {
                            line: idx + off + 1,
                            msg: format!("bad element id `{t}`"),
                        })
                    })
                    .collect::<Result<_>>()?;
                if ids.iter().any(|&e| e >= n) {
                    return Err(Error::Parse {
                        line: idx + off + 1,
                        msg: "element id outside ground set".into(),
                    });
                }
                circuits.push(ElemSet::from_iter(ids));
            }
            Matroid::from_circuits(n, circuits)?
        }
        "linear" => {
            let modline = lines.get(idx).ok_or(Error::Parse {
                line: idx + 1,
                msg: "missing modulus line".into(),
            })?;
            let q: usize = modline
                .strip_prefix("modulus ")
                .and_then(|s| s.trim().parse().ok())
                .ok_or(Error::Parse { line: idx + 1, msg: format!("bad modulus `{modline}`") })?;
            let dims = lines.get(idx + 1).ok_or(Error::Parse {
                line: idx + 2,
                msg: "missing dimensions".into(),
            })?;
            let d: Vec<usize> = dims
                .split_whitespace()
                .map(|t| {
                    t.parse().map_err(|_| Error::Parse {
                        line: idx + 2,
                        msg: format!("bad dimension `{t}`"),
                    })
                })
                .collect::<Result<_>>()?;
            if d.len() != 2 {
                return Err(Error::Parse { line: idx + 2, msg: "expected `rows cols`".into() });
            }
            let (rows, cols) = (d[0], d[1]);
            if cols != n {
                return Err(Error::Parse {
                    line: idx + 2,
                    msg: format!("{cols} columns but ground size {n}"),
                });
            }
            let mut entries = Vec::with_capacity(rows * cols);
            for r in 0..rows {
                let line = lines.get(idx + 2 + r).ok_or(Error::Parse {
                    line: idx + 3 + r,
                    msg: "matrix ended early".into(),
                })?;
                for t in line.split_whitespace() {
                    let v: u8 = t.parse().map_err(|_| Error::Parse {
                        line: idx + 3 + r,
                        msg: format!("bad entry `{t}`"),
                    })?;
                    entries.push(v);
                }
            }
            Matroid::from_gf_matrix(SmallField::new(q)?, rows, cols, entries)?
        }
        other => {
            return Err(Error::Parse { line: 1, msg: format!("unknown backend `{other}`") })
        }
    };
    if m.full_rank() != declared_rank {
        return Err(Error::Parse {
            line: 1,
            msg: format!("declared rank {declared_rank} but computed {}", m.full_rank()),
        });
    }
    Ok((m, label))
}

fn parse_label(rest: &str, line: usize) -> Result<GeometryLabel> {
    let mut kind = None;
    let mut k = None;
    let mut group = None;
    let mut field = None;
    for tok in rest.split_whitespace() {
        let (key, value) = tok.split_once('=').ok_or(Error::Parse {
            line,
            msg: format!("bad label token `{tok}`"),
        })?;
        match key {
            "kind" => {
                kind = Some(GeometryKind::parse(value).ok_or(Error::Parse {
                    line,
                    msg: format!("unknown geometry kind `{value}`"),
                })?)
            }
            "k" => {
                k = Some(value.parse().map_err(|_| Error::Parse {
                    line,
                    msg: format!("bad k `{value}`"),
                })?)
            }
            "group" => group = Some(value.to_string()),
            "field" => {
                field = Some(value.parse().map_err(|_| Error::Parse {
                    line,
                    msg: format!("bad field `{value}`"),
                })?)
            }
            other => {
                return Err(Error::Parse { line, msg: format!("unknown label key `{other}`") })
            }
        }
    }
    Ok(GeometryLabel {
        kind: kind.ok_or(Error::Parse { line, msg: "label missing kind".into() })?,
        k: k.ok_or(Error::Parse { line, msg: "label missing k".into() })?,
        group,
        field,
        annotations: Vec::new(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometries;
    use crate::groups::cyclic_group;

    #[test]
    fn circuits_roundtrip_bit_exact() {
        let b = Budget::default();
        let m = Matroid::uniform(2, 4);
        let text = write_matroid(&m, None, &b).unwrap();
        let (back, label) = read_matroid(&text).unwrap();
        assert!(label.is_none());
        let text2 = write_matroid(&back, None, &b).unwrap();
        assert_eq!(text, text2);
        for s in m.ground().subsets() {
            assert_eq!(m.rank(s), back.rank(s));
        }
    }

    #[test]
    fn linear_roundtrip_with_label() {
        let b = Budget::default();
        let (pg, label) = geometries::projective_geometry(2, 2, &b).unwrap();
        let text = write_matroid(&pg, Some(&label), &b).unwrap();
        let (back, parsed) = read_matroid(&text).unwrap();
        let parsed = parsed.expect("label survives the roundtrip");
        assert_eq!(parsed.kind, GeometryKind::Projective);
        assert_eq!(parsed.field, Some(2));
        assert_eq!(write_matroid(&back, Some(&parsed), &b).unwrap(), text);
    }

    #[test]
    fn frame_backend_exports_as_circuits() {
        let b = Budget::default();
        let (f, label) = geometries::dowling(3, &cyclic_group(2), &b).unwrap();
        let text = write_matroid(&f.matroid, Some(&label), &b).unwrap();
        assert!(text.starts_with("matroid 9 3 circuits\n# label kind=dg k=3 group=Z2"));
        let (back, _) = read_matroid(&text).unwrap();
        assert!(crate::matroid::is_isomorphic(&back, &f.matroid, &b).unwrap().is_some());
    }

    #[test]
    fn minors_are_relabeled_densely() {
        let b = Budget::default();
        let m = Matroid::uniform(2, 5).delete(ElemSet::singleton(0));
        let text = write_matroid(&m, None, &b).unwrap();
        let (back, _) = read_matroid(&text).unwrap();
        assert_eq!(back.size(), 4);
        assert_eq!(back.ground(), ElemSet::full(4));
    }

    #[test]
    fn linear_minor_with_dense_ground_exports_as_circuits() {
        // deleting the last column keeps the ground dense, but the matrix
        // view no longer matches; the export must fall back to circuits
        let b = Budget::default();
        let (pg, _) = geometries::projective_geometry(2, 2, &b).unwrap();
        let m = pg.delete(ElemSet::singleton(6));
        let text = write_matroid(&m, None, &b).unwrap();
        assert!(text.starts_with("matroid 6 3 circuits\n"));
        let (back, _) = read_matroid(&text).unwrap();
        for s in m.ground().subsets() {
            assert_eq!(m.rank(s), back.rank(s));
        }
    }

    #[test]
    fn bad_inputs_are_diagnosed() {
        assert!(read_matroid("").is_err());
        assert!(read_matroid("matroid x 2 circuits\n").is_err());
        assert!(read_matroid("matroid 3 1 circuits\n0 7\n").is_err());
        // declared rank disagrees with the payload
        assert!(read_matroid("matroid 3 1 circuits\n0 1\n").is_err());
    }
}
