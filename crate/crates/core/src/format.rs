//! Text interchange format for face posets.
//!
//! ```text
//! simplicial-poset v1
//! dimension 3
//! components 1
//! faces 0 4
//! 0: | 0
//! ...
//! faces 1 6
//! 0: 1 0 | 0 1
//! ...
//! gluing 2
//! 0 0 1 0 0123
//! 0 1 boundary
//! ...
//! end
//! ```
//!
//! A face line is `id: boundary ids | vertex ids`. The optional `gluing`
//! section lists every tetrahedron slot `facet face` in order, followed by
//! either `boundary` or `target_facet target_face perm`, where `perm` is the
//! four digits of the vertex permutation. A file may omit the `faces`
//! sections and give only `dimension 3` plus a gluing; the complex is then
//! built from the gluing. Blank lines and lines starting with `#` are
//! ignored. [`write`] output is canonical: reading and writing again
//! reproduces it byte for byte.

use std::fmt::Write as _;

use crate::poset::{build_complex, Face, FaceGluing, FacePoset, GluingSpec, PosetError};

pub const HEADER: &str = "simplicial-poset v1";

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FormatError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("missing {0}")]
    Missing(&'static str),
    #[error("declared {declared} components, complex has {actual}")]
    ComponentsMismatch { declared: usize, actual: usize },
    #[error("face tables do not match the complex built from the gluing section")]
    GluingMismatch,
    #[error(transparent)]
    Poset(#[from] PosetError),
}

pub fn write(p: &FacePoset) -> String {
    let mut out = String::new();
    writeln!(out, "{HEADER}").unwrap();
    writeln!(out, "dimension {}", p.dim()).unwrap();
    writeln!(out, "components {}", p.components()).unwrap();
    for k in 0..=p.dim() {
        writeln!(out, "faces {k} {}", p.count(k)).unwrap();
        for (id, face) in p.faces(k).iter().enumerate() {
            write!(out, "{id}:").unwrap();
            for b in &face.boundary {
                write!(out, " {b}").unwrap();
            }
            out.push_str(" |");
            for v in &face.vertices {
                write!(out, " {v}").unwrap();
            }
            out.push('\n');
        }
    }
    if let Some(spec) = p.gluing_spec() {
        write_gluing(&mut out, spec);
    }
    out.push_str("end\n");
    out
}

fn write_gluing(out: &mut String, spec: &GluingSpec) {
    writeln!(out, "gluing {}", spec.n_facets()).unwrap();
    for (t, slots) in spec.slots().iter().enumerate() {
        for (i, g) in slots.iter().enumerate() {
            match g {
                None => writeln!(out, "{t} {i} boundary").unwrap(),
                Some(g) => {
                    let perm: String = g.perm.iter().map(|d| char::from(b'0' + d)).collect();
                    writeln!(out, "{t} {i} {} {} {perm}", g.facet, g.face).unwrap();
                }
            }
        }
    }
}

/// Writes a gluing spec alone, without face tables.
pub fn write_gluing_only(spec: &GluingSpec) -> String {
    let mut out = format!("{HEADER}\ndimension 3\n");
    write_gluing(&mut out, spec);
    out.push_str("end\n");
    out
}

struct Lines<'a> {
    inner: std::iter::Peekable<Box<dyn Iterator<Item = (usize, &'a str)> + 'a>>,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        let it: Box<dyn Iterator<Item = (usize, &'a str)>> = Box::new(
            text.lines()
                .enumerate()
                .map(|(i, l)| (i + 1, l.trim()))
                .filter(|(_, l)| !l.is_empty() && !l.starts_with('#')),
        );
        Lines { inner: it.peekable() }
    }

    fn next(&mut self, what: &'static str) -> Result<(usize, &'a str), FormatError> {
        self.inner.next().ok_or(FormatError::Missing(what))
    }

    fn peek_keyword(&mut self) -> Option<&'a str> {
        self.inner.peek().and_then(|(_, l)| l.split_whitespace().next())
    }
}

fn syntax(line: usize, message: impl Into<String>) -> FormatError {
    FormatError::Syntax { line, message: message.into() }
}

fn numbers(line: usize, text: &str) -> Result<Vec<usize>, FormatError> {
    text.split_whitespace()
        .map(|t| t.parse().map_err(|_| syntax(line, format!("expected a number, found {t:?}"))))
        .collect()
}

fn keyword_value(line: usize, text: &str, key: &str) -> Result<Vec<usize>, FormatError> {
    let rest = text
        .strip_prefix(key)
        .filter(|r| r.starts_with(' '))
        .ok_or_else(|| syntax(line, format!("expected `{key}`")))?;
    numbers(line, rest)
}

pub fn read(text: &str) -> Result<FacePoset, FormatError> {
    let mut lines = Lines::new(text);
    let (ln, header) = lines.next("header")?;
    if header != HEADER {
        return Err(syntax(ln, format!("expected header `{HEADER}`")));
    }
    let (ln, l) = lines.next("dimension")?;
    let dim = match keyword_value(ln, l, "dimension")?[..] {
        [d] => d,
        _ => return Err(syntax(ln, "expected `dimension D`")),
    };

    let mut components = None;
    if lines.peek_keyword() == Some("components") {
        let (ln, l) = lines.next("components")?;
        components = match keyword_value(ln, l, "components")?[..] {
            [c] => Some(c),
            _ => return Err(syntax(ln, "expected `components C`")),
        };
    }

    let mut faces: Vec<Vec<Face>> = Vec::new();
    while lines.peek_keyword() == Some("faces") {
        let (ln, l) = lines.next("faces")?;
        let (k, count) = match keyword_value(ln, l, "faces")?[..] {
            [k, c] => (k, c),
            _ => return Err(syntax(ln, "expected `faces K COUNT`")),
        };
        if k != faces.len() {
            return Err(syntax(ln, format!("expected faces of dimension {}", faces.len())));
        }
        let mut layer = Vec::with_capacity(count);
        for expected_id in 0..count {
            let (ln, l) = lines.next("face record")?;
            let (id, rest) = l.split_once(':').ok_or_else(|| syntax(ln, "expected `id: ... | ...`"))?;
            if id.trim().parse::<usize>().ok() != Some(expected_id) {
                return Err(syntax(ln, format!("expected face id {expected_id}")));
            }
            let (boundary, vertices) =
                rest.split_once('|').ok_or_else(|| syntax(ln, "missing `|` separator"))?;
            layer.push(Face {
                boundary: numbers(ln, boundary)?,
                vertices: numbers(ln, vertices)?,
            });
        }
        faces.push(layer);
    }

    let mut gluing = None;
    if lines.peek_keyword() == Some("gluing") {
        gluing = Some(read_gluing(&mut lines)?);
    }
    let (ln, l) = lines.next("end")?;
    if l != "end" {
        return Err(syntax(ln, "expected `end`"));
    }
    if let Some((ln, _)) = lines.inner.next() {
        return Err(syntax(ln, "content after `end`"));
    }

    let poset = if faces.is_empty() {
        let spec = gluing.ok_or(FormatError::Missing("faces or gluing section"))?;
        if dim != 3 {
            return Err(FormatError::Missing("dimension 3 for a gluing-only file"));
        }
        build_complex(&spec)?
    } else {
        if faces.len() != dim + 1 {
            return Err(FormatError::Missing("face sections for every dimension"));
        }
        let p = FacePoset::from_faces(faces, gluing.clone())?;
        if let Some(spec) = &gluing {
            if build_complex(spec)? != p {
                return Err(FormatError::GluingMismatch);
            }
        }
        p
    };
    if let Some(declared) = components {
        if declared != poset.components() {
            return Err(FormatError::ComponentsMismatch {
                declared,
                actual: poset.components(),
            });
        }
    }
    Ok(poset)
}

fn read_gluing(lines: &mut Lines<'_>) -> Result<GluingSpec, FormatError> {
    let (ln, l) = lines.next("gluing")?;
    let n = match keyword_value(ln, l, "gluing")?[..] {
        [n] => n,
        _ => return Err(syntax(ln, "expected `gluing N`")),
    };
    let mut slots = vec![[None; 4]; n];
    for (t, facet) in slots.iter_mut().enumerate() {
        for (i, slot) in facet.iter_mut().enumerate() {
            let (ln, l) = lines.next("gluing record")?;
            let tokens: Vec<&str> = l.split_whitespace().collect();
            let head = numbers(ln, &tokens[..2.min(tokens.len())].join(" "))?;
            if head != [t, i] {
                return Err(syntax(ln, format!("expected slot `{t} {i}`")));
            }
            *slot = match tokens[2..] {
                ["boundary"] => None,
                [facet, face, perm] => {
                    let nums = numbers(ln, &format!("{facet} {face}"))?;
                    let digits: Vec<u8> = perm
                        .chars()
                        .map(|c| c.to_digit(10).map(|d| d as u8))
                        .collect::<Option<_>>()
                        .filter(|d: &Vec<u8>| d.len() == 4)
                        .ok_or_else(|| syntax(ln, "permutation must be four digits"))?;
                    if nums[1] > 3 {
                        return Err(syntax(ln, "face index must be 0..3"));
                    }
                    Some(FaceGluing {
                        facet: nums[0],
                        face: nums[1] as u8,
                        perm: [digits[0], digits[1], digits[2], digits[3]],
                    })
                }
                _ => return Err(syntax(ln, "expected `boundary` or `facet face perm`")),
            };
        }
    }
    Ok(GluingSpec::new(slots)?)
}
