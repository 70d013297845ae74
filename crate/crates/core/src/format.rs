//! Text formats for lattice specs and L-contexts.
//!
//! Both formats are line oriented. Tokens are separated by whitespace and
//! `#` starts a comment that runs to the end of the line.
//!
//! A lattice spec is either a single `builtin` line or an explicit table:
//!
//! ```text
//! builtin godel(3)
//! ```
//!
//! ```text
//! elements 0 a 1
//! leq 0 a            # a <= pair; Hasse edges are enough
//! leq a 1
//! tensor 0  0 0 0    # row element, then its product with every element
//! tensor a  0 a a
//! tensor 1  0 a 1
//! residuum 1  0 a 1  # optional, cross-checked against the derived table
//! ```
//!
//! A context names its lattice, then its attributes, then one row per
//! object:
//!
//! ```text
//! lattice builtin godel(3)     # or: lattice file <path>, or: lattice inline ... end
//! attributes star
//! row x 0
//! row y 1/2
//! ```
//!
//! [`serialize_context`] writes the canonical form: builtin lattices by
//! descriptor, anything else inline as Hasse edges plus the tensor table,
//! indented by two spaces and closed by `end`. Parsing that output and
//! serializing again reproduces it byte for byte.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use crate::context::{LContext, LSubset};
use crate::error::{Error, LatticeError, Result};
use crate::lattice::{validate_lattice, Builtin, Lattice, LatticeSource, LatticeSpec};

/// Where a lattice comes from, before it is built.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum LatticeRef {
    Builtin(Builtin),
    Spec(LatticeSpec),
}

impl LatticeRef {
    pub fn build(&self) -> Result<Lattice> {
        match self {
            LatticeRef::Builtin(b) => b.build(),
            LatticeRef::Spec(spec) => Ok(validate_lattice(spec)?),
        }
    }
}

fn tokens(line: &str) -> Vec<&str> {
    line.split('#').next().unwrap_or("").split_whitespace().collect()
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, message: message.into() }
}

#[derive(Default)]
struct SpecBuilder {
    builtin: Option<Builtin>,
    elements: Option<Vec<String>>,
    order: Vec<(String, String)>,
    tensor: HashMap<String, Vec<String>>,
    residuum: HashMap<String, Vec<String>>,
    explicit: bool,
}

impl SpecBuilder {
    /// Feeds one tokenized line; `line` is the 1-based line number.
    fn feed(&mut self, line: usize, toks: &[&str]) -> Result<()> {
        let own = |v: &[&str]| v.iter().map(|s| s.to_string()).collect::<Vec<_>>();
        match toks {
            ["builtin", rest @ ..] if !rest.is_empty() => {
                if self.builtin.is_some() || self.explicit {
                    return Err(parse_err(line, "builtin must be the only lattice directive"));
                }
                self.builtin = Some(rest.concat().parse().map_err(|e: Error| parse_err(line, e.to_string()))?);
            }
            ["elements", rest @ ..] => {
                if self.elements.is_some() {
                    return Err(parse_err(line, "duplicate `elements` line"));
                }
                self.elements = Some(own(rest));
                self.explicit = true;
            }
            ["leq", a, b] => {
                self.order.push((a.to_string(), b.to_string()));
                self.explicit = true;
            }
            ["tensor", row, rest @ ..] | ["residuum", row, rest @ ..] => {
                let table = if toks[0] == "tensor" { &mut self.tensor } else { &mut self.residuum };
                if table.insert(row.to_string(), own(rest)).is_some() {
                    return Err(parse_err(line, format!("duplicate {} row `{row}`", toks[0])));
                }
                self.explicit = true;
            }
            _ => return Err(parse_err(line, format!("unrecognized lattice directive `{}`", toks.join(" ")))),
        }
        if self.builtin.is_some() && self.explicit {
            return Err(parse_err(line, "builtin must be the only lattice directive"));
        }
        Ok(())
    }

    fn finish(self, line: usize) -> Result<LatticeRef> {
        if let Some(b) = self.builtin {
            return Ok(LatticeRef::Builtin(b));
        }
        let elements = self.elements.ok_or_else(|| parse_err(line, "lattice has no `elements` line"))?;
        let rows = |mut table: HashMap<String, Vec<String>>, what: &str| -> Result<Vec<Vec<String>>> {
            let out = elements
                .iter()
                .map(|e| {
                    table
                        .remove(e)
                        .ok_or_else(|| LatticeError::Malformed(format!("missing {what} row for `{e}`")).into())
                })
                .collect::<Result<Vec<_>>>()?;
            if let Some(extra) = table.keys().next() {
                return Err(LatticeError::Malformed(format!("{what} row for unknown element `{extra}`")).into());
            }
            Ok(out)
        };
        let residuum = if self.residuum.is_empty() { None } else { Some(rows(self.residuum, "residuum")?) };
        Ok(LatticeRef::Spec(LatticeSpec {
            tensor: rows(self.tensor, "tensor")?,
            order: self.order,
            residuum,
            elements,
        }))
    }
}

/// Parses a lattice spec document without validating it.
pub fn parse_lattice_ref(text: &str) -> Result<LatticeRef> {
    let mut b = SpecBuilder::default();
    let mut last = 0;
    for (i, line) in text.lines().enumerate() {
        last = i + 1;
        let toks = tokens(line);
        if !toks.is_empty() {
            b.feed(i + 1, &toks)?;
        }
    }
    b.finish(last)
}

/// Parses and validates a lattice spec document.
pub fn parse_lattice(text: &str) -> Result<Lattice> {
    parse_lattice_ref(text)?.build()
}

fn read_file(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|source| Error::Io { path: path.display().to_string(), source })
}

pub fn load_lattice(path: &Path) -> Result<Lattice> {
    parse_lattice(&read_file(path)?)
}

/// Writes the canonical lattice spec lines, each prefixed by `indent`.
pub fn serialize_lattice_spec(lattice: &Lattice, indent: &str) -> String {
    let mut out = String::new();
    if let LatticeSource::Builtin(b) = lattice.source() {
        let _ = writeln!(out, "{indent}builtin {b}");
        return out;
    }
    let spec = lattice.to_spec();
    let _ = writeln!(out, "{indent}elements {}", spec.elements.join(" "));
    for (a, b) in &spec.order {
        let _ = writeln!(out, "{indent}leq {a} {b}");
    }
    for (name, row) in spec.elements.iter().zip(&spec.tensor) {
        let _ = writeln!(out, "{indent}tensor {name} {}", row.join(" "));
    }
    out
}

/// Parses a context document. `lattice file` paths are resolved against
/// `base_dir` when relative.
pub fn parse_context(text: &str, base_dir: Option<&Path>) -> Result<LContext> {
    let mut lattice: Option<Arc<Lattice>> = None;
    let mut attributes: Option<Vec<String>> = None;
    let mut objects: Vec<String> = Vec::new();
    let mut rows: Vec<Vec<String>> = Vec::new();
    let mut inline: Option<SpecBuilder> = None;

    for (i, line) in text.lines().enumerate() {
        let n = i + 1;
        let toks = tokens(line);
        if toks.is_empty() {
            continue;
        }
        if let Some(builder) = inline.as_mut() {
            if toks == ["end"] {
                let b = inline.take().expect("inline block is open");
                lattice = Some(Arc::new(b.finish(n)?.build()?));
            } else {
                builder.feed(n, &toks)?;
            }
            continue;
        }
        match toks.as_slice() {
            ["lattice", ..] if lattice.is_some() => return Err(parse_err(n, "duplicate `lattice` line")),
            ["lattice", "builtin", rest @ ..] if !rest.is_empty() => {
                let b: Builtin = rest.concat().parse().map_err(|e: Error| parse_err(n, e.to_string()))?;
                lattice = Some(Arc::new(b.build()?));
            }
            ["lattice", "file", path] => {
                let mut p = PathBuf::from(path);
                if p.is_relative() {
                    if let Some(dir) = base_dir {
                        p = dir.join(p);
                    }
                }
                lattice = Some(Arc::new(load_lattice(&p)?));
            }
            ["lattice", "inline"] => inline = Some(SpecBuilder::default()),
            ["attributes", rest @ ..] => {
                if attributes.is_some() {
                    return Err(parse_err(n, "duplicate `attributes` line"));
                }
                attributes = Some(rest.iter().map(|s| s.to_string()).collect());
            }
            ["row", label, rest @ ..] => {
                if attributes.is_none() {
                    return Err(parse_err(n, "`row` before `attributes`"));
                }
                objects.push(label.to_string());
                rows.push(rest.iter().map(|s| s.to_string()).collect());
            }
            _ => return Err(parse_err(n, format!("unrecognized directive `{}`", toks.join(" ")))),
        }
    }
    if inline.is_some() {
        return Err(parse_err(text.lines().count(), "unterminated `lattice inline` block"));
    }
    let lattice = lattice.ok_or_else(|| parse_err(0, "missing `lattice` line"))?;
    let attributes = attributes.ok_or_else(|| parse_err(0, "missing `attributes` line"))?;
    let rows = objects
        .iter()
        .zip(&rows)
        .map(|(label, r)| {
            if r.len() != attributes.len() {
                return Err(Error::RaggedMatrix { row: label.clone(), expected: attributes.len(), found: r.len() });
            }
            LSubset::from_names(&lattice, r).map(LSubset::into_values)
        })
        .collect::<Result<Vec<_>>>()?;
    LContext::new(lattice, objects, attributes, rows)
}

pub fn load_context(path: &Path) -> Result<LContext> {
    parse_context(&read_file(path)?, path.parent())
}

/// Canonical text form of a context.
pub fn serialize_context(ctx: &LContext) -> String {
    let l = ctx.lattice();
    let mut out = String::new();
    match l.source() {
        LatticeSource::Builtin(b) => {
            let _ = writeln!(out, "lattice builtin {b}");
        }
        LatticeSource::Explicit => {
            out.push_str("lattice inline\n");
            out.push_str(&serialize_lattice_spec(l, "  "));
            out.push_str("end\n");
        }
    }
    let mut attrs = String::from("attributes");
    for a in ctx.attributes() {
        attrs.push(' ');
        attrs.push_str(a);
    }
    out.push_str(&attrs);
    out.push('\n');
    for (x, label) in ctx.objects().iter().enumerate() {
        let mut line = format!("row {label}");
        for name in ctx.row(x).to_names(l) {
            line.push(' ');
            line.push_str(&name);
        }
        out.push_str(&line);
        out.push('\n');
    }
    out
}
