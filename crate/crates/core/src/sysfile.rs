//! Line-oriented text format for Pfaffian systems.
//!
//! ```text
//! # comment
//! vars x: x1 x2
//! vars y: y1 y2
//! d y1 / d x1 = y1
//! d y1 / d x2 = y1^2
//! d y2 / d x1 = y1*y2 + 1
//! d y2 / d x2 = y1^2
//! constraint y1 - 1
//! constraint y2^2 = y1
//! ```
//!
//! Both `vars` lines come before any equation, every derivative appears
//! exactly once, and `constraint p = q` stands for `p - q = 0`.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::pfaffian::PfaffianSystem;
use crate::poly::{parse, Polynomial, Ring};

/// A parsed system together with the text it came from.
#[derive(Debug, Clone)]
pub struct SystemFile {
    path: Option<PathBuf>,
    source: String,
    system: PfaffianSystem,
}

impl SystemFile {
    pub fn parse(source: &str) -> Result<SystemFile> {
        Ok(SystemFile {
            path: None,
            source: source.to_string(),
            system: parse_system(source)?,
        })
    }

    pub fn read(path: impl AsRef<Path>) -> Result<SystemFile> {
        let path = path.as_ref();
        let source = std::fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.display().to_string(),
            source,
        })?;
        let mut file = SystemFile::parse(&source)?;
        file.path = Some(path.to_path_buf());
        Ok(file)
    }

    pub fn path(&self) -> Option<&Path> {
        self.path.as_deref()
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    pub fn system(&self) -> &PfaffianSystem {
        &self.system
    }

    pub fn into_system(self) -> PfaffianSystem {
        self.system
    }
}

struct Line<'a> {
    number: usize,
    text: &'a str,
}

impl Line<'_> {
    /// Error at a byte offset into the line; columns count characters from 1.
    fn error(&self, offset: usize, message: impl Into<String>) -> Error {
        Error::Syntax {
            line: self.number,
            column: self.text[..offset.min(self.text.len())].chars().count() + 1,
            message: message.into(),
        }
    }

    fn polynomial(&self, start: usize, end: usize, ring: &Ring) -> Result<Polynomial> {
        parse(&self.text[start..end], ring).map_err(|e| match e {
            Error::Parse { pos, message } => self.error(start + pos, message),
            e => e,
        })
    }
}

fn skip_ws(s: &str, mut i: usize) -> usize {
    while i < s.len() && s.as_bytes()[i].is_ascii_whitespace() {
        i += 1;
    }
    i
}

fn ident(s: &str, start: usize) -> Option<(usize, &str)> {
    let b = s.as_bytes();
    if start >= b.len() || !(b[start].is_ascii_alphabetic() || b[start] == b'_') {
        return None;
    }
    let mut end = start;
    while end < b.len() && (b[end].is_ascii_alphanumeric() || b[end] == b'_') {
        end += 1;
    }
    Some((end, &s[start..end]))
}

/// Consumes `tok` after optional whitespace, returning the offset past it.
fn expect(line: &Line, i: usize, tok: &str) -> Result<usize> {
    let i = skip_ws(line.text, i);
    if line.text[i..].starts_with(tok) {
        Ok(i + tok.len())
    } else {
        Err(line.error(i, format!("expected `{tok}`")))
    }
}

fn expect_ident<'a>(line: &Line<'a>, i: usize, what: &str) -> Result<(usize, usize, &'a str)> {
    let i = skip_ws(line.text, i);
    let text: &'a str = line.text;
    ident(text, i)
        .map(|(end, name)| (i, end, name))
        .ok_or_else(|| line.error(i, format!("expected {what}")))
}

fn keyword(text: &str, word: &str) -> bool {
    text.starts_with(word)
        && text[word.len()..]
            .chars()
            .next()
            .is_none_or(|c| !(c.is_ascii_alphanumeric() || c == '_'))
}

pub fn parse_system(source: &str) -> Result<PfaffianSystem> {
    let mut x_vars: Option<Vec<String>> = None;
    let mut y_vars: Option<Vec<String>> = None;
    let mut ring: Option<Ring> = None;
    let mut f: Vec<Vec<Option<(Polynomial, usize)>>> = Vec::new();
    let mut g = Vec::new();

    for (k, raw) in source.lines().enumerate() {
        let text = raw.find('#').map_or(raw, |c| &raw[..c]);
        let line = Line {
            number: k + 1,
            text,
        };
        let start = skip_ws(text, 0);
        if start == text.len() {
            continue;
        }
        let rest = &text[start..];

        if keyword(rest, "vars") {
            let (kind_start, kind_end, kind) = expect_ident(&line, start + 4, "`x` or `y`")?;
            let slot = match kind {
                "x" => &mut x_vars,
                "y" => &mut y_vars,
                _ => return Err(line.error(kind_start, "expected `x` or `y`")),
            };
            if slot.is_some() {
                return Err(line.error(start, format!("`vars {kind}` declared twice")));
            }
            let mut i = expect(&line, kind_end, ":")?;
            let mut names = Vec::new();
            loop {
                i = skip_ws(text, i);
                if i == text.len() {
                    break;
                }
                let (end, name) =
                    ident(text, i).ok_or_else(|| line.error(i, "expected a variable name"))?;
                if names.iter().any(|n| n == name) {
                    return Err(line.error(i, format!("variable `{name}` listed twice")));
                }
                names.push(name.to_string());
                i = end;
            }
            if names.is_empty() {
                return Err(line.error(i, "expected at least one variable name"));
            }
            *slot = Some(names);
            if let (Some(xs), Some(ys)) = (&x_vars, &y_vars) {
                if let Some(v) = xs.iter().find(|v| ys.contains(v)) {
                    return Err(line.error(start, format!("`{v}` is both an x and a y variable")));
                }
                let all: Vec<&String> = xs.iter().chain(ys).collect();
                ring = Some(Ring::new(&all).map_err(|e| line.error(start, e.to_string()))?);
                f = vec![vec![None; xs.len()]; ys.len()];
            }
            continue;
        }

        let Some(ring) = ring.as_ref() else {
            return Err(line.error(start, "both `vars x:` and `vars y:` must come first"));
        };
        let (xs, ys) = (x_vars.as_ref().unwrap(), y_vars.as_ref().unwrap());

        if keyword(rest, "d") {
            let (ys_start, i, y) = expect_ident(&line, start + 1, "an unknown")?;
            let iy = ys
                .iter()
                .position(|v| v == y)
                .ok_or_else(|| line.error(ys_start, format!("`{y}` is not a y variable")))?;
            let i = expect(&line, i, "/")?;
            let i = expect(&line, i, "d")?;
            let (xs_start, i, x) = expect_ident(&line, i, "an independent variable")?;
            let jx = xs
                .iter()
                .position(|v| v == x)
                .ok_or_else(|| line.error(xs_start, format!("`{x}` is not an x variable")))?;
            let i = expect(&line, i, "=")?;
            if let Some((_, first)) = &f[iy][jx] {
                return Err(line.error(
                    start,
                    format!("second equation for d {y} / d {x} (first on line {first})"),
                ));
            }
            f[iy][jx] = Some((line.polynomial(i, text.len(), ring)?, line.number));
        } else if keyword(rest, "constraint") {
            let i = start + "constraint".len();
            let p = match text[i..].find('=') {
                Some(eq) => {
                    let lhs = line.polynomial(i, i + eq, ring)?;
                    let rhs = line.polynomial(i + eq + 1, text.len(), ring)?;
                    lhs.try_sub(&rhs)?
                }
                None => line.polynomial(i, text.len(), ring)?,
            };
            g.push(p);
        } else {
            return Err(line.error(start, "expected `vars`, `d` or `constraint`"));
        }
    }

    let (Some(ring), Some(xs), Some(ys)) = (ring, x_vars, y_vars) else {
        return Err(Error::InvalidSystem(
            "both `vars x:` and `vars y:` lines are required".into(),
        ));
    };
    let mut rows = Vec::with_capacity(ys.len());
    for (i, row) in f.into_iter().enumerate() {
        let mut out = Vec::with_capacity(xs.len());
        for (j, entry) in row.into_iter().enumerate() {
            match entry {
                Some((p, _)) => out.push(p),
                None => {
                    return Err(Error::InvalidSystem(format!(
                        "missing equation for d {} / d {}",
                        ys[i], xs[j]
                    )))
                }
            }
        }
        rows.push(out);
    }
    PfaffianSystem::new(&ring, xs, ys, rows, g)
}

/// Text form of a system; `parse_system` reads it back to the same system.
pub fn print_system(system: &PfaffianSystem) -> String {
    let mut out = String::new();
    writeln!(out, "vars x: {}", system.x_vars().join(" ")).unwrap();
    writeln!(out, "vars y: {}", system.y_vars().join(" ")).unwrap();
    for (i, row) in system.f().iter().enumerate() {
        for (j, p) in row.iter().enumerate() {
            writeln!(
                out,
                "d {} / d {} = {p}",
                system.y_vars()[i],
                system.x_vars()[j]
            )
            .unwrap();
        }
    }
    for p in system.g() {
        writeln!(out, "constraint {p}").unwrap();
    }
    out
}
