//! Text front end: expression grammar, canonical printing and the `.poly`
//! file format.
//!
//! ```text
//! expr  := term (('+' | '-') term)*
//! term  := unary (('*' unary) | ('/' unary))*      divisor must be a nonzero constant
//! unary := ('+' | '-') unary | power
//! power := atom ('^' integer)?
//! atom  := number | 'i' | ident | '~' ident | 'conj(' expr ')' | '(' expr ')'
//! ```

mod lexer;
mod parser;
mod print;

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::algebra::{Poly, SpaceKind, VarSpace};
use crate::error::{Error, Result};
use parser::{parse_tree, Node, Usage};

pub use print::print_poly;
pub(crate) use print::monomial_text;

/// Expression text, optionally with the variable space it must live in.
#[derive(Clone, Debug)]
pub struct ExprSource {
    pub text: String,
    pub declared_vars: Option<Arc<VarSpace>>,
}

impl ExprSource {
    pub fn new(text: impl Into<String>) -> Self {
        ExprSource {
            text: text.into(),
            declared_vars: None,
        }
    }

    pub fn in_space(text: impl Into<String>, space: &Arc<VarSpace>) -> Self {
        ExprSource {
            text: text.into(),
            declared_vars: Some(space.clone()),
        }
    }
}

/// Parses an expression. Without declared variables the space is inferred
/// from the identifiers used (see [`parse`]).
pub fn parse_poly(src: &ExprSource) -> Result<Poly> {
    let tree = parse_tree(&src.text, 1)?;
    let space = match &src.declared_vars {
        Some(s) => s.clone(),
        None => infer_space(&tree.usage(), &Hint::None)?,
    };
    tree.eval(&space)
}

/// Parses with an inferred space.
///
/// Names from the coordinate families `x, y1.., z, w1..` give the germ layout
/// `x, y1..yn` (plain, or complexified when `z`/`wk` occur); names `z1..zn`
/// give `z1..zn`. Any `~v` or `conj(..)` makes the space Hermitian over the
/// unbarred names. Other names are sorted naturally.
pub fn parse(text: &str) -> Result<Poly> {
    parse_poly(&ExprSource::new(text))
}

/// Parses inside a fixed space.
pub fn parse_in(text: &str, space: &Arc<VarSpace>) -> Result<Poly> {
    parse_poly(&ExprSource::in_space(text, space))
}

enum Hint {
    None,
    Germ(usize),
    Coords(Vec<String>),
}

/// `(family, index)` of a germ coordinate name: `x`, `yk`, `z`, `wk`.
fn germ_family(name: &str) -> Option<(char, usize)> {
    match name {
        "x" => Some(('x', 0)),
        "z" => Some(('z', 0)),
        _ => {
            let (head, rest) = name.split_at(1);
            let k: usize = rest.parse().ok().filter(|_| !rest.starts_with('0'))?;
            match head {
                "y" => Some(('y', k)),
                "w" => Some(('w', k)),
                _ => None,
            }
        }
    }
}

fn indexed(name: &str, prefix: char) -> Option<usize> {
    let rest = name.strip_prefix(prefix)?;
    rest.parse().ok().filter(|&k: &usize| k >= 1 && !rest.starts_with('0'))
}

fn natural_key(name: &str) -> (String, u64, String) {
    let digits = name.len() - name.trim_end_matches(|c: char| c.is_ascii_digit()).len();
    let (stem, num) = name.split_at(name.len() - digits);
    (stem.to_string(), num.parse().unwrap_or(0), name.to_string())
}

fn undeclared(name: &str, pos: lexer::Pos) -> Error {
    Error::UndeclaredVariable {
        line: pos.line,
        column: pos.column,
        name: name.to_string(),
    }
}

fn germ_space(n: usize, usage: &Usage) -> Result<Arc<VarSpace>> {
    let mut mirror = None;
    for (name, pos) in &usage.vars {
        match germ_family(name) {
            Some((f, k)) if k <= n => {
                if f == 'z' || f == 'w' {
                    mirror.get_or_insert((name, *pos));
                }
            }
            _ => return Err(undeclared(name, *pos)),
        }
    }
    match (usage.conjugates, mirror) {
        (true, Some((name, pos))) => Err(undeclared(name, pos)),
        (true, None) => Ok(VarSpace::germ_hermitian(n)),
        (false, Some(_)) => Ok(VarSpace::germ_complexified(n)),
        (false, None) => Ok(VarSpace::germ(n)),
    }
}

fn infer_space(usage: &Usage, hint: &Hint) -> Result<Arc<VarSpace>> {
    match hint {
        Hint::Germ(n) => return germ_space(*n, usage),
        Hint::Coords(names) => {
            let space = if usage.conjugates {
                VarSpace::hermitian(names)?
            } else {
                VarSpace::plain(names)?
            };
            if let Some((name, pos)) = usage.vars.iter().find(|(v, _)| space.index_of(v).is_none()) {
                return Err(undeclared(name, *pos));
            }
            return Ok(space);
        }
        Hint::None => {}
    }
    let names: BTreeSet<&str> = usage.vars.iter().map(|(v, _)| v.as_str()).collect();
    if !names.is_empty() && names.iter().all(|v| germ_family(v).is_some()) {
        let n = names.iter().map(|v| germ_family(v).unwrap().1).max().unwrap_or(0);
        return germ_space(n, usage);
    }
    if !names.is_empty() && names.iter().all(|v| indexed(v, 'z').is_some()) {
        let n = names.iter().map(|v| indexed(v, 'z').unwrap()).max().unwrap_or(0);
        let holo: Vec<String> = (1..=n).map(|k| format!("z{k}")).collect();
        return if usage.conjugates {
            VarSpace::hermitian(&holo)
        } else {
            VarSpace::plain(&holo)
        };
    }
    if usage.conjugates {
        let mut holo: Vec<&str> = names.into_iter().collect();
        holo.sort_by_key(|v| natural_key(v));
        return VarSpace::hermitian(&holo);
    }
    // `v_c` next to `v` reads as a complexified pair
    let bases: BTreeSet<&str> = names
        .iter()
        .filter_map(|v| v.strip_suffix("_c"))
        .filter(|b| names.contains(b))
        .collect();
    if !bases.is_empty() && names.iter().all(|v| bases.contains(v) || v.strip_suffix("_c").is_some_and(|b| bases.contains(b))) {
        let mut holo: Vec<&str> = bases.into_iter().collect();
        holo.sort_by_key(|v| natural_key(v));
        return VarSpace::complexified(&holo);
    }
    let mut all: Vec<&str> = names.into_iter().collect();
    all.sort_by_key(|v| natural_key(v));
    VarSpace::plain(&all)
}

/// Header of a `.poly` file.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PolyHeader {
    /// `vars: n=<k>`: coordinates `x, y1..yk` and their partners.
    pub n: Option<usize>,
    /// `coords: a, b, ..`: explicit holomorphic coordinates.
    pub coords: Option<Vec<String>>,
    /// `kind: plain|hermitian|complexified`: fixes the layout instead of
    /// inferring it from the variables used.
    pub kind: Option<SpaceKind>,
}

/// A parsed `.poly` file.
#[derive(Clone, Debug)]
pub struct PolyFile {
    pub header: PolyHeader,
    pub poly: Poly,
}

fn header_error(line: usize, message: impl Into<String>) -> Error {
    Error::Syntax {
        line,
        column: 1,
        message: message.into(),
    }
}

/// Parses the `.poly` format: optional `vars:`, `coords:` and `kind:` header
/// lines and `#` comments, then one expression (which may span several lines).
pub fn parse_poly_file(text: &str) -> Result<PolyFile> {
    let mut header = PolyHeader::default();
    let mut body_start = None;
    let lines: Vec<&str> = text.lines().collect();
    for (i, raw) in lines.iter().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if let Some(rest) = line.strip_prefix("vars:") {
            let value = rest.split('#').next().unwrap_or("").trim();
            let n = value
                .strip_prefix('n')
                .map(str::trim_start)
                .and_then(|v| v.strip_prefix('='))
                .and_then(|v| v.trim().parse::<usize>().ok())
                .ok_or_else(|| header_error(i + 1, format!("expected `vars: n=<k>`, found `{line}`")))?;
            header.n = Some(n);
        } else if let Some(rest) = line.strip_prefix("coords:") {
            let value = rest.split('#').next().unwrap_or("");
            let names: Vec<String> = value
                .split(',')
                .map(|s| s.trim().to_string())
                .filter(|s| !s.is_empty())
                .collect();
            if names.is_empty() {
                return Err(header_error(i + 1, "`coords:` needs at least one name"));
            }
            header.coords = Some(names);
        } else if let Some(rest) = line.strip_prefix("kind:") {
            let value = rest.split('#').next().unwrap_or("").trim();
            header.kind = Some(match value {
                "plain" => SpaceKind::Plain,
                "hermitian" => SpaceKind::Hermitian,
                "complexified" => SpaceKind::Complexified,
                _ => return Err(header_error(i + 1, format!("unknown space kind `{value}`"))),
            });
        } else {
            body_start = Some(i);
            break;
        }
    }
    if header.n.is_some() && header.coords.is_some() {
        return Err(header_error(1, "use either `vars:` or `coords:`, not both"));
    }
    let start = body_start.ok_or_else(|| header_error(lines.len().max(1), "missing expression"))?;
    let body = lines[start..].join("\n");
    let tree: Node = parse_tree(&body, start + 1)?;
    let hint = match (&header.n, &header.coords) {
        (Some(n), _) => Hint::Germ(*n),
        (_, Some(c)) => Hint::Coords(c.clone()),
        _ => Hint::None,
    };
    let space = match (header.kind, hint) {
        (Some(kind), Hint::Germ(n)) => VarSpace::germ(n).with_kind(kind),
        (Some(kind), Hint::Coords(c)) => VarSpace::plain(&c)?.with_kind(kind),
        (Some(_), Hint::None) => {
            return Err(header_error(1, "`kind:` needs a `vars:` or `coords:` line"))
        }
        (None, hint) => infer_space(&tree.usage(), &hint)?,
    };
    let poly = tree.eval(&space)?;
    Ok(PolyFile { header, poly })
}

/// Writes `p` in the `.poly` format with a header that reproduces its space.
pub fn format_poly_file(p: &Poly) -> String {
    let space = p.space();
    let holo = space.holomorphic_names();
    let is_germ = !holo.is_empty()
        && holo[0] == "x"
        && holo[1..]
            .iter()
            .enumerate()
            .all(|(k, v)| *v == format!("y{}", k + 1));
    let vars = if is_germ {
        format!("vars: n={}", holo.len() - 1)
    } else {
        format!("coords: {}", holo.join(", "))
    };
    let kind = match space.kind() {
        SpaceKind::Plain => "plain",
        SpaceKind::Hermitian => "hermitian",
        SpaceKind::Complexified => "complexified",
    };
    format!("{vars}\nkind: {kind}\n{}\n", print_poly(p))
}
