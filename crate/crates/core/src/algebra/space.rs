//! Variable spaces.
//!
//! A paired space always lays out its `m` holomorphic variables first and their
//! partners at `m..2m`, so variable `k` is paired with `k + m`. Complexification
//! and diagonal restriction therefore never move exponents, they only swap the
//! space a polynomial lives in.

use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SpaceKind {
    /// Independent variables, no pairing.
    Plain,
    /// Variables `v` together with their conjugates, printed `~v`.
    Hermitian,
    /// Holomorphic variables and independent mirror variables (`x ↔ z`, `yk ↔ wk`).
    Complexified,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VarSpace {
    kind: SpaceKind,
    names: Vec<String>,
    holomorphic: usize,
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

fn check_names(names: &[String]) -> Result<()> {
    let mut seen = HashSet::new();
    for n in names {
        if !is_identifier(n) {
            return Err(Error::InvalidSpace(format!("`{n}` is not an identifier")));
        }
        if n == "i" || n == "conj" {
            return Err(Error::InvalidSpace(format!("`{n}` is reserved")));
        }
        if !seen.insert(n.as_str()) {
            return Err(Error::InvalidSpace(format!("duplicate variable `{n}`")));
        }
    }
    Ok(())
}

/// Preferred name of the independent partner of a holomorphic variable:
/// `x → z`, `yk → wk`, anything else `v → v_c`.
fn mirror_name(v: &str, taken: &HashSet<String>) -> String {
    let preferred = if v == "x" {
        Some("z".to_string())
    } else if let Some(rest) = v.strip_prefix('y') {
        if !rest.is_empty() && rest.chars().all(|c| c.is_ascii_digit()) {
            Some(format!("w{rest}"))
        } else {
            None
        }
    } else {
        None
    };
    let mut name = match preferred {
        Some(p) if !taken.contains(&p) => p,
        _ => format!("{v}_c"),
    };
    while taken.contains(&name) {
        name.push_str("_c");
    }
    name
}

impl VarSpace {
    pub fn plain<S: AsRef<str>>(names: &[S]) -> Result<Arc<Self>> {
        let names: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
        check_names(&names)?;
        Ok(Arc::new(VarSpace {
            kind: SpaceKind::Plain,
            holomorphic: names.len(),
            names,
        }))
    }

    /// Holomorphic variables followed by their conjugates `~v`.
    pub fn hermitian<S: AsRef<str>>(holo: &[S]) -> Result<Arc<Self>> {
        let mut names: Vec<String> = holo.iter().map(|s| s.as_ref().to_string()).collect();
        check_names(&names)?;
        let m = names.len();
        for k in 0..m {
            let c = format!("~{}", names[k]);
            names.push(c);
        }
        Ok(Arc::new(VarSpace {
            kind: SpaceKind::Hermitian,
            names,
            holomorphic: m,
        }))
    }

    /// Holomorphic variables followed by independent mirror variables.
    pub fn complexified<S: AsRef<str>>(holo: &[S]) -> Result<Arc<Self>> {
        let mut names: Vec<String> = holo.iter().map(|s| s.as_ref().to_string()).collect();
        check_names(&names)?;
        let m = names.len();
        let mut taken: HashSet<String> = names.iter().cloned().collect();
        for k in 0..m {
            let w = mirror_name(&names[k], &taken);
            taken.insert(w.clone());
            names.push(w);
        }
        Ok(Arc::new(VarSpace {
            kind: SpaceKind::Complexified,
            names,
            holomorphic: m,
        }))
    }

    /// Plain germ coordinates `x, y1, …, yn`.
    pub fn germ(n: usize) -> Arc<Self> {
        Self::plain(&germ_names(n)).expect("germ names are valid")
    }

    /// `x, y1, …, yn` and their conjugates.
    pub fn germ_hermitian(n: usize) -> Arc<Self> {
        Self::hermitian(&germ_names(n)).expect("germ names are valid")
    }

    /// `x, y1, …, yn, z, w1, …, wn`.
    pub fn germ_complexified(n: usize) -> Arc<Self> {
        Self::complexified(&germ_names(n)).expect("germ names are valid")
    }

    /// `z1, …, zn` and their conjugates.
    pub fn quadric_hermitian(n: usize) -> Arc<Self> {
        let names: Vec<String> = (1..=n).map(|k| format!("z{k}")).collect();
        Self::hermitian(&names).expect("quadric names are valid")
    }

    pub fn kind(&self) -> SpaceKind {
        self.kind
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, idx: usize) -> &str {
        &self.names[idx]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Number of holomorphic (unbarred) variables.
    pub fn holomorphic_count(&self) -> usize {
        self.holomorphic
    }

    pub fn holomorphic_names(&self) -> &[String] {
        &self.names[..self.holomorphic]
    }

    pub fn is_paired(&self) -> bool {
        self.kind != SpaceKind::Plain
    }

    /// The conjugate (or mirror) partner of a variable.
    pub fn partner(&self, idx: usize) -> Option<usize> {
        if !self.is_paired() {
            return None;
        }
        let m = self.holomorphic;
        if idx < m {
            Some(idx + m)
        } else if idx < 2 * m {
            Some(idx - m)
        } else {
            None
        }
    }

    /// True for the barred (or mirror) member of a pair.
    pub fn is_conjugate(&self, idx: usize) -> bool {
        self.is_paired() && idx >= self.holomorphic
    }

    /// Same holomorphic names, different layout.
    pub fn with_kind(&self, kind: SpaceKind) -> Arc<Self> {
        let holo = self.holomorphic_names();
        match kind {
            SpaceKind::Plain => Self::plain(holo),
            SpaceKind::Hermitian => Self::hermitian(holo),
            SpaceKind::Complexified => Self::complexified(holo),
        }
        .expect("names were validated at construction")
    }
}

impl fmt::Display for VarSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.names.join(", "))
    }
}

pub fn germ_names(n: usize) -> Vec<String> {
    std::iter::once("x".to_string())
        .chain((1..=n).map(|k| format!("y{k}")))
        .collect()
}

/// Value equality of two shared spaces.
pub fn same_space(a: &Arc<VarSpace>, b: &Arc<VarSpace>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

pub(crate) fn ensure_same(a: &Arc<VarSpace>, b: &Arc<VarSpace>) -> Result<()> {
    if same_space(a, b) {
        Ok(())
    } else {
        Err(Error::SpaceMismatch {
            left: a.to_string(),
            right: b.to_string(),
        })
    }
}
