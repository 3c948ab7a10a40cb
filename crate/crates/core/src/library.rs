//! `.stab` code definitions and the shipped fixtures.
//!
//! ```text
//! # comment
//! name: steane
//! n: 7
//! k: 1
//! XXXXIII
//! ...
//! ```

use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::pauli::PauliString;
use crate::symplectic::build_check_matrix;

/// Environment variable naming a directory searched for `<name>.stab` before
/// the built-in fixtures.
pub const FIXTURE_DIR_ENV: &str = "STABFORGE_FIXTURES";

pub const SHIPPED: [(&str, &str); 3] = [
    ("eight_qubit", include_str!("../fixtures/eight_qubit.stab")),
    ("steane", include_str!("../fixtures/steane.stab")),
    ("thirteen_qubit", include_str!("../fixtures/thirteen_qubit.stab")),
];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CodeDefinition {
    pub name: String,
    pub n: usize,
    pub k: usize,
    pub generators: Vec<PauliString>,
    pub notes: Vec<String>,
}

fn err(path: &str, line: usize, msg: impl Into<String>) -> Error {
    Error::StabFile { path: path.to_string(), line, msg: msg.into() }
}

/// Parse `.stab` text; `origin` names the source in error messages.
pub fn parse_stab(text: &str, origin: &str) -> Result<CodeDefinition> {
    let (mut name, mut n, mut k) = (None, None, None);
    let mut generators = Vec::new();
    let mut gen_lines = Vec::new();
    let mut notes = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = match raw.find('#') {
            Some(p) => {
                let c = raw[p + 1..].trim();
                if !c.is_empty() && generators.is_empty() && name.is_none() {
                    notes.push(c.to_string());
                }
                &raw[..p]
            }
            None => raw,
        }
        .trim();
        if line.is_empty() {
            continue;
        }
        if let Some((key, value)) = line.split_once(':') {
            let value = value.trim();
            match key.trim() {
                "name" => name = Some(value.to_string()),
                "n" => n = Some(value.parse::<usize>().map_err(|_| err(origin, lineno, format!("bad n '{value}'")))?),
                "k" => k = Some(value.parse::<usize>().map_err(|_| err(origin, lineno, format!("bad k '{value}'")))?),
                "note" => notes.push(value.to_string()),
                other => return Err(err(origin, lineno, format!("unknown header '{other}'"))),
            }
            continue;
        }
        let g: PauliString = line.parse().map_err(|e| err(origin, lineno, format!("{e}")))?;
        generators.push(g);
        gen_lines.push(lineno);
    }
    let name = name.ok_or_else(|| err(origin, 0, "missing 'name:' header"))?;
    let n = n.ok_or_else(|| err(origin, 0, "missing 'n:' header"))?;
    let k = k.ok_or_else(|| err(origin, 0, "missing 'k:' header"))?;
    if k > n {
        return Err(err(origin, 0, format!("k = {k} exceeds n = {n}")));
    }
    for (g, &line) in generators.iter().zip(&gen_lines) {
        if g.n() != n {
            return Err(err(origin, line, format!("generator has {} qubits, expected {n}", g.n())));
        }
    }
    if generators.len() != n - k {
        return Err(err(origin, 0, format!("{} generators, expected n-k = {}", generators.len(), n - k)));
    }
    build_check_matrix(&generators).map_err(|e| match e {
        Error::NonCommuting { a, b } => err(
            origin,
            gen_lines[b - 1],
            format!("generators {a} (line {}) and {b} (line {}) do not commute", gen_lines[a - 1], gen_lines[b - 1]),
        ),
        other => err(origin, 0, other.to_string()),
    })?;
    Ok(CodeDefinition { name, n, k, generators, notes })
}

pub fn load_stab(path: &Path) -> Result<CodeDefinition> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io { path: path.display().to_string(), msg: e.to_string() })?;
    parse_stab(&text, &path.display().to_string())
}

/// One of the shipped definitions by name (`eight_qubit`, `steane`,
/// `thirteen_qubit`), ignoring the fixture-directory override.
pub fn builtin(name: &str) -> Option<CodeDefinition> {
    let name = name.strip_suffix(".stab").unwrap_or(name);
    SHIPPED.iter().find(|(n, _)| *n == name).map(|(n, text)| parse_stab(text, &format!("{n}.stab")).expect("shipped fixtures are valid"))
}

/// Resolve a code argument: an existing file path, then `<dir>/<name>.stab`
/// under the fixture override directory, then the shipped fixtures.
pub fn resolve_code(arg: &str) -> Result<CodeDefinition> {
    let p = Path::new(arg);
    if p.is_file() {
        return load_stab(p);
    }
    let stem = p.file_name().and_then(|f| f.to_str()).unwrap_or(arg);
    let stem = stem.strip_suffix(".stab").unwrap_or(stem);
    if let Ok(dir) = std::env::var(FIXTURE_DIR_ENV) {
        let candidate: PathBuf = Path::new(&dir).join(format!("{stem}.stab"));
        if candidate.is_file() {
            return load_stab(&candidate);
        }
    }
    builtin(stem).ok_or_else(|| Error::Io { path: arg.to_string(), msg: "no such file or shipped code".into() })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shipped_codes_load() {
        let e = builtin("eight_qubit").unwrap();
        assert_eq!((e.n, e.k), (8, 3));
        assert_eq!(e.generators[4].to_string(), "IYXZXZIY");
        let s = builtin("steane.stab").unwrap();
        assert_eq!((s.n, s.k, s.generators.len()), (7, 1, 6));
        let t = builtin("thirteen_qubit").unwrap();
        assert_eq!((t.n, t.k), (13, 7));
    }

    #[test]
    fn rejects_non_commuting_with_line() {
        let text = "name: bad\nn: 2\nk: 0\nXI\nZI\n";
        match parse_stab(text, "bad.stab") {
            Err(Error::StabFile { line, msg, .. }) => {
                assert_eq!(line, 5);
                assert!(msg.contains("do not commute"), "{msg}");
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn reports_parse_errors_with_line() {
        let text = "name: bad\nn: 2\nk: 1\n# c\nXQ\n";
        match parse_stab(text, "bad.stab") {
            Err(Error::StabFile { line, .. }) => assert_eq!(line, 5),
            other => panic!("{other:?}"),
        }
        assert!(parse_stab("n: 2\nk: 1\nXX\n", "x").is_err());
        assert!(parse_stab("name: a\nn: 2\nk: 0\nXX\n", "x").is_err());
    }
}
