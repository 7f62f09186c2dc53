//! The `ccc v1` text format.
//!
//! ```text
//! ccc v1
//! # comment
//! cell v0 0
//! cell v1 0
//! cell v0.v1 1
//! cover v0 v0.v1
//! cover v1 v0.v1
//! ```
//!
//! Lines may appear in any order after the header. Ids use the [`CellId`]
//! text form.

use std::fmt::Write as _;

use ccc_core::{Ccc, CellId};

pub const HEADER: &str = "ccc v1";

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum FormatError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("missing `{HEADER}` header")]
    MissingHeader,
    #[error(transparent)]
    Complex(#[from] ccc_core::Error),
}

fn syntax(line: usize, message: impl Into<String>) -> FormatError {
    FormatError::Syntax {
        line,
        message: message.into(),
    }
}

fn parse_id(line: usize, token: &str) -> Result<CellId, FormatError> {
    token
        .parse()
        .map_err(|_| syntax(line, format!("bad cell id `{token}`")))
}

pub fn parse_complex(text: &str) -> Result<Ccc, FormatError> {
    let mut header = false;
    let mut cells = Vec::new();
    let mut covers = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        if !header {
            if content.split_whitespace().collect::<Vec<_>>() != ["ccc", "v1"] {
                return Err(FormatError::MissingHeader);
            }
            header = true;
            continue;
        }
        let tokens: Vec<&str> = content.split_whitespace().collect();
        match tokens.as_slice() {
            ["cell", id, rank] => {
                let rank = rank
                    .parse::<usize>()
                    .map_err(|_| syntax(line, format!("bad rank `{rank}`")))?;
                cells.push((parse_id(line, id)?, rank));
            }
            ["cover", lower, upper] => covers.push((parse_id(line, lower)?, parse_id(line, upper)?)),
            _ => return Err(syntax(line, format!("expected `cell <id> <rank>` or `cover <lower> <upper>`, got `{content}`"))),
        }
    }
    if !header {
        return Err(FormatError::MissingHeader);
    }
    Ok(Ccc::build(cells, covers)?)
}

/// Cells in id order, then covers ordered by lower and upper id.
pub fn write_complex(s: &Ccc) -> String {
    let mut out = String::from(HEADER);
    out.push('\n');
    let fv: Vec<String> = s.face_vector().iter().map(usize::to_string).collect();
    let _ = writeln!(out, "# {} cells, face vector ({})", s.len(), fv.join(","));
    for c in s.cells() {
        let _ = writeln!(out, "cell {} {}", c, s.rank(c).expect("own cell"));
    }
    let mut covers = s.cover_pairs();
    covers.sort();
    for (lower, upper) in covers {
        let _ = writeln!(out, "cover {lower} {upper}");
    }
    out
}
