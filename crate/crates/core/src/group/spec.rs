//! Text forms of groups: the family shorthand (`C4`, `D8`, `Dic12`, `Q8`,
//! `S3`, `A4`, products such as `C3xC4`, powers such as `C2^3`) and the
//! Cayley-table file format.

use super::{alternating, cyclic, dicyclic, dihedral, direct_product, symmetric, ElementId, GroupTable};
use crate::error::{Error, Result};

fn parse_factor(tok: &str) -> Result<GroupTable> {
    let (base, power) = match tok.split_once('^') {
        Some((b, p)) => {
            let k: usize = p
                .parse()
                .map_err(|_| Error::Parse(format!("bad exponent in `{tok}`")))?;
            if k == 0 {
                return Err(Error::Parse(format!("zero exponent in `{tok}`")));
            }
            (b, k)
        }
        None => (tok, 1),
    };
    let num = |prefix: &str| -> Result<usize> {
        base[prefix.len()..]
            .parse()
            .map_err(|_| Error::Parse(format!("expected a number after `{prefix}` in `{tok}`")))
    };
    let g = if base == "Q8" {
        dicyclic(8)?
    } else if base.starts_with("Dic") {
        dicyclic(num("Dic")?)?
    } else if base.starts_with('C') {
        cyclic(num("C")?)?
    } else if base.starts_with('D') {
        dihedral(num("D")?)?
    } else if base.starts_with('S') {
        symmetric(num("S")?)?
    } else if base.starts_with('A') {
        alternating(num("A")?)?
    } else {
        return Err(Error::Parse(format!("unknown group family `{tok}`")));
    };
    let mut out = g.clone();
    for _ in 1..power {
        out = direct_product(&out, &g)?;
    }
    Ok(out)
}

/// Parses the family shorthand, or reads a Cayley-table file when the spec is `@path`.
pub fn parse_group_spec(spec: &str) -> Result<GroupTable> {
    let spec = spec.trim();
    if let Some(path) = spec.strip_prefix('@') {
        let text = std::fs::read_to_string(path)?;
        return from_table_text(&text);
    }
    if spec.is_empty() {
        return Err(Error::Parse("empty group spec".into()));
    }
    let mut factors = spec.split('x').map(parse_factor);
    let mut g = factors.next().unwrap()?;
    for f in factors {
        g = direct_product(&g, &f?)?;
    }
    Ok(g)
}

/// Parses the table format: the order `n` on the first line, `n` rows of
/// whitespace-separated indices, then optional `name <index> <label>` lines.
/// Blank lines and lines starting with `#` are ignored.
pub fn from_table_text(text: &str) -> Result<GroupTable> {
    let mut lines = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'));
    let n: usize = lines
        .next()
        .ok_or_else(|| Error::Parse("missing order line".into()))?
        .parse()
        .map_err(|_| Error::Parse("first line must be the group order".into()))?;
    if n == 0 {
        return Err(Error::Parse("group order must be positive".into()));
    }
    let mut rows = Vec::with_capacity(n);
    for r in 0..n {
        let line = lines
            .next()
            .ok_or_else(|| Error::Parse(format!("expected {n} table rows, found {r}")))?;
        let row = line
            .split_whitespace()
            .map(|t| t.parse::<usize>().map_err(|_| Error::Parse(format!("row {r}: bad entry `{t}`"))))
            .collect::<Result<Vec<_>>>()?;
        rows.push(row);
    }
    let mut names: Vec<String> = (0..n).map(|i| i.to_string()).collect();
    for line in lines {
        let mut parts = line.split_whitespace();
        match (parts.next(), parts.next(), parts.next(), parts.next()) {
            (Some("name"), Some(i), Some(label), None) => {
                let i: usize = i
                    .parse()
                    .ok()
                    .filter(|&i| i < n)
                    .ok_or_else(|| Error::Parse(format!("bad element index in `{line}`")))?;
                names[i] = label.to_string();
            }
            _ => return Err(Error::Parse(format!("unexpected line `{line}`"))),
        }
    }
    GroupTable::from_rows(&rows, Some(names))
}

/// Inverse of [`from_table_text`].
pub fn to_table_text(g: &GroupTable) -> String {
    let mut s = format!("{}\n", g.order());
    for row in g.rows() {
        let cells: Vec<String> = row.iter().map(usize::to_string).collect();
        s.push_str(&cells.join(" "));
        s.push('\n');
    }
    for a in g.elements() {
        s.push_str(&format!("name {} {}\n", a, g.name(a)));
    }
    s
}

impl GroupTable {
    pub fn parse_element(&self, label: &str) -> Result<ElementId> {
        self.element_by_label(label)
            .ok_or_else(|| Error::Parse(format!("unknown element `{label}`")))
    }
}
