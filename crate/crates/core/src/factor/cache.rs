//! Text cache for atom catalogs.
//!
//! ```text
//! prodone-atom-catalog 1
//! group <sha256 of the Cayley table>
//! order <n>
//! max_length <m>
//! exhaustive <true|false>
//! atoms <count>
//! <length> <e_0> … <e_{n-1}> | <w_1> … <w_length>
//! …
//! end
//! ```
//!
//! Each record gives the atom's length, its exponent vector, and after the
//! bar its smallest product-one ordering as element indices. Everything is
//! decimal ASCII, so files are byte-order independent.

use std::fs;
use std::io::{BufRead, BufReader, Read, Write};
use std::path::{Path, PathBuf};

use super::{enumerate_atoms_with, Atom, AtomCatalog, EnumerateOptions};
use crate::error::{Error, Result};
use crate::group::{ElementId, GroupTable};

pub const FORMAT_VERSION: u32 = 1;
const MAGIC: &str = "prodone-atom-catalog";

pub fn write_catalog(catalog: &AtomCatalog, mut w: impl Write) -> Result<()> {
    let g = catalog.group();
    writeln!(w, "{MAGIC} {FORMAT_VERSION}")?;
    writeln!(w, "group {}", g.table_hash())?;
    writeln!(w, "order {}", g.order())?;
    writeln!(w, "max_length {}", catalog.max_length())?;
    writeln!(w, "exhaustive {}", catalog.is_exhaustive())?;
    writeln!(w, "atoms {}", catalog.len())?;
    let mut line = String::new();
    for a in catalog.atoms() {
        line.clear();
        line.push_str(&a.len().to_string());
        for e in a.exponents(g.order()) {
            line.push(' ');
            line.push_str(&e.to_string());
        }
        line.push_str(" |");
        for x in &a.witness {
            line.push(' ');
            line.push_str(&x.to_string());
        }
        writeln!(w, "{line}")?;
    }
    writeln!(w, "end")?;
    Ok(())
}

fn bad(msg: impl Into<String>) -> Error {
    Error::Cache(msg.into())
}

fn header<'a>(lines: &mut impl Iterator<Item = std::io::Result<String>>, key: &'a str) -> Result<String> {
    let line = lines.next().ok_or_else(|| bad(format!("missing `{key}` line")))??;
    line.strip_prefix(key)
        .and_then(|r| r.strip_prefix(' '))
        .map(str::to_string)
        .ok_or_else(|| bad(format!("expected `{key}`, found `{line}`")))
}

fn num<T: std::str::FromStr>(s: &str, what: &str) -> Result<T> {
    s.trim().parse().map_err(|_| bad(format!("bad {what} `{s}`")))
}

/// Reads a catalog for `group`, rejecting files written for a different table.
pub fn read_catalog(group: &GroupTable, r: impl Read) -> Result<AtomCatalog> {
    let mut lines = BufReader::new(r).lines();
    let version: u32 = num(&header(&mut lines, MAGIC)?, "format version")?;
    if version != FORMAT_VERSION {
        return Err(bad(format!("unsupported format version {version}")));
    }
    let hash = header(&mut lines, "group")?;
    if hash != group.table_hash() {
        return Err(bad("catalog belongs to a different group table"));
    }
    let n: usize = num(&header(&mut lines, "order")?, "order")?;
    if n != group.order() {
        return Err(bad("order mismatch"));
    }
    let max_length: usize = num(&header(&mut lines, "max_length")?, "max_length")?;
    let exhaustive: bool = num(&header(&mut lines, "exhaustive")?, "exhaustive flag")?;
    let count: usize = num(&header(&mut lines, "atoms")?, "atom count")?;
    let mut atoms = Vec::with_capacity(count);
    for _ in 0..count {
        let line = lines.next().ok_or_else(|| bad("truncated atom list"))??;
        let (head, wit) = line.split_once('|').ok_or_else(|| bad("record without witness"))?;
        let mut fields = head.split_whitespace();
        let len: usize = num(fields.next().unwrap_or(""), "atom length")?;
        let exps: Vec<u32> = fields.map(|f| num(f, "exponent")).collect::<Result<_>>()?;
        if exps.len() != n || exps.iter().map(|&e| e as usize).sum::<usize>() != len {
            return Err(bad(format!("malformed record `{line}`")));
        }
        let terms: Vec<ElementId> = exps
            .iter()
            .enumerate()
            .flat_map(|(g, &e)| std::iter::repeat(ElementId::from_index(g)).take(e as usize))
            .collect();
        let witness: Vec<ElementId> = wit
            .split_whitespace()
            .map(|f| num::<usize>(f, "witness term").map(ElementId::from_index))
            .collect::<Result<_>>()?;
        let mut sorted = witness.clone();
        sorted.sort();
        if sorted != terms {
            return Err(bad(format!("witness does not match exponents in `{line}`")));
        }
        atoms.push(Atom { terms, witness });
    }
    match lines.next() {
        Some(Ok(l)) if l == "end" => {}
        _ => return Err(bad("missing end marker")),
    }
    Ok(AtomCatalog::from_atoms(group.clone(), max_length, exhaustive, atoms))
}

/// On-disk catalogs, one file per Cayley table.
#[derive(Clone, Debug)]
pub struct CatalogCache {
    dir: PathBuf,
}

impl CatalogCache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        CatalogCache { dir: dir.into() }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path_for(&self, group: &GroupTable) -> PathBuf {
        self.dir.join(format!("{}.atoms", group.table_hash()))
    }

    /// A cached exhaustive catalog covering `max_length`, if one exists and parses.
    pub fn load(&self, group: &GroupTable, max_length: usize) -> Option<AtomCatalog> {
        let file = fs::File::open(self.path_for(group)).ok()?;
        let cat = read_catalog(group, file).ok()?;
        let covers = cat.is_exhaustive() && (cat.max_length() >= max_length || cat.is_complete());
        covers.then(|| cat.truncated(max_length))
    }

    /// Writes via a temporary file and a rename, so readers never see a partial file.
    pub fn store(&self, catalog: &AtomCatalog) -> Result<()> {
        fs::create_dir_all(&self.dir)?;
        let target = self.path_for(catalog.group());
        let tmp = self.dir.join(format!(
            ".{}.{}.tmp",
            catalog.group().table_hash(),
            std::process::id()
        ));
        {
            let mut f = std::io::BufWriter::new(fs::File::create(&tmp)?);
            write_catalog(catalog, &mut f)?;
            f.flush()?;
        }
        fs::rename(&tmp, &target)?;
        Ok(())
    }

    /// Loads a covering catalog or enumerates and stores one.
    pub fn load_or_build(&self, group: &GroupTable, max_length: usize, opts: EnumerateOptions) -> Result<AtomCatalog> {
        let max_length = max_length.min(group.order());
        if let Some(cat) = self.load(group, max_length) {
            return Ok(cat);
        }
        let cat = enumerate_atoms_with(group, max_length, opts)?;
        self.store(&cat)?;
        Ok(cat)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::factor::enumerate_atoms;
    use crate::group::{cyclic, dihedral, symmetric};

    #[test]
    fn round_trip() {
        let g = dihedral(8).unwrap();
        let cat = enumerate_atoms(&g, 5).unwrap();
        let mut buf = Vec::new();
        write_catalog(&cat, &mut buf).unwrap();
        let back = read_catalog(&g, buf.as_slice()).unwrap();
        assert_eq!(back.max_length(), 5);
        assert!(back.is_exhaustive());
        assert!(cat.atoms().eq(back.atoms()));
    }

    #[test]
    fn header_layout() {
        let g = cyclic(2).unwrap();
        let cat = enumerate_atoms(&g, 3).unwrap();
        let mut buf = Vec::new();
        write_catalog(&cat, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let want = format!(
            "prodone-atom-catalog 1\ngroup {}\norder 2\nmax_length 3\nexhaustive true\natoms 2\n1 1 0 | 0\n2 0 2 | 1 1\nend\n",
            g.table_hash()
        );
        assert_eq!(text, want);
    }

    #[test]
    fn rejects_other_group_and_corruption() {
        let g = symmetric(3).unwrap();
        let cat = enumerate_atoms(&g, 3).unwrap();
        let mut buf = Vec::new();
        write_catalog(&cat, &mut buf).unwrap();
        assert!(read_catalog(&cyclic(6).unwrap(), buf.as_slice()).is_err());
        let text = String::from_utf8(buf).unwrap();
        let truncated = &text[..text.len() - 4];
        assert!(read_catalog(&g, truncated.as_bytes()).is_err());
        let tampered = text.replacen("| 0\n", "| 1\n", 1);
        assert!(read_catalog(&g, tampered.as_bytes()).is_err());
    }

    #[test]
    fn cache_directory() {
        let dir = tempfile::tempdir().unwrap();
        let cache = CatalogCache::new(dir.path());
        let g = symmetric(3).unwrap();
        assert!(cache.load(&g, 4).is_none());
        let built = cache.load_or_build(&g, 6, EnumerateOptions::default()).unwrap();
        assert!(cache.path_for(&g).exists());
        let loaded = cache.load(&g, 4).unwrap();
        assert_eq!(loaded.max_length(), 4);
        assert!(built.truncated(4).atoms().eq(loaded.atoms()));
        // relabeled copy of the same group gets its own file
        let opp = g.opposite();
        assert_ne!(cache.path_for(&opp), cache.path_for(&g));
        let leftovers: Vec<_> = fs::read_dir(dir.path())
            .unwrap()
            .filter_map(|e| e.ok())
            .filter(|e| e.file_name().to_string_lossy().ends_with(".tmp"))
            .collect();
        assert!(leftovers.is_empty());
    }
}
