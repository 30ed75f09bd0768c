//! Text formats for flipclasses and `(ι, c)` tables.
//!
//! A flipclass is a header line `u v h` followed by one path per line, each
//! the hexadecimal packed label sequence (two digits per label, first label
//! first). Blocks are separated by blank lines.
//!
//! Tables are tab-separated and sorted by key: coefficient tables hold
//! `key TAB c`, invariant tables `key TAB c TAB multiplicity TAB provenance`.

use std::fs;
use std::io::{BufRead, Write};
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};
use flipclass_core::classify::{CoefficientTable, InvariantRecord, InvariantTable, Provenance};
use flipclass_core::{Flipclass, IotaPolynomial, Permutation};

pub const TABLE_DIR_VAR: &str = "FLIPCLASS_TABLE_DIR";

/// The table directory: `$FLIPCLASS_TABLE_DIR`, or `tables`.
pub fn table_dir() -> PathBuf {
    std::env::var_os(TABLE_DIR_VAR).map(PathBuf::from).unwrap_or_else(|| PathBuf::from("tables"))
}

pub fn coefficient_table_path(dir: &Path, h: usize) -> PathBuf {
    dir.join(format!("ac{h}.tsv"))
}

pub fn invariant_table_path(dir: &Path, h: usize) -> PathBuf {
    dir.join(format!("ac{h}-records.tsv"))
}

pub fn write_flipclass(out: &mut impl Write, class: &Flipclass) -> std::io::Result<()> {
    writeln!(out, "{} {} {}", class.u(), class.v(), class.h())?;
    let width = 2 * class.h();
    for &p in class.packed() {
        writeln!(out, "{p:0width$x}")?;
    }
    Ok(())
}

pub fn flipclass_to_string(class: &Flipclass) -> String {
    let mut buf = Vec::new();
    write_flipclass(&mut buf, class).expect("writing to memory");
    String::from_utf8(buf).expect("ascii")
}

/// Parses every block of `text`, validating each as a flipclass.
pub fn parse_flipclasses(text: &str) -> Result<Vec<Flipclass>> {
    let mut out = Vec::new();
    let mut lines = text.lines().map(str::trim).peekable();
    while lines.peek().is_some() {
        let Some(header) = lines.by_ref().find(|l| !l.is_empty()) else { break };
        let fields: Vec<&str> = header.split_whitespace().collect();
        let [u, v, h] = fields.as_slice() else { bail!("bad flipclass header {header:?}") };
        let u: Permutation = u.parse()?;
        let v: Permutation = v.parse()?;
        let h: usize = h.parse().with_context(|| format!("bad path length in {header:?}"))?;
        let mut paths = Vec::new();
        while let Some(line) = lines.next_if(|l| !l.is_empty()) {
            paths.push(u128::from_str_radix(line, 16).with_context(|| format!("bad path {line:?}"))?);
        }
        out.push(Flipclass::from_packed(u, v, h, paths)?);
    }
    Ok(out)
}

pub fn write_coefficient_table(out: &mut impl Write, table: &CoefficientTable) -> std::io::Result<()> {
    for (key, c) in table.entries() {
        writeln!(out, "{key}\t{c}")?;
    }
    Ok(())
}

pub fn read_coefficient_table(input: impl BufRead, h: usize) -> Result<CoefficientTable> {
    let mut table = CoefficientTable::new(h);
    for (i, line) in input.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let (key, c) = line.split_once('\t').ok_or_else(|| anyhow!("line {}: expected key TAB c", i + 1))?;
        let c: u64 = c.trim().parse().with_context(|| format!("line {}: bad value", i + 1))?;
        table.insert(key.to_string(), c)?;
    }
    Ok(table)
}

fn provenance_name(p: Provenance) -> &'static str {
    match (p.census, p.product) {
        (true, true) => "census+product",
        (true, false) => "census",
        (false, true) => "product",
        (false, false) => "none",
    }
}

pub fn write_invariant_table(out: &mut impl Write, table: &InvariantTable) -> std::io::Result<()> {
    for r in table.records() {
        writeln!(out, "{}\t{}\t{}\t{}", r.key, r.c, r.multiplicity, provenance_name(r.provenance))?;
    }
    Ok(())
}

pub fn read_invariant_table(input: impl BufRead, h: usize) -> Result<InvariantTable> {
    let mut table = InvariantTable::new(h);
    for (i, line) in input.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split('\t').collect();
        let [key, c, m, prov] = fields.as_slice() else { bail!("line {}: expected four fields", i + 1) };
        let iota: IotaPolynomial = key.parse()?;
        if iota.canonical() != *key {
            bail!("line {}: key is not in canonical form", i + 1);
        }
        let provenance = match *prov {
            "census+product" => Provenance { census: true, product: true },
            "census" => Provenance { census: true, product: false },
            "product" => Provenance { census: false, product: true },
            other => bail!("line {}: unknown provenance {other:?}", i + 1),
        };
        table.insert(InvariantRecord {
            key: key.to_string(),
            iota,
            c: c.parse().with_context(|| format!("line {}: bad c", i + 1))?,
            multiplicity: m.parse().with_context(|| format!("line {}: bad multiplicity", i + 1))?,
            provenance,
        });
    }
    Ok(table)
}

pub fn save_coefficient_table(dir: &Path, table: &CoefficientTable) -> Result<PathBuf> {
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    let path = coefficient_table_path(dir, table.h());
    let mut buf = Vec::new();
    write_coefficient_table(&mut buf, table)?;
    fs::write(&path, buf).with_context(|| format!("writing {}", path.display()))?;
    Ok(path)
}

pub fn save_invariant_table(dir: &Path, table: &InvariantTable) -> Result<PathBuf> {
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    let path = invariant_table_path(dir, table.h());
    let mut buf = Vec::new();
    write_invariant_table(&mut buf, table)?;
    fs::write(&path, buf).with_context(|| format!("writing {}", path.display()))?;
    Ok(path)
}

/// Loads `ac{h}.tsv` from `dir`, or `None` if it does not exist.
pub fn load_coefficient_table(dir: &Path, h: usize) -> Result<Option<CoefficientTable>> {
    let path = coefficient_table_path(dir, h);
    match fs::File::open(&path) {
        Ok(f) => read_coefficient_table(std::io::BufReader::new(f), h)
            .with_context(|| format!("reading {}", path.display()))
            .map(Some),
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => Ok(None),
        Err(e) => Err(e).with_context(|| format!("opening {}", path.display())),
    }
}

pub fn load_invariant_table(dir: &Path, h: usize) -> Result<Option<InvariantTable>> {
    let path = invariant_table_path(dir, h);
    match fs::File::open(&path) {
        Ok(f) => read_invariant_table(std::io::BufReader::new(f), h)
            .with_context(|| format!("reading {}", path.display()))
            .map(Some),
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => Ok(None),
        Err(e) => Err(e).with_context(|| format!("opening {}", path.display())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use flipclass_core::flipclasses;

    #[test]
    fn flipclass_round_trip() {
        let e = Permutation::identity(4);
        let classes = flipclasses(e, "4231".parse().unwrap(), 3).unwrap();
        let text: String = classes.iter().map(|c| flipclass_to_string(c) + "\n").collect();
        assert!(text.starts_with("1234 4231 3\n"));
        assert_eq!(parse_flipclasses(&text).unwrap(), classes);
        assert!(parse_flipclasses("1234 4231 3\n1223\n").is_err());
        assert!(parse_flipclasses("1234 4231 3\n000000\n").is_err());
        assert!(parse_flipclasses("1234 4231 3\n211213\n").is_err());
        assert!(parse_flipclasses("1234 4231 3\nff121314\n").is_err());
    }

    #[test]
    fn coefficient_table_round_trip() {
        let mut t = CoefficientTable::new(6);
        t.insert("b".into(), 2).unwrap();
        t.insert("a".into(), 1).unwrap();
        let mut buf = Vec::new();
        write_coefficient_table(&mut buf, &t).unwrap();
        assert_eq!(String::from_utf8(buf.clone()).unwrap(), "a\t1\nb\t2\n");
        assert_eq!(read_coefficient_table(&buf[..], 6).unwrap(), t);
        assert!(read_coefficient_table(&b"a\t1\na\t2\n"[..], 6).is_err());
    }
}
