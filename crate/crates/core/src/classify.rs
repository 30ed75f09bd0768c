//! Census of flipclasses and the `(ι, c)` tables `Ic_r`, `Rc_r`, `Ac_r`.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::flips::{partition_into_orbits, Flipclass};
use crate::invariants::{IotaPolynomial, TVector};
use crate::paths::{for_each_path_from, PackedPath};
use crate::perm::Permutation;
use crate::reforder::ReflectionOrdering;

/// Calls `visit` on every `h`-flipclass starting at `u`, grouped by
/// endpoint in increasing order.
pub fn census_from(u: Permutation, h: usize, mut visit: impl FnMut(Flipclass)) -> Result<()> {
    let mut found: Vec<(Permutation, PackedPath)> = Vec::new();
    for_each_path_from(u, h, |end, packed| found.push((end, packed)))?;
    found.sort_unstable();
    let mut start = 0;
    let mut packed = Vec::new();
    while start < found.len() {
        let v = found[start].0;
        let stop = start + found[start..].partition_point(|&(e, _)| e == v);
        packed.clear();
        packed.extend(found[start..stop].iter().map(|&(_, p)| p));
        for class in partition_into_orbits(u, v, h, &packed) {
            visit(class);
        }
        start = stop;
    }
    Ok(())
}

/// Every `h`-flipclass of `S_n`, once each.
pub fn census(n: usize, h: usize, mut visit: impl FnMut(Flipclass)) -> Result<()> {
    for u in Permutation::all(n) {
        census_from(u, h, &mut visit)?;
    }
    Ok(())
}

/// Counts of a census.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CensusSummary {
    pub n: usize,
    pub h: usize,
    pub flipclasses: u64,
    pub distinct_iota: usize,
    pub distinct_tvec: usize,
}

/// Where a record of an `(ι, c)` table comes from.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Provenance {
    /// Realized by a flipclass of `S_{r+1}` (the set `Ic_r`).
    pub census: bool,
    /// Realized as a product `μ(i_1, i_2)` (the set `Rc_r`).
    pub product: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantRecord {
    pub key: String,
    pub iota: IotaPolynomial,
    pub c: u64,
    /// Number of census flipclasses with this `(ι, c)`.
    pub multiplicity: u64,
    pub provenance: Provenance,
}

/// A set of `(ι, c)` pairs for one `h`, keyed by canonical ι then `c`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct InvariantTable {
    h: usize,
    records: BTreeMap<(String, u64), InvariantRecord>,
}

impl InvariantTable {
    pub fn new(h: usize) -> Self {
        InvariantTable { h, records: BTreeMap::new() }
    }

    pub fn h(&self) -> usize {
        self.h
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn records(&self) -> impl Iterator<Item = &InvariantRecord> {
        self.records.values()
    }

    pub fn distinct_keys(&self) -> usize {
        self.records.keys().map(|(k, _)| k).collect::<BTreeSet<_>>().len()
    }

    pub fn distinct_t_vectors(&self) -> BTreeSet<TVector> {
        self.records.values().map(|r| r.iota.t_vector()).collect()
    }

    fn entry(&mut self, iota: &IotaPolynomial, c: u64) -> &mut InvariantRecord {
        let key = iota.canonical();
        self.records.entry((key.clone(), c)).or_insert_with(|| InvariantRecord {
            key,
            iota: iota.clone(),
            c,
            multiplicity: 0,
            provenance: Provenance::default(),
        })
    }

    pub fn add_census(&mut self, iota: &IotaPolynomial, c: u64) {
        let r = self.entry(iota, c);
        r.multiplicity += 1;
        r.provenance.census = true;
    }

    /// Adds a flipclass, counting increasing paths in lexicographic order.
    pub fn add_flipclass(&mut self, class: &Flipclass) {
        let ord = ReflectionOrdering::lex(class.degree()).expect("degree within range");
        let c = ord.count_increasing(class).expect("matching degree") as u64;
        self.add_census(&IotaPolynomial::of(class), c);
    }

    pub fn add_product(&mut self, iota: &IotaPolynomial, c: u64) {
        self.entry(iota, c).provenance.product = true;
    }

    /// Adds a record, merging with an existing one for the same `(ι, c)`.
    pub fn insert(&mut self, record: InvariantRecord) {
        let mut single = InvariantTable::new(self.h);
        single.records.insert((record.key.clone(), record.c), record);
        self.merge(single);
    }

    /// Multiset union; the tables must have the same `h`.
    pub fn merge(&mut self, other: InvariantTable) {
        debug_assert_eq!(self.h, other.h);
        for (k, r) in other.records {
            match self.records.get_mut(&k) {
                Some(mine) => {
                    mine.multiplicity += r.multiplicity;
                    mine.provenance.census |= r.provenance.census;
                    mine.provenance.product |= r.provenance.product;
                }
                None => {
                    self.records.insert(k, r);
                }
            }
        }
    }

    /// The census part `Ic_r`.
    pub fn census_part(&self) -> InvariantTable {
        self.filtered(|r| r.provenance.census)
    }

    /// The product part `Rc_r`.
    pub fn product_part(&self) -> InvariantTable {
        self.filtered(|r| r.provenance.product)
    }

    fn filtered(&self, keep: impl Fn(&InvariantRecord) -> bool) -> InvariantTable {
        InvariantTable {
            h: self.h,
            records: self.records.iter().filter(|(_, r)| keep(r)).map(|(k, r)| (k.clone(), r.clone())).collect(),
        }
    }

    /// Whether every product record is also a census record (`Rc_r ⊆ Ic_r`).
    pub fn products_within_census(&self) -> bool {
        self.records.values().all(|r| !r.provenance.product || r.provenance.census)
    }

    /// Keys with more than one `c`, under the ι key.
    pub fn check_goodness(&self) -> GoodnessReport {
        self.check_goodness_by(|r| r.key.clone())
    }

    /// The same check under the coarser t-vector key.
    pub fn check_goodness_by_t_vector(&self) -> GoodnessReport {
        self.check_goodness_by(|r| r.iota.t_vector().to_string())
    }

    pub fn check_goodness_by(&self, key: impl Fn(&InvariantRecord) -> String) -> GoodnessReport {
        let mut values: BTreeMap<String, BTreeSet<u64>> = BTreeMap::new();
        for r in self.records.values() {
            values.entry(key(r)).or_default().insert(r.c);
        }
        let keys = values.len();
        let conflicts: Vec<Conflict> = values
            .into_iter()
            .filter(|(_, cs)| cs.len() > 1)
            .map(|(key, cs)| Conflict { key, values: cs.into_iter().collect() })
            .collect();
        GoodnessReport { keys, conflicts }
    }

    /// The key-to-`c` map, failing if the table is not good.
    pub fn to_coefficient_table(&self) -> Result<CoefficientTable> {
        let report = self.check_goodness();
        if let Some(c) = report.conflicts.first() {
            return Err(Error::TableSelfCheck(alloc::format!("key {} has values {:?}", c.key, c.values)));
        }
        Ok(CoefficientTable {
            h: self.h,
            entries: self.records.values().map(|r| (r.key.clone(), r.c)).collect(),
        })
    }
}

/// `Ac_h = Ic_h ∪ Rc_h`, where `Rc_h` collects `(ι_1 ι_2, c_1 c_2)` over
/// `(ι_1, c_1) ∈ Ac_j`, `(ι_2, c_2) ∈ Ac_k`, `j + k = h`.
///
/// `lower[j - 1]` must be `Ac_j` for every `j < h`.
pub fn build_ac(ic: &InvariantTable, lower: &[&InvariantTable]) -> Result<InvariantTable> {
    let h = ic.h;
    for j in 1..h {
        match lower.get(j - 1) {
            Some(t) if t.h == j => {}
            _ => return Err(Error::MissingLowerTable(j)),
        }
    }
    let mut ac = ic.clone();
    for j in 1..=h / 2 {
        let (a, b) = (lower[j - 1], lower[h - j - 1]);
        for r1 in a.records() {
            for r2 in b.records() {
                ac.add_product(&(&r1.iota * &r2.iota), r1.c * r2.c);
            }
        }
    }
    Ok(ac)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Conflict {
    pub key: String,
    pub values: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GoodnessReport {
    /// Number of distinct keys.
    pub keys: usize,
    pub conflicts: Vec<Conflict>,
}

impl GoodnessReport {
    /// Whether each key determines `c`.
    pub fn is_good(&self) -> bool {
        self.conflicts.is_empty()
    }
}

/// A map from canonical ι to `c`, used to read off `c̄` at `h = 6`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CoefficientTable {
    h: usize,
    entries: BTreeMap<String, u64>,
}

impl CoefficientTable {
    pub fn new(h: usize) -> Self {
        CoefficientTable { h, entries: BTreeMap::new() }
    }

    pub fn h(&self) -> usize {
        self.h
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Inserts `key ↦ c`; a different value for a present key is an error.
    pub fn insert(&mut self, key: String, c: u64) -> Result<()> {
        match self.entries.get(&key) {
            Some(&old) if old != c => Err(Error::TableSelfCheck(alloc::format!("key {key} has values {old} and {c}"))),
            _ => {
                self.entries.insert(key, c);
                Ok(())
            }
        }
    }

    pub fn entries(&self) -> impl Iterator<Item = (&str, u64)> {
        self.entries.iter().map(|(k, &c)| (k.as_str(), c))
    }

    pub fn get(&self, key: &str) -> Option<u64> {
        self.entries.get(key).copied()
    }

    pub fn lookup(&self, iota: &IotaPolynomial) -> Result<u64> {
        let key = iota.canonical();
        self.get(&key).ok_or(Error::UnknownInvariant(key))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invariants::TimeSupportGraph;

    fn table(n: usize, h: usize) -> (InvariantTable, u64) {
        let mut t = InvariantTable::new(h);
        let mut count = 0;
        census(n, h, |f| {
            count += 1;
            t.add_flipclass(&f);
        })
        .unwrap();
        (t, count)
    }

    #[test]
    fn small_census_counts() {
        assert_eq!(table(2, 1).1, 1);
        assert_eq!(table(3, 2).1, 4);
        assert_eq!(table(4, 3).1, 50);
    }

    #[test]
    fn census_partitions_paths() {
        for u in Permutation::all(4) {
            let mut total = 0;
            census_from(u, 3, |f| total += f.len()).unwrap();
            let mut paths = 0;
            for_each_path_from(u, 3, |_, _| paths += 1).unwrap();
            assert_eq!(total, paths);
        }
    }

    #[test]
    fn h3_keys_are_crowns() {
        let (ic, _) = table(4, 3);
        let mut crowns = BTreeSet::new();
        census(4, 3, |f| {
            crowns.insert(TimeSupportGraph::of(&f).crown_size().expect("every 3-flipclass is a crown"));
        })
        .unwrap();
        assert_eq!(crowns.into_iter().collect::<Vec<_>>(), [2, 3, 4, 5]);
        assert_eq!(ic.distinct_keys(), 4);
        assert!(ic.check_goodness().is_good());
    }

    #[test]
    fn ac_tables_low_h() {
        let ic1 = table(2, 1).0;
        let ac1 = build_ac(&ic1, &[]).unwrap();
        assert_eq!(ac1, ic1);
        let ac2 = build_ac(&table(3, 2).0, &[&ac1]).unwrap();
        let ac3 = build_ac(&table(4, 3).0, &[&ac1, &ac2]).unwrap();
        assert!(ac3.products_within_census());
        assert!(ac3.check_goodness().is_good());
        assert_eq!(build_ac(&table(4, 3).0, &[&ac1]), Err(Error::MissingLowerTable(2)));
        let coeffs = ac3.to_coefficient_table().unwrap();
        assert_eq!(coeffs.len(), ac3.distinct_keys());
    }

    #[test]
    fn coefficient_table_rejects_conflicts() {
        let mut t = CoefficientTable::new(6);
        t.insert(String::from("k"), 2).unwrap();
        t.insert(String::from("k"), 2).unwrap();
        assert!(t.insert(String::from("k"), 3).is_err());
        assert!(matches!(t.lookup(&IotaPolynomial::zero()), Err(Error::UnknownInvariant(_))));
    }
}
