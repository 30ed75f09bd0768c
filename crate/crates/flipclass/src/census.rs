//! Parallel census of all `h`-flipclasses of `S_n`.

use std::collections::hash_map::DefaultHasher;
use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::hash::{Hash, Hasher};
use std::time::Instant;

use anyhow::{Context, Result};
use flipclass_core::classify::{census_from, CensusSummary, InvariantTable};
use flipclass_core::reduction::restrict;
use flipclass_core::{Flipclass, IotaPolynomial, Permutation, ReflectionOrdering, TVector};
use rayon::prelude::*;

/// Folds `visit` over every `h`-flipclass of `S_n`, sharded by the start
/// permutation. `merge` must be commutative and associative.
pub fn fold_census<T, I, V, M>(n: usize, h: usize, workers: usize, init: I, visit: V, merge: M) -> Result<T>
where
    T: Send,
    I: Fn() -> T + Sync + Send,
    V: Fn(&mut T, Flipclass) + Sync + Send,
    M: Fn(T, T) -> T + Sync + Send,
{
    let starts = Permutation::all(n);
    let pool = rayon::ThreadPoolBuilder::new().num_threads(workers).build().context("building worker pool")?;
    pool.install(|| {
        starts
            .par_iter()
            .map(|&u| {
                let mut acc = init();
                census_from(u, h, |f| visit(&mut acc, f))?;
                Ok(acc)
            })
            .try_reduce(&init, |a, b| Ok(merge(a, b)))
    })
}

/// A 64-bit digest of the restriction `r_E(F)`, identifying `F` up to the
/// letters it does not move.
pub fn restricted_digest(class: &Flipclass) -> u64 {
    let r = restrict(class).expect("restriction of a flipclass");
    let mut s = DefaultHasher::new();
    r.u().window().hash(&mut s);
    r.v().window().hash(&mut s);
    r.h().hash(&mut s);
    r.packed().hash(&mut s);
    s.finish()
}

/// Aggregates of a census: counts, the `(ι, c)` table and the alternate
/// deduplication.
#[derive(Clone, Debug, Default)]
pub struct CensusData {
    pub flipclasses: u64,
    pub table: InvariantTable,
    pub restricted: HashSet<u64>,
    pub t_vectors: BTreeMap<TVector, u64>,
}

impl CensusData {
    fn new(h: usize) -> Self {
        CensusData { table: InvariantTable::new(h), ..CensusData::default() }
    }

    fn add(&mut self, class: &Flipclass, ord: &ReflectionOrdering) {
        let iota = IotaPolynomial::of(class);
        let c = ord.count_increasing(class).expect("ordering matches degree") as u64;
        self.flipclasses += 1;
        *self.t_vectors.entry(iota.t_vector()).or_insert(0) += 1;
        self.table.add_census(&iota, c);
        self.restricted.insert(restricted_digest(class));
    }

    fn merge(mut self, other: CensusData) -> CensusData {
        self.flipclasses += other.flipclasses;
        self.table.merge(other.table);
        self.restricted.extend(other.restricted);
        for (t, k) in other.t_vectors {
            *self.t_vectors.entry(t).or_insert(0) += k;
        }
        self
    }
}

/// Result of [`run_census`].
#[derive(Clone, Debug)]
pub struct Census {
    pub n: usize,
    pub h: usize,
    pub data: CensusData,
    pub seconds: f64,
}

impl Census {
    pub fn summary(&self) -> CensusSummary {
        CensusSummary {
            n: self.n,
            h: self.h,
            flipclasses: self.data.flipclasses,
            distinct_iota: self.data.table.distinct_keys(),
            distinct_tvec: self.data.t_vectors.len(),
        }
    }

    /// Count under the alternate convention: flipclasses identified when
    /// their restrictions coincide.
    pub fn restricted_count(&self) -> usize {
        self.data.restricted.len()
    }

    pub fn t_vectors(&self) -> BTreeSet<TVector> {
        self.data.t_vectors.keys().cloned().collect()
    }
}

pub fn run_census(n: usize, h: usize, workers: usize) -> Result<Census> {
    let start = Instant::now();
    let ord = ReflectionOrdering::lex(n)?;
    let data = fold_census(
        n,
        h,
        workers,
        || CensusData::new(h),
        |acc, f| acc.add(&f, &ord),
        CensusData::merge,
    )?;
    Ok(Census { n, h, data, seconds: start.elapsed().as_secs_f64() })
}

/// Every `h`-flipclass of `S_n` with its lexicographic `c`, sorted
/// canonically.
pub fn collect_census(n: usize, h: usize, workers: usize) -> Result<Vec<(Flipclass, u64)>> {
    let ord = ReflectionOrdering::lex(n)?;
    let mut all = fold_census(
        n,
        h,
        workers,
        Vec::new,
        |acc, f| {
            let c = ord.count_increasing(&f).expect("ordering matches degree") as u64;
            acc.push((f, c));
        },
        |mut a, b| {
            a.extend(b);
            a
        },
    )?;
    all.sort();
    Ok(all)
}
