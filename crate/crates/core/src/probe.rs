//! Unlabelled isomorphism of flipclasses and a search for counterexamples
//! to "isomorphic unlabelled flipclasses have equal `c`".
//!
//! An isomorphism `F^u → G^u` is a bijection of the vertices of the paths
//! that maps paths to paths and commutes with every flip `f_i`. Time
//! direction is kept fixed.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use hashbrown::HashMap;

use crate::flips::Flipclass;
use crate::perm::Permutation;

fn mix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

fn combine(h: u64, x: u64) -> u64 {
    mix(h ^ x.rotate_left(17)).wrapping_add(x)
}

fn hash_sorted(mut xs: Vec<u64>) -> u64 {
    xs.sort_unstable();
    xs.into_iter().fold(0x51_7cc1_b727_220a, combine)
}

/// Paths as sequences of vertex indices, and the vertex count.
struct Incidence {
    vertices: usize,
    paths: Vec<Vec<u32>>,
}

impl Incidence {
    fn of(class: &Flipclass) -> Self {
        let seqs: Vec<Vec<Permutation>> = class.vertex_sequences().collect();
        let mut verts: Vec<Permutation> = seqs.iter().flatten().copied().collect();
        verts.sort_unstable();
        verts.dedup();
        let paths = seqs
            .iter()
            .map(|s| s.iter().map(|x| verts.binary_search(x).expect("vertex listed") as u32).collect())
            .collect();
        Incidence { vertices: verts.len(), paths }
    }
}

/// A hash of `F^u` from colour refinement, invariant under isomorphism.
pub fn unlabelled_hash(class: &Flipclass) -> u64 {
    let inc = Incidence::of(class);
    let h = class.h() as u64;
    let mut colour = alloc::vec![combine(h, inc.vertices as u64); inc.vertices];
    let mut classes = 1;
    loop {
        let path_colour: Vec<u64> =
            inc.paths.iter().map(|p| p.iter().fold(h, |acc, &x| combine(acc, colour[x as usize]))).collect();
        let mut through: Vec<Vec<u64>> = alloc::vec![Vec::new(); inc.vertices];
        for (p, &pc) in inc.paths.iter().zip(&path_colour) {
            for (i, &x) in p.iter().enumerate() {
                through[x as usize].push(combine(pc, i as u64));
            }
        }
        let next: Vec<u64> =
            through.into_iter().zip(&colour).map(|(t, &c)| combine(c, hash_sorted(t))).collect();
        let mut distinct = next.clone();
        distinct.sort_unstable();
        distinct.dedup();
        colour = next;
        if distinct.len() <= classes {
            return combine(hash_sorted(path_colour), inc.paths.len() as u64);
        }
        classes = distinct.len();
    }
}

/// Whether `F^u` and `G^u` are isomorphic.
///
/// The flip action is transitive, so an isomorphism is fixed by the image of
/// one path; every candidate image is tried.
pub fn unlabelled_isomorphic(f: &Flipclass, g: &Flipclass) -> bool {
    if f.h() != g.h() || f.len() != g.len() {
        return false;
    }
    let (fi, gi) = (Incidence::of(f), Incidence::of(g));
    if fi.vertices != gi.vertices {
        return false;
    }
    let fn_: Vec<Vec<usize>> = (0..f.len()).map(|i| f.flip_neighbours(i)).collect();
    let gn: Vec<Vec<usize>> = (0..g.len()).map(|i| g.flip_neighbours(i)).collect();
    (0..g.len()).any(|target| try_extend(&fi, &gi, &fn_, &gn, target))
}

fn try_extend(fi: &Incidence, gi: &Incidence, fn_: &[Vec<usize>], gn: &[Vec<usize>], target: usize) -> bool {
    let mut path_map = alloc::vec![usize::MAX; fi.paths.len()];
    let mut path_used = alloc::vec![false; gi.paths.len()];
    let mut vmap = alloc::vec![u32::MAX; fi.vertices];
    let mut vused = alloc::vec![false; gi.vertices];
    let mut stack = alloc::vec![(0usize, target)];
    while let Some((p, q)) = stack.pop() {
        if path_map[p] != usize::MAX {
            if path_map[p] != q {
                return false;
            }
            continue;
        }
        if path_used[q] {
            return false;
        }
        path_map[p] = q;
        path_used[q] = true;
        for (&a, &b) in fi.paths[p].iter().zip(&gi.paths[q]) {
            let slot = &mut vmap[a as usize];
            if *slot == u32::MAX {
                if vused[b as usize] {
                    return false;
                }
                *slot = b;
                vused[b as usize] = true;
            } else if *slot != b {
                return false;
            }
        }
        for (&pn, &qn) in fn_[p].iter().zip(&gn[q]) {
            stack.push((pn, qn));
        }
    }
    true
}

/// Two flipclasses with isomorphic `F^u` but different `c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    pub first: Flipclass,
    pub second: Flipclass,
    pub c_first: u64,
    pub c_second: u64,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ProbeReport {
    pub flipclasses: usize,
    /// Pairs sharing an ι key and an unlabelled hash that were tested exactly.
    pub exact_tests: usize,
    pub isomorphic_pairs: usize,
    /// Isomorphism classes of `F^u` found.
    pub unlabelled_classes: usize,
    pub counterexamples: Vec<Counterexample>,
    pub budget_exhausted: bool,
}

/// Groups `(F, ι key, c)` triples by key, then by unlabelled hash, and tests
/// isomorphism exactly against one representative per class. At most
/// `budget` exact tests are run.
pub fn probe(items: &[(Flipclass, alloc::string::String, u64)], budget: usize) -> ProbeReport {
    let mut report = ProbeReport { flipclasses: items.len(), ..ProbeReport::default() };
    let mut buckets: BTreeMap<(&str, u64), Vec<usize>> = BTreeMap::new();
    let mut hashes: HashMap<usize, u64> = HashMap::new();
    for (i, (f, key, _)) in items.iter().enumerate() {
        let hv = unlabelled_hash(f);
        hashes.insert(i, hv);
        buckets.entry((key.as_str(), hv)).or_default().push(i);
    }
    for members in buckets.values() {
        let mut reps: Vec<usize> = Vec::new();
        'member: for &i in members {
            for &r in &reps {
                if report.exact_tests >= budget {
                    report.budget_exhausted = true;
                    return report;
                }
                report.exact_tests += 1;
                if unlabelled_isomorphic(&items[r].0, &items[i].0) {
                    report.isomorphic_pairs += 1;
                    if items[r].2 != items[i].2 {
                        report.counterexamples.push(Counterexample {
                            first: items[r].0.clone(),
                            second: items[i].0.clone(),
                            c_first: items[r].2,
                            c_second: items[i].2,
                        });
                    }
                    continue 'member;
                }
            }
            reps.push(i);
        }
        report.unlabelled_classes += reps.len();
    }
    report
}
