//! The flip operators and flipclasses.
//!
//! For `x -> y` with `ℓ(y) - ℓ(x) = 2` in the Bruhat graph there are either
//! zero or two paths of length two; the flip exchanges them. A flipclass is
//! an orbit of `P_h(u, v)` under the group generated by the positional flips
//! `f_1, …, f_{h-1}`.

use alloc::collections::VecDeque;
use alloc::vec::Vec;
use hashbrown::HashSet;

use crate::error::{Error, Result};
use crate::paths::{self, packed_label, packed_replace, BruhatPath, PackedPath};
use crate::perm::{LabeledEdge, Permutation, Transposition};

/// How flips are computed. The brute-force rule searches all midpoints and
/// serves as an independent check of the closed form.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum FlipRule {
    #[default]
    ClosedForm,
    BruteForce,
}

/// Labels `(s, t)` of the flip of `x -p-> · -q-> ·`.
///
/// Closed form: commuting labels swap; otherwise write `p = (a,b)`,
/// `q = (a,c)` with `a` the shared letter and branch on the relative order
/// of `a, b, c` (and, when `a` lies between `b` and `c`, on the relative
/// positions of the three letters in `x`).
#[inline]
pub fn flip_labels(x: &Permutation, p: Transposition, q: Transposition) -> (Transposition, Transposition) {
    if p.commutes_with(&q) {
        return (q, p);
    }
    let a = if q.moves(p.a()) { p.a() } else { p.b() };
    let b = p.apply(a);
    let c = q.apply(a);
    let bc = Transposition::new_unchecked(b.min(c), b.max(c));
    let ab = p;
    let ac = q;
    let between = |lo: u8, mid: u8, hi: u8| (lo < mid && mid < hi) || (lo > mid && mid > hi);
    if between(a, b, c) {
        (bc, ab)
    } else if between(a, c, b) {
        (ac, bc)
    } else {
        let pos = x.positions();
        let (pa, pb, pc) = (pos[a as usize], pos[b as usize], pos[c as usize]);
        if between(pb, pa, pc) {
            (ac, bc)
        } else {
            (bc, ab)
        }
    }
}

/// Brute-force flip: the other midpoint `y ≠ x.left_mul(p)` with
/// `x -> y -> x.left_mul(p).left_mul(q)`.
pub fn flip_labels_brute(x: &Permutation, p: Transposition, q: Transposition) -> Option<(Transposition, Transposition)> {
    let mid = x.left_mul(p);
    let end = mid.left_mul(q);
    x.edges_up().into_iter().filter(|e| e.target != mid).find_map(|e| {
        e.target.edge_to(&end).ok().flatten().map(|second| (e.label, second.label))
    })
}

fn flip_with(rule: FlipRule, x: &Permutation, p: Transposition, q: Transposition) -> (Transposition, Transposition) {
    match rule {
        FlipRule::ClosedForm => flip_labels(x, p, q),
        FlipRule::BruteForce => flip_labels_brute(x, p, q).expect("length-two paths come in pairs"),
    }
}

/// The flip of the length-two path `e1` then `e2`.
pub fn flip2(e1: &LabeledEdge, e2: &LabeledEdge) -> Result<(LabeledEdge, LabeledEdge)> {
    if e1.target != e2.source || e1.label == e2.label {
        return Err(Error::MalformedChain);
    }
    let (s, t) = flip_labels(&e1.source, e1.label, e2.label);
    let y = e1.source.left_mul(s);
    Ok((
        LabeledEdge { source: e1.source, target: y, label: s },
        LabeledEdge { source: y, target: e2.target, label: t },
    ))
}

/// `f_i`: flip the subpath `x_{i-1} -> x_i -> x_{i+1}`, with `1 ≤ i ≤ h-1`.
pub fn flip_i(path: &BruhatPath, i: usize) -> Result<BruhatPath> {
    let h = path.len();
    if i == 0 || i >= h {
        return Err(Error::FlipIndex { index: i, len: h });
    }
    let labels = path.labels();
    let (s, t) = flip_labels(&path.vertices()[i - 1], labels[i - 1], labels[i]);
    let mut new_labels = labels.to_vec();
    new_labels[i - 1] = s;
    new_labels[i] = t;
    Ok(path.with_labels(new_labels))
}

/// Applies every `f_i` to a packed path and reports each image.
#[inline]
fn for_each_flip(rule: FlipRule, u: &Permutation, packed: PackedPath, h: usize, mut visit: impl FnMut(PackedPath)) {
    if h < 2 {
        return;
    }
    let mut x = *u;
    let mut prev = packed_label(packed, h, 1);
    for i in 1..h {
        let next = packed_label(packed, h, i + 1);
        let (s, t) = flip_with(rule, &x, prev, next);
        visit(packed_replace(packed, h, i, s, t));
        x = x.left_mul(prev);
        prev = next;
    }
}

/// An orbit of `P_h(u, v)` under the flip group, stored canonically as the
/// sorted list of packed label sequences.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Flipclass {
    u: Permutation,
    v: Permutation,
    h: usize,
    paths: Vec<PackedPath>,
}

impl Flipclass {
    /// Wraps an already closed orbit; `paths` gets sorted and deduplicated.
    pub(crate) fn from_orbit(u: Permutation, v: Permutation, h: usize, mut paths: Vec<PackedPath>) -> Self {
        paths.sort_unstable();
        paths.dedup();
        Flipclass { u, v, h, paths }
    }

    /// Rebuilds a flipclass from stored data, checking every path is valid
    /// and the set is closed under the flips.
    pub fn from_packed(u: Permutation, v: Permutation, h: usize, paths: Vec<PackedPath>) -> Result<Self> {
        if paths.is_empty() {
            return Err(Error::MalformedChain);
        }
        if h > paths::MAX_PACKED_LEN {
            return Err(Error::PathTooLong(h));
        }
        let class = Self::from_orbit(u, v, h, paths);
        for &p in &class.paths {
            if p.checked_shr(8 * h as u32).unwrap_or(0) != 0 {
                return Err(Error::MalformedChain);
            }
            let labels = paths::packed_labels(p, h)
                .map(|t| match Transposition::new(t.a(), t.b()) {
                    Ok(s) if s == t && (t.b() as usize) <= u.degree() => Ok(t),
                    _ => Err(Error::InvalidTransposition(t.a(), t.b())),
                })
                .collect::<Result<Vec<_>>>()?;
            let path = BruhatPath::from_labels(u, &labels)?;
            if path.end() != v {
                return Err(Error::MalformedChain);
            }
        }
        if !class.is_closed() {
            return Err(Error::MalformedChain);
        }
        Ok(class)
    }

    pub fn u(&self) -> Permutation {
        self.u
    }

    pub fn v(&self) -> Permutation {
        self.v
    }

    pub fn h(&self) -> usize {
        self.h
    }

    pub fn degree(&self) -> usize {
        self.u.degree()
    }

    pub fn len(&self) -> usize {
        self.paths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.paths.is_empty()
    }

    pub fn packed(&self) -> &[PackedPath] {
        &self.paths
    }

    pub fn contains(&self, packed: PackedPath) -> bool {
        self.paths.binary_search(&packed).is_ok()
    }

    pub fn path(&self, index: usize) -> BruhatPath {
        BruhatPath::unpack(self.u, self.paths[index], self.h)
    }

    pub fn paths(&self) -> impl Iterator<Item = BruhatPath> + '_ {
        self.paths.iter().map(|&p| BruhatPath::unpack(self.u, p, self.h))
    }

    /// Vertex sequences of all paths, in canonical order.
    pub fn vertex_sequences(&self) -> impl Iterator<Item = Vec<Permutation>> + '_ {
        self.paths.iter().map(|&p| paths::packed_vertices(self.u, p, self.h))
    }

    /// Whether `f_i(F) = F` for every `i`.
    pub fn is_closed(&self) -> bool {
        self.paths.iter().all(|&p| {
            let mut ok = true;
            for_each_flip(FlipRule::ClosedForm, &self.u, p, self.h, |q| ok &= self.contains(q));
            ok
        })
    }

    /// Images of path `index` under `f_1, …, f_{h-1}` as indices.
    pub fn flip_neighbours(&self, index: usize) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.h.saturating_sub(1));
        for_each_flip(FlipRule::ClosedForm, &self.u, self.paths[index], self.h, |q| {
            out.push(self.paths.binary_search(&q).expect("flipclass is closed"));
        });
        out
    }
}

/// The flipclass of `path`.
pub fn flipclass_of(path: &BruhatPath) -> Flipclass {
    flipclass_of_with(path, FlipRule::ClosedForm)
}

pub fn flipclass_of_with(path: &BruhatPath, rule: FlipRule) -> Flipclass {
    let h = path.len();
    let u = path.start();
    let start = path.pack().expect("path too long to pack");
    let mut seen: HashSet<PackedPath> = HashSet::new();
    seen.insert(start);
    let mut queue = VecDeque::from([start]);
    while let Some(p) = queue.pop_front() {
        for_each_flip(rule, &u, p, h, |q| {
            if seen.insert(q) {
                queue.push_back(q);
            }
        });
    }
    Flipclass::from_orbit(u, path.end(), h, seen.into_iter().collect())
}

/// Partitions a sorted `P_h(u, v)` into flipclasses, ordered by their least
/// path.
pub fn partition_into_orbits(u: Permutation, v: Permutation, h: usize, all: &[PackedPath]) -> Vec<Flipclass> {
    let mut orbit_of = alloc::vec![usize::MAX; all.len()];
    let mut orbits: Vec<Vec<PackedPath>> = Vec::new();
    let mut stack = Vec::new();
    for start in 0..all.len() {
        if orbit_of[start] != usize::MAX {
            continue;
        }
        let id = orbits.len();
        orbit_of[start] = id;
        let mut members = alloc::vec![all[start]];
        stack.push(start);
        while let Some(j) = stack.pop() {
            for_each_flip(FlipRule::ClosedForm, &u, all[j], h, |q| {
                let k = all.binary_search(&q).expect("flip stays inside P_h(u,v)");
                if orbit_of[k] == usize::MAX {
                    orbit_of[k] = id;
                    members.push(q);
                    stack.push(k);
                }
            });
        }
        orbits.push(members);
    }
    orbits.into_iter().map(|m| Flipclass::from_orbit(u, v, h, m)).collect()
}

/// All `h`-flipclasses of paths from `u` to `v`.
pub fn flipclasses(u: Permutation, v: Permutation, h: usize) -> Result<Vec<Flipclass>> {
    if h == 0 {
        u.check_same_degree(&v)?;
        return Ok(if u == v { alloc::vec![Flipclass::from_orbit(u, v, 0, alloc::vec![0])] } else { Vec::new() });
    }
    let all = paths::enumerate_packed(u, v, h)?;
    Ok(partition_into_orbits(u, v, h, &all))
}

#[cfg(test)]
mod tests {
    use alloc::string::ToString;
    use super::*;
    use crate::paths::enumerate_packed;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    fn t(a: u8, b: u8) -> Transposition {
        Transposition::new(a, b).unwrap()
    }

    fn edge(x: Permutation, label: Transposition) -> LabeledEdge {
        LabeledEdge::new(x, x.left_mul(label), label).unwrap()
    }

    #[test]
    fn commuting_labels_swap() {
        let x = Permutation::identity(4);
        let (e1, e2) = (edge(x, t(1, 2)), edge(x.left_mul(t(1, 2)), t(3, 4)));
        let (f1, f2) = flip2(&e1, &e2).unwrap();
        assert_eq!((f1.label, f2.label), (t(3, 4), t(1, 2)));
        assert_eq!(f2.target, e2.target);
    }

    #[test]
    fn increasing_triple_branch() {
        // p = (1,2), q = (1,3): shared letter 1 < 2 < 3.
        let x = Permutation::identity(3);
        let (e1, e2) = (edge(x, t(1, 2)), edge(x.left_mul(t(1, 2)), t(1, 3)));
        let (f1, f2) = flip2(&e1, &e2).unwrap();
        assert_eq!((f1.label, f2.label), (t(2, 3), t(1, 2)));
    }

    #[test]
    fn flip2_rejects_broken_chains() {
        let x = Permutation::identity(3);
        let e1 = edge(x, t(1, 2));
        let e2 = edge(x, t(2, 3));
        assert_eq!(flip2(&e1, &e2), Err(Error::MalformedChain));
    }

    #[test]
    fn closed_form_matches_brute_force_on_s5() {
        let mut checked = 0;
        for x in Permutation::all(5) {
            for e1 in x.edges_up() {
                for e2 in e1.target.edges_up() {
                    let closed = flip_labels(&x, e1.label, e2.label);
                    let brute = flip_labels_brute(&x, e1.label, e2.label);
                    // Holds for every gap, not only ℓ(z) - ℓ(x) = 2.
                    assert_eq!(Some(closed), brute, "{x} {} {}", e1.label, e2.label);
                    checked += 1;
                }
            }
        }
        assert!(checked > 1_000);
    }

    #[test]
    fn flip_i_example() {
        let e = Permutation::identity(3);
        let path = BruhatPath::from_labels(e, &[t(1, 2), t(2, 3)]).unwrap();
        let flipped = flip_i(&path, 1).unwrap();
        assert_eq!(flipped.to_string(), "123 -(2,3)-> 132 -(1,3)-> 312");
        assert_eq!(flip_i(&flipped, 1).unwrap(), path);
        assert!(matches!(flip_i(&path, 2), Err(Error::FlipIndex { .. })));
        assert!(matches!(flip_i(&path, 0), Err(Error::FlipIndex { .. })));
    }

    #[test]
    fn four_crown_orbit() {
        let path = BruhatPath::from_vertices(&[p("2143"), p("4123"), p("4132"), p("4231")]).unwrap();
        let labels: Vec<_> = path.labels().to_vec();
        assert_eq!(labels, [t(2, 4), t(2, 3), t(1, 2)]);
        let class = flipclass_of(&path);
        assert_eq!(class.len(), 8);
        assert_eq!(flipclass_of_with(&path, FlipRule::BruteForce), class);
        assert!(class.is_closed());
    }

    #[test]
    fn short_orbits() {
        let e = Permutation::identity(3);
        let single = BruhatPath::from_labels(e, &[t(1, 3)]).unwrap();
        assert_eq!(flipclass_of(&single).len(), 1);
        let pair = BruhatPath::from_labels(e, &[t(1, 2), t(2, 3)]).unwrap();
        assert_eq!(flipclass_of(&pair).len(), 2);
    }

    #[test]
    fn flipclasses_partition_paths() {
        let all = Permutation::all(4);
        for &u in &all {
            for &v in &all {
                for h in 1..=5 {
                    let paths = enumerate_packed(u, v, h).unwrap();
                    let classes = flipclasses(u, v, h).unwrap();
                    let total: usize = classes.iter().map(Flipclass::len).sum();
                    assert_eq!(total, paths.len());
                    for c in &classes {
                        assert!(c.is_closed());
                        assert_eq!(&flipclass_of(&c.path(0)), c);
                    }
                }
            }
        }
    }

    #[test]
    fn interval_examples() {
        let e = Permutation::identity(4);
        assert_eq!(flipclasses(e, p("4231"), 3).unwrap().len(), 2);
        // ℓ(v) - ℓ(u) = h gives a single flipclass.
        assert_eq!(flipclasses(p("1324"), p("3412"), 3).unwrap().len(), 1);
        assert_eq!(flipclasses(e, e, 0).unwrap().len(), 1);
    }
}
