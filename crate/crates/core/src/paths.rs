//! Directed paths of the Bruhat graph.

use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::perm::{Permutation, Transposition};
use crate::reforder::ReflectionOrdering;

/// Longest path that fits the packed representation.
pub const MAX_PACKED_LEN: usize = 16;

/// The label sequence of a path packed one byte per label, first label in
/// the most significant used byte. For a fixed length, integer order equals
/// lexicographic order of label sequences.
pub type PackedPath = u128;

/// Label `i` (1-based) of a packed path of length `h`.
#[inline]
pub fn packed_label(packed: PackedPath, h: usize, i: usize) -> Transposition {
    Transposition::from_byte((packed >> (8 * (h - i))) as u8)
}

#[inline]
pub fn packed_labels(packed: PackedPath, h: usize) -> impl Iterator<Item = Transposition> {
    (1..=h).map(move |i| packed_label(packed, h, i))
}

pub fn pack_labels(labels: &[Transposition]) -> Result<PackedPath> {
    if labels.len() > MAX_PACKED_LEN {
        return Err(Error::PathTooLong(labels.len()));
    }
    Ok(labels.iter().fold(0 as PackedPath, |acc, t| (acc << 8) | t.to_byte() as PackedPath))
}

/// Replaces labels `i` and `i + 1` of a packed path.
#[inline]
pub(crate) fn packed_replace(packed: PackedPath, h: usize, i: usize, s: Transposition, t: Transposition) -> PackedPath {
    let shift = 8 * (h - i - 1);
    let mask = !((0xffff as PackedPath) << shift);
    let pair = ((s.to_byte() as PackedPath) << 8) | t.to_byte() as PackedPath;
    (packed & mask) | (pair << shift)
}

/// Vertices `x_0, …, x_h` of the packed path starting at `start`.
pub fn packed_vertices(start: Permutation, packed: PackedPath, h: usize) -> Vec<Permutation> {
    let mut out = Vec::with_capacity(h + 1);
    let mut x = start;
    out.push(x);
    for t in packed_labels(packed, h) {
        x = x.left_mul(t);
        out.push(x);
    }
    out
}

/// A path `x_0 -t_1-> x_1 -t_2-> … -t_h-> x_h` in the Bruhat graph.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BruhatPath {
    vertices: Vec<Permutation>,
    labels: Vec<Transposition>,
}

impl BruhatPath {
    /// The path of length zero sitting at `x`.
    pub fn empty(x: Permutation) -> Self {
        BruhatPath { vertices: alloc::vec![x], labels: Vec::new() }
    }

    /// Builds the path from its start and labels, checking every step is an
    /// edge of the Bruhat graph.
    pub fn from_labels(start: Permutation, labels: &[Transposition]) -> Result<Self> {
        let mut vertices = Vec::with_capacity(labels.len() + 1);
        vertices.push(start);
        let mut x = start;
        for &t in labels {
            if t.b() as usize > x.degree() || x.length_change(t) <= 0 {
                return Err(Error::NotAnEdge);
            }
            x = x.left_mul(t);
            vertices.push(x);
        }
        Ok(BruhatPath { vertices, labels: labels.to_vec() })
    }

    pub fn from_vertices(vertices: &[Permutation]) -> Result<Self> {
        let first = *vertices.first().ok_or(Error::MalformedChain)?;
        let mut labels = Vec::with_capacity(vertices.len() - 1);
        for w in vertices.windows(2) {
            labels.push(w[0].edge_to(&w[1])?.ok_or(Error::NotAnEdge)?.label);
        }
        Ok(BruhatPath { vertices: alloc::vec![first], labels }.rebuild())
    }

    fn rebuild(mut self) -> Self {
        let mut x = self.vertices[0];
        self.vertices.truncate(1);
        for &t in &self.labels {
            x = x.left_mul(t);
            self.vertices.push(x);
        }
        self
    }

    pub fn unpack(start: Permutation, packed: PackedPath, h: usize) -> Self {
        BruhatPath {
            vertices: packed_vertices(start, packed, h),
            labels: packed_labels(packed, h).collect(),
        }
    }

    pub fn pack(&self) -> Result<PackedPath> {
        pack_labels(&self.labels)
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn start(&self) -> Permutation {
        self.vertices[0]
    }

    pub fn end(&self) -> Permutation {
        *self.vertices.last().unwrap()
    }

    pub fn vertices(&self) -> &[Permutation] {
        &self.vertices
    }

    pub fn labels(&self) -> &[Transposition] {
        &self.labels
    }

    /// Whether `t_1 ⪯ t_2 ⪯ ⋯ ⪯ t_h` under `ord`.
    pub fn is_increasing(&self, ord: &ReflectionOrdering) -> bool {
        self.labels.windows(2).all(|w| ord.rank(w[0]) <= ord.rank(w[1]))
    }

    pub(crate) fn with_labels(&self, labels: Vec<Transposition>) -> Self {
        BruhatPath { vertices: alloc::vec![self.vertices[0]], labels }.rebuild()
    }
}

impl fmt::Display for BruhatPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.vertices[0])?;
        for (t, x) in self.labels.iter().zip(&self.vertices[1..]) {
            write!(f, " -{t}-> {x}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for BruhatPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// All paths of length `h` from `u` to `v`, in lexicographic order of their
/// label sequences.
pub fn enumerate_paths(u: Permutation, v: Permutation, h: usize) -> Result<Vec<BruhatPath>> {
    if h == 0 {
        u.check_same_degree(&v)?;
        return Ok(if u == v { alloc::vec![BruhatPath::empty(u)] } else { Vec::new() });
    }
    Ok(enumerate_packed(u, v, h)?
        .into_iter()
        .map(|p| BruhatPath::unpack(u, p, h))
        .collect())
}

/// [`enumerate_paths`] in packed form.
pub fn enumerate_packed(u: Permutation, v: Permutation, h: usize) -> Result<Vec<PackedPath>> {
    u.check_same_degree(&v)?;
    if h > MAX_PACKED_LEN {
        return Err(Error::PathTooLong(h));
    }
    let mut out = Vec::new();
    if h == 0 {
        if u == v {
            out.push(0);
        }
        return Ok(out);
    }
    let (lu, lv) = (u.length(), v.length());
    if lv < lu + h || !(lv - lu - h).is_multiple_of(2) || !u.bruhat_leq_unchecked(&v) {
        return Ok(out);
    }
    let mut search = TargetedSearch { target: v, target_len: lv, h, out: &mut out };
    search.descend(u, lu, 0, 0);
    Ok(out)
}

struct TargetedSearch<'a> {
    target: Permutation,
    target_len: usize,
    h: usize,
    out: &'a mut Vec<PackedPath>,
}

impl TargetedSearch<'_> {
    fn descend(&mut self, x: Permutation, len: usize, depth: usize, acc: PackedPath) {
        let remaining = self.h - depth;
        if remaining == 1 {
            if let Ok(Some(e)) = x.edge_to(&self.target) {
                self.out.push((acc << 8) | e.label.to_byte() as PackedPath);
            }
            return;
        }
        let pos = x.positions();
        let n = x.degree() as u8;
        for a in 1..n {
            for b in a + 1..=n {
                if pos[a as usize] > pos[b as usize] {
                    continue;
                }
                let t = Transposition::new_unchecked(a, b);
                let gain = Permutation::length_change_with(&x, &pos, t) as usize;
                let y_len = len + gain;
                if y_len + remaining - 1 > self.target_len {
                    continue;
                }
                let y = x.left_mul(t);
                if !y.bruhat_leq_unchecked(&self.target) {
                    continue;
                }
                self.descend(y, y_len, depth + 1, (acc << 8) | t.to_byte() as PackedPath);
            }
        }
    }
}

/// Calls `visit(end, packed)` for every path of length `h ≥ 1` starting at
/// `u`, in lexicographic label order.
pub fn for_each_path_from(u: Permutation, h: usize, mut visit: impl FnMut(Permutation, PackedPath)) -> Result<()> {
    if h == 0 || h > MAX_PACKED_LEN {
        return Err(Error::PathTooLong(h));
    }
    let n = u.degree();
    let top = n * (n - 1) / 2;
    fn go(
        x: Permutation,
        len: usize,
        remaining: usize,
        top: usize,
        acc: PackedPath,
        visit: &mut dyn FnMut(Permutation, PackedPath),
    ) {
        if remaining == 0 {
            visit(x, acc);
            return;
        }
        let pos = x.positions();
        let n = x.degree() as u8;
        for a in 1..n {
            for b in a + 1..=n {
                if pos[a as usize] > pos[b as usize] {
                    continue;
                }
                let t = Transposition::new_unchecked(a, b);
                let y_len = len + Permutation::length_change_with(&x, &pos, t) as usize;
                if y_len + remaining - 1 > top {
                    continue;
                }
                go(x.left_mul(t), y_len, remaining - 1, top, (acc << 8) | t.to_byte() as PackedPath, visit);
            }
        }
    }
    go(u, u.length(), h, top, 0, &mut visit);
    Ok(())
}
