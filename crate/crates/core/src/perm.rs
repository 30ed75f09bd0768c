//! Permutations of `S_n` in one-line notation, transpositions, Bruhat order
//! and the edges of the Bruhat graph.
//!
//! Transpositions act on the left, i.e. on *values*: the edge `u -t-> v`
//! means `v = t ∘ u`, so `v` is obtained from the one-line word of `u` by
//! exchanging the two values moved by `t`.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::error::{Error, Result};

/// Largest supported degree.
pub const MAX_N: usize = 15;

/// A permutation of `{1, …, n}` stored by its one-line word.
///
/// Unused tail entries are always zero so that derived equality, ordering
/// and hashing only see the word itself.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    n: u8,
    window: [u8; MAX_N],
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        assert!((1..=MAX_N).contains(&n), "degree {n} out of range");
        let mut window = [0u8; MAX_N];
        for (i, w) in window.iter_mut().take(n).enumerate() {
            *w = i as u8 + 1;
        }
        Permutation { n: n as u8, window }
    }

    /// The longest element `w0 = n (n-1) … 1`.
    pub fn longest(n: usize) -> Self {
        assert!((1..=MAX_N).contains(&n), "degree {n} out of range");
        let mut window = [0u8; MAX_N];
        for (i, w) in window.iter_mut().take(n).enumerate() {
            *w = (n - i) as u8;
        }
        Permutation { n: n as u8, window }
    }

    /// Builds a permutation from its one-line word, checking it is a
    /// bijection of `{1, …, n}`.
    pub fn from_window(values: &[u8]) -> Result<Self> {
        let n = values.len();
        if n == 0 || n > MAX_N {
            return Err(Error::DegreeOutOfRange(n));
        }
        let mut seen = [false; MAX_N + 1];
        for &a in values {
            if a == 0 || a as usize > n || seen[a as usize] {
                return Err(Error::NotAPermutation);
            }
            seen[a as usize] = true;
        }
        let mut window = [0u8; MAX_N];
        window[..n].copy_from_slice(values);
        Ok(Permutation { n: n as u8, window })
    }

    pub(crate) fn from_window_unchecked(values: &[u8]) -> Self {
        let mut window = [0u8; MAX_N];
        window[..values.len()].copy_from_slice(values);
        Permutation { n: values.len() as u8, window }
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.n as usize
    }

    #[inline]
    pub fn window(&self) -> &[u8] {
        &self.window[..self.n as usize]
    }

    /// `w(i)` for a 1-based position `i`.
    #[inline]
    pub fn value_at(&self, position: usize) -> u8 {
        self.window[position - 1]
    }

    /// Positions of the values: `inv[a] = w⁻¹(a)` (1-based, index 0 unused).
    pub fn positions(&self) -> [u8; MAX_N + 1] {
        let mut pos = [0u8; MAX_N + 1];
        for (i, &a) in self.window().iter().enumerate() {
            pos[a as usize] = i as u8 + 1;
        }
        pos
    }

    pub fn inverse(&self) -> Self {
        let pos = self.positions();
        Self::from_window_unchecked(&pos[1..=self.degree()])
    }

    /// Function composition `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        self.check_same_degree(other)?;
        let mut window = [0u8; MAX_N];
        for (slot, &j) in window.iter_mut().zip(other.window()) {
            *slot = self.window[j as usize - 1];
        }
        Ok(Permutation { n: self.n, window })
    }

    /// Number of inversions, i.e. the Coxeter length.
    pub fn length(&self) -> usize {
        let w = self.window();
        let mut inv = 0;
        for i in 0..w.len() {
            for j in i + 1..w.len() {
                if w[i] > w[j] {
                    inv += 1;
                }
            }
        }
        inv
    }

    /// `t ∘ self`: exchange the values `t.a()` and `t.b()` in the word.
    #[inline]
    pub fn left_mul(&self, t: Transposition) -> Self {
        let mut out = *self;
        for w in out.window.iter_mut().take(self.n as usize) {
            if *w == t.a {
                *w = t.b;
            } else if *w == t.b {
                *w = t.a;
            }
        }
        out
    }

    /// `self ∘ t`: exchange the entries at positions `t.a()` and `t.b()`.
    pub fn right_mul(&self, t: Transposition) -> Self {
        let mut out = *self;
        out.window.swap(t.a as usize - 1, t.b as usize - 1);
        out
    }

    /// Whether `s_i = (i, i+1)` is a left descent, i.e. `ℓ(s_i w) < ℓ(w)`.
    pub fn has_left_descent(&self, i: usize) -> bool {
        let pos = self.positions();
        pos[i] > pos[i + 1]
    }

    /// Whether `s_i` is a right descent, i.e. `ℓ(w s_i) < ℓ(w)`.
    pub fn has_right_descent(&self, i: usize) -> bool {
        self.window[i - 1] > self.window[i]
    }

    /// Change of length under `t ∘ self`; positive iff the edge goes up.
    pub fn length_change(&self, t: Transposition) -> isize {
        let pos = self.positions();
        Self::length_change_with(self, &pos, t)
    }

    #[inline]
    pub(crate) fn length_change_with(w: &Self, pos: &[u8; MAX_N + 1], t: Transposition) -> isize {
        let (p, q) = (pos[t.a as usize] as usize, pos[t.b as usize] as usize);
        let (lo, hi) = if p < q { (p, q) } else { (q, p) };
        let between = w.window[lo..hi - 1]
            .iter()
            .filter(|&&x| x > t.a && x < t.b)
            .count() as isize;
        let magnitude = 1 + 2 * between;
        if p < q {
            magnitude
        } else {
            -magnitude
        }
    }

    /// Bruhat comparison `self ≤ other` by the rank-matrix criterion:
    /// for every prefix length `i` and threshold `j`, the number of entries
    /// `≥ j` among the first `i` entries of `self` is at most that of `other`.
    pub fn bruhat_leq(&self, other: &Self) -> Result<bool> {
        self.check_same_degree(other)?;
        Ok(self.bruhat_leq_unchecked(other))
    }

    pub(crate) fn bruhat_leq_unchecked(&self, other: &Self) -> bool {
        let n = self.degree();
        let mut cu = [0u8; MAX_N + 2];
        let mut cv = [0u8; MAX_N + 2];
        for i in 0..n {
            let a = self.window[i] as usize;
            let b = other.window[i] as usize;
            for c in cu.iter_mut().take(a + 1).skip(1) {
                *c += 1;
            }
            for c in cv.iter_mut().take(b + 1).skip(1) {
                *c += 1;
            }
            for j in 1..=n {
                if cu[j] > cv[j] {
                    return false;
                }
            }
        }
        true
    }

    /// All edges of the Bruhat graph leaving `self`, in lexicographic order
    /// of their labels.
    pub fn edges_up(&self) -> Vec<LabeledEdge> {
        let pos = self.positions();
        let n = self.degree() as u8;
        let mut out = Vec::new();
        for a in 1..n {
            for b in a + 1..=n {
                if pos[a as usize] < pos[b as usize] {
                    let label = Transposition { a, b };
                    out.push(LabeledEdge {
                        source: *self,
                        target: self.left_mul(label),
                        label,
                    });
                }
            }
        }
        out
    }

    /// All edges of the Bruhat graph entering `self`.
    pub fn edges_down(&self) -> Vec<LabeledEdge> {
        let pos = self.positions();
        let n = self.degree() as u8;
        let mut out = Vec::new();
        for a in 1..n {
            for b in a + 1..=n {
                if pos[a as usize] > pos[b as usize] {
                    let label = Transposition { a, b };
                    out.push(LabeledEdge {
                        source: self.left_mul(label),
                        target: *self,
                        label,
                    });
                }
            }
        }
        out
    }

    /// The edge `self -> other` if `other ∘ self⁻¹` is a transposition and
    /// the length goes up.
    pub fn edge_to(&self, other: &Self) -> Result<Option<LabeledEdge>> {
        self.check_same_degree(other)?;
        let mut moved = (0u8, 0u8, 0usize);
        for i in 0..self.degree() {
            let (x, y) = (self.window[i], other.window[i]);
            if x != y {
                match moved.2 {
                    0 => moved = (x, y, 1),
                    1 => {
                        if x != moved.1 || y != moved.0 {
                            return Ok(None);
                        }
                        moved.2 = 2;
                    }
                    _ => return Ok(None),
                }
            }
        }
        if moved.2 != 2 {
            return Ok(None);
        }
        let label = Transposition::new(moved.0, moved.1)?;
        if self.length_change(label) > 0 {
            Ok(Some(LabeledEdge { source: *self, target: *other, label }))
        } else {
            Ok(None)
        }
    }

    /// All permutations of degree `n` in lexicographic order of their words.
    pub fn all(n: usize) -> Vec<Self> {
        let mut current: Vec<u8> = (1..=n as u8).collect();
        let mut out = Vec::new();
        loop {
            out.push(Self::from_window_unchecked(&current));
            // next lexicographic permutation
            let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| current[i] < current[i + 1])
            else {
                break;
            };
            let j = (i + 1..n).rev().find(|&j| current[j] > current[i]).unwrap();
            current.swap(i, j);
            current[i + 1..].reverse();
        }
        out
    }

    pub(crate) fn check_same_degree(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            Err(Error::DegreeMismatch { left: self.degree(), right: other.degree() })
        } else {
            Ok(())
        }
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.degree() <= 9 {
            for &a in self.window() {
                write!(f, "{a}")?;
            }
            Ok(())
        } else {
            write!(f, "[")?;
            for (i, &a) in self.window().iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{a}")?;
            }
            write!(f, "]")
        }
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Permutation {
    type Err = Error;

    /// Accepts `2143` (one digit per entry) or `[10,1,2,…]`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let values: Vec<u8> = if let Some(inner) = s.strip_prefix('[').and_then(|r| r.strip_suffix(']')) {
            inner
                .split(',')
                .map(|tok| tok.trim().parse::<u8>().map_err(|_| Error::Parse(String::from(s))))
                .collect::<Result<_>>()?
        } else {
            s.chars()
                .map(|c| c.to_digit(10).map(|d| d as u8).ok_or_else(|| Error::Parse(String::from(s))))
                .collect::<Result<_>>()?
        };
        Permutation::from_window(&values)
    }
}

/// A transposition `(a, b)`, always stored with `a < b`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Transposition {
    a: u8,
    b: u8,
}

impl Transposition {
    /// Normalizes the pair; `(4,2)` and `(2,4)` are the same transposition.
    pub fn new(x: u8, y: u8) -> Result<Self> {
        if x == y || x == 0 || y == 0 || x as usize > MAX_N || y as usize > MAX_N {
            return Err(Error::InvalidTransposition(x, y));
        }
        Ok(if x < y { Transposition { a: x, b: y } } else { Transposition { a: y, b: x } })
    }

    #[inline]
    pub(crate) const fn new_unchecked(a: u8, b: u8) -> Self {
        Transposition { a, b }
    }

    /// The simple transposition `s_i = (i, i+1)`.
    pub fn simple(i: usize) -> Result<Self> {
        Self::new(i as u8, i as u8 + 1)
    }

    #[inline]
    pub fn a(&self) -> u8 {
        self.a
    }

    #[inline]
    pub fn b(&self) -> u8 {
        self.b
    }

    #[inline]
    pub fn moves(&self, letter: u8) -> bool {
        letter == self.a || letter == self.b
    }

    pub fn commutes_with(&self, other: &Self) -> bool {
        self == other || (!self.moves(other.a) && !self.moves(other.b))
    }

    #[inline]
    pub fn apply(&self, letter: u8) -> u8 {
        if letter == self.a {
            self.b
        } else if letter == self.b {
            self.a
        } else {
            letter
        }
    }

    /// One byte, `a` in the high nibble; byte order equals lexicographic order.
    #[inline]
    pub fn to_byte(self) -> u8 {
        (self.a << 4) | self.b
    }

    #[inline]
    pub fn from_byte(byte: u8) -> Self {
        Transposition { a: byte >> 4, b: byte & 0x0f }
    }

    /// All transpositions of `S_n` in lexicographic order.
    pub fn all(n: usize) -> Vec<Self> {
        let mut out = Vec::with_capacity(n * n.saturating_sub(1) / 2);
        for a in 1..n as u8 {
            for b in a + 1..=n as u8 {
                out.push(Transposition { a, b });
            }
        }
        out
    }
}

impl fmt::Display for Transposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.a, self.b)
    }
}

impl fmt::Debug for Transposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Transposition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let err = || Error::Parse(String::from(s));
        let inner = s.trim().strip_prefix('(').and_then(|r| r.strip_suffix(')')).ok_or_else(err)?;
        let (x, y) = inner.split_once(',').ok_or_else(err)?;
        let x = x.trim().parse::<u8>().map_err(|_| err())?;
        let y = y.trim().parse::<u8>().map_err(|_| err())?;
        Transposition::new(x, y)
    }
}

/// An edge `source -label-> target` of the Bruhat graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LabeledEdge {
    pub source: Permutation,
    pub target: Permutation,
    pub label: Transposition,
}

impl LabeledEdge {
    /// Checks `target = label ∘ source` and that the length goes up.
    pub fn new(source: Permutation, target: Permutation, label: Transposition) -> Result<Self> {
        source.check_same_degree(&target)?;
        if label.b as usize > source.degree()
            || source.left_mul(label) != target
            || source.length() >= target.length()
        {
            return Err(Error::NotAnEdge);
        }
        Ok(LabeledEdge { source, target, label })
    }
}
