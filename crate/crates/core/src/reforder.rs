//! Reflection orderings of the transpositions of `S_n`.

use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;

use rand::Rng;

use crate::error::{Error, Result};
use crate::flips::Flipclass;
use crate::paths::{packed_labels, BruhatPath, PackedPath};
use crate::perm::{Permutation, Transposition, MAX_N};

/// A total order on the transpositions of `S_n`, stored as a rank table.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ReflectionOrdering {
    n: usize,
    order: Vec<Transposition>,
    rank: [u8; 256],
}

impl ReflectionOrdering {
    /// Builds an ordering from its listing, smallest first. It is not checked
    /// against the reflection-ordering axiom; see [`validate`](Self::validate).
    pub fn from_sequence(n: usize, order: Vec<Transposition>) -> Result<Self> {
        if !(1..=MAX_N).contains(&n) {
            return Err(Error::DegreeOutOfRange(n));
        }
        let mut rank = [u8::MAX; 256];
        for (i, t) in order.iter().enumerate() {
            if t.b() as usize > n || rank[t.to_byte() as usize] != u8::MAX {
                return Err(Error::InvalidOrdering);
            }
            rank[t.to_byte() as usize] = i as u8;
        }
        if order.len() != n * (n - 1) / 2 {
            return Err(Error::InvalidOrdering);
        }
        Ok(ReflectionOrdering { n, order, rank })
    }

    /// `(1,2) ⪯ (1,3) ⪯ ⋯ ⪯ (1,n) ⪯ (2,3) ⪯ ⋯ ⪯ (n-1,n)`.
    pub fn lex(n: usize) -> Result<Self> {
        Self::from_sequence(n, Transposition::all(n))
    }

    pub fn reverse_lex(n: usize) -> Result<Self> {
        let mut order = Transposition::all(n);
        order.reverse();
        Self::from_sequence(n, order)
    }

    /// The ordering `t_k = s_{i_1} ⋯ s_{i_{k-1}} s_{i_k} s_{i_{k-1}} ⋯ s_{i_1}`
    /// of a reduced word `s_{i_1} ⋯ s_{i_N}` of `w_0`.
    pub fn from_reduced_word(n: usize, word: &[usize]) -> Result<Self> {
        if !(1..=MAX_N).contains(&n) {
            return Err(Error::DegreeOutOfRange(n));
        }
        if word.len() != n * (n - 1) / 2 || word.iter().any(|&i| i == 0 || i >= n) {
            return Err(Error::NotReducedWordOfLongest);
        }
        let mut sigma = Permutation::identity(n);
        let mut order = Vec::with_capacity(word.len());
        for &i in word {
            order.push(Transposition::new(sigma.value_at(i), sigma.value_at(i + 1))?);
            sigma = sigma.right_mul(Transposition::simple(i)?);
        }
        if sigma != Permutation::longest(n) {
            return Err(Error::NotReducedWordOfLongest);
        }
        Self::from_sequence(n, order)
    }

    /// Parses whitespace-separated simple-reflection indices, e.g. `"1 2 1"`.
    pub fn parse_reduced_word(n: usize, text: &str) -> Result<Self> {
        let word = text
            .split_whitespace()
            .map(|tok| tok.parse::<usize>().map_err(|_| Error::Parse(String::from(tok))))
            .collect::<Result<Vec<_>>>()?;
        Self::from_reduced_word(n, &word)
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn rank(&self, t: Transposition) -> u8 {
        self.rank[t.to_byte() as usize]
    }

    pub fn compare(&self, s: Transposition, t: Transposition) -> Ordering {
        self.rank(s).cmp(&self.rank(t))
    }

    /// The transpositions, smallest first.
    pub fn sequence(&self) -> &[Transposition] {
        &self.order
    }

    /// For all `a < b < c`: `(a,b) ⪯ (a,c) ⪯ (b,c)` or the reverse.
    pub fn validate(&self) -> bool {
        let n = self.n as u8;
        for a in 1..=n {
            for b in a + 1..=n {
                for c in b + 1..=n {
                    let r = |x, y| self.rank(Transposition::new_unchecked(x, y));
                    let (ab, ac, bc) = (r(a, b), r(a, c), r(b, c));
                    if !((ab < ac && ac < bc) || (ab > ac && ac > bc)) {
                        return false;
                    }
                }
            }
        }
        true
    }

    pub fn is_increasing_packed(&self, packed: PackedPath, h: usize) -> bool {
        let mut prev = 0;
        for t in packed_labels(packed, h) {
            let r = self.rank(t);
            if r < prev {
                return false;
            }
            prev = r;
        }
        true
    }

    /// `c(F)`: the number of paths of `F` with labels increasing under `self`.
    pub fn count_increasing(&self, class: &Flipclass) -> Result<usize> {
        self.check(class)?;
        Ok(class.packed().iter().filter(|&&p| self.is_increasing_packed(p, class.h())).count())
    }

    /// The path of `F` whose label sequence is lexicographically least.
    pub fn lex_first_path(&self, class: &Flipclass) -> Result<BruhatPath> {
        self.check(class)?;
        let key = |&p: &PackedPath| -> Vec<u8> { packed_labels(p, class.h()).map(|t| self.rank(t)).collect() };
        let best = class.packed().iter().copied().min_by_key(key).ok_or(Error::MalformedChain)?;
        Ok(BruhatPath::unpack(class.u(), best, class.h()))
    }

    /// The path of `F` whose reversed label sequence is lexicographically
    /// greatest.
    pub fn colex_last_path(&self, class: &Flipclass) -> Result<BruhatPath> {
        self.check(class)?;
        let key = |&p: &PackedPath| -> Vec<u8> {
            let mut v: Vec<u8> = packed_labels(p, class.h()).map(|t| self.rank(t)).collect();
            v.reverse();
            v
        };
        let best = class.packed().iter().copied().max_by_key(key).ok_or(Error::MalformedChain)?;
        Ok(BruhatPath::unpack(class.u(), best, class.h()))
    }

    fn check(&self, class: &Flipclass) -> Result<()> {
        if class.degree() != self.n {
            return Err(Error::DegreeMismatch { left: class.degree(), right: self.n });
        }
        Ok(())
    }
}

/// A reduced word of `w_0` built by repeatedly stripping a uniformly random
/// left descent.
pub fn random_reduced_word<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Vec<usize> {
    let mut w = Permutation::longest(n);
    let mut word = Vec::with_capacity(n * (n - 1) / 2);
    let mut descents = Vec::with_capacity(n);
    while w.length() > 0 {
        descents.clear();
        descents.extend((1..n).filter(|&i| w.has_left_descent(i)));
        let i = descents[rng.gen_range(0..descents.len())];
        word.push(i);
        w = w.left_mul(Transposition::new_unchecked(i as u8, i as u8 + 1));
    }
    word
}

pub fn random_ordering<R: Rng + ?Sized>(n: usize, rng: &mut R) -> ReflectionOrdering {
    ReflectionOrdering::from_reduced_word(n, &random_reduced_word(n, rng)).expect("greedy descent yields a reduced word")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::flips::{flipclass_of, flipclasses};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn t(a: u8, b: u8) -> Transposition {
        Transposition::new(a, b).unwrap()
    }

    #[test]
    fn lex_and_reverse() {
        assert_eq!(ReflectionOrdering::lex(3).unwrap().sequence(), &[t(1, 2), t(1, 3), t(2, 3)]);
        assert_eq!(ReflectionOrdering::reverse_lex(3).unwrap().sequence(), &[t(2, 3), t(1, 3), t(1, 2)]);
        for n in 2..=7 {
            assert!(ReflectionOrdering::lex(n).unwrap().validate());
            assert!(ReflectionOrdering::reverse_lex(n).unwrap().validate());
        }
    }

    #[test]
    fn word_121() {
        let ord = ReflectionOrdering::parse_reduced_word(3, "1 2 1").unwrap();
        assert_eq!(ord.sequence(), &[t(1, 2), t(1, 3), t(2, 3)]);
        let ord = ReflectionOrdering::from_reduced_word(3, &[2, 1, 2]).unwrap();
        assert_eq!(ord.sequence(), &[t(2, 3), t(1, 3), t(1, 2)]);
    }

    #[test]
    fn rejects_bad_words() {
        assert_eq!(ReflectionOrdering::from_reduced_word(3, &[1, 1, 2]), Err(Error::NotReducedWordOfLongest));
        assert_eq!(ReflectionOrdering::from_reduced_word(3, &[1, 2]), Err(Error::NotReducedWordOfLongest));
        assert_eq!(ReflectionOrdering::from_reduced_word(3, &[1, 3, 1]), Err(Error::NotReducedWordOfLongest));
        let bad = ReflectionOrdering::from_sequence(3, alloc::vec![t(1, 3), t(1, 2), t(2, 3)]).unwrap();
        assert!(!bad.validate());
    }

    #[test]
    fn random_words_give_valid_orderings() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in 2..=8 {
            for _ in 0..20 {
                assert!(random_ordering(n, &mut rng).validate());
            }
        }
    }

    #[test]
    fn moves_on_words() {
        let n = 5;
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..50 {
            let word = random_reduced_word(n, &mut rng);
            let base = ReflectionOrdering::from_reduced_word(n, &word).unwrap();
            for j in 0..word.len() - 1 {
                let (a, b) = (word[j], word[j + 1]);
                if a.abs_diff(b) > 1 {
                    let mut w = word.clone();
                    w.swap(j, j + 1);
                    let mut expect = base.sequence().to_vec();
                    expect.swap(j, j + 1);
                    assert_eq!(ReflectionOrdering::from_reduced_word(n, &w).unwrap().sequence(), &expect[..]);
                }
                if j + 2 < word.len() && a.abs_diff(b) == 1 && word[j + 2] == a {
                    let mut w = word.clone();
                    w[j] = b;
                    w[j + 1] = a;
                    w[j + 2] = b;
                    let mut expect = base.sequence().to_vec();
                    expect[j..j + 3].reverse();
                    assert_eq!(ReflectionOrdering::from_reduced_word(n, &w).unwrap().sequence(), &expect[..]);
                }
            }
        }
    }

    #[test]
    fn increasing_counts_in_s4() {
        let w0 = Permutation::longest(4);
        let e = Permutation::identity(4);
        let classes = flipclasses(e, w0, 6).unwrap();
        assert_eq!(classes.len(), 1);
        let lex = ReflectionOrdering::lex(4).unwrap();
        assert_eq!(lex.count_increasing(&classes[0]).unwrap(), 1);
    }

    #[test]
    fn bounds_and_ordering_independence_s4() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let mut ords = alloc::vec![ReflectionOrdering::lex(4).unwrap(), ReflectionOrdering::reverse_lex(4).unwrap()];
        ords.extend((0..10).map(|_| random_ordering(4, &mut rng)));
        for u in Permutation::all(4) {
            for v in Permutation::all(4) {
                for h in 1..=6 {
                    for class in flipclasses(u, v, h).unwrap() {
                        let c = ords[0].count_increasing(&class).unwrap();
                        assert!(c >= 1 && c << (h - 1) <= class.len());
                        for ord in &ords {
                            assert_eq!(ord.count_increasing(&class).unwrap(), c);
                            assert!(ord.lex_first_path(&class).unwrap().is_increasing(ord));
                            assert!(ord.colex_last_path(&class).unwrap().is_increasing(ord));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn singleton_lex_first() {
        let e = Permutation::identity(3);
        let path = BruhatPath::from_labels(e, &[t(1, 2)]).unwrap();
        let class = flipclass_of(&path);
        assert_eq!(ReflectionOrdering::lex(3).unwrap().lex_first_path(&class).unwrap(), path);
        assert!(ReflectionOrdering::lex(4).unwrap().count_increasing(&class).is_err());
    }
}
