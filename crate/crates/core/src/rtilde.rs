//! R̃-polynomials: the descent recurrence, Dyer's increasing-path count, and
//! the coefficient recipe through flipclass invariants for `h ≤ 6`.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::fmt::Write as _;

use hashbrown::HashMap;

use crate::classify::CoefficientTable;
use crate::error::{Error, Result};
use crate::flips::{flipclasses, Flipclass};
use crate::invariants::{DegreePolynomial, IotaPolynomial, TVector};
use crate::perm::{Permutation, Transposition};
use crate::reforder::ReflectionOrdering;

/// Coefficients `c_0, …, c_d` of a polynomial in `q`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct RTildePolynomial(Vec<u64>);

impl RTildePolynomial {
    pub fn one() -> Self {
        RTildePolynomial(alloc::vec![1])
    }

    pub fn from_coefficients(mut coefficients: Vec<u64>) -> Self {
        while coefficients.last() == Some(&0) {
            coefficients.pop();
        }
        RTildePolynomial(coefficients)
    }

    pub fn coefficients(&self) -> &[u64] {
        &self.0
    }

    /// `[q^h]`.
    pub fn coefficient(&self, h: usize) -> u64 {
        self.0.get(h).copied().unwrap_or(0)
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_monic(&self) -> bool {
        self.0.last() == Some(&1)
    }

    /// Only powers `q^s` with `s ≡ d (mod 2)` occur, `d` the degree.
    pub fn has_degree_parity(&self) -> bool {
        match self.degree() {
            None => true,
            Some(d) => self.0.iter().enumerate().all(|(s, &c)| c == 0 || s % 2 == d % 2),
        }
    }

    /// `self + q·other`.
    fn plus_q_times(&self, other: &Self) -> Self {
        let len = self.0.len().max(other.0.len() + 1);
        let mut out = alloc::vec![0; len];
        for (i, &c) in self.0.iter().enumerate() {
            out[i] += c;
        }
        for (i, &c) in other.0.iter().enumerate() {
            out[i + 1] += c;
        }
        Self::from_coefficients(out)
    }
}

impl fmt::Display for RTildePolynomial {
    /// Highest power first, e.g. `q^3+2q`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("0");
        }
        let mut out = String::new();
        for (s, &c) in self.0.iter().enumerate().rev().filter(|(_, &c)| c > 0) {
            if !out.is_empty() {
                out.push('+');
            }
            let _ = match (c, s) {
                (c, 0) => write!(out, "{c}"),
                (1, 1) => write!(out, "q"),
                (c, 1) => write!(out, "{c}q"),
                (1, s) => write!(out, "q^{s}"),
                (c, s) => write!(out, "{c}q^{s}"),
            };
        }
        f.write_str(&out)
    }
}

/// The left-descent recurrence
/// `R̃_{u,v} = R̃_{su,sv}` if `su < u`, else `R̃_{su,sv} + q·R̃_{u,sv}`,
/// for `s` a left descent of `v`, memoized on `(u, v)`.
///
/// The memo is owned, so each worker holds its own oracle.
#[derive(Clone, Debug, Default)]
pub struct RTildeOracle {
    memo: HashMap<(Permutation, Permutation), RTildePolynomial>,
}

impl RTildeOracle {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn memo_len(&self) -> usize {
        self.memo.len()
    }

    pub fn rtilde(&mut self, u: Permutation, v: Permutation) -> Result<RTildePolynomial> {
        u.check_same_degree(&v)?;
        if !u.bruhat_leq_unchecked(&v) {
            return Err(Error::NotComparable { u: u.to_string(), v: v.to_string() });
        }
        Ok(self.compute(u, v))
    }

    pub fn coefficient(&mut self, u: Permutation, v: Permutation, h: usize) -> Result<u64> {
        self.rtilde(u, v).map(|r| r.coefficient(h))
    }

    fn compute(&mut self, u: Permutation, v: Permutation) -> RTildePolynomial {
        if u == v {
            return RTildePolynomial::one();
        }
        if u.length() >= v.length() || !u.bruhat_leq_unchecked(&v) {
            return RTildePolynomial::default();
        }
        if let Some(r) = self.memo.get(&(u, v)) {
            return r.clone();
        }
        let i = (1..v.degree()).find(|&i| v.has_left_descent(i)).expect("v is not the identity");
        let s = Transposition::new_unchecked(i as u8, i as u8 + 1);
        let (su, sv) = (u.left_mul(s), v.left_mul(s));
        let r = if u.has_left_descent(i) {
            self.compute(su, sv)
        } else {
            let a = self.compute(su, sv);
            let b = self.compute(u, sv);
            a.plus_q_times(&b)
        };
        self.memo.insert((u, v), r.clone());
        r
    }
}

pub fn rtilde_oracle(u: Permutation, v: Permutation) -> Result<RTildePolynomial> {
    RTildeOracle::new().rtilde(u, v)
}

/// `[q^h]R̃_{u,v}` as the number of length-`h` paths from `u` to `v` whose
/// labels increase under `ord`.
pub fn rtilde_dyer(u: Permutation, v: Permutation, ord: &ReflectionOrdering) -> Result<RTildePolynomial> {
    u.check_same_degree(&v)?;
    if ord.degree() != u.degree() {
        return Err(Error::DegreeMismatch { left: u.degree(), right: ord.degree() });
    }
    if !ord.validate() {
        return Err(Error::InvalidOrdering);
    }
    if !u.bruhat_leq_unchecked(&v) {
        return Err(Error::NotComparable { u: u.to_string(), v: v.to_string() });
    }
    let mut counts = alloc::vec![0u64; v.length() - u.length() + 1];
    let target_len = v.length() as isize;
    let mut stack: Vec<(Permutation, u8, usize)> = alloc::vec![(u, 0, 0)];
    while let Some((x, min_rank, h)) = stack.pop() {
        if x == v {
            counts[h] += 1;
            continue;
        }
        let room = target_len - x.length() as isize;
        for e in x.edges_up() {
            let r = ord.rank(e.label);
            if r >= min_rank && x.length_change(e.label) <= room && e.target.bruhat_leq_unchecked(&v) {
                stack.push((e.target, r, h + 1));
            }
        }
    }
    Ok(RTildePolynomial::from_coefficients(counts))
}

/// `c̄` for 3-flipclasses.
pub fn cbar_h3(t: &TVector) -> Result<u64> {
    check_len(t, 3)?;
    Ok(if t.0[1] == 5 { 2 } else { 1 })
}

/// `c̄` for 4-flipclasses.
pub fn cbar_h4(t: &TVector) -> Result<u64> {
    check_len(t, 4)?;
    let e = &t.0[..];
    Ok(if e == [1, 5, 10, 5, 1] || e == [1, 8, 14, 8, 1] {
        3
    } else if e[1] + e[3] >= 12 {
        2
    } else {
        1
    })
}

fn check_len(t: &TVector, h: usize) -> Result<()> {
    if t.0.len() != h + 1 {
        return Err(Error::TVectorLength { got: t.0.len(), expected: h + 1 });
    }
    Ok(())
}

/// Which degree polynomial decides an exceptional t-vector.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BranchKey {
    Succ,
    Prec,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Exception {
    pub key: BranchKey,
    pub branches: Vec<(DegreePolynomial, u64)>,
}

/// The `c̄` table for 5-flipclasses: seven t-vector classes `C_1, …, C_7`
/// and the exceptional set `D` refined by `succ` or `prec`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CbarTable5 {
    classes: BTreeMap<TVector, u64>,
    exceptions: BTreeMap<TVector, Exception>,
}

const CBAR5_DATA: &str = include_str!("cbar5.txt");

/// Number of t-vectors of 5-flipclasses.
pub const TVEC5_LEN: usize = 104;

impl CbarTable5 {
    pub fn standard() -> Self {
        Self::parse(CBAR5_DATA).expect("embedded table passes its self-check")
    }

    /// Parses the line format of the embedded table and runs the self-check:
    /// the eight sets are disjoint, have 104 elements in total, and every
    /// value lies in `1..=7`.
    pub fn parse(text: &str) -> Result<Self> {
        let mut classes = BTreeMap::new();
        let mut exceptions: BTreeMap<TVector, Exception> = BTreeMap::new();
        let mut class_sizes = [0usize; 8];
        let bad = |line: &str| Error::Parse(String::from(line));
        for line in text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')) {
            let fields: Vec<&str> = line.split_whitespace().collect();
            match fields.as_slice() {
                ["C", value, tvec] => {
                    let value: u64 = value.parse().map_err(|_| bad(line))?;
                    let tvec: TVector = tvec.parse()?;
                    check_len(&tvec, 5)?;
                    if !(1..=7).contains(&value) {
                        return Err(Error::TableSelfCheck(alloc::format!("class index {value}")));
                    }
                    if classes.insert(tvec.clone(), value).is_some() {
                        return Err(Error::TableSelfCheck(alloc::format!("{tvec} listed twice")));
                    }
                    class_sizes[value as usize] += 1;
                }
                ["D", tvec, key, value, poly] => {
                    let tvec: TVector = tvec.parse()?;
                    check_len(&tvec, 5)?;
                    let (key, var) = match *key {
                        "succ" => (BranchKey::Succ, 'y'),
                        "prec" => (BranchKey::Prec, 'x'),
                        _ => return Err(bad(line)),
                    };
                    let value: u64 = value.parse().map_err(|_| bad(line))?;
                    let poly = DegreePolynomial::parse(poly, var)?;
                    let entry = exceptions.entry(tvec.clone()).or_insert(Exception { key, branches: Vec::new() });
                    if entry.key != key || entry.branches.iter().any(|(p, _)| *p == poly) {
                        return Err(Error::TableSelfCheck(alloc::format!("inconsistent branches for {tvec}")));
                    }
                    entry.branches.push((poly, value));
                }
                _ => return Err(bad(line)),
            }
        }
        if let Some(t) = exceptions.keys().find(|t| classes.contains_key(*t)) {
            return Err(Error::TableSelfCheck(alloc::format!("{t} is in both a class and the exceptional set")));
        }
        let total = classes.len() + exceptions.len();
        if total != TVEC5_LEN {
            return Err(Error::TableSelfCheck(alloc::format!("{total} t-vectors, expected {TVEC5_LEN}")));
        }
        if class_sizes[1..].contains(&0) {
            return Err(Error::TableSelfCheck(String::from("an empty class")));
        }
        Ok(CbarTable5 { classes, exceptions })
    }

    pub fn len(&self) -> usize {
        self.classes.len() + self.exceptions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// All t-vectors in the table.
    pub fn t_vectors(&self) -> impl Iterator<Item = &TVector> {
        self.classes.keys().chain(self.exceptions.keys())
    }

    /// Index `i` with `t ∈ C_i`, or `None`.
    pub fn class_of(&self, t: &TVector) -> Option<u64> {
        self.classes.get(t).copied()
    }

    pub fn exception(&self, t: &TVector) -> Option<&Exception> {
        self.exceptions.get(t)
    }

    pub fn exceptions(&self) -> impl Iterator<Item = (&TVector, &Exception)> {
        self.exceptions.iter()
    }

    pub fn cbar(&self, t: &TVector, succ: &DegreePolynomial, prec: &DegreePolynomial) -> Result<u64> {
        check_len(t, 5)?;
        if let Some(c) = self.class_of(t) {
            return Ok(c);
        }
        let ex = self.exceptions.get(t).ok_or_else(|| Error::UnknownTVector(t.to_string()))?;
        let (poly, var) = match ex.key {
            BranchKey::Succ => (succ, 'y'),
            BranchKey::Prec => (prec, 'x'),
        };
        ex.branches
            .iter()
            .find(|(p, _)| p == poly)
            .map(|&(_, c)| c)
            .ok_or_else(|| Error::UnknownBranch { tvec: t.to_string(), poly: poly.display(var) })
    }
}

/// `c̄` for 5-flipclasses using the embedded table.
pub fn cbar_h5(t: &TVector, succ: &DegreePolynomial, prec: &DegreePolynomial) -> Result<u64> {
    CbarTable5::standard().cbar(t, succ, prec)
}

/// Computes `c̄(F)` from invariants of a flipclass, without counting
/// increasing paths.
pub struct CbarRecipe<'a> {
    table5: CbarTable5,
    table6: Option<&'a CoefficientTable>,
}

impl<'a> CbarRecipe<'a> {
    pub fn new(table6: Option<&'a CoefficientTable>) -> Self {
        CbarRecipe { table5: CbarTable5::standard(), table6 }
    }

    pub fn cbar(&self, class: &Flipclass) -> Result<u64> {
        self.cbar_of_iota(class.h(), &IotaPolynomial::of(class))
    }

    pub fn cbar_of_iota(&self, h: usize, iota: &IotaPolynomial) -> Result<u64> {
        match h {
            0..=2 => Ok(1),
            3 => cbar_h3(&iota.t_vector()),
            4 => cbar_h4(&iota.t_vector()),
            5 => self.table5.cbar(&iota.t_vector(), &iota.succ(), &iota.prec()),
            6 => self.table6.ok_or(Error::MissingTable(6))?.lookup(iota),
            h => Err(Error::RecipeOutOfRange(h)),
        }
    }

    /// `[q^h]R̃_{u,v}` as `Σ_F c̄(F)` over the `h`-flipclasses of `(u, v)`.
    pub fn coefficient(&self, u: Permutation, v: Permutation, h: usize) -> Result<u64> {
        u.check_same_degree(&v)?;
        if h > 6 {
            return Err(Error::RecipeOutOfRange(h));
        }
        if h == 6 && self.table6.is_none() {
            return Err(Error::MissingTable(6));
        }
        if !u.bruhat_leq_unchecked(&v) {
            return Err(Error::NotComparable { u: u.to_string(), v: v.to_string() });
        }
        let mut total = 0;
        for class in flipclasses(u, v, h)? {
            total += self.cbar(&class)?;
        }
        Ok(total)
    }
}

/// `[q^h]R̃_{u,v}` through flipclass invariants; `table6` is required for `h = 6`.
pub fn coeff_via_flipclasses(u: Permutation, v: Permutation, h: usize, table6: Option<&CoefficientTable>) -> Result<u64> {
    CbarRecipe::new(table6).coefficient(u, v, h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reforder::random_ordering;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    fn tv(s: &str) -> TVector {
        s.parse().unwrap()
    }

    #[test]
    fn small_polynomials() {
        let e = Permutation::identity(3);
        assert_eq!(rtilde_oracle(e, e).unwrap().to_string(), "1");
        assert_eq!(rtilde_oracle(e, p("213")).unwrap().to_string(), "q");
        // [e, 321] in S_3: q^3 + q.
        assert_eq!(rtilde_oracle(e, p("321")).unwrap().coefficients(), &[0, 1, 0, 1]);
        assert!(matches!(rtilde_oracle(p("213"), p("132")), Err(Error::NotComparable { .. })));
        assert_eq!(rtilde_oracle(p("1234"), p("4321")).unwrap().degree(), Some(6));
    }

    #[test]
    fn oracle_low_coefficients_s4() {
        let mut oracle = RTildeOracle::new();
        for u in Permutation::all(4) {
            for v in Permutation::all(4) {
                if !u.bruhat_leq(&v).unwrap() {
                    continue;
                }
                let r = oracle.rtilde(u, v).unwrap();
                assert!(r.is_monic() && r.has_degree_parity());
                assert_eq!(r.degree(), Some(v.length() - u.length()));
                assert_eq!(r.coefficient(0), (u == v) as u64);
                assert_eq!(r.coefficient(1), u.edge_to(&v).unwrap().is_some() as u64);
                let two = crate::paths::enumerate_packed(u, v, 2).unwrap();
                assert_eq!(r.coefficient(2), !two.is_empty() as u64);
            }
        }
    }

    #[test]
    fn dyer_matches_oracle_s4() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let ords = [ReflectionOrdering::lex(4).unwrap(), random_ordering(4, &mut rng)];
        let mut oracle = RTildeOracle::new();
        for u in Permutation::all(4) {
            for v in Permutation::all(4) {
                if u.bruhat_leq(&v).unwrap() {
                    for ord in &ords {
                        assert_eq!(rtilde_dyer(u, v, ord).unwrap(), oracle.rtilde(u, v).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn cbar_small() {
        assert_eq!(cbar_h3(&tv("(1,5,5,1)")).unwrap(), 2);
        assert_eq!(cbar_h3(&tv("(1,2,2,1)")).unwrap(), 1);
        assert!(cbar_h3(&tv("(1,2,1)")).is_err());
        assert_eq!(cbar_h4(&tv("(1,5,10,5,1)")).unwrap(), 3);
        assert_eq!(cbar_h4(&tv("(1,8,14,8,1)")).unwrap(), 3);
        assert_eq!(cbar_h4(&tv("(1,6,10,6,1)")).unwrap(), 2);
        assert_eq!(cbar_h4(&tv("(1,3,4,3,1)")).unwrap(), 1);
    }

    #[test]
    fn cbar5_table() {
        let table = CbarTable5::standard();
        assert_eq!(table.len(), 104);
        assert_eq!(table.exceptions().count(), 7);
        let none = DegreePolynomial::default();
        let y = |s| DegreePolynomial::parse(s, 'y').unwrap();
        let x = |s| DegreePolynomial::parse(s, 'x').unwrap();
        assert_eq!(table.cbar(&tv("(1,13,40,40,13,1)"), &none, &none).unwrap(), 7);
        assert_eq!(table.cbar(&tv("(1,7,17,18,8,1)"), &y("y^4+6y^5"), &none).unwrap(), 1);
        assert_eq!(table.cbar(&tv("(1,7,17,18,8,1)"), &y("4y^4+3y^6"), &none).unwrap(), 2);
        assert_eq!(table.cbar(&tv("(1,11,31,31,11,1)"), &y("3y^4+7y^6+y^8"), &none).unwrap(), 5);
        assert_eq!(table.cbar(&tv("(1,12,33,32,11,1)"), &none, &x("2x^4+8x^6+x^8")).unwrap(), 5);
        assert!(matches!(table.cbar(&tv("(1,7,17,18,8,1)"), &y("7y^4"), &none), Err(Error::UnknownBranch { .. })));
        assert!(matches!(table.cbar(&tv("(1,2,2,2,2,1)"), &none, &none), Err(Error::UnknownTVector(_))));
    }

    #[test]
    fn corrupted_cbar5_table_fails_self_check() {
        let dup = alloc::format!("{CBAR5_DATA}C 2 (1,3,5,5,3,1)\n");
        assert!(CbarTable5::parse(&dup).is_err());
        let short: String = CBAR5_DATA.lines().filter(|l| !l.contains("(1,13,40,40,13,1)")).map(|l| l.to_string() + "\n").collect();
        assert!(matches!(CbarTable5::parse(&short), Err(Error::TableSelfCheck(_))));
        let clash = alloc::format!("{CBAR5_DATA}C 1 (1,7,17,18,8,1)\n");
        assert!(matches!(CbarTable5::parse(&clash), Err(Error::TableSelfCheck(_))));
    }

    #[test]
    fn recipe_matches_oracle_s4() {
        let recipe = CbarRecipe::new(None);
        let mut oracle = RTildeOracle::new();
        for u in Permutation::all(4) {
            for v in Permutation::all(4) {
                if !u.bruhat_leq(&v).unwrap() {
                    continue;
                }
                let r = oracle.rtilde(u, v).unwrap();
                for h in 0..=5 {
                    assert_eq!(recipe.coefficient(u, v, h).unwrap(), r.coefficient(h), "{u} {v} {h}");
                }
                assert_eq!(recipe.coefficient(u, v, 6), Err(Error::MissingTable(6)));
                assert_eq!(recipe.coefficient(u, v, 7), Err(Error::RecipeOutOfRange(7)));
            }
        }
    }
}
