//! Support graphs, time-support graphs, t-vectors and ι-polynomials.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::fmt::Write as _;
use core::ops::Mul;
use core::str::FromStr;

use crate::error::{Error, Result};
use crate::flips::Flipclass;
use crate::perm::{Permutation, Transposition};

/// A vertex `(a, i)` of a time-support graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TimedVertex {
    pub time: usize,
    pub perm: Permutation,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TimedEdge {
    pub source: usize,
    pub target: usize,
    pub label: Transposition,
}

/// `TS_F`: vertices are `(permutation, time)` pairs visited by paths of `F`,
/// edges join consecutive vertices of some path. Vertices are sorted by time
/// then permutation; edges by source then target index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TimeSupportGraph {
    h: usize,
    vertices: Vec<TimedVertex>,
    edges: Vec<TimedEdge>,
    in_degree: Vec<usize>,
    out_degree: Vec<usize>,
}

impl TimeSupportGraph {
    pub fn of(class: &Flipclass) -> Self {
        let h = class.h();
        let mut vertices = Vec::new();
        let mut raw_edges = Vec::new();
        for seq in class.vertex_sequences() {
            for (i, &x) in seq.iter().enumerate() {
                vertices.push(TimedVertex { time: i, perm: x });
            }
            for i in 0..h {
                raw_edges.push((i, seq[i], seq[i + 1]));
            }
        }
        vertices.sort_unstable();
        vertices.dedup();
        raw_edges.sort_unstable();
        raw_edges.dedup();
        let index = |time: usize, perm: Permutation| {
            vertices.binary_search(&TimedVertex { time, perm }).expect("vertex recorded")
        };
        let mut edges: Vec<TimedEdge> = raw_edges
            .iter()
            .map(|&(i, x, y)| TimedEdge {
                source: index(i, x),
                target: index(i + 1, y),
                label: x.edge_to(&y).ok().flatten().expect("path step is an edge").label,
            })
            .collect();
        edges.sort_unstable();
        let mut in_degree = alloc::vec![0; vertices.len()];
        let mut out_degree = alloc::vec![0; vertices.len()];
        for e in &edges {
            out_degree[e.source] += 1;
            in_degree[e.target] += 1;
        }
        TimeSupportGraph { h, vertices, edges, in_degree, out_degree }
    }

    pub fn h(&self) -> usize {
        self.h
    }

    pub fn vertices(&self) -> &[TimedVertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[TimedEdge] {
        &self.edges
    }

    pub fn in_degree(&self, index: usize) -> usize {
        self.in_degree[index]
    }

    pub fn out_degree(&self, index: usize) -> usize {
        self.out_degree[index]
    }

    pub fn index_of(&self, time: usize, perm: Permutation) -> Option<usize> {
        self.vertices.binary_search(&TimedVertex { time, perm }).ok()
    }

    /// Indices of the vertices at a given time.
    pub fn rank(&self, time: usize) -> core::ops::Range<usize> {
        let lo = self.vertices.partition_point(|v| v.time < time);
        let hi = self.vertices.partition_point(|v| v.time <= time);
        lo..hi
    }

    pub fn successors(&self, index: usize) -> impl Iterator<Item = usize> + '_ {
        let lo = self.edges.partition_point(|e| e.source < index);
        self.edges[lo..].iter().take_while(move |e| e.source == index).map(|e| e.target)
    }

    pub fn t_vector(&self) -> TVector {
        TVector((0..=self.h).map(|i| self.rank(i).len() as u64).collect())
    }

    /// Number of paths from the bottom to the top vertex.
    pub fn count_maximal_paths(&self) -> u64 {
        let mut ways = alloc::vec![0u64; self.vertices.len()];
        for i in self.rank(0) {
            ways[i] = 1;
        }
        // Edges are sorted by source index, and sources are sorted by time.
        for e in &self.edges {
            ways[e.target] += ways[e.source];
        }
        self.rank(self.h).map(|i| ways[i]).sum()
    }

    /// Number of length-two paths between `a` at time `i` and `b` at `i+2`.
    pub fn two_step_paths(&self, a: usize, b: usize) -> usize {
        self.successors(a).filter(|&m| self.successors(m).any(|x| x == b)).count()
    }

    /// Whether the forgetful map `(x, i) ↦ x` is injective, i.e. `S_F ≅ TS_F`.
    pub fn projects_injectively(&self) -> bool {
        let mut perms: Vec<Permutation> = self.vertices.iter().map(|v| v.perm).collect();
        perms.sort_unstable();
        perms.windows(2).all(|w| w[0] != w[1])
    }

    pub fn iota(&self) -> IotaPolynomial {
        let mut poly = IotaPolynomial::zero();
        for (i, v) in self.vertices.iter().enumerate() {
            poly.add_term(
                Monomial { t: v.time as u32, x: self.in_degree[i] as u32, y: self.out_degree[i] as u32 },
                1,
            );
        }
        poly
    }

    /// The support graph, obtained by forgetting times.
    pub fn project(&self) -> SupportGraph {
        let mut vertices: Vec<Permutation> = self.vertices.iter().map(|v| v.perm).collect();
        vertices.sort_unstable();
        vertices.dedup();
        let mut edges: Vec<(Permutation, Permutation, Transposition)> = self
            .edges
            .iter()
            .map(|e| (self.vertices[e.source].perm, self.vertices[e.target].perm, e.label))
            .collect();
        edges.sort_unstable();
        edges.dedup();
        SupportGraph { vertices, edges }
    }

    /// For `h = 3`: the `k` such that the graph is a `k`-crown.
    pub fn crown_size(&self) -> Option<usize> {
        if self.h != 3 {
            return None;
        }
        let tv = self.t_vector();
        let k = tv.0[1] as usize;
        if tv.0 != [1, k as u64, k as u64, 1] || k < 2 {
            return None;
        }
        let middle = self.rank(1);
        let upper = self.rank(2);
        let bipartite = |i: usize| self.successors(i).filter(|j| upper.contains(j));
        if middle.clone().any(|i| self.in_degree[i] != 1 || bipartite(i).count() != 2)
            || upper.clone().any(|j| self.in_degree[j] != 2 || self.out_degree[j] != 1)
        {
            return None;
        }
        // The middle bipartite graph is 2-regular; it must be a single cycle.
        let mut seen = alloc::vec![false; self.vertices.len()];
        let mut stack = alloc::vec![middle.start];
        let mut reached = 0;
        while let Some(x) = stack.pop() {
            if seen[x] {
                continue;
            }
            seen[x] = true;
            reached += 1;
            if middle.contains(&x) {
                stack.extend(bipartite(x));
            } else {
                stack.extend(self.edges.iter().filter(|e| e.target == x).map(|e| e.source));
            }
        }
        (reached == 2 * k).then_some(k)
    }

    pub fn to_dot(&self, name: &str) -> String {
        let mut out = format!("digraph {name} {{\n  rankdir=BT;\n");
        for (i, v) in self.vertices.iter().enumerate() {
            let _ = writeln!(out, "  n{i} [label=\"{},{}\"];", v.perm, v.time);
        }
        for e in &self.edges {
            let _ = writeln!(out, "  n{} -> n{} [label=\"{}\"];", e.source, e.target, e.label);
        }
        out.push_str("}\n");
        out
    }
}

/// A path of `TS_F` given by its start time and consecutive permutations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TimedPath {
    pub start_time: usize,
    pub perms: Vec<Permutation>,
}

/// Whether `path` is a subpath of some path of `class` at the same times.
pub fn is_effective(class: &Flipclass, path: &TimedPath) -> bool {
    if path.start_time + path.perms.len() > class.h() + 1 {
        return false;
    }
    class.vertex_sequences().any(|seq| {
        seq[path.start_time..path.start_time + path.perms.len()] == path.perms[..]
    })
}

/// Whether every maximal path of `TS_F` comes from a path of `F`.
pub fn all_paths_effective(class: &Flipclass) -> bool {
    TimeSupportGraph::of(class).count_maximal_paths() == class.len() as u64
}

/// Invariant-equivalence: equal ι-polynomials. This is what the
/// classification compares; it is weaker than isomorphism of flipclasses.
pub fn invariant_equivalent(f: &Flipclass, g: &Flipclass) -> bool {
    f.h() == g.h() && IotaPolynomial::of(f) == IotaPolynomial::of(g)
}

/// `S_F`: the vertices and edges traversed by paths of `F`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SupportGraph {
    vertices: Vec<Permutation>,
    edges: Vec<(Permutation, Permutation, Transposition)>,
}

impl SupportGraph {
    pub fn of(class: &Flipclass) -> Self {
        TimeSupportGraph::of(class).project()
    }

    pub fn vertices(&self) -> &[Permutation] {
        &self.vertices
    }

    pub fn edges(&self) -> &[(Permutation, Permutation, Transposition)] {
        &self.edges
    }

    pub fn to_dot(&self, name: &str) -> String {
        let mut out = format!("digraph {name} {{\n  rankdir=BT;\n");
        for v in &self.vertices {
            let _ = writeln!(out, "  \"{v}\";");
        }
        for (a, b, t) in &self.edges {
            let _ = writeln!(out, "  \"{a}\" -> \"{b}\" [label=\"{t}\"];");
        }
        out.push_str("}\n");
        out
    }
}

/// Vertex counts of `TS_F` by time.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TVector(pub Vec<u64>);

impl TVector {
    pub fn entries(&self) -> &[u64] {
        &self.0
    }

    pub fn alternating_sum(&self) -> i64 {
        self.0.iter().enumerate().map(|(i, &t)| if i % 2 == 0 { t as i64 } else { -(t as i64) }).sum()
    }
}

impl fmt::Display for TVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, t) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{t}")?;
        }
        write!(f, ")")
    }
}

impl FromStr for TVector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let err = || Error::Parse(String::from(s));
        let inner = s.trim().strip_prefix('(').and_then(|r| r.strip_suffix(')')).ok_or_else(err)?;
        inner
            .split(',')
            .map(|tok| tok.trim().parse::<u64>().map_err(|_| err()))
            .collect::<Result<Vec<_>>>()
            .map(TVector)
    }
}

/// Exponents of `x^x y^y t^t`; ordered by `(t, x, y)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    pub t: u32,
    pub x: u32,
    pub y: u32,
}

/// `ι_F(x, y, t) = Σ x^{indeg} y^{outdeg} t^{time}` over the vertices of `TS_F`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IotaPolynomial {
    terms: BTreeMap<Monomial, u64>,
}

impl IotaPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn of(class: &Flipclass) -> Self {
        TimeSupportGraph::of(class).iota()
    }

    pub fn add_term(&mut self, m: Monomial, coefficient: u64) {
        if coefficient > 0 {
            *self.terms.entry(m).or_insert(0) += coefficient;
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (Monomial, u64)> + '_ {
        self.terms.iter().map(|(&m, &c)| (m, c))
    }

    pub fn mass(&self) -> u64 {
        self.terms.values().sum()
    }

    pub fn max_time(&self) -> usize {
        self.terms.keys().map(|m| m.t as usize).max().unwrap_or(0)
    }

    /// Coefficients of `ι(1, 1, t)`.
    pub fn t_vector(&self) -> TVector {
        let mut out = alloc::vec![0u64; self.max_time() + 1];
        for (m, c) in self.terms() {
            out[m.t as usize] += c;
        }
        TVector(out)
    }

    /// Out-degree generating polynomial of the vertices at `time`; at time 1
    /// this is `succ_F = ∂ι/∂t (1, y, 0)`.
    pub fn out_degrees_at(&self, time: usize) -> DegreePolynomial {
        let mut poly = DegreePolynomial::default();
        for (m, c) in self.terms().filter(|(m, _)| m.t as usize == time) {
            poly.add(m.y as usize, c);
        }
        poly
    }

    /// In-degree generating polynomial of the vertices at `time`; at time
    /// `h - 1` this is `prec_F`.
    pub fn in_degrees_at(&self, time: usize) -> DegreePolynomial {
        let mut poly = DegreePolynomial::default();
        for (m, c) in self.terms().filter(|(m, _)| m.t as usize == time) {
            poly.add(m.x as usize, c);
        }
        poly
    }

    /// `succ_F`: out-degrees at time 1.
    pub fn succ(&self) -> DegreePolynomial {
        self.out_degrees_at(1)
    }

    /// `prec_F`: in-degrees at time `h - 1`.
    pub fn prec(&self) -> DegreePolynomial {
        self.in_degrees_at(self.max_time().saturating_sub(1))
    }

    /// The polynomial of the reversed graph: swap `x ↔ y`, `t ↦ h - t`.
    pub fn reversed(&self) -> Self {
        let h = self.max_time() as u32;
        let mut out = Self::zero();
        for (m, c) in self.terms() {
            out.add_term(Monomial { t: h - m.t, x: m.y, y: m.x }, c);
        }
        out
    }

    /// Canonical text form `c*x^a*y^b*t^k+…`, terms sorted by `(k, a, b)`.
    pub fn canonical(&self) -> String {
        let mut out = String::new();
        for (i, (m, c)) in self.terms().enumerate() {
            if i > 0 {
                out.push('+');
            }
            let _ = write!(out, "{c}*x^{}*y^{}*t^{}", m.x, m.y, m.t);
        }
        out
    }
}

impl Mul for &IotaPolynomial {
    type Output = IotaPolynomial;

    fn mul(self, rhs: &IotaPolynomial) -> IotaPolynomial {
        let mut out = IotaPolynomial::zero();
        for (a, ca) in self.terms() {
            for (b, cb) in rhs.terms() {
                out.add_term(Monomial { t: a.t + b.t, x: a.x + b.x, y: a.y + b.y }, ca * cb);
            }
        }
        out
    }
}

impl fmt::Display for IotaPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.canonical())
    }
}

impl FromStr for IotaPolynomial {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let err = || Error::Parse(String::from(s));
        let mut poly = IotaPolynomial::zero();
        if s.trim().is_empty() {
            return Ok(poly);
        }
        for term in s.trim().split('+') {
            let mut parts = term.split('*');
            let c = parts.next().ok_or_else(err)?.parse::<u64>().map_err(|_| err())?;
            let mut exp = |var: &str| -> Result<u32> {
                let p = parts.next().ok_or_else(err)?;
                p.strip_prefix(var).and_then(|r| r.strip_prefix('^')).ok_or_else(err)?.parse().map_err(|_| err())
            };
            let (x, y, t) = (exp("x")?, exp("y")?, exp("t")?);
            if parts.next().is_some() {
                return Err(err());
            }
            poly.add_term(Monomial { t, x, y }, c);
        }
        Ok(poly)
    }
}

/// A univariate polynomial with nonnegative coefficients, used for degree
/// sequences such as `succ_F` and `prec_F`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DegreePolynomial(Vec<u64>);

impl DegreePolynomial {
    /// From `(exponent, coefficient)` pairs.
    pub fn from_terms(terms: &[(usize, u64)]) -> Self {
        let mut poly = Self::default();
        for &(e, c) in terms {
            poly.add(e, c);
        }
        poly
    }

    pub fn add(&mut self, exponent: usize, coefficient: u64) {
        if coefficient == 0 {
            return;
        }
        if self.0.len() <= exponent {
            self.0.resize(exponent + 1, 0);
        }
        self.0[exponent] += coefficient;
    }

    pub fn coefficients(&self) -> &[u64] {
        &self.0
    }

    /// Parses the form produced by [`display`](Self::display), e.g.
    /// `"4y^4+3y^6"`, `"y^8"`, `"2"`.
    pub fn parse(text: &str, var: char) -> Result<Self> {
        let err = || Error::Parse(String::from(text));
        let mut poly = Self::default();
        let text = text.trim();
        if text == "0" {
            return Ok(poly);
        }
        for term in text.split('+') {
            let term = term.trim();
            let (coef, exp) = match term.find(var) {
                None => (term, 0),
                Some(at) => {
                    let rest = &term[at + var.len_utf8()..];
                    let exp = match rest.strip_prefix('^') {
                        Some(e) => e.parse::<usize>().map_err(|_| err())?,
                        None if rest.is_empty() => 1,
                        None => return Err(err()),
                    };
                    (&term[..at], exp)
                }
            };
            let c = if coef.is_empty() { 1 } else { coef.parse::<u64>().map_err(|_| err())? };
            if c == 0 {
                return Err(err());
            }
            poly.add(exp, c);
        }
        Ok(poly)
    }

    pub fn display(&self, var: char) -> String {
        let mut out = String::new();
        for (e, &c) in self.0.iter().enumerate().filter(|(_, &c)| c > 0) {
            if !out.is_empty() {
                out.push('+');
            }
            match (c, e) {
                (c, 0) => {
                    let _ = write!(out, "{c}");
                }
                (1, e) => {
                    let _ = write!(out, "{var}^{e}");
                }
                (c, e) => {
                    let _ = write!(out, "{c}{var}^{e}");
                }
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

impl fmt::Display for DegreePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display('z'))
    }
}

#[cfg(test)]
mod tests {
    use alloc::string::ToString;
    use super::*;
    use crate::flips::{flipclass_of, flipclasses};
    use crate::paths::BruhatPath;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    fn t(a: u8, b: u8) -> Transposition {
        Transposition::new(a, b).unwrap()
    }

    fn four_crown() -> Flipclass {
        flipclass_of(&BruhatPath::from_vertices(&[p("2143"), p("4123"), p("4132"), p("4231")]).unwrap())
    }

    #[test]
    fn single_edge() {
        let class = flipclass_of(&BruhatPath::from_labels(Permutation::identity(2), &[t(1, 2)]).unwrap());
        let s = SupportGraph::of(&class);
        assert_eq!((s.vertices().len(), s.edges().len()), (2, 1));
        assert_eq!(IotaPolynomial::of(&class).canonical(), "1*x^0*y^1*t^0+1*x^1*y^0*t^1");
    }

    #[test]
    fn four_crown_graphs() {
        let class = four_crown();
        let ts = TimeSupportGraph::of(&class);
        assert_eq!(ts.crown_size(), Some(4));
        assert!(ts.projects_injectively());
        assert_eq!(ts.t_vector(), TVector(alloc::vec![1, 4, 4, 1]));
        assert!(all_paths_effective(&class));
        assert_eq!(ts.count_maximal_paths(), 8);
    }

    #[test]
    fn two_crown_iota_by_hand() {
        // [e, 4231] in S_4 with h = 3 has two 2-crowns. Bottom: out-degree 2;
        // two rank-1 vertices with in 1, out 2; two rank-2 vertices with in 2,
        // out 1; top: in-degree 2.
        let classes = flipclasses(Permutation::identity(4), p("4231"), 3).unwrap();
        assert_eq!(classes.len(), 2);
        for class in &classes {
            let ts = TimeSupportGraph::of(class);
            assert_eq!(ts.crown_size(), Some(2));
            let iota = ts.iota();
            assert_eq!(iota.canonical(), "1*x^0*y^2*t^0+2*x^1*y^2*t^1+2*x^2*y^1*t^2+1*x^2*y^0*t^3");
            assert_eq!(iota.succ(), DegreePolynomial::from_terms(&[(2, 2)]));
            assert_eq!(iota.prec(), DegreePolynomial::from_terms(&[(2, 2)]));
        }
    }

    #[test]
    fn iota_specializations_agree_with_graph() {
        for u in Permutation::all(4) {
            for v in Permutation::all(4) {
                for h in 1..=5 {
                    for class in flipclasses(u, v, h).unwrap() {
                        let ts = TimeSupportGraph::of(&class);
                        let iota = ts.iota();
                        assert_eq!(iota.t_vector(), ts.t_vector());
                        assert_eq!(iota.mass(), ts.vertices().len() as u64);
                        let tv = ts.t_vector();
                        assert_eq!((tv.0[0], tv.0[h]), (1, 1));
                        assert!(ts.count_maximal_paths() >= class.len() as u64);
                        assert_eq!(iota.canonical().parse::<IotaPolynomial>().unwrap(), iota);
                        let s = ts.project();
                        assert!(s.vertices().len() <= ts.vertices().len());
                        for (i, vtx) in ts.vertices().iter().enumerate() {
                            if vtx.time > 1 {
                                assert!(ts.in_degree(i) >= 2);
                            }
                            if vtx.time + 1 < h {
                                assert!(ts.out_degree(i) >= 2);
                            }
                            if vtx.time + 2 <= h {
                                for j in ts.rank(vtx.time + 2) {
                                    assert!(ts.two_step_paths(i, j) <= 2);
                                }
                            }
                        }
                        // A permutation seen at two times has times of equal parity.
                        for a in ts.vertices() {
                            for b in ts.vertices() {
                                if a.perm == b.perm {
                                    assert_eq!(a.time % 2, b.time % 2);
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn reversal_swaps_succ_and_prec() {
        let w0 = Permutation::longest(4);
        for u in Permutation::all(4) {
            for v in Permutation::all(4) {
                let rv = w0.compose(&u).unwrap();
                let ru = w0.compose(&v).unwrap();
                let mut forward: Vec<IotaPolynomial> =
                    flipclasses(u, v, 3).unwrap().iter().map(IotaPolynomial::of).collect();
                let mut backward: Vec<IotaPolynomial> =
                    flipclasses(ru, rv, 3).unwrap().iter().map(|c| IotaPolynomial::of(c).reversed()).collect();
                forward.sort();
                backward.sort();
                assert_eq!(forward, backward);
                for (f, b) in forward.iter().zip(&backward) {
                    assert_eq!(f.prec(), b.reversed().succ());
                }
            }
        }
    }

    #[test]
    fn effectiveness_of_subpaths() {
        let class = four_crown();
        let first = class.path(0);
        let sub = TimedPath { start_time: 1, perms: first.vertices()[1..3].to_vec() };
        assert!(is_effective(&class, &sub));
        let bogus = TimedPath { start_time: 0, perms: alloc::vec![p("4231")] };
        assert!(!is_effective(&class, &bogus));
    }

    #[test]
    fn text_forms() {
        let tv: TVector = "(1,3,4,3,1)".parse().unwrap();
        assert_eq!(tv.to_string(), "(1,3,4,3,1)");
        assert_eq!(tv.alternating_sum(), 0);
        let succ = DegreePolynomial::from_terms(&[(4, 1), (5, 6)]);
        assert_eq!(succ.display('y'), "y^4+6y^5");
        assert!("1*x^0*y^1".parse::<IotaPolynomial>().is_err());
        let dot = TimeSupportGraph::of(&four_crown()).to_dot("ts");
        assert!(dot.starts_with("digraph ts {"));
    }
}
