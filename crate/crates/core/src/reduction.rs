//! Label graphs, essential letters, restriction `r_E`, irreducible
//! decomposition and shuffle products.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::flips::Flipclass;
use crate::invariants::IotaPolynomial;
use crate::paths::{pack_labels, packed_labels, BruhatPath, MAX_PACKED_LEN};
use crate::perm::{Permutation, Transposition, MAX_N};

/// `G(Γ)`: letters moved by some label, with an edge `{a, b}` tagged `i` for
/// each label `t_i = (a, b)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabelGraph {
    vertices: Vec<u8>,
    edges: Vec<(u8, u8, usize)>,
}

impl LabelGraph {
    pub fn from_labels(labels: &[Transposition]) -> Self {
        let mut vertices: Vec<u8> = labels.iter().flat_map(|t| [t.a(), t.b()]).collect();
        vertices.sort_unstable();
        vertices.dedup();
        let edges = labels.iter().enumerate().map(|(i, t)| (t.a(), t.b(), i + 1)).collect();
        LabelGraph { vertices, edges }
    }

    pub fn vertices(&self) -> &[u8] {
        &self.vertices
    }

    pub fn edges(&self) -> &[(u8, u8, usize)] {
        &self.edges
    }

    /// Connected components, each sorted, ordered by least letter.
    pub fn components(&self) -> Vec<Vec<u8>> {
        let mut parent = [0u8; MAX_N + 1];
        for (i, p) in parent.iter_mut().enumerate() {
            *p = i as u8;
        }
        fn find(parent: &mut [u8; MAX_N + 1], mut x: u8) -> u8 {
            while parent[x as usize] != x {
                parent[x as usize] = parent[parent[x as usize] as usize];
                x = parent[x as usize];
            }
            x
        }
        for &(a, b, _) in &self.edges {
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            parent[ra.max(rb) as usize] = ra.min(rb);
        }
        let mut out: Vec<Vec<u8>> = Vec::new();
        for &x in &self.vertices {
            let r = find(&mut parent, x);
            match out.iter_mut().find(|c| c[0] == r) {
                Some(c) => c.push(x),
                None => out.push(alloc::vec![x]),
            }
        }
        out
    }
}

pub fn label_graph(path: &BruhatPath) -> LabelGraph {
    LabelGraph::from_labels(path.labels())
}

fn representative_graph(class: &Flipclass) -> LabelGraph {
    LabelGraph::from_labels(&packed_labels(class.packed()[0], class.h()).collect::<Vec<_>>())
}

/// `E(F)`: letters moved by the labels of any path of `F`.
pub fn essential_letters(class: &Flipclass) -> Vec<u8> {
    representative_graph(class).vertices
}

/// Components of the label graph, i.e. the partition `W(F)` of `E(F)`.
pub fn letter_components(class: &Flipclass) -> Vec<Vec<u8>> {
    representative_graph(class).components()
}

pub fn is_irreducible(class: &Flipclass) -> bool {
    letter_components(class).len() <= 1
}

/// `r_E`: keep the letters in `letters` (sorted), relabel them `1..=m` in
/// order.
pub fn restrict_permutation(x: &Permutation, letters: &[u8]) -> Permutation {
    let window: Vec<u8> = x
        .window()
        .iter()
        .filter_map(|&a| letters.binary_search(&a).ok().map(|i| i as u8 + 1))
        .collect();
    Permutation::from_window(&window).expect("restriction of a permutation")
}

fn restrict_label(t: Transposition, letters: &[u8]) -> Transposition {
    let idx = |a| letters.binary_search(&a).expect("label letter is essential") as u8 + 1;
    Transposition::new_unchecked(idx(t.a()), idx(t.b()))
}

/// Projects `class` onto the labels supported in `letters`, a union of
/// components of the label graph, then restricts to `S_{|letters|}`.
pub fn project(class: &Flipclass, letters: &[u8]) -> Result<Flipclass> {
    let h = class.h();
    let mut paths = Vec::with_capacity(class.len());
    let mut sub_h = None;
    for &p in class.packed() {
        let labels: Vec<Transposition> = packed_labels(p, h)
            .filter(|t| letters.binary_search(&t.a()).is_ok())
            .map(|t| restrict_label(t, letters))
            .collect();
        sub_h = Some(labels.len());
        paths.push(pack_labels(&labels)?);
    }
    let sub_h = sub_h.ok_or(Error::MalformedChain)?;
    let u = restrict_permutation(&class.u(), letters);
    let v = restrict_permutation(&class.v(), letters);
    if sub_h == 0 {
        return Flipclass::from_packed(u, v, 0, alloc::vec![0]);
    }
    Flipclass::from_packed(u, v, sub_h, paths)
}

/// `r_E(F)`, a flipclass of `S_{|E(F)|}`.
pub fn restrict(class: &Flipclass) -> Result<Flipclass> {
    project(class, &essential_letters(class))
}

/// Irreducible factors `F_1, …, F_s` with `F ≅ F_1 ∗ ⋯ ∗ F_s`, each restricted
/// to its own letters and sorted by canonical ι.
pub fn decompose(class: &Flipclass) -> Result<Vec<Flipclass>> {
    let comps = letter_components(class);
    if comps.is_empty() {
        return Ok(alloc::vec![restrict(class)?]);
    }
    let mut factors = comps.iter().map(|c| project(class, c)).collect::<Result<Vec<_>>>()?;
    let mut keyed: Vec<(alloc::string::String, Flipclass)> =
        factors.drain(..).map(|f| (IotaPolynomial::of(&f).canonical(), f)).collect();
    keyed.sort();
    Ok(keyed.into_iter().map(|(_, f)| f).collect())
}

/// `F_1 ∗ F_2`: `F_1` on letters `1..=m_1`, `F_2` on `m_1+1..=m_1+m_2`, all
/// shuffles of the two label sequences.
pub fn shuffle_product(f1: &Flipclass, f2: &Flipclass) -> Result<Flipclass> {
    let (m1, m2) = (f1.degree(), f2.degree());
    if m1 + m2 > MAX_N {
        return Err(Error::DegreeOutOfRange(m1 + m2));
    }
    let (h1, h2) = (f1.h(), f2.h());
    let h = h1 + h2;
    if h > MAX_PACKED_LEN {
        return Err(Error::PathTooLong(h));
    }
    let join = |a: &Permutation, b: &Permutation| {
        let mut w: Vec<u8> = a.window().to_vec();
        w.extend(b.window().iter().map(|&x| x + m1 as u8));
        Permutation::from_window(&w).expect("disjoint blocks")
    };
    let u = join(&f1.u(), &f2.u());
    let v = join(&f1.v(), &f2.v());
    let shift = |t: Transposition| Transposition::new_unchecked(t.a() + m1 as u8, t.b() + m1 as u8);
    let firsts: Vec<Vec<Transposition>> = f1.packed().iter().map(|&p| packed_labels(p, h1).collect()).collect();
    let seconds: Vec<Vec<Transposition>> =
        f2.packed().iter().map(|&p| packed_labels(p, h2).map(shift).collect()).collect();
    let mut paths = Vec::new();
    let mut labels = Vec::with_capacity(h);
    for mask in 0u32..(1 << h) {
        if mask.count_ones() as usize != h1 {
            continue;
        }
        for a in &firsts {
            for b in &seconds {
                labels.clear();
                let (mut i, mut j) = (0, 0);
                for k in 0..h {
                    if mask >> k & 1 == 1 {
                        labels.push(a[i]);
                        i += 1;
                    } else {
                        labels.push(b[j]);
                        j += 1;
                    }
                }
                paths.push(pack_labels(&labels)?);
            }
        }
    }
    Flipclass::from_packed(u, v, h, paths)
}
