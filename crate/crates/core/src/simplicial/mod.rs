//! Finite simplicial sets presented by their nondegenerate cells.
//!
//! A simplex of degree `m` is stored in Eilenberg–Zilber normal form: a
//! monotone surjection `[m] -> [p]` together with a nondegenerate `p`-cell.
//! The surjection collapses exactly the positions `j` with `σ(j) = σ(j+1)`,
//! which are the indices of the (strictly decreasing) degeneracy word
//! `s_{i_1} ⋯ s_{i_k}`.
//!
//! Every face of a nondegenerate cell is stored as such a normal form, and the
//! action of an arbitrary simplicial operator is computed by epi–mono
//! factorization followed by iterated stored faces.

mod map;
mod ops;
mod subdivision;

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::{Error, Result};

pub use map::SimplicialMap;
pub use ops::{product, pushout_sset, simplex_map, standard, ProductSpace, Side, SimplicialPushout, StandardKind};
pub use subdivision::{ex_level, ex_unit, last_vertex_map, sd, subdivide, Subdivision, DEFAULT_EX_CAP};

/// A simplex in normal form: `surjection: [degree] -> [cell_dim]` applied to a
/// nondegenerate cell.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Simplex {
    surjection: Vec<usize>,
    cell: usize,
}

impl Simplex {
    pub fn nondegenerate(dim: usize, cell: usize) -> Self {
        Self { surjection: (0..=dim).collect(), cell }
    }

    /// Builds `s_{i_1} ⋯ s_{i_k} x` from a strictly decreasing degeneracy word.
    pub fn from_degeneracies(cell_dim: usize, cell: usize, degeneracies: &[usize]) -> Result<Self> {
        let degree = cell_dim + degeneracies.len();
        if degeneracies.windows(2).any(|w| w[0] <= w[1]) {
            return Err(Error::InvalidSimplicialSet(format!(
                "degeneracy word {degeneracies:?} is not strictly decreasing"
            )));
        }
        if degeneracies.iter().any(|&i| i >= degree) {
            return Err(Error::InvalidSimplicialSet(format!(
                "degeneracy word {degeneracies:?} out of range for degree {degree}"
            )));
        }
        let surjection = (0..=degree).map(|j| j - degeneracies.iter().filter(|&&i| i < j).count()).collect();
        Ok(Self { surjection, cell })
    }

    pub(crate) fn from_parts(surjection: Vec<usize>, cell: usize) -> Self {
        debug_assert!(is_surjection(&surjection));
        Self { surjection, cell }
    }

    pub fn degree(&self) -> usize {
        self.surjection.len() - 1
    }

    pub fn cell_dim(&self) -> usize {
        *self.surjection.last().expect("surjection is never empty")
    }

    pub fn cell(&self) -> usize {
        self.cell
    }

    pub fn surjection(&self) -> &[usize] {
        &self.surjection
    }

    pub fn is_degenerate(&self) -> bool {
        self.degree() != self.cell_dim()
    }

    /// The normal-form degeneracy word, strictly decreasing.
    pub fn degeneracies(&self) -> Vec<usize> {
        let mut word: Vec<usize> =
            self.surjection.windows(2).enumerate().filter(|(_, w)| w[0] == w[1]).map(|(j, _)| j).collect();
        word.reverse();
        word
    }
}

fn is_surjection(values: &[usize]) -> bool {
    !values.is_empty() && values[0] == 0 && values.windows(2).all(|w| w[1] == w[0] || w[1] == w[0] + 1)
}

/// Epi–mono factorization of a monotone map given by its values.
pub(crate) fn factor(values: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let mut image: Vec<usize> = Vec::new();
    let mut epi = Vec::with_capacity(values.len());
    for &v in values {
        if image.last() != Some(&v) {
            image.push(v);
        }
        epi.push(image.len() - 1);
    }
    (epi, image)
}

/// The coface `δ_i: [m-1] -> [m]`.
pub(crate) fn coface(m: usize, i: usize) -> Vec<usize> {
    (0..m).map(|j| if j < i { j } else { j + 1 }).collect()
}

/// The codegeneracy `σ_i: [m+1] -> [m]`.
pub(crate) fn codegeneracy(m: usize, i: usize) -> Vec<usize> {
    (0..=m + 1).map(|j| if j <= i { j } else { j - 1 }).collect()
}

/// All monotone surjections `[d] -> [p]`.
pub(crate) fn surjections(d: usize, p: usize) -> Vec<Vec<usize>> {
    fn go(d: usize, p: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let last = *current.last().unwrap();
        if current.len() == d + 1 {
            if last == p {
                out.push(current.clone());
            }
            return;
        }
        let remaining = d + 1 - current.len();
        if last + remaining > p {
            current.push(last);
            go(d, p, current, out);
            current.pop();
        }
        if last < p {
            current.push(last + 1);
            go(d, p, current, out);
            current.pop();
        }
    }
    if p > d {
        return Vec::new();
    }
    let mut out = Vec::new();
    go(d, p, &mut vec![0], &mut out);
    out
}

pub(crate) fn join_labels<'a>(parts: impl IntoIterator<Item = &'a str>) -> String {
    let parts: Vec<&str> = parts.into_iter().collect();
    if parts.iter().all(|p| p.chars().count() == 1) {
        parts.concat()
    } else {
        parts.join("|")
    }
}

/// A simplicial set with finitely many nondegenerate cells.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteSimplicialSet {
    labels: Vec<Vec<String>>,
    faces: Vec<Vec<Vec<Simplex>>>,
}

impl FiniteSimplicialSet {
    /// Validates and builds a simplicial set. `faces[n][c][i]` is the `i`-th
    /// face of the `c`-th nondegenerate `n`-cell; `faces[0]` holds empty lists.
    pub fn new(labels: Vec<Vec<String>>, faces: Vec<Vec<Vec<Simplex>>>) -> Result<Self> {
        let set = Self { labels, faces };
        set.check()?;
        Ok(set)
    }

    pub fn empty() -> Self {
        Self { labels: vec![Vec::new()], faces: vec![Vec::new()] }
    }

    /// Checks resolvability of every face reference and the simplicial
    /// identities `d_i d_j = d_{j-1} d_i` for `i < j`.
    pub fn check(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidSimplicialSet(msg));
        if self.labels.is_empty() || self.labels.len() != self.faces.len() {
            return bad("dimension data is inconsistent".into());
        }
        for (n, cells) in self.faces.iter().enumerate() {
            if cells.len() != self.labels[n].len() {
                return bad(format!("dimension {n}: {} labels for {} cells", self.labels[n].len(), cells.len()));
            }
            for (c, faces) in cells.iter().enumerate() {
                let expected = if n == 0 { 0 } else { n + 1 };
                if faces.len() != expected {
                    return bad(format!("cell {n}/{c} has {} faces, expected {expected}", faces.len()));
                }
                for (i, face) in faces.iter().enumerate() {
                    if !is_surjection(&face.surjection) || face.degree() + 1 != n {
                        return bad(format!("face {n}/{c}/{i} has the wrong degree or shape"));
                    }
                    let p = face.cell_dim();
                    if p >= n || face.cell >= self.cell_count(p) {
                        return bad(format!("face {n}/{c}/{i} references a missing cell {p}/{}", face.cell));
                    }
                }
            }
        }
        for n in 2..self.faces.len() {
            for c in 0..self.faces[n].len() {
                for j in 0..=n {
                    for i in 0..j {
                        let lhs = self.face_of(&self.faces[n][c][j], i);
                        let rhs = self.face_of(&self.faces[n][c][i], j - 1);
                        if lhs != rhs {
                            return bad(format!("simplicial identity d{i}d{j} = d{}d{i} fails on cell {n}/{c}", j - 1));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn top_dim(&self) -> usize {
        self.labels.len() - 1
    }

    pub fn cell_count(&self, n: usize) -> usize {
        self.labels.get(n).map_or(0, Vec::len)
    }

    pub fn cell_counts(&self) -> Vec<usize> {
        self.labels.iter().map(Vec::len).collect()
    }

    pub fn total_cells(&self) -> usize {
        self.labels.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.cell_count(0) == 0
    }

    pub fn labels(&self, n: usize) -> &[String] {
        &self.labels[n]
    }

    pub fn label(&self, n: usize, c: usize) -> &str {
        &self.labels[n][c]
    }

    /// The stored `i`-th face of the nondegenerate cell `n/c`.
    pub fn face(&self, n: usize, c: usize, i: usize) -> &Simplex {
        &self.faces[n][c][i]
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.labels
            .iter()
            .enumerate()
            .map(|(n, cells)| if n % 2 == 0 { cells.len() as i64 } else { -(cells.len() as i64) })
            .sum()
    }

    /// Applies the simplicial operator `op: [q] -> [degree]` (a monotone map
    /// given by its values) to `s`, returning the normal form of `s · op`.
    pub fn act(&self, s: &Simplex, op: &[usize]) -> Simplex {
        let composite: Vec<usize> = op.iter().map(|&j| s.surjection[j]).collect();
        let (epi, mono) = factor(&composite);
        let inner = self.restrict(s.cell_dim(), s.cell, &mono);
        Simplex { surjection: epi.iter().map(|&t| inner.surjection[t]).collect(), cell: inner.cell }
    }

    fn restrict(&self, dim: usize, cell: usize, mono: &[usize]) -> Simplex {
        if mono.len() == dim + 1 {
            return Simplex::nondegenerate(dim, cell);
        }
        let missing = (0..=dim).find(|j| mono.binary_search(j).is_err()).expect("proper injection misses a value");
        let rest: Vec<usize> = mono.iter().map(|&v| if v < missing { v } else { v - 1 }).collect();
        self.act(&self.faces[dim][cell][missing], &rest)
    }

    pub fn face_of(&self, s: &Simplex, i: usize) -> Simplex {
        self.act(s, &coface(s.degree(), i))
    }

    pub fn degeneracy_of(&self, s: &Simplex, i: usize) -> Simplex {
        self.act(s, &codegeneracy(s.degree(), i))
    }

    /// Vertex indices of the nondegenerate cell `n/c`, in its own order.
    pub fn vertices(&self, n: usize, c: usize) -> Vec<usize> {
        let s = Simplex::nondegenerate(n, c);
        (0..=n).map(|j| self.act(&s, &[j]).cell).collect()
    }

    /// Every simplex of the given degree, degenerate ones included.
    pub fn simplices_in_degree(&self, d: usize) -> Vec<Simplex> {
        let mut out = Vec::new();
        for p in 0..=d.min(self.top_dim()) {
            for surjection in surjections(d, p) {
                for cell in 0..self.cell_count(p) {
                    out.push(Simplex { surjection: surjection.clone(), cell });
                }
            }
        }
        out
    }

    /// The simplicial complex generated by the given vertex tuples. Every
    /// tuple must be strictly increasing; all of its nonempty subsets become
    /// cells, ordered lexicographically within each dimension.
    pub fn from_simplices(vertex_labels: Vec<String>, simplices: &[Vec<usize>]) -> Result<Self> {
        let vertex_count = vertex_labels.len();
        let mut by_dim: Vec<BTreeSet<Vec<usize>>> = vec![(0..vertex_count).map(|v| vec![v]).collect()];
        let mut pending: Vec<Vec<usize>> = Vec::new();
        for s in simplices {
            if s.is_empty() || s.windows(2).any(|w| w[0] >= w[1]) || s.iter().any(|&v| v >= vertex_count) {
                return Err(Error::InvalidSimplicialSet(format!(
                    "vertex tuple {s:?} is not strictly increasing or out of range"
                )));
            }
            pending.push(s.clone());
        }
        while let Some(s) = pending.pop() {
            let n = s.len() - 1;
            while by_dim.len() <= n {
                by_dim.push(BTreeSet::new());
            }
            if !by_dim[n].insert(s.clone()) || n == 0 {
                continue;
            }
            for i in 0..=n {
                let mut face = s.clone();
                face.remove(i);
                if !by_dim[n - 1].contains(&face) {
                    pending.push(face);
                }
            }
        }
        let index: Vec<BTreeMap<&Vec<usize>, usize>> =
            by_dim.iter().map(|cells| cells.iter().enumerate().map(|(k, c)| (c, k)).collect()).collect();
        let mut labels = Vec::with_capacity(by_dim.len());
        let mut faces = Vec::with_capacity(by_dim.len());
        for (n, cells) in by_dim.iter().enumerate() {
            labels.push(cells.iter().map(|c| join_labels(c.iter().map(|&v| vertex_labels[v].as_str()))).collect());
            faces.push(
                cells
                    .iter()
                    .map(|c| {
                        if n == 0 {
                            return Vec::new();
                        }
                        (0..=n)
                            .map(|i| {
                                let mut face = c.clone();
                                face.remove(i);
                                Simplex::nondegenerate(n - 1, index[n - 1][&face])
                            })
                            .collect()
                    })
                    .collect(),
            );
        }
        Ok(Self { labels, faces })
    }

    /// Vertex lists of every cell if this is a vertex-ordered simplicial
    /// complex: faces carry no degeneracies, each cell has distinct vertices,
    /// and distinct cells have distinct vertex sets.
    pub fn complex_vertex_lists(&self) -> Result<Vec<Vec<Vec<usize>>>> {
        let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
        let mut lists = Vec::with_capacity(self.labels.len());
        for n in 0..self.labels.len() {
            let mut per_dim = Vec::with_capacity(self.cell_count(n));
            for c in 0..self.cell_count(n) {
                if n > 0 && self.faces[n][c].iter().any(Simplex::is_degenerate) {
                    return Err(Error::NotAComplex(format!("cell {n}/{c} has a degenerate face")));
                }
                let vertices = self.vertices(n, c);
                let mut sorted = vertices.clone();
                sorted.sort_unstable();
                sorted.dedup();
                if sorted.len() != n + 1 {
                    return Err(Error::NotAComplex(format!("cell {n}/{c} repeats a vertex")));
                }
                if !seen.insert(sorted) {
                    return Err(Error::NotAComplex(format!("cell {n}/{c} shares its vertex set with another cell")));
                }
                per_dim.push(vertices);
            }
            lists.push(per_dim);
        }
        Ok(lists)
    }

    pub(crate) fn from_raw(labels: Vec<Vec<String>>, faces: Vec<Vec<Vec<Simplex>>>) -> Self {
        let mut set = Self { labels, faces };
        set.trim();
        set
    }

    fn trim(&mut self) {
        while self.labels.len() > 1 && self.labels.last().is_some_and(Vec::is_empty) {
            self.labels.pop();
            self.faces.pop();
        }
    }

    /// A short human-readable description of the cell counts.
    pub fn summary(&self) -> String {
        let counts: Vec<String> = self.cell_counts().iter().map(ToString::to_string).collect();
        format!("cells ({})", counts.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degeneracy_words_round_trip() {
        let s = Simplex::from_degeneracies(1, 0, &[2, 0]).unwrap();
        assert_eq!(s.degree(), 3);
        assert_eq!(s.surjection(), &[0, 0, 1, 1]);
        assert_eq!(s.degeneracies(), vec![2, 0]);
        let t = Simplex::from_degeneracies(1, 0, &s.degeneracies()).unwrap();
        assert_eq!(s, t);
        assert!(Simplex::from_degeneracies(1, 0, &[0, 1]).is_err());
        assert!(Simplex::from_degeneracies(1, 0, &[2]).is_err());
    }

    #[test]
    fn surjection_counts_are_binomial() {
        assert_eq!(surjections(3, 1).len(), 3);
        assert_eq!(surjections(4, 2).len(), 6);
        assert_eq!(surjections(2, 2).len(), 1);
        assert!(surjections(1, 2).is_empty());
    }

    #[test]
    fn faces_of_degenerate_simplices() {
        let x = standard(StandardKind::Simplex(1)).unwrap();
        let edge = Simplex::nondegenerate(1, 0);
        let s0 = x.degeneracy_of(&edge, 0);
        // d0 s0 = d1 s0 = id
        assert_eq!(x.face_of(&s0, 0), edge);
        assert_eq!(x.face_of(&s0, 1), edge);
        // d2 s0 = s0 d1
        let lhs = x.face_of(&s0, 2);
        let rhs = x.degeneracy_of(&x.face_of(&edge, 1), 0);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn rejects_broken_identities() {
        let mut x = standard(StandardKind::Simplex(2)).unwrap();
        x.faces[2][0].swap(0, 2);
        assert!(matches!(x.check(), Err(Error::InvalidSimplicialSet(_))));
    }

    #[test]
    fn from_simplices_closes_under_faces() {
        let labels = ["a", "b", "c"].iter().map(|s| s.to_string()).collect();
        let x = FiniteSimplicialSet::from_simplices(labels, &[vec![0, 1, 2]]).unwrap();
        assert_eq!(x.cell_counts(), vec![3, 3, 1]);
        assert_eq!(x.label(2, 0), "abc");
        x.check().unwrap();
    }
}
