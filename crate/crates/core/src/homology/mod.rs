//! Integral homology of finite simplicial sets via Smith normal form.
//!
//! Chains are normalized: the basis in degree `n` is the nondegenerate
//! `n`-cells and degenerate faces contribute nothing to the boundary.

mod snf;

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::One;

use crate::category::FinCategory;
use crate::simplicial::{FiniteSimplicialSet, SimplicialMap};
use crate::{Error, Result};

pub use snf::{invariant_factors, smith_normal_form, Matrix, SmithForm, SnfEntry};

/// Free abelian groups `C_n` of the given ranks with boundary matrices
/// `∂_n: C_n -> C_{n-1}` (rows indexed by `C_{n-1}`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainComplex {
    ranks: Vec<usize>,
    boundaries: Vec<Matrix<i64>>,
}

impl ChainComplex {
    /// `boundaries[k]` is `∂_{k+1}`. Verifies shapes and `∂∂ = 0`.
    pub fn new(ranks: Vec<usize>, boundaries: Vec<Matrix<i64>>) -> Result<Self> {
        if boundaries.len() + 1 != ranks.len().max(1) {
            return Err(Error::InvalidInput(format!(
                "{} boundary matrices for {} chain groups",
                boundaries.len(),
                ranks.len()
            )));
        }
        for (k, b) in boundaries.iter().enumerate() {
            if b.rows() != ranks[k] || b.cols() != ranks[k + 1] {
                return Err(Error::InvalidInput(format!("boundary ∂{} has the wrong shape", k + 1)));
            }
        }
        for k in 1..boundaries.len() {
            let square = boundaries[k - 1].checked_mul(&boundaries[k]);
            if !square.is_some_and(|m| m.is_zero()) {
                return Err(Error::InvalidInput(format!("∂{} ∂{} is not zero", k, k + 1)));
            }
        }
        Ok(Self { ranks, boundaries })
    }

    pub fn of(x: &FiniteSimplicialSet) -> Self {
        if x.is_empty() {
            return Self { ranks: Vec::new(), boundaries: Vec::new() };
        }
        let ranks = x.cell_counts();
        let boundaries = (1..ranks.len()).map(|n| boundary(x, n)).collect();
        Self::new(ranks, boundaries).expect("simplicial identities give ∂∂ = 0")
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    /// `∂_n`, for `1 <= n <= top degree`.
    pub fn boundary(&self, n: usize) -> &Matrix<i64> {
        &self.boundaries[n - 1]
    }

    pub fn homology(&self) -> HomologyProfile {
        let top = self.ranks.len();
        // rank and torsion of ∂_n for n = 1..top-1
        let factors: Vec<Vec<BigInt>> = self.boundaries.iter().map(invariant_factors).collect();
        let rank = |n: usize| if n >= 1 && n < top { factors[n - 1].len() } else { 0 };
        let degrees = (0..top)
            .map(|n| {
                let torsion =
                    if n + 1 < top { factors[n].iter().filter(|d| !d.is_one()).cloned().collect() } else { Vec::new() };
                DegreeHomology { betti: self.ranks[n] - rank(n) - rank(n + 1), torsion }
            })
            .collect();
        HomologyProfile::from_degrees(degrees)
    }
}

fn boundary(x: &FiniteSimplicialSet, n: usize) -> Matrix<i64> {
    let mut m = Matrix::zeros(x.cell_count(n - 1), x.cell_count(n));
    for c in 0..x.cell_count(n) {
        for i in 0..=n {
            let face = x.face(n, c, i);
            if !face.is_degenerate() {
                let sign = if i % 2 == 0 { 1 } else { -1 };
                let current = *m.get(face.cell(), c);
                m.set(face.cell(), c, current + sign);
            }
        }
    }
    m
}

/// `H_n ≅ Z^betti ⊕ ⨁ Z/t`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DegreeHomology {
    pub betti: usize,
    pub torsion: Vec<BigInt>,
}

impl DegreeHomology {
    pub fn is_zero(&self) -> bool {
        self.betti == 0 && self.torsion.is_empty()
    }
}

/// Homology in every degree, with trailing zero groups dropped so that
/// profiles compare equal regardless of the dimension of the space.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HomologyProfile {
    degrees: Vec<DegreeHomology>,
}

impl HomologyProfile {
    pub fn from_degrees(mut degrees: Vec<DegreeHomology>) -> Self {
        while degrees.last().is_some_and(DegreeHomology::is_zero) {
            degrees.pop();
        }
        Self { degrees }
    }

    /// Integral homology of a point.
    pub fn point() -> Self {
        Self::from_betti(&[1])
    }

    pub fn from_betti(betti: &[usize]) -> Self {
        Self::from_degrees(betti.iter().map(|&b| DegreeHomology { betti: b, torsion: Vec::new() }).collect())
    }

    pub fn degrees(&self) -> &[DegreeHomology] {
        &self.degrees
    }

    pub fn degree(&self, n: usize) -> DegreeHomology {
        self.degrees.get(n).cloned().unwrap_or(DegreeHomology { betti: 0, torsion: Vec::new() })
    }

    pub fn betti(&self) -> Vec<usize> {
        self.degrees.iter().map(|d| d.betti).collect()
    }

    pub fn is_acyclic(&self) -> bool {
        self.degrees.is_empty()
    }

    pub fn is_point(&self) -> bool {
        *self == Self::point()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.degrees.iter().enumerate().map(|(n, d)| if n % 2 == 0 { d.betti as i64 } else { -(d.betti as i64) }).sum()
    }

    /// Reduced homology: one copy of `Z` less in degree 0.
    pub fn reduced(&self) -> HomologyProfile {
        let mut degrees = self.degrees.clone();
        if let Some(first) = degrees.first_mut() {
            first.betti = first.betti.saturating_sub(1);
        }
        Self::from_degrees(degrees)
    }
}

impl core::fmt::Display for HomologyProfile {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        if self.degrees.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .degrees
            .iter()
            .enumerate()
            .map(|(n, d)| {
                let mut summands: Vec<String> = Vec::new();
                match d.betti {
                    0 => {}
                    1 => summands.push("Z".into()),
                    b => summands.push(format!("Z^{b}")),
                }
                summands.extend(d.torsion.iter().map(|t| format!("Z/{t}")));
                let group = if summands.is_empty() { "0".to_string() } else { summands.join("+") };
                format!("H{n}={group}")
            })
            .collect();
        f.write_str(&parts.join(", "))
    }
}

pub fn homology(x: &FiniteSimplicialSet) -> HomologyProfile {
    ChainComplex::of(x).homology()
}

/// The chain map induced on normalized chains, `f_n: C_n(X) -> C_n(Y)`.
pub fn chain_map(f: &SimplicialMap) -> Vec<Matrix<i64>> {
    let (x, y) = (f.source(), f.target());
    if x.is_empty() {
        return Vec::new();
    }
    (0..=x.top_dim())
        .map(|n| {
            let rows = if y.is_empty() || n > y.top_dim() { 0 } else { y.cell_count(n) };
            let mut m = Matrix::zeros(rows, x.cell_count(n));
            for c in 0..x.cell_count(n) {
                let image = f.image_of_cell(n, c);
                if !image.is_degenerate() {
                    m.set(image.cell(), c, 1);
                }
            }
            m
        })
        .collect()
}

/// The algebraic mapping cone: `Cone_n = C_{n-1}(X) ⊕ C_n(Y)` with
/// `d(a, b) = (-∂a, f(a) + ∂b)`.
pub fn mapping_cone(f: &SimplicialMap) -> ChainComplex {
    let cx = ChainComplex::of(f.source());
    let cy = ChainComplex::of(f.target());
    let fm = chain_map(f);
    let rank_x = |n: usize| cx.ranks.get(n).copied().unwrap_or(0);
    let rank_y = |n: usize| cy.ranks.get(n).copied().unwrap_or(0);
    let top = cx.ranks.len().max(cy.ranks.len().saturating_sub(1));
    let cone_rank = |n: usize| if n == 0 { rank_y(0) } else { rank_x(n - 1) + rank_y(n) };
    let ranks: Vec<usize> = (0..=top).map(cone_rank).collect();
    let boundaries = (1..=top)
        .map(|n| {
            let mut m = Matrix::zeros(cone_rank(n - 1), cone_rank(n));
            let (x_rows, x_cols) = (if n >= 2 { rank_x(n - 2) } else { 0 }, rank_x(n - 1));
            // -∂ on the X part
            if n >= 2 {
                let d = cx.boundary(n - 1);
                for i in 0..x_rows {
                    for j in 0..x_cols {
                        m.set(i, j, -*d.get(i, j));
                    }
                }
            }
            // f from X_{n-1} into Y_{n-1}
            if let Some(block) = fm.get(n - 1) {
                for i in 0..block.rows() {
                    for j in 0..x_cols {
                        m.set(x_rows + i, j, *block.get(i, j));
                    }
                }
            }
            // ∂ on the Y part
            if n < cy.ranks.len() {
                let d = cy.boundary(n);
                for i in 0..d.rows() {
                    for j in 0..d.cols() {
                        m.set(x_rows + i, x_cols + j, *d.get(i, j));
                    }
                }
            }
            m
        })
        .collect();
    ChainComplex::new(ranks, boundaries).expect("the cone of a chain map is a chain complex")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyIsoReport {
    pub iso: bool,
    pub source: HomologyProfile,
    pub target: HomologyProfile,
    pub cone: HomologyProfile,
    /// Lowest degree in which the induced map is not an isomorphism.
    pub first_failure_degree: Option<usize>,
}

/// Whether `f` induces an isomorphism on integral homology, decided by
/// acyclicity of the mapping cone.
///
/// If `k` is the lowest degree with nonzero cone homology, `f_*` is an
/// isomorphism below `k - 1` and onto in degree `k - 1`; a surjection between
/// isomorphic finitely generated abelian groups is injective, so the first
/// failure is in degree `k - 1` exactly when the two groups there differ.
pub fn is_homology_iso(f: &SimplicialMap) -> HomologyIsoReport {
    let source = homology(f.source());
    let target = homology(f.target());
    let cone = mapping_cone(f).homology();
    let lowest = cone.degrees().iter().position(|d| !d.is_zero());
    let first_failure_degree =
        lowest.map(|k| if k >= 1 && source.degree(k - 1) != target.degree(k - 1) { k - 1 } else { k });
    HomologyIsoReport { iso: lowest.is_none(), source, target, cone, first_failure_degree }
}

/// A category with a terminal or an initial object has a contractible nerve.
pub fn contractible_by_terminal(c: &FinCategory) -> bool {
    c.terminal_object().is_some() || c.initial_object().is_some()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial::{last_vertex_map, standard, StandardKind};
    use alloc::sync::Arc;
    use alloc::vec;

    fn space(kind: StandardKind) -> Arc<FiniteSimplicialSet> {
        Arc::new(standard(kind).unwrap())
    }

    #[test]
    fn boundary_matrices() {
        let interval = ChainComplex::of(&space(StandardKind::Simplex(1)));
        assert_eq!(interval.boundary(1), &Matrix::from_rows(vec![vec![-1], vec![1]]));
        let circle = ChainComplex::of(&space(StandardKind::Boundary(2)));
        let d1 = circle.boundary(1);
        assert_eq!((d1.rows(), d1.cols()), (3, 3));
        assert!((0..3).all(|j| (0..3).map(|i| *d1.get(i, j)).sum::<i64>() == 0));
        assert!(ChainComplex::of(&space(StandardKind::Simplex(0))).boundaries.is_empty());
    }

    #[test]
    fn spheres_and_disks() {
        assert_eq!(homology(&space(StandardKind::Boundary(3))), HomologyProfile::from_betti(&[1, 0, 1]));
        assert_eq!(homology(&space(StandardKind::Boundary(2))), HomologyProfile::from_betti(&[1, 1]));
        assert!(homology(&space(StandardKind::Simplex(3))).is_point());
        assert!(homology(&space(StandardKind::Horn(3, 1))).is_point());
        assert!(homology(&FiniteSimplicialSet::empty()).is_acyclic());
    }

    #[test]
    fn torsion_is_detected() {
        // the projective plane: one loop e and a 2-cell with faces (e, s0 v, e)
        use crate::simplicial::Simplex;
        let v = Simplex::nondegenerate(0, 0);
        let e = Simplex::nondegenerate(1, 0);
        let dv = Simplex::from_degeneracies(0, 0, &[0]).unwrap();
        let x = FiniteSimplicialSet::new(
            vec![vec!["v".into()], vec!["e".into()], vec!["t".into()]],
            vec![vec![vec![]], vec![vec![v.clone(), v]], vec![vec![e.clone(), dv, e]]],
        )
        .unwrap();
        let h = homology(&x);
        assert_eq!(h.degree(1), DegreeHomology { betti: 0, torsion: vec![BigInt::from(2)] });
        assert_eq!(h.degree(2).betti, 0);
    }

    #[test]
    fn identity_and_last_vertex_are_homology_isos() {
        let x = space(StandardKind::Boundary(2));
        let id = SimplicialMap::identity(x.clone());
        assert!(is_homology_iso(&id).iso);
        for kind in [StandardKind::Simplex(2), StandardKind::Boundary(2)] {
            let report = is_homology_iso(&last_vertex_map(&space(kind)).unwrap());
            assert!(report.iso, "{kind:?}: cone {}", report.cone);
        }
    }

    #[test]
    fn collapsing_a_circle_fails_in_degree_one() {
        let circle = space(StandardKind::Boundary(2));
        let point = space(StandardKind::Simplex(0));
        let collapse = crate::simplicial::SimplicialMap::new(
            circle.clone(),
            point,
            vec![
                vec![crate::simplicial::Simplex::nondegenerate(0, 0); 3],
                vec![crate::simplicial::Simplex::from_degeneracies(0, 0, &[0]).unwrap(); 3],
            ],
        )
        .unwrap();
        let report = is_homology_iso(&collapse);
        assert!(!report.iso);
        assert_eq!(report.first_failure_degree, Some(1));
    }
}
