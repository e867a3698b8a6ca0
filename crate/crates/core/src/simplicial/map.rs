use alloc::collections::BTreeSet;
use alloc::format;
use alloc::sync::Arc;
use alloc::vec::Vec;

use super::{FiniteSimplicialSet, Simplex};
use crate::{Error, Result};

/// A simplicial map, given by the image of every nondegenerate cell.
#[derive(Clone, Debug)]
pub struct SimplicialMap {
    source: Arc<FiniteSimplicialSet>,
    target: Arc<FiniteSimplicialSet>,
    assignment: Vec<Vec<Simplex>>,
}

impl SimplicialMap {
    /// Validates that `assignment[n][c]` is an `n`-simplex of the target and
    /// that the assignment commutes with every face operator.
    pub fn new(
        source: Arc<FiniteSimplicialSet>,
        target: Arc<FiniteSimplicialSet>,
        assignment: Vec<Vec<Simplex>>,
    ) -> Result<Self> {
        let map = Self { source, target, assignment };
        map.check()?;
        Ok(map)
    }

    fn check(&self) -> Result<()> {
        let bad = |msg| Err(Error::NotSimplicial(msg));
        let counts = self.source.cell_counts();
        if self.assignment.len() != counts.len() {
            return bad(format!("assignment covers {} dimensions, source has {}", self.assignment.len(), counts.len()));
        }
        for (n, images) in self.assignment.iter().enumerate() {
            if images.len() != counts[n] {
                return bad(format!("dimension {n}: {} images for {} cells", images.len(), counts[n]));
            }
            for (c, image) in images.iter().enumerate() {
                let p = image.cell_dim();
                if image.degree() != n || image.cell() >= self.target.cell_count(p) {
                    return bad(format!("cell {n}/{c} is sent to an invalid simplex"));
                }
            }
        }
        for n in 1..self.assignment.len() {
            for c in 0..counts[n] {
                for i in 0..=n {
                    let along_source = self.apply(self.source.face(n, c, i));
                    let along_target = self.target.face_of(&self.assignment[n][c], i);
                    if along_source != along_target {
                        return bad(format!("face d{i} of cell {n}/{c} does not commute"));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn identity(space: Arc<FiniteSimplicialSet>) -> Self {
        let assignment = space
            .cell_counts()
            .iter()
            .enumerate()
            .map(|(n, &count)| (0..count).map(|c| Simplex::nondegenerate(n, c)).collect())
            .collect();
        Self { source: space.clone(), target: space, assignment }
    }

    pub fn source(&self) -> &Arc<FiniteSimplicialSet> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FiniteSimplicialSet> {
        &self.target
    }

    pub fn assignment(&self) -> &[Vec<Simplex>] {
        &self.assignment
    }

    pub fn image_of_cell(&self, n: usize, c: usize) -> &Simplex {
        &self.assignment[n][c]
    }

    /// Image of an arbitrary (possibly degenerate) source simplex.
    pub fn apply(&self, s: &Simplex) -> Simplex {
        let image = &self.assignment[s.cell_dim()][s.cell()];
        self.target.act(image, s.surjection())
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &SimplicialMap) -> Result<SimplicialMap> {
        if *self.target != *next.source {
            return Err(Error::NotSimplicial("composite of maps with mismatched ends".into()));
        }
        let assignment = self.assignment.iter().map(|images| images.iter().map(|s| next.apply(s)).collect()).collect();
        Ok(Self { source: self.source.clone(), target: next.target.clone(), assignment })
    }

    /// Levelwise injective: nondegenerate cells go injectively to
    /// nondegenerate cells.
    pub fn is_injective(&self) -> bool {
        self.assignment.iter().all(|images| {
            let mut seen = BTreeSet::new();
            images.iter().all(|s| !s.is_degenerate() && seen.insert((s.cell_dim(), s.cell())))
        })
    }

    pub fn is_isomorphism(&self) -> bool {
        self.is_injective() && self.source.cell_counts() == self.target.cell_counts()
    }

    pub fn same_assignment(&self, other: &SimplicialMap) -> bool {
        self.assignment == other.assignment
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial::{standard, StandardKind};

    #[test]
    fn identity_is_an_isomorphism() {
        let x = Arc::new(standard(StandardKind::Boundary(3)).unwrap());
        let id = SimplicialMap::identity(x.clone());
        assert!(SimplicialMap::new(x.clone(), x, id.assignment().to_vec()).is_ok());
        assert!(id.is_isomorphism());
    }

    #[test]
    fn rejects_non_commuting_assignment() {
        let x = Arc::new(standard(StandardKind::Simplex(1)).unwrap());
        // swap the endpoints but keep the edge: d0 no longer commutes
        let assignment = alloc::vec![
            alloc::vec![Simplex::nondegenerate(0, 1), Simplex::nondegenerate(0, 0)],
            alloc::vec![Simplex::nondegenerate(1, 0)],
        ];
        assert!(matches!(SimplicialMap::new(x.clone(), x, assignment), Err(Error::NotSimplicial(_))));
    }
}
