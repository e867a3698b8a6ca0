use alloc::format;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use super::{walking_arrow, CatFunctor, FinCategory};
use crate::{Error, Result};

/// A reflexive, transitive relation on `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Preorder {
    le: Vec<Vec<bool>>,
}

impl Preorder {
    pub fn new(le: Vec<Vec<bool>>) -> Result<Self> {
        let n = le.len();
        if le.iter().any(|row| row.len() != n) {
            return Err(Error::InvalidInput("preorder relation is not square".into()));
        }
        for a in 0..n {
            if !le[a][a] {
                return Err(Error::InvalidInput(format!("preorder is not reflexive at {a}")));
            }
            for b in 0..n {
                for c in 0..n {
                    if le[a][b] && le[b][c] && !le[a][c] {
                        return Err(Error::InvalidInput(format!("preorder is not transitive at ({a}, {b}, {c})")));
                    }
                }
            }
        }
        Ok(Self { le })
    }

    pub fn size(&self) -> usize {
        self.le.len()
    }

    pub fn le(&self, a: usize, b: usize) -> bool {
        self.le[a][b]
    }

    /// `a <= b` but not `b <= a`.
    pub fn lt(&self, a: usize, b: usize) -> bool {
        self.le[a][b] && !self.le[b][a]
    }

    pub fn equivalent(&self, a: usize, b: usize) -> bool {
        self.le[a][b] && self.le[b][a]
    }

    pub fn is_total(&self) -> bool {
        (0..self.size()).all(|a| (0..self.size()).all(|b| self.le[a][b] || self.le[b][a]))
    }

    /// Whether every relation of `other` also holds here.
    pub fn contains(&self, other: &Preorder) -> bool {
        other.size() == self.size()
            && (0..self.size()).all(|a| (0..self.size()).all(|b| !other.le[a][b] || self.le[a][b]))
    }

    /// Equivalence classes of mutual comparability, each sorted, listed by
    /// smallest member.
    pub fn classes(&self) -> Vec<Vec<usize>> {
        let mut class_of = vec![usize::MAX; self.size()];
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for a in 0..self.size() {
            if class_of[a] == usize::MAX {
                let members: Vec<usize> = (a..self.size()).filter(|&b| self.equivalent(a, b)).collect();
                for &b in &members {
                    class_of[b] = classes.len();
                }
                classes.push(members);
            }
        }
        classes
    }
}

/// `x <= y` iff some morphism `x -> y` exists.
pub fn preorder_of(c: &FinCategory) -> Preorder {
    let n = c.object_count();
    let le = (0..n).map(|x| (0..n).map(|y| !c.hom(x, y).is_empty()).collect()).collect();
    Preorder { le }
}

/// Extends a preorder to a total preorder with the same equivalence classes:
/// the quotient partial order is sorted topologically, always taking the
/// available class with the smallest member first.
pub fn szpilrajn_extend(p: &Preorder) -> Preorder {
    let classes = p.classes();
    let k = classes.len();
    let below = |i: usize, j: usize| i != j && p.le(classes[i][0], classes[j][0]);
    let mut indegree: Vec<usize> = (0..k).map(|j| (0..k).filter(|&i| below(i, j)).count()).collect();
    let mut done = vec![false; k];
    let mut rank = vec![0; k];
    for position in 0..k {
        let next = (0..k).find(|&j| !done[j] && indegree[j] == 0).expect("the quotient of a preorder is acyclic");
        done[next] = true;
        rank[next] = position;
        for j in 0..k {
            if below(next, j) {
                indegree[j] -= 1;
            }
        }
    }
    let mut rank_of = vec![0; p.size()];
    for (i, members) in classes.iter().enumerate() {
        for &a in members {
            rank_of[a] = rank[i];
        }
    }
    let le = (0..p.size()).map(|a| (0..p.size()).map(|b| rank_of[a] <= rank_of[b]).collect()).collect();
    Preorder { le }
}

/// Where a threshold retraction puts the pivot.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Cut {
    /// Objects strictly below the pivot go to `0`, the rest to `1`.
    Below,
    /// Objects at or below the pivot go to `0`, the rest to `1`.
    Above,
}

/// The functor `F -> {0 -> 1}` cutting the total preorder `q` at `pivot`.
pub fn threshold_retraction(f: &Arc<FinCategory>, q: &Preorder, pivot: usize, cut: Cut) -> Result<CatFunctor> {
    if q.size() != f.object_count() || pivot >= f.object_count() {
        return Err(Error::InvalidInput("preorder or pivot does not match the category".into()));
    }
    let arrow = Arc::new(walking_arrow());
    let objects: Vec<usize> = (0..f.object_count())
        .map(|z| {
            let low = match cut {
                Cut::Below => q.lt(z, pivot),
                Cut::Above => q.le(z, pivot),
            };
            usize::from(!low)
        })
        .collect();
    let mut morphisms = Vec::with_capacity(f.morphism_count());
    for (g, mor) in f.morphisms().iter().enumerate() {
        let (s, t) = (objects[mor.src], objects[mor.dst]);
        match arrow.hom(s, t) {
            [h] => morphisms.push(*h),
            _ => {
                return Err(Error::NotAFunctor(format!(
                    "{} goes from the upper part of the cut to the lower part",
                    f.morphism(g).label
                )))
            }
        }
    }
    CatFunctor::new(f.clone(), arrow, objects, morphisms)
}

/// The functor `{0 -> 1} -> F` picking out the morphism `g`.
pub fn edge_inclusion(f: &Arc<FinCategory>, g: usize) -> Result<CatFunctor> {
    let arrow = Arc::new(walking_arrow());
    let mor = f.morphism(g);
    let morphisms = vec![f.identity(mor.src), g, f.identity(mor.dst)];
    CatFunctor::new(arrow, f.clone(), vec![mor.src, mor.dst], morphisms)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::{discrete, FinPoset};

    #[test]
    fn antichain_extends_by_index() {
        let q = szpilrajn_extend(&preorder_of(&discrete(&["a", "b"])));
        assert!(q.is_total());
        assert!(q.lt(0, 1));
    }

    #[test]
    fn total_orders_are_fixed() {
        let p = preorder_of(&FinPoset::chain(4).to_category());
        assert_eq!(szpilrajn_extend(&p), p);
    }

    #[test]
    fn cube_extension_contains_the_cube() {
        let p = preorder_of(&FinPoset::cube(3).to_category());
        let q = szpilrajn_extend(&p);
        assert!(q.is_total() && q.contains(&p));
        let strict = (0..8).flat_map(|a| (0..8).map(move |b| (a, b))).filter(|&(a, b)| p.lt(a, b)).count();
        assert_eq!(strict, 19);
    }

    #[test]
    fn cuts_of_small_chains() {
        let arrow = Arc::new(FinPoset::chain(2).to_category());
        let q = szpilrajn_extend(&preorder_of(&arrow));
        assert_eq!(threshold_retraction(&arrow, &q, 1, Cut::Below).unwrap().object_map(), &[0, 1]);
        assert_eq!(threshold_retraction(&arrow, &q, 0, Cut::Above).unwrap().object_map(), &[0, 1]);
        assert_eq!(threshold_retraction(&arrow, &q, 0, Cut::Below).unwrap().object_map(), &[1, 1]);

        let chain = Arc::new(FinPoset::chain(3).to_category());
        let q = szpilrajn_extend(&preorder_of(&chain));
        let r = threshold_retraction(&chain, &q, 1, Cut::Below).unwrap();
        assert_eq!(r.object_map(), &[0, 1, 1]);
        let up = chain.hom(0, 1)[0];
        let composite = edge_inclusion(&chain, up).unwrap().then(&r).unwrap();
        assert!(composite.same_assignment(&CatFunctor::identity(composite.source().clone())));
    }

    #[test]
    fn cut_against_the_order_is_rejected() {
        let arrow = Arc::new(FinPoset::chain(2).to_category());
        // a total preorder that reverses the arrow
        let reversed = Preorder::new(vec![vec![true, false], vec![true, true]]).unwrap();
        assert!(matches!(threshold_retraction(&arrow, &reversed, 1, Cut::Above), Err(Error::NotAFunctor(_))));
    }
}
