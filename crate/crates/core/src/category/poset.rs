use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use super::{FinCategory, Morphism};
use crate::{Error, Result};

/// A finite partially ordered set, stored as its full order relation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinPoset {
    objects: Vec<String>,
    leq: Vec<Vec<bool>>,
}

impl FinPoset {
    pub fn new(objects: Vec<String>, leq: Vec<Vec<bool>>) -> Result<Self> {
        let n = objects.len();
        if leq.len() != n || leq.iter().any(|row| row.len() != n) {
            return Err(Error::InvalidPoset(format!("order relation is not {n}x{n}")));
        }
        for a in 0..n {
            if !leq[a][a] {
                return Err(Error::InvalidPoset(format!("{} is not below itself", objects[a])));
            }
            for b in 0..n {
                if a != b && leq[a][b] && leq[b][a] {
                    return Err(Error::InvalidPoset(format!("{} and {} are below each other", objects[a], objects[b])));
                }
                for c in 0..n {
                    if leq[a][b] && leq[b][c] && !leq[a][c] {
                        return Err(Error::InvalidPoset(format!(
                            "{} <= {} <= {} but not {} <= {}",
                            objects[a], objects[b], objects[c], objects[a], objects[c]
                        )));
                    }
                }
            }
        }
        Ok(Self { objects, leq })
    }

    /// The reflexive-transitive closure of the given pairs `a <= b`.
    pub fn from_relations(objects: Vec<String>, pairs: &[(usize, usize)]) -> Result<Self> {
        let n = objects.len();
        let mut leq = vec![vec![false; n]; n];
        for (a, row) in leq.iter_mut().enumerate() {
            row[a] = true;
        }
        for &(a, b) in pairs {
            if a >= n || b >= n {
                return Err(Error::InvalidPoset(format!("relation ({a}, {b}) out of range")));
            }
            leq[a][b] = true;
        }
        for k in 0..n {
            for a in 0..n {
                if leq[a][k] {
                    for b in 0..n {
                        if leq[k][b] {
                            leq[a][b] = true;
                        }
                    }
                }
            }
        }
        Self::new(objects, leq)
    }

    /// `0 < 1 < ⋯ < n-1`.
    pub fn chain(n: usize) -> Self {
        let objects = (0..n).map(|i| i.to_string()).collect();
        let leq = (0..n).map(|a| (0..n).map(|b| a <= b).collect()).collect();
        Self { objects, leq }
    }

    pub fn antichain(n: usize) -> Self {
        let objects = (0..n).map(|i| i.to_string()).collect();
        let leq = (0..n).map(|a| (0..n).map(|b| a == b).collect()).collect();
        Self { objects, leq }
    }

    /// `{0 -> 1}^k` with objects named by bit strings, `0⋯0` first.
    pub fn cube(k: usize) -> Self {
        let size = 1usize << k;
        let name = |x: usize| (0..k).map(|bit| if x >> (k - 1 - bit) & 1 == 1 { '1' } else { '0' }).collect::<String>();
        let objects = (0..size).map(name).collect();
        let leq = (0..size).map(|a| (0..size).map(|b| a & b == a).collect()).collect();
        Self { objects, leq }
    }

    pub fn size(&self) -> usize {
        self.objects.len()
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn name(&self, a: usize) -> &str {
        &self.objects[a]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.objects.iter().position(|o| o == name)
    }

    pub fn le(&self, a: usize, b: usize) -> bool {
        self.leq[a][b]
    }

    pub fn lt(&self, a: usize, b: usize) -> bool {
        a != b && self.leq[a][b]
    }

    /// Pairs `a < b` with nothing strictly between them.
    pub fn hasse(&self) -> Vec<(usize, usize)> {
        let n = self.size();
        let mut covers = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if self.lt(a, b) && !(0..n).any(|c| self.lt(a, c) && self.lt(c, b)) {
                    covers.push((a, b));
                }
            }
        }
        covers
    }

    /// Number of pairs `a <= b`, identities included.
    pub fn relation_count(&self) -> usize {
        self.leq.iter().flatten().filter(|&&b| b).count()
    }

    /// The induced order on `members` (kept in the given order).
    pub fn subposet(&self, members: &[usize]) -> FinPoset {
        let objects = members.iter().map(|&a| self.objects[a].clone()).collect();
        let leq = members.iter().map(|&a| members.iter().map(|&b| self.leq[a][b]).collect()).collect();
        Self { objects, leq }
    }

    /// Product order; `(a, b)` sits at index `a * other.size() + b`.
    pub fn product(&self, other: &FinPoset) -> FinPoset {
        let m = other.size();
        let mut objects = Vec::with_capacity(self.size() * m);
        for a in &self.objects {
            for b in &other.objects {
                objects.push(format!("({a},{b})"));
            }
        }
        let n = objects.len();
        let leq = (0..n).map(|x| (0..n).map(|y| self.leq[x / m][y / m] && other.leq[x % m][y % m]).collect()).collect();
        Self { objects, leq }
    }

    pub fn is_upward_closed(&self, members: &[usize]) -> bool {
        members.iter().all(|&a| (0..self.size()).all(|b| !self.le(a, b) || members.contains(&b)))
    }

    pub fn is_downward_closed(&self, members: &[usize]) -> bool {
        members.iter().all(|&a| (0..self.size()).all(|b| !self.le(b, a) || members.contains(&b)))
    }

    pub fn minimum(&self) -> Option<usize> {
        (0..self.size()).find(|&a| (0..self.size()).all(|b| self.le(a, b)))
    }

    pub fn maximum(&self) -> Option<usize> {
        (0..self.size()).find(|&a| (0..self.size()).all(|b| self.le(b, a)))
    }

    pub fn to_category(&self) -> FinCategory {
        poset_to_category(self)
    }
}

/// The category with one morphism `a -> b` for each `a <= b`.
pub fn poset_to_category(p: &FinPoset) -> FinCategory {
    let n = p.size();
    let mut index = vec![vec![usize::MAX; n]; n];
    let mut morphisms = Vec::with_capacity(p.relation_count());
    let mut identities = vec![0; n];
    for a in 0..n {
        for b in 0..n {
            if p.le(a, b) {
                index[a][b] = morphisms.len();
                let label =
                    if a == b { format!("id({})", p.name(a)) } else { format!("{}→{}", p.name(a), p.name(b)) };
                if a == b {
                    identities[a] = morphisms.len();
                }
                morphisms.push(Morphism { src: a, dst: b, label });
            }
        }
    }
    let ends: Vec<(usize, usize)> = morphisms.iter().map(|m| (m.src, m.dst)).collect();
    FinCategory::assemble(p.objects().to_vec(), morphisms, identities, |f, g| index[ends[f].0][ends[g].1])
        .expect("posets give valid categories")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn categories_of_small_posets() {
        assert_eq!(poset_to_category(&FinPoset::chain(2)).morphism_count(), 3);
        assert_eq!(poset_to_category(&FinPoset::antichain(3)).morphism_count(), 3);
        let cube = poset_to_category(&FinPoset::cube(3));
        assert_eq!(cube.object_count(), 8);
        // pairs x <= y in {0,1}^3: 3^3
        assert_eq!(cube.morphism_count(), 27);
        cube.check_laws().unwrap();
    }

    #[test]
    fn closure_and_validation() {
        let names = || ["a", "b", "c"].iter().map(|s| String::from(*s)).collect::<Vec<_>>();
        let p = FinPoset::from_relations(names(), &[(0, 1), (1, 2)]).unwrap();
        assert!(p.le(0, 2));
        assert_eq!(p.hasse(), vec![(0, 1), (1, 2)]);
        assert!(matches!(FinPoset::from_relations(names(), &[(0, 1), (1, 0)]), Err(Error::InvalidPoset(_))));
    }

    #[test]
    fn cube_names_and_closure() {
        let cube = FinPoset::cube(3);
        assert_eq!(cube.name(0), "000");
        assert_eq!(cube.name(7), "111");
        assert_eq!(cube.hasse().len(), 12);
        let top = cube.index_of("111").unwrap();
        let rest: Vec<usize> = (0..8).filter(|&x| x != top).collect();
        assert!(cube.is_downward_closed(&rest));
        assert!(!cube.is_upward_closed(&rest));
    }
}
