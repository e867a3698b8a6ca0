//! Finite categories, finite posets and finitely presented categories.
//!
//! Composition is written diagrammatically throughout: `then(f, g)` is "`f`
//! followed by `g`" and paths of generating arrows are listed in the order
//! they are traversed.

mod constructions;
mod iso;
mod nerve;
mod order;
mod poset;
mod presentation;

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::{Error, Result};

pub use constructions::{
    cat_product, cat_pushout, cosieve_generated, full_subcategory, is_cosieve, is_sieve, product_functor, CatProduct,
    CatPushout, PushoutCategory, Subcategory,
};
pub use iso::{find_isomorphism, iso_check, CatIsomorphism, DEFAULT_ISO_CAP};
pub use nerve::{fundamental_category, nerve, nerve_map};
pub use order::{edge_inclusion, preorder_of, szpilrajn_extend, threshold_retraction, Cut, Preorder};
pub use poset::{poset_to_category, FinPoset};
pub use presentation::{saturate, Arrow, CatPresentation, Saturated, DEFAULT_MAX_PATH_LEN, DEFAULT_PATH_BUDGET};

const NONE: usize = usize::MAX;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Morphism {
    pub src: usize,
    pub dst: usize,
    pub label: String,
}

/// A category with finitely many objects and morphisms and an explicit
/// composition table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinCategory {
    objects: Vec<String>,
    morphisms: Vec<Morphism>,
    identities: Vec<usize>,
    hom: Vec<Vec<Vec<usize>>>,
    table: Vec<usize>,
}

impl FinCategory {
    /// Builds and verifies a category. `compose(f, g)` is only called on
    /// composable pairs and must return the morphism `f ; g`.
    pub fn new(
        objects: Vec<String>,
        morphisms: Vec<Morphism>,
        identities: Vec<usize>,
        compose: impl FnMut(usize, usize) -> usize,
    ) -> Result<Self> {
        let cat = Self::assemble(objects, morphisms, identities, compose)?;
        cat.check_laws()?;
        Ok(cat)
    }

    pub(crate) fn assemble(
        objects: Vec<String>,
        morphisms: Vec<Morphism>,
        identities: Vec<usize>,
        mut compose: impl FnMut(usize, usize) -> usize,
    ) -> Result<Self> {
        let bad = |msg: String| Err(Error::InvalidCategory(msg));
        let n = objects.len();
        let m = morphisms.len();
        if identities.len() != n {
            return bad(format!("{} identities for {n} objects", identities.len()));
        }
        let mut hom = vec![vec![Vec::new(); n]; n];
        for (id, f) in morphisms.iter().enumerate() {
            if f.src >= n || f.dst >= n {
                return bad(format!("morphism {} has an endpoint out of range", f.label));
            }
            hom[f.src][f.dst].push(id);
        }
        for (x, &e) in identities.iter().enumerate() {
            if e >= m || morphisms[e].src != x || morphisms[e].dst != x {
                return bad(format!("identity of {} is not an endomorphism of it", objects[x]));
            }
        }
        let mut table = vec![NONE; m * m];
        for f in 0..m {
            let mid = morphisms[f].dst;
            for y in 0..n {
                for &g in &hom[mid][y] {
                    let h = compose(f, g);
                    if h >= m || morphisms[h].src != morphisms[f].src || morphisms[h].dst != y {
                        return bad(format!(
                            "composite of {} and {} has the wrong endpoints",
                            morphisms[f].label, morphisms[g].label
                        ));
                    }
                    table[f * m + g] = h;
                }
            }
        }
        Ok(Self { objects, morphisms, identities, hom, table })
    }

    /// Identity and associativity laws, checked over every composable pair
    /// and triple.
    pub fn check_laws(&self) -> Result<()> {
        for (f, mor) in self.morphisms.iter().enumerate() {
            if self.then(self.identities[mor.src], f) != f || self.then(f, self.identities[mor.dst]) != f {
                return Err(Error::InvalidCategory(format!("identity law fails at {}", mor.label)));
            }
        }
        for f in 0..self.morphisms.len() {
            for g in self.out_of(self.morphisms[f].dst) {
                let fg = self.then(f, g);
                for h in self.out_of(self.morphisms[g].dst) {
                    if self.then(fg, h) != self.then(f, self.then(g, h)) {
                        return Err(Error::InvalidCategory(format!(
                            "associativity fails at ({}, {}, {})",
                            self.morphisms[f].label, self.morphisms[g].label, self.morphisms[h].label
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn morphism_count(&self) -> usize {
        self.morphisms.len()
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn object_name(&self, x: usize) -> &str {
        &self.objects[x]
    }

    pub fn object_index(&self, name: &str) -> Option<usize> {
        self.objects.iter().position(|o| o == name)
    }

    pub fn morphisms(&self) -> &[Morphism] {
        &self.morphisms
    }

    pub fn morphism(&self, f: usize) -> &Morphism {
        &self.morphisms[f]
    }

    pub fn identity(&self, x: usize) -> usize {
        self.identities[x]
    }

    pub fn is_identity(&self, f: usize) -> bool {
        self.identities[self.morphisms[f].src] == f
    }

    pub fn hom(&self, x: usize, y: usize) -> &[usize] {
        &self.hom[x][y]
    }

    /// `f` followed by `g`. Panics if they are not composable.
    pub fn then(&self, f: usize, g: usize) -> usize {
        let h = self.table[f * self.morphisms.len() + g];
        assert!(h != NONE, "morphisms {} and {} are not composable", self.morphisms[f].label, self.morphisms[g].label);
        h
    }

    pub fn try_then(&self, f: usize, g: usize) -> Option<usize> {
        let h = self.table[f * self.morphisms.len() + g];
        (h != NONE).then_some(h)
    }

    /// Morphisms with source `x`.
    pub fn out_of(&self, x: usize) -> impl Iterator<Item = usize> + '_ {
        self.hom[x].iter().flatten().copied()
    }

    /// Morphisms with target `y`.
    pub fn into(&self, y: usize) -> impl Iterator<Item = usize> + '_ {
        self.hom.iter().flat_map(move |row| row[y].iter().copied())
    }

    pub fn nonidentity_morphisms(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.morphisms.len()).filter(|&f| !self.is_identity(f))
    }

    /// Whether every morphism is an identity or has distinct endpoints and
    /// the relation "a nonidentity morphism `x -> y` exists" has no cycles.
    pub fn is_loop_free(&self) -> bool {
        self.topological_order().is_some()
    }

    /// Objects sorted so that nonidentity morphisms go forward, if possible.
    pub fn topological_order(&self) -> Option<Vec<usize>> {
        let n = self.objects.len();
        let mut indegree = vec![0usize; n];
        for f in self.nonidentity_morphisms() {
            let mor = &self.morphisms[f];
            if mor.src == mor.dst {
                return None;
            }
            indegree[mor.dst] += 1;
        }
        let mut ready: Vec<usize> = (0..n).filter(|&x| indegree[x] == 0).rev().collect();
        let mut order = Vec::with_capacity(n);
        while let Some(x) = ready.pop() {
            order.push(x);
            for f in self.out_of(x).collect::<Vec<_>>() {
                if self.is_identity(f) {
                    continue;
                }
                let y = self.morphisms[f].dst;
                indegree[y] -= 1;
                if indegree[y] == 0 {
                    ready.push(y);
                    ready.sort_unstable_by(|a, b| b.cmp(a));
                }
            }
        }
        (order.len() == n).then_some(order)
    }

    /// An object `t` with `hom(a, t)` a singleton for every `a`.
    pub fn terminal_object(&self) -> Option<usize> {
        (0..self.objects.len()).find(|&t| (0..self.objects.len()).all(|a| self.hom[a][t].len() == 1))
    }

    pub fn initial_object(&self) -> Option<usize> {
        (0..self.objects.len()).find(|&i| (0..self.objects.len()).all(|a| self.hom[i][a].len() == 1))
    }

    /// Whether there is at most one morphism between any two objects and no
    /// two distinct objects are isomorphic.
    pub fn is_poset(&self) -> bool {
        let n = self.objects.len();
        (0..n).all(|x| {
            (0..n).all(|y| {
                self.hom[x][y].len() <= 1 && (x == y || self.hom[x][y].is_empty() || self.hom[y][x].is_empty())
            })
        })
    }

    pub fn summary(&self) -> String {
        format!("{} objects, {} morphisms", self.objects.len(), self.morphisms.len())
    }
}

/// The category with one object and only its identity.
pub fn terminal_category() -> FinCategory {
    discrete(&["*"])
}

pub fn discrete(names: &[&str]) -> FinCategory {
    let objects: Vec<String> = names.iter().map(|&s| s.into()).collect();
    let morphisms =
        objects.iter().enumerate().map(|(x, o)| Morphism { src: x, dst: x, label: format!("id({o})") }).collect();
    let identities = (0..objects.len()).collect();
    FinCategory::assemble(objects, morphisms, identities, |f, _| f).expect("discrete categories are valid")
}

/// The walking arrow `{0 -> 1}`.
pub fn walking_arrow() -> FinCategory {
    FinPoset::chain(2).to_category()
}

/// A functor between finite categories.
#[derive(Clone, Debug)]
pub struct CatFunctor {
    source: Arc<FinCategory>,
    target: Arc<FinCategory>,
    objects: Vec<usize>,
    morphisms: Vec<usize>,
}

impl CatFunctor {
    /// Verifies endpoints, identities and every composite.
    pub fn new(
        source: Arc<FinCategory>,
        target: Arc<FinCategory>,
        objects: Vec<usize>,
        morphisms: Vec<usize>,
    ) -> Result<Self> {
        let functor = Self { source, target, objects, morphisms };
        functor.check()?;
        Ok(functor)
    }

    fn check(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::NotAFunctor(msg));
        let (s, t) = (&self.source, &self.target);
        if self.objects.len() != s.object_count() || self.morphisms.len() != s.morphism_count() {
            return bad("assignment sizes do not match the source".into());
        }
        if self.objects.iter().any(|&y| y >= t.object_count())
            || self.morphisms.iter().any(|&g| g >= t.morphism_count())
        {
            return bad("assignment leaves the target".into());
        }
        for (f, mor) in s.morphisms().iter().enumerate() {
            let image = t.morphism(self.morphisms[f]);
            if image.src != self.objects[mor.src] || image.dst != self.objects[mor.dst] {
                return bad(format!("{} is sent to a morphism with the wrong endpoints", mor.label));
            }
        }
        for x in 0..s.object_count() {
            if self.morphisms[s.identity(x)] != t.identity(self.objects[x]) {
                return bad(format!("identity of {} is not preserved", s.object_name(x)));
            }
        }
        for f in 0..s.morphism_count() {
            for g in s.out_of(s.morphism(f).dst) {
                if self.morphisms[s.then(f, g)] != t.then(self.morphisms[f], self.morphisms[g]) {
                    return bad(format!(
                        "composite of {} and {} is not preserved",
                        s.morphism(f).label,
                        s.morphism(g).label
                    ));
                }
            }
        }
        Ok(())
    }

    pub fn identity(cat: Arc<FinCategory>) -> Self {
        let objects = (0..cat.object_count()).collect();
        let morphisms = (0..cat.morphism_count()).collect();
        Self { source: cat.clone(), target: cat, objects, morphisms }
    }

    /// The functor sending every object to `y` and every morphism to its identity.
    pub fn constant(source: Arc<FinCategory>, target: Arc<FinCategory>, y: usize) -> Self {
        let objects = vec![y; source.object_count()];
        let morphisms = vec![target.identity(y); source.morphism_count()];
        Self { source, target, objects, morphisms }
    }

    pub fn source(&self) -> &Arc<FinCategory> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FinCategory> {
        &self.target
    }

    pub fn on_object(&self, x: usize) -> usize {
        self.objects[x]
    }

    pub fn on_morphism(&self, f: usize) -> usize {
        self.morphisms[f]
    }

    pub fn object_map(&self) -> &[usize] {
        &self.objects
    }

    pub fn morphism_map(&self) -> &[usize] {
        &self.morphisms
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &CatFunctor) -> Result<CatFunctor> {
        if *self.target != *next.source {
            return Err(Error::NotAFunctor("composite of functors with mismatched ends".into()));
        }
        Ok(Self {
            source: self.source.clone(),
            target: next.target.clone(),
            objects: self.objects.iter().map(|&y| next.objects[y]).collect(),
            morphisms: self.morphisms.iter().map(|&g| next.morphisms[g]).collect(),
        })
    }

    pub fn is_injective_on_objects(&self) -> bool {
        let mut seen = vec![false; self.target.object_count()];
        self.objects.iter().all(|&y| !core::mem::replace(&mut seen[y], true))
    }

    /// Injective on objects and bijective on every hom-set.
    pub fn is_full_embedding(&self) -> bool {
        let s = &self.source;
        self.is_injective_on_objects()
            && (0..s.object_count()).all(|x| {
                (0..s.object_count()).all(|y| {
                    let mut images: Vec<usize> = s.hom(x, y).iter().map(|&f| self.morphisms[f]).collect();
                    images.sort_unstable();
                    images.dedup();
                    images.len() == s.hom(x, y).len()
                        && images.len() == self.target.hom(self.objects[x], self.objects[y]).len()
                })
            })
    }

    pub fn is_isomorphism(&self) -> bool {
        self.is_full_embedding() && self.source.object_count() == self.target.object_count()
    }

    pub fn same_assignment(&self, other: &CatFunctor) -> bool {
        self.objects == other.objects && self.morphisms == other.morphisms
    }

    /// Objects of the target hit by the functor, sorted.
    pub fn object_image(&self) -> Vec<usize> {
        let mut image = self.objects.clone();
        image.sort_unstable();
        image.dedup();
        image
    }
}

/// A natural transformation between parallel functors.
#[derive(Clone, Debug)]
pub struct NatTransformation {
    from: CatFunctor,
    to: CatFunctor,
    components: Vec<usize>,
}

impl NatTransformation {
    pub fn new(from: CatFunctor, to: CatFunctor, components: Vec<usize>) -> Result<Self> {
        let bad = |msg: String| Err(Error::NotNatural(msg));
        if *from.source != *to.source || *from.target != *to.target {
            return bad("functors are not parallel".into());
        }
        let (s, t) = (&from.source, &from.target);
        if components.len() != s.object_count() {
            return bad("one component per object is required".into());
        }
        for (x, &c) in components.iter().enumerate() {
            let mor = t.morphisms().get(c).ok_or(Error::NotNatural("component out of range".into()))?;
            if mor.src != from.on_object(x) || mor.dst != to.on_object(x) {
                return bad(format!("component at {} has the wrong endpoints", s.object_name(x)));
            }
        }
        for (f, mor) in s.morphisms().iter().enumerate() {
            let left = t.then(from.on_morphism(f), components[mor.dst]);
            let right = t.then(components[mor.src], to.on_morphism(f));
            if left != right {
                return bad(format!("naturality square at {} does not commute", mor.label));
            }
        }
        Ok(Self { from, to, components })
    }

    pub fn identity(functor: CatFunctor) -> Self {
        let components = functor.objects.iter().map(|&y| functor.target.identity(y)).collect();
        Self { from: functor.clone(), to: functor, components }
    }

    pub fn from(&self) -> &CatFunctor {
        &self.from
    }

    pub fn to(&self) -> &CatFunctor {
        &self.to
    }

    pub fn component(&self, x: usize) -> usize {
        self.components[x]
    }

    pub fn components(&self) -> &[usize] {
        &self.components
    }

    pub fn is_identity(&self) -> bool {
        self.from.same_assignment(&self.to)
            && self.components.iter().enumerate().all(|(x, &c)| c == self.from.target.identity(self.from.on_object(x)))
    }

    /// Whiskering `F ∘ self`: restrict along a functor into the source.
    pub fn precompose(&self, functor: &CatFunctor) -> Result<NatTransformation> {
        let from = functor.then(&self.from)?;
        let to = functor.then(&self.to)?;
        let components = functor.objects.iter().map(|&x| self.components[x]).collect();
        NatTransformation::new(from, to, components)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn walking_arrow_shape() {
        let c = walking_arrow();
        assert_eq!(c.object_count(), 2);
        assert_eq!(c.morphism_count(), 3);
        assert_eq!(c.terminal_object(), Some(1));
        assert_eq!(c.initial_object(), Some(0));
        assert!(c.is_loop_free());
        assert!(c.is_poset());
    }

    #[test]
    fn discrete_has_no_terminal() {
        let c = discrete(&["a", "b"]);
        assert_eq!(c.morphism_count(), 2);
        assert_eq!(c.terminal_object(), None);
        assert_eq!(terminal_category().terminal_object(), Some(0));
    }

    #[test]
    fn rejects_non_associative_tables() {
        // one object, morphisms {e, a, b}; a;a = b, a;b = e, b;a = a is not associative
        let objects = vec![String::from("*")];
        let morphisms = ["e", "a", "b"].iter().map(|l| Morphism { src: 0, dst: 0, label: (*l).into() }).collect();
        let table = [[0, 1, 2], [1, 2, 0], [2, 1, 0]];
        let result = FinCategory::new(objects, morphisms, vec![0], |f, g| table[f][g]);
        assert!(matches!(result, Err(Error::InvalidCategory(_))));
    }

    #[test]
    fn functor_checks() {
        let arrow = Arc::new(walking_arrow());
        let point = Arc::new(terminal_category());
        let collapse = CatFunctor::constant(arrow.clone(), point.clone(), 0);
        assert!(CatFunctor::new(arrow.clone(), point.clone(), vec![0, 0], vec![0, 0, 0]).is_ok());
        assert!(collapse.then(&CatFunctor::identity(point)).is_ok());
        // swapping the objects cannot carry the arrow anywhere
        let swapped = CatFunctor::new(arrow.clone(), arrow.clone(), vec![1, 0], vec![2, 1, 0]);
        assert!(matches!(swapped, Err(Error::NotAFunctor(_))));
    }

    #[test]
    fn naturality_is_checked() {
        let arrow = Arc::new(walking_arrow());
        let zero = CatFunctor::constant(arrow.clone(), arrow.clone(), 0);
        let id = CatFunctor::identity(arrow.clone());
        let up = arrow.hom(0, 1)[0];
        let eps = NatTransformation::new(zero.clone(), id.clone(), vec![arrow.identity(0), up]).unwrap();
        assert!(!eps.is_identity());
        assert!(NatTransformation::new(id, zero, vec![arrow.identity(0), up]).is_err());
    }
}
