use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use super::{FinCategory, Morphism, NONE};
use crate::{Error, Result};

/// Default bound on generator path length for [`saturate`].
pub const DEFAULT_MAX_PATH_LEN: usize = 8;
/// Default cap on the number of enumerated paths.
pub const DEFAULT_PATH_BUDGET: usize = 1 << 20;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Arrow {
    pub name: String,
    pub src: usize,
    pub dst: usize,
}

/// Objects, generating arrows and relations between parallel paths. A path
/// is a list of arrow indices; the empty path stands for an identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatPresentation {
    objects: Vec<String>,
    arrows: Vec<Arrow>,
    relations: Vec<(Vec<usize>, Vec<usize>)>,
}

impl CatPresentation {
    pub fn new(objects: Vec<String>, arrows: Vec<Arrow>, relations: Vec<(Vec<usize>, Vec<usize>)>) -> Result<Self> {
        let bad = |msg: String| Err(Error::InvalidPresentation(msg));
        let mut names = BTreeSet::new();
        for a in &arrows {
            if a.src >= objects.len() || a.dst >= objects.len() {
                return bad(format!("arrow {} has an endpoint out of range", a.name));
            }
            if !names.insert(a.name.as_str()) {
                return bad(format!("arrow name {} is used twice", a.name));
            }
        }
        let pres = Self { objects, arrows, relations };
        for (lhs, rhs) in &pres.relations {
            let ends = |p: &[usize]| pres.path_ends(p);
            match (ends(lhs), ends(rhs)) {
                (Err(e), _) | (_, Err(e)) => return Err(e),
                (Ok(Some(l)), Ok(Some(r))) if l != r => {
                    return bad(format!("relation {lhs:?} ~ {rhs:?} is not parallel"))
                }
                (Ok(Some((s, t))), Ok(None)) | (Ok(None), Ok(Some((s, t)))) if s != t => {
                    return bad(format!("relation {lhs:?} ~ {rhs:?} equates a non-loop with an identity"))
                }
                _ => {}
            }
        }
        Ok(pres)
    }

    /// Endpoints of a nonempty composable path, `None` for the empty path.
    pub fn path_ends(&self, path: &[usize]) -> Result<Option<(usize, usize)>> {
        let Some((&first, _)) = path.split_first() else {
            return Ok(None);
        };
        let arrow = |a: usize| {
            self.arrows.get(a).ok_or_else(|| Error::InvalidPresentation(format!("arrow index {a} out of range")))
        };
        let mut at = arrow(first)?.dst;
        for &a in &path[1..] {
            let next = arrow(a)?;
            if next.src != at {
                return Err(Error::InvalidPresentation(format!("path {path:?} is not composable")));
            }
            at = next.dst;
        }
        Ok(Some((arrow(first)?.src, at)))
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn relations(&self) -> &[(Vec<usize>, Vec<usize>)] {
        &self.relations
    }

    pub fn arrow_index(&self, name: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.name == name)
    }

    pub fn render_path(&self, object: usize, path: &[usize]) -> String {
        if path.is_empty() {
            format!("id({})", self.objects[object])
        } else {
            let names: Vec<&str> = path.iter().map(|&a| self.arrows[a].name.as_str()).collect();
            names.join(";")
        }
    }
}

/// A saturated presentation: the category it presents, the morphism named by
/// each generating arrow and the chosen representative path of each morphism.
#[derive(Clone, Debug)]
pub struct Saturated {
    pub presentation: CatPresentation,
    pub category: FinCategory,
    pub arrow_morphisms: Vec<usize>,
    pub representatives: Vec<Vec<usize>>,
    /// The path length bound at which the classes stabilized.
    pub bound: usize,
}

impl Saturated {
    /// The morphism named by a composable path starting at `object`.
    pub fn eval_path(&self, object: usize, path: &[usize]) -> usize {
        path.iter().fold(self.category.identity(object), |f, &a| self.category.then(f, self.arrow_morphisms[a]))
    }
}

/// All generator paths up to the current length bound, as a prefix tree
/// numbered by length. Path `x < objects` is the empty path at `x`.
struct Paths {
    src: Vec<usize>,
    dst: Vec<usize>,
    len: Vec<usize>,
    last: Vec<usize>,
    first: Vec<usize>,
    prefix: Vec<usize>,
    suffix: Vec<usize>,
    child_start: Vec<usize>,
    level_end: Vec<usize>,
    out: Vec<Vec<usize>>,
    slot: Vec<usize>,
    arrow_dst: Vec<usize>,
}

impl Paths {
    fn new(pres: &CatPresentation) -> Self {
        let n = pres.objects.len();
        let mut out = vec![Vec::new(); n];
        let mut slot = vec![0; pres.arrows.len()];
        for (a, arrow) in pres.arrows.iter().enumerate() {
            slot[a] = out[arrow.src].len();
            out[arrow.src].push(a);
        }
        Self {
            src: (0..n).collect(),
            dst: (0..n).collect(),
            len: vec![0; n],
            last: vec![NONE; n],
            first: vec![NONE; n],
            prefix: vec![NONE; n],
            suffix: vec![NONE; n],
            child_start: Vec::new(),
            level_end: vec![n],
            out,
            slot,
            arrow_dst: pres.arrows.iter().map(|a| a.dst).collect(),
        }
    }

    fn count(&self) -> usize {
        self.src.len()
    }

    fn bound(&self) -> usize {
        self.level_end.len() - 1
    }

    /// Paths of length below `k`.
    fn shorter_than(&self, k: usize) -> usize {
        if k == 0 {
            0
        } else {
            self.level_end[k - 1]
        }
    }

    fn child(&self, p: usize, a: usize) -> usize {
        self.child_start[p] + self.slot[a]
    }

    fn extend(&mut self, budget: usize) -> Result<()> {
        let start = self.shorter_than(self.bound());
        let end = self.count();
        for p in start..end {
            self.child_start.push(self.count());
            for i in 0..self.out[self.dst[p]].len() {
                let a = self.out[self.dst[p]][i];
                if self.count() >= budget {
                    return Err(Error::PathBudgetExceeded { budget });
                }
                let (first, suffix) = if self.len[p] == 0 {
                    (a, self.arrow_dst[a])
                } else {
                    (self.first[p], self.child(self.suffix[p], a))
                };
                self.src.push(self.src[p]);
                self.dst.push(self.arrow_dst[a]);
                self.len.push(self.len[p] + 1);
                self.last.push(a);
                self.first.push(first);
                self.prefix.push(p);
                self.suffix.push(suffix);
            }
        }
        self.level_end.push(self.count());
        Ok(())
    }

    fn arrows_of(&self, mut p: usize) -> Vec<usize> {
        let mut path = Vec::with_capacity(self.len[p]);
        while self.len[p] > 0 {
            path.push(self.last[p]);
            p = self.prefix[p];
        }
        path.reverse();
        path
    }

    fn lookup(&self, object: usize, path: &[usize]) -> Option<usize> {
        (path.len() <= self.bound()).then(|| path.iter().fold(object, |p, &a| self.child(p, a)))
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn grow(&mut self, n: usize) {
        let start = self.parent.len();
        self.parent.extend(start..n);
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Merges so that the smaller index stays the root.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (keep, drop) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[drop] = keep;
        true
    }
}

/// Closes the partition under one-arrow whiskering on either side, as far as
/// the enumerated paths reach.
fn close(paths: &Paths, uf: &mut UnionFind) {
    let start = paths.shorter_than(1);
    loop {
        let mut merged = false;
        for side in 0..2 {
            let mut keys: Vec<(usize, usize, usize)> = (start..paths.count())
                .map(|p| {
                    if side == 0 {
                        (uf.find(paths.prefix[p]), paths.last[p], p)
                    } else {
                        (paths.first[p], uf.find(paths.suffix[p]), p)
                    }
                })
                .collect();
            keys.sort_unstable();
            for pair in keys.windows(2) {
                if pair[0].0 == pair[1].0 && pair[0].1 == pair[1].1 {
                    merged |= uf.union(pair[0].2, pair[1].2);
                }
            }
        }
        if !merged {
            break;
        }
    }
}

/// Decides a presentation by bounded congruence closure.
///
/// For `b = 1, 2, …, max_path_len` the generator paths of length at most `b`
/// are enumerated and the relations closed under whiskering. The category is
/// returned at the first `b` where every path of length `b` is equivalent to a
/// shorter one, the classes of shorter paths agree with those found at bound
/// `b - 1`, and the resulting composition table satisfies the category laws
/// and every relation. Representatives are shortest, then lexicographically
/// smallest.
pub fn saturate(pres: &CatPresentation, max_path_len: usize) -> Result<Saturated> {
    saturate_with_budget(pres, max_path_len, DEFAULT_PATH_BUDGET)
}

pub fn saturate_with_budget(pres: &CatPresentation, max_path_len: usize, budget: usize) -> Result<Saturated> {
    if max_path_len == 0 {
        return Err(Error::InvalidInput("path length bound must be at least 1".into()));
    }
    let n = pres.objects.len();
    let mut paths = Paths::new(pres);
    let mut uf = UnionFind { parent: (0..n).collect() };
    let mut previous: Vec<usize> = (0..n).collect();
    let mut witness = String::new();
    for b in 1..=max_path_len {
        paths.extend(budget)?;
        uf.grow(paths.count());
        for (lhs, rhs) in &pres.relations {
            let object = match (lhs.first(), rhs.first()) {
                (Some(&a), _) | (None, Some(&a)) => pres.arrows[a].src,
                (None, None) => continue,
            };
            if let (Some(x), Some(y)) = (paths.lookup(object, lhs), paths.lookup(object, rhs)) {
                uf.union(x, y);
            }
        }
        close(&paths, &mut uf);

        let shorter = paths.shorter_than(b);
        let mut stable = true;
        let mut seen: BTreeMap<usize, usize> = BTreeMap::new();
        for (p, &before) in previous.iter().enumerate().take(shorter) {
            let now = uf.find(p);
            if *seen.entry(now).or_insert(before) != before {
                stable = false;
                witness = format!(
                    "classes of paths shorter than {b} changed between bounds {} and {b}, e.g. at {}",
                    b - 1,
                    pres.render_path(paths.src[p], &paths.arrows_of(p))
                );
                break;
            }
        }
        if stable {
            let mut has_short = vec![false; paths.count()];
            for p in 0..shorter {
                let r = uf.find(p);
                has_short[r] = true;
            }
            let long = (shorter..paths.count()).find(|&p| !has_short[uf.find(p)]);
            match long {
                Some(p) => {
                    witness = format!(
                        "composite {} has no representative shorter than {b}",
                        pres.render_path(paths.src[p], &paths.arrows_of(p))
                    );
                }
                None => match build(pres, &paths, &mut uf, b) {
                    Ok(sat) => return Ok(sat),
                    Err(reason) => witness = reason,
                },
            }
        }
        previous = (0..paths.count()).map(|p| uf.find(p)).collect();
    }
    Err(Error::NotSaturated { bound: max_path_len, witness })
}

fn build(
    pres: &CatPresentation,
    paths: &Paths,
    uf: &mut UnionFind,
    b: usize,
) -> core::result::Result<Saturated, String> {
    let shorter = paths.shorter_than(b);
    let mut best: BTreeMap<usize, (usize, Vec<usize>, usize)> = BTreeMap::new();
    for p in 0..shorter {
        let root = uf.find(p);
        let candidate = (paths.len[p], paths.arrows_of(p), p);
        match best.get(&root) {
            Some(current) if (current.0, &current.1) <= (candidate.0, &candidate.1) => {}
            _ => {
                best.insert(root, candidate);
            }
        }
    }
    let mut classes: Vec<(usize, usize, usize, Vec<usize>, usize, usize)> =
        best.into_iter().map(|(root, (len, seq, p))| (paths.src[p], paths.dst[p], len, seq, p, root)).collect();
    classes.sort_unstable();
    let mut class_of_root = vec![NONE; paths.count()];
    for (m, class) in classes.iter().enumerate() {
        class_of_root[class.5] = m;
    }
    let mut class_of = |p: usize| class_of_root[uf.find(p)];
    let rep_path: Vec<usize> = classes.iter().map(|c| c.4).collect();
    let identities: Vec<usize> = (0..pres.objects.len()).map(&mut class_of).collect();
    let arrow_morphisms: Vec<usize> =
        (0..pres.arrows.len()).map(|a| class_of(paths.child(pres.arrows[a].src, a))).collect();
    // right action of a generator on a morphism
    let mut step = vec![vec![NONE; 0]; classes.len()];
    for (m, &p) in rep_path.iter().enumerate() {
        step[m] = paths.out[paths.dst[p]].iter().map(|&a| class_of(paths.child(p, a))).collect();
    }
    let representatives: Vec<Vec<usize>> = classes.iter().map(|c| c.3.clone()).collect();
    let morphisms: Vec<Morphism> =
        classes.iter().map(|c| Morphism { src: c.0, dst: c.1, label: pres.render_path(c.0, &c.3) }).collect();
    let compose = |f: usize, g: usize| representatives[g].iter().fold(f, |h, &a| step[h][paths.slot[a]]);
    let category = FinCategory::assemble(pres.objects.clone(), morphisms, identities, compose)
        .and_then(|c| c.check_laws().map(|()| c))
        .map_err(|e| format!("classes at bound {b} do not form a category: {e}"))?;
    let sat = Saturated { presentation: pres.clone(), category, arrow_morphisms, representatives, bound: b };
    for (lhs, rhs) in &pres.relations {
        let object = match (lhs.first(), rhs.first()) {
            (Some(&a), _) | (None, Some(&a)) => pres.arrows[a].src,
            (None, None) => continue,
        };
        if sat.eval_path(object, lhs) != sat.eval_path(object, rhs) {
            return Err(format!(
                "relation {} ~ {} fails in the classes at bound {b}",
                pres.render_path(object, lhs),
                pres.render_path(object, rhs)
            ));
        }
    }
    Ok(sat)
}

impl FinCategory {
    /// A presentation of this category, with the generator path chosen for
    /// every morphism.
    ///
    /// Loop-free categories are generated by their indecomposable morphisms,
    /// with one relation `f · p(g) ~ p(f ; g)` per indecomposable `f` and
    /// nonidentity `g`. Otherwise every nonidentity morphism is a generator
    /// and the relations are the composition table.
    pub fn to_presentation(&self) -> (CatPresentation, Vec<Vec<usize>>) {
        let m = self.morphism_count();
        let mut generator = vec![NONE; m];
        let mut paths: Vec<Vec<usize>> = vec![Vec::new(); m];
        let mut arrows = Vec::new();
        let mut names = BTreeSet::new();
        let mut add_arrow = |f: usize, arrows: &mut Vec<Arrow>| {
            let mor = self.morphism(f);
            let mut name = mor.label.clone();
            if !names.insert(name.clone()) {
                name = format!("{}#{f}", mor.label);
                names.insert(name.clone());
            }
            arrows.push(Arrow { name, src: mor.src, dst: mor.dst });
            arrows.len() - 1
        };
        let mut relations = Vec::new();
        match self.topological_order() {
            Some(order) => {
                let mut decomposable = vec![false; m];
                for f in self.nonidentity_morphisms() {
                    for g in self.out_of(self.morphism(f).dst) {
                        if !self.is_identity(g) {
                            decomposable[self.then(f, g)] = true;
                        }
                    }
                }
                for f in self.nonidentity_morphisms() {
                    if !decomposable[f] {
                        generator[f] = add_arrow(f, &mut arrows);
                        paths[f] = vec![generator[f]];
                    }
                }
                for &x in order.iter().rev() {
                    let mut pending: Vec<usize> = self.out_of(x).filter(|&f| decomposable[f]).collect();
                    // longer decompositions only use morphisms out of later objects
                    pending.sort_unstable();
                    for f in pending {
                        let target = self.morphism(f).dst;
                        let mut choice: Option<Vec<usize>> = None;
                        for a in self.out_of(x).filter(|&a| generator[a] != NONE) {
                            for &h in self.hom(self.morphism(a).dst, target) {
                                if self.is_identity(h) || self.then(a, h) != f {
                                    continue;
                                }
                                let mut candidate = vec![generator[a]];
                                candidate.extend_from_slice(&paths[h]);
                                let better = match &choice {
                                    None => true,
                                    Some(c) => (candidate.len(), &candidate) < (c.len(), c),
                                };
                                if better {
                                    choice = Some(candidate);
                                }
                            }
                        }
                        paths[f] = choice.expect("decomposable morphisms factor through a generator");
                    }
                }
                for f in self.nonidentity_morphisms().filter(|&f| generator[f] != NONE) {
                    for g in self.out_of(self.morphism(f).dst).filter(|&g| !self.is_identity(g)) {
                        let mut lhs = vec![generator[f]];
                        lhs.extend_from_slice(&paths[g]);
                        let rhs = paths[self.then(f, g)].clone();
                        if lhs != rhs {
                            relations.push((lhs, rhs));
                        }
                    }
                }
            }
            None => {
                for f in self.nonidentity_morphisms() {
                    generator[f] = add_arrow(f, &mut arrows);
                    paths[f] = vec![generator[f]];
                }
                for f in self.nonidentity_morphisms() {
                    for g in self.out_of(self.morphism(f).dst).filter(|&g| !self.is_identity(g)) {
                        relations.push((vec![generator[f], generator[g]], paths[self.then(f, g)].clone()));
                    }
                }
            }
        }
        let pres = CatPresentation::new(self.objects().to_vec(), arrows, relations)
            .expect("presentations of valid categories are well formed");
        (pres, paths)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::{iso_check, FinPoset};

    fn names(list: &[&str]) -> Vec<String> {
        list.iter().map(|s| String::from(*s)).collect()
    }

    fn arrow(name: &str, src: usize, dst: usize) -> Arrow {
        Arrow { name: name.into(), src, dst }
    }

    #[test]
    fn free_arrow_saturates() {
        let pres = CatPresentation::new(names(&["0", "1"]), vec![arrow("f", 0, 1)], vec![]).unwrap();
        let sat = saturate(&pres, DEFAULT_MAX_PATH_LEN).unwrap();
        assert_eq!(sat.category.morphism_count(), 3);
        assert_eq!(sat.bound, 2);
    }

    #[test]
    fn free_monoid_never_saturates() {
        let pres = CatPresentation::new(names(&["*"]), vec![arrow("a", 0, 0)], vec![]).unwrap();
        for bound in 1..=DEFAULT_MAX_PATH_LEN {
            assert!(matches!(saturate(&pres, bound), Err(Error::NotSaturated { .. })));
        }
    }

    #[test]
    fn cyclic_group_of_order_two() {
        let pres = CatPresentation::new(names(&["*"]), vec![arrow("t", 0, 0)], vec![(vec![0, 0], vec![])]).unwrap();
        let sat = saturate(&pres, DEFAULT_MAX_PATH_LEN).unwrap();
        assert_eq!(sat.category.morphism_count(), 2);
        let t = sat.arrow_morphisms[0];
        assert_eq!(sat.category.then(t, t), sat.category.identity(0));
    }

    #[test]
    fn commutative_square_needs_bound_three() {
        let arrows = vec![arrow("a", 0, 1), arrow("b", 1, 3), arrow("c", 0, 2), arrow("d", 2, 3)];
        let pres = CatPresentation::new(names(&["s", "l", "r", "t"]), arrows, vec![(vec![0, 1], vec![2, 3])]).unwrap();
        assert!(matches!(saturate(&pres, 2), Err(Error::NotSaturated { bound: 2, .. })));
        let sat = saturate(&pres, 3).unwrap();
        assert_eq!(sat.category.morphism_count(), 9);
        assert_eq!(sat.category.hom(0, 3).len(), 1);
        assert_eq!(sat.representatives[sat.category.hom(0, 3)[0]], vec![0, 1]);
    }

    #[test]
    fn budget_is_enforced() {
        let arrows = vec![arrow("a", 0, 0), arrow("b", 0, 0), arrow("c", 0, 0)];
        let pres = CatPresentation::new(names(&["*"]), arrows, vec![]).unwrap();
        assert_eq!(saturate_with_budget(&pres, 8, 100).unwrap_err(), Error::PathBudgetExceeded { budget: 100 });
    }

    #[test]
    fn rejects_non_parallel_relations() {
        let arrows = vec![arrow("a", 0, 1), arrow("b", 1, 0)];
        let result = CatPresentation::new(names(&["x", "y"]), arrows, vec![(vec![0], vec![1])]);
        assert!(matches!(result, Err(Error::InvalidPresentation(_))));
    }

    #[test]
    fn categories_round_trip_through_presentations() {
        let cube = FinPoset::cube(3).to_category();
        let (pres, paths) = cube.to_presentation();
        assert_eq!(pres.arrows().len(), 12);
        let sat = saturate(&pres, DEFAULT_MAX_PATH_LEN).unwrap();
        assert!(iso_check(&sat.category, &cube).unwrap().is_some());
        for (f, path) in paths.iter().enumerate() {
            let image = sat.eval_path(cube.morphism(f).src, path);
            assert_eq!(sat.category.hom(cube.morphism(f).src, cube.morphism(f).dst), &[image]);
        }
    }

    #[test]
    fn monoids_round_trip_through_presentations() {
        // Z/3 as a one-object category
        let objects = names(&["*"]);
        let morphisms = (0..3).map(|k| Morphism { src: 0, dst: 0, label: format!("r{k}") }).collect();
        let z3 = FinCategory::new(objects, morphisms, vec![0], |f, g| (f + g) % 3).unwrap();
        let (pres, _) = z3.to_presentation();
        assert_eq!(pres.arrows().len(), 2);
        let sat = saturate(&pres, DEFAULT_MAX_PATH_LEN).unwrap();
        assert_eq!(sat.category.morphism_count(), 3);
        assert!(iso_check(&sat.category, &z3).unwrap().is_some());
    }
}
