use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use super::{Arrow, CatFunctor, CatPresentation, FinCategory};
use crate::simplicial::{FiniteSimplicialSet, Simplex, SimplicialMap};
use crate::{Error, Result};

/// Composable chains of nonidentity morphisms of a loop-free category, by
/// length.
fn chains(c: &FinCategory) -> Vec<Vec<Vec<usize>>> {
    let mut levels: Vec<Vec<Vec<usize>>> = vec![(0..c.object_count()).map(|x| vec![x]).collect()];
    let edges: Vec<Vec<usize>> = c.nonidentity_morphisms().map(|f| vec![f]).collect();
    if edges.is_empty() {
        return levels;
    }
    levels.push(edges);
    loop {
        let mut next = Vec::new();
        for chain in levels.last().unwrap() {
            let end = c.morphism(*chain.last().unwrap()).dst;
            for g in c.out_of(end).filter(|&g| !c.is_identity(g)) {
                let mut longer = chain.clone();
                longer.push(g);
                next.push(longer);
            }
        }
        if next.is_empty() {
            return levels;
        }
        next.sort_unstable();
        levels.push(next);
    }
}

/// The nerve of a category without nonidentity endomorphisms or cycles of
/// nonidentity morphisms. Every face of a nondegenerate simplex is then
/// nondegenerate: outer faces drop a morphism and inner faces compose two.
pub fn nerve(c: &FinCategory) -> Result<FiniteSimplicialSet> {
    if !c.is_loop_free() {
        return Err(Error::InfiniteNerve(format!(
            "{} has a nonidentity endomorphism or a cycle of nonidentity morphisms",
            c.summary()
        )));
    }
    let levels = chains(c);
    let index: Vec<BTreeMap<&[usize], usize>> =
        levels.iter().map(|level| level.iter().enumerate().map(|(i, chain)| (chain.as_slice(), i)).collect()).collect();
    let mut labels = Vec::with_capacity(levels.len());
    let mut faces = Vec::with_capacity(levels.len());
    labels.push(c.objects().to_vec());
    faces.push(vec![Vec::new(); c.object_count()]);
    for (n, level) in levels.iter().enumerate().skip(1) {
        let mut level_labels = Vec::with_capacity(level.len());
        let mut level_faces = Vec::with_capacity(level.len());
        for chain in level {
            let names: Vec<&str> = chain.iter().map(|&f| c.morphism(f).label.as_str()).collect();
            level_labels.push(names.join("|"));
            let mut cell_faces = Vec::with_capacity(n + 1);
            for i in 0..=n {
                let face: Vec<usize> = if n == 1 {
                    let f = c.morphism(chain[0]);
                    vec![if i == 0 { f.dst } else { f.src }]
                } else if i == 0 {
                    chain[1..].to_vec()
                } else if i == n {
                    chain[..n - 1].to_vec()
                } else {
                    let mut composed = chain[..i - 1].to_vec();
                    composed.push(c.then(chain[i - 1], chain[i]));
                    composed.extend_from_slice(&chain[i + 1..]);
                    composed
                };
                cell_faces.push(Simplex::nondegenerate(n - 1, index[n - 1][face.as_slice()]));
            }
            level_faces.push(cell_faces);
        }
        labels.push(level_labels);
        faces.push(level_faces);
    }
    FiniteSimplicialSet::new(labels, faces)
}

/// `N F: N C -> N D`. A chain goes to the image chain with identities
/// dropped, recorded as degeneracies.
pub fn nerve_map(f: &CatFunctor) -> Result<SimplicialMap> {
    let source = Arc::new(nerve(f.source())?);
    let target = Arc::new(nerve(f.target())?);
    let (s, t) = (f.source(), f.target());
    let source_chains = chains(s);
    let target_index: Vec<BTreeMap<Vec<usize>, usize>> = chains(t)
        .into_iter()
        .map(|level| level.into_iter().enumerate().map(|(i, chain)| (chain, i)).collect())
        .collect();
    let mut assignment = Vec::with_capacity(source_chains.len());
    assignment.push((0..s.object_count()).map(|x| Simplex::nondegenerate(0, f.on_object(x))).collect());
    for level in source_chains.iter().skip(1) {
        let mut images = Vec::with_capacity(level.len());
        for chain in level {
            let mut kept = Vec::new();
            let mut surjection = vec![0];
            for &g in chain {
                let image = f.on_morphism(g);
                if !t.is_identity(image) {
                    kept.push(image);
                }
                surjection.push(kept.len());
            }
            let image = if kept.is_empty() {
                Simplex::from_parts(surjection, f.on_object(s.morphism(chain[0]).src))
            } else {
                Simplex::from_parts(surjection, target_index[kept.len()][&kept])
            };
            images.push(image);
        }
        assignment.push(images);
    }
    SimplicialMap::new(source, target, assignment)
}

/// The fundamental category `c X`: objects are vertices, generators are
/// nondegenerate edges and each nondegenerate 2-cell `σ` imposes
/// `d₁σ ~ d₂σ ; d₀σ`. Degenerate faces become empty paths.
pub fn fundamental_category(x: &FiniteSimplicialSet) -> CatPresentation {
    let objects = if x.is_empty() { Vec::new() } else { x.labels(0).to_vec() };
    let edge_count = if x.top_dim() >= 1 { x.cell_count(1) } else { 0 };
    let mut arrows: Vec<Arrow> = Vec::with_capacity(edge_count);
    let mut used: BTreeMap<String, usize> = BTreeMap::new();
    for e in 0..edge_count {
        let base = x.label(1, e);
        let name = match used.get(base) {
            Some(_) => format!("{base}#{e}"),
            None => String::from(base),
        };
        used.insert(name.clone(), e);
        arrows.push(Arrow { name, src: x.face(1, e, 1).cell(), dst: x.face(1, e, 0).cell() });
    }
    let path = |s: &Simplex| if s.is_degenerate() { Vec::new() } else { vec![s.cell()] };
    let mut relations = Vec::new();
    if x.top_dim() >= 2 {
        for t in 0..x.cell_count(2) {
            let lhs = path(x.face(2, t, 1));
            let mut rhs = path(x.face(2, t, 2));
            rhs.extend(path(x.face(2, t, 0)));
            if lhs != rhs {
                relations.push((lhs, rhs));
            }
        }
    }
    CatPresentation::new(objects, arrows, relations).expect("faces of a simplicial set are composable")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::{discrete, iso_check, saturate, FinPoset, DEFAULT_MAX_PATH_LEN};
    use crate::simplicial::{sd, standard, StandardKind};

    #[test]
    fn nerves_of_small_posets() {
        let arrow = FinPoset::chain(2).to_category();
        assert_eq!(nerve(&arrow).unwrap().cell_counts(), vec![2, 1]);
        assert_eq!(nerve(&discrete(&["a", "b", "c"])).unwrap().cell_counts(), vec![3]);
        let cube = FinPoset::cube(3).to_category();
        // chains in {0,1}^3: 8, 19, 18, 6
        assert_eq!(nerve(&cube).unwrap().cell_counts(), vec![8, 19, 18, 6]);
    }

    #[test]
    fn nerve_rejects_loops() {
        let (pres, _) = FinPoset::chain(2).to_category().to_presentation();
        let mut arrows = pres.arrows().to_vec();
        arrows.push(Arrow { name: "back".into(), src: 1, dst: 0 });
        let looped = CatPresentation::new(pres.objects().to_vec(), arrows, vec![(vec![0, 1], vec![])]).unwrap();
        let iso = saturate(&looped, DEFAULT_MAX_PATH_LEN).unwrap();
        assert!(matches!(nerve(&iso.category), Err(Error::InfiniteNerve(_))));
    }

    #[test]
    fn nerve_of_collapse_is_degenerate() {
        let arrow = Arc::new(FinPoset::chain(2).to_category());
        let point = Arc::new(discrete(&["*"]));
        let collapse = CatFunctor::constant(arrow, point, 0);
        let map = nerve_map(&collapse).unwrap();
        assert!(map.image_of_cell(1, 0).is_degenerate());
    }

    #[test]
    fn fundamental_category_of_small_sets() {
        let point = standard(StandardKind::Simplex(0)).unwrap();
        let pres = fundamental_category(&point);
        assert_eq!((pres.objects().len(), pres.arrows().len()), (1, 0));
        let flags = sd(&standard(StandardKind::Simplex(1)).unwrap()).unwrap();
        let sat = saturate(&fundamental_category(&flags), DEFAULT_MAX_PATH_LEN).unwrap();
        assert_eq!(sat.category.morphism_count(), 5);
    }

    #[test]
    fn fundamental_category_inverts_nerve_on_a_chain() {
        let chain = FinPoset::chain(3).to_category();
        let sat = saturate(&fundamental_category(&nerve(&chain).unwrap()), DEFAULT_MAX_PATH_LEN).unwrap();
        assert!(iso_check(&sat.category, &chain).unwrap().is_some());
    }
}
