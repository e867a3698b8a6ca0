use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use super::{saturate, Arrow, CatFunctor, CatPresentation, FinCategory, Morphism, Saturated};
use crate::simplicial::Side;
use crate::{Error, Result};

/// A full subcategory together with its inclusion functor.
#[derive(Clone, Debug)]
pub struct Subcategory {
    pub category: Arc<FinCategory>,
    pub inclusion: CatFunctor,
    /// Objects of the ambient category, sorted; object `k` of the
    /// subcategory is `members[k]`.
    pub members: Vec<usize>,
}

pub fn full_subcategory(ambient: &Arc<FinCategory>, members: &[usize]) -> Result<Subcategory> {
    let mut members = members.to_vec();
    members.sort_unstable();
    members.dedup();
    if members.last().is_some_and(|&x| x >= ambient.object_count()) {
        return Err(Error::InvalidInput("subcategory object out of range".into()));
    }
    let mut position = vec![usize::MAX; ambient.object_count()];
    for (k, &x) in members.iter().enumerate() {
        position[x] = k;
    }
    let mut kept = Vec::new();
    let mut renumber = vec![usize::MAX; ambient.morphism_count()];
    for (f, mor) in ambient.morphisms().iter().enumerate() {
        if position[mor.src] != usize::MAX && position[mor.dst] != usize::MAX {
            renumber[f] = kept.len();
            kept.push(f);
        }
    }
    let objects = members.iter().map(|&x| String::from(ambient.object_name(x))).collect();
    let morphisms = kept
        .iter()
        .map(|&f| {
            let mor = ambient.morphism(f);
            Morphism { src: position[mor.src], dst: position[mor.dst], label: mor.label.clone() }
        })
        .collect();
    let identities = members.iter().map(|&x| renumber[ambient.identity(x)]).collect();
    let category =
        FinCategory::assemble(objects, morphisms, identities, |f, g| renumber[ambient.then(kept[f], kept[g])])?;
    let category = Arc::new(category);
    let inclusion = CatFunctor::new(category.clone(), ambient.clone(), members.clone(), kept)?;
    Ok(Subcategory { category, inclusion, members })
}

/// Closed under sources of morphisms into it.
pub fn is_sieve(ambient: &FinCategory, members: &[usize]) -> bool {
    let inside = membership(ambient, members);
    ambient.morphisms().iter().all(|m| !inside[m.dst] || inside[m.src])
}

/// Closed under targets of morphisms out of it.
pub fn is_cosieve(ambient: &FinCategory, members: &[usize]) -> bool {
    let inside = membership(ambient, members);
    ambient.morphisms().iter().all(|m| !inside[m.src] || inside[m.dst])
}

/// Objects receiving a morphism from some member, sorted.
pub fn cosieve_generated(ambient: &FinCategory, members: &[usize]) -> Vec<usize> {
    let inside = membership(ambient, members);
    (0..ambient.object_count())
        .filter(|&z| (0..ambient.object_count()).any(|a| inside[a] && !ambient.hom(a, z).is_empty()))
        .collect()
}

fn membership(ambient: &FinCategory, members: &[usize]) -> Vec<bool> {
    let mut inside = vec![false; ambient.object_count()];
    for &x in members {
        inside[x] = true;
    }
    inside
}

/// A product category with its projections. Object `(i, j)` has index
/// `i * |objects of second| + j`, and likewise for morphisms.
#[derive(Clone, Debug)]
pub struct CatProduct {
    pub category: Arc<FinCategory>,
    pub first: CatFunctor,
    pub second: CatFunctor,
}

pub fn cat_product(c: &Arc<FinCategory>, d: &Arc<FinCategory>) -> Result<CatProduct> {
    let (n2, m2) = (d.object_count(), d.morphism_count());
    let mut objects = Vec::with_capacity(c.object_count() * n2);
    for x in c.objects() {
        for y in d.objects() {
            objects.push(format!("({x},{y})"));
        }
    }
    let mut morphisms = Vec::with_capacity(c.morphism_count() * m2);
    for f in c.morphisms() {
        for g in d.morphisms() {
            morphisms.push(Morphism {
                src: f.src * n2 + g.src,
                dst: f.dst * n2 + g.dst,
                label: format!("({},{})", f.label, g.label),
            });
        }
    }
    let identities = (0..c.object_count())
        .flat_map(|x| (0..n2).map(move |y| (x, y)))
        .map(|(x, y)| c.identity(x) * m2 + d.identity(y))
        .collect();
    let compose = |p: usize, q: usize| c.then(p / m2, q / m2) * m2 + d.then(p % m2, q % m2);
    let category = Arc::new(FinCategory::assemble(objects, morphisms, identities, compose)?);
    let count = category.object_count();
    let arrows = category.morphism_count();
    let first = CatFunctor::new(
        category.clone(),
        c.clone(),
        (0..count).map(|o| o / n2).collect(),
        (0..arrows).map(|f| f / m2).collect(),
    )?;
    let second = CatFunctor::new(
        category.clone(),
        d.clone(),
        (0..count).map(|o| o % n2).collect(),
        (0..arrows).map(|f| f % m2).collect(),
    )?;
    Ok(CatProduct { category, first, second })
}

/// `F × G` between the product categories built by [`cat_product`].
pub fn product_functor(f: &CatFunctor, g: &CatFunctor) -> Result<CatFunctor> {
    let source = cat_product(f.source(), g.source())?.category;
    let target = cat_product(f.target(), g.target())?.category;
    let (n_src, m_src) = (g.source().object_count(), g.source().morphism_count());
    let (n_dst, m_dst) = (g.target().object_count(), g.target().morphism_count());
    let objects = (0..source.object_count()).map(|o| f.on_object(o / n_src) * n_dst + g.on_object(o % n_src)).collect();
    let morphisms =
        (0..source.morphism_count()).map(|h| f.on_morphism(h / m_src) * m_dst + g.on_morphism(h % m_src)).collect();
    CatFunctor::new(source, target, objects, morphisms)
}

/// The pushout of `X <- A -> Y` as a presentation: both presentations side
/// by side, objects identified along the images of `A`, and one relation per
/// generator of `A` equating its two images.
#[derive(Clone, Debug)]
pub struct CatPushout {
    pub presentation: CatPresentation,
    /// Object of the pushout for each object of `X` (left) and `Y` (right).
    pub left_objects: Vec<usize>,
    pub right_objects: Vec<usize>,
    /// Generator path in the pushout for each morphism of `X` and `Y`.
    pub left_paths: Vec<Vec<usize>>,
    pub right_paths: Vec<Vec<usize>>,
    /// Where each pushout object and generating arrow comes from.
    pub object_origin: Vec<(Side, usize)>,
    pub arrow_origin: Vec<(Side, usize)>,
    left: Arc<FinCategory>,
    right: Arc<FinCategory>,
    apex: (CatFunctor, CatFunctor),
}

/// A saturated pushout with its two legs.
#[derive(Clone, Debug)]
pub struct PushoutCategory {
    pub saturated: Saturated,
    pub category: Arc<FinCategory>,
    pub left: CatFunctor,
    pub right: CatFunctor,
}

pub fn cat_pushout(f: &CatFunctor, g: &CatFunctor) -> Result<CatPushout> {
    if *f.source() != *g.source() {
        return Err(Error::InvalidInput("pushout legs must share their source".into()));
    }
    let (x, y) = (f.target().clone(), g.target().clone());
    let (nx, ny) = (x.object_count(), y.object_count());
    // union-find over X ⊔ Y
    let mut parent: Vec<usize> = (0..nx + ny).collect();
    fn find(parent: &mut [usize], mut v: usize) -> usize {
        while parent[v] != v {
            parent[v] = parent[parent[v]];
            v = parent[v];
        }
        v
    }
    for a in 0..f.source().object_count() {
        let (p, q) = (find(&mut parent, f.on_object(a)), find(&mut parent, nx + g.on_object(a)));
        let (keep, drop) = if p < q { (p, q) } else { (q, p) };
        parent[drop] = keep;
    }
    let mut class_object = vec![usize::MAX; nx + ny];
    let mut objects: Vec<String> = Vec::new();
    let mut object_origin = Vec::new();
    let mut assign = |v: usize, parent: &mut Vec<usize>, objects: &mut Vec<String>| {
        let root = find(parent, v);
        if class_object[root] == usize::MAX {
            class_object[root] = objects.len();
            let (side, local) = if v < nx { (Side::Left, v) } else { (Side::Right, v - nx) };
            let mut name = String::from(if v < nx { x.object_name(local) } else { y.object_name(local) });
            while objects.contains(&name) {
                name.push('′');
            }
            objects.push(name);
            object_origin.push((side, local));
        }
        class_object[root]
    };
    let left_objects: Vec<usize> = (0..nx).map(|v| assign(v, &mut parent, &mut objects)).collect();
    let right_objects: Vec<usize> = (0..ny).map(|v| assign(nx + v, &mut parent, &mut objects)).collect();

    let (xp, x_paths) = x.to_presentation();
    let (yp, y_paths) = y.to_presentation();
    let mut arrows = Vec::new();
    let mut arrow_origin = Vec::new();
    let x_gens: Vec<usize> = generator_morphisms(&x, &x_paths, xp.arrows().len());
    let y_gens: Vec<usize> = generator_morphisms(&y, &y_paths, yp.arrows().len());
    for (a, arrow) in xp.arrows().iter().enumerate() {
        arrows.push(Arrow {
            name: format!("l.{}", arrow.name),
            src: left_objects[arrow.src],
            dst: left_objects[arrow.dst],
        });
        arrow_origin.push((Side::Left, x_gens[a]));
    }
    let offset = arrows.len();
    for (a, arrow) in yp.arrows().iter().enumerate() {
        arrows.push(Arrow {
            name: format!("r.{}", arrow.name),
            src: right_objects[arrow.src],
            dst: right_objects[arrow.dst],
        });
        arrow_origin.push((Side::Right, y_gens[a]));
    }
    let shift = |path: &[usize]| path.iter().map(|&a| a + offset).collect::<Vec<_>>();
    let mut relations: Vec<(Vec<usize>, Vec<usize>)> = xp.relations().to_vec();
    relations.extend(yp.relations().iter().map(|(l, r)| (shift(l), shift(r))));
    let (ap, a_paths) = f.source().to_presentation();
    let a_gens = generator_morphisms(f.source(), &a_paths, ap.arrows().len());
    for &phi in &a_gens {
        let lhs = x_paths[f.on_morphism(phi)].clone();
        let rhs = shift(&y_paths[g.on_morphism(phi)]);
        if lhs != rhs {
            relations.push((lhs, rhs));
        }
    }
    let presentation = CatPresentation::new(objects, arrows, relations)?;
    let right_paths = y_paths.iter().map(|p| shift(p)).collect();
    Ok(CatPushout {
        presentation,
        left_objects,
        right_objects,
        left_paths: x_paths,
        right_paths,
        object_origin,
        arrow_origin,
        left: x,
        right: y,
        apex: (f.clone(), g.clone()),
    })
}

/// The morphism behind each generator of a presentation from
/// [`FinCategory::to_presentation`].
fn generator_morphisms(_c: &FinCategory, paths: &[Vec<usize>], arrows: usize) -> Vec<usize> {
    let mut gens = vec![usize::MAX; arrows];
    for (f, path) in paths.iter().enumerate() {
        if let [a] = path.as_slice() {
            if gens[*a] == usize::MAX {
                gens[*a] = f;
            }
        }
    }
    gens
}

impl CatPushout {
    pub fn saturate(&self, max_path_len: usize) -> Result<PushoutCategory> {
        let saturated = saturate(&self.presentation, max_path_len)?;
        let category = Arc::new(saturated.category.clone());
        let leg = |cat: &Arc<FinCategory>, objects: &[usize], paths: &[Vec<usize>]| {
            let morphisms = (0..cat.morphism_count())
                .map(|h| saturated.eval_path(objects[cat.morphism(h).src], &paths[h]))
                .collect();
            CatFunctor::new(cat.clone(), category.clone(), objects.to_vec(), morphisms)
        };
        let left = leg(&self.left, &self.left_objects, &self.left_paths)?;
        let right = leg(&self.right, &self.right_objects, &self.right_paths)?;
        Ok(PushoutCategory { saturated, category, left, right })
    }

    /// The functor out of the pushout determined by `hx: X -> Z` and
    /// `hy: Y -> Z` agreeing on `A`.
    pub fn induced(&self, realized: &PushoutCategory, hx: &CatFunctor, hy: &CatFunctor) -> Result<CatFunctor> {
        if hx.target() != hy.target() || **hx.source() != *self.left || **hy.source() != *self.right {
            return Err(Error::NotAFunctor("induced functor needs maps out of both legs into one category".into()));
        }
        if !self.apex.0.then(hx)?.same_assignment(&self.apex.1.then(hy)?) {
            return Err(Error::NotAFunctor("the two maps disagree on the common source".into()));
        }
        let z = hx.target().clone();
        let p = &realized.category;
        let pick = |side: Side| if side == Side::Left { hx } else { hy };
        let objects: Vec<usize> = self.object_origin.iter().map(|&(side, o)| pick(side).on_object(o)).collect();
        let arrow_images: Vec<usize> = self.arrow_origin.iter().map(|&(side, m)| pick(side).on_morphism(m)).collect();
        let morphisms = (0..p.morphism_count())
            .map(|h| {
                let start = z.identity(objects[p.morphism(h).src]);
                realized.saturated.representatives[h].iter().fold(start, |acc, &a| z.then(acc, arrow_images[a]))
            })
            .collect();
        CatFunctor::new(p.clone(), z, objects, morphisms)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::{discrete, iso_check, terminal_category, walking_arrow, FinPoset, DEFAULT_MAX_PATH_LEN};

    #[test]
    fn product_of_arrows_is_the_square() {
        let arrow = Arc::new(walking_arrow());
        let square = cat_product(&arrow, &arrow).unwrap();
        assert_eq!(square.category.object_count(), 4);
        assert_eq!(square.category.morphism_count(), 9);
        assert!(iso_check(&square.category, &FinPoset::cube(2).to_category()).unwrap().is_some());
        let cube = cat_product(&square.category, &arrow).unwrap();
        assert!(iso_check(&cube.category, &FinPoset::cube(3).to_category()).unwrap().is_some());
        let unit = cat_product(&arrow, &Arc::new(terminal_category())).unwrap();
        assert!(iso_check(&unit.category, &arrow).unwrap().is_some());
    }

    #[test]
    fn sieves_in_the_cube() {
        let cube = FinPoset::cube(3).to_category();
        let without_top: Vec<usize> = (0..7).collect();
        assert!(is_sieve(&cube, &without_top));
        assert!(!is_cosieve(&cube, &without_top));
        let arrow = walking_arrow();
        assert_eq!(cosieve_generated(&arrow, &[0]), vec![0, 1]);
        assert_eq!(cosieve_generated(&arrow, &[1]), vec![1]);
        let all: Vec<usize> = (0..8).collect();
        assert!(is_sieve(&cube, &all) && is_cosieve(&cube, &all));
        assert_eq!(cosieve_generated(&cube, &all), all);
    }

    #[test]
    fn full_subcategory_inclusion() {
        let cube = Arc::new(FinPoset::cube(3).to_category());
        let sub = full_subcategory(&cube, &[0, 1, 3]).unwrap();
        assert_eq!(sub.category.morphism_count(), 6);
        assert!(sub.inclusion.is_full_embedding());
    }

    #[test]
    fn pushout_along_identity_is_the_other_side() {
        let arrow = Arc::new(walking_arrow());
        let point = Arc::new(discrete(&["0"]));
        let include = CatFunctor::new(point.clone(), arrow.clone(), vec![0], vec![arrow.identity(0)]).unwrap();
        let id = CatFunctor::identity(point);
        let pushout = cat_pushout(&include, &id).unwrap().saturate(DEFAULT_MAX_PATH_LEN).unwrap();
        assert!(iso_check(&pushout.category, &arrow).unwrap().is_some());
        assert!(pushout.left.is_isomorphism());
    }

    #[test]
    fn gluing_two_arrows_at_a_point() {
        // {0 -> 1} ⊔_{pt} {0 -> 1}, glued at the sources: a span
        let arrow = Arc::new(walking_arrow());
        let point = Arc::new(discrete(&["0"]));
        let include = CatFunctor::new(point, arrow.clone(), vec![0], vec![arrow.identity(0)]).unwrap();
        let pushout = cat_pushout(&include, &include).unwrap();
        assert_eq!(pushout.presentation.objects(), &["0", "1", "1′"]);
        let realized = pushout.saturate(DEFAULT_MAX_PATH_LEN).unwrap();
        assert_eq!(realized.category.morphism_count(), 5);
        let collapse = CatFunctor::identity(arrow.clone());
        let folded = pushout.induced(&realized, &collapse, &collapse).unwrap();
        assert_eq!(folded.object_map(), &[0, 1, 1]);
    }
}
