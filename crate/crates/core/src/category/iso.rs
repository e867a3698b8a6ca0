use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use super::{CatFunctor, FinCategory};
use crate::{Error, Result};

/// Default object-count cap for [`iso_check`].
pub const DEFAULT_ISO_CAP: usize = 16;

/// An isomorphism of finite categories as object and morphism bijections.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatIsomorphism {
    pub objects: Vec<usize>,
    pub morphisms: Vec<usize>,
}

impl CatIsomorphism {
    pub fn to_functor(&self, source: Arc<FinCategory>, target: Arc<FinCategory>) -> Result<CatFunctor> {
        CatFunctor::new(source, target, self.objects.clone(), self.morphisms.clone())
    }
}

pub fn iso_check(c: &FinCategory, d: &FinCategory) -> Result<Option<CatIsomorphism>> {
    find_isomorphism(c, d, None, DEFAULT_ISO_CAP)
}

/// Searches for an isomorphism `c -> d`, optionally restricting object `x`
/// to targets `y` with `allowed[x][y]`. Object bijections are built one
/// object at a time, keeping hom-set sizes consistent; generator images are
/// then chosen inside the matching hom-sets and checked for functoriality.
pub fn find_isomorphism(
    c: &FinCategory,
    d: &FinCategory,
    allowed: Option<&[Vec<bool>]>,
    cap: usize,
) -> Result<Option<CatIsomorphism>> {
    let n = c.object_count();
    if n > cap {
        return Err(Error::SizeCapExceeded { size: n, cap });
    }
    if n != d.object_count() || c.morphism_count() != d.morphism_count() {
        return Ok(None);
    }
    let signature = |cat: &FinCategory, x: usize| {
        let mut out: Vec<usize> = (0..n).map(|y| cat.hom(x, y).len()).collect();
        let mut inc: Vec<usize> = (0..n).map(|y| cat.hom(y, x).len()).collect();
        out.sort_unstable();
        inc.sort_unstable();
        (cat.hom(x, x).len(), out, inc)
    };
    let c_sig: Vec<_> = (0..n).map(|x| signature(c, x)).collect();
    let d_sig: Vec<_> = (0..n).map(|y| signature(d, y)).collect();
    let candidates: Vec<Vec<usize>> =
        (0..n).map(|x| (0..n).filter(|&y| c_sig[x] == d_sig[y] && allowed.is_none_or(|a| a[x][y])).collect()).collect();
    let (_, paths) = c.to_presentation();
    let generators: Vec<usize> = (0..c.morphism_count()).filter(|&f| paths[f].len() == 1).collect();
    let mut search = Search { c, d, candidates, paths, generators, objects: vec![usize::MAX; n], used: vec![false; n] };
    Ok(search.objects_from(0))
}

struct Search<'a> {
    c: &'a FinCategory,
    d: &'a FinCategory,
    candidates: Vec<Vec<usize>>,
    paths: Vec<Vec<usize>>,
    generators: Vec<usize>,
    objects: Vec<usize>,
    used: Vec<bool>,
}

impl Search<'_> {
    fn objects_from(&mut self, x: usize) -> Option<CatIsomorphism> {
        if x == self.objects.len() {
            let mut images = vec![usize::MAX; self.c.morphism_count()];
            return self.generators_from(0, &mut images);
        }
        for i in 0..self.candidates[x].len() {
            let y = self.candidates[x][i];
            if self.used[y] {
                continue;
            }
            let consistent = (0..x).all(|w| {
                let v = self.objects[w];
                self.c.hom(w, x).len() == self.d.hom(v, y).len() && self.c.hom(x, w).len() == self.d.hom(y, v).len()
            });
            if !consistent {
                continue;
            }
            self.objects[x] = y;
            self.used[y] = true;
            if let Some(iso) = self.objects_from(x + 1) {
                return Some(iso);
            }
            self.used[y] = false;
        }
        self.objects[x] = usize::MAX;
        None
    }

    fn generators_from(&mut self, k: usize, images: &mut Vec<usize>) -> Option<CatIsomorphism> {
        if k == self.generators.len() {
            return self.complete(images);
        }
        let g = self.generators[k];
        let mor = self.c.morphism(g);
        let options: Vec<usize> = self
            .d
            .hom(self.objects[mor.src], self.objects[mor.dst])
            .iter()
            .copied()
            .filter(|&h| !self.d.is_identity(h))
            .collect();
        for h in options {
            images[g] = h;
            if let Some(iso) = self.generators_from(k + 1, images) {
                return Some(iso);
            }
        }
        images[g] = usize::MAX;
        None
    }

    fn complete(&self, images: &[usize]) -> Option<CatIsomorphism> {
        let (c, d) = (self.c, self.d);
        let generator_image: Vec<usize> = self.generators.iter().map(|&g| images[g]).collect();
        let morphisms: Vec<usize> = (0..c.morphism_count())
            .map(|f| {
                let start = d.identity(self.objects[c.morphism(f).src]);
                // arrow `a` of the presentation is the generator `generators[a]`
                self.paths[f].iter().fold(start, |acc, &a| d.then(acc, generator_image[a]))
            })
            .collect();
        let mut hit = vec![false; d.morphism_count()];
        for &h in &morphisms {
            if core::mem::replace(&mut hit[h], true) {
                return None;
            }
        }
        for f in 0..c.morphism_count() {
            let mor = c.morphism(f);
            let image = d.morphism(morphisms[f]);
            if image.src != self.objects[mor.src] || image.dst != self.objects[mor.dst] {
                return None;
            }
            for g in c.out_of(mor.dst) {
                if morphisms[c.then(f, g)] != d.then(morphisms[f], morphisms[g]) {
                    return None;
                }
            }
        }
        Some(CatIsomorphism { objects: self.objects.clone(), morphisms })
    }
}
