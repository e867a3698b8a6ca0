//! Cisinski–Dwyer and Dwyer inclusions, pushout products in `Cat`, and the
//! homology probes built on them.
//!
//! An inclusion of a full subcategory `A ⊆ B` is Cisinski–Dwyer when `A` is a
//! sieve and the cosieve `Z` it generates admits a retraction `r: Z -> A`
//! with a natural transformation `ε: i r => id_Z` that is the identity on
//! `A`. It is Dwyer when moreover `i` is left adjoint to `r` with counit `ε`.

use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::category::{
    cat_product, cat_pushout, cosieve_generated, full_subcategory, is_sieve, nerve_map, product_functor, CatFunctor,
    FinCategory, NatTransformation, PushoutCategory, Subcategory,
};
use crate::homology::{is_homology_iso, HomologyIsoReport};
use crate::{Error, Result};

/// Node budget for the retraction search.
pub const DEFAULT_SEARCH_BUDGET: u64 = 1 << 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DwyerStatus {
    /// A retraction and counit were found and re-verified.
    Certified,
    /// The search finished without finding one.
    Refuted,
    /// `A` is not a sieve, so no search was needed.
    NotSieve,
}

#[derive(Clone, Debug)]
pub struct DwyerVerdict {
    pub sieve: bool,
    /// Objects of `B` in the cosieve generated by `A`, sorted.
    pub cosieve: Vec<usize>,
    /// `r: Z -> A`, where `Z` and `A` are the full subcategories on
    /// `cosieve` and the sorted members.
    pub retraction: Option<CatFunctor>,
    /// `ε: i r => id_Z`.
    pub epsilon: Option<NatTransformation>,
    pub exhausted: bool,
    /// Search nodes visited.
    pub nodes: u64,
    /// Whether the certificate also exhibits `i ⊣ r`; only set by [`check_dwyer`].
    pub adjoint: Option<bool>,
}

impl DwyerVerdict {
    pub fn status(&self) -> DwyerStatus {
        if !self.sieve {
            DwyerStatus::NotSieve
        } else if self.retraction.is_some() {
            DwyerStatus::Certified
        } else {
            DwyerStatus::Refuted
        }
    }

    pub fn is_cisinski_dwyer(&self) -> bool {
        self.status() == DwyerStatus::Certified
    }

    pub fn is_dwyer(&self) -> bool {
        self.is_cisinski_dwyer() && self.adjoint == Some(true)
    }
}

pub fn check_cisinski_dwyer(b: &Arc<FinCategory>, members: &[usize], budget: u64) -> Result<DwyerVerdict> {
    decide(b, members, budget, false)
}

/// As [`check_cisinski_dwyer`], preferring a certificate for which
/// `φ ↦ i(φ) ; ε_z` is a bijection `A(a, r z) -> Z(i a, z)` for all `a`, `z`.
pub fn check_dwyer(b: &Arc<FinCategory>, members: &[usize], budget: u64) -> Result<DwyerVerdict> {
    let mut verdict = decide(b, members, budget, true)?;
    if verdict.sieve && verdict.retraction.is_none() {
        let plain = decide(b, members, budget.saturating_sub(verdict.nodes), false)?;
        verdict = DwyerVerdict { nodes: verdict.nodes + plain.nodes, ..plain };
        verdict.adjoint = Some(false);
    } else if verdict.sieve {
        verdict.adjoint = Some(true);
    }
    Ok(verdict)
}

/// Runs the decision procedure on the image of a functor, which must be a
/// full embedding.
pub fn check_inclusion(i: &CatFunctor, budget: u64) -> Result<DwyerVerdict> {
    if !i.is_full_embedding() {
        return Err(Error::InvalidInput("the functor is not the inclusion of a full subcategory".into()));
    }
    check_cisinski_dwyer(i.target(), &i.object_image(), budget)
}

fn decide(b: &Arc<FinCategory>, members: &[usize], budget: u64, adjoint: bool) -> Result<DwyerVerdict> {
    let mut members = members.to_vec();
    members.sort_unstable();
    members.dedup();
    if members.last().is_some_and(|&x| x >= b.object_count()) {
        return Err(Error::InvalidInput("subcategory object out of range".into()));
    }
    let sieve = is_sieve(b, &members);
    let cosieve = cosieve_generated(b, &members);
    let mut verdict =
        DwyerVerdict { sieve, cosieve, retraction: None, epsilon: None, exhausted: false, nodes: 0, adjoint: None };
    if !sieve {
        return Ok(verdict);
    }
    let z = full_subcategory(b, &verdict.cosieve)?;
    let in_a: Vec<bool> = verdict.cosieve.iter().map(|x| members.binary_search(x).is_ok()).collect();
    let mut search = Search::new(&z.category, in_a, budget, adjoint);
    let found = search.objects_from(0)?;
    verdict.nodes = search.nodes;
    verdict.exhausted = found.is_none();
    if let Some((r_obj, r_mor, eps)) = found {
        let a = full_subcategory(&z.category, &search.a_objects)?;
        let (r, e) = certify(&z, &a, &r_obj, &r_mor, eps)?;
        verdict.retraction = Some(r);
        verdict.epsilon = Some(e);
    }
    Ok(verdict)
}

/// Rebuilds the certificate as a functor and a natural transformation, which
/// validates functoriality and naturality, and checks `r i = id` and
/// `ε i = id`.
fn certify(
    z: &Subcategory,
    a: &Subcategory,
    r_obj: &[usize],
    r_mor: &[usize],
    eps: Vec<usize>,
) -> Result<(CatFunctor, NatTransformation)> {
    let zc = &z.category;
    let mut a_object = vec![usize::MAX; zc.object_count()];
    for (k, &x) in a.members.iter().enumerate() {
        a_object[x] = k;
    }
    let mut a_morphism = vec![usize::MAX; zc.morphism_count()];
    for (k, &f) in a.inclusion.morphism_map().iter().enumerate() {
        a_morphism[f] = k;
    }
    let r = CatFunctor::new(
        zc.clone(),
        a.category.clone(),
        r_obj.iter().map(|&x| a_object[x]).collect(),
        r_mor.iter().map(|&f| a_morphism[f]).collect(),
    )?;
    if !a.inclusion.then(&r)?.same_assignment(&CatFunctor::identity(a.category.clone())) {
        return Err(Error::NotAFunctor("retraction does not fix the subcategory".into()));
    }
    let epsilon = NatTransformation::new(r.then(&a.inclusion)?, CatFunctor::identity(zc.clone()), eps)?;
    if !epsilon.precompose(&a.inclusion)?.is_identity() {
        return Err(Error::NotNatural("ε is not the identity on the subcategory".into()));
    }
    Ok((r, epsilon))
}

type Certificate = (Vec<usize>, Vec<usize>, Vec<usize>);

/// Backtracking over `(r z, ε_z)` for the objects outside `A` in index
/// order, then over `r` on morphisms. Everything is expressed inside `Z`.
struct Search<'a> {
    z: &'a FinCategory,
    in_a: Vec<bool>,
    a_objects: Vec<usize>,
    budget: u64,
    nodes: u64,
    adjoint: bool,
    r_obj: Vec<usize>,
    eps: Vec<usize>,
}

impl<'a> Search<'a> {
    fn new(z: &'a FinCategory, in_a: Vec<bool>, budget: u64, adjoint: bool) -> Self {
        let n = z.object_count();
        let a_objects: Vec<usize> = (0..n).filter(|&x| in_a[x]).collect();
        let mut r_obj = vec![usize::MAX; n];
        let mut eps = vec![usize::MAX; n];
        for &x in &a_objects {
            r_obj[x] = x;
            eps[x] = z.identity(x);
        }
        Self { z, in_a, a_objects, budget, nodes: 0, adjoint, r_obj, eps }
    }

    fn tick(&mut self) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::SearchCapExceeded { budget: self.budget });
        }
        Ok(())
    }

    /// Morphisms `h: r w -> r z` with `h ; ε_z = ε_w ; g`, for `g: w -> z`.
    fn lifts(&self, g: usize) -> impl Iterator<Item = usize> + '_ {
        let mor = self.z.morphism(g);
        let (w, v) = (mor.src, mor.dst);
        let target = self.z.then(self.eps[w], g);
        self.z.hom(self.r_obj[w], self.r_obj[v]).iter().copied().filter(move |&h| self.z.then(h, self.eps[v]) == target)
    }

    fn assigned(&self, x: usize) -> bool {
        self.r_obj[x] != usize::MAX
    }

    fn objects_from(&mut self, x: usize) -> Result<Option<Certificate>> {
        let n = self.z.object_count();
        if x == n {
            let mut r_mor = vec![usize::MAX; self.z.morphism_count()];
            return self.morphisms_from(0, &mut r_mor);
        }
        if self.in_a[x] {
            return self.objects_from(x + 1);
        }
        for k in 0..self.a_objects.len() {
            let a = self.a_objects[k];
            for e in 0..self.z.hom(a, x).len() {
                self.tick()?;
                self.r_obj[x] = a;
                self.eps[x] = self.z.hom(a, x)[e];
                if self.consistent(x) && (!self.adjoint || self.counit_bijective(x)) {
                    if let Some(found) = self.objects_from(x + 1)? {
                        return Ok(Some(found));
                    }
                }
            }
        }
        self.r_obj[x] = usize::MAX;
        self.eps[x] = usize::MAX;
        Ok(None)
    }

    /// Every morphism between `x` and an assigned object has a lift.
    fn consistent(&self, x: usize) -> bool {
        let z = self.z;
        (0..z.object_count()).filter(|&w| self.assigned(w)).all(|w| {
            z.hom(w, x).iter().all(|&g| self.lifts(g).next().is_some())
                && z.hom(x, w).iter().all(|&g| self.lifts(g).next().is_some())
        })
    }

    /// `φ ↦ φ ; ε_x` is a bijection `A(a, r x) -> Z(a, x)` for every `a`.
    fn counit_bijective(&self, x: usize) -> bool {
        let z = self.z;
        self.a_objects.iter().all(|&a| {
            let mut images: Vec<usize> = z.hom(a, self.r_obj[x]).iter().map(|&phi| z.then(phi, self.eps[x])).collect();
            images.sort_unstable();
            images.dedup();
            images.len() == z.hom(a, self.r_obj[x]).len() && images.len() == z.hom(a, x).len()
        })
    }

    fn morphisms_from(&mut self, g: usize, r_mor: &mut Vec<usize>) -> Result<Option<Certificate>> {
        let z = self.z;
        if g == z.morphism_count() {
            return Ok(Some((self.r_obj.clone(), r_mor.clone(), self.eps.clone())));
        }
        let mor = z.morphism(g);
        let options: Vec<usize> = if self.in_a[mor.src] && self.in_a[mor.dst] {
            vec![g]
        } else if z.is_identity(g) {
            vec![z.identity(self.r_obj[mor.src])]
        } else {
            self.lifts(g).collect()
        };
        for h in options {
            self.tick()?;
            r_mor[g] = h;
            if self.composites_hold(g, r_mor) {
                if let Some(found) = self.morphisms_from(g + 1, r_mor)? {
                    return Ok(Some(found));
                }
            }
        }
        r_mor[g] = usize::MAX;
        Ok(None)
    }

    /// `r(p ; q) = r p ; r q` whenever all three are assigned and one of them is `g`.
    fn composites_hold(&self, g: usize, r_mor: &[usize]) -> bool {
        let z = self.z;
        let set = |f: usize| f <= g;
        let mor = z.morphism(g);
        let after = z.out_of(mor.dst).filter(|&q| set(q)).all(|q| {
            let pq = z.then(g, q);
            !set(pq) || r_mor[pq] == z.then(r_mor[g], r_mor[q])
        });
        let before = z.into(mor.src).filter(|&p| set(p)).all(|p| {
            let pg = z.then(p, g);
            !set(pg) || r_mor[pg] == z.then(r_mor[p], r_mor[g])
        });
        // g as a composite of two earlier morphisms
        let split = (0..g).all(|p| {
            let pm = z.morphism(p);
            pm.src != mor.src
                || z.hom(pm.dst, mor.dst)
                    .iter()
                    .all(|&q| q >= g || z.then(p, q) != g || r_mor[g] == z.then(r_mor[p], r_mor[q]))
        });
        after && before && split
    }
}

/// The corner map `f □ g: (B × X) ⊔_{A × X} (A × Y) -> B × Y`.
#[derive(Clone, Debug)]
pub struct PushoutProduct {
    pub corner: PushoutCategory,
    pub map: CatFunctor,
    pub codomain: Arc<FinCategory>,
}

pub fn pushout_product_cat(f: &CatFunctor, g: &CatFunctor, max_path_len: usize) -> Result<PushoutProduct> {
    let id = |c: &Arc<FinCategory>| CatFunctor::identity(c.clone());
    let (a, b) = (f.source(), f.target());
    let (x, y) = (g.source(), g.target());
    let f_x = product_functor(f, &id(x))?;
    let a_g = product_functor(&id(a), g)?;
    let pushout = cat_pushout(&f_x, &a_g)?;
    let corner = pushout.saturate(max_path_len)?;
    let b_g = product_functor(&id(b), g)?;
    let f_y = product_functor(f, &id(y))?;
    let map = pushout.induced(&corner, &b_g, &f_y)?;
    let codomain = cat_product(b, y)?.category;
    Ok(PushoutProduct { corner, map, codomain })
}

/// The nerve of a functor tested for being a homology isomorphism.
#[derive(Clone, Debug)]
pub struct ProbeReport {
    pub map: CatFunctor,
    pub homology: HomologyIsoReport,
}

impl ProbeReport {
    fn of(map: CatFunctor) -> Result<Self> {
        let homology = is_homology_iso(&nerve_map(&map)?);
        Ok(Self { map, homology })
    }

    pub fn passed(&self) -> bool {
        self.homology.iso
    }
}

/// Whether `cof □ we` is a homology isomorphism on nerves.
pub fn flatness_probe(cof: &CatFunctor, we: &CatFunctor, max_path_len: usize) -> Result<ProbeReport> {
    let product = pushout_product_cat(cof, we, max_path_len)?;
    ProbeReport::of(product.map)
}

/// The cobase change `X ⊔_A B -> Y ⊔_A B` of `f: X -> Y` along
/// `i: A -> B`, with `X` attached through `attach: A -> X`. A failing probe
/// shows `i` is not an h-cofibration; a passing one is only evidence.
pub fn hcofibration_probe(
    i: &CatFunctor,
    f: &CatFunctor,
    attach: &CatFunctor,
    max_path_len: usize,
) -> Result<ProbeReport> {
    let d = cat_pushout(attach, i)?;
    let d_cat = d.saturate(max_path_len)?;
    let e = cat_pushout(&attach.then(f)?, i)?;
    let e_cat = e.saturate(max_path_len)?;
    let map = d.induced(&d_cat, &f.then(&e_cat.left)?, &e_cat.right)?;
    ProbeReport::of(map)
}
