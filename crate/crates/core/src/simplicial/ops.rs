use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use super::{surjections, FiniteSimplicialSet, Simplex, SimplicialMap};
use crate::{Error, Result};

/// The standard generators of simplicial sets.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StandardKind {
    Simplex(usize),
    Boundary(usize),
    Horn(usize, usize),
}

/// `Δⁿ`, `∂Δⁿ` or `Λⁿ_k`, with vertices labelled `0..=n`.
pub fn standard(kind: StandardKind) -> Result<FiniteSimplicialSet> {
    let n = match kind {
        StandardKind::Simplex(n) | StandardKind::Boundary(n) => n,
        StandardKind::Horn(n, k) => {
            if n == 0 || k > n {
                return Err(Error::InvalidHorn { n, k });
            }
            n
        }
    };
    let labels: Vec<String> = (0..=n).map(|v| v.to_string()).collect();
    let full: Vec<usize> = (0..=n).collect();
    let facets: Vec<Vec<usize>> = match kind {
        StandardKind::Simplex(_) => vec![full],
        StandardKind::Boundary(0) => return Ok(FiniteSimplicialSet::empty()),
        StandardKind::Boundary(_) => (0..=n).map(|i| drop_index(&full, i)).collect(),
        StandardKind::Horn(_, k) => (0..=n).filter(|&i| i != k).map(|i| drop_index(&full, i)).collect(),
    };
    FiniteSimplicialSet::from_simplices(labels, &facets)
}

fn drop_index(v: &[usize], i: usize) -> Vec<usize> {
    let mut out = v.to_vec();
    out.remove(i);
    out
}

/// The map `Δⁿ -> X` classifying an `n`-simplex of `X`.
pub fn simplex_map(target: Arc<FiniteSimplicialSet>, simplex: &Simplex) -> Result<SimplicialMap> {
    let delta = Arc::new(standard(StandardKind::Simplex(simplex.degree()))?);
    let assignment = (0..=delta.top_dim())
        .map(|m| (0..delta.cell_count(m)).map(|c| target.act(simplex, &delta.vertices(m, c))).collect())
        .collect();
    SimplicialMap::new(delta, target, assignment)
}

/// The product together with its two projections.
#[derive(Clone, Debug)]
pub struct ProductSpace {
    pub space: Arc<FiniteSimplicialSet>,
    pub first: SimplicialMap,
    pub second: SimplicialMap,
}

type PairKey = (usize, usize, usize, usize, Vec<usize>, Vec<usize>);

fn collapses(s: &[usize]) -> impl Iterator<Item = usize> + '_ {
    s.windows(2).enumerate().filter(|(_, w)| w[0] == w[1]).map(|(j, _)| j)
}

/// Splits a pair of equal-degree simplices into a common degeneracy and a
/// nondegenerate pair.
fn normalize_pair(a: &Simplex, b: &Simplex) -> (Vec<usize>, PairKey) {
    let joint: Vec<(usize, usize)> = a.surjection().iter().copied().zip(b.surjection().iter().copied()).collect();
    let mut epi = Vec::with_capacity(joint.len());
    let mut sa = Vec::new();
    let mut sb = Vec::new();
    for (k, &(va, vb)) in joint.iter().enumerate() {
        if k > 0 && joint[k - 1] == (va, vb) {
            epi.push(sa.len() - 1);
        } else {
            sa.push(va);
            sb.push(vb);
            epi.push(sa.len() - 1);
        }
    }
    (epi, (a.cell_dim(), a.cell(), b.cell_dim(), b.cell(), sa, sb))
}

/// Categorical product, with nondegenerate cells enumerated as shuffles of
/// pairs of cells.
pub fn product(x: &Arc<FiniteSimplicialSet>, y: &Arc<FiniteSimplicialSet>) -> Result<ProductSpace> {
    let top = x.top_dim() + y.top_dim();
    let mut keys: Vec<Vec<PairKey>> = vec![Vec::new(); top + 1];
    for (m, level) in keys.iter_mut().enumerate() {
        for p in 0..=m.min(x.top_dim()) {
            for q in 0..=m.min(y.top_dim()) {
                if p + q < m {
                    continue;
                }
                let sa_all = surjections(m, p);
                let sb_all = surjections(m, q);
                for xc in 0..x.cell_count(p) {
                    for yc in 0..y.cell_count(q) {
                        for sa in &sa_all {
                            for sb in &sb_all {
                                let disjoint = collapses(sa).all(|j| sb[j] != sb[j + 1]);
                                if disjoint {
                                    level.push((p, xc, q, yc, sa.clone(), sb.clone()));
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    let index: Vec<BTreeMap<PairKey, usize>> =
        keys.iter().map(|level| level.iter().cloned().enumerate().map(|(k, key)| (key, k)).collect()).collect();
    let mut labels = Vec::with_capacity(keys.len());
    let mut faces = Vec::with_capacity(keys.len());
    let mut first = Vec::with_capacity(keys.len());
    let mut second = Vec::with_capacity(keys.len());
    let vertex_label = |xv: usize, yv: usize| format!("({},{})", x.label(0, xv), y.label(0, yv));
    for (m, level) in keys.iter().enumerate() {
        let mut level_labels = Vec::with_capacity(level.len());
        let mut level_faces = Vec::with_capacity(level.len());
        let mut level_first = Vec::with_capacity(level.len());
        let mut level_second = Vec::with_capacity(level.len());
        for (p, xc, q, yc, sa, sb) in level {
            let a = Simplex::from_parts(sa.clone(), *xc);
            let b = Simplex::from_parts(sb.clone(), *yc);
            let xv = x.vertices(*p, *xc);
            let yv = y.vertices(*q, *yc);
            let label: String = (0..=m).map(|j| vertex_label(xv[sa[j]], yv[sb[j]])).collect::<Vec<_>>().concat();
            level_labels.push(label);
            let cell_faces = if m == 0 {
                Vec::new()
            } else {
                (0..=m)
                    .map(|i| {
                        let (epi, key) = normalize_pair(&x.face_of(&a, i), &y.face_of(&b, i));
                        let r = key.4.len() - 1;
                        Simplex::from_parts(epi, index[r][&key])
                    })
                    .collect()
            };
            level_faces.push(cell_faces);
            level_first.push(a);
            level_second.push(b);
        }
        labels.push(level_labels);
        faces.push(level_faces);
        first.push(level_first);
        second.push(level_second);
    }
    let space = Arc::new(FiniteSimplicialSet::from_raw(labels, faces));
    first.truncate(space.top_dim() + 1);
    second.truncate(space.top_dim() + 1);
    let first = SimplicialMap::new(space.clone(), x.clone(), first)?;
    let second = SimplicialMap::new(space.clone(), y.clone(), second)?;
    Ok(ProductSpace { space, first, second })
}

/// Which input of a pushout a cell came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Side {
    Left,
    Right,
}

/// The pushout `X ⊔_A Y` with its two legs.
#[derive(Clone, Debug)]
pub struct SimplicialPushout {
    pub space: Arc<FiniteSimplicialSet>,
    /// `X -> P`
    pub left: SimplicialMap,
    /// `Y -> P`
    pub right: SimplicialMap,
    origin: Vec<Vec<(Side, usize)>>,
}

impl SimplicialPushout {
    /// The map out of the pushout induced by `hx: X -> Z` and `hy: Y -> Z`.
    pub fn induced(&self, hx: &SimplicialMap, hy: &SimplicialMap) -> Result<SimplicialMap> {
        if *hx.target() != *hy.target() {
            return Err(Error::NotSimplicial("induced map needs a common target".into()));
        }
        let assignment = self
            .origin
            .iter()
            .enumerate()
            .map(|(n, cells)| {
                cells
                    .iter()
                    .map(|&(side, c)| match side {
                        Side::Left => hx.image_of_cell(n, c).clone(),
                        Side::Right => hy.image_of_cell(n, c).clone(),
                    })
                    .collect()
            })
            .collect();
        SimplicialMap::new(self.space.clone(), hx.target().clone(), assignment)
    }
}

/// Levelwise pushout of `X <-f- A -g-> Y`. At least one leg must be
/// injective; the other leg's target keeps its cells and indices.
pub fn pushout_sset(f: &SimplicialMap, g: &SimplicialMap) -> Result<SimplicialPushout> {
    if *f.source() != *g.source() {
        return Err(Error::NotSimplicial("pushout legs have different sources".into()));
    }
    if f.is_injective() {
        attach_along(f, g, false)
    } else if g.is_injective() {
        attach_along(g, f, true)
    } else {
        Err(Error::NoInjectiveLeg)
    }
}

/// Pushout where `mono: A -> M` is injective and `other: A -> O`; the result
/// contains `O` followed by the cells of `M` outside the image of `A`.
fn attach_along(mono: &SimplicialMap, other: &SimplicialMap, swapped: bool) -> Result<SimplicialPushout> {
    let m = mono.target();
    let o = other.target();
    let a = mono.source();
    let top = m.top_dim().max(o.top_dim());
    // preimage[n][c] = Some(a-cell) when M-cell n/c is the image of an A-cell
    let mut preimage: Vec<Vec<Option<usize>>> = (0..=m.top_dim()).map(|n| vec![None; m.cell_count(n)]).collect();
    for n in 0..=a.top_dim() {
        for c in 0..a.cell_count(n) {
            let image = mono.image_of_cell(n, c);
            preimage[n][image.cell()] = Some(c);
        }
    }
    let mut new_index: Vec<Vec<Option<usize>>> = Vec::with_capacity(m.top_dim() + 1);
    let mut labels: Vec<Vec<String>> = Vec::with_capacity(top + 1);
    let mut origin: Vec<Vec<(Side, usize)>> = Vec::with_capacity(top + 1);
    let (other_side, mono_side) = if swapped { (Side::Left, Side::Right) } else { (Side::Right, Side::Left) };
    for n in 0..=top {
        let mut level_labels: Vec<String> = if n <= o.top_dim() { o.labels(n).to_vec() } else { Vec::new() };
        let mut level_origin: Vec<(Side, usize)> = (0..o.cell_count(n)).map(|c| (other_side, c)).collect();
        let mut level_new = Vec::new();
        if n <= m.top_dim() {
            for c in 0..m.cell_count(n) {
                if preimage[n][c].is_none() {
                    level_new.push(Some(level_labels.len()));
                    level_labels.push(m.label(n, c).into());
                    level_origin.push((mono_side, c));
                } else {
                    level_new.push(None);
                }
            }
            new_index.push(level_new);
        }
        labels.push(level_labels);
        origin.push(level_origin);
    }
    // image in P of an M-simplex
    let image_of = |s: &Simplex| -> Simplex {
        let (n, c) = (s.cell_dim(), s.cell());
        match preimage[n][c] {
            Some(ac) => o.act(other.image_of_cell(n, ac), s.surjection()),
            None => Simplex::from_parts(s.surjection().to_vec(), new_index[n][c].expect("cell outside image")),
        }
    };
    let mut faces: Vec<Vec<Vec<Simplex>>> = Vec::with_capacity(top + 1);
    for n in 0..=top {
        let mut level: Vec<Vec<Simplex>> = Vec::with_capacity(labels[n].len());
        for &(side, c) in &origin[n] {
            if n == 0 {
                level.push(Vec::new());
            } else if side == other_side {
                level.push((0..=n).map(|i| o.face(n, c, i).clone()).collect());
            } else {
                level.push((0..=n).map(|i| image_of(m.face(n, c, i))).collect());
            }
        }
        faces.push(level);
    }
    let space = Arc::new(FiniteSimplicialSet::from_raw(labels, faces));
    space.check()?;
    origin.truncate(space.top_dim() + 1);
    let other_leg =
        (0..=o.top_dim()).map(|n| (0..o.cell_count(n)).map(|c| Simplex::nondegenerate(n, c)).collect()).collect();
    let other_leg = SimplicialMap::new(o.clone(), space.clone(), other_leg)?;
    let mono_leg = (0..=m.top_dim())
        .map(|n| (0..m.cell_count(n)).map(|c| image_of(&Simplex::nondegenerate(n, c))).collect())
        .collect();
    let mono_leg = SimplicialMap::new(m.clone(), space.clone(), mono_leg)?;
    let (left, right) = if swapped { (other_leg, mono_leg) } else { (mono_leg, other_leg) };
    Ok(SimplicialPushout { space, left, right, origin })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn arc(kind: StandardKind) -> Arc<FiniteSimplicialSet> {
        Arc::new(standard(kind).unwrap())
    }

    #[test]
    fn standard_cell_counts() {
        assert_eq!(standard(StandardKind::Simplex(0)).unwrap().cell_counts(), vec![1]);
        assert_eq!(standard(StandardKind::Simplex(2)).unwrap().cell_counts(), vec![3, 3, 1]);
        assert_eq!(standard(StandardKind::Boundary(2)).unwrap().cell_counts(), vec![3, 3]);
        assert_eq!(standard(StandardKind::Horn(2, 1)).unwrap().cell_counts(), vec![3, 2]);
        assert_eq!(standard(StandardKind::Horn(3, 0)).unwrap().cell_counts(), vec![4, 6, 3]);
        assert_eq!(standard(StandardKind::Horn(2, 3)), Err(Error::InvalidHorn { n: 2, k: 3 }));
        assert!(standard(StandardKind::Boundary(0)).unwrap().is_empty());
    }

    #[test]
    fn square_is_two_triangles() {
        let i = arc(StandardKind::Simplex(1));
        let sq = product(&i, &i).unwrap();
        assert_eq!(sq.space.cell_counts(), vec![4, 5, 2]);
        assert_eq!(sq.space.euler_characteristic(), 1);
        sq.space.check().unwrap();
    }

    #[test]
    fn product_with_point_is_identity_shaped() {
        let b = arc(StandardKind::Boundary(2));
        let pt = arc(StandardKind::Simplex(0));
        let p = product(&b, &pt).unwrap();
        assert_eq!(p.space.cell_counts(), b.cell_counts());
        assert!(p.first.is_isomorphism());
        let pp = product(&pt, &pt).unwrap();
        assert_eq!(pp.space.cell_counts(), vec![1]);
    }

    #[test]
    fn prism_cell_counts() {
        // Δ² × Δ¹: 6 vertices, 3+3+... (shuffle count 3 top cells)
        let p = product(&arc(StandardKind::Simplex(2)), &arc(StandardKind::Simplex(1))).unwrap();
        assert_eq!(p.space.cell_counts(), vec![6, 12, 10, 3]);
        assert_eq!(p.space.euler_characteristic(), 1);
    }

    #[test]
    fn collapsing_an_endpoint_gives_a_loop() {
        let boundary = arc(StandardKind::Boundary(1));
        let interval = arc(StandardKind::Simplex(1));
        let point = arc(StandardKind::Simplex(0));
        let incl = SimplicialMap::new(
            boundary.clone(),
            interval,
            vec![vec![Simplex::nondegenerate(0, 0), Simplex::nondegenerate(0, 1)]],
        )
        .unwrap();
        let collapse =
            SimplicialMap::new(boundary, point, vec![vec![Simplex::nondegenerate(0, 0), Simplex::nondegenerate(0, 0)]])
                .unwrap();
        let po = pushout_sset(&incl, &collapse).unwrap();
        assert_eq!(po.space.cell_counts(), vec![1, 1]);
        // square commutes
        assert!(incl.then(&po.left).unwrap().same_assignment(&collapse.then(&po.right).unwrap()));
        // swapped argument order gives the same shape
        let po2 = pushout_sset(&collapse, &incl).unwrap();
        assert_eq!(po2.space.cell_counts(), vec![1, 1]);
    }

    #[test]
    fn pushout_needs_an_injective_leg() {
        let boundary = arc(StandardKind::Boundary(1));
        let point = arc(StandardKind::Simplex(0));
        let collapse =
            SimplicialMap::new(boundary, point, vec![vec![Simplex::nondegenerate(0, 0), Simplex::nondegenerate(0, 0)]])
                .unwrap();
        assert!(matches!(pushout_sset(&collapse, &collapse), Err(Error::NoInjectiveLeg)));
    }

    #[test]
    fn pushout_along_identity() {
        let x = arc(StandardKind::Boundary(2));
        let id = SimplicialMap::identity(x.clone());
        let po = pushout_sset(&id, &id).unwrap();
        assert_eq!(po.space.cell_counts(), x.cell_counts());
        assert!(po.left.is_isomorphism());
    }

    #[test]
    fn classifying_map_of_a_simplex() {
        let x = arc(StandardKind::Simplex(2));
        let s = Simplex::nondegenerate(2, 0);
        let m = simplex_map(x, &s).unwrap();
        assert!(m.is_isomorphism());
    }
}
