use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use super::{simplex_map, standard, FiniteSimplicialSet, Simplex, SimplicialMap, StandardKind};
use crate::{Error, Result};

/// Default bound on `n` for [`ex_level`].
pub const DEFAULT_EX_CAP: usize = 3;

/// `Sd X` together with the cell of `X` each of its vertices stands for.
#[derive(Clone, Debug)]
pub struct Subdivision {
    pub space: FiniteSimplicialSet,
    /// `(dim, cell)` of `X` for every vertex of `Sd X`.
    pub vertex_cells: Vec<(usize, usize)>,
}

/// Barycentric subdivision of a vertex-ordered simplicial complex.
///
/// Vertices of `Sd X` are the cells of `X` ordered by dimension and then by
/// sorted vertex set; `n`-cells are flags `c_0 ⊂ ⋯ ⊂ c_n`.
pub fn subdivide(x: &FiniteSimplicialSet) -> Result<Subdivision> {
    let lists = x.complex_vertex_lists()?;
    let mut order: Vec<(usize, Vec<usize>, usize)> = Vec::with_capacity(x.total_cells());
    for (n, cells) in lists.iter().enumerate() {
        for (c, vertices) in cells.iter().enumerate() {
            let mut sorted = vertices.clone();
            sorted.sort_unstable();
            order.push((n, sorted, c));
        }
    }
    order.sort();
    let vertex_cells: Vec<(usize, usize)> = order.iter().map(|(n, _, c)| (*n, *c)).collect();
    // proper cofaces of every cell, as indices into `order`
    let mut cofaces: Vec<Vec<usize>> = vec![Vec::new(); order.len()];
    for (a, (na, va, _)) in order.iter().enumerate() {
        for (b, (nb, vb, _)) in order.iter().enumerate().skip(a + 1) {
            if nb > na && is_subset(va, vb) {
                cofaces[a].push(b);
            }
        }
    }
    let mut flags: Vec<Vec<usize>> = Vec::new();
    let mut stack: Vec<Vec<usize>> = (0..order.len()).map(|v| vec![v]).collect();
    while let Some(flag) = stack.pop() {
        let last = *flag.last().unwrap();
        for &next in &cofaces[last] {
            let mut longer = flag.clone();
            longer.push(next);
            stack.push(longer);
        }
        flags.push(flag);
    }
    let labels: Vec<String> = vertex_cells.iter().map(|&(n, c)| x.label(n, c).into()).collect();
    let space = FiniteSimplicialSet::from_simplices(labels, &flags)?;
    Ok(Subdivision { space, vertex_cells })
}

fn is_subset(small: &[usize], big: &[usize]) -> bool {
    small.iter().all(|v| big.binary_search(v).is_ok())
}

pub fn sd(x: &FiniteSimplicialSet) -> Result<FiniteSimplicialSet> {
    subdivide(x).map(|s| s.space)
}

/// The last vertex map `Sd X -> X`: a flag goes to the last vertex of each
/// of its members, read inside the largest member.
pub fn last_vertex_map(x: &Arc<FiniteSimplicialSet>) -> Result<SimplicialMap> {
    let sub = subdivide(x)?;
    let lists = x.complex_vertex_lists()?;
    let space = Arc::new(sub.space);
    let mut assignment = Vec::with_capacity(space.top_dim() + 1);
    for n in 0..=space.top_dim() {
        let mut images = Vec::with_capacity(space.cell_count(n));
        for c in 0..space.cell_count(n) {
            let flag = space.vertices(n, c);
            let (top_dim, top_cell) = sub.vertex_cells[*flag.last().unwrap()];
            let top_vertices = &lists[top_dim][top_cell];
            let op: Vec<usize> = flag
                .iter()
                .map(|&v| {
                    let (d, cell) = sub.vertex_cells[v];
                    let last = *lists[d][cell].last().unwrap();
                    top_vertices.iter().position(|&w| w == last).expect("face vertex lies in the top cell")
                })
                .collect();
            images.push(x.act(&Simplex::nondegenerate(top_dim, top_cell), &op));
        }
        assignment.push(images);
    }
    SimplicialMap::new(space, x.clone(), assignment)
}

/// `Ex(X)_n = sSet(Sd Δⁿ, X)`, by exhaustive backtracking over cell images.
pub fn ex_level(x: &Arc<FiniteSimplicialSet>, n: usize, cap: usize) -> Result<Vec<SimplicialMap>> {
    if n > cap {
        return Err(Error::CapExceeded { requested: n, cap });
    }
    let source = Arc::new(sd(&standard(StandardKind::Simplex(n))?)?);
    // simplices of X in each degree, keyed by their tuple of faces
    let mut by_boundary: Vec<BTreeMap<Vec<Simplex>, Vec<Simplex>>> = Vec::with_capacity(n + 1);
    for d in 0..=n {
        let mut table: BTreeMap<Vec<Simplex>, Vec<Simplex>> = BTreeMap::new();
        for s in x.simplices_in_degree(d) {
            let key = if d == 0 { Vec::new() } else { (0..=d).map(|i| x.face_of(&s, i)).collect() };
            table.entry(key).or_default().push(s);
        }
        by_boundary.push(table);
    }
    let cells: Vec<(usize, usize)> =
        (0..=source.top_dim()).flat_map(|d| (0..source.cell_count(d)).map(move |c| (d, c))).collect();
    let mut assignment: Vec<Vec<Option<Simplex>>> =
        (0..=source.top_dim()).map(|d| vec![None; source.cell_count(d)]).collect();
    let mut out = Vec::new();
    extend(&source, x, &by_boundary, &cells, 0, &mut assignment, &mut out)?;
    Ok(out)
}

fn extend(
    source: &Arc<FiniteSimplicialSet>,
    target: &Arc<FiniteSimplicialSet>,
    by_boundary: &[BTreeMap<Vec<Simplex>, Vec<Simplex>>],
    cells: &[(usize, usize)],
    next: usize,
    assignment: &mut Vec<Vec<Option<Simplex>>>,
    out: &mut Vec<SimplicialMap>,
) -> Result<()> {
    let Some(&(d, c)) = cells.get(next) else {
        let complete = assignment.iter().map(|level| level.iter().map(|s| s.clone().unwrap()).collect()).collect();
        out.push(SimplicialMap::new(source.clone(), target.clone(), complete)?);
        return Ok(());
    };
    let key: Vec<Simplex> = if d == 0 {
        Vec::new()
    } else {
        (0..=d)
            .map(|i| {
                let face = source.face(d, c, i);
                assignment[d - 1][face.cell()].clone().expect("lower cells are assigned first")
            })
            .collect()
    };
    let Some(candidates) = by_boundary[d].get(&key) else {
        return Ok(());
    };
    for candidate in candidates {
        assignment[d][c] = Some(candidate.clone());
        extend(source, target, by_boundary, cells, next + 1, assignment, out)?;
    }
    assignment[d][c] = None;
    Ok(())
}

/// The unit `X_n -> Ex(X)_n`: precompose the classifying map of `s` with the
/// last vertex map of `Δⁿ`.
pub fn ex_unit(x: &Arc<FiniteSimplicialSet>, s: &Simplex) -> Result<SimplicialMap> {
    let delta = Arc::new(standard(StandardKind::Simplex(s.degree()))?);
    last_vertex_map(&delta)?.then(&simplex_map(x.clone(), s)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn arc(kind: StandardKind) -> Arc<FiniteSimplicialSet> {
        Arc::new(standard(kind).unwrap())
    }

    #[test]
    fn subdivision_cell_counts() {
        assert_eq!(sd(&arc(StandardKind::Simplex(1))).unwrap().cell_counts(), vec![3, 2]);
        assert_eq!(sd(&arc(StandardKind::Simplex(2))).unwrap().cell_counts(), vec![7, 12, 6]);
        assert_eq!(sd(&arc(StandardKind::Simplex(0))).unwrap().cell_counts(), vec![1]);
        let sd3 = sd(&arc(StandardKind::Simplex(3))).unwrap();
        assert_eq!(sd3.cell_counts(), vec![15, 50, 60, 24]);
        assert_eq!(sd3.euler_characteristic(), 1);
    }

    #[test]
    fn subdivision_composes() {
        let once = sd(&arc(StandardKind::Boundary(2))).unwrap();
        let twice = sd(&once).unwrap();
        assert_eq!(once.cell_counts(), vec![6, 6]);
        assert_eq!(twice.cell_counts(), vec![12, 12]);
    }

    #[test]
    fn subdivision_rejects_non_complexes() {
        // a loop: one vertex, one edge
        let x = FiniteSimplicialSet::new(
            vec![vec!["v".into()], vec!["e".into()]],
            vec![vec![vec![]], vec![vec![Simplex::nondegenerate(0, 0), Simplex::nondegenerate(0, 0)]]],
        )
        .unwrap();
        assert!(matches!(sd(&x), Err(Error::NotAComplex(_))));
    }

    #[test]
    fn last_vertex_on_the_interval() {
        let interval = arc(StandardKind::Simplex(1));
        let lv = last_vertex_map(&interval).unwrap();
        let labels = lv.source().labels(0).to_vec();
        let image = |label: &str| {
            let v = labels.iter().position(|l| l == label).unwrap();
            lv.image_of_cell(0, v).cell()
        };
        assert_eq!(image("0"), 0);
        assert_eq!(image("1"), 1);
        assert_eq!(image("01"), 1);
    }

    #[test]
    fn last_vertex_on_the_point_is_identity() {
        let pt = arc(StandardKind::Simplex(0));
        let lv = last_vertex_map(&pt).unwrap();
        assert!(lv.is_isomorphism());
    }

    #[test]
    fn ex_levels_of_small_targets() {
        let pt = arc(StandardKind::Simplex(0));
        for n in 0..=DEFAULT_EX_CAP {
            assert_eq!(ex_level(&pt, n, DEFAULT_EX_CAP).unwrap().len(), 1);
        }
        let interval = arc(StandardKind::Simplex(1));
        assert_eq!(ex_level(&interval, 0, DEFAULT_EX_CAP).unwrap().len(), 2);
        assert_eq!(ex_level(&interval, 1, DEFAULT_EX_CAP).unwrap().len(), 5);
        assert_eq!(
            ex_level(&interval, 4, DEFAULT_EX_CAP).unwrap_err(),
            Error::CapExceeded { requested: 4, cap: DEFAULT_EX_CAP }
        );
    }

    #[test]
    fn unit_lands_in_ex() {
        let x = arc(StandardKind::Simplex(1));
        let maps = ex_level(&x, 1, DEFAULT_EX_CAP).unwrap();
        for s in x.simplices_in_degree(1) {
            let unit = ex_unit(&x, &s).unwrap();
            assert!(maps.iter().any(|m| m.same_assignment(&unit)));
        }
    }
}
