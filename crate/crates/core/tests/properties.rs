use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

use thomason_core::category::{
    cat_product, cosieve_generated, fundamental_category, is_cosieve, iso_check, nerve, nerve_map, preorder_of,
    saturate, szpilrajn_extend, FinPoset, DEFAULT_MAX_PATH_LEN,
};
use thomason_core::homology::{homology, is_homology_iso, smith_normal_form, Matrix};
use thomason_core::simplicial::{last_vertex_map, product, sd, standard, StandardKind};

fn poset_strategy(max: usize) -> impl Strategy<Value = FinPoset> {
    (1..=max).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
            let mut pairs = Vec::new();
            let mut k = 0;
            for a in 0..n {
                for b in a + 1..n {
                    if bits[k] {
                        pairs.push((a, b));
                    }
                    k += 1;
                }
            }
            FinPoset::from_relations((0..n).map(|a| format!("p{a}")).collect(), &pairs).unwrap()
        })
    })
}

fn matrix_strategy() -> impl Strategy<Value = Matrix<i64>> {
    (1..=12usize, 1..=12usize).prop_flat_map(|(r, c)| {
        proptest::collection::vec(-9i64..=9, r * c)
            .prop_map(move |data| Matrix::from_rows(data.chunks(c).map(<[i64]>::to_vec).collect()))
    })
}

/// Fraction-free Gaussian elimination: rank, and the determinant when square.
fn bareiss(m: &Matrix<BigInt>) -> (usize, BigInt) {
    let (rows, cols) = (m.rows(), m.cols());
    let mut a: Vec<Vec<BigInt>> = (0..rows).map(|i| m.row(i).to_vec()).collect();
    let mut sign = BigInt::one();
    let mut previous = BigInt::one();
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&i| !a[i][col].is_zero()) else { continue };
        if p != rank {
            a.swap(p, rank);
            sign = -sign;
        }
        for i in rank + 1..rows {
            for j in col + 1..cols {
                let value = (&a[i][j] * &a[rank][col] - &a[i][col] * &a[rank][j]) / &previous;
                a[i][j] = value;
            }
            a[i][col] = BigInt::zero();
        }
        previous = a[rank][col].clone();
        rank += 1;
    }
    let det = if rows == cols && rank == rows { sign * &a[rows - 1][cols - 1] } else { BigInt::zero() };
    (rank, det)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn fundamental_category_of_a_nerve_is_the_poset(p in poset_strategy(6)) {
        let c = p.to_category();
        let n = nerve(&c).unwrap();
        let back = saturate(&fundamental_category(&n), DEFAULT_MAX_PATH_LEN).unwrap();
        prop_assert!(iso_check(&back.category, &c).unwrap().is_some());
    }

    #[test]
    fn generated_cosieve_is_the_smallest(p in poset_strategy(6), mask in 0u32..64) {
        let c = p.to_category();
        let n = p.size();
        let members: Vec<usize> = (0..n).filter(|&a| mask >> a & 1 == 1).collect();
        let z = cosieve_generated(&c, &members);
        prop_assert!(is_cosieve(&c, &z));
        prop_assert!(members.iter().all(|m| z.contains(m)));
        for other in 0u32..(1 << n) {
            let candidate: Vec<usize> = (0..n).filter(|&a| other >> a & 1 == 1).collect();
            if is_cosieve(&c, &candidate) && members.iter().all(|m| candidate.contains(m)) {
                prop_assert!(z.iter().all(|x| candidate.contains(x)));
            }
        }
    }

    #[test]
    fn szpilrajn_extension_is_total_and_contains(p in poset_strategy(6)) {
        let order = preorder_of(&p.to_category());
        let total = szpilrajn_extend(&order);
        prop_assert!(total.is_total());
        prop_assert!(total.contains(&order));
        prop_assert_eq!(total.classes(), order.classes());
    }

    #[test]
    fn nerve_of_a_product_is_the_product_of_nerves(p in poset_strategy(3), q in poset_strategy(3)) {
        let (c, d) = (Arc::new(p.to_category()), Arc::new(q.to_category()));
        let prod = cat_product(&c, &d).unwrap();
        let nc = Arc::new(nerve(&c).unwrap());
        let nd = Arc::new(nerve(&d).unwrap());
        let target = product(&nc, &nd).unwrap();
        let n_prod = nerve(&prod.category).unwrap();
        let (first, second) = (nerve_map(&prod.first).unwrap(), nerve_map(&prod.second).unwrap());
        prop_assert_eq!(n_prod.cell_counts(), target.space.cell_counts());
        // the comparison map is determined by the two projections; it must be a bijection on cells
        for m in 0..n_prod.cell_counts().len() {
            let mut hit = vec![false; target.space.cell_count(m)];
            for cell in 0..n_prod.cell_count(m) {
                let pair = (first.image_of_cell(m, cell), second.image_of_cell(m, cell));
                let matches: Vec<usize> = (0..target.space.cell_count(m))
                    .filter(|&t| (target.first.image_of_cell(m, t), target.second.image_of_cell(m, t)) == pair)
                    .collect();
                prop_assert_eq!(matches.len(), 1);
                prop_assert!(!std::mem::replace(&mut hit[matches[0]], true));
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn smith_normal_form_postconditions(m in matrix_strategy()) {
        let snf = smith_normal_form(&m);
        let big = m.to_big();
        prop_assert_eq!(snf.u.mul(&big).mul(&snf.v), snf.d());
        let d = &snf.diagonal;
        prop_assert_eq!(d.len(), m.rows().min(m.cols()));
        prop_assert!(d.iter().all(|x| !x.is_negative()));
        for k in 1..d.len() {
            prop_assert!(d[k].is_zero() || (!d[k - 1].is_zero() && (&d[k] % &d[k - 1]).is_zero()));
        }
        prop_assert_eq!(bareiss(&snf.u).1.abs(), BigInt::one());
        prop_assert_eq!(bareiss(&snf.v).1.abs(), BigInt::one());
        let (rank, det) = bareiss(&big);
        prop_assert_eq!(snf.rank(), rank);
        if m.rows() == m.cols() {
            prop_assert_eq!(det.abs(), d.iter().fold(BigInt::one(), |acc, x| acc * x));
        }
    }
}

fn standard_spaces() -> Vec<StandardKind> {
    (0..=3).map(StandardKind::Simplex).chain((1..=3).map(StandardKind::Boundary)).collect()
}

#[test]
fn subdivision_preserves_homology_and_euler_characteristic() {
    for kind in standard_spaces() {
        let x = standard(kind).unwrap();
        let sx = sd(&x).unwrap();
        assert_eq!(homology(&sx), homology(&x), "{kind:?}");
        assert_eq!(sx.euler_characteristic(), x.euler_characteristic(), "{kind:?}");
    }
}

#[test]
fn last_vertex_maps_have_acyclic_cones() {
    for kind in standard_spaces() {
        let x = Arc::new(standard(kind).unwrap());
        assert!(is_homology_iso(&last_vertex_map(&x).unwrap()).iso, "{kind:?}");
    }
}

#[test]
fn euler_characteristic_is_multiplicative() {
    let kinds =
        [StandardKind::Simplex(1), StandardKind::Boundary(2), StandardKind::Horn(2, 0), StandardKind::Boundary(1)];
    for a in kinds {
        for b in kinds {
            let (x, y) = (Arc::new(standard(a).unwrap()), Arc::new(standard(b).unwrap()));
            let p = product(&x, &y).unwrap();
            assert_eq!(p.space.euler_characteristic(), x.euler_characteristic() * y.euler_characteristic());
        }
    }
}

fn complex_strategy() -> impl Strategy<Value = thomason_core::simplicial::FiniteSimplicialSet> {
    proptest::collection::vec(proptest::sample::subsequence((0..5usize).collect::<Vec<_>>(), 1..=4), 1..=5).prop_map(
        |simplices| {
            thomason_core::simplicial::FiniteSimplicialSet::from_simplices(
                (0..5).map(|v| format!("v{v}")).collect(),
                &simplices,
            )
            .unwrap()
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn random_complexes_behave_under_subdivision(x in complex_strategy()) {
        prop_assert!(x.check().is_ok());
        let sx = sd(&x).unwrap();
        prop_assert!(sx.check().is_ok());
        prop_assert_eq!(sx.euler_characteristic(), x.euler_characteristic());
        let h = homology(&x);
        prop_assert_eq!(homology(&sx), h.clone());
        prop_assert_eq!(h.euler_characteristic(), x.euler_characteristic());
        prop_assert!(is_homology_iso(&last_vertex_map(&Arc::new(x)).unwrap()).iso);
    }

    #[test]
    fn terminal_objects_give_contractible_nerves(p in poset_strategy(6)) {
        let c = p.to_category();
        prop_assert!(c.check_laws().is_ok());
        let h = homology(&nerve(&c).unwrap());
        if thomason_core::homology::contractible_by_terminal(&c) {
            prop_assert!(h.is_point());
        }
        let components = h.betti().first().copied().unwrap_or(0);
        prop_assert!(components >= 1);
    }
}
