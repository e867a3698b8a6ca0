//! Fixed instances shared by the scenarios and the acceptance suite.

use std::sync::Arc;

use thomason_core::category::{FinCategory, FinPoset};
use thomason_core::filtration::{FiniteMonoid, HomFiltrationProblem, MonoidPushoutProblem, SetInclusion};

use crate::formats::{CatPresDoc, MuroInstanceDoc};

fn names(xs: &[&str]) -> Vec<String> {
    xs.iter().map(|s| s.to_string()).collect()
}

fn monoid_problem(monoid: FiniteMonoid, l: &[&str], k: &[usize], attach: Vec<usize>) -> MonoidPushoutProblem {
    MonoidPushoutProblem::new(monoid, SetInclusion::new(names(l), k).unwrap(), attach).unwrap()
}

/// Monoid pushouts `M ⊔_{T(K)} T(L)`, named.
pub fn monoid_problems() -> Vec<(&'static str, MonoidPushoutProblem)> {
    vec![
        ("free-one", monoid_problem(FiniteMonoid::trivial(), &["a"], &[], vec![])),
        ("trivial-glued", monoid_problem(FiniteMonoid::trivial(), &["a", "b"], &[1], vec![0])),
        ("z2-free", monoid_problem(FiniteMonoid::cyclic(2), &["a"], &[], vec![])),
        ("z2-glued", monoid_problem(FiniteMonoid::cyclic(2), &["a", "b"], &[1], vec![1])),
        ("idempotent-free", monoid_problem(FiniteMonoid::idempotent(), &["a"], &[], vec![])),
        ("idempotent-glued", monoid_problem(FiniteMonoid::idempotent(), &["a", "b"], &[0], vec![1])),
        ("z3-all-glued", monoid_problem(FiniteMonoid::cyclic(3), &["a"], &[0], vec![1])),
    ]
}

const ARROW: &str = r#"{"objects":["0","1"],"arrows":[{"name":"u","src":"0","dst":"1"}],"relations":[]}"#;

const PAIR: &str = r#"{"objects":["a","b"],"arrows":[],"relations":[]}"#;

/// `f: p -> q`, `g: q -> p` with `f;g = id`, so `g;f` is an idempotent on `q`.
const SPLIT: &str = r#"{"objects":["p","q"],
    "arrows":[{"name":"f","src":"p","dst":"q"},{"name":"g","src":"q","dst":"p"}],
    "relations":[[[],["f","g"]]]}"#;

fn muro(category: &str, ends: [&str; 4], l: &[&str], attach: &[(&str, &[&str])]) -> MuroInstanceDoc {
    let [a, b, x, y] = ends;
    MuroInstanceDoc {
        category: serde_json::from_str(category).unwrap(),
        a: a.into(),
        b: b.into(),
        x: x.into(),
        y: y.into(),
        l: names(l),
        k: attach.iter().map(|(k, _)| k.to_string()).collect(),
        attach: attach.iter().map(|(k, p)| (k.to_string(), names(p))).collect(),
    }
}

/// Hom-set filtration instances over presented categories.
pub fn muro_instances() -> Vec<(&'static str, MuroInstanceDoc)> {
    vec![
        ("arrow-loop", muro(ARROW, ["1", "0", "1", "1"], &["m"], &[])),
        ("disjoint-pair", muro(PAIR, ["a", "b", "a", "b"], &["m"], &[])),
        ("arrow-glued", muro(ARROW, ["0", "1", "0", "1"], &["m"], &[("m", &["u"])])),
        ("split-idempotent", muro(SPLIT, ["q", "p", "p", "q"], &["m", "n"], &[("n", &["g"])])),
    ]
}

pub fn muro_problems() -> Vec<(&'static str, HomFiltrationProblem)> {
    muro_instances().into_iter().map(|(name, doc)| (name, doc.to_problem().unwrap())).collect()
}

/// Categories with a pivot object for the threshold retraction.
pub fn szpilrajn_instances() -> Vec<(&'static str, Arc<FinCategory>, usize)> {
    let poset = |p: FinPoset| Arc::new(p.to_category());
    let vee = FinPoset::from_relations(names(&["a", "b", "c"]), &[(0, 1), (0, 2)]).unwrap();
    let iso_pair: CatPresDoc = serde_json::from_str(
        r#"{"objects":["p","q","w"],
        "arrows":[{"name":"f","src":"p","dst":"q"},{"name":"g","src":"q","dst":"p"},{"name":"h","src":"q","dst":"w"}],
        "relations":[[[],["f","g"]],[[],["g","f"]]]}"#,
    )
    .unwrap();
    vec![
        ("arrow-at-source", poset(FinPoset::chain(2)), 0),
        ("arrow-at-target", poset(FinPoset::chain(2)), 1),
        ("chain-middle", poset(FinPoset::chain(3)), 1),
        ("vee-bottom", poset(vee), 0),
        ("square-side", poset(FinPoset::cube(2)), 1),
        ("discrete", poset(FinPoset::antichain(2)), 0),
        ("iso-pair", Arc::new(iso_pair.to_category().unwrap()), 0),
    ]
}

/// Sieve inclusions of posets known to admit a retraction with counit.
pub fn cd_inclusions() -> Vec<(&'static str, FinPoset, Vec<usize>)> {
    let vee = FinPoset::from_relations(names(&["a", "b", "c"]), &[(0, 1), (0, 2)]).unwrap();
    let cube = FinPoset::cube(3);
    let cube_members = |xs: &[&str]| xs.iter().map(|x| cube.index_of(x).unwrap()).collect::<Vec<_>>();
    vec![
        ("point-in-arrow", FinPoset::chain(2), vec![0]),
        ("point-in-chain3", FinPoset::chain(3), vec![0]),
        ("edge-in-chain3", FinPoset::chain(3), vec![0, 1]),
        ("point-in-chain4", FinPoset::chain(4), vec![0]),
        ("side-in-square", FinPoset::cube(2), vec![0, 1]),
        ("vee-bottom", vee, vec![0]),
        ("point-in-cube", cube.clone(), cube_members(&["000"])),
        ("edge-in-cube", cube.clone(), cube_members(&["000", "001"])),
        ("face-in-cube", cube.clone(), cube_members(&["000", "001", "010", "011"])),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpora_are_well_formed() {
        assert!(monoid_problems().len() >= 5);
        assert!(monoid_problems().iter().any(|(_, p)| p.inclusion.k().is_empty()));
        assert!(monoid_problems().iter().any(|(_, p)| !p.inclusion.k().is_empty()));
        assert!(muro_problems().len() >= 3);
        let split = &muro_problems()[3].1;
        assert_eq!(split.category.morphism_count(), 5);
        for (_, p, members) in cd_inclusions() {
            assert!(p.is_downward_closed(&members));
        }
        assert_eq!(szpilrajn_instances()[6].1.morphism_count(), 7);
    }
}
