use proptest::prelude::*;

use relnerve::certcheck::check_simplicial_identities;
use relnerve::fincat::FinCategory;
use relnerve::homology::{homology_table, HomologyGroup};
use relnerve::marked::{localize, MarkedSSet};
use relnerve::sset::{boundary, enumerate_maps, expand, horn, simplex, FaceIndex};
use relnerve::TruncSSet;

/// Relations `i < j` on up to four elements, so every sample is a poset.
fn relations() -> impl Strategy<Value = (usize, Vec<(usize, usize)>)> {
    (1usize..=4).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .collect();
        let len = pairs.len();
        (Just(n), proptest::sample::subsequence(pairs, 0..=len))
    })
}

fn pool(i: usize) -> TruncSSet {
    match i {
        0 => simplex(0, 3),
        1 => simplex(1, 3),
        2 => boundary(1, 3),
        3 => boundary(2, 3),
        4 => horn(2, 0, 3).unwrap(),
        _ => simplex(2, 3),
    }
}

fn is_point(x: &TruncSSet, k: usize) -> bool {
    homology_table(x, k)
        .unwrap()
        .iter()
        .all(|h| h.same_group(&HomologyGroup::point(h.degree)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn poset_nerves_are_simplicial((n, rel) in relations()) {
        let p = FinCategory::poset(n, &rel).unwrap();
        prop_assert!(p.validate().violations.is_empty());
        prop_assert!(check_simplicial_identities(&p.nerve(3).sset).passed());
    }

    #[test]
    fn posets_with_a_bottom_are_contractible((n, rel) in relations()) {
        let mut rel: Vec<(usize, usize)> = rel.into_iter().map(|(a, b)| (a + 1, b + 1)).collect();
        rel.extend((1..=n).map(|i| (0, i)));
        let p = FinCategory::poset(n + 1, &rel).unwrap();
        prop_assert!(is_point(&p.nerve(3).sset, 2));
    }

    #[test]
    fn chaotic_categories_are_contractible(n in 1usize..=3) {
        prop_assert!(is_point(&FinCategory::chaotic(n).nerve(3).sset, 2));
    }

    #[test]
    fn enumerated_maps_are_simplicial(a in 0usize..6, b in 0usize..6) {
        let (x, y) = (pool(a), pool(b));
        let maps = enumerate_maps(&x, &y, &FaceIndex::new(&y, 3), &|_, _, _| true, None).unwrap();
        prop_assert!(!maps.is_empty());
        prop_assert!(maps.windows(2).all(|w| w[0] < w[1]));
        for m in &maps {
            prop_assert!(expand(&x, &y, m).check(&x, &y).is_ok());
        }
    }

    #[test]
    fn localizing_a_flat_set_changes_nothing(a in 0usize..6) {
        let x = pool(a);
        let l = localize(&MarkedSSet::flat(x.clone())).unwrap();
        prop_assert!(l.glued.is_empty());
        prop_assert_eq!(l.sset.sizes(), x.sizes());
    }
}

#[test]
fn maps_between_simplices_are_monotone_functions() {
    // Maps Δ[1] -> Δ[2] are the 6 monotone pairs.
    let (x, y) = (simplex(1, 2), simplex(2, 2));
    let maps = enumerate_maps(&x, &y, &FaceIndex::new(&y, 2), &|_, _, _| true, None).unwrap();
    assert_eq!(maps.len(), 6);
}
