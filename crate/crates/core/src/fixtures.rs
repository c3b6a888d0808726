//! Named small diagrams shared by tests, the acceptance suite and the CLI.
//!
//! Simplicial-set fixtures take the truncation cap as a parameter. Category
//! fixtures are exact and become simplicial through
//! [`CatDiagram::nerve_diagram`].

use crate::diagram::{CatDiagram, SSetDiagram};
use crate::fincat::{CatFunctor, FinCategory};
use crate::sset::{
    coproduct, pushout, simplex, simplex_keyed, simplex_map, sub_sset, SimplicialMap, TruncSSet,
};

/// A diagram whose morphisms act by `arrow(source, target)` on non-identities.
fn over_shape<T: Clone>(
    shape: &FinCategory,
    identity: impl Fn(usize) -> T,
    arrow: impl Fn(usize, usize) -> T,
) -> Vec<T> {
    (0..shape.num_morphisms())
        .map(|f| {
            if shape.is_identity(f) {
                identity(shape.source(f))
            } else {
                arrow(shape.source(f), shape.target(f))
            }
        })
        .collect()
}

fn constant_map(x: &TruncSSet) -> SimplicialMap {
    SimplicialMap::new((0..=x.cap()).map(|n| vec![0; x.size(n)]).collect())
}

/// Δ[1] with its endpoints glued.
pub fn circle(cap: usize) -> TruncSSet {
    let keyed = simplex_keyed(1, cap);
    let ends = sub_sset(&keyed.sset, |n, x| {
        let a = keyed.key(n, x);
        a.first() == a.last()
    })
    .expect("endpoints form a subobject");
    let pt = simplex(0, cap);
    pushout(
        &ends.sset,
        &keyed.sset,
        &pt,
        &ends.inclusion,
        &constant_map(&ends.sset),
    )
    .expect("circle pushout")
    .sset
}

/// Span `a <- c -> b` with a point at `a` and `b` and two points at `c`.
pub fn span_points(cap: usize) -> SSetDiagram {
    let pt = simplex(0, cap);
    let two = coproduct(&[&pt, &pt], cap).expect("two points").sset;
    let values = vec![pt.clone(), pt, two];
    let maps = over_shape(
        &FinCategory::span(),
        |c| SimplicialMap::identity(&values[c]),
        |_, _| constant_map(&values[2]),
    );
    SSetDiagram::checked(FinCategory::span(), values, maps).expect("span of points")
}

/// `[1]`-shaped: a point included into Δ[1] at vertex 0.
pub fn point_into_interval(cap: usize) -> SSetDiagram {
    let shape = FinCategory::ordinal(1);
    let values = vec![simplex(0, cap), simplex(1, cap)];
    let maps = over_shape(
        &shape,
        |c| SimplicialMap::identity(&values[c]),
        |_, _| simplex_map(0, 1, &[0], cap),
    );
    SSetDiagram::checked(shape, values, maps).expect("point into interval")
}

/// `[1]`-shaped: the inner horn Λ¹[2] included into Δ[2].
pub fn horn_into_simplex(cap: usize) -> SSetDiagram {
    let shape = FinCategory::ordinal(1);
    let keyed = simplex_keyed(2, cap);
    let horn = sub_sset(&keyed.sset, |n, x| {
        let a = keyed.key(n, x);
        !(a.contains(&0) && a.contains(&2))
    })
    .expect("horn is a subobject");
    let values = vec![horn.sset.clone(), keyed.sset.clone()];
    let maps = over_shape(
        &shape,
        |c| SimplicialMap::identity(&values[c]),
        |_, _| horn.inclusion.clone(),
    );
    SSetDiagram::checked(shape, values, maps).expect("horn into simplex")
}

/// The constant point over `[2]`.
pub fn constant_point(cap: usize) -> SSetDiagram {
    SSetDiagram::constant(&FinCategory::ordinal(2), &simplex(0, cap))
}

/// A single circle over the terminal category.
pub fn circle_over_point(cap: usize) -> SSetDiagram {
    SSetDiagram::constant(&FinCategory::terminal(), &circle(cap))
}

/// `[1]`-shaped: the one-object discrete category into the two-object one.
pub fn discrete_into_discrete() -> CatDiagram {
    let shape = FinCategory::ordinal(1);
    let values = vec![FinCategory::discrete(1), FinCategory::discrete(2)];
    let functors = over_shape(
        &shape,
        |c| CatFunctor::identity(&values[c]),
        |_, _| CatFunctor {
            obj_map: vec![0],
            mor_map: vec![0],
        },
    );
    CatDiagram::checked(shape, values, functors).expect("discrete into discrete")
}

/// `[1]`-shaped: `[1] -> [1]` constant at the final object.
pub fn arrow_collapse() -> CatDiagram {
    let shape = FinCategory::ordinal(1);
    let v = FinCategory::ordinal(1);
    let top = v.identity(1);
    let functors = over_shape(
        &shape,
        |_| CatFunctor::identity(&v),
        |_, _| CatFunctor {
            obj_map: vec![1, 1],
            mor_map: vec![top; v.num_morphisms()],
        },
    );
    CatDiagram::checked(shape, vec![v.clone(), v], functors).expect("arrow collapse")
}

/// Span of categories `[1] <- * -> [1]` picking the two different endpoints.
pub fn poset_span() -> CatDiagram {
    let shape = FinCategory::span();
    let v = FinCategory::ordinal(1);
    let pt = FinCategory::terminal();
    let values = vec![v.clone(), v.clone(), pt.clone()];
    let functors = (0..shape.num_morphisms())
        .map(|f| {
            if shape.is_identity(f) {
                CatFunctor::identity(&values[shape.source(f)])
            } else {
                let end = if shape.target(f) == 0 { 0 } else { 1 };
                CatFunctor {
                    obj_map: vec![end],
                    mor_map: vec![v.identity(end)],
                }
            }
        })
        .collect();
    CatDiagram::checked(shape, values, functors).expect("poset span")
}

/// The span of sets `* <- ** -> *` as discrete categories.
pub fn span_sets() -> CatDiagram {
    let shape = FinCategory::span();
    let values = vec![
        FinCategory::terminal(),
        FinCategory::terminal(),
        FinCategory::discrete(2),
    ];
    let functors = (0..shape.num_morphisms())
        .map(|f| {
            if shape.is_identity(f) {
                CatFunctor::identity(&values[shape.source(f)])
            } else {
                CatFunctor {
                    obj_map: vec![0, 0],
                    mor_map: vec![0, 0],
                }
            }
        })
        .collect();
    CatDiagram::checked(shape, values, functors).expect("span of sets")
}

/// `[1]`-shaped: `[1]` included into `[2]` as the initial segment.
pub fn segment_inclusion() -> CatDiagram {
    let shape = FinCategory::ordinal(1);
    let (a, b) = (FinCategory::ordinal(1), FinCategory::ordinal(2));
    let mor_map: Vec<usize> = (0..a.num_morphisms())
        .map(|f| b.hom(a.source(f), a.target(f))[0])
        .collect();
    let values = vec![a, b];
    let functors = over_shape(
        &shape,
        |c| CatFunctor::identity(&values[c]),
        |_, _| CatFunctor {
            obj_map: vec![0, 1],
            mor_map: mor_map.clone(),
        },
    );
    CatDiagram::checked(shape, values, functors).expect("segment inclusion")
}

/// The walking isomorphism, constant over `[1]`.
pub fn constant_groupoid() -> CatDiagram {
    CatDiagram::constant(&FinCategory::ordinal(1), &FinCategory::walking_iso())
}

/// The group of order two over the terminal category.
pub fn cyclic_over_point() -> CatDiagram {
    CatDiagram::constant(&FinCategory::terminal(), &FinCategory::cyclic_group(2))
}

/// Category-valued fixtures by name.
pub fn cat_catalog() -> Vec<(&'static str, CatDiagram)> {
    vec![
        ("span-sets", span_sets()),
        ("discrete-into-discrete", discrete_into_discrete()),
        ("arrow-collapse", arrow_collapse()),
        ("poset-span", poset_span()),
        ("segment-inclusion", segment_inclusion()),
        ("constant-groupoid", constant_groupoid()),
        ("cyclic-over-point", cyclic_over_point()),
        (
            "terminal-over-span",
            CatDiagram::constant(&FinCategory::span(), &FinCategory::terminal()),
        ),
    ]
}

/// Simplicial-set fixtures by name, including the nerves of the category
/// fixtures, all truncated at `cap`.
pub fn sset_catalog(cap: usize) -> Vec<(String, SSetDiagram)> {
    let mut out: Vec<(String, SSetDiagram)> = vec![
        ("span-points".into(), span_points(cap)),
        ("point-into-interval".into(), point_into_interval(cap)),
        ("horn-into-simplex".into(), horn_into_simplex(cap)),
        ("constant-point".into(), constant_point(cap)),
        ("circle-over-point".into(), circle_over_point(cap)),
    ];
    for (name, d) in cat_catalog() {
        out.push((format!("nerve-of-{name}"), d.nerve_diagram(cap)));
    }
    out
}

/// Groupoids whose nerves are contractible: one morphism between any two objects.
pub fn contractible_groupoids() -> Vec<(&'static str, FinCategory)> {
    vec![
        ("point", FinCategory::chaotic(1)),
        ("walking-iso", FinCategory::chaotic(2)),
        ("chaotic-3", FinCategory::chaotic(3)),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certcheck::check_simplicial_identities;
    use crate::homology::homology_table;

    #[test]
    fn every_fixture_is_functorial() {
        for (name, d) in cat_catalog() {
            assert!(d.validate().is_empty(), "{name}");
        }
        for (name, d) in sset_catalog(3) {
            assert!(d.validate().is_empty(), "{name}");
            for v in &d.values {
                assert!(check_simplicial_identities(v).passed(), "{name}");
            }
        }
    }

    #[test]
    fn circle_has_circle_homology() {
        let c = circle(3);
        assert_eq!(c.nondegenerate_counts(), vec![1, 1, 0, 0]);
        let h = homology_table(&c, 2).unwrap();
        assert_eq!((h[0].betti, h[1].betti, h[2].betti), (1, 1, 0));
    }

    #[test]
    fn horn_has_two_edges() {
        let d = horn_into_simplex(2);
        assert_eq!(d.values[0].nondegenerate_counts(), vec![3, 2, 0]);
    }
}
