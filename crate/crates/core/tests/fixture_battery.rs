//! Every construction and certificate over the whole fixture catalog.

use relnerve::certcheck::{check_simplicial_identities, cocartesian_edge, cocartesian_fibration};
use relnerve::fixtures::segment_inclusion;
use relnerve::fixtures::{cat_catalog, contractible_groupoids, sset_catalog};
use relnerve::groth_classic::{grothendieck_classic, nerve_comparison};
use relnerve::hocolim::{bar_hocolim, colim_via_marked, counit_w2, eta_unit, iota_audit};
use relnerve::homology::homology_table;
use relnerve::marked::{localize, marked_rel_nerve, natural_marking, MarkedSSet};
use relnerve::relnerve::{
    compare_relnerve_iso, fiber_comparison, lurie_grothendieck, relative_nerve_direct, PathSpaces,
};

#[test]
fn relative_nerves_satisfy_identities_and_agree() {
    for (name, d) in sset_catalog(3) {
        let r = lurie_grothendieck(&d, 3).unwrap();
        let s = relative_nerve_direct(&d, 3).unwrap();
        assert!(check_simplicial_identities(r.total()).passed(), "{name}");
        let cmp = compare_relnerve_iso(&d, &r, &s);
        assert!(
            cmp.certificate.passed(),
            "{name}: {}",
            cmp.certificate.line()
        );
    }
}

#[test]
fn fibers_recover_the_values() {
    for (name, d) in sset_catalog(3) {
        let r = lurie_grothendieck(&d, 3).unwrap();
        for c in 0..d.shape.num_objects() {
            let (_, cmp) = fiber_comparison(&r, &d, c);
            assert!(
                cmp.certificate.passed(),
                "{name}/{c}: {}",
                cmp.certificate.line()
            );
        }
    }
}

#[test]
fn identity_strings_give_exponentials() {
    for (name, d) in sset_catalog(4) {
        let ps = PathSpaces::new(&d, 3, 1).unwrap();
        for c in 0..d.shape.num_objects() {
            for n in 0..=3 {
                let cmp = ps.identity_string_comparison(&d, c, n).unwrap();
                assert!(
                    cmp.certificate.passed(),
                    "{name}/{c}/{n}: {}",
                    cmp.certificate.line()
                );
            }
        }
    }
}

#[test]
fn iota_audits_pass() {
    for (name, d) in sset_catalog(3) {
        let a = iota_audit(&d, 3).unwrap();
        assert!(
            a.certificate().passed(),
            "{name}: {}",
            a.certificate().line()
        );
    }
}

#[test]
fn colimits_agree_with_localized_marked_colimits() {
    for (name, d) in sset_catalog(3) {
        let a = colim_via_marked(&d).unwrap();
        assert!(a.certificate.passed(), "{name}: {}", a.certificate.line());
    }
}

#[test]
fn thomason_homology_agrees() {
    for (name, d) in cat_catalog() {
        let g = grothendieck_classic(&d);
        let cmp = nerve_comparison(&d, &g, 3).unwrap();
        assert!(
            cmp.certificate.passed(),
            "{name}: {}",
            cmp.certificate.line()
        );
        let bar = bar_hocolim(&d.nerve_diagram(3), 3).unwrap();
        let lhs = homology_table(bar.total(), 2).unwrap();
        let rhs = homology_table(&g.cat.nerve(3).sset, 2).unwrap();
        for (a, b) in lhs.iter().zip(&rhs) {
            assert!(a.same_group(b), "{name}: {a} vs {b}");
        }
    }
}

#[test]
fn unit_and_counit_shadows() {
    for (name, d) in cat_catalog() {
        let marked = natural_marking(d.nerve_diagram(3)).unwrap();
        let unit = eta_unit(&marked, 1).unwrap();
        let cert = unit.audit(&marked);
        assert!(cert.passed(), "{name}: {}", cert.line());
        let over = marked_rel_nerve(&marked, 3).unwrap().over;
        let w = counit_w2(&over, &d.shape, 1).unwrap();
        let cert = w.audit(&over);
        assert!(cert.passed(), "{name}: {}", cert.line());
    }
}

#[test]
fn marked_edges_are_cocartesian() {
    for (name, d) in cat_catalog() {
        let marked = natural_marking(d.nerve_diagram(4)).unwrap();
        let m = marked_rel_nerve(&marked, 4).unwrap();
        let base = d.shape.nerve(4).sset;
        let x = m.rel.total();
        for e in m.over.total.marked_edges() {
            let c = cocartesian_edge(x, &base, &m.over.projection, e, 4);
            assert!(c.passed(), "{name} edge {e}: {}", c.line());
        }
        let c = cocartesian_fibration(x, &base, &m.over.projection, 4);
        assert!(c.passed(), "{name}: {}", c.line());
    }
}

#[test]
fn localizing_contractible_groupoids_gives_a_point() {
    for (name, g) in contractible_groupoids() {
        let l = localize(&MarkedSSet::sharp(g.nerve(3).sset)).unwrap();
        for h in homology_table(&l.sset, 2).unwrap() {
            assert!(
                h.same_group(&relnerve::homology::HomologyGroup::point(h.degree)),
                "{name}: {h}"
            );
        }
    }
}

#[test]
fn unmarked_noninvertible_edge_is_not_cocartesian() {
    let d = segment_inclusion();
    let marked = natural_marking(d.nerve_diagram(3)).unwrap();
    let m = marked_rel_nerve(&marked, 3).unwrap();
    let base = d.shape.nerve(3).sset;
    let x = m.rel.total();
    let unmarked: Vec<usize> = (0..x.size(1))
        .filter(|&e| {
            !m.over.total.is_marked(e) && !base.is_degenerate(1, m.over.projection.apply(1, e))
        })
        .collect();
    assert!(!unmarked.is_empty());
    for e in unmarked {
        let c = cocartesian_edge(x, &base, &m.over.projection, e, 2);
        assert!(!c.passed(), "edge {e} unexpectedly coCartesian");
    }
}
