//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use relnerve::certcheck::{cocartesian_edge, cocartesian_fibration, verify_iso_map};
use relnerve::fixtures::{
    cat_catalog, contractible_groupoids, segment_inclusion, span_sets, sset_catalog,
};
use relnerve::groth_classic::grothendieck_classic;
use relnerve::hocolim::{bar_hocolim, colim_via_marked, counit_w2, eta_unit, iota_audit};
use relnerve::homology::{homology_table, HomologyGroup};
use relnerve::marked::{
    localize, marked_rel_nerve, natural_marking, sharp_interval_localization, MarkedSSet,
};
use relnerve::relnerve::{fiber_comparison, lurie_grothendieck, PathSpaces};
use relnerve::SimplicialMap;

use relnerve_cli::random::{random_cat_diagram, random_suite, run_battery, Battery, Bounds};
use relnerve_cli::spec::{DiagramSpec, Parsed};

type Outcome = Result<String, String>;

fn suite(battery: Battery, count: usize) -> Result<(usize, Duration), String> {
    let start = Instant::now();
    let report = random_suite(0, count, Bounds::default(), battery).map_err(|e| e.to_string())?;
    let (passed, failed) = report.counts();
    if failed > 0 {
        let first = report
            .render()
            .lines()
            .find(|l| l.contains("FAIL"))
            .unwrap_or_default()
            .to_string();
        return Err(format!("{failed} failing checks, first: {first}"));
    }
    Ok((passed, start.elapsed()))
}

fn ensure(ok: bool, why: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(why())
    }
}

fn identities_on_random() -> Outcome {
    let battery = Battery {
        identities: true,
        ..Battery::none()
    };
    let (passed, took) = suite(battery, 100)?;
    ensure(took < Duration::from_secs(60), || format!("took {took:?}"))?;
    Ok(format!(
        "100 diagrams, {passed} certificates, {:.1}s",
        took.as_secs_f64()
    ))
}

fn relnerve_iso_on_random() -> Outcome {
    let battery = Battery {
        relnerve_iso: true,
        ..Battery::none()
    };
    let (passed, _) = suite(battery, 100)?;
    Ok(format!("{passed} isomorphisms"))
}

fn fibers_on_fixtures() -> Outcome {
    let mut n = 0;
    for (name, d) in sset_catalog(3) {
        let rel = lurie_grothendieck(&d, 3).map_err(|e| format!("{name}: {e}"))?;
        for c in 0..d.shape.num_objects() {
            let cert = fiber_comparison(&rel, &d, c).1.certificate;
            ensure(cert.passed(), || format!("{name}/{c}: {}", cert.line()))?;
            n += 1;
        }
    }
    Ok(format!("{n} fibers"))
}

fn identity_strings() -> Outcome {
    let mut n = 0;
    for (name, d) in sset_catalog(4) {
        let ps = PathSpaces::new(&d, 3, 1).map_err(|e| format!("{name}: {e}"))?;
        for c in 0..d.shape.num_objects() {
            for deg in 0..=3 {
                let cert = ps
                    .identity_string_comparison(&d, c, deg)
                    .map_err(|e| e.to_string())?
                    .certificate;
                ensure(cert.passed(), || {
                    format!("{name}/{c}/n={deg}: {}", cert.line())
                })?;
                n += 1;
            }
        }
    }
    Ok(format!("{n} comparisons, n <= 3"))
}

fn thomason() -> Outcome {
    let bounds = Bounds::default();
    let battery = Battery {
        thomason: true,
        ..Battery::none()
    };
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut compared = 0;
    for i in 0..50 {
        let spec = DiagramSpec {
            cap: bounds.cap,
            diagram: Parsed::Cat(random_cat_diagram(&mut rng, &bounds)),
        };
        let r = run_battery(&spec, battery).map_err(|e| e.to_string())?;
        ensure(r.passed(), || format!("diagram {i}: {}", r.render()))?;
        compared += r.counts().0;
    }
    let span = span_sets();
    let bar = bar_hocolim(&span.nerve_diagram(3), 3).map_err(|e| e.to_string())?;
    let lhs = homology_table(bar.total(), 1).map_err(|e| e.to_string())?;
    let rhs = homology_table(&grothendieck_classic(&span).cat.nerve(3).sset, 1)
        .map_err(|e| e.to_string())?;
    for side in [&lhs, &rhs] {
        let z = |degree| HomologyGroup {
            degree,
            betti: 1,
            torsion: vec![],
        };
        ensure(
            side[0].same_group(&z(0)) && side[1].same_group(&z(1)),
            || format!("span: {} / {}", side[0], side[1]),
        )?;
    }
    Ok(format!(
        "50 diagrams ({compared} verdicts), span H0=Z H1=Z on both sides"
    ))
}

fn iota() -> Outcome {
    let mut n = 0;
    for (name, d) in sset_catalog(3) {
        let audit = iota_audit(&d, 3).map_err(|e| format!("{name}: {e}"))?;
        let cert = audit.certificate();
        ensure(cert.passed(), || format!("{name}: {}", cert.line()))?;
        n += 1;
    }
    Ok(format!("{n} fixtures"))
}

fn cocartesian() -> Outcome {
    let mut edges = 0;
    for (name, d) in cat_catalog() {
        let marked = natural_marking(d.nerve_diagram(4)).map_err(|e| e.to_string())?;
        let m = marked_rel_nerve(&marked, 4).map_err(|e| e.to_string())?;
        let base = d.shape.nerve(4).sset;
        let x = m.rel.total();
        for e in m.over.total.marked_edges() {
            let c = cocartesian_edge(x, &base, &m.over.projection, e, 4);
            ensure(c.passed(), || format!("{name} edge {e}: {}", c.line()))?;
            edges += 1;
        }
        let c = cocartesian_fibration(x, &base, &m.over.projection, 4);
        ensure(c.passed(), || format!("{name}: {}", c.line()))?;
    }
    // Nondegenerate edges inside a fiber of a poset-valued diagram are not
    // invertible; none of them may pass.
    let d = segment_inclusion();
    let marked = natural_marking(d.nerve_diagram(3)).map_err(|e| e.to_string())?;
    let m = marked_rel_nerve(&marked, 3).map_err(|e| e.to_string())?;
    let base = d.shape.nerve(3).sset;
    let x = m.rel.total();
    let fiber_edges: Vec<usize> = (0..x.size(1))
        .filter(|&e| {
            !x.is_degenerate(1, e)
                && !m.over.total.is_marked(e)
                && base.is_degenerate(1, m.over.projection.apply(1, e))
        })
        .collect();
    ensure(!fiber_edges.is_empty(), || "no unmarked fiber edge".into())?;
    for &e in &fiber_edges {
        let c = cocartesian_edge(x, &base, &m.over.projection, e, 2);
        ensure(!c.passed(), || {
            format!("fiber edge {e} passed: {}", c.line())
        })?;
    }
    Ok(format!(
        "{edges} marked edges at ncap 4, {} unmarked fiber edges fail at n=2",
        fiber_edges.len()
    ))
}

fn localization() -> Outcome {
    let cert = sharp_interval_localization(3).map_err(|e| e.to_string())?;
    ensure(cert.passed(), || cert.line())?;
    let mut flats = 0;
    for (name, d) in sset_catalog(3) {
        for x in &d.values {
            let l = localize(&MarkedSSet::flat(x.clone())).map_err(|e| e.to_string())?;
            let iso = verify_iso_map(x, &l.sset, &l.p, &SimplicialMap::identity(x));
            ensure(l.glued.is_empty() && iso.passed(), || {
                format!("{name}: {}", iso.line())
            })?;
            flats += 1;
        }
    }
    for (name, g) in contractible_groupoids() {
        let l = localize(&MarkedSSet::sharp(g.nerve(3).sset)).map_err(|e| e.to_string())?;
        for h in homology_table(&l.sset, 2).map_err(|e| e.to_string())? {
            ensure(h.same_group(&HomologyGroup::point(h.degree)), || {
                format!("{name}: {h}")
            })?;
        }
    }
    Ok(format!(
        "sharp interval is J, {flats} flat values unchanged, groupoids are points"
    ))
}

fn colimits() -> Outcome {
    let mut n = 0;
    for (name, d) in sset_catalog(3) {
        let a = colim_via_marked(&d).map_err(|e| format!("{name}: {e}"))?;
        ensure(a.certificate.passed(), || {
            format!("{name}: {}", a.certificate.line())
        })?;
        n += 1;
    }
    Ok(format!("{n} fixtures"))
}

fn unit_counit() -> Outcome {
    let mut n = 0;
    for (name, d) in cat_catalog() {
        let marked = natural_marking(d.nerve_diagram(3)).map_err(|e| e.to_string())?;
        let unit = eta_unit(&marked, 1).map_err(|e| format!("{name}: {e}"))?;
        let cert = unit.audit(&marked);
        ensure(cert.passed(), || format!("{name} unit: {}", cert.line()))?;
        let over = marked_rel_nerve(&marked, 3)
            .map_err(|e| e.to_string())?
            .over;
        let w = counit_w2(&over, &d.shape, 1).map_err(|e| format!("{name}: {e}"))?;
        let cert = w.audit(&over);
        ensure(cert.passed(), || format!("{name} counit: {}", cert.line()))?;
        n += 1;
    }
    Ok(format!("{n} fixtures"))
}

fn determinism() -> Outcome {
    let run = || random_suite(0, 10, Bounds::default(), Battery::full()).map(|r| r.render());
    let a = run().map_err(|e| e.to_string())?;
    let b = run().map_err(|e| e.to_string())?;
    ensure(a == b, || "reports differ".into())?;
    ensure(a.ends_with("verdict=PASS\n"), || {
        "seed 0 suite did not pass".into()
    })?;
    Ok(format!("{} identical bytes", a.len()))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 11] = [
        (
            "simplicial identities on 100 random diagrams",
            identities_on_random,
        ),
        (
            "relative nerve round trip on 100 random diagrams",
            relnerve_iso_on_random,
        ),
        ("fibers recover the values", fibers_on_fixtures),
        ("identity strings give exponentials", identity_strings),
        ("Thomason homology", thomason),
        ("iota audit", iota),
        ("coCartesian audits", cocartesian),
        ("localization", localization),
        ("colimit through marked colimits", colimits),
        ("unit and counit shadows", unit_counit),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("criterion {:>2} PASS {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL {name}: {why}", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
