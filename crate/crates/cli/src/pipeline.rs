//! The `build`, `verify` and `compare` commands on a parsed diagram.

use clap::ValueEnum;
use relnerve::certcheck::{
    check_bisimplicial, check_simplicial_identities, cocartesian_edge, cocartesian_fibration,
    inner_horn_lifts,
};
use relnerve::groth_classic::{grothendieck_classic, nerve_comparison, opcartesian_oracle};
use relnerve::hocolim::{bar_hocolim, bar_hocolim_marked, iota_audit};
use relnerve::homology::{homology_table, pi0, HomologyGroup};
use relnerve::marked::{localize, marked_rel_nerve, natural_marking};
use relnerve::relnerve::{
    compare_relnerve_iso, fiber_comparison, lurie_grothendieck, relative_nerve_direct,
    simplicial_space,
};
use relnerve::{CatDiagram, MarkedDiagram, SSetDiagram};

use crate::report::Report;
use crate::spec::{DiagramSpec, Parsed};
use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Construction {
    Relnerve,
    RelnerveDirect,
    GrothClassic,
    Hocolim,
    Localize,
    MarkedRelnerve,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Check {
    Identities,
    /// The two relative nerve constructions are mutually inverse.
    #[value(name = "c4-iso")]
    RelnerveIso,
    Fibers,
    Fibration,
    Iota,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Comparison {
    Homology,
    Pi0,
    Thomason,
}

fn value_name<T: ValueEnum>(v: T) -> String {
    v.to_possible_value()
        .expect("named variant")
        .get_name()
        .to_string()
}

/// The simplicial-set diagram underlying any parsed diagram, at `cap`.
pub fn sset_diagram(spec: &DiagramSpec) -> SSetDiagram {
    match &spec.diagram {
        Parsed::Cat(d) => d.nerve_diagram(spec.cap),
        Parsed::SSet(d) => d.clone(),
        Parsed::Marked(d) => d.diagram.clone(),
    }
}

/// The given marking, or the natural marking of the underlying diagram.
pub fn marked_diagram(spec: &DiagramSpec) -> Result<MarkedDiagram, CliError> {
    match &spec.diagram {
        Parsed::Marked(d) => Ok(d.clone()),
        _ => Ok(natural_marking(sset_diagram(spec))?),
    }
}

fn cat_diagram<'a>(spec: &'a DiagramSpec, what: &str) -> Result<&'a CatDiagram, CliError> {
    match &spec.diagram {
        Parsed::Cat(d) => Ok(d),
        _ => Err(CliError::Bounds(format!(
            "{what} needs a category-valued diagram"
        ))),
    }
}

fn start(spec: &DiagramSpec, command: String) -> Report {
    let mut r = Report::new(&command);
    r.param("kind", spec.kind().name());
    r.param("cap", spec.cap);
    r.param(
        "shape",
        format!(
            "objects={} morphisms={}",
            spec.shape().num_objects(),
            spec.shape().num_morphisms()
        ),
    );
    r
}

pub fn build(spec: &DiagramSpec, what: Construction) -> Result<Report, CliError> {
    let mut r = start(spec, format!("build {}", value_name(what)));
    let cap = spec.cap;
    let d = sset_diagram(spec);
    match what {
        Construction::Relnerve | Construction::RelnerveDirect => {
            let rel = if what == Construction::Relnerve {
                lurie_grothendieck(&d, cap)?
            } else {
                relative_nerve_direct(&d, cap)?
            };
            r.sizes("base", &rel.base.sset);
            r.sizes("total", rel.total());
            r.certificate(&check_simplicial_identities(rel.total()).with_subject("total"));
        }
        Construction::GrothClassic => {
            let c = cat_diagram(spec, "groth-classic")?;
            let g = grothendieck_classic(c);
            r.note(format!(
                "category objects={} morphisms={}",
                g.cat.num_objects(),
                g.cat.num_morphisms()
            ));
            let violations = g.cat.validate().violations;
            r.verdict(
                "category-axioms",
                violations.is_empty(),
                violations.first().map_or("", String::as_str),
            );
            r.certificate(&g.double.audit());
            let nerve = g.cat.nerve(cap).sset;
            r.sizes("nerve", &nerve);
            r.certificate(&check_simplicial_identities(&nerve).with_subject("nerve"));
        }
        Construction::Hocolim => {
            let bar = bar_hocolim(&d, cap)?;
            r.sizes("total", bar.total());
            r.certificate(&check_simplicial_identities(bar.total()).with_subject("total"));
        }
        Construction::Localize => {
            let m = marked_diagram(spec)?;
            let (_, total) = bar_hocolim_marked(&m, cap)?;
            let l = localize(&total)?;
            r.sizes("marked-bar", &total.sset);
            r.note(format!("glued edges={}", l.glued.len()));
            r.sizes("localized", &l.sset);
            r.certificate(&check_simplicial_identities(&l.sset).with_subject("localized"));
        }
        Construction::MarkedRelnerve => {
            let m = marked_diagram(spec)?;
            let mr = marked_rel_nerve(&m, cap)?;
            r.sizes("total", mr.rel.total());
            r.note(format!(
                "marked edges={} nondegenerate-marked={}",
                mr.over.total.marked_edges().len(),
                mr.over.total.nondegenerate_marked().len()
            ));
            r.certificate(&check_simplicial_identities(mr.rel.total()).with_subject("total"));
        }
    }
    Ok(r)
}

/// Simplicial-identity certificates for the values, both relative nerves,
/// the bar construction, the columns of the path-space simplicial space and,
/// for category-valued diagrams, the nerve of the classical construction.
pub fn identities_battery(spec: &DiagramSpec, r: &mut Report) -> Result<(), CliError> {
    let cap = spec.cap;
    let d = sset_diagram(spec);
    for (c, v) in d.values.iter().enumerate() {
        let name = format!("value {}", d.shape.object_name(c));
        r.certificate(&check_simplicial_identities(v).with_subject(&name));
    }
    r.certificate(
        &check_simplicial_identities(lurie_grothendieck(&d, cap)?.total()).with_subject("relnerve"),
    );
    r.certificate(
        &check_simplicial_identities(relative_nerve_direct(&d, cap)?.total())
            .with_subject("relnerve-direct"),
    );
    r.certificate(
        &check_simplicial_identities(bar_hocolim(&d, cap)?.total()).with_subject("hocolim"),
    );
    if cap >= 1 {
        let ncap = cap / 2;
        let (_, space) = simplicial_space(&d, ncap, cap - ncap)?;
        r.certificate(
            &check_bisimplicial(&space.bi)
                .with_subject(&format!("path-spaces ncap={ncap} mcap={}", cap - ncap)),
        );
    }
    if let Parsed::Cat(c) = &spec.diagram {
        let g = grothendieck_classic(c);
        r.certificate(
            &check_simplicial_identities(&g.cat.nerve(cap).sset)
                .with_subject("groth-classic-nerve"),
        );
    }
    Ok(())
}

pub fn verify(spec: &DiagramSpec, what: Check, ncap: Option<usize>) -> Result<Report, CliError> {
    let mut r = start(spec, format!("verify {}", value_name(what)));
    let cap = spec.cap;
    let d = sset_diagram(spec);
    match what {
        Check::Identities => identities_battery(spec, &mut r)?,
        Check::RelnerveIso => {
            let a = lurie_grothendieck(&d, cap)?;
            let b = relative_nerve_direct(&d, cap)?;
            r.certificate(&compare_relnerve_iso(&d, &a, &b).certificate);
        }
        Check::Fibers => {
            let rel = lurie_grothendieck(&d, cap)?;
            for c in 0..d.shape.num_objects() {
                r.certificate(&fiber_comparison(&rel, &d, c).1.certificate);
            }
        }
        Check::Fibration => {
            let ncap = ncap.unwrap_or(cap);
            if ncap > cap {
                return Err(CliError::Bounds(format!(
                    "ncap {ncap} exceeds the cap {cap}"
                )));
            }
            r.param("ncap", ncap);
            let m = marked_diagram(spec)?;
            let mr = marked_rel_nerve(&m, cap)?;
            let x = mr.rel.total();
            let base = &mr.rel.base.sset;
            let p = &mr.over.projection;
            r.certificate(&inner_horn_lifts(x, base, p, ncap));
            let edges: Vec<_> = mr
                .over
                .total
                .marked_edges()
                .into_iter()
                .map(|e| cocartesian_edge(x, base, p, e, ncap))
                .collect();
            r.certificate(&relnerve::Certificate::all(
                "marked-edges-cocartesian",
                "",
                &edges,
            ));
            r.certificate(&cocartesian_fibration(x, base, p, ncap));
            if let Parsed::Cat(c) = &spec.diagram {
                r.certificate(&opcartesian_oracle(c, &grothendieck_classic(c), ncap));
            }
        }
        Check::Iota => {
            let audit = iota_audit(&d, cap)?;
            r.note(format!(
                "iota injective={} monic-transitions={}",
                audit.injective, audit.monic_transitions
            ));
            r.certificate(&audit.certificate());
        }
    }
    Ok(r)
}

fn compare_tables(
    r: &mut Report,
    name: &str,
    a: (&str, &[HomologyGroup]),
    b: (&str, &[HomologyGroup]),
) {
    r.homology(a.0, a.1);
    r.homology(b.0, b.1);
    let bad = a.1.iter().zip(b.1).find(|(x, y)| !x.same_group(y));
    match bad {
        None => r.verdict(name, true, ""),
        Some((x, y)) => r.verdict(name, false, &format!("degree {}: {x} vs {y}", x.degree)),
    }
}

pub fn compare(
    spec: &DiagramSpec,
    what: Comparison,
    max_degree: Option<usize>,
) -> Result<Report, CliError> {
    let label = match what {
        Comparison::Homology => "homology",
        Comparison::Pi0 => "pi0",
        Comparison::Thomason => "thomason",
    };
    let mut r = start(spec, format!("compare {label}"));
    let cap = spec.cap;
    let k = match max_degree {
        Some(k) => k,
        None => cap
            .checked_sub(1)
            .ok_or_else(|| CliError::Bounds("homology needs cap >= 1".into()))?,
    };
    if what != Comparison::Pi0 {
        if k + 1 > cap {
            return Err(CliError::Bounds(format!(
                "max degree {k} needs cap >= {}",
                k + 1
            )));
        }
        r.param("max-degree", k);
    }
    match what {
        Comparison::Homology | Comparison::Pi0 => {
            let d = sset_diagram(spec);
            let rel = lurie_grothendieck(&d, cap)?;
            let bar = bar_hocolim(&d, cap)?;
            if what == Comparison::Pi0 {
                let (a, b) = (pi0(rel.total()).count, pi0(bar.total()).count);
                r.note(format!("side=relnerve components={a}"));
                r.note(format!("side=hocolim components={b}"));
                r.verdict(
                    "pi0",
                    a == b,
                    &if a == b {
                        String::new()
                    } else {
                        format!("{a} vs {b}")
                    },
                );
            } else {
                let a = homology_table(rel.total(), k)?;
                let b = homology_table(bar.total(), k)?;
                compare_tables(&mut r, "homology", ("relnerve", &a), ("hocolim", &b));
            }
        }
        Comparison::Thomason => {
            let c = cat_diagram(spec, "thomason")?;
            let g = grothendieck_classic(c);
            let bar = bar_hocolim(&c.nerve_diagram(cap), cap)?;
            let a = homology_table(bar.total(), k)?;
            let b = homology_table(&g.cat.nerve(cap).sset, k)?;
            compare_tables(&mut r, "thomason", ("hocolim", &a), ("groth-classic", &b));
            r.certificate(&nerve_comparison(c, &g, cap)?.certificate);
        }
    }
    Ok(r)
}
