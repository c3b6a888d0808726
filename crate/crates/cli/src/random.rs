//! Seeded random diagrams and the invariant battery run over them.
//!
//! Shapes are free categories on random acyclic quivers, so any choice of
//! values on the generating arrows extends uniquely to a functor.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use relnerve::fincat::{CatFunctor, FinCategory};
use relnerve::fixtures::circle;
use relnerve::sset::{boundary, coproduct, enumerate_maps, expand, horn, simplex, FaceIndex};
use relnerve::{CatDiagram, SSetDiagram, SimplicialMap, TruncSSet};

use crate::pipeline::{compare, identities_battery, verify, Check, Comparison};
use crate::report::Report;
use crate::spec::{DiagramSpec, Parsed};
use crate::CliError;

/// Size bounds for generated diagrams. The defaults are also the maxima.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Bounds {
    pub max_objects: usize,
    /// Generating arrows per ordered pair of objects.
    pub max_arrows: usize,
    /// Nondegenerate simplices per simplicial-set value.
    pub max_cells: usize,
    pub cap: usize,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds {
            max_objects: 3,
            max_arrows: 2,
            max_cells: 6,
            cap: 4,
        }
    }
}

impl Bounds {
    /// Refuses bounds beyond the defaults, which keep every check exhaustive.
    pub fn check(&self) -> Result<(), CliError> {
        let max = Bounds::default();
        let over = [
            ("objects", self.max_objects, max.max_objects),
            ("arrows per hom", self.max_arrows, max.max_arrows),
            ("cells per value", self.max_cells, max.max_cells),
            ("cap", self.cap, max.cap),
        ];
        for (what, got, limit) in over {
            if got > limit {
                return Err(CliError::Bounds(format!(
                    "{what} bound {got} exceeds {limit}"
                )));
            }
        }
        if self.max_objects == 0 || self.max_cells == 0 || self.cap < 2 {
            return Err(CliError::Bounds(
                "need at least one object, one cell and cap >= 2".into(),
            ));
        }
        Ok(())
    }
}

/// Which checks to run on each generated diagram.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Battery {
    pub identities: bool,
    pub relnerve_iso: bool,
    pub fibers: bool,
    pub iota: bool,
    pub thomason: bool,
    pub fibration: bool,
}

impl Battery {
    pub fn full() -> Self {
        Battery {
            identities: true,
            relnerve_iso: true,
            fibers: true,
            iota: true,
            thomason: true,
            fibration: true,
        }
    }

    pub fn none() -> Self {
        Battery {
            identities: false,
            relnerve_iso: false,
            fibers: false,
            iota: false,
            thomason: false,
            fibration: false,
        }
    }
}

/// A free category on a random acyclic quiver, with the indices of its
/// generating arrows.
pub fn random_shape(rng: &mut ChaCha8Rng, b: &Bounds) -> (FinCategory, Vec<usize>) {
    let n = rng.gen_range(1..=b.max_objects);
    let mut arrows = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for t in 0..rng.gen_range(0..=b.max_arrows) {
                arrows.push((format!("a{i}{j}_{t}"), i, j));
            }
        }
    }
    let shape = FinCategory::free(n, &arrows).expect("acyclic quiver");
    let generators = (0..shape.num_morphisms())
        .filter(|&f| {
            !shape.is_identity(f)
                && !(0..shape.num_morphisms()).any(|g| {
                    !shape.is_identity(g)
                        && (0..shape.num_morphisms())
                            .any(|h| !shape.is_identity(h) && shape.try_compose(g, h) == Some(f))
                })
        })
        .collect();
    (shape, generators)
}

/// Extends values on identities and generators to all morphisms of a free
/// category by composing along paths.
fn extend_free<T: Clone>(
    shape: &FinCategory,
    generators: &[usize],
    mut values: Vec<Option<T>>,
    then: impl Fn(&T, &T) -> T,
) -> Vec<T> {
    loop {
        let mut progress = false;
        for f in 0..shape.num_morphisms() {
            if values[f].is_some() {
                continue;
            }
            'search: for &a in generators {
                for h in 0..shape.num_morphisms() {
                    if shape.try_compose(a, h) == Some(f) && h != f {
                        if let (Some(vh), Some(va)) = (&values[h], &values[a]) {
                            values[f] = Some(then(vh, va));
                            progress = true;
                            break 'search;
                        }
                    }
                }
            }
        }
        if values.iter().all(Option::is_some) {
            return values.into_iter().map(|v| v.expect("assigned")).collect();
        }
        assert!(progress, "free category morphism without a decomposition");
    }
}

fn cat_pool() -> Vec<FinCategory> {
    vec![
        FinCategory::terminal(),
        FinCategory::discrete(2),
        FinCategory::ordinal(1),
        FinCategory::poset(3, &[(0, 1), (0, 2)]).expect("poset"),
        FinCategory::poset(3, &[(0, 2), (1, 2)]).expect("poset"),
        FinCategory::poset(3, &[(0, 1)]).expect("poset"),
    ]
}

fn sset_pool(b: &Bounds) -> Vec<TruncSSet> {
    let cap = b.cap;
    let pt = simplex(0, cap);
    let interval = simplex(1, cap);
    let pool = vec![
        pt.clone(),
        boundary(1, cap),
        interval.clone(),
        circle(cap),
        horn(2, 1, cap).expect("horn"),
        boundary(2, cap),
        coproduct(&[&interval, &pt], cap).expect("coproduct").sset,
    ];
    pool.into_iter()
        .filter(|x| x.nd_total() <= b.max_cells)
        .collect()
}

pub fn random_cat_diagram(rng: &mut ChaCha8Rng, b: &Bounds) -> CatDiagram {
    let (shape, generators) = random_shape(rng, b);
    let pool = cat_pool();
    let values: Vec<FinCategory> = (0..shape.num_objects())
        .map(|_| pool.choose(rng).expect("pool").clone())
        .collect();
    let mut init: Vec<Option<CatFunctor>> = vec![None; shape.num_morphisms()];
    for c in 0..shape.num_objects() {
        init[shape.identity(c)] = Some(CatFunctor::identity(&values[c]));
    }
    for &g in &generators {
        let all = CatFunctor::enumerate(&values[shape.source(g)], &values[shape.target(g)], 64);
        init[g] = Some(
            all.choose(rng)
                .expect("some functor exists between nonempty categories")
                .clone(),
        );
    }
    let functors = extend_free(&shape, &generators, init, |a, b| a.then(b));
    CatDiagram::checked(shape, values, functors)
        .expect("free shapes make every assignment functorial")
}

pub fn random_sset_diagram(rng: &mut ChaCha8Rng, b: &Bounds) -> SSetDiagram {
    let (shape, generators) = random_shape(rng, b);
    let pool = sset_pool(b);
    let values: Vec<TruncSSet> = (0..shape.num_objects())
        .map(|_| pool.choose(rng).expect("pool").clone())
        .collect();
    let mut init: Vec<Option<SimplicialMap>> = vec![None; shape.num_morphisms()];
    for c in 0..shape.num_objects() {
        init[shape.identity(c)] = Some(SimplicialMap::identity(&values[c]));
    }
    for &g in &generators {
        let (dom, cod) = (&values[shape.source(g)], &values[shape.target(g)]);
        let index = FaceIndex::new(cod, b.cap);
        let all = enumerate_maps(dom, cod, &index, &|_, _, _| true, Some(64))
            .expect("pool values fit the cap");
        let pick = all.choose(rng).expect("constant maps always exist");
        init[g] = Some(expand(dom, cod, pick));
    }
    let maps = extend_free(&shape, &generators, init, |a, b| a.then(b));
    SSetDiagram::checked(shape, values, maps).expect("free shapes make every assignment functorial")
}

fn describe(spec: &DiagramSpec) -> String {
    let shape = spec.shape();
    let values: Vec<String> = match &spec.diagram {
        Parsed::Cat(d) => d
            .values
            .iter()
            .map(|v| format!("cat({},{})", v.num_objects(), v.num_morphisms()))
            .collect(),
        Parsed::SSet(d) => d
            .values
            .iter()
            .map(|v| format!("sset{:?}", v.nondegenerate_counts()))
            .collect(),
        Parsed::Marked(d) => d
            .diagram
            .values
            .iter()
            .map(|v| format!("marked{:?}", v.nondegenerate_counts()))
            .collect(),
    };
    format!(
        "objects={} morphisms={} values=[{}]",
        shape.num_objects(),
        shape.num_morphisms(),
        values.join(",")
    )
}

/// Generates `count` diagrams from `seed`, alternating category-valued and
/// simplicial-set-valued, and runs the selected checks on each.
pub fn random_suite(
    seed: u64,
    count: usize,
    bounds: Bounds,
    battery: Battery,
) -> Result<Report, CliError> {
    bounds.check()?;
    let mut report = Report::new("random-suite");
    report.param("seed", seed);
    report.param("count", count);
    report.param(
        "bounds",
        format!(
            "objects<={} arrows<={} cells<={} cap={}",
            bounds.max_objects, bounds.max_arrows, bounds.max_cells, bounds.cap
        ),
    );
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for item in 0..count {
        let diagram = if item % 2 == 0 {
            Parsed::Cat(random_cat_diagram(&mut rng, &bounds))
        } else {
            Parsed::SSet(random_sset_diagram(&mut rng, &bounds))
        };
        let spec = DiagramSpec {
            cap: bounds.cap,
            diagram,
        };
        let kind = spec.kind().name();
        report.note(format!("item {item} kind={kind} {}", describe(&spec)));
        report.absorb(run_battery(&spec, battery)?);
    }
    Ok(report)
}

/// The battery on one diagram; only certificate and verdict lines are kept.
pub fn run_battery(spec: &DiagramSpec, battery: Battery) -> Result<Report, CliError> {
    let mut r = Report::default();
    if battery.identities {
        identities_battery(spec, &mut r)?;
    }
    let checks = [
        (battery.relnerve_iso, Check::RelnerveIso),
        (battery.fibers, Check::Fibers),
        (battery.iota, Check::Iota),
    ];
    for (on, check) in checks {
        if on {
            r.absorb(verify(spec, check, None)?);
        }
    }
    if matches!(spec.diagram, Parsed::Cat(_)) {
        if battery.thomason {
            r.absorb(compare(spec, Comparison::Thomason, None)?);
        }
        if battery.fibration {
            r.absorb(verify(spec, Check::Fibration, Some(spec.cap.min(3)))?);
        }
    }
    Ok(r)
}
