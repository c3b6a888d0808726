//! Bar-construction homotopy colimits over `N(D)` and their comparison maps to
//! the relative nerve: the inclusion `ι`, the unit `η⁺` into the rectified
//! relative nerve, the counit evaluation `w₂`, and the localized composites.

use crate::certcheck::{verify_iso_map, verify_over, Certificate};
use crate::diagram::{MarkedDiagram, SSetDiagram};
use crate::error::{Error, Result};
use crate::fincat::{FinCategory, NerveKey};
use crate::homology::{homology_table, pi0};
use crate::marked::{
    localize, marked_rel_nerve, natural_marking, rectify_right, Localization, MarkedOver,
    MarkedSSet, Rectified,
};
use crate::relnerve::{fiber_at, lurie_grothendieck, RelNerve};
use crate::sset::{build_keyed, Keyed, SimplicialMap, TruncSSet};

/// `h!(F)`: pairs `(σ, x)` with `x ∈ F(σ(0))_n`.
#[derive(Clone, Debug)]
pub struct Bar {
    pub keyed: Keyed<(usize, usize)>,
    pub projection: SimplicialMap,
    pub base: Keyed<NerveKey>,
}

impl Bar {
    pub fn total(&self) -> &TruncSSet {
        &self.keyed.sset
    }
}

/// Faces act diagonally except `d₀(σ, x) = (d₀σ, F(σ(0,1))(d₀x))`.
pub fn bar_hocolim(diagram: &SSetDiagram, cap: usize) -> Result<Bar> {
    if diagram.cap() < cap {
        return Err(Error::InsufficientCap {
            need: cap,
            have: diagram.cap(),
            what: "bar construction".into(),
        });
    }
    let base = diagram.shape.nerve(cap);
    let keyed = build_keyed(
        cap,
        |n| {
            base.keys[n]
                .iter()
                .enumerate()
                .flat_map(|(s, key)| (0..diagram.values[key.0].size(n)).map(move |x| (s, x)))
                .collect()
        },
        |n, i, &(s, x)| {
            let key = &base.keys[n][s];
            let y = diagram.values[key.0].face(n, i, x);
            let y = if i == 0 {
                diagram.maps[key.1[0]].apply(n - 1, y)
            } else {
                y
            };
            (base.sset.face(n, i, s), y)
        },
        |n, i, &(s, x)| {
            (
                base.sset.degen(n, i, s),
                diagram.values[base.keys[n][s].0].degen(n, i, x),
            )
        },
    )?;
    let projection = SimplicialMap::new(
        keyed
            .keys
            .iter()
            .map(|ks| ks.iter().map(|k| k.0).collect())
            .collect(),
    );
    Ok(Bar {
        keyed,
        projection,
        base,
    })
}

/// The marked bar construction: `(σ, x)` is marked when `x` is.
pub fn bar_hocolim_marked(diagram: &MarkedDiagram, cap: usize) -> Result<(Bar, MarkedSSet)> {
    let bar = bar_hocolim(&diagram.diagram, cap)?;
    let marked = if cap >= 1 {
        bar.keyed.keys[1]
            .iter()
            .map(|&(s, x)| diagram.marks[bar.base.keys[1][s].0][x])
            .collect()
    } else {
        vec![]
    };
    let m = MarkedSSet::new(bar.total().clone(), marked)?;
    Ok((bar, m))
}

/// `ι: (σ, x) ↦ (σ, (β₀, ..., β_n))` with `β_i = F(σ(0,i))(front_i x)`.
pub fn iota(diagram: &SSetDiagram, bar: &Bar, rel: &RelNerve) -> Result<SimplicialMap> {
    let shape = &diagram.shape;
    let comps = bar
        .keyed
        .keys
        .iter()
        .enumerate()
        .map(|(n, ks)| {
            ks.iter()
                .map(|&(s, x)| {
                    let key = &bar.base.keys[n][s];
                    let x_val = &diagram.values[key.0];
                    let beta: Vec<usize> = (0..=n)
                        .map(|i| {
                            diagram.maps[shape.string_arrow(key, 0, i)]
                                .apply(i, x_val.front(n, x, i))
                        })
                        .collect();
                    rel.keyed.id(n, &(s, beta.clone())).ok_or_else(|| {
                        Error::Structural(format!(
                            "ι image {beta:?} violates the relative nerve compatibility"
                        ))
                    })
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SimplicialMap::new(comps))
}

/// Outcome of the `ι` audit. Injectivity is required only when every
/// transition map is degreewise injective; otherwise it is informational.
#[derive(Clone, Debug)]
pub struct IotaAudit {
    pub map: SimplicialMap,
    pub compatibility: Certificate,
    pub fibers: Certificate,
    pub injective: bool,
    pub monic_transitions: bool,
}

impl IotaAudit {
    pub fn certificate(&self) -> Certificate {
        let mut parts = vec![self.compatibility.clone(), self.fibers.clone()];
        if self.monic_transitions && !self.injective {
            parts.push(Certificate::fail(
                "iota-injective",
                "",
                None,
                1,
                "ι is not injective".into(),
            ));
        }
        Certificate::all("iota", "", &parts)
    }
}

pub fn iota_audit(diagram: &SSetDiagram, cap: usize) -> Result<IotaAudit> {
    let bar = bar_hocolim(diagram, cap)?;
    let rel = lurie_grothendieck(diagram, cap)?;
    let map = iota(diagram, &bar, &rel)?;
    let simplicial = match map.check(bar.total(), rel.total()) {
        Ok(()) => Certificate::pass("iota-simplicial", "", Some(cap), 1),
        Err(w) => Certificate::fail("iota-simplicial", "", Some(cap), 1, w),
    };
    let over = verify_over(&map, &bar.projection, &rel.projection);
    let compatibility = Certificate::all("iota-compatibility", "", &[simplicial, over]);
    let mut fiber_parts = Vec::new();
    for c in 0..diagram.shape.num_objects() {
        let rf = fiber_at(&rel, diagram, c);
        let bf = crate::sset::sub_sset(bar.total(), |n, x| {
            bar.projection.apply(n, x) == rel.constant_base(diagram, c, n)
        })?;
        let restricted = SimplicialMap::new(
            (0..=cap)
                .map(|n| {
                    (0..bf.sset.size(n))
                        .map(|x| {
                            rf.new_id[n][map.apply(n, bf.inclusion.apply(n, x))]
                                .expect("ι preserves fibers")
                        })
                        .collect()
                })
                .collect(),
        );
        let name = diagram.shape.object_name(c).to_string();
        fiber_parts.push(match restricted.inverse(&rf.sset) {
            Some(inv) => verify_iso_map(&bf.sset, &rf.sset, &restricted, &inv).with_subject(&name),
            None => Certificate::fail(
                "iota-fiber",
                &name,
                Some(cap),
                1,
                "ι is not bijective on this fiber".into(),
            ),
        });
    }
    let fibers = Certificate::all("iota-fibers", "", &fiber_parts);
    let monic_transitions = diagram.maps.iter().all(SimplicialMap::is_injective);
    Ok(IotaAudit {
        injective: map.is_injective(),
        map,
        compatibility,
        fibers,
        monic_transitions,
    })
}

/// The unit data for one object `d`: the rectified relative nerve and the map
/// `η⁺_d: F(d) -> [N(d/D)♯, ∫⁺F]⁺_D`.
#[derive(Clone, Debug)]
pub struct Unit {
    pub rectified: Rectified,
    pub rel: RelNerve,
    pub maps: Vec<SimplicialMap>,
}

/// Computes `η⁺_d` for every `d`. `x ∈ F(d)_m` goes to the map whose value on
/// `(α, τ)`, `τ = (d -> c₀ -> ... -> c_k)` with arrows `u_i: d -> c_i`, is
/// `(forget τ, (F(u_i)(front_i α^*x))_i)`.
pub fn eta_unit(diagram: &MarkedDiagram, cap_out: usize) -> Result<Unit> {
    let shape = &diagram.diagram.shape;
    let slices_dim = (0..shape.num_objects())
        .map(|d| shape.under_category(d).cat.nerve_dimension())
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| {
            Error::TruncationUnsound("under categories must have finite-dimensional nerves".into())
        })?;
    let tc = cap_out + slices_dim.into_iter().max().unwrap_or(0);
    let marked = marked_rel_nerve(diagram, tc)?;
    let rectified = rectify_right(&marked.over, shape, cap_out)?;
    let rel = marked.rel;
    let f = &diagram.diagram;
    let mut maps = Vec::new();
    for d in 0..shape.num_objects() {
        let space = &rectified.spaces[d].space;
        let slice = &rectified.slices[d];
        let nerve = &rectified.slice_nerves[d];
        let mut comps = Vec::new();
        for m in 0..=cap_out {
            let t = &space.tensors[m];
            let cells: Vec<(Vec<usize>, usize, NerveKey)> = t
                .sset
                .nd_list()
                .into_iter()
                .map(|(k, z)| {
                    let (a, s) = t.split(k, z);
                    (
                        space.simplices[m].keys[k][a].clone(),
                        k,
                        nerve.keys[k][s].clone(),
                    )
                })
                .collect();
            let mut comp = Vec::with_capacity(f.values[d].size(m));
            for x in 0..f.values[d].size(m) {
                let mut vals = Vec::with_capacity(cells.len());
                for (alpha, k, tau) in &cells {
                    let y = f.values[d].pull_back_along(m, x, alpha);
                    let arrows: Vec<usize> = (0..=*k)
                        .map(|i| slice.arrow_of[slice.cat.string_object(tau, i)])
                        .collect();
                    let sigma = (
                        shape.target(arrows[0]),
                        tau.1
                            .iter()
                            .map(|&g| slice.forget.mor_map[g])
                            .collect::<Vec<_>>(),
                    );
                    let beta: Vec<usize> = (0..=*k)
                        .map(|i| f.maps[arrows[i]].apply(i, f.values[d].front(*k, y, i)))
                        .collect();
                    let s = rel.base.id(*k, &sigma).expect("forgotten string");
                    let v = rel.keyed.id(*k, &(s, beta)).ok_or_else(|| {
                        Error::Structural(
                            "unit value violates the relative nerve compatibility".into(),
                        )
                    })?;
                    vals.push(v);
                }
                comp.push(*space.index[m].get(&vals).ok_or_else(|| {
                    Error::Structural(
                        "unit value is not a map over the base preserving marks".into(),
                    )
                })?);
            }
            comps.push(comp);
        }
        maps.push(SimplicialMap::new(comps));
    }
    Ok(Unit {
        rectified,
        rel,
        maps,
    })
}

impl Unit {
    /// Id of the degenerate `k`-simplex at the object `id_d` of `N(d/D)`.
    fn identity_string(&self, shape: &FinCategory, d: usize, k: usize) -> usize {
        let slice = &self.rectified.slices[d];
        let o = slice.obj_index[&shape.identity(d)];
        let id = slice.cat.identity(o);
        self.rectified.slice_nerves[d]
            .id(k, &(o, vec![id; k]))
            .expect("identity string")
    }

    /// Evaluation at `(ι_m, id_d)` followed by the top coordinate of the fiber
    /// over `d`; on `η⁺_d` it must be the identity of `F(d)`.
    pub fn fiber_evaluation(&self, diagram: &MarkedDiagram, d: usize) -> SimplicialMap {
        let shape = &diagram.diagram.shape;
        let space = &self.rectified.spaces[d].space;
        let x = self.rel.total();
        SimplicialMap::new(
            (0..=space.sset.cap())
                .map(|m| {
                    let all: Vec<usize> = (0..=m).collect();
                    let s = self.identity_string(shape, d, m);
                    (0..space.sset.size(m))
                        .map(|phi| {
                            let v = space.eval(x, m, phi, m, &all, s);
                            *self.rel.keyed.key(m, v).1.last().expect("nonempty")
                        })
                        .collect()
                })
                .collect(),
        )
    }

    /// Checks each `η⁺_d` is simplicial, that evaluation after it is the
    /// identity, and naturality along every arrow of `D`.
    pub fn audit(&self, diagram: &MarkedDiagram) -> Certificate {
        let shape = &diagram.diagram.shape;
        let f = &diagram.diagram;
        let cap_out = self.rectified.spaces[0].space.sset.cap();
        let mut parts = Vec::new();
        for d in 0..shape.num_objects() {
            let name = shape.object_name(d).to_string();
            let fd = f.values[d].restrict_cap(cap_out);
            let space = &self.rectified.spaces[d].space.sset;
            parts.push(match self.maps[d].check(&fd, space) {
                Ok(()) => Certificate::pass("unit-simplicial", &name, Some(cap_out), 1),
                Err(w) => Certificate::fail("unit-simplicial", &name, Some(cap_out), 1, w),
            });
            let round = self.maps[d].then(&self.fiber_evaluation(diagram, d));
            parts.push(if round == SimplicialMap::identity(&fd) {
                Certificate::pass("unit-fiber-identity", &name, Some(cap_out), 1)
            } else {
                Certificate::fail(
                    "unit-fiber-identity",
                    &name,
                    Some(cap_out),
                    1,
                    "evaluation after η⁺ is not the identity".into(),
                )
            });
        }
        for g in 0..shape.num_morphisms() {
            let (d, d2) = (shape.source(g), shape.target(g));
            let lhs = f.maps[g].restrict_cap(cap_out).then(&self.maps[d2]);
            let rhs = self.maps[d].then(&self.rectified.diagram.diagram.maps[g]);
            let name = shape.morphism_name(g).to_string();
            parts.push(if lhs == rhs {
                Certificate::pass("unit-naturality", &name, Some(cap_out), 1)
            } else {
                Certificate::fail(
                    "unit-naturality",
                    &name,
                    Some(cap_out),
                    1,
                    "η⁺ is not natural".into(),
                )
            });
        }
        Certificate::all("unit", "", &parts)
    }

    /// Whether every `η⁺_d` is a bijection on vertices.
    pub fn vertex_bijective(&self) -> bool {
        self.maps.iter().zip(&self.rectified.spaces).all(|(m, s)| {
            let mut hit = vec![false; s.space.sset.size(0)];
            m.components[0]
                .iter()
                .all(|&v| !std::mem::replace(&mut hit[v], true))
                && hit.iter().all(|&h| h)
        })
    }
}

/// The counit `w₂: h!(h*(X)) -> X`, `(σ, φ) ↦ φ(ι_n, σ̂)` with `σ̂` the lift
/// of `σ` to `N(σ(0)/D)` through the arrows `σ(0, i)`.
#[derive(Clone, Debug)]
pub struct Counit {
    pub rectified: Rectified,
    pub bar: Bar,
    pub map: SimplicialMap,
}

pub fn counit_w2(x: &MarkedOver, shape: &FinCategory, cap_out: usize) -> Result<Counit> {
    let rectified = rectify_right(x, shape, cap_out)?;
    let bar = bar_hocolim(&rectified.diagram.diagram, cap_out)?;
    let comps = bar
        .keyed
        .keys
        .iter()
        .enumerate()
        .map(|(n, ks)| {
            ks.iter()
                .map(|&(s, phi)| {
                    let key = &bar.base.keys[n][s];
                    let c = key.0;
                    let slice = &rectified.slices[c];
                    let mut u = shape.identity(c);
                    let start = slice.obj_index[&u];
                    let mut obj = start;
                    let mut string = Vec::with_capacity(n);
                    for &f in &key.1 {
                        let m = slice.mor_index[&(obj, f)];
                        string.push(m);
                        u = shape.compose(f, u);
                        obj = slice.obj_index[&u];
                    }
                    let lift = rectified.slice_nerves[c]
                        .id(n, &(start, string))
                        .expect("canonical lift");
                    let all: Vec<usize> = (0..=n).collect();
                    rectified.spaces[c]
                        .space
                        .eval(&x.total.sset, n, phi, n, &all, lift)
                })
                .collect()
        })
        .collect();
    Ok(Counit {
        map: SimplicialMap::new(comps),
        rectified,
        bar,
    })
}

impl Counit {
    /// `w₂` is simplicial, lies over `N(D)`, and hits every vertex of every fiber.
    pub fn audit(&self, x: &MarkedOver) -> Certificate {
        let cap = self.bar.total().cap();
        let target = x.total.sset.restrict_cap(cap);
        let simplicial = match self.map.check(self.bar.total(), &target) {
            Ok(()) => Certificate::pass("counit-simplicial", "", Some(cap), 1),
            Err(w) => Certificate::fail("counit-simplicial", "", Some(cap), 1, w),
        };
        let over = verify_over(
            &self.map,
            &self.bar.projection,
            &x.projection.restrict_cap(cap),
        );
        let mut hit = vec![false; target.size(0)];
        for &v in &self.map.components[0] {
            hit[v] = true;
        }
        let surjective = match hit.iter().position(|h| !h) {
            None => Certificate::pass("counit-vertex-surjective", "", Some(cap), hit.len()),
            Some(v) => Certificate::fail(
                "counit-vertex-surjective",
                "",
                Some(cap),
                hit.len(),
                format!("vertex {v} is missed"),
            ),
        };
        Certificate::all("counit", "", &[simplicial, over, surjective])
    }
}

/// Natural marking, marked bar construction, forgetting the base, then
/// localization at the marked edges.
pub fn hocolim_qcat(diagram: &SSetDiagram, cap: usize) -> Result<Localization> {
    if cap < 2 {
        return Err(Error::InsufficientCap {
            need: 2,
            have: cap,
            what: "localized homotopy colimit".into(),
        });
    }
    let marked = natural_marking(diagram.restrict_cap(cap))?;
    let (_, total) = bar_hocolim_marked(&marked, cap)?;
    localize(&total)
}

/// Result of comparing the direct colimit with the localized marked colimit.
#[derive(Clone, Debug)]
pub struct ColimitAgreement {
    pub direct: TruncSSet,
    pub localized: Localization,
    pub certificate: Certificate,
}

/// Computes `colim F` and `L(colim⁺(E F))`. They agree when the map
/// `p: colim F -> L(...)` is injective, has a retraction `U` (built from
/// extensions along `J`) with `U ∘ p = id`, and both sides have the same
/// components and homology below the cap. With no glued edges `p` is also
/// certified to be an isomorphism.
pub fn colim_via_marked(diagram: &SSetDiagram) -> Result<ColimitAgreement> {
    const KIND: &str = "colimit-agreement";
    let cap = diagram.cap();
    if cap < 2 {
        return Err(Error::InsufficientCap {
            need: 2,
            have: cap,
            what: "marked colimit".into(),
        });
    }
    let marked = natural_marking(diagram.clone())?;
    let colim = diagram.colimit();
    let mut marks = vec![false; colim.sset.size(1)];
    for e in 0..colim.sset.size(1) {
        marks[e] = colim.sset.is_degenerate(1, e);
    }
    for (c, inj) in colim.injections.iter().enumerate() {
        for (e, &m) in marked.marks[c].iter().enumerate() {
            if m {
                marks[inj.apply(1, e)] = true;
            }
        }
    }
    let colim_plus = MarkedSSet::new(colim.sset.clone(), marks)?;
    let localized = localize(&colim_plus)?;
    let direct = colim.sset;
    let mut parts = Vec::new();
    parts.push(if localized.p.is_injective() {
        Certificate::pass("colimit-unit-injective", "", Some(cap), 1)
    } else {
        Certificate::fail(
            "colimit-unit-injective",
            "",
            Some(cap),
            1,
            "p is not injective".into(),
        )
    });
    let (u, mediator) = localized.universal_mediator(&direct, &SimplicialMap::identity(&direct))?;
    parts.push(mediator);
    if let Some(u) = &u {
        parts.push(if localized.p.then(u) == SimplicialMap::identity(&direct) {
            Certificate::pass("colimit-retraction", "", Some(cap), 1)
        } else {
            Certificate::fail(
                "colimit-retraction",
                "",
                Some(cap),
                1,
                "U ∘ p is not the identity".into(),
            )
        });
    }
    let (a, b) = (pi0(&direct).count, pi0(&localized.sset).count);
    parts.push(if a == b {
        Certificate::pass("colimit-pi0", "", None, 1)
    } else {
        Certificate::fail("colimit-pi0", "", None, 1, format!("{a} vs {b} components"))
    });
    let (ha, hb) = (
        homology_table(&direct, cap - 1)?,
        homology_table(&localized.sset, cap - 1)?,
    );
    parts.push(match ha.iter().zip(&hb).find(|(x, y)| !x.same_group(y)) {
        None => Certificate::pass("colimit-homology", "", Some(cap - 1), ha.len()),
        Some((x, y)) => Certificate::fail(
            "colimit-homology",
            "",
            Some(cap - 1),
            ha.len(),
            format!("{x} vs {y}"),
        ),
    });
    if localized.glued.is_empty() {
        parts.push(match localized.p.inverse(&localized.sset) {
            Some(inv) => verify_iso_map(&direct, &localized.sset, &localized.p, &inv),
            None => Certificate::fail("colimit-iso", "", Some(cap), 1, "p is not bijective".into()),
        });
    }
    let certificate = Certificate::all(KIND, "", &parts);
    Ok(ColimitAgreement {
        direct,
        localized,
        certificate,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certcheck::check_simplicial_identities;
    use crate::diagram::CatDiagram;
    use crate::sset::{coproduct, simplex, walking_iso};

    fn span_points(cap: usize) -> SSetDiagram {
        let pt = simplex(0, cap);
        let two = coproduct(&[&pt, &pt], cap).unwrap().sset;
        let to_pt = SimplicialMap::new((0..=cap).map(|n| vec![0; two.size(n)]).collect());
        let maps = vec![
            SimplicialMap::identity(&pt),
            SimplicialMap::identity(&pt),
            SimplicialMap::identity(&two),
            to_pt.clone(),
            to_pt,
        ];
        SSetDiagram::checked(FinCategory::span(), vec![pt.clone(), pt, two], maps).unwrap()
    }

    #[test]
    fn span_bar_construction_is_a_circle() {
        let d = span_points(3);
        let bar = bar_hocolim(&d, 3).unwrap();
        assert_eq!(bar.total().nondegenerate_counts(), vec![4, 4, 0, 0]);
        assert!(check_simplicial_identities(bar.total()).passed());
        let h = homology_table(bar.total(), 2).unwrap();
        assert_eq!((h[0].betti, h[1].betti, h[2].betti), (1, 1, 0));
        let audit = iota_audit(&d, 3).unwrap();
        assert!(
            audit.certificate().passed(),
            "{}",
            audit.certificate().line()
        );
        assert!(audit.injective);
    }

    #[test]
    fn bar_of_nerves_passes_identities() {
        let shape = FinCategory::ordinal(1);
        let v = FinCategory::ordinal(1);
        let functors = (0..shape.num_morphisms())
            .map(|f| {
                if shape.is_identity(f) {
                    crate::fincat::CatFunctor::identity(&v)
                } else {
                    crate::fincat::CatFunctor {
                        obj_map: vec![1, 1],
                        mor_map: vec![v.identity(1); 3],
                    }
                }
            })
            .collect();
        let d = CatDiagram::checked(shape, vec![v.clone(), v], functors)
            .unwrap()
            .nerve_diagram(3);
        let bar = bar_hocolim(&d, 3).unwrap();
        assert!(check_simplicial_identities(bar.total()).passed());
        let audit = iota_audit(&d, 3).unwrap();
        assert!(audit.compatibility.passed() && audit.fibers.passed());
        assert!(!audit.monic_transitions && !audit.injective);
    }

    #[test]
    fn unit_on_the_span() {
        let d = span_points(3);
        let marked = MarkedDiagram::sharp(d).unwrap();
        let unit = eta_unit(&marked, 1).unwrap();
        let cert = unit.audit(&marked);
        assert!(cert.passed(), "{}", cert.line());
        assert!(unit.vertex_bijective());
    }

    #[test]
    fn counit_on_the_base() {
        let shape = FinCategory::span();
        let x = MarkedOver::base(&shape, 3);
        let w = counit_w2(&x, &shape, 2).unwrap();
        assert!(w.audit(&x).passed());
    }

    #[test]
    fn localized_composites() {
        let d = span_points(3);
        let l = hocolim_qcat(&d, 3).unwrap();
        let h = homology_table(&l.sset, 2).unwrap();
        assert_eq!((h[0].betti, h[1].betti), (1, 1));
        let agree = colim_via_marked(&d).unwrap();
        assert!(agree.certificate.passed(), "{}", agree.certificate.line());
        // The apex points both map to the single points at a and b, so everything is identified.
        assert_eq!(agree.direct.size(0), 1);
        let g = SSetDiagram::constant(&FinCategory::ordinal(1), &walking_iso(3));
        let agree = colim_via_marked(&g).unwrap();
        assert!(agree.certificate.passed(), "{}", agree.certificate.line());
    }
}
