//! Marked simplicial sets: markings, equivalence witnesses, localization at
//! marked edges, the marked relative nerve, and mapping spaces over a base.

use crate::certcheck::{verify_iso_map, Certificate};
use crate::diagram::{MarkedDiagram, SSetDiagram};
use crate::error::{Error, Result};
use crate::fincat::{CatFunctor, FinCategory, NerveKey, Slice};
use crate::relnerve::{lurie_grothendieck, RelNerve};
use crate::sset::{
    enumerate_maps, extend_map_skeletal, pullback, pushout, simplex_keyed, sub_sset, walking_iso,
    FaceIndex, Keyed, MapSpace, SimplicialMap, SubSSet, TruncSSet,
};

/// A simplicial set with a set of marked edges containing every degenerate edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MarkedSSet {
    pub sset: TruncSSet,
    /// `marked[e]` for each edge id.
    pub marked: Vec<bool>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Marking {
    Flat,
    Sharp,
    Natural,
}

fn edge_count(s: &TruncSSet) -> usize {
    if s.cap() >= 1 {
        s.size(1)
    } else {
        0
    }
}

impl MarkedSSet {
    pub fn new(sset: TruncSSet, marked: Vec<bool>) -> Result<Self> {
        if marked.len() != edge_count(&sset) {
            return Err(Error::Structural(
                "marking length differs from the number of edges".into(),
            ));
        }
        if let Some(e) = (0..marked.len()).find(|&e| sset.is_degenerate(1, e) && !marked[e]) {
            return Err(Error::Structural(format!(
                "degenerate edge {e} is not marked"
            )));
        }
        Ok(MarkedSSet { sset, marked })
    }

    pub fn flat(sset: TruncSSet) -> Self {
        let marked = (0..edge_count(&sset))
            .map(|e| sset.is_degenerate(1, e))
            .collect();
        MarkedSSet { sset, marked }
    }

    pub fn sharp(sset: TruncSSet) -> Self {
        let marked = vec![true; edge_count(&sset)];
        MarkedSSet { sset, marked }
    }

    /// Marks exactly the edges that admit an equivalence witness.
    pub fn natural(sset: TruncSSet) -> Result<Self> {
        let marked = equivalences(&sset)?.iter().map(Option::is_some).collect();
        Ok(MarkedSSet { sset, marked })
    }

    pub fn is_marked(&self, e: usize) -> bool {
        self.marked[e]
    }

    pub fn marked_edges(&self) -> Vec<usize> {
        (0..self.marked.len()).filter(|&e| self.marked[e]).collect()
    }

    pub fn nondegenerate_marked(&self) -> Vec<usize> {
        self.marked_edges()
            .into_iter()
            .filter(|&e| !self.sset.is_degenerate(1, e))
            .collect()
    }

    /// Whether `f` sends marked edges of `self` to marked edges of `other`.
    pub fn preserved_by(&self, f: &SimplicialMap, other: &MarkedSSet) -> bool {
        self.marked_edges()
            .into_iter()
            .all(|e| other.marked[f.apply(1, e)])
    }
}

pub fn mark(s: &TruncSSet, mode: Marking) -> Result<MarkedSSet> {
    match mode {
        Marking::Flat => Ok(MarkedSSet::flat(s.clone())),
        Marking::Sharp => Ok(MarkedSSet::sharp(s.clone())),
        Marking::Natural => MarkedSSet::natural(s.clone()),
    }
}

/// An edge `y` with an inverse edge and two 2-simplices exhibiting the
/// composites as degenerate: `left` has faces `(y⁻¹, s₀(source), y)` and
/// `right` has faces `(y, s₀(target), y⁻¹)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EquivalenceWitness {
    pub edge: usize,
    pub inverse: usize,
    pub left: usize,
    pub right: usize,
}

impl EquivalenceWitness {
    pub fn holds(&self, s: &TruncSSet) -> bool {
        let (y, z) = (self.edge, self.inverse);
        let (a, b) = (s.face(1, 1, y), s.face(1, 0, y));
        let faces = |t: usize| (s.face(2, 0, t), s.face(2, 1, t), s.face(2, 2, t));
        faces(self.left) == (z, s.degen(0, 0, a), y)
            && faces(self.right) == (y, s.degen(0, 0, b), z)
    }

    pub fn push_forward(&self, f: &SimplicialMap) -> Self {
        EquivalenceWitness {
            edge: f.apply(1, self.edge),
            inverse: f.apply(1, self.inverse),
            left: f.apply(2, self.left),
            right: f.apply(2, self.right),
        }
    }
}

/// For every edge, a witness that it is an equivalence, if one exists.
pub fn equivalences(s: &TruncSSet) -> Result<Vec<Option<EquivalenceWitness>>> {
    if s.cap() < 2 {
        return Err(Error::InsufficientCap {
            need: 2,
            have: s.cap(),
            what: "equivalence witnesses".into(),
        });
    }
    let mut by_last: Vec<Vec<usize>> = vec![vec![]; s.size(1)];
    let mut by_first: Vec<Vec<usize>> = vec![vec![]; s.size(1)];
    for t in 0..s.size(2) {
        by_last[s.face(2, 2, t)].push(t);
        by_first[s.face(2, 0, t)].push(t);
    }
    Ok((0..s.size(1))
        .map(|y| {
            let (a, b) = (s.face(1, 1, y), s.face(1, 0, y));
            by_last[y]
                .iter()
                .filter(|&&l| s.face(2, 1, l) == s.degen(0, 0, a))
                .find_map(|&left| {
                    let z = s.face(2, 0, left);
                    by_first[y]
                        .iter()
                        .find(|&&r| s.face(2, 2, r) == z && s.face(2, 1, r) == s.degen(0, 0, b))
                        .map(|&right| EquivalenceWitness {
                            edge: y,
                            inverse: z,
                            left,
                            right,
                        })
                })
        })
        .collect())
}

/// Pushes every equivalence witness of `s` along `f` and checks it in `t`.
pub fn check_witness_pushforward(
    s: &TruncSSet,
    t: &TruncSSet,
    f: &SimplicialMap,
) -> Result<Certificate> {
    const KIND: &str = "witness-pushforward";
    let mut checked = 0;
    for w in equivalences(s)?.into_iter().flatten() {
        checked += 1;
        let image = w.push_forward(f);
        if !image.holds(t) {
            return Ok(Certificate::fail(
                KIND,
                "",
                None,
                checked,
                format!("witness for edge {} does not survive", w.edge),
            ));
        }
    }
    Ok(Certificate::pass(KIND, "", None, checked))
}

/// The natural marking of every value of a diagram.
pub fn natural_marking(diagram: SSetDiagram) -> Result<MarkedDiagram> {
    let marks = diagram
        .values
        .iter()
        .map(|v| equivalences(v).map(|w| w.iter().map(Option::is_some).collect()))
        .collect::<Result<Vec<Vec<bool>>>>()?;
    MarkedDiagram::new(diagram, marks)
}

/// The map `Δ[1] -> s` picking out the edge `e`.
pub fn edge_map(s: &TruncSSet, e: usize) -> SimplicialMap {
    let d1 = simplex_keyed(1, s.cap());
    SimplicialMap::new(
        d1.keys
            .iter()
            .map(|ks| ks.iter().map(|a| s.pull_back_along(1, e, a)).collect())
            .collect(),
    )
}

/// The walking isomorphism truncated at `cap` and its edge `0 -> 1`.
pub fn walking_iso_edge(cap: usize) -> (TruncSSet, usize) {
    let cat = FinCategory::walking_iso();
    let nerve = cat.nerve(cap);
    let e = nerve.id(1, &(0, cat.hom(0, 1))).expect("iso edge");
    (walking_iso(cap), e)
}

/// `S[E⁻¹]`: one copy of `J` glued along each nondegenerate marked edge.
#[derive(Clone, Debug)]
pub struct Localization {
    pub sset: TruncSSet,
    pub p: SimplicialMap,
    /// Image of the marking (with all degenerate edges).
    pub marked: Vec<bool>,
    pub glued: Vec<usize>,
    pub j: TruncSSet,
    pub j_edge: usize,
    /// `J -> S[E⁻¹]` for each glued edge.
    pub j_maps: Vec<SimplicialMap>,
}

pub fn localize(m: &MarkedSSet) -> Result<Localization> {
    let cap = m.sset.cap();
    if cap < 1 {
        return Err(Error::InsufficientCap {
            need: 1,
            have: cap,
            what: "localization".into(),
        });
    }
    let (j, j_edge) = walking_iso_edge(cap);
    let d1 = simplex_keyed(1, cap).sset;
    let incl = edge_map(&j, j_edge);
    let glued = m.nondegenerate_marked();
    let mut current = m.sset.clone();
    let mut p = SimplicialMap::identity(&m.sset);
    let mut j_maps: Vec<SimplicialMap> = Vec::new();
    for &e in &glued {
        let po = pushout(&d1, &current, &j, &edge_map(&current, p.apply(1, e)), &incl)?;
        j_maps = j_maps.iter().map(|g| g.then(&po.inl)).collect();
        j_maps.push(po.inr);
        p = p.then(&po.inl);
        current = po.sset;
    }
    let mut marked: Vec<bool> = (0..current.size(1))
        .map(|e| current.is_degenerate(1, e))
        .collect();
    for e in m.marked_edges() {
        marked[p.apply(1, e)] = true;
    }
    Ok(Localization {
        sset: current,
        p,
        marked,
        glued,
        j,
        j_edge,
        j_maps,
    })
}

/// Outcome of the bounded search for an extension along `Δ[1] -> J`.
#[derive(Clone, Debug)]
pub enum Extension {
    Found(SimplicialMap),
    NotFound { bound: usize },
}

/// Searches for a map `J -> s` (truncated at `s`'s cap) sending the edge
/// `0 -> 1` to `y`.
pub fn extend_along_j(s: &TruncSSet, y: usize) -> Result<Extension> {
    let cap = s.cap();
    let (j, e) = walking_iso_edge(cap);
    let index = FaceIndex::new(s, cap);
    let e_pos = j.nd_global(1, e).expect("nondegenerate edge");
    let nd = j.nd_list();
    let allowed = |k: usize, z: usize, v: usize| k != 1 || nd[e_pos] != (k, z) || v == y;
    let found = enumerate_maps(&j, s, &index, &allowed, Some(1))?;
    Ok(match found.into_iter().next() {
        Some(values) => Extension::Found(crate::sset::expand(&j, s, &values)),
        None => Extension::NotFound { bound: cap },
    })
}

impl Localization {
    /// The unique `U: S[E⁻¹] -> t` with `U ∘ p = g` and `U ∘ j_e = ext_e`,
    /// certified simplicial and consistent.
    pub fn mediator(
        &self,
        t: &TruncSSet,
        g: &SimplicialMap,
        extensions: &[SimplicialMap],
    ) -> (Option<SimplicialMap>, Certificate) {
        const KIND: &str = "localization-mediator";
        let cap = self.sset.cap();
        let fail = |w: String| (None, Certificate::fail(KIND, "", Some(cap), 0, w));
        if extensions.len() != self.glued.len() {
            return fail("one extension per glued edge is required".into());
        }
        let mut comps: Vec<Vec<usize>> = (0..=cap)
            .map(|n| vec![usize::MAX; self.sset.size(n)])
            .collect();
        let mut checked = 0;
        let sources = std::iter::once((&self.p, g)).chain(self.j_maps.iter().zip(extensions));
        for (leg, values) in sources {
            for (n, comp) in comps.iter_mut().enumerate() {
                for x in 0..leg.components[n].len() {
                    checked += 1;
                    let (z, v) = (leg.apply(n, x), values.apply(n, x));
                    if comp[z] != usize::MAX && comp[z] != v {
                        return fail(format!("conflicting values at degree {n} simplex {z}"));
                    }
                    comp[z] = v;
                }
            }
        }
        if comps.iter().any(|c| c.contains(&usize::MAX)) {
            return fail("legs do not cover the localization".into());
        }
        let u = SimplicialMap::new(comps);
        if let Err(w) = u.check(&self.sset, t) {
            return fail(w);
        }
        (Some(u), Certificate::pass(KIND, "", Some(cap), checked))
    }

    /// Mediator for `g`, finding each extension by [`extend_along_j`].
    pub fn universal_mediator(
        &self,
        t: &TruncSSet,
        g: &SimplicialMap,
    ) -> Result<(Option<SimplicialMap>, Certificate)> {
        let mut exts = Vec::new();
        for &e in &self.glued {
            match extend_along_j(t, g.apply(1, e))? {
                Extension::Found(u) => exts.push(u),
                Extension::NotFound { bound } => {
                    let w = format!("no extension along J for the image of edge {e}");
                    return Ok((
                        None,
                        Certificate::fail("localization-mediator", "", Some(bound), 0, w),
                    ));
                }
            }
        }
        Ok(self.mediator(t, g, &exts))
    }
}

/// The comparison `L(E(Y)) -> Y` and its degreewise behavior.
#[derive(Clone, Debug)]
pub struct CounitReport {
    pub map: Option<SimplicialMap>,
    pub source_sizes: Vec<usize>,
    pub target_sizes: Vec<usize>,
    pub injective: Vec<bool>,
    pub surjective: Vec<bool>,
}

pub fn counit_comparison(y: &TruncSSet) -> Result<CounitReport> {
    let loc = localize(&MarkedSSet::natural(y.clone())?)?;
    let (map, _) = loc.universal_mediator(y, &SimplicialMap::identity(y))?;
    let (mut injective, mut surjective) = (Vec::new(), Vec::new());
    if let Some(u) = &map {
        for n in 0..=y.cap() {
            let mut hits = vec![0usize; y.size(n)];
            for &v in &u.components[n] {
                hits[v] += 1;
            }
            injective.push(hits.iter().all(|&h| h <= 1));
            surjective.push(hits.iter().all(|&h| h >= 1));
        }
    }
    Ok(CounitReport {
        map,
        source_sizes: loc.sset.sizes().to_vec(),
        target_sizes: y.sizes().to_vec(),
        injective,
        surjective,
    })
}

/// A marked simplicial set with a map to a nerve.
#[derive(Clone, Debug)]
pub struct MarkedOver {
    pub total: MarkedSSet,
    pub projection: SimplicialMap,
}

impl MarkedOver {
    /// `N(D)♯` over itself.
    pub fn base(shape: &FinCategory, cap: usize) -> Self {
        let n = shape.nerve(cap).sset;
        let projection = SimplicialMap::identity(&n);
        MarkedOver {
            total: MarkedSSet::sharp(n),
            projection,
        }
    }
}

/// The relative nerve of a marked diagram: `(e, (β₀, β₁))` is marked when
/// `β₁` is marked in the value at the target of `e`.
#[derive(Clone, Debug)]
pub struct MarkedRelNerve {
    pub rel: RelNerve,
    pub over: MarkedOver,
}

pub fn marked_rel_nerve(diagram: &MarkedDiagram, cap: usize) -> Result<MarkedRelNerve> {
    let rel = lurie_grothendieck(&diagram.diagram, cap)?;
    let shape = &diagram.diagram.shape;
    let marked = if cap >= 1 {
        rel.keyed.keys[1]
            .iter()
            .map(|(s, beta)| diagram.marks[shape.string_object(&rel.base.keys[1][*s], 1)][beta[1]])
            .collect()
    } else {
        vec![]
    };
    let total = MarkedSSet::new(rel.total().clone(), marked)?;
    let over = MarkedOver {
        total,
        projection: rel.projection.clone(),
    };
    Ok(MarkedRelNerve { rel, over })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OverVariant {
    Plus,
    Flat,
    Sharp,
}

/// Maps `Δ[n]♭ × X -> Y` over the base, with the marking of the chosen variant.
/// For the sharp variant, `result` is the simplicial subset of simplices all
/// of whose edges are marked in the plus variant, and `inclusion` embeds it.
#[derive(Clone, Debug)]
pub struct OverMapSpace {
    pub space: MapSpace,
    pub plus: MarkedSSet,
    pub result: MarkedSSet,
    pub inclusion: Option<SimplicialMap>,
}

pub fn over_mapping_space(
    x: &MarkedOver,
    y: &MarkedOver,
    shape: &FinCategory,
    variant: OverVariant,
    cap_out: usize,
    tensor_cap: Option<usize>,
) -> Result<OverMapSpace> {
    let xs = &x.total.sset;
    let tc = tensor_cap.unwrap_or(cap_out + xs.dim_nondegenerate().unwrap_or(0));
    let base_ext = shape.nerve(tc).sset;
    let source = crate::sset::extend_skeletal(xs, tc);
    let px = extend_map_skeletal(&x.projection, &source, &base_ext);
    let x_marked = |s: usize| xs.cap() < 1 || s >= x.total.marked.len() || x.total.marked[s];
    let constraint = |cell: crate::sset::TensorCell, v: usize| {
        if y.projection.apply(cell.degree, v) != px.apply(cell.degree, cell.x) {
            return false;
        }
        let flat_edge = cell.degree == 1 && cell.simplex[0] == cell.simplex[1];
        !(flat_edge && x_marked(cell.x)) || y.total.marked[v]
    };
    let space = MapSpace::build(&y.total.sset, xs, cap_out, Some(tc), &constraint)?;
    let plus_marks: Vec<bool> = if cap_out >= 1 {
        let t = &space.tensors[1];
        let cells: Vec<(usize, bool)> = t
            .sset
            .nd_list()
            .into_iter()
            .enumerate()
            .filter(|&(_, (k, _))| k == 1)
            .map(|(pos, (_, z))| (pos, x_marked(t.split(1, z).1)))
            .collect();
        space.maps[1]
            .iter()
            .map(|phi| {
                cells
                    .iter()
                    .all(|&(pos, xm)| !xm || y.total.marked[phi[pos]])
            })
            .collect()
    } else {
        vec![]
    };
    let plus = MarkedSSet::new(space.sset.clone(), plus_marks)?;
    let (result, inclusion) = match variant {
        OverVariant::Plus => (plus.clone(), None),
        OverVariant::Flat => (MarkedSSet::flat(space.sset.clone()), None),
        OverVariant::Sharp => {
            let sub: SubSSet = sub_sset(&space.sset, |n, s| {
                n == 0 || {
                    let all: Vec<usize> = (0..=n).collect();
                    (0..n).all(|a| {
                        (a + 1..=n)
                            .all(|b| plus.marked[space.sset.restrict_to(n, s, &[all[a], all[b]])])
                    })
                }
            })?;
            (MarkedSSet::sharp(sub.sset.clone()), Some(sub.inclusion))
        }
    };
    Ok(OverMapSpace {
        space,
        plus,
        result,
        inclusion,
    })
}

/// `X ×_{N(D)} N(D/d)` with the marking of `X`.
#[derive(Clone, Debug)]
pub struct Unstraightened {
    pub over: MarkedOver,
    pub to_slice: SimplicialMap,
    pub slice: Slice,
    pub slice_nerve: Keyed<NerveKey>,
}

pub fn unstraighten_at(x: &MarkedOver, shape: &FinCategory, d: usize) -> Result<Unstraightened> {
    let cap = x.total.sset.cap();
    let slice = shape.over_category(d);
    let slice_nerve = slice.cat.nerve(cap);
    let forget = slice.forget.nerve_map(&slice_nerve, &shape.nerve(cap));
    let pb = pullback(&x.total.sset, &slice_nerve.sset, &x.projection, &forget)?;
    let marked = if cap >= 1 {
        pb.pairs[1]
            .iter()
            .map(|&(a, _)| x.total.marked[a])
            .collect()
    } else {
        vec![]
    };
    let total = MarkedSSet::new(pb.sset, marked)?;
    let projection = pb.pr_left.then(&x.projection);
    Ok(Unstraightened {
        over: MarkedOver { total, projection },
        to_slice: pb.pr_right,
        slice,
        slice_nerve,
    })
}

/// The diagram `d ↦ [N(d/D)♯, X]⁺_D` with its precomposition maps.
#[derive(Clone, Debug)]
pub struct Rectified {
    pub diagram: MarkedDiagram,
    pub spaces: Vec<OverMapSpace>,
    pub slices: Vec<Slice>,
    pub slice_nerves: Vec<Keyed<NerveKey>>,
    pub tensor_cap: usize,
}

/// The functor `d'/D -> d/D`, `u ↦ u ∘ g`, for `g: d -> d'`.
pub fn under_precomposition(shape: &FinCategory, slices: &[Slice], g: usize) -> CatFunctor {
    let (d, d2) = (shape.source(g), shape.target(g));
    let (from, to) = (&slices[d2], &slices[d]);
    let obj_map = from
        .arrow_of
        .iter()
        .map(|&u| to.obj_index[&shape.compose(u, g)])
        .collect();
    let mor_map = (0..from.cat.num_morphisms())
        .map(|m| {
            let src = from.arrow_of[from.cat.source(m)];
            to.mor_index[&(to.obj_index[&shape.compose(src, g)], from.forget.mor_map[m])]
        })
        .collect();
    CatFunctor { obj_map, mor_map }
}

pub fn rectify_right(x: &MarkedOver, shape: &FinCategory, cap_out: usize) -> Result<Rectified> {
    let slices: Vec<Slice> = (0..shape.num_objects())
        .map(|d| shape.under_category(d))
        .collect();
    let mut max_dim = 0;
    for s in &slices {
        match s.cat.nerve_dimension() {
            Some(k) => max_dim = max_dim.max(k),
            None => return Err(Error::TruncationUnsound(
                "under categories with infinite-dimensional nerves have no finite mapping spaces"
                    .into(),
            )),
        }
    }
    let tc = cap_out + max_dim;
    let base = shape.nerve(tc);
    let slice_nerves: Vec<Keyed<NerveKey>> = slices.iter().map(|s| s.cat.nerve(tc)).collect();
    let spaces = slices
        .iter()
        .zip(&slice_nerves)
        .map(|(s, n)| {
            let src = MarkedOver {
                total: MarkedSSet::sharp(n.sset.clone()),
                projection: s.forget.nerve_map(n, &base),
            };
            over_mapping_space(&src, x, shape, OverVariant::Plus, cap_out, Some(tc))
        })
        .collect::<Result<Vec<_>>>()?;
    let maps = (0..shape.num_morphisms())
        .map(|g| {
            let (d, d2) = (shape.source(g), shape.target(g));
            let h = under_precomposition(shape, &slices, g)
                .nerve_map(&slice_nerves[d2], &slice_nerves[d]);
            spaces[d]
                .space
                .precompose(&spaces[d2].space, &x.total.sset, &h)
        })
        .collect::<Result<Vec<_>>>()?;
    let values = spaces.iter().map(|s| s.space.sset.clone()).collect();
    let diagram = SSetDiagram::new(shape.clone(), values, maps)?;
    let marks = spaces.iter().map(|s| s.plus.marked.clone()).collect();
    let diagram = MarkedDiagram::new(diagram, marks)?;
    Ok(Rectified {
        diagram,
        spaces,
        slices,
        slice_nerves,
        tensor_cap: tc,
    })
}

/// Certifies `localize(Δ[1]♯) ≅ J` through the glued copy of `J`.
pub fn sharp_interval_localization(cap: usize) -> Result<Certificate> {
    let d1 = simplex_keyed(1, cap).sset;
    let loc = localize(&MarkedSSet::sharp(d1))?;
    let j = &loc.j_maps[0];
    Ok(match j.inverse(&loc.sset) {
        Some(inv) => {
            let c = verify_iso_map(&loc.j, &loc.sset, j, &inv);
            Certificate {
                kind: "localize-interval".into(),
                ..c
            }
        }
        None => Certificate::fail(
            "localize-interval",
            "",
            Some(cap),
            0,
            "glued J is not a bijection".into(),
        ),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certcheck::check_simplicial_identities;
    use crate::sset::simplex;

    #[test]
    fn markings_of_the_interval() {
        let d1 = simplex(1, 2);
        assert_eq!(MarkedSSet::flat(d1.clone()).marked_edges().len(), 2);
        assert_eq!(
            MarkedSSet::natural(d1.clone())
                .unwrap()
                .nondegenerate_marked(),
            Vec::<usize>::new()
        );
        assert_eq!(MarkedSSet::sharp(d1).marked_edges().len(), 3);
    }

    #[test]
    fn groupoid_edges_are_equivalences() {
        let j = walking_iso(3);
        let eq = equivalences(&j).unwrap();
        assert!(eq.iter().all(Option::is_some));
        for w in eq.into_iter().flatten() {
            assert!(w.holds(&j));
        }
        let g = FinCategory::cyclic_group(3).nerve(2).sset;
        assert!(equivalences(&g).unwrap().iter().all(Option::is_some));
    }

    #[test]
    fn localization_examples() {
        assert!(sharp_interval_localization(3).unwrap().passed());
        let d2 = simplex(2, 3);
        let flat = localize(&MarkedSSet::flat(d2.clone())).unwrap();
        assert_eq!(flat.sset, d2);
        let loc = localize(&MarkedSSet::sharp(d2)).unwrap();
        assert!(check_simplicial_identities(&loc.sset).passed());
        assert!(loc.p.is_injective());
    }

    #[test]
    fn extensions_and_mediators() {
        let g = FinCategory::cyclic_group(2).nerve(3).sset;
        for e in 0..g.size(1) {
            assert!(matches!(
                extend_along_j(&g, e).unwrap(),
                Extension::Found(_)
            ));
        }
        let d1 = simplex(1, 3);
        let nondeg = d1.nondegenerate(1)[0];
        assert!(matches!(
            extend_along_j(&d1, nondeg).unwrap(),
            Extension::NotFound { .. }
        ));
        let (j, e) = walking_iso_edge(3);
        let loc = localize(&MarkedSSet::sharp(d1.clone())).unwrap();
        let g = edge_map(&j, e);
        let (u, cert) = loc.universal_mediator(&j, &g).unwrap();
        assert!(cert.passed(), "{}", cert.line());
        assert_eq!(loc.p.then(&u.unwrap()), g);
    }

    #[test]
    fn relative_nerve_markings() {
        let shape = FinCategory::ordinal(1);
        let d = SSetDiagram::constant(&shape, &walking_iso(2));
        let flat = MarkedDiagram::flat(d.clone()).unwrap();
        let r = marked_rel_nerve(&flat, 2).unwrap();
        // With flat values an edge is marked exactly when its fiber part is degenerate,
        // so the edges over the nondegenerate base edge with constant fiber part are marked.
        let rel = &r.rel;
        for e in 0..rel.total().size(1) {
            let (s, beta) = rel.keyed.key(1, e);
            let c = shape.string_object(&rel.base.keys[1][*s], 1);
            assert_eq!(
                r.over.total.marked[e],
                d.values[c].is_degenerate(1, beta[1])
            );
        }
        assert!(!r.over.total.nondegenerate_marked().is_empty());
        let sharp = marked_rel_nerve(&MarkedDiagram::sharp(d).unwrap(), 2).unwrap();
        assert!(sharp.over.total.marked.iter().all(|&m| m));
    }

    #[test]
    fn point_maps_into_the_base_are_terminal() {
        let shape = FinCategory::ordinal(1);
        let base = MarkedOver::base(&shape, 2);
        let x = MarkedOver::base(&shape, 1);
        let m = over_mapping_space(&x, &base, &shape, OverVariant::Plus, 1, None).unwrap();
        assert_eq!(m.space.sset.sizes(), &[1, 1]);
    }

    #[test]
    fn rectification_of_the_base_is_constant_point() {
        let shape = FinCategory::span();
        let r = rectify_right(&MarkedOver::base(&shape, 3), &shape, 2).unwrap();
        for v in &r.diagram.diagram.values {
            assert_eq!(v.sizes(), &[1, 1, 1]);
        }
    }

    #[test]
    fn unstraightening_over_terminal_and_initial_objects() {
        let shape = FinCategory::ordinal(1);
        let x = MarkedOver::base(&shape, 2);
        let at_top = unstraighten_at(&x, &shape, 1).unwrap();
        assert_eq!(at_top.over.total.sset.sizes(), x.total.sset.sizes());
        let at_bottom = unstraighten_at(&x, &shape, 0).unwrap();
        assert_eq!(at_bottom.over.total.sset.sizes(), &[1, 1, 1]);
    }
}
