//! Relative nerves of simplicial-set valued diagrams.
//!
//! Two constructions of the same object over `N(D)`:
//! * [`lurie_grothendieck`]: an `n`-simplex is a base simplex `σ` with a tuple
//!   `(β_0, ..., β_n)`, `β_i ∈ F(σ(i))_i`, whose last faces satisfy
//!   `d_i β_i = F(σ(i-1, i))(β_{i-1})`;
//! * [`relative_nerve_direct`]: a base simplex with one simplex `τ^J` for every
//!   nonempty `J ⊆ [n]`, compatible under every inclusion `I ⊆ J`.
//!
//! [`PathSpaces`] builds the mapping path spaces `P^n_{F(σ)}`, whose
//! `m`-simplices are tuples `γ_i: Δ[m] × Δ[i] -> F(σ(i))`, and assembles them
//! into the simplicial space whose zeroth row is the relative nerve.

use std::collections::HashMap;

use crate::certcheck::{verify_iso_map, verify_over, Certificate};
use crate::diagram::SSetDiagram;
use crate::error::{Error, Result};
use crate::fincat::NerveKey;
use crate::sset::surj::{codegeneracy, coface};
use crate::sset::{
    build_keyed, pullback, simplex, simplex_keyed, simplex_map, sub_sset, BiTruncSSet, FaceIndex,
    Keyed, MapSpace, SimplicialMap, SubSSet, TruncSSet,
};

/// Key of a simplex over `N(D)`: base simplex id and fiber coordinates.
pub type PathKey = (usize, Vec<usize>);

/// A simplicial set over `N(D)` with keyed simplices.
#[derive(Clone, Debug)]
pub struct RelNerve {
    pub keyed: Keyed<PathKey>,
    pub projection: SimplicialMap,
    pub base: Keyed<NerveKey>,
}

impl RelNerve {
    pub fn total(&self) -> &TruncSSet {
        &self.keyed.sset
    }

    pub fn cap(&self) -> usize {
        self.keyed.sset.cap()
    }

    fn from_keyed(keyed: Keyed<PathKey>, base: Keyed<NerveKey>) -> Self {
        let projection = SimplicialMap::new(
            keyed
                .keys
                .iter()
                .map(|ks| ks.iter().map(|k| k.0).collect())
                .collect(),
        );
        RelNerve {
            keyed,
            projection,
            base,
        }
    }

    /// Id of the constant base simplex at object `c` in degree `n`.
    pub fn constant_base(&self, diagram: &SSetDiagram, c: usize, n: usize) -> usize {
        let id = diagram.shape.identity(c);
        self.base.id(n, &(c, vec![id; n])).expect("constant string")
    }
}

fn require_cap(diagram: &SSetDiagram, need: usize, what: &str) -> Result<()> {
    if diagram.cap() < need {
        return Err(Error::InsufficientCap {
            need,
            have: diagram.cap(),
            what: what.into(),
        });
    }
    Ok(())
}

/// Simplices of `x` of each degree `i >= 1` grouped by their last face.
fn last_face_index(x: &TruncSSet, top: usize) -> Vec<HashMap<usize, Vec<usize>>> {
    let mut out = vec![HashMap::new()];
    for i in 1..=top.min(x.cap()) {
        let mut map: HashMap<usize, Vec<usize>> = HashMap::new();
        for s in 0..x.size(i) {
            map.entry(x.face(i, i, s)).or_default().push(s);
        }
        out.push(map);
    }
    out
}

/// The relative nerve as tuples `(σ, β_0, ..., β_n)`, truncated at `cap`.
pub fn lurie_grothendieck(diagram: &SSetDiagram, cap: usize) -> Result<RelNerve> {
    require_cap(diagram, cap, "relative nerve")?;
    let shape = &diagram.shape;
    let base = shape.nerve(cap);
    let lf: Vec<_> = diagram
        .values
        .iter()
        .map(|v| last_face_index(v, cap))
        .collect();
    let enumerate = |n: usize| -> Vec<PathKey> {
        let mut out = Vec::new();
        for (s, key) in base.keys[n].iter().enumerate() {
            let mut stack: Vec<Vec<usize>> = (0..diagram.values[key.0].size(0))
                .map(|b| vec![b])
                .collect();
            while let Some(beta) = stack.pop() {
                let i = beta.len();
                if i == n + 1 {
                    out.push((s, beta));
                    continue;
                }
                let f = key.1[i - 1];
                let image = diagram.maps[f].apply(i - 1, beta[i - 1]);
                let c = shape.target(f);
                if let Some(next) = lf[c][i].get(&image) {
                    for &b in next.iter().rev() {
                        let mut t = beta.clone();
                        t.push(b);
                        stack.push(t);
                    }
                }
            }
        }
        out.sort();
        out
    };
    let face = |n: usize, j: usize, (s, beta): &PathKey| -> PathKey {
        let key = &base.keys[n][*s];
        let mut out = beta[..j].to_vec();
        for k in j + 1..=n {
            let c = shape.string_object(key, k);
            out.push(diagram.values[c].face(k, j, beta[k]));
        }
        (base.sset.face(n, j, *s), out)
    };
    let degen = |n: usize, j: usize, (s, beta): &PathKey| -> PathKey {
        let key = &base.keys[n][*s];
        let mut out = beta[..=j].to_vec();
        for k in j..=n {
            let c = shape.string_object(key, k);
            out.push(diagram.values[c].degen(k, j, beta[k]));
        }
        (base.sset.degen(n, j, *s), out)
    };
    let keyed = build_keyed(cap, enumerate, face, degen)?;
    Ok(RelNerve::from_keyed(keyed, base))
}

/// Elements of the subset with bitmask `mask`, increasing.
fn elements(mask: usize) -> Vec<usize> {
    (0..usize::BITS as usize)
        .filter(|&b| mask >> b & 1 == 1)
        .collect()
}

/// Nonempty subsets of `[n]` ordered by size, then mask.
fn subsets_by_size(n: usize) -> Vec<usize> {
    let mut masks: Vec<usize> = (1..1usize << (n + 1)).collect();
    masks.sort_by_key(|&m| (m.count_ones(), m));
    masks
}

/// Positions of the elements of `inner` inside the sorted list `outer`.
fn positions(outer: &[usize], inner: &[usize]) -> Vec<usize> {
    inner
        .iter()
        .map(|v| outer.binary_search(v).expect("subset"))
        .collect()
}

/// The relative nerve from its subset description: `τ^J ∈ F(σ(max J))_{|J|-1}`
/// indexed by `mask - 1`, with `F(σ(max I, max J))(τ^I) = τ^J|_I` for `I ⊆ J`.
pub fn relative_nerve_direct(diagram: &SSetDiagram, cap: usize) -> Result<RelNerve> {
    require_cap(diagram, cap, "relative nerve")?;
    let shape = &diagram.shape;
    let base = shape.nerve(cap);
    let indices: Vec<FaceIndex> = diagram
        .values
        .iter()
        .map(|v| FaceIndex::new(v, cap))
        .collect();
    let top = |mask: usize| usize::BITS as usize - 1 - mask.leading_zeros() as usize;

    let enumerate = |n: usize| -> Vec<PathKey> {
        let order = subsets_by_size(n);
        let mut out = Vec::new();
        for (s, key) in base.keys[n].iter().enumerate() {
            let mut tau = vec![usize::MAX; (1 << (n + 1)) - 1];
            search(
                diagram,
                &indices,
                key,
                &order,
                0,
                &mut tau,
                &mut |t| out.push((s, t.to_vec())),
                &top,
            );
        }
        out.sort();
        out
    };

    #[allow(clippy::too_many_arguments)]
    fn search(
        diagram: &SSetDiagram,
        indices: &[FaceIndex],
        key: &NerveKey,
        order: &[usize],
        depth: usize,
        tau: &mut Vec<usize>,
        emit: &mut dyn FnMut(&[usize]),
        top: &dyn Fn(usize) -> usize,
    ) {
        if depth == order.len() {
            emit(tau);
            return;
        }
        let shape = &diagram.shape;
        let mask = order[depth];
        let elems = elements(mask);
        let max = top(mask);
        let c = shape.string_object(key, max);
        let dim = elems.len() - 1;
        let candidates: Vec<usize> = if dim == 0 {
            (0..diagram.values[c].size(0)).collect()
        } else {
            let faces: Vec<usize> = elems
                .iter()
                .enumerate()
                .map(|(p, &v)| {
                    let sub = mask & !(1 << v);
                    let t = tau[sub - 1];
                    if p < dim {
                        t
                    } else {
                        diagram.along(key, top(sub), max, dim - 1, t)
                    }
                })
                .collect();
            indices[c].candidates(dim, &faces).to_vec()
        };
        for cand in candidates {
            // Full compatibility with every proper subset, not only the faces.
            let ok = (1..mask).filter(|&sub| sub & mask == sub).all(|sub| {
                let sub_elems = elements(sub);
                let restricted =
                    diagram.values[c].restrict_to(dim, cand, &positions(&elems, &sub_elems));
                restricted == diagram.along(key, top(sub), max, sub_elems.len() - 1, tau[sub - 1])
            });
            if ok {
                tau[mask - 1] = cand;
                search(diagram, indices, key, order, depth + 1, tau, emit, top);
            }
        }
        tau[mask - 1] = usize::MAX;
    }

    let face = |n: usize, k: usize, (s, tau): &PathKey| -> PathKey {
        let out = (1..1usize << n)
            .map(|sub| {
                // Relabel J' ⊆ [n-1] into [n] skipping k.
                let low = sub & ((1 << k) - 1);
                let high = (sub >> k) << (k + 1);
                tau[(low | high) - 1]
            })
            .collect();
        (base.sset.face(n, k, *s), out)
    };
    let degen = |n: usize, k: usize, (s, tau): &PathKey| -> PathKey {
        let key = &base.keys[n][*s];
        let out = (1..1usize << (n + 2))
            .map(|sub| {
                let elems = elements(sub);
                let image_mask = elems
                    .iter()
                    .fold(0usize, |acc, &v| acc | 1 << if v <= k { v } else { v - 1 });
                let t = tau[image_mask - 1];
                if sub >> k & 0b11 == 0b11 {
                    let p = elems.iter().position(|&v| v == k).expect("k in subset");
                    let c = shape.string_object(key, top(image_mask));
                    diagram.values[c].degen(elems.len() - 2, p, t)
                } else {
                    t
                }
            })
            .collect();
        (base.sset.degen(n, k, *s), out)
    };
    let keyed = build_keyed(cap, enumerate, face, degen)?;
    Ok(RelNerve::from_keyed(keyed, base))
}

/// A certified pair of mutually inverse maps.
#[derive(Clone, Debug)]
pub struct Comparison {
    pub forward: Option<SimplicialMap>,
    pub inverse: Option<SimplicialMap>,
    pub certificate: Certificate,
}

impl Comparison {
    fn failed(kind: &str, bound: usize, witness: String) -> Self {
        Comparison {
            forward: None,
            inverse: None,
            certificate: Certificate::fail(kind, "", Some(bound), 0, witness),
        }
    }
}

/// The isomorphism between the tuple and subset descriptions: `τ^J` is the
/// restriction of `β_{max J}` to `J`, and `β_j = τ^{[0..j]}`.
pub fn compare_relnerve_iso(
    diagram: &SSetDiagram,
    tuples: &RelNerve,
    subsets: &RelNerve,
) -> Comparison {
    const KIND: &str = "relnerve-iso";
    let cap = tuples.cap();
    if subsets.cap() != cap {
        return Comparison::failed(KIND, cap, "caps differ".into());
    }
    let shape = &diagram.shape;
    let mut forward = Vec::with_capacity(cap + 1);
    let mut inverse = Vec::with_capacity(cap + 1);
    for n in 0..=cap {
        let mut comp = Vec::with_capacity(tuples.total().size(n));
        for (s, beta) in &tuples.keyed.keys[n] {
            let key = &tuples.base.keys[n][*s];
            let tau: Vec<usize> = (1..1usize << (n + 1))
                .map(|mask| {
                    let elems = elements(mask);
                    let max = *elems.last().expect("nonempty");
                    let c = shape.string_object(key, max);
                    diagram.values[c].restrict_to(max, beta[max], &elems)
                })
                .collect();
            match subsets.keyed.id(n, &(*s, tau)) {
                Some(t) => comp.push(t),
                None => {
                    return Comparison::failed(
                        KIND,
                        cap,
                        format!("no subset simplex for degree {n} tuple {beta:?}"),
                    )
                }
            }
        }
        forward.push(comp);
        let mut comp = Vec::with_capacity(subsets.total().size(n));
        for (s, tau) in &subsets.keyed.keys[n] {
            let beta: Vec<usize> = (0..=n).map(|j| tau[(1 << (j + 1)) - 2]).collect();
            match tuples.keyed.id(n, &(*s, beta)) {
                Some(t) => comp.push(t),
                None => {
                    return Comparison::failed(
                        KIND,
                        cap,
                        format!("no tuple simplex for degree {n} subset data {tau:?}"),
                    )
                }
            }
        }
        inverse.push(comp);
    }
    let (f, g) = (SimplicialMap::new(forward), SimplicialMap::new(inverse));
    let parts = [
        verify_iso_map(tuples.total(), subsets.total(), &f, &g),
        verify_over(&f, &tuples.projection, &subsets.projection),
        verify_over(&g, &subsets.projection, &tuples.projection),
    ];
    Comparison {
        forward: Some(f),
        inverse: Some(g),
        certificate: Certificate::all(KIND, "", &parts),
    }
}

/// The fiber over object `c`: simplices projecting to constant strings at `c`.
pub fn fiber_at(r: &RelNerve, diagram: &SSetDiagram, c: usize) -> SubSSet {
    let constant: Vec<usize> = (0..=r.cap())
        .map(|n| r.constant_base(diagram, c, n))
        .collect();
    sub_sset(r.total(), |n, x| r.projection.apply(n, x) == constant[n]).expect("fibers are closed")
}

/// Certifies the fiber over `c` isomorphic to `F(c)` by sending a fiber simplex
/// to its top coordinate (`β_n`, respectively `τ^{[n]}`).
pub fn fiber_comparison(r: &RelNerve, diagram: &SSetDiagram, c: usize) -> (SubSSet, Comparison) {
    const KIND: &str = "fiber-iso";
    let fiber = fiber_at(r, diagram, c);
    let value = diagram.values[c].restrict_cap(r.cap());
    let mut forward = Vec::new();
    let mut inverse = Vec::new();
    for n in 0..=r.cap() {
        let tops: Vec<usize> = (0..fiber.sset.size(n))
            .map(|x| {
                *r.keyed
                    .key(n, fiber.inclusion.apply(n, x))
                    .1
                    .last()
                    .expect("nonempty coordinates")
            })
            .collect();
        let mut inv = vec![usize::MAX; value.size(n)];
        for (x, &t) in tops.iter().enumerate() {
            if inv[t] != usize::MAX {
                let w = format!("two fiber simplices of degree {n} share top coordinate {t}");
                return (fiber, Comparison::failed(KIND, r.cap(), w));
            }
            inv[t] = x;
        }
        if let Some(t) = inv.iter().position(|&x| x == usize::MAX) {
            let w = format!("degree {n} simplex {t} of the value has no fiber simplex");
            return (fiber, Comparison::failed(KIND, r.cap(), w));
        }
        forward.push(tops);
        inverse.push(inv);
    }
    let (f, g) = (SimplicialMap::new(forward), SimplicialMap::new(inverse));
    let cert =
        verify_iso_map(&fiber.sset, &value, &f, &g).with_subject(diagram.shape.object_name(c));
    let cert = Certificate {
        kind: KIND.into(),
        ..cert
    };
    (
        fiber,
        Comparison {
            forward: Some(f),
            inverse: Some(g),
            certificate: cert,
        },
    )
}

/// Which structure map of the path spaces.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StructureKind {
    Face,
    Degeneracy,
}

/// The mapping path spaces of a diagram with the data needed for their
/// structure maps: the exponentials `E[c][i] = F(c)^{Δ[i]}` truncated at
/// `mcap`, their restrictions along cofaces and codegeneracies of `Δ[i]`, and
/// the postcompositions with `F(f)`.
#[derive(Clone, Debug)]
pub struct PathSpaces {
    pub ncap: usize,
    pub mcap: usize,
    pub base: Keyed<NerveKey>,
    pub exps: Vec<Vec<MapSpace>>,
    /// `restrict[c][i][j]`: `E[c][i] -> E[c][i-1]` along `d^j`.
    pub restrict: Vec<Vec<Vec<SimplicialMap>>>,
    /// `extend[c][i][j]`: `E[c][i] -> E[c][i+1]` along `s^j`.
    pub extend: Vec<Vec<Vec<SimplicialMap>>>,
    /// `post[f][i]`: `E[s(f)][i] -> E[t(f)][i]`.
    pub post: Vec<Vec<SimplicialMap>>,
    shape_targets: Vec<usize>,
    /// Per object, per `i`, per `m`: simplices of `E[c][i]_m` by last restriction.
    last_index: Vec<Vec<Vec<HashMap<usize, Vec<usize>>>>>,
}

impl PathSpaces {
    /// Needs the diagram's values up to dimension `ncap + mcap`.
    pub fn new(diagram: &SSetDiagram, ncap: usize, mcap: usize) -> Result<Self> {
        let tc = ncap + mcap;
        require_cap(diagram, tc, "mapping path spaces")?;
        let shape = &diagram.shape;
        let base = shape.nerve(ncap);
        let mut exps = Vec::with_capacity(diagram.values.len());
        for y in &diagram.values {
            let per_i = (0..=ncap)
                .map(|i| MapSpace::build(y, &simplex(i, tc), mcap, Some(tc), &|_, _| true))
                .collect::<Result<Vec<_>>>()?;
            exps.push(per_i);
        }
        let mut restrict = Vec::new();
        let mut extend = Vec::new();
        for (c, y) in diagram.values.iter().enumerate() {
            let e = &exps[c];
            let mut r = vec![vec![]];
            for i in 1..=ncap {
                r.push(
                    (0..=i)
                        .map(|j| {
                            e[i].precompose(&e[i - 1], y, &simplex_map(i - 1, i, &coface(i, j), tc))
                        })
                        .collect::<Result<Vec<_>>>()?,
                );
            }
            let mut x = Vec::new();
            for i in 0..ncap {
                x.push(
                    (0..=i)
                        .map(|j| {
                            e[i].precompose(
                                &e[i + 1],
                                y,
                                &simplex_map(i + 1, i, &codegeneracy(i, j), tc),
                            )
                        })
                        .collect::<Result<Vec<_>>>()?,
                );
            }
            restrict.push(r);
            extend.push(x);
        }
        let post = (0..shape.num_morphisms())
            .map(|f| {
                let (s, t) = (shape.source(f), shape.target(f));
                (0..=ncap)
                    .map(|i| exps[s][i].postcompose(&exps[t][i], &diagram.maps[f]))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let last_index = (0..diagram.values.len())
            .map(|c| {
                (0..=ncap)
                    .map(|i| {
                        (0..=mcap)
                            .map(|m| {
                                let mut map: HashMap<usize, Vec<usize>> = HashMap::new();
                                if i > 0 {
                                    for g in 0..exps[c][i].sset.size(m) {
                                        map.entry(restrict[c][i][i].apply(m, g))
                                            .or_default()
                                            .push(g);
                                    }
                                }
                                map
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        let shape_targets = (0..shape.num_morphisms())
            .map(|f| shape.target(f))
            .collect();
        Ok(PathSpaces {
            ncap,
            mcap,
            base,
            exps,
            restrict,
            extend,
            post,
            shape_targets,
            last_index,
        })
    }

    fn object(&self, key: &NerveKey, i: usize) -> usize {
        if i == 0 {
            key.0
        } else {
            self.shape_targets[key.1[i - 1]]
        }
    }

    /// Compatible tuples over the base simplex `s` of degree `n`, in degree `m`.
    fn tuples(&self, n: usize, s: usize, m: usize) -> Vec<Vec<usize>> {
        let key = &self.base.keys[n][s];
        let mut out = Vec::new();
        let mut stack: Vec<Vec<usize>> = (0..self.exps[key.0][0].sset.size(m))
            .rev()
            .map(|g| vec![g])
            .collect();
        while let Some(gamma) = stack.pop() {
            let i = gamma.len();
            if i == n + 1 {
                out.push(gamma);
                continue;
            }
            let f = key.1[i - 1];
            let image = self.post[f][i - 1].apply(m, gamma[i - 1]);
            if let Some(next) = self.last_index[self.shape_targets[f]][i][m].get(&image) {
                for &g in next.iter().rev() {
                    let mut t = gamma.clone();
                    t.push(g);
                    stack.push(t);
                }
            }
        }
        out
    }

    fn vertical_face(&self, key: &NerveKey, m: usize, j: usize, gamma: &[usize]) -> Vec<usize> {
        gamma
            .iter()
            .enumerate()
            .map(|(i, &g)| self.exps[self.object(key, i)][i].sset.face(m, j, g))
            .collect()
    }

    fn vertical_degen(&self, key: &NerveKey, m: usize, j: usize, gamma: &[usize]) -> Vec<usize> {
        gamma
            .iter()
            .enumerate()
            .map(|(i, &g)| self.exps[self.object(key, i)][i].sset.degen(m, j, g))
            .collect()
    }

    /// Horizontal face `d_j`: `(γ_0, ..., γ_{j-1}, d_j γ_{j+1}, ..., d_j γ_n)`.
    pub fn horizontal_face(
        &self,
        key: &NerveKey,
        m: usize,
        j: usize,
        gamma: &[usize],
    ) -> Vec<usize> {
        let n = gamma.len() - 1;
        let mut out = gamma[..j].to_vec();
        for k in j + 1..=n {
            out.push(self.restrict[self.object(key, k)][k][j].apply(m, gamma[k]));
        }
        out
    }

    /// Horizontal degeneracy `s_j`: `(γ_0, ..., γ_j, s_j γ_j, ..., s_j γ_n)`.
    pub fn horizontal_degen(
        &self,
        key: &NerveKey,
        m: usize,
        j: usize,
        gamma: &[usize],
    ) -> Vec<usize> {
        let n = gamma.len() - 1;
        let mut out = gamma[..=j].to_vec();
        for k in j..=n {
            out.push(self.extend[self.object(key, k)][k][j].apply(m, gamma[k]));
        }
        out
    }

    /// The path space `P^n` over the base `n`-simplex `s`, truncated at `mcap`.
    pub fn path_space(&self, n: usize, s: usize) -> Result<Keyed<Vec<usize>>> {
        if n > self.ncap {
            return Err(Error::InsufficientCap {
                need: n,
                have: self.ncap,
                what: "path space degree".into(),
            });
        }
        let key = &self.base.keys[n][s];
        build_keyed(
            self.mcap,
            |m| self.tuples(n, s, m),
            |m, j, g| self.vertical_face(key, m, j, g),
            |m, j, g| self.vertical_degen(key, m, j, g),
        )
    }

    /// Column `n`: the coproduct of the path spaces over all base `n`-simplices.
    pub fn column(&self, n: usize) -> Result<Keyed<PathKey>> {
        let base = &self.base;
        build_keyed(
            self.mcap,
            |m| {
                (0..base.keys[n].len())
                    .flat_map(|s| self.tuples(n, s, m).into_iter().map(move |g| (s, g)))
                    .collect()
            },
            |m, j, (s, g)| (*s, self.vertical_face(&base.keys[n][*s], m, j, g)),
            |m, j, (s, g)| (*s, self.vertical_degen(&base.keys[n][*s], m, j, g)),
        )
    }

    /// The structure map of kind `kind` and index `i` out of the path space
    /// over the base `n`-simplex `s`, with its source and target.
    pub fn structure_map(
        &self,
        n: usize,
        s: usize,
        i: usize,
        kind: StructureKind,
    ) -> Result<(Keyed<Vec<usize>>, Keyed<Vec<usize>>, SimplicialMap)> {
        if i > n
            || (kind == StructureKind::Face && n == 0)
            || (kind == StructureKind::Degeneracy && n >= self.ncap)
        {
            return Err(Error::InvalidParameter(format!(
                "structure map index {i} out of range in degree {n}"
            )));
        }
        let key = &self.base.keys[n][s];
        let source = self.path_space(n, s)?;
        let (tn, ts) = match kind {
            StructureKind::Face => (n - 1, self.base.sset.face(n, i, s)),
            StructureKind::Degeneracy => (n + 1, self.base.sset.degen(n, i, s)),
        };
        let target = self.path_space(tn, ts)?;
        let comps = (0..=self.mcap)
            .map(|m| {
                source.keys[m]
                    .iter()
                    .map(|g| {
                        let image = match kind {
                            StructureKind::Face => self.horizontal_face(key, m, i, g),
                            StructureKind::Degeneracy => self.horizontal_degen(key, m, i, g),
                        };
                        target.id(m, &image).ok_or_else(|| {
                            Error::Structural(format!(
                                "structure map leaves the target path space at {g:?}"
                            ))
                        })
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok((source, target, SimplicialMap::new(comps)))
    }

    /// Assembles every column and the horizontal structure maps.
    pub fn simplicial_space(&self) -> Result<SimplicialSpace> {
        let columns = (0..=self.ncap)
            .map(|n| self.column(n))
            .collect::<Result<Vec<_>>>()?;
        let lookup = |col: &Keyed<PathKey>, m: usize, key: PathKey| {
            col.id(m, &key)
                .ok_or_else(|| Error::Structural(format!("horizontal image {key:?} missing")))
        };
        let mut hface = vec![vec![]];
        let mut hdegen = Vec::new();
        for n in 0..=self.ncap {
            if n > 0 {
                let maps = (0..=n)
                    .map(|j| {
                        let comps = (0..=self.mcap)
                            .map(|m| {
                                columns[n].keys[m]
                                    .iter()
                                    .map(|(s, g)| {
                                        let key = &self.base.keys[n][*s];
                                        let t = (
                                            self.base.sset.face(n, j, *s),
                                            self.horizontal_face(key, m, j, g),
                                        );
                                        lookup(&columns[n - 1], m, t)
                                    })
                                    .collect::<Result<Vec<_>>>()
                            })
                            .collect::<Result<Vec<_>>>()?;
                        Ok(SimplicialMap::new(comps))
                    })
                    .collect::<Result<Vec<_>>>()?;
                hface.push(maps);
            }
            if n < self.ncap {
                let maps = (0..=n)
                    .map(|j| {
                        let comps = (0..=self.mcap)
                            .map(|m| {
                                columns[n].keys[m]
                                    .iter()
                                    .map(|(s, g)| {
                                        let key = &self.base.keys[n][*s];
                                        let t = (
                                            self.base.sset.degen(n, j, *s),
                                            self.horizontal_degen(key, m, j, g),
                                        );
                                        lookup(&columns[n + 1], m, t)
                                    })
                                    .collect::<Result<Vec<_>>>()
                            })
                            .collect::<Result<Vec<_>>>()?;
                        Ok(SimplicialMap::new(comps))
                    })
                    .collect::<Result<Vec<_>>>()?;
                hdegen.push(maps);
            } else {
                hdegen.push(vec![]);
            }
        }
        let bi = BiTruncSSet::new(
            columns.iter().map(|c| c.sset.clone()).collect(),
            hface,
            hdegen,
        )?;
        Ok(SimplicialSpace { bi, columns })
    }

    /// For the identity string of length `n` at `c`, certifies `P^n ≅ F(c)^{Δ[n]}`
    /// via `γ ↦ γ_n`, with inverse given by successive last restrictions.
    pub fn identity_string_comparison(
        &self,
        diagram: &SSetDiagram,
        c: usize,
        n: usize,
    ) -> Result<Comparison> {
        const KIND: &str = "identity-path-space";
        let id = diagram.shape.identity(c);
        let s = self.base.id(n, &(c, vec![id; n])).expect("identity string");
        let p = self.path_space(n, s)?;
        let exp = MapSpace::build(
            &diagram.values[c],
            &simplex(n, self.mcap + n),
            self.mcap,
            None,
            &|_, _| true,
        )?;
        let e = &self.exps[c][n];
        let mut forward = Vec::new();
        let mut inverse = Vec::new();
        for m in 0..=self.mcap {
            let mut comp = Vec::new();
            for g in &p.keys[m] {
                match exp.index[m].get(&e.maps[m][g[n]]) {
                    Some(&t) => comp.push(t),
                    None => {
                        return Ok(Comparison::failed(
                            KIND,
                            self.mcap,
                            format!("γ_n of {g:?} is not a map"),
                        ))
                    }
                }
            }
            forward.push(comp);
            let mut comp = Vec::new();
            for vals in &exp.maps[m] {
                let Some(&top) = e.index[m].get(vals) else {
                    return Ok(Comparison::failed(
                        KIND,
                        self.mcap,
                        "exponential simplex missing".into(),
                    ));
                };
                let mut gamma = vec![top];
                for i in (1..=n).rev() {
                    let prev = self.restrict[c][i][i].apply(m, *gamma.last().expect("nonempty"));
                    gamma.push(prev);
                }
                gamma.reverse();
                match p.id(m, &gamma) {
                    Some(t) => comp.push(t),
                    None => {
                        return Ok(Comparison::failed(
                            KIND,
                            self.mcap,
                            format!("restrictions {gamma:?} not a path"),
                        ))
                    }
                }
            }
            inverse.push(comp);
        }
        let (f, g) = (SimplicialMap::new(forward), SimplicialMap::new(inverse));
        let cert = verify_iso_map(&p.sset, &exp.sset, &f, &g);
        let subject = format!("{} n={n}", diagram.shape.object_name(c));
        Ok(Comparison {
            forward: Some(f),
            inverse: Some(g),
            certificate: Certificate {
                kind: KIND.into(),
                ..cert
            }
            .with_subject(&subject),
        })
    }

    /// The path space over `s` as an iterated pullback of exponentials:
    /// `P^i = P^{i-1} ×_{E[σ(i)][i-1]} E[σ(i)][i]`. Returns the simplicial set
    /// and the tuple of coordinates of each simplex.
    pub fn path_space_zigzag(
        &self,
        n: usize,
        s: usize,
    ) -> Result<(TruncSSet, Vec<Vec<Vec<usize>>>)> {
        let key = &self.base.keys[n][s];
        let first = &self.exps[key.0][0].sset;
        let mut current = first.clone();
        let mut coords: Vec<Vec<Vec<usize>>> = (0..=self.mcap)
            .map(|m| (0..first.size(m)).map(|g| vec![g]).collect())
            .collect();
        let mut last = SimplicialMap::identity(first);
        for i in 1..=n {
            let f = key.1[i - 1];
            let c = self.shape_targets[f];
            let left = last.then(&self.post[f][i - 1]);
            let pb = pullback(
                &current,
                &self.exps[c][i].sset,
                &left,
                &self.restrict[c][i][i],
            )?;
            coords = (0..=self.mcap)
                .map(|m| {
                    pb.pairs[m]
                        .iter()
                        .map(|&(a, b)| {
                            let mut t = coords[m][a].clone();
                            t.push(b);
                            t
                        })
                        .collect()
                })
                .collect();
            last = pb.pr_right;
            current = pb.sset;
        }
        Ok((current, coords))
    }

    /// Certifies the tuple description of `P^n` against the iterated pullback.
    pub fn zigzag_comparison(&self, n: usize, s: usize) -> Result<Comparison> {
        const KIND: &str = "path-space-zigzag";
        let p = self.path_space(n, s)?;
        let (z, coords) = self.path_space_zigzag(n, s)?;
        let mut forward = Vec::new();
        let mut inverse = Vec::new();
        for m in 0..=self.mcap {
            let idx: HashMap<&Vec<usize>, usize> =
                coords[m].iter().enumerate().map(|(i, c)| (c, i)).collect();
            let mut comp = Vec::new();
            for g in &p.keys[m] {
                match idx.get(g) {
                    Some(&t) => comp.push(t),
                    None => {
                        return Ok(Comparison::failed(
                            KIND,
                            self.mcap,
                            format!("tuple {g:?} missing from the pullback"),
                        ))
                    }
                }
            }
            forward.push(comp);
            let mut comp = Vec::new();
            for c in &coords[m] {
                match p.id(m, c) {
                    Some(t) => comp.push(t),
                    None => {
                        return Ok(Comparison::failed(
                            KIND,
                            self.mcap,
                            format!("pullback simplex {c:?} is not a tuple"),
                        ))
                    }
                }
            }
            inverse.push(comp);
        }
        let (f, g) = (SimplicialMap::new(forward), SimplicialMap::new(inverse));
        let cert = verify_iso_map(&p.sset, &z, &f, &g);
        Ok(Comparison {
            forward: Some(f),
            inverse: Some(g),
            certificate: Certificate {
                kind: KIND.into(),
                ..cert
            },
        })
    }
}

/// The simplicial space of path spaces with keyed columns.
#[derive(Clone, Debug)]
pub struct SimplicialSpace {
    pub bi: BiTruncSSet,
    pub columns: Vec<Keyed<PathKey>>,
}

/// Builds the simplicial space with horizontal cap `ncap` and vertical cap `mcap`.
pub fn simplicial_space(
    diagram: &SSetDiagram,
    ncap: usize,
    mcap: usize,
) -> Result<(PathSpaces, SimplicialSpace)> {
    let ps = PathSpaces::new(diagram, ncap, mcap)?;
    let space = ps.simplicial_space()?;
    Ok((ps, space))
}

/// Certifies the zeroth row of the simplicial space isomorphic to the
/// relative nerve by the identity on keys.
pub fn zeroth_row_comparison(
    diagram: &SSetDiagram,
    ps: &PathSpaces,
    space: &SimplicialSpace,
) -> Result<Comparison> {
    const KIND: &str = "zeroth-row";
    let rel = lurie_grothendieck(diagram, ps.ncap)?;
    let row = space.bi.row(0);
    let mut forward = Vec::new();
    let mut inverse = Vec::new();
    for n in 0..=ps.ncap {
        let col = &space.columns[n];
        // A vertex of E[c][i] is a map Δ[0] × Δ[i] -> F(c): its value on the top simplex.
        let top_value = |key: &NerveKey, i: usize, g: usize| -> usize {
            let e = &ps.exps[ps.object(key, i)][i];
            let all: Vec<usize> = (0..=i).collect();
            let a = vec![0; i + 1];
            e.eval(
                &diagram.values[ps.object(key, i)],
                0,
                g,
                i,
                &a,
                simplex_keyed(i, ps.ncap + ps.mcap)
                    .id(i, &all)
                    .expect("top"),
            )
        };
        let mut comp = Vec::new();
        for (s, g) in &col.keys[0] {
            let key = &ps.base.keys[n][*s];
            let beta: Vec<usize> = g
                .iter()
                .enumerate()
                .map(|(i, &x)| top_value(key, i, x))
                .collect();
            match rel.keyed.id(n, &(*s, beta.clone())) {
                Some(t) => comp.push(t),
                None => {
                    return Ok(Comparison::failed(
                        KIND,
                        ps.ncap,
                        format!("row simplex with values {beta:?} missing"),
                    ))
                }
            }
        }
        let mut inv = vec![usize::MAX; rel.total().size(n)];
        for (x, &t) in comp.iter().enumerate() {
            inv[t] = x;
        }
        if inv.contains(&usize::MAX) {
            return Ok(Comparison::failed(
                KIND,
                ps.ncap,
                format!("degree {n} not surjective"),
            ));
        }
        forward.push(comp);
        inverse.push(inv);
    }
    let (f, g) = (SimplicialMap::new(forward), SimplicialMap::new(inverse));
    let cert = verify_iso_map(&row, rel.total(), &f, &g);
    Ok(Comparison {
        forward: Some(f),
        inverse: Some(g),
        certificate: Certificate {
            kind: KIND.into(),
            ..cert
        },
    })
}

/// Certifies row `m` of the simplicial space isomorphic to the relative nerve
/// of the cotensor diagram `c ↦ F(c)^{Δ[m]}`, transposing `Δ[m] × Δ[i]`.
/// Needs the diagram's values up to dimension `ncap + m`.
pub fn row_cotensor_comparison(
    diagram: &SSetDiagram,
    ps: &PathSpaces,
    space: &SimplicialSpace,
    m: usize,
) -> Result<Comparison> {
    const KIND: &str = "row-cotensor";
    let ncap = ps.ncap;
    if m > ps.mcap {
        return Err(Error::InvalidParameter(format!(
            "row {m} above vertical cap {}",
            ps.mcap
        )));
    }
    let gc = ncap + m;
    require_cap(diagram, gc, "cotensor diagram")?;
    let cot: Vec<MapSpace> = diagram
        .values
        .iter()
        .map(|y| MapSpace::build(y, &simplex(m, gc), ncap, Some(gc), &|_, _| true))
        .collect::<Result<_>>()?;
    let shape = &diagram.shape;
    let maps = (0..shape.num_morphisms())
        .map(|f| cot[shape.source(f)].postcompose(&cot[shape.target(f)], &diagram.maps[f]))
        .collect::<Result<Vec<_>>>()?;
    let g_diagram = SSetDiagram::new(
        shape.clone(),
        cot.iter().map(|c| c.sset.clone()).collect(),
        maps,
    )?;
    let rel = lurie_grothendieck(&g_diagram, ncap)?;
    let delta_m = simplex_keyed(m, gc);
    let deltas: Vec<Keyed<Vec<usize>>> = (0..=ncap)
        .map(|i| simplex_keyed(i, ncap + ps.mcap))
        .collect();
    let row = space.bi.row(m);
    let mut forward = Vec::new();
    let mut inverse = Vec::new();
    for n in 0..=ncap {
        let col = &space.columns[n];
        let mut comp = Vec::new();
        for (s, gamma) in &col.keys[m] {
            let key = &ps.base.keys[n][*s];
            let mut beta = Vec::with_capacity(n + 1);
            for (i, &g) in gamma.iter().enumerate() {
                let c = ps.object(key, i);
                let target = &cot[c];
                let t = &target.tensors[i];
                let vals: Vec<usize> = t
                    .sset
                    .nd_list()
                    .into_iter()
                    .map(|(k, z)| {
                        let (a, x) = t.split(k, z);
                        let a_list = &target.simplices[i].keys[k][a];
                        let x_list = &delta_m.keys[k][x];
                        let a_id = deltas[i].id(k, a_list).expect("monotone list");
                        ps.exps[c][i].eval(&diagram.values[c], m, g, k, x_list, a_id)
                    })
                    .collect();
                match target.index[i].get(&vals) {
                    Some(&b) => beta.push(b),
                    None => {
                        return Ok(Comparison::failed(
                            KIND,
                            ncap,
                            format!("transpose of {gamma:?} is not a map"),
                        ))
                    }
                }
            }
            match rel.keyed.id(n, &(*s, beta.clone())) {
                Some(x) => comp.push(x),
                None => {
                    return Ok(Comparison::failed(
                        KIND,
                        ncap,
                        format!("transposed tuple {beta:?} missing"),
                    ))
                }
            }
        }
        let mut inv = vec![usize::MAX; rel.total().size(n)];
        for (x, &t) in comp.iter().enumerate() {
            inv[t] = x;
        }
        if inv.contains(&usize::MAX) {
            return Ok(Comparison::failed(
                KIND,
                ncap,
                format!("degree {n} not surjective"),
            ));
        }
        forward.push(comp);
        inverse.push(inv);
    }
    let (f, g) = (SimplicialMap::new(forward), SimplicialMap::new(inverse));
    let cert = verify_iso_map(&row, rel.total(), &f, &g).with_subject(&format!("row {m}"));
    Ok(Comparison {
        forward: Some(f),
        inverse: Some(g),
        certificate: Certificate {
            kind: KIND.into(),
            ..cert
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certcheck::{check_bisimplicial, check_simplicial_identities};
    use crate::fincat::FinCategory;
    use crate::sset::coproduct;

    /// Span a <- c -> b with F(a) = F(b) = Δ[0], F(c) two points.
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

    /// D = [1], F(0) = Δ[0] -> F(1) = Δ[1] hitting vertex 0.
    fn point_into_interval(cap: usize) -> SSetDiagram {
        let pt = simplex(0, cap);
        let d1 = simplex(1, cap);
        let incl = simplex_map(0, 1, &[0], cap);
        let shape = FinCategory::ordinal(1);
        let maps = (0..shape.num_morphisms())
            .map(|f| match (shape.source(f), shape.target(f)) {
                (0, 0) => SimplicialMap::identity(&pt),
                (1, 1) => SimplicialMap::identity(&d1),
                _ => incl.clone(),
            })
            .collect();
        SSetDiagram::checked(shape, vec![pt, d1], maps).unwrap()
    }

    #[test]
    fn span_relative_nerve_is_a_circle() {
        let d = span_points(3);
        let r = lurie_grothendieck(&d, 3).unwrap();
        assert_eq!(r.total().nondegenerate_counts(), vec![4, 4, 0, 0]);
        assert!(check_simplicial_identities(r.total()).passed());
        let direct = relative_nerve_direct(&d, 3).unwrap();
        assert_eq!(direct.total().nondegenerate_counts(), vec![4, 4, 0, 0]);
        assert!(check_simplicial_identities(direct.total()).passed());
        let cmp = compare_relnerve_iso(&d, &r, &direct);
        assert!(cmp.certificate.passed(), "{:?}", cmp.certificate);
    }

    #[test]
    fn constant_point_gives_the_base_nerve() {
        let shape = FinCategory::ordinal(2);
        let d = SSetDiagram::constant(&shape, &simplex(0, 3));
        let r = lurie_grothendieck(&d, 3).unwrap();
        assert_eq!(r.total().sizes(), shape.nerve(3).sset.sizes());
    }

    #[test]
    fn fibers_match_values() {
        let d = span_points(2);
        let r = lurie_grothendieck(&d, 2).unwrap();
        for c in 0..3 {
            let (fiber, cmp) = fiber_comparison(&r, &d, c);
            assert!(cmp.certificate.passed(), "{:?}", cmp.certificate);
            assert_eq!(fiber.sset.size(0), d.values[c].size(0));
        }
    }

    #[test]
    fn path_space_over_the_arrow_into_an_interval() {
        let d = point_into_interval(3);
        let ps = PathSpaces::new(&d, 1, 1).unwrap();
        let s = ps.base.id(1, &(0, d.shape.hom(0, 1))).unwrap();
        let p = ps.path_space(1, s).unwrap();
        assert_eq!(p.sset.size(0), 2);
        assert!(ps.zigzag_comparison(1, s).unwrap().certificate.passed());
    }

    #[test]
    fn simplicial_space_passes_audits() {
        let d = point_into_interval(4);
        let (ps, space) = simplicial_space(&d, 2, 2).unwrap();
        assert!(check_bisimplicial(&space.bi).passed());
        assert!(zeroth_row_comparison(&d, &ps, &space)
            .unwrap()
            .certificate
            .passed());
        for c in 0..2 {
            for n in 0..=2 {
                let cmp = ps.identity_string_comparison(&d, c, n).unwrap();
                assert!(cmp.certificate.passed(), "{:?}", cmp.certificate);
            }
        }
        let cmp = row_cotensor_comparison(&d, &ps, &space, 1).unwrap();
        assert!(cmp.certificate.passed(), "{:?}", cmp.certificate);
    }

    #[test]
    fn structure_maps_satisfy_face_of_degeneracy() {
        let d = point_into_interval(4);
        let ps = PathSpaces::new(&d, 2, 1).unwrap();
        let s = ps.base.id(1, &(0, d.shape.hom(0, 1))).unwrap();
        let (src, _, sj) = ps
            .structure_map(1, s, 0, StructureKind::Degeneracy)
            .unwrap();
        let t = ps.base.sset.degen(1, 0, s);
        let (_, _, dj) = ps.structure_map(2, t, 0, StructureKind::Face).unwrap();
        let round = sj.then(&dj);
        assert_eq!(round, SimplicialMap::identity(&src.sset));
    }
}
