//! Simplicial maps out of finite simplicial sets, enumerated on nondegenerate
//! simplices, and the mapping spaces built from them.

use std::collections::HashMap;

use super::generate::simplex_keyed;
use super::ops::{extend_map_skeletal, extend_skeletal, product, Product};
use super::{Keyed, SimplicialMap, TruncSSet};
use crate::error::{Error, Result};

/// Lookup of simplices by their full face vector, per degree.
#[derive(Clone, Debug, Default)]
pub struct FaceIndex {
    by_faces: Vec<HashMap<Vec<usize>, Vec<usize>>>,
    vertices: Vec<usize>,
}

impl FaceIndex {
    pub fn new(y: &TruncSSet, max_degree: usize) -> Self {
        let top = max_degree.min(y.cap());
        let mut by_faces = vec![HashMap::new()];
        for k in 1..=top {
            let mut map: HashMap<Vec<usize>, Vec<usize>> = HashMap::new();
            for s in 0..y.size(k) {
                let fv: Vec<usize> = (0..=k).map(|i| y.face(k, i, s)).collect();
                map.entry(fv).or_default().push(s);
            }
            by_faces.push(map);
        }
        FaceIndex {
            by_faces,
            vertices: (0..y.size(0)).collect(),
        }
    }

    pub fn candidates(&self, k: usize, faces: &[usize]) -> &[usize] {
        if k == 0 {
            return &self.vertices;
        }
        self.by_faces
            .get(k)
            .and_then(|m| m.get(faces))
            .map(Vec::as_slice)
            .unwrap_or(&[])
    }
}

/// Value at the `n`-simplex `x` of the map with nondegenerate values `values`.
pub fn evaluate(dom: &TruncSSet, cod: &TruncSSet, values: &[usize], n: usize, x: usize) -> usize {
    let ez = dom.ez_decompose(n, x);
    let pos = dom
        .nd_global(ez.base_degree, ez.base)
        .expect("EZ base is nondegenerate");
    cod.apply_word(&ez.word, ez.base_degree, values[pos])
}

/// Expands nondegenerate values into a full simplicial map.
pub fn expand(dom: &TruncSSet, cod: &TruncSSet, values: &[usize]) -> SimplicialMap {
    SimplicialMap::new(
        (0..=dom.cap())
            .map(|n| {
                (0..dom.size(n))
                    .map(|x| evaluate(dom, cod, values, n, x))
                    .collect()
            })
            .collect(),
    )
}

/// All simplicial maps `dom -> cod` (given by values on nondegenerate
/// simplices, in the order of [`TruncSSet::nd_list`]) whose value on every
/// nondegenerate simplex passes `allowed(degree, simplex, candidate)`.
/// Stops after `limit` maps when given.
pub fn enumerate_maps(
    dom: &TruncSSet,
    cod: &TruncSSet,
    index: &FaceIndex,
    allowed: &dyn Fn(usize, usize, usize) -> bool,
    limit: Option<usize>,
) -> Result<Vec<Vec<usize>>> {
    if let Some(d) = dom.dim_nondegenerate() {
        if d > cod.cap() {
            return Err(Error::InsufficientCap {
                need: d,
                have: cod.cap(),
                what: "map codomain".into(),
            });
        }
    }
    let nd = dom.nd_list();
    let order = search_order(dom, &nd);
    let mut values = vec![usize::MAX; nd.len()];
    let mut out = Vec::new();
    let mut faces = Vec::new();
    search(
        dom,
        cod,
        index,
        allowed,
        limit,
        &nd,
        &order,
        0,
        &mut values,
        &mut faces,
        &mut out,
    );
    out.sort_unstable();
    Ok(out)
}

/// Positions in `nd` ordered so that every simplex comes right after the last
/// of its faces, so constraints from higher simplices prune the search early.
fn search_order(dom: &TruncSSet, nd: &[(usize, usize)]) -> Vec<usize> {
    let deps: Vec<Vec<usize>> = nd
        .iter()
        .map(|&(k, z)| {
            if k == 0 {
                return vec![];
            }
            let mut d: Vec<usize> = (0..=k)
                .map(|i| {
                    let ez = dom.ez_decompose(k - 1, dom.face(k, i, z));
                    dom.nd_global(ez.base_degree, ez.base)
                        .expect("EZ base is nondegenerate")
                })
                .collect();
            d.sort_unstable();
            d.dedup();
            d
        })
        .collect();
    let mut placed = vec![false; nd.len()];
    let mut order = Vec::with_capacity(nd.len());
    for v in (0..nd.len()).filter(|&p| nd[p].0 == 0) {
        placed[v] = true;
        order.push(v);
        loop {
            let ready: Vec<usize> = (0..nd.len())
                .filter(|&p| !placed[p] && nd[p].0 > 0 && deps[p].iter().all(|&q| placed[q]))
                .collect();
            if ready.is_empty() {
                break;
            }
            for p in ready {
                placed[p] = true;
                order.push(p);
            }
        }
    }
    order
}

#[allow(clippy::too_many_arguments)]
fn search(
    dom: &TruncSSet,
    cod: &TruncSSet,
    index: &FaceIndex,
    allowed: &dyn Fn(usize, usize, usize) -> bool,
    limit: Option<usize>,
    nd: &[(usize, usize)],
    order: &[usize],
    depth: usize,
    values: &mut Vec<usize>,
    faces: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    if limit.is_some_and(|l| out.len() >= l) {
        return;
    }
    if depth == order.len() {
        out.push(values.clone());
        return;
    }
    let p = order[depth];
    let (k, z) = nd[p];
    faces.clear();
    if k > 0 {
        for i in 0..=k {
            let w = dom.face(k, i, z);
            faces.push(evaluate(dom, cod, values, k - 1, w));
        }
    }
    let candidates: Vec<usize> = index.candidates(k, faces).to_vec();
    for y in candidates {
        if allowed(k, z, y) {
            values[p] = y;
            search(
                dom,
                cod,
                index,
                allowed,
                limit,
                nd,
                order,
                depth + 1,
                values,
                faces,
                out,
            );
            if limit.is_some_and(|l| out.len() >= l) {
                return;
            }
        }
    }
    values[p] = usize::MAX;
}

/// A simplex `(a, x)` of the tensor `Δ[n] × X`, as seen by a constraint.
#[derive(Clone, Copy, Debug)]
pub struct TensorCell<'a> {
    pub n: usize,
    pub degree: usize,
    /// Vertex list of the Δ[n]-component (a monotone map `[degree] -> [n]`).
    pub simplex: &'a [usize],
    pub x: usize,
}

/// Mapping space whose `n`-simplices are maps `Δ[n] × X -> Y`, optionally
/// restricted by a per-simplex constraint.
#[derive(Clone, Debug)]
pub struct MapSpace {
    pub sset: TruncSSet,
    /// `maps[n][id]`: values on nondegenerate simplices of `tensors[n]`.
    pub maps: Vec<Vec<Vec<usize>>>,
    pub index: Vec<HashMap<Vec<usize>, usize>>,
    /// X extended skeletally to `tensor_cap`.
    pub source: TruncSSet,
    pub simplices: Vec<Keyed<Vec<usize>>>,
    pub tensors: Vec<Product>,
    pub tensor_cap: usize,
}

/// Constraint on the value of a nondegenerate tensor simplex.
pub type TensorConstraint<'a> = dyn Fn(TensorCell, usize) -> bool + 'a;

impl MapSpace {
    /// Builds the mapping space. Requires `cap_out + dim(X) <= tensor_cap <= cap(Y)`,
    /// where `dim(X)` is the top nondegenerate degree of `x`.
    pub fn build(
        y: &TruncSSet,
        x: &TruncSSet,
        cap_out: usize,
        tensor_cap: Option<usize>,
        constraint: &TensorConstraint,
    ) -> Result<Self> {
        let dim_x = x.dim_nondegenerate().unwrap_or(0);
        let needed = cap_out + dim_x;
        let tc = tensor_cap.unwrap_or(needed);
        if tc < needed || tc > y.cap() {
            return Err(Error::TruncationUnsound(format!(
                "mapping space needs cap_out + dim(X) = {cap_out} + {dim_x} <= tensor cap {tc} <= cap(Y) = {}",
                y.cap()
            )));
        }
        let source = extend_skeletal(x, tc);
        let index_y = FaceIndex::new(y, tc);
        let mut simplices = Vec::with_capacity(cap_out + 2);
        let mut tensors = Vec::with_capacity(cap_out + 2);
        let mut maps = Vec::with_capacity(cap_out + 1);
        let mut index = Vec::with_capacity(cap_out + 1);
        for n in 0..=cap_out {
            let delta = simplex_keyed(n, tc);
            let t = product(&delta.sset, &source)?;
            let allowed = |k: usize, z: usize, v: usize| {
                let (a, s) = t.split(k, z);
                constraint(
                    TensorCell {
                        n,
                        degree: k,
                        simplex: &delta.keys[k][a],
                        x: s,
                    },
                    v,
                )
            };
            let list = enumerate_maps(&t.sset, y, &index_y, &allowed, None)?;
            let idx: HashMap<Vec<usize>, usize> = list
                .iter()
                .enumerate()
                .map(|(i, m)| (m.clone(), i))
                .collect();
            maps.push(list);
            index.push(idx);
            simplices.push(delta);
            tensors.push(t);
        }
        let reindex =
            |from: usize, to: usize, f: &dyn Fn(&[usize]) -> Vec<usize>| -> Vec<(usize, usize)> {
                // For each nondegenerate simplex of tensors[from], the simplex of
                // tensors[to] obtained by applying f to its Δ-component.
                let t = &tensors[from];
                t.sset
                    .nd_list()
                    .into_iter()
                    .map(|(k, z)| {
                        let (a, s) = t.split(k, z);
                        let b = f(&simplices[from].keys[k][a]);
                        let b_id = simplices[to].id(k, &b).expect("monotone image in simplex");
                        (k, tensors[to].pair(k, b_id, s))
                    })
                    .collect()
            };
        let mut face = vec![vec![]];
        for n in 1..=cap_out {
            let mut per_i = Vec::with_capacity(n + 1);
            for i in 0..=n {
                let targets = reindex(n - 1, n, &|a: &[usize]| {
                    a.iter().map(|&v| if v < i { v } else { v + 1 }).collect()
                });
                let mut table = Vec::with_capacity(maps[n].len());
                for phi in &maps[n] {
                    let vals: Vec<usize> = targets
                        .iter()
                        .map(|&(k, z)| evaluate(&tensors[n].sset, y, phi, k, z))
                        .collect();
                    table.push(*index[n - 1].get(&vals).ok_or_else(|| {
                        Error::Structural(
                            "face of a map violates the mapping-space constraint".into(),
                        )
                    })?);
                }
                per_i.push(table);
            }
            face.push(per_i);
        }
        let mut degen = Vec::with_capacity(cap_out + 1);
        for n in 0..=cap_out {
            let mut per_i = Vec::new();
            if n < cap_out {
                for i in 0..=n {
                    let targets = reindex(n + 1, n, &|a: &[usize]| {
                        a.iter().map(|&v| if v <= i { v } else { v - 1 }).collect()
                    });
                    let mut table = Vec::with_capacity(maps[n].len());
                    for phi in &maps[n] {
                        let vals: Vec<usize> = targets
                            .iter()
                            .map(|&(k, z)| evaluate(&tensors[n].sset, y, phi, k, z))
                            .collect();
                        table.push(*index[n + 1].get(&vals).ok_or_else(|| {
                            Error::Structural("degeneracy of a map violates the constraint".into())
                        })?);
                    }
                    per_i.push(table);
                }
            }
            degen.push(per_i);
        }
        let sizes = maps.iter().map(Vec::len).collect();
        let sset = TruncSSet::from_tables(cap_out, sizes, face, degen)?;
        Ok(MapSpace {
            sset,
            maps,
            index,
            source,
            simplices,
            tensors,
            tensor_cap: tc,
        })
    }

    pub fn cap_out(&self) -> usize {
        self.sset.cap()
    }

    /// Value of the `n`-simplex `phi` at the tensor simplex with Δ-vertices
    /// `a` and X-component `s` (degree `k`).
    pub fn eval(
        &self,
        y: &TruncSSet,
        n: usize,
        phi: usize,
        k: usize,
        a: &[usize],
        s: usize,
    ) -> usize {
        let a_id = self.simplices[n].id(k, &a.to_vec()).expect("monotone list");
        let z = self.tensors[n].pair(k, a_id, s);
        evaluate(&self.tensors[n].sset, y, &self.maps[n][phi], k, z)
    }

    /// Map `self -> target` given by precomposition with `h: X' -> X`, where
    /// `target` is a mapping space out of `X'` into the same `y`.
    pub fn precompose(
        &self,
        target: &MapSpace,
        y: &TruncSSet,
        h: &SimplicialMap,
    ) -> Result<SimplicialMap> {
        if target.cap_out() != self.cap_out() {
            return Err(Error::CapMismatch(target.cap_out(), self.cap_out()));
        }
        if target.tensor_cap > self.tensor_cap {
            return Err(Error::TruncationUnsound(format!(
                "precomposition needs source tensor cap {} >= {}",
                self.tensor_cap, target.tensor_cap
            )));
        }
        let h_ext = if h.cap() >= target.tensor_cap {
            h.restrict_cap(target.tensor_cap)
        } else {
            let cod = self.source.restrict_cap(target.tensor_cap);
            extend_map_skeletal(h, &target.source, &cod)
        };
        let mut comps = Vec::with_capacity(self.cap_out() + 1);
        for n in 0..=self.cap_out() {
            let t = &target.tensors[n];
            let targets: Vec<(usize, usize)> = t
                .sset
                .nd_list()
                .into_iter()
                .map(|(k, z)| {
                    let (a, s) = t.split(k, z);
                    let a_keys = &target.simplices[n].keys[k][a];
                    let a_id = self.simplices[n].id(k, a_keys).expect("same simplex");
                    (k, self.tensors[n].pair(k, a_id, h_ext.apply(k, s)))
                })
                .collect();
            let mut comp = Vec::with_capacity(self.maps[n].len());
            for phi in &self.maps[n] {
                let vals: Vec<usize> = targets
                    .iter()
                    .map(|&(k, z)| evaluate(&self.tensors[n].sset, y, phi, k, z))
                    .collect();
                comp.push(*target.index[n].get(&vals).ok_or_else(|| {
                    Error::Structural("precomposite is not a simplex of the target space".into())
                })?);
            }
            comps.push(comp);
        }
        Ok(SimplicialMap::new(comps))
    }

    /// Map `self -> target` given by postcomposition with `g: Y -> Y'`;
    /// `target` must be a mapping space out of the same `X` into `Y'`.
    pub fn postcompose(&self, target: &MapSpace, g: &SimplicialMap) -> Result<SimplicialMap> {
        let mut comps = Vec::with_capacity(self.cap_out() + 1);
        for n in 0..=self.cap_out() {
            let degrees: Vec<usize> = self.tensors[n]
                .sset
                .nd_list()
                .into_iter()
                .map(|(k, _)| k)
                .collect();
            let mut comp = Vec::with_capacity(self.maps[n].len());
            for phi in &self.maps[n] {
                let vals: Vec<usize> = phi
                    .iter()
                    .zip(&degrees)
                    .map(|(&v, &k)| g.apply(k, v))
                    .collect();
                comp.push(*target.index[n].get(&vals).ok_or_else(|| {
                    Error::Structural("postcomposite is not a simplex of the target space".into())
                })?);
            }
            comps.push(comp);
        }
        Ok(SimplicialMap::new(comps))
    }
}

/// The internal mapping object `Y^X` truncated at `cap_out`.
pub fn exponential(y: &TruncSSet, x: &TruncSSet, cap_out: usize) -> Result<MapSpace> {
    MapSpace::build(y, x, cap_out, None, &|_, _| true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certcheck::check_simplicial_identities;
    use crate::sset::simplex;

    #[test]
    fn endomaps_of_the_interval() {
        let d1 = simplex(1, 3);
        let e = exponential(&d1, &simplex(1, 1), 2).unwrap();
        assert_eq!(e.sset.size(0), 3);
        assert!(check_simplicial_identities(&e.sset).passed());
    }

    #[test]
    fn exponential_from_a_point_is_the_target() {
        let d2 = simplex(2, 3);
        let e = exponential(&d2, &simplex(0, 0), 3).unwrap();
        assert_eq!(e.sset.sizes(), d2.sizes());
    }

    #[test]
    fn exponential_into_a_point_is_terminal() {
        let e = exponential(&simplex(0, 4), &simplex(2, 2), 2).unwrap();
        assert_eq!(e.sset.sizes(), &[1, 1, 1]);
    }

    #[test]
    fn validity_bound_is_enforced() {
        let err = exponential(&simplex(1, 2), &simplex(2, 2), 1).unwrap_err();
        assert!(matches!(err, Error::TruncationUnsound(_)));
    }
}
