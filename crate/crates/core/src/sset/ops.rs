use std::collections::HashMap;

use super::surj::{self, surjections};
use super::{build_keyed, SimplicialMap, TruncSSet};
use crate::error::{Error, Result};
use crate::unionfind::DisjointSet;

/// Degreewise cartesian product with its projections.
#[derive(Clone, Debug)]
pub struct Product {
    pub sset: TruncSSet,
    pub proj_left: SimplicialMap,
    pub proj_right: SimplicialMap,
    right_sizes: Vec<usize>,
}

impl Product {
    pub fn pair(&self, n: usize, x: usize, y: usize) -> usize {
        x * self.right_sizes[n] + y
    }

    pub fn split(&self, n: usize, p: usize) -> (usize, usize) {
        (p / self.right_sizes[n], p % self.right_sizes[n])
    }
}

pub fn product(x: &TruncSSet, y: &TruncSSet) -> Result<Product> {
    if x.cap() != y.cap() {
        return Err(Error::CapMismatch(x.cap(), y.cap()));
    }
    let cap = x.cap();
    let right_sizes: Vec<usize> = y.sizes().to_vec();
    let sizes: Vec<usize> = (0..=cap).map(|n| x.size(n) * y.size(n)).collect();
    let pair = |n: usize, a: usize, b: usize| a * right_sizes[n] + b;
    let mut face = vec![vec![]];
    for n in 1..=cap {
        let mut per_i = Vec::with_capacity(n + 1);
        for i in 0..=n {
            let mut t = Vec::with_capacity(sizes[n]);
            for a in 0..x.size(n) {
                let fa = x.face(n, i, a);
                for b in 0..y.size(n) {
                    t.push(pair(n - 1, fa, y.face(n, i, b)));
                }
            }
            per_i.push(t);
        }
        face.push(per_i);
    }
    let mut degen = Vec::with_capacity(cap + 1);
    for n in 0..=cap {
        let mut per_i = Vec::new();
        if n < cap {
            for i in 0..=n {
                let mut t = Vec::with_capacity(sizes[n]);
                for a in 0..x.size(n) {
                    let sa = x.degen(n, i, a);
                    for b in 0..y.size(n) {
                        t.push(pair(n + 1, sa, y.degen(n, i, b)));
                    }
                }
                per_i.push(t);
            }
        }
        degen.push(per_i);
    }
    let sset = TruncSSet::from_tables(cap, sizes.clone(), face, degen)?;
    let proj_left = SimplicialMap::new(
        (0..=cap)
            .map(|n| (0..sizes[n]).map(|p| p / right_sizes[n]).collect())
            .collect(),
    );
    let proj_right = SimplicialMap::new(
        (0..=cap)
            .map(|n| (0..sizes[n]).map(|p| p % right_sizes[n]).collect())
            .collect(),
    );
    Ok(Product {
        sset,
        proj_left,
        proj_right,
        right_sizes,
    })
}

/// Disjoint union with injections.
#[derive(Clone, Debug)]
pub struct Coproduct {
    pub sset: TruncSSet,
    pub injections: Vec<SimplicialMap>,
    /// `offsets[k][n]` is the first id of summand `k` in degree `n`.
    pub offsets: Vec<Vec<usize>>,
}

impl Coproduct {
    /// Summand index and local id of a simplex.
    pub fn locate(&self, n: usize, z: usize) -> (usize, usize) {
        let k = self.offsets.partition_point(|o| o[n] <= z) - 1;
        (k, z - self.offsets[k][n])
    }
}

pub fn coproduct(parts: &[&TruncSSet], cap: usize) -> Result<Coproduct> {
    for p in parts {
        if p.cap() != cap {
            return Err(Error::CapMismatch(p.cap(), cap));
        }
    }
    let mut offsets = Vec::with_capacity(parts.len());
    let mut running = vec![0usize; cap + 1];
    for p in parts {
        offsets.push(running.clone());
        for n in 0..=cap {
            running[n] += p.size(n);
        }
    }
    let sizes = running;
    let mut face = vec![vec![]];
    for n in 1..=cap {
        face.push(
            (0..=n)
                .map(|i| {
                    parts
                        .iter()
                        .enumerate()
                        .flat_map(|(k, p)| {
                            let off = offsets[k][n - 1];
                            p.face_table(n, i).iter().map(move |&y| y + off)
                        })
                        .collect()
                })
                .collect(),
        );
    }
    let mut degen = Vec::with_capacity(cap + 1);
    for n in 0..=cap {
        if n == cap {
            degen.push(vec![]);
            continue;
        }
        degen.push(
            (0..=n)
                .map(|i| {
                    parts
                        .iter()
                        .enumerate()
                        .flat_map(|(k, p)| {
                            let off = offsets[k][n + 1];
                            p.degen_table(n, i).iter().map(move |&y| y + off)
                        })
                        .collect()
                })
                .collect(),
        );
    }
    let sset = TruncSSet::from_tables(cap, sizes, face, degen)?;
    let injections = parts
        .iter()
        .enumerate()
        .map(|(k, p)| {
            SimplicialMap::new(
                (0..=cap)
                    .map(|n| (0..p.size(n)).map(|x| x + offsets[k][n]).collect())
                    .collect(),
            )
        })
        .collect();
    Ok(Coproduct {
        sset,
        injections,
        offsets,
    })
}

/// Degreewise pushout `B ⊔_A C`.
#[derive(Clone, Debug)]
pub struct Pushout {
    pub sset: TruncSSet,
    pub inl: SimplicialMap,
    pub inr: SimplicialMap,
}

pub fn pushout(
    a: &TruncSSet,
    b: &TruncSSet,
    c: &TruncSSet,
    f: &SimplicialMap,
    g: &SimplicialMap,
) -> Result<Pushout> {
    let cap = a.cap();
    if b.cap() != cap || c.cap() != cap {
        return Err(Error::CapMismatch(b.cap().max(c.cap()), cap));
    }
    let mut labels = Vec::with_capacity(cap + 1);
    let mut sizes = Vec::with_capacity(cap + 1);
    let mut reps: Vec<Vec<usize>> = Vec::with_capacity(cap + 1);
    for n in 0..=cap {
        let nb = b.size(n);
        let mut ds = DisjointSet::new(nb + c.size(n));
        for x in 0..a.size(n) {
            ds.union(f.apply(n, x), nb + g.apply(n, x));
        }
        let (lab, count) = ds.classes();
        let mut rep = vec![usize::MAX; count];
        for (z, &l) in lab.iter().enumerate() {
            if rep[l] == usize::MAX {
                rep[l] = z;
            }
        }
        labels.push(lab);
        sizes.push(count);
        reps.push(rep);
    }
    // Structure maps act on the least representative of each class; they are
    // well defined because f and g are simplicial.
    let apply_face = |n: usize, i: usize, z: usize| -> usize {
        let nb = b.size(n);
        let (nb1, w) = (
            b.size(n - 1),
            if z < nb {
                b.face(n, i, z)
            } else {
                c.face(n, i, z - nb)
            },
        );
        labels[n - 1][if z < nb { w } else { nb1 + w }]
    };
    let apply_degen = |n: usize, i: usize, z: usize| -> usize {
        let nb = b.size(n);
        let nb1 = b.size(n + 1);
        if z < nb {
            labels[n + 1][b.degen(n, i, z)]
        } else {
            labels[n + 1][nb1 + c.degen(n, i, z - nb)]
        }
    };
    let mut face = vec![vec![]];
    for n in 1..=cap {
        face.push(
            (0..=n)
                .map(|i| reps[n].iter().map(|&z| apply_face(n, i, z)).collect())
                .collect(),
        );
    }
    let mut degen = Vec::with_capacity(cap + 1);
    for n in 0..=cap {
        if n == cap {
            degen.push(vec![]);
        } else {
            degen.push(
                (0..=n)
                    .map(|i| reps[n].iter().map(|&z| apply_degen(n, i, z)).collect())
                    .collect(),
            );
        }
    }
    let sset = TruncSSet::from_tables(cap, sizes, face, degen)?;
    let inl = SimplicialMap::new((0..=cap).map(|n| labels[n][..b.size(n)].to_vec()).collect());
    let inr = SimplicialMap::new((0..=cap).map(|n| labels[n][b.size(n)..].to_vec()).collect());
    Ok(Pushout { sset, inl, inr })
}

/// Degreewise fiber product `B ×_A C` of `f: B -> A` and `g: C -> A`.
#[derive(Clone, Debug)]
pub struct Pullback {
    pub sset: TruncSSet,
    pub pr_left: SimplicialMap,
    pub pr_right: SimplicialMap,
    pub pairs: Vec<Vec<(usize, usize)>>,
}

pub fn pullback(
    b: &TruncSSet,
    c: &TruncSSet,
    f: &SimplicialMap,
    g: &SimplicialMap,
) -> Result<Pullback> {
    let cap = b.cap();
    if c.cap() != cap {
        return Err(Error::CapMismatch(b.cap(), c.cap()));
    }
    let keyed = build_keyed(
        cap,
        |n| {
            let mut by_image: HashMap<usize, Vec<usize>> = HashMap::new();
            for z in 0..c.size(n) {
                by_image.entry(g.apply(n, z)).or_default().push(z);
            }
            let mut out = Vec::new();
            for y in 0..b.size(n) {
                if let Some(zs) = by_image.get(&f.apply(n, y)) {
                    out.extend(zs.iter().map(|&z| (y, z)));
                }
            }
            out
        },
        |n, i, &(y, z)| (b.face(n, i, y), c.face(n, i, z)),
        |n, i, &(y, z)| (b.degen(n, i, y), c.degen(n, i, z)),
    )?;
    let pr_left = SimplicialMap::new(
        keyed
            .keys
            .iter()
            .map(|ks| ks.iter().map(|k| k.0).collect())
            .collect(),
    );
    let pr_right = SimplicialMap::new(
        keyed
            .keys
            .iter()
            .map(|ks| ks.iter().map(|k| k.1).collect())
            .collect(),
    );
    Ok(Pullback {
        sset: keyed.sset,
        pr_left,
        pr_right,
        pairs: keyed.keys,
    })
}

/// A simplicial subset with its inclusion and the old-to-new id table.
#[derive(Clone, Debug)]
pub struct SubSSet {
    pub sset: TruncSSet,
    pub inclusion: SimplicialMap,
    /// `new_id[n][x]` for members, `None` otherwise.
    pub new_id: Vec<Vec<Option<usize>>>,
}

/// The simplicial subset of simplices accepted by `keep`. Fails if the
/// accepted set is not closed under faces and degeneracies.
pub fn sub_sset(x: &TruncSSet, keep: impl Fn(usize, usize) -> bool) -> Result<SubSSet> {
    let cap = x.cap();
    let mut members = Vec::with_capacity(cap + 1);
    let mut new_id = Vec::with_capacity(cap + 1);
    for n in 0..=cap {
        let mut ids = vec![None; x.size(n)];
        let mut list = Vec::new();
        for s in 0..x.size(n) {
            if keep(n, s) {
                ids[s] = Some(list.len());
                list.push(s);
            }
        }
        members.push(list);
        new_id.push(ids);
    }
    let closed = |n: usize, y: usize, what: &str| -> Result<usize> {
        new_id[n][y].ok_or_else(|| Error::Structural(format!("subset not closed under {what}")))
    };
    let mut face = vec![vec![]];
    for n in 1..=cap {
        let mut per_i = Vec::new();
        for i in 0..=n {
            per_i.push(
                members[n]
                    .iter()
                    .map(|&s| closed(n - 1, x.face(n, i, s), "faces"))
                    .collect::<Result<Vec<_>>>()?,
            );
        }
        face.push(per_i);
    }
    let mut degen = Vec::with_capacity(cap + 1);
    for n in 0..=cap {
        let mut per_i = Vec::new();
        if n < cap {
            for i in 0..=n {
                per_i.push(
                    members[n]
                        .iter()
                        .map(|&s| closed(n + 1, x.degen(n, i, s), "degeneracies"))
                        .collect::<Result<Vec<_>>>()?,
                );
            }
        }
        degen.push(per_i);
    }
    let sizes = members.iter().map(Vec::len).collect();
    let sset = TruncSSet::from_tables(cap, sizes, face, degen)?;
    Ok(SubSSet {
        sset,
        inclusion: SimplicialMap::new(members),
        new_id,
    })
}

type EzKey = (Vec<usize>, usize, usize);

/// Extends `x` to a higher cap by adding only degenerate simplices, i.e. treats
/// `x` as equal to its own skeleton at `x.cap()`. Ids in degrees up to the old
/// cap are preserved.
pub fn extend_skeletal(x: &TruncSSet, new_cap: usize) -> TruncSSet {
    let c = x.cap();
    if new_cap <= c {
        return x.restrict_cap(new_cap);
    }
    let ez_key = |n: usize, s: usize| -> EzKey {
        let ez = x.ez_decompose(n, s);
        (
            surj::from_word(&ez.word, ez.base_degree),
            ez.base_degree,
            ez.base,
        )
    };
    let mut keys: Vec<Vec<EzKey>> = vec![vec![]; new_cap + 1];
    let mut index: Vec<HashMap<EzKey, usize>> = vec![HashMap::new(); new_cap + 1];
    for m in c + 1..=new_cap {
        for k in 0..=c {
            for e in surjections(m, k) {
                for &y in x.nondegenerate(k) {
                    index[m].insert((e.clone(), k, y), keys[m].len());
                    keys[m].push((e.clone(), k, y));
                }
            }
        }
    }
    let realize = |m: usize, key: &EzKey| -> usize {
        if m <= c {
            x.apply_word(&surj::to_word(&key.0), key.1, key.2)
        } else {
            index[m][key]
        }
    };
    let key_face = |key: &EzKey, i: usize| -> EzKey {
        let (e, k, y) = key;
        let mut e2 = e.clone();
        let v = e2.remove(i);
        if e2.contains(&v) {
            return (e2, *k, *y);
        }
        let lowered: Vec<usize> = e2.iter().map(|&t| if t > v { t - 1 } else { t }).collect();
        let z = x.face(*k, v, *y);
        let (eta, l, base) = ez_key(k - 1, z);
        (surj::compose(&eta, &lowered), l, base)
    };
    let key_degen = |key: &EzKey, i: usize| -> EzKey {
        let mut e2 = key.0.clone();
        e2.insert(i, e2[i]);
        (e2, key.1, key.2)
    };
    let mut sizes = x.sizes().to_vec();
    let mut face: Vec<Vec<Vec<usize>>> = (0..=c)
        .map(|n| {
            if n == 0 {
                vec![]
            } else {
                (0..=n).map(|i| x.face_table(n, i).to_vec()).collect()
            }
        })
        .collect();
    let mut degen: Vec<Vec<Vec<usize>>> = (0..c)
        .map(|n| (0..=n).map(|i| x.degen_table(n, i).to_vec()).collect())
        .collect();
    degen.push(
        (0..=c)
            .map(|i| {
                (0..x.size(c))
                    .map(|s| realize(c + 1, &key_degen(&ez_key(c, s), i)))
                    .collect()
            })
            .collect(),
    );
    for m in c + 1..=new_cap {
        sizes.push(keys[m].len());
        face.push(
            (0..=m)
                .map(|i| {
                    keys[m]
                        .iter()
                        .map(|k| realize(m - 1, &key_face(k, i)))
                        .collect()
                })
                .collect(),
        );
        if m < new_cap {
            degen.push(
                (0..=m)
                    .map(|i| {
                        keys[m]
                            .iter()
                            .map(|k| realize(m + 1, &key_degen(k, i)))
                            .collect()
                    })
                    .collect(),
            );
        } else {
            degen.push(vec![]);
        }
    }
    TruncSSet::from_tables(new_cap, sizes, face, degen).expect("skeletal extension tables")
}

/// Extends a map `f: x -> y` to skeletal extensions `xe`, `ye` of its domain
/// and codomain (as produced by [`extend_skeletal`]).
pub fn extend_map_skeletal(f: &SimplicialMap, xe: &TruncSSet, ye: &TruncSSet) -> SimplicialMap {
    let c = f.cap();
    let mut comps = f.components.clone();
    comps.truncate(xe.cap() + 1);
    for m in c + 1..=xe.cap() {
        comps.push(
            (0..xe.size(m))
                .map(|s| {
                    let ez = xe.ez_decompose(m, s);
                    ye.apply_word(&ez.word, ez.base_degree, f.apply(ez.base_degree, ez.base))
                })
                .collect(),
        );
    }
    SimplicialMap::new(comps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certcheck::check_simplicial_identities;
    use crate::sset::{boundary, simplex};

    #[test]
    fn square_has_two_triangles() {
        let d1 = simplex(1, 2);
        let p = product(&d1, &d1).unwrap();
        assert_eq!(p.sset.nondegenerate_counts(), vec![4, 5, 2]);
        assert!(check_simplicial_identities(&p.sset).passed());
    }

    #[test]
    fn gluing_two_arcs_gives_a_circle() {
        let two_points = coproduct(&[&simplex(0, 2), &simplex(0, 2)], 2)
            .unwrap()
            .sset;
        let d1 = simplex(1, 2);
        let endpoints = SimplicialMap::new(
            (0..=2)
                .map(|n| {
                    (0..two_points.size(n))
                        .map(|x| if x == 0 { 0 } else { d1.size(n) - 1 })
                        .collect()
                })
                .collect(),
        );
        endpoints.check(&two_points, &d1).unwrap();
        let po = pushout(&two_points, &d1, &d1, &endpoints, &endpoints).unwrap();
        assert_eq!(po.sset.nondegenerate_counts(), vec![2, 2, 0]);
        assert!(check_simplicial_identities(&po.sset).passed());
    }

    #[test]
    fn skeletal_extension_matches_direct_construction() {
        let small = boundary(2, 2);
        let big = extend_skeletal(&small, 4);
        assert_eq!(big.sizes(), boundary(2, 4).sizes());
        assert_eq!(big.nondegenerate_counts(), vec![3, 3, 0, 0, 0]);
        assert!(check_simplicial_identities(&big).passed());
        let d2 = extend_skeletal(&simplex(2, 2), 4);
        assert_eq!(d2.sizes(), simplex(2, 4).sizes());
        assert!(check_simplicial_identities(&d2).passed());
    }
}
