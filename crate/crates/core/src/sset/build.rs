use std::collections::HashMap;
use std::hash::Hash;

use super::TruncSSet;
use crate::error::{Error, Result};

/// A simplicial set whose simplices carry construction keys.
#[derive(Clone, Debug)]
pub struct Keyed<K> {
    pub sset: TruncSSet,
    pub keys: Vec<Vec<K>>,
    pub index: Vec<HashMap<K, usize>>,
}

impl<K: Hash + Eq + Clone> Keyed<K> {
    pub fn id(&self, n: usize, key: &K) -> Option<usize> {
        self.index[n].get(key).copied()
    }

    pub fn key(&self, n: usize, x: usize) -> &K {
        &self.keys[n][x]
    }
}

/// Builds a simplicial set from per-degree key lists and structure maps on
/// keys. Fails if a face or degeneracy lands outside the enumerated keys.
pub fn build_keyed<K, E, Fc, Dg>(
    cap: usize,
    mut enumerate: E,
    face: Fc,
    degen: Dg,
) -> Result<Keyed<K>>
where
    K: Hash + Eq + Clone + std::fmt::Debug,
    E: FnMut(usize) -> Vec<K>,
    Fc: Fn(usize, usize, &K) -> K,
    Dg: Fn(usize, usize, &K) -> K,
{
    let mut keys = Vec::with_capacity(cap + 1);
    let mut index = Vec::with_capacity(cap + 1);
    for n in 0..=cap {
        let list = enumerate(n);
        let mut map = HashMap::with_capacity(list.len());
        for (i, k) in list.iter().enumerate() {
            if map.insert(k.clone(), i).is_some() {
                return Err(Error::Structural(format!(
                    "duplicate key {k:?} in degree {n}"
                )));
            }
        }
        keys.push(list);
        index.push(map);
    }
    let lookup = |index: &Vec<HashMap<K, usize>>, n: usize, k: &K, what: &str| -> Result<usize> {
        index[n]
            .get(k)
            .copied()
            .ok_or_else(|| Error::Structural(format!("{what} lands outside degree {n}: {k:?}")))
    };
    let mut faces = vec![vec![]];
    for n in 1..=cap {
        let mut per_i = Vec::with_capacity(n + 1);
        for i in 0..=n {
            let mut table = Vec::with_capacity(keys[n].len());
            for k in &keys[n] {
                table.push(lookup(&index, n - 1, &face(n, i, k), "face")?);
            }
            per_i.push(table);
        }
        faces.push(per_i);
    }
    let mut degens = Vec::with_capacity(cap + 1);
    for n in 0..=cap {
        let mut per_i = Vec::new();
        if n < cap {
            for i in 0..=n {
                let mut table = Vec::with_capacity(keys[n].len());
                for k in &keys[n] {
                    table.push(lookup(&index, n + 1, &degen(n, i, k), "degeneracy")?);
                }
                per_i.push(table);
            }
        }
        degens.push(per_i);
    }
    let sizes = keys.iter().map(Vec::len).collect();
    let sset = TruncSSet::from_tables(cap, sizes, faces, degens)?;
    Ok(Keyed { sset, keys, index })
}
