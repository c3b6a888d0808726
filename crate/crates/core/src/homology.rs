//! Integral homology of truncated simplicial sets through normalized chains
//! and Smith normal form, plus path components.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::sset::TruncSSet;
use crate::unionfind::DisjointSet;

/// Normalized chain complex: generators are the nondegenerate simplices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainComplex {
    pub ranks: Vec<usize>,
    /// `boundaries[n][g]`: the boundary of generator `g` of degree `n`, as
    /// `(generator of degree n - 1, coefficient)` pairs sorted by generator.
    pub boundaries: Vec<Vec<Vec<(usize, i64)>>>,
}

impl ChainComplex {
    /// Checks `∂ ∘ ∂ = 0` in every degree.
    pub fn is_complex(&self) -> bool {
        (2..self.ranks.len()).all(|n| {
            self.boundaries[n].iter().all(|col| {
                let mut acc: BTreeMap<usize, i64> = BTreeMap::new();
                for &(g, a) in col {
                    for &(h, b) in &self.boundaries[n - 1][g] {
                        *acc.entry(h).or_default() += a * b;
                    }
                }
                acc.values().all(|&v| v == 0)
            })
        })
    }
}

/// Builds the normalized chain complex of `x`; faces that are degenerate are dropped.
pub fn normalized_chains(x: &TruncSSet) -> ChainComplex {
    let ranks = x.nondegenerate_counts();
    let mut boundaries = vec![vec![]; x.cap() + 1];
    boundaries[0] = vec![vec![]; ranks[0]];
    for n in 1..=x.cap() {
        let pos: BTreeMap<usize, usize> = x
            .nondegenerate(n - 1)
            .iter()
            .enumerate()
            .map(|(i, &s)| (s, i))
            .collect();
        boundaries[n] = x
            .nondegenerate(n)
            .iter()
            .map(|&s| {
                let mut acc: BTreeMap<usize, i64> = BTreeMap::new();
                for i in 0..=n {
                    if let Some(&g) = pos.get(&x.face(n, i, s)) {
                        *acc.entry(g).or_default() += if i % 2 == 0 { 1 } else { -1 };
                    }
                }
                acc.into_iter().filter(|&(_, v)| v != 0).collect()
            })
            .collect();
    }
    ChainComplex { ranks, boundaries }
}

/// `H_k ≅ Z^betti ⊕ ⊕ Z/t` for the listed torsion coefficients `t > 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyGroup {
    pub degree: usize,
    pub betti: usize,
    pub torsion: Vec<BigInt>,
}

impl HomologyGroup {
    /// Homology of a point in degree `k`.
    pub fn point(degree: usize) -> Self {
        HomologyGroup {
            degree,
            betti: usize::from(degree == 0),
            torsion: vec![],
        }
    }

    pub fn same_group(&self, other: &HomologyGroup) -> bool {
        self.betti == other.betti && self.torsion == other.torsion
    }
}

impl fmt::Display for HomologyGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let t: Vec<String> = self.torsion.iter().map(ToString::to_string).collect();
        write!(
            f,
            "homology degree={} betti={} torsion=[{}]",
            self.degree,
            self.betti,
            t.join(",")
        )
    }
}

/// Nontrivial invariant factors (absolute values) of a sparse integer matrix
/// given by rows; the number of factors is the rank.
fn invariant_factors(rows: &[Vec<(usize, i64)>], ncols: usize) -> Vec<BigInt> {
    match unit_elimination(rows, ncols) {
        Some((units, rest)) => {
            let mut out = vec![BigInt::from(1); units];
            out.extend(smith_diagonal(rest));
            out
        }
        None => {
            let dense = rows
                .iter()
                .map(|r| {
                    let mut row = vec![BigInt::zero(); ncols];
                    for &(c, v) in r {
                        row[c] = BigInt::from(v);
                    }
                    row
                })
                .collect();
            smith_diagonal(dense)
        }
    }
}

/// Repeatedly pivots on entries equal to ±1 (checked `i128` arithmetic).
/// Returns the number of pivots and the dense remainder, or `None` on overflow.
fn unit_elimination(
    rows_in: &[Vec<(usize, i64)>],
    ncols: usize,
) -> Option<(usize, Vec<Vec<BigInt>>)> {
    let mut rows: Vec<BTreeMap<usize, i128>> = rows_in
        .iter()
        .map(|r| r.iter().map(|&(c, v)| (c, i128::from(v))).collect())
        .collect();
    let mut cols: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); ncols];
    for (r, row) in rows.iter().enumerate() {
        for &c in row.keys() {
            cols[c].insert(r);
        }
    }
    let mut units = 0;
    loop {
        let mut pivoted = false;
        for r in 0..rows.len() {
            loop {
                let Some(c) = rows[r]
                    .iter()
                    .filter(|(_, v)| v.abs() == 1)
                    .min_by_key(|(c, _)| cols[**c].len())
                    .map(|(c, _)| *c)
                else {
                    break;
                };
                let p = rows[r][&c];
                let pivot_row: Vec<(usize, i128)> = rows[r].iter().map(|(&j, &v)| (j, v)).collect();
                let others: Vec<usize> = cols[c].iter().copied().filter(|&i| i != r).collect();
                for i in others {
                    let factor = rows[i][&c].checked_mul(p)?;
                    for &(j, v) in &pivot_row {
                        let cur = rows[i].get(&j).copied().unwrap_or(0);
                        let new = cur.checked_sub(factor.checked_mul(v)?)?;
                        if new == 0 {
                            rows[i].remove(&j);
                            cols[j].remove(&i);
                        } else {
                            rows[i].insert(j, new);
                            cols[j].insert(i);
                        }
                    }
                }
                for &(j, _) in &pivot_row {
                    cols[j].remove(&r);
                }
                rows[r].clear();
                units += 1;
                pivoted = true;
            }
        }
        if !pivoted {
            break;
        }
    }
    let live_cols: Vec<usize> = (0..ncols).filter(|&c| !cols[c].is_empty()).collect();
    let col_pos: BTreeMap<usize, usize> =
        live_cols.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    let rest = rows
        .iter()
        .filter(|r| !r.is_empty())
        .map(|r| {
            let mut row = vec![BigInt::zero(); live_cols.len()];
            for (&c, &v) in r {
                row[col_pos[&c]] = BigInt::from(v);
            }
            row
        })
        .collect();
    Some((units, rest))
}

/// Diagonal of the Smith normal form of a dense matrix (nonzero entries only).
fn smith_diagonal(mut a: Vec<Vec<BigInt>>) -> Vec<BigInt> {
    let m = a.len();
    let n = a.first().map_or(0, Vec::len);
    let mut out = Vec::new();
    let mut t = 0;
    while t < m.min(n) {
        let Some((pi, pj)) = min_entry(&a, t) else {
            break;
        };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            // Reduce column t and row t by the pivot.
            let mut clean = true;
            for i in t + 1..m {
                if !a[i][t].is_zero() {
                    let q = a[i][t].div_floor(&a[t][t]);
                    for j in t..n {
                        let d = &q * &a[t][j];
                        a[i][j] -= d;
                    }
                    clean &= a[i][t].is_zero();
                }
            }
            for j in t + 1..n {
                if !a[t][j].is_zero() {
                    let q = a[t][j].div_floor(&a[t][t]);
                    for i in t..m {
                        let d = &q * &a[i][t];
                        a[i][j] -= d;
                    }
                    clean &= a[t][j].is_zero();
                }
            }
            if !clean {
                let (pi, pj) = min_in_cross(&a, t);
                a.swap(t, pi);
                for row in a.iter_mut() {
                    row.swap(t, pj);
                }
                continue;
            }
            // The pivot must divide every remaining entry.
            let bad = (t + 1..m).find(|&i| (t + 1..n).any(|j| !(&a[i][j] % &a[t][t]).is_zero()));
            match bad {
                Some(i) => {
                    for j in t..n {
                        let v = a[i][j].clone();
                        a[t][j] += v;
                    }
                }
                None => break,
            }
        }
        out.push(a[t][t].abs());
        t += 1;
    }
    out
}

fn min_entry(a: &[Vec<BigInt>], t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for (i, row) in a.iter().enumerate().skip(t) {
        for (j, v) in row.iter().enumerate().skip(t) {
            if !v.is_zero() && best.is_none_or(|(bi, bj)| v.abs() < a[bi][bj].abs()) {
                best = Some((i, j));
            }
        }
    }
    best
}

fn min_in_cross(a: &[Vec<BigInt>], t: usize) -> (usize, usize) {
    let mut best = (t, t);
    let better = |v: &BigInt, b: &BigInt| !v.is_zero() && (b.is_zero() || v.abs() < b.abs());
    for i in t..a.len() {
        if better(&a[i][t], &a[best.0][best.1]) {
            best = (i, t);
        }
    }
    for j in t..a[t].len() {
        if better(&a[t][j], &a[best.0][best.1]) {
            best = (t, j);
        }
    }
    best
}

/// `H_0 .. H_max_degree` of `x`. Degrees above `cap - 1` are refused because
/// they would need boundaries from beyond the truncation.
pub fn homology_table(x: &TruncSSet, max_degree: usize) -> Result<Vec<HomologyGroup>> {
    if max_degree + 1 > x.cap() {
        return Err(Error::InsufficientCap {
            need: max_degree + 1,
            have: x.cap(),
            what: "homology".into(),
        });
    }
    let cc = normalized_chains(x);
    let factors: Vec<Vec<BigInt>> = (0..=max_degree + 1)
        .map(|n| {
            if n == 0 {
                vec![]
            } else {
                invariant_factors(&cc.boundaries[n], cc.ranks[n - 1])
            }
        })
        .collect();
    Ok((0..=max_degree)
        .map(|k| {
            let outgoing = factors[k].len();
            let incoming = &factors[k + 1];
            HomologyGroup {
                degree: k,
                betti: cc.ranks[k] - outgoing - incoming.len(),
                torsion: incoming
                    .iter()
                    .filter(|d| **d > BigInt::from(1))
                    .cloned()
                    .collect(),
            }
        })
        .collect())
}

/// `H_k(x)` for `k <= cap - 1`.
pub fn homology_groups(x: &TruncSSet, k: usize) -> Result<HomologyGroup> {
    Ok(homology_table(x, k)?.pop().expect("nonempty table"))
}

/// Path components: a dense component label per vertex and the count.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Components {
    pub labels: Vec<usize>,
    pub count: usize,
}

pub fn pi0(x: &TruncSSet) -> Components {
    let mut ds = DisjointSet::new(x.size(0));
    if x.cap() >= 1 {
        for e in 0..x.size(1) {
            ds.union(x.face(1, 0, e), x.face(1, 1, e));
        }
    }
    let (labels, count) = ds.classes();
    Components { labels, count }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::FinCategory;
    use crate::sset::{boundary, coproduct, simplex, walking_iso};

    #[test]
    fn simplices_have_point_homology() {
        for n in 0..4 {
            let d = simplex(n, 4);
            let h = homology_table(&d, 3).unwrap();
            assert!(
                h.iter()
                    .all(|g| g.same_group(&HomologyGroup::point(g.degree))),
                "{h:?}"
            );
        }
    }

    #[test]
    fn boundary_of_tetrahedron_is_a_sphere() {
        let s = boundary(3, 3);
        let cc = normalized_chains(&s);
        assert!(cc.is_complex());
        let h = homology_table(&s, 2).unwrap();
        assert_eq!(h.iter().map(|g| g.betti).collect::<Vec<_>>(), vec![1, 0, 1]);
    }

    #[test]
    fn boundary_triangle_ranks() {
        let cc = normalized_chains(&boundary(2, 2));
        assert_eq!(cc.ranks, vec![3, 3, 0]);
        assert!(cc.is_complex());
    }

    #[test]
    fn projective_plane_torsion_from_z2_nerve() {
        // BZ/2 has H_1 = Z/2 and H_2 = 0.
        let n = FinCategory::cyclic_group(2).nerve(4).sset;
        let h = homology_table(&n, 3).unwrap();
        assert_eq!(h[1].betti, 0);
        assert_eq!(h[1].torsion, vec![BigInt::from(2)]);
        assert_eq!(h[2].betti, 0);
        assert!(h[2].torsion.is_empty());
        assert_eq!(h[3].torsion, vec![BigInt::from(2)]);
    }

    #[test]
    fn trusted_range_is_enforced() {
        assert!(homology_groups(&simplex(1, 2), 2).is_err());
    }

    #[test]
    fn components() {
        let pt = simplex(0, 1);
        assert_eq!(pi0(&coproduct(&[&pt, &pt], 1).unwrap().sset).count, 2);
        assert_eq!(pi0(&walking_iso(3)).count, 1);
        assert_eq!(pi0(&simplex(3, 3)).count, 1);
    }

    #[test]
    fn dense_smith_form() {
        let m = vec![
            vec![BigInt::from(2), BigInt::from(4), BigInt::from(4)],
            vec![BigInt::from(-6), BigInt::from(6), BigInt::from(12)],
            vec![BigInt::from(10), BigInt::from(-4), BigInt::from(-16)],
        ];
        assert_eq!(
            smith_diagonal(m),
            vec![BigInt::from(2), BigInt::from(6), BigInt::from(12)]
        );
    }
}
