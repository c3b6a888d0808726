use super::surj::monotone_maps;
use super::{build_keyed, Keyed, SimplicialMap, TruncSSet};
use crate::error::{Error, Result};
use crate::fincat::FinCategory;

/// Standard generating objects.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Generator {
    /// The standard simplex Δ[n].
    Simplex(usize),
    /// The boundary ∂Δ[n].
    Boundary(usize),
    /// The horn Λ^k[n].
    Horn(usize, usize),
    /// The nerve J of the walking isomorphism.
    WalkingIso,
}

impl Generator {
    pub fn build(self, cap: usize) -> Result<TruncSSet> {
        match self {
            Generator::Simplex(n) => Ok(simplex(n, cap)),
            Generator::Boundary(n) => Ok(boundary(n, cap)),
            Generator::Horn(n, k) => horn(n, k, cap),
            Generator::WalkingIso => Ok(walking_iso(cap)),
        }
    }
}

/// Subobject of Δ[n] whose m-simplices are the monotone maps `[m] -> [n]`
/// accepted by `keep` (which must be closed under faces and degeneracies).
pub(crate) fn simplex_filtered(
    n: usize,
    cap: usize,
    keep: impl Fn(&[usize]) -> bool,
) -> Keyed<Vec<usize>> {
    build_keyed(
        cap,
        |m| {
            monotone_maps(m, n)
                .into_iter()
                .filter(|a| keep(a))
                .collect()
        },
        |_, i, a| {
            let mut b = a.clone();
            b.remove(i);
            b
        },
        |_, i, a| {
            let mut b = a.clone();
            b.insert(i, a[i]);
            b
        },
    )
    .expect("subobjects of the simplex are closed")
}

pub fn simplex_keyed(n: usize, cap: usize) -> Keyed<Vec<usize>> {
    simplex_filtered(n, cap, |_| true)
}

pub fn simplex(n: usize, cap: usize) -> TruncSSet {
    simplex_keyed(n, cap).sset
}

/// The map `Δ[m] -> Δ[n]` induced by the monotone vertex map `vertices: [m] -> [n]`.
pub fn simplex_map(m: usize, n: usize, vertices: &[usize], cap: usize) -> SimplicialMap {
    let dom = simplex_keyed(m, cap);
    let cod = simplex_keyed(n, cap);
    SimplicialMap::new(
        (0..=cap)
            .map(|k| {
                dom.keys[k]
                    .iter()
                    .map(|a| {
                        let b: Vec<usize> = a.iter().map(|&v| vertices[v]).collect();
                        cod.id(k, &b).expect("monotone image")
                    })
                    .collect()
            })
            .collect(),
    )
}

fn image_misses(a: &[usize], n: usize) -> Vec<usize> {
    (0..=n).filter(|v| !a.contains(v)).collect()
}

pub fn boundary(n: usize, cap: usize) -> TruncSSet {
    simplex_filtered(n, cap, |a| !image_misses(a, n).is_empty()).sset
}

pub fn horn(n: usize, k: usize, cap: usize) -> Result<TruncSSet> {
    if k > n || n == 0 {
        return Err(Error::InvalidParameter(format!(
            "horn index k={k} for n={n}"
        )));
    }
    Ok(simplex_filtered(n, cap, |a| image_misses(a, n).iter().any(|&v| v != k)).sset)
}

/// Nerve of the groupoid with two objects and one isomorphism between them.
pub fn walking_iso(cap: usize) -> TruncSSet {
    FinCategory::walking_iso().nerve(cap).sset
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simplex_counts() {
        assert_eq!(simplex(2, 2).sizes(), &[3, 6, 10]);
        assert_eq!(simplex(2, 2).nondegenerate_counts(), vec![3, 3, 1]);
    }

    #[test]
    fn boundary_and_horn_counts() {
        assert_eq!(boundary(2, 2).nondegenerate_counts(), vec![3, 3, 0]);
        assert_eq!(horn(2, 1, 2).unwrap().nondegenerate_counts(), vec![3, 2, 0]);
        assert_eq!(
            horn(3, 0, 3).unwrap().nondegenerate_counts(),
            vec![4, 6, 3, 0]
        );
        assert!(horn(2, 3, 2).is_err());
    }

    #[test]
    fn walking_iso_has_two_nondegenerate_simplices_per_degree() {
        assert_eq!(walking_iso(3).nondegenerate_counts(), vec![2, 2, 2, 2]);
    }
}
