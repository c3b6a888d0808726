//! Truncated, degreewise-finite simplicial sets and simplicial maps.
//!
//! A [`TruncSSet`] stores dense ids per degree together with explicit face and
//! degeneracy tables. Nondegenerate simplices and Eilenberg–Zilber
//! decompositions are computed once at construction.

mod bisimplicial;
mod build;
mod cells;
mod generate;
mod maps;
mod ops;
pub mod surj;

pub use bisimplicial::BiTruncSSet;
pub use build::{build_keyed, Keyed};
pub use cells::{Cell, Presentation, SimplexRef};
pub use generate::{boundary, horn, simplex, simplex_keyed, simplex_map, walking_iso, Generator};
pub use maps::{
    enumerate_maps, evaluate, expand, exponential, FaceIndex, MapSpace, TensorCell,
    TensorConstraint,
};
pub use ops::{
    coproduct, extend_map_skeletal, extend_skeletal, product, pullback, pushout, sub_sset,
    Coproduct, Product, Pullback, Pushout, SubSSet,
};

use crate::error::{Error, Result};

const NONE: usize = usize::MAX;

/// A simplicial set truncated at dimension `cap`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncSSet {
    cap: usize,
    sizes: Vec<usize>,
    /// `face[n][i][x]` for `1 <= n <= cap`; `face[0]` is empty.
    face: Vec<Vec<Vec<usize>>>,
    /// `degen[n][i][x]` for `n < cap`.
    degen: Vec<Vec<Vec<usize>>>,
    nondeg: Vec<Vec<usize>>,
    nd_pos: Vec<Vec<usize>>,
    nd_offset: Vec<usize>,
}

/// Eilenberg–Zilber normal form `x = s_{j_1} ... s_{j_k} y` with
/// `j_1 > ... > j_k` and `y` nondegenerate of degree `base_degree`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EzForm {
    pub word: Vec<usize>,
    pub base_degree: usize,
    pub base: usize,
}

impl TruncSSet {
    /// Builds a simplicial set from explicit tables. Table shapes and id ranges
    /// are validated; the simplicial identities are not (see
    /// [`crate::certcheck::check_simplicial_identities`]).
    pub fn from_tables(
        cap: usize,
        sizes: Vec<usize>,
        face: Vec<Vec<Vec<usize>>>,
        degen: Vec<Vec<Vec<usize>>>,
    ) -> Result<Self> {
        if sizes.len() != cap + 1 || face.len() != cap + 1 || degen.len() != cap + 1 {
            return Err(Error::Structural("table count does not match cap".into()));
        }
        for n in 0..=cap {
            let expected_faces = if n == 0 { 0 } else { n + 1 };
            if face[n].len() != expected_faces {
                return Err(Error::Structural(format!(
                    "degree {n}: wrong number of face maps"
                )));
            }
            for (i, table) in face[n].iter().enumerate() {
                if table.len() != sizes[n] || table.iter().any(|&y| y >= sizes[n - 1]) {
                    return Err(Error::Structural(format!(
                        "face d_{i} in degree {n} out of range"
                    )));
                }
            }
            let expected_degens = if n < cap { n + 1 } else { 0 };
            if degen[n].len() != expected_degens {
                return Err(Error::Structural(format!(
                    "degree {n}: wrong number of degeneracy maps"
                )));
            }
            for (i, table) in degen[n].iter().enumerate() {
                if table.len() != sizes[n] || table.iter().any(|&y| y >= sizes[n + 1]) {
                    return Err(Error::Structural(format!(
                        "degeneracy s_{i} in degree {n} out of range"
                    )));
                }
            }
        }
        let mut nondeg = Vec::with_capacity(cap + 1);
        let mut nd_pos = Vec::with_capacity(cap + 1);
        let mut nd_offset = Vec::with_capacity(cap + 2);
        let mut offset = 0;
        for n in 0..=cap {
            let mut list = Vec::new();
            let mut pos = vec![NONE; sizes[n]];
            for x in 0..sizes[n] {
                let degenerate = n > 0 && (0..n).any(|i| degen[n - 1][i][face[n][i][x]] == x);
                if !degenerate {
                    pos[x] = list.len();
                    list.push(x);
                }
            }
            nd_offset.push(offset);
            offset += list.len();
            nondeg.push(list);
            nd_pos.push(pos);
        }
        nd_offset.push(offset);
        Ok(TruncSSet {
            cap,
            sizes,
            face,
            degen,
            nondeg,
            nd_pos,
            nd_offset,
        })
    }

    /// The empty simplicial set truncated at `cap`.
    pub fn empty(cap: usize) -> Self {
        let face = (0..=cap)
            .map(|n| if n == 0 { vec![] } else { vec![vec![]; n + 1] })
            .collect();
        let degen = (0..=cap)
            .map(|n| if n < cap { vec![vec![]; n + 1] } else { vec![] })
            .collect();
        Self::from_tables(cap, vec![0; cap + 1], face, degen).expect("empty tables are valid")
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn size(&self, n: usize) -> usize {
        self.sizes[n]
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn face(&self, n: usize, i: usize, x: usize) -> usize {
        self.face[n][i][x]
    }

    pub fn degen(&self, n: usize, i: usize, x: usize) -> usize {
        self.degen[n][i][x]
    }

    pub fn face_table(&self, n: usize, i: usize) -> &[usize] {
        &self.face[n][i]
    }

    pub fn degen_table(&self, n: usize, i: usize) -> &[usize] {
        &self.degen[n][i]
    }

    pub fn is_degenerate(&self, n: usize, x: usize) -> bool {
        self.nd_pos[n][x] == NONE
    }

    pub fn nondegenerate(&self, n: usize) -> &[usize] {
        &self.nondeg[n]
    }

    pub fn nondegenerate_counts(&self) -> Vec<usize> {
        self.nondeg.iter().map(Vec::len).collect()
    }

    /// Position of a nondegenerate simplex in the degree-ordered list of all
    /// nondegenerate simplices.
    pub fn nd_global(&self, n: usize, x: usize) -> Option<usize> {
        let p = self.nd_pos[n][x];
        (p != NONE).then(|| self.nd_offset[n] + p)
    }

    pub fn nd_total(&self) -> usize {
        self.nd_offset[self.cap + 1]
    }

    /// Degree-ordered list of all nondegenerate simplices as `(degree, id)`.
    pub fn nd_list(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.nd_total());
        for n in 0..=self.cap {
            out.extend(self.nondeg[n].iter().map(|&x| (n, x)));
        }
        out
    }

    /// Largest degree carrying a nondegenerate simplex, `None` when empty.
    pub fn dim_nondegenerate(&self) -> Option<usize> {
        (0..=self.cap).rev().find(|&n| !self.nondeg[n].is_empty())
    }

    pub fn ez_decompose(&self, n: usize, x: usize) -> EzForm {
        let mut word = Vec::new();
        let mut deg = n;
        let mut cur = x;
        'outer: while self.nd_pos[deg][cur] == NONE {
            for i in (0..deg).rev() {
                let y = self.face[deg][i][cur];
                if self.degen[deg - 1][i][y] == cur {
                    word.push(i);
                    cur = y;
                    deg -= 1;
                    continue 'outer;
                }
            }
            unreachable!("degenerate flag set without a degeneracy witness");
        }
        EzForm {
            word,
            base_degree: deg,
            base: cur,
        }
    }

    /// Applies `s_{w_0} s_{w_1} ... s_{w_k}` (innermost last) to `x` of degree `n`.
    pub fn apply_word(&self, word: &[usize], n: usize, x: usize) -> usize {
        let mut deg = n;
        let mut cur = x;
        for &j in word.iter().rev() {
            cur = self.degen[deg][j][cur];
            deg += 1;
        }
        cur
    }

    /// Vertex `j` of the `n`-simplex `x`.
    pub fn vertex(&self, n: usize, x: usize, j: usize) -> usize {
        let mut deg = n;
        let mut cur = x;
        // Delete every vertex above j, then every vertex below j.
        while deg > j {
            cur = self.face[deg][deg][cur];
            deg -= 1;
        }
        while deg > 0 {
            cur = self.face[deg][0][cur];
            deg -= 1;
        }
        cur
    }

    /// Restriction of the `n`-simplex `x` to the sorted vertex subset `keep`.
    pub fn restrict_to(&self, n: usize, x: usize, keep: &[usize]) -> usize {
        let mut deg = n;
        let mut cur = x;
        for v in (0..=n).rev() {
            if keep.binary_search(&v).is_err() {
                cur = self.face[deg][v][cur];
                deg -= 1;
            }
        }
        cur
    }

    /// Front `k`-face (vertices `0..=k`) of the `n`-simplex `x`.
    pub fn front(&self, n: usize, x: usize, k: usize) -> usize {
        let mut deg = n;
        let mut cur = x;
        while deg > k {
            cur = self.face[deg][deg][cur];
            deg -= 1;
        }
        cur
    }

    /// `alpha^* x` for a monotone map `alpha: [k] -> [n]` given as its value list.
    pub fn pull_back_along(&self, n: usize, x: usize, alpha: &[usize]) -> usize {
        let mut image: Vec<usize> = alpha.to_vec();
        image.dedup();
        let face = self.restrict_to(n, x, &image);
        let surjection: Vec<usize> = alpha
            .iter()
            .map(|v| image.binary_search(v).expect("value in image"))
            .collect();
        let word = surj::to_word(&surjection);
        self.apply_word(&word, image.len() - 1, face)
    }

    /// Truncation at a lower cap.
    pub fn restrict_cap(&self, cap: usize) -> TruncSSet {
        assert!(cap <= self.cap, "restrict_cap can only lower the cap");
        let face = self.face[..=cap].to_vec();
        let mut degen = self.degen[..=cap].to_vec();
        degen[cap] = vec![];
        TruncSSet::from_tables(cap, self.sizes[..=cap].to_vec(), face, degen)
            .expect("restriction of valid tables")
    }

    /// The `n`-th degree sizes summary `(total, nondegenerate)`.
    pub fn counts(&self) -> Vec<(usize, usize)> {
        (0..=self.cap)
            .map(|n| (self.sizes[n], self.nondeg[n].len()))
            .collect()
    }
}

/// A degreewise function between truncated simplicial sets. The domain and
/// codomain are not stored; checks take them as arguments.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialMap {
    pub components: Vec<Vec<usize>>,
}

impl SimplicialMap {
    pub fn new(components: Vec<Vec<usize>>) -> Self {
        SimplicialMap { components }
    }

    pub fn identity(x: &TruncSSet) -> Self {
        SimplicialMap {
            components: (0..=x.cap()).map(|n| (0..x.size(n)).collect()).collect(),
        }
    }

    pub fn cap(&self) -> usize {
        self.components.len() - 1
    }

    pub fn apply(&self, n: usize, x: usize) -> usize {
        self.components[n][x]
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &SimplicialMap) -> SimplicialMap {
        SimplicialMap {
            components: self
                .components
                .iter()
                .enumerate()
                .map(|(n, c)| c.iter().map(|&y| other.components[n][y]).collect())
                .collect(),
        }
    }

    pub fn restrict_cap(&self, cap: usize) -> SimplicialMap {
        SimplicialMap {
            components: self.components[..=cap].to_vec(),
        }
    }

    /// First failure of the structure-map commutation, if any.
    pub fn check(&self, dom: &TruncSSet, cod: &TruncSSet) -> std::result::Result<(), String> {
        if self.components.len() != dom.cap() + 1 || dom.cap() > cod.cap() {
            return Err(format!(
                "map has {} components, domain cap {}, codomain cap {}",
                self.components.len(),
                dom.cap(),
                cod.cap()
            ));
        }
        for n in 0..=dom.cap() {
            if self.components[n].len() != dom.size(n) {
                return Err(format!("degree {n}: component has wrong length"));
            }
            for x in 0..dom.size(n) {
                let y = self.components[n][x];
                if y >= cod.size(n) {
                    return Err(format!("degree {n}: image of {x} out of range"));
                }
                if n > 0 {
                    for i in 0..=n {
                        let lhs = self.components[n - 1][dom.face(n, i, x)];
                        let rhs = cod.face(n, i, y);
                        if lhs != rhs {
                            return Err(format!(
                                "degree {n}: f(d_{i} x) != d_{i} f(x) at x={x} ({lhs} vs {rhs})"
                            ));
                        }
                    }
                }
                if n < dom.cap() {
                    for i in 0..=n {
                        let lhs = self.components[n + 1][dom.degen(n, i, x)];
                        let rhs = cod.degen(n, i, y);
                        if lhs != rhs {
                            return Err(format!(
                                "degree {n}: f(s_{i} x) != s_{i} f(x) at x={x} ({lhs} vs {rhs})"
                            ));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn is_injective(&self) -> bool {
        self.components.iter().all(|c| {
            let mut seen = c.clone();
            seen.sort_unstable();
            seen.windows(2).all(|w| w[0] != w[1])
        })
    }

    pub fn is_surjective_onto(&self, cod: &TruncSSet) -> bool {
        self.components.iter().enumerate().all(|(n, c)| {
            let mut hit = vec![false; cod.size(n)];
            for &y in c {
                hit[y] = true;
            }
            hit.into_iter().all(|b| b)
        })
    }

    /// The degreewise inverse when the map is a bijection onto `cod`.
    pub fn inverse(&self, cod: &TruncSSet) -> Option<SimplicialMap> {
        if self.components.len() != cod.cap() + 1 {
            return None;
        }
        let mut comps = Vec::with_capacity(self.components.len());
        for (n, c) in self.components.iter().enumerate() {
            if c.len() != cod.size(n) {
                return None;
            }
            let mut inv = vec![usize::MAX; cod.size(n)];
            for (x, &y) in c.iter().enumerate() {
                if y >= inv.len() || inv[y] != usize::MAX {
                    return None;
                }
                inv[y] = x;
            }
            comps.push(inv);
        }
        Some(SimplicialMap { components: comps })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ez_of_iterated_degeneracy_of_a_point() {
        let pt = simplex(0, 2);
        let v = 0;
        let s0 = pt.degen(0, 0, v);
        let s1s0 = pt.degen(1, 1, s0);
        assert_eq!(
            pt.ez_decompose(0, v),
            EzForm {
                word: vec![],
                base_degree: 0,
                base: 0
            }
        );
        assert_eq!(pt.ez_decompose(1, s0).word, vec![0]);
        assert_eq!(
            pt.ez_decompose(2, s1s0),
            EzForm {
                word: vec![1, 0],
                base_degree: 0,
                base: 0
            }
        );
        assert_eq!(pt.apply_word(&[1, 0], 0, v), s1s0);
    }

    #[test]
    fn ez_roundtrip_in_simplex() {
        let d2 = simplex(2, 4);
        for n in 0..=4 {
            for x in 0..d2.size(n) {
                let ez = d2.ez_decompose(n, x);
                assert!(ez.word.windows(2).all(|w| w[0] > w[1]));
                assert!(!d2.is_degenerate(ez.base_degree, ez.base));
                assert_eq!(d2.apply_word(&ez.word, ez.base_degree, ez.base), x);
            }
        }
    }

    #[test]
    fn pull_back_along_recovers_faces_and_degeneracies() {
        let d2 = simplex(2, 3);
        let top = d2.nondegenerate(2)[0];
        assert_eq!(d2.pull_back_along(2, top, &[0, 2]), d2.face(2, 1, top));
        assert_eq!(
            d2.pull_back_along(2, top, &[0, 1, 1, 2]),
            d2.degen(2, 1, top)
        );
        assert_eq!(d2.pull_back_along(2, top, &[0, 1, 2]), top);
    }
}
