//! Diagrams indexed by a finite category: simplicial-set valued, category
//! valued, and marked.

use crate::error::{Error, Result};
use crate::fincat::{CatFunctor, FinCategory, NerveKey};
use crate::sset::{extend_map_skeletal, extend_skeletal, Keyed, SimplicialMap, TruncSSet};
use crate::unionfind::DisjointSet;

/// A functor from a finite category to truncated simplicial sets. All values
/// share one cap; `maps[f]` is the value on morphism `f`.
#[derive(Clone, Debug)]
pub struct SSetDiagram {
    pub shape: FinCategory,
    pub values: Vec<TruncSSet>,
    pub maps: Vec<SimplicialMap>,
}

/// Degreewise colimit of a diagram with its cocone.
#[derive(Clone, Debug)]
pub struct Colimit {
    pub sset: TruncSSet,
    pub injections: Vec<SimplicialMap>,
}

impl SSetDiagram {
    /// Builds a diagram and checks shapes and caps; functoriality is checked
    /// by [`SSetDiagram::validate`].
    pub fn new(
        shape: FinCategory,
        values: Vec<TruncSSet>,
        maps: Vec<SimplicialMap>,
    ) -> Result<Self> {
        if values.len() != shape.num_objects() || maps.len() != shape.num_morphisms() {
            return Err(Error::Structural(
                "diagram size does not match its shape".into(),
            ));
        }
        if let Some(first) = values.first() {
            if let Some(bad) = values.iter().find(|v| v.cap() != first.cap()) {
                return Err(Error::CapMismatch(first.cap(), bad.cap()));
            }
            if let Some(bad) = maps.iter().find(|m| m.cap() != first.cap()) {
                return Err(Error::CapMismatch(first.cap(), bad.cap()));
            }
        }
        Ok(SSetDiagram {
            shape,
            values,
            maps,
        })
    }

    /// [`SSetDiagram::new`] followed by a functoriality check.
    pub fn checked(
        shape: FinCategory,
        values: Vec<TruncSSet>,
        maps: Vec<SimplicialMap>,
    ) -> Result<Self> {
        let d = Self::new(shape, values, maps)?;
        let problems = d.validate();
        if problems.is_empty() {
            Ok(d)
        } else {
            Err(Error::NotFunctorial(problems.join("; ")))
        }
    }

    /// The constant diagram at `x`.
    pub fn constant(shape: &FinCategory, x: &TruncSSet) -> Self {
        SSetDiagram {
            shape: shape.clone(),
            values: vec![x.clone(); shape.num_objects()],
            maps: vec![SimplicialMap::identity(x); shape.num_morphisms()],
        }
    }

    pub fn cap(&self) -> usize {
        self.values.first().map_or(0, TruncSSet::cap)
    }

    /// Every violated condition: maps not simplicial, identities not sent to
    /// identities, composites not preserved.
    pub fn validate(&self) -> Vec<String> {
        let c = &self.shape;
        let mut out = Vec::new();
        for f in 0..c.num_morphisms() {
            let (s, t) = (c.source(f), c.target(f));
            if let Err(e) = self.maps[f].check(&self.values[s], &self.values[t]) {
                out.push(format!("map on {}: {e}", c.morphism_name(f)));
            }
        }
        if !out.is_empty() {
            return out;
        }
        for x in 0..c.num_objects() {
            if self.maps[c.identity(x)] != SimplicialMap::identity(&self.values[x]) {
                out.push(format!(
                    "identity of {} is not sent to the identity",
                    c.object_name(x)
                ));
            }
        }
        for f in 0..c.num_morphisms() {
            for g in 0..c.num_morphisms() {
                if let Some(h) = c.try_compose(g, f) {
                    if self.maps[f].then(&self.maps[g]) != self.maps[h] {
                        out.push(format!(
                            "value of {} differs from the composite of {} and {}",
                            c.morphism_name(h),
                            c.morphism_name(g),
                            c.morphism_name(f)
                        ));
                    }
                }
            }
        }
        out
    }

    /// Transport of a degree-`n` simplex of `F(σ(i))` to `F(σ(j))`.
    pub fn along(&self, sigma: &NerveKey, i: usize, j: usize, n: usize, x: usize) -> usize {
        self.maps[self.shape.string_arrow(sigma, i, j)].apply(n, x)
    }

    /// Truncation at a lower cap.
    pub fn restrict_cap(&self, cap: usize) -> Self {
        SSetDiagram {
            shape: self.shape.clone(),
            values: self.values.iter().map(|v| v.restrict_cap(cap)).collect(),
            maps: self.maps.iter().map(|m| m.restrict_cap(cap)).collect(),
        }
    }

    /// Raises the cap by adding only degenerate simplices, i.e. treats each
    /// value as equal to its own skeleton. Lowers the cap when `cap` is smaller.
    pub fn extend_skeletal(&self, cap: usize) -> Self {
        if cap <= self.cap() {
            return self.restrict_cap(cap);
        }
        let values: Vec<TruncSSet> = self
            .values
            .iter()
            .map(|v| extend_skeletal(v, cap))
            .collect();
        let maps = (0..self.shape.num_morphisms())
            .map(|f| {
                extend_map_skeletal(
                    &self.maps[f],
                    &values[self.shape.source(f)],
                    &values[self.shape.target(f)],
                )
            })
            .collect();
        SSetDiagram {
            shape: self.shape.clone(),
            values,
            maps,
        }
    }

    /// Degreewise colimit: the quotient of the coproduct of the values by
    /// `x ~ F(f)(x)`, with least-index representatives.
    pub fn colimit(&self) -> Colimit {
        let cap = self.cap();
        let objs = self.values.len();
        let mut sizes = Vec::with_capacity(cap + 1);
        let mut class_of: Vec<Vec<usize>> = Vec::with_capacity(cap + 1);
        let mut reps: Vec<Vec<(usize, usize)>> = Vec::with_capacity(cap + 1);
        let mut offsets: Vec<Vec<usize>> = Vec::with_capacity(cap + 1);
        for n in 0..=cap {
            let mut off = Vec::with_capacity(objs + 1);
            let mut total = 0;
            for v in &self.values {
                off.push(total);
                total += v.size(n);
            }
            off.push(total);
            let mut ds = DisjointSet::new(total);
            for f in 0..self.shape.num_morphisms() {
                let (s, t) = (self.shape.source(f), self.shape.target(f));
                for x in 0..self.values[s].size(n) {
                    ds.union(off[s] + x, off[t] + self.maps[f].apply(n, x));
                }
            }
            let (labels, count) = ds.classes();
            let mut rep = vec![(usize::MAX, 0); count];
            for c in 0..objs {
                for x in 0..self.values[c].size(n) {
                    let l = labels[off[c] + x];
                    if rep[l].0 == usize::MAX {
                        rep[l] = (c, x);
                    }
                }
            }
            sizes.push(count);
            class_of.push(labels);
            reps.push(rep);
            offsets.push(off);
        }
        let face = (0..=cap)
            .map(|n| {
                if n == 0 {
                    return vec![];
                }
                (0..=n)
                    .map(|i| {
                        reps[n]
                            .iter()
                            .map(|&(c, x)| {
                                class_of[n - 1][offsets[n - 1][c] + self.values[c].face(n, i, x)]
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        let degen = (0..=cap)
            .map(|n| {
                if n == cap {
                    return vec![];
                }
                (0..=n)
                    .map(|i| {
                        reps[n]
                            .iter()
                            .map(|&(c, x)| {
                                class_of[n + 1][offsets[n + 1][c] + self.values[c].degen(n, i, x)]
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        let sset = TruncSSet::from_tables(cap, sizes, face, degen).expect("colimit tables");
        let injections = (0..objs)
            .map(|c| {
                SimplicialMap::new(
                    (0..=cap)
                        .map(|n| {
                            (0..self.values[c].size(n))
                                .map(|x| class_of[n][offsets[n][c] + x])
                                .collect()
                        })
                        .collect(),
                )
            })
            .collect();
        Colimit { sset, injections }
    }
}

/// A functor from a finite category to finite categories.
#[derive(Clone, Debug)]
pub struct CatDiagram {
    pub shape: FinCategory,
    pub values: Vec<FinCategory>,
    pub functors: Vec<CatFunctor>,
}

impl CatDiagram {
    pub fn new(
        shape: FinCategory,
        values: Vec<FinCategory>,
        functors: Vec<CatFunctor>,
    ) -> Result<Self> {
        if values.len() != shape.num_objects() || functors.len() != shape.num_morphisms() {
            return Err(Error::Structural(
                "diagram size does not match its shape".into(),
            ));
        }
        Ok(CatDiagram {
            shape,
            values,
            functors,
        })
    }

    pub fn checked(
        shape: FinCategory,
        values: Vec<FinCategory>,
        functors: Vec<CatFunctor>,
    ) -> Result<Self> {
        let d = Self::new(shape, values, functors)?;
        let problems = d.validate();
        if problems.is_empty() {
            Ok(d)
        } else {
            Err(Error::NotFunctorial(problems.join("; ")))
        }
    }

    /// The constant diagram at `c`.
    pub fn constant(shape: &FinCategory, c: &FinCategory) -> Self {
        CatDiagram {
            shape: shape.clone(),
            values: vec![c.clone(); shape.num_objects()],
            functors: vec![CatFunctor::identity(c); shape.num_morphisms()],
        }
    }

    /// Every functoriality violation, including violations inside the
    /// individual functors.
    pub fn validate(&self) -> Vec<String> {
        let c = &self.shape;
        let mut out = Vec::new();
        for f in 0..c.num_morphisms() {
            let (s, t) = (c.source(f), c.target(f));
            for p in self.functors[f].validate(&self.values[s], &self.values[t]) {
                out.push(format!("functor on {}: {p}", c.morphism_name(f)));
            }
        }
        if !out.is_empty() {
            return out;
        }
        for x in 0..c.num_objects() {
            if self.functors[c.identity(x)] != CatFunctor::identity(&self.values[x]) {
                out.push(format!(
                    "identity of {} is not sent to the identity functor",
                    c.object_name(x)
                ));
            }
        }
        for f in 0..c.num_morphisms() {
            for g in 0..c.num_morphisms() {
                if let Some(h) = c.try_compose(g, f) {
                    if self.functors[f].then(&self.functors[g]) != self.functors[h] {
                        out.push(format!(
                            "functor on {} differs from the composite of {} and {}",
                            c.morphism_name(h),
                            c.morphism_name(g),
                            c.morphism_name(f)
                        ));
                    }
                }
            }
        }
        out
    }

    /// The nerves of the values, keyed, at `cap`.
    pub fn nerves(&self, cap: usize) -> Vec<Keyed<NerveKey>> {
        self.values.iter().map(|v| v.nerve(cap)).collect()
    }

    /// `N ∘ F` truncated at `cap`.
    pub fn nerve_diagram(&self, cap: usize) -> SSetDiagram {
        let nerves = self.nerves(cap);
        let maps = (0..self.shape.num_morphisms())
            .map(|f| {
                self.functors[f]
                    .nerve_map(&nerves[self.shape.source(f)], &nerves[self.shape.target(f)])
            })
            .collect();
        SSetDiagram {
            shape: self.shape.clone(),
            values: nerves.into_iter().map(|k| k.sset).collect(),
            maps,
        }
    }
}

/// A diagram of marked simplicial sets: `marks[c][e]` tells whether edge `e`
/// of `F(c)` is marked.
#[derive(Clone, Debug)]
pub struct MarkedDiagram {
    pub diagram: SSetDiagram,
    pub marks: Vec<Vec<bool>>,
}

impl MarkedDiagram {
    /// Checks that degenerate edges are marked and that the maps preserve marks.
    pub fn new(diagram: SSetDiagram, marks: Vec<Vec<bool>>) -> Result<Self> {
        if diagram.cap() < 1 {
            return Err(Error::InvalidParameter(
                "marked diagrams need cap >= 1".into(),
            ));
        }
        if marks.len() != diagram.values.len() {
            return Err(Error::Structural(
                "one mark set per object is required".into(),
            ));
        }
        for (c, (v, m)) in diagram.values.iter().zip(&marks).enumerate() {
            if m.len() != v.size(1) {
                return Err(Error::Structural(format!(
                    "mark set of object {c} has the wrong length"
                )));
            }
            if let Some(e) = (0..v.size(1)).find(|&e| v.is_degenerate(1, e) && !m[e]) {
                return Err(Error::Structural(format!(
                    "degenerate edge {e} of object {c} is unmarked"
                )));
            }
        }
        let shape = &diagram.shape;
        for f in 0..shape.num_morphisms() {
            let (s, t) = (shape.source(f), shape.target(f));
            for e in 0..diagram.values[s].size(1) {
                if marks[s][e] && !marks[t][diagram.maps[f].apply(1, e)] {
                    return Err(Error::NotFunctorial(format!(
                        "map on {} sends marked edge {e} to an unmarked edge",
                        shape.morphism_name(f)
                    )));
                }
            }
        }
        Ok(MarkedDiagram { diagram, marks })
    }

    /// Only degenerate edges marked.
    pub fn flat(diagram: SSetDiagram) -> Result<Self> {
        let marks = diagram
            .values
            .iter()
            .map(|v| (0..v.size(1)).map(|e| v.is_degenerate(1, e)).collect())
            .collect();
        Self::new(diagram, marks)
    }

    /// Every edge marked.
    pub fn sharp(diagram: SSetDiagram) -> Result<Self> {
        let marks = diagram
            .values
            .iter()
            .map(|v| vec![true; v.size(1)])
            .collect();
        Self::new(diagram, marks)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sset::{coproduct, simplex};

    fn span_points() -> SSetDiagram {
        let shape = FinCategory::span();
        let pt = simplex(0, 2);
        let two = coproduct(&[&pt, &pt], 2).unwrap().sset;
        let to_pt = SimplicialMap::new((0..=2).map(|n| vec![0; two.size(n)]).collect());
        let mut maps = vec![
            SimplicialMap::identity(&pt),
            SimplicialMap::identity(&pt),
            SimplicialMap::identity(&two),
        ];
        maps.push(to_pt.clone());
        maps.push(to_pt);
        SSetDiagram::checked(shape, vec![pt.clone(), pt, two], maps).unwrap()
    }

    #[test]
    fn span_of_points_has_connected_colimit() {
        let d = span_points();
        let c = d.colimit();
        assert_eq!(c.sset.size(0), 1);
        for (obj, inj) in c.injections.iter().enumerate() {
            assert!(inj.check(&d.values[obj], &c.sset).is_ok());
        }
    }

    #[test]
    fn broken_functoriality_is_reported() {
        let mut d = span_points();
        let two = d.values[2].clone();
        // Replace the identity on the apex by the swap.
        d.maps[2] = SimplicialMap::new((0..=2).map(|n| (0..two.size(n)).rev().collect()).collect());
        assert!(!d.validate().is_empty());
    }

    #[test]
    fn nerve_diagram_of_constant_is_constant() {
        let shape = FinCategory::ordinal(1);
        let d = CatDiagram::checked(
            shape.clone(),
            vec![FinCategory::ordinal(1); 2],
            vec![CatFunctor::identity(&FinCategory::ordinal(1)); 3],
        )
        .unwrap();
        let n = d.nerve_diagram(2);
        assert!(n.validate().is_empty());
        assert_eq!(n.values[0].sizes(), &[2, 3, 4]);
    }
}
