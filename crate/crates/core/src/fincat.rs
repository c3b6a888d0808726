//! Finite categories with explicit composition tables, functors, nerves and
//! slice categories.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::sset::{build_keyed, Keyed, SimplicialMap, TruncSSet};

/// A finite category. Objects and morphisms are dense indices; names are kept
/// only for reports.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinCategory {
    obj_names: Vec<String>,
    mor_names: Vec<String>,
    src: Vec<usize>,
    tgt: Vec<usize>,
    ident: Vec<usize>,
    /// `comp[g * m + f] = g ∘ f` when `tgt(f) = src(g)`.
    comp: Vec<Option<usize>>,
}

/// Every violated category axiom found by [`FinCategory::validate`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<String>,
}

impl ValidationReport {
    pub fn is_empty(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Key of a nerve simplex: start object and composable morphism string.
pub type NerveKey = (usize, Vec<usize>);

impl FinCategory {
    /// Assembles a category from raw tables without checking the axioms.
    pub fn from_tables(
        obj_names: Vec<String>,
        morphisms: Vec<(String, usize, usize)>,
        identities: Vec<usize>,
        compositions: &[(usize, usize, usize)],
    ) -> Result<Self> {
        let m = morphisms.len();
        let o = obj_names.len();
        if identities.len() != o {
            return Err(Error::NotACategory(
                "one identity per object required".into(),
            ));
        }
        let mut mor_names = Vec::with_capacity(m);
        let mut src = Vec::with_capacity(m);
        let mut tgt = Vec::with_capacity(m);
        for (name, s, t) in morphisms {
            if s >= o || t >= o {
                return Err(Error::NotACategory(format!(
                    "morphism {name} has an unknown endpoint"
                )));
            }
            mor_names.push(name);
            src.push(s);
            tgt.push(t);
        }
        for (c, &i) in identities.iter().enumerate() {
            if i >= m || src[i] != c || tgt[i] != c {
                return Err(Error::NotACategory(format!(
                    "identity of object {c} is not an endomorphism of it"
                )));
            }
        }
        let mut comp = vec![None; m * m];
        for &(g, f, h) in compositions {
            if g >= m || f >= m || h >= m {
                return Err(Error::NotACategory("composition entry out of range".into()));
            }
            if tgt[f] != src[g] {
                return Err(Error::NotACategory(format!(
                    "composite {} ∘ {} is not composable",
                    mor_names[g], mor_names[f]
                )));
            }
            comp[g * m + f] = Some(h);
        }
        Ok(FinCategory {
            obj_names,
            mor_names,
            src,
            tgt,
            ident: identities,
            comp,
        })
    }

    /// Fills in every unset composite with an identity factor by the unit law.
    pub fn with_unit_laws(mut self) -> Self {
        let m = self.num_morphisms();
        for f in 0..m {
            let left = self.ident[self.tgt[f]];
            let right = self.ident[self.src[f]];
            self.comp[left * m + f].get_or_insert(f);
            self.comp[f * m + right].get_or_insert(f);
        }
        self
    }

    /// Checks the axioms; the report lists every violated equation.
    pub fn validate(&self) -> ValidationReport {
        let mut v = Vec::new();
        let m = self.num_morphisms();
        for g in 0..m {
            for f in 0..m {
                let composable = self.tgt[f] == self.src[g];
                match self.comp[g * m + f] {
                    None if composable => v.push(format!(
                        "missing composite {} ∘ {}",
                        self.mor_names[g], self.mor_names[f]
                    )),
                    Some(h) if self.src[h] != self.src[f] || self.tgt[h] != self.tgt[g] => {
                        v.push(format!(
                            "composite {} ∘ {} = {} has wrong endpoints",
                            self.mor_names[g], self.mor_names[f], self.mor_names[h]
                        ))
                    }
                    _ => {}
                }
            }
        }
        for f in 0..m {
            let left = self.ident[self.tgt[f]];
            let right = self.ident[self.src[f]];
            if self.comp[left * m + f] != Some(f) {
                v.push(format!(
                    "unit law fails: id ∘ {} != {}",
                    self.mor_names[f], self.mor_names[f]
                ));
            }
            if self.comp[f * m + right] != Some(f) {
                v.push(format!(
                    "unit law fails: {} ∘ id != {}",
                    self.mor_names[f], self.mor_names[f]
                ));
            }
        }
        for h in 0..m {
            for g in 0..m {
                let Some(hg) = self.comp[h * m + g] else {
                    continue;
                };
                for f in 0..m {
                    let Some(gf) = self.comp[g * m + f] else {
                        continue;
                    };
                    let lhs = self.comp[hg * m + f];
                    let rhs = self.comp[h * m + gf];
                    if lhs.is_some() && rhs.is_some() && lhs != rhs {
                        v.push(format!(
                            "associativity fails on ({}, {}, {})",
                            self.mor_names[h], self.mor_names[g], self.mor_names[f]
                        ));
                    }
                }
            }
        }
        ValidationReport { violations: v }
    }

    pub fn checked(self) -> Result<Self> {
        let report = self.validate();
        if report.is_empty() {
            Ok(self)
        } else {
            Err(Error::NotACategory(report.violations.join("; ")))
        }
    }

    pub fn num_objects(&self) -> usize {
        self.obj_names.len()
    }

    pub fn num_morphisms(&self) -> usize {
        self.mor_names.len()
    }

    pub fn source(&self, f: usize) -> usize {
        self.src[f]
    }

    pub fn target(&self, f: usize) -> usize {
        self.tgt[f]
    }

    pub fn identity(&self, c: usize) -> usize {
        self.ident[c]
    }

    pub fn is_identity(&self, f: usize) -> bool {
        self.ident[self.src[f]] == f
    }

    pub fn object_name(&self, c: usize) -> &str {
        &self.obj_names[c]
    }

    pub fn morphism_name(&self, f: usize) -> &str {
        &self.mor_names[f]
    }

    pub fn object_by_name(&self, name: &str) -> Option<usize> {
        self.obj_names.iter().position(|n| n == name)
    }

    pub fn morphism_by_name(&self, name: &str) -> Option<usize> {
        self.mor_names.iter().position(|n| n == name)
    }

    /// `g ∘ f`. Panics when not composable.
    pub fn compose(&self, g: usize, f: usize) -> usize {
        self.comp[g * self.num_morphisms() + f]
            .unwrap_or_else(|| panic!("{} ∘ {} undefined", self.mor_names[g], self.mor_names[f]))
    }

    pub fn try_compose(&self, g: usize, f: usize) -> Option<usize> {
        self.comp[g * self.num_morphisms() + f]
    }

    pub fn hom(&self, a: usize, b: usize) -> Vec<usize> {
        (0..self.num_morphisms())
            .filter(|&f| self.src[f] == a && self.tgt[f] == b)
            .collect()
    }

    /// Composite `f_n ∘ ... ∘ f_1` of a string, or the identity of `start`.
    pub fn compose_string(&self, start: usize, string: &[usize]) -> usize {
        string
            .iter()
            .fold(self.ident[start], |acc, &f| self.compose(f, acc))
    }

    // ----- standard categories -----

    pub fn terminal() -> Self {
        Self::discrete(1)
    }

    pub fn discrete(n: usize) -> Self {
        let names = (0..n).map(|i| format!("x{i}")).collect();
        let mors = (0..n).map(|i| (format!("id_x{i}"), i, i)).collect();
        Self::from_tables(names, mors, (0..n).collect(), &[])
            .expect("discrete")
            .with_unit_laws()
    }

    /// The poset on `0..n` generated by the given relations `a <= b`.
    pub fn poset(n: usize, relations: &[(usize, usize)]) -> Result<Self> {
        let mut le = vec![vec![false; n]; n];
        for (i, row) in le.iter_mut().enumerate() {
            row[i] = true;
        }
        for &(a, b) in relations {
            le[a][b] = true;
        }
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    if le[i][k] && le[k][j] {
                        le[i][j] = true;
                    }
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                if i != j && le[i][j] && le[j][i] {
                    return Err(Error::InvalidParameter("relations contain a cycle".into()));
                }
            }
        }
        let names = (0..n).map(|i| i.to_string()).collect();
        let mut mors = Vec::new();
        let mut id_of = HashMap::new();
        for i in 0..n {
            for j in 0..n {
                if le[i][j] {
                    id_of.insert((i, j), mors.len());
                    let name = if i == j {
                        format!("id_{i}")
                    } else {
                        format!("{i}<{j}")
                    };
                    mors.push((name, i, j));
                }
            }
        }
        let idents = (0..n).map(|i| id_of[&(i, i)]).collect();
        let mut comps = Vec::new();
        for (&(i, j), &f) in &id_of {
            for (&(j2, k), &g) in &id_of {
                if j == j2 {
                    comps.push((g, f, id_of[&(i, k)]));
                }
            }
        }
        comps.sort_unstable();
        Self::from_tables(names, mors, idents, &comps)
    }

    /// The ordinal `[n] = {0 < 1 < ... < n}`.
    pub fn ordinal(n: usize) -> Self {
        let rel: Vec<(usize, usize)> = (0..n).map(|i| (i, i + 1)).collect();
        Self::poset(n + 1, &rel).expect("ordinal")
    }

    /// Free category on a quiver without directed cycles: morphisms are paths.
    pub fn free(objects: usize, arrows: &[(String, usize, usize)]) -> Result<Self> {
        let names: Vec<String> = (0..objects).map(|i| format!("o{i}")).collect();
        let mut paths: Vec<(usize, Vec<usize>)> = (0..objects).map(|c| (c, vec![])).collect();
        let mut frontier: Vec<usize> = (0..objects).collect();
        let end = |p: &(usize, Vec<usize>)| p.1.last().map_or(p.0, |&a| arrows[a].2);
        let mut steps = 0;
        while !frontier.is_empty() {
            steps += 1;
            if steps > objects + 1 {
                return Err(Error::InvalidParameter(
                    "quiver has a directed cycle".into(),
                ));
            }
            let mut next = Vec::new();
            for &p in &frontier {
                let e = end(&paths[p]);
                for (a, arr) in arrows.iter().enumerate() {
                    if arr.1 == e {
                        let mut q = paths[p].clone();
                        q.1.push(a);
                        next.push(paths.len());
                        paths.push(q);
                    }
                }
            }
            frontier = next;
        }
        let index: HashMap<(usize, Vec<usize>), usize> = paths
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, p)| (p, i))
            .collect();
        let mors = paths
            .iter()
            .map(|p| {
                let name = if p.1.is_empty() {
                    format!("id_{}", names[p.0])
                } else {
                    p.1.iter()
                        .rev()
                        .map(|&a| arrows[a].0.clone())
                        .collect::<Vec<_>>()
                        .join(".")
                };
                (name, p.0, end(p))
            })
            .collect();
        let mut comps = Vec::new();
        for (f, pf) in paths.iter().enumerate() {
            for (g, pg) in paths.iter().enumerate() {
                if pg.0 == end(pf) {
                    let mut cat = pf.1.clone();
                    cat.extend(&pg.1);
                    comps.push((g, f, index[&(pf.0, cat)]));
                }
            }
        }
        Self::from_tables(names, mors, (0..objects).collect(), &comps)
    }

    /// One-object category from a monoid multiplication table `mul[a][b] = a·b`
    /// with unit `0`; composition `g ∘ f = g·f`.
    pub fn monoid(names: &[&str], mul: &[Vec<usize>]) -> Result<Self> {
        let mors = names.iter().map(|n| (n.to_string(), 0, 0)).collect();
        let mut comps = Vec::new();
        for (g, row) in mul.iter().enumerate() {
            for (f, &h) in row.iter().enumerate() {
                comps.push((g, f, h));
            }
        }
        Self::from_tables(vec!["*".into()], mors, vec![0], &comps)?.checked()
    }

    pub fn cyclic_group(n: usize) -> Self {
        let names: Vec<String> = (0..n)
            .map(|i| if i == 0 { "e".into() } else { format!("g{i}") })
            .collect();
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        let mul: Vec<Vec<usize>> = (0..n)
            .map(|a| (0..n).map(|b| (a + b) % n).collect())
            .collect();
        Self::monoid(&refs, &mul).expect("cyclic group")
    }

    /// The category with `n` objects and exactly one morphism between any two.
    pub fn chaotic(n: usize) -> Self {
        let names = (0..n).map(|i| format!("x{i}")).collect();
        let mors = (0..n)
            .flat_map(|i| {
                (0..n).map(move |j| {
                    (
                        if i == j {
                            format!("id_x{i}")
                        } else {
                            format!("x{i}>x{j}")
                        },
                        i,
                        j,
                    )
                })
            })
            .collect();
        let idents = (0..n).map(|i| i * n + i).collect();
        let mut comps = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    comps.push((j * n + k, i * n + j, i * n + k));
                }
            }
        }
        Self::from_tables(names, mors, idents, &comps).expect("chaotic")
    }

    /// The groupoid with two objects and one isomorphism between them.
    pub fn walking_iso() -> Self {
        Self::chaotic(2)
    }

    /// The span `a <- c -> b` (objects `a`, `b`, `c`).
    pub fn span() -> Self {
        let names = vec!["a".into(), "b".into(), "c".into()];
        let mors = vec![
            ("id_a".into(), 0, 0),
            ("id_b".into(), 1, 1),
            ("id_c".into(), 2, 2),
            ("f".into(), 2, 0),
            ("g".into(), 2, 1),
        ];
        Self::from_tables(names, mors, vec![0, 1, 2], &[])
            .expect("span")
            .with_unit_laws()
    }

    // ----- nerves and slices -----

    /// The nerve truncated at `cap`, keyed by (start object, morphism string).
    pub fn nerve(&self, cap: usize) -> Keyed<NerveKey> {
        let strings = |n: usize| -> Vec<NerveKey> {
            let mut out: Vec<NerveKey> = (0..self.num_objects()).map(|c| (c, vec![])).collect();
            for _ in 0..n {
                let mut next = Vec::new();
                for (c, s) in &out {
                    let end = s.last().map_or(*c, |&f| self.tgt[f]);
                    for f in 0..self.num_morphisms() {
                        if self.src[f] == end {
                            let mut t = s.clone();
                            t.push(f);
                            next.push((*c, t));
                        }
                    }
                }
                out = next;
            }
            out
        };
        build_keyed(
            cap,
            strings,
            |n, i, (c, s)| {
                if i == 0 {
                    (self.tgt[s[0]], s[1..].to_vec())
                } else if i == n {
                    (*c, s[..n - 1].to_vec())
                } else {
                    let mut t = s[..i - 1].to_vec();
                    t.push(self.compose(s[i], s[i - 1]));
                    t.extend_from_slice(&s[i + 1..]);
                    (*c, t)
                }
            },
            |_, i, (c, s)| {
                let obj = if i == 0 { *c } else { self.tgt[s[i - 1]] };
                let mut t = s.clone();
                t.insert(i, self.ident[obj]);
                (*c, t)
            },
        )
        .expect("nerve is closed under structure maps")
    }

    /// Object `i` of a nerve simplex.
    pub fn string_object(&self, key: &NerveKey, i: usize) -> usize {
        if i == 0 {
            key.0
        } else {
            self.tgt[key.1[i - 1]]
        }
    }

    /// Composite morphism `σ(i, j)` of a nerve simplex, `i <= j`.
    pub fn string_arrow(&self, key: &NerveKey, i: usize, j: usize) -> usize {
        self.compose_string(self.string_object(key, i), &key.1[i..j])
    }

    /// Supremum of the lengths of strings of non-identity composable
    /// morphisms; `None` when unbounded.
    pub fn nerve_dimension(&self) -> Option<usize> {
        let o = self.num_objects();
        // Longest path in the graph of non-identity morphisms; any cycle
        // (including a non-identity endomorphism) makes it unbounded.
        let edges: Vec<(usize, usize)> = (0..self.num_morphisms())
            .filter(|&f| !self.is_identity(f))
            .map(|f| (self.src[f], self.tgt[f]))
            .collect();
        let mut longest = vec![0usize; o];
        for round in 0..=o {
            let mut changed = false;
            for &(a, b) in &edges {
                if longest[a] + 1 > longest[b] {
                    longest[b] = longest[a] + 1;
                    changed = true;
                }
            }
            if !changed {
                return Some(longest.into_iter().max().unwrap_or(0));
            }
            if round == o {
                break;
            }
        }
        None
    }

    /// The under category `d/C` with its forgetful functor.
    pub fn under_category(&self, d: usize) -> Slice {
        self.slice(d, true)
    }

    /// The over category `C/d` with its forgetful functor.
    pub fn over_category(&self, d: usize) -> Slice {
        self.slice(d, false)
    }

    fn slice(&self, d: usize, under: bool) -> Slice {
        let objects: Vec<usize> = (0..self.num_morphisms())
            .filter(|&u| {
                if under {
                    self.src[u] == d
                } else {
                    self.tgt[u] == d
                }
            })
            .collect();
        let obj_index: HashMap<usize, usize> =
            objects.iter().enumerate().map(|(i, &u)| (u, i)).collect();
        let base_obj = |u: usize| if under { self.tgt[u] } else { self.src[u] };
        let mut mors = Vec::new();
        let mut mor_base = Vec::new();
        let mut mor_index = HashMap::new();
        for (i, &u) in objects.iter().enumerate() {
            for (j, &v) in objects.iter().enumerate() {
                for h in self.hom(base_obj(u), base_obj(v)) {
                    let commutes = if under {
                        self.compose(h, u) == v
                    } else {
                        self.compose(v, h) == u
                    };
                    if commutes {
                        mor_index.insert((i, h), mors.len());
                        mors.push((format!("{}:{}", self.mor_names[h], self.mor_names[u]), i, j));
                        mor_base.push(h);
                    }
                }
            }
        }
        let idents: Vec<usize> = (0..objects.len())
            .map(|i| mor_index[&(i, self.ident[base_obj(objects[i])])])
            .collect();
        let mut comps = Vec::new();
        for (f, &(_, i, _)) in mors.iter().enumerate() {
            for (g, &(_, j, _)) in mors.iter().enumerate() {
                if mors[f].2 == j {
                    comps.push((
                        g,
                        f,
                        mor_index[&(i, self.compose(mor_base[g], mor_base[f]))],
                    ));
                }
            }
        }
        let names = objects.iter().map(|&u| self.mor_names[u].clone()).collect();
        let cat = FinCategory::from_tables(names, mors, idents, &comps).expect("slice tables");
        let forget = CatFunctor {
            obj_map: objects.iter().map(|&u| base_obj(u)).collect(),
            mor_map: mor_base,
        };
        Slice {
            cat,
            forget,
            arrow_of: objects,
            obj_index,
            mor_index,
        }
    }
}

/// An under or over category together with its forgetful functor.
#[derive(Clone, Debug)]
pub struct Slice {
    pub cat: FinCategory,
    pub forget: CatFunctor,
    /// The arrow of the base category that each slice object is.
    pub arrow_of: Vec<usize>,
    pub obj_index: HashMap<usize, usize>,
    /// Slice morphism by (source slice object, base morphism).
    pub mor_index: HashMap<(usize, usize), usize>,
}

/// A functor between finite categories.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatFunctor {
    pub obj_map: Vec<usize>,
    pub mor_map: Vec<usize>,
}

impl CatFunctor {
    pub fn identity(c: &FinCategory) -> Self {
        CatFunctor {
            obj_map: (0..c.num_objects()).collect(),
            mor_map: (0..c.num_morphisms()).collect(),
        }
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &CatFunctor) -> Self {
        CatFunctor {
            obj_map: self.obj_map.iter().map(|&x| other.obj_map[x]).collect(),
            mor_map: self.mor_map.iter().map(|&f| other.mor_map[f]).collect(),
        }
    }

    /// Every violated functor law.
    pub fn validate(&self, dom: &FinCategory, cod: &FinCategory) -> Vec<String> {
        let mut v = Vec::new();
        if self.obj_map.len() != dom.num_objects() || self.mor_map.len() != dom.num_morphisms() {
            v.push("functor tables have the wrong size".into());
            return v;
        }
        if self.obj_map.iter().any(|&x| x >= cod.num_objects())
            || self.mor_map.iter().any(|&f| f >= cod.num_morphisms())
        {
            v.push("functor maps outside its codomain".into());
            return v;
        }
        for f in 0..dom.num_morphisms() {
            let g = self.mor_map[f];
            if cod.source(g) != self.obj_map[dom.source(f)]
                || cod.target(g) != self.obj_map[dom.target(f)]
            {
                v.push(format!(
                    "{} is sent to a morphism with the wrong endpoints",
                    dom.morphism_name(f)
                ));
            }
        }
        for c in 0..dom.num_objects() {
            if self.mor_map[dom.identity(c)] != cod.identity(self.obj_map[c]) {
                v.push(format!(
                    "identity of {} is not preserved",
                    dom.object_name(c)
                ));
            }
        }
        if !v.is_empty() {
            return v;
        }
        for g in 0..dom.num_morphisms() {
            for f in 0..dom.num_morphisms() {
                if let Some(h) = dom.try_compose(g, f) {
                    if cod.try_compose(self.mor_map[g], self.mor_map[f]) != Some(self.mor_map[h]) {
                        v.push(format!(
                            "composite {} ∘ {} is not preserved",
                            dom.morphism_name(g),
                            dom.morphism_name(f)
                        ));
                    }
                }
            }
        }
        v
    }

    /// The induced map of nerves.
    pub fn nerve_map(&self, dom: &Keyed<NerveKey>, cod: &Keyed<NerveKey>) -> SimplicialMap {
        SimplicialMap::new(
            dom.keys
                .iter()
                .enumerate()
                .map(|(n, ks)| {
                    ks.iter()
                        .map(|(c, s)| {
                            let key = (
                                self.obj_map[*c],
                                s.iter().map(|&f| self.mor_map[f]).collect(),
                            );
                            cod.id(n, &key).expect("image string is composable")
                        })
                        .collect()
                })
                .collect(),
        )
    }

    /// All functors `dom -> cod`, by backtracking on morphism images.
    pub fn enumerate(dom: &FinCategory, cod: &FinCategory, limit: usize) -> Vec<CatFunctor> {
        let mut out = Vec::new();
        let o = dom.num_objects();
        let mut obj_map = vec![0; o];
        loop {
            let mut mor_map = vec![usize::MAX; dom.num_morphisms()];
            assign_morphisms(dom, cod, &obj_map, 0, &mut mor_map, &mut out, limit);
            if out.len() >= limit {
                break;
            }
            // next object assignment in lexicographic order
            let mut i = o;
            loop {
                if i == 0 {
                    return out;
                }
                i -= 1;
                obj_map[i] += 1;
                if obj_map[i] < cod.num_objects() {
                    break;
                }
                obj_map[i] = 0;
            }
        }
        out
    }
}

fn assign_morphisms(
    dom: &FinCategory,
    cod: &FinCategory,
    obj_map: &[usize],
    f: usize,
    mor_map: &mut Vec<usize>,
    out: &mut Vec<CatFunctor>,
    limit: usize,
) {
    if out.len() >= limit {
        return;
    }
    if f == dom.num_morphisms() {
        out.push(CatFunctor {
            obj_map: obj_map.to_vec(),
            mor_map: mor_map.clone(),
        });
        return;
    }
    let candidates = if dom.is_identity(f) {
        vec![cod.identity(obj_map[dom.source(f)])]
    } else {
        cod.hom(obj_map[dom.source(f)], obj_map[dom.target(f)])
    };
    'cand: for g in candidates {
        mor_map[f] = g;
        // check every composite whose three morphisms are already assigned
        for a in 0..=f {
            for b in 0..=f {
                if let Some(h) = dom.try_compose(a, b) {
                    if h <= f
                        && (a == f || b == f || h == f)
                        && cod.try_compose(mor_map[a], mor_map[b]) != Some(mor_map[h])
                    {
                        continue 'cand;
                    }
                }
            }
        }
        assign_morphisms(dom, cod, obj_map, f + 1, mor_map, out, limit);
        if out.len() >= limit {
            return;
        }
    }
    mor_map[f] = usize::MAX;
}

/// The nerve of a finite category as a bare simplicial set.
pub fn nerve(c: &FinCategory, cap: usize) -> TruncSSet {
    c.nerve(cap).sset
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certcheck::check_simplicial_identities;

    #[test]
    fn nerve_counts() {
        assert_eq!(nerve(&FinCategory::terminal(), 2).sizes(), &[1, 1, 1]);
        assert_eq!(nerve(&FinCategory::ordinal(1), 2).sizes(), &[2, 3, 4]);
        assert_eq!(
            nerve(&FinCategory::cyclic_group(2), 3).sizes(),
            &[1, 2, 4, 8]
        );
        assert!(check_simplicial_identities(&nerve(&FinCategory::cyclic_group(3), 4)).passed());
    }

    #[test]
    fn injected_unit_violation_is_reported_once() {
        // Two parallel arrows f, g: a -> b with id_b ∘ f set to g.
        let names = vec!["a".into(), "b".into()];
        let mors = vec![
            ("id_a".into(), 0, 0),
            ("id_b".into(), 1, 1),
            ("f".into(), 0, 1),
            ("g".into(), 0, 1),
        ];
        let bad = FinCategory::from_tables(names, mors, vec![0, 1], &[(1, 2, 3)])
            .unwrap()
            .with_unit_laws();
        let report = bad.validate();
        assert_eq!(report.violations.len(), 1, "{:?}", report.violations);
        assert!(report.violations[0].contains("unit law"));
    }

    #[test]
    fn standard_categories_validate() {
        for c in [
            FinCategory::terminal(),
            FinCategory::span(),
            FinCategory::ordinal(3),
            FinCategory::chaotic(3),
            FinCategory::cyclic_group(3),
        ] {
            assert!(c.validate().is_empty());
        }
        let quiver = vec![("a".into(), 0, 1), ("b".into(), 0, 1), ("c".into(), 1, 2)];
        let free = FinCategory::free(3, &quiver).unwrap();
        assert!(free.validate().is_empty());
        assert_eq!(free.hom(0, 2).len(), 2);
    }

    #[test]
    fn under_categories() {
        let one = FinCategory::ordinal(1);
        assert_eq!(one.under_category(0).cat.num_objects(), 2);
        assert_eq!(one.under_category(0).cat.num_morphisms(), 3);
        assert_eq!(one.under_category(1).cat.num_morphisms(), 1);
        assert_eq!(
            FinCategory::terminal()
                .under_category(0)
                .cat
                .num_morphisms(),
            1
        );
        let s = one.under_category(0);
        assert!(s.forget.validate(&s.cat, &one).is_empty());
    }

    #[test]
    fn nerve_dimension_detects_cycles() {
        assert_eq!(FinCategory::ordinal(3).nerve_dimension(), Some(3));
        assert_eq!(FinCategory::cyclic_group(2).nerve_dimension(), None);
        assert_eq!(FinCategory::walking_iso().nerve_dimension(), None);
        assert_eq!(FinCategory::span().nerve_dimension(), Some(1));
    }

    #[test]
    fn functor_enumeration() {
        let one = FinCategory::ordinal(1);
        // Functors [1] -> [1]: the three monotone maps.
        assert_eq!(CatFunctor::enumerate(&one, &one, 100).len(), 3);
        let z2 = FinCategory::cyclic_group(2);
        assert_eq!(CatFunctor::enumerate(&z2, &z2, 100).len(), 2);
    }
}
