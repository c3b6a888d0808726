//! The classical Grothendieck construction of a diagram of finite categories,
//! obtained from the mapping path categories `P¹_{F(f)}` and the horizontal
//! composition of the double category they form.

use std::collections::HashMap;

use crate::certcheck::{
    cocartesian_edge, cocartesian_fibration, verify_iso_map, verify_over, Certificate,
};
use crate::diagram::CatDiagram;
use crate::error::Result;
use crate::fincat::{CatFunctor, FinCategory};
use crate::relnerve::{lurie_grothendieck, Comparison};
use crate::sset::SimplicialMap;

/// Builds a category from explicit object and morphism lists and a partial
/// composition function defined on composable pairs.
fn assemble(
    obj_names: Vec<String>,
    morphisms: Vec<(String, usize, usize)>,
    identities: Vec<usize>,
    compose: impl Fn(usize, usize) -> Option<usize>,
) -> FinCategory {
    let mut table = Vec::new();
    for f in 0..morphisms.len() {
        for g in 0..morphisms.len() {
            if morphisms[f].2 == morphisms[g].1 {
                if let Some(h) = compose(g, f) {
                    table.push((g, f, h));
                }
            }
        }
    }
    FinCategory::from_tables(obj_names, morphisms, identities, &table)
        .expect("assembled tables are in range")
}

/// `P¹_{F(f)}`: objects `(β₀, β₁)` with `β₀ ∈ F(s f)` and `β₁: F(f)(β₀) -> y` in
/// `F(t f)`; morphisms `(f₀, f₁)` with `γ₁ ∘ F(f)(f₀) = f₁ ∘ β₁`.
#[derive(Clone, Debug)]
pub struct MappingPathCategory {
    pub arrow: usize,
    pub cat: FinCategory,
    pub objects: Vec<(usize, usize)>,
    pub morphisms: Vec<(usize, usize)>,
    pub object_index: HashMap<(usize, usize), usize>,
    /// Morphism id by (source object, target object, f₀, f₁).
    pub morphism_index: HashMap<(usize, usize, usize, usize), usize>,
    /// `(β₀, β₁) ↦ β₀`.
    pub source: CatFunctor,
    /// `(β₀, β₁) ↦ target(β₁)`.
    pub target: CatFunctor,
}

pub fn mapping_path_category(diagram: &CatDiagram, f: usize) -> MappingPathCategory {
    let shape = &diagram.shape;
    let (a, b) = (
        &diagram.values[shape.source(f)],
        &diagram.values[shape.target(f)],
    );
    let ff = &diagram.functors[f];
    let mut objects = Vec::new();
    for x in 0..a.num_objects() {
        for beta1 in 0..b.num_morphisms() {
            if b.source(beta1) == ff.obj_map[x] {
                objects.push((x, beta1));
            }
        }
    }
    let object_index: HashMap<_, _> = objects.iter().enumerate().map(|(i, &o)| (o, i)).collect();
    let mut morphisms = Vec::new();
    let mut ends = Vec::new();
    let mut morphism_index = HashMap::new();
    for (i, &(x, beta1)) in objects.iter().enumerate() {
        for (j, &(y, gamma1)) in objects.iter().enumerate() {
            for f0 in a.hom(x, y) {
                for f1 in b.hom(b.target(beta1), b.target(gamma1)) {
                    if b.compose(gamma1, ff.mor_map[f0]) == b.compose(f1, beta1) {
                        morphism_index.insert((i, j, f0, f1), morphisms.len());
                        morphisms.push((f0, f1));
                        ends.push((i, j));
                    }
                }
            }
        }
    }
    let identities: Vec<usize> = objects
        .iter()
        .enumerate()
        .map(|(i, &(x, beta1))| morphism_index[&(i, i, a.identity(x), b.identity(b.target(beta1)))])
        .collect();
    let names = objects
        .iter()
        .map(|&(x, b1)| format!("({},{})", a.object_name(x), b.morphism_name(b1)))
        .collect();
    let mors = morphisms
        .iter()
        .zip(&ends)
        .map(|(&(f0, f1), &(i, j))| {
            (
                format!("({},{})", a.morphism_name(f0), b.morphism_name(f1)),
                i,
                j,
            )
        })
        .collect();
    let compose = |g: usize, h: usize| {
        let ((g0, g1), (h0, h1)) = (morphisms[g], morphisms[h]);
        morphism_index
            .get(&(ends[h].0, ends[g].1, a.compose(g0, h0), b.compose(g1, h1)))
            .copied()
    };
    let cat = assemble(names, mors, identities, compose);
    let source = CatFunctor {
        obj_map: objects.iter().map(|o| o.0).collect(),
        mor_map: morphisms.iter().map(|m| m.0).collect(),
    };
    let target = CatFunctor {
        obj_map: objects.iter().map(|o| b.target(o.1)).collect(),
        mor_map: morphisms.iter().map(|m| m.1).collect(),
    };
    MappingPathCategory {
        arrow: f,
        cat,
        objects,
        morphisms,
        object_index,
        morphism_index,
        source,
        target,
    }
}

/// Disjoint union of categories with the offsets of each summand.
fn coproduct_categories(parts: &[&FinCategory]) -> (FinCategory, Vec<usize>, Vec<usize>) {
    let mut obj_off = Vec::new();
    let mut mor_off = Vec::new();
    let (mut names, mut mors, mut idents, mut table) =
        (Vec::new(), Vec::new(), Vec::new(), Vec::new());
    for (p, c) in parts.iter().enumerate() {
        let (oo, mo) = (names.len(), mors.len());
        obj_off.push(oo);
        mor_off.push(mo);
        for x in 0..c.num_objects() {
            names.push(format!("{p}.{}", c.object_name(x)));
            idents.push(mo + c.identity(x));
        }
        for f in 0..c.num_morphisms() {
            mors.push((
                format!("{p}.{}", c.morphism_name(f)),
                oo + c.source(f),
                oo + c.target(f),
            ));
            for g in 0..c.num_morphisms() {
                if let Some(h) = c.try_compose(g, f) {
                    table.push((mo + g, mo + f, mo + h));
                }
            }
        }
    }
    let cat = FinCategory::from_tables(names, mors, idents, &table).expect("coproduct tables");
    (cat, obj_off, mor_off)
}

/// The category object in categories formed by `⊔_c F(c)` and `⊔_f P¹_{F(f)}`.
#[derive(Clone, Debug)]
pub struct DoubleCategoryData {
    pub objects: FinCategory,
    pub obj_offset: Vec<usize>,
    pub obj_mor_offset: Vec<usize>,
    pub paths: Vec<MappingPathCategory>,
    pub morphisms: FinCategory,
    pub path_obj_offset: Vec<usize>,
    pub path_mor_offset: Vec<usize>,
    pub s: CatFunctor,
    pub t: CatFunctor,
    pub u: CatFunctor,
    /// Summand (arrow of `D`) of each object and morphism of the morphism category.
    obj_arrow: Vec<usize>,
    mor_arrow: Vec<usize>,
    shape: FinCategory,
    functors: Vec<CatFunctor>,
    values: Vec<FinCategory>,
}

pub fn double_category(diagram: &CatDiagram) -> DoubleCategoryData {
    let shape = &diagram.shape;
    let values: Vec<&FinCategory> = diagram.values.iter().collect();
    let (objects, obj_offset, obj_mor_offset) = coproduct_categories(&values);
    let paths: Vec<MappingPathCategory> = (0..shape.num_morphisms())
        .map(|f| mapping_path_category(diagram, f))
        .collect();
    let path_cats: Vec<&FinCategory> = paths.iter().map(|p| &p.cat).collect();
    let (morphisms, path_obj_offset, path_mor_offset) = coproduct_categories(&path_cats);
    let mut obj_arrow = Vec::new();
    let mut mor_arrow = Vec::new();
    let (mut s, mut t) = (
        CatFunctor {
            obj_map: vec![],
            mor_map: vec![],
        },
        CatFunctor {
            obj_map: vec![],
            mor_map: vec![],
        },
    );
    for (f, p) in paths.iter().enumerate() {
        let (a, b) = (shape.source(f), shape.target(f));
        obj_arrow.extend(std::iter::repeat_n(f, p.objects.len()));
        mor_arrow.extend(std::iter::repeat_n(f, p.morphisms.len()));
        s.obj_map
            .extend(p.source.obj_map.iter().map(|&x| obj_offset[a] + x));
        s.mor_map
            .extend(p.source.mor_map.iter().map(|&x| obj_mor_offset[a] + x));
        t.obj_map
            .extend(p.target.obj_map.iter().map(|&x| obj_offset[b] + x));
        t.mor_map
            .extend(p.target.mor_map.iter().map(|&x| obj_mor_offset[b] + x));
    }
    let mut u = CatFunctor {
        obj_map: vec![],
        mor_map: vec![],
    };
    for (c, v) in diagram.values.iter().enumerate() {
        let id = shape.identity(c);
        let p = &paths[id];
        for x in 0..v.num_objects() {
            u.obj_map
                .push(path_obj_offset[id] + p.object_index[&(x, v.identity(x))]);
        }
        for g in 0..v.num_morphisms() {
            let i = p.object_index[&(v.source(g), v.identity(v.source(g)))];
            let j = p.object_index[&(v.target(g), v.identity(v.target(g)))];
            u.mor_map
                .push(path_mor_offset[id] + p.morphism_index[&(i, j, g, g)]);
        }
    }
    DoubleCategoryData {
        objects,
        obj_offset,
        obj_mor_offset,
        paths,
        morphisms,
        path_obj_offset,
        path_mor_offset,
        s,
        t,
        u,
        obj_arrow,
        mor_arrow,
        shape: shape.clone(),
        functors: diagram.functors.clone(),
        values: diagram.values.clone(),
    }
}

impl DoubleCategoryData {
    /// Local data `(arrow, local object)` of a global object of the morphism category.
    fn local_obj(&self, m: usize) -> (usize, usize) {
        let f = self.obj_arrow[m];
        (f, m - self.path_obj_offset[f])
    }

    fn local_mor(&self, m: usize) -> (usize, usize) {
        let f = self.mor_arrow[m];
        (f, m - self.path_mor_offset[f])
    }

    /// `(γ₀, γ₁) ∘ (β₀, β₁) = (β₀, γ₁ ∘ F(f₂)(β₁))`, defined when `t(β) = s(γ)`.
    pub fn compose_objects(&self, gamma: usize, beta: usize) -> Option<usize> {
        if self.t.obj_map[beta] != self.s.obj_map[gamma] {
            return None;
        }
        let ((f2, gl), (f1, bl)) = (self.local_obj(gamma), self.local_obj(beta));
        let h = self.shape.try_compose(f2, f1)?;
        let (g1, (b0, b1)) = (self.paths[f2].objects[gl].1, self.paths[f1].objects[bl]);
        let c = &self.values[self.shape.target(f2)];
        let composite = c.try_compose(g1, self.functors[f2].mor_map[b1])?;
        self.paths[h]
            .object_index
            .get(&(b0, composite))
            .map(|&o| self.path_obj_offset[h] + o)
    }

    /// `(h₀, h₁) ∘ (g₀, g₁) = (g₀, h₁)`, defined when `t(g) = s(h)`.
    pub fn compose_morphisms(&self, h: usize, g: usize) -> Option<usize> {
        if self.t.mor_map[g] != self.s.mor_map[h] {
            return None;
        }
        let m = &self.morphisms;
        let src = self.compose_objects(m.source(h), m.source(g))?;
        let tgt = self.compose_objects(m.target(h), m.target(g))?;
        let ((f2, hl), (f1, gl)) = (self.local_mor(h), self.local_mor(g));
        let k = self.shape.try_compose(f2, f1)?;
        let (g0, h1) = (
            self.paths[f1].morphisms[gl].0,
            self.paths[f2].morphisms[hl].1,
        );
        let (si, ti) = (src - self.path_obj_offset[k], tgt - self.path_obj_offset[k]);
        self.paths[k]
            .morphism_index
            .get(&(si, ti, g0, h1))
            .map(|&x| self.path_mor_offset[k] + x)
    }

    /// Exhaustive audit of the category-object axioms.
    pub fn audit(&self) -> Certificate {
        const KIND: &str = "double-category";
        let (o, m) = (&self.objects, &self.morphisms);
        let mut checked = 0;
        let fail = |checked: usize, w: String| Certificate::fail(KIND, "", None, checked, w);
        for (name, f, dom, cod) in [
            ("s", &self.s, m, o),
            ("t", &self.t, m, o),
            ("u", &self.u, o, m),
        ] {
            checked += 1;
            if let Some(p) = f.validate(dom, cod).into_iter().next() {
                return fail(checked, format!("{name} is not a functor: {p}"));
            }
        }
        let id = CatFunctor::identity(o);
        checked += 2;
        if self.u.then(&self.s) != id || self.u.then(&self.t) != id {
            return fail(checked, "s∘u or t∘u is not the identity".into());
        }
        let obj_pairs: Vec<(usize, usize)> = (0..m.num_objects())
            .flat_map(|g| (0..m.num_objects()).map(move |b| (g, b)))
            .filter(|&(g, b)| self.t.obj_map[b] == self.s.obj_map[g])
            .collect();
        for &(g, b) in &obj_pairs {
            checked += 1;
            let Some(c) = self.compose_objects(g, b) else {
                return fail(checked, format!("objects {g} ∘ {b} have no composite"));
            };
            if self.s.obj_map[c] != self.s.obj_map[b] || self.t.obj_map[c] != self.t.obj_map[g] {
                return fail(
                    checked,
                    format!("composite of objects {g} ∘ {b} has the wrong ends"),
                );
            }
        }
        let mor_pairs: Vec<(usize, usize)> = (0..m.num_morphisms())
            .flat_map(|h| (0..m.num_morphisms()).map(move |g| (h, g)))
            .filter(|&(h, g)| self.t.mor_map[g] == self.s.mor_map[h])
            .collect();
        for &(h, g) in &mor_pairs {
            checked += 1;
            let Some(c) = self.compose_morphisms(h, g) else {
                return fail(checked, format!("morphisms {h} ∘ {g} have no composite"));
            };
            if self.s.mor_map[c] != self.s.mor_map[g] || self.t.mor_map[c] != self.t.mor_map[h] {
                return fail(
                    checked,
                    format!("composite of morphisms {h} ∘ {g} has the wrong ends"),
                );
            }
        }
        // Horizontal composition is a functor on the pullback M ×_O M.
        for &(h, g) in &mor_pairs {
            for &(h2, g2) in &mor_pairs {
                if m.target(h) != m.source(h2) || m.target(g) != m.source(g2) {
                    continue;
                }
                checked += 1;
                let lhs = self.compose_morphisms(m.compose(h2, h), m.compose(g2, g));
                let rhs = m.try_compose(
                    self.compose_morphisms(h2, g2).expect("audited"),
                    self.compose_morphisms(h, g).expect("audited"),
                );
                if lhs != rhs {
                    return fail(
                        checked,
                        format!("horizontal composition does not preserve ({h2},{g2})·({h},{g})"),
                    );
                }
            }
        }
        // Unit laws.
        for b in 0..m.num_objects() {
            checked += 1;
            let left = self.compose_objects(self.u.obj_map[self.t.obj_map[b]], b);
            let right = self.compose_objects(b, self.u.obj_map[self.s.obj_map[b]]);
            if left != Some(b) || right != Some(b) {
                return fail(checked, format!("unit law fails at object {b}"));
            }
        }
        for g in 0..m.num_morphisms() {
            checked += 1;
            let left = self.compose_morphisms(self.u.mor_map[self.t.mor_map[g]], g);
            let right = self.compose_morphisms(g, self.u.mor_map[self.s.mor_map[g]]);
            if left != Some(g) || right != Some(g) {
                return fail(checked, format!("unit law fails at morphism {g}"));
            }
        }
        // Associativity.
        for &(g, b) in &obj_pairs {
            for a in 0..m.num_objects() {
                if self.t.obj_map[a] != self.s.obj_map[b] {
                    continue;
                }
                checked += 1;
                let l = self.compose_objects(self.compose_objects(g, b).expect("audited"), a);
                let r = self.compose_objects(g, self.compose_objects(b, a).expect("audited"));
                if l != r {
                    return fail(
                        checked,
                        format!("associativity fails on objects ({g},{b},{a})"),
                    );
                }
            }
        }
        for &(h, g) in &mor_pairs {
            for e in 0..m.num_morphisms() {
                if self.t.mor_map[e] != self.s.mor_map[g] {
                    continue;
                }
                checked += 1;
                let l = self.compose_morphisms(self.compose_morphisms(h, g).expect("audited"), e);
                let r = self.compose_morphisms(h, self.compose_morphisms(g, e).expect("audited"));
                if l != r {
                    return fail(
                        checked,
                        format!("associativity fails on morphisms ({h},{g},{e})"),
                    );
                }
            }
        }
        Certificate::pass(KIND, "", None, checked)
    }
}

/// `∫F` with its projection to the indexing category.
#[derive(Clone, Debug)]
pub struct ClassicGrothendieck {
    pub cat: FinCategory,
    pub projection: CatFunctor,
    /// `(c, x)` for each object.
    pub objects: Vec<(usize, usize)>,
    /// `(f, β₀, β₁)` for each morphism.
    pub morphisms: Vec<(usize, usize, usize)>,
    pub double: DoubleCategoryData,
}

/// Objects are the objects of `⊔_c F(c)`, morphisms the objects of
/// `⊔_f P¹_{F(f)}`, composed horizontally.
pub fn grothendieck_classic(diagram: &CatDiagram) -> ClassicGrothendieck {
    let double = double_category(diagram);
    let shape = &diagram.shape;
    let mut objects = Vec::new();
    for (c, v) in diagram.values.iter().enumerate() {
        objects.extend((0..v.num_objects()).map(|x| (c, x)));
    }
    let mut morphisms = Vec::new();
    for p in &double.paths {
        morphisms.extend(p.objects.iter().map(|&(b0, b1)| (p.arrow, b0, b1)));
    }
    let names = objects
        .iter()
        .map(|&(c, x)| {
            format!(
                "{}:{}",
                shape.object_name(c),
                diagram.values[c].object_name(x)
            )
        })
        .collect();
    let mors = morphisms
        .iter()
        .enumerate()
        .map(|(i, &(f, _, b1))| {
            let t = diagram.values[shape.target(f)].target(b1);
            let name = format!(
                "{}:{}",
                shape.morphism_name(f),
                diagram.values[shape.target(f)].morphism_name(b1)
            );
            (
                name,
                double.s.obj_map[i],
                double.obj_offset[shape.target(f)] + t,
            )
        })
        .collect();
    let identities = (0..objects.len()).map(|x| double.u.obj_map[x]).collect();
    let cat = assemble(names, mors, identities, |g, f| double.compose_objects(g, f));
    let projection = CatFunctor {
        obj_map: objects.iter().map(|o| o.0).collect(),
        mor_map: morphisms.iter().map(|m| m.0).collect(),
    };
    ClassicGrothendieck {
        cat,
        projection,
        objects,
        morphisms,
        double,
    }
}

impl ClassicGrothendieck {
    /// Certifies that the fiber over `c` (objects over `c`, morphisms over
    /// `id_c`) is isomorphic to `F(c)` as a category.
    pub fn fiber_certificate(&self, diagram: &CatDiagram, c: usize) -> Certificate {
        const KIND: &str = "classic-fiber";
        let v = &diagram.values[c];
        let subject = diagram.shape.object_name(c).to_string();
        let id = diagram.shape.identity(c);
        let obj: Vec<usize> = (0..self.objects.len())
            .filter(|&x| self.objects[x].0 == c)
            .collect();
        let mor: Vec<usize> = (0..self.morphisms.len())
            .filter(|&m| self.morphisms[m].0 == id)
            .collect();
        let mut checked = 0;
        let mut seen = vec![false; v.num_morphisms()];
        for &m in &mor {
            checked += 1;
            let (_, b0, b1) = self.morphisms[m];
            let ok = v.source(b1) == b0
                && self.cat.source(m) == self.double.obj_offset[c] + b0
                && self.cat.target(m) == self.double.obj_offset[c] + v.target(b1);
            if !ok || std::mem::replace(&mut seen[b1], true) {
                return Certificate::fail(
                    KIND,
                    &subject,
                    None,
                    checked,
                    format!("fiber morphism {m} does not match F(c)"),
                );
            }
        }
        if obj.len() != v.num_objects() || seen.iter().any(|s| !s) {
            return Certificate::fail(
                KIND,
                &subject,
                None,
                checked,
                "fiber and F(c) differ in size".into(),
            );
        }
        for &g in &mor {
            for &f in &mor {
                if let Some(h) = self.cat.try_compose(g, f) {
                    checked += 1;
                    if v.try_compose(self.morphisms[g].2, self.morphisms[f].2)
                        != Some(self.morphisms[h].2)
                    {
                        return Certificate::fail(
                            KIND,
                            &subject,
                            None,
                            checked,
                            format!("composition differs at {g} ∘ {f}"),
                        );
                    }
                }
            }
        }
        Certificate::pass(KIND, &subject, None, checked)
    }

    /// Brute-force universal property: `φ: A -> B` is opcartesian when every
    /// `ψ: A -> C` with `p(ψ) = g ∘ p(φ)` factors uniquely as `χ ∘ φ` with
    /// `p(χ) = g`.
    pub fn is_opcartesian(&self, shape: &FinCategory, phi: usize) -> bool {
        let c = &self.cat;
        let p = &self.projection;
        let (a, b) = (c.source(phi), c.target(phi));
        for psi in (0..c.num_morphisms()).filter(|&m| c.source(m) == a) {
            let target = c.target(psi);
            for g in shape.hom(p.obj_map[b], p.obj_map[target]) {
                if shape.compose(g, p.mor_map[phi]) != p.mor_map[psi] {
                    continue;
                }
                let factorizations = c
                    .hom(b, target)
                    .into_iter()
                    .filter(|&chi| p.mor_map[chi] == g && c.compose(chi, phi) == psi)
                    .count();
                if factorizations != 1 {
                    return false;
                }
            }
        }
        true
    }

    /// A morphism `(f, β₀, β₁)` is opcartesian exactly when `β₁` is invertible.
    pub fn has_invertible_fiber_part(&self, diagram: &CatDiagram, m: usize) -> bool {
        let (f, _, b1) = self.morphisms[m];
        let v = &diagram.values[diagram.shape.target(f)];
        v.hom(v.target(b1), v.source(b1)).into_iter().any(|inv| {
            v.compose(inv, b1) == v.identity(v.source(b1))
                && v.compose(b1, inv) == v.identity(v.target(b1))
        })
    }
}

/// Certifies `N(∫F) ≅ ∫(N ∘ F)` over `N(D)` up to dimension `cap`: a string
/// `(c₀,x₀) -> ... -> (c_n,x_n)` with fiber parts `β¹_k` goes to the tuple whose
/// `i`-th entry is the string `F(σ(k,i))(β¹_k)`, `k = 1..i`, in `F(c_i)`.
pub fn nerve_comparison(
    diagram: &CatDiagram,
    g: &ClassicGrothendieck,
    cap: usize,
) -> Result<Comparison> {
    const KIND: &str = "classic-vs-relative";
    let shape = &diagram.shape;
    let total = g.cat.nerve(cap);
    let nerves = diagram.nerves(cap);
    let rel = lurie_grothendieck(&diagram.nerve_diagram(cap), cap)?;
    let fail = |w: String| Comparison {
        forward: None,
        inverse: None,
        certificate: Certificate::fail(KIND, "", Some(cap), 0, w),
    };
    let mut forward = Vec::new();
    let mut inverse = Vec::new();
    for n in 0..=cap {
        let mut comp = Vec::new();
        for (start, string) in &total.keys[n] {
            let (c0, x0) = g.objects[*start];
            let sigma = (
                c0,
                string.iter().map(|&m| g.morphisms[m].0).collect::<Vec<_>>(),
            );
            let Some(s) = rel.base.id(n, &sigma) else {
                return Ok(fail(format!("base string {sigma:?} missing")));
            };
            let mut beta = Vec::with_capacity(n + 1);
            for i in 0..=n {
                let ci = shape.string_object(&sigma, i);
                let along = |k: usize| &diagram.functors[shape.string_arrow(&sigma, k, i)];
                let key = (
                    along(0).obj_map[x0],
                    (1..=i)
                        .map(|k| along(k).mor_map[g.morphisms[string[k - 1]].2])
                        .collect(),
                );
                match nerves[ci].id(i, &key) {
                    Some(b) => beta.push(b),
                    None => return Ok(fail(format!("fiber string {key:?} missing"))),
                }
            }
            match rel.keyed.id(n, &(s, beta)) {
                Some(t) => comp.push(t),
                None => {
                    return Ok(fail(format!(
                        "image of {string:?} is not a relative nerve simplex"
                    )))
                }
            }
        }
        forward.push(comp);
        let mut comp = Vec::new();
        for (s, beta) in &rel.keyed.keys[n] {
            let sigma = &rel.base.keys[n][*s];
            let keys: Vec<_> = (0..=n)
                .map(|i| nerves[shape.string_object(sigma, i)].key(i, beta[i]))
                .collect();
            let mut x = keys[0].0;
            let start = g.double.obj_offset[sigma.0] + x;
            let mut string = Vec::with_capacity(n);
            for k in 1..=n {
                let f = sigma.1[k - 1];
                let b1 = keys[k].1[k - 1];
                let Some(&local) = g.double.paths[f].object_index.get(&(x, b1)) else {
                    return Ok(fail(format!(
                        "fiber data {b1} over arrow {f} is not a morphism"
                    )));
                };
                string.push(g.double.path_obj_offset[f] + local);
                x = diagram.values[shape.target(f)].target(b1);
            }
            match total.id(n, &(start, string)) {
                Some(t) => comp.push(t),
                None => return Ok(fail(format!("tuple {beta:?} has no string in the nerve"))),
            }
        }
        inverse.push(comp);
    }
    let (f, ginv) = (SimplicialMap::new(forward), SimplicialMap::new(inverse));
    let p_total = g.projection.nerve_map(&total, &rel.base);
    let parts = [
        verify_iso_map(&total.sset, rel.total(), &f, &ginv),
        verify_over(&f, &p_total, &rel.projection),
    ];
    Ok(Comparison {
        forward: Some(f),
        inverse: Some(ginv),
        certificate: Certificate::all(KIND, "", &parts),
    })
}

/// Runs the coCartesian-fibration audit on the nerve of the projection.
pub fn projection_audit(g: &ClassicGrothendieck, shape: &FinCategory, ncap: usize) -> Certificate {
    let total = g.cat.nerve(ncap);
    let base = shape.nerve(ncap);
    let p = g.projection.nerve_map(&total, &base);
    cocartesian_fibration(&total.sset, &base.sset, &p, ncap)
}

/// For every morphism of `∫F`, compares the brute-force opcartesian test, the
/// invertibility of its fiber part, and the simplicial coCartesian audit of
/// its edge in the nerve.
pub fn opcartesian_oracle(
    diagram: &CatDiagram,
    g: &ClassicGrothendieck,
    ncap: usize,
) -> Certificate {
    const KIND: &str = "opcartesian-oracle";
    let total = g.cat.nerve(ncap);
    let base = diagram.shape.nerve(ncap);
    let p = g.projection.nerve_map(&total, &base);
    let mut checked = 0;
    for m in 0..g.morphisms.len() {
        checked += 1;
        let brute = g.is_opcartesian(&diagram.shape, m);
        let inv = g.has_invertible_fiber_part(diagram, m);
        let edge = total.id(1, &(g.cat.source(m), vec![m])).expect("edge");
        let simplicial = cocartesian_edge(&total.sset, &base.sset, &p, edge, ncap).passed();
        if brute != inv || brute != simplicial {
            let w =
                format!("morphism {m}: universal={brute} invertible={inv} simplicial={simplicial}");
            return Certificate::fail(KIND, "", Some(ncap), checked, w);
        }
    }
    Certificate::pass(KIND, "", Some(ncap), checked)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn discrete_into_discrete() -> CatDiagram {
        let shape = FinCategory::ordinal(1);
        let functors = (0..shape.num_morphisms())
            .map(|f| match (shape.source(f), shape.target(f)) {
                (0, 0) => CatFunctor::identity(&FinCategory::discrete(1)),
                (1, 1) => CatFunctor::identity(&FinCategory::discrete(2)),
                _ => CatFunctor {
                    obj_map: vec![0],
                    mor_map: vec![0],
                },
            })
            .collect();
        CatDiagram::checked(
            shape,
            vec![FinCategory::discrete(1), FinCategory::discrete(2)],
            functors,
        )
        .unwrap()
    }

    /// `[1] -> [1]` constant at the final object, over `[1]`.
    fn arrow_collapse() -> CatDiagram {
        let shape = FinCategory::ordinal(1);
        let v = FinCategory::ordinal(1);
        let top = v.identity(1);
        let functors = (0..shape.num_morphisms())
            .map(|f| {
                if shape.is_identity(f) {
                    CatFunctor::identity(&v)
                } else {
                    CatFunctor {
                        obj_map: vec![1, 1],
                        mor_map: vec![top; v.num_morphisms()],
                    }
                }
            })
            .collect();
        CatDiagram::checked(shape, vec![v.clone(), v], functors).unwrap()
    }

    #[test]
    fn identity_path_category_has_arrows_as_objects() {
        let c = FinCategory::ordinal(2);
        let d = CatDiagram::constant(&FinCategory::terminal(), &c);
        let p = mapping_path_category(&d, 0);
        assert_eq!(p.objects.len(), c.num_morphisms());
    }

    #[test]
    fn discrete_example_counts() {
        let d = discrete_into_discrete();
        let g = grothendieck_classic(&d);
        assert_eq!(g.cat.num_objects(), 3);
        assert_eq!(g.cat.num_morphisms(), 4);
        assert!(g.cat.validate().is_empty());
        assert!(g.double.audit().passed());
    }

    #[test]
    fn constant_terminal_recovers_the_base() {
        let shape = FinCategory::span();
        let d = CatDiagram::constant(&shape, &FinCategory::terminal());
        let g = grothendieck_classic(&d);
        assert_eq!(g.cat.num_objects(), shape.num_objects());
        assert_eq!(g.cat.num_morphisms(), shape.num_morphisms());
    }

    #[test]
    fn double_category_and_comparison_on_a_nontrivial_diagram() {
        let d = arrow_collapse();
        let g = grothendieck_classic(&d);
        assert!(g.cat.validate().is_empty());
        let audit = g.double.audit();
        assert!(audit.passed(), "{}", audit.line());
        let cmp = nerve_comparison(&d, &g, 3).unwrap();
        assert!(cmp.certificate.passed(), "{}", cmp.certificate.line());
        for c in 0..2 {
            assert!(g.fiber_certificate(&d, c).passed());
        }
        assert!(projection_audit(&g, &d.shape, 3).passed());
        let oracle = opcartesian_oracle(&d, &g, 3);
        assert!(oracle.passed(), "{}", oracle.line());
    }
}
