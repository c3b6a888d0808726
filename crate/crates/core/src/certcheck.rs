//! Certificates: simplicial-identity audits, isomorphism verification and
//! truncated lifting checks (inner horns, coCartesian edges and fibrations).
//!
//! Every check is exhaustive up to its stated bound and deterministic: squares
//! are enumerated in lexicographic order of simplex ids, and a FAIL carries
//! the first offending datum in that order.

use std::fmt;

use crate::sset::{BiTruncSSet, SimplicialMap, TruncSSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
        })
    }
}

/// Outcome of a named check on a named subject.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub kind: String,
    pub subject: String,
    pub verdict: Verdict,
    /// Truncation bound the verdict is relative to.
    pub bound: Option<usize>,
    /// Number of elementary checks performed.
    pub checked: usize,
    pub witness: Option<String>,
}

impl Certificate {
    pub fn pass(kind: &str, subject: &str, bound: Option<usize>, checked: usize) -> Self {
        Certificate {
            kind: kind.into(),
            subject: subject.into(),
            verdict: Verdict::Pass,
            bound,
            checked,
            witness: None,
        }
    }

    pub fn fail(
        kind: &str,
        subject: &str,
        bound: Option<usize>,
        checked: usize,
        witness: String,
    ) -> Self {
        Certificate {
            kind: kind.into(),
            subject: subject.into(),
            verdict: Verdict::Fail,
            bound,
            checked,
            witness: Some(witness),
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn with_subject(mut self, subject: &str) -> Self {
        self.subject = subject.into();
        self
    }

    /// Combines certificates of the same kind: PASS iff all pass; the first
    /// failure's witness is kept.
    pub fn all(kind: &str, subject: &str, parts: &[Certificate]) -> Self {
        let checked = parts.iter().map(|c| c.checked).sum();
        let bound = parts.iter().filter_map(|c| c.bound).max();
        match parts.iter().find(|c| !c.passed()) {
            Some(bad) => Certificate::fail(
                kind,
                subject,
                bound,
                checked,
                format!("{}: {}", bad.kind, bad.witness.clone().unwrap_or_default()),
            ),
            None => Certificate::pass(kind, subject, bound, checked),
        }
    }

    /// One report line with stable field order.
    pub fn line(&self) -> String {
        let mut s = format!(
            "certificate kind={} subject={} verdict={}",
            self.kind, self.subject, self.verdict
        );
        if let Some(b) = self.bound {
            s.push_str(&format!(" bound={b}"));
        }
        s.push_str(&format!(" checked={}", self.checked));
        if let Some(w) = &self.witness {
            s.push_str(&format!(" witness=\"{w}\""));
        }
        s
    }
}

/// Checks all five families of simplicial identities on every simplex where
/// both sides are defined within the cap.
pub fn check_simplicial_identities(x: &TruncSSet) -> Certificate {
    const KIND: &str = "identities";
    let cap = x.cap();
    let mut checked = 0;
    let fail = |checked, w: String| Certificate::fail(KIND, "", Some(cap), checked, w);
    for n in 0..=cap {
        for s in 0..x.size(n) {
            // d_i d_j = d_{j-1} d_i for i < j
            if n >= 2 {
                for j in 1..=n {
                    for i in 0..j {
                        checked += 1;
                        let lhs = x.face(n - 1, i, x.face(n, j, s));
                        let rhs = x.face(n - 1, j - 1, x.face(n, i, s));
                        if lhs != rhs {
                            return fail(
                                checked,
                                format!(
                                    "d_{i} d_{j} != d_{} d_{i} on degree {n} simplex {s}",
                                    j - 1
                                ),
                            );
                        }
                    }
                }
            }
            // s_i s_j = s_{j+1} s_i for i <= j
            if n + 2 <= cap {
                for j in 0..=n {
                    for i in 0..=j {
                        checked += 1;
                        let lhs = x.degen(n + 1, i, x.degen(n, j, s));
                        let rhs = x.degen(n + 1, j + 1, x.degen(n, i, s));
                        if lhs != rhs {
                            return fail(
                                checked,
                                format!(
                                    "s_{i} s_{j} != s_{} s_{i} on degree {n} simplex {s}",
                                    j + 1
                                ),
                            );
                        }
                    }
                }
            }
            if n < cap {
                for j in 0..=n {
                    let t = x.degen(n, j, s);
                    for i in 0..=n + 1 {
                        checked += 1;
                        let lhs = x.face(n + 1, i, t);
                        let (rhs, name) = if i < j {
                            (
                                x.degen(n - 1, j - 1, x.face(n, i, s)),
                                "d_i s_j = s_{j-1} d_i",
                            )
                        } else if i == j || i == j + 1 {
                            (s, "d_i s_j = id")
                        } else {
                            (
                                x.degen(n - 1, j, x.face(n, i - 1, s)),
                                "d_i s_j = s_j d_{i-1}",
                            )
                        };
                        if lhs != rhs {
                            return fail(
                                checked,
                                format!("{name} fails for i={i} j={j} on degree {n} simplex {s}"),
                            );
                        }
                    }
                }
            }
        }
    }
    Certificate::pass(KIND, "", Some(cap), checked)
}

/// Audits a bisimplicial set: identities in every column and every row, and
/// commutation of the two directions.
pub fn check_bisimplicial(b: &BiTruncSSet) -> Certificate {
    let mut parts = Vec::new();
    for (n, col) in b.columns.iter().enumerate() {
        parts.push(check_simplicial_identities(col).with_subject(&format!("column {n}")));
    }
    for m in 0..=b.mcap() {
        parts.push(check_simplicial_identities(&b.row(m)).with_subject(&format!("row {m}")));
    }
    let mut checked = 0;
    let mut commute = Certificate::pass("commutation", "", Some(b.ncap()), 0);
    'outer: for n in 0..=b.ncap() {
        for (i, f) in b.hface[n].iter().enumerate() {
            checked += 1;
            if let Err(e) = f.check(&b.columns[n], &b.columns[n - 1]) {
                commute = Certificate::fail(
                    "commutation",
                    "",
                    Some(b.ncap()),
                    checked,
                    format!("horizontal d_{i} on column {n}: {e}"),
                );
                break 'outer;
            }
        }
        for (i, f) in b.hdegen[n].iter().enumerate() {
            checked += 1;
            if let Err(e) = f.check(&b.columns[n], &b.columns[n + 1]) {
                commute = Certificate::fail(
                    "commutation",
                    "",
                    Some(b.ncap()),
                    checked,
                    format!("horizontal s_{i} on column {n}: {e}"),
                );
                break 'outer;
            }
        }
    }
    commute.checked = checked;
    parts.push(commute);
    Certificate::all("bisimplicial-identities", "", &parts)
}

/// Verifies that `f: x -> y` and `g: y -> x` are mutually inverse simplicial maps.
pub fn verify_iso_map(
    x: &TruncSSet,
    y: &TruncSSet,
    f: &SimplicialMap,
    g: &SimplicialMap,
) -> Certificate {
    const KIND: &str = "iso";
    let bound = Some(x.cap());
    if x.cap() != y.cap() {
        return Certificate::fail(
            KIND,
            "",
            bound,
            0,
            format!("caps differ: {} vs {}", x.cap(), y.cap()),
        );
    }
    if let Err(e) = f.check(x, y) {
        return Certificate::fail(KIND, "", bound, 0, format!("forward map: {e}"));
    }
    if let Err(e) = g.check(y, x) {
        return Certificate::fail(KIND, "", bound, 0, format!("inverse map: {e}"));
    }
    let mut checked = 0;
    for n in 0..=x.cap() {
        for s in 0..x.size(n) {
            checked += 1;
            if g.apply(n, f.apply(n, s)) != s {
                return Certificate::fail(
                    KIND,
                    "",
                    bound,
                    checked,
                    format!("g∘f moves degree {n} simplex {s}"),
                );
            }
        }
        for s in 0..y.size(n) {
            checked += 1;
            if f.apply(n, g.apply(n, s)) != s {
                return Certificate::fail(
                    KIND,
                    "",
                    bound,
                    checked,
                    format!("f∘g moves degree {n} simplex {s}"),
                );
            }
        }
    }
    Certificate::pass(KIND, "", bound, checked)
}

/// Verifies `py ∘ f = px` degreewise.
pub fn verify_over(f: &SimplicialMap, px: &SimplicialMap, py: &SimplicialMap) -> Certificate {
    const KIND: &str = "over-base";
    let mut checked = 0;
    for (n, comp) in f.components.iter().enumerate() {
        for (s, &t) in comp.iter().enumerate() {
            checked += 1;
            if py.apply(n, t) != px.apply(n, s) {
                return Certificate::fail(
                    KIND,
                    "",
                    Some(f.cap()),
                    checked,
                    format!("projection differs on degree {n} simplex {s}"),
                );
            }
        }
    }
    Certificate::pass(KIND, "", Some(f.cap()), checked)
}

/// Per-degree lookup of simplices by the value of one face.
struct FaceBuckets {
    /// `buckets[n][i][v]`: simplices of degree `n` whose `i`-th face is `v`.
    buckets: Vec<Vec<Vec<Vec<usize>>>>,
}

impl FaceBuckets {
    fn new(x: &TruncSSet, top: usize) -> Self {
        let mut buckets = vec![vec![]];
        for n in 1..=top.min(x.cap()) {
            let mut per_i = vec![vec![Vec::new(); x.size(n - 1)]; n + 1];
            for s in 0..x.size(n) {
                for (i, b) in per_i.iter_mut().enumerate() {
                    b[x.face(n, i, s)].push(s);
                }
            }
            buckets.push(per_i);
        }
        FaceBuckets { buckets }
    }

    fn with_face(&self, n: usize, i: usize, v: usize) -> &[usize] {
        &self.buckets[n][i][v]
    }
}

/// Enumerates horns `Λ^k[n] -> x` as face tuples (position `k` unused),
/// visiting positions in `order`. `visit` returns `false` to stop.
fn for_each_horn(
    x: &TruncSSet,
    fb: &FaceBuckets,
    n: usize,
    order: &[usize],
    admit: &dyn Fn(usize, usize) -> bool,
    visit: &mut dyn FnMut(&[usize]) -> bool,
) {
    let mut tuple = vec![usize::MAX; n + 1];
    fn rec(
        x: &TruncSSet,
        fb: &FaceBuckets,
        n: usize,
        order: &[usize],
        depth: usize,
        tuple: &mut Vec<usize>,
        admit: &dyn Fn(usize, usize) -> bool,
        visit: &mut dyn FnMut(&[usize]) -> bool,
    ) -> bool {
        if depth == order.len() {
            return visit(tuple);
        }
        let j = order[depth];
        let chosen = &order[..depth];
        // d_i d_j = d_{j-1} d_i turns each chosen face into a constraint (a, v): d_a x_j = v
        let required: Vec<(usize, usize)> = chosen
            .iter()
            .map(|&i| {
                if i < j {
                    (i, x.face(n - 1, j - 1, tuple[i]))
                } else {
                    (i - 1, x.face(n - 1, j, tuple[i]))
                }
            })
            .collect();
        let candidates: Vec<usize> = match required.first() {
            None => (0..x.size(n - 1)).collect(),
            Some(&(a, v)) => fb.with_face(n - 1, a, v).to_vec(),
        };
        for c in candidates {
            if !admit(j, c) {
                continue;
            }
            if required.iter().all(|&(a, v)| x.face(n - 1, a, c) == v) {
                tuple[j] = c;
                if !rec(x, fb, n, order, depth + 1, tuple, admit, visit) {
                    return false;
                }
            }
        }
        tuple[j] = usize::MAX;
        true
    }
    if n < 2 {
        // Horns in dimension 1 are vertices; every check here starts at n = 2.
        return;
    }
    rec(x, fb, n, order, 0, &mut tuple, admit, visit);
}

/// Shared state for lifting checks against `p: x -> s`.
struct LiftContext<'a> {
    x: &'a TruncSSet,
    s: &'a TruncSSet,
    p: &'a SimplicialMap,
    fx: FaceBuckets,
    fs: FaceBuckets,
}

impl<'a> LiftContext<'a> {
    fn new(x: &'a TruncSSet, s: &'a TruncSSet, p: &'a SimplicialMap, ncap: usize) -> Self {
        LiftContext {
            x,
            s,
            p,
            fx: FaceBuckets::new(x, ncap),
            fs: FaceBuckets::new(s, ncap),
        }
    }

    fn first_pos(n: usize, k: usize) -> usize {
        if k == 0 { 1 } else { 0 }.min(n)
    }

    /// Base simplices of degree `n` whose faces (other than `k`) are the images of the horn.
    fn bases(&self, n: usize, k: usize, horn: &[usize]) -> Vec<usize> {
        let i0 = Self::first_pos(n, k);
        let v = self.p.apply(n - 1, horn[i0]);
        self.fs
            .with_face(n, i0, v)
            .iter()
            .copied()
            .filter(|&b| {
                (0..=n).all(|i| i == k || self.s.face(n, i, b) == self.p.apply(n - 1, horn[i]))
            })
            .collect()
    }

    fn has_lift(&self, n: usize, k: usize, horn: &[usize], base: usize) -> bool {
        let i0 = Self::first_pos(n, k);
        self.fx.with_face(n, i0, horn[i0]).iter().any(|&t| {
            self.p.apply(n, t) == base && (0..=n).all(|i| i == k || self.x.face(n, i, t) == horn[i])
        })
    }
}

fn describe_square(n: usize, k: usize, horn: &[usize], base: usize) -> String {
    let faces: Vec<String> = horn
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != k)
        .map(|(i, f)| format!("d{i}={f}"))
        .collect();
    format!(
        "Λ^{k}[{n}] faces [{}] over base {n}-simplex {base} has no filler",
        faces.join(",")
    )
}

/// Exhaustive inner-horn lifting for `p: x -> s` up to dimension `ncap`.
pub fn inner_horn_lifts(
    x: &TruncSSet,
    s: &TruncSSet,
    p: &SimplicialMap,
    ncap: usize,
) -> Certificate {
    const KIND: &str = "inner-horn-lifts";
    let ncap = ncap.min(x.cap()).min(s.cap());
    let ctx = LiftContext::new(x, s, p, ncap);
    let mut checked = 0;
    for n in 2..=ncap {
        for k in 1..n {
            let order: Vec<usize> = (0..=n).filter(|&i| i != k).collect();
            let mut failure = None;
            for_each_horn(x, &ctx.fx, n, &order, &|_, _| true, &mut |horn| {
                for b in ctx.bases(n, k, horn) {
                    checked += 1;
                    if !ctx.has_lift(n, k, horn, b) {
                        failure = Some(describe_square(n, k, horn, b));
                        return false;
                    }
                }
                true
            });
            if let Some(w) = failure {
                return Certificate::fail(KIND, "", Some(ncap), checked, w);
            }
        }
    }
    Certificate::pass(KIND, "", Some(ncap), checked)
}

/// Front edge (vertices 0 and 1) of an `(n-1)`-simplex.
fn front_edge(x: &TruncSSet, deg: usize, t: usize) -> usize {
    x.front(deg, t, 1)
}

/// Exhaustive check that edge `e` of `x` is `p`-coCartesian up to `ncap`:
/// every `Λ^0[n]` horn whose initial edge is `e`, over any base `n`-simplex,
/// has a filler.
pub fn cocartesian_edge(
    x: &TruncSSet,
    s: &TruncSSet,
    p: &SimplicialMap,
    e: usize,
    ncap: usize,
) -> Certificate {
    let ncap = ncap.min(x.cap()).min(s.cap());
    let ctx = LiftContext::new(x, s, p, ncap);
    cocartesian_edge_in(&ctx, e, ncap)
}

fn cocartesian_edge_in(ctx: &LiftContext, e: usize, ncap: usize) -> Certificate {
    const KIND: &str = "cocartesian-edge";
    let subject = format!("edge {e}");
    let mut checked = 0;
    for n in 2..=ncap {
        // Position n (the face missing vertex n) contains the edge 01; choose it first.
        let order: Vec<usize> = (1..=n).rev().collect();
        let admit = |pos: usize, c: usize| pos != n || front_edge(ctx.x, n - 1, c) == e;
        let mut failure = None;
        for_each_horn(ctx.x, &ctx.fx, n, &order, &admit, &mut |horn| {
            for b in ctx.bases(n, 0, horn) {
                checked += 1;
                if !ctx.has_lift(n, 0, horn, b) {
                    failure = Some(describe_square(n, 0, horn, b));
                    return false;
                }
            }
            true
        });
        if let Some(w) = failure {
            return Certificate::fail(KIND, &subject, Some(n), checked, w);
        }
    }
    Certificate::pass(KIND, &subject, Some(ncap), checked)
}

/// Inner fibration plus, for every base edge and every vertex over its
/// source, some edge above it that passes [`cocartesian_edge`].
pub fn cocartesian_fibration(
    x: &TruncSSet,
    s: &TruncSSet,
    p: &SimplicialMap,
    ncap: usize,
) -> Certificate {
    const KIND: &str = "cocartesian-fibration";
    let ncap = ncap.min(x.cap()).min(s.cap());
    let inner = inner_horn_lifts(x, s, p, ncap);
    if !inner.passed() {
        return Certificate::fail(
            KIND,
            "",
            Some(ncap),
            inner.checked,
            inner.witness.unwrap_or_default(),
        );
    }
    if x.cap() < 1 || s.cap() < 1 {
        return Certificate::pass(KIND, "", Some(ncap), inner.checked);
    }
    let ctx = LiftContext::new(x, s, p, ncap);
    let mut checked = inner.checked;
    // Edges of x grouped by (source vertex, image edge).
    let mut by_source_and_image: std::collections::HashMap<(usize, usize), Vec<usize>> =
        Default::default();
    for t in 0..x.size(1) {
        by_source_and_image
            .entry((x.face(1, 1, t), p.apply(1, t)))
            .or_default()
            .push(t);
    }
    for f in 0..s.size(1) {
        let base_source = s.face(1, 1, f);
        for v in 0..x.size(0) {
            if p.apply(0, v) != base_source {
                continue;
            }
            let candidates = by_source_and_image
                .get(&(v, f))
                .cloned()
                .unwrap_or_default();
            let mut found = false;
            for t in candidates {
                let c = cocartesian_edge_in(&ctx, t, ncap);
                checked += c.checked;
                if c.passed() {
                    found = true;
                    break;
                }
            }
            if !found {
                return Certificate::fail(
                    KIND,
                    "",
                    Some(ncap),
                    checked,
                    format!("no coCartesian lift of base edge {f} at vertex {v}"),
                );
            }
        }
    }
    Certificate::pass(KIND, "", Some(ncap), checked)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::FinCategory;
    use crate::sset::{horn, simplex};

    fn to_point(x: &TruncSSet) -> (TruncSSet, SimplicialMap) {
        let pt = simplex(0, x.cap());
        let p = SimplicialMap::new((0..=x.cap()).map(|n| vec![0; x.size(n)]).collect());
        (pt, p)
    }

    #[test]
    fn corrupted_face_table_fails() {
        let d2 = simplex(2, 2);
        let mut face: Vec<Vec<Vec<usize>>> = (0..=2)
            .map(|n| {
                if n == 0 {
                    vec![]
                } else {
                    (0..=n).map(|i| d2.face_table(n, i).to_vec()).collect()
                }
            })
            .collect();
        let degen: Vec<Vec<Vec<usize>>> = (0..=2)
            .map(|n| {
                if n < 2 {
                    (0..=n).map(|i| d2.degen_table(n, i).to_vec()).collect()
                } else {
                    vec![]
                }
            })
            .collect();
        let top = d2.nondegenerate(2)[0];
        face[2][0][top] = face[2][1][top];
        let bad = TruncSSet::from_tables(2, d2.sizes().to_vec(), face, degen).unwrap();
        let c = check_simplicial_identities(&bad);
        assert!(!c.passed());
        assert!(c.witness.is_some());
        assert!(check_simplicial_identities(&d2).passed());
    }

    #[test]
    fn swapped_vertices_are_not_inverse_to_identity() {
        let two = crate::sset::coproduct(&[&simplex(0, 1), &simplex(0, 1)], 1)
            .unwrap()
            .sset;
        let id = SimplicialMap::identity(&two);
        let swap = SimplicialMap::new(vec![vec![1, 0], vec![1, 0]]);
        assert!(verify_iso_map(&two, &two, &id, &id).passed());
        assert!(!verify_iso_map(&two, &two, &swap, &id).passed());
    }

    #[test]
    fn nerves_are_inner_fibrant_and_horns_are_not() {
        let n = FinCategory::chaotic(2).nerve(3).sset;
        let (pt, p) = to_point(&n);
        assert!(inner_horn_lifts(&n, &pt, &p, 3).passed());
        let h = horn(2, 1, 2).unwrap();
        let (pt, p) = to_point(&h);
        let c = inner_horn_lifts(&h, &pt, &p, 2);
        assert!(!c.passed());
    }

    #[test]
    fn cocartesian_edges_in_a_groupoid_nerve() {
        let j = FinCategory::walking_iso().nerve(3).sset;
        let (pt, p) = to_point(&j);
        for e in 0..j.size(1) {
            assert!(cocartesian_edge(&j, &pt, &p, e, 3).passed());
        }
        let one = FinCategory::ordinal(1).nerve(3).sset;
        let (pt, p) = to_point(&one);
        let arrow = one.nondegenerate(1)[0];
        let c = cocartesian_edge(&one, &pt, &p, arrow, 3);
        assert!(!c.passed());
        assert_eq!(c.bound, Some(2));
    }
}
