//! Gadget templates for the cycle-cover reduction, their local properties,
//! and the exhaustive search that derives their arc weights.
//!
//! A gadget is a small digraph some of whose arcs are *external*: dotted
//! edges (clause and variable gadgets) or port connections (the XOR gadget).
//! A *closure* fixes which external arcs a global cycle cover uses; using an
//! external arc out of `x` deletes row `x`, using one into `y` deletes column
//! `y`, and the local covers are the permutation terms of the minor.

use itertools::Itertools;
use rayon::prelude::*;
use serde::Serialize;

use super::permanent::cover_terms;
use crate::error::{Error, Result};

pub const XOR_A: usize = 0;
pub const XOR_B: usize = 1;
pub const XOR_C: usize = 2;
pub const XOR_D: usize = 3;

/// XOR gadget on `a, b, c, d` as derived by [`derive_gadget_weights`]: the
/// eight arcs of the two traversal paths plus the minimal widening
/// `{a→c, b→c, b→d, d→b}`. Only `b→a` and `c→c` carry `-1`.
pub const XOR_ARCS: [(usize, usize, i64); 12] = [
    (XOR_A, XOR_B, 1),
    (XOR_B, XOR_A, -1),
    (XOR_B, XOR_B, 1),
    (XOR_A, XOR_D, 2),
    (XOR_D, XOR_C, 1),
    (XOR_C, XOR_D, 1),
    (XOR_C, XOR_C, -1),
    (XOR_C, XOR_B, 1),
    (XOR_A, XOR_C, 1),
    (XOR_B, XOR_C, 1),
    (XOR_B, XOR_D, 2),
    (XOR_D, XOR_B, 3),
];

pub const CLAUSE_ZERO: usize = 0;
pub const CLAUSE_A: usize = 1;
pub const CLAUSE_B: usize = 2;
pub const CLAUSE_C: usize = 3;

/// Dotted slots of a clause gadget: `b→c` (always the shared variable),
/// `c→a` (first literal), `a→b` (second literal).
pub const CLAUSE_DOTTED: [(usize, usize); 3] = [(CLAUSE_B, CLAUSE_C), (CLAUSE_C, CLAUSE_A), (CLAUSE_A, CLAUSE_B)];

/// Clause gadget: the plain arcs of the traversal path plus the minimal
/// widening `{0→b, a→c, c→0, c→c}`, all of weight 1.
pub const CLAUSE_ARCS: [(usize, usize, i64); 9] = [
    (CLAUSE_ZERO, CLAUSE_C, 1),
    (CLAUSE_ZERO, CLAUSE_A, 1),
    (CLAUSE_A, CLAUSE_ZERO, 1),
    (CLAUSE_B, CLAUSE_ZERO, 1),
    (CLAUSE_C, CLAUSE_B, 1),
    (CLAUSE_ZERO, CLAUSE_B, 1),
    (CLAUSE_A, CLAUSE_C, 1),
    (CLAUSE_C, CLAUSE_ZERO, 1),
    (CLAUSE_C, CLAUSE_C, 1),
];

/// Weight of the variable gadget's self-loops and back arc.
pub const VARIABLE_LOOP_WEIGHT: i64 = 1;
pub const VARIABLE_BACK_WEIGHT: i64 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GadgetKind {
    Xor,
    Clause,
    Variable,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GadgetTemplate {
    pub kind: GadgetKind,
    pub labels: Vec<String>,
    /// Internal arcs (dotted edges excluded).
    pub arcs: Vec<(usize, usize, i64)>,
    pub dotted: Vec<(usize, usize)>,
    /// XOR ports `[a, d]`; each has one external in-arc and one out-arc.
    pub ports: Vec<usize>,
}

impl GadgetTemplate {
    pub fn xor() -> Self {
        GadgetTemplate {
            kind: GadgetKind::Xor,
            labels: ["a", "b", "c", "d"].map(String::from).to_vec(),
            arcs: XOR_ARCS.to_vec(),
            dotted: Vec::new(),
            ports: vec![XOR_A, XOR_D],
        }
    }

    pub fn clause() -> Self {
        GadgetTemplate {
            kind: GadgetKind::Clause,
            labels: ["0", "a", "b", "c"].map(String::from).to_vec(),
            arcs: CLAUSE_ARCS.to_vec(),
            dotted: CLAUSE_DOTTED.to_vec(),
            ports: Vec::new(),
        }
    }

    /// Chain `u_0 .. u_t` with dotted `u_{i-1}→u_i`, a self-loop on every
    /// vertex and the back arc `u_t→u_0`.
    pub fn variable(occurrences: usize) -> Self {
        let (loop_w, back_w) = (VARIABLE_LOOP_WEIGHT, VARIABLE_BACK_WEIGHT);
        assert!(occurrences >= 1, "a variable gadget needs an occurrence");
        let t = occurrences;
        let mut arcs: Vec<(usize, usize, i64)> = (0..=t).map(|i| (i, i, loop_w)).collect();
        arcs.push((t, 0, back_w));
        GadgetTemplate {
            kind: GadgetKind::Variable,
            labels: (0..=t).map(|i| format!("u{i}")).collect(),
            arcs,
            dotted: (1..=t).map(|i| (i - 1, i)).collect(),
            ports: Vec::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn matrix(&self) -> Vec<Vec<i64>> {
        let mut m = vec![vec![0; self.n()]; self.n()];
        for &(x, y, w) in &self.arcs {
            m[x][y] = w;
        }
        m
    }

    /// In/out degrees counting one external arc per dotted endpoint and an
    /// external in- and out-arc per port.
    pub fn degrees_with_externals(&self) -> (Vec<usize>, Vec<usize>) {
        let mut ind = vec![0; self.n()];
        let mut outd = vec![0; self.n()];
        for &(x, y, _) in &self.arcs {
            outd[x] += 1;
            ind[y] += 1;
        }
        for &(x, y) in &self.dotted {
            outd[x] += 1;
            ind[y] += 1;
        }
        for &p in &self.ports {
            outd[p] += 1;
            ind[p] += 1;
        }
        (ind, outd)
    }

    /// Every closure together with the behavior the reduction needs from it.
    pub fn closures(&self) -> Vec<Closure> {
        match self.kind {
            GadgetKind::Xor => xor_closures(self),
            GadgetKind::Clause | GadgetKind::Variable => dotted_closures(self),
        }
    }
}

/// What a closure must produce.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "value", rename_all = "snake_case")]
pub enum Expectation {
    /// Total weight of the local covers.
    TotalWeight(i64),
    /// Exactly one local cover, of weight 1.
    UniqueUnitCover,
    /// No local cover at all.
    NoCover,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Closure {
    pub description: String,
    pub deleted_rows: Vec<usize>,
    pub deleted_cols: Vec<usize>,
    pub expect: Expectation,
}

fn xor_closures(t: &GadgetTemplate) -> Vec<Closure> {
    let (a, d) = (t.ports[0], t.ports[1]);
    let mut out = Vec::new();
    // Bits: a-in, a-out, d-in, d-out.
    for mask in 0u8..16 {
        let (ai, ao, di, dout) = (mask & 1 != 0, mask & 2 != 0, mask & 4 != 0, mask & 8 != 0);
        let mut names = Vec::new();
        let (mut rows, mut cols) = (Vec::new(), Vec::new());
        if ai {
            names.push("a in");
            cols.push(a);
        }
        if ao {
            names.push("a out");
            rows.push(a);
        }
        if di {
            names.push("d in");
            cols.push(d);
        }
        if dout {
            names.push("d out");
            rows.push(d);
        }
        let pass_through = (ai && dout && !ao && !di) || (ao && di && !ai && !dout);
        out.push(Closure {
            description: if names.is_empty() {
                "closed".into()
            } else {
                names.join(", ")
            },
            deleted_rows: rows,
            deleted_cols: cols,
            expect: Expectation::TotalWeight(if pass_through { 2 } else { 0 }),
        });
    }
    out
}

fn dotted_closures(t: &GadgetTemplate) -> Vec<Closure> {
    let k = t.dotted.len();
    let mut out = Vec::new();
    for mask in 0u32..1 << k {
        let used: Vec<(usize, usize)> = (0..k).filter(|&i| mask >> i & 1 == 1).map(|i| t.dotted[i]).collect();
        let all = used.len() == k;
        let expect = match t.kind {
            GadgetKind::Clause if all => Expectation::NoCover,
            GadgetKind::Clause => Expectation::UniqueUnitCover,
            _ if used.is_empty() || all => Expectation::UniqueUnitCover,
            _ => Expectation::NoCover,
        };
        let names: Vec<String> = used
            .iter()
            .map(|&(x, y)| format!("{}→{}", t.labels[x], t.labels[y]))
            .collect();
        out.push(Closure {
            description: if names.is_empty() {
                "no dotted edge".into()
            } else {
                names.join(", ")
            },
            deleted_rows: used.iter().map(|&(x, _)| x).collect(),
            deleted_cols: used.iter().map(|&(_, y)| y).collect(),
            expect,
        });
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClosureResult {
    pub closure: Closure,
    /// Weights of the individual local covers.
    pub covers: Vec<i64>,
    pub total: i64,
    pub ok: bool,
}

fn meets(expect: Expectation, covers: &[i64]) -> bool {
    match expect {
        Expectation::TotalWeight(w) => covers.iter().sum::<i64>() == w,
        Expectation::UniqueUnitCover => covers == [1],
        Expectation::NoCover => covers.is_empty(),
    }
}

pub fn check_template(t: &GadgetTemplate) -> Vec<ClosureResult> {
    let m = t.matrix();
    t.closures()
        .into_iter()
        .map(|c| {
            let covers = cover_terms(&m, &c.deleted_rows, &c.deleted_cols);
            let ok = meets(c.expect, &covers);
            ClosureResult {
                total: covers.iter().sum(),
                covers,
                ok,
                closure: c,
            }
        })
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct TemplateReport {
    pub kind: GadgetKind,
    pub vertices: usize,
    pub closures: Vec<ClosureResult>,
}

#[derive(Clone, Debug, Serialize)]
pub struct GadgetReport {
    pub templates: Vec<TemplateReport>,
}

impl GadgetReport {
    pub fn passed(&self) -> bool {
        self.templates.iter().all(|t| t.closures.iter().all(|c| c.ok))
    }
}

/// Largest template the local brute force accepts.
pub const LOCAL_MAX_VERTICES: usize = 10;

/// Checks every closure of every template; the first violation is returned
/// as [`Error::TemplateFalsified`] naming the template and closure.
pub fn verify_gadget_properties(templates: &[GadgetTemplate]) -> Result<GadgetReport> {
    let mut report = GadgetReport { templates: Vec::new() };
    for t in templates {
        if t.n() > LOCAL_MAX_VERTICES {
            return Err(Error::CapExceeded {
                what: "gadget vertices",
                limit: LOCAL_MAX_VERTICES,
                actual: t.n(),
            });
        }
        let closures = check_template(t);
        if let Some(bad) = closures.iter().find(|c| !c.ok) {
            return Err(Error::TemplateFalsified(format!(
                "{:?} gadget, closure [{}]: expected {:?}, local covers {:?}",
                t.kind, bad.closure.description, bad.closure.expect, bad.covers
            )));
        }
        report.templates.push(TemplateReport {
            kind: t.kind,
            vertices: t.n(),
            closures,
        });
    }
    Ok(report)
}

/// The templates a compiled formula uses: XOR, clause, and one variable
/// gadget per distinct occurrence count.
pub fn standard_templates(occurrence_counts: &[usize]) -> Vec<GadgetTemplate> {
    let mut v = vec![GadgetTemplate::xor(), GadgetTemplate::clause()];
    let mut counts: Vec<usize> = occurrence_counts.iter().copied().filter(|&t| t > 0).collect();
    counts.sort_unstable();
    counts.dedup();
    v.extend(counts.into_iter().map(GadgetTemplate::variable));
    v
}

/// One level of a widening search: `added` extra arcs on top of the base set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SearchLevel {
    pub added: usize,
    pub edge_sets: usize,
    pub found: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DerivedTemplate {
    pub template: GadgetTemplate,
    pub base_arcs: Vec<(usize, usize)>,
    pub widened_by: Vec<(usize, usize)>,
    pub weight_range: Vec<i64>,
    pub levels: Vec<SearchLevel>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DerivedGadgets {
    pub xor: DerivedTemplate,
    pub clause: DerivedTemplate,
    pub variable: Vec<DerivedTemplate>,
}

struct SearchSpace<'a> {
    base: &'a [(usize, usize)],
    fixed: &'a [((usize, usize), i64)],
    weights: &'a [i64],
    max_added: usize,
}

/// Minimal widening search: for `k = 0, 1, ..` extra arcs (subsets in
/// lexicographic order), try every weight vector over the free arcs in
/// lexicographic order and return the first template passing all closures.
fn widening_search(space: SearchSpace<'_>, probe: &GadgetTemplate) -> Result<DerivedTemplate> {
    let n = probe.n();
    let closures = probe.closures();
    let candidates: Vec<(usize, usize)> = (0..n)
        .cartesian_product(0..n)
        .filter(|a| !space.base.contains(a) && !probe.dotted.contains(a))
        .collect();
    let mut levels = Vec::new();
    for k in 0..=space.max_added.min(candidates.len()) {
        let subsets: Vec<Vec<(usize, usize)>> = candidates.iter().copied().combinations(k).collect();
        let hit = subsets.par_iter().find_map_first(|extra| {
            let arcs: Vec<(usize, usize)> = space.base.iter().chain(extra.iter()).copied().collect();
            let free: Vec<(usize, usize)> = arcs
                .iter()
                .copied()
                .filter(|a| !space.fixed.iter().any(|(f, _)| f == a))
                .collect();
            first_weighting(n, &arcs, &free, space.fixed, space.weights, &closures).map(|ws| (extra.clone(), ws))
        });
        levels.push(SearchLevel {
            added: k,
            edge_sets: subsets.len(),
            found: hit.is_some(),
        });
        if let Some((extra, arcs)) = hit {
            return Ok(DerivedTemplate {
                template: GadgetTemplate { arcs, ..probe.clone() },
                base_arcs: space.base.to_vec(),
                widened_by: extra,
                weight_range: space.weights.to_vec(),
                levels,
            });
        }
    }
    Err(Error::TemplateFalsified(format!(
        "no weighting of the base arc set widened by up to {} arcs satisfies the gadget properties",
        space.max_added
    )))
}

/// Closures precompiled to the list of bijections of each minor.
struct CompiledClosure {
    terms: Vec<Vec<(usize, usize)>>,
    expect: Expectation,
}

fn compile_closures(n: usize, closures: &[Closure]) -> Vec<CompiledClosure> {
    closures
        .iter()
        .map(|c| {
            let rows: Vec<usize> = (0..n).filter(|i| !c.deleted_rows.contains(i)).collect();
            let cols: Vec<usize> = (0..n).filter(|j| !c.deleted_cols.contains(j)).collect();
            let terms = if rows.len() == cols.len() {
                cols.iter()
                    .copied()
                    .permutations(cols.len())
                    .map(|p| rows.iter().copied().zip(p).collect())
                    .collect()
            } else {
                Vec::new()
            };
            CompiledClosure {
                terms,
                expect: c.expect,
            }
        })
        .collect()
}

fn first_weighting(
    n: usize,
    arcs: &[(usize, usize)],
    free: &[(usize, usize)],
    fixed: &[((usize, usize), i64)],
    weights: &[i64],
    closures: &[Closure],
) -> Option<Vec<(usize, usize, i64)>> {
    let compiled = compile_closures(n, closures);
    // Keep only bijections supported on the arc set.
    let support = |x: usize, y: usize| arcs.contains(&(x, y));
    let compiled: Vec<CompiledClosure> = compiled
        .into_iter()
        .map(|c| CompiledClosure {
            terms: c
                .terms
                .into_iter()
                .filter(|t| t.iter().all(|&(x, y)| support(x, y)))
                .collect(),
            expect: c.expect,
        })
        .collect();
    let mut m = vec![vec![0i64; n]; n];
    for &((x, y), w) in fixed {
        m[x][y] = w;
    }
    let mut idx = vec![0usize; free.len()];
    loop {
        for (k, &(x, y)) in free.iter().enumerate() {
            m[x][y] = weights[idx[k]];
        }
        let ok = compiled.iter().all(|c| {
            let vals = c.terms.iter().map(|t| t.iter().map(|&(x, y)| m[x][y]).product::<i64>());
            match c.expect {
                Expectation::TotalWeight(w) => vals.sum::<i64>() == w,
                Expectation::NoCover => c.terms.is_empty(),
                Expectation::UniqueUnitCover => c.terms.len() == 1 && vals.sum::<i64>() == 1,
            }
        });
        if ok {
            return Some(arcs.iter().map(|&(x, y)| (x, y, m[x][y])).collect());
        }
        // Odometer, last arc fastest: lexicographic order.
        let mut k = free.len();
        loop {
            if k == 0 {
                return None;
            }
            k -= 1;
            idx[k] += 1;
            if idx[k] < weights.len() {
                break;
            }
            idx[k] = 0;
        }
    }
}

/// Arcs used by the XOR traversal paths; `b→a` and `c→c` are its only
/// `-1` arcs, so every other arc ranges over `{1, 2, 3}`.
pub const XOR_BASE: [(usize, usize); 8] = [
    (XOR_A, XOR_B),
    (XOR_B, XOR_A),
    (XOR_B, XOR_B),
    (XOR_A, XOR_D),
    (XOR_D, XOR_C),
    (XOR_C, XOR_D),
    (XOR_C, XOR_C),
    (XOR_C, XOR_B),
];

/// Plain arcs of the clause traversal path `c←0→a←c→b←a→0←b`.
pub const CLAUSE_BASE: [(usize, usize); 5] = [
    (CLAUSE_ZERO, CLAUSE_C),
    (CLAUSE_ZERO, CLAUSE_A),
    (CLAUSE_A, CLAUSE_ZERO),
    (CLAUSE_B, CLAUSE_ZERO),
    (CLAUSE_C, CLAUSE_B),
];

/// Derives the XOR, clause, and variable (1 to 3 occurrences) templates by
/// the widening search.
pub fn derive_gadget_weights() -> Result<DerivedGadgets> {
    let xor = widening_search(
        SearchSpace {
            base: &XOR_BASE,
            fixed: &[((XOR_B, XOR_A), -1), ((XOR_C, XOR_C), -1)],
            weights: &[1, 2, 3],
            max_added: 8,
        },
        &GadgetTemplate::xor(),
    )?;
    let clause = widening_search(
        SearchSpace {
            base: &CLAUSE_BASE,
            fixed: &[],
            weights: &[1, 2, 3],
            max_added: 8,
        },
        &GadgetTemplate::clause(),
    )?;
    let variable = (1..=3)
        .map(|t| {
            let probe = GadgetTemplate::variable(t);
            let base: Vec<(usize, usize)> = probe.arcs.iter().map(|&(x, y, _)| (x, y)).collect();
            widening_search(
                SearchSpace {
                    base: &base,
                    fixed: &[],
                    weights: &[1, 2, 3],
                    max_added: 0,
                },
                &probe,
            )
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(DerivedGadgets { xor, clause, variable })
}

/// The XOR search restricted to the eight path arcs, over the given weight
/// range (with `b→a`, `c→c` fixed to `-1`); `None` when nothing fits.
pub fn xor_unwidened_search(weights: &[i64]) -> Option<GadgetTemplate> {
    widening_search(
        SearchSpace {
            base: &XOR_BASE,
            fixed: &[((XOR_B, XOR_A), -1), ((XOR_C, XOR_C), -1)],
            weights,
            max_added: 0,
        },
        &GadgetTemplate::xor(),
    )
    .ok()
    .map(|d| d.template)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn closure<'a>(r: &'a [ClosureResult], name: &str) -> &'a ClosureResult {
        r.iter().find(|c| c.closure.description == name).unwrap()
    }

    #[test]
    fn xor_pass_through_weights() {
        let r = check_template(&GadgetTemplate::xor());
        assert!(r.iter().all(|c| c.ok));
        assert_eq!(closure(&r, "a in, d out").total, 2);
        assert_eq!(closure(&r, "a out, d in").total, 2);
        assert_eq!(closure(&r, "a in, d in").total, 0);
        assert_eq!(closure(&r, "closed").total, 0);
        assert_eq!(closure(&r, "a in, a out").total, 0);
    }

    #[test]
    fn clause_subset_uniqueness() {
        let r = check_template(&GadgetTemplate::clause());
        assert!(r.iter().all(|c| c.ok));
        assert!(closure(&r, "b→c, c→a, a→b").covers.is_empty());
        assert_eq!(closure(&r, "no dotted edge").covers, vec![1]);
    }

    #[test]
    fn variable_all_or_none() {
        for t in 1..=4 {
            let r = check_template(&GadgetTemplate::variable(t));
            assert!(r.iter().all(|c| c.ok), "t = {t}");
            let nonzero: usize = r.iter().map(|c| c.covers.len()).sum();
            assert_eq!(nonzero, 2);
        }
    }

    #[test]
    fn falsified_template_is_reported() {
        let mut bad = GadgetTemplate::xor();
        bad.arcs[3].2 = 1;
        let e = verify_gadget_properties(&[bad]).unwrap_err();
        assert!(matches!(e, Error::TemplateFalsified(_)));
    }

    #[test]
    fn degrees_fit_the_audit() {
        for t in standard_templates(&[1, 2, 3]) {
            let (i, o) = t.degrees_with_externals();
            assert!(i.iter().chain(o.iter()).all(|&d| d <= 4), "{:?}", t.kind);
        }
    }

    #[test]
    fn derivation_reproduces_frozen_templates() {
        let d = derive_gadget_weights().unwrap();
        assert_eq!(d.xor.template, GadgetTemplate::xor());
        assert_eq!(
            d.xor.widened_by,
            vec![(XOR_A, XOR_C), (XOR_B, XOR_C), (XOR_B, XOR_D), (XOR_D, XOR_B)]
        );
        assert_eq!(d.xor.levels.iter().filter(|l| !l.found).count(), 4);
        assert_eq!(d.clause.template, GadgetTemplate::clause());
        assert_eq!(d.clause.widened_by.len(), 4);
        for (t, v) in d.variable.iter().enumerate() {
            assert_eq!(v.template, GadgetTemplate::variable(t + 1));
            assert!(v.widened_by.is_empty());
        }
    }

    #[test]
    fn path_arcs_alone_admit_no_xor() {
        assert!(xor_unwidened_search(&[1, 2, 3]).is_none());
        assert!(xor_unwidened_search(&[-1, 1, 2, 3]).is_none());
    }
}
