//! Monotone 2-CNF → directed weighted graph whose total cycle-cover weight
//! is `2^(3 mu) (2^nu + s)` (modulo `2^(kappa+1) + 1` in chain mode).

use std::fmt;
use std::str::FromStr;

use num::{BigInt, Integer, One, Signed, Zero};
use serde::Serialize;

use super::cnf::MonotoneTwoCnf;
use super::gadgets::{GadgetKind, GadgetTemplate, CLAUSE_A, CLAUSE_B, CLAUSE_C, CLAUSE_ZERO, XOR_A, XOR_D};
use super::hamilton::{build_hamiltonian_certificate, AlternatingPath};
use crate::error::{Error, Result};
use crate::graphs::io::{directed_to_json, GraphJson};
use crate::graphs::{bipartite_double, DirectedWeightedGraph};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    /// XOR gadgets keep their `-1` arcs.
    KeepMinusOne,
    /// Every `-1` arc becomes a chain of `kappa = 6 mu - 1` vertices.
    ChainReplaced,
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "keep" | "keep_minus_one" | "keep-minus-one" => Ok(Mode::KeepMinusOne),
            "chain" | "chain_replaced" | "chain-replaced" => Ok(Mode::ChainReplaced),
            _ => Err(Error::InvalidInput(format!("unknown mode {s:?} (keep or chain)"))),
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::KeepMinusOne => "keep",
            Mode::ChainReplaced => "chain",
        })
    }
}

/// Which dotted slot of a clause gadget.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Slot {
    /// `b→c`, always the shared variable.
    Tau,
    /// `c→a`.
    First,
    /// `a→b`.
    Second,
}

impl Slot {
    pub const ALL: [Slot; 3] = [Slot::Tau, Slot::First, Slot::Second];

    fn index(self) -> usize {
        self as usize
    }

    fn dotted(self) -> (usize, usize) {
        match self {
            Slot::Tau => (CLAUSE_B, CLAUSE_C),
            Slot::First => (CLAUSE_C, CLAUSE_A),
            Slot::Second => (CLAUSE_A, CLAUSE_B),
        }
    }
}

/// Which side's dotted edge enters the XOR gadget at port `a`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Orientation {
    VariableIntoA,
    ClauseIntoA,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GadgetRole {
    /// `variable == 0` is the shared variable.
    Variable {
        variable: usize,
        occurrences: usize,
    },
    Clause {
        clause: usize,
        literals: [usize; 3],
    },
    Xor {
        pairing: usize,
        orientation: Orientation,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GadgetEntry {
    pub role: GadgetRole,
    /// Global vertex of each template vertex.
    pub vertices: Vec<usize>,
    pub labels: Vec<String>,
}

/// One dotted-edge pair and the XOR gadget that replaced it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Pairing {
    /// Registry index of the XOR gadget.
    pub xor: usize,
    pub variable: usize,
    /// The pair uses the variable gadget's dotted edge `u_{k-1}→u_k`.
    pub occurrence: usize,
    pub clause: usize,
    pub slot: Slot,
    /// The two replaced dotted edges, as global vertex pairs.
    pub clause_edge: (usize, usize),
    pub variable_edge: (usize, usize),
    pub orientation: Orientation,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Chain {
    pub replaced: (usize, usize),
    pub vertices: Vec<usize>,
}

/// Global vertex ids of every gadget, for the certificate builder.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub(crate) struct Layout {
    /// `T_0 .. T_mu`.
    pub tau: Vec<usize>,
    /// `u_0 .. u_t` per variable (index `x - 1`).
    pub vars: Vec<Vec<usize>>,
    /// `[0, a, b, c]` per clause.
    pub clauses: Vec<[usize; 4]>,
    /// `[a, b, c, d]` per pairing.
    pub xors: Vec<[usize; 4]>,
    /// Pairing index per clause slot.
    pub clause_xor: Vec<[usize; 3]>,
    /// Pairing index per occurrence `k = 1..t` (stored at `k - 1`).
    pub var_occ: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ReductionOutput {
    #[serde(serialize_with = "ser_graph")]
    pub gadget_graph: DirectedWeightedGraph,
    pub mode: Mode,
    pub kappa: Option<usize>,
    pub mu: usize,
    /// Variables after stripping.
    pub nu: usize,
    pub stripped: usize,
    pub registry: Vec<GadgetEntry>,
    pub pairings: Vec<Pairing>,
    pub chains: Vec<Chain>,
    pub hamiltonian_certificate: AlternatingPath,
    #[serde(skip)]
    pub(crate) layout: Layout,
    /// Vertex count before chain replacement.
    #[serde(skip)]
    pub(crate) core_vertices: usize,
}

fn ser_graph<S: serde::Serializer>(g: &DirectedWeightedGraph, s: S) -> std::result::Result<S::Ok, S::Error> {
    let j: GraphJson = directed_to_json(g);
    j.serialize(s)
}

impl ReductionOutput {
    /// `s` from the total cycle-cover weight of [`Self::gadget_graph`].
    pub fn extract(&self, w: &BigInt) -> Result<BigInt> {
        extract_sat_count(w, self.mu, self.nu, self.kappa, self.stripped)
    }

    /// Expected total weight for a formula with `s` satisfying assignments
    /// (before the modular reduction of chain mode).
    pub fn expected_weight(&self, s_stripped: &BigInt) -> BigInt {
        (BigInt::one() << (3 * self.mu)) * ((BigInt::one() << self.nu) + s_stripped)
    }

    pub fn degree_audit(&self) -> DegreeAudit {
        degree_audit(&self.gadget_graph)
    }

    pub fn graph_json(&self) -> GraphJson {
        directed_to_json(&self.gadget_graph)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeAudit {
    pub max_in: usize,
    pub max_out: usize,
    pub bipartite_max_degree: usize,
}

impl DegreeAudit {
    pub fn passes(&self) -> bool {
        self.max_in <= 4 && self.max_out <= 4 && self.bipartite_max_degree <= 5
    }
}

pub fn degree_audit(g: &DirectedWeightedGraph) -> DegreeAudit {
    let (max_in, max_out) = g.max_in_out_degree();
    DegreeAudit {
        max_in,
        max_out,
        bipartite_max_degree: bipartite_double(g).max_degree(),
    }
}

/// `s` from `W`: reduce modulo `2^(kappa+1) + 1` in chain mode, divide by
/// `2^(3 mu)` exactly, subtract `2^nu`, and restore the stripped variables.
pub fn extract_sat_count(w: &BigInt, mu: usize, nu: usize, kappa: Option<usize>, stripped: usize) -> Result<BigInt> {
    let w = match kappa {
        Some(k) => w.mod_floor(&((BigInt::one() << (k + 1)) + 1)),
        None => w.clone(),
    };
    let scale = BigInt::one() << (3 * mu);
    let (s_prime, rem) = w.div_rem(&scale);
    if !rem.is_zero() {
        return Err(Error::Inconsistent(format!(
            "cycle-cover weight {w} is not a multiple of 2^{}",
            3 * mu
        )));
    }
    let s = s_prime - (BigInt::one() << nu);
    if s.is_negative() || s > (BigInt::one() << nu) {
        return Err(Error::Inconsistent(format!("extracted count {s} outside [0, 2^{nu}]")));
    }
    Ok(s << stripped)
}

struct Builder {
    g: DirectedWeightedGraph,
    registry: Vec<GadgetEntry>,
}

impl Builder {
    fn place(&mut self, t: &GadgetTemplate, role: GadgetRole) -> Result<Vec<usize>> {
        let ids: Vec<usize> = (0..t.n()).map(|_| self.g.add_vertex()).collect();
        for &(x, y, w) in &t.arcs {
            self.g.add_arc(ids[x], ids[y], w)?;
        }
        self.registry.push(GadgetEntry {
            role,
            vertices: ids.clone(),
            labels: t.labels.clone(),
        });
        Ok(ids)
    }
}

/// Builds the reduction graph for `phi` (unused variables are stripped first
/// and accounted for in [`ReductionOutput::extract`]), together with its
/// alternating Hamiltonian path certificate.
pub fn compile(phi: &MonotoneTwoCnf, mode: Mode) -> Result<ReductionOutput> {
    let (phi, stripped) = phi.strip_unused();
    let mu = phi.mu();
    let nu = phi.nu();
    let mut b = Builder {
        g: DirectedWeightedGraph::new(0),
        registry: Vec::new(),
    };
    let mut layout = Layout::default();
    let mut pairings = Vec::new();

    if mu == 0 {
        // Only the shared variable, free: its gadget with the dotted edge kept
        // as a plain arc has exactly two covers.
        let t = GadgetTemplate::variable(1);
        let ids = b.place(
            &t,
            GadgetRole::Variable {
                variable: 0,
                occurrences: 0,
            },
        )?;
        let (x, y) = t.dotted[0];
        b.g.add_arc(ids[x], ids[y], 1)?;
        layout.tau = ids;
    } else {
        // Occurrence lists: (clause, slot) in clause order.
        let mut occ: Vec<Vec<(usize, Slot)>> = vec![Vec::new(); nu];
        for (j, &(x, y)) in phi.clauses().iter().enumerate() {
            occ[x - 1].push((j, Slot::First));
            occ[y - 1].push((j, Slot::Second));
        }
        layout.tau = b.place(
            &GadgetTemplate::variable(mu),
            GadgetRole::Variable {
                variable: 0,
                occurrences: mu,
            },
        )?;
        for (j, &(x, y)) in phi.clauses().iter().enumerate() {
            let ids = b.place(
                &GadgetTemplate::clause(),
                GadgetRole::Clause {
                    clause: j,
                    literals: [0, x, y],
                },
            )?;
            layout
                .clauses
                .push([ids[CLAUSE_ZERO], ids[CLAUSE_A], ids[CLAUSE_B], ids[CLAUSE_C]]);
        }
        for (x, o) in occ.iter().enumerate() {
            let ids = b.place(
                &GadgetTemplate::variable(o.len()),
                GadgetRole::Variable {
                    variable: x + 1,
                    occurrences: o.len(),
                },
            )?;
            layout.vars.push(ids);
        }
        layout.clause_xor = vec![[usize::MAX; 3]; mu];
        layout.var_occ = occ.iter().map(|o| vec![usize::MAX; o.len()]).collect();
        // Pair list: every clause's tau slot with T_{j}→T_{j+1}, then every
        // literal slot with the next occurrence on its variable's chain.
        let mut pairs: Vec<(usize, usize, usize, Slot)> = (0..mu).map(|j| (0, j + 1, j, Slot::Tau)).collect();
        for (x, o) in occ.iter().enumerate() {
            for (k, &(j, slot)) in o.iter().enumerate() {
                pairs.push((x + 1, k + 1, j, slot));
            }
        }
        let xor = GadgetTemplate::xor();
        for (p, &(var, k, j, slot)) in pairs.iter().enumerate() {
            let chain = if var == 0 { &layout.tau } else { &layout.vars[var - 1] };
            let variable_edge = (chain[k - 1], chain[k]);
            let (cx, cy) = slot.dotted();
            let cl = layout.clauses[j];
            let clause_edge = (cl[cx], cl[cy]);
            let orientation = if var == 0 {
                Orientation::VariableIntoA
            } else {
                Orientation::ClauseIntoA
            };
            let ids = b.place(
                &xor,
                GadgetRole::Xor {
                    pairing: p,
                    orientation,
                },
            )?;
            let (a, d) = (ids[XOR_A], ids[XOR_D]);
            // The edge entering at `a` leaves at `d`; the other enters at `d`
            // and leaves at `a`.
            let (into_a, into_d) = match orientation {
                Orientation::VariableIntoA => (variable_edge, clause_edge),
                Orientation::ClauseIntoA => (clause_edge, variable_edge),
            };
            b.g.add_arc(into_a.0, a, 1)?;
            b.g.add_arc(d, into_a.1, 1)?;
            b.g.add_arc(into_d.0, d, 1)?;
            b.g.add_arc(a, into_d.1, 1)?;
            layout.xors.push([ids[0], ids[1], ids[2], ids[3]]);
            layout.clause_xor[j][slot.index()] = p;
            if var > 0 {
                layout.var_occ[var - 1][k - 1] = p;
            }
            pairings.push(Pairing {
                xor: b.registry.len() - 1,
                variable: var,
                occurrence: k,
                clause: j,
                slot,
                clause_edge,
                variable_edge,
                orientation,
            });
        }
    }

    let core_vertices = b.g.n();
    let (kappa, chains) = match mode {
        Mode::KeepMinusOne => (None, Vec::new()),
        Mode::ChainReplaced => {
            let kappa = (6 * mu).max(2) - 1;
            let chains = replace_negative_arcs(&mut b.g, kappa)?;
            (Some(kappa), chains)
        }
    };
    let mut out = ReductionOutput {
        gadget_graph: b.g,
        mode,
        kappa,
        mu,
        nu,
        stripped,
        registry: b.registry,
        pairings,
        chains,
        hamiltonian_certificate: AlternatingPath::default(),
        layout,
        core_vertices,
    };
    out.hamiltonian_certificate = build_hamiltonian_certificate(&out)?;
    Ok(out)
}

/// Replaces every `-1` arc `x→y` by `x→w_1→..→w_kappa→y` with weight-2 arcs
/// and weight-1 self-loops on the new vertices. A cover through the chain
/// gains `2^(kappa+1) ≡ -1 (mod 2^(kappa+1) + 1)`; a cover avoiding it puts
/// every chain vertex on its loop.
pub fn replace_negative_arcs(g: &mut DirectedWeightedGraph, kappa: usize) -> Result<Vec<Chain>> {
    if let Some((x, y, w)) = g.arcs().find(|&(_, _, w)| w < 0 && w != -1) {
        return Err(Error::InvalidInput(format!(
            "arc ({x}, {y}) has weight {w}; only -1 can be chained"
        )));
    }
    let negative: Vec<(usize, usize)> = g.arcs().filter(|&(_, _, w)| w == -1).map(|(x, y, _)| (x, y)).collect();
    replace_arcs_with_chains(g, &negative, kappa)
}

/// Chain replacement of the listed arcs, whatever their weight.
pub fn replace_arcs_with_chains(
    g: &mut DirectedWeightedGraph,
    arcs: &[(usize, usize)],
    kappa: usize,
) -> Result<Vec<Chain>> {
    if kappa == 0 {
        return Err(Error::InvalidInput("chain length must be positive".into()));
    }
    let mut chains = Vec::new();
    for &(x, y) in arcs {
        if g.remove_arc(x, y).is_none() {
            return Err(Error::InvalidInput(format!("no arc ({x}, {y}) to replace")));
        }
        let ws: Vec<usize> = (0..kappa).map(|_| g.add_vertex()).collect();
        let mut prev = x;
        for &w in &ws {
            g.add_arc(prev, w, 2)?;
            g.add_arc(w, w, 1)?;
            prev = w;
        }
        g.add_arc(prev, y, 2)?;
        chains.push(Chain {
            replaced: (x, y),
            vertices: ws,
        });
    }
    Ok(chains)
}

/// The templates this output instantiates.
pub fn templates_of(out: &ReductionOutput) -> Vec<GadgetTemplate> {
    let counts: Vec<usize> = out
        .registry
        .iter()
        .filter_map(|e| match e.role {
            GadgetRole::Variable { occurrences, .. } => Some(occurrences),
            _ => None,
        })
        .collect();
    let mut ts = super::gadgets::standard_templates(&counts);
    if out.mu == 0 {
        ts.retain(|t| t.kind == GadgetKind::Variable);
    }
    ts
}
