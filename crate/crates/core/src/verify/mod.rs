//! Scenario checks: each claim is evaluated on concrete graphs
//! and recorded in a [`VerificationReport`].
//!
//! A claim `holds` when its conclusion is true, `fails` when the conclusion
//! is false although the hypothesis is met, and is `out-of-hypothesis`
//! otherwise. Some checks gate on the hypothesis first and report
//! `out-of-hypothesis` without looking at the conclusion.

mod suites;
mod theorems;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::bounds::{Bound, PolySpec, Warning};
use crate::enumerate::{ExtremalRecord, Flag};
use crate::error::{Error, Result};
use crate::families::FamilySpec;
use crate::graph::{Graph, VertexSet};
use crate::graph6;
use crate::motifs::{classify_neighborhood_components, ComponentClass, MotifKind};
use crate::reconstruct::extremal_vertices;
use crate::spectral::{spectral_radius, SpectralResult, DEFAULT_TOL};

pub use suites::{run_suite, Suite, SuiteOptions};
pub use theorems::{check_nosal, check_theorem, t13_ordering, Theorem};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Holds,
    Fails,
    OutOfHypothesis,
}

impl Status {
    pub fn judge(conclusion: bool, hypothesis: bool) -> Self {
        match (conclusion, hypothesis) {
            (true, _) => Status::Holds,
            (false, true) => Status::Fails,
            (false, false) => Status::OutOfHypothesis,
        }
    }

    /// Out-of-hypothesis whenever the hypothesis is unmet.
    pub fn gate(conclusion: bool, hypothesis: bool) -> Self {
        match (hypothesis, conclusion) {
            (false, _) => Status::OutOfHypothesis,
            (true, true) => Status::Holds,
            (true, false) => Status::Fails,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Claim {
    pub statement: String,
    pub status: Status,
    /// graph6 of the graph the claim was evaluated on.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rho_bracket: Option<[f64; 2]>,
    #[serde(default)]
    pub evidence: BTreeMap<String, Value>,
}

impl Claim {
    /// A claim about `subject`, carrying its graph6 and certified `ρ` bracket.
    pub fn about(statement: impl Into<String>, status: Status, subject: &Graph) -> Result<Self> {
        let r = spectral_radius(subject, DEFAULT_TOL)?;
        Ok(Self::with_result(statement, status, subject, &r))
    }

    pub fn with_result(statement: impl Into<String>, status: Status, subject: &Graph, r: &SpectralResult) -> Self {
        Claim {
            statement: statement.into(),
            status,
            witness: Some(graph6::encode(subject)),
            rho_bracket: Some(r.bracket),
            evidence: BTreeMap::new(),
        }
    }

    /// A claim with no graph attached; never `fails`.
    pub fn unattached(statement: impl Into<String>, status: Status) -> Self {
        assert_ne!(status, Status::Fails, "a failing claim needs a witness");
        Claim {
            statement: statement.into(),
            status,
            witness: None,
            rho_bracket: None,
            evidence: BTreeMap::new(),
        }
    }

    pub fn with(mut self, key: &str, value: impl Serialize) -> Self {
        self.evidence
            .insert(key.to_string(), serde_json::to_value(value).expect("serialisable"));
        self
    }

    /// Every failing claim carries a decodable witness and a bracket
    /// containing the witness's `ρ`.
    pub fn is_well_formed(&self) -> bool {
        if self.status != Status::Fails {
            return true;
        }
        let (Some(w), Some([lo, hi])) = (&self.witness, self.rho_bracket) else {
            return false;
        };
        match graph6::decode(w).and_then(|g| spectral_radius(&g, DEFAULT_TOL)) {
            Ok(r) => lo <= r.bracket[1] && r.bracket[0] <= hi,
            Err(_) => false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub suite: String,
    pub params: BTreeMap<String, Value>,
    pub claims: Vec<Claim>,
    pub warnings: Vec<Warning>,
}

impl VerificationReport {
    pub fn new(suite: impl Into<String>) -> Self {
        VerificationReport {
            suite: suite.into(),
            params: BTreeMap::new(),
            claims: Vec::new(),
            warnings: Vec::new(),
        }
    }

    pub fn param(mut self, key: &str, value: impl Serialize) -> Self {
        self.params
            .insert(key.to_string(), serde_json::to_value(value).expect("serialisable"));
        self
    }

    pub fn push(&mut self, claim: Claim) {
        self.claims.push(claim);
    }

    /// Appends the claims and warnings of `other`.
    pub fn absorb(&mut self, other: VerificationReport) {
        self.claims.extend(other.claims);
        for w in other.warnings {
            if !self.warnings.contains(&w) {
                self.warnings.push(w);
            }
        }
    }

    pub fn has_failures(&self) -> bool {
        self.claims.iter().any(|c| c.status == Status::Fails)
    }

    /// `fails` if any claim fails, else `holds` if any claim holds.
    pub fn status(&self) -> Status {
        if self.has_failures() {
            Status::Fails
        } else if self.claims.iter().any(|c| c.status == Status::Holds) {
            Status::Holds
        } else {
            Status::OutOfHypothesis
        }
    }

    pub fn count(&self, status: Status) -> usize {
        self.claims.iter().filter(|c| c.status == status).count()
    }

    pub fn is_well_formed(&self) -> bool {
        self.claims.iter().all(Claim::is_well_formed)
    }
}

fn require_connected(g: &Graph) -> Result<()> {
    if g.n() == 0 || !g.is_connected() {
        return Err(Error::Hypothesis("graph must be connected".into()));
    }
    Ok(())
}

fn inner_degree(g: &Graph, v: usize, s: &VertexSet) -> usize {
    s.count_in(g.row(v))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PerronResiduals {
    pub eq1: f64,
    pub eq2: f64,
    pub eq3: f64,
}

impl PerronResiduals {
    pub fn max(&self) -> f64 {
        self.eq1.max(self.eq2).max(self.eq3)
    }
}

/// Residuals of the three local eigen-identities at `u`, evaluated with the
/// certified `ρ` and the Perron vector.
pub fn check_perron_identities(g: &Graph, u: usize) -> Result<PerronResiduals> {
    g.strata(u)?;
    require_connected(g)?;
    let r = spectral_radius(g, DEFAULT_TOL)?;
    perron_identities(g, u, r.rho, &r.perron)
}

/// The identities for an arbitrary pair `(ρ, x)`.
pub fn perron_identities(g: &Graph, u: usize, rho: f64, x: &[f64]) -> Result<PerronResiduals> {
    let s = g.strata(u)?;
    let nb = &s.neighbors;
    let plus = s.n_plus();
    let dn = |v: usize| inner_degree(g, v, nb) as f64;
    let sum_n0: f64 = s.n0().iter().map(|v| x[v]).sum();
    let sum_plus: f64 = plus.iter().map(|v| x[v]).sum();
    let d = g.degree(u) as f64;
    let walks_plus: f64 = plus.iter().map(|v| dn(v) * x[v]).sum();
    let walks_n2: f64 = s.n2.iter().map(|w| dn(w) * x[w]).sum();
    let excess_plus: f64 = plus.iter().map(|v| (dn(v) - 1.0) * x[v]).sum();
    let xu = x[u];
    Ok(PerronResiduals {
        eq1: (rho * xu - sum_n0 - sum_plus).abs(),
        eq2: (rho * rho * xu - d * xu - walks_plus - walks_n2).abs(),
        eq3: ((rho * rho - rho) * xu - d * xu - excess_plus - walks_n2 + sum_n0).abs(),
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ZetaValue {
    pub component: Vec<usize>,
    pub value: f64,
}

/// `ζ(L) = Σ_{v∈L} (d_L(v) − 1) x_v` for every non-trivial component `L`
/// of `G[N_+(u)]`.
pub fn zeta_values(g: &Graph, u: usize, x: &[f64]) -> Result<Vec<ZetaValue>> {
    let s = g.strata(u)?;
    let plus = s.n_plus().to_vec();
    let h = g.induced(&plus);
    Ok(h.components()
        .into_iter()
        .filter(|c| c.len() > 1)
        .map(|c| {
            let value = c
                .iter()
                .map(|&i| (h.degree(i) as f64 - 1.0) * x[plus[i]])
                .sum();
            ZetaValue {
                component: c.iter().map(|&i| plus[i]).collect(),
                value,
            }
        })
        .collect())
}

/// `Σ_{v∈N_+(u)} (d_{N(u)}(v) − 1) x_v`.
pub fn excess_weight(g: &Graph, u: usize, x: &[f64]) -> Result<f64> {
    let s = g.strata(u)?;
    Ok(s.n_plus()
        .iter()
        .map(|v| (inner_degree(g, v, &s.neighbors) as f64 - 1.0) * x[v])
        .sum())
}

/// The terms of the chain
/// `e(W) ≥ ½ Σ_{w∈N²} d_W(w) ≥ ½ |N²| ≥ ½ Σ_{u∈N_1} d_W(u)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct EdgeChain {
    pub e_w: f64,
    pub half_n2_degrees: f64,
    pub half_n2: f64,
    pub half_n1_degrees: f64,
    /// Vertices of `N²` with no neighbour in `W`; the middle step needs none.
    pub n2_isolated_in_w: usize,
}

impl EdgeChain {
    pub fn outer_holds(&self) -> bool {
        self.e_w >= self.half_n1_degrees
    }

    pub fn each_step_holds(&self) -> bool {
        self.e_w >= self.half_n2_degrees
            && self.half_n2_degrees >= self.half_n2
            && self.half_n2 >= self.half_n1_degrees
    }
}

pub fn edge_chain(g: &Graph, u: usize) -> Result<EdgeChain> {
    let s = g.strata(u)?;
    let dw = |v: usize| inner_degree(g, v, &s.w) as f64;
    Ok(EdgeChain {
        e_w: g.edges_within(&s.w) as f64,
        half_n2_degrees: s.n2.iter().map(dw).sum::<f64>() / 2.0,
        half_n2: s.n2.len() as f64 / 2.0,
        half_n1_degrees: s.n1().iter().map(dw).sum::<f64>() / 2.0,
        n2_isolated_in_w: s.n2.iter().filter(|&w| dw(w) == 0.0).count(),
    })
}

/// `ρ² ≤ m − (2/3)(e(N_1(u*)) + e(W))` for connected `C_4`-free graphs with
/// `ρ ≥ 7`, compared exactly.
pub fn check_eq8(g: &Graph) -> Result<Claim> {
    let statement = "rho^2 <= m - 2/3 (e(N1(u*)) + e(W))";
    let connected = g.n() > 0 && g.is_connected();
    let c4_free = Flag::C4Free.accepts(g);
    let r = spectral_radius(g, DEFAULT_TOL)?;
    let big = r.root().cmp_f64(7.0).is_ge();
    let hypothesis = connected && c4_free && big;
    let s = g.strata(r.ustar)?;
    let e_n1 = g.edges_within(s.n1());
    let e_w = g.edges_within(&s.w);
    // 3 rho^2 <= 3m - 2 (e_n1 + e_w)
    let rhs3 = 3 * g.m() as i64 - 2 * (e_n1 + e_w) as i64;
    let conclusion = rhs3 >= 0 && {
        let bound = crate::algebraic::CertifiedRoot::largest(
            &crate::poly::IntPoly::from_desc(&[3, 0, -rhs3]),
            DEFAULT_TOL,
        )?;
        r.root().cmp_root(&bound).is_le()
    };
    Ok(Claim::with_result(statement, Status::gate(conclusion, hypothesis), g, &r)
        .with("ustar", r.ustar)
        .with("e_n1", e_n1)
        .with("e_w", e_w)
        .with("rho_squared", r.rho * r.rho)
        .with("rhs", rhs3 as f64 / 3.0)
        .with("connected", connected)
        .with("c4_free", c4_free)
        .with("rho_at_least_7", big))
}

/// The five inequalities of the neighbourhood lemma for graphs with
/// `ρ > (1 + √(4m − 5)) / 2`. Inequalities that need a vertex with
/// `x_v < (1 − β) x_{u*}` are evaluated at every such vertex; the set form
/// uses `s`, which must lie in `N_+(u*)` and satisfy the same bound.
pub fn check_lemma44(g: &Graph, beta: f64, s: &VertexSet) -> Result<Vec<Claim>> {
    if !(beta > 0.0 && beta < 1.0) {
        return Err(Error::Domain(format!("beta must lie in (0,1), got {beta}")));
    }
    let r = spectral_radius(g, DEFAULT_TOL)?;
    let m = g.m() as i64;
    let connected = g.n() > 0 && g.is_connected();
    let above = m >= 2 && r.root().cmp_root(&Bound::Golden45(m).certified(DEFAULT_TOL)?).is_gt();
    let hypothesis = connected && above;
    let claim = |statement: &str, ok: bool, hyp: bool| {
        Claim::with_result(statement, Status::gate(ok, hyp), g, &r)
            .with("connected", connected)
            .with("rho_above_threshold", above)
    };
    let u = r.ustar;
    let st = g.strata(u)?;
    let x = &r.perron;
    let xu = x[u];
    let e_w = g.edges_within(&st.w) as f64;
    let e_n = g.edges_within(&st.neighbors) as f64;
    let plus = st.n_plus();
    let base = e_n - plus.len() as f64 + 1.5;
    let dn = |v: usize| inner_degree(g, v, &st.neighbors) as f64;
    let small = |v: usize| x[v] < (1.0 - beta) * xu;
    let scale = xu.max(1.0) * 1e-12;

    let mut claims = Vec::new();
    let lhs10 = excess_weight(g, u, x)?;
    let rhs10 = (e_w + e_n - 1.5) * xu;
    claims.push(
        claim(
            "sum_{N+}(d_N(v)-1)x_v > (e(W)+e(N(u*))-3/2) x_u*",
            lhs10 - rhs10 > scale,
            hypothesis,
        )
        .with("lhs", lhs10)
        .with("rhs", rhs10),
    );
    claims.push(
        claim("e(W) < e(N(u*)) - |N+(u*)| + 3/2", e_w < base, hypothesis)
            .with("e_w", e_w)
            .with("bound", base),
    );
    for v in st.n2.iter().filter(|&v| small(v)) {
        let bound = base - beta * dn(v);
        claims.push(
            claim(
                &format!("e(W) < e(N(u*)) - |N+(u*)| + 3/2 - beta d_N(v) at v={v} in N2"),
                e_w < bound,
                hypothesis,
            )
            .with("e_w", e_w)
            .with("bound", bound)
            .with("beta", beta),
        );
    }
    for v in plus.iter().filter(|&v| small(v)) {
        let bound = base - beta * (dn(v) - 1.0);
        claims.push(
            claim(
                &format!("e(W) < e(N(u*)) - |N+(u*)| + 3/2 - beta (d_N(v)-1) at v={v} in N+"),
                e_w < bound,
                hypothesis,
            )
            .with("e_w", e_w)
            .with("bound", bound)
            .with("beta", beta),
        );
    }
    let set_ok = !s.is_empty() && s.is_subset(&plus) && s.iter().all(small);
    let bound14 = base - beta * s.iter().map(|v| dn(v) - 1.0).sum::<f64>();
    claims.push(
        claim(
            "e(W) < e(N(u*)) - |N+(u*)| + 3/2 - beta sum_S (d_N(v)-1)",
            e_w < bound14,
            hypothesis && set_ok,
        )
        .with("e_w", e_w)
        .with("bound", bound14)
        .with("s", s.to_vec())
        .with("s_admissible", set_ok)
        .with("beta", beta),
    );
    Ok(claims)
}

fn flag_for(kind: MotifKind) -> Option<Flag> {
    match kind {
        MotifKind::C3 => Some(Flag::C3Free),
        MotifKind::C4 => Some(Flag::C4Free),
        MotifKind::CtPlus(4) => Some(Flag::C4PlusFree),
        MotifKind::CtPlus(5) => Some(Flag::C5PlusFree),
        _ => None,
    }
}

/// Whether `record` certifies `g` as a maximiser over exactly the
/// `F`-free graphs of its size.
fn certified_for(g: &Graph, record: &ExtremalRecord, forbidden: MotifKind) -> Result<bool> {
    if !record.covers(g) {
        return Err(Error::Hypothesis(
            "graph is not among the certified maximisers of the record".into(),
        ));
    }
    let flag = flag_for(forbidden).ok_or_else(|| {
        Error::Hypothesis(format!("{forbidden} has no enumeration filter"))
    })?;
    let flags = record.filter().flags();
    if !flags.contains(&flag) {
        return Err(Error::Hypothesis(format!(
            "record filter {} does not forbid {forbidden}",
            record.filter()
        )));
    }
    Ok(flags == [flag])
}

/// Connectivity, cut-vertex and degree-two structure of a certified
/// maximiser. When the record's class is narrower than all `F`-free graphs,
/// false conclusions are reported out-of-hypothesis.
pub fn check_lemma41(gstar: &Graph, record: &ExtremalRecord, forbidden: MotifKind) -> Result<Vec<Claim>> {
    let exact_class = certified_for(gstar, record, forbidden)?;
    let r = spectral_radius(gstar, DEFAULT_TOL)?;
    let ustars = extremal_vertices(&r.perron);
    let claim = |statement: &str, ok: bool, hyp: bool| {
        Claim::with_result(statement, Status::judge(ok, hyp), gstar, &r)
            .with("extremal_vertices", &ustars)
            .with("class", record.filter().to_string())
    };
    let mut claims = vec![claim("G* is connected", gstar.is_connected(), exact_class)];

    let cuts = gstar.cut_vertices();
    let mut ok2 = true;
    let mut low_degree = Vec::new();
    for &u in &ustars {
        let s = gstar.strata(u)?;
        ok2 &= cuts.iter().all(|&c| c == u);
        for w in s.w.iter().filter(|&w| gstar.degree(w) < 2) {
            ok2 = false;
            low_degree.push(w);
        }
    }
    claims.push(
        claim(
            "no cut vertex outside u*, and d(w) >= 2 for w outside N[u*]",
            ok2,
            exact_class,
        )
        .with("cut_vertices", &cuts)
        .with("low_degree", &low_degree),
    );

    let deg2: Vec<usize> = (0..gstar.n()).filter(|&v| gstar.degree(v) == 2).collect();
    let mut bad_pairs = Vec::new();
    for (i, &a) in deg2.iter().enumerate() {
        for &b in &deg2[i + 1..] {
            if !gstar.has_edge(a, b) && gstar.neighbors(a) != gstar.neighbors(b) {
                bad_pairs.push((a, b));
            }
        }
    }
    claims.push(
        claim(
            "non-adjacent degree-two vertices have equal neighbourhoods",
            bad_pairs.is_empty(),
            exact_class && !forbidden.contains_c4(),
        )
        .with("violating_pairs", &bad_pairs)
        .with("forbidden_contains_c4", forbidden.contains_c4()),
    );
    Ok(claims)
}

/// Structure of a `C_5^+`-free maximiser of even size: `e(W) = 0`,
/// `W = ∅` and `G[N_+(u*)]` a single star `K_{1,r}` with `r ≥ 3`. When the
/// graph has this shape with `t = |N_0(u*)| ≠ 1`, it is also compared with
/// the `t = 1` graph of the same size.
pub fn check_lemma46_structure(g: &Graph, record: Option<&ExtremalRecord>) -> Result<Vec<Claim>> {
    let certified = match record {
        Some(rec) => certified_for(g, rec, MotifKind::CtPlus(5))?,
        None => false,
    };
    let r = spectral_radius(g, DEFAULT_TOL)?;
    let m = g.m();
    let above = m >= 2
        && r
            .root()
            .cmp_root(&Bound::Golden45(m as i64).certified(DEFAULT_TOL)?)
            .is_gt();
    let hypothesis = certified && m.is_multiple_of(2) && above;
    let u = r.ustar;
    let s = g.strata(u)?;
    let e_w = g.edges_within(&s.w);
    let nontrivial: Vec<(Vec<usize>, ComponentClass)> = classify_neighborhood_components(g, u)
        .into_iter()
        .filter(|(c, _)| c.len() > 1)
        .collect();
    let star = match nontrivial.as_slice() {
        [(_, ComponentClass::Star(r))] if *r >= 3 => Some(*r),
        _ => None,
    };
    let claim = |statement: &str, ok: bool| {
        Claim::with_result(statement, Status::judge(ok, hypothesis), g, &r)
            .with("ustar", u)
            .with("extremal_certified", certified)
            .with("rho_above_threshold", above)
    };
    let classes: Vec<&ComponentClass> = nontrivial.iter().map(|(_, c)| c).collect();
    let mut claims = vec![
        claim("e(W) = 0", e_w == 0).with("e_w", e_w),
        claim("W is empty", s.w.is_empty()).with("w", s.w.to_vec()),
        claim("G[N+(u*)] is a single star K_{1,r}, r >= 3", star.is_some())
            .with("components", &classes),
    ];
    if let (Some(leaves), true) = (star, s.w.is_empty()) {
        let t = s.n0().len();
        if t != 1 && m.is_multiple_of(2) && m >= 4 {
            let best = FamilySpec::G14((m - 2) / 2, 1).build()?;
            let rb = spectral_radius(&best, DEFAULT_TOL)?;
            let smaller = r.cmp_rho(&rb).is_lt();
            let mut c = Claim::with_result(
                format!("rho(G14({leaves},{t})) < rho(G14({},1)) at m={m}", (m - 2) / 2),
                Status::judge(smaller, t >= 1),
                g,
                &r,
            )
            .with("rho_t1", rb.rho)
            .with("bracket_t1", rb.bracket);
            if t >= 1 && (m - t - 1).is_multiple_of(2) {
                let diff = crate::bounds::combine(
                    &PolySpec::Lemma47f(m as i64, t as i64),
                    &PolySpec::Lemma47f(m as i64, 1),
                    crate::bounds::CombineOp::Sub,
                )?;
                c = c.with("f_t_minus_f_1", diff.result.to_string());
            }
            claims.push(c);
        }
    }
    Ok(claims)
}

pub(crate) fn rho_claim_json(r: &SpectralResult) -> Value {
    json!({ "rho": r.rho, "bracket": r.bracket })
}
