use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::theorems::{check_nosal, t13_ordering, theorem_report, Theorem};
use super::{
    check_eq8, check_lemma41, check_lemma44, check_lemma46_structure, check_perron_identities, Claim, Status,
    VerificationReport,
};
use crate::bounds::{Bound, PolySpec};
use crate::enumerate::{enumerate_classes, EnumFilter, EnumOptions, Flag};
use crate::error::{Error, Result};
use crate::families::FamilySpec;
use crate::graph::{Graph, VertexSet};
use crate::motifs::MotifKind;
use crate::spectral::{char_poly, spectral_radius, DEFAULT_TOL};

/// Perron residual allowed by the identity checks.
pub const IDENTITY_TOL: f64 = 1e-8;

/// Largest size at which the perron and eq8 suites enumerate every class
/// instead of using the named families alone.
const ENUMERATE_UP_TO: usize = 9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Suite {
    Nosal,
    Perron,
    Eq8,
    Lemma22,
    Lemma43,
    Lemma44,
    T13Order,
    T11,
    T12,
    T13,
    T14,
    T16,
}

impl Suite {
    pub const ALL: [Suite; 12] = [
        Suite::Nosal,
        Suite::Perron,
        Suite::Eq8,
        Suite::Lemma22,
        Suite::Lemma43,
        Suite::Lemma44,
        Suite::T13Order,
        Suite::T11,
        Suite::T12,
        Suite::T13,
        Suite::T14,
        Suite::T16,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Nosal => "nosal",
            Suite::Perron => "perron",
            Suite::Eq8 => "eq8",
            Suite::Lemma22 => "lemma22",
            Suite::Lemma43 => "lemma43",
            Suite::Lemma44 => "lemma44",
            Suite::T13Order => "t13-order",
            Suite::T11 => "t11",
            Suite::T12 => "t12",
            Suite::T13 => "t13",
            Suite::T14 => "t14",
            Suite::T16 => "t16",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.to_ascii_lowercase().replace('_', "-");
        Suite::ALL
            .into_iter()
            .find(|t| t.name() == key)
            .ok_or_else(|| Error::Domain(format!("unknown suite '{s}'")))
    }
}

#[derive(Clone, Debug, Default)]
pub struct SuiteOptions {
    pub enumeration: EnumOptions,
}

/// Runs `suite` at every size in `ms` (in parallel) and merges the reports
/// in the order of `ms`.
pub fn run_suite(suite: Suite, ms: &[usize], opts: &SuiteOptions) -> Result<VerificationReport> {
    let parts: Vec<VerificationReport> = ms
        .par_iter()
        .map(|&m| suite_at(suite, m, opts))
        .collect::<Result<_>>()?;
    let mut report = VerificationReport::new(suite.name()).param("m", ms);
    for p in parts {
        report.absorb(p);
    }
    Ok(report)
}

fn suite_at(suite: Suite, m: usize, opts: &SuiteOptions) -> Result<VerificationReport> {
    if m == 0 {
        return Err(Error::Domain("m must be positive".into()));
    }
    let e = &opts.enumeration;
    match suite {
        Suite::Nosal => check_nosal(m, e),
        Suite::Perron => perron_suite(m, e),
        Suite::Eq8 => closed_walk_suite(m, e),
        Suite::Lemma22 => cubic_suite(m),
        Suite::Lemma43 => minus_family_suite(m),
        Suite::Lemma44 => small_vertices_suite(m),
        Suite::T13Order => {
            let mut r = VerificationReport::new("t13-order").param("m", m);
            r.claims = t13_ordering(m)?;
            Ok(r)
        }
        Suite::T11 => Ok(theorem_report(Theorem::T11, m, e)?.0),
        Suite::T12 => Ok(theorem_report(Theorem::T12, m, e)?.0),
        Suite::T13 => Ok(theorem_report(Theorem::T13, m, e)?.0),
        Suite::T14 => {
            let (mut report, ext) = theorem_report(Theorem::T14i, m, e)?;
            report.absorb(theorem_report(Theorem::T14ii, m, e)?.0);
            let g = crate::graph6::decode(&ext.graph)?;
            for c in check_lemma41(&g, &ext.record, MotifKind::CtPlus(4))? {
                report.push(c);
            }
            Ok(report)
        }
        Suite::T16 => {
            let (mut report, _) = theorem_report(Theorem::T15, m, e)?;
            let (r16, ext) = theorem_report(Theorem::T16, m, e)?;
            report.absorb(r16);
            let g = crate::graph6::decode(&ext.graph)?;
            for c in check_lemma41(&g, &ext.record, MotifKind::CtPlus(5))? {
                report.push(c);
            }
            for c in check_lemma46_structure(&g, Some(&ext.record))? {
                report.push(c);
            }
            Ok(report)
        }
    }
}

/// One claim standing for many: the first failure if any, else the first
/// holding claim, else the first claim, with per-status counts.
fn aggregate(statement: String, claims: Vec<Claim>) -> Option<Claim> {
    let pick = claims
        .iter()
        .position(|c| c.status == Status::Fails)
        .or_else(|| claims.iter().position(|c| c.status == Status::Holds))
        .or(if claims.is_empty() { None } else { Some(0) })?;
    let count = |s: Status| claims.iter().filter(|c| c.status == s).count();
    let (holds, fails, ooh) = (count(Status::Holds), count(Status::Fails), count(Status::OutOfHypothesis));
    let mut c = claims[pick].clone();
    c.statement = statement;
    Some(c.with("holds", holds).with("fails", fails).with("out_of_hypothesis", ooh))
}

/// Named graphs of size `m` that exist for that size.
fn family_graphs(m: usize) -> Vec<(String, Graph)> {
    let mut specs = vec![FamilySpec::Path(m + 1), FamilySpec::Star(m), FamilySpec::Snk(m, 1)];
    if m >= 3 {
        specs.push(FamilySpec::Cycle(m));
    }
    if m >= 5 {
        specs.push(FamilySpec::Snk(m - 1, 2));
    }
    if m >= 6 {
        specs.push(FamilySpec::C5StarDot(m));
        specs.push(FamilySpec::G10(m));
    }
    if m >= 5 && m % 2 == 1 {
        specs.push(FamilySpec::SnK((m + 3) / 2, 2));
    }
    if m >= 6 && m.is_multiple_of(2) {
        specs.push(FamilySpec::SnKMinus((m + 4) / 2, 2));
    }
    specs
        .into_iter()
        .filter_map(|s| s.build().ok().map(|g| (s.to_string(), g)))
        .collect()
}

fn enumerated(m: usize, flags: &[Flag], e: &EnumOptions) -> Result<Vec<Graph>> {
    if m > ENUMERATE_UP_TO {
        return Ok(vec![]);
    }
    Ok(enumerate_classes(&EnumFilter::new(m, flags), e)?
        .into_iter()
        .map(|c| c.graph)
        .collect())
}

fn perron_suite(m: usize, e: &EnumOptions) -> Result<VerificationReport> {
    let mut graphs: Vec<Graph> = family_graphs(m).into_iter().map(|(_, g)| g).collect();
    graphs.extend(enumerated(m, &[Flag::Connected], e)?);
    let mut worst: Option<(f64, usize)> = None;
    for (i, g) in graphs.iter().enumerate() {
        for u in 0..g.n() {
            let res = check_perron_identities(g, u)?.max();
            if worst.is_none_or(|(w, _)| res > w) {
                worst = Some((res, i));
            }
        }
    }
    let (max, i) = worst.expect("at least one graph");
    let mut report = VerificationReport::new("perron").param("m", m);
    report.push(
        Claim::about(
            format!("Perron identities at every vertex, residual < {IDENTITY_TOL:e}, m={m}"),
            Status::judge(max < IDENTITY_TOL, true),
            &graphs[i],
        )?
        .with("graphs", graphs.len())
        .with("max_residual", max),
    );
    Ok(report)
}

fn closed_walk_suite(m: usize, e: &EnumOptions) -> Result<VerificationReport> {
    let mut report = VerificationReport::new("eq8").param("m", m);
    for (name, g) in family_graphs(m) {
        if g.is_connected() && Flag::C4Free.accepts(&g) {
            let c = check_eq8(&g)?;
            let statement = format!("{} for {name}", c.statement);
            report.push(Claim { statement, ..c });
        }
    }
    let claims = enumerated(m, &[Flag::C4Free, Flag::Connected], e)?
        .iter()
        .map(check_eq8)
        .collect::<Result<Vec<_>>>()?;
    if let Some(c) = aggregate(format!("rho^2 <= m - 2/3 (e(N1(u*)) + e(W)) over C4-free connected classes, m={m}"), claims) {
        report.push(c);
    }
    Ok(report)
}

fn cubic_suite(m: usize) -> Result<VerificationReport> {
    let mut report = VerificationReport::new("lemma22").param("m", m);
    for k in 1..=3usize {
        if 3 * k > m {
            continue;
        }
        let spec = FamilySpec::Snk(m - k + 1, k);
        let Ok(g) = spec.build() else { continue };
        let hyp = m >= 4 * k * k + 5 * k;
        let cubic_spec = PolySpec::Lemma22(m as i64, k as i64);
        let cubic = cubic_spec.authoritative()?;
        report.warnings.extend(cubic_spec.warnings()?);
        let r = spectral_radius(&g, DEFAULT_TOL)?;
        let divides = cubic.divides(&char_poly(&g));
        let root = crate::algebraic::CertifiedRoot::largest(&cubic, DEFAULT_TOL)?;
        let same = r.root().cmp_root(&root).is_eq();
        let lo = Bound::SqrtMminus(m as i64, k as i64).certified(DEFAULT_TOL)?;
        let hi = Bound::SqrtMminus(m as i64, k as i64 - 1).certified(DEFAULT_TOL)?;
        let bracketed = r.root().cmp_root(&lo).is_gt() && r.root().cmp_root(&hi).is_le();
        report.push(
            Claim::with_result(format!("cubic divides charpoly of {spec}"), Status::judge(divides, true), &g, &r)
                .with("cubic", cubic.to_string()),
        );
        report.push(
            Claim::with_result(
                format!("rho({spec}) is the largest root of the cubic"),
                Status::judge(same, true),
                &g,
                &r,
            )
            .with("cubic_root", root.bracket_f64()),
        );
        report.push(
            Claim::with_result(
                format!("sqrt(m-k) < rho({spec}) <= sqrt(m-k+1), k={k}"),
                Status::judge(bracketed, hyp),
                &g,
                &r,
            )
            .with("lower", lo.value_f64())
            .with("upper", hi.value_f64()),
        );
    }
    Ok(report)
}

fn minus_family_suite(m: usize) -> Result<VerificationReport> {
    let mut report = VerificationReport::new("lemma43").param("m", m);
    if m % 2 == 1 || m < 4 {
        report.push(Claim::unattached(
            format!("rho(S^-_((m+4)/2,2)) > (1+sqrt(4m-5))/2 needs even m >= 6, got {m}"),
            Status::OutOfHypothesis,
        ));
        return Ok(report);
    }
    let g = FamilySpec::SnKMinus((m + 4) / 2, 2).build()?;
    let r = spectral_radius(&g, DEFAULT_TOL)?;
    let bound = Bound::Golden45(m as i64).certified(DEFAULT_TOL)?;
    let ok = r.root().cmp_root(&bound).is_gt();
    report.push(
        Claim::with_result(
            format!("rho(S^-_({},2)) > (1+sqrt(4m-5))/2 at m={m}", (m + 4) / 2),
            Status::judge(ok, m >= 6),
            &g,
            &r,
        )
        .with("bound", bound.value_f64()),
    );
    Ok(report)
}

fn small_vertices_suite(m: usize) -> Result<VerificationReport> {
    let mut report = VerificationReport::new("lemma44").param("m", m).param("beta", 0.5);
    let spec = if m.is_multiple_of(2) {
        FamilySpec::SnKMinus((m + 4) / 2, 2)
    } else {
        FamilySpec::SnK((m + 3) / 2, 2)
    };
    let Ok(g) = spec.build() else {
        report.push(Claim::unattached(format!("no test graph at m={m}"), Status::OutOfHypothesis));
        return Ok(report);
    };
    let r = spectral_radius(&g, DEFAULT_TOL)?;
    let st = g.strata(r.ustar)?;
    let beta = 0.5;
    let s: VertexSet = st
        .n_plus()
        .iter()
        .filter(|&v| r.perron[v] < (1.0 - beta) * r.perron[r.ustar])
        .collect();
    for c in check_lemma44(&g, beta, &s)? {
        let statement = format!("{} for {spec}", c.statement);
        report.push(Claim { statement, ..c });
    }
    Ok(report)
}
