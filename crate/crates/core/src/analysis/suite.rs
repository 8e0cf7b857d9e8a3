//! The check suite: fixture comparisons, reduction and symmetry laws,
//! finite-order conjecture checks and structural remarks, each with an
//! expected verdict.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::checks::*;
use super::fixture::{bundled_dir, load_fixtures, Fixture};
use super::{CheckReport, Verdict};
use crate::amplitude::{compute, normalize, AmplitudeSpec, Geometry};
use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::specialize::Specializer;
use crate::{Rational, Series};

/// Which group of checks to run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SuiteName {
    All,
    Fixtures,
    Reduction,
    Symmetry,
    Positivity,
    Support,
    Structure,
    Comparison,
}

impl SuiteName {
    pub const ALL: [SuiteName; 8] = [
        SuiteName::All,
        SuiteName::Fixtures,
        SuiteName::Reduction,
        SuiteName::Symmetry,
        SuiteName::Positivity,
        SuiteName::Support,
        SuiteName::Structure,
        SuiteName::Comparison,
    ];

    fn name(self) -> &'static str {
        match self {
            SuiteName::All => "all",
            SuiteName::Fixtures => "fixtures",
            SuiteName::Reduction => "reduction",
            SuiteName::Symmetry => "symmetry",
            SuiteName::Positivity => "positivity",
            SuiteName::Support => "support",
            SuiteName::Structure => "structure",
            SuiteName::Comparison => "comparison",
        }
    }

    fn includes(self, group: SuiteName) -> bool {
        self == SuiteName::All || self == group
    }
}

impl fmt::Display for SuiteName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SuiteName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        SuiteName::ALL
            .into_iter()
            .find(|n| n.name() == s)
            .ok_or_else(|| Error::Parse { pos: 0, msg: format!("unknown suite {s:?}") })
    }
}

#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub suite: SuiteName,
    pub fixtures_dir: PathBuf,
    /// Total degree for the finite-order conjecture checks.
    pub cutoff: u32,
    pub q_order: u32,
    /// Glob over check ids; `None` runs everything selected by `suite`.
    pub filter: Option<String>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig { suite: SuiteName::All, fixtures_dir: bundled_dir(), cutoff: 4, q_order: 20, filter: None }
    }
}

/// Colors with a transcribed fixture, as `(name, α, γ)` in row convention.
pub const COLORS: [(&str, &[u32], &[u32]); 7] = [
    ("fund", &[1], &[]),
    ("lambda2", &[1, 1], &[]),
    ("lambda3", &[1, 1, 1], &[]),
    ("sym2", &[2], &[]),
    ("sym3", &[3], &[]),
    ("fund_fund", &[1], &[1]),
    ("fund_lambda2", &[1], &[1, 1]),
];

/// Pure `Q_b` degree bound of the normalized series, for the colors where
/// it is asserted.
const TRUNCATIONS: [(&str, u32); 3] = [("fund", 1), ("lambda2", 2), ("fund_fund", 2)];

fn color(name: &str) -> (Partition, Partition) {
    let (_, a, g) = COLORS.iter().find(|c| c.0 == name).expect("known color");
    (Partition::new(a.to_vec()).unwrap(), Partition::new(g.to_vec()).unwrap())
}

fn mode_name(refined: bool) -> &'static str {
    if refined {
        "refined"
    } else {
        "regular"
    }
}

/// One amplitude a check needs.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Need {
    pub geometry: Geometry,
    pub alpha: Partition,
    pub gamma: Partition,
    pub refined: bool,
    pub cutoff: u32,
    pub normalized: bool,
}

impl Need {
    fn local(alpha: &Partition, gamma: &Partition, refined: bool, cutoff: u32, normalized: bool) -> Self {
        Need { geometry: Geometry::LocalP1xp1, alpha: alpha.clone(), gamma: gamma.clone(), refined, cutoff, normalized }
    }

    fn of_spec(spec: &AmplitudeSpec, normalized: bool) -> Self {
        Need {
            geometry: spec.geometry,
            alpha: spec.alpha.clone(),
            gamma: spec.gamma.clone(),
            refined: spec.refined,
            cutoff: spec.cutoff,
            normalized,
        }
    }

    fn spec(&self) -> AmplitudeSpec {
        AmplitudeSpec {
            geometry: self.geometry,
            alpha: self.alpha.clone(),
            gamma: self.gamma.clone(),
            refined: self.refined,
            cutoff: self.cutoff,
            q_order: 0,
        }
    }

    fn unnormalized(&self) -> Need {
        Need { normalized: false, ..self.clone() }
    }

    fn closed(&self) -> Need {
        Need { alpha: Partition::empty(), gamma: Partition::empty(), normalized: false, ..self.clone() }
    }
}

/// Computed amplitudes, shared read-only by the checks.
pub struct Inputs {
    values: BTreeMap<Need, std::result::Result<Series, String>>,
}

impl Inputs {
    fn compute(sp: &Specializer<Rational>, needs: &BTreeSet<Need>) -> Self {
        let mut values = BTreeMap::new();
        let raw: BTreeSet<Need> = needs.iter().flat_map(|n| if n.normalized { vec![n.unnormalized(), n.closed()] } else { vec![n.clone()] }).collect();
        for n in raw {
            let v = compute(sp, &n.spec());
            values.insert(n, Ok(v));
        }
        for n in needs.iter().filter(|n| n.normalized) {
            let open = values[&n.unnormalized()].as_ref().unwrap();
            let closed = values[&n.closed()].as_ref().unwrap();
            let v = normalize(open, closed).map_err(|e| e.to_string());
            values.insert(n.clone(), v);
        }
        Inputs { values }
    }

    pub fn get(&self, n: &Need) -> std::result::Result<&Series, String> {
        match self.values.get(n) {
            Some(Ok(s)) => Ok(s),
            Some(Err(e)) => Err(e.clone()),
            None => Err("amplitude was not computed".into()),
        }
    }
}

type Run = Box<dyn Fn(&Inputs) -> CheckReport + Send + Sync>;

struct Job {
    id: String,
    expected: Verdict,
    needs: Vec<Need>,
    run: Run,
}

impl Job {
    /// A check on one amplitude.
    fn single(id: String, expected: Verdict, need: Need, f: impl Fn(&Series) -> CheckReport + Send + Sync + 'static) -> Self {
        let n = need.clone();
        let run: Run = Box::new(move |inputs: &Inputs| match inputs.get(&n) {
            Ok(s) => f(s),
            Err(e) => CheckReport::inconclusive("", e),
        });
        Job { id, expected, needs: vec![need], run }
    }

    /// A check comparing two amplitudes.
    fn pair(id: String, expected: Verdict, a: Need, b: Need, f: impl Fn(&Series, &Series) -> CheckReport + Send + Sync + 'static) -> Self {
        let (na, nb) = (a.clone(), b.clone());
        let run: Run = Box::new(move |inputs: &Inputs| match (inputs.get(&na), inputs.get(&nb)) {
            (Ok(x), Ok(y)) => f(x, y),
            (Err(e), _) | (_, Err(e)) => CheckReport::inconclusive("", e),
        });
        Job { id, expected, needs: vec![a, b], run }
    }
}

/// A check report with the verdict the manifest expects.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Outcome {
    #[serde(flatten)]
    pub report: CheckReport,
    pub expected: Verdict,
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: SuiteName,
    pub outcomes: Vec<Outcome>,
    pub passed: bool,
}

impl SuiteReport {
    pub fn get(&self, id: &str) -> Option<&Outcome> {
        self.outcomes.iter().find(|o| o.report.id == id)
    }

    /// Aligned table, one line per check, then a totals line.
    pub fn summary(&self) -> String {
        let width = self.outcomes.iter().map(|o| o.report.id.len()).max().unwrap_or(0);
        let mut out = String::new();
        for o in &self.outcomes {
            let mark = if o.ok { "ok" } else { "MISMATCH" };
            out.push_str(&format!(
                "{:<width$}  {:<12}  expected {:<12}  {:<8}  {}",
                o.report.id,
                o.report.verdict.to_string(),
                o.expected.to_string(),
                mark,
                o.report.detail
            ));
            if let Some(w) = &o.report.witness {
                out.push_str(&format!(" [witness: {w}]"));
            }
            out.push('\n');
        }
        let bad = self.outcomes.iter().filter(|o| !o.ok).count();
        out.push_str(&format!("{} checks, {} as expected, {} mismatched\n", self.outcomes.len(), self.outcomes.len() - bad, bad));
        out
    }
}

pub struct Suite {
    config: SuiteConfig,
    fixtures: Vec<Fixture>,
}

impl Suite {
    pub fn new(config: SuiteConfig) -> Result<Self> {
        let fixtures = if config.suite.includes(SuiteName::Fixtures) { load_fixtures(&config.fixtures_dir)? } else { Vec::new() };
        if let Some(f) = &config.filter {
            glob::Pattern::new(f).map_err(|e| Error::Parse { pos: e.pos, msg: e.msg.to_string() })?;
        }
        Ok(Suite { config, fixtures })
    }

    fn jobs(&self) -> Vec<Job> {
        let c = &self.config;
        let mut jobs = Vec::new();
        if c.suite.includes(SuiteName::Fixtures) {
            for f in &self.fixtures {
                let fx = f.clone();
                jobs.push(Job::single(format!("fixture/{}", f.id), Verdict::Pass, Need::of_spec(&f.spec, f.is_normalized()), move |s| {
                    fixture_compare(&fx, s)
                }));
            }
        }
        if c.suite.includes(SuiteName::Reduction) {
            let e = Partition::empty();
            let mut pairs: Vec<(String, Partition, Partition)> = vec![("closed".into(), e.clone(), e)];
            pairs.extend(COLORS.iter().map(|(n, _, _)| {
                let (a, g) = color(n);
                (n.to_string(), a, g)
            }));
            for (name, a, g) in pairs {
                for normalized in [false, true] {
                    if normalized && name == "closed" {
                        continue;
                    }
                    let tag = if normalized { "normalized" } else { "unnormalized" };
                    jobs.push(Job::pair(
                        format!("reduction/{tag}/{name}"),
                        Verdict::Pass,
                        Need::local(&a, &g, true, 3, normalized),
                        Need::local(&a, &g, false, 3, normalized),
                        reduction_check,
                    ));
                }
            }
        }
        if c.suite.includes(SuiteName::Symmetry) {
            let e = Partition::empty();
            jobs.push(Job::single("symmetry/closed".into(), Verdict::Pass, Need::local(&e, &e, true, 3, false), symmetry_check_tq));
            for (name, _, _) in COLORS {
                let (a, g) = color(name);
                jobs.push(Job::single(format!("symmetry/open/{name}"), Verdict::Fail, Need::local(&a, &g, true, 3, true), symmetry_check_tq));
            }
        }
        for refined in [false, true] {
            let m = mode_name(refined);
            for (name, _, _) in COLORS {
                let (a, g) = color(name);
                let need = Need::local(&a, &g, refined, c.cutoff, true);
                if c.suite.includes(SuiteName::Positivity) {
                    let q = c.q_order;
                    jobs.push(Job::single(format!("positivity/{m}/{name}"), Verdict::Pass, need.clone(), move |s| {
                        positivity_check(s, q, refined)
                    }));
                }
                if c.suite.includes(SuiteName::Support) {
                    let (a2, g2) = (a.clone(), g.clone());
                    jobs.push(Job::single(format!("support/{m}/{name}"), Verdict::Pass, need.clone(), move |s| support_check(s, &a2, &g2)));
                }
                if c.suite.includes(SuiteName::Structure) {
                    jobs.push(Job::single(format!("structure/sole_qf/{m}/{name}"), Verdict::Pass, need.clone(), sole_qf_vanishing_check));
                    if let Some((_, k)) = TRUNCATIONS.iter().find(|t| t.0 == name) {
                        let k = *k;
                        jobs.push(Job::single(format!("structure/pure_qb/{m}/{name}"), Verdict::Pass, need.clone(), move |s| {
                            pure_qb_truncation_check(s, k)
                        }));
                    }
                }
            }
        }
        if c.suite.includes(SuiteName::Comparison) {
            // the (□,□) Q_b^2 coefficients coincide; only (□,Λ²) separates them
            for (name, expected) in [("fund_fund", Verdict::Fail), ("fund_lambda2", Verdict::Pass)] {
                let (a, g) = color(name);
                let local = Need::local(&a, &g, false, 3, true);
                let conifold = Need { geometry: Geometry::ResolvedConifold, ..local.clone() };
                jobs.push(Job::pair(format!("comparison/regular/{name}"), expected, local, conifold, comparison_check));
            }
        }
        if let Some(f) = &c.filter {
            let p = glob::Pattern::new(f).expect("validated in new");
            jobs.retain(|j| p.matches(&j.id));
        }
        jobs
    }

    /// Check ids with their expected verdicts.
    pub fn manifest(&self) -> Vec<(String, Verdict)> {
        let mut m: Vec<_> = self.jobs().into_iter().map(|j| (j.id, j.expected)).collect();
        m.sort_by(|a, b| a.0.cmp(&b.0));
        m
    }

    pub fn run(&self, sp: &Specializer<Rational>) -> SuiteReport {
        let jobs = self.jobs();
        let needs: BTreeSet<Need> = jobs.iter().flat_map(|j| j.needs.iter().cloned()).collect();
        let inputs = Inputs::compute(sp, &needs);
        let mut outcomes: Vec<Outcome> = jobs
            .par_iter()
            .map(|j| {
                let report = (j.run)(&inputs).with_id(j.id.clone());
                let ok = report.verdict == j.expected;
                Outcome { report, expected: j.expected, ok }
            })
            .collect();
        outcomes.sort_by(|a, b| a.report.id.cmp(&b.report.id));
        let passed = outcomes.iter().all(|o| o.ok);
        SuiteReport { suite: self.config.suite, outcomes, passed }
    }
}
