//! Property suites over enumerated terms and over checked derivation scripts.

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use super::enumerate::{enumerate_closed_terms, EnumConfig};
use crate::derive::{check_typing, Judgment, Subject};
use crate::reduce::{
    case_normal_form, classify, is_defined, is_normal, is_pure_value, one_step_reducts,
    perfectly_normalising, principal_reduct, reduction_graph, values_in, values_of, verdict_of,
    Classification, GraphBudget, GraphStatus, RuleSet, Truncation, Verdict,
};
use crate::syntax::{alpha_eq, structural_measure, Term};
use crate::text::parse_script;
use crate::types::Type;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    ComNormalization,
    NormalFormShape,
    CommutationSimulation,
    Confluence(RuleSet),
    PrincipalReduct,
}

impl Suite {
    pub const ALL: [Suite; 5] = [
        Suite::ComNormalization,
        Suite::NormalFormShape,
        Suite::CommutationSimulation,
        Suite::Confluence(RuleSet::LC_MINUS),
        Suite::PrincipalReduct,
    ];

    pub fn name(&self) -> String {
        match self {
            Suite::ComNormalization => "com-normalization".into(),
            Suite::NormalFormShape => "normal-form-shape".into(),
            Suite::CommutationSimulation => "commutation-simulation".into(),
            Suite::Confluence(r) if *r == RuleSet::LC_MINUS => "confluence".into(),
            Suite::Confluence(r) => format!("confluence:{r}"),
            Suite::PrincipalReduct => "principal-reduct".into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("unknown suite `{0}`")]
pub struct UnknownSuite(pub String);

impl FromStr for Suite {
    type Err = UnknownSuite;

    /// `confluence` runs under LC_MINUS; `confluence:RULES` picks a rule set.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "com-normalization" => Ok(Suite::ComNormalization),
            "normal-form-shape" => Ok(Suite::NormalFormShape),
            "commutation-simulation" => Ok(Suite::CommutationSimulation),
            "confluence" => Ok(Suite::Confluence(RuleSet::LC_MINUS)),
            "principal-reduct" => Ok(Suite::PrincipalReduct),
            _ => match s.strip_prefix("confluence:") {
                Some(r) => r
                    .parse()
                    .map(Suite::Confluence)
                    .map_err(|_| UnknownSuite(s.into())),
                None => Err(UnknownSuite(s.into())),
            },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LabConfig {
    pub enumeration: EnumConfig,
    pub max_nodes: usize,
    pub max_depth: usize,
    /// Depth bound of the path search in the commutation-simulation suite.
    pub simulation_depth: usize,
}

impl Default for LabConfig {
    fn default() -> Self {
        let b = GraphBudget::default();
        LabConfig {
            enumeration: EnumConfig::default(),
            max_nodes: b.max_nodes,
            max_depth: b.max_depth,
            simulation_depth: 30,
        }
    }
}

impl LabConfig {
    pub fn budget(&self) -> GraphBudget {
        GraphBudget::new(self.max_nodes, self.max_depth)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Failure {
    /// Replay key: position in the enumeration (or in the sorted script list).
    pub index: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub source: Option<String>,
    pub term: String,
    pub property: String,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub config: Option<LabConfig>,
    pub checked: usize,
    pub skipped: usize,
    /// Instances outside the suite's precondition.
    pub excluded: usize,
    pub failures: Vec<Failure>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    /// Instances that were checked, skipped or failed.
    pub fn instances(&self) -> usize {
        self.checked + self.skipped + self.failed_instances()
    }

    pub fn failed_instances(&self) -> usize {
        let mut idx: Vec<usize> = self.failures.iter().map(|f| f.index).collect();
        idx.dedup();
        idx.len()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{}: {} checked, {} skipped, {} excluded, {} failure(s)",
            self.suite,
            self.checked,
            self.skipped,
            self.excluded,
            self.failures.len()
        )?;
        for fail in self.failures.iter().take(10) {
            let src = fail
                .source
                .as_deref()
                .map(|s| format!(" {s}"))
                .unwrap_or_default();
            writeln!(
                f,
                "  #{}{src} [{}] {}\n    {}",
                fail.index, fail.property, fail.term, fail.detail
            )?;
        }
        if self.failures.len() > 10 {
            writeln!(f, "  ... {} more", self.failures.len() - 10)?;
        }
        Ok(())
    }
}

/// Result of checking one instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Instance {
    Checked,
    Skipped,
    Excluded,
    /// `(property, detail)` pairs.
    Failed(Vec<(String, String)>),
}

fn fail(property: &str, detail: String) -> Instance {
    Instance::Failed(vec![(property.to_string(), detail)])
}

fn collect(
    suite: String,
    config: Option<LabConfig>,
    results: Vec<(Instance, String, Option<String>)>,
) -> SuiteReport {
    let mut report = SuiteReport {
        suite,
        config,
        checked: 0,
        skipped: 0,
        excluded: 0,
        failures: Vec::new(),
    };
    for (index, (r, term, source)) in results.into_iter().enumerate() {
        match r {
            Instance::Checked => report.checked += 1,
            Instance::Skipped => report.skipped += 1,
            Instance::Excluded => report.excluded += 1,
            Instance::Failed(fs) => {
                for (property, detail) in fs {
                    report.failures.push(Failure {
                        index,
                        source: source.clone(),
                        term: term.clone(),
                        property,
                        detail,
                    });
                }
            }
        }
    }
    report
}

pub fn run_suite(suite: Suite, cfg: &LabConfig) -> SuiteReport {
    let terms = enumerate_closed_terms(&cfg.enumeration);
    let results = terms
        .par_iter()
        .map(|t| (check_instance(suite, t, cfg), t.to_string(), None))
        .collect();
    collect(suite.name(), Some(cfg.clone()), results)
}

/// Re-runs the check of the `index`-th enumerated term.
pub fn replay(suite: Suite, cfg: &LabConfig, index: usize) -> Option<(Term, Instance)> {
    let t = enumerate_closed_terms(&cfg.enumeration)
        .into_iter()
        .nth(index)?;
    let r = check_instance(suite, &t, cfg);
    Some((t, r))
}

pub fn check_instance(suite: Suite, t: &Term, cfg: &LabConfig) -> Instance {
    match suite {
        Suite::ComNormalization => com_normalization(t, cfg.budget()),
        Suite::NormalFormShape => normal_form_shape(t),
        Suite::CommutationSimulation => commutation_simulation(t, cfg),
        Suite::Confluence(rules) => confluence(t, rules, cfg.budget()),
        Suite::PrincipalReduct => principal(t, cfg.budget()),
    }
}

fn com_normalization(t: &Term, budget: GraphBudget) -> Instance {
    let g = reduction_graph(t, RuleSet::LCOM, budget);
    let mut failures = Vec::new();
    for e in g.edges() {
        let (s, u) = (&g.nodes()[e.source], &g.nodes()[e.target]);
        let (ms, mu) = (structural_measure(s), structural_measure(u));
        if mu >= ms {
            failures.push((
                "measure-decrease".to_string(),
                format!("{} on {s} (measure {ms}) gives {u} (measure {mu})", e.redex),
            ));
        }
    }
    match g.status() {
        GraphStatus::Complete => {}
        GraphStatus::Truncated(Truncation::Cycle) => {
            failures.push(("termination".into(), "commutation graph has a cycle".into()))
        }
        GraphStatus::Truncated(_) if failures.is_empty() => return Instance::Skipped,
        GraphStatus::Truncated(_) => return Instance::Failed(failures),
    }
    let sinks = g.sinks();
    if sinks.len() != 1 {
        failures.push((
            "confluence".into(),
            format!("{} distinct commutation normal forms", sinks.len()),
        ));
    } else {
        let nf = &g.nodes()[sinks[0]];
        let cnf = case_normal_form(t);
        if !alpha_eq(nf, &cnf) {
            failures.push((
                "equations".into(),
                format!("graph normal form {nf} differs from equational form {cnf}"),
            ));
        }
    }
    if failures.is_empty() {
        Instance::Checked
    } else {
        Instance::Failed(failures)
    }
}

fn normal_form_shape(t: &Term) -> Instance {
    if !t.is_closed() || !is_defined(t) || !is_normal(t, RuleSet::LC_MINUS) {
        return Instance::Excluded;
    }
    let c = classify(t);
    if *t == Term::Daimon || c.is_value() {
        Instance::Checked
    } else {
        fail("daimon-or-value", format!("normal term classified as {c}"))
    }
}

fn commutation_simulation(t: &Term, cfg: &LabConfig) -> Instance {
    let steps = one_step_reducts(t, RuleSet::LB);
    if steps.is_empty() {
        return Instance::Checked;
    }
    let s = case_normal_form(t);
    let g = reduction_graph(
        &s,
        RuleSet::LC_MINUS,
        GraphBudget::new(cfg.max_nodes, cfg.simulation_depth),
    );
    let fully_expanded = matches!(
        g.status(),
        GraphStatus::Complete | GraphStatus::Truncated(Truncation::Cycle)
    );
    let mut failures = Vec::new();
    let mut skipped = false;
    for (redex, t2) in &steps {
        let s2 = case_normal_form(t2);
        let found = g
            .index_of(&s2)
            .is_some_and(|j| g.reaches_in_one_or_more(0, j));
        if found {
            continue;
        }
        if fully_expanded {
            failures.push((
                "simulation".to_string(),
                format!("{redex} gives {t2}; no nonempty path from {s} to {s2}"),
            ));
        } else {
            skipped = true;
        }
    }
    if verdict_of(&g) == Verdict::Yes {
        match perfectly_normalising(t, cfg.budget()) {
            Verdict::Yes => {}
            Verdict::No => failures.push((
                "pn-transfer".into(),
                format!("commutation normal form {s} is perfectly normalising but the term is not"),
            )),
            Verdict::Unknown => skipped = true,
        }
    }
    if !failures.is_empty() {
        Instance::Failed(failures)
    } else if skipped {
        Instance::Skipped
    } else {
        Instance::Checked
    }
}

fn confluence(t: &Term, rules: RuleSet, budget: GraphBudget) -> Instance {
    let g = reduction_graph(t, rules, budget);
    if !g.is_complete() {
        return Instance::Skipped;
    }
    let sinks = g.sinks();
    if sinks.len() == 1 {
        Instance::Checked
    } else {
        let nfs: Vec<String> = sinks.iter().map(|&i| g.nodes()[i].to_string()).collect();
        fail(
            "unique-normal-form",
            format!("normal forms: {}", nfs.join(" | ")),
        )
    }
}

fn principal(t: &Term, budget: GraphBudget) -> Instance {
    if classify(t) != Classification::Neutral {
        return Instance::Excluded;
    }
    let Some(p) = principal_reduct(t) else {
        return Instance::Excluded;
    };
    let g = reduction_graph(t, RuleSet::LC_MINUS, budget);
    if !g.is_complete() {
        return Instance::Skipped;
    }
    let mut failures = Vec::new();
    if !one_step_reducts(t, RuleSet::LC_MINUS)
        .iter()
        .any(|(_, r)| alpha_eq(r, &p))
    {
        failures.push((
            "one-step-reduct".to_string(),
            format!("principal reduct {p} is not a one-step reduct"),
        ));
    }
    let vt = values_in(&g);
    let vp = values_of(&p, budget);
    if !vp.complete {
        return Instance::Skipped;
    }
    let lost: Vec<String> = vt
        .values
        .iter()
        .filter(|v| !vp.contains(v))
        .map(|v| v.to_string())
        .collect();
    if !lost.is_empty() {
        failures.push((
            "values-preserved".into(),
            format!("values of {t} not reachable from {p}: {}", lost.join(", ")),
        ));
    }
    if failures.is_empty() {
        Instance::Checked
    } else {
        Instance::Failed(failures)
    }
}

/// Whether the data structure `t` has the constructor spine of the pure data
/// type `ty`.
pub fn mirrors(t: &Term, ty: &Type) -> bool {
    let (head, args) = t.spine();
    let (thead, targs) = ty.app_spine();
    match (head, thead) {
        (Term::Constr(c), Type::Const(d)) => {
            c == d
                && args.len() == targs.len()
                && args.iter().zip(&targs).all(|(a, b)| mirrors(a, b))
        }
        _ => false,
    }
}

/// Checks every `.lcd` script of `dir` (sorted by name) and the reduction
/// behaviour of each typed term subject.
pub fn run_typed_soundness(dir: &Path, budget: GraphBudget) -> std::io::Result<SuiteReport> {
    let mut files: Vec<_> = std::fs::read_dir(dir)?
        .filter_map(Result::ok)
        .map(|e| e.path())
        .filter(|p| p.extension().is_some_and(|e| e == "lcd"))
        .collect();
    files.sort();
    let mut results = Vec::new();
    for path in files {
        let name = path.file_name().map(|n| n.to_string_lossy().into_owned());
        let src = std::fs::read_to_string(&path)?;
        let (r, term) = typed_instance(&src, budget);
        results.push((r, term, name));
    }
    Ok(collect("typed-soundness".into(), None, results))
}

/// One typed-soundness instance from script text; returns the outcome and
/// the printed subject.
pub fn typed_instance(src: &str, budget: GraphBudget) -> (Instance, String) {
    let d = match parse_script(src) {
        Ok(d) => d,
        Err(e) => return (fail("script-parses", e.to_string()), String::new()),
    };
    let (subject, ty) = match &d.conclusion {
        Judgment::Typing {
            subject: Subject::Term(t),
            ty,
            ..
        } => (t.clone(), ty.clone()),
        other => return (Instance::Excluded, other.to_string()),
    };
    let shown = subject.to_string();
    if let Err(e) = check_typing(&d) {
        return (fail("script-accepted", e.to_string()), shown);
    }
    let g = reduction_graph(&subject, RuleSet::LC_MINUS, budget);
    let mut failures = Vec::new();
    if let Some(bad) = g.nodes().iter().find(|n| !is_defined(n)) {
        failures.push((
            "hereditarily-defined".to_string(),
            format!("reduct {bad} is undefined"),
        ));
    }
    if !g.is_complete() {
        if g.status() == GraphStatus::Truncated(Truncation::Cycle) {
            failures.push((
                "strongly-normalising".into(),
                "reduction graph has a cycle".into(),
            ));
        }
        return if failures.is_empty() {
            (Instance::Skipped, shown)
        } else {
            (Instance::Failed(failures), shown)
        };
    }
    if subject.is_closed() && !subject.contains_daimon() && ty.is_pure_data_type() {
        let sinks = g.sinks();
        match sinks.as_slice() {
            [i] => {
                let nf = &g.nodes()[*i];
                if !is_pure_value(nf) || !mirrors(nf, &ty) {
                    failures.push((
                        "pure-value".into(),
                        format!("normal form {nf} does not match type {ty}"),
                    ));
                }
            }
            _ => failures.push(("pure-value".into(), format!("{} normal forms", sinks.len()))),
        }
    }
    if failures.is_empty() {
        (Instance::Checked, shown)
    } else {
        (Instance::Failed(failures), shown)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::parse_term;

    fn cfg(size: usize) -> LabConfig {
        LabConfig {
            enumeration: EnumConfig {
                max_size: size,
                ..EnumConfig::default()
            },
            ..LabConfig::default()
        }
    }

    fn term(s: &str) -> Term {
        parse_term(s).unwrap()
    }

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert_eq!(
            "confluence:full".parse::<Suite>().unwrap(),
            Suite::Confluence(RuleSet::FULL)
        );
    }

    #[test]
    fn com_normalization_examples() {
        let b = GraphBudget::default();
        assert_eq!(
            com_normalization(&term(r"{| C -> C |}. \x. x"), b),
            Instance::Checked
        );
        assert_eq!(com_normalization(&term("C"), b), Instance::Checked);
    }

    #[test]
    fn normal_form_shape_examples() {
        assert_eq!(normal_form_shape(&term("C")), Instance::Checked);
        assert_eq!(
            normal_form_shape(&term("{| C -> C |}. D")),
            Instance::Excluded
        );
        assert_eq!(
            normal_form_shape(&term(r"\x. {| C -> C |}. x")),
            Instance::Checked
        );
    }

    #[test]
    fn simulation_examples() {
        let c = cfg(6);
        assert_eq!(
            commutation_simulation(&term(r"(\x. x) C"), &c),
            Instance::Checked
        );
        assert_eq!(
            commutation_simulation(&term(r"{| C -> C |}. ((\x. x) C)"), &c),
            Instance::Checked
        );
        assert_eq!(commutation_simulation(&term("C"), &c), Instance::Checked);
    }

    #[test]
    fn confluence_examples() {
        let b = GraphBudget::default();
        let pred = term(r"(\x. {| Zero -> Zero ; S -> \z. z |}. x) (S Zero)");
        assert_eq!(confluence(&pred, RuleSet::LC_MINUS, b), Instance::Checked);
        let omega = term(r"(\x. x x) (\x. x x)");
        assert_eq!(confluence(&omega, RuleSet::LC_MINUS, b), Instance::Skipped);
    }

    #[test]
    fn principal_examples() {
        let b = GraphBudget::default();
        assert_eq!(principal(&term("{| C -> C |}. C"), b), Instance::Checked);
        assert_eq!(principal(&term(r"(\x. x) (\y. y) C"), b), Instance::Checked);
        assert_eq!(
            principal(&term("{| C -> C |}. {| C -> C |}. C"), b),
            Instance::Checked
        );
    }

    #[test]
    fn reports_are_deterministic_and_replayable() {
        let c = cfg(4);
        let a = run_suite(Suite::CommutationSimulation, &c);
        let b = run_suite(Suite::CommutationSimulation, &c);
        assert_eq!(a, b);
        for f in &a.failures {
            let (t, r) = replay(Suite::CommutationSimulation, &c, f.index).unwrap();
            assert_eq!(t.to_string(), f.term);
            assert!(matches!(r, Instance::Failed(_)));
        }
    }

    #[test]
    fn mirrors_type_spine() {
        let t = term("S (S Z)");
        let ty = crate::text::parse_type("S (S Z)").unwrap();
        assert!(mirrors(&t, &ty));
        assert!(!mirrors(&term("S Z"), &ty));
    }
}
