//! Agreement between search verdicts and the truth-table oracle.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::time::{SystemTime, UNIX_EPOCH};

use dualis::calculus::{builtin_calculus, BuiltinId, Calculus, Sequent};
use dualis::engine::{Prover, SearchConfig, Verdict3};
use dualis::semantics::sequent_valid;
use dualis::stahlize::mirror_sequent;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::corpus::CorpusSpec;

/// What a calculus verdict must look like given the classical oracle.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Expectation {
    Exactly(bool),
    /// Proved only if the oracle holds; a refutation is always acceptable.
    AtMost(bool),
}

fn expectation(id: BuiltinId, valid: bool, mirror_valid: bool) -> Expectation {
    match id {
        BuiltinId::Lk => Expectation::Exactly(valid),
        BuiltinId::Sp => Expectation::Exactly(mirror_valid),
        BuiltinId::Lj => Expectation::AtMost(valid),
        BuiltinId::AntiLj => Expectation::AtMost(mirror_valid),
    }
}

impl Expectation {
    fn accepts(self, v: Verdict3) -> bool {
        match (self, v) {
            (_, Verdict3::Unknown) => false,
            (Expectation::Exactly(b), v) => (v == Verdict3::Proved) == b,
            (Expectation::AtMost(b), v) => b || v == Verdict3::Refuted,
        }
    }

    fn describe(self) -> &'static str {
        match self {
            Expectation::Exactly(true) => "proved",
            Expectation::Exactly(false) | Expectation::AtMost(false) => "refuted",
            Expectation::AtMost(true) => "proved or refuted",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Row {
    pub sequent: String,
    /// Classical validity of the sequent.
    pub valid: bool,
    /// Classical validity of its mirror image.
    pub mirror_valid: bool,
    pub verdicts: BTreeMap<String, Verdict3>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tally {
    pub proved: usize,
    pub refuted: usize,
    pub unknown: usize,
}

/// `sub` proves nothing `sup` does not; witnesses show the gap is real.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Inclusion {
    pub sub: String,
    pub sup: String,
    pub violations: usize,
    pub strict_witnesses: usize,
    pub first_witness: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Disagreement {
    pub index: usize,
    pub sequent: String,
    pub calculus: String,
    pub expected: String,
    pub found: Verdict3,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub sequents: usize,
    pub oracle_valid: usize,
    pub oracle_mirror_valid: usize,
    pub calculi: BTreeMap<String, Tally>,
    pub inclusions: Vec<Inclusion>,
    pub disagreements: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AgreementReport {
    /// Unix seconds; the only field that varies between identical runs.
    pub generated_at: u64,
    pub spec: CorpusSpec,
    pub depth_bound: usize,
    pub calculi: Vec<String>,
    pub summary: Summary,
    pub disagreements: Vec<Disagreement>,
    pub rows: Vec<Row>,
}

impl AgreementReport {
    pub fn passed(&self) -> bool {
        self.disagreements.is_empty()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let s = &self.summary;
        let _ = writeln!(out, "corpus: {} sequents (depth bound {})", s.sequents, self.depth_bound);
        let _ = writeln!(out, "oracle: {} valid, {} mirror-valid", s.oracle_valid, s.oracle_mirror_valid);
        for (name, t) in &s.calculi {
            let _ = writeln!(out, "{name:>8}: {} proved, {} refuted, {} unknown", t.proved, t.refuted, t.unknown);
        }
        for inc in &s.inclusions {
            let witness = inc.first_witness.as_deref().map_or(String::new(), |w| format!(", e.g. {w}"));
            let _ = writeln!(
                out,
                "{} ⊆ {}: {} violations, {} strict witnesses{witness}",
                inc.sub, inc.sup, inc.violations, inc.strict_witnesses
            );
        }
        let _ = writeln!(out, "disagreements: {}", s.disagreements);
        for d in self.disagreements.iter().take(20) {
            let _ =
                writeln!(out, "  #{} {}: {} expected {}, got {}", d.index, d.calculus, d.sequent, d.expected, d.found);
        }
        out
    }
}

fn unix_now() -> u64 {
    SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_secs())
}

/// Searches every sequent in every calculus. Rows keep corpus order
/// whatever the scheduling.
pub fn build_report(spec: &CorpusSpec, corpus: &[Sequent], ids: &[BuiltinId], cfg: &SearchConfig) -> AgreementReport {
    let calculi: Vec<Calculus> = ids.iter().map(|&id| builtin_calculus(id)).collect();
    let names: Vec<String> = ids.iter().map(|id| id.as_str().to_string()).collect();
    let rows: Vec<Row> = corpus
        .par_iter()
        .map_init(
            || calculi.iter().map(|c| Prover::new(c, cfg).expect("builtin calculi are searchable")).collect::<Vec<_>>(),
            |provers, s| {
                let verdicts = provers
                    .iter_mut()
                    .zip(&names)
                    .map(|(p, n)| (n.clone(), p.search(s).expect("corpus sequents are propositional").verdict()))
                    .collect();
                Row {
                    sequent: s.to_string(),
                    valid: sequent_valid(s).expect("propositional"),
                    mirror_valid: sequent_valid(&mirror_sequent(s)).expect("propositional"),
                    verdicts,
                }
            },
        )
        .collect();

    let mut tallies: BTreeMap<String, Tally> = names.iter().map(|n| (n.clone(), Tally::default())).collect();
    let mut disagreements = Vec::new();
    for (index, row) in rows.iter().enumerate() {
        for (&id, name) in ids.iter().zip(&names) {
            let v = row.verdicts[name];
            let t = tallies.get_mut(name).expect("tally per calculus");
            match v {
                Verdict3::Proved => t.proved += 1,
                Verdict3::Refuted => t.refuted += 1,
                Verdict3::Unknown => t.unknown += 1,
            }
            let e = expectation(id, row.valid, row.mirror_valid);
            if !e.accepts(v) {
                disagreements.push(Disagreement {
                    index,
                    sequent: row.sequent.clone(),
                    calculus: name.clone(),
                    expected: e.describe().to_string(),
                    found: v,
                });
            }
        }
    }

    let mut inclusions = Vec::new();
    for (sub, sup) in [(BuiltinId::Lj, BuiltinId::Lk), (BuiltinId::AntiLj, BuiltinId::Sp)] {
        if !(ids.contains(&sub) && ids.contains(&sup)) {
            continue;
        }
        let (a, b) = (sub.as_str(), sup.as_str());
        let proved = |row: &Row, n: &str| row.verdicts[n] == Verdict3::Proved;
        let violations = rows.iter().filter(|r| proved(r, a) && !proved(r, b)).count();
        let witnesses: Vec<&Row> = rows.iter().filter(|r| proved(r, b) && !proved(r, a)).collect();
        inclusions.push(Inclusion {
            sub: a.to_string(),
            sup: b.to_string(),
            violations,
            strict_witnesses: witnesses.len(),
            first_witness: witnesses.first().map(|r| r.sequent.clone()),
        });
    }

    let summary = Summary {
        sequents: rows.len(),
        oracle_valid: rows.iter().filter(|r| r.valid).count(),
        oracle_mirror_valid: rows.iter().filter(|r| r.mirror_valid).count(),
        calculi: tallies,
        inclusions,
        disagreements: disagreements.len(),
    };
    AgreementReport {
        generated_at: unix_now(),
        spec: spec.clone(),
        depth_bound: cfg.depth_bound,
        calculi: names,
        summary,
        disagreements,
        rows,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{generate, Template};

    #[test]
    fn expectations() {
        assert!(Expectation::Exactly(true).accepts(Verdict3::Proved));
        assert!(!Expectation::Exactly(true).accepts(Verdict3::Refuted));
        assert!(Expectation::AtMost(true).accepts(Verdict3::Refuted));
        assert!(!Expectation::AtMost(false).accepts(Verdict3::Proved));
        assert!(!Expectation::AtMost(true).accepts(Verdict3::Unknown));
    }

    #[test]
    fn small_corpus_agrees() {
        let spec =
            CorpusSpec { max_size: 2, templates: vec![Template::Right, Template::Left], ..CorpusSpec::default() };
        let corpus = generate(&spec).unwrap();
        let report = build_report(&spec, &corpus, &BuiltinId::ALL, &SearchConfig::default());
        assert!(report.passed(), "{}", report.render_text());
        let lj = &report.summary.inclusions[0];
        assert_eq!((lj.violations, lj.first_witness.as_deref()), (0, Some("|- p | ~p")));
        let anti = &report.summary.inclusions[1];
        assert_eq!(anti.violations, 0);
        assert!(anti.strict_witnesses > 0);
    }

    #[test]
    fn unknown_counts_as_disagreement() {
        let spec = CorpusSpec { max_size: 1, templates: vec![Template::Right], ..CorpusSpec::default() };
        let corpus = vec![Sequent::parse("|- (p -> q) -> ~q -> ~p").unwrap()];
        let report = build_report(&spec, &corpus, &[BuiltinId::Lk], &SearchConfig::default().with_depth(2));
        assert_eq!(report.disagreements.len(), 1);
        assert_eq!(report.disagreements[0].found, Verdict3::Unknown);
    }
}
