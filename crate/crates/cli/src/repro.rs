use std::path::Path;

use serde::Serialize;
use serde_json::{json, Value};

use coreseq::admissibility::{lemma1_study, test_admissibility, AdmissibilityVerdict, RuleTransform};
use coreseq::engine::{Engine, SequentFamily};
use coreseq::intuitionistic::{cross_check, CrossCheckReport};
use coreseq::kernel::fixtures::{self, VALID_FIXTURES};
use coreseq::kernel::{check_derivation, check_rule, paper_fixtures, Mode, RuleLabel, RuleName};
use coreseq::syntax::{parse_formula, parse_sequent, Sequent};

use crate::{engine, write_file, DISAGREEMENT, ERROR, PROVABLE, VERSION};

const EQ1: &str = "~A, A |- B";
const EQ2: &str = "|- ~A -> (A -> B)";
const EQ4: &str = "~A -> (A -> B), ~A, A |- B";
const EQ1_ABSURD: &str = "~A, A |-";
const WEAKENED: &str = "B, ~A, A |-";

#[derive(Serialize)]
struct Item {
    id: &'static str,
    status: String,
    evidence: Vec<String>,
    details: Value,
}

#[derive(Serialize)]
struct Step {
    step: &'static str,
    rule_valid: bool,
    reason: String,
}

#[derive(Serialize)]
struct Summary<'a> {
    version: &'static str,
    items: &'a [Item],
    queries: &'a [Value],
    cross_check: Value,
    steps: &'a [Step],
    disagreements: &'a [String],
}

struct Repro {
    tennant: Engine,
    strict: Engine,
    files: Vec<(String, String)>,
    disagreements: Vec<String>,
}

fn seq(text: &str) -> Sequent {
    parse_sequent(text).expect("built-in sequents parse")
}

fn fixture_path(name: &str) -> String {
    format!("fixtures/{name}.json")
}

fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("reports serialize") + "\n"
}

impl Repro {
    fn engines(&self) -> [&Engine; 2] {
        [&self.tennant, &self.strict]
    }

    fn disagree(&mut self, what: String) {
        self.disagreements.push(what);
    }

    /// Decides `text` in both modes and records any mode disagreement.
    fn query(&mut self, id: &str, text: &str) -> anyhow::Result<(Option<usize>, Value)> {
        let s = seq(text);
        let mut per_mode = Vec::new();
        let mut heights = Vec::new();
        let mut rejected = Vec::new();
        for e in self.engines() {
            let r = e.decide(&s)?;
            if let Some(d) = r.derivation() {
                if let Err(v) = check_derivation(d, e.mode()) {
                    per_mode.push(json!(null));
                    rejected.push(format!("{id}: engine derivation rejected by the checker: {v}"));
                    continue;
                }
            }
            heights.push(r.min_height());
            per_mode.push(json!({
                "mode": e.mode(),
                "status": if r.is_provable() { "provable" } else { "unprovable" },
                "min_height": r.min_height(),
                "distinct_goals": r.stats().distinct_goals,
            }));
        }
        self.disagreements.extend(rejected);
        if heights.windows(2).any(|w| w[0].is_some() != w[1].is_some()) {
            self.disagree(format!("{id}: tennant and strict-table verdicts differ on `{text}`"));
        }
        Ok((
            heights[0],
            json!({ "id": id, "sequent": s.print(), "results": per_mode }),
        ))
    }

    /// Checks a fixture and confirms the engine proves its conclusion at no
    /// greater height.
    fn fixture(&mut self, name: &str) -> anyhow::Result<Value> {
        let d = paper_fixtures().remove(name).expect("known fixture");
        let verdict = check_derivation(&d, Mode::Tennant);
        if verdict.is_ok() {
            match self.tennant.min_height(&d.conclusion)? {
                None => self.disagree(format!(
                    "{name}: checker accepts a derivation of `{}` but the engine finds none",
                    d.conclusion.print()
                )),
                Some(h) if h > d.height() => self.disagree(format!(
                    "{name}: engine minimal height {h} exceeds the fixture height {}",
                    d.height()
                )),
                Some(_) => {}
            }
        }
        Ok(json!({
            "fixture": name,
            "conclusion": d.conclusion.print(),
            "height": d.height(),
            "valid": verdict.is_ok(),
            "check": verdict.err().map(|v| v.to_string()),
        }))
    }

    fn emit(&mut self, path: String, text: String) -> String {
        self.files.push((path.clone(), text));
        path
    }

    fn verdict(&mut self, path: &str, v: &AdmissibilityVerdict) -> anyhow::Result<String> {
        // Every witness must reproduce under a fresh decision.
        let engine = engine(v.mode)?;
        for w in &v.witnesses {
            let again = (
                engine.min_height(&seq(&w.premise))?,
                engine.min_height(&seq(&w.transformed))?,
            );
            if again != (Some(w.premise_height), w.transformed_height) {
                self.disagree(format!("{}: witness `{}` does not reproduce", v.rule, w.premise));
            }
        }
        Ok(self.emit(path.to_string(), to_json(v)))
    }
}

fn valid(v: &Value) -> bool {
    v["valid"].as_bool() == Some(true)
}

fn status(b: bool, yes: &str, no: &str) -> String {
    if b { yes } else { no }.to_string()
}

pub fn build() -> anyhow::Result<(Value, Vec<(String, String)>, Vec<String>, String)> {
    let mut r = Repro {
        tennant: engine(Mode::Tennant)?,
        strict: engine(Mode::StrictTable)?,
        files: Vec::new(),
        disagreements: Vec::new(),
    };
    for (name, d) in paper_fixtures() {
        r.emit(fixture_path(name), d.to_json() + "\n");
    }

    let mut queries = Vec::new();
    let mut items = Vec::new();

    // Ex falso, and its empty-succedent variant.
    let (eq1, q) = r.query("eq1", EQ1)?;
    queries.push(q.clone());
    let (eq1_absurd, q_absurd) = r.query("eq1-absurd", EQ1_ABSURD)?;
    items.push(Item {
        id: "eq1",
        status: status(eq1.is_none(), "unprovable", "provable"),
        evidence: vec![],
        details: json!({ "query": q, "absurd_variant": q_absurd }),
    });

    // The theorem `|- ~A -> (A -> B)` against its fixture.
    let (eq2, q) = r.query("eq2", EQ2)?;
    queries.push(q.clone());
    let upper = r.fixture(fixtures::D1_UPPER)?;
    let found = r.tennant.decide(&seq(EQ2))?;
    let mut evidence = vec![fixture_path(fixtures::D1_UPPER)];
    let same_tree = found.derivation() == Some(&fixtures::d1_upper());
    if let Some(d) = found.derivation() {
        evidence.push(r.emit("derivations/eq2.json".into(), d.to_json() + "\n"));
    }
    items.push(Item {
        id: "eq2",
        status: match eq2 {
            Some(h) => format!("provable, min height {h}"),
            None => "unprovable".into(),
        },
        evidence,
        details: json!({ "query": q, "fixture": upper, "engine_derivation_equals_fixture": same_tree }),
    });

    // The negative judgment derived with a final LTop step.
    let full = r.fixture(fixtures::D1_FULL_WITH_LTOP)?;
    items.push(Item {
        id: "eq3-d1",
        status: status(valid(&full), "valid", "invalid"),
        evidence: vec![fixture_path(fixtures::D1_FULL_WITH_LTOP)],
        details: json!({
            "fixture": full,
            "claimed_judgment": "~A -> (A -> B), ~A, A ⊬ B",
            "decide_on_sequent": eq4_status(&r.tennant)?,
        }),
    });

    // The Lewis theorem in the antecedent.
    let (eq4, q) = r.query("eq4", EQ4)?;
    queries.push(q.clone());
    queries.push(q_absurd);
    let d2 = r.fixture(fixtures::D2)?;
    let mut evidence = vec![fixture_path(fixtures::D2)];
    if let Some(d) = r.tennant.decide(&seq(EQ4))?.derivation() {
        evidence.push(r.emit("derivations/eq4.json".into(), d.to_json() + "\n"));
    }
    items.push(Item {
        id: "eq4-d2",
        status: format!(
            "{}, {}",
            status(valid(&d2), "valid", "invalid"),
            match eq4 {
                Some(h) => format!("provable, min height {h}"),
                None => "unprovable".into(),
            }
        ),
        evidence,
        details: json!({ "query": q, "fixture": d2 }),
    });

    // Conjunction with a theorem.
    let right = r.fixture(fixtures::LEMMA1_RIGHT)?;
    let left = r.fixture(fixtures::LEMMA1_LEFT)?;
    let top = parse_formula("p -> p").expect("formula");
    let mut studies = Vec::new();
    for delta in ["d", "q", "p -> p"] {
        let delta = parse_formula(delta).expect("formula");
        studies.push(serde_json::to_value(lemma1_study(&delta, &top, &r.tennant)?)?);
    }
    items.push(Item {
        id: "lemma1",
        status: status(valid(&right) && valid(&left), "valid", "invalid"),
        evidence: vec![fixture_path(fixtures::LEMMA1_RIGHT), fixture_path(fixtures::LEMMA1_LEFT)],
        details: json!({ "fixtures": [right, left], "studies": studies }),
    });

    let c1 = r.fixture(fixtures::CONTRADICTION1)?;
    let c2 = r.fixture(fixtures::CONTRADICTION2)?;
    for (id, name, v) in [
        ("contradiction1", fixtures::CONTRADICTION1, &c1),
        ("contradiction2", fixtures::CONTRADICTION2, &c2),
    ] {
        items.push(Item {
            id,
            status: status(valid(v), "valid", "invalid"),
            evidence: vec![fixture_path(name)],
            details: v.clone(),
        });
    }

    // LTop over two atoms, both modes.
    let family = SequentFamily::new(2, 5);
    let sequents = family.sequents();
    let ltop = RuleTransform::ltop_default();
    let vt = test_admissibility(&ltop, &sequents, &family.describe(), &r.tennant)?;
    let vs = test_admissibility(&ltop, &sequents, &family.describe(), &r.strict)?;
    if vt.status != vs.status || vt.witnesses.first().map(|w| &w.premise) != vs.witnesses.first().map(|w| &w.premise) {
        r.disagree("ltop: verdict differs between tennant and strict-table".into());
    }
    let evidence = vec![
        r.verdict("verdicts/ltop-tennant.json", &vt)?,
        r.verdict("verdicts/ltop-strict-table.json", &vs)?,
    ];
    items.push(Item {
        id: "ltop-verdict",
        status: vt.status.as_str().to_string(),
        evidence,
        details: json!({
            "rule": vt.rule,
            "universe": vt.universe,
            "premises_checked": vt.premises_checked,
            "witness_count": vt.witnesses.len(),
            "first_witness": vt.first_witness(),
        }),
    });

    // Left weakening.
    let conclusion = seq(WEAKENED);
    let premise = seq(EQ1_ABSURD);
    let mut accepted_by = Vec::new();
    for mode in Mode::ALL {
        for rule in RuleName::ALL {
            if check_rule(&conclusion, &RuleLabel::Known(rule), &[&premise], mode).is_ok() {
                accepted_by.push(format!("{} ({})", rule.as_str(), mode.as_str()));
            }
        }
    }
    let weak_family = SequentFamily::with_atoms(&["A", "B"], 3);
    let wk = RuleTransform::Weaken(parse_formula("B").expect("formula"));
    let vw = test_admissibility(&wk, &weak_family.sequents(), &weak_family.describe(), &r.tennant)?;
    let step = vw.witnesses.iter().find(|w| w.premise == premise.print()).cloned();
    let evidence = vec![r.verdict("verdicts/weakening.json", &vw)?];
    items.push(Item {
        id: "weakening",
        status: format!(
            "{}; {} {}",
            status(accepted_by.is_empty(), "step rejected by every rule", "step accepted"),
            vw.rule,
            vw.status.as_str()
        ),
        evidence,
        details: json!({
            "step": { "premise": premise.print(), "conclusion": conclusion.print() },
            "accepted_by": accepted_by,
            "witness": step,
            "premises_checked": vw.premises_checked,
        }),
    });

    // Core against intuitionistic logic.
    let cc_family = SequentFamily::new(2, 6);
    let cc: CrossCheckReport = cross_check(&cc_family.sequents(), &cc_family.describe(), &r.tennant)?;
    if !cc.is_clean() {
        r.disagree(format!(
            "cross-check: {} violations, {} theorem disagreements",
            cc.violations.len(),
            cc.theorem_disagreements.len()
        ));
    }
    let cc_path = r.emit("cross-check.json".into(), to_json(&cc));
    let cross = json!({
        "family": cc.family,
        "total": cc.total,
        "core_provable": cc.core_provable,
        "int_provable": cc.int_provable,
        "divergences": cc.divergences.len(),
        "violations": cc.violations.len(),
        "theorems_checked": cc.theorems_checked,
        "theorem_disagreements": cc.theorem_disagreements.len(),
        "ex_falso_diverges": cc.diverges_on(&seq("~p, p |- q")),
        "evidence": cc_path,
    });

    let mut steps = Vec::new();
    let check_step = |step: &'static str, v: &Value| Step {
        step,
        rule_valid: valid(v),
        reason: v["check"].as_str().map_or("every node passes its rule".into(), str::to_string),
    };
    steps.push(check_step("d1-upper", &upper));
    steps.push(check_step("d1-full-with-ltop", &full));
    steps.push(check_step("d2", &d2));
    steps.push(check_step("lemma1-right", &right));
    steps.push(check_step("lemma1-left", &left));
    steps.push(check_step("contradiction1", &c1));
    steps.push(check_step("contradiction2", &c2));
    steps.push(Step {
        step: "⊥ from d1-full-with-ltop and d2",
        rule_valid: false,
        reason: "no rule takes a ⊬ judgment as premise".into(),
    });
    steps.push(Step {
        step: "left weakening B, ~A, A |- from ~A, A |-",
        rule_valid: !accepted_by.is_empty(),
        reason: if accepted_by.is_empty() {
            "rejected under every rule name in both modes".into()
        } else {
            format!("accepted by {}", accepted_by.join(", "))
        },
    });

    if eq1_absurd != Some(1) {
        r.disagree(format!("eq1-absurd: expected min height 1, found {eq1_absurd:?}"));
    }
    if !same_tree {
        r.disagree("eq2: engine derivation differs from the d1-upper fixture".into());
    }
    for name in VALID_FIXTURES {
        if !paper_fixtures().contains_key(name) {
            r.disagree(format!("missing fixture {name}"));
        }
    }

    let text = summary_text(&items, &steps, &r.disagreements);
    let report = serde_json::to_value(Summary {
        version: VERSION,
        items: &items,
        queries: &queries,
        cross_check: cross,
        steps: &steps,
        disagreements: &r.disagreements,
    })?;
    Ok((report, r.files, r.disagreements, text))
}

fn eq4_status(e: &Engine) -> anyhow::Result<&'static str> {
    Ok(if e.is_provable(&seq(EQ4))? { "provable" } else { "unprovable" })
}

fn summary_text(items: &[Item], steps: &[Step], disagreements: &[String]) -> String {
    let mut out = format!("{VERSION}\n\n");
    for item in items {
        out.push_str(&format!("{:<15} {}\n", item.id, item.status));
    }
    out.push('\n');
    for s in steps {
        let mark = if s.rule_valid { "valid  " } else { "invalid" };
        out.push_str(&format!("{mark}  {}: {}\n", s.step, s.reason));
    }
    out.push('\n');
    if disagreements.is_empty() {
        out.push_str("no internal disagreements\n");
    } else {
        for d in disagreements {
            out.push_str(&format!("DISAGREEMENT: {d}\n"));
        }
    }
    out
}

pub fn run(out: Option<&Path>) -> anyhow::Result<u8> {
    let (report, files, disagreements, text) = match build() {
        Ok(built) => built,
        Err(e) => {
            eprintln!("error: {e:#}");
            return Ok(ERROR);
        }
    };
    let report_text = to_json(&report);
    if let Some(dir) = out {
        for (path, body) in &files {
            write_file(&dir.join(path), body)?;
        }
        write_file(&dir.join("report.json"), &report_text)?;
        write_file(&dir.join("summary.txt"), &text)?;
    }
    print!("{report_text}");
    eprint!("{text}");
    Ok(if disagreements.is_empty() { PROVABLE } else { DISAGREEMENT })
}
