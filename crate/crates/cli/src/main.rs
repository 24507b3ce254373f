//! Command-line front end: every verb is a thin adapter over the library,
//! serializing results in a fixed text format or as a single JSON object
//! `{"command": ..., "result": ...}` with `--json`.
//!
//! Exit codes: 0 for success, 1 for semantic "false"/"none"/step-limit
//! results, 2 for errors — so shell pipelines can branch on verdicts.

use std::process::ExitCode;

use serde_json::{json, Value};

use pproj::complex::{
    ascending_link, common_upper_bound, half_units_to_string, push_through, vertex_leq,
    vertex_of_tree, DomainWord,
};
use pproj::cutset::{run_search, verify_result, SearchOutcome};
use pproj::element::{compose, Flavor, GroupElement};
use pproj::rewrite::{
    complete_to_positive, critical_pair_report, has_npc, verify_rule_soundness, RewriteSystem,
    SystemName,
};
use pproj::rng::SplitMix64;
use pproj::trees::{
    elementary_moves, leaf_words, root_label_range, tree_partition, trees_equivalent,
    MoveDirection, Side, SubdivisionTree,
};
use pproj::words::GenWord;
use pproj::{ExtRational, Variant};

const USAGE: &str = "\
usage: pproj <verb> [flags] [payload...]

verbs:
  reduce --system <r2|r2hat|r3|r3hat> <word>
  confluence --system <sys> [--seed <n>]
  soundness --system <sys>
  npc --system <sys> <word>
  complete --system <sys> <word>
  tree partition|equiv|moves|range|leaves --n <2|3> <tree> [<tree>]
  cutset --n <n> [--max-steps <s>]
  push --n <2|3> <word> <domain-word>
  asclink --n <2|3> <tree>
  vleq --n <2|3> <tree> <tree>
  upper --n <2|3> <tree> <tree>
  elt eval|compose|invert|flavor|equal --n <2|3> <element-json> [<arg>]

flags: --n <int>, --system <name>, --json, --seed <int>, --max-steps <int>

words use one letter per generator from {A,B,C,c,a,b}; `0` is the absorbing
word and `1` (or the empty string) the identity. trees use
`(label left right)` with `.` for leaves, e.g. `(2 (4 (0 . .) .) .)`.
group elements are JSON objects
{\"domain_tree\": ..., \"range_tree\": ..., \"perm\": [..], \"twists\": [..]}.
";

struct Invocation {
    json: bool,
    n: Option<i64>,
    system: Option<String>,
    seed: Option<u64>,
    max_steps: Option<u64>,
    positional: Vec<String>,
}

fn parse_args(args: &[String]) -> Result<Invocation, String> {
    let mut inv = Invocation {
        json: false,
        n: None,
        system: None,
        seed: None,
        max_steps: None,
        positional: Vec::new(),
    };
    let mut i = 0;
    while i < args.len() {
        let arg = &args[i];
        match arg.as_str() {
            "--json" => inv.json = true,
            "--n" | "--system" | "--seed" | "--max-steps" => {
                i += 1;
                let value = args
                    .get(i)
                    .cloned()
                    .ok_or_else(|| format!("flag {arg} needs a value"))?;
                match arg.as_str() {
                    "--n" => {
                        inv.n =
                            Some(value.parse().map_err(|_| format!("bad --n value `{value}`"))?)
                    }
                    "--system" => inv.system = Some(value),
                    "--seed" => {
                        inv.seed = Some(
                            value
                                .parse()
                                .map_err(|_| format!("bad --seed value `{value}`"))?,
                        )
                    }
                    _ => {
                        inv.max_steps = Some(
                            value
                                .parse()
                                .map_err(|_| format!("bad --max-steps value `{value}`"))?,
                        )
                    }
                }
            }
            other if other.starts_with("--") => return Err(format!("unknown flag {other}")),
            _ => inv.positional.push(arg.clone()),
        }
        i += 1;
    }
    Ok(inv)
}

impl Invocation {
    fn variant(&self) -> Result<Variant, String> {
        let n = self.n.ok_or("missing --n flag")?;
        Variant::from_n(n).ok_or_else(|| format!("--n must be 2 or 3, got {n}"))
    }

    fn rewrite_system(&self) -> Result<RewriteSystem, String> {
        let name = self.system.as_deref().ok_or("missing --system flag")?;
        let name = SystemName::parse(name).ok_or_else(|| format!("unknown system `{name}`"))?;
        Ok(RewriteSystem::by_name(name))
    }

    fn arg(&self, index: usize, what: &str) -> Result<&str, String> {
        self.positional
            .get(index)
            .map(String::as_str)
            .ok_or_else(|| format!("missing {what}"))
    }
}

/// Outcome of a verb: text lines, a JSON value, and the exit code.
struct Outcome {
    text: String,
    value: Value,
    code: u8,
}

impl Outcome {
    fn ok(text: impl Into<String>, value: Value) -> Self {
        Outcome {
            text: text.into(),
            value,
            code: 0,
        }
    }

    fn verdict(flag: bool, text: impl Into<String>, value: Value) -> Self {
        Outcome {
            text: text.into(),
            value,
            code: if flag { 0 } else { 1 },
        }
    }
}

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().skip(1).collect();
    if args.is_empty() || args[0] == "--help" || args[0] == "-h" || args[0] == "help" {
        print!("{USAGE}");
        return ExitCode::from(if args.is_empty() { 2 } else { 0 });
    }
    let verb = args[0].clone();
    let inv = match parse_args(&args[1..]) {
        Ok(inv) => inv,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let command = if inv.positional.is_empty() {
        verb.clone()
    } else {
        format!("{verb} {}", inv.positional.join(" "))
    };
    match dispatch(&verb, &inv) {
        Ok(outcome) => {
            if inv.json {
                let obj = json!({"command": command, "result": outcome.value});
                println!("{obj}");
            } else {
                println!("{}", outcome.text);
            }
            ExitCode::from(outcome.code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn dispatch(verb: &str, inv: &Invocation) -> Result<Outcome, String> {
    match verb {
        "reduce" => cmd_reduce(inv),
        "confluence" => cmd_confluence(inv),
        "soundness" => cmd_soundness(inv),
        "npc" => cmd_npc(inv),
        "complete" => cmd_complete(inv),
        "tree" => cmd_tree(inv),
        "cutset" => cmd_cutset(inv),
        "push" => cmd_push(inv),
        "asclink" => cmd_asclink(inv),
        "vleq" => cmd_vleq(inv),
        "upper" => cmd_upper(inv),
        "elt" => cmd_elt(inv),
        other => Err(format!("unknown verb `{other}`\n{USAGE}")),
    }
}

fn parse_word(text: &str, variant: Variant) -> Result<GenWord, String> {
    GenWord::parse(text, variant).map_err(|e| e.to_string())
}

fn parse_tree(text: &str, variant: Variant) -> Result<SubdivisionTree, String> {
    SubdivisionTree::parse(text, variant).map_err(|e| e.to_string())
}

fn cmd_reduce(inv: &Invocation) -> Result<Outcome, String> {
    let sys = inv.rewrite_system()?;
    let word = parse_word(inv.arg(0, "word")?, sys.variant())?;
    let (reduced, steps) = sys
        .try_reduce(&word, pproj::rewrite::DEFAULT_STEP_CAP)
        .map_err(|e| e.to_string())?;
    Ok(Outcome::ok(
        reduced.to_string(),
        json!({"normal_form": reduced.to_string(), "steps": steps}),
    ))
}

fn cmd_confluence(inv: &Invocation) -> Result<Outcome, String> {
    let sys = inv.rewrite_system()?;
    let report = critical_pair_report(&sys);
    let mut text = format!(
        "{}: {} critical pairs, all joinable: {}",
        sys.name(),
        report.pairs.len(),
        report.all_joinable
    );
    let mut unjoinable = Vec::new();
    for pair in report.unjoinable() {
        text.push_str(&format!(
            "\n  {} -> {} | {}",
            pair.word, pair.left_nf, pair.right_nf
        ));
        unjoinable.push(json!({
            "word": pair.word.to_string(),
            "left": pair.left_nf.to_string(),
            "right": pair.right_nf.to_string(),
        }));
    }
    let mut ok = report.all_joinable;
    let mut random = Value::Null;
    if let Some(seed) = inv.seed {
        let (agree, total) = two_path_check(&sys, seed, 1000, 12);
        text.push_str(&format!("\nrandom two-path check: {agree}/{total} agree"));
        random = json!({"agree": agree, "total": total});
        ok = ok && agree == total;
    }
    Ok(Outcome::verdict(
        ok,
        text,
        json!({
            "system": sys.name().as_str(),
            "pairs": report.pairs.len(),
            "all_joinable": report.all_joinable,
            "unjoinable": unjoinable,
            "random_two_path": random,
        }),
    ))
}

/// Reduces each sampled word along two independently chosen rewrite paths
/// and counts agreements.
fn two_path_check(
    sys: &RewriteSystem,
    seed: u64,
    samples: usize,
    max_len: usize,
) -> (usize, usize) {
    let mut rng = SplitMix64::new(seed);
    let mut agree = 0;
    for _ in 0..samples {
        let word = random_word(sys, &mut rng, max_len);
        let a = random_path_normal_form(sys, &word, &mut rng);
        let b = random_path_normal_form(sys, &word, &mut rng);
        if a == b {
            agree += 1;
        }
    }
    (agree, samples)
}

fn random_word(sys: &RewriteSystem, rng: &mut SplitMix64, max_len: usize) -> GenWord {
    use pproj::Letter;
    let positive = [
        Letter::UpperA,
        Letter::UpperB,
        Letter::UpperC,
        Letter::LowerC,
    ];
    let full = [
        Letter::UpperA,
        Letter::UpperB,
        Letter::UpperC,
        Letter::LowerC,
        Letter::LowerA,
        Letter::LowerB,
    ];
    let pool: &[Letter] = if matches!(sys.name(), SystemName::R2 | SystemName::R3) {
        &positive
    } else {
        &full
    };
    let len = 1 + rng.below(max_len as u64) as usize;
    let letters: Vec<_> = (0..len)
        .map(|_| pool[rng.below(pool.len() as u64) as usize])
        .collect();
    GenWord::from_letters(letters, sys.variant())
}

fn random_path_normal_form(sys: &RewriteSystem, w: &GenWord, rng: &mut SplitMix64) -> GenWord {
    let mut current = w.clone();
    for _ in 0..10_000_000u64 {
        let redexes = sys.redexes(&current);
        if redexes.is_empty() {
            return current;
        }
        let (pos, rule) = redexes[rng.below(redexes.len() as u64) as usize];
        current = sys.apply_at(&current, pos, rule);
        if current.is_zero() {
            return current;
        }
    }
    panic!("random reduction of {w} failed to terminate");
}

fn cmd_soundness(inv: &Invocation) -> Result<Outcome, String> {
    let sys = inv.rewrite_system()?;
    let report = verify_rule_soundness(&sys);
    let mut text = format!(
        "{}: {} rules, all sound: {}",
        sys.name(),
        report.rules.len(),
        report.all_sound
    );
    for r in report.rules.iter().filter(|r| !r.sound) {
        text.push_str(&format!("\n  unsound: {}", r.rule));
    }
    Ok(Outcome::verdict(
        report.all_sound,
        text,
        json!({
            "system": sys.name().as_str(),
            "rules": report.rules.len(),
            "all_sound": report.all_sound,
        }),
    ))
}

fn cmd_npc(inv: &Invocation) -> Result<Outcome, String> {
    let sys = inv.rewrite_system()?;
    let word = parse_word(inv.arg(0, "word")?, sys.variant())?;
    let verdict = has_npc(&word, &sys).map_err(|e| e.to_string())?;
    Ok(Outcome::verdict(
        verdict,
        verdict.to_string(),
        json!({"npc": verdict}),
    ))
}

fn cmd_complete(inv: &Invocation) -> Result<Outcome, String> {
    let sys = inv.rewrite_system()?;
    let word = parse_word(inv.arg(0, "word")?, sys.variant())?;
    let out = complete_to_positive(&word, &sys).map_err(|e| e.to_string())?;
    let result = sys.reduce(&word.concat(&out.tau));
    Ok(Outcome::ok(
        format!(
            "tau: {}\nresult: {}\nepsilon: {}",
            out.tau, result, out.epsilon
        ),
        json!({
            "tau": out.tau.to_string(),
            "omega_hat": out.omega_hat.to_string(),
            "result": result.to_string(),
            "epsilon": out.epsilon,
        }),
    ))
}

fn cmd_tree(inv: &Invocation) -> Result<Outcome, String> {
    let sub = inv.arg(0, "tree subverb")?;
    let variant = inv.variant()?;
    match sub {
        "partition" => {
            let t = parse_tree(inv.arg(1, "tree")?, variant)?;
            let p = tree_partition(&t);
            let intervals: Vec<String> = p.intervals().iter().map(|iv| iv.to_string()).collect();
            Ok(Outcome::ok(p.to_string(), json!({"intervals": intervals})))
        }
        "equiv" => {
            let t1 = parse_tree(inv.arg(1, "first tree")?, variant)?;
            let t2 = parse_tree(inv.arg(2, "second tree")?, variant)?;
            let eq = trees_equivalent(&t1, &t2).map_err(|e| e.to_string())?;
            Ok(Outcome::verdict(
                eq,
                eq.to_string(),
                json!({"equivalent": eq}),
            ))
        }
        "moves" => {
            let t = parse_tree(inv.arg(1, "tree")?, variant)?;
            let moves = elementary_moves(&t);
            let mut lines = Vec::new();
            let mut values = Vec::new();
            for m in &moves {
                let path: String = if m.path.is_empty() {
                    "@".to_string()
                } else {
                    m.path
                        .iter()
                        .map(|s| if *s == Side::Left { 'L' } else { 'R' })
                        .collect()
                };
                let dir = match m.direction {
                    MoveDirection::RaiseLabel => "raise",
                    MoveDirection::LowerLabel => "lower",
                };
                lines.push(format!("{path} {dir} {}", m.result));
                values.push(json!({
                    "path": path,
                    "direction": dir,
                    "result": m.result.to_string(),
                }));
            }
            Ok(Outcome::ok(lines.join("\n"), json!({"moves": values})))
        }
        "range" => {
            let t = parse_tree(inv.arg(1, "tree")?, variant)?;
            if t.is_trivial() {
                return Err("the trivial tree has no root label".into());
            }
            let (lo, hi) = root_label_range(&t);
            Ok(Outcome::ok(
                format!("{lo} {hi}"),
                json!({"min": lo, "max": hi}),
            ))
        }
        "leaves" => {
            let t = parse_tree(inv.arg(1, "tree")?, variant)?;
            let words: Vec<String> = leaf_words(&t).iter().map(|w| w.to_string()).collect();
            Ok(Outcome::ok(words.join(" "), json!({"leaf_words": words})))
        }
        other => Err(format!("unknown tree subverb `{other}`")),
    }
}

fn cmd_cutset(inv: &Invocation) -> Result<Outcome, String> {
    let n = inv.n.ok_or("missing --n flag")?;
    if n < 2 {
        return Err(format!("--n must be at least 2, got {n}"));
    }
    let max_steps = inv.max_steps.unwrap_or(100_000);
    match run_search(n, max_steps) {
        SearchOutcome::Finished(result) => {
            let verified = verify_result(&result, n);
            let leaves: Vec<Value> = result
                .leaves
                .iter()
                .map(|l| {
                    json!({
                        "omega": l.omega_string(),
                        "omega_prime": l.omega_prime_string(),
                        "k": l.k,
                    })
                })
                .collect();
            let text = result
                .leaves
                .iter()
                .map(|l| l.to_string())
                .collect::<Vec<_>>()
                .join("\n");
            Ok(Outcome::verdict(
                verified,
                text,
                json!({
                    "leaves": leaves,
                    "steps_used": result.steps_used,
                    "verified": verified,
                }),
            ))
        }
        SearchOutcome::StepLimit {
            steps_used,
            leaves_found,
            ..
        } => Ok(Outcome {
            text: "STEP_LIMIT".to_string(),
            value: json!({
                "step_limit": true,
                "steps_used": steps_used,
                "leaves_found": leaves_found,
            }),
            code: 1,
        }),
    }
}

fn parse_domain_word(text: &str, variant: Variant) -> Result<DomainWord, String> {
    let word = parse_word(text, variant)?;
    if word.is_zero() {
        return Err("the absorbing word is not a domain".into());
    }
    if !word.letters().unwrap().iter().all(|l| l.is_positive()) {
        return Err("domain words are positive words over {A, B}".into());
    }
    Ok(DomainWord::from_positive_word(&word))
}

fn cmd_push(inv: &Invocation) -> Result<Outcome, String> {
    let variant = inv.variant()?;
    let word = parse_word(inv.arg(0, "word")?, variant)?;
    let domain = parse_domain_word(inv.arg(1, "domain word")?, variant)?;
    let (pieces, images) = push_through(&word, &domain).map_err(|e| e.to_string())?;
    let lines: Vec<String> = pieces
        .iter()
        .zip(&images)
        .map(|(p, i)| format!("{p} -> {i}"))
        .collect();
    let values: Vec<Value> = pieces
        .iter()
        .zip(&images)
        .map(|(p, i)| json!({"piece": p.to_string(), "image": i.to_string()}))
        .collect();
    Ok(Outcome::ok(lines.join("\n"), json!({"pieces": values})))
}

fn cmd_asclink(inv: &Invocation) -> Result<Outcome, String> {
    let variant = inv.variant()?;
    let t = parse_tree(inv.arg(0, "tree")?, variant)?;
    let link = ascending_link(&t).map_err(|e| e.to_string())?;
    let rendered: Vec<String> = link.iter().map(|&j| half_units_to_string(j)).collect();
    Ok(Outcome::ok(
        rendered.join(" "),
        json!({"half_integers": rendered}),
    ))
}

fn cmd_vleq(inv: &Invocation) -> Result<Outcome, String> {
    let variant = inv.variant()?;
    let t1 = parse_tree(inv.arg(0, "first tree")?, variant)?;
    let t2 = parse_tree(inv.arg(1, "second tree")?, variant)?;
    let v1 = vertex_of_tree(&t1);
    let v2 = vertex_of_tree(&t2);
    let leq = vertex_leq(&v1, &v2).map_err(|e| e.to_string())?;
    Ok(Outcome::verdict(leq, leq.to_string(), json!({"leq": leq})))
}

fn cmd_upper(inv: &Invocation) -> Result<Outcome, String> {
    let variant = inv.variant()?;
    let t1 = parse_tree(inv.arg(0, "first tree")?, variant)?;
    let t2 = parse_tree(inv.arg(1, "second tree")?, variant)?;
    let upper = common_upper_bound(&vertex_of_tree(&t1), &vertex_of_tree(&t2))
        .map_err(|e| e.to_string())?;
    let words: Vec<String> = upper
        .pairs()
        .iter()
        .map(|p| p.word().to_string())
        .collect();
    Ok(Outcome::ok(words.join(" "), json!({"cut_words": words})))
}

fn element_to_json(g: &GroupElement) -> Value {
    json!({
        "domain_tree": g.domain_tree().to_string(),
        "range_tree": g.range_tree().to_string(),
        "perm": g.perm(),
        "twists": g.twists(),
    })
}

fn parse_element(text: &str, variant: Variant) -> Result<GroupElement, String> {
    let value: Value = serde_json::from_str(text).map_err(|e| format!("bad element JSON: {e}"))?;
    let obj = value.as_object().ok_or("element must be a JSON object")?;
    let field = |name: &str| -> Result<&Value, String> {
        obj.get(name)
            .ok_or_else(|| format!("missing field `{name}`"))
    };
    let tree = |name: &str| -> Result<SubdivisionTree, String> {
        let text = field(name)?
            .as_str()
            .ok_or_else(|| format!("field `{name}` must be a tree string"))?;
        parse_tree(text, variant)
    };
    let ints = |name: &str| -> Result<Vec<i64>, String> {
        field(name)?
            .as_array()
            .ok_or_else(|| format!("field `{name}` must be an array"))?
            .iter()
            .map(|v| v.as_i64().ok_or_else(|| format!("bad entry in `{name}`")))
            .collect()
    };
    let perm: Vec<usize> = ints("perm")?
        .into_iter()
        .map(|v| usize::try_from(v).map_err(|_| "negative perm entry".to_string()))
        .collect::<Result<_, _>>()?;
    GroupElement::new(
        tree("domain_tree")?,
        tree("range_tree")?,
        perm,
        ints("twists")?,
    )
    .map_err(|e| e.to_string())
}

fn cmd_elt(inv: &Invocation) -> Result<Outcome, String> {
    let sub = inv.arg(0, "elt subverb")?;
    let variant = inv.variant()?;
    match sub {
        "eval" => {
            let g = parse_element(inv.arg(1, "element")?, variant)?;
            let x = ExtRational::parse(inv.arg(2, "point")?).map_err(|e| e.to_string())?;
            let y = g.evaluate(&x).map_err(|e| e.to_string())?;
            Ok(Outcome::ok(y.to_string(), json!({"value": y.to_string()})))
        }
        "compose" => {
            let g1 = parse_element(inv.arg(1, "first element")?, variant)?;
            let g2 = parse_element(inv.arg(2, "second element")?, variant)?;
            let g = compose(&g1, &g2).map_err(|e| e.to_string())?;
            let value = element_to_json(&g);
            Ok(Outcome::ok(value.to_string(), value))
        }
        "invert" => {
            let g = parse_element(inv.arg(1, "element")?, variant)?;
            let value = element_to_json(&g.invert());
            Ok(Outcome::ok(value.to_string(), value))
        }
        "flavor" => {
            let g = parse_element(inv.arg(1, "element")?, variant)?;
            let letter = match g.flavor() {
                Flavor::F => "F",
                Flavor::T => "T",
                Flavor::V => "V",
            };
            Ok(Outcome::ok(letter, json!({"flavor": letter})))
        }
        "equal" => {
            let g1 = parse_element(inv.arg(1, "first element")?, variant)?;
            let g2 = parse_element(inv.arg(2, "second element")?, variant)?;
            let eq = g1.same_element(&g2).map_err(|e| e.to_string())?;
            Ok(Outcome::verdict(eq, eq.to_string(), json!({"equal": eq})))
        }
        other => Err(format!("unknown elt subverb `{other}`")),
    }
}
