use std::fmt::Write as _;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use orthoweb::brauer::{brauer_gram, LoopParams};
use orthoweb::combin::OWeight;
use orthoweb::evalfun::{
    check_udot_relations, instances, relation_sides, run_suite, Evaluator, InstanceReport,
    RelationId,
};
use orthoweb::howe::{
    actions_agree, commutant_check, commutant_dim, end_dim_prediction, fmf_span_dim,
};
use orthoweb::scalars::{Field, FieldSpec};
use orthoweb::ssquot::{gram_report, merge_split_negligibility, verlinde_crosscheck};
use orthoweb::webcat::{ladder, render_svg, LadderKind, WebDiagram};

#[derive(Parser, Debug)]
#[command(
    name = "orthoweb",
    version,
    about = "Exact evaluation and checking of orthogonal webs"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Evaluate a diagram to its matrix on exterior powers.
    Eval {
        #[arg(long)]
        diagram: PathBuf,
        #[arg(long = "N")]
        n: usize,
        #[arg(long, default_value = "q")]
        field: FieldSpec,
    },
    /// Check defining and derived relations under evaluation.
    Relcheck(RelcheckArgs),
    /// Howe duality checks.
    #[command(subcommand)]
    Howe(HoweCmd),
    /// Colored Brauer category.
    #[command(subcommand)]
    Brauer(BrauerCmd),
    /// Semisimplification.
    #[command(subcommand)]
    Ss(SsCmd),
    /// Weight combinatorics.
    #[command(subcommand)]
    Weights(WeightsCmd),
    /// Build or normalize diagrams as JSON.
    #[command(subcommand)]
    Diagram(DiagramCmd),
    /// Render a diagram to SVG.
    Render {
        #[arg(long)]
        diagram: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Args, Debug)]
pub struct RelcheckArgs {
    /// Relation name, e.g. `digon` or `higher-even-orth-serre`.
    #[arg(long, conflicts_with = "suite")]
    relation: Option<RelationId>,
    /// `full`: every relation, N ∈ {2,3,4}, fields {q, 3, 5}, plus the Howe and U̇ batteries.
    #[arg(long)]
    suite: Option<String>,
    #[arg(long = "N")]
    n: Option<usize>,
    #[arg(long, default_value = "q")]
    field: FieldSpec,
    /// Only instances with these boundary labels (comma separated).
    #[arg(long, value_delimiter = ',', conflicts_with = "all_labels")]
    labels: Option<Vec<usize>>,
    /// Every label instance ≤ N (the default).
    #[arg(long)]
    all_labels: bool,
}

#[derive(Subcommand, Debug)]
pub enum HoweCmd {
    /// Dot-diagram and ladder actions agree.
    Agree {
        #[arg(long = "N")]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long, default_value = "q")]
        field: FieldSpec,
        #[arg(long, default_value_t = 1)]
        max_power: usize,
    },
    /// Ladders commute with so_N and σ.
    Commute {
        #[arg(long = "N")]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long, default_value = "q")]
        field: FieldSpec,
    },
    /// fmf-span rank of End against the Weyl dimension prediction.
    Enddim {
        #[arg(long = "N")]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long, default_value = "q")]
        field: FieldSpec,
    },
}

#[derive(Subcommand, Debug)]
pub enum BrauerCmd {
    /// Trace-pairing Gram matrix between two color words.
    Gram {
        #[arg(long, value_delimiter = ',', num_args = 0..)]
        word: Vec<usize>,
        /// Target word (defaults to the source word).
        #[arg(long, value_delimiter = ',', num_args = 0..)]
        target: Option<Vec<usize>>,
        #[arg(long, value_delimiter = ',')]
        params: Vec<i64>,
        #[arg(long, default_value = "q")]
        field: FieldSpec,
    },
}

#[derive(Subcommand, Debug)]
pub enum SsCmd {
    /// Semisimplified Hom dimension between label sequences.
    Dim {
        #[arg(long, value_delimiter = ',', num_args = 0..)]
        source: Vec<usize>,
        #[arg(long, value_delimiter = ',', num_args = 0..)]
        target: Vec<usize>,
        #[arg(long = "N")]
        n: usize,
        #[arg(long)]
        p: u64,
    },
    /// Negligibility of the merge and split a⊗b ↔ a+b with a+b a power of p.
    NegligibleMerge {
        #[arg(long)]
        a: usize,
        #[arg(long)]
        b: usize,
        #[arg(long)]
        p: u64,
        #[arg(long = "N")]
        n: usize,
    },
    /// Web-side ss Hom against colored Brauer with d_i = N_i.
    Crosscheck {
        #[arg(long, value_delimiter = ',', num_args = 0..)]
        word: Vec<usize>,
        #[arg(long, value_delimiter = ',', num_args = 0..)]
        target: Option<Vec<usize>>,
        #[arg(long)]
        p: u64,
        #[arg(long = "N")]
        n: usize,
    },
}

#[derive(Subcommand, Debug)]
pub enum WeightsCmd {
    /// λ ↦ λ† between O(N)-weights in the m-box and so_{2m}-weights.
    Dagger {
        #[arg(long = "N")]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long, value_delimiter = ',', conflicts_with = "all")]
        lambda: Option<Vec<usize>>,
        #[arg(long)]
        all: bool,
    },
}

#[derive(Subcommand, Debug)]
pub enum DiagramCmd {
    /// A ladder diagram E, F, e or f.
    Ladder {
        #[arg(long)]
        kind: String,
        #[arg(long, default_value_t = 1)]
        a: usize,
        #[arg(long)]
        i: usize,
        #[arg(long, value_delimiter = ',')]
        labels: Vec<usize>,
    },
    /// Parse and re-emit a diagram in canonical form.
    Normalize {
        #[arg(long)]
        diagram: PathBuf,
    },
}

/// Report lines for stdout, an optional timing table for stderr, and the overall verdict.
pub struct Outcome {
    pub lines: Vec<String>,
    pub summary: Option<String>,
    pub pass: bool,
}

impl Outcome {
    fn single(v: Value, pass: bool) -> Self {
        Outcome {
            lines: vec![v.to_string()],
            summary: None,
            pass,
        }
    }
}

fn field_of(spec: FieldSpec) -> Result<Field, String> {
    spec.field().map_err(|e| e.to_string())
}

fn read_diagram(path: &PathBuf) -> Result<WebDiagram, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    WebDiagram::from_json(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn field_name(f: Field) -> String {
    f.spec().to_string()
}

const MAX_N: usize = 20;

fn evaluator(n: usize, f: Field) -> Result<Evaluator, String> {
    if n > MAX_N {
        return Err(format!("N = {n} exceeds the supported maximum {MAX_N}"));
    }
    Ok(Evaluator::new(n, f))
}

pub fn run(cli: &Cli) -> Result<Outcome, String> {
    match &cli.command {
        Command::Eval { diagram, n, field } => {
            let d = read_diagram(diagram)?;
            let ev = evaluator(*n, field_of(*field)?)?;
            let m = ev.evaluate(&d);
            if (m.rows, m.cols) == (1, 1) {
                return Ok(Outcome {
                    lines: vec![m.get(0, 0).to_string()],
                    summary: None,
                    pass: true,
                });
            }
            let dense: Vec<Vec<String>> = m
                .to_dense()
                .iter()
                .map(|r| r.iter().map(|x| x.to_string()).collect())
                .collect();
            Ok(Outcome::single(
                json!({"rows": m.rows, "cols": m.cols, "matrix": dense}),
                true,
            ))
        }
        Command::Relcheck(args) => relcheck(args),
        Command::Howe(cmd) => howe(cmd),
        Command::Brauer(BrauerCmd::Gram {
            word,
            target,
            params,
            field,
        }) => {
            let f = field_of(*field)?;
            let target = target.clone().unwrap_or_else(|| word.clone());
            let lp = LoopParams::new(f, params.iter().map(|&d| f.from_i64(d)).collect());
            let g = brauer_gram(word, &target, &lp).map_err(|e| e.to_string())?;
            let dense: Vec<Vec<String>> = g
                .to_dense()
                .iter()
                .map(|r| r.iter().map(|x| x.to_string()).collect())
                .collect();
            Ok(Outcome::single(
                json!({"source": word, "target": target, "field": field_name(f), "rank": g.rank(), "gram": dense}),
                true,
            ))
        }
        Command::Ss(cmd) => ss(cmd),
        Command::Weights(WeightsCmd::Dagger { n, m, lambda, all }) => {
            let weights = match (lambda, all) {
                (Some(l), _) => vec![OWeight::new(l.clone(), *n).map_err(|e| e.to_string())?],
                (None, _) => OWeight::in_box(*n, *m),
            };
            let mut lines = Vec::new();
            let mut pass = true;
            for w in weights {
                let d = w.dagger(*m).map_err(|e| e.to_string())?;
                let oracle = w.dagger_via_far_right(*m);
                pass &= d == oracle && d.is_dominant();
                lines.push(json!({"lambda": w.partition, "epsilon": w.epsilon, "N": n, "m": m, "dagger": d.entries, "dominant": d.is_dominant()}).to_string());
            }
            Ok(Outcome {
                lines,
                summary: None,
                pass,
            })
        }
        Command::Diagram(DiagramCmd::Ladder { kind, a, i, labels }) => {
            let kind = match kind.as_str() {
                "E" => LadderKind::E,
                "F" => LadderKind::F,
                "e" => LadderKind::LowerE,
                "f" => LadderKind::LowerF,
                other => {
                    return Err(format!(
                        "unknown ladder kind `{other}` (expected E, F, e or f)"
                    ))
                }
            };
            if *i == 0 || *i >= labels.len() {
                return Err(format!("rung {i} needs strands {i} and {}", i + 1));
            }
            let d = ladder(kind, *a, *i, labels).map_err(|e| e.to_string())?;
            Ok(Outcome {
                lines: vec![d.to_json()],
                summary: None,
                pass: true,
            })
        }
        Command::Diagram(DiagramCmd::Normalize { diagram }) => {
            let d = read_diagram(diagram)?;
            Ok(Outcome {
                lines: vec![d.to_json()],
                summary: None,
                pass: true,
            })
        }
        Command::Render { diagram, out } => {
            let d = read_diagram(diagram)?;
            std::fs::write(out, render_svg(&d)).map_err(|e| format!("{}: {e}", out.display()))?;
            Ok(Outcome::single(
                json!({"written": out.display().to_string()}),
                true,
            ))
        }
    }
}

#[derive(Default)]
struct Tally {
    rows: Vec<(String, usize, usize, u128)>,
}

impl Tally {
    fn add(&mut self, name: String, total: usize, failed: usize, elapsed: u128) {
        self.rows.push((name, total, failed, elapsed));
    }

    fn table(&self) -> String {
        let mut s = format!(
            "{:<40} {:>9} {:>7} {:>10}\n",
            "check", "instances", "failed", "elapsed_ms"
        );
        for (name, total, failed, ms) in &self.rows {
            let _ = writeln!(s, "{name:<40} {total:>9} {failed:>7} {ms:>10}");
        }
        s
    }
}

fn report_line(r: &InstanceReport) -> String {
    serde_json::to_string(r).expect("reports serialize")
}

fn relcheck(args: &RelcheckArgs) -> Result<Outcome, String> {
    let mut lines = Vec::new();
    let mut tally = Tally::default();
    let mut pass = true;
    match (&args.suite, args.relation) {
        (Some(s), _) if s == "full" => {
            for n in [2, 3, 4] {
                for spec in [FieldSpec::Q, FieldSpec::prime(3), FieldSpec::prime(5)] {
                    let ev = Evaluator::new(n, field_of(spec)?);
                    for &id in RelationId::ALL {
                        let t = Instant::now();
                        let reps = run_suite(&ev, &[id]);
                        let failed = reps.iter().filter(|r| !r.pass).count();
                        pass &= failed == 0;
                        tally.add(
                            format!("{id} N={n} {spec}"),
                            reps.len(),
                            failed,
                            t.elapsed().as_millis(),
                        );
                        lines.extend(reps.iter().map(report_line));
                    }
                }
            }
            for (n, m) in [(1, 2), (1, 3), (2, 2), (2, 3), (3, 2), (3, 3)] {
                let t = Instant::now();
                let mut failed = 0;
                for (name, rep) in [
                    ("HoweAgree", actions_agree(n, m, 2, Field::q())),
                    ("HoweCommute", commutant_check(n, m, Field::q())),
                ] {
                    pass &= rep.passed();
                    failed += usize::from(!rep.passed());
                    lines.push(json!({"id": name, "N": n, "m": m, "field": "q", "checked": rep.checked, "pass": rep.passed(), "failures": rep.failures}).to_string());
                }
                tally.add(
                    format!("Howe N={n} m={m}"),
                    2,
                    failed,
                    t.elapsed().as_millis(),
                );
            }
            for (n, m) in [(1, 2), (2, 2), (2, 3), (3, 2), (3, 3)] {
                let t = Instant::now();
                let rep = check_udot_relations(m, 2, &Evaluator::new(n, Field::q()));
                pass &= rep.passed();
                tally.add(
                    format!("Udot N={n} m={m}"),
                    rep.checked,
                    rep.failures.len(),
                    t.elapsed().as_millis(),
                );
                lines.push(json!({"id": "Udot", "N": n, "m": m, "field": "q", "checked": rep.checked, "pass": rep.passed(), "failures": rep.failures}).to_string());
            }
        }
        (Some(s), _) => return Err(format!("unknown suite `{s}` (expected `full`)")),
        (None, Some(id)) => {
            let n = args.n.ok_or("--N is required with --relation")?;
            let ev = evaluator(n, field_of(args.field)?)?;
            let t = Instant::now();
            let (mut count, mut failed) = (0, 0);
            for p in instances(id, n) {
                if args.labels.as_ref().is_some_and(|l| *l != p.labels) {
                    continue;
                }
                let sides = relation_sides(id, &p, &ev);
                let r = InstanceReport {
                    id,
                    n,
                    field: field_name(ev.field()),
                    vacuous: sides.is_none(),
                    pass: sides.is_none_or(|(l, r)| l == r),
                    params: p,
                };
                pass &= r.pass;
                count += 1;
                failed += usize::from(!r.pass);
                lines.push(report_line(&r));
            }
            if count == 0 {
                return Err(format!(
                    "{id} has no instances with the requested labels at N={n}"
                ));
            }
            tally.add(
                format!("{id} N={n} {}", args.field),
                count,
                failed,
                t.elapsed().as_millis(),
            );
        }
        (None, None) => return Err("give --relation <name> or --suite full".into()),
    }
    Ok(Outcome {
        lines,
        summary: Some(tally.table()),
        pass,
    })
}

fn howe(cmd: &HoweCmd) -> Result<Outcome, String> {
    match cmd {
        HoweCmd::Agree {
            n,
            m,
            field,
            max_power,
        } => {
            let f = field_of(*field)?;
            let rep = actions_agree(*n, *m, *max_power, f);
            Ok(Outcome::single(
                json!({"check": "agree", "N": n, "m": m, "field": field_name(f), "checked": rep.checked, "pass": rep.passed(), "failures": rep.failures}),
                rep.passed(),
            ))
        }
        HoweCmd::Commute { n, m, field } => {
            let f = field_of(*field)?;
            let rep = commutant_check(*n, *m, f);
            Ok(Outcome::single(
                json!({"check": "commute", "N": n, "m": m, "field": field_name(f), "checked": rep.checked, "pass": rep.passed(), "failures": rep.failures}),
                rep.passed(),
            ))
        }
        HoweCmd::Enddim { n, m, field } => {
            let f = field_of(*field)?;
            let prediction = end_dim_prediction(*n, *m);
            let rank = fmf_span_dim(*n, *m, f);
            let mut v = json!({"check": "enddim", "N": n, "m": m, "field": field_name(f), "prediction": prediction.to_string(), "fmf_rank": rank});
            let mut pass = prediction == rank.into();
            if f.characteristic() == 0 {
                let c = commutant_dim(*n, *m, f);
                v["commutant"] = json!(c);
                pass &= c == rank;
            }
            v["pass"] = json!(pass);
            Ok(Outcome::single(v, pass))
        }
    }
}

fn ss(cmd: &SsCmd) -> Result<Outcome, String> {
    match cmd {
        SsCmd::Dim {
            source,
            target,
            n,
            p,
        } => {
            let f = field_of(FieldSpec::prime(*p))?;
            let rep = gram_report(source, target, &evaluator(*n, f)?);
            Ok(Outcome::single(
                serde_json::to_value(rep).expect("reports serialize"),
                true,
            ))
        }
        SsCmd::NegligibleMerge { a, b, p, n } => {
            field_of(FieldSpec::prime(*p))?;
            let q = a + b;
            let i = (0..64u32)
                .find(|&i| p.checked_pow(i) == Some(q as u64))
                .ok_or(format!("{a}+{b} is not a power of {p}"))?;
            let neg = merge_split_negligibility(*a, *b, i, *p, *n).map_err(|e| e.to_string())?;
            Ok(Outcome::single(
                json!({"check": "negligible-merge", "a": a, "b": b, "p": p, "N": n, "negligible": neg, "pass": neg}),
                neg,
            ))
        }
        SsCmd::Crosscheck { word, target, p, n } => {
            field_of(FieldSpec::prime(*p))?;
            let target = target.clone().unwrap_or_else(|| word.clone());
            let rep = verlinde_crosscheck(word, &target, *p, *n).map_err(|e| e.to_string())?;
            let pass = rep.pass;
            Ok(Outcome::single(
                serde_json::to_value(rep).expect("reports serialize"),
                pass,
            ))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use orthoweb::combin::Composition;

    #[test]
    fn parses_relation_names() {
        let cli = Cli::try_parse_from([
            "orthoweb",
            "relcheck",
            "--relation",
            "higher-even-orth-serre",
            "--N",
            "2",
        ])
        .unwrap();
        let Command::Relcheck(a) = cli.command else {
            panic!()
        };
        assert_eq!(a.relation, Some(RelationId::HigherEvenOrthSerre));
    }

    #[test]
    fn dagger_table() {
        let cli = Cli::try_parse_from([
            "orthoweb", "weights", "dagger", "--N", "2", "--m", "2", "--all",
        ])
        .unwrap();
        let out = run(&cli).unwrap();
        assert!(out.pass);
        assert_eq!(out.lines.len(), OWeight::in_box(2, 2).len());
        assert!(Composition::dominant(2, 2).len() >= out.lines.len());
    }
}
