//! `reflect` — exact computations in finite Weyl groups and reductive
//! groups: diagrams and class data, plus end-to-end verification
//! scenarios for braid centralizers, quasi-isolated classes, order-8
//! torsion in twisted Levis, and extended-diagram centralizer types.

mod diagram;
mod render;
mod scenarios;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use reflect_core::budget::Budget;
use reflect_core::cosets::Coset;
use reflect_core::coxeter::CoxGroup;
use reflect_core::rootsys::{CartanType, Isogeny, RootDatum};
use reflect_core::semisimple::centralizer_class_representatives;

use render::{canonical_json, Format, Table, JSON_SCHEMA};
use scenarios::Tier;

#[derive(Parser)]
#[command(
    name = "reflect",
    version,
    about = "Exact Weyl group, braid conjugacy and torsion-point computations"
)]
struct Cli {
    /// Output format: plain | tex | json
    #[arg(long, global = true, default_value = "plain")]
    format: String,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print the diagram, group order, positive root count and degrees.
    Info {
        /// Cartan type, e.g. E6 or A2+B3
        #[arg(long, value_name = "TYPE")]
        r#type: Option<String>,
        /// Isogeny for --type: adjoint (default) or sc
        #[arg(long, default_value = "adjoint")]
        isogeny: String,
        /// Named datum, e.g. gl,3 or sl,4 or pgl,4
        #[arg(long, value_name = "NAME,N")]
        datum: Option<String>,
    },
    /// Conjugacy class data; with --twist, F-classes of the coset.
    Classinfo {
        #[arg(long, value_name = "TYPE")]
        r#type: String,
        #[arg(long, default_value = "adjoint")]
        isogeny: String,
        /// Diagram automorphism in cycle form, e.g. "(1,6)(3,5)"
        #[arg(long)]
        twist: Option<String>,
    },
    /// Replay a verification scenario and diff against its goldens.
    Verify {
        /// One of: a3-classes, 2e6-centralizers, e6-quasi-isolated,
        /// e7-order8, f4-errata, e7-errata, e8-errata
        scenario: String,
        /// Prime power for e7-order8 (3 or 5)
        #[arg(long, default_value_t = 3)]
        q: u64,
        /// default | long (all braid classes) | extended (rank-8 runs)
        #[arg(long, default_value = "default")]
        budget: String,
    },
    /// Canonical form of a braid word (optionally inverted), printed as
    /// a positive word or reduced fraction.
    Braid {
        #[arg(long, value_name = "TYPE")]
        r#type: String,
        /// Comma-separated generator labels, e.g. 1,2,1
        #[arg(long)]
        word: String,
        #[arg(long, default_value_t = false)]
        invert: bool,
    },
    /// Isomorphism types of extended-diagram subsystems after the
    /// characteristic-p torsion filter.
    ExtCentralizers {
        #[arg(long, value_name = "TYPE")]
        r#type: String,
        #[arg(long, default_value_t = 0)]
        p: u64,
        /// default | extended (required for rank 8)
        #[arg(long, default_value = "default")]
        budget: String,
    },
}

fn main() {
    let cli = Cli::parse();
    let format = match Format::parse(&cli.format) {
        Ok(f) => f,
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(2);
        }
    };
    let code = match run(cli, format) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    };
    std::process::exit(code);
}

fn parse_tier(s: &str) -> Result<Tier, String> {
    match s {
        "default" => Ok(Tier::Default),
        "long" => Ok(Tier::Long),
        "extended" => Ok(Tier::Extended),
        _ => Err(format!("unknown budget tier {s:?} (expected default|long|extended)")),
    }
}

fn parse_isogeny(s: &str) -> Result<Isogeny, String> {
    match s {
        "adjoint" => Ok(Isogeny::Adjoint),
        "sc" => Ok(Isogeny::SimplyConnected),
        _ => Err(format!("unknown isogeny {s:?} (expected adjoint|sc)")),
    }
}

/// Parse "(1,6)(3,5)" into a 1-based label map for rank n.
fn parse_cycles(s: &str, n: usize) -> Result<Vec<usize>, String> {
    let mut map: Vec<usize> = (1..=n).collect();
    let body = s.trim();
    if body.is_empty() || body == "()" {
        return Ok(map);
    }
    for cycle in body.split(')') {
        let cycle = cycle.trim();
        if cycle.is_empty() {
            continue;
        }
        let cycle = cycle.trim_start_matches('(');
        let labels: Vec<usize> = cycle
            .split(',')
            .map(|x| x.trim().parse::<usize>().map_err(|_| format!("bad cycle {s:?}")))
            .collect::<Result<_, _>>()?;
        if labels.iter().any(|&l| l == 0 || l > n) {
            return Err(format!("cycle label out of range in {s:?}"));
        }
        for k in 0..labels.len() {
            map[labels[k] - 1] = labels[(k + 1) % labels.len()];
        }
    }
    Ok(map)
}

fn run(cli: Cli, format: Format) -> Result<i32, String> {
    let budget = Budget::from_env();
    match cli.cmd {
        Cmd::Info { r#type, isogeny, datum } => {
            let (name, d) = match (r#type, datum) {
                (Some(t), None) => {
                    let ct = CartanType::parse(&t).map_err(|e| e.to_string())?;
                    (t, RootDatum::preset(&ct, parse_isogeny(&isogeny)?))
                }
                (None, Some(spec)) => {
                    let (nm, narg) = spec
                        .split_once(',')
                        .ok_or_else(|| format!("expected NAME,N but got {spec:?}"))?;
                    let n: usize =
                        narg.trim().parse().map_err(|_| format!("bad rank in {spec:?}"))?;
                    (spec.clone(), RootDatum::named(nm.trim(), n).map_err(|e| e.to_string())?)
                }
                _ => return Err("pass exactly one of --type or --datum".into()),
            };
            let w = CoxGroup::build(d).map_err(|e| e.to_string())?;
            print_info(&name, &w, format);
            Ok(0)
        }
        Cmd::Classinfo { r#type, isogeny, twist } => {
            let ct = CartanType::parse(&r#type).map_err(|e| e.to_string())?;
            let w = CoxGroup::from_type(&ct, parse_isogeny(&isogeny)?).map_err(|e| e.to_string())?;
            let coset = match twist {
                Some(t) => {
                    let map = parse_cycles(&t, w.n_gens)?;
                    Coset::new(w.clone(), &map).map_err(|e| e.to_string())?
                }
                None => Coset::untwisted(w.clone()),
            };
            let info = coset.f_conjugacy_classes(&budget).map_err(|e| e.to_string())?;
            let elliptic = coset.elliptic_flags(&info, &budget).map_err(|e| e.to_string())?;
            let twisted = !coset.is_untwisted();
            let mut headers = vec!["class", "size", "length", "word"];
            if twisted {
                headers.push("elliptic");
            } else {
                headers.push("order");
            }
            let mut table = Table::new(&headers);
            for (k, (c, ell)) in info.classes.iter().zip(&elliptic).enumerate() {
                let word = if c.rep_word.is_empty() {
                    ".".to_string()
                } else {
                    c.rep_word.iter().map(|l| l.to_string()).collect()
                };
                let mut row = vec![
                    (k + 1).to_string(),
                    c.size.to_string(),
                    c.min_length.to_string(),
                    word,
                ];
                if twisted {
                    row.push(ell.to_string());
                } else {
                    row.push(c.order.to_string());
                }
                table.push(row);
            }
            println!("{}", coset.name);
            print!("{}", table.render(format));
            Ok(0)
        }
        Cmd::Verify { scenario, q, budget: tier } => {
            let tier = parse_tier(&tier)?;
            let b = if tier == Tier::Extended { budget.with_extended() } else { budget };
            let report = scenarios::run(&scenario, q, tier, &b).map_err(|e| e.to_string())?;
            let pass = report.pass();
            match format {
                Format::Json => {
                    let v = json!({
                        "schema": JSON_SCHEMA,
                        "scenario": report.scenario,
                        "pass": pass,
                        "assertions": report.assertions.iter().map(|a| json!({
                            "id": a.id,
                            "source": a.source,
                            "expected": a.expected,
                            "got": a.got,
                            "pass": a.pass(),
                        })).collect::<Vec<Value>>(),
                    });
                    println!("{}", canonical_json(&v));
                }
                _ => {
                    println!("scenario {}", report.scenario);
                    for a in &report.assertions {
                        if a.pass() {
                            println!("  ok    {} [{}]", a.id, a.source);
                        } else {
                            println!(
                                "  FAIL  {} [{}]\n        expected {}\n        got      {}",
                                a.id, a.source, a.expected, a.got
                            );
                        }
                    }
                    println!("{}: {}", report.scenario, if pass { "PASS" } else { "FAIL" });
                }
            }
            Ok(if pass { 0 } else { 1 })
        }
        Cmd::Braid { r#type, word, invert } => {
            let ct = CartanType::parse(&r#type).map_err(|e| e.to_string())?;
            let w = CoxGroup::from_type(&ct, Isogeny::Adjoint).map_err(|e| e.to_string())?;
            let letters: Vec<usize> = word
                .split(',')
                .map(|x| x.trim().parse::<usize>().map_err(|_| format!("bad word {word:?}")))
                .collect::<Result<_, _>>()?;
            if letters.iter().any(|&l| l == 0 || l > w.n_gens) {
                return Err(format!("letter out of range in {word:?}"));
            }
            let ctx = reflect_core::garside::BraidCtx::new(w);
            let mut b = reflect_core::garside::positive_lift(&ctx, &letters);
            if invert {
                b = reflect_core::garside::braid_inverse(&b);
            }
            match format {
                Format::Json => {
                    let v = json!({
                        "schema": JSON_SCHEMA,
                        "display": b.display(),
                        "inf": b.inf,
                        "canonical_length": b.canonical_length(),
                    });
                    println!("{}", canonical_json(&v));
                }
                _ => println!("{}", b.display()),
            }
            Ok(0)
        }
        Cmd::ExtCentralizers { r#type, p, budget: tier } => {
            let tier = parse_tier(&tier)?;
            let b = if tier == Tier::Extended { budget.with_extended() } else { budget };
            let ct = CartanType::parse(&r#type).map_err(|e| e.to_string())?;
            let w = CoxGroup::from_type(&ct, Isogeny::Adjoint).map_err(|e| e.to_string())?;
            let reps = centralizer_class_representatives(&w, p, &b).map_err(|e| e.to_string())?;
            let mut table = Table::new(&["type", "rank", "order", "simple roots"]);
            for s in &reps {
                table.push(vec![
                    s.isomorphism_type(),
                    s.n_gens().to_string(),
                    s.order.to_string(),
                    format!(
                        "[{}]",
                        s.simple_labels()
                            .iter()
                            .map(|l| l.to_string())
                            .collect::<Vec<_>>()
                            .join(",")
                    ),
                ]);
            }
            print!("{}", table.render(format));
            Ok(0)
        }
    }
}

fn print_info(name: &str, w: &CoxGroup, format: Format) {
    let types: Vec<_> = w.ctype.iter().map(|(t, _)| *t).collect();
    let ct = CartanType { components: types };
    let degrees: Vec<usize> = ct.degrees();
    match format {
        Format::Json => {
            let v = json!({
                "schema": JSON_SCHEMA,
                "name": name,
                "type": w.type_string(),
                "rank": w.rank,
                "semisimple_rank": w.n_gens,
                "order": w.order.to_string(),
                "positive_roots": w.n_pos,
                "degrees": degrees,
                "simple_roots": w.datum.r.to_i64_rows(),
                "simple_coroots": w.datum.rv.to_i64_rows(),
            });
            println!("{}", canonical_json(&v));
        }
        _ => {
            println!("{}", diagram::diagram(&ct));
            println!("|W| = {}, positive roots = {}, rank = {}", w.order, w.n_pos, w.rank);
            println!(
                "degrees: {}",
                degrees.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(", ")
            );
        }
    }
}
