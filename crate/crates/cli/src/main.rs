use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context};
use birlinks_core::catalog::{Catalog, WciFamily};
use birlinks_core::error::Error;
use birlinks_core::exclusion::{self, CurveVerdict, KNOWN_NEF_TESTS};
use birlinks_core::game::{self, Verdict};
use birlinks_core::report::{self, LinkSummary, Report};
use birlinks_core::wps::{self, Cqs};
use birlinks_core::{blowup, tags, Q};
use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "birlinks", version, about = "Sarkisov links from Kawamata blowups of codimension-2 Fano 3-folds")]
struct Cli {
    /// Catalog file replacing the built-in one.
    #[arg(long, global = true, env = "BIRLINKS_CATALOG")]
    catalog: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value = "md")]
    format: Format,

    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Md,
    Json,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run the 2-ray game from one centre, or from every basket centre.
    Link {
        id: u32,
        /// Singularity type such as 1/9(1,1,8).
        #[arg(long, conflicts_with = "centre_index")]
        centre: Option<String>,
        /// Coordinate index 0..5 of the centre.
        #[arg(long)]
        centre_index: Option<usize>,
        /// Monomial-exclusion tag or registry name; repeatable.
        #[arg(long = "assume")]
        assume: Vec<String>,
    },
    /// Big-Table style rows for the chosen families (all when none given).
    Table {
        #[arg(long = "family")]
        family: Vec<u32>,
    },
    /// Exclusion calculators for one family.
    Exclude { id: u32 },
    /// List the registry of named special members.
    Tags,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn load(cli: &Cli) -> anyhow::Result<Catalog> {
    match &cli.catalog {
        Some(p) => Catalog::load(p).with_context(|| format!("loading catalog {}", p.display())),
        None => Ok(Catalog::builtin()),
    }
}

fn run(cli: &Cli) -> anyhow::Result<ExitCode> {
    match &cli.cmd {
        Cmd::Link { id, centre, centre_index, assume } => {
            let cat = load(cli)?;
            let f = cat.family(*id)?;
            let extra = tags::resolve(assume)?;
            let links = if let Some(i) = centre_index {
                if *i >= 6 {
                    bail!("centre index {i} out of range 0..5");
                }
                let mut all = f.tags()?;
                all.extend(extra.iter().filter(|t| !all.contains(t)).copied().collect::<Vec<_>>());
                let b = blowup::kawamata_blowup(f, *i, &all).context("Kawamata blowup")?;
                vec![LinkSummary::from_link(&game::run_game(b).context("2-ray game")?, None)]
            } else if let Some(spec) = centre {
                let s: Cqs = spec.parse()?;
                let s = wps::cqs_normal_form(&s)?;
                let known = f.basket.iter().any(|b| wps::cqs_normal_form(&b.sing()).ok() == Some(s));
                if !known {
                    return Err(Error::UnknownCentre { id: *id, spec: spec.clone() }.into());
                }
                let c = match wps::locate_centre(f, &s, &extra) {
                    Ok(c) => c,
                    Err(e @ Error::Ambiguous { .. }) => {
                        eprintln!("centre lookup: {e}");
                        return Ok(ExitCode::from(2));
                    }
                    Err(e) => return Err(anyhow::Error::new(e).context("centre lookup")),
                };
                vec![LinkSummary::from_link(&game::run_link(f, &c).context("2-ray game")?, None)]
            } else {
                let mut seen = vec![];
                let mut v = vec![];
                for b in &f.basket {
                    let s = wps::cqs_normal_form(&b.sing())?;
                    if !seen.contains(&s) {
                        seen.push(s);
                        v.push(report::link_summary(f, &s, &extra, None));
                    }
                }
                v
            };
            let mut rep = Report::new(f);
            rep.links = links;
            emit_links(cli.format, f, &rep);
            let flagged = rep.links.iter().any(|l| {
                l.verdict == Some(Verdict::RequiresUnprojection)
                    || l.error.as_deref().is_some_and(|e| e.starts_with("ambiguous"))
            });
            let failed = rep.links.iter().any(|l| l.error.is_some());
            Ok(if flagged {
                ExitCode::from(2)
            } else if failed {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            })
        }
        Cmd::Table { family } => {
            let cat = load(cli)?;
            let reports = report::table_report(&cat, family)?;
            match cli.format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&reports)?),
                Format::Md => println!("{}", report::markdown_table(&cat, &reports)),
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Exclude { id } => {
            let cat = load(cli)?;
            let f = cat.family(*id)?;
            let mut rep = Report::new(f);
            rep.exclusion = Some(report::exclusion_summary(f)?);
            match cli.format {
                Format::Json => println!("{}", rep.to_json()),
                Format::Md => print_exclusion(f, &rep)?,
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Tags => {
            match cli.format {
                Format::Json => println!("{}", serde_json::to_string_pretty(tags::REGISTRY)?),
                Format::Md => {
                    println!("| name | families | centre | tags | meaning |\n|---|---|---|---|---|");
                    for a in tags::REGISTRY {
                        let fams: Vec<String> = a.families.iter().map(|f| f.to_string()).collect();
                        println!("| {} | {} | {} | {} | {} |", a.name, fams.join(", "), a.centre, a.tags.join(", "), a.meaning);
                    }
                }
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn emit_links(format: Format, f: &WciFamily, rep: &Report) {
    if format == Format::Json {
        println!("{}", rep.to_json());
        return;
    }
    println!("{}", report::TABLE_HEADER);
    for l in &rep.links {
        println!("{}", report::markdown_row(f, l));
    }
    for l in &rep.links {
        println!();
        match (&l.coordinate, &l.error) {
            (_, Some(e)) => println!("{}: {e}", l.centre),
            (Some(c), None) => {
                println!("{} at p_{c}:", l.centre);
                for (i, s) in l.steps.iter().enumerate() {
                    println!("  {}. {}", i + 1, report::step_label(s));
                }
                if let Some(v) = l.verdict {
                    println!("  verdict: {}", report::verdict_label(v));
                }
            }
            (None, None) => {}
        }
    }
}

fn print_exclusion(f: &WciFamily, rep: &Report) -> anyhow::Result<()> {
    let ex = rep.exclusion.as_ref().expect("exclusion summary present");
    match &ex.curves {
        CurveVerdict::AllCurvesExcluded => println!("curves: excluded (ι²A³ ≤ 1)"),
        CurveVerdict::DegreeBound(b) => {
            let max_deg = (b.ceil() - Q::from_integer(1)).to_integer();
            let only = if max_deg == 1 { "only deg 1".to_string() } else { format!("deg 1..{max_deg}") };
            println!("curve degree bound {b} ⇒ {only}");
        }
    }
    println!("threshold 4/(ι²A³) = {}", ex.threshold);
    for c in &ex.centres {
        let verdict = if c.badlink_product < Q::from_integer(0) { "negative" } else { "not negative" };
        println!("{}: (−K)²·(−K−E) = {} ({verdict}); (−K_Y)³ = {}", c.centre, c.badlink_product, c.anticanonical_cube);
    }
    for t in KNOWN_NEF_TESTS.iter().filter(|t| t.family == f.id) {
        let lifts = t.lifts();
        let res = exclusion::nef_test_class_at(f, &t.centre, &lifts)?;
        let tail = if res.excludes() { "⇒ excluded" } else { "⇒ inconclusive" };
        println!("{}: M = −K_Y + ({})E, M·(−K)² = {} {tail}", t.centre, res.c, res.value);
    }
    println!("{}", ex.note);
    Ok(())
}
