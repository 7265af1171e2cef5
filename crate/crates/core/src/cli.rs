//! Command-line front end.
//!
//! [`run`] parses an argument list, executes one subcommand and returns the
//! exit status with the text it would print. Status 0 means success, 1 a
//! verification mismatch, 2 a usage, domain or capacity error.

use std::fmt::Write as _;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::branch::{self, Weight, WeightMultiset};
use crate::catalog::StemType;
use crate::embed::{find_embeddings, EmbedQuery, MetricClass, Realization, StemLibrary};
use crate::error::{Error, Result};
use crate::rootsys::{
    build_positive_roots, parse_target, Family, PositiveRootSet, RootMask, RootVector,
};
use crate::splint::{classify_records, enumerate_splints_with, preferred, SplintRecord};
use crate::splint::{
    expected_rows, verify_table, ExpectedRow, TargetReport, DESK_TARGETS, TABLE_VERSION,
};
use crate::weyl::{weyl_group, WeylClass};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Parser, Debug)]
#[command(name = "rootsplint", version, about = "Splints of root systems")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print a positive root system.
    Roots {
        /// Family letter, or a full target such as B4.
        #[arg(long = "type")]
        family: String,
        #[arg(long)]
        rank: Option<usize>,
        #[arg(long)]
        json: bool,
    },
    /// Query embeddings of a stem into a target.
    Embed {
        /// Stem such as 2A1+B2.
        #[arg(long)]
        stem: String,
        #[arg(long)]
        target: String,
        /// List every embedding.
        #[arg(long, conflicts_with = "exists")]
        enumerate: bool,
        /// Print whether an embedding exists (default).
        #[arg(long)]
        exists: bool,
        /// Only consider metric embeddings.
        #[arg(long)]
        metric: bool,
    },
    /// Enumerate the splints of a simple target.
    Splints {
        #[arg(long = "type")]
        target: String,
        /// Group splints into Weyl classes.
        #[arg(long)]
        classes: bool,
        #[arg(long)]
        json: bool,
        #[command(flatten)]
        jobs: Jobs,
    },
    /// Compare enumerated splints with the reference table.
    Verify {
        /// All reference targets (the default).
        #[arg(long, conflicts_with = "targets")]
        all: bool,
        /// Comma-separated targets such as G2,F4.
        #[arg(long, value_delimiter = ',')]
        targets: Vec<String>,
        #[arg(long)]
        json: bool,
        /// Print the embedded reference table as JSON instead.
        #[arg(long)]
        dump_expected: bool,
        #[command(flatten)]
        jobs: Jobs,
    },
    /// Restrict an irreducible module to a subsystem.
    Branch {
        #[arg(long = "type")]
        target: String,
        /// Highest weight as comma-separated ambient coordinates.
        #[arg(
            long,
            allow_hyphen_values = true,
            required_unless_present = "fundamental"
        )]
        weight: Option<String>,
        /// Highest weight as comma-separated fundamental coefficients.
        #[arg(long, conflicts_with = "weight")]
        fundamental: Option<String>,
        /// `long`, `short`, or comma-separated roots such as e1-e2.
        #[arg(long)]
        sub: String,
        /// Rank-2 type whose weight diagrams are matched against the result.
        #[arg(long = "match")]
        pattern: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Time splint enumeration.
    Bench {
        /// Comma-separated targets (default A5,B4,C4,D4,G2,F4).
        #[arg(long, value_delimiter = ',')]
        targets: Vec<String>,
        #[command(flatten)]
        jobs: Jobs,
    },
}

#[derive(Args, Debug)]
struct Jobs {
    /// Worker threads for enumeration (all cores by default).
    #[arg(long)]
    jobs: Option<usize>,
}

/// Runs the tool on `argv` (including the program name).
pub fn run<I, T>(argv: I) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let status = if e.use_stderr() { 2 } else { 0 };
            return (status, e.render().to_string());
        }
    };
    match execute(cli.command) {
        Ok(r) => r,
        Err(e) => (2, format!("error: {e}\n")),
    }
}

fn execute(cmd: Command) -> Result<(i32, String)> {
    match cmd {
        Command::Roots { family, rank, json } => {
            let (f, r) = match rank {
                Some(r) => (family.parse::<Family>()?, r),
                None => parse_target(&family)?,
            };
            cmd_roots(f, r, json)
        }
        Command::Embed {
            stem,
            target,
            enumerate,
            exists: _,
            metric,
        } => cmd_embed(&stem, &target, enumerate, metric),
        Command::Splints {
            target,
            classes,
            json,
            jobs,
        } => cmd_splints(&target, classes, json, jobs.jobs),
        Command::Verify {
            all: _,
            targets,
            json,
            dump_expected,
            jobs,
        } => {
            let list = if targets.is_empty() {
                DESK_TARGETS.to_vec()
            } else {
                targets
                    .iter()
                    .map(|t| parse_target(t))
                    .collect::<Result<_>>()?
            };
            if dump_expected {
                cmd_dump_expected(&list)
            } else {
                cmd_verify(&list, json, jobs.jobs)
            }
        }
        Command::Branch {
            target,
            weight,
            fundamental,
            sub,
            pattern,
            json,
        } => cmd_branch(
            &target,
            weight.as_deref(),
            fundamental.as_deref(),
            &sub,
            pattern.as_deref(),
            json,
        ),
        Command::Bench { targets, jobs } => {
            let list: Vec<(Family, usize)> = if targets.is_empty() {
                vec![
                    (Family::A, 5),
                    (Family::B, 4),
                    (Family::C, 4),
                    (Family::D, 4),
                    (Family::G, 2),
                    (Family::F, 4),
                ]
            } else {
                targets
                    .iter()
                    .map(|t| parse_target(t))
                    .collect::<Result<_>>()?
            };
            cmd_bench(&list, jobs.jobs)
        }
    }
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("report serializes");
    s.push('\n');
    s
}

fn vectors(prs: &PositiveRootSet, mask: RootMask) -> Vec<Vec<i64>> {
    prs.vectors_of(mask)
        .iter()
        .map(|v| v.coords().to_vec())
        .collect()
}

fn e_list(prs: &PositiveRootSet, mask: RootMask) -> String {
    let items: Vec<String> = prs
        .vectors_of(mask)
        .iter()
        .map(|v| v.to_e_notation(prs.index_base()))
        .collect();
    format!("{{{}}}", items.join(", "))
}

#[derive(Serialize)]
struct TargetJson {
    family: Family,
    rank: usize,
    roots: Vec<Vec<i64>>,
}

impl TargetJson {
    fn new(family: Family, rank: usize, prs: &PositiveRootSet) -> Self {
        TargetJson {
            family,
            rank,
            roots: vectors(prs, prs.full_mask()),
        }
    }
}

fn cmd_roots(family: Family, rank: usize, json: bool) -> Result<(i32, String)> {
    let prs = build_positive_roots(family, rank)?;
    if json {
        #[derive(Serialize)]
        struct Out {
            version: &'static str,
            target: TargetJson,
            simple_roots: Vec<Vec<i64>>,
            triples: usize,
        }
        return Ok((
            0,
            to_json(&Out {
                version: VERSION,
                target: TargetJson::new(family, rank, &prs),
                simple_roots: vectors(&prs, prs.simple_roots()),
                triples: prs.triples().len(),
            }),
        ));
    }
    let mut out = String::new();
    writeln!(
        out,
        "{family}{rank}: {} positive roots, {} sum triples",
        prs.len(),
        prs.triples().len()
    )
    .unwrap();
    writeln!(out, "simple roots: {}", e_list(&prs, prs.simple_roots())).unwrap();
    for v in prs.roots() {
        writeln!(out, "  {}", v.to_e_notation(prs.index_base())).unwrap();
    }
    Ok((0, out))
}

fn cmd_embed(stem: &str, target: &str, enumerate: bool, metric: bool) -> Result<(i32, String)> {
    let stem: StemType = stem.parse()?;
    let (f, r) = parse_target(target)?;
    let prs = build_positive_roots(f, r)?;
    let query = EmbedQuery {
        limit: if enumerate || metric { None } else { Some(1) },
        ..EmbedQuery::default()
    };
    let mut found = find_embeddings(&stem, &prs, query)?;
    if metric {
        found.retain(|e| e.metric_class == MetricClass::Metric);
    }
    if !enumerate {
        return Ok((0, format!("{}\n", !found.is_empty())));
    }
    let mut out = String::new();
    for e in &found {
        let images: Vec<String> = e
            .assignment
            .iter()
            .map(|&i| prs.root(i).to_e_notation(prs.index_base()))
            .collect();
        writeln!(out, "[{}] {}", images.join(", "), e.metric_class).unwrap();
    }
    writeln!(out, "{} embeddings of {stem} into {f}{r}", found.len()).unwrap();
    Ok((0, out))
}

#[derive(Serialize)]
struct RealizationJson {
    stem: String,
    metric: MetricClass,
}

#[derive(Serialize)]
struct SplintJson {
    part1: Vec<Vec<i64>>,
    part2: Vec<Vec<i64>>,
    realizations1: Vec<RealizationJson>,
    realizations2: Vec<RealizationJson>,
    weyl_class: Option<usize>,
}

#[derive(Serialize)]
struct ClassJson {
    id: usize,
    size: usize,
    representative: [Vec<Vec<i64>>; 2],
}

#[derive(Serialize)]
struct VerificationJson {
    expected_classes: usize,
    found_classes: usize,
    witnesses_matched: bool,
    pass: bool,
}

#[derive(Serialize)]
struct SplintReportJson {
    version: &'static str,
    target: TargetJson,
    splints: Vec<SplintJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    classes: Option<Vec<ClassJson>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    verification: Option<VerificationJson>,
}

fn realizations_json(rs: &[Realization]) -> Vec<RealizationJson> {
    rs.iter()
        .map(|r| RealizationJson {
            stem: r.stem.to_string(),
            metric: r.best_class(),
        })
        .collect()
}

fn splint_report(
    family: Family,
    rank: usize,
    prs: &PositiveRootSet,
    records: &[SplintRecord],
    classes: Option<&[WeylClass]>,
    verification: Option<VerificationJson>,
) -> SplintReportJson {
    SplintReportJson {
        version: VERSION,
        target: TargetJson::new(family, rank, prs),
        splints: records
            .iter()
            .map(|r| SplintJson {
                part1: vectors(prs, r.partition.part1()),
                part2: vectors(prs, r.partition.part2()),
                realizations1: realizations_json(&r.realizations1),
                realizations2: realizations_json(&r.realizations2),
                weyl_class: r.weyl_class,
            })
            .collect(),
        classes: classes.map(|cs| {
            cs.iter()
                .map(|c| ClassJson {
                    id: c.id,
                    size: c.members.len(),
                    representative: [
                        vectors(prs, c.representative.0),
                        vectors(prs, c.representative.1),
                    ],
                })
                .collect()
        }),
        verification,
    }
}

fn record_line(prs: &PositiveRootSet, r: &SplintRecord) -> String {
    let stems = |rs: &[Realization]| {
        preferred(rs).map_or_else(String::new, |p| format!("{} {}", p.stem, p.best_class()))
    };
    let class = r
        .weyl_class
        .map_or_else(String::new, |c| format!("[class {c}] "));
    format!(
        "{class}{} | {}  ({}; {})",
        e_list(prs, r.partition.part1()),
        e_list(prs, r.partition.part2()),
        stems(&r.realizations1),
        stems(&r.realizations2)
    )
}

fn cmd_splints(
    target: &str,
    with_classes: bool,
    json: bool,
    jobs: Option<usize>,
) -> Result<(i32, String)> {
    let (f, r) = parse_target(target)?;
    let prs = build_positive_roots(f, r)?;
    let lib = StemLibrary::new();
    let mut records = enumerate_splints_with(&lib, &prs, jobs)?;
    let classes = if with_classes {
        let group = weyl_group(&prs)?;
        Some(classify_records(&mut records, &group))
    } else {
        None
    };
    if json {
        return Ok((
            0,
            to_json(&splint_report(
                f,
                r,
                &prs,
                &records,
                classes.as_deref(),
                None,
            )),
        ));
    }
    let mut out = String::new();
    for rec in &records {
        writeln!(out, "{}", record_line(&prs, rec)).unwrap();
    }
    writeln!(out, "{f}{r}: {} splints", records.len()).unwrap();
    if let Some(cs) = &classes {
        writeln!(out, "{} Weyl classes", cs.len()).unwrap();
        for c in cs {
            writeln!(
                out,
                "  class {}: {} splints, {}",
                c.id,
                c.members.len(),
                records[c.members[0]].descriptor
            )
            .unwrap();
        }
    }
    Ok((0, out))
}

fn verification(t: &TargetReport) -> VerificationJson {
    VerificationJson {
        expected_classes: t.expected_classes,
        found_classes: t.found_classes(),
        witnesses_matched: t.witnesses_matched,
        pass: t.pass,
    }
}

fn cmd_verify(
    targets: &[(Family, usize)],
    json: bool,
    jobs: Option<usize>,
) -> Result<(i32, String)> {
    let report = verify_table(targets, jobs)?;
    let status = if report.pass() { 0 } else { 1 };
    if json {
        #[derive(Serialize)]
        struct Out {
            version: &'static str,
            table_version: &'static str,
            pass: bool,
            targets: Vec<SplintReportJson>,
        }
        let out = Out {
            version: VERSION,
            table_version: TABLE_VERSION,
            pass: report.pass(),
            targets: report
                .targets
                .iter()
                .map(|t| {
                    splint_report(
                        t.family,
                        t.rank,
                        &t.target,
                        &t.records,
                        Some(&t.classes),
                        Some(verification(t)),
                    )
                })
                .collect(),
        };
        return Ok((status, to_json(&out)));
    }
    let mut out = String::new();
    for t in &report.targets {
        writeln!(
            out,
            "{}{}: {} splints, {} classes (expected {}), witnesses {}, {} [{:.3}s]",
            t.family,
            t.rank,
            t.records.len(),
            t.found_classes(),
            t.expected_classes,
            if t.witnesses_matched {
                "matched"
            } else {
                "NOT matched"
            },
            if t.pass { "PASS" } else { "FAIL" },
            t.elapsed.as_secs_f64()
        )
        .unwrap();
        if !t.pass {
            for &c in &t.extra_classes {
                let class = &t.classes[c];
                let rec = &t.records[class.members[0]];
                writeln!(out, "  class without a table row: {}", rec.descriptor).unwrap();
                writeln!(out, "    {}", record_line(&t.target, rec)).unwrap();
            }
            for &i in &t.missing_rows {
                let w = &t.witnesses[i];
                writeln!(
                    out,
                    "  table row not reproduced: ({}) {} / {}",
                    w.row_type.roman(),
                    w.labels.0,
                    w.labels.1
                )
                .unwrap();
            }
        }
    }
    writeln!(
        out,
        "{}",
        if report.pass() {
            "verification passed"
        } else {
            "verification FAILED"
        }
    )
    .unwrap();
    Ok((status, out))
}

fn cmd_dump_expected(targets: &[(Family, usize)]) -> Result<(i32, String)> {
    #[derive(Serialize)]
    struct Out {
        version: &'static str,
        table_version: &'static str,
        rows: Vec<ExpectedRow>,
    }
    let rows = targets
        .iter()
        .flat_map(|&(f, r)| expected_rows(f, r))
        .collect();
    Ok((
        0,
        to_json(&Out {
            version: VERSION,
            table_version: TABLE_VERSION,
            rows,
        }),
    ))
}

fn parse_sub(prs: &PositiveRootSet, sub: &str) -> Result<RootMask> {
    match sub.trim() {
        "long" => Ok(prs.long_roots()),
        "short" => Ok(prs.short_roots()),
        list => {
            let vs = list
                .split(',')
                .map(|s| {
                    RootVector::parse_e_notation(s.trim(), prs.ambient_dim(), prs.index_base())
                })
                .collect::<Result<Vec<_>>>()?;
            prs.mask_of(&vs)
        }
    }
}

fn cmd_branch(
    target: &str,
    weight: Option<&str>,
    fundamental: Option<&str>,
    sub: &str,
    pattern: Option<&str>,
    json: bool,
) -> Result<(i32, String)> {
    let (f, r) = parse_target(target)?;
    let prs = build_positive_roots(f, r)?;
    let hw = match (weight, fundamental) {
        (Some(w), _) => Weight::parse(w, prs.ambient_dim())?,
        (None, Some(c)) => {
            let coeffs = c
                .split(',')
                .map(|t| {
                    t.trim()
                        .parse::<i64>()
                        .map_err(|_| Error::Parse(format!("bad coefficient '{t}'")))
                })
                .collect::<Result<Vec<_>>>()?;
            branch::weight_from_fundamental(&prs, &coeffs)?
        }
        (None, None) => return Err(Error::Parse("a highest weight is required".into())),
    };
    let sub = parse_sub(&prs, sub)?;
    let weights = branch::weight_multiplicities_for(&prs, &hw)?;
    let restricted = branch::subalgebra_highest_weights(&prs, &weights, sub)?;
    let matched = match pattern {
        Some(p) => {
            let (pf, pr) = parse_target(p)?;
            if pr != 2 {
                return Err(Error::Domain(format!("pattern type {p} is not of rank 2")));
            }
            Some(branch::match_pattern(&restricted, pf)?)
        }
        None => None,
    };

    if json {
        #[derive(Serialize)]
        struct Hw<'a> {
            weight: &'a Weight,
            multiplicity: u64,
        }
        #[derive(Serialize)]
        struct Match {
            family: Family,
            coefficients: (i64, i64),
            dimension: u64,
            origin: Weight,
            steps: Vec<Weight>,
        }
        #[derive(Serialize)]
        struct Out<'a> {
            version: &'static str,
            target: TargetJson,
            highest_weight: &'a Weight,
            dimension: u64,
            sub: Vec<Vec<i64>>,
            highest_weights: Vec<Hw<'a>>,
            #[serde(skip_serializing_if = "Option::is_none")]
            pattern: Option<Option<Match>>,
        }
        let out = Out {
            version: VERSION,
            target: TargetJson::new(f, r, &prs),
            highest_weight: &hw,
            dimension: weights.total(),
            sub: vectors(&prs, sub),
            highest_weights: restricted
                .iter()
                .map(|(w, m)| Hw {
                    weight: w,
                    multiplicity: m,
                })
                .collect(),
            pattern: matched.map(|m| {
                m.map(|m| Match {
                    family: m.family,
                    coefficients: m.coefficients,
                    dimension: m.dimension,
                    origin: m.origin,
                    steps: m.steps,
                })
            }),
        };
        return Ok((0, to_json(&out)));
    }
    let mut out = String::new();
    writeln!(
        out,
        "{f}{r} module with highest weight {hw}: dimension {}",
        weights.total()
    )
    .unwrap();
    writeln!(out, "restricted to {}:", e_list(&prs, sub)).unwrap();
    write_multiset(&mut out, &restricted);
    if let Some(m) = matched {
        match m {
            Some(m) => writeln!(
                out,
                "matches the {}2 diagram with coefficients ({}, {}) (dimension {}), origin {}, steps {} and {}",
                m.family, m.coefficients.0, m.coefficients.1, m.dimension, m.origin, m.steps[0], m.steps[1]
            )
            .unwrap(),
            None => writeln!(out, "no matching weight diagram").unwrap(),
        }
    }
    Ok((0, out))
}

fn write_multiset(out: &mut String, ms: &WeightMultiset) {
    for (w, m) in ms.iter() {
        writeln!(out, "  {w} x{m}").unwrap();
    }
}

fn cmd_bench(targets: &[(Family, usize)], jobs: Option<usize>) -> Result<(i32, String)> {
    let mut out = String::new();
    let lib = StemLibrary::new();
    for &(f, r) in targets {
        let prs = build_positive_roots(f, r)?;
        let start = Instant::now();
        let mut records = enumerate_splints_with(&lib, &prs, jobs)?;
        let enumerated = start.elapsed();
        let group = weyl_group(&prs)?;
        let classes = classify_records(&mut records, &group);
        let total = start.elapsed();
        writeln!(
            out,
            "{f}{r}: {} roots, {} splints, {} classes, enumeration {:.3}s, total {:.3}s",
            prs.len(),
            records.len(),
            classes.len(),
            enumerated.as_secs_f64(),
            total.as_secs_f64()
        )
        .unwrap();
    }
    Ok((0, out))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &str) -> (i32, String) {
        run(std::iter::once("rootsplint").chain(args.split_whitespace()))
    }

    #[test]
    fn roots_text_and_json() {
        let (s, out) = call("roots --type B --rank 2");
        assert_eq!(s, 0);
        assert!(out.starts_with("B2: 4 positive roots, 2 sum triples"));
        let (s, out) = call("roots --type G2 --json");
        assert_eq!(s, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["target"]["roots"].as_array().unwrap().len(), 6);
        assert_eq!(v["triples"], 5);
    }

    #[test]
    fn embed_queries() {
        assert_eq!(
            call("embed --stem C3 --target B4 --exists"),
            (0, "false\n".into())
        );
        assert_eq!(call("embed --stem B2 --target G2"), (0, "true\n".into()));
        let (s, out) = call("embed --stem A2 --target B2 --enumerate --metric");
        assert_eq!(s, 0);
        assert!(out.ends_with("0 embeddings of A2 into B2\n"));
    }

    #[test]
    fn splints_and_verify() {
        let (s, out) = call("splints --type D5");
        assert_eq!(s, 0);
        assert!(out.contains("D5: 0 splints"));
        let (s, out) = call("verify --targets G2,B2");
        assert_eq!(s, 0, "{out}");
        assert!(out.contains("G2: 4 splints, 2 classes (expected 2)"));
        let (s, _) = call("verify --targets A4");
        assert_eq!(s, 1);
    }

    #[test]
    fn json_is_stable() {
        let a = call("splints --type B3 --classes --json --jobs 1");
        let b = call("splints --type B3 --classes --json --jobs 3");
        assert_eq!(a, b);
        let v: serde_json::Value = serde_json::from_str(&a.1).unwrap();
        assert_eq!(v["classes"].as_array().unwrap().len(), 2);
    }

    #[test]
    fn branch_command() {
        let (s, out) = call("branch --type B2 --weight 1,0 --sub e1-e2 --match A2");
        assert_eq!(s, 0, "{out}");
        assert!(out.contains("dimension 5"));
        assert!(out.contains("matches the A2 diagram"));
        let (s, _) = call("branch --type G2 --fundamental 1,1 --sub long --match A2 --json");
        assert_eq!(s, 0);
    }

    #[test]
    fn errors_use_status_two() {
        assert_eq!(call("frobnicate").0, 2);
        assert_eq!(call("roots --type D --rank 3").0, 2);
        assert_eq!(call("splints --type E6").0, 2);
        assert_eq!(call("branch --type B2 --weight 0,1 --sub e1-e2").0, 2);
        assert_eq!(call("verify --dump-expected --targets G2").0, 0);
    }
}
