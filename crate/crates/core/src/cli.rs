//! The `gpk` command line: argument parsing, report assembly and output.
//!
//! Every command builds a serializable report. JSON is the full form; CSV
//! exports the main table only. Exit status is 0 when every embedded check
//! passes, 1 when one fails and 2 on bad input.

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::character::annihilator;
use crate::error::{Error, Result};
use crate::fbi::{
    call_bound_for, classical_worst_case, fbi_structure, image_description, is_fbi_spectral,
    is_fbi_structural, make_fbi_instance, marker_selection, CandidateOrder, LedgerView,
    ProbeRecord,
};
use crate::group::{
    enumerate_subgroups, subgroup_closure, GroupElement, GroupSpec, Subgroup, SubgroupView,
};
use crate::hsp::{compare_strategies, make_hsp_instance, ComparisonReport, HspInstance, Strategy};
use crate::qsim::Oracle;
use crate::trial_rng;
use crate::verify::{run_scope, Check, Scope, VerifyConfig, VerifyReport};
use crate::TOLERANCE;

/// Stream reserved for instance construction, away from trial streams.
const INSTANCE_STREAM: u64 = u64::MAX - 1;

#[derive(Debug, Parser)]
#[command(
    name = "gpk",
    version,
    about = "Phase kick-back simulation and solvers over finite Abelian groups"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Order, exponent, subgroup lattice and annihilators of a group.
    GroupInfo(GroupInfoArgs),
    /// Compare Simon and phase kick-back strategies on a hidden subgroup instance.
    Hsp(HspArgs),
    /// Validate an FBI function and run marker selection on it.
    Fbi(FbiArgs),
    /// Run the invariant suites.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Csv,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write the report here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct GroupInfoArgs {
    /// Cyclic factor orders, e.g. `2,4`.
    #[arg(long, value_delimiter = ',', required = true)]
    pub orders: Vec<usize>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct HspArgs {
    #[arg(long, value_delimiter = ',')]
    pub orders: Vec<usize>,
    /// Codomain orders; defaults to the domain.
    #[arg(long = "orders-h", value_delimiter = ',')]
    pub orders_h: Vec<usize>,
    /// Generators of the hidden subgroup, `;`-separated, e.g. `1,0;0,2`.
    /// With `--table` and no generators, `S` is read off as `f^-1(f(0))`.
    #[arg(long = "subgroup-gens")]
    pub subgroup_gens: Option<String>,
    /// Report only this strategy (all three are still computed).
    #[arg(long, value_enum)]
    pub strategy: Option<Strategy>,
    /// Recovery trials per strategy.
    #[arg(long, default_value_t = 200)]
    pub trials: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Oracle table file (JSON with `orders_G`, `orders_H`, `table`).
    #[arg(long)]
    pub table: Option<PathBuf>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct FbiArgs {
    #[arg(long, value_delimiter = ',')]
    pub orders: Vec<usize>,
    #[arg(long = "orders-h", value_delimiter = ',')]
    pub orders_h: Vec<usize>,
    /// Generators of the image subgroup `K` for a random instance.
    #[arg(long = "subgroup-gens")]
    pub subgroup_gens: Option<String>,
    /// Image shift `t` for a random instance.
    #[arg(long)]
    pub shift: Option<String>,
    /// `ascending`, `shuffled` (uses `--seed`) or a `;`-separated marker
    /// list tried first, e.g. `1;2;4`.
    #[arg(long, default_value = "ascending")]
    pub candidates: String,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub table: Option<PathBuf>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum, default_value_t = Scope::All)]
    pub scope: Scope,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Recovery runs per stopping rule.
    #[arg(long)]
    pub trials: Option<usize>,
    #[command(flatten)]
    pub output: OutputArgs,
}

/// Rendered report plus its overall verdict.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rendered {
    pub text: String,
    pub passed: bool,
    /// Human summary for stderr, outside the report bytes.
    pub note: Option<String>,
}

fn parse_elements(spec: &GroupSpec, s: &str) -> Result<Vec<GroupElement>> {
    s.split(';')
        .map(str::trim)
        .filter(|p| !p.is_empty())
        .map(|p| {
            let coords = p
                .split(',')
                .map(|c| {
                    c.trim()
                        .parse::<i64>()
                        .map_err(|_| Error::Usage(format!("cannot read {c:?} as an integer")))
                })
                .collect::<Result<Vec<_>>>()?;
            spec.element(&coords)
        })
        .collect()
}

fn load_table(path: &PathBuf) -> Result<Oracle> {
    Oracle::from_json(&std::fs::read_to_string(path)?)
}

fn codomain_or(domain: &GroupSpec, orders_h: &[usize]) -> Result<GroupSpec> {
    if orders_h.is_empty() {
        Ok(domain.clone())
    } else {
        GroupSpec::new(orders_h)
    }
}

fn json<T: Serialize>(report: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(report)?;
    s.push('\n');
    Ok(s)
}

fn joined(els: &[GroupElement]) -> String {
    els.iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

#[derive(Clone, Debug, Serialize)]
pub struct SubgroupRow {
    pub order: usize,
    pub generators: Vec<GroupElement>,
    pub annihilator_order: usize,
    pub annihilator_generators: Vec<GroupElement>,
}

#[derive(Clone, Debug, Serialize)]
pub struct GroupInfoReport {
    pub orders: GroupSpec,
    pub order: usize,
    pub exponent: usize,
    pub subgroup_count: usize,
    pub subgroups: Vec<SubgroupRow>,
}

pub fn cmd_group_info(orders: &[usize]) -> Result<GroupInfoReport> {
    let spec = GroupSpec::new(orders)?;
    let subgroups = enumerate_subgroups(&spec)?
        .iter()
        .map(|s| {
            let perp = annihilator(s)?;
            Ok(SubgroupRow {
                order: s.order(),
                generators: s.generators().to_vec(),
                annihilator_order: perp.order(),
                annihilator_generators: perp.generators().to_vec(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(GroupInfoReport {
        order: spec.order(),
        exponent: spec.exponent(),
        subgroup_count: subgroups.len(),
        subgroups,
        orders: spec,
    })
}

impl GroupInfoReport {
    fn csv(&self) -> String {
        let mut out = String::from("order,generators,annihilator_order,annihilator_generators\n");
        for r in &self.subgroups {
            out.push_str(&format!(
                "{},\"{}\",{},\"{}\"\n",
                r.order,
                joined(&r.generators),
                r.annihilator_order,
                joined(&r.annihilator_generators)
            ));
        }
        out
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct HspConfigEcho {
    pub subgroup_gens: Option<String>,
    pub strategy: Option<Strategy>,
    pub trials: usize,
    pub seed: u64,
    pub table: Option<PathBuf>,
}

#[derive(Clone, Debug, Serialize)]
pub struct HspReport {
    pub config: HspConfigEcho,
    pub comparison: ComparisonReport,
    pub checks: Vec<Check>,
    pub passed: bool,
}

fn hsp_instance(args: &HspArgs) -> Result<HspInstance> {
    if let Some(path) = &args.table {
        let oracle = load_table(path)?;
        let g = oracle.domain().clone();
        let hidden = match &args.subgroup_gens {
            Some(gens) => subgroup_closure(&g, &parse_elements(&g, gens)?)?,
            None => {
                let f0 = oracle.table()[0];
                let kernel: Vec<GroupElement> = (0..g.order())
                    .filter(|&i| oracle.table()[i] == f0)
                    .map(|i| g.element_at(i))
                    .collect::<Result<_>>()?;
                Subgroup::from_elements(&g, &kernel)
                    .map_err(|_| Error::InvalidHspInstance("f^-1(f(0)) is not a subgroup".into()))?
            }
        };
        return HspInstance::new(oracle, hidden);
    }
    let g = GroupSpec::new(&args.orders)?;
    let h = codomain_or(&g, &args.orders_h)?;
    let gens = match &args.subgroup_gens {
        Some(s) => parse_elements(&g, s)?,
        None => Vec::new(),
    };
    let hidden = subgroup_closure(&g, &gens)?;
    make_hsp_instance(&g, &h, &hidden, &mut trial_rng(args.seed, INSTANCE_STREAM))
}

pub fn cmd_hsp(args: &HspArgs) -> Result<HspReport> {
    let inst = hsp_instance(args)?;
    let mut comparison = compare_strategies(&inst, args.trials, args.seed)?;
    let mut checks = Vec::new();
    for r in &comparison.strategies {
        let law = match r.strategy {
            Strategy::Simon => "Simon round distribution is uniform on S^perp",
            Strategy::GpkUniformAll => "all-marker average is |S|/|G| on S^perp",
            Strategy::GpkUniformNontrivial => {
                "nontrivial-marker mixture matches the three-case formula"
            }
        };
        checks.push(Check {
            name: law.into(),
            passed: r.max_prediction_error <= TOLERANCE,
            cases: inst.domain().order(),
            failures: usize::from(r.max_prediction_error > TOLERANCE),
            max_error: Some(r.max_prediction_error),
            detail: String::new(),
        });
    }
    checks.push(Check {
        name: "usefulness ratio is |H|/(|H|-1)".into(),
        passed: comparison.ratio_matches,
        cases: 1,
        failures: usize::from(!comparison.ratio_matches),
        max_error: None,
        detail: if comparison.degenerate {
            "degenerate: S = G, no round is informative".into()
        } else {
            format!("expected {}", comparison.expected_ratio)
        },
    });
    checks.push(Check {
        name: "known-order recovery returns S".into(),
        passed: comparison.recoveries_exact,
        cases: args.trials * Strategy::ALL.len(),
        failures: usize::from(!comparison.recoveries_exact),
        max_error: None,
        detail: format!("seed {}", args.seed),
    });
    if let Some(s) = args.strategy {
        comparison.strategies.retain(|r| r.strategy == s);
    }
    Ok(HspReport {
        config: HspConfigEcho {
            subgroup_gens: args.subgroup_gens.clone(),
            strategy: args.strategy,
            trials: args.trials,
            seed: args.seed,
            table: args.table.clone(),
        },
        passed: checks.iter().all(|c| c.passed),
        comparison,
        checks,
    })
}

impl HspReport {
    fn csv(&self) -> String {
        let mut out = String::from("strategy,index,element,p\n");
        for r in &self.comparison.strategies {
            for e in &r.exact_pmf {
                out.push_str(&format!(
                    "{},{},\"{}\",{}\n",
                    r.strategy.name(),
                    e.index,
                    e.element,
                    e.p
                ));
            }
        }
        out
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct FbiStructureView {
    pub image_order: usize,
    pub image_subgroup: SubgroupView,
    pub shift: GroupElement,
    pub fiber_size: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct SolverReport {
    pub candidates: CandidateOrder,
    pub image_order: usize,
    pub underlying_subgroup: SubgroupView,
    pub calls: u64,
    pub call_bound: f64,
    pub call_bound_ceil: u64,
    pub within_bound: bool,
    pub classical_worst_case: Option<usize>,
    pub comparison: String,
    pub ledger: LedgerView,
    pub log: Vec<ProbeRecord>,
}

#[derive(Clone, Debug, Serialize)]
pub struct FbiReport {
    pub seed: u64,
    pub instance: InstanceTable,
    pub spectral: bool,
    pub structural: bool,
    pub structure: Option<FbiStructureView>,
    pub solver: Option<SolverReport>,
    pub checks: Vec<Check>,
    pub passed: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct InstanceTable {
    #[serde(rename = "orders_G")]
    pub orders_g: Vec<usize>,
    #[serde(rename = "orders_H")]
    pub orders_h: Vec<usize>,
    pub table: Vec<usize>,
}

fn candidate_order(spec: &GroupSpec, s: &str, seed: u64) -> Result<CandidateOrder> {
    Ok(match s.trim() {
        "ascending" => CandidateOrder::Ascending,
        "shuffled" => CandidateOrder::Shuffled { seed },
        list => CandidateOrder::Scripted {
            labels: parse_elements(spec, list)?,
        },
    })
}

fn fbi_oracle(args: &FbiArgs) -> Result<Oracle> {
    if let Some(path) = &args.table {
        return load_table(path);
    }
    let g = GroupSpec::new(&args.orders)?;
    let h = codomain_or(&g, &args.orders_h)?;
    let gens = args
        .subgroup_gens
        .as_deref()
        .ok_or_else(|| Error::Usage("a random instance needs --subgroup-gens or --table".into()))?;
    let k = subgroup_closure(&h, &parse_elements(&h, gens)?)?;
    let t = match &args.shift {
        Some(s) => parse_elements(&h, s)?.pop().unwrap_or_else(|| h.zero()),
        None => h.zero(),
    };
    Ok(make_fbi_instance(&g, &k, &t, &mut trial_rng(args.seed, INSTANCE_STREAM))?.oracle)
}

pub fn cmd_fbi(args: &FbiArgs) -> Result<FbiReport> {
    let mut oracle = fbi_oracle(args)?;
    let h = oracle.codomain().clone();
    let spectral = is_fbi_spectral(&oracle);
    let structural = is_fbi_structural(&oracle);
    let structure = fbi_structure(&oracle);
    let mut checks = vec![Check {
        name: "spectral and structural FBI tests agree".into(),
        passed: spectral == structural,
        cases: 1,
        failures: usize::from(spectral != structural),
        max_error: None,
        detail: String::new(),
    }];
    checks.push(Check {
        name: "input is an FBI function".into(),
        passed: structural,
        cases: 1,
        failures: usize::from(!structural),
        max_error: None,
        detail: if structural {
            String::new()
        } else {
            "validation failed; solver not run".into()
        },
    });

    let solver = match &structure {
        Some(st) if spectral => {
            let order = candidate_order(&h, &args.candidates, args.seed)?;
            let sel = marker_selection(&mut oracle, &order, &mut trial_rng(args.seed, 0))?;
            let underlying = image_description(&sel.ledger)?;
            let k = st.image_subgroup.order();
            checks.push(Check {
                name: "marker selection finds |img(f)| and its subgroup".into(),
                passed: sel.image_order == k && underlying == st.image_subgroup,
                cases: 1,
                failures: usize::from(sel.image_order != k || underlying != st.image_subgroup),
                max_error: None,
                detail: format!("expected order {k}"),
            });
            let bound = call_bound_for(h.order(), k);
            let classical = classical_worst_case(oracle.domain().order(), k);
            let comparison = format!(
                "classical calls worst case {}, quantum calls this run {}",
                classical.map_or_else(|| "n/a".to_string(), |c| c.to_string()),
                sel.ledger.calls
            );
            Some(SolverReport {
                candidates: order,
                image_order: sel.image_order,
                underlying_subgroup: SubgroupView::from(&underlying),
                calls: sel.ledger.calls,
                call_bound: bound,
                call_bound_ceil: bound.ceil() as u64,
                within_bound: sel.ledger.calls as f64 <= bound.ceil(),
                classical_worst_case: classical,
                comparison,
                ledger: sel.ledger.view(),
                log: sel.log,
            })
        }
        _ => None,
    };

    Ok(FbiReport {
        seed: args.seed,
        instance: InstanceTable {
            orders_g: oracle.domain().orders().to_vec(),
            orders_h: h.orders().to_vec(),
            table: oracle.table().to_vec(),
        },
        spectral,
        structural,
        structure: structure.map(|s| FbiStructureView {
            image_order: s.image_subgroup.order(),
            image_subgroup: SubgroupView::from(&s.image_subgroup),
            shift: s.shift,
            fiber_size: s.fiber_size,
        }),
        solver,
        passed: checks.iter().all(|c| c.passed),
        checks,
    })
}

impl FbiReport {
    fn csv(&self) -> String {
        let mut out = String::from("step,marker,verdict,inferred,delta,calls\n");
        if let Some(s) = &self.solver {
            for r in &s.log {
                out.push_str(&format!(
                    "{},\"{}\",{},{},\"{}\",{}\n",
                    r.step,
                    r.marker,
                    match r.verdict {
                        crate::fbi::MarkerVerdict::Constant => "constant",
                        crate::fbi::MarkerVerdict::Balancing => "balancing",
                    },
                    r.inferred,
                    r.delta
                        .as_ref()
                        .map(ToString::to_string)
                        .unwrap_or_default(),
                    r.calls
                ));
            }
        }
        out
    }
}

pub fn cmd_verify(args: &VerifyArgs) -> Result<VerifyReport> {
    let mut cfg = VerifyConfig {
        seed: args.seed,
        ..VerifyConfig::default()
    };
    if let Some(t) = args.trials {
        cfg.recovery_runs = t;
    }
    run_scope(args.scope, &cfg)
}

fn verify_csv(r: &VerifyReport) -> String {
    let mut out = String::from("name,passed,cases,failures,max_error\n");
    for c in &r.checks {
        out.push_str(&format!(
            "\"{}\",{},{},{},{}\n",
            c.name,
            c.passed,
            c.cases,
            c.failures,
            c.max_error.map(|e| format!("{e:e}")).unwrap_or_default()
        ));
    }
    out
}

/// Runs a parsed command and renders its report.
pub fn execute(cli: &Cli) -> Result<Rendered> {
    let (text, passed, note, format) = match &cli.command {
        Command::GroupInfo(a) => {
            let r = cmd_group_info(&a.orders)?;
            let text = match a.output.format {
                Format::Json => json(&r)?,
                Format::Csv => r.csv(),
            };
            (text, true, None, &a.output)
        }
        Command::Hsp(a) => {
            let r = cmd_hsp(a)?;
            let text = match a.output.format {
                Format::Json => json(&r)?,
                Format::Csv => r.csv(),
            };
            (text, r.passed, None, &a.output)
        }
        Command::Fbi(a) => {
            let r = cmd_fbi(a)?;
            let note = Some(match &r.solver {
                Some(s) => s.comparison.clone(),
                None => "input is not an FBI function; solver not run".to_string(),
            });
            let text = match a.output.format {
                Format::Json => json(&r)?,
                Format::Csv => r.csv(),
            };
            (text, r.passed, note, &a.output)
        }
        Command::Verify(a) => {
            let r = cmd_verify(a)?;
            let text = match a.output.format {
                Format::Json => json(&r)?,
                Format::Csv => verify_csv(&r),
            };
            (text, r.passed, None, &a.output)
        }
    };
    if let Some(path) = &format.out {
        std::fs::write(path, &text)?;
        return Ok(Rendered {
            text: String::new(),
            passed,
            note,
        });
    }
    Ok(Rendered { text, passed, note })
}

/// Entry point behind `main`; returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match execute(&cli) {
        Ok(r) => {
            print!("{}", r.text);
            if let Some(n) = r.note {
                eprintln!("{n}");
            }
            if r.passed {
                0
            } else {
                1
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &[&str]) -> Cli {
        Cli::try_parse_from(std::iter::once("gpk").chain(args.iter().copied())).unwrap()
    }

    #[test]
    fn group_info_counts() {
        assert_eq!(cmd_group_info(&[12]).unwrap().subgroup_count, 6);
        assert_eq!(cmd_group_info(&[2, 2]).unwrap().subgroup_count, 5);
        assert!(matches!(cmd_group_info(&[]), Err(Error::EmptyGroup)));
    }

    #[test]
    fn element_lists() {
        let g = GroupSpec::new(&[2, 4]).unwrap();
        let els = parse_elements(&g, "1,0; 0,3").unwrap();
        assert_eq!(
            els,
            vec![g.element(&[1, 0]).unwrap(), g.element(&[0, 3]).unwrap()]
        );
        assert!(parse_elements(&g, "1").is_err());
        assert!(parse_elements(&g, "x,1").is_err());
    }

    #[test]
    fn hsp_z6_values() {
        let cli = parse(&[
            "hsp",
            "--orders",
            "6",
            "--subgroup-gens",
            "3",
            "--trials",
            "20",
        ]);
        let Command::Hsp(a) = &cli.command else {
            unreachable!()
        };
        let r = cmd_hsp(a).unwrap();
        assert!(r.passed);
        let nt = r
            .comparison
            .strategies
            .iter()
            .find(|s| s.strategy == Strategy::GpkUniformNontrivial)
            .unwrap();
        let p: Vec<(usize, f64)> = nt.exact_pmf.iter().map(|e| (e.index, e.p)).collect();
        assert_eq!(p.len(), 3);
        for ((i, v), (ei, ev)) in p.iter().zip([(0, 0.2), (2, 0.4), (4, 0.4)]) {
            assert_eq!(*i, ei);
            assert!((v - ev).abs() < 1e-12);
        }
    }

    #[test]
    fn hsp_full_subgroup_is_degenerate() {
        let cli = parse(&[
            "hsp",
            "--orders",
            "6",
            "--subgroup-gens",
            "1",
            "--trials",
            "5",
        ]);
        let Command::Hsp(a) = &cli.command else {
            unreachable!()
        };
        let r = cmd_hsp(a).unwrap();
        assert!(r.comparison.degenerate);
        assert!(r.passed);
    }

    #[test]
    fn fbi_random_instance_solves() {
        let cli = parse(&[
            "fbi",
            "--orders",
            "12",
            "--subgroup-gens",
            "3",
            "--shift",
            "1",
            "--candidates",
            "shuffled",
        ]);
        let Command::Fbi(a) = &cli.command else {
            unreachable!()
        };
        let r = cmd_fbi(a).unwrap();
        assert!(r.passed);
        assert_eq!(r.solver.unwrap().image_order, 4);
    }

    #[test]
    fn fbi_requires_an_instance() {
        let cli = parse(&["fbi", "--orders", "12"]);
        let Command::Fbi(a) = &cli.command else {
            unreachable!()
        };
        assert!(cmd_fbi(a).is_err());
    }
}
