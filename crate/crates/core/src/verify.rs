//! Invariant suites run by `gpk verify`, one [`Check`] per suite.

use num_complex::Complex64;
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::catalog::{
    abelian_groups, all_tables, biconditional_pairs, catalog_groups, fbi_instances, gpk_triples,
    hsp_instances, paper_fbi_table,
};
use crate::character::{annihilator, char_eval, Character};
use crate::error::{Error, Result};
use crate::fbi::{
    call_bound, fiber_multiset, image_description, is_fbi_spectral, is_fbi_structural,
    marker_selection, CandidateOrder,
};
use crate::fourier::{dual_fourier_transform, fourier_transform};
use crate::group::{enumerate_subgroups, subgroup_closure, GroupSpec, Subgroup};
use crate::hsp::{
    exact_round_distribution, make_hsp_instance, predicted_round_distribution, recover_subgroup,
    sample_round, StoppingRule, Strategy, DEFAULT_MAX_ROUNDS, DEFAULT_PLATEAU,
};
use crate::multiset::Classification;
use crate::qsim::{eigen_check, gpk_closed_form_amplitudes, gpk_run};
use crate::{trial_rng, TOLERANCE};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Scope {
    All,
    Duality,
    GpkCorrectness,
    PhaseKickback,
    HspSupport,
    HspEqual,
    HspUnequal,
    FbiBiconditional,
    FbiDichotomy,
    FbiSolver,
    FbiBound,
    Recovery,
}

impl Scope {
    pub const SUITES: [Scope; 11] = [
        Scope::Duality,
        Scope::GpkCorrectness,
        Scope::PhaseKickback,
        Scope::HspSupport,
        Scope::HspEqual,
        Scope::HspUnequal,
        Scope::FbiBiconditional,
        Scope::FbiDichotomy,
        Scope::FbiSolver,
        Scope::FbiBound,
        Scope::Recovery,
    ];
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyConfig {
    pub seed: u64,
    /// Sampled rounds per instance and strategy in the support check.
    pub support_rounds: usize,
    /// Shuffled candidate orders per FBI instance.
    pub candidate_orders: u64,
    /// Recovery runs spread over the HSP catalog, per stopping rule.
    pub recovery_runs: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            seed: 0,
            support_rounds: 10_000,
            candidate_orders: 100,
            recovery_runs: 1_000,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub cases: usize,
    pub failures: usize,
    pub max_error: Option<f64>,
    pub detail: String,
}

impl Check {
    fn counted(name: &str, cases: usize, failures: usize, detail: String) -> Self {
        Self {
            name: name.into(),
            passed: failures == 0,
            cases,
            failures,
            max_error: None,
            detail,
        }
    }

    fn within(name: &str, cases: usize, max_error: f64, tol: f64, detail: String) -> Self {
        Self {
            name: name.into(),
            passed: max_error <= tol,
            cases,
            failures: usize::from(max_error > tol),
            max_error: Some(max_error),
            detail,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub scope: Scope,
    pub config: VerifyConfig,
    pub checks: Vec<Check>,
    pub passed: bool,
}

pub fn run_scope(scope: Scope, config: &VerifyConfig) -> Result<VerifyReport> {
    let suites: Vec<Scope> = if scope == Scope::All {
        Scope::SUITES.to_vec()
    } else {
        vec![scope]
    };
    let mut checks = Vec::new();
    for s in suites {
        checks.extend(run_suite(s, config)?);
    }
    Ok(VerifyReport {
        scope,
        config: *config,
        passed: checks.iter().all(|c| c.passed),
        checks,
    })
}

fn run_suite(scope: Scope, cfg: &VerifyConfig) -> Result<Vec<Check>> {
    Ok(match scope {
        Scope::All => unreachable!("expanded by run_scope"),
        Scope::Duality => duality(cfg.seed)?,
        Scope::GpkCorrectness => vec![gpk_correctness(cfg.seed)?],
        Scope::PhaseKickback => vec![phase_kickback()?],
        Scope::HspSupport => vec![hsp_support(cfg.seed, cfg.support_rounds)?],
        Scope::HspEqual => vec![hsp_equal(cfg.seed)?],
        Scope::HspUnequal => hsp_unequal(cfg.seed)?,
        Scope::FbiBiconditional => vec![fbi_biconditional()?],
        Scope::FbiDichotomy => vec![fbi_dichotomy()?],
        Scope::FbiSolver => fbi_solver(cfg.seed, cfg.candidate_orders)?,
        Scope::FbiBound => vec![fbi_bound(cfg.seed, cfg.candidate_orders)?],
        Scope::Recovery => recovery(cfg.seed, cfg.recovery_runs)?,
    })
}

/// All subgroups when the lattice is small enough, otherwise subgroups
/// generated by a few random pairs.
fn subgroups_or_sample(spec: &GroupSpec, rng: &mut impl Rng) -> Result<Vec<Subgroup>> {
    match enumerate_subgroups(spec) {
        Ok(subs) => Ok(subs),
        Err(Error::GuardExceeded { .. }) => (0..32)
            .map(|_| {
                let a = spec.element_at(rng.gen_range(0..spec.order()))?;
                let b = spec.element_at(rng.gen_range(0..spec.order()))?;
                subgroup_closure(spec, &[a, b])
            })
            .collect(),
        Err(e) => Err(e),
    }
}

fn random_function(n: usize, rng: &mut impl Rng) -> Vec<Complex64> {
    (0..n)
        .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect()
}

pub fn duality(seed: u64) -> Result<Vec<Check>> {
    let mut rng = trial_rng(seed, 1);
    let mut cases = 0;
    let mut double_fail = 0;
    let mut order_fail = 0;
    let mut fourier_err: f64 = 0.0;
    let groups = catalog_groups();
    for spec in &groups {
        for s in subgroups_or_sample(spec, &mut rng)? {
            let perp = annihilator(&s)?;
            cases += 1;
            double_fail += usize::from(annihilator(&perp)? != s);
            order_fail += usize::from(perp.order() * s.order() != spec.order());
        }
        let f = random_function(spec.order(), &mut rng);
        let back = dual_fourier_transform(spec, &fourier_transform(spec, &f)?)?;
        let n = spec.order() as f64;
        for (b, v) in back.iter().zip(&f) {
            fourier_err = fourier_err.max((b - v * n).norm());
        }
    }
    Ok(vec![
        Check::counted(
            "annihilator twice is the identity",
            cases,
            double_fail,
            format!("{} groups", groups.len()),
        ),
        Check::counted("|S^perp| |S| = |G|", cases, order_fail, String::new()),
        Check::within(
            "transform then dual transform is |G| f",
            groups.len(),
            fourier_err,
            TOLERANCE,
            "one random function per catalog group".into(),
        ),
    ])
}

pub fn gpk_correctness(seed: u64) -> Result<Check> {
    let mut rng = trial_rng(seed, 2);
    let triples = gpk_triples();
    let mut cases = 0;
    let mut worst: f64 = 0.0;
    for t in &triples {
        let h = t.oracle.codomain();
        for m in 0..h.order() {
            let marker = Character::from_index(h, m)?;
            let mut oracle = t.oracle.fresh();
            let sim = gpk_run(&mut oracle, &marker, &mut rng)?;
            let closed = gpk_closed_form_amplitudes(&t.oracle, &marker)?;
            for (a, b) in sim.amplitudes.amplitudes().iter().zip(&closed) {
                worst = worst.max((a - b).norm());
            }
            cases += 1;
        }
    }
    Ok(Check::within(
        "simulated amplitudes match the closed form",
        cases,
        worst,
        TOLERANCE,
        format!("{} triples, every marker", triples.len()),
    ))
}

pub fn phase_kickback() -> Result<Check> {
    let mut cases = 0;
    let mut worst: f64 = 0.0;
    for t in gpk_triples() {
        let (g, h) = (t.oracle.domain(), t.oracle.codomain());
        let mut oracle = t.oracle.fresh();
        for gi in 0..g.order() {
            let ge = g.element_at(gi)?;
            let fg = t.oracle.peek(&ge)?;
            for m in 0..h.order() {
                let marker = Character::from_index(h, m)?;
                let lambda = eigen_check(&mut oracle, &ge, &marker)?;
                worst = worst.max((lambda - char_eval(h, &marker.label, &fg)?.conj()).norm());
                cases += 1;
            }
        }
    }
    Ok(Check::within(
        "U_f eigenvalue is conj(chi_h(f(g)))",
        cases,
        worst,
        TOLERANCE,
        "exhaustive (g, h) on every triple".into(),
    ))
}

pub fn hsp_support(seed: u64, rounds: usize) -> Result<Check> {
    let cases = hsp_instances();
    let jobs: Vec<(usize, Strategy)> = (0..cases.len())
        .flat_map(|i| Strategy::ALL.into_iter().map(move |s| (i, s)))
        .collect();
    let violations: Vec<Result<usize>> = jobs
        .par_iter()
        .enumerate()
        .map(|(j, &(i, strategy))| {
            let mut inst = cases[i].instance.fresh();
            let perp = inst.perp();
            let mut rng = trial_rng(seed, 1_000 + j as u64);
            let mut bad = 0;
            for _ in 0..rounds {
                let z = sample_round(&mut inst, strategy, &mut rng)?;
                bad += usize::from(!perp.contains(&z));
            }
            Ok(bad)
        })
        .collect();
    let mut total = 0;
    for v in violations {
        total += v?;
    }
    Ok(Check::counted(
        "sampled rounds stay in S^perp",
        jobs.len() * rounds,
        total,
        format!("{} instances x 3 strategies x {rounds} rounds", cases.len()),
    ))
}

/// Every `(G, S)` with `|G| <= 24` and `H = G`.
fn small_hsp_family(seed: u64) -> Result<Vec<crate::hsp::HspInstance>> {
    let mut rng = trial_rng(seed, 3);
    let mut out = Vec::new();
    for g in abelian_groups(24) {
        for s in enumerate_subgroups(&g)? {
            out.push(make_hsp_instance(&g, &g, &s, &mut rng)?);
        }
    }
    Ok(out)
}

fn max_gap(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

pub fn hsp_equal(seed: u64) -> Result<Check> {
    let family = small_hsp_family(seed)?;
    let mut worst: f64 = 0.0;
    for inst in &family {
        let exact = exact_round_distribution(inst, Strategy::GpkUniformAll)?;
        worst = worst.max(max_gap(
            &exact,
            &predicted_round_distribution(inst, Strategy::GpkUniformAll),
        ));
        let simon = exact_round_distribution(inst, Strategy::Simon)?;
        worst = worst.max(max_gap(&exact, &simon));
    }
    Ok(Check::within(
        "all-marker average is |S|/|G| on S^perp and matches Simon",
        family.len(),
        worst,
        TOLERANCE,
        "every (G, S) with |G| <= 24".into(),
    ))
}

pub fn hsp_unequal(seed: u64) -> Result<Vec<Check>> {
    let family = small_hsp_family(seed)?;
    let mut worst: f64 = 0.0;
    let mut ratio_err: f64 = 0.0;
    let mut ratio_cases = 0;
    for inst in &family {
        let exact = exact_round_distribution(inst, Strategy::GpkUniformNontrivial)?;
        worst = worst.max(max_gap(
            &exact,
            &predicted_round_distribution(inst, Strategy::GpkUniformNontrivial),
        ));
        if inst.hidden.is_full() {
            continue;
        }
        let simon = exact_round_distribution(inst, Strategy::Simon)?;
        let nh = inst.codomain().order() as f64;
        let ratio = (1.0 - exact[0]) / (1.0 - simon[0]);
        ratio_err = ratio_err.max((ratio - nh / (nh - 1.0)).abs());
        ratio_cases += 1;
    }

    let z6 = GroupSpec::cyclic(6)?;
    let s = subgroup_closure(&z6, &[z6.element(&[3])?])?;
    let inst = make_hsp_instance(&z6, &z6, &s, &mut trial_rng(seed, 4))?;
    let p = exact_round_distribution(&inst, Strategy::GpkUniformNontrivial)?;
    let expected = [0.2, 0.0, 0.4, 0.0, 0.4, 0.0];
    let worked = max_gap(&p, &expected);

    Ok(vec![
        Check::within(
            "nontrivial-marker mixture matches the three-case formula",
            family.len(),
            worst,
            TOLERANCE,
            "every (G, S) with |G| <= 24".into(),
        ),
        Check::within(
            "usefulness ratio is |H|/(|H|-1)",
            ratio_cases,
            ratio_err,
            TOLERANCE,
            "non-degenerate (G, S) with |G| <= 24".into(),
        ),
        Check::within(
            "Z/6, S=<3>: p(0)=1/5, p(2)=p(4)=2/5",
            1,
            worked,
            TOLERANCE,
            format!("{p:?}"),
        ),
    ])
}

pub fn fbi_biconditional() -> Result<Check> {
    let mut cases = 0;
    let mut disagree = 0;
    let mut fbi = 0;
    for (g, h) in biconditional_pairs() {
        for f in all_tables(&g, &h)? {
            let (a, b) = (is_fbi_spectral(&f), is_fbi_structural(&f));
            cases += 1;
            disagree += usize::from(a != b);
            fbi += usize::from(b);
        }
    }
    Ok(Check::counted(
        "spectral and structural FBI tests agree",
        cases,
        disagree,
        format!("{fbi} FBI tables among {cases}"),
    ))
}

pub fn fbi_dichotomy() -> Result<Check> {
    let cases = fbi_instances();
    let mut failures = Vec::new();
    for case in &cases {
        let f = &case.instance.oracle;
        let h = f.codomain();
        let ms = fiber_multiset(f);
        let mut constant = Vec::new();
        let mut neither = 0;
        for z in 0..h.order() {
            match ms.classify(&Character::from_index(h, z)?)? {
                Classification::Constant => constant.push(h.element_at(z)?),
                Classification::Balanced => {}
                Classification::Neither => neither += 1,
            }
        }
        let c_f = Subgroup::from_elements(h, &constant).ok();
        let ok = neither == 0
            && c_f.as_ref().is_some_and(|c| {
                *c == annihilator(&case.instance.image_subgroup).expect("small group")
            });
        // B(f) is the complement of a subgroup, hence a union of its cosets.
        if !ok {
            failures.push(case.name);
        }
    }
    Ok(Check::counted(
        "fiber multisets are never Neither; C(f) is the annihilator of K",
        cases.len(),
        failures.len(),
        failures.join("; "),
    ))
}

struct SolverSweep {
    runs: usize,
    wrong_order: Vec<String>,
    unsound: Vec<String>,
    bound_violations: Vec<String>,
}

fn sweep_solver(seed: u64, orders: u64) -> Result<SolverSweep> {
    let cases = fbi_instances();
    let mut sweep = SolverSweep {
        runs: 0,
        wrong_order: Vec::new(),
        unsound: Vec::new(),
        bound_violations: Vec::new(),
    };
    for (ci, case) in cases.iter().enumerate() {
        let k = &case.instance.image_subgroup;
        let c_f = annihilator(k)?;
        let h = case.instance.oracle.codomain();
        let bound = call_bound(&case.instance.oracle).expect("catalog instances are FBI");
        for o in 0..orders {
            let mut f = case.instance.oracle.fresh();
            let order = CandidateOrder::Shuffled {
                seed: seed ^ ((ci as u64) << 32) ^ o,
            };
            let mut rng = trial_rng(seed, 10_000 + (ci as u64) * orders + o);
            let sel = marker_selection(&mut f, &order, &mut rng)?;
            sweep.runs += 1;
            if sel.image_order != k.order() || image_description(&sel.ledger)? != *k {
                sweep.wrong_order.push(format!("{} order {o}", case.name));
            }
            let b = &sel.ledger.balancing;
            let sound = sel.ledger.constant.iter().all(|c| c_f.contains(c))
                && b.iter().all(|x| !c_f.contains(x))
                && b.iter().enumerate().all(|(i, x)| {
                    b[i + 1..]
                        .iter()
                        .all(|y| !c_f.contains(&h.sub(x, y).expect("same group")))
                });
            if !sound {
                sweep.unsound.push(format!("{} order {o}", case.name));
            }
            if sel.ledger.calls as f64 > bound.ceil() {
                sweep.bound_violations.push(format!(
                    "{} order {o}: {} calls > {}",
                    case.name,
                    sel.ledger.calls,
                    bound.ceil()
                ));
            }
        }
    }
    Ok(sweep)
}

pub fn fbi_solver(seed: u64, orders: u64) -> Result<Vec<Check>> {
    let mut f = paper_fbi_table();
    let z12 = f.codomain().clone();
    let script = CandidateOrder::Scripted {
        labels: [1, 2, 4]
            .iter()
            .map(|&x| z12.element(&[x]))
            .collect::<Result<_>>()?,
    };
    let sel = marker_selection(&mut f, &script, &mut trial_rng(seed, 5))?;
    let image = image_description(&sel.ledger)?;
    let worked_ok =
        sel.image_order == 4 && image.member_indices() == [0, 3, 6, 9] && sel.ledger.calls == 3;

    let sweep = sweep_solver(seed, orders)?;
    Ok(vec![
        Check::counted(
            "worked Z/12 example: image order 4, subgroup {0,3,6,9}, 3 calls",
            1,
            usize::from(!worked_ok),
            format!(
                "image order {}, calls {}",
                sel.image_order, sel.ledger.calls
            ),
        ),
        Check::counted(
            "marker selection returns |img(f)|",
            sweep.runs,
            sweep.wrong_order.len(),
            sweep.wrong_order.join("; "),
        ),
        Check::counted(
            "ledger constants and orbit representatives are sound",
            sweep.runs,
            sweep.unsound.len(),
            sweep.unsound.join("; "),
        ),
    ])
}

pub fn fbi_bound(seed: u64, orders: u64) -> Result<Check> {
    let sweep = sweep_solver(seed, orders)?;
    let shown: Vec<&str> = sweep
        .bound_violations
        .iter()
        .take(5)
        .map(String::as_str)
        .collect();
    Ok(Check::counted(
        "calls <= ceil((|img|-1)(log2(|H|/|img|)+1))",
        sweep.runs,
        sweep.bound_violations.len(),
        shown.join("; "),
    ))
}

pub fn recovery(seed: u64, runs: usize) -> Result<Vec<Check>> {
    let cases = hsp_instances();
    let run = |stop_for: &(dyn Fn(&crate::hsp::HspInstance) -> StoppingRule + Sync),
               stream: u64| {
        (0..runs)
            .into_par_iter()
            .map(|r| {
                let case = &cases[r % cases.len()];
                let strategy = Strategy::ALL[(r / cases.len()) % 3];
                let mut inst = case.instance.fresh();
                let mut rng = trial_rng(seed, stream + r as u64);
                let stop = stop_for(&inst);
                let rec =
                    recover_subgroup(&mut inst, strategy, &mut rng, stop, DEFAULT_MAX_ROUNDS)?;
                Ok((rec.subgroup == inst.hidden).then_some(()).ok_or(format!(
                    "{} / {} run {r}: got order {} after {} rounds",
                    case.name,
                    strategy.name(),
                    rec.subgroup.order(),
                    rec.rounds
                )))
            })
            .collect::<Result<Vec<_>>>()
    };

    let known = run(&StoppingRule::known_order, 100_000)?;
    let known_fail: Vec<String> = known.into_iter().filter_map(|r| r.err()).collect();
    let plateau = run(
        &|_| StoppingRule::Plateau {
            patience: DEFAULT_PLATEAU,
        },
        200_000,
    )?;
    let plateau_fail: Vec<String> = plateau.into_iter().filter_map(|r| r.err()).collect();
    let rate = 1.0 - plateau_fail.len() as f64 / runs as f64;

    Ok(vec![
        Check::counted(
            "known-order stopping recovers S",
            runs,
            known_fail.len(),
            known_fail.join("; "),
        ),
        Check {
            name: format!("plateau stopping (c={DEFAULT_PLATEAU}) recovers S in >= 99% of runs"),
            passed: rate >= 0.99,
            cases: runs,
            failures: plateau_fail.len(),
            max_error: None,
            detail: format!("success rate {rate:.4}; {}", plateau_fail.join("; ")),
        },
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cheap_suites_pass() {
        for c in duality(1).unwrap() {
            assert!(c.passed, "{c:?}");
        }
        assert!(fbi_biconditional().unwrap().passed);
        assert!(fbi_dichotomy().unwrap().passed);
    }

    #[test]
    fn biconditional_covers_every_table() {
        let c = fbi_biconditional().unwrap();
        assert_eq!(c.cases, 4 + 27 + 256 + 16 + 16 + 16);
    }

    #[test]
    fn report_is_deterministic() {
        let cfg = VerifyConfig {
            seed: 9,
            support_rounds: 50,
            candidate_orders: 3,
            recovery_runs: 24,
        };
        let a = serde_json::to_string(&run_scope(Scope::HspSupport, &cfg).unwrap()).unwrap();
        let b = serde_json::to_string(&run_scope(Scope::HspSupport, &cfg).unwrap()).unwrap();
        assert_eq!(a, b);
    }
}
