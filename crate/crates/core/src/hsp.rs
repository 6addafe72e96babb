//! Hidden subgroup instances and the rounds that sample `S^perp`.
//!
//! Instances use the injective coset labelling: `f` is constant on each
//! coset of the hidden subgroup `S` and takes distinct values on distinct
//! cosets. Every round returns a label `z` with `chi_z` in `S^perp`; the
//! subgroup is recovered as the annihilator of the span of those labels.

use rand::seq::SliceRandom;
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::character::{annihilator, Character};
use crate::error::{Error, Result};
use crate::group::{cosets_of, GroupElement, GroupSpec, Subgroup, SubgroupView};
use crate::qsim::{
    self, fourier_gate, gpk_closed_form_amplitudes, oracle_gate, JointState, Oracle, StateVector,
};
use crate::{trial_rng, TOLERANCE};

/// Patience of the default plateau stopping rule.
pub const DEFAULT_PLATEAU: usize = 8;
/// Round budget used when none is given.
pub const DEFAULT_MAX_ROUNDS: usize = 10_000;

#[derive(Clone, Debug)]
pub struct HspInstance {
    pub hidden: Subgroup,
    pub oracle: Oracle,
}

impl HspInstance {
    /// Wraps an existing oracle, checking the injective coset promise.
    pub fn new(oracle: Oracle, hidden: Subgroup) -> Result<Self> {
        oracle.domain().check_same(hidden.parent())?;
        let spec = oracle.domain();
        let t = oracle.table();
        for a in 0..spec.order() {
            for b in 0..spec.order() {
                let same_coset = hidden.contains_index(spec.sub_index(a, b));
                if same_coset != (t[a] == t[b]) {
                    return Err(Error::InvalidHspInstance(format!(
                        "f({a}) {} f({b}) but the indices {} in the same coset",
                        if t[a] == t[b] { "=" } else { "!=" },
                        if same_coset { "are" } else { "are not" },
                    )));
                }
            }
        }
        Ok(Self { hidden, oracle })
    }

    pub fn domain(&self) -> &GroupSpec {
        self.oracle.domain()
    }

    pub fn codomain(&self) -> &GroupSpec {
        self.oracle.codomain()
    }

    /// `S^perp`, read from the hidden subgroup (harness side).
    pub fn perp(&self) -> Subgroup {
        annihilator(&self.hidden).expect("catalog-sized group")
    }

    /// Copy with a zeroed oracle counter.
    pub fn fresh(&self) -> Self {
        Self {
            hidden: self.hidden.clone(),
            oracle: self.oracle.fresh(),
        }
    }

    pub fn view(&self) -> InstanceView {
        InstanceView {
            orders_g: self.domain().orders().to_vec(),
            orders_h: self.codomain().orders().to_vec(),
            hidden: SubgroupView::from(&self.hidden),
            table: self.oracle.table().to_vec(),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct InstanceView {
    #[serde(rename = "orders_G")]
    pub orders_g: Vec<usize>,
    #[serde(rename = "orders_H")]
    pub orders_h: Vec<usize>,
    pub hidden: SubgroupView,
    /// Codomain indices in domain `index_of` order.
    pub table: Vec<usize>,
}

/// Labels each coset of `hidden` with a distinct random element of `codomain`.
pub fn make_hsp_instance<R: Rng + ?Sized>(
    domain: &GroupSpec,
    codomain: &GroupSpec,
    hidden: &Subgroup,
    rng: &mut R,
) -> Result<HspInstance> {
    domain.check_same(hidden.parent())?;
    let cosets = cosets_of(hidden);
    if codomain.order() < cosets.len() {
        return Err(Error::CodomainTooSmall {
            cosets: cosets.len(),
            codomain: codomain.order(),
        });
    }
    let mut labels: Vec<usize> = (0..codomain.order()).collect();
    labels.shuffle(rng);
    let mut table = vec![0; domain.order()];
    for (coset, &label) in cosets.iter().zip(&labels) {
        for e in coset.elements() {
            table[domain.index_of(&e)?] = label;
        }
    }
    Ok(HspInstance {
        hidden: hidden.clone(),
        oracle: Oracle::from_indices(domain, codomain, table)?,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Strategy {
    /// Standard coset-state sampling.
    Simon,
    /// Phase kick-back with a marker drawn uniformly from all of `H^`.
    GpkUniformAll,
    /// Phase kick-back with a marker drawn uniformly from `H^ \ {chi_0}`.
    GpkUniformNontrivial,
}

impl Strategy {
    pub const ALL: [Strategy; 3] = [
        Strategy::Simon,
        Strategy::GpkUniformAll,
        Strategy::GpkUniformNontrivial,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Strategy::Simon => "simon",
            Strategy::GpkUniformAll => "gpk-uniform-all",
            Strategy::GpkUniformNontrivial => "gpk-uniform-nontrivial",
        }
    }
}

impl std::str::FromStr for Strategy {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Strategy::ALL
            .into_iter()
            .find(|st| st.name() == s)
            .ok_or_else(|| format!("unknown strategy {s:?}"))
    }
}

/// The Simon circuit: `F_G`, `U_f`, measure the second register, `F_G`,
/// measure the first. One oracle call.
pub fn simon_round<R: Rng + ?Sized>(inst: &mut HspInstance, rng: &mut R) -> Result<GroupElement> {
    let g = inst.domain().clone();
    let h = inst.codomain().clone();
    let start = JointState::product(
        &StateVector::basis_index(&g, 0),
        &StateVector::basis_index(&h, 0),
    );
    let after = oracle_gate(&mut inst.oracle, &start.fourier_first())?;
    let (_, coset_state) = after.measure_second(rng);
    qsim::measure(&fourier_gate(&coset_state), rng)
}

/// One phase kick-back run with the given marker.
pub fn gpk_round<R: Rng + ?Sized>(
    inst: &mut HspInstance,
    marker: &Character,
    rng: &mut R,
) -> Result<GroupElement> {
    Ok(qsim::gpk_run(&mut inst.oracle, marker, rng)?.measured)
}

/// One round under `strategy`, drawing the marker when needed.
pub fn sample_round<R: Rng + ?Sized>(
    inst: &mut HspInstance,
    strategy: Strategy,
    rng: &mut R,
) -> Result<GroupElement> {
    let nh = inst.codomain().order();
    match strategy {
        Strategy::Simon => simon_round(inst, rng),
        Strategy::GpkUniformAll => {
            let marker = Character::from_index(inst.codomain(), rng.gen_range(0..nh))?;
            gpk_round(inst, &marker, rng)
        }
        Strategy::GpkUniformNontrivial => {
            let marker = Character::from_index(inst.codomain(), rng.gen_range(1..nh))?;
            gpk_round(inst, &marker, rng)
        }
    }
}

/// Exact outcome distribution of one round, in `index_of` order.
///
/// Simon's distribution comes from the simulated joint state; the marker
/// strategies average closed-form `|alpha_z|^2` over their marker sets.
/// No oracle calls are counted.
pub fn exact_round_distribution(inst: &HspInstance, strategy: Strategy) -> Result<Vec<f64>> {
    let g = inst.domain();
    let h = inst.codomain();
    match strategy {
        Strategy::Simon => {
            let mut probe = inst.oracle.fresh();
            let start = JointState::product(
                &StateVector::basis_index(g, 0),
                &StateVector::basis_index(h, 0),
            );
            Ok(oracle_gate(&mut probe, &start.fourier_first())?
                .fourier_first()
                .first_marginal())
        }
        Strategy::GpkUniformAll | Strategy::GpkUniformNontrivial => {
            let first = usize::from(strategy == Strategy::GpkUniformNontrivial);
            let markers = h.order() - first;
            let mut p = vec![0.0; g.order()];
            for m in first..h.order() {
                let alpha =
                    gpk_closed_form_amplitudes(&inst.oracle, &Character::from_index(h, m)?)?;
                for (pz, a) in p.iter_mut().zip(alpha) {
                    *pz += a.norm_sqr() / markers as f64;
                }
            }
            Ok(p)
        }
    }
}

/// Closed-form prediction for the same distribution, from `|G|`, `|H|`,
/// `|S|` and `S^perp` only.
pub fn predicted_round_distribution(inst: &HspInstance, strategy: Strategy) -> Vec<f64> {
    let perp = inst.perp();
    let ng = inst.domain().order() as f64;
    let nh = inst.codomain().order() as f64;
    let ns = inst.hidden.order() as f64;
    (0..inst.domain().order())
        .map(|z| {
            if !perp.contains_index(z) {
                return 0.0;
            }
            match strategy {
                Strategy::Simon | Strategy::GpkUniformAll => ns / ng,
                Strategy::GpkUniformNontrivial if z == 0 => (ns * nh - ng) / (ng * (nh - 1.0)),
                Strategy::GpkUniformNontrivial => ns * nh / (ng * (nh - 1.0)),
            }
        })
        .collect()
}

/// Labels gathered so far and what they imply about `S`.
#[derive(Clone, Debug)]
pub struct RecoveryState {
    pub collected: Vec<GroupElement>,
    /// Subgroup generated by `collected`, contained in `S^perp`.
    pub span: Subgroup,
    /// `annihilator(span)`, always containing `S`.
    pub estimate: Subgroup,
}

impl RecoveryState {
    pub fn new(spec: &GroupSpec) -> Self {
        Self {
            collected: Vec::new(),
            span: Subgroup::trivial(spec),
            estimate: Subgroup::full(spec),
        }
    }

    /// Records a label; returns whether the span grew.
    pub fn absorb(&mut self, z: GroupElement) -> Result<bool> {
        let grew = !self.span.contains(&z);
        if grew {
            self.span = self.span.join_element(&z)?;
            self.estimate = annihilator(&self.span)?;
        }
        self.collected.push(z);
        Ok(grew)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "rule")]
pub enum StoppingRule {
    /// Stop once the span reaches `perp_order = |G| / |S|` elements.
    KnownOrder { perp_order: usize },
    /// Stop after `patience` consecutive rounds without span growth.
    Plateau { patience: usize },
}

impl StoppingRule {
    pub fn known_order(inst: &HspInstance) -> Self {
        StoppingRule::KnownOrder {
            perp_order: inst.hidden.index(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Recovery {
    pub subgroup: Subgroup,
    pub rounds: usize,
    pub calls: u64,
    pub state: RecoveryState,
}

/// Samples rounds until `stop` fires and returns `annihilator(span)`.
pub fn recover_subgroup<R: Rng + ?Sized>(
    inst: &mut HspInstance,
    strategy: Strategy,
    rng: &mut R,
    stop: StoppingRule,
    max_rounds: usize,
) -> Result<Recovery> {
    let start_calls = inst.oracle.calls();
    let mut state = RecoveryState::new(inst.domain());
    let mut quiet = 0;
    for round in 1..=max_rounds {
        let z = sample_round(inst, strategy, rng)?;
        let grew = state.absorb(z)?;
        quiet = if grew { 0 } else { quiet + 1 };
        let done = match stop {
            StoppingRule::KnownOrder { perp_order } => state.span.order() >= perp_order,
            StoppingRule::Plateau { patience } => quiet >= patience,
        };
        if done {
            return Ok(Recovery {
                subgroup: state.estimate.clone(),
                rounds: round,
                calls: inst.oracle.calls() - start_calls,
                state,
            });
        }
    }
    Err(Error::BudgetExhausted {
        rounds: max_rounds,
        partial: Box::new(state.estimate),
    })
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct RoundStats {
    pub trials: usize,
    pub mean: f64,
    pub stddev: f64,
    pub max: usize,
}

impl RoundStats {
    pub fn from_samples(samples: &[usize]) -> Self {
        let n = samples.len();
        if n == 0 {
            return Self::default();
        }
        let mean = samples.iter().sum::<usize>() as f64 / n as f64;
        let var = samples
            .iter()
            .map(|&x| (x as f64 - mean).powi(2))
            .sum::<f64>()
            / n as f64;
        Self {
            trials: n,
            mean,
            stddev: var.sqrt(),
            max: samples.iter().copied().max().unwrap_or(0),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PmfEntry {
    pub element: GroupElement,
    pub index: usize,
    pub p: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StrategyReport {
    pub strategy: Strategy,
    /// Nonzero entries of the exact per-round distribution.
    pub exact_pmf: Vec<PmfEntry>,
    /// Largest deviation from the closed-form prediction.
    pub max_prediction_error: f64,
    /// `1 - p(0)`.
    pub useful_prob: f64,
    /// `useful_prob / useful_prob(simon)`; absent when both vanish.
    pub ratio: Option<f64>,
    pub empirical_rounds: RoundStats,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComparisonReport {
    pub instance: InstanceView,
    pub seed: u64,
    pub strategies: Vec<StrategyReport>,
    /// `|H| / (|H| - 1)`.
    pub expected_ratio: f64,
    pub ratio_matches: bool,
    /// `S^perp` is trivial, so no round carries information.
    pub degenerate: bool,
    /// Every empirical recovery returned exactly `S`.
    pub recoveries_exact: bool,
}

pub(crate) fn pmf_entries(spec: &GroupSpec, p: &[f64]) -> Vec<PmfEntry> {
    p.iter()
        .enumerate()
        .filter(|(_, &v)| v > TOLERANCE)
        .map(|(i, &v)| PmfEntry {
            element: spec.element_at(i).expect("index in range"),
            index: i,
            p: v,
        })
        .collect()
}

/// Exact per-round usefulness of each strategy plus empirical
/// rounds-to-recovery under known-order stopping.
pub fn compare_strategies(
    inst: &HspInstance,
    trials: usize,
    seed: u64,
) -> Result<ComparisonReport> {
    let nh = inst.codomain().order() as f64;
    let expected_ratio = nh / (nh - 1.0);
    let degenerate = inst.hidden.is_full();
    let stop = StoppingRule::known_order(inst);

    let mut reports = Vec::new();
    let mut simon_useful = None;
    let mut recoveries_exact = true;
    for (k, strategy) in Strategy::ALL.into_iter().enumerate() {
        let exact = exact_round_distribution(inst, strategy)?;
        let predicted = predicted_round_distribution(inst, strategy);
        let max_prediction_error = exact
            .iter()
            .zip(&predicted)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        let useful_prob = 1.0 - exact[0];
        let base = *simon_useful.get_or_insert(useful_prob);
        let ratio = (base > TOLERANCE).then(|| useful_prob / base);

        let outcomes: Vec<Result<Recovery>> = (0..trials)
            .into_par_iter()
            .map(|t| {
                let mut local = inst.fresh();
                let mut rng = trial_rng(seed, (k * trials + t) as u64);
                recover_subgroup(&mut local, strategy, &mut rng, stop, DEFAULT_MAX_ROUNDS)
            })
            .collect();
        let mut rounds = Vec::with_capacity(trials);
        for r in outcomes {
            let r = r?;
            recoveries_exact &= r.subgroup == inst.hidden;
            rounds.push(r.rounds);
        }
        reports.push(StrategyReport {
            strategy,
            exact_pmf: pmf_entries(inst.domain(), &exact),
            max_prediction_error,
            useful_prob,
            ratio,
            empirical_rounds: RoundStats::from_samples(&rounds),
        });
    }
    let ratio_matches = if degenerate {
        true
    } else {
        reports
            .iter()
            .find(|r| r.strategy == Strategy::GpkUniformNontrivial)
            .and_then(|r| r.ratio)
            .is_some_and(|r| (r - expected_ratio).abs() <= TOLERANCE)
    };
    Ok(ComparisonReport {
        instance: inst.view(),
        seed,
        strategies: reports,
        expected_ratio,
        ratio_matches,
        degenerate,
        recoveries_exact,
    })
}
