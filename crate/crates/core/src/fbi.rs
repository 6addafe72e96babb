//! Functions with a fully balanced image, and the marker selection solver
//! that finds `|img(f)|` through phase kick-back probes.
//!
//! `f: G -> H` is FBI when its fiber multiset is constant or balanced against
//! every character of `H`; equivalently its image is a coset `t + K` and all
//! fibers have the same size. The characters against which `f` is constant
//! form the subgroup `C(f) = K^perp`; the rest, `B(f)`, split into
//! `|K| - 1` cosets ("orbits") of `C(f)`.
//!
//! [`marker_selection`] keeps a generating set `C` of the constant
//! characters found so far and one representative per balancing orbit in
//! `B`, and stops when `|<C>| * (|B| + 1) = |H|`.

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::character::{annihilator, Character};
use crate::error::{Error, Result};
use crate::group::{GroupElement, GroupSpec, Subgroup, SubgroupView};
use crate::multiset::{is_fully_balanced, Multiset};
use crate::qsim::{gpk_run, Oracle};
use crate::trial_rng;

#[derive(Clone, Debug)]
pub struct FbiInstance {
    pub image_subgroup: Subgroup,
    pub shift: GroupElement,
    pub oracle: Oracle,
}

impl FbiInstance {
    pub fn image_order(&self) -> usize {
        self.image_subgroup.order()
    }

    pub fn fresh(&self) -> Self {
        Self {
            oracle: self.oracle.fresh(),
            ..self.clone()
        }
    }
}

/// Random FBI function with image `shift + image_subgroup`: `G` is split
/// uniformly at random into `|K|` fibers of size `|G| / |K|`.
pub fn make_fbi_instance<R: Rng + ?Sized>(
    domain: &GroupSpec,
    image_subgroup: &Subgroup,
    shift: &GroupElement,
    rng: &mut R,
) -> Result<FbiInstance> {
    let codomain = image_subgroup.parent();
    codomain.check(shift)?;
    let k = image_subgroup.order();
    if !domain.order().is_multiple_of(k) {
        return Err(Error::NotDivisor {
            sub: k,
            order: domain.order(),
        });
    }
    let fiber = domain.order() / k;
    let t = codomain.index_of(shift)?;
    let mut points: Vec<usize> = (0..domain.order()).collect();
    points.shuffle(rng);
    let mut table = vec![0; domain.order()];
    for (chunk, &member) in points.chunks(fiber).zip(image_subgroup.member_indices()) {
        let value = codomain.add_index(t, member);
        for &g in chunk {
            table[g] = value;
        }
    }
    Ok(FbiInstance {
        image_subgroup: image_subgroup.clone(),
        shift: shift.clone(),
        oracle: Oracle::from_indices(domain, codomain, table)?,
    })
}

/// `m(h) = |f^-1(h)|`.
pub fn fiber_multiset(oracle: &Oracle) -> Multiset {
    Multiset::from_fibers(oracle.codomain(), oracle.table()).expect("oracle table is in range")
}

/// Every character sum over `f` has modulus `0` or `|G|`, decided exactly.
pub fn is_fbi_spectral(oracle: &Oracle) -> bool {
    is_fully_balanced(&fiber_multiset(oracle)).expect("a total table has nonempty support")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FbiStructure {
    pub image_subgroup: Subgroup,
    /// Smallest image element; the image is `shift + image_subgroup`.
    pub shift: GroupElement,
    pub fiber_size: usize,
}

/// Image as a subgroup coset with equal fibers, if it is one.
pub fn fbi_structure(oracle: &Oracle) -> Option<FbiStructure> {
    let h = oracle.codomain();
    let ms = fiber_multiset(oracle);
    let support = ms.support_indices();
    let fiber = ms.multiplicities()[support[0]];
    if support.iter().any(|&y| ms.multiplicities()[y] != fiber) {
        return None;
    }
    let y0 = support[0];
    let translated: Vec<GroupElement> = support
        .iter()
        .map(|&y| h.element_at(h.sub_index(y, y0)).expect("index in range"))
        .collect();
    let image_subgroup = Subgroup::from_elements(h, &translated).ok()?;
    Some(FbiStructure {
        image_subgroup,
        shift: h.element_at(y0).expect("index in range"),
        fiber_size: fiber as usize,
    })
}

pub fn is_fbi_structural(oracle: &Oracle) -> bool {
    fbi_structure(oracle).is_some()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "outcome", content = "delta")]
pub enum ProbeOutcome {
    /// The run measured `0`: under the FBI promise the marker is constant.
    ZeroCertain,
    /// The run measured `delta != 0`: the marker balances `f`.
    NonzeroObserved(GroupElement),
}

/// One phase kick-back run used as a constant/balanced test. Counts one
/// oracle call. Only meaningful when `f` is FBI.
pub fn fbi_gpk_probe<R: Rng + ?Sized>(
    oracle: &mut Oracle,
    marker: &Character,
    rng: &mut R,
) -> Result<ProbeOutcome> {
    let out = gpk_run(oracle, marker, rng)?;
    Ok(if out.measured.is_zero() {
        ProbeOutcome::ZeroCertain
    } else {
        ProbeOutcome::NonzeroObserved(out.measured)
    })
}

/// Order in which nontrivial markers are offered to Step 2.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum CandidateOrder {
    Ascending,
    Shuffled {
        seed: u64,
    },
    /// These labels first, then the remaining ones ascending.
    Scripted {
        labels: Vec<GroupElement>,
    },
}

impl CandidateOrder {
    /// All nontrivial character indices of `h`, each exactly once.
    pub fn sequence(&self, h: &GroupSpec) -> Result<Vec<usize>> {
        let mut seq: Vec<usize> = (1..h.order()).collect();
        match self {
            CandidateOrder::Ascending => {}
            CandidateOrder::Shuffled { seed } => seq.shuffle(&mut trial_rng(*seed, u64::MAX)),
            CandidateOrder::Scripted { labels } => {
                let mut head = Vec::new();
                for l in labels {
                    let i = h.index_of(l)?;
                    if i == 0 {
                        return Err(Error::InvalidCandidateOrder(
                            "the trivial character is never a candidate".into(),
                        ));
                    }
                    if head.contains(&i) {
                        return Err(Error::InvalidCandidateOrder(format!("{l} listed twice")));
                    }
                    head.push(i);
                }
                seq.retain(|i| !head.contains(i));
                head.extend(seq);
                seq = head;
            }
        }
        Ok(seq)
    }
}

#[derive(Clone, Debug)]
pub struct MarkerLedger {
    codomain: GroupSpec,
    /// Independent constant characters found so far.
    pub constant: Vec<GroupElement>,
    /// One representative per balancing orbit found so far.
    pub balancing: Vec<GroupElement>,
    pub span_c: Subgroup,
    pub calls: u64,
    pub terminated: bool,
}

impl MarkerLedger {
    fn new(codomain: &GroupSpec) -> Self {
        Self {
            codomain: codomain.clone(),
            constant: Vec::new(),
            balancing: Vec::new(),
            span_c: Subgroup::trivial(codomain),
            calls: 0,
            terminated: false,
        }
    }

    pub fn codomain(&self) -> &GroupSpec {
        &self.codomain
    }

    /// `|<C>| * (|B| + 1)`, which reaches `|H|` exactly at termination.
    pub fn coverage(&self) -> usize {
        self.span_c.order() * (self.balancing.len() + 1)
    }

    pub fn view(&self) -> LedgerView {
        LedgerView {
            orders_h: self.codomain.clone(),
            constant: self.constant.clone(),
            balancing: self.balancing.clone(),
            span_c: SubgroupView::from(&self.span_c),
            calls: self.calls,
            terminated: self.terminated,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LedgerView {
    #[serde(rename = "orders_H")]
    pub orders_h: GroupSpec,
    pub constant: Vec<GroupElement>,
    pub balancing: Vec<GroupElement>,
    pub span_c: SubgroupView,
    pub calls: u64,
    pub terminated: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MarkerVerdict {
    Constant,
    Balancing,
}

/// One line of the audit log.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProbeRecord {
    /// 2 for a fresh candidate, 4 for an orbit check `chi_y conj(chi_h)`.
    pub step: u8,
    pub marker: GroupElement,
    pub verdict: MarkerVerdict,
    /// Decided from earlier results without calling the oracle.
    pub inferred: bool,
    /// Measured value when a probe ran.
    pub delta: Option<GroupElement>,
    pub calls: u64,
    pub constant: Vec<GroupElement>,
    pub balancing: Vec<GroupElement>,
}

#[derive(Clone, Debug)]
pub struct MarkerSelection {
    pub image_order: usize,
    pub ledger: MarkerLedger,
    pub log: Vec<ProbeRecord>,
}

/// What the solver can deduce without new calls.
///
/// `<C>` is a subgroup of `C(f)` and `B(f)` is its complement, so `x` is
/// certainly balancing iff `<C, x>` contains a character already seen to
/// balance. Any other `x` could still be constant.
struct Knowledge<'a> {
    h: &'a GroupSpec,
    seen_balancing: Vec<bool>,
}

impl Knowledge<'_> {
    fn is_balancing(&self, span: &Subgroup, x: usize) -> bool {
        if self.seen_balancing[x] {
            return true;
        }
        let joined = span
            .join_element(&self.h.element_at(x).expect("index in range"))
            .expect("element of H");
        joined
            .member_indices()
            .iter()
            .any(|&y| self.seen_balancing[y])
    }
}

/// Solves the FBI problem for `oracle` using only phase kick-back probes.
///
/// Step 2 takes the next candidate outside `<C>` and outside every known
/// orbit `b<C>`. A candidate whose verdict already follows from earlier
/// results (in particular any `chi_h` with `<chi_h>` meeting `B`) is
/// processed without a call. A new balancing candidate is compared with
/// every `chi_y` in `B` through `chi_y conj(chi_h)` (Steps 3-4): a constant
/// product puts `chi_h` in the orbit of `chi_y` and extends `C`; otherwise
/// `chi_h` opens a new orbit. Balancing products join `B` once they are
/// known to lie in orbits not yet represented.
pub fn marker_selection<R: Rng + ?Sized>(
    oracle: &mut Oracle,
    order: &CandidateOrder,
    rng: &mut R,
) -> Result<MarkerSelection> {
    let h = oracle.codomain().clone();
    let start_calls = oracle.calls();
    let mut ledger = MarkerLedger::new(&h);
    let mut log = Vec::new();
    let mut know = Knowledge {
        h: &h,
        seen_balancing: vec![false; h.order()],
    };
    let mut pending: Vec<usize> = Vec::new();
    let mut b_idx: Vec<usize> = Vec::new();

    let el = |i: usize| h.element_at(i).expect("index in range");

    let finish = |ledger: &mut MarkerLedger| {
        if ledger.coverage() == h.order() {
            ledger.terminated = true;
        }
        ledger.terminated
    };

    if finish(&mut ledger) {
        return Ok(MarkerSelection {
            image_order: 1,
            ledger,
            log,
        });
    }

    for cand in order.sequence(&h)? {
        let in_known_orbit = ledger.span_c.contains_index(cand)
            || b_idx
                .iter()
                .any(|&b| ledger.span_c.contains_index(h.sub_index(cand, b)));
        if in_known_orbit {
            continue;
        }

        // Step 2.
        let verdict = decide(oracle, &mut know, &mut ledger, &mut log, 2, cand, rng)?;
        if verdict == MarkerVerdict::Constant {
            ledger.constant.push(el(cand));
            ledger.span_c = ledger.span_c.join_element(&el(cand))?;
            promote(&h, &know, &mut ledger, &mut b_idx, &mut pending);
            if finish(&mut ledger) {
                break;
            }
            continue;
        }

        // Step 3.
        if b_idx.is_empty() {
            b_idx.push(cand);
            ledger.balancing.push(el(cand));
            if finish(&mut ledger) {
                break;
            }
            continue;
        }

        // Step 4.
        let mut products = Vec::new();
        let mut same_orbit = false;
        for y in b_idx.clone() {
            let product = h.sub_index(y, cand);
            match decide(oracle, &mut know, &mut ledger, &mut log, 4, product, rng)? {
                MarkerVerdict::Constant => {
                    ledger.constant.push(el(product));
                    ledger.span_c = ledger.span_c.join_element(&el(product))?;
                    same_orbit = true;
                    break;
                }
                MarkerVerdict::Balancing => products.push(product),
            }
        }
        if !same_orbit {
            b_idx.push(cand);
            ledger.balancing.push(el(cand));
            pending.extend(products);
        }
        promote(&h, &know, &mut ledger, &mut b_idx, &mut pending);
        if finish(&mut ledger) {
            break;
        }
    }

    ledger.calls = oracle.calls() - start_calls;
    if !ledger.terminated {
        return Err(Error::CandidatesExhausted {
            span: ledger.span_c.order(),
            balancing: ledger.balancing.len(),
            codomain: h.order(),
        });
    }
    Ok(MarkerSelection {
        image_order: h.order() / ledger.span_c.order(),
        ledger,
        log,
    })
}

/// Verdict for one marker, by inference when possible and by a probe
/// otherwise.
fn decide<R: Rng + ?Sized>(
    oracle: &mut Oracle,
    know: &mut Knowledge<'_>,
    ledger: &mut MarkerLedger,
    log: &mut Vec<ProbeRecord>,
    step: u8,
    marker: usize,
    rng: &mut R,
) -> Result<MarkerVerdict> {
    let h = know.h;
    let (verdict, inferred, delta) = if ledger.span_c.contains_index(marker) {
        (MarkerVerdict::Constant, true, None)
    } else if know.is_balancing(&ledger.span_c, marker) {
        (MarkerVerdict::Balancing, true, None)
    } else {
        match fbi_gpk_probe(oracle, &Character::from_index(h, marker)?, rng)? {
            ProbeOutcome::ZeroCertain => (MarkerVerdict::Constant, false, Some(h.zero())),
            ProbeOutcome::NonzeroObserved(d) => (MarkerVerdict::Balancing, false, Some(d)),
        }
    };
    if verdict == MarkerVerdict::Balancing {
        know.seen_balancing[marker] = true;
    }
    log.push(ProbeRecord {
        step,
        marker: h.element_at(marker)?,
        verdict,
        inferred,
        delta,
        calls: oracle.calls(),
        constant: ledger.constant.clone(),
        balancing: ledger.balancing.clone(),
    });
    Ok(verdict)
}

/// Moves pending balancing characters into `B` once each is known to lie
/// outside every represented orbit; drops those known to lie inside one.
fn promote(
    h: &GroupSpec,
    know: &Knowledge<'_>,
    ledger: &mut MarkerLedger,
    b_idx: &mut Vec<usize>,
    pending: &mut Vec<usize>,
) {
    loop {
        let mut changed = false;
        let mut keep = Vec::new();
        for &p in pending.iter() {
            let span = &ledger.span_c;
            if b_idx
                .iter()
                .any(|&b| span.contains_index(h.sub_index(p, b)))
            {
                changed = true;
                continue;
            }
            if b_idx
                .iter()
                .all(|&b| know.is_balancing(span, h.sub_index(p, b)))
            {
                b_idx.push(p);
                ledger
                    .balancing
                    .push(h.element_at(p).expect("index in range"));
                changed = true;
                continue;
            }
            keep.push(p);
        }
        *pending = keep;
        if !changed {
            break;
        }
    }
}

/// `(|img| - 1) * (log2(|H| / |img|) + 1)`.
pub fn call_bound_for(codomain_order: usize, image_order: usize) -> f64 {
    (image_order as f64 - 1.0) * ((codomain_order as f64 / image_order as f64).log2() + 1.0)
}

/// Worst-case call bound for `oracle`, read from its structure
/// (harness side). `None` if `oracle` is not FBI.
pub fn call_bound(oracle: &Oracle) -> Option<f64> {
    fbi_structure(oracle)
        .map(|s| call_bound_for(oracle.codomain().order(), s.image_subgroup.order()))
}

/// `<C>^perp`, the subgroup of which the image is a coset.
pub fn image_description(ledger: &MarkerLedger) -> Result<Subgroup> {
    if !ledger.terminated {
        return Err(Error::NotTerminated);
    }
    annihilator(&ledger.span_c)
}

/// Reference classical worst case `|G| / p`, `p` the smallest prime dividing
/// `|K|`. `None` when the image is a single point.
pub fn classical_worst_case(domain_order: usize, image_order: usize) -> Option<usize> {
    (2..=image_order)
        .find(|p| image_order.is_multiple_of(*p))
        .map(|p| domain_order / p)
}
