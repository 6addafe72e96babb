//! State-vector simulation of the generalised phase kick-back circuit.
//!
//! Registers are indexed by group elements in `index_of` order. A two
//! register state over `(G, H)` stores amplitude `(g, h)` at
//! `g * |H| + h`.

use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::character::{pairing_value, Character};
use crate::error::{Error, Result};
use crate::group::{GroupElement, GroupSpec};
use crate::TOLERANCE;

/// Maximum norm drift accepted by [`measure`].
pub const MEASURE_NORM_TOLERANCE: f64 = 1e-6;

/// Black-box access to a total function `f: G -> H`.
///
/// Every gate application and every classical [`Oracle::query`] bumps the
/// call counter. Diagnostic readers ([`Oracle::peek`], [`Oracle::table`])
/// do not.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Oracle {
    domain: GroupSpec,
    codomain: GroupSpec,
    table: Vec<usize>,
    calls: u64,
}

impl Oracle {
    /// Table of codomain indices in domain `index_of` order.
    pub fn from_indices(
        domain: &GroupSpec,
        codomain: &GroupSpec,
        table: Vec<usize>,
    ) -> Result<Self> {
        if table.len() != domain.order() {
            return Err(Error::MalformedTable(format!(
                "table has {} entries, domain has {} elements",
                table.len(),
                domain.order()
            )));
        }
        if let Some(&bad) = table.iter().find(|&&h| h >= codomain.order()) {
            return Err(Error::IndexOutOfRange {
                index: bad,
                order: codomain.order(),
            });
        }
        Ok(Self {
            domain: domain.clone(),
            codomain: codomain.clone(),
            table,
            calls: 0,
        })
    }

    pub fn from_elements(
        domain: &GroupSpec,
        codomain: &GroupSpec,
        table: &[GroupElement],
    ) -> Result<Self> {
        let idx = table
            .iter()
            .map(|h| codomain.index_of(h))
            .collect::<Result<Vec<_>>>()?;
        Self::from_indices(domain, codomain, idx)
    }

    pub fn from_fn<F>(domain: &GroupSpec, codomain: &GroupSpec, f: F) -> Result<Self>
    where
        F: Fn(&GroupElement) -> GroupElement,
    {
        let table: Vec<GroupElement> = domain.elements().map(|g| f(&g)).collect();
        Self::from_elements(domain, codomain, &table)
    }

    pub fn domain(&self) -> &GroupSpec {
        &self.domain
    }

    pub fn codomain(&self) -> &GroupSpec {
        &self.codomain
    }

    pub fn calls(&self) -> u64 {
        self.calls
    }

    pub fn reset_calls(&mut self) {
        self.calls = 0;
    }

    /// Copy with a zeroed counter, for independent trials.
    pub fn fresh(&self) -> Self {
        Self {
            calls: 0,
            ..self.clone()
        }
    }

    /// Classical black-box query; counts one call.
    pub fn query(&mut self, g: &GroupElement) -> Result<GroupElement> {
        let i = self.domain.index_of(g)?;
        self.calls += 1;
        Ok(GroupElement(self.codomain.decode(self.table[i])))
    }

    /// Uncounted read, for harness-side diagnostics.
    pub fn peek(&self, g: &GroupElement) -> Result<GroupElement> {
        let i = self.domain.index_of(g)?;
        Ok(GroupElement(self.codomain.decode(self.table[i])))
    }

    /// Uncounted access to the table of codomain indices.
    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string(&OracleWire::from(self))?)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str::<OracleWire>(s)?.try_into()
    }
}

/// File form of an oracle table.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct OracleWire {
    #[serde(rename = "orders_G")]
    pub orders_g: Vec<usize>,
    #[serde(rename = "orders_H")]
    pub orders_h: Vec<usize>,
    pub table: Vec<Vec<i64>>,
}

impl From<&Oracle> for OracleWire {
    fn from(o: &Oracle) -> Self {
        Self {
            orders_g: o.domain.orders().to_vec(),
            orders_h: o.codomain.orders().to_vec(),
            table: o
                .table
                .iter()
                .map(|&h| o.codomain.decode(h).into_iter().map(|c| c as i64).collect())
                .collect(),
        }
    }
}

impl TryFrom<OracleWire> for Oracle {
    type Error = Error;

    fn try_from(w: OracleWire) -> Result<Self> {
        let g = GroupSpec::new(&w.orders_g)?;
        let h = GroupSpec::new(&w.orders_h)?;
        let table = w
            .table
            .iter()
            .map(|c| {
                if c.len() != h.rank()
                    || c.iter()
                        .zip(h.orders())
                        .any(|(&x, &n)| x < 0 || x as usize >= n)
                {
                    return Err(Error::MalformedTable(format!(
                        "entry {c:?} is not an element of {h}"
                    )));
                }
                h.element(c)
            })
            .collect::<Result<Vec<_>>>()?;
        Oracle::from_elements(&g, &h, &table)
    }
}

/// Single-register pure state.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    spec: GroupSpec,
    amps: Vec<Complex64>,
}

impl StateVector {
    pub fn basis(spec: &GroupSpec, g: &GroupElement) -> Result<Self> {
        let i = spec.index_of(g)?;
        Ok(Self::basis_index(spec, i))
    }

    pub(crate) fn basis_index(spec: &GroupSpec, i: usize) -> Self {
        let mut amps = vec![Complex64::new(0.0, 0.0); spec.order()];
        amps[i] = Complex64::new(1.0, 0.0);
        Self {
            spec: spec.clone(),
            amps,
        }
    }

    pub fn from_amplitudes(spec: &GroupSpec, amps: Vec<Complex64>) -> Result<Self> {
        if amps.len() != spec.order() {
            return Err(Error::LengthMismatch {
                expected: spec.order(),
                got: amps.len(),
            });
        }
        Ok(Self {
            spec: spec.clone(),
            amps,
        })
    }

    /// `|chi_h>`, i.e. `F_G |h>`.
    pub fn character_state(chi: &Character) -> Self {
        fourier_gate(&Self::basis_index(&chi.spec, chi.index()))
    }

    pub fn spec(&self) -> &GroupSpec {
        &self.spec
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn probabilities(&self) -> Vec<f64> {
        self.amps.iter().map(|a| a.norm_sqr()).collect()
    }

    pub fn inner(&self, other: &StateVector) -> Complex64 {
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }
}

/// Two-register pure state over `G x H`.
#[derive(Clone, Debug, PartialEq)]
pub struct JointState {
    first: GroupSpec,
    second: GroupSpec,
    amps: Vec<Complex64>,
}

impl JointState {
    pub fn product(a: &StateVector, b: &StateVector) -> Self {
        let mut amps = Vec::with_capacity(a.amps.len() * b.amps.len());
        for x in &a.amps {
            for y in &b.amps {
                amps.push(x * y);
            }
        }
        Self {
            first: a.spec.clone(),
            second: b.spec.clone(),
            amps,
        }
    }

    pub fn first_spec(&self) -> &GroupSpec {
        &self.first
    }

    pub fn second_spec(&self) -> &GroupSpec {
        &self.second
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn amplitude(&self, g: usize, h: usize) -> Complex64 {
        self.amps[g * self.second.order() + h]
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    /// `F_G (x) I`.
    pub fn fourier_first(&self) -> Self {
        let (ng, nh) = (self.first.order(), self.second.order());
        let scale = 1.0 / (ng as f64).sqrt();
        let mut out = vec![Complex64::new(0.0, 0.0); ng * nh];
        for z in 0..ng {
            for g in 0..ng {
                let w = pairing_value(&self.first, g, z) * scale;
                for h in 0..nh {
                    out[z * nh + h] += w * self.amps[g * nh + h];
                }
            }
        }
        Self {
            amps: out,
            ..self.clone()
        }
    }

    /// `I (x) F_H`.
    pub fn fourier_second(&self) -> Self {
        let (ng, nh) = (self.first.order(), self.second.order());
        let scale = 1.0 / (nh as f64).sqrt();
        let mut out = vec![Complex64::new(0.0, 0.0); ng * nh];
        for g in 0..ng {
            for z in 0..nh {
                out[g * nh + z] = (0..nh)
                    .map(|h| pairing_value(&self.second, h, z) * self.amps[g * nh + h])
                    .sum::<Complex64>()
                    * scale;
            }
        }
        Self {
            amps: out,
            ..self.clone()
        }
    }

    /// Probability of each first-register outcome.
    pub fn first_marginal(&self) -> Vec<f64> {
        let nh = self.second.order();
        self.amps
            .chunks(nh)
            .map(|row| row.iter().map(|a| a.norm_sqr()).sum())
            .collect()
    }

    pub fn second_marginal(&self) -> Vec<f64> {
        let nh = self.second.order();
        let mut p = vec![0.0; nh];
        for (i, a) in self.amps.iter().enumerate() {
            p[i % nh] += a.norm_sqr();
        }
        p
    }

    /// Drops the second register, given the state it is known to be in.
    ///
    /// Returns the first-register state `psi` with `self = psi (x) second`,
    /// or [`Error::Entangled`] if no such factorisation exists.
    pub fn discard_second(&self, second: &StateVector) -> Result<StateVector> {
        self.second.check_same(&second.spec)?;
        let nh = self.second.order();
        let psi: Vec<Complex64> = self
            .amps
            .chunks(nh)
            .map(|row| {
                row.iter()
                    .zip(&second.amps)
                    .map(|(a, b)| b.conj() * a)
                    .sum()
            })
            .collect();
        let residual = self
            .amps
            .iter()
            .enumerate()
            .map(|(i, a)| (a - psi[i / nh] * second.amps[i % nh]).norm_sqr())
            .sum::<f64>()
            .sqrt();
        if residual > TOLERANCE {
            return Err(Error::Entangled { residual });
        }
        StateVector::from_amplitudes(&self.first, psi)
    }

    /// Measures the second register, returning the outcome and the
    /// renormalised first register.
    pub fn measure_second<R: Rng + ?Sized>(&self, rng: &mut R) -> (usize, StateVector) {
        let nh = self.second.order();
        let h = sample_index(&self.second_marginal(), rng);
        let mut psi: Vec<Complex64> = (0..self.first.order())
            .map(|g| self.amps[g * nh + h])
            .collect();
        let norm = psi.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        for a in &mut psi {
            *a /= norm;
        }
        (
            h,
            StateVector {
                spec: self.first.clone(),
                amps: psi,
            },
        )
    }
}

/// `F_G`: `amps'[z] = |G|^(-1/2) sum_g chi_g(z) amps[g]`.
pub fn fourier_gate(state: &StateVector) -> StateVector {
    let spec = &state.spec;
    let scale = 1.0 / (spec.order() as f64).sqrt();
    let amps = (0..spec.order())
        .map(|z| {
            state
                .amps
                .iter()
                .enumerate()
                .filter(|(_, a)| a.norm_sqr() > 0.0)
                .map(|(g, a)| pairing_value(spec, g, z) * a)
                .sum::<Complex64>()
                * scale
        })
        .collect();
    StateVector {
        spec: spec.clone(),
        amps,
    }
}

/// `U_f |g>|h> = |g>|h + f(g)>`. Counts one oracle call.
pub fn oracle_gate(oracle: &mut Oracle, state: &JointState) -> Result<JointState> {
    oracle.domain.check_same(&state.first)?;
    oracle.codomain.check_same(&state.second)?;
    oracle.calls += 1;
    let nh = state.second.order();
    let mut out = vec![Complex64::new(0.0, 0.0); state.amps.len()];
    for (g, &fg) in oracle.table.iter().enumerate() {
        for h in 0..nh {
            out[g * nh + state.second.add_index(h, fg)] = state.amps[g * nh + h];
        }
    }
    Ok(JointState {
        amps: out,
        ..state.clone()
    })
}

/// Applies `U_f` to `|g> (x) |chi_h>` and returns the eigenvalue.
///
/// The result should equal `conj(chi_h(f(g)))`. Fails with
/// [`Error::NotEigenvector`] if the output is not parallel to the input.
pub fn eigen_check(oracle: &mut Oracle, g: &GroupElement, marker: &Character) -> Result<Complex64> {
    oracle.codomain.check_same(&marker.spec)?;
    let pre = JointState::product(
        &StateVector::basis(&oracle.domain, g)?,
        &StateVector::character_state(marker),
    );
    let post = oracle_gate(oracle, &pre)?;
    let ratio: Complex64 = pre
        .amps
        .iter()
        .zip(&post.amps)
        .map(|(a, b)| a.conj() * b)
        .sum();
    let residual = pre
        .amps
        .iter()
        .zip(&post.amps)
        .map(|(a, b)| (b - ratio * a).norm_sqr())
        .sum::<f64>()
        .sqrt();
    if residual > TOLERANCE {
        return Err(Error::NotEigenvector { residual });
    }
    Ok(ratio)
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct GpkOptions {
    /// Prepare `|chi_h>` directly instead of applying `F_H` to `|h>`.
    pub direct_marker_preparation: bool,
}

#[derive(Clone, Debug)]
pub struct GpkOutcome {
    pub measured: GroupElement,
    /// First register just before measurement.
    pub amplitudes: StateVector,
    pub marker: Character,
}

/// One run of the phase kick-back circuit with the given marker. Counts
/// exactly one oracle call.
pub fn gpk_run<R: Rng + ?Sized>(
    oracle: &mut Oracle,
    marker: &Character,
    rng: &mut R,
) -> Result<GpkOutcome> {
    gpk_run_with(oracle, marker, rng, GpkOptions::default())
}

pub fn gpk_run_with<R: Rng + ?Sized>(
    oracle: &mut Oracle,
    marker: &Character,
    rng: &mut R,
    options: GpkOptions,
) -> Result<GpkOutcome> {
    oracle.codomain.check_same(&marker.spec)?;
    let zero = StateVector::basis_index(&oracle.domain, 0);
    let phi1 = if options.direct_marker_preparation {
        JointState::product(&fourier_gate(&zero), &StateVector::character_state(marker))
    } else {
        let phi0 = JointState::product(
            &zero,
            &StateVector::basis_index(&marker.spec, marker.index()),
        );
        phi0.fourier_first().fourier_second()
    };
    let phi2 = oracle_gate(oracle, &phi1)?;
    let phi3 = phi2.fourier_first();
    let first = phi3.discard_second(&StateVector::character_state(marker))?;
    let measured = measure(&first, rng)?;
    Ok(GpkOutcome {
        measured,
        amplitudes: first,
        marker: marker.clone(),
    })
}

/// `alpha_z = |G|^-1 sum_g conj(chi_h(f(g))) chi_g(z)`, read straight from
/// the table (not a counted call).
pub fn gpk_closed_form(oracle: &Oracle, marker: &Character, z: &GroupElement) -> Result<Complex64> {
    oracle.codomain.check_same(&marker.spec)?;
    let zi = oracle.domain.index_of(z)?;
    Ok(closed_form_at(oracle, marker.index(), zi))
}

/// All closed-form amplitudes in `index_of` order.
pub fn gpk_closed_form_amplitudes(oracle: &Oracle, marker: &Character) -> Result<Vec<Complex64>> {
    oracle.codomain.check_same(&marker.spec)?;
    let h = marker.index();
    let phases: Vec<Complex64> = oracle
        .table
        .iter()
        .map(|&fg| pairing_value(&oracle.codomain, h, fg).conj())
        .collect();
    let n = oracle.domain.order();
    Ok((0..n)
        .map(|z| {
            phases
                .iter()
                .enumerate()
                .map(|(g, p)| p * pairing_value(&oracle.domain, g, z))
                .sum::<Complex64>()
                / n as f64
        })
        .collect())
}

pub(crate) fn closed_form_at(oracle: &Oracle, h: usize, z: usize) -> Complex64 {
    let n = oracle.domain.order();
    oracle
        .table
        .iter()
        .enumerate()
        .map(|(g, &fg)| {
            pairing_value(&oracle.codomain, h, fg).conj() * pairing_value(&oracle.domain, g, z)
        })
        .sum::<Complex64>()
        / n as f64
}

/// Samples a basis element with probability `|amp|^2`.
pub fn measure<R: Rng + ?Sized>(state: &StateVector, rng: &mut R) -> Result<GroupElement> {
    let norm = state.norm_sqr();
    if (norm - 1.0).abs() > MEASURE_NORM_TOLERANCE {
        return Err(Error::NotNormalized { norm });
    }
    let i = sample_index(&state.probabilities(), rng);
    Ok(GroupElement(state.spec.decode(i)))
}

/// Inverse-CDF draw from an (approximately) normalised weight vector.
pub(crate) fn sample_index<R: Rng + ?Sized>(weights: &[f64], rng: &mut R) -> usize {
    let total: f64 = weights.iter().sum();
    let u = rng.gen::<f64>() * total;
    let mut acc = 0.0;
    let mut last_positive = 0;
    for (i, &w) in weights.iter().enumerate() {
        if w <= 0.0 {
            continue;
        }
        acc += w;
        last_positive = i;
        if u < acc {
            return i;
        }
    }
    last_positive
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn z(n: usize) -> GroupSpec {
        GroupSpec::cyclic(n).unwrap()
    }

    fn close(a: Complex64, b: Complex64) -> bool {
        (a - b).norm() <= 1e-9
    }

    fn paper_z12_oracle() -> Oracle {
        let z12 = z(12);
        Oracle::from_indices(&z12, &z12, vec![0, 3, 3, 9, 9, 3, 0, 6, 0, 6, 6, 9]).unwrap()
    }

    #[test]
    fn fourier_of_zero_is_uniform() {
        let z12 = z(12);
        let s = fourier_gate(&StateVector::basis(&z12, &z12.zero()).unwrap());
        let a = 1.0 / 12f64.sqrt();
        assert!(s
            .amplitudes()
            .iter()
            .all(|&x| close(x, Complex64::new(a, 0.0))));
    }

    #[test]
    fn fourier_on_boolean_cube_is_hadamard() {
        let cube = GroupSpec::new(&[2, 2, 2]).unwrap();
        for g in 0..8usize {
            let s = fourier_gate(&StateVector::basis_index(&cube, g));
            for zi in 0..8usize {
                let sign = if (g & zi).count_ones() % 2 == 0 {
                    1.0
                } else {
                    -1.0
                };
                assert!(close(
                    s.amplitudes()[zi],
                    Complex64::new(sign / 8f64.sqrt(), 0.0)
                ));
            }
        }
    }

    #[test]
    fn fourier_squared_is_inversion() {
        let z5 = z(5);
        for g in z5.elements() {
            let s = fourier_gate(&fourier_gate(&StateVector::basis(&z5, &g).unwrap()));
            let target = StateVector::basis(&z5, &z5.neg(&g).unwrap()).unwrap();
            for (a, b) in s.amplitudes().iter().zip(target.amplitudes()) {
                assert!(close(*a, *b));
            }
        }
    }

    #[test]
    fn oracle_gate_on_basis_states() {
        let z4 = z(4);
        let mut f = Oracle::from_indices(&z4, &z4, vec![1, 3, 0, 2]).unwrap();
        for g in 0..4 {
            let pre = JointState::product(
                &StateVector::basis_index(&z4, g),
                &StateVector::basis_index(&z4, 0),
            );
            let post = oracle_gate(&mut f, &pre).unwrap();
            assert_eq!(post.amplitude(g, f.table()[g]), Complex64::new(1.0, 0.0));
        }
        assert_eq!(f.calls(), 4);

        let mut zero = Oracle::from_indices(&z4, &z4, vec![0; 4]).unwrap();
        let pre = JointState::product(
            &fourier_gate(&StateVector::basis_index(&z4, 1)),
            &StateVector::basis_index(&z4, 3),
        );
        assert_eq!(oracle_gate(&mut zero, &pre).unwrap(), pre);
    }

    #[test]
    fn oracle_gate_rejects_mismatched_registers() {
        let z4 = z(4);
        let mut f = Oracle::from_indices(&z4, &z4, vec![0; 4]).unwrap();
        let wrong = JointState::product(
            &StateVector::basis_index(&z(3), 0),
            &StateVector::basis_index(&z4, 0),
        );
        assert!(oracle_gate(&mut f, &wrong).is_err());
        assert_eq!(f.calls(), 0);
    }

    #[test]
    fn eigenvalue_examples() {
        let z12 = z(12);
        let mut f = paper_z12_oracle();
        for g in z12.elements() {
            let ev = eigen_check(&mut f, &g, &Character::trivial(&z12)).unwrap();
            assert!(close(ev, Complex64::new(1.0, 0.0)));
        }
        // f(1) = 3, so the eigenvalue for chi_1 is zeta_12^-3 = -i.
        let ev = eigen_check(
            &mut f,
            &z12.element(&[1]).unwrap(),
            &Character::from_index(&z12, 1).unwrap(),
        )
        .unwrap();
        assert!(close(ev, Complex64::new(0.0, -1.0)));

        let mut c = Oracle::from_indices(&z12, &z12, vec![5; 12]).unwrap();
        let chi = Character::from_index(&z12, 7).unwrap();
        let expected = chi.eval(&z12.element(&[5]).unwrap()).unwrap().conj();
        for g in z12.elements() {
            assert!(close(eigen_check(&mut c, &g, &chi).unwrap(), expected));
        }
    }

    #[test]
    fn non_eigenvector_is_reported() {
        // |g> (x) |h> for a basis h is not an eigenvector once f(g) != 0;
        // emulate by checking discard on an entangled state.
        let z2 = z(2);
        let bell = JointState {
            first: z2.clone(),
            second: z2.clone(),
            amps: vec![
                Complex64::new(0.5f64.sqrt(), 0.0),
                Complex64::new(0.0, 0.0),
                Complex64::new(0.0, 0.0),
                Complex64::new(0.5f64.sqrt(), 0.0),
            ],
        };
        assert!(matches!(
            bell.discard_second(&StateVector::basis_index(&z2, 0)),
            Err(Error::Entangled { .. })
        ));
    }

    #[test]
    fn trivial_marker_always_gives_zero() {
        let z12 = z(12);
        let mut f = paper_z12_oracle();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..50 {
            let out = gpk_run(&mut f, &Character::trivial(&z12), &mut rng).unwrap();
            assert!(out.measured.is_zero());
        }
        assert_eq!(f.calls(), 50);
    }

    #[test]
    fn constant_marker_on_paper_table_gives_zero() {
        let z12 = z(12);
        let mut f = paper_z12_oracle();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let chi4 = Character::from_index(&z12, 4).unwrap();
        for _ in 0..50 {
            assert!(gpk_run(&mut f, &chi4, &mut rng).unwrap().measured.is_zero());
        }
    }

    #[test]
    fn simulation_matches_closed_form() {
        let z12 = z(12);
        let mut f = paper_z12_oracle();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for h in 0..12 {
            let chi = Character::from_index(&z12, h).unwrap();
            for direct in [false, true] {
                let out = gpk_run_with(
                    &mut f,
                    &chi,
                    &mut rng,
                    GpkOptions {
                        direct_marker_preparation: direct,
                    },
                )
                .unwrap();
                let closed = gpk_closed_form_amplitudes(&f, &chi).unwrap();
                for (a, b) in out.amplitudes.amplitudes().iter().zip(&closed) {
                    assert!(close(*a, *b));
                }
            }
        }
        assert_eq!(f.calls(), 24);
    }

    #[test]
    fn closed_form_examples() {
        let z6 = z(6);
        let id = Oracle::from_indices(&z6, &z6, (0..6).collect()).unwrap();
        let chi1 = Character::from_index(&z6, 1).unwrap();
        // alpha_z = (1/6) sum_g zeta_6^{g(z-1)}: a point mass at z = 1.
        for zi in 0..6 {
            let a = gpk_closed_form(&id, &chi1, &z6.element(&[zi]).unwrap()).unwrap();
            let expected = if zi == 1 { 1.0 } else { 0.0 };
            assert!(close(a, Complex64::new(expected, 0.0)), "z = {zi}");
        }
        let f = paper_z12_oracle();
        let z12 = z(12);
        let alpha = gpk_closed_form_amplitudes(&f, &Character::trivial(&z12)).unwrap();
        assert!(close(alpha[0], Complex64::new(1.0, 0.0)));
        assert!(alpha[1..].iter().all(|a| a.norm() < 1e-9));
        assert_eq!(f.calls(), 0);
    }

    #[test]
    fn measurement_statistics() {
        let z4 = z(4);
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let point = StateVector::basis_index(&z4, 2);
        for _ in 0..100 {
            assert_eq!(
                measure(&point, &mut rng).unwrap(),
                z4.element(&[2]).unwrap()
            );
        }
        let uniform = fourier_gate(&StateVector::basis_index(&z4, 0));
        let mut counts = [0usize; 4];
        let draws = 100_000;
        for _ in 0..draws {
            counts[z4.index_of(&measure(&uniform, &mut rng).unwrap()).unwrap()] += 1;
        }
        for c in counts {
            assert!((c as f64 / draws as f64 - 0.25).abs() < 0.01);
        }
    }

    #[test]
    fn measurement_is_reproducible_and_checks_norm() {
        let z6 = z(6);
        let s = fourier_gate(&StateVector::basis_index(&z6, 1));
        let draw = |seed| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..20)
                .map(|_| measure(&s, &mut rng).unwrap())
                .collect::<Vec<_>>()
        };
        assert_eq!(draw(9), draw(9));
        let bad = StateVector::from_amplitudes(&z6, vec![Complex64::new(0.5, 0.0); 6]).unwrap();
        assert!(matches!(
            measure(&bad, &mut ChaCha8Rng::seed_from_u64(0)),
            Err(Error::NotNormalized { .. })
        ));
    }

    #[test]
    fn oracle_json_round_trip_and_validation() {
        let f = paper_z12_oracle();
        let json = f.to_json().unwrap();
        assert!(json.starts_with(r#"{"orders_G":[12],"orders_H":[12],"table":[[0],[3],[3],[9]"#));
        assert_eq!(Oracle::from_json(&json).unwrap(), f);
        assert!(Oracle::from_json(r#"{"orders_G":[2],"orders_H":[2],"table":[[0]]}"#).is_err());
        assert!(Oracle::from_json(r#"{"orders_G":[2],"orders_H":[2],"table":[[0],[2]]}"#).is_err());
    }

    #[test]
    fn query_counts_peek_does_not() {
        let mut f = paper_z12_oracle();
        let z12 = z(12);
        let one = z12.element(&[1]).unwrap();
        assert_eq!(f.peek(&one).unwrap(), z12.element(&[3]).unwrap());
        assert_eq!(f.calls(), 0);
        assert_eq!(f.query(&one).unwrap(), z12.element(&[3]).unwrap());
        assert_eq!(f.calls(), 1);
        assert_eq!(f.fresh().calls(), 0);
    }
}
