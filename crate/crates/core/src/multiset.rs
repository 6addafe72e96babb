//! Multisets on a group and their classification against characters.

use serde::{Deserialize, Serialize};

use crate::character::Character;
use crate::cyclo::CycloSum;
use crate::error::{Error, Result};
use crate::group::{GroupElement, GroupSpec};

/// How a multiset sits against one character.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Classification {
    /// The character takes a single value on the support.
    Constant,
    /// The weighted character sum vanishes.
    Balanced,
    Neither,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Multiset {
    spec: GroupSpec,
    mult: Vec<u64>,
}

impl Multiset {
    pub fn empty(spec: &GroupSpec) -> Self {
        Self {
            spec: spec.clone(),
            mult: vec![0; spec.order()],
        }
    }

    /// Unit multiplicity on each listed element (duplicates accumulate).
    pub fn from_elements(spec: &GroupSpec, elements: &[GroupElement]) -> Result<Self> {
        let mut ms = Self::empty(spec);
        for e in elements {
            ms.insert(e, 1)?;
        }
        Ok(ms)
    }

    pub fn from_multiplicities(spec: &GroupSpec, mult: Vec<u64>) -> Result<Self> {
        if mult.len() != spec.order() {
            return Err(Error::LengthMismatch {
                expected: spec.order(),
                got: mult.len(),
            });
        }
        Ok(Self {
            spec: spec.clone(),
            mult,
        })
    }

    /// Fiber profile `m(h) = |f^-1(h)|` of a table of codomain indices.
    pub fn from_fibers(codomain: &GroupSpec, table: &[usize]) -> Result<Self> {
        let mut mult = vec![0; codomain.order()];
        for &h in table {
            *mult.get_mut(h).ok_or(Error::IndexOutOfRange {
                index: h,
                order: codomain.order(),
            })? += 1;
        }
        Self::from_multiplicities(codomain, mult)
    }

    pub fn insert(&mut self, e: &GroupElement, count: u64) -> Result<()> {
        let i = self.spec.index_of(e)?;
        self.mult[i] += count;
        Ok(())
    }

    pub fn spec(&self) -> &GroupSpec {
        &self.spec
    }

    pub fn multiplicity(&self, e: &GroupElement) -> u64 {
        self.spec.index_of(e).map(|i| self.mult[i]).unwrap_or(0)
    }

    pub fn multiplicities(&self) -> &[u64] {
        &self.mult
    }

    /// `c_m`, the total multiplicity.
    pub fn total(&self) -> u64 {
        self.mult.iter().sum()
    }

    pub fn support_indices(&self) -> Vec<usize> {
        (0..self.mult.len()).filter(|&i| self.mult[i] > 0).collect()
    }

    pub fn support(&self) -> Vec<GroupElement> {
        self.support_indices()
            .into_iter()
            .map(|i| self.spec.element_at(i).expect("index in range"))
            .collect()
    }

    /// Exact `sum_h m(h) chi(h)`.
    pub fn character_sum(&self, chi: &Character) -> Result<CycloSum> {
        self.spec.check_same(&chi.spec)?;
        let z = chi.index();
        let mut sum = CycloSum::zero(self.spec.exponent());
        for (h, &m) in self.mult.iter().enumerate() {
            if m > 0 {
                sum.add_exponent(self.spec.pairing_index(z, h), m as i64);
            }
        }
        Ok(sum)
    }

    pub fn classify(&self, chi: &Character) -> Result<Classification> {
        classify_multiset(self, chi)
    }
}

pub fn classify_multiset(ms: &Multiset, chi: &Character) -> Result<Classification> {
    let support = ms.support_indices();
    let Some(&first) = support.first() else {
        return Err(Error::EmptySupport);
    };
    ms.spec.check_same(&chi.spec)?;
    let z = chi.index();
    let t0 = ms.spec.pairing_index(z, first);
    if support.iter().all(|&h| ms.spec.pairing_index(z, h) == t0) {
        return Ok(Classification::Constant);
    }
    if ms.character_sum(chi)?.is_zero() {
        Ok(Classification::Balanced)
    } else {
        Ok(Classification::Neither)
    }
}

/// Constant or balanced against every character.
pub fn is_fully_balanced(ms: &Multiset) -> Result<bool> {
    if ms.total() == 0 {
        return Err(Error::EmptySupport);
    }
    for z in 0..ms.spec.order() {
        let chi = Character::from_index(&ms.spec, z)?;
        if classify_multiset(ms, &chi)? == Classification::Neither {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Serialize, Deserialize)]
struct MultisetWire {
    orders: GroupSpec,
    entries: Vec<(GroupElement, u64)>,
}

impl Serialize for Multiset {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        MultisetWire {
            orders: self.spec.clone(),
            entries: self
                .support_indices()
                .into_iter()
                .map(|i| {
                    (
                        self.spec.element_at(i).expect("index in range"),
                        self.mult[i],
                    )
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Multiset {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let wire = MultisetWire::deserialize(d)?;
        let mut ms = Multiset::empty(&wire.orders);
        for (e, m) in &wire.entries {
            ms.insert(e, *m).map_err(serde::de::Error::custom)?;
        }
        Ok(ms)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{cosets_of, enumerate_subgroups};

    fn set(spec: &GroupSpec, xs: &[i64]) -> Multiset {
        let els: Vec<_> = xs.iter().map(|&x| spec.element(&[x]).unwrap()).collect();
        Multiset::from_elements(spec, &els).unwrap()
    }

    #[test]
    fn odd_residues_mod_4_are_fully_balanced() {
        let z4 = GroupSpec::cyclic(4).unwrap();
        let ms = set(&z4, &[1, 3]);
        for z in 0..4 {
            let c = ms
                .classify(&Character::from_index(&z4, z).unwrap())
                .unwrap();
            assert_ne!(c, Classification::Neither);
        }
        assert!(is_fully_balanced(&ms).unwrap());
    }

    #[test]
    fn trivial_character_is_always_constant() {
        let z6 = GroupSpec::cyclic(6).unwrap();
        let ms = set(&z6, &[0, 1, 1, 4]);
        assert_eq!(
            ms.classify(&Character::trivial(&z6)).unwrap(),
            Classification::Constant
        );
    }

    #[test]
    fn z16_example_is_balanced_but_not_equidistributed() {
        let z16 = GroupSpec::cyclic(16).unwrap();
        let ms = set(&z16, &[0, 1, 2, 3, 5, 7, 13, 15]);
        let chi = Character::from_index(&z16, 4).unwrap();
        assert_eq!(ms.classify(&chi).unwrap(), Classification::Balanced);
        // Images of i^x: +1 and -1 once each, +i and -i three times each.
        let mut hist = [0; 4];
        for x in ms.support_indices() {
            hist[x % 4] += 1;
        }
        assert_eq!(hist, [1, 3, 1, 3]);
    }

    #[test]
    fn adjacent_pair_is_not_fully_balanced() {
        let z4 = GroupSpec::cyclic(4).unwrap();
        let ms = set(&z4, &[0, 1]);
        let chi1 = Character::from_index(&z4, 1).unwrap();
        assert_eq!(ms.classify(&chi1).unwrap(), Classification::Neither);
        assert!(!is_fully_balanced(&ms).unwrap());
    }

    #[test]
    fn cosets_and_subgroups_are_fully_balanced() {
        let z4 = GroupSpec::cyclic(4).unwrap();
        assert!(is_fully_balanced(&set(&z4, &[1, 3])).unwrap());
        for spec in [
            GroupSpec::cyclic(12).unwrap(),
            GroupSpec::new(&[2, 4]).unwrap(),
        ] {
            for sub in enumerate_subgroups(&spec).unwrap() {
                for coset in cosets_of(&sub) {
                    let mut ms = Multiset::from_elements(&spec, &coset.elements()).unwrap();
                    assert!(is_fully_balanced(&ms).unwrap());
                    for e in coset.elements() {
                        ms.insert(&e, 2).unwrap();
                    }
                    assert!(is_fully_balanced(&ms).unwrap());
                }
            }
        }
    }

    #[test]
    fn empty_support_is_rejected() {
        let z4 = GroupSpec::cyclic(4).unwrap();
        let ms = Multiset::empty(&z4);
        assert!(matches!(
            ms.classify(&Character::trivial(&z4)),
            Err(Error::EmptySupport)
        ));
        assert!(is_fully_balanced(&ms).is_err());
    }

    #[test]
    fn json_wire_format() {
        let g = GroupSpec::new(&[2, 3]).unwrap();
        let mut ms = Multiset::empty(&g);
        ms.insert(&g.element(&[1, 2]).unwrap(), 3).unwrap();
        let json = serde_json::to_string(&ms).unwrap();
        assert_eq!(json, r#"{"orders":[2,3],"entries":[[[1,2],3]]}"#);
        let back: Multiset = serde_json::from_str(&json).unwrap();
        assert_eq!(back, ms);
    }
}
