//! Finite Abelian groups presented as products of cyclic groups.
//!
//! A [`GroupSpec`] is the fixed coordinate product `Z/n_1 x ... x Z/n_k`.
//! Elements are coordinate vectors and are numbered by a big-endian
//! mixed-radix index: coordinate `j` carries weight `n_{j+1} * ... * n_k`,
//! so `(2, 1)` in `Z/3 x Z/4` has index `2 * 4 + 1 = 9` and the identity
//! has index 0. Every dense vector in this crate (state amplitudes,
//! oracle tables, multiplicities) is laid out in this order.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest group [`enumerate_subgroups`] will attempt.
pub const SUBGROUP_ENUMERATION_LIMIT: usize = 256;

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct GroupSpec {
    orders: Vec<usize>,
    order: usize,
    exponent: usize,
    strides: Vec<usize>,
}

impl GroupSpec {
    pub fn new(orders: &[usize]) -> Result<Self> {
        if orders.is_empty() {
            return Err(Error::EmptyGroup);
        }
        if let Some((index, &order)) = orders.iter().enumerate().find(|(_, &n)| n < 2) {
            return Err(Error::FactorTooSmall { index, order });
        }
        let order = orders
            .iter()
            .try_fold(1usize, |acc, &n| acc.checked_mul(n))
            .ok_or(Error::GroupTooLarge)?;
        let exponent = orders.iter().fold(1, |acc, &n| lcm(acc, n));
        let mut strides = vec![1; orders.len()];
        for j in (0..orders.len().saturating_sub(1)).rev() {
            strides[j] = strides[j + 1] * orders[j + 1];
        }
        Ok(Self {
            orders: orders.to_vec(),
            order,
            exponent,
            strides,
        })
    }

    /// `Z/n`.
    pub fn cyclic(n: usize) -> Result<Self> {
        Self::new(&[n])
    }

    pub fn orders(&self) -> &[usize] {
        &self.orders
    }

    pub fn rank(&self) -> usize {
        self.orders.len()
    }

    /// `|G|`.
    pub fn order(&self) -> usize {
        self.order
    }

    /// `L = lcm(n_1, ..., n_k)`; every character value is an `L`-th root of unity.
    pub fn exponent(&self) -> usize {
        self.exponent
    }

    pub fn zero(&self) -> GroupElement {
        GroupElement(vec![0; self.rank()])
    }

    /// Builds an element, reducing each coordinate modulo its factor.
    pub fn element(&self, coords: &[i64]) -> Result<GroupElement> {
        if coords.len() != self.rank() {
            return Err(Error::ElementMismatch {
                coords: coords.iter().map(|&c| c.unsigned_abs() as usize).collect(),
                orders: self.orders.clone(),
            });
        }
        Ok(GroupElement(
            coords
                .iter()
                .zip(&self.orders)
                .map(|(&c, &n)| c.rem_euclid(n as i64) as usize)
                .collect(),
        ))
    }

    pub fn contains(&self, g: &GroupElement) -> bool {
        g.0.len() == self.rank() && g.0.iter().zip(&self.orders).all(|(&c, &n)| c < n)
    }

    pub fn check(&self, g: &GroupElement) -> Result<()> {
        if self.contains(g) {
            Ok(())
        } else {
            Err(Error::ElementMismatch {
                coords: g.0.clone(),
                orders: self.orders.clone(),
            })
        }
    }

    pub fn check_same(&self, other: &GroupSpec) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::SpecMismatch {
                left: self.orders.clone(),
                right: other.orders.clone(),
            })
        }
    }

    pub fn add(&self, g: &GroupElement, h: &GroupElement) -> Result<GroupElement> {
        self.check(g)?;
        self.check(h)?;
        Ok(GroupElement(
            g.0.iter()
                .zip(&h.0)
                .zip(&self.orders)
                .map(|((&a, &b), &n)| (a + b) % n)
                .collect(),
        ))
    }

    pub fn neg(&self, g: &GroupElement) -> Result<GroupElement> {
        self.check(g)?;
        Ok(GroupElement(
            g.0.iter()
                .zip(&self.orders)
                .map(|(&a, &n)| (n - a) % n)
                .collect(),
        ))
    }

    pub fn sub(&self, g: &GroupElement, h: &GroupElement) -> Result<GroupElement> {
        self.add(g, &self.neg(h)?)
    }

    /// `k * g`.
    pub fn scale(&self, k: usize, g: &GroupElement) -> Result<GroupElement> {
        self.check(g)?;
        Ok(GroupElement(
            g.0.iter()
                .zip(&self.orders)
                .map(|(&a, &n)| (a * (k % n)) % n)
                .collect(),
        ))
    }

    pub fn index_of(&self, g: &GroupElement) -> Result<usize> {
        self.check(g)?;
        Ok(self.encode(&g.0))
    }

    pub fn element_at(&self, index: usize) -> Result<GroupElement> {
        if index >= self.order {
            return Err(Error::IndexOutOfRange {
                index,
                order: self.order,
            });
        }
        Ok(GroupElement(self.decode(index)))
    }

    /// All elements in index order.
    pub fn elements(&self) -> impl Iterator<Item = GroupElement> + '_ {
        (0..self.order).map(|i| GroupElement(self.decode(i)))
    }

    pub(crate) fn strides(&self) -> &[usize] {
        &self.strides
    }

    pub(crate) fn encode(&self, coords: &[usize]) -> usize {
        coords.iter().zip(&self.strides).map(|(&c, &s)| c * s).sum()
    }

    pub(crate) fn decode(&self, mut index: usize) -> Vec<usize> {
        let mut coords = vec![0; self.rank()];
        for (j, &s) in self.strides.iter().enumerate() {
            coords[j] = index / s;
            index %= s;
        }
        coords
    }

    /// Index of `g + h` for indices `g`, `h`.
    pub(crate) fn add_index(&self, g: usize, h: usize) -> usize {
        let (mut g, mut h) = (g, h);
        let mut out = 0;
        for (&s, &n) in self.strides.iter().zip(&self.orders) {
            out += ((g / s + h / s) % n) * s;
            g %= s;
            h %= s;
        }
        out
    }

    pub(crate) fn neg_index(&self, g: usize) -> usize {
        let mut g = g;
        let mut out = 0;
        for (&s, &n) in self.strides.iter().zip(&self.orders) {
            out += ((n - g / s) % n) * s;
            g %= s;
        }
        out
    }

    pub(crate) fn sub_index(&self, g: usize, h: usize) -> usize {
        self.add_index(g, self.neg_index(h))
    }
}

impl TryFrom<Vec<usize>> for GroupSpec {
    type Error = Error;

    fn try_from(orders: Vec<usize>) -> Result<Self> {
        Self::new(&orders)
    }
}

impl From<GroupSpec> for Vec<usize> {
    fn from(spec: GroupSpec) -> Self {
        spec.orders
    }
}

impl fmt::Debug for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GroupSpec{:?}", self.orders)
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.orders.iter().map(|n| format!("Z/{n}")).collect();
        f.write_str(&parts.join(" x "))
    }
}

/// Coordinate vector of a group element. Only meaningful together with the
/// [`GroupSpec`] it was built for.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GroupElement(pub(crate) Vec<usize>);

impl GroupElement {
    pub fn coords(&self) -> &[usize] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }
}

impl fmt::Debug for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0.as_slice() {
            [c] => write!(f, "{c}"),
            cs => write!(f, "{cs:?}"),
        }
    }
}

/// A subgroup stored as its sorted member indices plus a membership mask.
#[derive(Clone)]
pub struct Subgroup {
    parent: GroupSpec,
    generators: Vec<GroupElement>,
    members: Vec<usize>,
    mask: Vec<bool>,
}

impl Subgroup {
    pub fn trivial(spec: &GroupSpec) -> Self {
        Self::from_members(spec, Vec::new(), vec![0])
    }

    pub fn full(spec: &GroupSpec) -> Self {
        let gens = (0..spec.rank())
            .map(|j| {
                let mut c = vec![0; spec.rank()];
                c[j] = 1;
                GroupElement(c)
            })
            .collect();
        Self::from_members(spec, gens, (0..spec.order()).collect())
    }

    fn from_members(
        spec: &GroupSpec,
        generators: Vec<GroupElement>,
        mut members: Vec<usize>,
    ) -> Self {
        members.sort_unstable();
        members.dedup();
        let mut mask = vec![false; spec.order()];
        for &m in &members {
            mask[m] = true;
        }
        Self {
            parent: spec.clone(),
            generators,
            members,
            mask,
        }
    }

    /// Builds a subgroup from an explicit member set, checking closure.
    pub fn from_elements(spec: &GroupSpec, elements: &[GroupElement]) -> Result<Self> {
        let members = elements
            .iter()
            .map(|g| spec.index_of(g))
            .collect::<Result<Vec<_>>>()?;
        let sub = Self::from_members(spec, elements.to_vec(), members);
        let closed = sub.mask[0]
            && sub
                .members
                .iter()
                .all(|&a| sub.members.iter().all(|&b| sub.mask[spec.sub_index(a, b)]));
        if !closed {
            return Err(Error::NotSubgroup(format!("{elements:?} in {spec}")));
        }
        Ok(Self::from_member_indices(spec, sub.members))
    }

    /// Wraps a member set already known to be closed, choosing a small
    /// generating set greedily.
    pub(crate) fn from_member_indices(spec: &GroupSpec, mut members: Vec<usize>) -> Self {
        members.sort_unstable();
        members.dedup();
        let mut gens: Vec<GroupElement> = Vec::new();
        let mut span = Self::trivial(spec);
        for &m in &members {
            if !span.mask[m] {
                gens.push(GroupElement(spec.decode(m)));
                span = subgroup_closure(spec, &gens).expect("members belong to spec");
            }
        }
        debug_assert_eq!(span.members, members);
        span
    }

    pub fn parent(&self) -> &GroupSpec {
        &self.parent
    }

    pub fn generators(&self) -> &[GroupElement] {
        &self.generators
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn index(&self) -> usize {
        self.parent.order() / self.order()
    }

    /// Member indices, ascending.
    pub fn member_indices(&self) -> &[usize] {
        &self.members
    }

    pub fn elements(&self) -> Vec<GroupElement> {
        self.members
            .iter()
            .map(|&i| GroupElement(self.parent.decode(i)))
            .collect()
    }

    pub fn contains(&self, g: &GroupElement) -> bool {
        self.parent.contains(g) && self.mask[self.parent.encode(&g.0)]
    }

    pub fn contains_index(&self, index: usize) -> bool {
        self.mask.get(index).copied().unwrap_or(false)
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    pub fn is_full(&self) -> bool {
        self.order() == self.parent.order()
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.parent == other.parent && self.members.iter().all(|&m| other.mask[m])
    }

    /// The smallest subgroup containing `self` and `g`.
    pub fn join_element(&self, g: &GroupElement) -> Result<Subgroup> {
        let mut gens = self.generators.clone();
        gens.push(g.clone());
        subgroup_closure(&self.parent, &gens)
    }
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.parent == other.parent && self.members == other.members
    }
}

impl Eq for Subgroup {}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Subgroup")
            .field("parent", &self.parent)
            .field("elements", &self.elements())
            .finish()
    }
}

/// Wire form of a subgroup in reports.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct SubgroupView {
    pub orders: GroupSpec,
    pub order: usize,
    pub generators: Vec<GroupElement>,
    pub elements: Vec<GroupElement>,
}

impl From<&Subgroup> for SubgroupView {
    fn from(s: &Subgroup) -> Self {
        Self {
            orders: s.parent.clone(),
            order: s.order(),
            generators: s.generators.clone(),
            elements: s.elements(),
        }
    }
}

/// A coset `representative + subgroup`.
#[derive(Clone, Debug)]
pub struct Coset {
    pub representative: GroupElement,
    pub subgroup: Subgroup,
}

impl Coset {
    pub fn contains(&self, g: &GroupElement) -> bool {
        let spec = self.subgroup.parent();
        spec.contains(g)
            && self.subgroup.contains_index(
                spec.sub_index(spec.encode(&g.0), spec.encode(&self.representative.0)),
            )
    }

    pub fn elements(&self) -> Vec<GroupElement> {
        let spec = self.subgroup.parent();
        let rep = spec.encode(&self.representative.0);
        let mut idx: Vec<usize> = self
            .subgroup
            .member_indices()
            .iter()
            .map(|&s| spec.add_index(rep, s))
            .collect();
        idx.sort_unstable();
        idx.into_iter()
            .map(|i| GroupElement(spec.decode(i)))
            .collect()
    }
}

impl PartialEq for Coset {
    fn eq(&self, other: &Self) -> bool {
        self.subgroup == other.subgroup && self.contains(&other.representative)
    }
}

impl Eq for Coset {}

pub fn make_group(orders: &[usize]) -> Result<GroupSpec> {
    GroupSpec::new(orders)
}

/// Smallest subgroup containing every generator.
pub fn subgroup_closure(spec: &GroupSpec, generators: &[GroupElement]) -> Result<Subgroup> {
    let gens = generators
        .iter()
        .map(|g| spec.index_of(g))
        .collect::<Result<Vec<_>>>()?;
    let mut mask = vec![false; spec.order()];
    mask[0] = true;
    let mut members = vec![0];
    let mut frontier = vec![0];
    while let Some(x) = frontier.pop() {
        for &g in &gens {
            let y = spec.add_index(x, g);
            if !mask[y] {
                mask[y] = true;
                members.push(y);
                frontier.push(y);
            }
        }
    }
    Ok(Subgroup::from_members(spec, generators.to_vec(), members))
}

/// Every subgroup of `spec`, ordered by size then by member list.
///
/// Starts from the cyclic subgroups and joins with cyclic subgroups until no
/// new subgroup appears, so groups of any rank are covered.
pub fn enumerate_subgroups(spec: &GroupSpec) -> Result<Vec<Subgroup>> {
    if spec.order() > SUBGROUP_ENUMERATION_LIMIT {
        return Err(Error::GuardExceeded {
            order: spec.order(),
            limit: SUBGROUP_ENUMERATION_LIMIT,
        });
    }
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut cyclic = Vec::new();
    for g in spec.elements() {
        let s = subgroup_closure(spec, std::slice::from_ref(&g))?;
        if seen.insert(s.members.clone()) {
            cyclic.push(s);
        }
    }
    let mut all = cyclic.clone();
    let mut frontier = cyclic.clone();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for s in &frontier {
            for c in &cyclic {
                if c.is_subgroup_of(s) {
                    continue;
                }
                let mut gens = s.generators.clone();
                gens.extend(c.generators.iter().cloned());
                let joined = subgroup_closure(spec, &gens)?;
                if seen.insert(joined.members.clone()) {
                    next.push(joined);
                }
            }
        }
        all.extend(next.iter().cloned());
        frontier = next;
    }
    all.sort_by(|a, b| {
        a.order()
            .cmp(&b.order())
            .then_with(|| a.members.cmp(&b.members))
    });
    Ok(all)
}

/// Cosets of `sub`, each with its minimum-index representative, ordered by
/// representative.
pub fn cosets_of(sub: &Subgroup) -> Vec<Coset> {
    let spec = sub.parent();
    let mut covered = vec![false; spec.order()];
    let mut out = Vec::with_capacity(sub.index());
    for rep in 0..spec.order() {
        if covered[rep] {
            continue;
        }
        for &s in sub.member_indices() {
            covered[spec.add_index(rep, s)] = true;
        }
        out.push(Coset {
            representative: GroupElement(spec.decode(rep)),
            subgroup: sub.clone(),
        });
    }
    out
}

pub(crate) fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub(crate) fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

#[cfg(test)]
mod tests {
    use super::*;

    fn el(spec: &GroupSpec, c: &[i64]) -> GroupElement {
        spec.element(c).unwrap()
    }

    #[test]
    fn make_group_examples() {
        let g = make_group(&[12]).unwrap();
        assert_eq!((g.order(), g.exponent()), (12, 12));
        let g = make_group(&[2, 2]).unwrap();
        assert_eq!((g.order(), g.exponent()), (4, 2));
        let g = make_group(&[4, 6]).unwrap();
        assert_eq!((g.order(), g.exponent()), (24, 12));
    }

    #[test]
    fn make_group_rejects_bad_orders() {
        assert!(matches!(make_group(&[]), Err(Error::EmptyGroup)));
        assert!(matches!(
            make_group(&[4, 1]),
            Err(Error::FactorTooSmall { index: 1, order: 1 })
        ));
        assert!(make_group(&[0]).is_err());
    }

    #[test]
    fn arithmetic_examples() {
        let z12 = GroupSpec::cyclic(12).unwrap();
        assert_eq!(
            z12.add(&el(&z12, &[7]), &el(&z12, &[9])).unwrap(),
            el(&z12, &[4])
        );
        assert_eq!(z12.neg(&el(&z12, &[3])).unwrap(), el(&z12, &[9]));
        let klein = GroupSpec::new(&[2, 2]).unwrap();
        assert_eq!(
            klein
                .add(&el(&klein, &[1, 0]), &el(&klein, &[1, 1]))
                .unwrap(),
            el(&klein, &[0, 1])
        );
        assert_eq!(
            z12.add(&z12.zero(), &el(&z12, &[5])).unwrap(),
            el(&z12, &[5])
        );
    }

    #[test]
    fn arithmetic_rejects_foreign_elements() {
        let z12 = GroupSpec::cyclic(12).unwrap();
        let klein = GroupSpec::new(&[2, 2]).unwrap();
        assert!(z12.add(&klein.zero(), &z12.zero()).is_err());
        assert!(z12.neg(&GroupElement(vec![12])).is_err());
    }

    #[test]
    fn mixed_radix_is_big_endian() {
        let g = GroupSpec::new(&[3, 4]).unwrap();
        assert_eq!(g.index_of(&el(&g, &[2, 1])).unwrap(), 9);
        assert_eq!(g.element_at(0).unwrap(), g.zero());
        assert!(matches!(
            g.element_at(12),
            Err(Error::IndexOutOfRange {
                index: 12,
                order: 12
            })
        ));
    }

    #[test]
    fn index_round_trip_is_bijection() {
        let g = GroupSpec::new(&[6, 2]).unwrap();
        let mut seen = vec![false; g.order()];
        for e in g.elements() {
            seen[g.index_of(&e).unwrap()] = true;
            assert_eq!(g.element_at(g.index_of(&e).unwrap()).unwrap(), e);
        }
        assert!(seen.into_iter().all(|s| s));
    }

    #[test]
    fn index_arithmetic_matches_coordinates() {
        let g = GroupSpec::new(&[3, 4, 2]).unwrap();
        for a in 0..g.order() {
            for b in 0..g.order() {
                let (ea, eb) = (g.element_at(a).unwrap(), g.element_at(b).unwrap());
                assert_eq!(
                    g.add_index(a, b),
                    g.index_of(&g.add(&ea, &eb).unwrap()).unwrap()
                );
                assert_eq!(
                    g.sub_index(a, b),
                    g.index_of(&g.sub(&ea, &eb).unwrap()).unwrap()
                );
            }
        }
    }

    #[test]
    fn closure_examples() {
        let z12 = GroupSpec::cyclic(12).unwrap();
        let s = subgroup_closure(&z12, &[el(&z12, &[3])]).unwrap();
        assert_eq!(s.member_indices(), &[0, 3, 6, 9]);
        let t = subgroup_closure(&z12, &[]).unwrap();
        assert_eq!(t.member_indices(), &[0]);

        let g = GroupSpec::new(&[6, 2]).unwrap();
        let s = subgroup_closure(&g, &[el(&g, &[3, 0]), el(&g, &[0, 1])]).unwrap();
        let expected: Vec<GroupElement> = [[0, 0], [0, 1], [3, 0], [3, 1]]
            .iter()
            .map(|c| el(&g, c))
            .collect();
        assert_eq!(s.elements(), expected);
    }

    #[test]
    fn subgroup_equality_ignores_generators() {
        let z12 = GroupSpec::cyclic(12).unwrap();
        let a = subgroup_closure(&z12, &[el(&z12, &[3])]).unwrap();
        let b = subgroup_closure(&z12, &[el(&z12, &[9]), el(&z12, &[6])]).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn from_elements_checks_closure() {
        let z4 = GroupSpec::cyclic(4).unwrap();
        assert!(Subgroup::from_elements(&z4, &[el(&z4, &[0]), el(&z4, &[2])]).is_ok());
        assert!(Subgroup::from_elements(&z4, &[el(&z4, &[0]), el(&z4, &[1])]).is_err());
    }

    #[test]
    fn subgroup_counts() {
        let count = |o: &[usize]| {
            enumerate_subgroups(&GroupSpec::new(o).unwrap())
                .unwrap()
                .len()
        };
        assert_eq!(count(&[4]), 3);
        assert_eq!(count(&[2, 2]), 5);
        assert_eq!(count(&[12]), 6);
        // Gaussian binomials for (Z/2)^4: 1 + 15 + 35 + 15 + 1.
        assert_eq!(count(&[2, 2, 2, 2]), 67);
        assert!(matches!(
            enumerate_subgroups(&GroupSpec::new(&[17, 17]).unwrap()),
            Err(Error::GuardExceeded { .. })
        ));
    }

    #[test]
    fn coset_examples() {
        let z12 = GroupSpec::cyclic(12).unwrap();
        let s = subgroup_closure(&z12, &[el(&z12, &[3])]).unwrap();
        let reps: Vec<_> = cosets_of(&s)
            .into_iter()
            .map(|c| c.representative)
            .collect();
        assert_eq!(reps, vec![el(&z12, &[0]), el(&z12, &[1]), el(&z12, &[2])]);
        assert_eq!(cosets_of(&Subgroup::trivial(&z12)).len(), 12);
        assert_eq!(cosets_of(&Subgroup::full(&z12)).len(), 1);
    }

    #[test]
    fn coset_equality_by_difference() {
        let z12 = GroupSpec::cyclic(12).unwrap();
        let s = subgroup_closure(&z12, &[el(&z12, &[3])]).unwrap();
        let a = Coset {
            representative: el(&z12, &[1]),
            subgroup: s.clone(),
        };
        let b = Coset {
            representative: el(&z12, &[7]),
            subgroup: s.clone(),
        };
        let c = Coset {
            representative: el(&z12, &[2]),
            subgroup: s,
        };
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn spec_serializes_as_order_list() {
        let g = GroupSpec::new(&[4, 6]).unwrap();
        assert_eq!(serde_json::to_string(&g).unwrap(), "[4,6]");
        let back: GroupSpec = serde_json::from_str("[4,6]").unwrap();
        assert_eq!(back, g);
        assert!(serde_json::from_str::<GroupSpec>("[1]").is_err());
        assert_eq!(serde_json::to_string(&el(&g, &[3, 5])).unwrap(), "[3,5]");
    }
}
