//! Characters of a finite Abelian group, labelled by group elements.
//!
//! The dual group is identified with the group itself through the fixed
//! pairing `chi_g(h) = zeta_L^(sum_j (L / n_j) g_j h_j)`. The pairing is
//! symmetric and nondegenerate, so annihilators are ordinary subgroups of
//! the same [`GroupSpec`].

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::cyclo::{root_of_unity, CycloSum, RootExponent};
use crate::error::{Error, Result};
use crate::group::{GroupElement, GroupSpec, Subgroup};

/// Largest group [`annihilator`] will sweep.
pub const ANNIHILATOR_LIMIT: usize = 1 << 20;

impl GroupSpec {
    /// Exponent `t` with `chi_g(h) = zeta_L^t`, for element indices.
    pub(crate) fn pairing_index(&self, g: usize, h: usize) -> usize {
        let l = self.exponent();
        let (mut g, mut h) = (g, h);
        let mut t = 0;
        for (&n, &s) in self.orders().iter().zip(self.strides()) {
            t += (l / n) * ((g / s) * (h / s) % n);
            g %= s;
            h %= s;
        }
        t % l
    }

    /// Dense `|G| x |G|` table of pairing exponents.
    pub fn pairing_table(&self) -> Vec<Vec<usize>> {
        (0..self.order())
            .map(|g| {
                (0..self.order())
                    .map(|h| self.pairing_index(g, h))
                    .collect()
            })
            .collect()
    }
}

/// The character `chi_label`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Character {
    pub spec: GroupSpec,
    pub label: GroupElement,
}

impl Character {
    pub fn new(spec: &GroupSpec, label: GroupElement) -> Result<Self> {
        spec.check(&label)?;
        Ok(Self {
            spec: spec.clone(),
            label,
        })
    }

    pub fn from_index(spec: &GroupSpec, index: usize) -> Result<Self> {
        Ok(Self {
            spec: spec.clone(),
            label: spec.element_at(index)?,
        })
    }

    pub fn trivial(spec: &GroupSpec) -> Self {
        Self {
            spec: spec.clone(),
            label: spec.zero(),
        }
    }

    pub fn index(&self) -> usize {
        self.spec.encode(self.label.coords())
    }

    pub fn is_trivial(&self) -> bool {
        self.label.is_zero()
    }

    pub fn exponent_at(&self, h: &GroupElement) -> Result<RootExponent> {
        char_exponent(&self.spec, &self.label, h)
    }

    pub fn eval(&self, h: &GroupElement) -> Result<Complex64> {
        Ok(self.exponent_at(h)?.to_complex())
    }

    pub fn conjugate(&self) -> Self {
        conjugate_char(self)
    }

    /// `chi_g * chi_h = chi_(g+h)`.
    pub fn product(&self, other: &Character) -> Result<Self> {
        self.spec.check_same(&other.spec)?;
        Ok(Self {
            spec: self.spec.clone(),
            label: self.spec.add(&self.label, &other.label)?,
        })
    }
}

pub fn char_exponent(spec: &GroupSpec, g: &GroupElement, h: &GroupElement) -> Result<RootExponent> {
    let (gi, hi) = (spec.index_of(g)?, spec.index_of(h)?);
    Ok(RootExponent::new(
        spec.pairing_index(gi, hi) as i64,
        spec.exponent(),
    ))
}

pub fn char_eval(spec: &GroupSpec, g: &GroupElement, h: &GroupElement) -> Result<Complex64> {
    Ok(char_exponent(spec, g, h)?.to_complex())
}

/// `conj(chi_g) = chi_(-g)`.
pub fn conjugate_char(chi: &Character) -> Character {
    Character {
        spec: chi.spec.clone(),
        label: chi.spec.neg(&chi.label).expect("label belongs to its spec"),
    }
}

/// Exact `sum_{s in sub} chi_g(s)`.
pub fn char_sum_over(sub: &Subgroup, g: &GroupElement) -> Result<CycloSum> {
    let spec = sub.parent();
    let gi = spec.index_of(g)?;
    let mut sum = CycloSum::zero(spec.exponent());
    for &s in sub.member_indices() {
        sum.add_exponent(spec.pairing_index(gi, s), 1);
    }
    Ok(sum)
}

/// Labels of the characters trivial on `sub`.
pub fn annihilator(sub: &Subgroup) -> Result<Subgroup> {
    let spec = sub.parent();
    if spec.order() > ANNIHILATOR_LIMIT {
        return Err(Error::GuardExceeded {
            order: spec.order(),
            limit: ANNIHILATOR_LIMIT,
        });
    }
    let gens: Vec<usize> = if sub.generators().is_empty() {
        sub.member_indices().to_vec()
    } else {
        sub.generators()
            .iter()
            .map(|g| spec.index_of(g))
            .collect::<Result<_>>()?
    };
    let members: Vec<usize> = (0..spec.order())
        .filter(|&z| gens.iter().all(|&s| spec.pairing_index(z, s) == 0))
        .collect();
    let perp = Subgroup::from_member_indices(spec, members);
    debug_assert_eq!(perp.order() * sub.order(), spec.order());
    Ok(perp)
}

/// Complex value of a pairing exponent for element indices.
pub(crate) fn pairing_value(spec: &GroupSpec, g: usize, h: usize) -> Complex64 {
    root_of_unity(spec.pairing_index(g, h), spec.exponent())
}
