//! Direct `O(|G|^2)` Fourier transforms over `G`.
//!
//! Functions are dense vectors in `index_of` order. The forward transform
//! is `f^(chi_z) = sum_g f(g) conj(chi_z(g))`; the dual-side transform
//! `F(g) = sum_z F(chi_z) chi_z(g)` maps it back to `|G| f`. Applying the
//! forward transform twice gives `|G| f(-g)` instead.

use num_complex::Complex64;

use crate::character::pairing_value;
use crate::error::{Error, Result};
use crate::group::{GroupSpec, Subgroup};

fn check_len(spec: &GroupSpec, values: &[Complex64]) -> Result<()> {
    if values.len() != spec.order() {
        return Err(Error::LengthMismatch {
            expected: spec.order(),
            got: values.len(),
        });
    }
    Ok(())
}

pub fn fourier_transform(spec: &GroupSpec, values: &[Complex64]) -> Result<Vec<Complex64>> {
    check_len(spec, values)?;
    Ok((0..spec.order())
        .map(|z| {
            values
                .iter()
                .enumerate()
                .map(|(g, &v)| v * pairing_value(spec, z, g).conj())
                .sum()
        })
        .collect())
}

/// Transform of a function on the dual group, back onto `G`.
pub fn dual_fourier_transform(spec: &GroupSpec, values: &[Complex64]) -> Result<Vec<Complex64>> {
    check_len(spec, values)?;
    Ok((0..spec.order())
        .map(|g| {
            values
                .iter()
                .enumerate()
                .map(|(z, &v)| v * pairing_value(spec, z, g))
                .sum()
        })
        .collect())
}

/// Normalised inverse: recovers `f` from `fourier_transform(f)`.
pub fn inverse_fourier_transform(spec: &GroupSpec, values: &[Complex64]) -> Result<Vec<Complex64>> {
    let n = spec.order() as f64;
    Ok(dual_fourier_transform(spec, values)?
        .into_iter()
        .map(|v| v / n)
        .collect())
}

pub fn indicator(sub: &Subgroup) -> Vec<Complex64> {
    (0..sub.parent().order())
        .map(|i| {
            if sub.contains_index(i) {
                Complex64::new(1.0, 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        })
        .collect()
}

/// Rows of `(label index, re, im)` as CSV.
pub fn transform_csv(values: &[Complex64]) -> String {
    let mut out = String::from("label,re,im\n");
    for (i, v) in values.iter().enumerate() {
        out.push_str(&format!("{i},{:.17e},{:.17e}\n", v.re, v.im));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::character::annihilator;
    use crate::group::subgroup_closure;

    fn close(a: &[Complex64], b: &[Complex64], tol: f64) -> bool {
        a.iter().zip(b).all(|(x, y)| (x - y).norm() <= tol)
    }

    #[test]
    fn indicator_of_subgroup_transforms_to_annihilator() {
        let z12 = GroupSpec::cyclic(12).unwrap();
        let s = subgroup_closure(&z12, &[z12.element(&[3]).unwrap()]).unwrap();
        let hat = fourier_transform(&z12, &indicator(&s)).unwrap();
        let expected: Vec<Complex64> = indicator(&annihilator(&s).unwrap())
            .into_iter()
            .map(|v| v * 4.0)
            .collect();
        assert!(close(&hat, &expected, 1e-9));
    }

    #[test]
    fn constant_function_concentrates_on_trivial_character() {
        let g = GroupSpec::new(&[2, 3]).unwrap();
        let ones = vec![Complex64::new(1.0, 0.0); 6];
        let hat = fourier_transform(&g, &ones).unwrap();
        assert!((hat[0] - Complex64::new(6.0, 0.0)).norm() < 1e-9);
        assert!(hat[1..].iter().all(|v| v.norm() < 1e-9));
    }

    #[test]
    fn forward_then_dual_is_scaled_identity() {
        let z6 = GroupSpec::cyclic(6).unwrap();
        let f: Vec<Complex64> = (0..6)
            .map(|k| Complex64::new(k as f64 * 0.7 - 1.0, (k * k) as f64 * 0.1))
            .collect();
        let back = dual_fourier_transform(&z6, &fourier_transform(&z6, &f).unwrap()).unwrap();
        let scaled: Vec<Complex64> = f.iter().map(|v| v * 6.0).collect();
        assert!(close(&back, &scaled, 1e-9));
        let inv = inverse_fourier_transform(&z6, &fourier_transform(&z6, &f).unwrap()).unwrap();
        assert!(close(&inv, &f, 1e-9));
    }

    #[test]
    fn forward_twice_reflects() {
        let z5 = GroupSpec::cyclic(5).unwrap();
        let f: Vec<Complex64> = (0..5).map(|k| Complex64::new(k as f64, 1.0)).collect();
        let twice = fourier_transform(&z5, &fourier_transform(&z5, &f).unwrap()).unwrap();
        for g in 0..5 {
            assert!((twice[g] - f[(5 - g) % 5] * 5.0).norm() < 1e-9);
        }
    }

    #[test]
    fn rejects_wrong_length() {
        let z5 = GroupSpec::cyclic(5).unwrap();
        assert!(fourier_transform(&z5, &[Complex64::new(0.0, 0.0); 4]).is_err());
    }

    #[test]
    fn csv_has_one_row_per_label() {
        let csv = transform_csv(&[Complex64::new(1.0, 0.0), Complex64::new(0.0, -1.0)]);
        assert_eq!(csv.lines().count(), 3);
        assert!(csv.starts_with("label,re,im\n0,"));
    }
}
