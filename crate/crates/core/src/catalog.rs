//! Fixed instance catalogs shared by the verifier, the CLI and the tests.
//!
//! Everything here is deterministic: random tables are drawn from
//! [`trial_rng`] with [`CATALOG_SEED`] and a per-entry stream.

use crate::error::Result;
use crate::fbi::{fbi_structure, make_fbi_instance, FbiInstance};
use crate::group::{subgroup_closure, GroupElement, GroupSpec, Subgroup};
use crate::hsp::{make_hsp_instance, HspInstance};
use crate::qsim::Oracle;
use crate::trial_rng;
use rand::Rng;

pub const CATALOG_SEED: u64 = 0x6b69_636b;

/// Groups of order at most 64 used for lattice and duality checks.
pub fn catalog_groups() -> Vec<GroupSpec> {
    let orders: &[&[usize]] = &[
        &[2],
        &[3],
        &[4],
        &[2, 2],
        &[5],
        &[6],
        &[8],
        &[2, 4],
        &[2, 2, 2],
        &[9],
        &[3, 3],
        &[12],
        &[2, 6],
        &[16],
        &[4, 4],
        &[2, 8],
        &[2, 2, 2, 2],
        &[3, 6],
        &[24],
        &[2, 12],
        &[2, 2, 6],
        &[27],
        &[3, 9],
        &[32],
        &[6, 6],
        &[2, 2, 2, 2, 2],
        &[48],
        &[64],
        &[8, 8],
        &[2, 2, 2, 2, 2, 2],
    ];
    orders
        .iter()
        .map(|o| GroupSpec::new(o).expect("valid orders"))
        .collect()
}

/// One representative of every Abelian group of order `2..=max_order`, as
/// invariant factors `d_1 | d_2 | ... | d_k`.
pub fn abelian_groups(max_order: usize) -> Vec<GroupSpec> {
    fn extend(rest: usize, last: usize, acc: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 1 {
            out.push(acc.clone());
            return;
        }
        for d in 2..=rest {
            if rest.is_multiple_of(d) && d % last == 0 {
                acc.push(d);
                extend(rest / d, d, acc, out);
                acc.pop();
            }
        }
    }
    let mut out = Vec::new();
    for n in 2..=max_order {
        let mut found = Vec::new();
        extend(n, 1, &mut Vec::new(), &mut found);
        out.extend(found);
    }
    out.into_iter()
        .map(|o| GroupSpec::new(&o).expect("valid orders"))
        .collect()
}

fn spec(orders: &[usize]) -> GroupSpec {
    GroupSpec::new(orders).expect("valid orders")
}

fn el(spec: &GroupSpec, coords: &[i64]) -> GroupElement {
    spec.element(coords).expect("matching rank")
}

fn span(spec: &GroupSpec, gens: &[&[i64]]) -> Subgroup {
    let gens: Vec<GroupElement> = gens.iter().map(|c| el(spec, c)).collect();
    subgroup_closure(spec, &gens).expect("small group")
}

/// The `Z/12 -> Z/12` table with image `{0, 3, 6, 9}` from the worked
/// marker selection example.
pub fn paper_fbi_table() -> Oracle {
    let z12 = spec(&[12]);
    Oracle::from_indices(&z12, &z12, vec![0, 3, 3, 9, 9, 3, 0, 6, 0, 6, 6, 9]).expect("valid table")
}

#[derive(Clone, Debug)]
pub struct GpkTriple {
    pub name: &'static str,
    pub oracle: Oracle,
}

fn random_table(domain: &GroupSpec, codomain: &GroupSpec, stream: u64) -> Oracle {
    let mut rng = trial_rng(CATALOG_SEED, stream);
    let table = (0..domain.order())
        .map(|_| rng.gen_range(0..codomain.order()))
        .collect();
    Oracle::from_indices(domain, codomain, table).expect("in-range table")
}

/// Functions `G -> H` with `|G|, |H| <= 24` covering homomorphisms, FBI and
/// arbitrary tables.
pub fn gpk_triples() -> Vec<GpkTriple> {
    let z6 = spec(&[6]);
    let z12 = spec(&[12]);
    let z8 = spec(&[8]);
    let z4 = spec(&[4]);
    let z2 = spec(&[2]);
    let z2_3 = spec(&[2, 2, 2]);
    let z24 = spec(&[24]);
    let z16 = spec(&[16]);
    let hom = |g: &GroupSpec, h: &GroupSpec, k: usize| {
        Oracle::from_fn(g, h, |x| {
            let v: Vec<i64> = x.coords().iter().map(|&c| (k * c) as i64).collect();
            h.element(&v).expect("matching rank")
        })
        .expect("total table")
    };
    vec![
        GpkTriple {
            name: "identity on Z/6",
            oracle: hom(&z6, &z6, 1),
        },
        GpkTriple {
            name: "worked FBI table on Z/12",
            oracle: paper_fbi_table(),
        },
        GpkTriple {
            name: "doubling on Z/12",
            oracle: hom(&z12, &z12, 2),
        },
        GpkTriple {
            name: "parity (Z/2)^3 -> Z/2",
            oracle: Oracle::from_fn(&z2_3, &z2, |x| {
                el(&z2, &[x.coords().iter().sum::<usize>() as i64])
            })
            .unwrap(),
        },
        GpkTriple {
            name: "reduction Z/8 -> Z/4",
            oracle: hom(&z8, &z4, 1),
        },
        GpkTriple {
            name: "reduction Z/24 -> Z/6",
            oracle: hom(&z24, &z6, 1),
        },
        GpkTriple {
            name: "constant on Z/12",
            oracle: Oracle::from_indices(&z12, &z12, vec![7; 12]).unwrap(),
        },
        GpkTriple {
            name: "squaring on Z/16",
            oracle: Oracle::from_fn(&z16, &z16, |x| {
                el(&z16, &[(x.coords()[0] * x.coords()[0]) as i64])
            })
            .unwrap(),
        },
        GpkTriple {
            name: "random Z/2xZ/4 -> Z/3",
            oracle: random_table(&spec(&[2, 4]), &spec(&[3]), 1),
        },
        GpkTriple {
            name: "random Z/5 -> Z/7",
            oracle: random_table(&spec(&[5]), &spec(&[7]), 2),
        },
        GpkTriple {
            name: "random Z/3xZ/3 -> Z/9",
            oracle: random_table(&spec(&[3, 3]), &spec(&[9]), 3),
        },
        GpkTriple {
            name: "random Z/2xZ/6 -> Z/2xZ/2",
            oracle: random_table(&spec(&[2, 6]), &spec(&[2, 2]), 4),
        },
        GpkTriple {
            name: "random Z/20 -> Z/2xZ/4",
            oracle: random_table(&spec(&[20]), &spec(&[2, 4]), 5),
        },
        GpkTriple {
            name: "random Z/24 -> Z/24",
            oracle: random_table(&z24, &z24, 6),
        },
        GpkTriple {
            name: "random Z/2 -> Z/24",
            oracle: random_table(&z2, &z24, 7),
        },
    ]
}

#[derive(Clone, Debug)]
pub struct HspCase {
    pub name: &'static str,
    pub instance: HspInstance,
}

/// Hidden subgroup instances with injective coset labels.
pub fn hsp_instances() -> Vec<HspCase> {
    let mk = |name, g: &[usize], h: &[usize], gens: &[&[i64]], stream: u64| {
        let g = spec(g);
        let hidden = span(&g, gens);
        let instance = make_hsp_instance(
            &g,
            &spec(h),
            &hidden,
            &mut trial_rng(CATALOG_SEED, 100 + stream),
        )
        .expect("catalog instance");
        HspCase { name, instance }
    };
    vec![
        mk("Z/6, S=<3>", &[6], &[6], &[&[3]], 0),
        mk("Z/12, S=<4>", &[12], &[12], &[&[4]], 1),
        mk("Z/12 -> Z/8, S=<3>", &[12], &[8], &[&[3]], 2),
        mk("Z/8, S trivial", &[8], &[8], &[&[0]], 3),
        mk("Z/9, S=<3>", &[9], &[9], &[&[3]], 4),
        mk("Z/6, S=G", &[6], &[6], &[&[1]], 5),
        mk(
            "(Z/2)^3, S=<(1,1,0)>",
            &[2, 2, 2],
            &[2, 2, 2],
            &[&[1, 1, 0]],
            6,
        ),
        mk("Z/2xZ/4, S=<(1,2)>", &[2, 4], &[2, 4], &[&[1, 2]], 7),
        mk("Z/3xZ/3, S=<(1,1)>", &[3, 3], &[3, 3], &[&[1, 1]], 8),
        mk(
            "(Z/2)^4 -> Z/4xZ/4, S=<(1,0,1,0),(0,1,1,1)>",
            &[2, 2, 2, 2],
            &[4, 4],
            &[&[1, 0, 1, 0], &[0, 1, 1, 1]],
            9,
        ),
        mk("Z/24 -> Z/8, S=<8>", &[24], &[8], &[&[8]], 10),
        mk("Z/2xZ/6, S=<(1,3)>", &[2, 6], &[12], &[&[1, 3]], 11),
    ]
}

#[derive(Clone, Debug)]
pub struct FbiCase {
    pub name: &'static str,
    pub instance: FbiInstance,
}

/// FBI functions spanning trivial, partial and full images.
pub fn fbi_instances() -> Vec<FbiCase> {
    let mk = |name, g: &[usize], h: &[usize], gens: &[&[i64]], shift: &[i64], stream: u64| {
        let h = spec(h);
        let k = span(&h, gens);
        let instance = make_fbi_instance(
            &spec(g),
            &k,
            &el(&h, shift),
            &mut trial_rng(CATALOG_SEED, 200 + stream),
        )
        .expect("catalog instance");
        FbiCase { name, instance }
    };
    let paper = paper_fbi_table();
    let st = fbi_structure(&paper).expect("FBI table");
    vec![
        FbiCase {
            name: "worked table on Z/12",
            instance: FbiInstance {
                image_subgroup: st.image_subgroup,
                shift: st.shift,
                oracle: paper,
            },
        },
        mk("constant on Z/12", &[12], &[12], &[&[0]], &[5], 0),
        mk("bijection on Z/8", &[8], &[8], &[&[1]], &[0], 1),
        mk("Z/12, image 1+<6>", &[12], &[12], &[&[6]], &[1], 2),
        mk("Z/24 -> Z/12, image 1+<4>", &[24], &[12], &[&[4]], &[1], 3),
        mk("Z/6 -> Z/9, image 2+<3>", &[6], &[9], &[&[3]], &[2], 4),
        mk(
            "Z/2xZ/4, image <(0,2)>",
            &[2, 4],
            &[2, 4],
            &[&[0, 2]],
            &[1, 1],
            5,
        ),
        mk(
            "Z/3xZ/3, image <(1,2)>",
            &[3, 3],
            &[3, 3],
            &[&[1, 2]],
            &[0, 1],
            6,
        ),
        mk(
            "(Z/2)^3, image of order 4",
            &[2, 2, 2],
            &[2, 2, 2],
            &[&[1, 0, 0], &[0, 1, 0]],
            &[0, 0, 1],
            7,
        ),
        mk(
            "(Z/2)^4 -> Z/2xZ/4, image <(1,2)>",
            &[2, 2, 2, 2],
            &[2, 4],
            &[&[1, 2]],
            &[0, 1],
            8,
        ),
        mk("Z/8 -> Z/16, image <4>", &[8], &[16], &[&[4]], &[3], 9),
        mk(
            "Z/2xZ/6 -> Z/2xZ/6, image <(1,2)>",
            &[2, 6],
            &[2, 6],
            &[&[1, 2]],
            &[0, 0],
            10,
        ),
    ]
}

/// Small `(G, H)` pairs whose every table is enumerated in the FBI
/// biconditional sweep.
pub fn biconditional_pairs() -> Vec<(GroupSpec, GroupSpec)> {
    [
        (&[2][..], &[2][..]),
        (&[3], &[3]),
        (&[4], &[4]),
        (&[2], &[4]),
        (&[4], &[2]),
        (&[2, 2], &[2]),
    ]
    .iter()
    .map(|(g, h)| (spec(g), spec(h)))
    .collect()
}

/// All `|H|^|G|` tables `G -> H` in lexicographic order.
pub fn all_tables(domain: &GroupSpec, codomain: &GroupSpec) -> Result<Vec<Oracle>> {
    let (n, m) = (domain.order(), codomain.order());
    let count = m.pow(n as u32);
    (0..count)
        .map(|mut code| {
            let table = (0..n)
                .map(|_| {
                    let v = code % m;
                    code /= m;
                    v
                })
                .collect();
            Oracle::from_indices(domain, codomain, table)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fbi::is_fbi_structural;

    #[test]
    fn abelian_group_counts() {
        // Number of Abelian groups of order n for n = 2..=24.
        let expected = [
            1, 1, 2, 1, 1, 1, 3, 2, 1, 1, 2, 1, 1, 1, 5, 1, 2, 1, 2, 1, 1, 1, 3,
        ];
        let groups = abelian_groups(24);
        for (n, &e) in (2..=24).zip(&expected) {
            assert_eq!(
                groups.iter().filter(|g| g.order() == n).count(),
                e,
                "order {n}"
            );
        }
    }

    #[test]
    fn catalogs_respect_size_limits() {
        assert!(catalog_groups().iter().all(|g| g.order() <= 64));
        let triples = gpk_triples();
        assert!(triples.len() >= 12);
        for t in &triples {
            assert!(
                t.oracle.domain().order() <= 24 && t.oracle.codomain().order() <= 24,
                "{}",
                t.name
            );
        }
    }

    #[test]
    fn fbi_catalog_is_fbi() {
        for case in fbi_instances() {
            let st = fbi_structure(&case.instance.oracle).expect(case.name);
            assert_eq!(
                st.image_subgroup, case.instance.image_subgroup,
                "{}",
                case.name
            );
        }
        assert!(is_fbi_structural(&paper_fbi_table()));
    }

    #[test]
    fn hsp_catalog_builds() {
        let cases = hsp_instances();
        assert_eq!(cases[0].instance.hidden.member_indices(), &[0, 3]);
        assert!(cases.iter().any(|c| c.instance.hidden.is_full()));
    }

    #[test]
    fn table_enumeration() {
        let (g, h) = (spec(&[4]), spec(&[4]));
        let all = all_tables(&g, &h).unwrap();
        assert_eq!(all.len(), 256);
        assert_eq!(all[1].table(), &[1, 0, 0, 0]);
    }
}
