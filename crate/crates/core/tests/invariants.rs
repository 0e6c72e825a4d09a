//! Cross-module invariants checked through independent routes.

use std::collections::HashSet;

use sylowlab_core::families;
use sylowlab_core::filters::factorize;
use sylowlab_core::sylow::{
    count_sylow, cyclic_sylow2_complement, find_sylow, p_core_and_kernel, Sylow2Complement,
};
use sylowlab_core::{Caps, PermGroup, Permutation};

fn caps() -> Caps {
    Caps::default()
}

fn sample_groups() -> Vec<(&'static str, PermGroup)> {
    vec![
        ("C_6", families::cyclic(6).unwrap()),
        ("C_12", families::cyclic(12).unwrap()),
        ("D_7", families::dihedral(7).unwrap()),
        ("D_12", families::dihedral(12).unwrap()),
        ("S_4", families::symmetric(4).unwrap()),
        ("S_5", families::symmetric(5).unwrap()),
        ("A_5", families::alternating(5).unwrap()),
        ("dodecahedral", families::dodecahedral()),
        (
            "C_3 x A_4",
            families::direct_product(
                &families::cyclic(3).unwrap(),
                &families::alternating(4).unwrap(),
            ),
        ),
        ("E_27", families::elementary_abelian(3, 3).unwrap()),
    ]
}

/// Every subgroup any operation produces satisfies Lagrange's theorem.
#[test]
fn lagrange_holds_for_every_produced_subgroup() {
    for (name, g) in sample_groups() {
        let order = g.order();
        let mut produced: Vec<(String, u64)> = Vec::new();
        for point in 0..g.degree().min(3) {
            let (_, stab) = g.orbit_and_stabilizer(point);
            produced.push((format!("stabilizer of {point}"), stab.order()));
        }
        let sample_element = g.generators().first().cloned();
        if let Some(s) = sample_element {
            produced.push((
                "centralizer".into(),
                g.centralizer_of(&s, &caps()).unwrap().order(),
            ));
        }
        for p in factorize(order).into_iter().map(|(p, _)| p) {
            let sylow = find_sylow(&g, p, &caps()).unwrap();
            produced.push((format!("Sylow {p}"), sylow.order()));
            produced.push((
                format!("normalizer of Sylow {p}"),
                g.normalizer_of(&sylow, &caps()).unwrap().order(),
            ));
            let pk = p_core_and_kernel(&g, p, &caps()).unwrap();
            produced.push((format!("{p}-core"), pk.p_core.order()));
            produced.push((format!("kernel at {p}"), pk.kernel.order()));
        }
        for (what, sub_order) in produced {
            assert_eq!(
                order % sub_order,
                0,
                "{name}: {what} of order {sub_order} violates Lagrange in order {order}"
            );
        }
    }
}

/// Any independently constructed Sylow subgroup lies in the conjugate orbit
/// of the canonical one: conjugates of the canonical representative must be
/// found among the subgroups the counting pass enumerates.
#[test]
fn conjugates_of_a_sylow_subgroup_are_sylow() {
    for (name, g) in sample_groups() {
        let order = g.order();
        for p in factorize(order).into_iter().map(|(p, _)| p) {
            let sylow = find_sylow(&g, p, &caps()).unwrap();
            let report = count_sylow(&g, p, &caps()).unwrap();
            // Conjugating by arbitrary elements never leaves Syl_p: the
            // conjugate has the right order and the orbit has exactly
            // `count` members.
            let mut distinct: HashSet<Vec<Permutation>> = HashSet::new();
            for t in g.enumerate_elements(caps().elements).unwrap().iter().take(40) {
                let conj = sylow.conjugated_by(t);
                assert_eq!(conj.order(), report.sylow_order, "{name} p={p}");
                assert!(conj.is_subgroup_of(&g));
                let mut key = conj.enumerate_elements(caps().elements).unwrap();
                key.sort();
                distinct.insert(key);
            }
            assert!(distinct.len() as u64 <= report.count, "{name} p={p}");
        }
    }
}

/// Element-level oracle for the parity recursion: the complement constructed
/// through Schreier generators must equal the subgroup of elements whose
/// regular-action permutation is even, iterated until the 2-part is gone.
#[test]
fn sylow2_complement_matches_the_element_level_oracle() {
    let cases = vec![
        ("C_6", families::cyclic(6).unwrap()),
        ("C_20", families::cyclic(20).unwrap()),
        ("C_48", families::cyclic(48).unwrap()),
        ("D_7", families::dihedral(7).unwrap()),
        ("D_15", families::dihedral(15).unwrap()),
        ("D_25", families::dihedral(25).unwrap()),
        (
            "S_3 x C_3",
            families::direct_product(
                &families::symmetric(3).unwrap(),
                &families::cyclic(3).unwrap(),
            ),
        ),
    ];
    for (name, g) in cases {
        let complement = match cyclic_sylow2_complement(&g, &caps()).unwrap() {
            Sylow2Complement::Complement(n) => n,
            Sylow2Complement::NotCyclicSylow2 => panic!("{name} has a cyclic Sylow 2-subgroup"),
        };

        // Oracle: iterate "keep the elements that act evenly on the current
        // subgroup by left multiplication", entirely at the element level.
        let mut elems: Vec<Permutation> = g.enumerate_elements(caps().elements).unwrap();
        loop {
            let size = elems.len() as u64;
            if size % 2 == 1 {
                break;
            }
            let index_of: std::collections::HashMap<&Permutation, usize> =
                elems.iter().enumerate().map(|(i, e)| (e, i)).collect();
            let even: Vec<Permutation> = elems
                .iter()
                .filter(|x| {
                    let images: Vec<usize> =
                        elems.iter().map(|e| index_of[&x.mul(e)]).collect();
                    Permutation::from_images(images).unwrap().parity()
                        == sylowlab_core::Parity::Even
                })
                .cloned()
                .collect();
            if even.len() == elems.len() {
                break; // no odd element: 2-part exhausted
            }
            elems = even;
        }

        assert_eq!(complement.order(), elems.len() as u64, "{name}");
        for e in &elems {
            assert!(complement.contains(e), "{name}: oracle element missing");
        }
    }
}

/// The count of Sylow subgroups in the conjugation-action image equals the
/// count in the source group, and the p-core sits inside the action kernel.
#[test]
fn reduction_mod_kernel_preserves_the_sylow_count() {
    for (name, g) in sample_groups() {
        for p in factorize(g.order()).into_iter().map(|(p, _)| p) {
            let report = count_sylow(&g, p, &caps()).unwrap();
            let pk = p_core_and_kernel(&g, p, &caps()).unwrap();
            assert_eq!(pk.quotient_count, report.count, "{name} p={p}");
            assert!(pk.p_core.is_subgroup_of(&pk.kernel), "{name} p={p}");
            assert_eq!(
                pk.kernel.order() % pk.p_core.order(),
                0,
                "{name} p={p}"
            );
        }
    }
}
