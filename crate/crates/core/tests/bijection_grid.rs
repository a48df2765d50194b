use std::collections::BTreeSet;

use partition_identities::enumeration::{count_table, enumerate, FamilySpec};
use partition_identities::partitions::{class_vector, is_in_d_st, Conditions, Partition, SemigroupParams, Side};
use partition_identities::{forward, inverse};

const GRID: [(u64, u64); 5] = [(2, 3), (2, 5), (2, 7), (3, 4), (3, 5)];
const MAX_N: u64 = 40;

#[test]
fn forward_is_injective_and_inverted_on_its_image() {
    for (s, t) in GRID {
        let sg = SemigroupParams::new(s, t).unwrap();
        let c_st = FamilySpec::c_st(s, t).unwrap();
        for n in 0..=MAX_N {
            let mut images = BTreeSet::new();
            for pi in enumerate(n, &c_st).unwrap() {
                let (pi3, trace) = forward(&pi, s, t).unwrap();
                trace.check().unwrap();
                assert_eq!(pi3.weight(), n);
                assert_eq!(class_vector(&pi, &sg, Side::C), class_vector(&pi3, &sg, Side::D), "({s},{t}) {pi}");
                assert!(images.insert(pi3.clone()), "({s},{t}) collision at {pi3}");
                if is_in_d_st(&pi3, &sg, Conditions::all()) {
                    assert_eq!(inverse(&pi3, s, t).unwrap().0, pi, "({s},{t})");
                }
            }
        }
    }
}

#[test]
fn full_bijection_for_two_three() {
    let (s, t) = (2, 3);
    let c_st = FamilySpec::c_st(s, t).unwrap();
    let d_st = FamilySpec::d_st(s, t).unwrap();
    for n in 0..=MAX_N {
        let mut images: Vec<Partition> =
            enumerate(n, &c_st).unwrap().iter().map(|pi| forward(pi, s, t).unwrap().0).collect();
        images.sort();
        let mut members = enumerate(n, &d_st).unwrap();
        members.sort();
        assert_eq!(images, members, "n={n}");
        for pi3 in &members {
            let (pi, _) = inverse(pi3, s, t).unwrap();
            assert_eq!(&forward(&pi, s, t).unwrap().0, pi3);
        }
    }
}

/// Under the literal family definitions the counts separate at these points;
/// each listed partition lies in D_st but is not an image of the map.
#[test]
fn recorded_count_separations() {
    // (s, t, n, |C|, |D|, member of D_st outside the image)
    type Case = (u64, u64, u64, u64, u64, &'static [u64]);
    let cases: [Case; 2] = [(2, 5, 29, 21, 22, &[13, 11, 5]), (3, 5, 13, 1, 2, &[8, 5])];
    for (s, t, n, c, d, witness) in cases {
        let sg = SemigroupParams::new(s, t).unwrap();
        let c_table = count_table(n, &FamilySpec::c_st(s, t).unwrap()).unwrap();
        let d_table = count_table(n, &FamilySpec::d_st(s, t).unwrap()).unwrap();
        assert_eq!((c_table[n as usize], d_table[n as usize]), (c, d), "({s},{t}) n={n}");
        let w = Partition::new(witness.to_vec()).unwrap();
        assert!(is_in_d_st(&w, &sg, Conditions::all()));
        let hit =
            enumerate(n, &FamilySpec::c_st(s, t).unwrap()).unwrap().iter().any(|pi| forward(pi, s, t).unwrap().0 == w);
        assert!(!hit, "({s},{t}) {w} unexpectedly in the image");
    }
}
