use alftop_core::sample::random_alf_space;
use alftop_core::{ElementId, LfSpace, SubsetMask};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Every reflexive antisymmetric system on `n` elements.
fn antisymmetric_systems(n: usize) -> Vec<LfSpace> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
        .collect();
    let total = 3usize.pow(pairs.len() as u32);
    (0..total)
        .map(|mut code| {
            let mut sn: Vec<Vec<usize>> = (0..n).map(|e| vec![e]).collect();
            for &(a, b) in &pairs {
                match code % 3 {
                    1 => sn[a].push(b),
                    2 => sn[b].push(a),
                    _ => {}
                }
                code /= 3;
            }
            LfSpace::new(sn).unwrap()
        })
        .collect()
}

fn all_subsets(len: usize) -> impl Iterator<Item = SubsetMask> {
    (0u64..1 << len).map(move |w| SubsetMask::from_word(len, w))
}

#[test]
fn frontier_idempotent_iff_transitive_on_antisymmetric_systems() {
    let mut checked = 0;
    for n in 1..=4 {
        for space in antisymmetric_systems(n) {
            let idempotent = all_subsets(n).all(|t| {
                let f = space.frontier(&t);
                space.frontier(&f) == f
            });
            assert_eq!(idempotent, space.relation_properties().bounding_transitive);
            checked += 1;
        }
    }
    assert_eq!(checked, 1 + 3 + 27 + 729);
}

fn alf_space() -> impl Strategy<Value = LfSpace> {
    (any::<u64>(), 2usize..9, 0.1f64..0.7).prop_map(|(seed, n, density)| {
        random_alf_space(&mut ChaCha8Rng::seed_from_u64(seed), n, density)
    })
}

proptest! {
    #[test]
    fn open_sets_are_unions_of_neighborhoods(space in alf_space()) {
        let n = space.len();
        for t in all_subsets(n) {
            let union = t.iter().fold(SubsetMask::empty(n), |acc, e| {
                let sn = SubsetMask::from_elements(n, space.smallest_neighborhood(e).unwrap().iter().copied());
                acc.union(&sn)
            });
            prop_assert_eq!(space.is_open(&t), union == t);
        }
    }

    #[test]
    fn frontier_is_thin_shared_and_idempotent(space in alf_space()) {
        let n = space.len();
        for t in all_subsets(n) {
            let f = space.frontier(&t);
            prop_assert_eq!(&f, &space.frontier(&t.complement()));
            prop_assert!(space.is_thin(&t));
            prop_assert_eq!(space.frontier(&f), f);
        }
    }

    #[test]
    fn dimension_grows_along_neighborhoods(space in alf_space()) {
        let dims = space.dimensions().unwrap();
        for e in space.elements() {
            for &x in space.smallest_neighborhood(e).unwrap() {
                if x != e {
                    prop_assert!(dims[x.0] > dims[e.0]);
                }
            }
        }
        let max = space.extrema().maxima;
        prop_assert!(!max.is_empty());
        let covered = space.elements().all(|e: ElementId| {
            space.smallest_neighborhood(e).unwrap().iter().any(|x| max.contains(x))
        });
        prop_assert!(covered);
    }

    #[test]
    fn closure_and_interior_bracket_the_subset(space in alf_space(), word in any::<u64>()) {
        let n = space.len();
        let full = SubsetMask::full(n);
        let t = SubsetMask::from_word(n, word & ((1 << n) - 1));
        let cl = space.closure(&t, &full).unwrap();
        let int = space.interior(&t, &full).unwrap();
        prop_assert!(int.is_subset_of(&t) && t.is_subset_of(&cl));
        prop_assert!(space.is_open(&int));
        prop_assert!(space.is_open(&cl.complement()));
    }
}
