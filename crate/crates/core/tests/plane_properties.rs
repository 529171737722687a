use std::collections::BTreeSet;

use filling_core::sphergeom::{
    apartment_through, build_plane, chambers_cover, min_opposition_cover, non_opposite_witness, opposition_cover_check,
    opposition_lower_bound, project_to_points, Flag,
};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn opposition_is_symmetric() {
    for q in [2, 3] {
        let p = build_plane(q).unwrap();
        for &a in p.flags() {
            for &b in p.flags() {
                assert_eq!(p.opposite(a, b), p.opposite(b, a));
            }
        }
    }
}

#[test]
fn sampled_witnesses_q3() {
    let p = build_plane(3).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for _ in 0..1000 {
        let c1 = *p.flags().choose(&mut rng).unwrap();
        let c2 = *p.flags().choose(&mut rng).unwrap();
        let a = apartment_through(&p, c1, c2);
        assert!(a.contains(c1) && a.contains(c2));
        let w = non_opposite_witness(&p, c1, c2);
        assert!(a.contains(w));
        assert!(!p.opposite(w, c1) && !p.opposite(w, c2));
    }
}

#[test]
fn factor_cover_transfer() {
    let p = build_plane(3).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(32);
    let mut tested = 0;
    while tested < 100 {
        // random families that cover every chamber: all flags plus repeats, shuffled and thinned
        let mut family: Vec<Flag> = p.flags().to_vec();
        family.extend((0..rng.gen_range(0..20)).map(|_| *p.flags().choose(&mut rng).unwrap()));
        family.shuffle(&mut rng);
        let covered: BTreeSet<Flag> = family.iter().copied().collect();
        if covered.len() != p.flags().len() {
            continue;
        }
        assert_eq!(project_to_points(&family).len(), p.size());
        tested += 1;
    }
}

#[test]
fn min_cover_bounds_from_separate_paths() {
    let p = build_plane(2).unwrap();
    let lower = opposition_lower_bound(&p);
    let a = apartment_through(&p, p.flags()[0], p.flags()[0]);
    let upper = if opposition_cover_check(&p, &a).covered { 6 } else { usize::MAX };
    let found = min_opposition_cover(&p).unwrap();
    assert!(lower <= found.m && found.m <= upper);
    assert_eq!((lower, upper), (3, 6));
    assert!(chambers_cover(&p, &found.witness).covered);
}
