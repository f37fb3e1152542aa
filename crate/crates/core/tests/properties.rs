// Property tests for the structural invariants.

mod common;

use std::collections::BTreeSet;

use common::*;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rootdatum::characters::weight_set;
use rootdatum::lattice::lattice_points_on_segment;
use rootdatum::polytope::{build_polytope, edge_roots};
use rootdatum::reconstruct::{assemble_isomorphism, root_from_edge, MatchedPresentation};
use rootdatum::root_datum::{find_simple_system, LatticeKind};
use rootdatum::weyl::{dominant_representative, generate, is_dominant, orbit};

fn fixture_strategy() -> impl Strategy<Value = usize> {
    0..ALL.len()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn weyl_elements_permute_roots_and_preserve_pairing(k in fixture_strategy()) {
        let f = fixture(ALL[k].0, ALL[k].1);
        for w in f.group.elements() {
            prop_assert!(w.permutes_roots(&f.datum));
            for (a, c) in f.datum.roots().iter().zip(f.datum.coroots()) {
                let wa = w.apply(a);
                prop_assert_eq!(f.datum.coroot_of(&wa).unwrap(), &w.apply_to_coroot(c));
            }
        }
    }

    #[test]
    fn orbits_have_one_dominant_point(k in fixture_strategy(), coords in prop::collection::vec(-3i64..=3, 3)) {
        let f = fixture(ALL[k].0, ALL[k].1);
        let x = lv(&coords[..f.datum.rank()]);
        let o = orbit(&f.group, &x).unwrap();
        prop_assert_eq!(f.group.order() % o.len(), 0);
        let dominant: Vec<_> = o.iter().filter(|p| is_dominant(p, &f.delta)).collect();
        prop_assert_eq!(dominant.len(), 1);
        let (top, w) = dominant_representative(&f.group, &f.delta, &x).unwrap();
        prop_assert_eq!(&top, dominant[0]);
        prop_assert_eq!(w.apply(&x), top);
    }

    #[test]
    fn seeded_simple_system_respects_the_seed(k in fixture_strategy(), coords in prop::collection::vec(-3i64..=3, 3)) {
        let f = fixture(ALL[k].0, ALL[k].1);
        let y = lv(&coords[..f.datum.rank()]);
        let delta = find_simple_system(&f.datum, Some(&y.to_rational())).unwrap();
        for r in f.datum.roots() {
            let s = r.dot(&y);
            if s > 0 {
                prop_assert!(delta.positive_roots().contains(r));
            } else if s < 0 {
                prop_assert!(!delta.positive_roots().contains(r));
            }
        }
        prop_assert_eq!(generate(&f.datum, &delta).unwrap().order(), f.group.order());
    }

    #[test]
    fn roots_read_off_theorem_edges(k in 0..7usize, l in prop::collection::vec(0i64..=2, 2)) {
        let f = fixture(ALL[k].0, ALL[k].1);
        let lambda = lv(&l[..f.datum.rank()]);
        prop_assume!(is_dominant(&lambda, &f.delta));
        let wts = weight_set(&f.datum, &f.delta, &lambda).unwrap();
        let p = build_polytope(&f.datum, &f.delta, &f.group, &lambda).unwrap();
        for x0 in &p.vertices {
            for (alpha, e) in edge_roots(&f.datum, &f.delta, &f.group, x0).unwrap() {
                prop_assert_eq!(root_from_edge(x0, &e, &wts).unwrap(), alpha.clone());
                // the α-string fills the weights on the edge
                let c = x0.dot(f.datum.coroot_of(&alpha).unwrap());
                let on_edge: BTreeSet<_> = lattice_points_on_segment(&e.a, &e.b).into_iter().filter(|u| wts.contains(u)).collect();
                let string: BTreeSet<_> = (0..=c).map(|t| x0.add_scaled(-t, &alpha)).collect();
                prop_assert_eq!(on_edge, string);
            }
        }
    }

    #[test]
    fn random_unimodular_round_trip(k in 0..7usize, seed in any::<u64>()) {
        let (label, kind) = SEMISIMPLE[k];
        let f = fixture(label, kind);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = random_unimodular(&mut rng, f.datum.rank(), 2);
        let image = f.datum.image_under(&m).unwrap();
        let mp = MatchedPresentation::standard(&f.datum, &m).unwrap();
        let r = assemble_isomorphism(&image, &f.datum, &mp);
        prop_assert!(r.isomorphism_ok, "{:?}", r.failures);
        let expected: BTreeSet<_> = f.datum.roots().iter().map(|a| m.apply(a)).collect();
        prop_assert_eq!(r.recovered_roots.into_iter().collect::<BTreeSet<_>>(), expected);
    }
}

#[test]
fn gl_variants_round_trip() {
    for label in ["GL2", "GL3"] {
        let f = fixture(label, LatticeKind::GlVariant);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..3 {
            let m = random_unimodular(&mut rng, f.datum.rank(), 1);
            let image = f.datum.image_under(&m).unwrap();
            let mp = MatchedPresentation::standard(&f.datum, &m).unwrap();
            let r = assemble_isomorphism(&image, &f.datum, &mp);
            assert!(r.isomorphism_ok, "{label}: {:?}", r.failures);
        }
    }
}
