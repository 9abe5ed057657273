mod cases;

use cases::braid::closure;
use nquandle::catalog::{Catalog, Verdict};
use nquandle::coset_enum::enumerate;
use nquandle::diagram::parse_diagram;
use nquandle::presentation::fundamental_group;
use nquandle::quandle_build::{build_n_quandle_with, quandles_isomorphic, verify_axioms};
use nquandle::{Alphabet, EnumerationLimit, FreeWord, GroupPresentation, Letter, NLabeling, Strategy};
use proptest::prelude::*;
use proptest::strategy::Strategy as _;

fn n(v: &[u32]) -> NLabeling {
    NLabeling::new(v.to_vec()).unwrap()
}

/// Rank over ℚ of the exponent-sum matrix, by fraction-free elimination.
fn exponent_rank(g: &GroupPresentation) -> usize {
    let cols = g.generators.len();
    let mut rows: Vec<Vec<i128>> = g
        .relators
        .iter()
        .map(|r| {
            let mut row = vec![0i128; cols];
            for l in r.letters() {
                row[l.gen as usize] += l.sign() as i128;
            }
            row
        })
        .collect();
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&i| rows[i][c] != 0) else { continue };
        rows.swap(rank, p);
        for i in 0..rows.len() {
            if i != rank && rows[i][c] != 0 {
                let (a, b) = (rows[rank][c], rows[i][c]);
                let pivot = rows[rank].clone();
                for (x, y) in rows[i].iter_mut().zip(&pivot) {
                    *x = *x * a - *y * b;
                }
                let g = rows[i].iter().fold(0i128, |g, &x| num_gcd(g, x.abs()));
                if g > 1 {
                    rows[i].iter_mut().for_each(|x| *x /= g);
                }
            }
        }
        rank += 1;
    }
    rank
}

fn num_gcd(a: i128, b: i128) -> i128 {
    if b == 0 { a } else { num_gcd(b, a % b) }
}

#[test]
fn braid_closures_of_known_links() {
    let limit = EnumerationLimit::default();
    let trefoil = parse_diagram(&closure(2, &[1, 1, 1])).unwrap();
    let built = build_n_quandle_with(&trefoil, &n(&[2]), limit, Strategy::Hlt).unwrap();
    assert_eq!((built.group_order, built.quandle.len()), (6, 3));
    let hopf = parse_diagram(&closure(2, &[-1, -1])).unwrap();
    let built = build_n_quandle_with(&hopf, &n(&[2, 3]), limit, Strategy::Hlt).unwrap();
    assert_eq!(built.group_order, 6);
    let t25 = parse_diagram(&closure(2, &[1; 5])).unwrap();
    let built = build_n_quandle_with(&t25, &n(&[2]), limit, Strategy::Hlt).unwrap();
    assert_eq!((built.group_order, built.quandle.len()), (10, 5));
}

/// Torus-link rows of the catalog against direct enumeration: catalog
/// `Finite` builds, catalog `Infinite` exhausts a generous cap.
#[test]
fn torus_link_rows_against_enumeration() {
    let cat = Catalog::builtin();
    let none = Default::default();
    let families: [(&str, usize, Vec<i32>); 5] = [
        ("T_2,4", 2, vec![1; 4]),
        ("T_2,6", 2, vec![1; 6]),
        ("T_2,8", 2, vec![1; 8]),
        ("T_3,3", 3, [1, 2].repeat(3)),
        ("T_2,10", 2, vec![1; 10]),
    ];
    let labelings: [&[u32]; 11] =
        [&[2, 3], &[3, 2], &[2, 4], &[2, 5], &[3, 4], &[3, 5], &[2, 6], &[4, 5], &[2, 3, 4], &[2, 3, 6], &[5, 2, 2]];
    for (family, width, word) in &families {
        let d = parse_diagram(&closure(*width, word)).unwrap();
        for labels in labelings.iter().filter(|l| l.len() == d.strands.len()) {
            let labels = n(labels);
            let verdict = cat.lookup(family, &none, &labels).unwrap().verdict;
            let built = build_n_quandle_with(&d, &labels, EnumerationLimit::cosets(200_000), Strategy::Hlt);
            match verdict {
                Verdict::Finite => {
                    let b = built.unwrap_or_else(|e| panic!("{family} {labels:?}: {e}"));
                    assert!(verify_axioms(&b.quandle, &labels).is_empty());
                }
                Verdict::Infinite => assert!(built.unwrap_err().is_limit(), "{family} {labels:?}"),
                other => panic!("{family} {labels:?}: {other}"),
            }
        }
    }
}

fn braid() -> impl proptest::strategy::Strategy<Value = (usize, Vec<i32>)> {
    (2usize..=3).prop_flat_map(|w| {
        let gen = (1..w as i32).prop_flat_map(|i| prop_oneof![Just(i), Just(-i)]);
        (Just(w), prop::collection::vec(gen, 0..7))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn link_abelianization_rank_is_component_count((w, word) in braid()) {
        let d = parse_diagram(&closure(w, &word)).unwrap();
        let g = fundamental_group(&d).unwrap();
        prop_assert_eq!(g.generators.len() - exponent_rank(&g), d.strands.len());
    }

    #[test]
    fn random_links_build_valid_quandles((w, word) in braid(), labels in prop::collection::vec(2u32..=4, 3)) {
        let d = parse_diagram(&closure(w, &word)).unwrap();
        let labels = n(&labels[..d.strands.len()]);
        let limit = EnumerationLimit::cosets(20_000);
        match build_n_quandle_with(&d, &labels, limit, Strategy::Hlt) {
            Ok(b) => {
                let report = verify_axioms(&b.quandle, &labels);
                prop_assert!(report.is_empty(), "{}", report);
                for i in 0..d.strands.len() {
                    prop_assert_eq!(b.group_order, b.indices[i] * b.peripheral_orders[i]);
                }
                let f = build_n_quandle_with(&d, &labels, limit, Strategy::Felsch).unwrap();
                prop_assert_eq!(f.group_order, b.group_order);
                if b.quandle.len() <= 200 {
                    prop_assert!(quandles_isomorphic(&b.quandle, &f.quandle).unwrap());
                }
            }
            Err(e) => prop_assert!(e.is_limit(), "{}", e),
        }
    }

    #[test]
    fn hlt_and_felsch_agree(rels in prop::collection::vec(prop::collection::vec((0u32..2, any::<bool>()), 1..9), 1..4)) {
        let mut relators: Vec<FreeWord> = rels
            .iter()
            .map(|r| FreeWord::reduce(r.iter().map(|&(g, s)| Letter::new(g, if s { 1 } else { -1 }))))
            .collect();
        relators.push(FreeWord::gen(0).power(4));
        relators.push(FreeWord::gen(1).power(3));
        let g = GroupPresentation { generators: Alphabet::new(["a", "b"]).unwrap(), relators };
        let limit = EnumerationLimit::cosets(5_000);
        let h = enumerate(&g, &[], limit, Strategy::Hlt);
        let f = enumerate(&g, &[], limit, Strategy::Felsch);
        match (h, f) {
            (Ok(h), Ok(f)) => {
                prop_assert_eq!(h.n_cosets(), f.n_cosets());
                prop_assert!(h.check(&g.relators).is_ok());
            }
            (Err(e), _) | (_, Err(e)) => prop_assert!(e.is_limit()),
        }
    }
}
