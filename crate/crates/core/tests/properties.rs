use proptest::prelude::*;

use semilab_core::engine::{direct_product, green_definitional, green_scc, Budget, Green};
use semilab_core::identities::{eval, parse_term, PStructure, Structure};
use semilab_core::munn::{fis_a_triple, fis_equal, fis_multiply, is_fis_idempotent, fold, fold_shuffled, linear_automaton, munn_tree, FisTriple};
use semilab_core::report::same_partition;
use semilab_core::vmaps::{phi_pow, psi_pow, v_intersect, VMap, VSet};
use semilab_core::words::{invert_word, reduce, SignedLetter, Word};
use semilab_core::zoo::{b2, bicyclic_mult, monogenic_monoid, p_mult, transformation_semigroup, Bicyclic};

fn word(max_letters: u32, max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec((0..max_letters, any::<bool>()), 1..=max_len).prop_map(|v| {
        Word::from_letters(v.into_iter().map(|(l, inv)| if inv { SignedLetter::neg(l) } else { SignedLetter::pos(l) }))
    })
}

fn vmap() -> impl Strategy<Value = VMap> {
    prop::collection::vec((any::<bool>(), -3i64..=3), 1..=4).prop_map(|fs| {
        fs.into_iter()
            .map(|(is_phi, n)| if is_phi { phi_pow(n) } else { psi_pow(n) })
            .reduce(|a, b| a.compose(&b))
            .unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn green_methods_agree_on_transformation_closures(maps in prop::collection::vec(prop::collection::vec(0u8..3, 3), 1..=2)) {
        let fs = transformation_semigroup(3, &maps, Budget::default()).unwrap();
        let (s, d) = (green_scc(&fs), green_definitional(&fs));
        for g in Green::ALL {
            prop_assert!(same_partition(s.partition(g), d.partition(g)), "{g}");
        }
    }

    #[test]
    fn munn_tree_is_a_word_invariant(u in word(2, 10)) {
        prop_assert!(fis_equal(&u, &u.concat(&invert_word(&u)).concat(&u)).unwrap());
        prop_assert_eq!(is_fis_idempotent(&u).unwrap(), reduce(&u).is_empty());
        prop_assert_eq!(fold_shuffled(&linear_automaton(&u), 3), fold(&linear_automaton(&u)));
        let uu = u.concat(&invert_word(&u));
        prop_assert!(fis_equal(&uu, &uu.concat(&uu)).unwrap());
    }

    #[test]
    fn tree_product_is_concatenation(u in word(3, 8), v in word(3, 8)) {
        let prod = fis_multiply(&munn_tree(&u).unwrap(), &munn_tree(&v).unwrap());
        prop_assert_eq!(prod.canonical(), munn_tree(&u.concat(&v)).unwrap().canonical());
    }

    #[test]
    fn triples_follow_the_word(u in word(1, 10), v in word(1, 10)) {
        let (tu, tv) = (fis_a_triple(&u).unwrap(), fis_a_triple(&v).unwrap());
        prop_assert_eq!(tu.multiply(&tv), fis_a_triple(&u.concat(&v)).unwrap());
        prop_assert_eq!(tu.inverse(), fis_a_triple(&invert_word(&u)).unwrap());
        prop_assert_eq!(fis_a_triple(&tu.word(0)).unwrap(), tu);
    }

    #[test]
    fn vmap_composition_is_associative(f in vmap(), g in vmap(), h in vmap()) {
        prop_assert_eq!(f.compose(&g).compose(&h), f.compose(&g.compose(&h)));
        prop_assert_eq!(f.compose(&f.invert()).compose(&f), f);
    }

    #[test]
    fn vmap_composition_is_pointwise(f in vmap(), g in vmap(), x in -20i64..=20, y in 0i64..=20) {
        prop_assert_eq!(f.compose(&g).apply((x, y)), f.apply((x, y)).and_then(|p| g.apply(p)));
    }

    #[test]
    fn v_intersection_is_pointwise(r1 in -6i64..6, s1 in 0i64..6, r2 in -6i64..6, s2 in 0i64..6, x in -20i64..=20, y in 0i64..=20) {
        let (a, b) = (VSet::v(r1, s1), VSet::v(r2, s2));
        prop_assert_eq!(v_intersect(a, b).contains((x, y)), a.contains((x, y)) && b.contains((x, y)));
        prop_assert_eq!(v_intersect(a, b), v_intersect(b, a));
    }

    #[test]
    fn bicyclic_is_associative(m in prop::array::uniform6(0u64..20)) {
        let [a, b, c] = [Bicyclic::new(m[0], m[1]), Bicyclic::new(m[2], m[3]), Bicyclic::new(m[4], m[5])];
        prop_assert_eq!(bicyclic_mult(bicyclic_mult(a, b), c), bicyclic_mult(a, bicyclic_mult(b, c)));
    }

    #[test]
    fn p_is_associative(a in -50i64..50, b in -50i64..50, c in -50i64..50) {
        prop_assert_eq!(p_mult(p_mult(a, b), c), p_mult(a, p_mult(b, c)));
    }

    #[test]
    fn fis_triples_are_associative(t in prop::array::uniform9(0i64..4)) {
        let mk = |r: i64, s: i64, t: i64| FisTriple::new(r, s + 1, (t % (r + s + 2)) - r).unwrap();
        let (x, y, z) = (mk(t[0], t[1], t[2]), mk(t[3], t[4], t[5]), mk(t[6], t[7], t[8]));
        prop_assert_eq!(x.multiply(&y).multiply(&z), x.multiply(&y.multiply(&z)));
    }
}

#[test]
fn evaluation_commutes_with_projection() {
    let (a, b) = (b2(), monogenic_monoid(2).unwrap().with_unary(Some(vec![0, 1, 2])).unwrap());
    let prod = direct_product(&[a.clone(), b.clone()]).unwrap();
    let project = |x: usize| x / b.len();
    let terms = ["x(yz)", "xx'yy'", "(xy)'x", "x^3y'", "(xyx')(xyx')'"];
    for text in terms {
        let t = parse_term(text).unwrap();
        for x in 0..prod.len() {
            for y in (0..prod.len()).step_by(3) {
                let z = (x * 7 + y) % prod.len();
                let asg = |v: &str| match v {
                    "x" => Some(x),
                    "y" => Some(y),
                    _ => Some(z),
                };
                let down = |v: &str| asg(v).map(project);
                let up = eval(&prod, &t, &asg).unwrap();
                assert_eq!(project(up), eval(&a, &t, &down).unwrap(), "{text} at x={x} y={y} z={z}");
            }
        }
    }
}

#[test]
fn p_structure_reports_its_unary() {
    assert_eq!(PStructure.unary(4), Some(-4));
    assert_eq!(PStructure.unary(3), Some(3));
    assert!(PStructure.zero().is_none());
}
