use std::collections::BTreeSet;

use proptest::prelude::*;
use semitoric::rootdata::{RootDatum, Series, Weight, WeylGroup};
use semitoric::zcrystal::{weight_multiplicities_oracle, Direction, Extension, LambdaCrystal, WordContext};

/// A small type, one of its reduced words for `w0`, and a dominant weight.
#[derive(Debug, Clone)]
struct Case {
    series: Series,
    rank: usize,
    word_pick: usize,
    lambda: Vec<i64>,
}

fn case() -> impl Strategy<Value = Case> {
    prop_oneof![
        Just((Series::A, 2, 3i64)),
        Just((Series::A, 3, 2)),
        Just((Series::B, 2, 2)),
        Just((Series::C, 3, 1)),
        Just((Series::G, 2, 1)),
    ]
    .prop_flat_map(|(series, rank, top)| {
        (any::<usize>(), prop::collection::vec(0..=top, rank))
            .prop_map(move |(word_pick, lambda)| Case { series, rank, word_pick, lambda })
    })
}

fn build(c: &Case, ext: Extension) -> (LambdaCrystal, WeylGroup) {
    let d = RootDatum::new(c.series, c.rank).unwrap();
    let g = WeylGroup::new(&d).unwrap();
    let words = g.reduced_words(g.longest());
    let word = &words[c.word_pick % words.len()];
    let ctx = WordContext::with_extension(&d, word, ext).unwrap();
    (LambdaCrystal::generate(&ctx, &Weight(c.lambda.clone())).unwrap(), g)
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 24, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn parametrizations_are_injective(c in case()) {
        let (cr, _) = build(&c, Extension::Cyclic);
        let phi: BTreeSet<Vec<i64>> = cr.all_phi().into_iter().collect();
        let psi: BTreeSet<Vec<i64>> = cr.all_psi().into_iter().collect();
        prop_assert_eq!(phi.len(), cr.len());
        prop_assert_eq!(psi.len(), cr.len());
    }

    #[test]
    fn crystal_axioms_along_edges(c in case()) {
        let (cr, _) = build(&c, Extension::Cyclic);
        let d = &cr.context.datum;
        for b in 0..cr.len() {
            for i in 1..=c.rank {
                prop_assert_eq!(cr.wt[b].0[i - 1], cr.phi[b][i - 1] - cr.eps[b][i - 1]);
                if let Some(t) = cr.f_tilde(b, i) {
                    prop_assert_eq!(&cr.wt[t], &cr.wt[b].sub(&d.simple_root(i)));
                    prop_assert_eq!(cr.eps[t][i - 1], cr.eps[b][i - 1] + 1);
                    prop_assert_eq!(cr.phi[t][i - 1], cr.phi[b][i - 1] - 1);
                    prop_assert_eq!(cr.e_tilde(t, i), Some(b));
                }
            }
        }
    }

    /// Every walk from the highest element, replayed on the zero sequence,
    /// lands on the stored element; so any two walks to `b` agree.
    #[test]
    fn lowering_paths_are_independent(c in case(), steps in prop::collection::vec(any::<usize>(), 1..40)) {
        let (cr, _) = build(&c, Extension::Cyclic);
        let ctx = &cr.context;
        let mut b = cr.highest();
        let mut z = ctx.zero();
        for s in steps {
            let moves: Vec<usize> = (1..=c.rank).filter(|&i| cr.f_tilde(b, i).is_some()).collect();
            if moves.is_empty() {
                break;
            }
            let i = moves[s % moves.len()];
            b = cr.f_tilde(b, i).unwrap();
            z = ctx.apply(&z, i, Direction::Lower).unwrap().unwrap();
            prop_assert_eq!(&cr.elements[b], &z);
        }
    }

    #[test]
    fn embedding_ignores_extension(c in case()) {
        let (a, _) = build(&c, Extension::Cyclic);
        let (b, _) = build(&c, Extension::ReverseCyclic);
        let edges = |cr: &LambdaCrystal| -> BTreeSet<(Vec<i64>, Vec<i64>, usize)> {
            (0..cr.len())
                .flat_map(|x| (1..=c.rank).filter_map(move |i| cr.f_tilde(x, i).map(|t| (x, t, i))))
                .map(|(x, t, i)| (cr.psi(x), cr.psi(t), i))
                .collect()
        };
        prop_assert_eq!(edges(&a), edges(&b));
    }

    #[test]
    fn character_matches_freudenthal(c in case()) {
        let (cr, _) = build(&c, Extension::Cyclic);
        let (oracle, dim) = weight_multiplicities_oracle(&cr.context.datum, &cr.lambda, 1 << 20).unwrap();
        prop_assert_eq!(dim as usize, cr.len());
        prop_assert_eq!(cr.character(), oracle);
    }

    #[test]
    fn demazure_monotone_and_word_independent(c in case(), v in any::<usize>(), w in any::<usize>()) {
        let (cr, g) = build(&c, Extension::Cyclic);
        let (v, w) = (v % g.len(), w % g.len());
        let dw = cr.demazure_subset(&g, w);
        for word in g.reduced_words(w) {
            prop_assert_eq!(&cr.demazure_word(&word).members, &dw.members);
        }
        if g.bruhat_leq(v, w) {
            prop_assert!(cr.demazure_subset(&g, v).is_subset(&dw));
            prop_assert!(cr.opposite_demazure_subset(&g, w).is_subset(&cr.opposite_demazure_subset(&g, v)));
        }
    }
}
