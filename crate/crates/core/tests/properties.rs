use num_bigint::BigUint;
use proptest::prelude::*;

use hyperclique::binomial::binom;
use hyperclique::bits::{full_mask, labels, layer};
use hyperclique::bounds::{clique_bound, edge_bound, vertex_bound};
use hyperclique::oracle::{canonical_form, exhaustive_search_with, Constraint, DegreeLimit, SearchSpec};
use hyperclique::uniqueness::{is_clique_jumping, is_jumping};
use hyperclique::{
    colex_compare, colex_segment, k_colex, k_via_complement, retlex_compare, retlex_segment, shadow_colex, Cascade,
    Execution, SetFamily, VertexSet,
};

/// A random `s`-graph on `n` vertices, with `n <= max_n`.
fn family(max_n: u32, max_s: u32) -> impl Strategy<Value = SetFamily> {
    (2..=max_s)
        .prop_flat_map(move |s| (Just(s), s + 1..=max_n))
        .prop_flat_map(|(s, n)| {
            let all: Vec<u64> = layer(n, s).collect();
            let len = all.len();
            (Just((n, s)), proptest::sample::subsequence(all, 0..=len))
        })
        .prop_map(|((n, s), edges)| SetFamily::new(n, s, edges).unwrap())
}

fn vs(mask: u64) -> VertexSet {
    VertexSet::from_labels(&labels(mask)).unwrap()
}

fn big(v: usize) -> BigUint {
    BigUint::from(v)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn cascade_round_trip(m in 0u64..u64::MAX / 2, s in 1u32..=12) {
        let c = Cascade::of(&BigUint::from(m), s).unwrap();
        prop_assert!(c.is_strict());
        prop_assert_eq!(c.value(), BigUint::from(m));
        prop_assert!(c.satisfies_uniqueness_chain(&BigUint::from(m)));
    }

    #[test]
    fn kruskal_katona_on_random_families(h in family(8, 4)) {
        let (n, s) = (h.ground_n(), h.arity());
        let m = big(h.len());
        for q in 1..s {
            let shadow = h.shadow(q).unwrap().len();
            prop_assert!(big(shadow) >= shadow_colex(&m, s, q).unwrap(), "q={}", q);
        }
        for t in s + 1..=n {
            let k = h.clique_count(t).unwrap();
            prop_assert!(big(k) <= k_colex(&m, s, t).unwrap(), "t={}", t);
        }
    }

    #[test]
    fn double_counting(h in family(8, 4)) {
        let (n, s) = (h.ground_n(), h.arity());
        for i in 1..s {
            let total: usize = h.degree_counts(i).values().sum();
            prop_assert_eq!(big(total), big(h.len()) * binom(s as u64, i as u64));
        }
        for t in s + 1..=n {
            let per_edge: usize = h.edges().iter().map(|&e| h.cliques_containing(e, t).unwrap()).sum();
            let k = h.clique_count(t).unwrap();
            prop_assert_eq!(big(per_edge), big(k) * binom(t as u64, s as u64));
        }
    }

    #[test]
    fn cliques_through_a_set_embed_in_its_neighborhood(h in family(8, 4)) {
        let (n, s) = (h.ground_n(), h.arity());
        for i in 1..s {
            for set in layer(n, i) {
                let nb = h.neighborhood(vs(set)).unwrap();
                prop_assert_eq!(nb.family.len(), h.degree(vs(set)));
                for t in s + 1..=n {
                    let through = h.cliques(t).unwrap().edges().iter().filter(|&&c| c & set == set).count();
                    let inside = if nb.family.ground_n() < t - i { 0 } else { nb.family.clique_count(t - i).unwrap() };
                    prop_assert!(through <= inside, "I={:b} t={}: {} > {}", set, t, through, inside);
                }
            }
        }
    }

    #[test]
    fn cliques_are_the_layer_minus_the_upshadow_of_non_edges(h in family(8, 4)) {
        let (n, s) = (h.ground_n(), h.arity());
        let missing = SetFamily::complete(n, s).unwrap().difference(&h);
        for t in s + 1..=n {
            let blocked = missing.upshadow(t).unwrap();
            let expect = SetFamily::complete(n, t).unwrap().difference(&blocked);
            prop_assert_eq!(h.cliques(t).unwrap(), expect);
        }
    }

    #[test]
    fn colex_and_retlex_are_dual_under_complement(a in 0u64..1 << 12, b in 0u64..1 << 12) {
        let ground = full_mask(12);
        let (x, y, cx, cy) = (vs(a), vs(b), vs(ground & !a), vs(ground & !b));
        prop_assert_eq!(colex_compare(x, y), retlex_compare(cx, cy));
        prop_assert_eq!(colex_compare(x, y), colex_compare(y, x).reverse());
    }

    #[test]
    fn complement_of_a_colex_segment_is_a_retlex_segment(n in 3u32..=10, s_frac in 0.0f64..1.0, m_frac in 0.0f64..=1.0) {
        let s = 1 + ((n - 1) as f64 * s_frac) as u32;
        let s = s.min(n - 1);
        let total = binom(n as u64, s as u64);
        let m = (m_frac * num_traits::ToPrimitive::to_f64(&total).unwrap()) as u64;
        let colex = colex_segment(m, s).unwrap().with_ground(n).unwrap();
        let retlex = retlex_segment(n, m, n - s).unwrap();
        prop_assert_eq!(colex.complement_family(), retlex);
        for t in s + 1..=n {
            prop_assert_eq!(k_via_complement(&BigUint::from(m), s, t, n).unwrap(), k_colex(&BigUint::from(m), s, t).unwrap());
        }
    }

    #[test]
    fn clique_jumping_matches_jumping_of_the_complement(n in 4u32..=12, s_frac in 0.0f64..1.0, t_frac in 0.0f64..1.0, m_frac in 0.0f64..1.0) {
        // m is (s,t)-clique-jumping iff binom(n,s)-m-1 is (n-s, n-t)-jumping.
        let s = 1 + ((n - 2) as f64 * s_frac) as u32;
        let t = s + 1 + ((n - 2 - s) as f64 * t_frac) as u32;
        prop_assume!(s < t && t < n);
        let total = num_traits::ToPrimitive::to_u64(&binom(n as u64, s as u64)).unwrap();
        let m = 1 + ((total - 2) as f64 * m_frac) as u64;
        let left = is_clique_jumping(&BigUint::from(m), s, t, n).unwrap().verdict;
        prop_assume!(n - s >= 2);
        let right = is_jumping(&BigUint::from(total - m - 1), n - s, n - t).unwrap().verdict;
        prop_assert_eq!(left, right, "m={} s={} t={} n={}", m, s, t, n);
    }

    #[test]
    fn bounds_hold_on_random_families(h in family(8, 4)) {
        let (n, s) = (h.ground_n(), h.arity());
        let m = big(h.len());
        for i in 1..s {
            let delta = big(h.max_degree(i).unwrap());
            for t in s + 1..=n {
                let k = big(h.clique_count(t).unwrap());
                prop_assert!(vertex_bound(n, i, s, t, &delta).unwrap().admits(&k));
                prop_assert!(edge_bound(&m, i, s, t, &delta).unwrap().admits(&k));
                for u in s + 1..t {
                    let p = big(h.clique_count(u).unwrap());
                    prop_assert!(clique_bound(&p, i, s, u, t, &delta).unwrap().admits(&k));
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn canonical_form_ignores_labels(h in family(6, 3), perms in proptest::collection::vec(Just((1..=6u32).collect::<Vec<_>>()).prop_shuffle(), 100)) {
        let code = canonical_form(&h).unwrap();
        let n = h.ground_n() as usize;
        for p in perms {
            // Keep the permutation inside [n].
            let perm: Vec<u32> = p.into_iter().filter(|&v| v as usize <= n).collect();
            prop_assert_eq!(canonical_form(&h.relabel(&perm).unwrap()).unwrap(), code.clone());
        }
    }

    #[test]
    fn search_is_deterministic_across_execution_modes(
        n in 4u32..=6, s in 2u32..=3, extra in 1u32..=2, m in 1u64..=12, delta in 1u64..=6, i in 1u32..=2,
    ) {
        prop_assume!(s < n && i < s);
        let t = (s + extra).min(n);
        let total = hyperclique::setfamily::layer_size(n, s);
        prop_assume!(total <= 20);
        let spec = SearchSpec {
            n, s, t,
            constraint: Constraint::Edges { m: m.min(total) },
            degree: Some(DegreeLimit { i, delta }),
        };
        let seq = exhaustive_search_with(&spec, Execution::Sequential).unwrap();
        let par = exhaustive_search_with(&spec, Execution::Parallel).unwrap();
        prop_assert_eq!(seq, par);
    }
}
