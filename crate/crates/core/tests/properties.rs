mod common;

use clockblock::ca::{CellularAutomaton, Symbol, TorusConfig};
use clockblock::clock::{mod_reduction, verify_equivariance, ClockAutomaton};
use clockblock::cycles::cycle_report_table;
use clockblock::obstruction::{
    g_of, is_prime, prime_witness, refined_obstruction, state_space_size, torus_period_gcd,
    DEFAULT_CAP,
};
use clockblock::rules::{self, clock, eca, moore};
use common::*;
use proptest::prelude::*;

/// A random automaton with alphabet 2..=3, dimension 1..=2 and up to three
/// offsets from the radius-1 Moore box, plus a configuration on a small torus.
fn automaton_and_config() -> impl Strategy<Value = (CellularAutomaton, TorusConfig)> {
    (2u32..=3, 1usize..=2)
        .prop_flat_map(|(a, d)| {
            let pool = moore(d, 1);
            let n = pool.len();
            (
                Just(a),
                Just(d),
                proptest::sample::subsequence(pool, 1..=3.min(n)),
                proptest::collection::vec(1usize..=3, d),
            )
        })
        .prop_flat_map(|(a, d, nb, shape)| {
            let entries = (a as usize).pow(nb.len() as u32);
            let cells: usize = shape.iter().product();
            (
                proptest::collection::vec(0..a as Symbol, entries),
                proptest::collection::vec(0..a as Symbol, cells),
                Just((a, d, nb, shape)),
            )
        })
        .prop_map(|(table, cells, (a, d, nb, shape))| {
            (
                CellularAutomaton::new(a, d, nb, table).unwrap(),
                TorusConfig::new(shape, cells).unwrap(),
            )
        })
}

proptest! {
    #[test]
    fn shift_commutes_with_step((ca, x) in automaton_and_config()) {
        for axis in 0..ca.dimension() {
            let lhs = ca.apply_torus(&x.shift(axis).unwrap()).unwrap();
            let rhs = ca.apply_torus(&x).unwrap().shift(axis).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn constants_map_to_phi((ca, x) in automaton_and_config()) {
        let phi = ca.phi_map();
        for a in 0..ca.alphabet_size() as Symbol {
            let k = ca.embed_constant(a, x.shape()).unwrap();
            prop_assert_eq!(ca.apply_torus(&k).unwrap(), ca.embed_constant(phi.apply(a), x.shape()).unwrap());
        }
    }

    #[test]
    fn step_is_deterministic((ca, x) in automaton_and_config()) {
        prop_assert_eq!(ca.apply_torus(&x).unwrap(), ca.apply_torus(&x).unwrap());
    }

    #[test]
    fn torus_gcd_divides_g_f((ca, x) in automaton_and_config()) {
        let g_f = g_of(&ca).g;
        let t = torus_period_gcd(&ca, x.shape(), 1 << 16).unwrap();
        prop_assert_eq!(g_f % t.report.g, 0);
        prop_assert!(t.report.periodic_state_count <= t.report.state_count);
    }

    #[test]
    fn rule_table_text_round_trips((ca, _x) in automaton_and_config()) {
        let text = rules::to_rule_table_text(&ca);
        prop_assert_eq!(rules::parse_rule_table(&text, "mem").unwrap(), ca);
    }

    #[test]
    fn reordered_neighborhood_reads_same_cells(
        (ca, x) in automaton_and_config(),
        seed in any::<u64>(),
    ) {
        // shuffle offsets, permute the table to match, and canonicalize again
        let s = ca.neighborhood().len();
        let mut order: Vec<usize> = (0..s).collect();
        let mut r = rng(seed);
        for i in (1..s).rev() {
            order.swap(i, rand::Rng::gen_range(&mut r, 0..=i));
        }
        let shuffled: Vec<_> = order.iter().map(|&j| ca.neighborhood()[j].clone()).collect();
        let mut canon = vec![0; s];
        let table = (0..ca.rule_table().len()).map(|idx| {
            let mut p = vec![0; s];
            ca.pattern_at(idx, &mut p);
            for (pos, &j) in order.iter().enumerate() {
                canon[j] = p[pos];
            }
            ca.local(&canon)
        }).collect();
        let again = CellularAutomaton::with_neighborhood_order(ca.alphabet_size(), ca.dimension(), shuffled, table).unwrap();
        prop_assert_eq!(&again, &ca);
        prop_assert_eq!(again.apply_torus(&x).unwrap(), ca.apply_torus(&x).unwrap());
    }

    #[test]
    fn cycle_report_matches_oracle(succ in (1usize..300).prop_flat_map(|n| proptest::collection::vec(0..n, n))) {
        let report = cycle_report_table(&succ).unwrap();
        let naive = naive_cycle_lengths(&succ);
        prop_assert_eq!(report.lengths().collect::<Vec<_>>(), naive.clone());
        prop_assert_eq!(report.g, naive_gcd(&naive));
        prop_assert_eq!(report.periodic_state_count, naive.iter().sum::<u64>());
    }

    #[test]
    fn refinement_is_monotone(rule in any::<u8>(), q in 2u64..8, extra in 1usize..=5) {
        let ca = eca(rule);
        let base = refined_obstruction(&ca, q, &[vec![1], vec![2]], DEFAULT_CAP).unwrap();
        let more = refined_obstruction(&ca, q, &[vec![1], vec![2], vec![extra]], DEFAULT_CAP).unwrap();
        prop_assert!(!base.is_excluded() || more.is_excluded());
        prop_assert_eq!(base.combined_g % more.combined_g, 0);
    }

    #[test]
    fn clock_iterate_is_repeated_step(q in 2u32..=9, cells in proptest::collection::vec(0u16..9, 1..6)) {
        let c = ClockAutomaton::new(q, 1).unwrap();
        let x = TorusConfig::new(vec![cells.len()], cells.iter().map(|&v| v % q as u16).collect()).unwrap();
        let mut y = x.clone();
        for n in 0..=3 * q as u64 {
            prop_assert_eq!(c.iterate(&x, n).unwrap(), y.clone());
            y = c.step(&y).unwrap();
        }
    }

    #[test]
    fn sampled_exact_period(q in 7u32..=40, k in 1usize..=3, seed in any::<u64>()) {
        let c = ClockAutomaton::new(q, k).unwrap();
        let mut r = rng(seed);
        let shape: Vec<usize> = (0..k).map(|_| rand::Rng::gen_range(&mut r, 1..=4)).collect();
        let n: usize = shape.iter().product();
        let cells = (0..n).map(|_| rand::Rng::gen_range(&mut r, 0..q) as Symbol).collect();
        let x = TorusConfig::new(shape, cells).unwrap();
        prop_assert_eq!(c.exact_period(&x).unwrap(), q as u64);
    }
}

#[test]
fn eca_builder_matches_bit_oracle() {
    for rule in 0..=255u8 {
        let ca = eca(rule);
        for p in 0..8u8 {
            let (l, c, r) = (p >> 2 & 1, p >> 1 & 1, p & 1);
            assert_eq!(ca.local(&[l as Symbol, c as Symbol, r as Symbol]) as u8, eca_bit(rule, l, c, r));
        }
    }
}

#[test]
fn eca_torus_map_matches_ring_oracle() {
    for rule in 0..=255u8 {
        let ca = eca(rule);
        for n in 1..=5 {
            let succ = eca_ring_successors(rule, n);
            for (s, &t) in succ.iter().enumerate() {
                let x = TorusConfig::decode(s as u128, 2, &[n]).unwrap();
                assert_eq!(ca.apply_torus(&x).unwrap().encode(2), t as u128);
            }
        }
    }
}

#[test]
fn clock_builder_phi_is_rotation() {
    for q in 2..=64u32 {
        let phi = clock(q, 1).unwrap().phi_map();
        for a in 0..q {
            assert_eq!(phi.apply(a as Symbol) as u32, (a + 1) % q);
        }
    }
}

#[test]
fn clock_step_agrees_with_rule_table() {
    for q in 2..=5u32 {
        for k in 1..=2 {
            let c = ClockAutomaton::new(q, k).unwrap();
            let ca = c.as_automaton();
            let shape = vec![2; k];
            let states = state_space_size(q, &shape).unwrap();
            for code in 0..states.min(1 << 12) {
                let x = TorusConfig::decode(code, q, &shape).unwrap();
                assert_eq!(c.step(&x).unwrap(), ca.apply_torus(&x).unwrap());
            }
        }
    }
}

#[test]
fn clock_torus_cycles_all_have_length_q() {
    for q in 2..=8u32 {
        for shape in [vec![1], vec![2], vec![3], vec![4]] {
            let Ok(t) = torus_period_gcd(&clock(q, 1).unwrap(), &shape, 1 << 16) else { continue };
            assert!(t.report.lengths().all(|l| l == q as u64), "q={q} {shape:?}");
        }
        let t = torus_period_gcd(&clock(q, 2).unwrap(), &[1, 2], 1 << 16).unwrap();
        assert_eq!(t.report.cycle_lengths.len(), 1);
        assert_eq!(t.report.cycle_lengths[0].length, q as u64);
    }
}

#[test]
fn clock_verdicts_match_divisibility() {
    for m in 2..=16u32 {
        let ca = clock(m, 1).unwrap();
        for q in 2..=20u64 {
            let v = refined_obstruction(&ca, q, &[vec![1], vec![2], vec![3]], 1 << 16).unwrap();
            assert_eq!(v.is_excluded(), m as u64 % q != 0, "m={m} q={q}");
        }
    }
}

#[test]
fn fixed_point_criterion_exhaustive() {
    for q in 2..=8u32 {
        let c = ClockAutomaton::new(q, 1).unwrap();
        for n in 1..=4 * q as u64 {
            let exhaustive = (0..q).any(|a| {
                let x = TorusConfig::new(vec![1], vec![a as Symbol]).unwrap();
                c.iterate(&x, n).unwrap() == x
            });
            assert_eq!(c.fixed_point_exists(n), exhaustive);
        }
    }
}

#[test]
fn reductions_sound_up_to_64() {
    for m in 2..=64u32 {
        for q in 2..=m {
            match mod_reduction(m, q) {
                Ok(w) => {
                    assert_eq!(m % q, 0);
                    assert!(w.is_surjective());
                    assert!(w.symbol_counterexamples().is_empty());
                }
                Err(_) => assert_ne!(m % q, 0),
            }
        }
    }
    let r = verify_equivariance(&mod_reduction(64, 8).unwrap(), &[3], 1 << 16).unwrap();
    assert!(r.passed);
}

#[test]
fn prime_witness_over_corpus() {
    let mut corpus: Vec<CellularAutomaton> = (0..=255).map(eca).collect();
    corpus.push(rules::life());
    corpus.extend((2..=30).map(|q| clock(q, 1).unwrap()));
    for ca in &corpus {
        let p = prime_witness(ca);
        assert!(is_prime(p));
        assert_ne!(g_of(ca).g % p, 0);
    }
    assert_eq!(prime_witness(&clock(30, 1).unwrap()), 7);
}
