mod common;

use proptest::prelude::*;
use xorgame::bounds::{self, Constants, Interval, KRIVINE};
use xorgame::constructions;
use xorgame::exact::{self, ExactConfig};
use xorgame::protocol::{self, OneWayProtocol, ProtocolMixture, RectanglePartition};
use xorgame::XorGame;

const TOL: f64 = 1e-12;

fn game(max_n: usize) -> impl Strategy<Value = XorGame> {
    (1..=max_n, any::<u64>()).prop_map(|(n, seed)| common::random_game(n, seed))
}

fn config() -> ProptestConfig {
    ProptestConfig { cases: 48, ..ProptestConfig::default() }
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn json_round_trip(g in game(8)) {
        let back = XorGame::from_json(&g.to_json()).unwrap();
        prop_assert_eq!(back.signs(), g.signs());
        for x in 0..g.n() {
            for y in 0..g.n() {
                prop_assert!((back.prob(x, y) - g.prob(x, y)).abs() <= 1e-15);
            }
        }
        prop_assert!((g.pi_1_norm() - 1.0).abs() <= 1e-9);
    }

    #[test]
    fn flips_are_involutions(g in game(8), a in any::<usize>(), b in any::<usize>()) {
        let (x, y) = (a % g.n(), b % g.n());
        let f = g.flip_entry(x, y).unwrap();
        prop_assert_eq!(f.sign(x, y), -g.sign(x, y));
        prop_assert_eq!(f.prob_matrix(), g.prob_matrix());
        prop_assert_eq!(f.flip_entry(x, y).unwrap(), g.clone());
        let dw = (exact::classical_value(&f).unwrap().value - exact::classical_value(&g).unwrap().value).abs();
        prop_assert!(dw <= 2.0 * g.prob(x, y) + TOL);
    }

    #[test]
    fn values_are_monotone_in_bits(g in game(9)) {
        let w = exact::classical_value(&g).unwrap().value;
        let bits: Vec<u32> = (0..=4).collect();
        let one_way = exact::one_way_values_with(&g, &bits, &ExactConfig::default()).unwrap();
        prop_assert!((one_way[0].value - w).abs() <= TOL);
        let mut prev = w;
        for c in &one_way {
            prop_assert!(c.value >= prev - TOL);
            prop_assert!(c.value <= 1.0 + TOL);
            prev = c.value;
        }
        prop_assert!((one_way[4].value - 1.0).abs() <= TOL);
    }

    #[test]
    fn one_way_bounds_hold(g in game(10)) {
        let consts = Constants::default();
        let n = g.n();
        let w = exact::classical_value(&g).unwrap().value;
        for c in 0..=4 {
            let v = exact::one_way_value(&g, c).unwrap().value;
            prop_assert!(v <= bounds::grothendieck_one_way_upper(w, c, &consts) + TOL);
            prop_assert!(v >= bounds::one_way_floor(n, c, &consts) - TOL, "c {} v {}", c, v);
            let r = bounds::exact_report(&g, c, &ExactConfig::default(), &consts).unwrap();
            prop_assert!(r.two_way_lower <= r.two_way_upper);
        }
    }

    #[test]
    fn blocks_are_subadditive(g in game(7)) {
        let n = g.n();
        let table = exact::block_value_table(&g).unwrap();
        let value = |m: u64| if m == 0 { 0.0 } else { table.get(m).unwrap() };
        for s in 1u64..1 << n {
            let mut sub = (s - 1) & s;
            while sub > 0 {
                prop_assert!(value(s) <= value(sub) + value(s ^ sub) + TOL);
                sub = (sub - 1) & s;
            }
            let rows: f64 = (0..n).filter(|x| s >> x & 1 == 1).map(|x| g.row_norm(x)).sum();
            prop_assert!(rows <= KRIVINE * (s.count_ones() as f64).sqrt() * value(s) + TOL);
        }
        let singletons: f64 = (0..n).map(|x| value(1 << x)).sum();
        prop_assert!((singletons - 1.0).abs() <= 1e-9);
    }

    #[test]
    fn bounds_are_monotone(w1 in 0.0f64..1.0, w2 in 0.0f64..1.0, c in 0u32..12, n in 1usize..200) {
        let consts = Constants::default();
        let (lo, hi) = if w1 <= w2 { (w1, w2) } else { (w2, w1) };
        prop_assert!(bounds::discrepancy_upper(lo, c) <= bounds::discrepancy_upper(hi, c));
        prop_assert!(bounds::discrepancy_upper(lo, c) <= bounds::discrepancy_upper(lo, c + 1));
        prop_assert!(bounds::grothendieck_one_way_upper(lo, c, &consts) <= bounds::grothendieck_one_way_upper(hi, c, &consts));
        prop_assert!(bounds::grothendieck_one_way_upper(lo, c, &consts) <= bounds::grothendieck_one_way_upper(lo, c + 1, &consts));
        let f = bounds::one_way_floor(n, c, &consts);
        prop_assert!((0.0..=1.0).contains(&f));
        let s = bounds::two_way_sandwich(n, c, Interval::exact(lo), Interval::new(lo, hi), None, &consts).unwrap();
        prop_assert!(s.two_way_lower <= s.two_way_upper);
    }

    #[test]
    fn bob_responses_realize_the_block_sum(g in game(8), seed in any::<u64>(), bits in 0u32..3) {
        let n = g.n();
        let t = 1usize << bits;
        let prot = protocol::random_protocol(n, t, seed);
        let best = protocol::best_bob_responses_with_alphabet(&g, t, &prot.message_map, &prot.alice_signs).unwrap();
        let mut sum = 0.0;
        for i in 0..t {
            for y in 0..n {
                let col: f64 = (0..n)
                    .filter(|&x| prot.message_map[x] == i)
                    .map(|x| prot.alice_signs[x] as f64 * g.cost(x, y))
                    .sum();
                sum += col.abs();
            }
        }
        let v = protocol::protocol_value(&g, &best).unwrap();
        prop_assert!((v - sum).abs() <= TOL);
        prop_assert!(protocol::protocol_value(&g, &prot).unwrap() <= v + TOL);
    }

    #[test]
    fn mixtures_are_convex(g in game(6), seeds in proptest::collection::vec(any::<u64>(), 1..5), w in proptest::collection::vec(0.01f64..1.0, 5)) {
        let total: f64 = w[..seeds.len()].iter().sum();
        let comps: Vec<(f64, OneWayProtocol)> = seeds
            .iter()
            .zip(&w)
            .map(|(&s, &wi)| (wi / total, protocol::random_protocol(g.n(), 2, s)))
            .collect();
        let max = comps.iter().map(|(_, p)| protocol::protocol_value(&g, p).unwrap()).fold(f64::NEG_INFINITY, f64::max);
        let fixed: f64 = comps.iter().map(|c| c.0).sum();
        let mut comps = comps;
        comps[0].0 += 1.0 - fixed;
        let mix = ProtocolMixture::new(comps).unwrap();
        let (exact, _) = protocol::mixture_value(&g, &mix, 0, 0).unwrap();
        prop_assert!(exact <= max + TOL);
    }

    #[test]
    fn rectangles_rewrite_to_one_way(n in 1usize..7, c in 0u32..3, seed in any::<u64>(), gseed in any::<u64>()) {
        let g = common::random_game(n, gseed);
        let rect = RectanglePartition::random_tree(n, c, seed);
        let (prot, distinct) = protocol::two_way_to_one_way(&g, &rect).unwrap();
        prop_assert!(distinct as u64 <= 1u64 << (1u32 << c));
        prop_assert!(protocol::protocol_value(&g, &prot).unwrap() >= rect.value(&g).unwrap() - TOL);
    }

    #[test]
    fn generated_games_are_valid(n in 1usize..20, c in 0u32..5, seed in any::<u64>()) {
        let g = constructions::chevet_full_game(n, seed).unwrap();
        prop_assert!((g.pi_1_norm() - 1.0).abs() <= 1e-9);
        match constructions::chevet_block_game(n, c, seed) {
            Ok(b) => {
                prop_assert!((1usize << c) <= n);
                prop_assert!((b.pi_1_norm() - 1.0).abs() <= 1e-9);
                prop_assert_eq!(b.active_rows().len(), 1usize << c);
            }
            Err(_) => prop_assert!((1usize << c) > n),
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 8, ..ProptestConfig::default() })]

    #[test]
    fn levi_report_respects_the_window(seed in any::<u64>(), eps in 0.3f64..1.0, delta in 0.3f64..0.7) {
        let params = constructions::levi_params(delta, 2, eps).unwrap();
        prop_assume!(params.k <= 64);
        let r = constructions::levi_game(&params, 256, 100, seed).unwrap();
        let limit = (1.0 + eps) * r.distortion.upper / r.distortion.lower;
        let (ol, ou) = r.omega_interval;
        let (wl, wu) = r.one_way_interval;
        prop_assert!(0.0 <= ol && ol <= ou && ou <= 1.0);
        prop_assert!(0.0 <= wl && wl <= wu && wu <= 1.0);
        prop_assert!(ou / ol <= limit * (1.0 + TOL));
        prop_assert!(wu / wl <= limit * (1.0 + TOL));
        prop_assert!((r.game.pi_1_norm() - 1.0).abs() <= 1e-9);
        prop_assert!((r.pi1_of_s - params.alpha).abs() <= 1e-9);
    }

    #[test]
    fn embeddings_are_homogeneous(seed in any::<u64>(), lambda in -5.0f64..5.0, p in 1.1f64..1.95) {
        let emb = constructions::stable_embedding(4, 32, p, seed).unwrap();
        let x = [0.3, -1.0, 2.0, 0.5];
        let scaled: Vec<f64> = x.iter().map(|v| lambda * v).collect();
        let a = emb.image_norm(&scaled);
        let b = lambda.abs() * emb.image_norm(&x);
        prop_assert!((a - b).abs() <= 1e-9 * (1.0 + b));
        let d = constructions::distortion_estimate(&emb, 20, seed);
        let ones = emb.ratio(&[1.0; 4]);
        prop_assert!(d.lower <= ones && ones <= d.upper);
    }
}
