mod common;

use xorgame::bounds::{self, Constants};
use xorgame::constructions;
use xorgame::exact::{self, Ambient, ExactConfig};
use xorgame::protocol;
use xorgame::search::{self, SearchParams};
use xorgame::XorGame;

const TOL: f64 = 1e-12;

fn three_by_three() -> XorGame {
    XorGame::uniform(3, vec![1, -1, -1, -1, 1, -1, -1, -1, 1]).unwrap()
}

#[test]
fn classical_value_matches_brute_force() {
    for seed in 0..120 {
        let n = 1 + (seed as usize % 9);
        let g = common::random_game(n, seed);
        let expected = common::omega(&g);
        let got = exact::classical_value(&g).unwrap();
        assert!((got.value - expected).abs() <= TOL, "seed {seed}: {} vs {expected}", got.value);
        assert!((exact::bilinear(&g, &got.alice_signs, &got.bob_signs) - got.value).abs() <= TOL);
    }
}

#[test]
fn one_way_value_matches_brute_force() {
    for seed in 0..60 {
        let n = 1 + (seed as usize % 6);
        let g = common::random_game(n, 1000 + seed);
        for bits in 0..=2 {
            let t = (1usize << bits).min(n);
            let expected = common::one_way(&g, t);
            let cert = exact::one_way_value(&g, bits).unwrap();
            assert!((cert.value - expected).abs() <= TOL, "seed {seed} c {bits}: {} vs {expected}", cert.value);
            let prot = protocol::OneWayProtocol::from(&cert);
            assert!((protocol::protocol_value(&g, &prot).unwrap() - cert.value).abs() <= TOL);
        }
    }
}

#[test]
fn block_values_match_brute_force() {
    let g = common::random_game(7, 5);
    let table = exact::block_value_table(&g).unwrap();
    for mask in 1u64..1 << 7 {
        let rows: Vec<usize> = (0..7).filter(|x| mask >> x & 1 == 1).collect();
        assert!((table.get(mask).unwrap() - common::block(&g, &rows)).abs() <= TOL);
        assert!((exact::block_value(&g, mask).unwrap() - common::block(&g, &rows)).abs() <= TOL);
    }
}

#[test]
fn small_named_games() {
    let chsh = XorGame::chsh();
    assert_eq!(common::omega(&chsh), 0.5);
    assert_eq!(exact::classical_value(&chsh).unwrap().value, 0.5);
    let table = exact::block_value_table(&chsh).unwrap();
    assert_eq!((table.get(1), table.get(2), table.get(3)), (Some(0.5), Some(0.5), Some(0.5)));

    let g = three_by_three();
    assert!((common::omega(&g) - 5.0 / 9.0).abs() < 1e-15);
    assert!((exact::classical_value(&g).unwrap().value - 5.0 / 9.0).abs() < 1e-15);
    assert!((common::one_way(&g, 2) - 7.0 / 9.0).abs() < 1e-15);
    assert!((exact::one_way_value(&g, 1).unwrap().value - 7.0 / 9.0).abs() < 1e-15);
    assert!((exact::one_way_value(&g, 2).unwrap().value - 1.0).abs() < 1e-15);

    let one = XorGame::uniform(1, vec![1]).unwrap();
    let table = exact::block_value_table(&one).unwrap();
    assert_eq!(table.iter().collect::<Vec<_>>(), vec![(1, 1.0)]);
}

#[test]
fn weak_norms_of_basis_vectors() {
    for n in 1..=6 {
        let basis: Vec<Vec<f64>> = (0..n).map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.0 }).collect()).collect();
        let sum = exact::weak_p_norm(&basis, Ambient::Sum, 2.0).unwrap();
        assert!((sum - (n as f64).sqrt()).abs() < 1e-12);
        assert!((exact::weak_p_norm(&basis, Ambient::Sup, 1.0).unwrap() - 1.0).abs() < 1e-12);
    }
    let v = vec![vec![0.5, -2.0, 1.0]];
    assert!((exact::weak_p_norm(&v, Ambient::Sum, 1.5).unwrap() - 3.5).abs() < 1e-12);
    assert!((exact::weak_p_norm(&v, Ambient::Sup, 1.5).unwrap() - 2.0).abs() < 1e-12);
}

#[test]
fn sandwich_examples() {
    let consts = Constants::default();
    let cfg = ExactConfig::default();
    let r = bounds::exact_report(&XorGame::chsh(), 1, &cfg, &consts).unwrap();
    assert_eq!((r.two_way_lower, r.two_way_upper), (1.0, 1.0));
    // upper = min(1, 2·7/9, 2·5/9, ω¹ with two bits = 1)
    let r = bounds::exact_report(&three_by_three(), 1, &cfg, &consts).unwrap();
    assert!((r.two_way_lower - 7.0 / 9.0).abs() < 1e-15);
    assert!((r.two_way_upper - 1.0).abs() < 1e-15);
    assert!((bounds::discrepancy_upper(5.0 / 9.0, 1) - 1.0).abs() < 1e-15);
}

#[test]
fn hill_climbing_is_usually_optimal() {
    let params = SearchParams::with_seed(3);
    let mut hits = 0;
    let total = 200;
    for seed in 0..total {
        let n = 2 + (seed as usize % 11);
        let g = common::random_game(n, 5000 + seed);
        let exact = exact::classical_value(&g).unwrap().value;
        let found = search::hill_climb_classical(&g, &params).unwrap();
        assert!(found.value <= exact + TOL);
        assert!((exact::bilinear(&g, &found.alice_signs, &found.bob_signs) - found.value).abs() <= TOL);
        if found.value >= exact - TOL {
            hits += 1;
        }
    }
    assert!(hits * 100 >= 95 * total, "exact in {hits} of {total}");
}

#[test]
fn annealing_is_usually_optimal() {
    let params = SearchParams::with_seed(4);
    let mut hits = 0;
    let mut total = 0;
    for seed in 0..60u64 {
        let n = 3 + (seed as usize % 10);
        let g = common::random_game(n, 9000 + seed);
        let bits: Vec<u32> = (1..=3).collect();
        let exact = exact::one_way_values_with(&g, &bits, &ExactConfig::default()).unwrap();
        for (&c, e) in bits.iter().zip(&exact) {
            let found = search::anneal_one_way(&g, c, &params).unwrap();
            assert!(found.value <= e.value + TOL);
            total += 1;
            if found.value >= e.value - TOL {
                hits += 1;
            }
        }
    }
    assert!(hits * 100 >= 90 * total, "exact in {hits} of {total}");
}

#[test]
fn relaxation_facts() {
    let params = SearchParams::with_seed(8);
    for seed in 0..20 {
        let g = common::random_game(3 + seed as usize % 8, 300 + seed);
        let cert = exact::classical_value(&g).unwrap();
        let seeded = search::vector_relaxation_seeded(&g, &params, &cert.alice_signs).unwrap();
        assert!(seeded.value >= cert.value - 1e-6);
        let relax = search::vector_relaxation(&g, &params).unwrap();
        assert!(relax.history.windows(2).all(|w| w[1] >= w[0] - 1e-12));
        let rounded = search::hyperplane_round(&g, &relax.alice_vectors, &relax.bob_vectors, 20, seed).unwrap();
        assert!(rounded.value <= cert.value + TOL);
        let again = search::vector_relaxation_seeded(&g, &params, &rounded.alice_signs).unwrap();
        assert!(again.value >= rounded.value - 1e-9);
    }
}

#[test]
fn chevet_mean_below_bound() {
    // the mean of ω over uniform sign games stays below 2b/√n plus 3 standard errors
    let b = bounds::CHEVET_B;
    for n in [8, 16] {
        let omegas: Vec<f64> =
            (0..200).map(|s| exact::classical_value(&constructions::chevet_full_game(n, s).unwrap()).unwrap().value).collect();
        let k = omegas.len() as f64;
        let mean = omegas.iter().sum::<f64>() / k;
        let sd = (omegas.iter().map(|w| (w - mean).powi(2)).sum::<f64>() / (k - 1.0)).sqrt();
        assert!(mean <= 2.0 * b / (n as f64).sqrt() + 3.0 * sd / k.sqrt(), "n {n}: {mean}");
    }
}

#[test]
fn stable_char_fn_grid() {
    for p in [1.2, 1.5, 1.9, 2.0] {
        let xs = constructions::sample_stable(p, 1_000_000, 17).unwrap();
        for u in [0.5f64, 1.0, 2.0] {
            let target = (-u.powf(p)).exp();
            let got = constructions::empirical_char_fn(&xs, u);
            assert!((got - target).abs() < 0.01, "p {p} u {u}: {got} vs {target}");
        }
        let signs = xs.iter().map(|x| x.signum()).sum::<f64>() / xs.len() as f64;
        assert!(signs.abs() < 0.01);
    }
}

#[test]
fn levi_operator_facts() {
    let params = constructions::levi_params(0.5, 2, 0.1).unwrap();
    let k = params.k as usize;
    let s = (k as f64).powf(-1.0 / params.p);
    // π₁(S) = Σ_i ‖S e_i‖_p
    assert!((k as f64 * s - params.alpha).abs() < 1e-12);
    // ‖S x‖_p ≤ ‖x‖_∞
    let mut r = common::rng(3);
    for _ in 0..100 {
        let x: Vec<f64> = (0..k).map(|_| rand::Rng::random_range(&mut r, -1.0..1.0)).collect();
        let sup = x.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        let sx: Vec<f64> = x.iter().map(|v| s * v).collect();
        assert!(constructions::levi::p_norm(&sx, params.p) <= sup + 1e-12);
    }
}
