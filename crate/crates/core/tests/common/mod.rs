//! A three-team league on f(x) = -x^2 over [-1, 1], simulated step by step
//! without the engine, plus the same league driven by the engine.

#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use slo_core::slo::{initialize_league, play_season};
use slo_core::{Bounds, League, ObjectiveSpec, Sense, SloConfig, Tier};

pub fn neg_square(p: &[f64]) -> f64 {
    -p[0] * p[0]
}

pub fn parabola() -> ObjectiveSpec {
    ObjectiveSpec::new(
        "parabola",
        vec![Bounds::new(-1.0, 1.0)],
        Sense::Maximize,
        0.0,
        vec![vec![0.0]],
        neg_square,
    )
    .unwrap()
}

pub fn f(x: f64) -> f64 {
    -x * x
}

pub fn uniform(rng: &mut ChaCha8Rng) -> f64 {
    (-1.0 + rng.random::<f64>() * 2.0).clamp(-1.0, 1.0)
}

/// Team state as the oracle sees it: position and cached score.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Hand {
    pub x: f64,
    pub s: f64,
}

/// Straight-line simulation of `seasons` seasons. Returns the positions
/// (wealthy, regular, weakest) after initialization and after each season.
pub fn simulate(seed: u64, alpha: f64, seasons: usize) -> Vec<[Hand; 3]> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    // initialization: three draws, then rank by score (stable)
    let mut pool: Vec<Hand> = (0..3)
        .map(|_| {
            let x = uniform(&mut rng);
            Hand { x, s: f(x) }
        })
        .collect();
    pool.sort_by(|a, b| b.s.total_cmp(&a.s));
    let (mut w, mut r, mut k) = (pool[0], pool[1], pool[2]);
    let mut history = vec![[w, r, k]];

    for _ in 0..seasons {
        // training: post draw, then perturbation draw, team by team
        let mut trained = [0.0; 3];
        for (i, team) in [&mut w, &mut r, &mut k].into_iter().enumerate() {
            let post: usize = rng.random_range(0..1);
            assert_eq!(post, 0);
            let u = (2.0 * rng.random::<f64>() - 1.0) * alpha * 2.0;
            trained[i] = (team.x + u).clamp(-1.0, 1.0);
        }
        let prev = [w, r, k];
        let [tw, tr, tk] = trained;
        let (dw, dr, dk) = (f(tw) - w.s, f(tr) - r.s, f(tk) - k.s);
        w = Hand { x: tw, s: f(tw) };
        r = Hand { x: tr, s: f(tr) };
        k = Hand { x: tk, s: f(tk) };

        // release
        if dw <= 0.0 {
            w = prev[0];
        }
        if dr <= 0.0 {
            r = prev[1];
        }
        let (w_floor, r_floor) = (w, r);

        let mut w_touched = false;
        let mut r_touched = false;
        let mut k_touched = false;
        let mut spare_k = dk > 0.0;

        if dw <= 0.0 && dr > 0.0 {
            w.x = tr;
            w_touched = true;
        }
        if dr <= 0.0 && dk > 0.0 {
            r.x = tk;
            r_touched = true;
            spare_k = false;
        }
        if dw <= 0.0 && dr > 0.0 {
            // the regular team sold its trained player
            if spare_k {
                r.x = tk;
            } else {
                r.x = uniform(&mut rng);
            }
            r_touched = true;
        }
        if dk <= 0.0 {
            k.x = uniform(&mut rng);
            k_touched = true;
        }

        if w_touched {
            w.s = f(w.x);
            if w.s < w_floor.s {
                w = w_floor;
            }
        }
        if r_touched {
            r.s = f(r.x);
            if r.s < r_floor.s {
                r = r_floor;
            }
        }
        if k_touched {
            k.s = f(k.x);
        }
        history.push([w, r, k]);
    }
    history
}

pub fn engine_state(league: &League) -> [Hand; 3] {
    let team = |tier| {
        let t = &league.tier(tier)[0];
        Hand {
            x: t.values[0],
            s: t.score,
        }
    };
    [
        team(Tier::Wealthiest),
        team(Tier::Regular),
        team(Tier::Weakest),
    ]
}

pub fn engine(seed: u64, alpha: f64, seasons: usize) -> Vec<[Hand; 3]> {
    let obj = parabola();
    let config = SloConfig {
        n_a: 1,
        n_b: 1,
        n_c: 1,
        seasons,
        alpha,
        seed,
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut league = initialize_league(&config, &obj, &mut rng).unwrap();
    let mut history = vec![engine_state(&league)];
    for _ in 0..seasons {
        play_season(&mut league, &obj, &config, &mut rng).unwrap();
        history.push(engine_state(&league));
    }
    history
}

pub fn assert_bit_identical(a: &[[Hand; 3]], b: &[[Hand; 3]], seed: u64) {
    assert_eq!(a.len(), b.len());
    for (season, (x, y)) in a.iter().zip(b).enumerate() {
        for (tier, (p, q)) in x.iter().zip(y).enumerate() {
            assert_eq!(
                (p.x.to_bits(), p.s.to_bits()),
                (q.x.to_bits(), q.s.to_bits()),
                "seed {seed}, season {season}, tier {tier}: oracle {p:?} vs engine {q:?}"
            );
        }
    }
}
