use rand::Rng;
use serde::{Deserialize, Serialize};

use super::config::SloConfig;
use super::team::{draw_in, Team, TeamId, Tier};
use crate::error::{Error, Result};
use crate::objectives::ObjectiveSpec;

/// The whole population: three fixed-size tiers plus the best point ever seen.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct League {
    wealthiest: Vec<Team>,
    regular: Vec<Team>,
    weakest: Vec<Team>,
    global_best_point: Vec<f64>,
    global_best_score: f64,
    season_index: usize,
    evaluations: u64,
}

impl League {
    /// Builds a league from explicit tier contents, scoring every team and
    /// seeding the global best with the best of them.
    pub fn from_tiers(
        wealthiest: Vec<Vec<f64>>,
        regular: Vec<Vec<f64>>,
        weakest: Vec<Vec<f64>>,
        objective: &ObjectiveSpec,
    ) -> Result<Self> {
        if wealthiest.is_empty() || regular.is_empty() || weakest.is_empty() {
            return Err(Error::InvalidConfig(
                "every tier needs at least one team".into(),
            ));
        }
        let mut evaluations = 0;
        let mut build = |tier: Tier, rows: Vec<Vec<f64>>| -> Result<Vec<Team>> {
            rows.into_iter()
                .enumerate()
                .map(|(index, values)| {
                    if !objective.contains(&values) {
                        return Err(Error::InvalidConfig(format!(
                            "{} is outside the search box: {values:?}",
                            TeamId { tier, index }
                        )));
                    }
                    let score = evaluate(objective, &values, TeamId { tier, index })?;
                    evaluations += 1;
                    Ok(Team::new(values, score, tier))
                })
                .collect()
        };
        let wealthiest = build(Tier::Wealthiest, wealthiest)?;
        let regular = build(Tier::Regular, regular)?;
        let weakest = build(Tier::Weakest, weakest)?;

        let mut league = Self {
            global_best_point: wealthiest[0].values.clone(),
            global_best_score: wealthiest[0].score,
            wealthiest,
            regular,
            weakest,
            season_index: 0,
            evaluations,
        };
        league.update_global_best();
        Ok(league)
    }

    pub fn tier(&self, tier: Tier) -> &[Team] {
        match tier {
            Tier::Wealthiest => &self.wealthiest,
            Tier::Regular => &self.regular,
            Tier::Weakest => &self.weakest,
        }
    }

    /// Mutable view of a tier. The slice cannot grow or shrink, so tier sizes
    /// stay fixed.
    pub fn tier_mut(&mut self, tier: Tier) -> &mut [Team] {
        match tier {
            Tier::Wealthiest => &mut self.wealthiest,
            Tier::Regular => &mut self.regular,
            Tier::Weakest => &mut self.weakest,
        }
    }

    pub fn team(&self, id: TeamId) -> &Team {
        &self.tier(id.tier)[id.index]
    }

    pub(crate) fn team_mut(&mut self, id: TeamId) -> &mut Team {
        &mut self.tier_mut(id.tier)[id.index]
    }

    /// All teams with their ids, wealthiest tier first, in index order.
    pub fn teams(&self) -> impl Iterator<Item = (TeamId, &Team)> {
        Tier::ALL.into_iter().flat_map(move |tier| {
            self.tier(tier)
                .iter()
                .enumerate()
                .map(move |(index, t)| (TeamId { tier, index }, t))
        })
    }

    pub fn team_ids(&self) -> Vec<TeamId> {
        self.teams().map(|(id, _)| id).collect()
    }

    pub fn global_best_point(&self) -> &[f64] {
        &self.global_best_point
    }

    pub fn global_best_score(&self) -> f64 {
        self.global_best_score
    }

    pub fn season_index(&self) -> usize {
        self.season_index
    }

    pub(crate) fn advance_season(&mut self) {
        self.season_index += 1;
    }

    /// Objective evaluations spent so far.
    pub fn evaluations(&self) -> u64 {
        self.evaluations
    }

    pub fn tier_best(&self, tier: Tier) -> f64 {
        self.tier(tier)
            .iter()
            .map(|t| t.score)
            .fold(f64::NEG_INFINITY, f64::max)
    }

    /// Re-scores one team from its current vector.
    pub(crate) fn rescore(&mut self, id: TeamId, objective: &ObjectiveSpec) -> Result<f64> {
        let score = evaluate(objective, &self.team(id).values, id)?;
        self.evaluations += 1;
        self.team_mut(id).score = score;
        Ok(score)
    }

    /// Replaces the global best iff some team strictly beats it. Returns
    /// whether it changed.
    pub fn update_global_best(&mut self) -> bool {
        let mut best: Option<&Team> = None;
        let mut best_score = self.global_best_score;
        for (_, team) in self.teams() {
            if team.score > best_score {
                best_score = team.score;
                best = Some(team);
            }
        }
        match best.map(|t| t.values.clone()) {
            Some(point) => {
                self.global_best_point = point;
                self.global_best_score = best_score;
                true
            }
            None => false,
        }
    }
}

pub(crate) fn evaluate(objective: &ObjectiveSpec, point: &[f64], id: TeamId) -> Result<f64> {
    let raw = objective.eval(point);
    if !raw.is_finite() {
        return Err(Error::NonFiniteEvaluation {
            team: id.to_string(),
            point: point.to_vec(),
            value: raw,
        });
    }
    Ok(objective.to_score(raw))
}

/// Creates `n_a + n_b + n_c` uniformly random teams, scores them, and hands
/// out tiers by rank: the top `n_a` become wealthiest, the next `n_b`
/// regular, the rest weakest.
///
/// Random draws happen team by team, dimension by dimension, in creation
/// order. Ties in score keep creation order.
pub fn initialize_league<R: Rng + ?Sized>(
    config: &SloConfig,
    objective: &ObjectiveSpec,
    rng: &mut R,
) -> Result<League> {
    config.validate()?;
    let mut pool: Vec<(f64, Vec<f64>)> = Vec::with_capacity(config.team_count());
    for index in 0..config.team_count() {
        let values: Vec<f64> = objective.bounds().iter().map(|b| draw_in(b, rng)).collect();
        let score = evaluate(
            objective,
            &values,
            TeamId {
                tier: Tier::Weakest,
                index,
            },
        )?;
        pool.push((score, values));
    }
    pool.sort_by(|a, b| b.0.total_cmp(&a.0));

    let mut rest = pool.into_iter();
    let mut take = |n: usize, tier: Tier| -> Vec<Team> {
        rest.by_ref()
            .take(n)
            .map(|(score, values)| Team::new(values, score, tier))
            .collect()
    };
    let wealthiest = take(config.n_a, Tier::Wealthiest);
    let regular = take(config.n_b, Tier::Regular);
    let weakest = take(config.n_c, Tier::Weakest);

    Ok(League {
        global_best_point: wealthiest[0].values.clone(),
        global_best_score: wealthiest[0].score,
        wealthiest,
        regular,
        weakest,
        season_index: 0,
        evaluations: config.team_count() as u64,
    })
}

/// Scores every trained team at its new position and records
/// `delta = f'(x) - f(x)`. The trained vector is kept whatever the sign.
///
/// # Panics
///
/// If a team was not trained this season.
pub fn evaluate_and_delta(league: &mut League, objective: &ObjectiveSpec) -> Result<()> {
    for id in league.team_ids() {
        let score = league.rescore(id, objective)?;
        let team = league.team_mut(id);
        let training = team
            .training
            .as_mut()
            .unwrap_or_else(|| panic!("{id} was not trained this season"));
        training.delta = Some(score - training.pre_train_score);
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::objectives::{lookup, Bounds, Sense};
    use crate::slo::team::Training;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn small(n: usize) -> SloConfig {
        SloConfig {
            n_a: n,
            n_b: n,
            n_c: n,
            ..SloConfig::default()
        }
    }

    #[test]
    fn one_team_per_tier_ranked_by_score() {
        let g1 = lookup("g1").unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let league = initialize_league(&small(1), &g1, &mut rng).unwrap();
        let w = league.tier(Tier::Wealthiest)[0].score;
        let r = league.tier(Tier::Regular)[0].score;
        let k = league.tier(Tier::Weakest)[0].score;
        assert!(w >= r && r >= k);
        assert_eq!(league.global_best_score(), w);
        assert_eq!(league.season_index(), 0);
        assert_eq!(league.evaluations(), 3);
    }

    #[test]
    fn full_size_league_is_in_bounds() {
        let g4 = lookup("g4").unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let league = initialize_league(&small(30), &g4, &mut rng).unwrap();
        assert_eq!(league.teams().count(), 90);
        for tier in Tier::ALL {
            assert_eq!(league.tier(tier).len(), 30);
            assert!(league.tier(tier).iter().all(|t| t.tier == tier));
        }
        assert!(league.teams().all(|(_, t)| g4.contains(&t.values)));
        let scores: Vec<f64> = league.teams().map(|(_, t)| t.score).collect();
        assert!(scores.windows(2).all(|w| w[0] >= w[1]));
    }

    #[test]
    fn initialization_is_deterministic() {
        let g2 = lookup("g2").unwrap();
        let a = initialize_league(&small(5), &g2, &mut ChaCha8Rng::seed_from_u64(42)).unwrap();
        let b = initialize_league(&small(5), &g2, &mut ChaCha8Rng::seed_from_u64(42)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn rejects_zero_tier() {
        let g1 = lookup("g1").unwrap();
        let cfg = SloConfig {
            n_b: 0,
            ..SloConfig::default()
        };
        let r = initialize_league(&cfg, &g1, &mut ChaCha8Rng::seed_from_u64(0));
        assert!(matches!(r, Err(Error::InvalidConfig(_))));
    }

    fn forced(league: &mut League, id: TeamId, values: Vec<f64>, obj: &ObjectiveSpec) {
        let team = league.team_mut(id);
        team.training = Some(Training {
            post: 0,
            previous_value: team.values[0],
            pre_train_score: team.score,
            trained_value: values[0],
            delta: None,
        });
        team.values = values;
        let _ = obj;
    }

    #[test]
    fn worsening_move_is_kept() {
        let g1 = lookup("g1").unwrap();
        let mut league = League::from_tiers(
            vec![vec![3.0, 0.5]],
            vec![vec![0.0, 0.0]],
            vec![vec![1.0, 1.0]],
            &g1,
        )
        .unwrap();
        for id in league.team_ids() {
            let v = league.team(id).values.clone();
            forced(&mut league, id, v, &g1);
        }
        let w = TeamId {
            tier: Tier::Wealthiest,
            index: 0,
        };
        forced(&mut league, w, vec![3.5, 0.5], &g1);
        evaluate_and_delta(&mut league, &g1).unwrap();
        let team = league.team(w);
        assert!(team.delta().unwrap() < 0.0);
        assert_eq!(team.values, vec![3.5, 0.5]);
        assert_eq!(team.score, g1.score(&[3.5, 0.5]));
        // unchanged point -> zero delta
        let r = league.team(TeamId {
            tier: Tier::Regular,
            index: 0,
        });
        assert_eq!(r.delta(), Some(0.0));
        assert!(!r.improved());
    }

    #[test]
    fn non_finite_evaluation_names_team() {
        let obj = ObjectiveSpec::new(
            "pole",
            vec![Bounds::new(-1.0, 1.0)],
            Sense::Minimize,
            0.0,
            vec![],
            |p| if p[0] > 0.5 { f64::NAN } else { p[0] },
        )
        .unwrap();
        let mut league =
            League::from_tiers(vec![vec![0.0]], vec![vec![0.1]], vec![vec![0.2]], &obj).unwrap();
        let id = TeamId {
            tier: Tier::Regular,
            index: 0,
        };
        for i in league.team_ids() {
            let v = league.team(i).values.clone();
            forced(&mut league, i, v, &obj);
        }
        forced(&mut league, id, vec![0.9], &obj);
        let err = evaluate_and_delta(&mut league, &obj).unwrap_err();
        match err {
            Error::NonFiniteEvaluation { team, point, .. } => {
                assert_eq!(team, id.to_string());
                assert_eq!(point, vec![0.9]);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn global_best_requires_strict_improvement() {
        let obj = ObjectiveSpec::new(
            "id",
            vec![Bounds::new(-1.0, 1.0)],
            Sense::Maximize,
            1.0,
            vec![vec![1.0]],
            |p| p[0],
        )
        .unwrap();
        let mut league =
            League::from_tiers(vec![vec![0.5]], vec![vec![0.0]], vec![vec![-0.5]], &obj).unwrap();
        assert_eq!(league.global_best_score(), 0.5);

        // everybody worse: nothing changes
        for id in league.team_ids() {
            league.team_mut(id).score = -1.0;
        }
        assert!(!league.update_global_best());
        assert_eq!(league.global_best_point(), &[0.5]);

        // tie keeps the incumbent
        let id = TeamId {
            tier: Tier::Weakest,
            index: 0,
        };
        league.team_mut(id).values = vec![0.7];
        league.team_mut(id).score = 0.5;
        assert!(!league.update_global_best());
        assert_eq!(league.global_best_point(), &[0.5]);

        league.team_mut(id).score = 0.5 + 1e-12;
        assert!(league.update_global_best());
        assert_eq!(league.global_best_point(), &[0.7]);
    }
}
