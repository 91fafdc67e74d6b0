use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::config::SloConfig;
use super::league::{evaluate_and_delta, initialize_league, League};
use super::team::{select_post, train, Tier};
use super::transfer::{transfer_phase, TransferLog};
use crate::error::Result;
use crate::objectives::ObjectiveSpec;
use crate::trace::{RunResult, SeasonRecord};

/// Plays one season: every team (wealthiest, then regular, then weakest, in
/// index order) picks a post and trains it, the league is evaluated, the
/// best-of-history is updated, and the transfer market runs.
///
/// Re-scored teams coming out of the market also count towards the
/// best-of-history, so `global_best` never trails a tier best.
pub fn play_season<R: Rng + ?Sized>(
    league: &mut League,
    objective: &ObjectiveSpec,
    config: &SloConfig,
    rng: &mut R,
) -> Result<(SeasonRecord, TransferLog)> {
    league.advance_season();
    let dimension = objective.dimension();
    for tier in Tier::ALL {
        for team in league.tier_mut(tier) {
            let post = select_post(dimension, rng);
            train(team, post, objective, config.alpha, rng);
        }
    }
    evaluate_and_delta(league, objective)?;
    league.update_global_best();
    let log = transfer_phase(league, objective, rng)?;
    league.update_global_best();

    let record = SeasonRecord {
        season: league.season_index(),
        best_wealthy: Some(league.tier_best(Tier::Wealthiest)),
        best_regular: Some(league.tier_best(Tier::Regular)),
        best_weakest: Some(league.tier_best(Tier::Weakest)),
        global_best: league.global_best_score(),
    };
    Ok((record, log))
}

/// A seeded run in progress. Exposes the league between seasons so callers
/// can snapshot it.
#[derive(Debug, Clone)]
pub struct SloRun<'a> {
    config: SloConfig,
    objective: &'a ObjectiveSpec,
    rng: ChaCha8Rng,
    league: League,
    trace: Vec<SeasonRecord>,
    transfers: TransferLog,
}

impl<'a> SloRun<'a> {
    pub fn new(config: SloConfig, objective: &'a ObjectiveSpec) -> Result<Self> {
        let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
        let league = initialize_league(&config, objective, &mut rng)?;
        Ok(Self {
            config,
            objective,
            rng,
            league,
            trace: Vec::with_capacity(config.seasons),
            transfers: TransferLog::default(),
        })
    }

    pub fn league(&self) -> &League {
        &self.league
    }

    pub fn trace(&self) -> &[SeasonRecord] {
        &self.trace
    }

    pub fn transfers(&self) -> &TransferLog {
        &self.transfers
    }

    pub fn is_finished(&self) -> bool {
        self.league.season_index() >= self.config.seasons
    }

    pub fn play_season(&mut self) -> Result<SeasonRecord> {
        let (record, log) = play_season(
            &mut self.league,
            self.objective,
            &self.config,
            &mut self.rng,
        )?;
        self.trace.push(record);
        self.transfers.extend(log);
        Ok(record)
    }

    /// Plays the remaining seasons.
    pub fn run(&mut self) -> Result<()> {
        while !self.is_finished() {
            self.play_season()?;
        }
        Ok(())
    }

    pub fn result(&self) -> RunResult {
        let best_point = self.league.global_best_point().to_vec();
        RunResult {
            seed: self.config.seed,
            best_raw: self.objective.eval(&best_point),
            best_point,
            best_score: self.league.global_best_score(),
            trace: self.trace.clone(),
            evaluations_used: self.league.evaluations(),
        }
    }
}

/// Runs SLO to completion with `config.seed`.
pub fn run_slo(config: &SloConfig, objective: &ObjectiveSpec) -> Result<RunResult> {
    let mut run = SloRun::new(*config, objective)?;
    run.run()?;
    Ok(run.result())
}
