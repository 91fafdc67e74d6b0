//! End-of-season transfer market.
//!
//! Every team arrives here with this season's training record. A team
//! *improved* when its delta is strictly positive. Transferred values always
//! land at the donor's trained post.
//!
//! 0. Non-improved wealthiest and regular teams release their trained
//!    player: the post goes back to its pre-training value and score.
//! 1. Non-improved wealthiest teams, worst delta first, each buy the trained
//!    value of one improved regular team, best delta first.
//! 2. Non-improved regular teams buy trained values from improved weakest
//!    teams in the same way. Weakest teams keep what they sell.
//! 3. Every regular team that sold in step 1 refills the vacated post from
//!    the next unused improved weakest team trained at that same post, or
//!    with a freshly discovered value when none is left.
//! 4. Every non-improved weakest team rediscovers its trained post.
//! 5. Teams whose vector changed are re-scored. A wealthiest or regular team
//!    that ends up below its score after step 0 undoes its steps 1-3 changes
//!    and the corresponding log entries are marked as not kept.
//!
//! Random draws are consumed only by rediscoveries, in the order above, each
//! step walking its pairs (or teams) in order.

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::league::League;
use super::team::{draw_in, TeamId, Tier, Training};
use crate::error::Result;
use crate::objectives::ObjectiveSpec;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TransferKind {
    /// A non-improved team drops its trained value for the previous one.
    Release,
    RegularToWealthy,
    WeakestToRegular,
    /// A weakest team replaces a post with a fresh random value.
    Discovery,
    /// A regular team refills a sold post from a weakest team.
    RefillFromWeakest,
    /// A regular team refills a sold post with a fresh random value.
    RefillDiscovery,
}

impl TransferKind {
    /// Whether the entry copies a donor's trained value.
    pub fn has_donor(&self) -> bool {
        matches!(
            self,
            TransferKind::RegularToWealthy
                | TransferKind::WeakestToRegular
                | TransferKind::RefillFromWeakest
        )
    }

    /// Whether the entry writes a freshly drawn value.
    pub fn is_discovery(&self) -> bool {
        matches!(
            self,
            TransferKind::Discovery | TransferKind::RefillDiscovery
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TransferEntry {
    pub season: usize,
    pub kind: TransferKind,
    pub donor: Option<TeamId>,
    pub recipient: TeamId,
    pub post: usize,
    pub value: f64,
    /// False when the recipient rolled the change back.
    pub kept: bool,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct TransferLog {
    pub entries: Vec<TransferEntry>,
}

impl TransferLog {
    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn of_kind(&self, kind: TransferKind) -> impl Iterator<Item = &TransferEntry> {
        self.entries.iter().filter(move |e| e.kind == kind)
    }

    pub fn extend(&mut self, other: TransferLog) {
        self.entries.extend(other.entries);
    }
}

fn training(league: &League, id: TeamId) -> Training {
    league
        .team(id)
        .training
        .filter(|t| t.delta.is_some())
        .unwrap_or_else(|| panic!("{id} has no evaluated training record"))
}

/// Splits a tier into (non-improved sorted by delta ascending, improved
/// sorted by delta descending). Ties keep index order.
fn partition(league: &League, tier: Tier) -> (Vec<TeamId>, Vec<TeamId>) {
    let ids = (0..league.tier(tier).len()).map(|index| TeamId { tier, index });
    let delta = |id: &TeamId| training(league, *id).delta.unwrap();
    let (mut improved, mut stale): (Vec<_>, Vec<_>) = ids.partition(|id| delta(id) > 0.0);
    stale.sort_by(|a, b| delta(a).total_cmp(&delta(b)));
    improved.sort_by(|a, b| delta(b).total_cmp(&delta(a)));
    (stale, improved)
}

struct Market<'a> {
    league: &'a mut League,
    objective: &'a ObjectiveSpec,
    log: TransferLog,
    touched: Vec<TeamId>,
}

impl Market<'_> {
    fn write(
        &mut self,
        kind: TransferKind,
        donor: Option<TeamId>,
        recipient: TeamId,
        post: usize,
        value: f64,
    ) {
        self.league.team_mut(recipient).values[post] = value;
        if !self.touched.contains(&recipient) {
            self.touched.push(recipient);
        }
        self.log.entries.push(TransferEntry {
            season: self.league.season_index(),
            kind,
            donor,
            recipient,
            post,
            value,
            kept: true,
        });
    }

    fn buy(&mut self, kind: TransferKind, donor: TeamId, recipient: TeamId) -> usize {
        let t = training(self.league, donor);
        self.write(kind, Some(donor), recipient, t.post, t.trained_value);
        t.post
    }

    fn discover<R: Rng + ?Sized>(
        &mut self,
        kind: TransferKind,
        team: TeamId,
        post: usize,
        rng: &mut R,
    ) {
        let value = draw_in(&self.objective.bounds()[post], rng);
        self.write(kind, None, team, post, value);
    }

    /// Puts the pre-training value back. The restored score is the cached
    /// pre-training score, so no evaluation is spent.
    fn release(&mut self, team: TeamId) {
        let t = training(self.league, team);
        let season = self.league.season_index();
        let entry = self.league.team_mut(team);
        entry.values[t.post] = t.previous_value;
        entry.score = t.pre_train_score;
        self.log.entries.push(TransferEntry {
            season,
            kind: TransferKind::Release,
            donor: None,
            recipient: team,
            post: t.post,
            value: t.previous_value,
            kept: true,
        });
    }
}

/// Runs the transfer market for the current season and returns its log.
///
/// # Panics
///
/// If any team lacks an evaluated training record for this season.
pub fn transfer_phase<R: Rng + ?Sized>(
    league: &mut League,
    objective: &ObjectiveSpec,
    rng: &mut R,
) -> Result<TransferLog> {
    let (wealthy_stale, _) = partition(league, Tier::Wealthiest);
    let (regular_stale, regular_improved) = partition(league, Tier::Regular);
    let (weakest_stale, weakest_improved) = partition(league, Tier::Weakest);

    let mut market = Market {
        league,
        objective,
        log: TransferLog::default(),
        touched: Vec::new(),
    };

    let mut released: Vec<TeamId> = wealthy_stale
        .iter()
        .chain(&regular_stale)
        .copied()
        .collect();
    released.sort_by_key(|id| (id.tier, id.index));
    for &team in &released {
        market.release(team);
    }
    // Wealthiest and regular teams never leave the market below this.
    let baseline: Vec<(TeamId, Vec<f64>, f64)> = market
        .league
        .teams()
        .filter(|(id, _)| id.tier != Tier::Weakest)
        .map(|(id, t)| (id, t.values.clone(), t.score))
        .collect();

    let mut sold_regular = Vec::new();
    for (&recipient, &donor) in wealthy_stale.iter().zip(&regular_improved) {
        let post = market.buy(TransferKind::RegularToWealthy, donor, recipient);
        sold_regular.push((donor, post));
    }

    let paired = regular_stale.len().min(weakest_improved.len());
    for (&recipient, &donor) in regular_stale.iter().zip(&weakest_improved) {
        market.buy(TransferKind::WeakestToRegular, donor, recipient);
    }

    let mut spare: Vec<TeamId> = weakest_improved[paired..].to_vec();
    for (team, post) in sold_regular {
        let same_post = spare
            .iter()
            .position(|&w| training(market.league, w).post == post);
        match same_post {
            Some(i) => {
                let donor = spare.remove(i);
                market.buy(TransferKind::RefillFromWeakest, donor, team);
            }
            None => market.discover(TransferKind::RefillDiscovery, team, post, rng),
        }
    }

    let mut stale = weakest_stale;
    stale.sort_by_key(|id| id.index);
    for team in stale {
        let post = training(market.league, team).post;
        market.discover(TransferKind::Discovery, team, post, rng);
    }

    let Market {
        league,
        mut log,
        mut touched,
        ..
    } = market;
    touched.sort_by_key(|id| (id.tier, id.index));
    for id in touched {
        let score = league.rescore(id, objective)?;
        let Some((_, values, floor)) = baseline.iter().find(|(b, _, _)| *b == id) else {
            continue;
        };
        if score < *floor {
            let team = league.team_mut(id);
            team.values.clone_from(values);
            team.score = *floor;
            for e in log.entries.iter_mut() {
                if e.recipient == id && e.kind != TransferKind::Release {
                    e.kept = false;
                }
            }
        }
    }
    Ok(log)
}
