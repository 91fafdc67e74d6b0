//! Soccer League Optimization.
//!
//! A league holds three fixed tiers of teams (candidate solutions). Each
//! season every team trains one randomly chosen post (dimension), keeps the
//! result whether or not it helped, and then a transfer market moves the
//! trained values of improving teams up the tiers while the weakest tier
//! keeps discovering fresh random values.

mod config;
mod league;
mod season;
mod team;
mod transfer;

pub use config::{SloConfig, DEFAULT_ALPHA};
pub use league::{evaluate_and_delta, initialize_league, League};
pub use season::{play_season, run_slo, SloRun};
pub use team::{select_post, train, Team, TeamId, Tier, Training};
pub use transfer::{transfer_phase, TransferEntry, TransferKind, TransferLog};
