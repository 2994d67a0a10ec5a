//! Six-max table engine: betting rounds, side pots, rake, hand histories,
//! archetype bots and the fast-fold session driver.

mod bots;
mod config;
mod context;
mod history;
mod play;
mod pots;
mod rake;
mod session;
mod state;

pub use bots::BotBrain;
pub use config::{SessionConfig, DEFAULT_MIX};
pub use context::derive_context;
pub use history::{format_history, parse_history, write_record, HandRecord, SeatInfo, HISTORY_HEADER};
pub use play::{actor_role, legalize, play_hand, Decision, Players};
pub use pots::{award, build_pots, take_rake, uncalled, Pot};
pub use rake::RakeModel;
pub use session::{build_pool, hero_vpip, run_fastfold_session, HandOutput, SessionSummary, HERO_LABEL, HERO_NAME};
pub use state::{Action, ActionRecord, Deal, GameState, Legal, SeatState, Settlement};

/// Chip amounts; one big blind is [`BB`] chips.
pub type Chips = i64;

pub const BB: Chips = 100;
