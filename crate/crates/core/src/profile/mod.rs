mod adjust;
mod archetype;
mod exploit;
mod stats;
mod store;

pub use adjust::{RangeAdjustments, Refinement, ShowdownFactors};
pub use archetype::{classify_with, Archetype, Style, Thresholds};
pub use exploit::{conviction, default_rules, search_exploits, Exploit, ExploitKind, ExploitRule, StatKey, MIN_EXPLOIT_SAMPLE};
pub use stats::{PlayerStats, Stat};
pub use store::{format_event_log, parse_event_log, ActionEvent, LoggedEvent, ProfileStore, Snapshot, EVENTS_FILE, EVENT_LOG_HEADER, SNAPSHOT_FILE};

/// Archetype for a player's observed stats under the default thresholds.
pub fn classify(stats: &PlayerStats) -> Archetype {
    classify_with(&Thresholds::default(), stats.hands, stats.vpip_rate(), stats.af())
}
