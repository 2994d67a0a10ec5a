use std::collections::HashMap;
use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::action::{ActionKind, Position, Street};
use crate::error::{Error, Result};

use super::adjust::{RangeAdjustments, Refinement};
use super::stats::PlayerStats;
use super::Archetype;
use crate::cards::Hole;
use crate::range::ComboGrid;
use crate::rsm::Overlay;

pub const EVENT_LOG_HEADER: &str = "#rangeread-events 1";

/// One witnessed action. All-in calls are recorded as `Call`; `AllIn` marks
/// an all-in bet or raise.
#[derive(Debug, Clone, PartialEq)]
pub struct ActionEvent {
    pub hand_id: u64,
    pub player: String,
    pub street: Street,
    pub action: ActionKind,
    /// Chips added by this action, in big blinds.
    pub amount: f64,
    pub pot_before: f64,
    pub position: Position,
    /// Strictly increasing within a hand.
    pub seq: u32,
}

#[derive(Debug, Clone, PartialEq)]
pub enum LoggedEvent {
    Action(ActionEvent),
    Showdown { hand_id: u64, player: String, seq: u32 },
}

impl LoggedEvent {
    pub fn hand_id(&self) -> u64 {
        match self {
            LoggedEvent::Action(e) => e.hand_id,
            LoggedEvent::Showdown { hand_id, .. } => *hand_id,
        }
    }

    pub fn seq(&self) -> u32 {
        match self {
            LoggedEvent::Action(e) => e.seq,
            LoggedEvent::Showdown { seq, .. } => *seq,
        }
    }
}

type PlayerId = usize;

/// Betting context of the hand in progress, enough to classify each action
/// as a c-bet, donk bet, steal and so on.
#[derive(Debug, Clone)]
struct HandState {
    hand_id: u64,
    last_seq: u32,
    street: Street,
    seen: Vec<PlayerId>,
    vpip: Vec<PlayerId>,
    pfr: Vec<PlayerId>,
    showed: Vec<PlayerId>,
    voluntary_preflop: bool,
    steal_live: Option<PlayerId>,
    steal_answered: Vec<PlayerId>,
    prev_aggressor: Option<PlayerId>,
    cur_aggressor: Option<PlayerId>,
    street_bet: bool,
    prev_aggressor_acted: bool,
    cbet_live: bool,
    responded: Vec<PlayerId>,
    donk_checked: Vec<PlayerId>,
}

impl HandState {
    fn new(hand_id: u64) -> HandState {
        HandState {
            hand_id,
            last_seq: 0,
            street: Street::Preflop,
            seen: Vec::new(),
            vpip: Vec::new(),
            pfr: Vec::new(),
            showed: Vec::new(),
            voluntary_preflop: false,
            steal_live: None,
            steal_answered: Vec::new(),
            prev_aggressor: None,
            cur_aggressor: None,
            street_bet: false,
            prev_aggressor_acted: false,
            cbet_live: false,
            responded: Vec::new(),
            donk_checked: Vec::new(),
        }
    }

    fn advance_street(&mut self, to: Street) {
        while self.street < to {
            self.street = self.street.next().expect("street below river");
            self.prev_aggressor = self.cur_aggressor.take();
            self.street_bet = false;
            self.prev_aggressor_acted = false;
            self.cbet_live = false;
            self.responded.clear();
            self.donk_checked.clear();
        }
    }
}

/// Perfect-recall store of every witnessed action with incrementally
/// maintained per-player statistics.
#[derive(Debug, Clone, Default)]
pub struct ProfileStore {
    ids: HashMap<String, PlayerId>,
    names: Vec<String>,
    stats: Vec<PlayerStats>,
    log: Vec<LoggedEvent>,
    current: Option<HandState>,
    adjustments: RangeAdjustments,
}

fn push_once(v: &mut Vec<PlayerId>, p: PlayerId) -> bool {
    if v.contains(&p) {
        false
    } else {
        v.push(p);
        true
    }
}

impl ProfileStore {
    pub fn new() -> ProfileStore {
        ProfileStore::default()
    }

    pub fn stats(&self, player: &str) -> Option<&PlayerStats> {
        self.ids.get(player).map(|&i| &self.stats[i])
    }

    pub fn players(&self) -> impl Iterator<Item = (&str, &PlayerStats)> {
        self.names.iter().map(String::as_str).zip(self.stats.iter())
    }

    pub fn events(&self) -> &[LoggedEvent] {
        &self.log
    }

    fn intern(&mut self, player: &str) -> PlayerId {
        if let Some(&i) = self.ids.get(player) {
            return i;
        }
        let i = self.names.len();
        self.ids.insert(player.to_string(), i);
        self.names.push(player.to_string());
        self.stats.push(PlayerStats::default());
        i
    }

    fn check_order(&mut self, hand_id: u64, seq: u32, street: Option<Street>) -> Result<()> {
        match &self.current {
            Some(h) if hand_id < h.hand_id => {
                return Err(Error::Contract(format!("hand {hand_id} arrives after hand {}", h.hand_id)));
            }
            Some(h) if hand_id == h.hand_id => {
                if seq <= h.last_seq {
                    return Err(Error::Contract(format!("hand {hand_id}: event {seq} out of order")));
                }
                if street.is_some_and(|s| s < h.street) {
                    return Err(Error::Contract(format!("hand {hand_id}: street went backwards")));
                }
            }
            _ => self.current = Some(HandState::new(hand_id)),
        }
        Ok(())
    }

    fn touch(&mut self, p: PlayerId) {
        let h = self.current.as_mut().expect("hand state");
        if push_once(&mut h.seen, p) {
            let s = &mut self.stats[p];
            s.hands += 1;
            s.vpip.n += 1;
            s.pfr.n += 1;
            s.showdown.n += 1;
        }
    }

    pub fn record_event(&mut self, event: ActionEvent) -> Result<()> {
        if !(event.amount >= 0.0 && event.pot_before >= 0.0) {
            return Err(Error::invalid("event amounts must be non-negative"));
        }
        if event.player.is_empty() || event.player.contains(['\t', '\n']) {
            return Err(Error::invalid("player ids must be non-empty without tabs or newlines"));
        }
        self.check_order(event.hand_id, event.seq, Some(event.street))?;
        let p = self.intern(&event.player);
        self.touch(p);
        let h = self.current.as_mut().expect("hand state");
        h.last_seq = event.seq;
        h.advance_street(event.street);
        let s = &mut self.stats[p];
        let aggressive = event.action.is_aggressive();

        if event.street == Street::Preflop {
            preflop(h, s, p, &event, aggressive);
        } else {
            postflop(h, s, p, &event, aggressive);
        }
        self.log.push(LoggedEvent::Action(event));
        Ok(())
    }

    pub fn record_showdown(&mut self, hand_id: u64, player: &str, seq: u32) -> Result<()> {
        self.check_order(hand_id, seq, None)?;
        let p = self.intern(player);
        self.touch(p);
        let h = self.current.as_mut().expect("hand state");
        h.last_seq = seq;
        if push_once(&mut h.showed, p) {
            self.stats[p].showdown.hits += 1;
        }
        self.log.push(LoggedEvent::Showdown {
            hand_id,
            player: player.to_string(),
            seq,
        });
        Ok(())
    }

    /// Rebuilds a store from a log, as if every event were recorded afresh.
    pub fn replay(events: &[LoggedEvent]) -> Result<ProfileStore> {
        let mut store = ProfileStore::new();
        for e in events {
            match e {
                LoggedEvent::Action(a) => store.record_event(a.clone())?,
                LoggedEvent::Showdown { hand_id, player, seq } => store.record_showdown(*hand_id, player, *seq)?,
            }
        }
        Ok(store)
    }

    pub fn format_log(&self) -> String {
        format_event_log(&self.log)
    }

    pub fn adjustments(&self) -> &RangeAdjustments {
        &self.adjustments
    }

    pub fn adjustments_mut(&mut self) -> &mut RangeAdjustments {
        &mut self.adjustments
    }

    pub fn showdown_refine(&mut self, player: &str, arch: Archetype, revealed: Hole, assigned: &ComboGrid) -> Refinement {
        self.adjustments.showdown_refine(player, arch, revealed, assigned)
    }

    pub fn snapshot(&self, overlay: &Overlay) -> Snapshot {
        Snapshot {
            version: SNAPSHOT_VERSION,
            players: self.names.iter().cloned().zip(self.stats.iter().cloned()).collect(),
            adjustments: self.adjustments.clone(),
            overlay: overlay.clone(),
        }
    }

    /// Writes `events.tsv` and `snapshot.json` into `dir`.
    pub fn save(&self, dir: &Path, overlay: &Overlay) -> Result<()> {
        fs::create_dir_all(dir)?;
        fs::write(dir.join(EVENTS_FILE), self.format_log())?;
        fs::write(dir.join(SNAPSHOT_FILE), serde_json::to_string_pretty(&self.snapshot(overlay))?)?;
        Ok(())
    }

    /// Rebuilds the store from the event log and restores learned state from
    /// the snapshot. Stats in the snapshot must match the recount.
    pub fn load(dir: &Path) -> Result<(ProfileStore, Overlay)> {
        let events = parse_event_log(&fs::read_to_string(dir.join(EVENTS_FILE))?)?;
        let snap: Snapshot = serde_json::from_str(&fs::read_to_string(dir.join(SNAPSHOT_FILE))?)?;
        if snap.version != SNAPSHOT_VERSION {
            return Err(Error::Config(format!("unsupported snapshot version {}", snap.version)));
        }
        let mut store = ProfileStore::replay(&events)?;
        let recounted: Vec<(String, PlayerStats)> = store.names.iter().cloned().zip(store.stats.iter().cloned()).collect();
        if recounted != snap.players {
            return Err(Error::Contract("snapshot stats disagree with the event log".into()));
        }
        store.adjustments = snap.adjustments;
        Ok((store, snap.overlay))
    }
}

pub const EVENTS_FILE: &str = "events.tsv";
pub const SNAPSHOT_FILE: &str = "snapshot.json";
pub const SNAPSHOT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Snapshot {
    pub version: u32,
    pub players: Vec<(String, PlayerStats)>,
    pub adjustments: RangeAdjustments,
    pub overlay: Overlay,
}

fn preflop(h: &mut HandState, s: &mut PlayerStats, p: PlayerId, e: &ActionEvent, aggressive: bool) {
    let voluntary = matches!(e.action, ActionKind::Call) || aggressive;
    if voluntary && push_once(&mut h.vpip, p) {
        s.vpip.hits += 1;
    }
    if aggressive && push_once(&mut h.pfr, p) {
        s.pfr.hits += 1;
    }

    if let Some(stealer) = h.steal_live {
        if p != stealer && e.position.is_blind() && push_once(&mut h.steal_answered, p) {
            s.fold_to_steal.record(e.action == ActionKind::Fold);
        }
        if p != stealer && e.action != ActionKind::Fold {
            h.steal_live = None;
        }
    } else if !h.voluntary_preflop && aggressive && matches!(e.position, Position::Co | Position::Btn | Position::Sb) {
        h.steal_live = Some(p);
    }
    if voluntary {
        h.voluntary_preflop = true;
    }
    if aggressive {
        h.cur_aggressor = Some(p);
    }
}

fn postflop(h: &mut HandState, s: &mut PlayerStats, p: PlayerId, e: &ActionEvent, aggressive: bool) {
    match e.action {
        ActionKind::Call => s.calls += 1,
        _ if aggressive => s.aggressive += 1,
        _ => {}
    }
    if !h.street_bet {
        if let Some(a) = h.prev_aggressor {
            if a == p {
                h.prev_aggressor_acted = true;
                h.cbet_live = aggressive;
            } else if !h.prev_aggressor_acted && push_once(&mut h.donk_checked, p) {
                s.donk.record(aggressive);
            }
        }
    } else {
        if h.cbet_live && Some(p) != h.prev_aggressor && push_once(&mut h.responded, p) {
            if let Some(stat) = s.fold_to_cbet_mut(e.street) {
                stat.record(e.action == ActionKind::Fold);
            }
        }
        if aggressive {
            h.cbet_live = false;
        }
        if Some(p) == h.prev_aggressor {
            h.prev_aggressor_acted = true;
        }
    }
    if aggressive {
        h.street_bet = true;
        h.cur_aggressor = Some(p);
    }
}

/// Tab-separated event log, one event per line after a version header.
pub fn format_event_log(events: &[LoggedEvent]) -> String {
    let mut out = String::from(EVENT_LOG_HEADER);
    out.push('\n');
    for e in events {
        match e {
            LoggedEvent::Action(a) => {
                let _ = writeln!(
                    out,
                    "A\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
                    a.hand_id, a.seq, a.player, a.street, a.action, a.amount, a.pot_before, a.position
                );
            }
            LoggedEvent::Showdown { hand_id, player, seq } => {
                let _ = writeln!(out, "S\t{hand_id}\t{seq}\t{player}");
            }
        }
    }
    out
}

pub fn parse_event_log(text: &str) -> Result<Vec<LoggedEvent>> {
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, h)) if h.trim() == EVENT_LOG_HEADER => {}
        _ => return Err(Error::parse(1, "missing event log header")),
    }
    let mut out = Vec::new();
    for (i, line) in lines {
        let n = i + 1;
        if line.trim().is_empty() {
            continue;
        }
        let f: Vec<&str> = line.split('\t').collect();
        let num = |s: &str| s.parse::<u64>().map_err(|_| Error::parse(n, format!("bad number {s:?}")));
        let real = |s: &str| s.parse::<f64>().map_err(|_| Error::parse(n, format!("bad amount {s:?}")));
        let bad = |e: Error| Error::parse(n, e.to_string());
        let event = match f.as_slice() {
            ["A", hand, seq, player, street, action, amount, pot, pos] => LoggedEvent::Action(ActionEvent {
                hand_id: num(hand)?,
                seq: num(seq)? as u32,
                player: player.to_string(),
                street: street.parse().map_err(bad)?,
                action: action.parse().map_err(bad)?,
                amount: real(amount)?,
                pot_before: real(pot)?,
                position: pos.parse().map_err(bad)?,
            }),
            ["S", hand, seq, player] => LoggedEvent::Showdown {
                hand_id: num(hand)?,
                seq: num(seq)? as u32,
                player: player.to_string(),
            },
            _ => return Err(Error::parse(n, "unrecognised event line")),
        };
        out.push(event);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ev(hand: u64, seq: u32, player: &str, street: Street, action: ActionKind, position: Position) -> ActionEvent {
        ActionEvent {
            hand_id: hand,
            player: player.to_string(),
            street,
            action,
            amount: if action == ActionKind::Fold || action == ActionKind::Check {
                0.0
            } else {
                1.0
            },
            pot_before: 1.5,
            position,
            seq,
        }
    }

    #[test]
    fn single_call_is_full_vpip() {
        let mut s = ProfileStore::new();
        s.record_event(ev(1, 1, "v", Street::Preflop, ActionKind::Call, Position::Co)).unwrap();
        assert_eq!(s.stats("v").unwrap().vpip_rate(), 1.0);
    }

    #[test]
    fn constant_folder_has_zero_vpip() {
        let mut s = ProfileStore::new();
        for h in 1..=50 {
            s.record_event(ev(h, 1, "v", Street::Preflop, ActionKind::Fold, Position::Utg)).unwrap();
        }
        let st = s.stats("v").unwrap();
        assert_eq!(st.hands, 50);
        assert_eq!(st.vpip_rate(), 0.0);
    }

    #[test]
    fn out_of_order_events_are_rejected() {
        let mut s = ProfileStore::new();
        s.record_event(ev(2, 5, "v", Street::Flop, ActionKind::Check, Position::Bb)).unwrap();
        assert!(matches!(
            s.record_event(ev(2, 4, "v", Street::Flop, ActionKind::Check, Position::Bb)),
            Err(Error::Contract(_))
        ));
        assert!(s.record_event(ev(2, 6, "v", Street::Preflop, ActionKind::Call, Position::Bb)).is_err());
        assert!(s.record_event(ev(1, 1, "v", Street::Preflop, ActionKind::Call, Position::Bb)).is_err());
        let mut neg = ev(3, 1, "v", Street::Preflop, ActionKind::Call, Position::Bb);
        neg.amount = -1.0;
        assert!(s.record_event(neg).is_err());
    }

    #[test]
    fn cbet_and_donk_are_classified() {
        use ActionKind::*;
        use Street::*;
        let mut s = ProfileStore::new();
        let events = [
            ev(1, 1, "a", Preflop, Raise, Position::Btn),
            ev(1, 2, "b", Preflop, Call, Position::Bb),
            ev(1, 3, "b", Flop, Check, Position::Bb),
            ev(1, 4, "a", Flop, Bet, Position::Btn),
            ev(1, 5, "b", Flop, Fold, Position::Bb),
            ev(2, 1, "a", Preflop, Raise, Position::Btn),
            ev(2, 2, "b", Preflop, Call, Position::Bb),
            ev(2, 3, "b", Flop, Bet, Position::Bb),
            ev(2, 4, "a", Flop, Call, Position::Btn),
        ];
        for e in events {
            s.record_event(e).unwrap();
        }
        let b = s.stats("b").unwrap();
        assert_eq!(b.fold_to_cbet(Flop), super::super::Stat { hits: 1, n: 1 });
        assert_eq!(b.donk, super::super::Stat { hits: 1, n: 2 });
        assert_eq!(b.fold_to_steal, super::super::Stat { hits: 0, n: 2 });
        let a = s.stats("a").unwrap();
        assert_eq!(a.pfr_rate(), 1.0);
        assert_eq!((a.aggressive, a.calls), (1, 1));
    }

    #[test]
    fn log_round_trips() {
        let mut s = ProfileStore::new();
        s.record_event(ev(1, 1, "p 1", Street::Preflop, ActionKind::Raise, Position::Sb)).unwrap();
        s.record_showdown(1, "p 1", 2).unwrap();
        let text = s.format_log();
        assert_eq!(parse_event_log(&text).unwrap(), s.events());
        assert!(matches!(parse_event_log("A\t1"), Err(Error::Parse { line: 1, .. })));
        let bad = format!("{EVENT_LOG_HEADER}\nA\t1\t1\tp\tflop\tshove\t1\t1\tbtn\n");
        assert!(matches!(parse_event_log(&bad), Err(Error::Parse { line: 2, .. })));
    }
}
