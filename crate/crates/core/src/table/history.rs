//! Versioned hand-history text format.
//!
//! ```text
//! #rangeread-history 1
//! HAND <id> table=<t> button=<seat> sb=<chips> bb=<chips> rake=<bp>:<cap bb>:<0|1>
//! SEAT <seat> <player> <label> <stack>
//! DEAL <seat> <hole>
//! RUNOUT <five cards>
//! ACT <seq> <seat> <street> <kind> <added> <to> <pot before> <to call> <0|1 aggressive> <think ms>
//! BOARD <revealed cards>
//! SHOW <seat> <hole>
//! ABORT <reason>
//! RESULT rake=<chips> net=<n0>,<n1>,...
//! END
//! ```

use std::fmt::Write as _;

use crate::action::{ActionKind, Street};
use crate::cards::{parse_cards, Card, Hole};
use crate::error::{Error, Result};

use super::rake::RakeModel;
use super::state::{Action, ActionRecord, Deal, GameState};
use super::Chips;

pub const HISTORY_HEADER: &str = "#rangeread-history 1";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeatInfo {
    pub player: String,
    /// Archetype name for bots, `hero` for the hero.
    pub label: String,
    pub stack: Chips,
}

#[derive(Debug, Clone, PartialEq)]
pub struct HandRecord {
    pub hand_id: u64,
    pub table: u32,
    pub button: usize,
    pub sb: Chips,
    pub bb: Chips,
    pub rake_model: RakeModel,
    pub seats: Vec<SeatInfo>,
    pub holes: Vec<Hole>,
    pub runout: [Card; 5],
    pub actions: Vec<ActionRecord>,
    pub board: Vec<Card>,
    pub shown: Vec<usize>,
    pub aborted: Option<String>,
    pub rake: Chips,
    pub net: Vec<Chips>,
}

impl HandRecord {
    /// Record of a finished (or aborted) hand. Aborted hands refund every
    /// commitment, so all nets are zero.
    pub fn from_state(g: &GameState, table: u32, labels: &[String], aborted: Option<String>) -> HandRecord {
        let (rake, net, shown) = match (g.settlement(), &aborted) {
            (Some(s), None) => (s.rake, s.net.clone(), s.shown.clone()),
            _ => (0, vec![0; g.num_seats()], Vec::new()),
        };
        HandRecord {
            hand_id: g.hand_id,
            table,
            button: g.button,
            sb: g.sb,
            bb: g.bb,
            rake_model: g.rake_model,
            seats: g
                .seats
                .iter()
                .zip(labels)
                .map(|(s, l)| SeatInfo {
                    player: s.player.clone(),
                    label: l.clone(),
                    stack: s.start_stack,
                })
                .collect(),
            holes: g.deal().holes.clone(),
            runout: g.deal().board,
            actions: g.actions.clone(),
            board: g.board_cards().to_vec(),
            shown,
            aborted,
            rake,
            net,
        }
    }

    pub fn seat_of(&self, player: &str) -> Option<usize> {
        self.seats.iter().position(|s| s.player == player)
    }

    /// Fresh game state for this hand, before any action.
    pub fn initial_state(&self) -> Result<GameState> {
        let players: Vec<(String, Chips)> = self.seats.iter().map(|s| (s.player.clone(), s.stack)).collect();
        GameState::new(
            self.hand_id,
            &players,
            self.button,
            self.sb,
            self.bb,
            Deal::new(self.holes.clone(), self.runout)?,
            self.rake_model,
        )
    }

    /// Feeds the recorded actions through the state machine and checks that
    /// every transition and the outcome match the record.
    pub fn replay(&self) -> Result<GameState> {
        let mut g = self.initial_state()?;
        for rec in &self.actions {
            let action = match rec.kind {
                ActionKind::Bet | ActionKind::Raise => Action { kind: rec.kind, to: rec.to },
                k => Action { kind: k, to: 0 },
            };
            let got = g.apply(action, rec.think_ms)?;
            if got != *rec {
                return Err(Error::Contract(format!(
                    "hand {}: replayed action {} differs from the record",
                    self.hand_id, rec.seq
                )));
            }
        }
        let again = HandRecord::from_state(&g, self.table, &self.labels(), self.aborted.clone());
        if again != *self {
            return Err(Error::Contract(format!("hand {}: replay outcome differs", self.hand_id)));
        }
        Ok(g)
    }

    pub fn labels(&self) -> Vec<String> {
        self.seats.iter().map(|s| s.label.clone()).collect()
    }
}

fn cards_str(cards: &[Card]) -> String {
    cards.iter().map(|c| c.to_string()).collect()
}

pub fn write_record(out: &mut String, r: &HandRecord) {
    let m = r.rake_model;
    let _ = writeln!(
        out,
        "HAND {} table={} button={} sb={} bb={} rake={}:{}:{}",
        r.hand_id,
        r.table,
        r.button,
        r.sb,
        r.bb,
        m.rate_bp,
        m.cap_bb,
        u8::from(m.no_flop_no_drop)
    );
    for (i, s) in r.seats.iter().enumerate() {
        let _ = writeln!(out, "SEAT {i} {} {} {}", s.player, s.label, s.stack);
    }
    for (i, h) in r.holes.iter().enumerate() {
        let _ = writeln!(out, "DEAL {i} {h}");
    }
    let _ = writeln!(out, "RUNOUT {}", cards_str(&r.runout));
    for a in &r.actions {
        let _ = writeln!(
            out,
            "ACT {} {} {} {} {} {} {} {} {} {}",
            a.seq,
            a.seat,
            a.street,
            a.kind,
            a.added,
            a.to,
            a.pot_before,
            a.to_call,
            u8::from(a.aggressive),
            a.think_ms
        );
    }
    let _ = writeln!(out, "BOARD {}", cards_str(&r.board));
    for &s in &r.shown {
        let _ = writeln!(out, "SHOW {s} {}", r.holes[s]);
    }
    if let Some(reason) = &r.aborted {
        let _ = writeln!(out, "ABORT {reason}");
    }
    let nets: Vec<String> = r.net.iter().map(|n| n.to_string()).collect();
    let _ = writeln!(out, "RESULT rake={} net={}", r.rake, nets.join(","));
    out.push_str("END\n");
}

pub fn format_history(records: &[HandRecord]) -> String {
    let mut out = String::from(HISTORY_HEADER);
    out.push('\n');
    for r in records {
        write_record(&mut out, r);
    }
    out
}

struct Lines<'a> {
    inner: std::iter::Peekable<std::iter::Enumerate<std::str::Lines<'a>>>,
}

impl<'a> Lines<'a> {
    fn next(&mut self) -> Option<(usize, &'a str)> {
        self.inner.next().map(|(i, l)| (i + 1, l))
    }

    fn peek_tag(&mut self) -> Option<&'a str> {
        self.inner.peek().map(|(_, l)| l.split(' ').next().unwrap_or(""))
    }
}

fn num<T: std::str::FromStr>(line: usize, s: &str) -> Result<T> {
    s.parse().map_err(|_| Error::parse(line, format!("bad number {s:?}")))
}

fn keyed<'a>(line: usize, field: &'a str, key: &str) -> Result<&'a str> {
    field
        .strip_prefix(key)
        .and_then(|f| f.strip_prefix('='))
        .ok_or_else(|| Error::parse(line, format!("expected {key}=")))
}

fn expect_tag<'a>(lines: &mut Lines<'a>, tag: &str) -> Result<(usize, Vec<&'a str>)> {
    let (n, l) = lines.next().ok_or_else(|| Error::parse(0, format!("unexpected end of file, wanted {tag}")))?;
    let f: Vec<&str> = l.split(' ').collect();
    if f[0] != tag {
        return Err(Error::parse(n, format!("expected {tag}, found {:?}", f[0])));
    }
    Ok((n, f))
}

fn parse_record(lines: &mut Lines<'_>) -> Result<HandRecord> {
    let (n, f) = expect_tag(lines, "HAND")?;
    if f.len() != 7 {
        return Err(Error::parse(n, "HAND needs 6 fields"));
    }
    let rake: Vec<&str> = keyed(n, f[6], "rake")?.split(':').collect();
    let [bp, cap, nfnd] = rake.as_slice() else {
        return Err(Error::parse(n, "rake=<bp>:<cap>:<flag>"));
    };
    let mut r = HandRecord {
        hand_id: num(n, f[1])?,
        table: num(n, keyed(n, f[2], "table")?)?,
        button: num(n, keyed(n, f[3], "button")?)?,
        sb: num(n, keyed(n, f[4], "sb")?)?,
        bb: num(n, keyed(n, f[5], "bb")?)?,
        rake_model: RakeModel {
            rate_bp: num(n, bp)?,
            cap_bb: num(n, cap)?,
            no_flop_no_drop: *nfnd == "1",
        },
        seats: Vec::new(),
        holes: Vec::new(),
        runout: [Card::from_index(0).expect("card"); 5],
        actions: Vec::new(),
        board: Vec::new(),
        shown: Vec::new(),
        aborted: None,
        rake: 0,
        net: Vec::new(),
    };
    while lines.peek_tag() == Some("SEAT") {
        let (n, f) = expect_tag(lines, "SEAT")?;
        if f.len() != 5 || num::<usize>(n, f[1])? != r.seats.len() {
            return Err(Error::parse(n, "malformed SEAT"));
        }
        r.seats.push(SeatInfo {
            player: f[2].to_string(),
            label: f[3].to_string(),
            stack: num(n, f[4])?,
        });
    }
    while lines.peek_tag() == Some("DEAL") {
        let (n, f) = expect_tag(lines, "DEAL")?;
        if f.len() != 3 || num::<usize>(n, f[1])? != r.holes.len() {
            return Err(Error::parse(n, "malformed DEAL"));
        }
        r.holes.push(f[2].parse().map_err(|e: Error| Error::parse(n, e.to_string()))?);
    }
    let (n, f) = expect_tag(lines, "RUNOUT")?;
    let runout = parse_cards(f.get(1).copied().unwrap_or("")).map_err(|e| Error::parse(n, e.to_string()))?;
    r.runout = runout.try_into().map_err(|_| Error::parse(n, "RUNOUT needs five cards"))?;
    while lines.peek_tag() == Some("ACT") {
        let (n, f) = expect_tag(lines, "ACT")?;
        if f.len() != 11 {
            return Err(Error::parse(n, "ACT needs 10 fields"));
        }
        let bad = |e: Error| Error::parse(n, e.to_string());
        r.actions.push(ActionRecord {
            seq: num(n, f[1])?,
            seat: num(n, f[2])?,
            street: f[3].parse::<Street>().map_err(bad)?,
            kind: f[4].parse::<ActionKind>().map_err(bad)?,
            added: num(n, f[5])?,
            to: num(n, f[6])?,
            pot_before: num(n, f[7])?,
            to_call: num(n, f[8])?,
            aggressive: num::<u8>(n, f[9])? == 1,
            think_ms: num(n, f[10])?,
        });
    }
    let (n, f) = expect_tag(lines, "BOARD")?;
    r.board = parse_cards(f.get(1).copied().unwrap_or("")).map_err(|e| Error::parse(n, e.to_string()))?;
    while lines.peek_tag() == Some("SHOW") {
        let (n, f) = expect_tag(lines, "SHOW")?;
        if f.len() != 3 {
            return Err(Error::parse(n, "malformed SHOW"));
        }
        let seat: usize = num(n, f[1])?;
        let hole: Hole = f[2].parse().map_err(|e: Error| Error::parse(n, e.to_string()))?;
        if r.holes.get(seat) != Some(&hole) {
            return Err(Error::parse(n, "shown cards differ from the deal"));
        }
        r.shown.push(seat);
    }
    if lines.peek_tag() == Some("ABORT") {
        let (_, l) = lines.next().expect("peeked");
        r.aborted = Some(l["ABORT ".len().min(l.len())..].to_string());
    }
    let (n, f) = expect_tag(lines, "RESULT")?;
    if f.len() != 3 {
        return Err(Error::parse(n, "RESULT needs rake= and net="));
    }
    r.rake = num(n, keyed(n, f[1], "rake")?)?;
    r.net = keyed(n, f[2], "net")?.split(',').map(|v| num(n, v)).collect::<Result<_>>()?;
    if r.net.len() != r.seats.len() || r.holes.len() != r.seats.len() {
        return Err(Error::parse(n, "seat, deal and result counts differ"));
    }
    expect_tag(lines, "END")?;
    Ok(r)
}

pub fn parse_history(text: &str) -> Result<Vec<HandRecord>> {
    let mut lines = Lines {
        inner: text.lines().enumerate().peekable(),
    };
    match lines.next() {
        Some((_, h)) if h == HISTORY_HEADER => {}
        Some((n, _)) => return Err(Error::parse(n, "missing history header")),
        None => return Err(Error::parse(1, "empty history file")),
    }
    let mut out = Vec::new();
    while let Some(tag) = lines.peek_tag() {
        if tag.is_empty() {
            lines.next();
            continue;
        }
        out.push(parse_record(&mut lines)?);
    }
    Ok(out)
}
