//! Scripted hands: a fixed deal, labelled seats and a full action script,
//! replayed through the range reader with per-step snapshots and checks.
//!
//! File format, one directive per line, `#` starts a comment:
//!
//! ```text
//! name   Hand 6
//! blinds 50 100
//! button 3
//! seed   7
//! seat   0 hero hero 10000 9h9s
//! seat   5 caekus14 whale 10000 4d3d
//! board  9d5s2c2dKs
//! act    0 raise 300
//! expect rets 5 RET11 RET18 RET33 RET11 RET73
//! expect contains 5 4d3d
//! expect chib-max turn 5 0.05
//! expect winner 0
//! expect monotone 5
//! ```

use std::fmt::{self, Write as _};
use std::str::FromStr;

use crate::action::Street;
use crate::brain::{HandReader, Hero};
use crate::cards::{Board, Card, DealRng, Hole};
use crate::error::{Error, Result};
use crate::profile::Archetype;
use crate::range::{uniform_live, Combo, ComboGrid, DeadCards};
use crate::ret::{chib, rs_distribution, RsDistribution};
use crate::table::{Action, Chips, Deal, GameState, HandRecord, RakeModel};

#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioSeat {
    pub player: String,
    /// `None` for the hero.
    pub archetype: Option<Archetype>,
    pub stack: Chips,
    pub hole: Hole,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Expect {
    /// Templates applied to a seat after the flop, in order.
    Rets { seat: usize, ids: Vec<String> },
    /// The seat's final grid gives the combo positive weight.
    Contains { seat: usize, combo: Combo },
    /// Hero's chance of being beaten by the seat at the end of a street.
    ChibMax { street: Street, seat: usize, max: f64 },
    /// The seat ends the hand with a profit.
    Winner { seat: usize },
    /// Support of the seat's grid never grows from street to street.
    Monotone { seat: usize },
}

impl fmt::Display for Expect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expect::Rets { seat, ids } => write!(f, "rets {seat} {}", ids.join(" ")),
            Expect::Contains { seat, combo } => write!(f, "contains {seat} {combo}"),
            Expect::ChibMax { street, seat, max } => write!(f, "chib-max {street} {seat} {max}"),
            Expect::Winner { seat } => write!(f, "winner {seat}"),
            Expect::Monotone { seat } => write!(f, "monotone {seat}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub name: String,
    pub sb: Chips,
    pub bb: Chips,
    pub button: usize,
    pub seed: u64,
    pub seats: Vec<ScenarioSeat>,
    pub board: [Card; 5],
    pub actions: Vec<(usize, Action)>,
    pub expects: Vec<Expect>,
}

fn num<T: FromStr>(line: usize, s: Option<&str>, what: &str) -> Result<T> {
    s.and_then(|v| v.parse().ok()).ok_or_else(|| Error::parse(line, format!("expected {what}")))
}

fn street_of(line: usize, s: Option<&str>) -> Result<Street> {
    match s {
        Some("flop") => Ok(Street::Flop),
        Some("turn") => Ok(Street::Turn),
        Some("river") => Ok(Street::River),
        Some("preflop") => Ok(Street::Preflop),
        _ => Err(Error::parse(line, "expected a street")),
    }
}

impl Scenario {
    pub fn hero_seat(&self) -> Option<usize> {
        self.seats.iter().position(|s| s.archetype.is_none())
    }

    pub fn parse(text: &str) -> Result<Scenario> {
        let mut name = String::new();
        let (mut sb, mut bb, mut button, mut seed) = (50, 100, 0, 0);
        let mut seats: Vec<Option<ScenarioSeat>> = Vec::new();
        let mut board = None;
        let mut actions = Vec::new();
        let mut expects = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let body = raw.split('#').next().unwrap_or("").trim();
            if body.is_empty() {
                continue;
            }
            let mut w = body.split_whitespace();
            let key = w.next().unwrap_or_default();
            match key {
                "name" => name = w.collect::<Vec<_>>().join(" "),
                "blinds" => {
                    sb = num(line, w.next(), "small blind")?;
                    bb = num(line, w.next(), "big blind")?;
                }
                "button" => button = num(line, w.next(), "button seat")?,
                "seed" => seed = num(line, w.next(), "seed")?,
                "seat" => {
                    let idx: usize = num(line, w.next(), "seat index")?;
                    let player = w.next().ok_or_else(|| Error::parse(line, "expected player name"))?.to_string();
                    let archetype = match w.next() {
                        Some("hero") => None,
                        Some(a) => Some(a.parse::<Archetype>().map_err(|_| Error::parse(line, format!("unknown archetype {a}")))?),
                        None => return Err(Error::parse(line, "expected archetype or hero")),
                    };
                    let stack = num(line, w.next(), "stack")?;
                    let hole: Hole = num(line, w.next(), "hole cards")?;
                    if seats.len() <= idx {
                        seats.resize(idx + 1, None);
                    }
                    seats[idx] = Some(ScenarioSeat {
                        player,
                        archetype,
                        stack,
                        hole,
                    });
                }
                "board" => {
                    let b: Board = num(line, w.next(), "board")?;
                    let cards: [Card; 5] = b.cards().try_into().map_err(|_| Error::parse(line, "board needs five cards"))?;
                    board = Some(cards);
                }
                "act" => {
                    let seat = num(line, w.next(), "seat")?;
                    let action = match w.next() {
                        Some("fold") => Action::fold(),
                        Some("check") => Action::check(),
                        Some("call") => Action::call(),
                        Some("allin") => Action::all_in(),
                        Some("bet") => Action::bet(num(line, w.next(), "bet amount")?),
                        Some("raise") => Action::raise(num(line, w.next(), "raise total")?),
                        _ => return Err(Error::parse(line, "expected fold, check, call, bet, raise or allin")),
                    };
                    actions.push((seat, action));
                }
                "expect" => {
                    let kind = w.next();
                    let seat = num(line, w.next().filter(|_| kind != Some("chib-max")), "seat");
                    let e = match kind {
                        Some("rets") => Expect::Rets {
                            seat: seat?,
                            ids: w.map(str::to_string).collect(),
                        },
                        Some("contains") => Expect::Contains {
                            seat: seat?,
                            combo: num(line, w.next(), "combo")?,
                        },
                        Some("chib-max") => Expect::ChibMax {
                            street: street_of(line, body.split_whitespace().nth(2))?,
                            seat: num(line, body.split_whitespace().nth(3), "seat")?,
                            max: num(line, body.split_whitespace().nth(4), "bound")?,
                        },
                        Some("winner") => Expect::Winner { seat: seat? },
                        Some("monotone") => Expect::Monotone { seat: seat? },
                        _ => return Err(Error::parse(line, "unknown expectation")),
                    };
                    expects.push(e);
                }
                other => return Err(Error::parse(line, format!("unknown directive {other}"))),
            }
        }
        let seats: Vec<ScenarioSeat> = seats
            .into_iter()
            .enumerate()
            .map(|(i, s)| s.ok_or_else(|| Error::invalid(format!("seat {i} missing"))))
            .collect::<Result<_>>()?;
        let board = board.ok_or_else(|| Error::invalid("scenario has no board"))?;
        let s = Scenario {
            name,
            sb,
            bb,
            button,
            seed,
            seats,
            board,
            actions,
            expects,
        };
        if s.seats.iter().filter(|x| x.archetype.is_none()).count() != 1 {
            return Err(Error::invalid("scenario needs exactly one hero seat"));
        }
        s.initial_state()?;
        Ok(s)
    }

    pub fn initial_state(&self) -> Result<GameState> {
        let players: Vec<(String, Chips)> = self.seats.iter().map(|s| (s.player.clone(), s.stack)).collect();
        let holes = self.seats.iter().map(|s| s.hole).collect();
        GameState::new(1, &players, self.button, self.sb, self.bb, Deal::new(holes, self.board)?, RakeModel::none())
    }

    pub fn archetypes(&self) -> Vec<Archetype> {
        self.seats.iter().map(|s| s.archetype.unwrap_or(Archetype::TightReg)).collect()
    }
}

/// One reader step with the state of the stepped seat's grid.
#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioStep {
    pub seat: usize,
    pub street: Street,
    /// Sequence number of the triggering action; `None` at a new street.
    pub seq: Option<u32>,
    pub ret: String,
    pub grid: ComboGrid,
    pub distribution: RsDistribution,
    /// Hero's chance of being beaten by this grid.
    pub chib: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub expect: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Debug, Clone)]
pub struct ScenarioRun {
    pub record: HandRecord,
    pub preflop: Vec<Option<ComboGrid>>,
    pub steps: Vec<ScenarioStep>,
    /// What the hero's modules would have done at each of its turns.
    pub hero_trace: Vec<String>,
    pub checks: Vec<Check>,
}

impl ScenarioRun {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn steps_for(&self, seat: usize) -> impl Iterator<Item = &ScenarioStep> {
        self.steps.iter().filter(move |s| s.seat == seat)
    }

    /// Grid held for `seat` at the end of the hand.
    pub fn final_grid(&self, seat: usize) -> Option<&ComboGrid> {
        self.steps_for(seat).last().map(|s| &s.grid).or(self.preflop[seat].as_ref())
    }

    /// Grid held for `seat` at the end of `street`.
    pub fn grid_at(&self, seat: usize, street: Street) -> Option<&ComboGrid> {
        self.steps_for(seat)
            .filter(|s| s.street <= street)
            .last()
            .map(|s| &s.grid)
            .or(self.preflop.get(seat)?.as_ref())
    }

    /// Support size at the end of each street the seat was read on.
    pub fn support_by_street(&self, seat: usize) -> Vec<(Street, usize)> {
        let mut out: Vec<(Street, usize)> = Vec::new();
        if let Some(g) = &self.preflop[seat] {
            out.push((Street::Preflop, g.support_size()));
        }
        for s in self.steps_for(seat) {
            match out.last_mut() {
                Some((st, n)) if *st == s.street => *n = s.grid.support_size(),
                _ => out.push((s.street, s.grid.support_size())),
            }
        }
        out
    }

    /// Human-readable report of every step and check.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for (seat, g) in self.preflop.iter().enumerate() {
            if let Some(g) = g {
                writeln!(s, "preflop seat {seat} {} support {}", self.record.seats[seat].player, g.support_size()).unwrap();
            }
        }
        for st in &self.steps {
            let at = st.seq.map_or("street".to_string(), |q| format!("action {q}"));
            writeln!(
                s,
                "{} seat {} {} {} support {} chib {:.4} rs {:?}",
                st.street,
                st.seat,
                at,
                st.ret,
                st.grid.support_size(),
                st.chib,
                st.distribution
            )
            .unwrap();
        }
        for line in &self.hero_trace {
            writeln!(s, "{line}").unwrap();
        }
        for c in &self.checks {
            writeln!(s, "{} {}: {}", if c.pass { "PASS" } else { "FAIL" }, c.expect, c.detail).unwrap();
        }
        s
    }
}

/// Plays the script, reading every villain from the hero's seat.
pub fn run_scenario(scn: &Scenario, hero: &Hero, trace: bool) -> Result<ScenarioRun> {
    let hero_seat = scn.hero_seat().ok_or_else(|| Error::invalid("no hero seat"))?;
    let n = scn.seats.len();
    let archetypes = scn.archetypes();
    let players: Vec<String> = scn.seats.iter().map(|s| s.player.clone()).collect();
    let tracked: Vec<bool> = (0..n).map(|s| s != hero_seat).collect();
    let hero_hole = scn.seats[hero_seat].hole;
    let mut reader = HandReader::new(hero.models(), Some(hero_hole), archetypes.clone(), players, tracked).with_snapshots();
    let mut g = scn.initial_state()?;
    let mut rng = DealRng::new(scn.seed, 0);
    let mut hand = hero.begin_hand(&g, hero_seat, Some(&archetypes), &mut rng);
    for &(seat, action) in &scn.actions {
        if g.to_act != Some(seat) {
            return Err(Error::invalid(format!("script has seat {seat} acting out of turn")));
        }
        if trace && seat == hero_seat {
            hand.decide(&g, &mut rng, true)?;
        }
        g.apply(action, 0)?;
        reader.sync(&g)?;
    }
    let labels: Vec<String> = scn
        .seats
        .iter()
        .map(|s| s.archetype.map_or("hero".to_string(), |a| a.name().to_string()))
        .collect();
    let record = HandRecord::from_state(&g, 0, &labels, None);
    let mut steps = Vec::new();
    for st in reader.steps() {
        let grid = st.grid.clone().expect("snapshots enabled");
        let board = Board::new(&scn.board[..st.street.board_len()])?;
        let view = hero.rsm.view(&board)?;
        steps.push(ScenarioStep {
            seat: st.seat,
            street: st.street,
            seq: st.seq,
            ret: st.ret.clone(),
            distribution: rs_distribution(&view, &grid),
            chib: chib(hero_hole, &grid, &board).unwrap_or(f64::NAN),
            grid,
        });
    }
    let mut run = ScenarioRun {
        record,
        preflop: (0..n)
            .map(|s| reader.preflop_grid(s).cloned().or_else(|| unread_prior(&g, s, hero_seat, hero_hole)))
            .collect(),
        steps,
        hero_trace: std::mem::take(&mut hand.trace),
        checks: Vec::new(),
    };
    run.checks = scn.expects.iter().map(|e| check(&run, e)).collect();
    Ok(run)
}

/// A seat yet to act pre-flop could hold any combo the hero cannot see.
fn unread_prior(g: &GameState, seat: usize, hero_seat: usize, hero_hole: Hole) -> Option<ComboGrid> {
    let acted = g.actions.iter().any(|a| a.seat == seat);
    (seat != hero_seat && !acted).then(|| uniform_live(DeadCards::from_set(hero_hole.set())))
}

fn check(run: &ScenarioRun, e: &Expect) -> Check {
    let (pass, detail) = match e {
        Expect::Rets { seat, ids } => {
            let got: Vec<String> = run.steps_for(*seat).map(|s| s.ret.clone()).collect();
            (&got == ids, format!("got {}", got.join(" ")))
        }
        Expect::Contains { seat, combo } => {
            let w = run.final_grid(*seat).map_or(0.0, |g| g.weight(*combo));
            (w > 0.0, format!("weight {w:.6}"))
        }
        Expect::ChibMax { street, seat, max } => match run.steps_for(*seat).filter(|s| s.street == *street).last() {
            Some(s) => (s.chib <= *max, format!("chib {:.4}", s.chib)),
            None => (false, "seat not read on that street".to_string()),
        },
        Expect::Winner { seat } => {
            let net = run.record.net[*seat];
            (net > 0, format!("net {net}"))
        }
        Expect::Monotone { seat } => {
            let sizes = run.support_by_street(*seat);
            let ok = sizes.windows(2).all(|w| w[1].1 <= w[0].1);
            let text: Vec<String> = sizes.iter().map(|(st, n)| format!("{st}:{n}")).collect();
            (ok, text.join(" "))
        }
    };
    Check {
        expect: e.to_string(),
        pass,
        detail,
    }
}

/// The shipped Hand 6 script.
pub const HAND6: &str = include_str!("../../data/hand6.scn");

#[cfg(test)]
mod tests {
    use super::*;
    use crate::brain::HeroConfig;
    use crate::rsm::RsCategory;

    fn hand6() -> ScenarioRun {
        let scn = Scenario::parse(HAND6).unwrap();
        run_scenario(&scn, &Hero::new(HeroConfig::default()), true).unwrap()
    }

    #[test]
    fn hand6_checks_pass() {
        let run = hand6();
        for c in &run.checks {
            assert!(c.pass, "{} {}", c.expect, c.detail);
        }
        assert!(!run.hero_trace.is_empty());
    }

    #[test]
    fn hand6_flop_baselines() {
        let run = hand6();
        let flop_flat = |seat| run.steps_for(seat).find(|s| s.street == Street::Flop && s.seq.is_none()).unwrap().distribution;
        let whale = flop_flat(5);
        let medreg = flop_flat(4);
        assert_eq!(medreg.get(RsCategory::NIENTE), 0.0);
        assert!(medreg.get(RsCategory::NUTS) > 3.0 * whale.get(RsCategory::NUTS));
    }

    #[test]
    fn no_actions_leaves_preflop_only() {
        let text: String = HAND6
            .lines()
            .filter(|l| !l.starts_with("act") && !l.starts_with("expect"))
            .collect::<Vec<_>>()
            .join("\n");
        let scn = Scenario::parse(&text).unwrap();
        assert!(scn.actions.is_empty());
        let run = run_scenario(&scn, &Hero::new(HeroConfig::default()), false).unwrap();
        assert!(run.steps.is_empty());
        for (s, g) in run.preflop.iter().enumerate() {
            assert_eq!(g.as_ref().map(|g| g.support_size()), (s != 0).then_some(1225));
        }
    }

    #[test]
    fn parse_errors_carry_line() {
        let err = Scenario::parse("name x\nseat 0 a Bogus 100 AhKh\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
    }
}
