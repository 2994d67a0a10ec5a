//! Selection of the template for an observed action. Rules are tried in
//! file order and the first match wins; `*` matches anything.

use std::fmt;
use std::str::FromStr;

use crate::action::{ActionKind, Position, Street};
use crate::error::{Error, Result};
use crate::profile::Archetype;

pub const DEFAULT_DISPATCH: &str = include_str!("../../data/ret_dispatch.txt");

/// How the actor's action relates to the betting so far.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ActorRole {
    /// Bet or raise by the previous street's aggressor, or a first bet.
    Lead,
    /// Bet into the previous street's aggressor before they act.
    Donk,
    FacingBet,
    /// Call or re-raise after at least one raise this street.
    FacingRaise,
    Passive,
}

impl ActorRole {
    const ALL: [ActorRole; 5] = [
        ActorRole::Lead,
        ActorRole::Donk,
        ActorRole::FacingBet,
        ActorRole::FacingRaise,
        ActorRole::Passive,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ActorRole::Lead => "lead",
            ActorRole::Donk => "donk",
            ActorRole::FacingBet => "facing-bet",
            ActorRole::FacingRaise => "facing-raise",
            ActorRole::Passive => "passive",
        }
    }
}

impl fmt::Display for ActorRole {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ActorRole {
    type Err = Error;

    fn from_str(s: &str) -> Result<ActorRole> {
        ActorRole::ALL
            .into_iter()
            .find(|r| r.name() == s)
            .ok_or_else(|| Error::invalid(format!("unknown role {s:?}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RetKey {
    pub street: Street,
    pub archetype: Archetype,
    pub action: ActionKind,
    pub role: ActorRole,
    pub position: Position,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DispatchRule {
    pub street: Option<Street>,
    pub archetype: Option<Archetype>,
    pub action: Option<ActionKind>,
    pub role: Option<ActorRole>,
    pub position: Option<Position>,
    pub ret: String,
}

impl DispatchRule {
    pub fn matches(&self, k: &RetKey) -> bool {
        self.street.is_none_or(|s| s == k.street)
            && self.archetype.is_none_or(|a| a == k.archetype)
            && self.action.is_none_or(|a| a == k.action)
            && self.role.is_none_or(|r| r == k.role)
            && self.position.is_none_or(|p| p == k.position)
    }
}

#[derive(Debug, Clone)]
pub struct RetDispatch {
    rules: Vec<DispatchRule>,
}

impl RetDispatch {
    pub fn defaults() -> RetDispatch {
        parse_dispatch(DEFAULT_DISPATCH).expect("shipped dispatch table parses")
    }

    pub fn rules(&self) -> &[DispatchRule] {
        &self.rules
    }

    pub fn select(&self, key: &RetKey) -> Option<&str> {
        self.rules.iter().find(|r| r.matches(key)).map(|r| r.ret.as_str())
    }
}

fn field<T: FromStr<Err = Error>>(line: usize, s: &str) -> Result<Option<T>> {
    if s == "*" {
        return Ok(None);
    }
    s.parse::<T>().map(Some).map_err(|e| Error::parse(line, e.to_string()))
}

/// Parses `street archetype action role position ret` rows.
pub fn parse_dispatch(text: &str) -> Result<RetDispatch> {
    let mut rules = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let n = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let cols: Vec<&str> = line.split_whitespace().collect();
        let [street, arch, action, role, pos, ret] = cols.as_slice() else {
            return Err(Error::parse(n, format!("expected 6 columns, got {}", cols.len())));
        };
        rules.push(DispatchRule {
            street: field(n, street)?,
            archetype: field(n, arch)?,
            action: field(n, action)?,
            role: field(n, role)?,
            position: field(n, pos)?,
            ret: ret.to_string(),
        });
    }
    if rules.is_empty() {
        return Err(Error::parse(0, "empty dispatch table"));
    }
    Ok(RetDispatch { rules })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn key(street: Street, arch: Archetype, action: ActionKind, role: ActorRole) -> RetKey {
        RetKey {
            street,
            archetype: arch,
            action,
            role,
            position: Position::Bb,
        }
    }

    #[test]
    fn hand_six_actions_dispatch() {
        let d = RetDispatch::defaults();
        let w = Archetype::Whale;
        assert_eq!(d.select(&key(Street::Flop, w, ActionKind::Bet, ActorRole::Donk)), Some("RET18"));
        assert_eq!(d.select(&key(Street::Flop, w, ActionKind::Call, ActorRole::FacingRaise)), Some("RET33"));
        assert_eq!(d.select(&key(Street::Turn, w, ActionKind::AllIn, ActorRole::Donk)), Some("RET73"));
    }

    #[test]
    fn every_dispatched_template_exists() {
        let set = super::super::RetSet::defaults();
        for r in RetDispatch::defaults().rules() {
            assert!(set.get(&r.ret).is_some(), "{}", r.ret);
        }
    }

    #[test]
    fn bad_rows_report_line() {
        assert!(matches!(parse_dispatch("flop * bet donk *"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse_dispatch("# c\nflop shark bet donk * RET18"), Err(Error::Parse { line: 2, .. })));
    }
}
