//! Fixed aggregation rules the mediator is compared against.

use std::fmt;
use std::str::FromStr;

use crate::conflict::ConflictSet;
use crate::policy::{Action, ActionVector, Scenario};
use crate::resolution::tally;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MechanismId {
    /// The adaptive concession-rule mediator.
    Ar,
    /// Uploader overwrites.
    Uo,
    /// Majority voting.
    Mv,
    /// Veto voting.
    Vv,
}

impl MechanismId {
    pub const ALL: [MechanismId; 4] = [
        MechanismId::Ar,
        MechanismId::Uo,
        MechanismId::Mv,
        MechanismId::Vv,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            MechanismId::Ar => "AR",
            MechanismId::Uo => "UO",
            MechanismId::Mv => "MV",
            MechanismId::Vv => "VV",
        }
    }
}

impl fmt::Display for MechanismId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// How majority voting settles an exact tie.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum TieBreak {
    #[default]
    Deny,
    Uploader,
}

impl FromStr for TieBreak {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "deny" => Ok(TieBreak::Deny),
            "uploader" => Ok(TieBreak::Uploader),
            other => Err(format!(
                "unknown tie-break {other:?} (expected deny or uploader)"
            )),
        }
    }
}

// Unanimous targets need no special case: every rule returns the shared action.
fn per_target(s: &Scenario, mut decide: impl FnMut(usize) -> Action) -> ActionVector {
    ActionVector {
        owner: s.uploader.clone(),
        actions: s
            .targets
            .iter()
            .enumerate()
            .map(|(i, t)| (t.clone(), decide(i)))
            .collect(),
    }
}

/// The uploader's vector, conflicts included.
pub fn uploader_overwrites(s: &Scenario, cs: &ConflictSet) -> ActionVector {
    let uploader = cs
        .vector(&s.uploader)
        .expect("uploader has an action vector");
    per_target(s, |i| uploader.actions[i].1)
}

/// Strict majority per conflict; exact ties resolved by `tie_break`.
pub fn majority_voting(s: &Scenario, cs: &ConflictSet, tie_break: TieBreak) -> ActionVector {
    per_target(s, |i| {
        let (grants, denies) = tally(cs.vectors.iter().map(|v| v.actions[i].1));
        if grants != denies {
            Action::from_bit(grants > denies)
        } else {
            match tie_break {
                TieBreak::Deny => Action::Deny,
                TieBreak::Uploader => cs
                    .vector(&s.uploader)
                    .map(|v| v.actions[i].1)
                    .unwrap_or(Action::Deny),
            }
        }
    })
}

/// Deny whenever anyone prefers to deny.
pub fn veto_voting(s: &Scenario, cs: &ConflictSet) -> ActionVector {
    per_target(s, |i| {
        if cs.vectors.iter().any(|v| v.actions[i].1 == Action::Deny) {
            Action::Deny
        } else {
            Action::Grant
        }
    })
}
