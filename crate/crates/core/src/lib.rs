//! Mediation of privacy conflicts between co-owners of a social media item.
//!
//! Each co-owner (negotiator) states a group-based privacy policy for the item.
//! [`conflict::detect_conflicts`] finds the target users the policies disagree
//! on, [`willingness`] estimates how readily each negotiator would change their
//! preferred action, and [`resolution::resolve`] applies the concession rules to
//! propose one action per target. [`baseline`] holds the fixed voting rules used
//! for comparison and [`harness`] the file formats, scenario generator and
//! evaluation.

pub mod baseline;
pub mod conflict;
pub mod harness;
pub mod policy;
pub mod resolution;
pub mod willingness;

pub use baseline::{majority_voting, uploader_overwrites, veto_voting, MechanismId, TieBreak};
pub use conflict::{detect_conflicts, is_unanimous, ConflictSet, InvalidScenario};
pub use policy::{
    act, action_vector, validate_scenario, Action, ActionVector, Group, GroupSet, PrivacyPolicy,
    Scenario, TieStrengthTable, UserId, ValidationOptions, ValidationReport,
};
pub use resolution::{mediate, resolve, Mediation, ResolutionOutcome, RuleTag};
pub use willingness::{willingness, WillingnessClass, WillingnessReport};
