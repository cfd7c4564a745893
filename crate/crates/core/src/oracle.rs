//! Decryption oracle gated by the attack model.
//!
//! | atk  | phase 1      | phase 2                          |
//! |------|--------------|----------------------------------|
//! | cpa  | null         | null                             |
//! | cca1 | `D_sk`       | null                             |
//! | cca2 | `D_sk`       | `D_sk`, challenge refused        |
//!
//! Refusals are returned to the adversary, never raised as trial failures.
//! Every query, answered or refused, lands in the transcript; queries past
//! the per-phase cap are only counted.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::bits::Ciphertext;
use crate::model::{AttackModel, DecryptResult, Scheme, SecretKey};

pub const DEFAULT_QUERY_CAP: usize = 1 << 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Phase {
    Phase1,
    Phase2,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Error, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Refusal {
    #[error("no decryption oracle is available in this phase")]
    NullOracle,
    #[error("the challenge ciphertext may not be queried")]
    ChallengeBanned,
    #[error("per-phase query cap exceeded")]
    QueryCapExceeded,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("already in phase 2")]
    AlreadyInPhase2,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OraclePolicy {
    pub atk: AttackModel,
    pub phase: Phase,
    pub banned_challenge: Option<Ciphertext>,
    pub query_cap: usize,
}

impl OraclePolicy {
    pub fn phase1(atk: AttackModel, query_cap: usize) -> Self {
        Self { atk, phase: Phase::Phase1, banned_challenge: None, query_cap }
    }

    /// Whether this policy gives access to `D_sk` at all.
    pub fn is_live(&self) -> bool {
        matches!(
            (self.atk, self.phase),
            (AttackModel::Cca1, Phase::Phase1) | (AttackModel::Cca2, _)
        )
    }

    fn decide(&self, y: &Ciphertext) -> Result<(), Refusal> {
        if !self.is_live() {
            return Err(Refusal::NullOracle);
        }
        if self.banned_challenge.as_ref() == Some(y) {
            return Err(Refusal::ChallengeBanned);
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum QueryOutcome {
    Answered(DecryptResult),
    Refused(Refusal),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TranscriptEntry {
    pub phase: Phase,
    pub query: Ciphertext,
    pub outcome: QueryOutcome,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct OracleTranscript {
    pub entries: Vec<TranscriptEntry>,
    /// Queries refused with `QueryCapExceeded`, which are not recorded.
    pub over_cap: u64,
}

impl OracleTranscript {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn in_phase(&self, phase: Phase) -> impl Iterator<Item = &TranscriptEntry> {
        self.entries.iter().filter(move |e| e.phase == phase)
    }

    /// Post-hoc policy audit: every recorded outcome is the one `atk`
    /// prescribes for its phase, given the challenge that opened phase 2.
    pub fn complies_with(&self, atk: AttackModel, challenge: Option<&Ciphertext>) -> bool {
        self.entries.iter().all(|e| {
            let policy = OraclePolicy {
                atk,
                phase: e.phase,
                banned_challenge: match (atk, e.phase) {
                    (AttackModel::Cca2, Phase::Phase2) => challenge.cloned(),
                    _ => None,
                },
                query_cap: usize::MAX,
            };
            match (&e.outcome, policy.decide(&e.query)) {
                (QueryOutcome::Answered(_), Ok(())) => true,
                (QueryOutcome::Refused(r), Err(expected)) => *r == expected,
                _ => false,
            }
        })
    }

    /// SHA-256 over the canonical JSON encoding.
    pub fn digest(&self) -> String {
        let bytes = serde_json::to_vec(self).expect("transcript serializes");
        hex::encode(Sha256::digest(bytes))
    }
}

/// The handle adversaries see: they can query, nothing else.
pub trait DecryptOracle {
    fn query(&mut self, y: &Ciphertext) -> Result<DecryptResult, Refusal>;
}

/// A stateful, single-owner decryption oracle for one trial.
pub struct GatedOracle<'a> {
    scheme: &'a dyn Scheme,
    sk: &'a SecretKey,
    policy: OraclePolicy,
    transcript: OracleTranscript,
    phase_queries: usize,
}

/// Opens the phase-1 oracle for `atk`.
pub fn open_oracle<'a>(scheme: &'a dyn Scheme, sk: &'a SecretKey, atk: AttackModel) -> GatedOracle<'a> {
    GatedOracle::new(scheme, sk, atk, DEFAULT_QUERY_CAP)
}

impl<'a> GatedOracle<'a> {
    pub fn new(scheme: &'a dyn Scheme, sk: &'a SecretKey, atk: AttackModel, query_cap: usize) -> Self {
        Self {
            scheme,
            sk,
            policy: OraclePolicy::phase1(atk, query_cap),
            transcript: OracleTranscript::default(),
            phase_queries: 0,
        }
    }

    pub fn policy(&self) -> &OraclePolicy {
        &self.policy
    }

    pub fn transcript(&self) -> &OracleTranscript {
        &self.transcript
    }

    pub fn into_transcript(self) -> OracleTranscript {
        self.transcript
    }

    pub fn advance_to_phase2(&mut self, challenge: &Ciphertext) -> Result<(), OracleError> {
        if self.policy.phase == Phase::Phase2 {
            return Err(OracleError::AlreadyInPhase2);
        }
        self.policy.phase = Phase::Phase2;
        if self.policy.atk == AttackModel::Cca2 {
            self.policy.banned_challenge = Some(challenge.clone());
        }
        self.phase_queries = 0;
        Ok(())
    }

    /// Phase 2 of an experiment that issues no challenge: nothing is banned.
    pub fn advance_to_phase2_blind(&mut self) -> Result<(), OracleError> {
        if self.policy.phase == Phase::Phase2 {
            return Err(OracleError::AlreadyInPhase2);
        }
        self.policy.phase = Phase::Phase2;
        self.phase_queries = 0;
        Ok(())
    }
}

impl DecryptOracle for GatedOracle<'_> {
    fn query(&mut self, y: &Ciphertext) -> Result<DecryptResult, Refusal> {
        if self.phase_queries >= self.policy.query_cap {
            self.transcript.over_cap += 1;
            return Err(Refusal::QueryCapExceeded);
        }
        self.phase_queries += 1;
        let outcome = match self.policy.decide(y) {
            Ok(()) => QueryOutcome::Answered(self.scheme.decrypt(self.sk, y)),
            Err(r) => QueryOutcome::Refused(r),
        };
        self.transcript.entries.push(TranscriptEntry {
            phase: self.policy.phase,
            query: y.clone(),
            outcome: outcome.clone(),
        });
        match outcome {
            QueryOutcome::Answered(d) => Ok(d),
            QueryOutcome::Refused(r) => Err(r),
        }
    }
}

/// An oracle that refuses everything without recording; for running an
/// adversary phase outside any experiment.
#[derive(Debug, Default, Clone, Copy)]
pub struct NullOracle;

impl DecryptOracle for NullOracle {
    fn query(&mut self, _y: &Ciphertext) -> Result<DecryptResult, Refusal> {
        Err(Refusal::NullOracle)
    }
}
