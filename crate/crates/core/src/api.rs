//! Request and response shapes shared by the command line and the HTTP
//! service, so both print the same JSON for the same input.

use serde::{Deserialize, Serialize};

use crate::deficiency::deficiency;
use crate::decomp::{cost, is_complete, Cost};
use crate::policy::{discard1, Advisor, AdviceReport, KnowledgeBase, PolicyError};
use crate::tiles::{parse_hand, Hand, HandError, Tile};

pub const SCHEMA_VERSION: &str = "mjzero/1";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalyzeRequest {
    pub hand: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    /// Slots one to four hold melds in progress, slot five the eye.
    pub parts: Vec<Vec<String>>,
    pub remainder: Vec<String>,
    pub cost: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalyzeResponse {
    pub schema: String,
    pub hand: String,
    pub deficiency: u32,
    pub complete: bool,
    pub witness: Witness,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdviseRequest {
    pub hand: String,
    /// Defaults to every tile not in the hand.
    #[serde(default)]
    pub kb: Option<String>,
    pub k: u32,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AdviseEntry {
    pub tile: String,
    pub value_numerator: u128,
    pub value_denominator: u128,
    pub value_decimal: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta: Option<u32>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AdviseResponse {
    pub schema: String,
    pub hand: String,
    pub kb: String,
    pub k: u32,
    pub entries: Vec<AdviseEntry>,
    pub recommended_index: usize,
    pub recommended_tile: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Health {
    pub schema: String,
    pub version: String,
    pub horizon_cap: u32,
}

impl Health {
    pub fn new(horizon_cap: u32) -> Health {
        Health {
            schema: SCHEMA_VERSION.into(),
            version: env!("CARGO_PKG_VERSION").into(),
            horizon_cap,
        }
    }
}

/// Unreadable input, input that breaks a game rule, or a request beyond
/// the configured limits.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ErrorKind {
    Parse,
    Constraint,
    Config,
}

impl ErrorKind {
    pub fn http_status(self) -> u16 {
        match self {
            ErrorKind::Parse => 400,
            ErrorKind::Constraint | ErrorKind::Config => 422,
        }
    }

    pub fn exit_code(self) -> i32 {
        match self {
            ErrorKind::Parse | ErrorKind::Constraint => 2,
            ErrorKind::Config => 3,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize, thiserror::Error)]
#[error("{code}: {message}")]
pub struct ApiError {
    pub code: String,
    pub message: String,
    #[serde(skip, default = "parse_kind")]
    pub kind: ErrorKind,
}

fn parse_kind() -> ErrorKind {
    ErrorKind::Parse
}

impl ApiError {
    pub fn new(kind: ErrorKind, code: &str, message: impl Into<String>) -> ApiError {
        ApiError {
            code: code.into(),
            message: message.into(),
            kind,
        }
    }
}

impl From<HandError> for ApiError {
    fn from(e: HandError) -> ApiError {
        let (kind, code) = match e {
            HandError::WrongCount { .. } => (ErrorKind::Parse, "wrong_count"),
            HandError::BadToken { .. } => (ErrorKind::Parse, "bad_token"),
            HandError::FiveIdentical { .. } => (ErrorKind::Constraint, "five_identical"),
        };
        ApiError::new(kind, code, e.to_string())
    }
}

impl From<PolicyError> for ApiError {
    fn from(e: PolicyError) -> ApiError {
        let (kind, code) = match e {
            PolicyError::HorizonTooLarge { .. } => (ErrorKind::Config, "horizon_exceeded"),
            PolicyError::ZeroHorizon => (ErrorKind::Constraint, "zero_horizon"),
            PolicyError::EmptyKnowledgeBase => (ErrorKind::Constraint, "empty_knowledge_base"),
            PolicyError::AlreadyComplete => (ErrorKind::Constraint, "already_complete"),
            PolicyError::Underflow { .. } => (ErrorKind::Constraint, "kb_underflow"),
            PolicyError::IndexOutOfRange { .. } => (ErrorKind::Constraint, "index_out_of_range"),
            PolicyError::BadKnowledgeBase(_) => (ErrorKind::Parse, "bad_kb"),
            PolicyError::TooManyAvailable { .. } => (ErrorKind::Constraint, "kb_too_many"),
        };
        ApiError::new(kind, code, e.to_string())
    }
}

fn tokens(tiles: impl IntoIterator<Item = Tile>) -> Vec<String> {
    tiles.into_iter().map(|t| t.to_string()).collect()
}

pub fn analyze_hand(hand: &Hand) -> AnalyzeResponse {
    let result = deficiency(hand);
    let witness_cost = match cost(hand, &result.witness) {
        Ok(Cost::Finite(c)) => c,
        _ => unreachable!("deficiency witnesses are completable p-decompositions of the hand"),
    };
    AnalyzeResponse {
        schema: SCHEMA_VERSION.into(),
        hand: hand.to_string(),
        deficiency: result.value,
        complete: is_complete(hand),
        witness: Witness {
            parts: result.witness.parts().into_iter().map(tokens).collect(),
            remainder: tokens(result.witness.remainder().iter().copied()),
            cost: witness_cost,
        },
    }
}

pub fn analyze(req: &AnalyzeRequest) -> Result<AnalyzeResponse, ApiError> {
    Ok(analyze_hand(&parse_hand(&req.hand)?))
}

fn advise_response(hand: &Hand, kb: &KnowledgeBase, report: AdviceReport) -> AdviseResponse {
    let entries = report
        .entries
        .iter()
        .map(|e| AdviseEntry {
            tile: e.tile.to_string(),
            value_numerator: *e.value.numer(),
            value_denominator: *e.value.denom(),
            value_decimal: *e.value.numer() as f64 / *e.value.denom() as f64,
            delta: e.delta,
        })
        .collect();
    AdviseResponse {
        schema: SCHEMA_VERSION.into(),
        hand: hand.to_string(),
        kb: kb.to_string(),
        k: report.k,
        entries,
        recommended_index: report.recommended_index,
        recommended_tile: report.recommended_tile().to_string(),
    }
}

/// One step uses the deficiency heuristic (values `delta / ‖ω‖`); longer
/// horizons use exact completion probabilities.
pub fn advise(req: &AdviseRequest, advisor: &Advisor) -> Result<AdviseResponse, ApiError> {
    let hand = parse_hand(&req.hand)?;
    let kb = match &req.kb {
        Some(text) => text.parse::<KnowledgeBase>()?,
        None => KnowledgeBase::initial(&hand),
    };
    let report = match req.k {
        0 => return Err(PolicyError::ZeroHorizon.into()),
        k if k > advisor.cap() => return Err(PolicyError::HorizonTooLarge { k, cap: advisor.cap() }.into()),
        1 => discard1(&hand, &kb)?,
        k => advisor.discard_k(&hand, &kb, k)?,
    };
    Ok(advise_response(&hand, &kb, report))
}
