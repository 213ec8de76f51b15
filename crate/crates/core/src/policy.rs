//! Which tile to discard.
//!
//! The knowledge base counts the copies of each kind believed to be still
//! available. `delta` scores each position by how many available draws
//! would lower the deficiency if that tile were exchanged; `val_k` is the
//! exact probability of completing within `k` exchanges when that tile goes
//! first and every later exchange is chosen optimally. Drawn tiles leave
//! the pool and discarded ones do not return to it.
//!
//! Probabilities are computed as integer weights: `W_j = V_j * D_j(n)`
//! where `n` is the pool size and `D_j(n)` counts ordered draw sequences,
//! `n (n-1) ... (n-j+1)`. Then `W_j(T, w, i) = sum_x w(x) W_{j-1}(T[i/x], w - x)`
//! and only the final division is rational.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use serde::Serialize;

use crate::deficiency::deficiency;
use crate::decomp::is_complete;
use crate::tiles::{Hand, Tile, HAND_SIZE, MAX_COPIES};

pub type Probability = Ratio<u128>;

pub const DEFAULT_HORIZON_CAP: u32 = 3;
/// Largest cap accepted; weights stay within `u128` up to here.
pub const MAX_HORIZON_CAP: u32 = 12;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolicyError {
    #[error("horizon {k} exceeds the configured cap {cap}")]
    HorizonTooLarge { k: u32, cap: u32 },
    #[error("horizon must be at least 1")]
    ZeroHorizon,
    #[error("no tiles are available in the knowledge base")]
    EmptyKnowledgeBase,
    #[error("the hand is already complete")]
    AlreadyComplete,
    #[error("no copy of {tile} is left to observe")]
    Underflow { tile: Tile },
    #[error("index {index} is outside 0..14")]
    IndexOutOfRange { index: usize },
    #[error("bad knowledge base: {0}")]
    BadKnowledgeBase(String),
    #[error("{tile} has {count} copies available, more than 4")]
    TooManyAvailable { tile: Tile, count: u8 },
}

/// Available copies per tile kind, each in `0..=4`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct KnowledgeBase {
    counts: [u8; Tile::KINDS],
}

impl KnowledgeBase {
    pub fn new(counts: [u8; Tile::KINDS]) -> Result<KnowledgeBase, PolicyError> {
        if let Some(i) = counts.iter().position(|&c| c > MAX_COPIES) {
            return Err(PolicyError::TooManyAvailable {
                tile: Tile::from_index(i).expect("27 kinds"),
                count: counts[i],
            });
        }
        Ok(KnowledgeBase { counts })
    }

    /// Everything not in the hand.
    pub fn initial(hand: &Hand) -> KnowledgeBase {
        let mut counts = [0u8; Tile::KINDS];
        for t in Tile::all() {
            counts[t.index()] = MAX_COPIES - hand.count(t);
        }
        KnowledgeBase { counts }
    }

    pub fn empty() -> KnowledgeBase {
        KnowledgeBase {
            counts: [0; Tile::KINDS],
        }
    }

    pub fn get(&self, t: Tile) -> u8 {
        self.counts[t.index()]
    }

    pub fn counts(&self) -> &[u8; Tile::KINDS] {
        &self.counts
    }

    /// Total available tiles, `‖ω‖`.
    pub fn norm(&self) -> u32 {
        self.counts.iter().map(|&c| c as u32).sum()
    }

    /// Someone discarded `tile`, so one fewer copy is available.
    pub fn observe_discard(&self, tile: Tile) -> Result<KnowledgeBase, PolicyError> {
        let mut next = *self;
        let c = &mut next.counts[tile.index()];
        *c = c.checked_sub(1).ok_or(PolicyError::Underflow { tile })?;
        Ok(next)
    }

    fn without(&self, t: Tile) -> KnowledgeBase {
        let mut next = *self;
        next.counts[t.index()] -= 1;
        next
    }

    fn key(&self) -> u128 {
        self.counts.iter().rev().fold(0u128, |acc, &c| (acc << 3) | c as u128)
    }

    pub fn permute_colours(&self, perm: &crate::tiles::ColourPerm) -> KnowledgeBase {
        let mut counts = [0u8; Tile::KINDS];
        for t in Tile::all() {
            counts[perm.apply(t).index()] = self.counts[t.index()];
        }
        KnowledgeBase { counts }
    }
}

/// `(012340000)(000000000)(444444444)`: one digit per kind, suits B, C, D.
impl fmt::Display for KnowledgeBase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for suit in self.counts.chunks(9) {
            f.write_str("(")?;
            for c in suit {
                write!(f, "{c}")?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for KnowledgeBase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "KnowledgeBase{self}")
    }
}

impl FromStr for KnowledgeBase {
    type Err = PolicyError;

    fn from_str(s: &str) -> Result<KnowledgeBase, PolicyError> {
        let digits: Vec<char> = s
            .chars()
            .filter(|c| !c.is_whitespace() && !matches!(c, '(' | ')' | ','))
            .collect();
        if digits.len() != Tile::KINDS {
            return Err(PolicyError::BadKnowledgeBase(format!(
                "expected {} digits, found {}",
                Tile::KINDS,
                digits.len()
            )));
        }
        let mut counts = [0u8; Tile::KINDS];
        for (slot, c) in counts.iter_mut().zip(&digits) {
            *slot = c
                .to_digit(10)
                .ok_or_else(|| PolicyError::BadKnowledgeBase(format!("'{c}' is not a digit")))?
                as u8;
        }
        KnowledgeBase::new(counts)
    }
}

impl Serialize for KnowledgeBase {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// `hand[i/x]`, or `None` if that would make a fifth copy of `x`.
fn exchange(hand: &Hand, out: Tile, into: Tile) -> Option<Hand> {
    hand.exchange(out, into).ok()
}

/// Per position, the available draws that lower the deficiency when
/// exchanged for that tile. All zero for a complete hand.
pub fn delta(hand: &Hand, kb: &KnowledgeBase) -> [u32; HAND_SIZE] {
    let base = deficiency(hand).value;
    let mut by_kind: HashMap<Tile, u32> = HashMap::new();
    for &out in hand.tiles() {
        by_kind.entry(out).or_insert_with(|| {
            Tile::all()
                .filter(|&x| kb.get(x) > 0)
                .filter(|&x| exchange(hand, out, x).is_some_and(|h| deficiency(&h).value < base))
                .map(|x| kb.get(x) as u32)
                .sum()
        });
    }
    hand.tiles().map(|t| by_kind[&t])
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AdviceEntry {
    pub tile: Tile,
    #[serde(serialize_with = "ser_ratio")]
    pub value: Probability,
    /// Present for the one-step heuristic.
    pub delta: Option<u32>,
}

fn ser_ratio<S: serde::Serializer>(r: &Probability, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(r)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AdviceReport {
    pub k: u32,
    pub entries: Vec<AdviceEntry>,
    /// First position attaining the largest value.
    pub recommended_index: usize,
}

impl AdviceReport {
    fn new(k: u32, entries: Vec<AdviceEntry>) -> AdviceReport {
        let mut best = 0;
        for (i, e) in entries.iter().enumerate() {
            if e.value > entries[best].value {
                best = i;
            }
        }
        AdviceReport {
            k,
            entries,
            recommended_index: best,
        }
    }

    pub fn recommended_tile(&self) -> Tile {
        self.entries[self.recommended_index].tile
    }
}

fn ratio(num: u128, den: u128) -> Probability {
    if den == 0 {
        Probability::from_integer(0)
    } else {
        Probability::new(num, den)
    }
}

/// The one-step heuristic: discard where `delta` is largest. Values are
/// reported as `delta / ‖ω‖`.
pub fn discard1(hand: &Hand, kb: &KnowledgeBase) -> Result<AdviceReport, PolicyError> {
    if is_complete(hand) {
        return Err(PolicyError::AlreadyComplete);
    }
    let d = delta(hand, kb);
    let norm = kb.norm() as u128;
    let entries = hand
        .tiles()
        .iter()
        .zip(d)
        .map(|(&tile, d)| AdviceEntry {
            tile,
            value: ratio(d as u128, norm),
            delta: Some(d),
        })
        .collect();
    Ok(AdviceReport::new(1, entries))
}

/// `D_j(n)`: ordered sequences of `j` draws from a pool of `n`, with
/// factors clamped at 1 once the pool would run dry.
fn draw_sequences(n: u32, j: u32) -> u128 {
    (0..j).map(|l| n.saturating_sub(l).max(1) as u128).product()
}

/// Evaluates step values with a cap on the horizon.
#[derive(Clone, Debug)]
pub struct Advisor {
    cap: u32,
}

impl Default for Advisor {
    fn default() -> Advisor {
        Advisor {
            cap: DEFAULT_HORIZON_CAP,
        }
    }
}

struct Weights {
    memo: HashMap<(u128, u128, u32), u128>,
}

impl Weights {
    /// `W_j(T, ω) = V_j(T, ω) * D_j(‖ω‖)` for the best first discard.
    fn hand(&mut self, hand: &Hand, kb: &KnowledgeBase, j: u32) -> u128 {
        let n = kb.norm();
        if is_complete(hand) {
            return draw_sequences(n, j);
        }
        if j == 0 || n == 0 || deficiency(hand).value > j {
            return 0;
        }
        let key = (hand.counts().key(), kb.key(), j);
        if let Some(&w) = self.memo.get(&key) {
            return w;
        }
        let mut kinds: Vec<Tile> = hand.tiles().to_vec();
        kinds.dedup();
        let w = kinds
            .into_iter()
            .map(|out| self.discard(hand, kb, out, j))
            .max()
            .unwrap_or(0);
        self.memo.insert(key, w);
        w
    }

    /// `W_j(T, ω, i)` where `T[i] = out`.
    fn discard(&mut self, hand: &Hand, kb: &KnowledgeBase, out: Tile, j: u32) -> u128 {
        let mut total = 0;
        for x in Tile::all() {
            let available = kb.get(x);
            if available == 0 {
                continue;
            }
            let Some(next) = exchange(hand, out, x) else { continue };
            let w = if j == 1 {
                is_complete(&next) as u128
            } else {
                self.hand(&next, &kb.without(x), j - 1)
            };
            total += available as u128 * w;
        }
        total
    }
}

impl Advisor {
    pub fn new(cap: u32) -> Result<Advisor, PolicyError> {
        if cap == 0 {
            return Err(PolicyError::ZeroHorizon);
        }
        if cap > MAX_HORIZON_CAP {
            return Err(PolicyError::HorizonTooLarge {
                k: cap,
                cap: MAX_HORIZON_CAP,
            });
        }
        Ok(Advisor { cap })
    }

    pub fn cap(&self) -> u32 {
        self.cap
    }

    fn check(&self, k: u32) -> Result<(), PolicyError> {
        match k {
            0 => Err(PolicyError::ZeroHorizon),
            k if k > self.cap => Err(PolicyError::HorizonTooLarge { k, cap: self.cap }),
            _ => Ok(()),
        }
    }

    /// Chance of completing within `k` exchanges when `hand[i]` goes first.
    pub fn val_k(&self, hand: &Hand, kb: &KnowledgeBase, i: usize, k: u32) -> Result<Probability, PolicyError> {
        self.check(k)?;
        let &out = hand.tiles().get(i).ok_or(PolicyError::IndexOutOfRange { index: i })?;
        if is_complete(hand) {
            return Err(PolicyError::AlreadyComplete);
        }
        let mut weights = Weights { memo: HashMap::new() };
        let w = if deficiency(hand).value > k {
            0
        } else {
            weights.discard(hand, kb, out, k)
        };
        Ok(ratio(w, draw_sequences(kb.norm(), k)))
    }

    /// Best first discard for completing within `k` exchanges.
    pub fn discard_k(&self, hand: &Hand, kb: &KnowledgeBase, k: u32) -> Result<AdviceReport, PolicyError> {
        self.check(k)?;
        if is_complete(hand) {
            return Err(PolicyError::AlreadyComplete);
        }
        if kb.norm() == 0 {
            return Err(PolicyError::EmptyKnowledgeBase);
        }
        let mut weights = Weights { memo: HashMap::new() };
        let reachable = deficiency(hand).value <= k;
        let den = draw_sequences(kb.norm(), k);
        let mut by_kind: HashMap<Tile, u128> = HashMap::new();
        let entries = hand
            .tiles()
            .iter()
            .map(|&tile| {
                let w = *by_kind
                    .entry(tile)
                    .or_insert_with(|| if reachable { weights.discard(hand, kb, tile, k) } else { 0 });
                AdviceEntry {
                    tile,
                    value: ratio(w, den),
                    delta: None,
                }
            })
            .collect();
        Ok(AdviceReport::new(k, entries))
    }
}

/// `val_k` with the default horizon cap.
pub fn val_k(hand: &Hand, kb: &KnowledgeBase, i: usize, k: u32) -> Result<Probability, PolicyError> {
    Advisor::default().val_k(hand, kb, i, k)
}

/// `discard_k` with the default horizon cap.
pub fn discard_k(hand: &Hand, kb: &KnowledgeBase, k: u32) -> Result<AdviceReport, PolicyError> {
    Advisor::default().discard_k(hand, kb, k)
}
