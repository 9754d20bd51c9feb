use serde::{Deserialize, Serialize};

use crate::braid::Direction;

/// One step of an admissible filling. Positions are 1-based against the
/// word as it stands when the move is applied.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "snake_case")]
pub enum Move {
    Pinch { pos: usize },
    Braid { pos: usize },
    Rotate { dir: Direction },
    /// Caps a residual unknot; only valid once the word is empty.
    Minimum,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Plan {
    pub moves: Vec<Move>,
}

impl Plan {
    pub fn new(moves: Vec<Move>) -> Self {
        Plan { moves }
    }

    /// Pinches the original crossings in the given order, translating each
    /// to its position in the shrinking word.
    pub fn from_pinch_order(order: &[usize]) -> Self {
        let mut alive: Vec<usize> = (1..=order.len()).collect();
        let moves = order
            .iter()
            .map(|c| {
                let pos = alive.iter().position(|x| x == c).expect("order is a permutation") + 1;
                alive.remove(pos - 1);
                Move::Pinch { pos }
            })
            .collect();
        Plan { moves }
    }

    /// Pinch `k` first, then the rest from right to left.
    pub fn pinch_first(l: usize, k: usize) -> Self {
        let mut moves = vec![Move::Pinch { pos: k }];
        moves.extend((1..l).rev().map(|pos| Move::Pinch { pos }));
        Plan { moves }
    }
}
