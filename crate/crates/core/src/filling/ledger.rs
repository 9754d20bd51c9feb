use super::plan::{Move, Plan};
use super::FillingError;
use crate::braid::{apply_braid_move, delete_crossing, rotate_word, BraidWord, Direction};

/// Per-level order of unfrozen vertex ids, left to right, plus the frozen id.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ledger {
    unfrozen: Vec<Vec<usize>>,
    frozen: Vec<Option<usize>>,
    consumed: Vec<usize>,
}

impl Ledger {
    pub fn new(w: &BraidWord) -> Self {
        let mut unfrozen = vec![Vec::new(); w.n()];
        let mut frozen = vec![None; w.n()];
        for (level, slot) in frozen.iter_mut().enumerate().skip(1) {
            let mut pos = w.positions_on(level);
            *slot = pos.pop();
            unfrozen[level] = pos;
        }
        Ledger { unfrozen, frozen, consumed: Vec::new() }
    }

    pub fn unfrozen(&self, level: usize) -> &[usize] {
        &self.unfrozen[level]
    }

    pub fn frozen(&self, level: usize) -> Option<usize> {
        self.frozen[level]
    }

    /// Vertices isolated by pinches, in pinch order.
    pub fn consumed(&self) -> &[usize] {
        &self.consumed
    }

    /// `⟨i, m⟩`: the `m`-th unfrozen vertex on level `i`, 1-based.
    pub fn at(&self, level: usize, m: usize) -> Result<usize, FillingError> {
        self.unfrozen
            .get(level)
            .and_then(|l| l.get(m.wrapping_sub(1)))
            .copied()
            .ok_or(FillingError::LedgerUnderflow { level, index: m })
    }
}

/// Steps a word and its ledger through a plan, emitting mutations.
#[derive(Debug, Clone)]
pub struct Compiler {
    pub word: BraidWord,
    pub ledger: Ledger,
}

impl Compiler {
    pub fn new(w: &BraidWord) -> Self {
        Compiler { word: w.clone(), ledger: Ledger::new(w) }
    }

    /// Mutations for one move, in application order, before cancellation.
    pub fn step(&mut self, mv: Move) -> Result<Vec<usize>, FillingError> {
        let out = match mv {
            Move::Pinch { pos } => self.pinch(pos)?,
            Move::Braid { pos } => self.braid(pos)?,
            Move::Rotate { dir } => self.rotate(dir)?,
            Move::Minimum => {
                if !self.word.is_empty() {
                    return Err(FillingError::InvalidMove("minimum on a nonempty word".into()));
                }
                Vec::new()
            }
        };
        Ok(out)
    }

    fn pinch(&mut self, k: usize) -> Result<Vec<usize>, FillingError> {
        let w = &self.word;
        if k == 0 || k > w.len() {
            return Err(FillingError::InvalidMove(format!("no crossing at position {k}")));
        }
        let ik = w.letter(k);
        let mut v_seqs = Vec::new();
        let mut w_seqs = Vec::new();
        for j in 1..k {
            let ij = w.letter(j);
            let tj = (j + 1..=k).filter(|&l| w.letter(l) == ij).count();
            let v: Vec<usize> = (1..=tj).map(|m| self.ledger.at(ij, m)).collect::<Result<_, _>>()?;
            let wj: Vec<usize> = if ij != ik {
                v.iter().rev().copied().collect()
            } else {
                (2..=tj).rev().map(|m| self.ledger.at(ij, m)).collect::<Result<_, _>>()?
            };
            v_seqs.push(v);
            w_seqs.push(wj);
        }
        let mut out: Vec<usize> = v_seqs.into_iter().flatten().collect();
        out.extend(w_seqs.into_iter().rev().flatten());
        if !self.ledger.unfrozen[ik].is_empty() {
            let c = self.ledger.unfrozen[ik].remove(0);
            self.ledger.consumed.push(c);
        }
        self.word = delete_crossing(&self.word, k)?;
        Ok(out)
    }

    fn braid(&mut self, p: usize) -> Result<Vec<usize>, FillingError> {
        let old = &self.word;
        let moved = apply_braid_move(old, p)?;
        let (i, j) = (old.letter(p), old.letter(p + 1));
        let r = (1..=p).filter(|&q| old.letter(q) == i).count();
        let v = self.ledger.at(i, r)?;
        self.ledger.unfrozen[i].remove(r - 1);
        let s = (1..=p).filter(|&q| moved.letter(q) == j).count();
        let list = &mut self.ledger.unfrozen[j];
        if s - 1 > list.len() {
            return Err(FillingError::LedgerUnderflow { level: j, index: s });
        }
        list.insert(s - 1, v);
        self.word = moved;
        Ok(vec![v])
    }

    fn rotate(&mut self, dir: Direction) -> Result<Vec<usize>, FillingError> {
        let w = &self.word;
        if w.is_empty() {
            return Err(FillingError::InvalidMove("rotation of the empty word".into()));
        }
        let out = match dir {
            Direction::LastToFront => self.ledger.unfrozen[w.letter(w.len())].iter().rev().copied().collect(),
            Direction::FrontToLast => self.ledger.unfrozen[w.letter(1)].clone(),
        };
        self.word = rotate_word(w, dir)?;
        Ok(out)
    }
}

/// Cancels adjacent repeats, since each mutation is an involution.
pub fn stack_cancel(seq: impl IntoIterator<Item = usize>) -> Vec<usize> {
    let mut out: Vec<usize> = Vec::new();
    for k in seq {
        if out.last() == Some(&k) {
            out.pop();
        } else {
            out.push(k);
        }
    }
    out
}

/// Per-move mutation lists, in application order, before cancellation.
pub fn compile_steps(w: &BraidWord, plan: &Plan) -> Result<Vec<Vec<usize>>, FillingError> {
    let mut c = Compiler::new(w);
    plan.moves.iter().map(|&mv| c.step(mv)).collect()
}

/// Whole-plan mutation sequence in application order, `seq[0]` first.
pub fn compile_mutation_sequence(w: &BraidWord, plan: &Plan) -> Result<Vec<usize>, FillingError> {
    Ok(stack_cancel(compile_steps(w, plan)?.into_iter().flatten()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::parse_braid;

    fn word() -> BraidWord {
        parse_braid("1,3,1,2,1,3,1,2", None).unwrap()
    }

    #[test]
    fn initial_ledger() {
        let l = Ledger::new(&word());
        assert_eq!(l.unfrozen(1), &[1, 3, 5]);
        assert_eq!(l.frozen(1), Some(7));
        assert_eq!(l.unfrozen(3), &[2]);
        assert_eq!(l.at(2, 1).unwrap(), 4);
        assert_eq!(l.at(2, 2), Err(FillingError::LedgerUnderflow { level: 2, index: 2 }));
    }

    #[test]
    fn first_two_pinches() {
        let mut c = Compiler::new(&word());
        assert_eq!(stack_cancel(c.step(Move::Pinch { pos: 6 }).unwrap()), vec![1, 3, 2, 3, 1]);
        assert_eq!(c.ledger.consumed(), &[2]);
        assert_eq!(stack_cancel(c.step(Move::Pinch { pos: 6 }).unwrap()), vec![1, 3, 5, 1, 3, 1, 3, 5, 3]);
        assert_eq!(c.ledger.unfrozen(1), &[3, 5]);
    }

    #[test]
    fn braid_move_relocates_the_vertex() {
        let mut c = Compiler::new(&word());
        for pos in [6, 6, 1] {
            c.step(Move::Pinch { pos }).unwrap();
        }
        assert_eq!(c.step(Move::Braid { pos: 2 }).unwrap(), vec![5]);
        assert_eq!(c.ledger.unfrozen(2), &[5, 4]);
        assert_eq!(c.ledger.frozen(2), Some(8));
        assert_eq!(c.step(Move::Rotate { dir: Direction::LastToFront }).unwrap(), vec![4, 5]);
        assert_eq!(c.word.letters(), &[2, 3, 2, 1, 2]);
    }

    #[test]
    fn left_to_right_pinching_needs_no_mutation() {
        let plan = Plan::new(vec![Move::Pinch { pos: 1 }; 8]);
        assert!(compile_mutation_sequence(&word(), &plan).unwrap().is_empty());
    }

    #[test]
    fn invalid_moves() {
        let mut c = Compiler::new(&word());
        assert!(matches!(c.step(Move::Pinch { pos: 9 }), Err(FillingError::InvalidMove(_))));
        assert!(matches!(c.step(Move::Braid { pos: 1 }), Err(FillingError::Braid(_))));
        assert!(matches!(c.step(Move::Minimum), Err(FillingError::InvalidMove(_))));
    }
}
