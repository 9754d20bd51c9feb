use std::collections::BTreeMap;

use super::FillingError;
use crate::algebra::{LaurentPoly, Var};
use crate::braid::{apply_braid_move, rotate_word, BraidWord, Direction};
use crate::dga::commutative_tower;

/// `t_i M^(i)_{i,i+1}` for a word whose first letter is `i`.
pub(crate) fn rotated_entry(n: usize, letters: &[usize], chords: &[Var]) -> LaurentPoly {
    let i = letters[0];
    let tower = commutative_tower(n, letters, chords);
    &LaurentPoly::var(Var::t(i as u32)) * tower[i - 1].get(0, 1)
}

/// Chord map of the rotation `β s_i → s_i β` with chords `b_1..b_l` on `w`.
/// Labels travel with their crossings, so only `b_l` changes:
/// `b_l ↦ t_i M^(i)_{i,i+1}` of the rotated word.
pub fn rotation_map(w: &BraidWord, dir: Direction) -> Result<BTreeMap<Var, LaurentPoly>, FillingError> {
    if dir == Direction::FrontToLast {
        return Err(FillingError::BackwardUnsupported);
    }
    let rotated = rotate_word(w, dir)?;
    let l = w.len() as u32;
    let mut chords: Vec<Var> = (1..l).map(Var::b).collect();
    chords.insert(0, Var::b(l));
    let img = rotated_entry(w.n(), rotated.letters(), &chords);
    Ok(BTreeMap::from([(Var::b(l), img)]))
}

/// Chord map of the braid move at `pos`, labels staying with positions:
/// `b_p ↦ b_{p+2}`, `b_{p+1} ↦ b_{p+1} + b_{p+2} b_p`, `b_{p+2} ↦ b_p`.
pub fn braid_move_map(w: &BraidWord, pos: usize) -> Result<BTreeMap<Var, LaurentPoly>, FillingError> {
    apply_braid_move(w, pos)?;
    Ok(braid_triple(Var::b(pos as u32), Var::b(pos as u32 + 1), Var::b(pos as u32 + 2)))
}

pub(crate) fn braid_triple(x: Var, y: Var, z: Var) -> BTreeMap<Var, LaurentPoly> {
    let (bx, by, bz) = (LaurentPoly::var(x), LaurentPoly::var(y), LaurentPoly::var(z));
    BTreeMap::from([(x, bz.clone()), (y, &by + &(&bz * &bx)), (z, bx)])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::PolyMatrix;
    use crate::braid::parse_braid;
    use crate::cluster::{initial_seed, seeds_equal};

    fn lp(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    #[test]
    fn single_crossing_rotation() {
        let w = parse_braid("1", None).unwrap();
        assert_eq!(rotation_map(&w, Direction::LastToFront).unwrap()[&Var::b(1)], lp("t1"));
        assert_eq!(rotation_map(&w, Direction::FrontToLast), Err(FillingError::BackwardUnsupported));
    }

    #[test]
    fn trefoil_rotation_by_hand() {
        // Z1(b3) Z1(b1) Z1(b2): entry (1,2) is b3 b1 + 1.
        let w = parse_braid("1,1,1", None).unwrap();
        let m = rotation_map(&w, Direction::LastToFront).unwrap();
        assert_eq!(m[&Var::b(3)], lp("t1 + t1 b1 b3"));
    }

    #[test]
    fn braid_map_relabels_positions() {
        let w = parse_braid("3,1,2,1,2", None).unwrap();
        let m = braid_move_map(&w, 2).unwrap();
        assert_eq!(m[&Var::b(2)], lp("b4"));
        assert_eq!(m[&Var::b(3)], lp("b3 + b2 b4"));
        assert_eq!(m[&Var::b(4)], lp("b2"));
        assert!(braid_move_map(&w, 1).is_err());
    }

    #[test]
    fn braid_map_is_an_involution() {
        let m = braid_triple(Var::b(1), Var::b(2), Var::b(3));
        for (v, img) in &m {
            assert_eq!(img.substitute(&m).unwrap(), LaurentPoly::var(*v), "{v}");
        }
    }

    /// The transfer product of the moved word, pulled back, equals the
    /// original product: `Z_i(b1) Z_j(b2) Z_i(b3) = Z_j(b3') Z_i(b2') Z_j(b1')`.
    #[test]
    fn braid_map_preserves_the_product() {
        for (i, j) in [(1, 2), (2, 1)] {
            let m = braid_triple(Var::b(1), Var::b(2), Var::b(3));
            let z = |lvl: usize, v: u32| PolyMatrix::z(lvl, LaurentPoly::var(Var::b(v)), 3);
            let zi = |lvl: usize, v: u32| PolyMatrix::z(lvl, m[&Var::b(v)].clone(), 3);
            let before = z(i, 1).mul(&z(j, 2)).unwrap().mul(&z(i, 3)).unwrap();
            let after = zi(j, 1).mul(&zi(i, 2)).unwrap().mul(&zi(j, 3)).unwrap();
            assert_eq!(before, after);
        }
    }

    #[test]
    fn braid_map_carries_initial_seeds() {
        // Seed of the moved word pulled back through the map equals the
        // seed of the original word mutated at the middle vertex.
        for text in ["1,2,1", "2,1,2"] {
            let w = parse_braid(text, None).unwrap();
            let moved = apply_braid_move(&w, 1).unwrap();
            let pulled = initial_seed(&moved).substitute(&braid_move_map(&w, 1).unwrap()).unwrap();
            assert!(seeds_equal(&pulled, &initial_seed(&w).mutate(1).unwrap()), "{text}");
        }
    }
}
