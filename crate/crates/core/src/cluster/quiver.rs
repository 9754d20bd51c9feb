use serde::{Deserialize, Serialize};

use super::ClusterError;
use crate::braid::BraidWord;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Vertex {
    pub id: usize,
    pub level: usize,
    pub frozen: bool,
    pub active: bool,
}

/// Quiver with a doubled exchange matrix: `eps2[a][b] = 2 ε_ab`, so the
/// half-weight arrows between frozen vertices stay integral.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quiver {
    vertices: Vec<Vertex>,
    eps2: Vec<Vec<i32>>,
}

/// One arrow `from → to` carrying `eps2 = weight2 > 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Arrow {
    pub from: usize,
    pub to: usize,
    pub weight2: i32,
}

impl Quiver {
    pub fn new(vertices: Vec<Vertex>, eps2: Vec<Vec<i32>>) -> Result<Self, ClusterError> {
        let n = vertices.len();
        if eps2.len() != n || eps2.iter().any(|r| r.len() != n) {
            return Err(ClusterError::Malformed("exchange matrix size".into()));
        }
        for a in 0..n {
            for b in 0..n {
                if eps2[a][b] != -eps2[b][a] {
                    return Err(ClusterError::Malformed("exchange matrix is not skew-symmetric".into()));
                }
            }
        }
        Ok(Quiver { vertices, eps2 })
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub(crate) fn pos(&self, id: usize) -> Result<usize, ClusterError> {
        self.vertices.iter().position(|v| v.id == id).ok_or(ClusterError::UnknownVertex(id))
    }

    pub fn vertex(&self, id: usize) -> Result<&Vertex, ClusterError> {
        Ok(&self.vertices[self.pos(id)?])
    }

    pub fn ids(&self) -> Vec<usize> {
        self.vertices.iter().map(|v| v.id).collect()
    }

    /// `2 ε_ab` by vertex id.
    pub fn eps2(&self, a: usize, b: usize) -> i32 {
        match (self.pos(a), self.pos(b)) {
            (Ok(i), Ok(j)) => self.eps2[i][j],
            _ => 0,
        }
    }

    pub(crate) fn eps2_at(&self, i: usize, j: usize) -> i32 {
        self.eps2[i][j]
    }

    pub fn matrix(&self) -> &[Vec<i32>] {
        &self.eps2
    }

    pub fn set_active(&mut self, id: usize, active: bool) -> Result<(), ClusterError> {
        let p = self.pos(id)?;
        self.vertices[p].active = active;
        Ok(())
    }

    pub fn arrows(&self) -> Vec<Arrow> {
        let mut out = Vec::new();
        for i in 0..self.len() {
            for j in 0..self.len() {
                if self.eps2[i][j] > 0 {
                    out.push(Arrow { from: self.vertices[i].id, to: self.vertices[j].id, weight2: self.eps2[i][j] });
                }
            }
        }
        out.sort();
        out
    }

    /// Frozen vertex on `level`, if any.
    pub fn frozen_on(&self, level: usize) -> Option<usize> {
        self.vertices.iter().find(|v| v.frozen && v.level == level).map(|v| v.id)
    }

    pub(crate) fn check_mutable(&self, id: usize) -> Result<usize, ClusterError> {
        let p = self.pos(id)?;
        let v = self.vertices[p];
        if v.frozen {
            return Err(ClusterError::FrozenVertex(id));
        }
        if !v.active {
            return Err(ClusterError::InactiveVertex(id));
        }
        Ok(p)
    }

    /// Quiver mutation at an unfrozen active vertex.
    pub fn mutate(&self, id: usize) -> Result<Quiver, ClusterError> {
        let k = self.check_mutable(id)?;
        let n = self.len();
        let mut e = self.eps2.clone();
        for i in 0..n {
            for j in 0..n {
                if i == k || j == k {
                    e[i][j] = -self.eps2[i][j];
                } else {
                    // ε_ik and ε_kj are integers because k is unfrozen.
                    let a = self.eps2[i][k] / 2;
                    let b = self.eps2[k][j] / 2;
                    e[i][j] = self.eps2[i][j] + a.abs() * b + a * b.abs();
                }
            }
        }
        Ok(Quiver { vertices: self.vertices.clone(), eps2: e })
    }

    /// Drops the listed vertices.
    pub fn without(&self, ids: &[usize]) -> Quiver {
        let keep: Vec<usize> = (0..self.len()).filter(|&i| !ids.contains(&self.vertices[i].id)).collect();
        Quiver {
            vertices: keep.iter().map(|&i| self.vertices[i]).collect(),
            eps2: keep.iter().map(|&i| keep.iter().map(|&j| self.eps2[i][j]).collect()).collect(),
        }
    }

    /// Adds row and column of `from` into those of `into`, then drops `from`.
    pub fn merge_into(&self, from: usize, into: usize) -> Result<Quiver, ClusterError> {
        let (f, t) = (self.pos(from)?, self.pos(into)?);
        let mut q = self.clone();
        for j in 0..q.len() {
            if j != f && j != t {
                q.eps2[t][j] += self.eps2[f][j];
                q.eps2[j][t] += self.eps2[j][f];
            }
        }
        Ok(q.without(&[from]))
    }

    /// Rank of the rows indexed by unfrozen vertices, over the rationals.
    pub fn unfrozen_rank(&self) -> usize {
        let rows: Vec<Vec<i64>> = (0..self.len())
            .filter(|&i| !self.vertices[i].frozen)
            .map(|i| self.eps2[i].iter().map(|&x| x as i64).collect())
            .collect();
        integer_rank(rows)
    }
}

/// Rank by fraction-free elimination.
fn integer_rank(mut a: Vec<Vec<i64>>) -> usize {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&r| a[r][c] != 0) else {
            continue;
        };
        a.swap(rank, p);
        for r in 0..rows {
            if r != rank && a[r][c] != 0 {
                let (x, y) = (a[rank][c], a[r][c]);
                let g = gcd(x.abs(), y.abs());
                for k in 0..cols {
                    a[r][k] = a[r][k] * (x / g) - a[rank][k] * (y / g);
                }
            }
        }
        rank += 1;
    }
    rank
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Vertex `k` sits on level `i_k`; the last vertex on each level is frozen.
///
/// Each crossing adds `w → e` (weight 1) inside its level and the four
/// half-arrows `e → n`, `n → w`, `e → s`, `s → w` to the adjacent levels,
/// where `w` is the previous vertex on the level and `n`, `s` are the most
/// recent vertices above and below.
pub fn initial_quiver(w: &BraidWord) -> Quiver {
    let l = w.len();
    let last: Vec<Option<usize>> = (0..=w.n()).map(|lev| w.positions_on(lev).last().copied()).collect();
    let vertices: Vec<Vertex> = (1..=l)
        .map(|k| {
            let level = w.letter(k);
            Vertex { id: k, level, frozen: last[level] == Some(k), active: true }
        })
        .collect();
    let mut eps2 = vec![vec![0i32; l]; l];
    let mut add = |a: Option<usize>, b: Option<usize>, x: i32| {
        if let (Some(a), Some(b)) = (a, b) {
            eps2[a - 1][b - 1] += x;
            eps2[b - 1][a - 1] -= x;
        }
    };
    let prev_on = |level: usize, k: usize| -> Option<usize> {
        if level == 0 || level >= w.n() {
            return None;
        }
        (1..k).rev().find(|&j| w.letter(j) == level)
    };
    for k in 1..=l {
        let i = w.letter(k);
        let west = prev_on(i, k);
        let east = Some(k);
        let north = prev_on(i - 1, k);
        let south = prev_on(i + 1, k);
        add(west, east, 2);
        add(east, north, 1);
        add(north, west, 1);
        add(east, south, 1);
        add(south, west, 1);
    }
    Quiver { vertices, eps2 }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::parse_braid;

    fn arrows(q: &Quiver) -> Vec<(usize, usize, i32)> {
        q.arrows().into_iter().map(|a| (a.from, a.to, a.weight2)).collect()
    }

    #[test]
    fn torus_link_quiver_is_a_path() {
        let q = initial_quiver(&parse_braid("1,1,1", None).unwrap());
        assert_eq!(arrows(&q), vec![(1, 2, 2), (2, 3, 2)]);
        assert!(q.vertex(3).unwrap().frozen);
    }

    #[test]
    fn single_crossing() {
        let q = initial_quiver(&parse_braid("1", None).unwrap());
        assert!(q.arrows().is_empty());
        assert!(q.vertex(1).unwrap().frozen);
    }

    #[test]
    fn mutation_is_involutive_and_reverses() {
        let q = initial_quiver(&parse_braid("1,1,1", None).unwrap());
        let m = q.mutate(1).unwrap();
        assert_eq!(arrows(&m), vec![(2, 1, 2), (2, 3, 2)]);
        assert_eq!(m.mutate(1).unwrap(), q);
        assert_eq!(q.mutate(3), Err(ClusterError::FrozenVertex(3)));
    }

    #[test]
    fn merge_adds_rows() {
        let q = initial_quiver(&parse_braid("1,2,1,2", None).unwrap());
        let m = q.merge_into(4, 3).unwrap();
        assert_eq!(m.len(), 3);
        for a in m.ids() {
            if a != 3 {
                assert_eq!(m.eps2(3, a), q.eps2(3, a) + q.eps2(4, a));
            }
        }
    }
}
