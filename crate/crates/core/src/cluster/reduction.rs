use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::quiver::Quiver;
use super::seed::Seed;
use super::ClusterError;
use crate::algebra::{LaurentPoly, RationalFn};
use crate::braid::{closure_permutation, cycles, BraidWord};

/// Markers `t_i` kept after reduction, one per link component.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionSpec {
    pub kept: BTreeSet<usize>,
}

impl ReductionSpec {
    pub fn keep(kept: impl IntoIterator<Item = usize>) -> Self {
        ReductionSpec { kept: kept.into_iter().collect() }
    }
}

#[derive(Debug, Clone)]
pub struct Reduction {
    pub quiver: Quiver,
    /// `A_i + A_{i-1}` for each dropped `t_i`, with `A_0 = A_n = 1`.
    pub relations: Vec<RationalFn>,
}

/// Component index of each marker; `t_i` sits on the strand closing at `i`.
pub fn marker_components(w: &BraidWord) -> Vec<usize> {
    let mut comp = vec![0; w.n()];
    for (c, cyc) in cycles(&closure_permutation(w)).iter().enumerate() {
        for &i in cyc {
            comp[i - 1] = c;
        }
    }
    comp
}

fn find(parent: &mut [usize], x: usize) -> usize {
    if parent[x] != x {
        let r = find(parent, parent[x]);
        parent[x] = r;
    }
    parent[x]
}

/// Sets every dropped marker to 1.
///
/// Frozen slot `k` carries `Δ_k = ∏_{i≤k} t_i^{-1}`, with `Δ_0 = Δ_n = 1`.
/// Dropping `t_i` identifies slots `i-1` and `i`: frozen vertices tied to
/// slot 0 or `n` are deleted, the others in one class are merged.
pub fn reduce_marked_points(w: &BraidWord, seed: &Seed, spec: &ReductionSpec) -> Result<Reduction, ClusterError> {
    let n = w.n();
    let comp = marker_components(w);
    let components = comp.iter().collect::<BTreeSet<_>>().len();
    if let Some(&i) = spec.kept.iter().find(|&&i| i == 0 || i > n) {
        return Err(ClusterError::InvalidReduction(format!("no marker t{i}")));
    }
    if spec.kept.len() != components {
        return Err(ClusterError::InvalidReduction(format!(
            "{} markers kept for {components} components",
            spec.kept.len()
        )));
    }
    let hit: BTreeSet<usize> = spec.kept.iter().map(|&i| comp[i - 1]).collect();
    if hit.len() != components {
        return Err(ClusterError::InvalidReduction("two kept markers on one component".into()));
    }

    let frozen = |k: usize| -> Result<RationalFn, ClusterError> {
        if k == 0 || k == n {
            return Ok(RationalFn::one());
        }
        let id = seed.quiver.frozen_on(k).ok_or(ClusterError::Malformed(format!("no frozen vertex on level {k}")))?;
        Ok(seed.var(id)?.clone())
    };
    let mut parent: Vec<usize> = (0..=n).collect();
    let mut relations = Vec::new();
    for i in (1..=n).filter(|i| !spec.kept.contains(i)) {
        relations.push(frozen(i)?.add(&frozen(i - 1)?));
        let (a, b) = (find(&mut parent, i - 1), find(&mut parent, i));
        parent[a.max(b)] = a.min(b);
    }

    let mut q = seed.quiver.clone();
    let root_n = find(&mut parent, n);
    let mut dead = Vec::new();
    let mut rep: Vec<Option<usize>> = vec![None; n + 1];
    for k in 1..n {
        let Some(id) = q.frozen_on(k) else { continue };
        let r = find(&mut parent, k);
        if r == 0 || r == root_n {
            dead.push(id);
        } else if let Some(into) = rep[r] {
            q = q.merge_into(id, into)?;
        } else {
            rep[r] = Some(id);
        }
    }
    Ok(Reduction { quiver: q.without(&dead), relations })
}

impl Reduction {
    /// Relations as polynomials, when every frozen variable is one.
    pub fn polynomial_relations(&self) -> Option<Vec<LaurentPoly>> {
        self.relations.iter().map(|r| r.as_poly().cloned()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::parse_braid;
    use crate::cluster::initial_seed;

    #[test]
    fn trefoil_loses_its_frozen_vertex() {
        let w = parse_braid("1,1,1", None).unwrap();
        let s = initial_seed(&w);
        for keep in [1, 2] {
            let red = reduce_marked_points(&w, &s, &ReductionSpec::keep([keep])).unwrap();
            assert_eq!(red.quiver.ids(), vec![1, 2]);
            assert!(red.quiver.vertices().iter().all(|v| !v.frozen));
            assert_eq!(red.quiver.eps2(1, 2), 2);
            assert_eq!(red.relations.len(), 1);
        }
    }

    #[test]
    fn hopf_link_admits_only_the_identity() {
        let w = parse_braid("1,1", None).unwrap();
        let s = initial_seed(&w);
        let red = reduce_marked_points(&w, &s, &ReductionSpec::keep([1, 2])).unwrap();
        assert_eq!(red.quiver, s.quiver);
        assert!(red.relations.is_empty());
        for keep in [1, 2] {
            assert!(matches!(
                reduce_marked_points(&w, &s, &ReductionSpec::keep([keep])),
                Err(ClusterError::InvalidReduction(_))
            ));
        }
    }

    #[test]
    fn middle_marker_merges_frozen_vertices() {
        // Three components: the identity permutation on 3 strands.
        let w = parse_braid("1,1,2,2", None).unwrap();
        assert_eq!(marker_components(&w), vec![0, 1, 2]);
        let s = initial_seed(&w);
        let red = reduce_marked_points(&w, &s, &ReductionSpec::keep([1, 2, 3])).unwrap();
        assert_eq!(red.quiver, s.quiver);
        assert!(reduce_marked_points(&w, &s, &ReductionSpec::keep([1, 3])).is_err());

        // Cycles {1} and {2, 3}.
        let w = parse_braid("2,1,1", None).unwrap();
        let s = initial_seed(&w);
        let (f1, f2) = (s.quiver.frozen_on(1).unwrap(), s.quiver.frozen_on(2).unwrap());
        let merged = reduce_marked_points(&w, &s, &ReductionSpec::keep([1, 3])).unwrap();
        assert_eq!(merged.quiver.len(), 2);
        assert!(merged.quiver.frozen_on(1).is_some() && merged.quiver.frozen_on(2).is_none());
        assert_eq!(merged.relations, vec![s.var(f2).unwrap().add(s.var(f1).unwrap())]);
        let deleted = reduce_marked_points(&w, &s, &ReductionSpec::keep([1, 2])).unwrap();
        assert_eq!(deleted.quiver.ids(), vec![2, 3]);
    }
}
