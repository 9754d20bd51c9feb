use super::pipeline::final_seed;
use super::plan::Plan;
use super::FillingError;
use crate::braid::BraidWord;
use crate::cluster::{seeds_equal, Seed};

/// Every ordering of `1..=l`, lexicographically.
pub fn all_pinch_orders(l: usize) -> Vec<Vec<usize>> {
    fn go(rest: &mut Vec<usize>, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest.is_empty() {
            out.push(cur.clone());
            return;
        }
        for idx in 0..rest.len() {
            let x = rest.remove(idx);
            cur.push(x);
            go(rest, cur, out);
            cur.pop();
            rest.insert(idx, x);
        }
    }
    let mut out = Vec::new();
    go(&mut (1..=l).collect(), &mut Vec::new(), &mut out);
    out
}

/// Groups plan indices by the final seed they reach. Groups are listed in
/// order of their first member.
pub fn distinct_seeds(w: &BraidWord, plans: &[Plan]) -> Result<Vec<Vec<usize>>, FillingError> {
    let mut reps: Vec<Seed> = Vec::new();
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for (idx, plan) in plans.iter().enumerate() {
        let (_, seed) = final_seed(w, plan)?;
        match reps.iter().position(|r| seeds_equal(r, &seed)) {
            Some(g) => groups[g].push(idx),
            None => {
                reps.push(seed);
                groups.push(vec![idx]);
            }
        }
    }
    Ok(groups)
}
