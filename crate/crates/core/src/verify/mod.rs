//! Acceptance suite: worked-example goldens plus randomized structural
//! checks over small random words.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Deserialize;
use thiserror::Error;

use crate::algebra::{LaurentPoly, Monomial, RationalFn, Var};
use crate::braid::{braid_move_sites, delete_crossing, parse_braid, BraidWord};
use crate::cluster::{initial_quiver, initial_seed, reduce_marked_points, seeds_equal, ReductionSpec, Seed};
use crate::dga::{commutative_product, quasidet_shadow_check, rotation_ratio_check, transfer_tower};
use crate::filling::{
    all_pinch_orders, braid_move_map, distinct_seeds, final_seed, pinch_scan, run_filling, stack_cancel,
    Compiler, Move, Plan,
};
use crate::ncalg::{NCMatrix, NCPoly};

/// Goldens shipped with the crate.
pub const DEFAULT_GOLDENS: &str = include_str!("goldens.json");

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error("golden file: {0}")]
    Goldens(#[from] serde_json::Error),
}

#[derive(Debug, Clone, Deserialize)]
pub struct Goldens {
    pub dga: DgaGolden,
    pub initial_seed: SeedGolden,
    pub scan: ScanGolden,
    pub filling: FillingGolden,
    pub census: Vec<CensusGolden>,
    pub reduction: ReductionGolden,
}

#[derive(Debug, Clone, Deserialize)]
pub struct DgaGolden {
    pub word: String,
    pub m1: Vec<Vec<String>>,
    pub m2: Vec<Vec<String>>,
    pub m3: Vec<Vec<String>>,
    pub differentials: Vec<String>,
}

#[derive(Debug, Clone, Deserialize)]
pub struct SeedGolden {
    pub word: String,
    pub frozen: Vec<usize>,
    pub arrows: Vec<(usize, usize, i32)>,
    pub vars: Vec<String>,
}

#[derive(Debug, Clone, Deserialize)]
pub struct ScanGolden {
    pub word: String,
    pub k: usize,
    /// Index of the first matrix in `u`.
    pub first: usize,
    pub u: Vec<Vec<Vec<String>>>,
    pub images: Vec<String>,
}

#[derive(Debug, Clone, Deserialize)]
pub struct FillingGolden {
    pub word: String,
    pub plan: Plan,
    pub sequence: Vec<usize>,
    pub arrows: Vec<(usize, usize, i32)>,
    pub vars: Vec<String>,
    pub relations: Vec<String>,
    pub chart: Vec<String>,
}

#[derive(Debug, Clone, Deserialize)]
pub struct CensusGolden {
    pub word: String,
    pub groups: usize,
    pub bound: usize,
}

#[derive(Debug, Clone, Deserialize)]
pub struct ReductionGolden {
    pub word: String,
    pub keep: Vec<usize>,
    pub arrows: Vec<(usize, usize, i32)>,
    pub vars: Vec<String>,
    /// A link with one marker per component already.
    pub link: String,
}

pub fn parse_goldens(text: &str) -> Result<Goldens, VerifyError> {
    Ok(serde_json::from_str(text)?)
}

pub fn default_goldens() -> Goldens {
    parse_goldens(DEFAULT_GOLDENS).expect("bundled goldens parse")
}

#[derive(Debug, Clone, Copy)]
pub struct VerifyConfig {
    pub seed: u64,
    /// Random points per identity.
    pub trials: usize,
    /// Random words for the structural criteria.
    pub words: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig { seed: 0x0b7a_1d5e, trials: 20, words: 50 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub id: u8,
    pub name: &'static str,
    /// `None` on success, otherwise the first failure.
    pub failure: Option<String>,
}

impl Outcome {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }

    /// `"[PASS] 3 scan golden"` or `"[FAIL] 3 scan golden: ..."`.
    pub fn line(&self) -> String {
        match &self.failure {
            None => format!("[PASS] {} {}", self.id, self.name),
            Some(why) => format!("[FAIL] {} {}: {why}", self.id, self.name),
        }
    }
}

type Check = Result<(), String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn word(text: &str) -> Result<BraidWord, String> {
    parse_braid(text, None).map_err(|e| format!("`{text}`: {e}"))
}

fn poly(text: &str) -> Result<LaurentPoly, String> {
    text.parse().map_err(|e| format!("`{text}`: {e}"))
}

fn ncpoly(text: &str) -> Result<NCPoly, String> {
    text.parse().map_err(|e| format!("`{text}`: {e}"))
}

fn monomial(text: &str) -> Result<Monomial, String> {
    poly(text)?.as_monomial().cloned().ok_or_else(|| format!("`{text}` is not a monomial"))
}

fn nc_matrix(rows: &[Vec<String>]) -> Result<NCMatrix, String> {
    let mut m = NCMatrix::zeros(rows.len());
    for (r, row) in rows.iter().enumerate() {
        ensure(row.len() == rows.len(), || "golden matrix is not square".into())?;
        for (c, e) in row.iter().enumerate() {
            m.set(r, c, ncpoly(e)?);
        }
    }
    Ok(m)
}

fn arrows_of(s: &Seed) -> Vec<(usize, usize, i32)> {
    s.quiver.arrows().into_iter().map(|a| (a.from, a.to, a.weight2)).collect()
}

fn same_arrows(s: &Seed, golden: &[(usize, usize, i32)]) -> Check {
    let mut want = golden.to_vec();
    want.sort();
    let got = arrows_of(s);
    ensure(got == want, || format!("arrows {got:?}, expected {want:?}"))
}

fn same_vars(s: &Seed, golden: &[String]) -> Check {
    ensure(s.quiver.len() == golden.len(), || format!("{} variables, expected {}", s.quiver.len(), golden.len()))?;
    for ((id, r), text) in s.vars().zip(golden) {
        let want = RationalFn::from(poly(text)?);
        ensure(r == &want, || format!("A{id} = {r}, expected {want}"))?;
    }
    Ok(())
}

/// Criterion 1: transfer matrices and differentials of the 3-strand example.
pub fn check_dga(g: &DgaGolden) -> Check {
    let w = word(&g.word)?;
    let tower = transfer_tower(&w);
    for (k, rows) in [&g.m1, &g.m2, &g.m3].into_iter().enumerate() {
        let want = nc_matrix(rows)?;
        ensure(tower.nc(k + 1) == &want, || format!("M^({}) = {}", k + 1, tower.nc(k + 1)))?;
    }
    let d = crate::dga::differentials_of(&tower);
    ensure(d.len() == g.differentials.len(), || "differential count".into())?;
    for (k, (got, text)) in d.iter().zip(&g.differentials).enumerate() {
        ensure(got == &ncpoly(text)?, || format!("∂a{} = {got}", k + 1))?;
    }
    Ok(())
}

/// Criterion 2: initial quiver and cluster variables.
pub fn check_initial_seed(g: &SeedGolden) -> Check {
    let s = initial_seed(&word(&g.word)?);
    same_arrows(&s, &g.arrows)?;
    let frozen: Vec<usize> = s.quiver.vertices().iter().filter(|v| v.frozen).map(|v| v.id).collect();
    ensure(frozen == g.frozen, || format!("frozen {frozen:?}"))?;
    same_vars(&s, &g.vars)
}

/// Criterion 3: non-commutative matrix scanning.
pub fn check_scan(g: &ScanGolden) -> Check {
    let sc = pinch_scan(&word(&g.word)?, g.k).map_err(err)?;
    for (off, rows) in g.u.iter().enumerate() {
        let s = g.first + off;
        let got = sc.u(s).ok_or_else(|| format!("no U^({s})"))?;
        ensure(got == &nc_matrix(rows)?, || format!("U^({s}) = {got}"))?;
    }
    ensure(sc.images.len() == g.images.len(), || "image count".into())?;
    for (s, text) in g.images.iter().enumerate() {
        let got = sc.image(s + 1);
        ensure(got == &ncpoly(text)?, || format!("Φ(b{}) = {got}", s + 1))?;
    }
    Ok(())
}

/// Criterion 4: the worked filling end to end.
pub fn check_filling(g: &FillingGolden) -> Check {
    let w = word(&g.word)?;
    let r = run_filling(&w, &g.plan).map_err(err)?;
    ensure(r.mutation_sequence == g.sequence, || format!("sequence {:?}", r.mutation_sequence))?;
    same_arrows(&r.final_seed, &g.arrows)?;
    same_vars(&r.final_seed, &g.vars)?;
    for (j, text) in g.relations.iter().enumerate() {
        let got = r.chart.relations.get(j).ok_or_else(|| format!("no relation {}", j + 1))?;
        ensure(got == &monomial(text)?, || format!("relation {}: {}", j + 1, r.chart.relation_strings()[j]))?;
    }
    for (k, text) in g.chart.iter().enumerate() {
        let got = r.chart.monomial(k + 1).ok_or_else(|| format!("no chart entry {}", k + 1))?;
        ensure(got == &monomial(text)?, || format!("A'{} = {got}", k + 1))?;
    }
    ensure(r.chart.determinant.map(i128::abs) == Some(1), || format!("determinant {:?}", r.chart.determinant))
}

/// Random words with every level used: `2 ≤ n ≤ 4`, `l ≤ 8`.
pub fn random_words(count: usize, rng: &mut impl Rng) -> Vec<BraidWord> {
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let n = rng.gen_range(2..=4);
        let l = rng.gen_range(n - 1..=8);
        let letters = (0..l).map(|_| rng.gen_range(1..n)).collect();
        if let Ok(w) = BraidWord::new(n, letters) {
            out.push(w);
        }
    }
    out
}

/// Criterion 5 on one word.
pub fn check_structure(w: &BraidWord, trials: usize, rng: &mut impl Rng) -> Check {
    let n = w.n();
    let chords: Vec<Var> = (1..=w.len() as u32).map(Var::b).collect();
    let m1 = commutative_product(n, w.letters(), &chords);
    ensure(m1.det().map_err(err)?.is_one(), || format!("{w}: det M^(1) ≠ 1"))?;

    let seed = initial_seed(w);
    for level in 1..n {
        let id = seed.quiver.frozen_on(level).ok_or_else(|| format!("{w}: no frozen vertex on {level}"))?;
        let minor = RationalFn::from(m1.principal_minor(level).map_err(err)?);
        ensure(seed.var(id).map_err(err)? == &minor, || format!("{w}: frozen {id} is not Δ_{level}"))?;
    }

    ensure(quasidet_shadow_check(w, trials, rng).map_err(err)?, || format!("{w}: quasideterminant shadow"))?;
    ensure(rotation_ratio_check(w, trials, rng).map_err(err)?, || format!("{w}: rotation ratio"))?;

    for p in braid_move_sites(w) {
        let mut c = Compiler::new(w);
        let v = c.step(Move::Braid { pos: p }).map_err(err)?;
        let moved = initial_seed(&c.word).substitute(&braid_move_map(w, p).map_err(err)?).map_err(err)?;
        let mutated = seed.apply_mutation_sequence(&v).map_err(err)?;
        ensure(seeds_equal(&moved, &mutated), || format!("{w}: braid move at {p}"))?;
    }

    for v in seed.quiver.vertices().iter().filter(|v| !v.frozen) {
        let q = seed.quiver.mutate(v.id).map_err(err)?;
        ensure(q.mutate(v.id).map_err(err)? == seed.quiver, || format!("{w}: μ{} on the quiver", v.id))?;
        let back = seed.mutate(v.id).and_then(|s| s.mutate(v.id)).map_err(err)?;
        let same = back.vars().zip(seed.vars()).all(|((_, a), (_, b))| a == b);
        ensure(same, || format!("{w}: μ{} on the seed", v.id))?;
    }

    for k in 1..=w.len() {
        subquiver_after_pinch(w, k)?;
    }
    Ok(())
}

/// After the mutations of a single pinch, the unfrozen part minus the
/// consumed vertex is the unfrozen initial quiver of the shorter word.
fn subquiver_after_pinch(w: &BraidWord, k: usize) -> Check {
    let mut c = Compiler::new(w);
    let seq = stack_cancel(c.step(Move::Pinch { pos: k }).map_err(err)?);
    let mut q = initial_quiver(w);
    for &v in &seq {
        q = q.mutate(v).map_err(err)?;
    }
    let shorter = delete_crossing(w, k).map_err(err)?;
    let target = initial_quiver(&shorter);
    // Vertex ids of the shorter word, matched level by level in order.
    let mut relabel = Vec::new();
    for level in 1..w.n() {
        let mine = c.ledger.unfrozen(level);
        let theirs: Vec<usize> = target.vertices().iter().filter(|v| v.level == level && !v.frozen).map(|v| v.id).collect();
        ensure(mine.len() == theirs.len(), || format!("{w}: pinch {k} leaves level {level} misaligned"))?;
        relabel.extend(theirs.into_iter().zip(mine.iter().copied()));
    }
    for &(a, a2) in &relabel {
        for &(b, b2) in &relabel {
            ensure(target.eps2(a, b) == q.eps2(a2, b2), || {
                format!("{w}: pinch {k}: arrow {a}→{b} is {}, expected {}", q.eps2(a2, b2), target.eps2(a, b))
            })?;
        }
    }
    Ok(())
}

/// Criterion 6 on one word: pinching `k` first sends `b_k` to `p_k`.
pub fn check_pinch_first(w: &BraidWord) -> Check {
    for k in 1..=w.len() {
        let r = run_filling(w, &Plan::pinch_first(w.len(), k)).map_err(|e| format!("{w}, pinch {k} first: {e}"))?;
        let img = &r.chart.images[&Var::b(k as u32)];
        let unit = LaurentPoly::var(Var::p(k as u32));
        ensure(img == &unit, || format!("{w}: b{k} ↦ {img}"))?;
        ensure(r.chart.determinant.map(i128::abs) == Some(1), || format!("{w}, pinch {k} first: determinant"))?;
    }
    Ok(())
}

/// Pure pinch-order plans, in lexicographic order of the orders.
pub fn pinch_order_plans(l: usize) -> Vec<Plan> {
    all_pinch_orders(l).iter().map(|o| Plan::from_pinch_order(o)).collect()
}

/// Unfrozen cluster variables of a seed, as a multiset.
fn unfrozen_vars(s: &Seed) -> Vec<RationalFn> {
    s.quiver.vertices().iter().filter(|v| !v.frozen).filter_map(|v| s.var(v.id).ok().cloned()).collect()
}

fn same_var_set(a: &[RationalFn], b: &[RationalFn]) -> bool {
    a.len() == b.len() && a.iter().all(|x| b.contains(x)) && b.iter().all(|y| a.contains(y))
}

/// Census oracle that ignores the quiver: counts distinct sets of unfrozen
/// cluster variables.
pub fn count_variable_sets(w: &BraidWord, plans: &[Plan]) -> Result<usize, String> {
    let mut reps: Vec<Vec<RationalFn>> = Vec::new();
    for plan in plans {
        let (_, seed) = final_seed(w, plan).map_err(err)?;
        let vars = unfrozen_vars(&seed);
        if !reps.iter().any(|r| same_var_set(r, &vars)) {
            reps.push(vars);
        }
    }
    Ok(reps.len())
}

/// Criterion 7: seed census over all pinch orders.
pub fn check_census(g: &[CensusGolden], rng: &mut impl Rng) -> Check {
    for c in g {
        let w = word(&c.word)?;
        let mut plans = pinch_order_plans(w.len());
        let groups = distinct_seeds(&w, &plans).map_err(err)?.len();
        plans.shuffle(rng);
        let shuffled = distinct_seeds(&w, &plans).map_err(err)?.len();
        ensure(groups == shuffled, || format!("{}: {groups} groups, {shuffled} after shuffling", c.word))?;
        let oracle = count_variable_sets(&w, &plans)?;
        ensure(groups == oracle, || format!("{}: {groups} seed groups, {oracle} variable sets", c.word))?;
        ensure(groups <= c.bound, || format!("{}: {groups} groups exceed {}", c.word, c.bound))?;
        ensure(groups == c.groups, || format!("{}: {groups} groups, golden {}", c.word, c.groups))?;
    }
    Ok(())
}

/// Criterion 8: marker reduction.
pub fn check_reduction(g: &ReductionGolden) -> Check {
    let w = word(&g.word)?;
    let red = reduce_marked_points(&w, &initial_seed(&w), &ReductionSpec::keep(g.keep.iter().copied())).map_err(err)?;
    let s = initial_seed(&w);
    let kept: Vec<RationalFn> = red.quiver.ids().iter().map(|&id| s.var(id).cloned()).collect::<Result<_, _>>().map_err(err)?;
    let reduced = Seed::new(red.quiver, kept).map_err(err)?;
    same_arrows(&reduced, &g.arrows)?;
    same_vars(&reduced, &g.vars)?;
    ensure(reduced.quiver.vertices().iter().all(|v| !v.frozen), || "a frozen vertex survived".into())?;

    let link = word(&g.link)?;
    let ls = initial_seed(&link);
    let all: BTreeSet<usize> = (1..=link.n()).collect();
    for drop in 1..=link.n() {
        let spec = ReductionSpec::keep(all.iter().copied().filter(|&i| i != drop));
        ensure(reduce_marked_points(&link, &ls, &spec).is_err(), || format!("{}: dropping t{drop} accepted", g.link))?;
    }
    Ok(())
}

fn outcome(id: u8, name: &'static str, check: Check) -> Outcome {
    Outcome { id, name, failure: check.err() }
}

/// Runs criteria 1 to 8.
pub fn run_acceptance(g: &Goldens, cfg: &VerifyConfig) -> Vec<Outcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let words = random_words(cfg.words, &mut rng);
    let trials = cfg.trials.max(1);
    vec![
        outcome(1, "dga golden", check_dga(&g.dga)),
        outcome(2, "initial seed golden", check_initial_seed(&g.initial_seed)),
        outcome(3, "scan golden", check_scan(&g.scan)),
        outcome(4, "end-to-end filling golden", check_filling(&g.filling)),
        outcome(5, "structural properties", words.iter().try_for_each(|w| check_structure(w, trials, &mut rng))),
        outcome(6, "pinch-first property", words.iter().try_for_each(check_pinch_first)),
        outcome(7, "census", check_census(&g.census, &mut rng)),
        outcome(8, "reduction golden", check_reduction(&g.reduction)),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_goldens_parse() {
        let g = default_goldens();
        assert_eq!(g.scan.u.len(), 7);
        assert_eq!(g.filling.plan.moves.len(), 10);
    }

    #[test]
    fn corrupted_goldens_name_the_failure() {
        let mut g = default_goldens();
        g.initial_seed.vars[0] = "b2".into();
        let err = check_initial_seed(&g.initial_seed).unwrap_err();
        assert!(err.contains("A1"), "{err}");
        assert!(parse_goldens("{").is_err());
    }

    #[test]
    fn random_words_use_every_level() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for w in random_words(30, &mut rng) {
            assert!(w.len() <= 8 && (2..=4).contains(&w.n()));
        }
    }
}
