use std::collections::BTreeMap;

use super::ledger::compile_mutation_sequence;
use super::maps::{braid_triple, rotated_entry};
use super::plan::{Move, Plan};
use super::scan::{d_matrix, marker_push, scan_with};
use super::FillingError;
use crate::algebra::{LaurentPoly, Monomial, RationalFn, Var, VarKind};
use crate::braid::{apply_braid_move, BraidError, BraidWord, Direction};
use crate::cluster::{initial_seed, Seed};

/// One slot of the evolving front: a surviving crossing with its original
/// chord label, or the diagonal left where a crossing was pinched.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Item {
    Crossing { letter: usize, label: u32 },
    /// 1-based diagonal entries; index 0 is unused.
    Site(Vec<Monomial>),
}

/// Word, accumulated pullback of the original chords and per-level marker
/// monomials along an admissible filling.
#[derive(Debug, Clone)]
pub struct LinkState {
    n: usize,
    length: usize,
    layout: Vec<Item>,
    sigma: BTreeMap<Var, LaurentPoly>,
    tau: Vec<Monomial>,
    spent: Vec<Var>,
}

impl LinkState {
    pub fn new(w: &BraidWord) -> Self {
        let layout = w
            .letters()
            .iter()
            .enumerate()
            .map(|(k, &letter)| Item::Crossing { letter, label: k as u32 + 1 })
            .collect();
        let sigma = (1..=w.len() as u32).map(|s| (Var::b(s), LaurentPoly::var(Var::b(s)))).collect();
        let tau = (0..=w.n()).map(|j| if j == 0 { Monomial::one() } else { Monomial::var(Var::t(j as u32)) }).collect();
        LinkState { n: w.n(), length: w.len(), layout, sigma, tau, spent: Vec::new() }
    }

    fn crossings(&self) -> Vec<(usize, usize, u32)> {
        self.layout
            .iter()
            .enumerate()
            .filter_map(|(at, item)| match item {
                Item::Crossing { letter, label } => Some((at, *letter, *label)),
                Item::Site(_) => None,
            })
            .collect()
    }

    /// Current word; levels may be empty.
    pub fn word(&self) -> BraidWord {
        BraidWord::partial(self.n, self.crossings().iter().map(|c| c.1).collect()).expect("letters stay in range")
    }

    /// Original chord labels of the surviving crossings, in word order.
    pub fn labels(&self) -> Vec<u32> {
        self.crossings().iter().map(|c| c.2).collect()
    }

    pub fn layout(&self) -> &[Item] {
        &self.layout
    }

    /// Image of each original chord in the current chords, `p` and `t`.
    pub fn sigma(&self) -> &BTreeMap<Var, LaurentPoly> {
        &self.sigma
    }

    /// Marker monomial on level `j`, 1-based.
    pub fn tau(&self, j: usize) -> &Monomial {
        &self.tau[j]
    }

    /// Curve variables introduced so far, in pinch order.
    pub fn spent(&self) -> &[Var] {
        &self.spent
    }

    pub fn apply(&mut self, mv: Move) -> Result<(), FillingError> {
        match mv {
            Move::Pinch { pos } => self.pinch(pos),
            Move::Braid { pos } => self.braid(pos),
            Move::Rotate { dir } => self.rotate(dir),
            Move::Minimum if self.layout.iter().all(|it| matches!(it, Item::Site(_))) => Ok(()),
            Move::Minimum => Err(FillingError::InvalidMove("minimum on a nonempty word".into())),
        }
    }

    fn compose(&mut self, step: &BTreeMap<Var, LaurentPoly>) -> Result<(), FillingError> {
        for img in self.sigma.values_mut() {
            *img = img.substitute(step)?;
        }
        Ok(())
    }

    fn pinch(&mut self, k: usize) -> Result<(), FillingError> {
        let cs = self.crossings();
        if k == 0 || k > cs.len() {
            return Err(FillingError::InvalidMove(format!("no crossing at position {k}")));
        }
        let (at, i, x) = cs[k - 1];
        let n = self.n;

        // Marker weight already sitting in front of crossing x.
        let mut delta = vec![Monomial::one(); n + 1];
        for item in &self.layout[..at] {
            match item {
                Item::Site(d) => {
                    for j in 1..=n {
                        delta[j] = delta[j].mul(&d[j]);
                    }
                }
                Item::Crossing { letter, .. } => delta.swap(*letter, letter + 1),
            }
        }
        let px = Var::p(x);
        let shift = delta[i + 1].div(&delta[i]).expect("marker weights are invertible");
        let mine = Monomial::var(px).div(&shift).expect("marker weights are invertible");

        let letters: Vec<usize> = cs.iter().map(|c| c.1).collect();
        let chords: Vec<Var> = cs.iter().map(|c| Var::b(c.2)).collect();
        let scan = scan_with(n, &letters, &chords, k, px)?;
        let push = marker_push(n, i, &mine, &letters[k..]);

        let to_mine = BTreeMap::from([(px, LaurentPoly::from_monomial(mine.clone()))]);
        let rescale: BTreeMap<Var, LaurentPoly> = push
            .factors
            .iter()
            .zip(&chords[k..])
            .map(|(f, &y)| {
                let back = f.inv().expect("curve monomial").mul(&Monomial::var(y));
                (y, LaurentPoly::from_monomial(back))
            })
            .collect();
        let mut step = BTreeMap::new();
        for s in 1..=cs.len() {
            let img = scan.image(s).abelianize().substitute(&to_mine)?;
            let img = if s > k { img.substitute(&rescale)? } else { img };
            step.insert(chords[s - 1], img);
        }
        step.insert(chords[k - 1], LaurentPoly::from_monomial(mine));
        self.compose(&step)?;

        for j in 1..=n {
            self.tau[j] = self.tau[j].mul(&push.diag[j]);
        }
        self.layout[at] = Item::Site(d_matrix(n, i, &Monomial::var(px)));
        self.spent.push(px);
        Ok(())
    }

    fn braid(&mut self, p: usize) -> Result<(), FillingError> {
        let cs = self.crossings();
        if p == 0 || p + 2 > cs.len() {
            return Err(BraidError::PatternMismatch(p).into());
        }
        apply_braid_move(&self.word(), p)?;
        let (a, i, x) = cs[p - 1];
        let (_, j, y) = cs[p];
        let (c, _, z) = cs[p + 1];

        // Sites inside the triple slide to its right end.
        let mut sites = Vec::new();
        for (off, item) in self.layout[a..=c].iter().enumerate() {
            if let Item::Site(d) = item {
                let mut d = d.clone();
                for later in &self.layout[a + off + 1..=c] {
                    if let Item::Crossing { letter, .. } = later {
                        d.swap(*letter, letter + 1);
                    }
                }
                sites.push(Item::Site(d));
            }
        }
        let mut window = vec![
            Item::Crossing { letter: j, label: x },
            Item::Crossing { letter: i, label: y },
            Item::Crossing { letter: j, label: z },
        ];
        window.extend(sites);
        self.layout.splice(a..=c, window);
        self.compose(&braid_triple(Var::b(x), Var::b(y), Var::b(z)))
    }

    fn rotate(&mut self, dir: Direction) -> Result<(), FillingError> {
        if dir == Direction::FrontToLast {
            return Err(FillingError::BackwardUnsupported);
        }
        let cs = self.crossings();
        let Some(&(at, _, y)) = cs.last() else {
            return Err(FillingError::InvalidMove("rotation of the empty word".into()));
        };
        let i = cs[cs.len() - 1].1;
        let item = self.layout.remove(at);
        self.layout.insert(0, item);
        // The crossing passes the marker diagonal on its way round.
        let (ti, tn) = (Monomial::var(Var::t(i as u32)), Monomial::var(Var::t(i as u32 + 1)));
        let (di, dn) = (self.tau[i].div(&ti).expect("marker"), self.tau[i + 1].div(&tn).expect("marker"));
        self.tau[i] = ti.mul(&dn);
        self.tau[i + 1] = tn.mul(&di);
        let letters: Vec<usize> = self.crossings().iter().map(|c| c.1).collect();
        let chords: Vec<Var> = self.labels().into_iter().map(Var::b).collect();
        let markers: BTreeMap<Var, LaurentPoly> =
            (1..=self.n).map(|j| (Var::t(j as u32), LaurentPoly::from_monomial(self.tau[j].clone()))).collect();
        let img = rotated_entry(self.n, &letters, &chords).substitute(&markers)?;
        self.compose(&BTreeMap::from([(Var::b(y), img)]))
    }

    /// Solves `tau_j = 1` for each `t_j` and rewrites the final seed in the
    /// curve variables.
    pub fn finish(&self, seed: &Seed) -> Result<TorusChart, FillingError> {
        let left = self.crossings().len();
        if left > 0 {
            return Err(FillingError::IncompletePlan(left));
        }
        let mut solve = BTreeMap::new();
        let relations: Vec<Monomial> = self.tau[1..].to_vec();
        for (j, tau) in relations.iter().enumerate() {
            let tj = Var::t(j as u32 + 1);
            let stray = tau.vars().any(|v| v.kind == VarKind::Marker && v != tj);
            if tau.exp(tj) != 1 || stray {
                return Err(FillingError::UnsolvableRelations(relation_text(tau)));
            }
            let rest = tau.div(&Monomial::var(tj)).expect("invertible");
            solve.insert(tj, LaurentPoly::from_monomial(rest.inv().expect("invertible")));
        }
        let images = self
            .sigma
            .iter()
            .map(|(&v, img)| Ok((v, img.substitute(&solve)?)))
            .collect::<Result<BTreeMap<_, _>, FillingError>>()?;

        let mut chart = Vec::new();
        for (id, r) in seed.vars() {
            let q = RationalFn::new(r.num().substitute(&images)?, r.den().substitute(&images)?)?;
            let m = match (q.num().as_monomial(), q.den().as_monomial()) {
                (Some(a), Some(b)) => a.div(b),
                _ => None,
            };
            match m {
                Some(m) if m.vars().all(|v| v.kind == VarKind::Curve) => chart.push((id, m)),
                _ => return Err(FillingError::NonMonomial(format!("A'{id} = {q}"))),
            }
        }
        let exponent_matrix: Vec<Vec<i32>> = chart
            .iter()
            .map(|(_, m)| (1..=self.length as u32).map(|c| m.exp(Var::p(c))).collect())
            .collect();
        let determinant = integer_det(&exponent_matrix);
        Ok(TorusChart { relations, images, chart, exponent_matrix, determinant })
    }
}

/// Monodromy relations, chord images and the final seed in curve variables.
#[derive(Debug, Clone)]
pub struct TorusChart {
    /// `tau_j`, one per level; each equals 1 on the chart.
    pub relations: Vec<Monomial>,
    /// Original chord images after eliminating the markers.
    pub images: BTreeMap<Var, LaurentPoly>,
    /// Final cluster variables by vertex id.
    pub chart: Vec<(usize, Monomial)>,
    /// Row per vertex, column per curve variable `p_1..p_l`.
    pub exponent_matrix: Vec<Vec<i32>>,
    pub determinant: Option<i128>,
}

impl TorusChart {
    /// Relations as `"p1 p4 p7 t1 = 1"`: curve factors first.
    pub fn relation_strings(&self) -> Vec<String> {
        self.relations.iter().map(relation_text).collect()
    }

    pub fn monomial(&self, id: usize) -> Option<&Monomial> {
        self.chart.iter().find(|(v, _)| *v == id).map(|(_, m)| m)
    }
}

fn relation_text(m: &Monomial) -> String {
    let factor = |&(v, e): &(Var, i32)| Monomial::new([(v, e)]).expect("valid factor").to_string();
    let mut parts: Vec<String> = m.pairs().iter().filter(|(v, _)| v.kind == VarKind::Curve).map(factor).collect();
    parts.extend(m.pairs().iter().filter(|(v, _)| v.kind != VarKind::Curve).map(factor));
    if parts.is_empty() {
        parts.push("1".into());
    }
    format!("{} = 1", parts.join(" "))
}

/// Fraction-free Gaussian elimination; `None` if the matrix is not square.
fn integer_det(rows: &[Vec<i32>]) -> Option<i128> {
    let n = rows.len();
    if rows.iter().any(|r| r.len() != n) {
        return None;
    }
    let mut a: Vec<Vec<i128>> = rows.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let mut sign = 1;
    let mut prev = 1i128;
    for k in 0..n {
        let Some(p) = (k..n).find(|&r| a[r][k] != 0) else {
            return Some(0);
        };
        if p != k {
            a.swap(p, k);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    Some(if n == 0 { 1 } else { sign * a[n - 1][n - 1] })
}

#[derive(Debug, Clone)]
pub struct FillingResult {
    /// Application order, first entry applied first.
    pub mutation_sequence: Vec<usize>,
    pub final_seed: Seed,
    pub chart: TorusChart,
    pub state: LinkState,
}

/// Compiled mutation sequence and the seed it reaches from the initial seed.
pub fn final_seed(w: &BraidWord, plan: &Plan) -> Result<(Vec<usize>, Seed), FillingError> {
    let seq = compile_mutation_sequence(w, plan)?;
    let seed = initial_seed(w).apply_mutation_sequence(&seq)?;
    Ok((seq, seed))
}

/// Runs a complete plan: final seed by mutation, chart by chord maps.
pub fn run_filling(w: &BraidWord, plan: &Plan) -> Result<FillingResult, FillingError> {
    let (mutation_sequence, final_seed) = final_seed(w, plan)?;
    let mut state = LinkState::new(w);
    for &mv in &plan.moves {
        state.apply(mv)?;
    }
    let chart = state.finish(&final_seed)?;
    Ok(FillingResult { mutation_sequence, final_seed, chart, state })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::parse_braid;

    fn m(s: &str) -> Monomial {
        s.parse::<LaurentPoly>().unwrap().as_monomial().unwrap().clone()
    }

    fn example_plan() -> Plan {
        let mut moves: Vec<Move> = [6, 6, 1].iter().map(|&pos| Move::Pinch { pos }).collect();
        moves.push(Move::Braid { pos: 2 });
        moves.push(Move::Rotate { dir: Direction::LastToFront });
        moves.extend((1..=5).rev().map(|pos| Move::Pinch { pos }));
        Plan::new(moves)
    }

    #[test]
    fn determinant_examples() {
        assert_eq!(integer_det(&[vec![2, 1], vec![1, 1]]), Some(1));
        assert_eq!(integer_det(&[vec![0, 1, 0], vec![1, 0, 0], vec![0, 0, 1]]), Some(-1));
        assert_eq!(integer_det(&[vec![1, 2], vec![2, 4]]), Some(0));
        assert_eq!(integer_det(&[vec![1, 2]]), None);
    }

    #[test]
    fn relation_text_puts_curves_first() {
        assert_eq!(relation_text(&m("t1 p1 p4 p7")), "p1 p4 p7 t1 = 1");
    }

    #[test]
    fn trefoil_left_to_right() {
        let w = parse_braid("1,1,1", None).unwrap();
        let r = run_filling(&w, &Plan::new(vec![Move::Pinch { pos: 1 }; 3])).unwrap();
        assert!(r.mutation_sequence.is_empty());
        assert_eq!(r.chart.determinant.map(i128::abs), Some(1));
        assert_eq!(r.chart.images[&Var::b(1)].as_monomial(), Some(&Monomial::var(Var::p(1))));
        assert_eq!(r.chart.monomial(1), Some(&Monomial::var(Var::p(1))));
    }

    #[test]
    fn worked_example_chart() {
        let w = parse_braid("1,3,1,2,1,3,1,2", None).unwrap();
        let r = run_filling(&w, &example_plan()).unwrap();
        assert_eq!(r.mutation_sequence, vec![1, 3, 2, 5, 1, 3, 1, 3, 5, 3]);
        assert_eq!(r.chart.relations[0], m("p1 p4 p7 t1"));
        assert_eq!(r.chart.relations[1], m("p8 p1^-1 p3 p4^-1 p5 p7^-1 t2"));
        let expected = [
            (1, "p7"),
            (2, "p6"),
            (3, "p1"),
            (4, "p3 p5"),
            (5, "p1 p5"),
            (6, "p2 p6"),
            (7, "p1 p4 p7"),
            (8, "p1 p2 p4 p6 p7 p3^-1 p5^-1 p8^-1"),
        ];
        for (id, mono) in expected {
            assert_eq!(r.chart.monomial(id), Some(&m(mono)), "A'{id}");
        }
        assert_eq!(r.chart.determinant.map(i128::abs), Some(1));
        let arrows: Vec<(usize, usize, i32)> =
            r.final_seed.quiver.arrows().into_iter().map(|a| (a.from, a.to, a.weight2)).collect();
        let expected_arrows = [
            (1, 5, 2),
            (2, 4, 2),
            (3, 5, 2),
            (4, 5, 2),
            (4, 8, 2),
            (5, 7, 2),
            (6, 2, 2),
            (7, 1, 2),
            (7, 4, 2),
            (8, 6, 1),
            (8, 7, 1),
        ];
        assert_eq!(arrows, expected_arrows);
        let vars = [
            "b7",
            "b6",
            "b1",
            "b4",
            "1 + b1 b3",
            "b4 + b2 b6",
            "1 + b1 b3 + b5 b7 + b1 b4 b7 + b1 b3 b5 b7",
            "b6 + b4 b8 + b5 b6 b7",
        ];
        for (k, v) in vars.iter().enumerate() {
            assert_eq!(r.final_seed.var(k + 1).unwrap(), &RationalFn::from(v.parse::<LaurentPoly>().unwrap()));
        }
    }

    #[test]
    fn rotated_plans_reach_unimodular_charts() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let mut runs = 0;
        while runs < 60 {
            let n = rng.gen_range(2..=4);
            let l = rng.gen_range(n - 1..=7);
            let letters: Vec<usize> = (0..l).map(|_| rng.gen_range(1..n)).collect();
            let Ok(w) = BraidWord::new(n, letters) else { continue };
            let mut moves = Vec::new();
            let mut len = l;
            let before = rng.gen_range(0..l);
            for step in 0..l {
                if step == before {
                    moves.push(Move::Rotate { dir: Direction::LastToFront });
                }
                moves.push(Move::Pinch { pos: rng.gen_range(1..=len) });
                len -= 1;
            }
            let r = run_filling(&w, &Plan::new(moves)).unwrap();
            assert_eq!(r.chart.determinant.map(i128::abs), Some(1), "{w}");
            runs += 1;
        }
    }

    #[test]
    fn incomplete_and_backward_plans() {
        let w = parse_braid("1,1,1", None).unwrap();
        let mut st = LinkState::new(&w);
        st.apply(Move::Pinch { pos: 1 }).unwrap();
        let seed = initial_seed(&w);
        assert_eq!(st.finish(&seed).unwrap_err(), FillingError::IncompletePlan(2));
        assert_eq!(st.apply(Move::Rotate { dir: Direction::FrontToLast }), Err(FillingError::BackwardUnsupported));
        assert!(st.apply(Move::Minimum).is_err());
    }
}
