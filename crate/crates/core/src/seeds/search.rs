//! Depth-first search for complementary sets with completed-shift pruning.
//!
//! Cells of all member arrays are assigned from both ends inwards, so the
//! longest shifts complete first. Every shift `δ` in the positive half-space
//! keeps a running partial sum of `Σ x_p·conj(x_{p-δ})` over assigned pairs
//! and a count of pairs still open. A branch is cut when a completed shift is
//! nonzero, or when the open pairs (each contributing a unit) can no longer
//! cancel the partial sum: `|Re| + |Im| ≤ open` and `Re + Im ≡ open (mod 2)`.

use crate::ring::{Alphabet, GaussInt, Shape, Tensor};

/// Result of a bounded search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchOutcome {
    /// First solution in assignment order, with the nodes spent reaching it.
    Found { tensors: Vec<Tensor>, nodes: u64 },
    /// The whole (normalized) space was refuted.
    Exhausted { nodes: u64 },
    /// The node limit was hit before either of the above.
    BudgetExceeded { nodes: u64 },
}

impl SearchOutcome {
    pub fn nodes(&self) -> u64 {
        match self {
            SearchOutcome::Found { nodes, .. }
            | SearchOutcome::Exhausted { nodes }
            | SearchOutcome::BudgetExceeded { nodes } => *nodes,
        }
    }
}

/// Describes a complementary-set search problem.
#[derive(Clone, Debug)]
pub struct SearchProblem {
    pub shapes: Vec<Shape>,
    pub alphabet: Alphabet,
    /// Restrict to one representative per symmetry orbit; see [`SearchProblem::orbit_size`].
    pub normalize: bool,
}

impl SearchProblem {
    /// Positions pinned to 1 under normalization: the origin of every member,
    /// plus the first member's unit step along each dimension of extent ≥ 2.
    ///
    /// Scaling a member by a unit, and multiplying entry `k` of every member
    /// by `ω^k` (per dimension), both preserve complementarity. Together they
    /// act freely, so each orbit has exactly one member with these entries 1.
    pub fn pinned(&self) -> Vec<(usize, usize)> {
        if !self.normalize {
            return Vec::new();
        }
        let mut out: Vec<(usize, usize)> = (0..self.shapes.len()).map(|m| (m, 0)).collect();
        let first = &self.shapes[0];
        for d in 0..first.rank() {
            if first.dims()[d] >= 2 {
                let mut idx = vec![0; first.rank()];
                idx[d] = 1;
                out.push((0, first.flat_index(&idx)));
            }
        }
        out
    }

    /// Number of unnormalized solutions represented by each normalized one.
    pub fn orbit_size(&self) -> u64 {
        let units = self.alphabet.search_values().len() as u64;
        units.pow(self.pinned().len() as u32)
    }
}

#[derive(Clone, Copy, Debug)]
struct Term {
    shift: u32,
    other: u32,
    /// `true`: contributes `x_this·conj(x_other)`; otherwise `x_other·conj(x_this)`.
    forward: bool,
}

struct Plan {
    /// (member, flat index) per step.
    cells: Vec<(usize, usize)>,
    terms: Vec<Vec<Term>>,
    /// Step-local list of distinct shifts touched.
    touched: Vec<Vec<u32>>,
    open_init: Vec<u32>,
    fixed: Vec<Option<GaussInt>>,
}

fn build_plan(problem: &SearchProblem) -> Plan {
    let rank = problem.shapes[0].rank();
    let extent: Vec<usize> = (0..rank)
        .map(|k| problem.shapes.iter().map(|s| s.dims()[k]).max().unwrap_or(1))
        .collect();
    let grid = Shape::new(extent.iter().map(|e| 2 * e - 1).collect::<Vec<_>>()).expect("positive");

    // Two-ended order: the flat position f and its mirror N-1-f share a rank.
    let mut cells: Vec<(usize, usize)> = problem
        .shapes
        .iter()
        .enumerate()
        .flat_map(|(m, s)| (0..s.len()).map(move |f| (m, f)))
        .collect();
    cells.sort_by_key(|&(m, f)| {
        let n = problem.shapes[m].len();
        (f.min(n - 1 - f), f > n - 1 - f, m, f)
    });
    let mut step_of = vec![Vec::new(); problem.shapes.len()];
    for (m, s) in problem.shapes.iter().enumerate() {
        step_of[m] = vec![0u32; s.len()];
    }
    for (t, &(m, f)) in cells.iter().enumerate() {
        step_of[m][f] = t as u32;
    }

    let shift_id = |delta: &[isize]| -> u32 {
        let idx: Vec<usize> = delta
            .iter()
            .zip(&extent)
            .map(|(&d, &e)| (d + e as isize - 1) as usize)
            .collect();
        grid.flat_index(&idx) as u32
    };

    let mut terms = vec![Vec::new(); cells.len()];
    let mut open_init = vec![0u32; grid.len()];
    for (m, shape) in problem.shapes.iter().enumerate() {
        let n = shape.len();
        for p in 0..n {
            let pi = shape.multi_index(p);
            for q in 0..n {
                if p == q {
                    continue;
                }
                let qi = shape.multi_index(q);
                let delta: Vec<isize> = pi.iter().zip(&qi).map(|(&a, &b)| a as isize - b as isize).collect();
                // Positive half-space: first nonzero component positive.
                if delta.iter().find(|&&d| d != 0).copied().unwrap_or(0) < 0 {
                    continue;
                }
                let sid = shift_id(&delta);
                open_init[sid as usize] += 1;
                let (tp, tq) = (step_of[m][p], step_of[m][q]);
                if tp > tq {
                    terms[tp as usize].push(Term { shift: sid, other: tq, forward: true });
                } else {
                    terms[tq as usize].push(Term { shift: sid, other: tp, forward: false });
                }
            }
        }
    }
    let touched = terms
        .iter()
        .map(|ts| {
            let mut s: Vec<u32> = ts.iter().map(|t| t.shift).collect();
            s.sort_unstable();
            s.dedup();
            s
        })
        .collect();
    let pinned = problem.pinned();
    let fixed = cells
        .iter()
        .map(|cell| pinned.contains(cell).then_some(GaussInt::ONE))
        .collect();
    Plan {
        cells,
        terms,
        touched,
        open_init,
        fixed,
    }
}

struct Searcher<'a> {
    plan: &'a Plan,
    values: &'a [GaussInt],
    assigned: Vec<GaussInt>,
    partial: Vec<GaussInt>,
    open: Vec<u32>,
    nodes: u64,
    budget: u64,
    solutions: u64,
    /// Stop at the first solution rather than counting all.
    first_only: bool,
    exceeded: bool,
}

impl Searcher<'_> {
    fn feasible(&self, shifts: &[u32]) -> bool {
        shifts.iter().all(|&s| {
            let p = self.partial[s as usize];
            let open = self.open[s as usize] as i64;
            let l1 = p.re.abs() + p.im.abs();
            l1 <= open && (p.re + p.im + open) % 2 == 0
        })
    }

    fn apply(&mut self, step: usize, v: GaussInt, sign: i64) {
        for term in &self.plan.terms[step] {
            let o = self.assigned[term.other as usize];
            let prod = if term.forward { v * o.conj() } else { o * v.conj() };
            let s = term.shift as usize;
            if sign > 0 {
                self.partial[s] += prod;
                self.open[s] -= 1;
            } else {
                self.partial[s] -= prod;
                self.open[s] += 1;
            }
        }
    }

    /// Returns true when the search should stop.
    fn dfs(&mut self, step: usize) -> bool {
        if step == self.plan.cells.len() {
            self.solutions += 1;
            return self.first_only;
        }
        let candidates: &[GaussInt] = match &self.plan.fixed[step] {
            Some(v) => std::slice::from_ref(v),
            None => self.values,
        };
        for &v in candidates {
            self.nodes += 1;
            if self.nodes > self.budget {
                self.exceeded = true;
                return true;
            }
            self.assigned[step] = v;
            self.apply(step, v, 1);
            let ok = self.feasible(&self.plan.touched[step]);
            if ok && self.dfs(step + 1) {
                if !self.exceeded {
                    // Leave the solution in place for extraction.
                    return true;
                }
                self.apply(step, v, -1);
                return true;
            }
            self.apply(step, v, -1);
        }
        false
    }
}

/// Searches for a complementary set with the given member shapes.
pub fn search(problem: &SearchProblem, budget: u64) -> SearchOutcome {
    let plan = build_plan(problem);
    let mut searcher = Searcher {
        plan: &plan,
        values: problem.alphabet.search_values(),
        assigned: vec![GaussInt::ZERO; plan.cells.len()],
        partial: vec![GaussInt::ZERO; plan.open_init.len()],
        open: plan.open_init.clone(),
        nodes: 0,
        budget,
        solutions: 0,
        first_only: true,
        exceeded: false,
    };
    searcher.dfs(0);
    let nodes = searcher.nodes.min(budget);
    if searcher.exceeded {
        return SearchOutcome::BudgetExceeded { nodes };
    }
    if searcher.solutions == 0 {
        return SearchOutcome::Exhausted { nodes };
    }
    let mut members: Vec<Vec<GaussInt>> = problem.shapes.iter().map(|s| vec![GaussInt::ZERO; s.len()]).collect();
    for (t, &(m, f)) in plan.cells.iter().enumerate() {
        members[m][f] = searcher.assigned[t];
    }
    let tensors = members
        .into_iter()
        .zip(&problem.shapes)
        .map(|(e, s)| Tensor::new(s.clone(), e).expect("sized by shape"))
        .collect();
    SearchOutcome::Found { tensors, nodes }
}

/// Counts every solution (no budget), returning `(solutions, nodes)`.
pub fn count_solutions(problem: &SearchProblem) -> (u64, u64) {
    let plan = build_plan(problem);
    let mut searcher = Searcher {
        plan: &plan,
        values: problem.alphabet.search_values(),
        assigned: vec![GaussInt::ZERO; plan.cells.len()],
        partial: vec![GaussInt::ZERO; plan.open_init.len()],
        open: plan.open_init.clone(),
        nodes: 0,
        budget: u64::MAX,
        solutions: 0,
        first_only: false,
        exceeded: false,
    };
    searcher.dfs(0);
    (searcher.solutions, searcher.nodes)
}
