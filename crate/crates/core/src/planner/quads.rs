use std::cmp::Reverse;

use super::pairs::{pair_assignment, pair_recipe};
use super::recipe::{Op, Recipe};
use super::FeasibilityReport;
use crate::formats::Role;
use crate::ring::{Alphabet, Shape};
use crate::seeds::{SeedKey, SeedRegistry};

/// Plans a quad of rank 1 or 2. Strategies are tried in order: cross set of
/// two pairs, Lagrange over two weight-deficient quads, compromise over a
/// sum, expansion by a binary pair, and finally the fixed 799 and 959
/// pipelines. The fixed pipelines are reported even when a seed they need
/// is missing, so the caller learns which seed to supply.
pub fn plan_quad(alphabet: Alphabet, shape: &Shape, registry: &SeedRegistry) -> FeasibilityReport {
    let report = FeasibilityReport::new(alphabet, Role::Quad, shape);
    if shape.rank() > 2 {
        return report.infeasible("quads are planned for rank 1 or 2 only".into(), false);
    }
    let planner = QuadPlanner { alphabet, registry };
    let dims = shape.dims();
    let found = planner.ladder(dims, true).or_else(|| planner.template(dims));
    match found {
        Some((strategy, recipe)) => {
            let mut report = report;
            report.strategy = Some(strategy.into());
            report.with_recipe(recipe, registry)
        }
        None => report.infeasible("no strategy in the construction ladder covers this size".into(), false),
    }
}

struct QuadPlanner<'a> {
    alphabet: Alphabet,
    registry: &'a SeedRegistry,
}

impl QuadPlanner<'_> {
    fn ladder(&self, dims: &[usize], allow_expand: bool) -> Option<(&'static str, Recipe)> {
        if let Some(r) = self.cross(dims) {
            return Some(("cross_set", r));
        }
        if let Some(r) = self.lagrange(dims) {
            return Some(("lagrange_quad", r));
        }
        if let Some(r) = self.compromise(dims) {
            return Some(("compromise_quad", r));
        }
        if allow_expand {
            if let Some(r) = self.expand(dims) {
                return Some(("expand_quad", r));
            }
        }
        None
    }

    fn executable(&self, r: &Recipe) -> bool {
        r.missing_seeds(self.registry).is_empty()
    }

    /// A pair recipe in the planner's alphabet, if feasible and resolvable.
    fn pair(&self, dims: &[usize]) -> Option<Recipe> {
        self.pair_in(self.alphabet, dims)
    }

    fn pair_in(&self, alphabet: Alphabet, dims: &[usize]) -> Option<Recipe> {
        let assignment = pair_assignment(alphabet, dims).ok()?;
        let r = pair_recipe(alphabet, dims, &assignment);
        self.executable(&r).then_some(r)
    }

    /// Most balanced factorization first; ties go to the larger first factor.
    fn cross(&self, dims: &[usize]) -> Option<Recipe> {
        let mut cands: Vec<(Vec<usize>, Vec<usize>)> =
            divisor_vectors(dims).into_iter().map(|s| (quotient(dims, &s), s)).map(|(t, s)| (s, t)).collect();
        cands.sort_by_key(|(s, t)| (s.iter().zip(t).map(|(a, b)| a.abs_diff(*b)).sum::<usize>(), Reverse(s.clone())));
        cands.into_iter().find_map(|(s, t)| {
            let a = self.pair(&s)?;
            let b = self.pair(&t)?;
            Some(Recipe::node(Op::CrossSet, dims, vec![a, b]))
        })
    }

    /// Weight-deficient quad with all extent along `dim`.
    fn deficient(&self, rank: usize, dim: usize, extent: usize) -> Option<Recipe> {
        let shape = along(rank, dim, extent);
        if extent == 1 {
            return Some(Recipe::node(Op::UnitQuad, &shape, vec![]).with_rank(rank));
        }
        if extent % 2 == 1 {
            let m = extent / 2;
            let key = SeedKey::base_sequences(m);
            let base = if self.registry.get(&key).is_some() {
                Recipe::seed(&key, &along(rank, dim, m + 1), rank, dim)
            } else {
                // Base sequences from a Golay pair of length m.
                let pair = self.pair(&[m])?;
                Recipe::node(Op::BaseSequencesFromPair, &along(rank, dim, m + 1), vec![pair])
                    .with_rank(rank)
                    .with_dim(dim)
            };
            return Some(Recipe::node(Op::InterleaveQuad, &shape, vec![base]).with_dim(dim));
        }
        let half = extent / 2;
        (1..=half / 2).find_map(|g| {
            let a = self.pair(&along(rank, dim, g))?;
            let b = self.pair(&along(rank, dim, half - g))?;
            Some(Recipe::node(Op::ConcatZeroQuad, &shape, vec![a, b]).with_dim(dim))
        })
    }

    /// Deficient quad for a shape with at most one extent above 1.
    fn deficient_for(&self, dims: &[usize]) -> Option<Recipe> {
        let rank = dims.len();
        match single_axis(dims) {
            Some((dim, extent)) => self.deficient(rank, dim, extent),
            None if dims.iter().all(|&d| d == 1) => self.deficient(rank, 0, 1),
            None => None,
        }
    }

    fn lagrange(&self, dims: &[usize]) -> Option<Recipe> {
        let rank = dims.len();
        let mut firsts = vec![vec![1; rank]];
        for (k, &n) in dims.iter().enumerate() {
            firsts.extend(divisors(n).into_iter().filter(|&e| e > 1).map(|e| along(rank, k, e)));
        }
        firsts.into_iter().find_map(|d1| {
            let d2 = quotient(dims, &d1);
            let q1 = self.deficient_for(&d1)?;
            let q2 = self.deficient_for(&d2)?;
            Some(Recipe::node(Op::LagrangeQuad, dims, vec![q1, q2]))
        })
    }

    /// Pairs `s1×s2` and `s1×s3` bound by a pair `t1×t2` give `s1t1 × (s2+s3)t2`.
    fn compromise(&self, dims: &[usize]) -> Option<Recipe> {
        let rank = dims.len();
        for sum_dim in (0..rank).rev() {
            let other = (rank == 2).then(|| 1 - sum_dim);
            let other_extent = other.map_or(1, |o| dims[o]);
            for t2 in divisors(dims[sum_dim]) {
                let total = dims[sum_dim] / t2;
                for t1 in divisors(other_extent) {
                    let s1 = other_extent / t1;
                    let shape_of = |s: usize, o_ext: usize| {
                        let mut v = vec![1; rank];
                        v[sum_dim] = s;
                        if let Some(o) = other {
                            v[o] = o_ext;
                        }
                        v
                    };
                    let binder_dims = shape_of(t2, t1);
                    if pair_assignment(self.alphabet, &binder_dims).is_err() {
                        continue;
                    }
                    for s2 in 1..=total / 2 {
                        let (ab, cd) = (shape_of(s2, s1), shape_of(total - s2, s1));
                        if pair_assignment(self.alphabet, &ab).is_err() || pair_assignment(self.alphabet, &cd).is_err() {
                            continue;
                        }
                        if let (Some(a), Some(c), Some(ij)) = (self.pair(&ab), self.pair(&cd), self.pair(&binder_dims)) {
                            return Some(Recipe::node(Op::CompromiseQuad, dims, vec![a, c, ij]).with_dim(sum_dim));
                        }
                    }
                }
            }
        }
        None
    }

    /// Scales a smaller quad by a disjoint pair halved from a binary pair.
    fn expand(&self, dims: &[usize]) -> Option<Recipe> {
        let mut factors = divisor_vectors(dims);
        factors.retain(|t| t.iter().any(|&x| x > 1));
        factors.sort_by_key(|t| (t.iter().product::<usize>(), t.clone()));
        factors.into_iter().find_map(|t| {
            let binary = self.pair_in(Alphabet::Binary, &t)?;
            let base_dims = quotient(dims, &t);
            let base = match self.ladder(&base_dims, false) {
                Some((_, r)) => r,
                None => self.template(&base_dims).map(|(_, r)| r).filter(|r| self.executable(r))?,
            };
            let ij = Recipe::node(Op::DisjointFromPair, &t, vec![binary]);
            Some(Recipe::node(Op::ExpandQuad, dims, vec![base, ij]))
        })
    }

    fn template(&self, dims: &[usize]) -> Option<(&'static str, Recipe)> {
        if let Some(r) = self.template_799(dims) {
            return Some(("template-799", r));
        }
        self.template_959(dims).map(|r| ("template-959", r))
    }

    /// `799 = 17·47`: interleaved BS(9,8) and BS(24,23) through Lagrange,
    /// then any binary Golay factor in the other dimension by expansion.
    fn template_799(&self, dims: &[usize]) -> Option<Recipe> {
        let rank = dims.len();
        let k = dims.iter().position(|&d| d == 799)?;
        let g = if rank == 2 { dims[1 - k] } else { 1 };
        let core_dims = along(rank, k, 799);
        let interleaved = |m: usize| {
            let base = Recipe::seed(&SeedKey::base_sequences(m), &along(rank, k, m + 1), rank, k);
            Recipe::node(Op::InterleaveQuad, &along(rank, k, 2 * m + 1), vec![base]).with_dim(k)
        };
        let core = Recipe::node(Op::LagrangeQuad, &core_dims, vec![interleaved(8), interleaved(23)]);
        if g == 1 {
            return Some(core);
        }
        let o = 1 - k;
        let t = along(rank, o, g);
        let assignment = pair_assignment(Alphabet::Binary, &t).ok()?;
        let ij = Recipe::node(Op::DisjointFromPair, &t, vec![pair_recipe(Alphabet::Binary, &t, &assignment)]);
        Some(Recipe::node(Op::ExpandQuad, dims, vec![core, ij]))
    }

    /// `959 = 7·(5 + 132)`: pairs 1×5 and 1×132 compromised with a `t1×1`
    /// binder, zero-concatenated to `4t1×137`, then Lagrange with the
    /// interleaved BS(4,3) of size 1×7.
    fn template_959(&self, dims: &[usize]) -> Option<Recipe> {
        if self.alphabet == Alphabet::Binary || dims.len() != 2 {
            return None;
        }
        let k = dims.iter().position(|&d| d == 959)?;
        let o = 1 - k;
        if dims[o] % 4 != 0 {
            return None;
        }
        let t1 = dims[o] / 4;
        let pair = |dims: Vec<usize>| {
            let a = pair_assignment(self.alphabet, &dims).ok()?;
            Some(pair_recipe(self.alphabet, &dims, &a))
        };
        let ab = pair(along(2, k, 5))?;
        let cd = pair(along(2, k, 132))?;
        let ij = pair(along(2, o, t1))?;
        let mut mid = along(2, k, 137);
        mid[o] = t1;
        let q = Recipe::node(Op::CompromiseQuad, &mid, vec![ab, cd, ij]).with_dim(k);
        mid[o] = 4 * t1;
        let e = Recipe::node(Op::ConcatZeroQuad, &mid, vec![q]).with_dim(o);
        let base = Recipe::seed(&SeedKey::base_sequences(3), &along(2, k, 4), 2, k);
        let a = Recipe::node(Op::InterleaveQuad, &along(2, k, 7), vec![base]).with_dim(k);
        Some(Recipe::node(Op::LagrangeQuad, dims, vec![a, e]))
    }
}

fn along(rank: usize, dim: usize, extent: usize) -> Vec<usize> {
    let mut v = vec![1; rank];
    v[dim] = extent;
    v
}

fn single_axis(dims: &[usize]) -> Option<(usize, usize)> {
    let mut big = dims.iter().enumerate().filter(|(_, &d)| d > 1);
    let first = big.next()?;
    big.next().is_none().then_some((first.0, *first.1))
}

pub(crate) fn divisors(n: usize) -> Vec<usize> {
    (1..=n).filter(|d| n % d == 0).collect()
}

fn divisor_vectors(dims: &[usize]) -> Vec<Vec<usize>> {
    dims.iter().fold(vec![vec![]], |acc, &n| {
        acc.iter()
            .flat_map(|prefix| {
                divisors(n).into_iter().map(move |d| {
                    let mut v = prefix.clone();
                    v.push(d);
                    v
                })
            })
            .collect()
    })
}

fn quotient(dims: &[usize], by: &[usize]) -> Vec<usize> {
    dims.iter().zip(by).map(|(a, b)| a / b).collect()
}
