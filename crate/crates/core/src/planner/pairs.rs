use serde::Serialize;

use super::golay::{golay_witness, is_binary_golay_number, is_quaternary_golay_number, Factors};
use super::recipe::{Op, Recipe};
use super::FeasibilityReport;
use crate::formats::Role;
use crate::ring::{Alphabet, Shape};
use crate::seeds::{SeedKey, SeedRegistry};

/// How one dimension's extent is split into seed lengths.
///
/// `binders` are binary pair lengths (2, 10, 26); `seeds` are quaternary
/// pair lengths (3, 5, 11, 13) that need a binder each, except one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DimAssignment {
    pub dim: usize,
    pub extent: u64,
    pub binders: Vec<u64>,
    pub seeds: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Infeasible {
    pub reason: String,
    pub known_nonexistent: bool,
}

/// Splits one extent greedily. Each 5 or 13 paired with a 2 becomes a
/// binary 10 or 26 binder, which never hurts: the 2 was a binder already
/// and the odd factor no longer needs one.
pub(crate) fn assign_dim(alphabet: Alphabet, dim: usize, extent: u64) -> Option<DimAssignment> {
    let f = Factors::of(extent);
    let mut out = DimAssignment {
        dim,
        extent,
        binders: vec![],
        seeds: vec![],
    };
    if alphabet == Alphabet::Binary {
        let w = is_binary_golay_number(extent)?;
        let super::GolayWitness::Binary { a, b, c } = w else {
            unreachable!("binary test yields binary witnesses")
        };
        out.binders.extend(std::iter::repeat_n(26, c as usize));
        out.binders.extend(std::iter::repeat_n(10, b as usize));
        out.binders.extend(std::iter::repeat_n(2, a as usize));
        return Some(out);
    }
    if !f.smooth() {
        return None;
    }
    let tens = f.two.min(f.five);
    let twenty_sixes = (f.two - tens).min(f.thirteen);
    let twos = f.two - tens - twenty_sixes;
    out.binders.extend(std::iter::repeat_n(26, twenty_sixes as usize));
    out.binders.extend(std::iter::repeat_n(10, tens as usize));
    out.binders.extend(std::iter::repeat_n(2, twos as usize));
    out.seeds.extend(std::iter::repeat_n(13, (f.thirteen - twenty_sixes) as usize));
    out.seeds.extend(std::iter::repeat_n(11, f.eleven as usize));
    out.seeds.extend(std::iter::repeat_n(5, (f.five - tens) as usize));
    out.seeds.extend(std::iter::repeat_n(3, f.three as usize));
    Some(out)
}

/// Shapes whose nonexistence is an established fact rather than a gap in
/// the constructions.
fn known_nonexistent(alphabet: Alphabet, dims: &[usize]) -> bool {
    let product: u64 = dims.iter().map(|&d| d as u64).product();
    if golay_witness(alphabet, product).is_none() {
        return true;
    }
    match alphabet {
        Alphabet::Binary => matches!(dims, [2, 5] | [5, 2] | [2, 13] | [13, 2]),
        _ => matches!(dims, [15]),
    }
}

/// Registry-free feasibility: the per-dimension assignment, or why none works.
pub(crate) fn pair_assignment(alphabet: Alphabet, dims: &[usize]) -> Result<Vec<DimAssignment>, Infeasible> {
    let product: u64 = dims.iter().map(|&d| d as u64).product();
    let mut out = Vec::with_capacity(dims.len());
    for (dim, &extent) in dims.iter().enumerate() {
        match assign_dim(alphabet, dim, extent as u64) {
            Some(a) => out.push(a),
            None => {
                let why = if alphabet == Alphabet::Binary {
                    format!("extent {extent} in dimension {dim} is not a binary Golay number")
                } else {
                    format!("extent {extent} in dimension {dim} has a prime factor outside {{2, 3, 5, 11, 13}}")
                };
                return Err(Infeasible {
                    reason: why,
                    known_nonexistent: known_nonexistent(alphabet, dims),
                });
            }
        }
    }
    if alphabet == Alphabet::Binary {
        return Ok(out);
    }
    let binders: usize = out.iter().map(|a| a.binders.len()).sum();
    let seeds: usize = out.iter().map(|a| a.seeds.len()).sum();
    if binders + 1 >= seeds {
        return Ok(out);
    }
    let reason = if is_quaternary_golay_number(product).is_some() {
        format!(
            "product {product} is a quaternary Golay number, but its witness needs a factor 10 or 26 \
             split across dimensions: {binders} binder(s) for {seeds} quaternary seed(s)"
        )
    } else {
        format!("product {product} is not a quaternary Golay number")
    };
    Err(Infeasible {
        reason,
        known_nonexistent: known_nonexistent(alphabet, dims),
    })
}

/// Plans a pair of the given shape. Binary: nested binary recursion over
/// per-dimension factors. Otherwise a left-deep gluing tree that binds the
/// quaternary seeds with binary binders.
pub fn plan_pair(alphabet: Alphabet, shape: &Shape, registry: &SeedRegistry) -> FeasibilityReport {
    let dims = shape.dims();
    let product: u64 = dims.iter().map(|&d| d as u64).product();
    let mut report = FeasibilityReport::new(alphabet, Role::Pair, shape);
    report.witness = golay_witness(alphabet, product);
    let assignment = match pair_assignment(alphabet, dims) {
        Ok(a) => a,
        Err(e) => return report.infeasible(e.reason, e.known_nonexistent),
    };
    let recipe = pair_recipe(alphabet, dims, &assignment);
    report.assignment = assignment;
    report.strategy = Some(if alphabet == Alphabet::Binary { "binary-recursion" } else { "glue" }.into());
    report.with_recipe(recipe, registry)
}

/// The recipe for an assignment that already passed [`pair_assignment`].
pub(crate) fn pair_recipe(alphabet: Alphabet, dims: &[usize], assignment: &[DimAssignment]) -> Recipe {
    let rank = dims.len();
    let along = |dim: usize, len: u64| -> Vec<usize> {
        let mut s = vec![1; rank];
        s[dim] = len as usize;
        s
    };
    let pair_seed = |alpha: Alphabet, dim: usize, len: u64| {
        let key = SeedKey::pair(alpha, &Shape::new(vec![len as usize]).expect("positive length"));
        Recipe::seed(&key, &along(dim, len), rank, dim)
    };
    let trivial = || pair_seed(Alphabet::Binary, 0, 1);
    let mut binders: Vec<(usize, u64)> = assignment
        .iter()
        .flat_map(|a| a.binders.iter().map(move |&b| (a.dim, b)))
        .collect();
    let seeds: Vec<(usize, u64)> = assignment
        .iter()
        .flat_map(|a| a.seeds.iter().map(move |&s| (a.dim, s)))
        .collect();

    if seeds.is_empty() {
        // Only binary factors: nest the binary recursion.
        let mut it = binders.into_iter();
        let Some((d, len)) = it.next() else {
            return trivial();
        };
        let mut acc = pair_seed(Alphabet::Binary, d, len);
        let mut size = along(d, len);
        for (d, len) in it {
            size[d] *= len as usize;
            acc = Recipe::node(Op::BinaryTurynPair, &size, vec![acc, pair_seed(Alphabet::Binary, d, len)]);
        }
        return acc;
    }

    // Length-2 binders act through concat_pair; keep the wider ones for glue.
    binders.sort_by_key(|&(d, len)| (len == 2, d));
    let mut binders = binders.into_iter();
    let quaternary = if alphabet == Alphabet::Binary { Alphabet::Quaternary } else { alphabet };
    let (d0, l0) = seeds[0];
    let mut acc = pair_seed(quaternary, d0, l0);
    let mut size = along(d0, l0);
    let bind = |acc: Recipe, size: &mut Vec<usize>, binder: (usize, u64), next: Recipe, next_dim: usize, next_len: u64| {
        let (bd, blen) = binder;
        size[next_dim] *= next_len as usize;
        size[bd] *= blen as usize;
        if blen == 2 {
            Recipe::node(Op::ConcatPair, size, vec![acc, next]).with_dim(bd)
        } else {
            Recipe::node(Op::GluePair, size, vec![pair_seed(Alphabet::Binary, bd, blen), acc, next])
        }
    };
    for &(d, len) in &seeds[1..] {
        let binder = binders.next().expect("feasibility guarantees a binder per extra seed");
        acc = bind(acc, &mut size, binder, pair_seed(quaternary, d, len), d, len);
    }
    for binder in binders {
        acc = bind(acc, &mut size, binder, trivial(), 0, 1);
    }
    acc
}
