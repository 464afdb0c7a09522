//! Golay-number arithmetic, feasibility decisions, recipe synthesis and
//! execution, and coverage scans.

mod coverage;
mod golay;
mod pairs;
mod quads;
mod recipe;

use serde::Serialize;

use crate::formats::Role;
use crate::ring::{Alphabet, Shape};
use crate::seeds::SeedRegistry;

pub use coverage::{coverage_scan, quad_sum_witness, CoverageKind, CoverageReport, SumWitness};
pub use golay::{enumerate_golay_numbers, golay_witness, is_binary_golay_number, is_quaternary_golay_number, GolayWitness};
pub use pairs::{plan_pair, DimAssignment};
pub use quads::plan_quad;
pub use recipe::{execute, Op, Params, Recipe, RECIPE_FORMAT};

/// Outcome of planning. Infeasibility is a report, not an error.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FeasibilityReport {
    pub feasible: bool,
    pub alphabet: Alphabet,
    pub role: Role,
    pub shape: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub strategy: Option<String>,
    /// Golay-number witness of the element count, for pairs.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<GolayWitness>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub assignment: Vec<DimAssignment>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub recipe: Option<Recipe>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    /// True only for established nonexistence, never for a mere gap in
    /// the constructions.
    pub known_nonexistent: bool,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub missing_seeds: Vec<String>,
}

impl FeasibilityReport {
    fn new(alphabet: Alphabet, role: Role, shape: &Shape) -> Self {
        FeasibilityReport {
            feasible: false,
            alphabet,
            role,
            shape: shape.dims().to_vec(),
            strategy: None,
            witness: None,
            assignment: vec![],
            recipe: None,
            reason: None,
            known_nonexistent: false,
            missing_seeds: vec![],
        }
    }

    fn infeasible(mut self, reason: String, known_nonexistent: bool) -> Self {
        self.feasible = false;
        self.reason = Some(reason);
        self.known_nonexistent = known_nonexistent;
        self
    }

    /// Attaches a recipe. Feasible only if every seed leaf resolves; the
    /// recipe is kept either way so missing seeds can be named.
    fn with_recipe(mut self, recipe: Recipe, registry: &SeedRegistry) -> Self {
        self.missing_seeds = recipe.missing_seeds(registry);
        self.recipe = Some(recipe);
        if self.missing_seeds.is_empty() {
            self.feasible = true;
            self
        } else {
            let reason = format!("missing seed(s): {}", self.missing_seeds.join(", "));
            self.infeasible(reason, false)
        }
    }
}

/// Dispatches on role. Sets other than pairs and quads are not planned.
pub fn plan(alphabet: Alphabet, role: Role, shape: &Shape, registry: &SeedRegistry) -> FeasibilityReport {
    match role {
        Role::Pair => plan_pair(alphabet, shape, registry),
        Role::Quad => plan_quad(alphabet, shape, registry),
        Role::SetN => FeasibilityReport::new(alphabet, role, shape)
            .infeasible("only pairs and quads can be planned".into(), false),
    }
}
