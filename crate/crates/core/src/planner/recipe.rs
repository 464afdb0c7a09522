use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::constructions::{self as cons, GcaSet};
use crate::error::{Error, Result};
use crate::ring::{Shape, Tensor};
use crate::seeds::{SeedKey, SeedKind, SeedRegistry};

pub const RECIPE_FORMAT: &str = "gca-recipe/1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Op {
    Seed,
    UnitQuad,
    BaseSequencesFromPair,
    BinaryTurynPair,
    Rank1Pair,
    ConcatPair,
    GluePair,
    CrossSet,
    InterleaveQuad,
    ConcatZeroQuad,
    LagrangeQuad,
    ExpandQuad,
    CompromiseQuad,
    DisjointFromPair,
    DisjointMaskPair,
    Reshape,
}

impl fmt::Display for Op {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let text = serde_json::to_value(self).expect("ops serialize");
        f.write_str(text.as_str().expect("ops serialize as strings"))
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Params {
    /// Declared output shape, checked after the node runs. Empty means unchecked.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub shape: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dim: Option<usize>,
    /// Rank a 1-D seed is embedded into.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rank: Option<usize>,
}

/// A construction tree. Leaves are seed references or unit quads.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Recipe {
    /// Set on the root of a serialized recipe only.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub format: Option<String>,
    pub op: Op,
    #[serde(default)]
    pub params: Params,
    #[serde(default)]
    pub children: Vec<Recipe>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<String>,
}

impl Recipe {
    pub fn node(op: Op, shape: &[usize], children: Vec<Recipe>) -> Recipe {
        Recipe {
            format: None,
            op,
            params: Params {
                shape: shape.to_vec(),
                ..Params::default()
            },
            children,
            seed: None,
        }
    }

    pub fn with_dim(mut self, dim: usize) -> Recipe {
        self.params.dim = Some(dim);
        self
    }

    pub fn with_rank(mut self, rank: usize) -> Recipe {
        self.params.rank = Some(rank);
        self
    }

    /// A seed embedded as rank `rank` with its extent on `dim`.
    pub fn seed(key: &SeedKey, shape: &[usize], rank: usize, dim: usize) -> Recipe {
        Recipe {
            seed: Some(key.to_string()),
            ..Recipe::node(Op::Seed, shape, vec![]).with_rank(rank).with_dim(dim)
        }
    }

    pub fn shape(&self) -> &[usize] {
        &self.params.shape
    }

    /// Every seed key referenced in the tree, sorted.
    pub fn seed_keys(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_seeds(&mut out);
        out
    }

    fn collect_seeds(&self, out: &mut BTreeSet<String>) {
        if let Some(k) = &self.seed {
            out.insert(k.clone());
        }
        for c in &self.children {
            c.collect_seeds(out);
        }
    }

    /// Seed keys the registry cannot serve.
    pub fn missing_seeds(&self, registry: &SeedRegistry) -> Vec<String> {
        self.seed_keys()
            .into_iter()
            .filter(|k| k.parse::<SeedKey>().ok().and_then(|key| registry.get(&key)).is_none())
            .collect()
    }

    pub fn node_count(&self) -> usize {
        1 + self.children.iter().map(Recipe::node_count).sum::<usize>()
    }

    pub fn to_json(&self) -> String {
        let mut root = self.clone();
        root.format = Some(RECIPE_FORMAT.to_string());
        serde_json::to_string_pretty(&root).expect("recipes always serialize") + "\n"
    }

    pub fn parse(text: &str) -> Result<Recipe> {
        let mut r: Recipe = serde_json::from_str(text)?;
        match r.format.as_deref() {
            Some(RECIPE_FORMAT) => {}
            Some(other) => return Err(Error::Parse(format!("unsupported recipe format {other:?}"))),
            None => return Err(Error::Parse(format!("recipe lacks \"format\": \"{RECIPE_FORMAT}\""))),
        }
        r.format = None;
        Ok(r)
    }
}

/// What a node evaluates to: a verified set, or base sequences on their way
/// into [`cons::interleave_quad`].
enum Value {
    Set(GcaSet),
    Base(Vec<Tensor>),
}

/// Runs a recipe bottom-up. Failures are wrapped with the path of the node
/// that raised them, e.g. `root.1.0 (seed)`.
pub fn execute(recipe: &Recipe, registry: &SeedRegistry) -> Result<GcaSet> {
    match run(recipe, registry, "root")? {
        Value::Set(set) => Ok(set),
        Value::Base(_) => Err(Error::InRecipe {
            path: "root".into(),
            source: Box::new(Error::VerificationFailed("recipe yields base sequences, not a set".into())),
        }),
    }
}

fn run(node: &Recipe, registry: &SeedRegistry, path: &str) -> Result<Value> {
    let mut inputs = Vec::with_capacity(node.children.len());
    for (k, child) in node.children.iter().enumerate() {
        inputs.push(run(child, registry, &format!("{path}.{k}"))?);
    }
    apply(node, inputs, registry).map_err(|e| Error::InRecipe {
        path: format!("{path} ({})", node.op),
        source: Box::new(e),
    })
}

fn apply(node: &Recipe, inputs: Vec<Value>, registry: &SeedRegistry) -> Result<Value> {
    let p = &node.params;
    let dim = || p.dim.ok_or_else(|| Error::Parse(format!("{} needs params.dim", node.op)));
    let value = match node.op {
        Op::Seed => {
            let text = node.seed.as_deref().ok_or_else(|| Error::Parse("seed node without a seed key".into()))?;
            let key: SeedKey = text.parse()?;
            let record = registry.get(&key).ok_or_else(|| Error::MissingSeed(text.to_string()))?;
            let rank = p.rank.unwrap_or(record.tensors()[0].rank());
            let tensors = record
                .tensors()
                .iter()
                .map(|t| if t.rank() == rank { Ok(t.clone()) } else { t.orient(rank, p.dim.unwrap_or(0)) })
                .collect::<Result<Vec<_>>>()?;
            match key.kind {
                SeedKind::GolayPair => Value::Set(GcaSet::new(tensors, text)?),
                SeedKind::BaseSequences => Value::Base(tensors),
            }
        }
        Op::UnitQuad => Value::Set(cons::unit_quad(p.rank.unwrap_or(p.shape.len().max(1)))?),
        Op::BaseSequencesFromPair => {
            let [pair] = sets::<1>(node, inputs)?;
            let base = cons::base_sequences_from_pair(&pair)?;
            let rank = p.rank.unwrap_or(1);
            let base = base.iter().map(|t| t.orient(rank, p.dim.unwrap_or(0))).collect::<Result<_>>()?;
            Value::Base(base)
        }
        Op::BinaryTurynPair => {
            let [a, b] = sets(node, inputs)?;
            Value::Set(cons::binary_turyn_pair(&a, &b)?)
        }
        Op::Rank1Pair => {
            let [a, b] = sets(node, inputs)?;
            Value::Set(cons::rank1_pair(&a, &b)?)
        }
        Op::ConcatPair => {
            let [a, b] = sets(node, inputs)?;
            Value::Set(cons::concat_pair(&a, &b, dim()?)?)
        }
        Op::GluePair => {
            let [binder, a, b] = sets(node, inputs)?;
            Value::Set(cons::glue_pair(&binder, &a, &b)?)
        }
        Op::CrossSet => {
            let [a, b] = sets(node, inputs)?;
            Value::Set(cons::cross_set(&a, &b)?)
        }
        Op::InterleaveQuad => {
            let base = match <[Value; 1]>::try_from(inputs) {
                Ok([Value::Base(b)]) => b,
                _ => return Err(arity(node, "one base-sequence child")),
            };
            Value::Set(cons::interleave_quad(&base, dim()?)?)
        }
        Op::ConcatZeroQuad => {
            if inputs.len() == 1 {
                let [quad] = sets(node, inputs)?;
                Value::Set(cons::concat_zero_from_quad(&quad, dim()?)?)
            } else {
                let [a, b] = sets(node, inputs)?;
                Value::Set(cons::concat_zero_quad(&a, &b, dim()?)?)
            }
        }
        Op::LagrangeQuad => {
            let [a, b] = sets(node, inputs)?;
            Value::Set(cons::lagrange_quad(&a, &b)?)
        }
        Op::ExpandQuad => {
            let [quad, ij] = sets(node, inputs)?;
            Value::Set(cons::expand_quad(&quad, &ij)?)
        }
        Op::CompromiseQuad => {
            let [ab, cd, ij] = sets(node, inputs)?;
            Value::Set(cons::compromise_quad(&ab, &cd, dim()?, &ij)?)
        }
        Op::DisjointFromPair => {
            let [a] = sets(node, inputs)?;
            Value::Set(cons::disjoint_from_pair(&a)?)
        }
        Op::DisjointMaskPair => {
            let [a] = sets(node, inputs)?;
            Value::Set(cons::disjoint_mask_pair(&a)?)
        }
        Op::Reshape => {
            let [a] = sets(node, inputs)?;
            Value::Set(cons::reshape_set(&a)?)
        }
    };
    if !p.shape.is_empty() {
        let got = match &value {
            Value::Set(s) => s.shape().clone(),
            Value::Base(b) => b[0].shape().clone(),
        };
        if got.dims() != p.shape.as_slice() {
            return Err(Error::VerificationFailed(format!(
                "declared shape {} but produced {}",
                Shape::new(p.shape.clone()).map(|s| s.to_string()).unwrap_or_else(|_| format!("{:?}", p.shape)),
                got
            )));
        }
    }
    Ok(value)
}

fn sets<const N: usize>(node: &Recipe, inputs: Vec<Value>) -> Result<[GcaSet; N]> {
    let sets: Vec<GcaSet> = inputs
        .into_iter()
        .map(|v| match v {
            Value::Set(s) => Ok(s),
            Value::Base(_) => Err(arity(node, "set children")),
        })
        .collect::<Result<_>>()?;
    <[GcaSet; N]>::try_from(sets).map_err(|_| arity(node, &format!("{N} children")))
}

fn arity(node: &Recipe, wanted: &str) -> Error {
    Error::Parse(format!("{} expects {wanted}, got {}", node.op, node.children.len()))
}
