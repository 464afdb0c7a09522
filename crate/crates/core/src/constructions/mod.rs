//! One operation per construction. Every operation verifies its own output
//! with both the shift-sum and the polynomial oracle before returning.

use crate::complementarity::{binary_pair_symmetry, gca_check_polynomial, is_gca_set, is_gca_set_padded, weight};
use crate::error::{Error, Result};
use crate::formats::{Role, SetDoc, StructureDoc, TensorDoc, SET_FORMAT};
use crate::ring::{Alphabet, GaussInt, Shape, Tensor};

/// A complementary set whose members share one shape. Only obtainable
/// through verifying constructors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GcaSet {
    arrays: Vec<Tensor>,
    alphabet: Alphabet,
    structure: StructureDoc,
    lineage: String,
}

impl GcaSet {
    /// Checks both oracles and wraps the arrays.
    pub fn new(arrays: Vec<Tensor>, lineage: impl Into<String>) -> Result<Self> {
        Self::with_structure(arrays, lineage, StructureDoc::default())
    }

    /// As [`GcaSet::new`], additionally confirming the recorded structure.
    pub fn with_structure(arrays: Vec<Tensor>, lineage: impl Into<String>, structure: StructureDoc) -> Result<Self> {
        let lineage = lineage.into();
        let verdict = is_gca_set(&arrays)?;
        if !verdict.is_complementary {
            return Err(Error::VerificationFailed(format!(
                "{lineage}: shift-sum check failed (max sidelobe norm {})",
                verdict.max_sidelobe_norm
            )));
        }
        if !gca_check_polynomial(&arrays)? {
            return Err(Error::VerificationFailed(format!("{lineage}: polynomial check failed")));
        }
        structure.check(&arrays)?;
        Ok(GcaSet {
            alphabet: Alphabet::classify_all(&arrays),
            arrays,
            structure,
            lineage,
        })
    }

    pub fn arrays(&self) -> &[Tensor] {
        &self.arrays
    }

    pub fn into_arrays(self) -> Vec<Tensor> {
        self.arrays
    }

    pub fn len(&self) -> usize {
        self.arrays.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrays.is_empty()
    }

    pub fn shape(&self) -> &Shape {
        self.arrays[0].shape()
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn role(&self) -> Role {
        Role::for_len(self.arrays.len())
    }

    pub fn structure(&self) -> &StructureDoc {
        &self.structure
    }

    pub fn lineage(&self) -> &str {
        &self.lineage
    }

    pub fn total_weight(&self) -> i64 {
        self.arrays.iter().map(weight).sum()
    }

    /// True when no member has a zero entry.
    pub fn is_polyphase(&self) -> bool {
        self.arrays.iter().all(Tensor::is_polyphase)
    }

    pub fn to_doc(&self) -> SetDoc {
        SetDoc {
            format: SET_FORMAT.to_string(),
            role: self.role(),
            alphabet: self.alphabet,
            arrays: self.arrays.iter().map(TensorDoc::from_tensor).collect(),
            lineage: self.lineage.clone(),
            structure: self.structure.clone(),
        }
    }

    /// Re-verifies a parsed document.
    pub fn from_doc(doc: &SetDoc) -> Result<Self> {
        let set = Self::with_structure(doc.tensors()?, doc.lineage.clone(), doc.structure.clone())?;
        Ok(set)
    }

    fn as_pair(&self, what: &str) -> Result<(&Tensor, &Tensor)> {
        match &self.arrays[..] {
            [a, b] => Ok((a, b)),
            _ => Err(Error::VerificationFailed(format!(
                "{what} needs a pair, got {} arrays",
                self.arrays.len()
            ))),
        }
    }

    fn as_quad(&self, what: &str) -> Result<[&Tensor; 4]> {
        match &self.arrays[..] {
            [a, b, c, d] => Ok([a, b, c, d]),
            _ => Err(Error::VerificationFailed(format!(
                "{what} needs a quad, got {} arrays",
                self.arrays.len()
            ))),
        }
    }
}

fn kron(a: &Tensor, b: &Tensor) -> Result<Tensor> {
    a.kron(b)
}

fn superpose(terms: &[Tensor]) -> Result<Tensor> {
    Tensor::checked_superpose(terms)
}

/// Structure shared by the two weight-deficient quad builders, for members
/// ordered `(E, F, G, H)`: E and G share a support, F and H share a
/// support, E and F are disjoint, all four are flip-invariant in support.
pub fn deficient_quad_structure() -> StructureDoc {
    StructureDoc {
        disjoint: vec![[0, 1]],
        conjoint: vec![[0, 2], [1, 3]],
        quasi_symmetric: vec![0, 1, 2, 3],
    }
}

/// Binary recursion `E = ½[A⊗(C+D) + B⊗(C−D)]`, `F = ½[B*⊗(C+D) − A*⊗(C−D)]`.
pub fn binary_turyn_pair(ab: &GcaSet, cd: &GcaSet) -> Result<GcaSet> {
    let (a, b) = ab.as_pair("binary_turyn_pair")?;
    let (c, d) = cd.as_pair("binary_turyn_pair")?;
    if ab.alphabet() != Alphabet::Binary || cd.alphabet() != Alphabet::Binary {
        return Err(Error::NotBinary);
    }
    let sum = c.add(d)?;
    let diff = c.sub(d)?;
    let e = kron(a, &sum)?.add(&kron(b, &diff)?)?.div_exact(2)?;
    let f = kron(&b.involute(), &sum)?.sub(&kron(&a.involute(), &diff)?)?.div_exact(2)?;
    GcaSet::new(vec![e, f], "binary_turyn_pair")
}

/// Matrix pair from two sequence pairs: `[a cᵀ; b dᵀ]` and `[−a d*ᵀ; b c*ᵀ]`.
pub fn rank1_pair(ab: &GcaSet, cd: &GcaSet) -> Result<GcaSet> {
    let (a, b) = ab.as_pair("rank1_pair")?;
    let (c, d) = cd.as_pair("rank1_pair")?;
    let col = |t: &Tensor| t.orient(2, 0);
    let row = |t: &Tensor| t.orient(2, 1);
    let outer = |x: &Tensor, y: &Tensor| -> Result<Tensor> { kron(&col(x)?, &row(y)?) };
    let top = outer(a, c)?.concat(&outer(b, d)?, 0)?;
    let bottom = outer(&a.negate(), &d.involute())?.concat(&outer(b, &c.involute())?, 0)?;
    GcaSet::new(vec![top, bottom], "rank1_pair")
}

/// `E = (A⊗C) | (B⊗D)`, `F = (B*⊗C) | (−A*⊗D)` along `dim`.
pub fn concat_pair(ab: &GcaSet, cd: &GcaSet, dim: usize) -> Result<GcaSet> {
    let (a, b) = ab.as_pair("concat_pair")?;
    let (c, d) = cd.as_pair("concat_pair")?;
    let e = kron(a, c)?.concat(&kron(b, d)?, dim)?;
    let f = kron(&b.involute(), c)?.concat(&kron(&a.involute().negate(), d)?, dim)?;
    GcaSet::new(vec![e, f], "concat_pair")
}

/// Masks `P = ¼[A+B+(B*−A*)]`, `Q = ¼[A+B−(B*−A*)]` of a nontrivial binary
/// pair. At every index exactly one of `P, Q, P*, Q*` is nonzero.
pub fn disjoint_mask_pair(ab: &GcaSet) -> Result<GcaSet> {
    let (a, b) = ab.as_pair("disjoint_mask_pair")?;
    if !binary_pair_symmetry(a, b)? {
        return Err(Error::StructureFailed("binary pair symmetry does not hold".into()));
    }
    let s = a.add(b)?;
    let t = b.involute().sub(&a.involute())?;
    let p = s.add(&t)?.div_exact(4)?;
    let q = s.sub(&t)?.div_exact(4)?;
    let views = [p.clone(), q.clone(), p.involute(), q.involute()];
    for k in 0..p.len() {
        let nonzero: Vec<_> = views.iter().map(|v| v.entries()[k]).filter(|g| !g.is_zero()).collect();
        if nonzero.len() != 1 || !nonzero[0].is_unit() {
            return Err(Error::StructureFailed(format!(
                "index {k}: expected exactly one of P, Q, P*, Q* to be a unit"
            )));
        }
    }
    GcaSet::with_structure(
        vec![p, q],
        "disjoint_mask_pair",
        StructureDoc {
            disjoint: vec![[0, 1]],
            ..StructureDoc::default()
        },
    )
}

/// Glues two pairs with a binary binder through its disjoint masks.
pub fn glue_pair(binder: &GcaSet, cd: &GcaSet, ef: &GcaSet) -> Result<GcaSet> {
    let masks = disjoint_mask_pair(binder)?;
    let (p, q) = masks.as_pair("glue_pair")?;
    let (c, d) = cd.as_pair("glue_pair")?;
    let (e, f) = ef.as_pair("glue_pair")?;
    let x = superpose(&[kron(p, c)?, kron(q, d)?])?;
    let y = superpose(&[kron(&q.involute(), c)?, kron(&p.involute(), d)?.negate()])?;
    let g = superpose(&[kron(&x, e)?, kron(&y, f)?])?;
    let h = superpose(&[kron(&y.involute(), e)?, kron(&x.involute(), f)?.negate()])?;
    GcaSet::new(vec![g, h], "glue_pair")
}

/// All products `A_i ⊗ B_j`, `i`-major.
pub fn cross_set(a: &GcaSet, b: &GcaSet) -> Result<GcaSet> {
    let mut arrays = Vec::with_capacity(a.len() * b.len());
    for x in a.arrays() {
        for y in b.arrays() {
            arrays.push(kron(x, y)?);
        }
    }
    GcaSet::new(arrays, "cross_set")
}

/// Interleaves a quad with extents `m+1, m+1, m, m` along `dim` into a
/// weight-deficient quad `(A/0, 0/C, B/0, 0/D)` of extent `2m+1`.
pub fn interleave_quad(quad: &[Tensor], dim: usize) -> Result<GcaSet> {
    let [a, b, c, d] = quad else {
        return Err(Error::VerificationFailed(format!("interleave_quad needs 4 arrays, got {}", quad.len())));
    };
    a.shape().check_same(b.shape())?;
    c.shape().check_same(d.shape())?;
    if !is_gca_set_padded(quad)?.is_complementary {
        return Err(Error::NotComplementary);
    }
    let zeros_short = Tensor::zeros(c.shape().clone());
    let zeros_long = Tensor::zeros(a.shape().clone());
    let e = a.interleave(&zeros_short, dim)?;
    let g = b.interleave(&zeros_short, dim)?;
    let f = zeros_long.interleave(c, dim)?;
    let h = zeros_long.interleave(d, dim)?;
    GcaSet::with_structure(vec![e, f, g, h], "interleave_quad", deficient_quad_structure())
}

/// The weight-deficient quad `([1], [0], [1], [0])` with every extent 1.
/// Serves as the odd size 1 input to [`lagrange_quad`].
pub fn unit_quad(rank: usize) -> Result<GcaSet> {
    let one = Tensor::scalar(rank, GaussInt::ONE);
    let zero = Tensor::scalar(rank, GaussInt::ZERO);
    GcaSet::with_structure(vec![one.clone(), zero.clone(), one, zero], "unit_quad", deficient_quad_structure())
}

/// Base sequences `{A|1, A|−1, B, B}` from a 1-D pair `{A, B}` of length g.
pub fn base_sequences_from_pair(ab: &GcaSet) -> Result<Vec<Tensor>> {
    let (a, b) = ab.as_pair("base_sequences_from_pair")?;
    if a.rank() != 1 {
        return Err(Error::RankMismatch { left: a.rank(), right: 1 });
    }
    let plus = a.concat(&Tensor::from_ints(&[1]), 0)?;
    let minus = a.concat(&Tensor::from_ints(&[-1]), 0)?;
    let quad = vec![plus, minus, b.clone(), b.clone()];
    if !is_gca_set_padded(&quad)?.is_complementary {
        return Err(Error::VerificationFailed("base sequences from pair".into()));
    }
    Ok(quad)
}

/// `E=A|0|0|B`, `F=0|C|D|0`, `G=A|0|0|−B`, `H=0|C|−D|0` along `dim`.
pub fn concat_zero_quad(ab: &GcaSet, cd: &GcaSet, dim: usize) -> Result<GcaSet> {
    let (a, b) = ab.as_pair("concat_zero_quad")?;
    let (c, d) = cd.as_pair("concat_zero_quad")?;
    concat_zero_arrays(a, b, c, d, dim)
}

/// [`concat_zero_quad`] fed by the members `(A,B,C,D)` of one complementary
/// quad instead of two pairs.
pub fn concat_zero_from_quad(quad: &GcaSet, dim: usize) -> Result<GcaSet> {
    let [a, b, c, d] = quad.as_quad("concat_zero_quad")?;
    concat_zero_arrays(a, b, c, d, dim)
}

fn concat_zero_arrays(a: &Tensor, b: &Tensor, c: &Tensor, d: &Tensor, dim: usize) -> Result<GcaSet> {
    let za = Tensor::zeros(a.shape().clone());
    let zc = Tensor::zeros(c.shape().clone());
    let join = |parts: [&Tensor; 4]| Tensor::concat_all(&parts.map(Tensor::clone), dim);
    let e = join([a, &zc, &zc, b])?;
    let f = join([&za, c, d, &za])?;
    let g = join([a, &zc, &zc, &b.negate()])?;
    let h = join([&za, c, &d.negate(), &za])?;
    GcaSet::with_structure(vec![e, f, g, h], "concat_zero_quad", deficient_quad_structure())
}

fn check_deficient(quad: &GcaSet, what: &str) -> Result<()> {
    deficient_quad_structure()
        .check(quad.arrays())
        .map_err(|e| Error::StructureFailed(format!("{what}: {e}")))
}

/// Combines two structured weight-deficient quads into a polyphase quad.
pub fn lagrange_quad(first: &GcaSet, second: &GcaSet) -> Result<GcaSet> {
    check_deficient(first, "first quad")?;
    check_deficient(second, "second quad")?;
    let [a, b, c, d] = first.as_quad("lagrange_quad")?;
    let [e, f, g, h] = second.as_quad("lagrange_quad")?;
    let k = kron;
    let p = superpose(&[
        k(a, &f.involute())?,
        k(&b.involute(), e)?.negate(),
        k(c, g)?,
        k(d, h)?,
    ])?;
    let q = superpose(&[
        k(&a.involute(), e)?,
        k(b, &f.involute())?,
        k(c, &h.involute())?.negate(),
        k(d, &g.involute())?,
    ])?;
    let r = superpose(&[
        k(&c.involute(), e)?,
        k(d, f)?.negate(),
        k(a, &h.involute())?,
        k(b, g)?,
    ])?;
    let s = superpose(&[
        k(c, f)?.negate(),
        k(&d.involute(), e)?.negate(),
        k(a, &g.involute())?,
        k(b, h)?.negate(),
    ])?;
    let out = [p, q, r, s];
    check_polyphase(&out)?;
    GcaSet::new(out.to_vec(), "lagrange_quad")
}

fn check_polyphase(arrays: &[Tensor]) -> Result<()> {
    for (array, t) in arrays.iter().enumerate() {
        if let Some(position) = t.entries().iter().position(|g| g.is_zero()) {
            return Err(Error::NonPolyphase { array, position });
        }
    }
    Ok(())
}

/// Halves a binary pair into the disjoint pair `((C+D)/2, (C−D)/2)`.
pub fn disjoint_from_pair(cd: &GcaSet) -> Result<GcaSet> {
    let (c, d) = cd.as_pair("disjoint_from_pair")?;
    let i = c.add(d)?.div_exact(2)?;
    let j = c.sub(d)?.div_exact(2)?;
    GcaSet::with_structure(
        vec![i, j],
        "disjoint_from_pair",
        StructureDoc {
            disjoint: vec![[0, 1]],
            ..StructureDoc::default()
        },
    )
}

/// `P′ = P⊗I + Q⊗J`, `Q′ = P⊗J* − Q⊗I*`, and likewise for `R, S`.
pub fn expand_quad(quad: &GcaSet, ij: &GcaSet) -> Result<GcaSet> {
    let [p, q, r, s] = quad.as_quad("expand_quad")?;
    let (i, j) = ij.as_pair("expand_quad")?;
    if !i.structure(j)?.disjoint {
        return Err(Error::NotDisjoint);
    }
    let (ic, jc) = (i.involute(), j.involute());
    let lift = |x: &Tensor, y: &Tensor| -> Result<[Tensor; 2]> {
        Ok([
            superpose(&[kron(x, i)?, kron(y, j)?])?,
            superpose(&[kron(x, &jc)?, kron(y, &ic)?.negate()])?,
        ])
    };
    let [p2, q2] = lift(p, q)?;
    let [r2, s2] = lift(r, s)?;
    GcaSet::new(vec![p2, q2, r2, s2], "expand_quad")
}

/// Pads `{A,B}` after and `{C,D}` before along `dim`, then binds with `{I,J}`:
/// `E = A′⊗I + C′⊗J`, `F = A′⊗J* − C′⊗I*`, `G = B′⊗I + D′⊗J`, `H = B′⊗J* − D′⊗I*`.
pub fn compromise_quad(ab: &GcaSet, cd: &GcaSet, dim: usize, ij: &GcaSet) -> Result<GcaSet> {
    let (a, b) = ab.as_pair("compromise_quad")?;
    let (c, d) = cd.as_pair("compromise_quad")?;
    let (i, j) = ij.as_pair("compromise_quad")?;
    let za = Tensor::zeros(a.shape().clone());
    let zc = Tensor::zeros(c.shape().clone());
    let a2 = a.concat(&zc, dim)?;
    let b2 = b.concat(&zc, dim)?;
    let c2 = za.concat(c, dim)?;
    let d2 = za.concat(d, dim)?;
    let (ic, jc) = (i.involute(), j.involute());
    let e = superpose(&[kron(&a2, i)?, kron(&c2, j)?])?;
    let f = superpose(&[kron(&a2, &jc)?, kron(&c2, &ic)?.negate()])?;
    let g = superpose(&[kron(&b2, i)?, kron(&d2, j)?])?;
    let h = superpose(&[kron(&b2, &jc)?, kron(&d2, &ic)?.negate()])?;
    let out = [e, f, g, h];
    if ab.is_polyphase() && cd.is_polyphase() && ij.is_polyphase() {
        check_polyphase(&out)?;
    }
    GcaSet::new(out.to_vec(), "compromise_quad")
}

/// Reads every rank-2 member out column by column into a sequence.
pub fn reshape_set(set: &GcaSet) -> Result<GcaSet> {
    let arrays = set.arrays().iter().map(Tensor::reshape_to_sequence).collect::<Result<Vec<_>>>()?;
    GcaSet::new(arrays, "reshape")
}

/// Embeds every member of a rank-1 set as rank `rank`, extent on `dim`.
pub fn orient_set(set: &GcaSet, rank: usize, dim: usize) -> Result<GcaSet> {
    let arrays = set.arrays().iter().map(|t| t.orient(rank, dim)).collect::<Result<Vec<_>>>()?;
    GcaSet::with_structure(arrays, set.lineage(), set.structure().clone())
}

#[cfg(test)]
mod tests;
