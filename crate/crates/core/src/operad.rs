//! Quadratic operad records `P(V, R)`.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::free3::{is_s3_stable, s3_closure, GeneratorSpace};
use crate::linalg::{MatrixQ, Rational, SubspaceQ};
use crate::parse::parse_relation;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    Textual,
    /// Recipe such as `white(Perm, Lie)`.
    Derived(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadOperad {
    name: String,
    gens: GeneratorSpace,
    relations: SubspaceQ,
    provenance: Provenance,
}

/// Dimension summary `(d, 3d², dim R, dim P(3))`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Dims {
    pub gen: usize,
    pub free3: usize,
    pub relations: usize,
    pub p3: usize,
}

impl QuadOperad {
    /// Validates that `relations` lives in `F_V(3)` and is S3-stable.
    pub fn new(name: impl Into<String>, gens: GeneratorSpace, relations: SubspaceQ, provenance: Provenance) -> Result<Self> {
        if relations.ambient_dim() != gens.free3_dim() {
            return Err(Error::DimensionMismatch { expected: gens.free3_dim(), found: relations.ambient_dim() });
        }
        if !is_s3_stable(&gens, &relations) {
            return Err(Error::Invariant("relation space is not S3-stable".into()));
        }
        Ok(QuadOperad { name: name.into(), gens, relations, provenance })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn gens(&self) -> &GeneratorSpace {
        &self.gens
    }

    pub fn relations(&self) -> &SubspaceQ {
        &self.relations
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn with_provenance(mut self, provenance: Provenance) -> Self {
        self.provenance = provenance;
        self
    }

    /// Same operad with generators renamed (the swap matrix is kept).
    pub fn with_generator_names(mut self, names: Vec<String>) -> Result<Self> {
        self.gens = GeneratorSpace::new(names, self.gens.swap().clone())?;
        Ok(self)
    }

    pub fn dims(&self) -> Dims {
        let free3 = self.gens.free3_dim();
        Dims { gen: self.gens.dim(), free3, relations: self.relations.dim(), p3: free3 - self.relations.dim() }
    }
}

/// Parse relation texts and close them under S3.
pub fn make_operad(name: &str, gens: GeneratorSpace, texts: &[&str]) -> Result<QuadOperad> {
    let vecs = texts.iter().map(|t| parse_relation(t, &gens)).collect::<Result<Vec<_>>>()?;
    let relations = s3_closure(&gens, &vecs);
    QuadOperad::new(name, gens, relations, Provenance::Textual)
}

/// Quotient coordinates of `P(3) = F_V(3)/R`.
#[derive(Clone, Debug)]
pub struct P3Projection {
    /// Free-space coordinates used as quotient representatives (non-pivots of R).
    pub reps: Vec<usize>,
    /// `dim P(3) × 3d²` matrix of the projection.
    pub matrix: MatrixQ,
}

impl P3Projection {
    pub fn dim(&self) -> usize {
        self.reps.len()
    }

    pub fn project(&self, v: &[Rational]) -> Vec<Rational> {
        self.matrix.mul_vec(v)
    }
}

pub fn p3_projection(p: &QuadOperad) -> P3Projection {
    quotient_projection(p.relations())
}

/// Projection onto `Q^n / R` using the non-pivot coordinates of `R`.
pub fn quotient_projection(r: &SubspaceQ) -> P3Projection {
    let n = r.ambient_dim();
    let pivots = r.pivots();
    let mut slot = vec![None; n];
    let mut reps = Vec::new();
    for c in 0..n {
        if !pivots.contains(&c) {
            slot[c] = Some(reps.len());
            reps.push(c);
        }
    }
    let mut matrix = MatrixQ::zeros(reps.len(), n);
    for (k, &c) in reps.iter().enumerate() {
        matrix[(k, c)] = Rational::one();
    }
    // e_p ≡ e_p - row = -(row restricted to non-pivots)
    for (row, &p) in pivots.iter().enumerate() {
        for (c, x) in r.basis().row(row).iter().enumerate() {
            if let Some(k) = slot[c] {
                if !x.is_zero() {
                    matrix[(k, p)] = -x.clone();
                }
            }
        }
    }
    P3Projection { reps, matrix }
}

/// The linear map `F_V(3) → F_V(3)` induced by `T: V → V` on both slots.
pub fn induced_free3_map(gens: &GeneratorSpace, t: &MatrixQ) -> MatrixQ {
    let d = gens.dim();
    let n = gens.free3_dim();
    let mut m = MatrixQ::zeros(n, n);
    for s in 0..3 {
        for i in 0..d {
            for j in 0..d {
                let col = s * d * d + i * d + j;
                for k in 0..d {
                    if t[(k, i)].is_zero() {
                        continue;
                    }
                    for l in 0..d {
                        if !t[(l, j)].is_zero() {
                            m[(s * d * d + k * d + l, col)] = &t[(k, i)] * &t[(l, j)];
                        }
                    }
                }
            }
        }
    }
    m
}

/// Transport `P` along an S2-equivariant automorphism `T` of `V`.
pub fn change_basis(p: &QuadOperad, t: &MatrixQ) -> Result<QuadOperad> {
    let d = p.gens().dim();
    if t.rows() != d || t.cols() != d {
        return Err(Error::DimensionMismatch { expected: d, found: t.rows() });
    }
    if t.rank() != d {
        return Err(Error::SingularBasisChange);
    }
    let swap = p.gens().swap();
    if t.mul(swap) != swap.mul(t) {
        return Err(Error::NonEquivariantBasisChange);
    }
    let map = induced_free3_map(p.gens(), t);
    let relations = p.relations().image(&map);
    QuadOperad::new(p.name(), p.gens().clone(), relations, p.provenance().clone())
}
