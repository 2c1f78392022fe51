//! The Dong criterion `(V∨ ⊗→ V∨) ∩ R⊥ = 0`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::koszul::dual_operad;
use crate::linalg::{Rational, SubspaceQ};
use crate::operad::{p3_projection, QuadOperad};
use crate::par::Exec;
use crate::parse::pretty_print_vars;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Verdict {
    #[serde(rename = "DONG")]
    Dong,
    #[serde(rename = "NOT_DONG")]
    NotDong,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::Dong => "DONG",
            Verdict::NotDong => "NOT DONG",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DongDims {
    pub gen: usize,
    pub free3: usize,
    pub relations: usize,
    pub p3: usize,
    pub dual_relations: usize,
    pub dual_p3: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DongReport {
    pub name: String,
    pub verdict: Verdict,
    pub method_agreement: bool,
    pub kernel_dim: usize,
    /// Kernel basis in `F_{V∨}(3)` coordinates (supported on the identity block).
    pub kernel: Vec<Vec<Rational>>,
    /// Kernel vectors in the relation grammar over the dual generators.
    pub witnesses: Vec<String>,
    /// The same vectors written with `p, q, t`: `(p ∘^i q) ∘^j t`.
    pub witnesses_pqt: Vec<String>,
    pub dims: DongDims,
}

pub fn dong_verdict(p: &QuadOperad) -> Result<DongReport> {
    let dual = dual_operad(p)?;
    let d = p.gens().dim();
    let n = p.gens().free3_dim();
    let perp = dual.relations();

    // (a) the identity block meets R⊥
    let block = SubspaceQ::coordinate(n, 0..d * d);
    let kernel = block.intersect(perp)?;

    // (b) rank of the identity block in P!(3)
    let proj = p3_projection(&dual);
    let images: Vec<Vec<Rational>> = (0..d * d).map(|c| proj.matrix.column(c)).collect();
    let rank = SubspaceQ::span(proj.dim(), &images).dim();

    let method_agreement = kernel.dim() == d * d - rank;
    if !method_agreement {
        return Err(Error::Invariant(format!(
            "{}: intersection has dim {} but the block has rank {rank} of {}",
            p.name(),
            kernel.dim(),
            d * d
        )));
    }
    let vectors = kernel.basis_vectors();
    let witnesses = vectors.iter().map(|v| pretty_print_vars(v, dual.gens(), ["x1", "x2", "x3"])).collect();
    let witnesses_pqt = vectors.iter().map(|v| pretty_print_vars(v, dual.gens(), ["p", "q", "t"])).collect();
    let pd = p.dims();
    let dd = dual.dims();
    Ok(DongReport {
        name: p.name().to_string(),
        verdict: if kernel.dim() == 0 { Verdict::Dong } else { Verdict::NotDong },
        method_agreement,
        kernel_dim: kernel.dim(),
        kernel: vectors,
        witnesses,
        witnesses_pqt,
        dims: DongDims {
            gen: pd.gen,
            free3: pd.free3,
            relations: pd.relations,
            p3: pd.p3,
            dual_relations: dd.relations,
            dual_p3: dd.p3,
        },
    })
}

/// Reports in input order.
pub fn dong_table(operads: &[QuadOperad], exec: Exec) -> Result<Vec<DongReport>> {
    exec.map(operads, dong_verdict).into_iter().collect()
}
