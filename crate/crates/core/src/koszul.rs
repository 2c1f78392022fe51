//! Koszul duality: `V∨`, the pairing `F_{V∨}(3) × F_V(3) → k` and `P! = P(V∨, R⊥)`.
//!
//! The pairing makes the monomial bases mutually dual; every sign lives in
//! the dual swap matrix `-swapᵀ`.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::free3::{free3_action, GeneratorSpace};
use crate::linalg::{kernel_basis, MatrixQ, Rational};
use crate::operad::{p3_projection, Provenance, QuadOperad};
use crate::perm::PermS3;

/// Toggle the dual marker on a generator name.
pub fn dual_name(name: &str) -> String {
    match name.strip_suffix('\'') {
        Some(base) => base.to_string(),
        None => format!("{name}'"),
    }
}

/// Operad names take a trailing `!`.
pub fn dual_operad_name(name: &str) -> String {
    match name.strip_suffix('!') {
        Some(base) => base.to_string(),
        None => format!("{name}!"),
    }
}

pub fn dual_generators(v: &GeneratorSpace) -> GeneratorSpace {
    let names = v.names().iter().map(|n| dual_name(n)).collect();
    let swap = v.swap().transpose().scale(&-Rational::one());
    GeneratorSpace::new(names, swap).expect("dual of an involution is an involution")
}

#[derive(Clone, Debug)]
pub struct DualPairing {
    pub v: GeneratorSpace,
    pub vdual: GeneratorSpace,
    /// Rows index `F_{V∨}(3)`, columns index `F_V(3)`.
    pub matrix: MatrixQ,
}

/// Checks `A∨(π)ᵀ · M · A(π) = sgn(π)·M` for every `π`.
pub fn check_equivariance(p: &DualPairing) -> Result<()> {
    for pi in PermS3::ALL {
        let lhs = free3_action(&p.vdual, pi).transpose().mul(&p.matrix).mul(&free3_action(&p.v, pi));
        let rhs = p.matrix.scale(&Rational::from_integer(pi.sign().into()));
        if lhs != rhs {
            return Err(Error::Invariant(format!("pairing is not sign-equivariant under {pi}")));
        }
    }
    Ok(())
}

pub fn pairing_matrix(v: &GeneratorSpace) -> Result<DualPairing> {
    let pairing =
        DualPairing { v: v.clone(), vdual: dual_generators(v), matrix: MatrixQ::identity(v.free3_dim()) };
    check_equivariance(&pairing)?;
    Ok(pairing)
}

/// `P! = P(V∨, R⊥)`.
pub fn dual_operad(p: &QuadOperad) -> Result<QuadOperad> {
    let vdual = dual_generators(p.gens());
    // the pairing is the identity, so R⊥ is the null space of R's basis
    let perp = kernel_basis(p.relations().basis());
    let provenance = Provenance::Derived(format!("dual({})", p.name()));
    QuadOperad::new(dual_operad_name(p.name()), vdual, perp, provenance)
}

/// Nonzero component of a projected Jacobiator or antisymmetry defect.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JacobiWitness {
    pub degree: u8,
    /// `(row, column, value)` entries of the nonzero matrix.
    pub entries: Vec<(usize, usize, Rational)>,
}

/// Checks that `B ⊗ F` with `[a⊗x, b⊗y] = Σ_i (a ∘^i b) ⊗ (x ∘_i y)` is a Lie
/// algebra whenever `F` is a `P`-algebra and `B` a `candidate`-algebra.
///
/// In degree 3 the Jacobiator on `(y1⊗x1, y2⊗x2, y3⊗x3)` is
/// `Σ_σ Σ_{i,j} (σ,j,i)∨ ⊗ (σ,j,i)` over the cyclic cosets, i.e. the
/// canonical element of `F_{V∨}(3) ⊗ F_V(3)`; it must vanish in
/// `candidate(3) ⊗ P(3)`.
pub fn verify_jacobi_duality(p: &QuadOperad, candidate: &QuadOperad) -> Result<std::result::Result<(), JacobiWitness>> {
    let d = p.gens().dim();
    if candidate.gens().dim() != d {
        return Err(Error::DimensionMismatch { expected: d, found: candidate.gens().dim() });
    }
    // degree 2: diagonal (12) must negate Σ e_i∨ ⊗ e_i
    let c2 = candidate.gens().swap().mul(&p.gens().swap().transpose());
    let target = MatrixQ::identity(d).scale(&-Rational::one());
    if c2 != target {
        return Ok(Err(JacobiWitness { degree: 2, entries: nonzero_entries(&c2.add(&MatrixQ::identity(d))) }));
    }
    let proj_b = p3_projection(candidate).matrix;
    let proj_f = p3_projection(p).matrix;
    let jac = proj_b.mul(&proj_f.transpose());
    if jac.is_zero() {
        Ok(Ok(()))
    } else {
        Ok(Err(JacobiWitness { degree: 3, entries: nonzero_entries(&jac) }))
    }
}

fn nonzero_entries(m: &MatrixQ) -> Vec<(usize, usize, Rational)> {
    let mut out = Vec::new();
    for r in 0..m.rows() {
        for c in 0..m.cols() {
            if !m[(r, c)].is_zero() {
                out.push((r, c, m[(r, c)].clone()));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::free3::s3_closure;
    use crate::linalg::{q, SubspaceQ};
    use crate::operad::make_operad;

    fn gens(names: &[&str], swap: &[&[i64]]) -> GeneratorSpace {
        GeneratorSpace::new(names.iter().map(|s| s.to_string()).collect(), MatrixQ::from_i64(swap)).unwrap()
    }

    #[test]
    fn dual_swap_examples() {
        let lie = gens(&["b"], &[&[-1]]);
        assert_eq!(dual_generators(&lie).swap(), &MatrixQ::from_i64(&[&[1]]));
        assert_eq!(dual_generators(&lie).names(), ["b'"]);
        let as_ = gens(&["m", "m_op"], &[&[0, 1], &[1, 0]]);
        assert_eq!(dual_generators(&as_).swap(), &MatrixQ::from_i64(&[&[0, -1], &[-1, 0]]));
        assert_eq!(dual_generators(&dual_generators(&as_)), as_);
    }

    #[test]
    fn pairing_is_equivariant() {
        let com = gens(&["c"], &[&[1]]);
        let p = pairing_matrix(&com).unwrap();
        assert_eq!(p.matrix, MatrixQ::identity(3));
        assert_eq!(p.vdual.swap(), &MatrixQ::from_i64(&[&[-1]]));
        pairing_matrix(&gens(&["b"], &[&[-1]])).unwrap();
        pairing_matrix(&gens(&["g1", "g2"], &[&[0, 1], &[1, 0]])).unwrap();
    }

    #[test]
    fn broken_pairing_is_reported() {
        let v = gens(&["c"], &[&[1]]);
        let bad = DualPairing { v: v.clone(), vdual: v, matrix: MatrixQ::identity(3) };
        assert!(matches!(check_equivariance(&bad), Err(Error::Invariant(_))));
    }

    #[test]
    fn dual_of_com_is_lie() {
        let com = make_operad("Com", gens(&["c"], &[&[1]]), &["(x1 {c} x2) {c} x3 - x1 {c} (x2 {c} x3)"]).unwrap();
        let lie = dual_operad(&com).unwrap();
        assert_eq!(lie.name(), "Com!");
        assert_eq!(lie.relations().dim(), 1);
        assert!(lie.relations().contains(&[q(1), q(1), q(1)]).unwrap());
        let back = dual_operad(&lie).unwrap();
        assert_eq!(back.relations(), com.relations());
        assert_eq!(back.gens(), com.gens());
        assert_eq!(back.name(), "Com");
        assert_eq!(verify_jacobi_duality(&com, &lie).unwrap(), Ok(()));
    }

    #[test]
    fn jacobi_detects_too_small_dual() {
        let com = make_operad("Com", gens(&["c"], &[&[1]]), &["(x1 {c} x2) {c} x3 - x1 {c} (x2 {c} x3)"]).unwrap();
        let lie = dual_operad(&com).unwrap();
        let free = QuadOperad::new("free", lie.gens().clone(), SubspaceQ::zero(3), Provenance::Textual).unwrap();
        // a free algebra is too big to be a dual algebra
        assert!(verify_jacobi_duality(&com, &free).unwrap().is_err());
        // a smaller primal relation space needs a bigger dual
        let small = QuadOperad::new("small", com.gens().clone(), s3_closure(com.gens(), Vec::<Vec<Rational>>::new()), Provenance::Textual).unwrap();
        assert!(verify_jacobi_duality(&small, &lie).unwrap().is_err());
    }
}
