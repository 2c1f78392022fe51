//! Generator spaces and the free degree-3 component `F_V(3) = kS3 ⊗_{kS2} (V ⊗→ V)`.
//!
//! Basis vectors are triples `(σ, outer, inner)` with `σ` one of the coset
//! representatives `id, (123), (132)`. The triple stands for the monomial
//! `outer(inner(x_σ(1), x_σ(2)), x_σ(3))`. Coordinates are laid out as
//! `σ-index · d² + outer · d + inner`.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::{MatrixQ, Rational, SubspaceQ, Echelon};
use crate::perm::{coset_decompose, PermS3};

/// A finite-dimensional S2-module of binary operations: generator names plus
/// the matrix of the transposition (12). Column `j` of `swap` holds the
/// coordinates of `(12)·e_j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GeneratorSpace {
    names: Vec<String>,
    swap: MatrixQ,
}

impl GeneratorSpace {
    pub fn new(names: Vec<String>, swap: MatrixQ) -> Result<Self> {
        let d = names.len();
        if swap.rows() != d || swap.cols() != d {
            return Err(Error::DimensionMismatch { expected: d, found: swap.rows() });
        }
        for (i, n) in names.iter().enumerate() {
            if n.trim().is_empty() || n.contains(['{', '}']) {
                return Err(Error::InvalidArgument(format!("bad generator name `{n}`")));
            }
            if names[..i].contains(n) {
                return Err(Error::InvalidArgument(format!("duplicate generator name `{n}`")));
            }
        }
        if swap.mul(&swap) != MatrixQ::identity(d) {
            return Err(Error::NonInvolutiveSwap);
        }
        Ok(GeneratorSpace { names, swap })
    }

    pub fn empty() -> Self {
        GeneratorSpace { names: Vec::new(), swap: MatrixQ::zeros(0, 0) }
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn swap(&self) -> &MatrixQ {
        &self.swap
    }

    pub fn renamed(&self, names: Vec<String>) -> Self {
        assert_eq!(names.len(), self.dim());
        GeneratorSpace { names, swap: self.swap.clone() }
    }

    pub fn free3_dim(&self) -> usize {
        3 * self.dim() * self.dim()
    }

    pub fn index(&self, m: Mono) -> usize {
        let d = self.dim();
        m.coset * d * d + m.outer * d + m.inner
    }

    pub fn mono(&self, index: usize) -> Mono {
        let d = self.dim();
        Mono { coset: index / (d * d), outer: (index / d) % d, inner: index % d }
    }

    pub fn unit(&self, m: Mono) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); self.free3_dim()];
        v[self.index(m)] = Rational::one();
        v
    }

    /// Left action of `pi` on a coordinate vector.
    pub fn act(&self, pi: PermS3, v: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.free3_dim()];
        for (idx, c) in v.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let m = self.mono(idx);
            for (target, coeff) in self.act_mono(pi, m) {
                out[self.index(target)] += c * coeff;
            }
        }
        out
    }

    /// `pi · (σ, i, j)` as a combination of basis monomials. With
    /// `pi∘σ = σ'∘tail`, a trivial tail relabels only; a (12) tail acts
    /// on the inner factor through `swap`.
    pub fn act_mono(&self, pi: PermS3, m: Mono) -> Vec<(Mono, Rational)> {
        let sigma = PermS3::COSET_REPS[m.coset];
        let (rep, tail) = coset_decompose(pi.compose(sigma));
        let coset = rep.coset_index().expect("representative");
        if tail == PermS3::ID {
            return vec![(Mono { coset, ..m }, Rational::one())];
        }
        (0..self.dim())
            .filter(|&k| !self.swap[(k, m.inner)].is_zero())
            .map(|k| (Mono { coset, outer: m.outer, inner: k }, self.swap[(k, m.inner)].clone()))
            .collect()
    }
}

/// A basis monomial of `F_V(3)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mono {
    /// Index into `PermS3::COSET_REPS`.
    pub coset: usize,
    pub outer: usize,
    pub inner: usize,
}

impl Mono {
    pub fn new(sigma: PermS3, outer: usize, inner: usize) -> Self {
        let coset = sigma.coset_index().expect("sigma must be a coset representative");
        Mono { coset, outer, inner }
    }

    pub fn sigma(self) -> PermS3 {
        PermS3::COSET_REPS[self.coset]
    }
}

/// Matrix of the left S3 action on `F_V(3)`.
pub fn free3_action(gens: &GeneratorSpace, pi: PermS3) -> MatrixQ {
    let n = gens.free3_dim();
    let mut m = MatrixQ::zeros(n, n);
    for col in 0..n {
        for (target, c) in gens.act_mono(pi, gens.mono(col)) {
            m[(gens.index(target), col)] += c;
        }
    }
    m
}

/// Smallest S3-stable subspace containing `vectors`.
pub fn s3_closure<I, V>(gens: &GeneratorSpace, vectors: I) -> SubspaceQ
where
    I: IntoIterator<Item = V>,
    V: AsRef<[Rational]>,
{
    let n = gens.free3_dim();
    let mut ech = Echelon::new(n);
    let mut queue: Vec<Vec<Rational>> = Vec::new();
    for v in vectors {
        let v = v.as_ref().to_vec();
        if ech.insert_rational(&v) {
            queue.push(v);
        }
    }
    // (12) and (123) generate S3
    while let Some(v) = queue.pop() {
        for pi in [PermS3::T12, PermS3::C123] {
            let w = gens.act(pi, &v);
            if ech.insert_rational(&w) {
                queue.push(w);
            }
        }
    }
    SubspaceQ::from_echelon(&ech)
}

pub fn is_s3_stable(gens: &GeneratorSpace, space: &SubspaceQ) -> bool {
    let ech = space.echelon();
    space.basis_vectors().iter().all(|v| {
        [PermS3::T12, PermS3::C123].iter().all(|&pi| ech.contains_rational(&gens.act(pi, v)))
    })
}
