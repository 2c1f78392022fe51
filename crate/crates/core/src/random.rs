//! Seeded generators of small random test data.

use num_traits::Zero;
use rand::Rng;

use crate::free3::{s3_closure, GeneratorSpace};
use crate::linalg::{q, MatrixQ, Rational};
use crate::operad::{Provenance, QuadOperad};

fn small_matrix<R: Rng>(rng: &mut R, d: usize, range: i64) -> MatrixQ {
    let rows = (0..d).map(|_| (0..d).map(|_| q(rng.gen_range(-range..=range))).collect()).collect();
    MatrixQ::from_rows(d, rows)
}

fn invertible<R: Rng>(rng: &mut R, d: usize) -> MatrixQ {
    loop {
        let m = small_matrix(rng, d, 2);
        if m.rank() == d {
            return m;
        }
    }
}

/// A random involution `P·diag(±1)·P⁻¹`.
pub fn random_involution<R: Rng>(rng: &mut R, d: usize) -> MatrixQ {
    let p = invertible(rng, d);
    let mut diag = MatrixQ::zeros(d, d);
    for i in 0..d {
        diag[(i, i)] = q(if rng.gen_bool(0.5) { 1 } else { -1 });
    }
    p.mul(&diag).mul(&p.inverse().expect("invertible"))
}

/// A generator space of dimension `d`. With `structured`, the swap is a
/// signed permutation built from `sym`, `antisym` and swapped pairs, as in
/// hand-written operads; otherwise it is a dense random involution.
pub fn random_generator_space<R: Rng>(rng: &mut R, d: usize, structured: bool) -> GeneratorSpace {
    let names = (1..=d).map(|i| format!("o{i}")).collect();
    let swap = if structured {
        let mut m = MatrixQ::zeros(d, d);
        let mut i = 0;
        while i < d {
            if i + 1 < d && rng.gen_bool(0.4) {
                m[(i, i + 1)] = q(1);
                m[(i + 1, i)] = q(1);
                i += 2;
            } else {
                m[(i, i)] = q(if rng.gen_bool(0.5) { 1 } else { -1 });
                i += 1;
            }
        }
        m
    } else {
        random_involution(rng, d)
    };
    GeneratorSpace::new(names, swap).expect("involution by construction")
}

/// A vector of `F_V(3)` with a few small nonzero integer coordinates.
pub fn random_free3_vector<R: Rng>(rng: &mut R, gens: &GeneratorSpace, terms: usize) -> Vec<Rational> {
    let n = gens.free3_dim();
    let mut v = vec![Rational::zero(); n];
    if n == 0 {
        return v;
    }
    for _ in 0..terms {
        let c = rng.gen_range(-3..=3);
        v[rng.gen_range(0..n)] += q(c);
    }
    v
}

/// S3-closure of `count` random sparse vectors.
pub fn random_operad<R: Rng>(rng: &mut R, gens: GeneratorSpace, count: usize) -> QuadOperad {
    let vecs: Vec<_> = (0..count).map(|_| random_free3_vector(rng, &gens, 3)).collect();
    let rel = s3_closure(&gens, &vecs);
    QuadOperad::new("random", gens, rel, Provenance::Derived("random".into())).expect("closure is S3-stable")
}

/// A random invertible `T` commuting with `swap`: `M + A·M·A` for random `M`.
pub fn random_equivariant<R: Rng>(rng: &mut R, swap: &MatrixQ) -> MatrixQ {
    let d = swap.rows();
    loop {
        let m = small_matrix(rng, d, 3);
        let t = m.add(&swap.mul(&m).mul(swap));
        if t.rank() == d {
            return t;
        }
    }
}
