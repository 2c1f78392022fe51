//! Manin white and black products, di/tri replication and pre/post splitting.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::free3::{s3_closure, GeneratorSpace, Mono};
use crate::koszul::dual_operad;
use crate::linalg::{kernel_basis, MatrixQ, Rational, SubspaceQ};
use crate::operad::{p3_projection, Provenance, QuadOperad};
use crate::perm::PermS3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ProductKind {
    White,
    Black,
    Di,
    Tri,
    SplitPre,
    SplitPost,
}

impl ProductKind {
    pub fn label(self) -> &'static str {
        match self {
            ProductKind::White => "white",
            ProductKind::Black => "black",
            ProductKind::Di => "di",
            ProductKind::Tri => "tri",
            ProductKind::SplitPre => "pre",
            ProductKind::SplitPost => "post",
        }
    }
}

/// How a product operad was built and what its generators stand for.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProductRecipe {
    pub kind: ProductKind,
    pub operands: Vec<String>,
    /// `(generator name, meaning)` in generator order.
    pub dictionary: Vec<(String, String)>,
}

impl ProductRecipe {
    pub fn describe(&self) -> String {
        format!("{}({})", self.kind.label(), self.operands.join(", "))
    }
}

fn pair_names(p: &GeneratorSpace, q: &GeneratorSpace, sep: &str) -> Vec<String> {
    let mut out = Vec::with_capacity(p.dim() * q.dim());
    for a in p.names() {
        for b in q.names() {
            out.push(format!("{a}{sep}{b}"));
        }
    }
    out
}

fn pair_dictionary(p: &GeneratorSpace, q: &GeneratorSpace, names: &[String], sep: &str) -> Vec<(String, String)> {
    let mut out = Vec::new();
    let mut k = 0;
    for a in p.names() {
        for b in q.names() {
            out.push((names[k].clone(), format!("{a} {sep} {b}")));
            k += 1;
        }
    }
    out
}

/// `F_{V⊗W}(3) → P(3) ⊗ Q(3)`, `(σ,(i,p),(j,q)) ↦ [σ,i,j] ⊗ [σ,p,q]`.
fn interleave_projection(p: &QuadOperad, q: &QuadOperad) -> (GeneratorSpace, MatrixQ) {
    let (d, e) = (p.gens().dim(), q.gens().dim());
    let swap = p.gens().swap().kronecker(q.gens().swap());
    let gens = GeneratorSpace::new(pair_names(p.gens(), q.gens(), "*"), swap).expect("tensor of involutions");
    let pp = p3_projection(p).matrix;
    let pq = p3_projection(q).matrix;
    let (np, nq) = (pp.rows(), pq.rows());
    let mut m = MatrixQ::zeros(np * nq, gens.free3_dim());
    for col in 0..gens.free3_dim() {
        let mono = gens.mono(col);
        let (i, a) = (mono.outer / e, mono.outer % e);
        let (j, b) = (mono.inner / e, mono.inner % e);
        let cp = p.gens().index(Mono { coset: mono.coset, outer: i, inner: j });
        let cq = q.gens().index(Mono { coset: mono.coset, outer: a, inner: b });
        for r1 in 0..np {
            let x = &pp[(r1, cp)];
            if x.is_zero() {
                continue;
            }
            for r2 in 0..nq {
                let y = &pq[(r2, cq)];
                if !y.is_zero() {
                    m[(r1 * nq + r2, col)] = x * y;
                }
            }
        }
    }
    debug_assert_eq!(d * e, gens.dim());
    (gens, m)
}

pub fn white_product(p: &QuadOperad, q: &QuadOperad) -> Result<QuadOperad> {
    let (gens, phi) = interleave_projection(p, q);
    let relations = kernel_basis(&phi);
    let recipe = format!("white({}, {})", p.name(), q.name());
    QuadOperad::new(recipe.clone(), gens, relations, Provenance::Derived(recipe))
        .map_err(|e| Error::Invariant(format!("white product not S3-closed: {e}")))
}

pub fn white_recipe(p: &QuadOperad, q: &QuadOperad) -> ProductRecipe {
    let names = pair_names(p.gens(), q.gens(), "*");
    ProductRecipe {
        kind: ProductKind::White,
        operands: vec![p.name().into(), q.name().into()],
        dictionary: pair_dictionary(p.gens(), q.gens(), &names, "⊗"),
    }
}

/// `P • Q = (P! ○ Q!)!` on `k₋ ⊗ V ⊗ W`.
pub fn black_product(p: &QuadOperad, q: &QuadOperad) -> Result<QuadOperad> {
    let white = white_product(&dual_operad(p)?, &dual_operad(q)?)?;
    let black = dual_operad(&white)?;
    let recipe = format!("black({}, {})", p.name(), q.name());
    black.with_name(recipe.clone()).with_provenance(Provenance::Derived(recipe)).with_generator_names(pair_names(
        p.gens(),
        q.gens(),
        "•",
    ))
}

pub fn black_recipe(p: &QuadOperad, q: &QuadOperad) -> ProductRecipe {
    let names = pair_names(p.gens(), q.gens(), "•");
    ProductRecipe {
        kind: ProductKind::Black,
        operands: vec![p.name().into(), q.name().into()],
        dictionary: pair_dictionary(p.gens(), q.gens(), &names, "⊗"),
    }
}

/// Black product as `π(R ⊗ S)` with `π(u ⊗ w) = Σ_σ u_σij w_σpq (σ,(i,p),(j,q))`.
pub fn black_direct(p: &QuadOperad, q: &QuadOperad) -> Result<QuadOperad> {
    let (d, e) = (p.gens().dim(), q.gens().dim());
    let swap = p.gens().swap().kronecker(q.gens().swap()).scale(&-Rational::one());
    let gens = GeneratorSpace::new(pair_names(p.gens(), q.gens(), "•"), swap)?;
    let n = gens.free3_dim();
    let rs = p.relations().basis_vectors();
    let ss = q.relations().basis_vectors();
    let mut images = Vec::with_capacity(rs.len() * ss.len());
    for r in &rs {
        for s in &ss {
            let mut v = vec![Rational::zero(); n];
            for (cr, x) in r.iter().enumerate() {
                if x.is_zero() {
                    continue;
                }
                let mr = p.gens().mono(cr);
                for b_out in 0..e {
                    for b_in in 0..e {
                        let y = &s[q.gens().index(Mono { coset: mr.coset, outer: b_out, inner: b_in })];
                        if !y.is_zero() {
                            let m = Mono { coset: mr.coset, outer: mr.outer * e + b_out, inner: mr.inner * e + b_in };
                            v[gens.index(m)] += x * y;
                        }
                    }
                }
            }
            images.push(v);
        }
    }
    debug_assert_eq!(gens.dim(), d * e);
    let relations = SubspaceQ::span(n, &images);
    let recipe = format!("black({}, {})", p.name(), q.name());
    QuadOperad::new(recipe.clone(), gens, relations, Provenance::Derived(recipe))
        .map_err(|e| Error::Invariant(format!("direct black product not S3-closed: {e}")))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Replication {
    Di,
    Tri,
}

/// `di P = Perm ○ P`, `tri P = ComTriAs ○ P`; `partner` is Perm or ComTriAs.
pub fn replicate_with(partner: &QuadOperad, p: &QuadOperad, mode: Replication) -> Result<QuadOperad> {
    let w = white_product(partner, p)?;
    let recipe = match mode {
        Replication::Di => format!("di({})", p.name()),
        Replication::Tri => format!("tri({})", p.name()),
    };
    Ok(w.with_name(recipe.clone()).with_provenance(Provenance::Derived(recipe)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SplitMode {
    Pre,
    Post,
}

impl SplitMode {
    fn kinds(self) -> usize {
        match self {
            SplitMode::Pre => 2,
            SplitMode::Post => 3,
        }
    }
}

const SUCC: usize = 0;
const PREC: usize = 1;
const PERP: usize = 2;

/// Generators `succ_g, prec_g (, perp_g)` of `k₋ ⊗ M(2) ⊗ W`, laid out in
/// blocks by kind. `(12)(succ_g) = -prec_{(12)g}`, `(12)(perp_g) = perp_{(12)g}`.
pub fn split_generators(w: &GeneratorSpace, mode: SplitMode) -> GeneratorSpace {
    let d = w.dim();
    let kinds = mode.kinds();
    let mut names = Vec::with_capacity(kinds * d);
    for prefix in ["succ_", "prec_", "perp_"].iter().take(kinds) {
        names.extend(w.names().iter().map(|g| format!("{prefix}{g}")));
    }
    let mut swap = MatrixQ::zeros(kinds * d, kinds * d);
    for i in 0..d {
        for m in 0..d {
            let s = &w.swap()[(m, i)];
            if s.is_zero() {
                continue;
            }
            swap[(PREC * d + m, SUCC * d + i)] = -s.clone();
            swap[(SUCC * d + m, PREC * d + i)] = -s.clone();
            if kinds == 3 {
                swap[(PERP * d + m, PERP * d + i)] = s.clone();
            }
        }
    }
    GeneratorSpace::new(names, swap).expect("split swap is an involution")
}

/// The split of the basis monomial `(x_k1 ∘^j x_k2) ∘^i x_k3` selected by
/// the positions in `subset` (bit 0 = k1, bit 1 = k2, bit 2 = k3).
/// The substitution table is written with `≺ = -prec`.
fn split_monomial(d: usize, m: Mono, subset: u8, mode: SplitMode) -> Vec<(Mono, Rational)> {
    let (i, j) = (m.outer, m.inner);
    // (inner kinds, outer kind)
    let shapes: Vec<(Vec<usize>, usize)> = match subset {
        0b001 => vec![(vec![PREC], PREC)],
        0b010 => vec![(vec![SUCC], PREC)],
        0b100 => {
            let star = if mode == SplitMode::Post { vec![SUCC, PREC, PERP] } else { vec![SUCC, PREC] };
            vec![(star, SUCC)]
        }
        0b011 => vec![(vec![PERP], PREC)],
        0b101 => vec![(vec![PREC], PERP)],
        0b110 => vec![(vec![SUCC], PERP)],
        0b111 => vec![(vec![PERP], PERP)],
        _ => unreachable!("empty subset"),
    };
    let sign = |k: usize| if k == PREC { -Rational::one() } else { Rational::one() };
    let mut out = Vec::new();
    for (inner_kinds, outer_kind) in shapes {
        for ik in inner_kinds {
            out.push((Mono { coset: m.coset, outer: outer_kind * d + i, inner: ik * d + j }, sign(ik) * sign(outer_kind)));
        }
    }
    out
}

/// `pre Q = preLie • Q` and `post Q = postLie • Q` by splitting the relations of `Q`.
pub fn split(q: &QuadOperad, mode: SplitMode) -> Result<QuadOperad> {
    let d = q.gens().dim();
    let gens = split_generators(q.gens(), mode);
    check_split_anchor(mode)?;
    let n = gens.free3_dim();
    let variable_subsets: Vec<u8> = match mode {
        SplitMode::Pre => vec![0b001, 0b010, 0b100],
        SplitMode::Post => (1..8).collect(),
    };
    let mut splits = Vec::new();
    for f in q.relations().basis_vectors() {
        for &vars in &variable_subsets {
            let mut v = vec![Rational::zero(); n];
            for (c, x) in f.iter().enumerate() {
                if x.is_zero() {
                    continue;
                }
                let m = q.gens().mono(c);
                let sigma = PermS3::COSET_REPS[m.coset].images();
                // positions (k1, k2, k3) whose variable label is in the subset
                let mut pos = 0u8;
                for (t, &label) in sigma.iter().enumerate() {
                    if vars & (1 << (label - 1)) != 0 {
                        pos |= 1 << t;
                    }
                }
                for (mono, s) in split_monomial(d, m, pos, mode) {
                    v[gens.index(mono)] += x * s;
                }
            }
            splits.push(v);
        }
    }
    let relations = s3_closure(&gens, &splits);
    let recipe = format!("{}({})", if mode == SplitMode::Pre { "pre" } else { "post" }, q.name());
    QuadOperad::new(recipe.clone(), gens, relations, Provenance::Derived(recipe))
}

/// Splitting a single antisymmetric generator must give `(12)succ = prec`, `(12)perp = -perp`.
fn check_split_anchor(mode: SplitMode) -> Result<()> {
    let lie = GeneratorSpace::new(vec!["b".into()], MatrixQ::from_i64(&[&[-1]]))?;
    let s = split_generators(&lie, mode);
    let sw = s.swap();
    let ok = sw[(PREC, SUCC)] == Rational::one()
        && sw[(SUCC, PREC)] == Rational::one()
        && (mode == SplitMode::Pre || sw[(PERP, PERP)] == -Rational::one());
    if ok {
        Ok(())
    } else {
        Err(Error::Invariant("split generator signs violate the Lie anchor".into()))
    }
}

pub fn split_recipe(q: &QuadOperad, mode: SplitMode) -> ProductRecipe {
    let gens = split_generators(q.gens(), mode);
    let labels = ["μ1", "μ2", "ν"];
    let d = q.gens().dim();
    let dictionary = gens
        .names()
        .iter()
        .enumerate()
        .map(|(k, name)| (name.clone(), format!("{} ⊗ {}", labels[k / d.max(1)], q.gens().name(k % d))))
        .collect();
    ProductRecipe {
        kind: if mode == SplitMode::Pre { ProductKind::SplitPre } else { ProductKind::SplitPost },
        operands: vec![q.name().into()],
        dictionary,
    }
}

/// Nonzero `P!(3) ⊗ B(3)` component of a `Q`-relation evaluated on `B ⊗ A`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorWitness {
    pub relation: usize,
    pub entries: Vec<(usize, usize, Rational)>,
}

/// Checks that `B ⊗ A` with `(p⊗a) *_j (q⊗b) = Σ_i (p ∘^i q) ⊗ (a *_{i,j} b)`
/// satisfies every relation of `Q` when `B` is a `P!`-algebra and `A` a
/// `black`-algebra.
pub fn verify_black_tensor(
    p: &QuadOperad,
    q: &QuadOperad,
    black: &QuadOperad,
) -> Result<std::result::Result<(), TensorWitness>> {
    let (d, e) = (p.gens().dim(), q.gens().dim());
    if black.gens().dim() != d * e {
        return Err(Error::DimensionMismatch { expected: d * e, found: black.gens().dim() });
    }
    let dual = dual_operad(p)?;
    let proj_d = p3_projection(&dual).matrix;
    let proj_b = p3_projection(black).matrix;
    for (idx, h) in q.relations().basis_vectors().iter().enumerate() {
        let mut total = MatrixQ::zeros(proj_d.rows(), proj_b.rows());
        for (c, x) in h.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            let m = q.gens().mono(c);
            for i_out in 0..d {
                for i_in in 0..d {
                    let cd = dual.gens().index(Mono { coset: m.coset, outer: i_out, inner: i_in });
                    let cb = black.gens().index(Mono { coset: m.coset, outer: i_out * e + m.outer, inner: i_in * e + m.inner });
                    for r in 0..proj_d.rows() {
                        let a = &proj_d[(r, cd)];
                        if a.is_zero() {
                            continue;
                        }
                        for s in 0..proj_b.rows() {
                            let b = &proj_b[(s, cb)];
                            if !b.is_zero() {
                                total[(r, s)] += x * a * b;
                            }
                        }
                    }
                }
            }
        }
        if !total.is_zero() {
            let mut entries = Vec::new();
            for r in 0..total.rows() {
                for s in 0..total.cols() {
                    if !total[(r, s)].is_zero() {
                        entries.push((r, s, total[(r, s)].clone()));
                    }
                }
            }
            return Ok(Err(TensorWitness { relation: idx, entries }));
        }
    }
    Ok(Ok(()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::catalog;
    use crate::dong::{dong_verdict, Verdict};
    use crate::operad::make_operad;

    #[test]
    fn leibniz_as_white_product() {
        let leib = white_product(&catalog("Perm").unwrap(), &catalog("Lie").unwrap()).unwrap();
        assert_eq!((leib.dims().gen, leib.dims().p3), (2, 6));
        assert_eq!(dong_verdict(&leib).unwrap().verdict, Verdict::Dong);
    }

    #[test]
    fn lie_is_the_black_unit() {
        for name in ["Com", "As", "Nov"] {
            let p = catalog(name).unwrap();
            let b = black_product(&p, &catalog("Lie").unwrap()).unwrap();
            assert_eq!(b.dims(), p.dims(), "{name}");
        }
    }

    #[test]
    fn black_routes_agree() {
        let (a, l) = (catalog("As").unwrap(), catalog("Lie").unwrap());
        let x = black_product(&a, &l).unwrap();
        let y = black_direct(&a, &l).unwrap();
        assert_eq!(x.gens().swap(), y.gens().swap());
        assert_eq!(x.relations(), y.relations());
    }

    #[test]
    fn tensor_check_detects_missing_relations() {
        let (leib, nov) = (catalog("Leib").unwrap(), catalog("Nov").unwrap());
        let b = black_product(&leib, &nov).unwrap();
        assert!(verify_black_tensor(&leib, &nov, &b).unwrap().is_ok());
        let free = make_operad("free", b.gens().clone(), &[]).unwrap();
        let w = verify_black_tensor(&leib, &nov, &free).unwrap().unwrap_err();
        assert!(!w.entries.is_empty());
        assert!(matches!(verify_black_tensor(&leib, &nov, &leib), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn splitting() {
        let pre_as = split(&catalog("As").unwrap(), SplitMode::Pre).unwrap();
        assert_eq!(pre_as.dims(), catalog("preAs").unwrap().dims());
        let post_lie = split(&catalog("Lie").unwrap(), SplitMode::Post).unwrap();
        assert_eq!(post_lie.dims(), catalog("postLie").unwrap().dims());
        for name in ["Com", "Lie"] {
            let s = split(&catalog(name).unwrap(), SplitMode::Pre).unwrap();
            assert_eq!(dong_verdict(&s).unwrap().verdict, Verdict::NotDong, "{name}");
        }
        let g = split_generators(catalog("Lie").unwrap().gens(), SplitMode::Post);
        assert_eq!(g.names(), ["succ_b", "prec_b", "perp_b"]);
    }

    #[test]
    fn recipes() {
        let (p, l) = (catalog("Perm").unwrap(), catalog("Lie").unwrap());
        let r = white_recipe(&p, &l);
        assert_eq!(r.describe(), "white(Perm, Lie)");
        assert_eq!(r.dictionary[0], ("m*b".to_string(), "m ⊗ b".to_string()));
        assert_eq!(black_recipe(&p, &l).dictionary[1].0, "m_op•b");
        let s = split_recipe(&l, SplitMode::Pre);
        assert_eq!(s.describe(), "pre(Lie)");
        assert_eq!(s.dictionary.len(), 2);
        let di = replicate_with(&p, &l, Replication::Di).unwrap();
        assert_eq!(di.name(), "di(Lie)");
    }
}
