//! Windowed formal-distribution laboratory.
//!
//! Coefficients `a(n), b(n), c(n)` with `n ∈ [-K, K]` generate the
//! multilinear degree-3 part of the free `P`-algebra. Its coordinates are
//! `(P(3) basis element, index of a, index of b, index of c)`. The locality
//! ideal is spanned by all `P(3)` images of `h(g(x(i), y(j)) - g(x(i-1), y(j+1)), z(l))`
//! with every index inside the window. Membership of a residue vector in that
//! ideal certifies locality of `(a ∘_i^k b, c)` at order `N`; non-membership
//! only says no certificate exists inside the window.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{Echelon, Rational, SparseRow};
use crate::operad::{p3_projection, P3Projection, QuadOperad};
use crate::par::Exec;
use crate::perm::PermS3;
use crate::free3::Mono;

pub const WINDOW_NOTE: &str =
    "found orders are certified ideal memberships; absent orders only mean no certificate exists inside the index window";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalityParams {
    pub window: i64,
    pub n_max: usize,
    pub k: usize,
    pub n: i64,
    pub m: i64,
}

impl Default for LocalityParams {
    fn default() -> Self {
        LocalityParams { window: 6, n_max: 4, k: 0, n: 0, m: 0 }
    }
}

/// `(a(k-t) ∘_inner b(n-s+t)) ∘_outer c(m+s)` summed with alternating binomials.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ResidueSpec {
    pub inner: usize,
    pub k: usize,
    pub outer: usize,
    pub order: usize,
    pub n: i64,
    pub m: i64,
}

impl ResidueSpec {
    /// Smallest window radius holding every index of the double sum.
    pub fn required_window(&self) -> i64 {
        let k = self.k as i64;
        let big_n = self.order as i64;
        [k, self.n - big_n, self.n + k, self.m, self.m + big_n].iter().map(|x| x.abs()).max().unwrap_or(0)
    }

    fn grade(&self) -> i64 {
        self.k as i64 + self.n + self.m
    }
}

pub struct LocalityInstance {
    operad: QuadOperad,
    window: i64,
    proj: P3Projection,
    /// `columns[f]` is the `P(3)` image of free monomial `f`, sparse.
    columns: Vec<Vec<(usize, Rational)>>,
    grades: Mutex<HashMap<i64, Arc<Echelon>>>,
}

impl std::fmt::Debug for LocalityInstance {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("LocalityInstance")
            .field("operad", &self.operad.name())
            .field("window", &self.window)
            .field("space_dim", &self.space_dim())
            .finish()
    }
}

pub fn build_instance(p: &QuadOperad, window: i64) -> Result<LocalityInstance> {
    if window < 1 {
        return Err(Error::InvalidArgument(format!("window radius must be at least 1, got {window}")));
    }
    let proj = p3_projection(p);
    let columns = (0..p.gens().free3_dim())
        .map(|f| {
            proj.matrix
                .column(f)
                .into_iter()
                .enumerate()
                .filter(|(_, x)| !x.is_zero())
                .collect()
        })
        .collect();
    Ok(LocalityInstance { operad: p.clone(), window, proj, columns, grades: Mutex::new(HashMap::new()) })
}

impl LocalityInstance {
    pub fn operad(&self) -> &QuadOperad {
        &self.operad
    }

    pub fn window(&self) -> i64 {
        self.window
    }

    fn width(&self) -> usize {
        (2 * self.window + 1) as usize
    }

    pub fn p3_dim(&self) -> usize {
        self.proj.dim()
    }

    pub fn space_dim(&self) -> usize {
        self.p3_dim() * self.width().pow(3)
    }

    fn in_window(&self, x: i64) -> bool {
        x.abs() <= self.window
    }

    /// Coordinate of `P(3)` basis element `r` at indices `(a, b, c)`.
    pub fn coordinate(&self, r: usize, idx: [i64; 3]) -> usize {
        let w = self.width();
        let [a, b, c] = idx.map(|x| (x + self.window) as usize);
        ((r * w + a) * w + b) * w + c
    }

    fn push_image(&self, out: &mut Vec<(usize, Rational)>, f: usize, idx: [i64; 3], c: &Rational) {
        for (r, x) in &self.columns[f] {
            out.push((self.coordinate(*r, idx), x * c));
        }
    }

    /// Ideal generators whose indices sum to `grade`.
    fn grade_generators(&self, grade: i64) -> Vec<SparseRow> {
        let d = self.operad.gens().dim();
        let w = self.window;
        let mut rows = Vec::new();
        let one = Rational::one();
        let minus = -Rational::one();
        for (s, sigma) in PermS3::COSET_REPS.iter().enumerate() {
            for outer in 0..d {
                for inner in 0..d {
                    let f = self.operad.gens().index(Mono { coset: s, outer, inner });
                    if self.columns[f].is_empty() {
                        continue;
                    }
                    for i in -w..=w {
                        for j in -w..=w {
                            let l = grade - i - j;
                            if !self.in_window(l) || !self.in_window(i - 1) || !self.in_window(j + 1) {
                                continue;
                            }
                            let mut entries = Vec::new();
                            self.push_image(&mut entries, f, place(*sigma, [i, j, l]), &one);
                            self.push_image(&mut entries, f, place(*sigma, [i - 1, j + 1, l]), &minus);
                            let row = sparse(entries);
                            if !row.is_zero() {
                                rows.push(row);
                            }
                        }
                    }
                }
            }
        }
        rows
    }

    /// Echelon form of the ideal in one grade, built on first use.
    pub fn ideal_grade(&self, grade: i64) -> Arc<Echelon> {
        if let Some(e) = self.grades.lock().expect("grade cache").get(&grade) {
            return e.clone();
        }
        let mut ech = Echelon::new(self.space_dim());
        for row in self.grade_generators(grade) {
            ech.insert(row);
        }
        let ech = Arc::new(ech);
        self.grades.lock().expect("grade cache").entry(grade).or_insert(ech).clone()
    }

    /// Dimension of the whole windowed ideal (every grade).
    pub fn ideal_dim(&self) -> usize {
        let w = self.window;
        (-3 * w..=3 * w).map(|g| self.ideal_grade(g).rank()).sum()
    }

    /// Generators of the ideal in one grade, as dense vectors.
    pub fn ideal_generators(&self, grade: i64) -> Vec<Vec<Rational>> {
        self.grade_generators(grade).iter().map(|r| r.to_rational(self.space_dim())).collect()
    }
}

/// Position `u` of the monomial holds `x_σ(u)`; returns indices of `(a, b, c)`.
fn place(sigma: PermS3, by_position: [i64; 3]) -> [i64; 3] {
    let mut idx = [0; 3];
    for (u, v) in by_position.iter().enumerate() {
        idx[(sigma.apply(u as u8 + 1) - 1) as usize] = *v;
    }
    idx
}

fn sparse(entries: Vec<(usize, Rational)>) -> SparseRow {
    let den = entries.iter().fold(BigInt::one(), |acc, (_, x)| num_integer::lcm(acc, x.denom().clone()));
    SparseRow::from_pairs(entries.into_iter().map(|(c, x)| (c, x.numer() * (&den / x.denom()))).collect())
}

fn binomial(n: usize, k: usize) -> i64 {
    num_integer::binomial(n as i64, k as i64)
}

fn check_ops(inst: &LocalityInstance, spec: &ResidueSpec) -> Result<()> {
    let d = inst.operad.gens().dim();
    if spec.inner >= d || spec.outer >= d {
        return Err(Error::InvalidArgument(format!("operation index out of range for {d} generators")));
    }
    let required = spec.required_window();
    if required > inst.window {
        return Err(Error::WindowTooSmall { required, have: inst.window });
    }
    Ok(())
}

fn residue_row(inst: &LocalityInstance, spec: &ResidueSpec) -> Result<SparseRow> {
    check_ops(inst, spec)?;
    let f = inst.operad.gens().index(Mono { coset: 0, outer: spec.outer, inner: spec.inner });
    let mut entries = Vec::new();
    for t in 0..=spec.k {
        for s in 0..=spec.order {
            let sign = if (t + s) % 2 == 0 { 1 } else { -1 };
            let c = Rational::from_integer((sign * binomial(spec.k, t) * binomial(spec.order, s)).into());
            let (t, s) = (t as i64, s as i64);
            let idx = [spec.k as i64 - t, spec.n - s + t, spec.m + s];
            inst.push_image(&mut entries, f, idx, &c);
        }
    }
    Ok(sparse(entries))
}

/// The double binomial sum as a dense vector in window coordinates.
pub fn residue_vector(inst: &LocalityInstance, spec: &ResidueSpec) -> Result<Vec<Rational>> {
    check_ops(inst, spec)?;
    let f = inst.operad.gens().index(Mono { coset: 0, outer: spec.outer, inner: spec.inner });
    let mut v = vec![Rational::zero(); inst.space_dim()];
    for t in 0..=spec.k {
        for s in 0..=spec.order {
            let sign = if (t + s) % 2 == 0 { 1 } else { -1 };
            let c = Rational::from_integer((sign * binomial(spec.k, t) * binomial(spec.order, s)).into());
            let (t, s) = (t as i64, s as i64);
            let idx = [spec.k as i64 - t, spec.n - s + t, spec.m + s];
            for (r, x) in &inst.columns[f] {
                v[inst.coordinate(*r, idx)] += x * &c;
            }
        }
    }
    Ok(v)
}

/// Smallest `N ≤ n_max` whose residue lies in the ideal.
pub fn min_locality_order(
    inst: &LocalityInstance,
    inner: usize,
    k: usize,
    outer: usize,
    n_max: usize,
    n: i64,
    m: i64,
) -> Result<Option<usize>> {
    let top = ResidueSpec { inner, k, outer, order: n_max, n, m };
    check_ops(inst, &top)?;
    let ideal = inst.ideal_grade(top.grade());
    for order in 0..=n_max {
        let row = residue_row(inst, &ResidueSpec { order, ..top })?;
        if ideal.contains(&row) {
            return Ok(Some(order));
        }
    }
    Ok(None)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairOutcome {
    pub inner: String,
    pub outer: String,
    pub min_order: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalityReport {
    pub operad: String,
    pub params: LocalityParams,
    pub space_dim: usize,
    pub pairs: Vec<PairOutcome>,
    pub all_local: bool,
    pub note: String,
}

/// Runs [`min_locality_order`] for every ordered pair of generators.
pub fn locality_sweep(p: &QuadOperad, params: LocalityParams, exec: Exec) -> Result<LocalityReport> {
    let inst = build_instance(p, params.window)?;
    let d = p.gens().dim();
    let pairs: Vec<(usize, usize)> = (0..d).flat_map(|i| (0..d).map(move |j| (i, j))).collect();
    // one grade serves every pair
    if let Some(&(i, j)) = pairs.first() {
        let spec = ResidueSpec { inner: i, k: params.k, outer: j, order: params.n_max, n: params.n, m: params.m };
        check_ops(&inst, &spec)?;
        inst.ideal_grade(spec.grade());
    }
    let outcomes = exec.map(&pairs, |&(i, j)| {
        min_locality_order(&inst, i, params.k, j, params.n_max, params.n, params.m).map(|min_order| PairOutcome {
            inner: p.gens().name(i).to_string(),
            outer: p.gens().name(j).to_string(),
            min_order,
        })
    });
    let pairs = outcomes.into_iter().collect::<Result<Vec<_>>>()?;
    Ok(LocalityReport {
        operad: p.name().to_string(),
        params,
        space_dim: inst.space_dim(),
        all_local: pairs.iter().all(|o| o.min_order.is_some()),
        pairs,
        note: WINDOW_NOTE.to_string(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::catalog;
    use crate::free3::GeneratorSpace;
    use crate::linalg::{q, MatrixQ, SubspaceQ};
    use crate::operad::Provenance;

    fn trivial() -> QuadOperad {
        let g = GeneratorSpace::new(vec!["m".into()], MatrixQ::from_i64(&[&[1]])).unwrap();
        QuadOperad::new("0", g, SubspaceQ::full(3), Provenance::Textual).unwrap()
    }

    #[test]
    fn space_dimension() {
        let inst = build_instance(&catalog("Lie").unwrap(), 2).unwrap();
        assert_eq!(inst.space_dim(), 250);
        assert!(matches!(build_instance(&catalog("Lie").unwrap(), 0), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn trivial_operad() {
        let inst = build_instance(&trivial(), 4).unwrap();
        assert_eq!(inst.space_dim(), 0);
        assert_eq!(inst.ideal_dim(), 0);
        assert_eq!(min_locality_order(&inst, 0, 0, 0, 4, 0, 0).unwrap(), Some(0));
    }

    #[test]
    fn generators_are_nonzero_differences() {
        let inst = build_instance(&catalog("Nov").unwrap(), 2).unwrap();
        for v in inst.ideal_generators(1) {
            assert!(v.iter().any(|x| !x.is_zero()));
            assert!(v.iter().fold(Rational::zero(), |a, x| a + x).is_zero());
        }
    }

    #[test]
    fn residue_expansions() {
        let lie = catalog("Lie").unwrap();
        let inst = build_instance(&lie, 4).unwrap();
        let single = residue_vector(&inst, &ResidueSpec { inner: 0, k: 0, outer: 0, order: 0, n: 0, m: 0 }).unwrap();
        assert_eq!(single.iter().filter(|x| !x.is_zero()).count(), inst.columns[0].len());

        let two = residue_vector(&inst, &ResidueSpec { inner: 0, k: 0, outer: 0, order: 1, n: 1, m: -1 }).unwrap();
        for (r, x) in &inst.columns[0] {
            assert_eq!(two[inst.coordinate(*r, [0, 1, -1])], *x);
            assert_eq!(two[inst.coordinate(*r, [0, 0, 0])], -x);
        }

        let three = residue_vector(&inst, &ResidueSpec { inner: 0, k: 0, outer: 0, order: 2, n: 0, m: 0 }).unwrap();
        let (r, x) = &inst.columns[0][0];
        let coeffs: Vec<Rational> =
            [[0, 0, 0], [0, -1, 1], [0, -2, 2]].iter().map(|&i| &three[inst.coordinate(*r, i)] / x).collect();
        assert_eq!(coeffs, vec![q(1), q(-2), q(1)]);
    }

    #[test]
    fn window_violation() {
        let inst = build_instance(&catalog("Lie").unwrap(), 2).unwrap();
        let err = min_locality_order(&inst, 0, 0, 0, 4, 0, 0).unwrap_err();
        assert!(matches!(err, Error::WindowTooSmall { required: 4, have: 2 }));
        let err = residue_vector(&inst, &ResidueSpec { inner: 0, k: 3, outer: 0, order: 0, n: 0, m: 0 }).unwrap_err();
        assert!(matches!(err, Error::WindowTooSmall { required: 3, .. }));
    }

    #[test]
    fn lie_is_local_within_two() {
        let inst = build_instance(&catalog("Lie").unwrap(), 4).unwrap();
        let n = min_locality_order(&inst, 0, 0, 0, 4, 0, 0).unwrap();
        assert!(matches!(n, Some(x) if x <= 2), "{n:?}");
    }

    #[test]
    fn translation_and_monotonicity() {
        let inst = build_instance(&catalog("Com").unwrap(), 5).unwrap();
        let base = min_locality_order(&inst, 0, 0, 0, 3, 0, 0).unwrap();
        assert_eq!(min_locality_order(&inst, 0, 0, 0, 3, 1, -1).unwrap(), base);
        let found = base.unwrap();
        let ideal = inst.ideal_grade(0);
        for order in found..=3 {
            let row = residue_row(&inst, &ResidueSpec { inner: 0, k: 0, outer: 0, order, n: 0, m: 0 }).unwrap();
            assert!(ideal.contains(&row));
        }
    }
}
