//! Exact rational linear algebra.
//!
//! Every subspace is carried in canonical reduced row-echelon form so that
//! comparing two subspaces is plain matrix equality. Elimination runs on
//! primitive integer rows (fraction-free), which keeps entry growth in check
//! and lets the same engine serve both the small dense matrices of the operad
//! machinery and the large sparse systems of the locality laboratory.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact rational number. Always stored in lowest terms with a positive
/// denominator.
pub type Rational = BigRational;

pub fn q(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn q_frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parse `int` or `int/posint`.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let text = text.trim();
    let bad = || Error::Parse(format!("malformed rational `{text}`"));
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if !den.is_positive() {
        return Err(bad());
    }
    Ok(Rational::new(num, den))
}

/// Dense row-major rational matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MatrixQ {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl MatrixQ {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        MatrixQ { rows, cols, data: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    pub fn scalar(n: usize, c: Rational) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = c.clone();
        }
        m
    }

    pub fn from_rows(cols: usize, rows: Vec<Vec<Rational>>) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged matrix rows");
            data.extend(r);
        }
        MatrixQ { rows: n, cols, data }
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        Self::from_rows(cols, rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn column(&self, c: usize) -> Vec<Rational> {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t[(c, r)] = self[(r, c)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &MatrixQ) -> MatrixQ {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(r, k)];
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = &other[(k, c)];
                    if !b.is_zero() {
                        out[(r, c)] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect()
    }

    pub fn scale(&self, c: &Rational) -> MatrixQ {
        MatrixQ { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * c).collect() }
    }

    pub fn add(&self, other: &MatrixQ) -> MatrixQ {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        MatrixQ { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect() }
    }

    pub fn kronecker(&self, other: &MatrixQ) -> MatrixQ {
        let mut out = Self::zeros(self.rows * other.rows, self.cols * other.cols);
        for r1 in 0..self.rows {
            for c1 in 0..self.cols {
                let a = &self[(r1, c1)];
                if a.is_zero() {
                    continue;
                }
                for r2 in 0..other.rows {
                    for c2 in 0..other.cols {
                        out[(r1 * other.rows + r2, c1 * other.cols + c2)] = a * &other[(r2, c2)];
                    }
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn rank(&self) -> usize {
        let mut ech = Echelon::new(self.cols);
        for r in 0..self.rows {
            ech.insert_rational(self.row(r));
        }
        ech.rank()
    }

    /// Inverse of a square matrix, or `None` when singular.
    pub fn inverse(&self) -> Option<MatrixQ> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let aug: Vec<Vec<Rational>> = (0..n)
            .map(|r| {
                let mut row = self.row(r).to_vec();
                row.extend((0..n).map(|c| if c == r { Rational::one() } else { Rational::zero() }));
                row
            })
            .collect();
        let red = rref_canonical(&MatrixQ::from_rows(2 * n, aug));
        if red.rows() < n || (0..n).any(|i| !red[(i, i)].is_one()) {
            return None;
        }
        let rows = (0..n).map(|r| red.row(r)[n..].to_vec()).collect();
        Some(MatrixQ::from_rows(n, rows))
    }
}

impl std::ops::Index<(usize, usize)> for MatrixQ {
    type Output = Rational;
    fn index(&self, (r, c): (usize, usize)) -> &Rational {
        &self.data[r * self.cols + c]
    }
}

impl std::ops::IndexMut<(usize, usize)> for MatrixQ {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Rational {
        &mut self.data[r * self.cols + c]
    }
}

impl fmt::Debug for MatrixQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "MatrixQ {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let cells: Vec<String> = self.row(r).iter().map(ToString::to_string).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Sparse primitive integer row: sorted by column, content 1, leading entry
/// positive.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SparseRow {
    entries: Vec<(usize, BigInt)>,
}

impl SparseRow {
    pub fn from_rational(v: &[Rational]) -> Self {
        let den = v.iter().filter(|x| !x.is_zero()).fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let entries = v
            .iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(|(i, x)| (i, x.numer() * (&den / x.denom())))
            .collect();
        let mut row = SparseRow { entries };
        row.normalize();
        row
    }

    /// Build from (column, value) pairs; duplicate columns are summed.
    pub fn from_pairs(mut pairs: Vec<(usize, BigInt)>) -> Self {
        pairs.sort_by_key(|p| p.0);
        let mut entries: Vec<(usize, BigInt)> = Vec::with_capacity(pairs.len());
        for (c, v) in pairs {
            match entries.last_mut() {
                Some((lc, lv)) if *lc == c => *lv += v,
                _ => entries.push((c, v)),
            }
        }
        entries.retain(|(_, v)| !v.is_zero());
        let mut row = SparseRow { entries };
        row.normalize();
        row
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn lead(&self) -> Option<usize> {
        self.entries.first().map(|e| e.0)
    }

    pub fn entries(&self) -> &[(usize, BigInt)] {
        &self.entries
    }

    pub fn get(&self, col: usize) -> Option<&BigInt> {
        self.entries.binary_search_by_key(&col, |e| e.0).ok().map(|i| &self.entries[i].1)
    }

    fn normalize(&mut self) {
        let g = self.entries.iter().fold(BigInt::zero(), |g, (_, v)| g.gcd(v));
        if g.is_zero() {
            return;
        }
        let flip = self.entries[0].1.is_negative();
        let g = if flip { -g } else { g };
        if !g.is_one() {
            for (_, v) in &mut self.entries {
                *v = &*v / &g;
            }
        }
    }

    /// `self <- a*self - b*other`, then renormalise.
    fn combine(&mut self, a: &BigInt, b: &BigInt, other: &SparseRow) {
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut i, mut j) = (0, 0);
        let (x, y) = (&self.entries, &other.entries);
        while i < x.len() || j < y.len() {
            if j == y.len() || (i < x.len() && x[i].0 < y[j].0) {
                out.push((x[i].0, a * &x[i].1));
                i += 1;
            } else if i == x.len() || y[j].0 < x[i].0 {
                out.push((y[j].0, -(b * &y[j].1)));
                j += 1;
            } else {
                let v = a * &x[i].1 - b * &y[j].1;
                if !v.is_zero() {
                    out.push((x[i].0, v));
                }
                i += 1;
                j += 1;
            }
        }
        self.entries = out;
        self.normalize();
    }

    /// Eliminate column `col` of `self` using `pivot`, whose leading column is `col`.
    fn eliminate_with(&mut self, pivot: &SparseRow, col: usize) {
        let Some(v) = self.get(col).cloned() else { return };
        let p = &pivot.entries[0].1;
        let g = p.gcd(&v);
        self.combine(&(p / &g), &(v / &g), pivot);
    }

    pub fn to_rational(&self, ambient: usize) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); ambient];
        for (c, x) in &self.entries {
            v[*c] = Rational::from_integer(x.clone());
        }
        v
    }
}

/// Incremental fraction-free echelon form: rows with pairwise distinct
/// leading columns. Supports rank, membership and independent insertion.
#[derive(Clone, Debug)]
pub struct Echelon {
    ambient: usize,
    rows: Vec<SparseRow>,
    pivot_row: Vec<Option<usize>>,
}

impl Echelon {
    pub fn new(ambient: usize) -> Self {
        Echelon { ambient, rows: Vec::new(), pivot_row: vec![None; ambient] }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[SparseRow] {
        &self.rows
    }

    pub fn reduce(&self, mut v: SparseRow) -> SparseRow {
        while let Some(lead) = v.lead() {
            match self.pivot_row[lead] {
                Some(r) => v.eliminate_with(&self.rows[r], lead),
                None => break,
            }
        }
        v
    }

    /// Insert `v`; returns true when it enlarged the span.
    pub fn insert(&mut self, v: SparseRow) -> bool {
        let v = self.reduce(v);
        match v.lead() {
            None => false,
            Some(lead) => {
                self.pivot_row[lead] = Some(self.rows.len());
                self.rows.push(v);
                true
            }
        }
    }

    pub fn insert_rational(&mut self, v: &[Rational]) -> bool {
        debug_assert_eq!(v.len(), self.ambient);
        self.insert(SparseRow::from_rational(v))
    }

    pub fn contains(&self, v: &SparseRow) -> bool {
        self.reduce(v.clone()).is_zero()
    }

    pub fn contains_rational(&self, v: &[Rational]) -> bool {
        self.contains(&SparseRow::from_rational(v))
    }

    /// Canonical reduced row-echelon basis of the span.
    pub fn to_rref(&self) -> MatrixQ {
        let mut order: Vec<usize> = (0..self.rows.len()).collect();
        order.sort_by_key(|&r| self.rows[r].lead());
        let mut rows: Vec<SparseRow> = order.into_iter().map(|r| self.rows[r].clone()).collect();
        // back substitution, last pivot first
        for i in (0..rows.len()).rev() {
            let (head, tail) = rows.split_at_mut(i);
            let piv = &tail[0];
            let col = piv.lead().expect("echelon rows are nonzero");
            for row in head.iter_mut() {
                row.eliminate_with(piv, col);
            }
        }
        let out = rows
            .iter()
            .map(|row| {
                let lead = &row.entries[0].1;
                let mut v = vec![Rational::zero(); self.ambient];
                for (c, x) in &row.entries {
                    v[*c] = Rational::new(x.clone(), lead.clone());
                }
                v
            })
            .collect();
        MatrixQ::from_rows(self.ambient, out)
    }
}

/// Unique reduced row-echelon form with zero rows removed.
pub fn rref_canonical(m: &MatrixQ) -> MatrixQ {
    let mut ech = Echelon::new(m.cols());
    for r in 0..m.rows() {
        ech.insert_rational(m.row(r));
    }
    ech.to_rref()
}

/// A subspace of Q^n held as its canonical RREF basis.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SubspaceQ {
    ambient: usize,
    basis: MatrixQ,
}

impl fmt::Debug for SubspaceQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SubspaceQ(dim {} in Q^{}) {:?}", self.dim(), self.ambient, self.basis)
    }
}

impl SubspaceQ {
    pub fn zero(ambient: usize) -> Self {
        SubspaceQ { ambient, basis: MatrixQ::zeros(0, ambient) }
    }

    pub fn full(ambient: usize) -> Self {
        SubspaceQ { ambient, basis: MatrixQ::identity(ambient) }
    }

    pub fn span<I, V>(ambient: usize, vectors: I) -> Self
    where
        I: IntoIterator<Item = V>,
        V: AsRef<[Rational]>,
    {
        let mut ech = Echelon::new(ambient);
        for v in vectors {
            let v = v.as_ref();
            assert_eq!(v.len(), ambient, "vector length does not match ambient dimension");
            ech.insert_rational(v);
        }
        SubspaceQ { ambient, basis: ech.to_rref() }
    }

    pub fn from_echelon(ech: &Echelon) -> Self {
        SubspaceQ { ambient: ech.ambient(), basis: ech.to_rref() }
    }

    /// Span of the rows of `m`.
    pub fn row_space(m: &MatrixQ) -> Self {
        SubspaceQ { ambient: m.cols(), basis: rref_canonical(m) }
    }

    /// Span of the given standard basis vectors.
    pub fn coordinate(ambient: usize, coords: impl IntoIterator<Item = usize>) -> Self {
        let vecs: Vec<Vec<Rational>> = coords
            .into_iter()
            .map(|c| {
                let mut v = vec![Rational::zero(); ambient];
                v[c] = Rational::one();
                v
            })
            .collect();
        Self::span(ambient, vecs)
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn basis(&self) -> &MatrixQ {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<Vec<Rational>> {
        self.basis.row_vecs()
    }

    /// Pivot column of each basis row.
    pub fn pivots(&self) -> Vec<usize> {
        (0..self.dim())
            .map(|r| self.basis.row(r).iter().position(|x| !x.is_zero()).expect("RREF row is nonzero"))
            .collect()
    }

    pub fn echelon(&self) -> Echelon {
        let mut ech = Echelon::new(self.ambient);
        for r in 0..self.dim() {
            ech.insert_rational(self.basis.row(r));
        }
        ech
    }

    fn check(&self, other: &SubspaceQ) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::DimensionMismatch { expected: self.ambient, found: other.ambient });
        }
        Ok(())
    }

    pub fn sum(&self, other: &SubspaceQ) -> Result<SubspaceQ> {
        self.check(other)?;
        Ok(Self::span(self.ambient, self.basis_vectors().into_iter().chain(other.basis_vectors())))
    }

    /// Intersection via the kernel of the stacked-basis coefficient matrix:
    /// (alpha, beta) with alpha*U = beta*W.
    pub fn intersect(&self, other: &SubspaceQ) -> Result<SubspaceQ> {
        self.check(other)?;
        let (du, dw) = (self.dim(), other.dim());
        if du == 0 || dw == 0 {
            return Ok(SubspaceQ::zero(self.ambient));
        }
        let mut stacked = self.basis_vectors();
        stacked.extend(other.basis_vectors().into_iter().map(|v| v.into_iter().map(|x| -x).collect()));
        let coeffs = MatrixQ::from_rows(self.ambient, stacked).transpose();
        let ker = kernel_basis(&coeffs);
        let vecs: Vec<Vec<Rational>> = ker
            .basis_vectors()
            .into_iter()
            .map(|c| {
                let mut v = vec![Rational::zero(); self.ambient];
                for (a, row) in c[..du].iter().zip(self.basis_vectors()) {
                    if a.is_zero() {
                        continue;
                    }
                    for (vi, ri) in v.iter_mut().zip(row) {
                        *vi += a * ri;
                    }
                }
                v
            })
            .collect();
        Ok(Self::span(self.ambient, vecs))
    }

    pub fn contains(&self, v: &[Rational]) -> Result<bool> {
        if v.len() != self.ambient {
            return Err(Error::DimensionMismatch { expected: self.ambient, found: v.len() });
        }
        let mut ech = self.echelon();
        Ok(!ech.insert_rational(v))
    }

    pub fn is_subspace_of(&self, other: &SubspaceQ) -> Result<bool> {
        self.check(other)?;
        let ech = other.echelon();
        Ok(self.basis_vectors().iter().all(|v| ech.contains_rational(v)))
    }

    /// Image under a linear map given as a matrix acting on column vectors.
    pub fn image(&self, map: &MatrixQ) -> SubspaceQ {
        assert_eq!(map.cols(), self.ambient);
        Self::span(map.rows(), self.basis_vectors().iter().map(|v| map.mul_vec(v)))
    }
}

/// Which set operation [`subspace_ops`] performs.
pub enum SubspaceOp<'a> {
    Sum,
    Intersect,
    Contains(&'a [Rational]),
}

pub enum SubspaceResult {
    Subspace(SubspaceQ),
    Bool(bool),
}

pub fn subspace_ops(u: &SubspaceQ, w: &SubspaceQ, op: SubspaceOp<'_>) -> Result<SubspaceResult> {
    match op {
        SubspaceOp::Sum => u.sum(w).map(SubspaceResult::Subspace),
        SubspaceOp::Intersect => u.intersect(w).map(SubspaceResult::Subspace),
        SubspaceOp::Contains(v) => {
            u.check(w)?;
            u.contains(v).map(SubspaceResult::Bool)
        }
    }
}

/// Null space {v : M v = 0}.
pub fn kernel_basis(m: &MatrixQ) -> SubspaceQ {
    let n = m.cols();
    let red = rref_canonical(m);
    let sub = SubspaceQ { ambient: n, basis: red };
    let pivots = sub.pivots();
    let mut is_pivot = vec![false; n];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let vecs: Vec<Vec<Rational>> = (0..n)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = vec![Rational::zero(); n];
            v[free] = Rational::one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -sub.basis[(r, free)].clone();
            }
            v
        })
        .collect();
    SubspaceQ::span(n, vecs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mq(rows: &[&[i64]]) -> MatrixQ {
        MatrixQ::from_i64(rows)
    }

    #[test]
    fn rref_examples() {
        assert_eq!(rref_canonical(&mq(&[&[2, 4], &[1, 2]])), mq(&[&[1, 2]]));
        assert_eq!(rref_canonical(&mq(&[&[0, 0]])).rows(), 0);
        assert_eq!(rref_canonical(&mq(&[&[1, 2], &[3, 4]])), MatrixQ::identity(2));
    }

    #[test]
    fn rref_with_fractions() {
        let m = MatrixQ::from_rows(3, vec![vec![q(3), q(1), q(0)], vec![q(0), q(2), q(5)]]);
        let r = rref_canonical(&m);
        assert_eq!(r.row(0), &[q(1), q(0), q_frac(-5, 6)]);
        assert_eq!(r.row(1), &[q(0), q(1), q_frac(5, 2)]);
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(kernel_basis(&MatrixQ::identity(3)).dim(), 0);
        let k = kernel_basis(&mq(&[&[1, 1]]));
        assert_eq!(k.basis_vectors(), vec![vec![q(1), q(-1)]]);
        let k = kernel_basis(&mq(&[&[1, 2, 3], &[4, 5, 6]]));
        assert_eq!(k.dim(), 1);
        assert!(k.contains(&[q(1), q(-2), q(1)]).unwrap());
    }

    #[test]
    fn subspace_examples() {
        let e1 = SubspaceQ::coordinate(2, [0]);
        let e2 = SubspaceQ::coordinate(2, [1]);
        assert_eq!(e1.intersect(&e2).unwrap().dim(), 0);
        assert_eq!(e1.sum(&e2).unwrap(), SubspaceQ::full(2));
        assert_eq!(e1.intersect(&e1).unwrap(), e1);

        let u = SubspaceQ::span(3, [vec![q(1), q(1), q(0)], vec![q(0), q(1), q(1)]]);
        let w = SubspaceQ::span(3, [vec![q(1), q(0), q(-1)]]);
        assert_eq!(u.intersect(&w).unwrap(), w);
    }

    #[test]
    fn dimension_mismatch_is_reported() {
        let a = SubspaceQ::zero(2);
        let b = SubspaceQ::zero(3);
        assert!(matches!(a.sum(&b), Err(Error::DimensionMismatch { .. })));
        assert!(matches!(
            subspace_ops(&a, &b, SubspaceOp::Intersect),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn inverse_roundtrip() {
        let m = mq(&[&[2, 1], &[7, 4]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), MatrixQ::identity(2));
        assert!(mq(&[&[1, 2], &[2, 4]]).inverse().is_none());
    }

    #[test]
    fn rational_parse() {
        assert_eq!(parse_rational("-6/4").unwrap(), q_frac(-3, 2));
        assert_eq!(parse_rational(" 7 ").unwrap(), q(7));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("1/-2").is_err());
        assert!(parse_rational("x").is_err());
    }
}
