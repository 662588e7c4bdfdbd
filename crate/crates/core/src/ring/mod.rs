//! A small graded-commutative ring engine for even-degree cohomology up to
//! degree 6, used as an independent check on every closed-form Chern number.
//!
//! Classes live in degrees `0, 2, …, 2·top`. Each degree has an ordered
//! basis; multiplication is stored as structure constants and validated for
//! commutativity and associativity on all basis triples when the ring is
//! built. The top degree has rank one and its basis element is the
//! fundamental class, so integration reads off a single coefficient.

mod builders;

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use thiserror::Error;

use crate::scalar::{div_exact, int, Scalar};

pub use builders::{
    chern_numbers_via_ring, projective_space_ring, surface_ring, RingBuilder,
};

/// Highest real degree the engine models.
pub const MAX_DEGREE: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RingError {
    #[error("degree {degree} is odd or exceeds {MAX_DEGREE}")]
    BadDegree { degree: usize },
    #[error("missing volume class: top degree {degree} must have exactly one basis element, found {rank}")]
    MissingVolume { degree: usize, rank: usize },
    #[error("degree 0 must have exactly one basis element, found {rank}")]
    UnitRank { rank: usize },
    #[error("unknown basis element {name:?}")]
    UnknownBasis { name: String },
    #[error("duplicate basis element {name:?}")]
    DuplicateBasis { name: String },
    #[error("product {lhs}·{rhs} has degree {expected} but a term {term:?} of degree {found} was given")]
    ProductDegree { lhs: String, rhs: String, term: String, expected: usize, found: usize },
    #[error("product {lhs}·{rhs} is specified more than once")]
    DuplicateRule { lhs: String, rhs: String },
    #[error("product table for degrees ({left}, {right}) has the wrong shape")]
    TableShape { left: usize, right: usize },
    #[error("multiplication is not commutative on {lhs}, {rhs}")]
    NotCommutative { lhs: String, rhs: String },
    #[error("multiplication is not associative on ({a}·{b})·{c}")]
    NotAssociative { a: String, b: String, c: String },
    #[error("unit does not act as the identity on {name:?}")]
    UnitNotIdentity { name: String },
    #[error("expected a class of degree {expected}, got degree {found}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("coefficient vector has length {found}, basis has {expected}")]
    RankMismatch { expected: usize, found: usize },
    #[error("classes belong to different rings")]
    ForeignRing,
    #[error("class is not divisible by {divisor}")]
    NotDivisible { divisor: String },
}

type Result<T, E = RingError> = std::result::Result<T, E>;

/// Human-writable description of a ring: a basis per degree and products of
/// basis elements by name.
///
/// Products with the unit are implied. Products that are not listed are zero.
/// Listing only `a·b` implies `b·a`; listing both requires them to agree.
#[derive(Debug, Clone)]
pub struct RingPresentation<T> {
    /// `basis[d/2]` lists the basis of degree `d`.
    pub basis: Vec<Vec<String>>,
    pub products: Vec<(String, String, Vec<(T, String)>)>,
}

impl<T: Scalar> RingPresentation<T> {
    pub fn new(basis: &[&[&str]]) -> Self {
        Self {
            basis: basis
                .iter()
                .map(|d| d.iter().map(|s| s.to_string()).collect())
                .collect(),
            products: Vec::new(),
        }
    }

    pub fn product(mut self, lhs: &str, rhs: &str, terms: &[(i64, &str)]) -> Self {
        self.products.push((
            lhs.to_string(),
            rhs.to_string(),
            terms.iter().map(|(c, n)| (int(*c), n.to_string())).collect(),
        ));
        self
    }
}

/// Structure constants: `table[i][j][a][b]` is the coefficient vector of
/// `e_{i,a} · e_{j,b}` over the basis of half-degree `i + j`.
type Table<T> = Vec<Vec<Vec<Vec<Vec<T>>>>>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedRing<T> {
    basis: Vec<Vec<String>>,
    table: Table<T>,
}

/// Validates a presentation into a ring.
pub fn mk_graded_ring<T: Scalar>(p: &RingPresentation<T>) -> Result<GradedRing<T>> {
    let top = check_basis(&p.basis)?;
    let mut index = HashMap::new();
    for (i, names) in p.basis.iter().enumerate() {
        for (a, name) in names.iter().enumerate() {
            if index.insert(name.as_str(), (i, a)).is_some() {
                return Err(RingError::DuplicateBasis { name: name.clone() });
            }
        }
    }
    let lookup = |name: &str| {
        index
            .get(name)
            .copied()
            .ok_or_else(|| RingError::UnknownBasis { name: name.to_string() })
    };

    let mut table = zero_table::<T>(&p.basis);
    for i in 0..=top {
        for a in 0..p.basis[i].len() {
            table[0][i][0][a] = unit_vector(p.basis[i].len(), a);
            table[i][0][a][0] = unit_vector(p.basis[i].len(), a);
        }
    }

    let mut given = HashMap::new();
    for (lhs, rhs, terms) in &p.products {
        let (i, a) = lookup(lhs)?;
        let (j, b) = lookup(rhs)?;
        if given.insert((i, a, j, b), ()).is_some() {
            return Err(RingError::DuplicateRule { lhs: lhs.clone(), rhs: rhs.clone() });
        }
        let mut coeffs = vec![T::zero(); p.basis.get(i + j).map_or(0, Vec::len)];
        for (c, name) in terms {
            let (k, e) = lookup(name)?;
            if k != i + j {
                return Err(RingError::ProductDegree {
                    lhs: lhs.clone(),
                    rhs: rhs.clone(),
                    term: name.clone(),
                    expected: 2 * (i + j),
                    found: 2 * k,
                });
            }
            coeffs[e] = coeffs[e].clone() + c.clone();
        }
        if i + j > top {
            continue;
        }
        table[i][j][a][b] = coeffs.clone();
        if !given.contains_key(&(j, b, i, a)) {
            table[j][i][b][a] = coeffs;
        }
    }
    GradedRing::from_table(p.basis.clone(), table)
}

fn check_basis(basis: &[Vec<String>]) -> Result<usize> {
    if basis.is_empty() {
        return Err(RingError::UnitRank { rank: 0 });
    }
    let top = basis.len() - 1;
    if 2 * top > MAX_DEGREE {
        return Err(RingError::BadDegree { degree: 2 * top });
    }
    if basis[0].len() != 1 {
        return Err(RingError::UnitRank { rank: basis[0].len() });
    }
    if basis[top].len() != 1 {
        return Err(RingError::MissingVolume { degree: 2 * top, rank: basis[top].len() });
    }
    Ok(top)
}

fn zero_table<T: Scalar>(basis: &[Vec<String>]) -> Table<T> {
    let top = basis.len() - 1;
    (0..=top)
        .map(|i| {
            (0..=top)
                .map(|j| {
                    let rank = if i + j <= top { basis[i + j].len() } else { 0 };
                    vec![vec![vec![T::zero(); rank]; basis[j].len()]; basis[i].len()]
                })
                .collect()
        })
        .collect()
}

fn unit_vector<T: Scalar>(len: usize, at: usize) -> Vec<T> {
    let mut v = vec![T::zero(); len];
    v[at] = T::one();
    v
}

impl<T: Scalar> GradedRing<T> {
    /// Builds a ring from full structure constants and validates it.
    pub fn from_table(basis: Vec<Vec<String>>, table: Table<T>) -> Result<Self> {
        let top = check_basis(&basis)?;
        let ring = GradedRing { basis, table };
        ring.check_shape(top)?;
        ring.check_unit()?;
        ring.check_commutative()?;
        ring.check_associative()?;
        Ok(ring)
    }

    fn check_shape(&self, top: usize) -> Result<()> {
        if self.table.len() != top + 1 {
            return Err(RingError::TableShape { left: 0, right: 0 });
        }
        for i in 0..=top {
            if self.table[i].len() != top + 1 {
                return Err(RingError::TableShape { left: 2 * i, right: 0 });
            }
            for j in 0..=top {
                let rank = self.rank_half(i + j);
                let block = &self.table[i][j];
                let ok = block.len() == self.basis[i].len()
                    && block.iter().all(|row| {
                        row.len() == self.basis[j].len() && row.iter().all(|v| v.len() == rank)
                    });
                if !ok {
                    return Err(RingError::TableShape { left: 2 * i, right: 2 * j });
                }
            }
        }
        Ok(())
    }

    fn check_unit(&self) -> Result<()> {
        for i in 0..=self.top_half() {
            for a in 0..self.basis[i].len() {
                let e = unit_vector::<T>(self.basis[i].len(), a);
                if self.table[0][i][0][a] != e || self.table[i][0][a][0] != e {
                    return Err(RingError::UnitNotIdentity { name: self.basis[i][a].clone() });
                }
            }
        }
        Ok(())
    }

    fn check_commutative(&self) -> Result<()> {
        for (i, j, a, b) in self.basis_pairs() {
            if self.table[i][j][a][b] != self.table[j][i][b][a] {
                return Err(RingError::NotCommutative {
                    lhs: self.basis[i][a].clone(),
                    rhs: self.basis[j][b].clone(),
                });
            }
        }
        Ok(())
    }

    fn check_associative(&self) -> Result<()> {
        for (i, j, a, b) in self.basis_pairs() {
            let ab = self.basis_class_half(i, a).mul_unchecked(&self.basis_class_half(j, b));
            for k in 0..=self.top_half() {
                for c in 0..self.basis[k].len() {
                    let ec = self.basis_class_half(k, c);
                    let left = ab.mul_unchecked(&ec);
                    let bc = self.basis_class_half(j, b).mul_unchecked(&ec);
                    let right = self.basis_class_half(i, a).mul_unchecked(&bc);
                    if left.coeffs != right.coeffs {
                        return Err(RingError::NotAssociative {
                            a: self.basis[i][a].clone(),
                            b: self.basis[j][b].clone(),
                            c: self.basis[k][c].clone(),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    fn basis_pairs(&self) -> Vec<(usize, usize, usize, usize)> {
        let top = self.top_half();
        let mut out = Vec::new();
        for i in 0..=top {
            for j in 0..=top {
                for a in 0..self.basis[i].len() {
                    for b in 0..self.basis[j].len() {
                        out.push((i, j, a, b));
                    }
                }
            }
        }
        out
    }

    fn top_half(&self) -> usize {
        self.basis.len() - 1
    }

    fn rank_half(&self, half: usize) -> usize {
        self.basis.get(half).map_or(0, Vec::len)
    }

    /// Real dimension of the underlying manifold.
    pub fn dimension(&self) -> usize {
        2 * self.top_half()
    }

    /// Rank of the degree-`degree` part; zero for degrees above the top.
    pub fn rank(&self, degree: usize) -> usize {
        if degree % 2 == 1 {
            0
        } else {
            self.rank_half(degree / 2)
        }
    }

    pub fn basis_names(&self, degree: usize) -> &[String] {
        self.basis.get(degree / 2).map_or(&[], Vec::as_slice)
    }

    /// Structure constants of `e_a · e_b` for basis elements in degrees `left`, `right`.
    pub fn structure_constants(&self, left: usize, a: usize, right: usize, b: usize) -> &[T] {
        &self.table[left / 2][right / 2][a][b]
    }

    pub fn class(&self, degree: usize, coeffs: Vec<T>) -> Result<RingClass<'_, T>> {
        if degree % 2 == 1 {
            return Err(RingError::BadDegree { degree });
        }
        let expected = self.rank(degree);
        if coeffs.len() != expected {
            return Err(RingError::RankMismatch { expected, found: coeffs.len() });
        }
        Ok(RingClass { ring: self, degree, coeffs })
    }

    pub fn zero(&self, degree: usize) -> RingClass<'_, T> {
        RingClass { ring: self, degree, coeffs: vec![T::zero(); self.rank(degree)] }
    }

    pub fn unit(&self) -> RingClass<'_, T> {
        self.basis_class_half(0, 0)
    }

    /// The fundamental class, `∫ volume = 1`.
    pub fn volume(&self) -> RingClass<'_, T> {
        self.basis_class_half(self.top_half(), 0)
    }

    pub fn basis_class(&self, name: &str) -> Result<RingClass<'_, T>> {
        for (i, names) in self.basis.iter().enumerate() {
            if let Some(a) = names.iter().position(|n| n == name) {
                return Ok(self.basis_class_half(i, a));
            }
        }
        Err(RingError::UnknownBasis { name: name.to_string() })
    }

    fn basis_class_half(&self, half: usize, a: usize) -> RingClass<'_, T> {
        RingClass {
            ring: self,
            degree: 2 * half,
            coeffs: unit_vector(self.basis[half].len(), a),
        }
    }
}

/// A homogeneous class in a [`GradedRing`].
#[derive(Clone, PartialEq, Eq)]
pub struct RingClass<'r, T> {
    ring: &'r GradedRing<T>,
    degree: usize,
    coeffs: Vec<T>,
}

impl<'r, T: Scalar> RingClass<'r, T> {
    pub fn ring(&self) -> &'r GradedRing<T> {
        self.ring
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    fn same_ring(&self, other: &Self) -> Result<()> {
        if std::ptr::eq(self.ring, other.ring) {
            Ok(())
        } else {
            Err(RingError::ForeignRing)
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.same_ring(other)?;
        if self.degree != other.degree {
            return Err(RingError::DegreeMismatch { expected: self.degree, found: other.degree });
        }
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a.clone() + b.clone())
            .collect();
        Ok(RingClass { ring: self.ring, degree: self.degree, coeffs })
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.same_ring(other)?;
        Ok(self.mul_unchecked(other))
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        let degree = self.degree + other.degree;
        let mut coeffs = vec![T::zero(); self.ring.rank(degree)];
        if !coeffs.is_empty() {
            let (i, j) = (self.degree / 2, other.degree / 2);
            for (a, x) in self.coeffs.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
                for (b, y) in other.coeffs.iter().enumerate().filter(|(_, y)| !y.is_zero()) {
                    let xy = x.clone() * y.clone();
                    for (c, s) in coeffs.iter_mut().zip(&self.ring.table[i][j][a][b]) {
                        *c = c.clone() + xy.clone() * s.clone();
                    }
                }
            }
        }
        RingClass { ring: self.ring, degree, coeffs }
    }

    pub fn scale(&self, k: &T) -> Self {
        RingClass {
            ring: self.ring,
            degree: self.degree,
            coeffs: self.coeffs.iter().map(|c| c.clone() * k.clone()).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(self.ring.unit(), |acc, _| acc.mul_unchecked(self))
    }

    /// Divides every coefficient by `k`, failing unless all divisions are exact.
    pub fn div_exact(&self, k: &T) -> Result<Self> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| div_exact(c, k))
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| RingError::NotDivisible { divisor: k.to_string() })?;
        Ok(RingClass { ring: self.ring, degree: self.degree, coeffs })
    }

    /// Evaluates a top-degree class on the fundamental class.
    pub fn integrate(&self) -> Result<T> {
        let top = self.ring.dimension();
        if self.degree != top {
            return Err(RingError::DegreeMismatch { expected: top, found: self.degree });
        }
        Ok(self.coeffs[0].clone())
    }
}

impl<T: Scalar> fmt::Debug for RingClass<'_, T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RingClass(deg {}: {})", self.degree, self)
    }
}

impl<T: Scalar> fmt::Display for RingClass<'_, T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = self.ring.basis_names(self.degree);
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .zip(names)
            .filter(|(c, _)| !c.is_zero())
            .map(|(c, n)| if c.is_one() { n.clone() } else { format!("{c}*{n}") })
            .collect();
        if terms.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&terms.join(" + "))
        }
    }
}

// Operators panic on foreign rings or mixed degrees; use the `try_` methods
// when either can happen.
impl<'r, T: Scalar> Add for &RingClass<'r, T> {
    type Output = RingClass<'r, T>;
    fn add(self, rhs: Self) -> RingClass<'r, T> {
        self.try_add(rhs).expect("ring class addition")
    }
}

impl<'r, T: Scalar> Sub for &RingClass<'r, T> {
    type Output = RingClass<'r, T>;
    fn sub(self, rhs: Self) -> RingClass<'r, T> {
        self.try_add(&-rhs).expect("ring class subtraction")
    }
}

impl<'r, T: Scalar> Mul for &RingClass<'r, T> {
    type Output = RingClass<'r, T>;
    fn mul(self, rhs: Self) -> RingClass<'r, T> {
        self.try_mul(rhs).expect("ring class product")
    }
}

impl<'r, T: Scalar> Neg for &RingClass<'r, T> {
    type Output = RingClass<'r, T>;
    fn neg(self) -> RingClass<'r, T> {
        self.scale(&-T::one())
    }
}

/// `integrate` as a free function.
pub fn integrate<T: Scalar>(c: &RingClass<'_, T>) -> Result<T> {
    c.integrate()
}

/// The ring of `P(E)` for a rank-2 bundle `E` over `base`.
///
/// Basis is `{π*b} ∪ {π*b · ξ}` with `ξ² = π*c₁(E)·ξ − π*c₂(E)`; the
/// fundamental class is `π*(base volume)·ξ`.
#[derive(Debug, Clone)]
pub struct ProjectiveBundle<T> {
    pub ring: GradedRing<T>,
    base_ranks: Vec<usize>,
}

impl<T: Scalar> ProjectiveBundle<T> {
    /// The tautological class `ξ`.
    pub fn xi(&self) -> RingClass<'_, T> {
        let mut coeffs = vec![T::zero(); self.ring.rank(2)];
        coeffs[self.base_ranks.get(1).copied().unwrap_or(0)] = T::one();
        RingClass { ring: &self.ring, degree: 2, coeffs }
    }

    /// Pulls a base class back along the bundle projection.
    pub fn pullback(&self, c: &RingClass<'_, T>) -> Result<RingClass<'_, T>> {
        let half = c.degree / 2;
        let base_rank = self.base_ranks.get(half).copied().unwrap_or(0);
        if c.coeffs.len() != base_rank {
            return Err(RingError::RankMismatch { expected: base_rank, found: c.coeffs.len() });
        }
        let mut coeffs = vec![T::zero(); self.ring.rank(c.degree)];
        for (slot, v) in coeffs.iter_mut().zip(&c.coeffs) {
            *slot = v.clone();
        }
        Ok(RingClass { ring: &self.ring, degree: c.degree, coeffs })
    }
}

pub fn projective_bundle_ring<T: Scalar>(
    base: &GradedRing<T>,
    c1e: &RingClass<'_, T>,
    c2e: &RingClass<'_, T>,
) -> std::result::Result<ProjectiveBundle<T>, RingError> {
    if !std::ptr::eq(c1e.ring, base) || !std::ptr::eq(c2e.ring, base) {
        return Err(RingError::ForeignRing);
    }
    if c1e.degree != 2 {
        return Err(RingError::DegreeMismatch { expected: 2, found: c1e.degree });
    }
    if c2e.degree != 4 {
        return Err(RingError::DegreeMismatch { expected: 4, found: c2e.degree });
    }
    let base_top = base.top_half();
    if 2 * (base_top + 1) > MAX_DEGREE {
        return Err(RingError::BadDegree { degree: 2 * (base_top + 1) });
    }
    let base_ranks: Vec<usize> = (0..=base_top).map(|i| base.rank_half(i)).collect();
    let br = |i: usize| base_ranks.get(i).copied().unwrap_or(0);

    // half-degree i: [base_i | base_{i-1}·ξ]
    let top = base_top + 1;
    let mut basis = Vec::with_capacity(top + 1);
    for i in 0..=top {
        let mut names: Vec<String> = base.basis.get(i).cloned().unwrap_or_default();
        if i >= 1 {
            for n in &base.basis[i - 1] {
                names.push(if i == 1 { "xi".to_string() } else { format!("{n}*xi") });
            }
        }
        basis.push(names);
    }

    let base_el = |i: usize, a: usize| base.basis_class_half(i, a);
    // (part, base half-degree, base index) for basis element a at half-degree i
    let split = |i: usize, a: usize| -> (bool, usize, usize) {
        if a < br(i) {
            (false, i, a)
        } else {
            (true, i - 1, a - br(i))
        }
    };
    let embed = |out: &mut Vec<T>, half: usize, with_xi: bool, c: &RingClass<'_, T>| {
        let offset = if with_xi { br(half) } else { 0 };
        for (k, v) in c.coeffs.iter().enumerate() {
            out[offset + k] = out[offset + k].clone() + v.clone();
        }
    };

    let mut table = zero_table::<T>(&basis);
    for i in 0..=top {
        for j in 0..=top {
            if i + j > top {
                continue;
            }
            for a in 0..basis[i].len() {
                for b in 0..basis[j].len() {
                    let (pa, ia, xa) = split(i, a);
                    let (pb, ib, xb) = split(j, b);
                    let prod = base_el(ia, xa).mul_unchecked(&base_el(ib, xb));
                    let out = &mut table[i][j][a][b];
                    match (pa, pb) {
                        (false, false) => embed(out, i + j, false, &prod),
                        (true, true) => {
                            // ξ² = c₁ξ − c₂
                            let lin = prod.mul_unchecked(c1e);
                            let cst = -&prod.mul_unchecked(c2e);
                            if lin.degree / 2 < base_ranks.len() {
                                embed(out, i + j, true, &lin);
                            }
                            if cst.degree / 2 <= base_top {
                                embed(out, i + j, false, &cst);
                            }
                        }
                        _ => embed(out, i + j, true, &prod),
                    }
                }
            }
        }
    }
    let ring = GradedRing::from_table(basis, table)?;
    Ok(ProjectiveBundle { ring, base_ranks })
}
