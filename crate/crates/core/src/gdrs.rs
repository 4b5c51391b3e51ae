//! Generalized doubly extended Reed-Solomon (GDRS) codes: construction of the
//! normalized parity-check matrix, MDS and coset weight distributions, and
//! exhaustive small-`q` oracles that serve as ground truth for the formulas.
//!
//! A `[q+1, q+2-d, d]_q` GDRS code is fixed here by its `(d-1) x (q+1)`
//! parity-check matrix: column `j` for `1 <= j <= q` is
//! `(1, m_j, m_j^2, ..., m_j^{d-2})` with `m_1, ..., m_{q-1}` the powers
//! `beta^0, ..., beta^{q-2}` of the field's primitive element and `m_q = 0`;
//! the final column is `(0, ..., 0, 1)`. All column multipliers are
//! normalized to one, which does not affect coset weight distributions.

use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, Zero};
use rayon::prelude::*;
use thiserror::Error;

use crate::combinatorics::{binomial, binomial_cost, binomial_int, exact_div, power};
use crate::fields::{FieldElement, FieldError, FieldSpec};
use crate::peculiarity::{sum_peculiarity_profile, PeculiarityError};
use crate::ring_orbits::RingContext;

#[derive(Debug, Error)]
pub enum GdrsError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Peculiarity(#[from] PeculiarityError),
    #[error("distance {d} too small; this operation needs d >= {min}")]
    DistanceTooSmall { d: u64, min: u64 },
    #[error("distance {d} too large for q = {q}")]
    DistanceTooLarge { d: u64, q: u64 },
    #[error("weight-2 cosets of this code do not all share one distribution (gcd(q-1, d-2) = {gcd})")]
    NotUniformCase { gcd: u64 },
    #[error("prefix has {got} entries, need d - 1 = {expected}")]
    BadPrefix { expected: usize, got: usize },
    #[error("distribution mass {actual} differs from q^k = {expected}; prefix is inconsistent")]
    MassMismatch { expected: BigUint, actual: BigInt },
    #[error("count at weight {w} is negative ({value}); prefix is inconsistent")]
    NegativeCount { w: u64, value: BigInt },
    #[error("enumeration needs {cost} visits, over budget {budget}")]
    BudgetExceeded { cost: u128, budget: u64 },
    #[error("invalid coset leader: {0}")]
    InvalidLeader(String),
    #[error("vector has {got} coordinates, code length is {expected}")]
    WrongLength { expected: usize, got: usize },
}

/// Exact weight distribution of one code or coset: `counts[w]` is the number
/// of vectors of Hamming weight `w`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightDistribution {
    counts: Vec<BigUint>,
}

impl WeightDistribution {
    pub fn new(counts: Vec<BigUint>) -> Self {
        WeightDistribution { counts }
    }

    /// Code length `n`; the distribution has `n + 1` entries.
    pub fn n(&self) -> usize {
        self.counts.len() - 1
    }

    pub fn count(&self, w: usize) -> &BigUint {
        &self.counts[w]
    }

    pub fn counts(&self) -> &[BigUint] {
        &self.counts
    }

    /// Total number of vectors; `q^k` for a coset of an `[n, k]` code.
    pub fn total(&self) -> BigUint {
        self.counts.iter().sum()
    }
}

/// A weight-2 coset leader: nonzero entries `gamma1, gamma2` in positions
/// `j1 < j2` (1-based). For `d >= 5` such a vector is the unique minimum
/// weight vector of its coset, so it identifies the coset.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CosetLeader2 {
    j1: usize,
    j2: usize,
    gamma1: FieldElement,
    gamma2: FieldElement,
}

impl CosetLeader2 {
    /// Build a leader, swapping the positions into canonical `j1 < j2` order.
    pub fn new(
        j1: usize,
        j2: usize,
        gamma1: FieldElement,
        gamma2: FieldElement,
    ) -> Result<Self, GdrsError> {
        if j1 == 0 || j2 == 0 || j1 == j2 {
            return Err(GdrsError::InvalidLeader(format!(
                "positions must be distinct and 1-based, got ({j1}, {j2})"
            )));
        }
        if gamma1.is_zero() || gamma2.is_zero() {
            return Err(GdrsError::InvalidLeader("entries must be nonzero".into()));
        }
        Ok(if j1 < j2 {
            CosetLeader2 { j1, j2, gamma1, gamma2 }
        } else {
            CosetLeader2 { j1: j2, j2: j1, gamma1: gamma2, gamma2: gamma1 }
        })
    }

    pub fn positions(&self) -> (usize, usize) {
        (self.j1, self.j2)
    }

    pub fn gammas(&self) -> (FieldElement, FieldElement) {
        (self.gamma1, self.gamma2)
    }
}

/// Weight distribution of an `[n, n-d+1, d]_q` MDS code: `A_0 = 1`, nothing
/// between weights `1` and `d - 1`, and for `w >= d`
/// `A_w = C(n, w) * sum_{j=0}^{w-d} (-1)^j C(w, j) (q^{w-d+1-j} - 1)`.
pub fn mds_code_wd(n: u64, d: u64, q: u64) -> WeightDistribution {
    assert!(d >= 1 && d <= n, "need 1 <= d <= n");
    let mut counts = vec![BigUint::zero(); n as usize + 1];
    counts[0] = BigUint::from(1u32);
    for w in d..=n {
        let mut inner = BigInt::zero();
        for j in 0..=w - d {
            let term = binomial_int(w, j) * (BigInt::from(power(q, (w - d + 1 - j) as u32)) - 1);
            if j.is_multiple_of(2) {
                inner += term;
            } else {
                inner -= term;
            }
        }
        let a_w = binomial_int(n, w) * inner;
        counts[w as usize] = a_w
            .to_biguint()
            .expect("MDS weight counts are nonnegative");
    }
    WeightDistribution::new(counts)
}

/// The signed coefficient
/// `Omega_w^(v)(n, d) = (-1)^{w-d} C(n-v, w-v) C(w-1-v, d-2-v)`.
pub fn omega(w: u64, v: u64, n: u64, d: u64) -> BigInt {
    debug_assert!(d >= 2 && v <= d - 2 && w + 1 >= d && w <= n);
    let magnitude = binomial_int(n - v, w - v) * binomial_int(w - 1 - v, d - 2 - v);
    if (w + d).is_multiple_of(2) {
        magnitude
    } else {
        -magnitude
    }
}

/// Extend the known counts `B_0, ..., B_{d-2}` of a coset of an
/// `[n, n-d+1, d]_q` MDS code to the full weight distribution:
/// `B_w = A_w - Omega_w^(0) + sum_v Omega_w^(v) B_v` for `w >= d - 1`.
///
/// The result must be nonnegative and sum to `q^{n-d+1}`; anything else
/// means the prefix does not describe a coset and is reported as an error.
pub fn bonneau_extend(
    n: u64,
    d: u64,
    q: u64,
    prefix: &[BigUint],
) -> Result<WeightDistribution, GdrsError> {
    assert!(d >= 2 && d <= n + 1, "need 2 <= d <= n + 1");
    if prefix.len() as u64 != d - 1 {
        return Err(GdrsError::BadPrefix {
            expected: (d - 1) as usize,
            got: prefix.len(),
        });
    }
    let a = mds_code_wd(n, d.min(n), q);
    let mut counts: Vec<BigInt> = prefix.iter().cloned().map(BigInt::from).collect();
    counts.resize(n as usize + 1, BigInt::zero());
    for w in d - 1..=n {
        let mut acc = BigInt::from(a.count(w as usize).clone()) - omega(w, 0, n, d);
        for v in 0..=d - 2 {
            let b_v = &prefix[v as usize];
            if !b_v.is_zero() {
                acc += omega(w, v, n, d) * BigInt::from(b_v.clone());
            }
        }
        counts[w as usize] = acc;
    }
    let expected = power(q, (n - d + 1) as u32);
    let actual: BigInt = counts.iter().sum();
    if actual != BigInt::from(expected.clone()) {
        return Err(GdrsError::MassMismatch { expected, actual });
    }
    let counts: Vec<BigUint> = counts
        .into_iter()
        .enumerate()
        .map(|(w, c)| {
            if c.is_negative() {
                Err(GdrsError::NegativeCount { w: w as u64, value: c })
            } else {
                Ok(c.to_biguint().unwrap())
            }
        })
        .collect::<Result<_, _>>()?;
    Ok(WeightDistribution::new(counts))
}

/// Whether `C(q-1, d-2) / (q-1)` is an integer: necessary for all weight-2
/// cosets of the `[q+1, q+2-d, d]_q` code to share one weight distribution.
pub fn necessary_condition(q: u64, d: u64) -> bool {
    exact_div(&binomial(q - 1, d - 2), q - 1).is_some()
}

/// Total number of weight-`(d-2)` vectors over all weight-2 cosets:
/// `(q-1) C(n, 2) C(n-2, d-2)` with `n = q + 1`.
pub fn bd2_total(q: u64, d: u64) -> BigUint {
    BigUint::from(q - 1) * binomial(q + 1, 2) * binomial(q - 1, d - 2)
}

/// Check the cross-coset symmetry of weight-2 coset distributions: the
/// combination `(-1)^{n+d} B_w - B_{n+d-2-w}` must not depend on the coset.
pub fn symmetry_residual(
    a: &WeightDistribution,
    b: &WeightDistribution,
    n: u64,
    d: u64,
) -> bool {
    let sign_positive = (n + d).is_multiple_of(2);
    let residual = |wd: &WeightDistribution, w: u64| -> BigInt {
        let lead = BigInt::from(wd.count(w as usize).clone());
        let mirror = BigInt::from(wd.count((n + d - 2 - w) as usize).clone());
        if sign_positive {
            lead - mirror
        } else {
            -lead - mirror
        }
    };
    (d - 1..=n).all(|w| residual(a, w) == residual(b, w))
}

/// A normalized GDRS code over a concrete field, held as its parity-check
/// matrix with the fixed column order described in the module docs.
#[derive(Debug, Clone)]
pub struct GdrsCode {
    field: FieldSpec,
    d: usize,
    /// `(d-1) x n` parity-check matrix, row major.
    h: Vec<Vec<FieldElement>>,
}

impl GdrsCode {
    pub fn new(field: FieldSpec, d: usize) -> Result<Self, GdrsError> {
        let q = field.q() as usize;
        if d < 3 {
            return Err(GdrsError::DistanceTooSmall { d: d as u64, min: 3 });
        }
        if d > q + 1 {
            return Err(GdrsError::DistanceTooLarge {
                d: d as u64,
                q: q as u64,
            });
        }
        let n = q + 1;
        let rows = d - 1;
        let mut h = vec![vec![FieldElement::ZERO; n]; rows];
        for j in 0..q {
            // Columns 1..=q-1 carry the powers of beta in order; column q is
            // the zero evaluation point, i.e. (1, 0, ..., 0).
            let m = if j < q - 1 {
                field.element_from_dlog(j as u64)
            } else {
                FieldElement::ZERO
            };
            let mut acc = FieldElement::ONE;
            for row in h.iter_mut() {
                row[j] = acc;
                acc = field.mul(acc, m);
            }
        }
        h[rows - 1][n - 1] = FieldElement::ONE;
        Ok(GdrsCode { field, d, h })
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn q(&self) -> u64 {
        u64::from(self.field.q())
    }

    pub fn n(&self) -> usize {
        self.field.q() as usize + 1
    }

    pub fn k(&self) -> usize {
        self.n() - (self.d - 1)
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn parity_check(&self) -> &[Vec<FieldElement>] {
        &self.h
    }

    /// Column `j` (1-based) of the parity-check matrix.
    pub fn column(&self, j: usize) -> Vec<FieldElement> {
        assert!(j >= 1 && j <= self.n());
        self.h.iter().map(|row| row[j - 1]).collect()
    }

    /// Syndrome `H x^T` of a length-`n` vector.
    pub fn syndrome(&self, x: &[FieldElement]) -> Result<Vec<FieldElement>, GdrsError> {
        if x.len() != self.n() {
            return Err(GdrsError::WrongLength {
                expected: self.n(),
                got: x.len(),
            });
        }
        let f = &self.field;
        Ok(self
            .h
            .iter()
            .map(|row| {
                let mut acc = FieldElement::ZERO;
                for (hij, xj) in row.iter().zip(x) {
                    if !xj.is_zero() && !hij.is_zero() {
                        acc = f.add(acc, f.mul(*hij, *xj));
                    }
                }
                acc
            })
            .collect())
    }

    /// The dense vector with `gamma1, gamma2` at the leader's positions.
    pub fn leader_vector(&self, leader: &CosetLeader2) -> Result<Vec<FieldElement>, GdrsError> {
        let (j1, j2) = leader.positions();
        if j2 > self.n() {
            return Err(GdrsError::InvalidLeader(format!(
                "position {j2} exceeds code length {}",
                self.n()
            )));
        }
        let mut v = vec![FieldElement::ZERO; self.n()];
        let (g1, g2) = leader.gammas();
        v[j1 - 1] = g1;
        v[j2 - 1] = g2;
        Ok(v)
    }

    /// Reduced row echelon form in place; returns the pivot columns.
    fn rref(&self, mat: &mut [Vec<FieldElement>]) -> Vec<usize> {
        let f = &self.field;
        let rows = mat.len();
        let cols = if rows == 0 { 0 } else { mat[0].len() };
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..cols {
            if row >= rows {
                break;
            }
            let Some(pivot_row) = (row..rows).find(|&i| !mat[i][col].is_zero()) else {
                continue;
            };
            mat.swap(row, pivot_row);
            let inv = f.inv(mat[row][col]).expect("pivot is nonzero");
            for cell in mat[row][col..].iter_mut() {
                *cell = f.mul(*cell, inv);
            }
            let pivot_vals = mat[row][col..].to_vec();
            for (i, other) in mat.iter_mut().enumerate() {
                if i != row && !other[col].is_zero() {
                    let factor = other[col];
                    for (cell, pv) in other[col..].iter_mut().zip(&pivot_vals) {
                        *cell = f.sub(*cell, f.mul(factor, *pv));
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    /// A basis of the code (the null space of `H`), `k` vectors of length `n`.
    pub fn generator_basis(&self) -> Vec<Vec<FieldElement>> {
        let f = &self.field;
        let n = self.n();
        let mut mat = self.h.clone();
        let pivots = self.rref(&mut mat);
        let mut is_pivot = vec![false; n];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let mut basis = Vec::with_capacity(n - pivots.len());
        for free in (0..n).filter(|&c| !is_pivot[c]) {
            let mut v = vec![FieldElement::ZERO; n];
            v[free] = FieldElement::ONE;
            for (row, &pivot_col) in pivots.iter().enumerate() {
                v[pivot_col] = f.neg(mat[row][free]);
            }
            basis.push(v);
        }
        debug_assert_eq!(basis.len(), self.k());
        basis
    }

    /// Every `d - 1` columns of `H` must be linearly independent (the MDS
    /// property). Exhaustive; intended for small `q`.
    pub fn verify_mds(&self) -> bool {
        let rows = self.d - 1;
        let n = self.n();
        let mut subset = vec![0usize; rows];
        self.check_mds_rec(&mut subset, 0, 0, n, rows)
    }

    fn check_mds_rec(
        &self,
        subset: &mut [usize],
        depth: usize,
        start: usize,
        n: usize,
        rows: usize,
    ) -> bool {
        if depth == rows {
            let mut mat: Vec<Vec<FieldElement>> = (0..rows)
                .map(|r| subset.iter().map(|&c| self.h[r][c]).collect())
                .collect();
            return self.rref(&mut mat).len() == rows;
        }
        for c in start..=n - (rows - depth) {
            subset[depth] = c;
            if !self.check_mds_rec(subset, depth + 1, c + 1, n, rows) {
                return false;
            }
        }
        true
    }

    /// All `q^k` codewords, in the lexicographic order of their coefficient
    /// tuples with respect to the generator basis.
    pub fn codewords(&self, budget: u64) -> Result<Vec<Vec<FieldElement>>, GdrsError> {
        let cost = self.codeword_count_cost();
        if cost > u128::from(budget) {
            return Err(GdrsError::BudgetExceeded { cost, budget });
        }
        let f = &self.field;
        let n = self.n();
        let mut words = vec![vec![FieldElement::ZERO; n]];
        for b in &self.generator_basis() {
            let scaled: Vec<Vec<FieldElement>> = f
                .elements()
                .map(|s| b.iter().map(|&x| f.mul(s, x)).collect())
                .collect();
            let mut next = Vec::with_capacity(words.len() * scaled.len());
            for w in &words {
                for sb in &scaled {
                    let mut v = w.clone();
                    for (vi, si) in v.iter_mut().zip(sb) {
                        *vi = f.add(*vi, *si);
                    }
                    next.push(v);
                }
            }
            words = next;
        }
        Ok(words)
    }

    fn codeword_count_cost(&self) -> u128 {
        (u128::from(self.field.q()))
            .checked_pow(self.k() as u32)
            .unwrap_or(u128::MAX)
    }

    /// The code's own weight distribution by formula.
    pub fn mds_wd(&self) -> WeightDistribution {
        mds_code_wd(self.n() as u64, self.d as u64, self.q())
    }

    /// The single weight distribution shared by all `n(q-1)` weight-1 cosets:
    /// `B_1 = 1`, `B_{d-1} = C(n-1, d-1)`, nothing else below `d`.
    pub fn coset_wd_weight1(&self) -> WeightDistribution {
        let mut prefix = vec![BigUint::zero(); self.d - 1];
        prefix[1] = BigUint::from(1u32);
        bonneau_extend(self.n() as u64, self.d as u64, self.q(), &prefix)
            .expect("weight-1 prefix is consistent")
    }

    fn weight2_prefix(&self, b_d2: BigUint) -> Vec<BigUint> {
        let mut prefix = vec![BigUint::zero(); self.d - 1];
        prefix[2] = BigUint::from(1u32);
        prefix[self.d - 2] = b_d2;
        prefix
    }

    fn require_weight2_params(&self) -> Result<(), GdrsError> {
        if self.d < 5 {
            return Err(GdrsError::DistanceTooSmall {
                d: self.d as u64,
                min: 5,
            });
        }
        if self.d as u64 > self.q() {
            return Err(GdrsError::DistanceTooLarge {
                d: self.d as u64,
                q: self.q(),
            });
        }
        Ok(())
    }

    /// Count of weight-`(d-2)` vectors in the coset led by `leader`:
    /// the number of `(d-2)`-subsets of `F_q*` with product `-gamma2/gamma1`,
    /// evaluated through the subset-sum table of `Z_{q-1}` at
    /// `lambda = dlog(-gamma2/gamma1)`. Independent of the positions.
    pub fn bd2_of_leader(&self, leader: &CosetLeader2) -> Result<BigUint, GdrsError> {
        self.require_weight2_params()?;
        self.leader_vector(leader)?;
        let f = &self.field;
        let (g1, g2) = leader.gammas();
        let ratio = f.div(f.neg(g2), g1)?;
        let lambda = f.dlog(ratio)?;
        let ctx = RingContext::new(self.q() - 1, self.d as u64 - 2)
            .expect("weight-2 parameter ranges checked above");
        Ok(sum_peculiarity_profile(&ctx, lambda)?)
    }

    /// Full weight distribution of the weight-2 coset led by `leader`.
    pub fn coset_wd_weight2(&self, leader: &CosetLeader2) -> Result<WeightDistribution, GdrsError> {
        let b_d2 = self.bd2_of_leader(leader)?;
        bonneau_extend(
            self.n() as u64,
            self.d as u64,
            self.q(),
            &self.weight2_prefix(b_d2),
        )
    }

    /// The single weight distribution shared by all weight-2 cosets when
    /// `q - 1` and `d - 2` are coprime; `B_{d-2} = C(q-1, d-2) / (q-1)`.
    pub fn coset_wd_weight2_uniform(&self) -> Result<WeightDistribution, GdrsError> {
        self.require_weight2_params()?;
        let gcd = num_integer::gcd(self.q() - 1, self.d as u64 - 2);
        if gcd != 1 {
            return Err(GdrsError::NotUniformCase { gcd });
        }
        let b_d2 = exact_div(&binomial(self.q() - 1, self.d as u64 - 2), self.q() - 1)
            .expect("coprime case is integral");
        bonneau_extend(
            self.n() as u64,
            self.d as u64,
            self.q(),
            &self.weight2_prefix(b_d2),
        )
    }

    /// Canonical weight-2 leader set: positions `(1, 2)`, `gamma1 = 1`,
    /// `gamma2` sweeping `F_q*`. Scaling and position independence make this
    /// a full system of representatives of the possible distributions.
    pub fn canonical_weight2_leaders(&self) -> Vec<CosetLeader2> {
        self.field
            .nonzero_elements()
            .map(|g2| CosetLeader2::new(1, 2, FieldElement::ONE, g2).unwrap())
            .collect()
    }

    /// Ground truth for `B_{d-2}`: enumerate every weight-`(d-2)` vector of
    /// `F_q^n` and count the ones in the leader's syndrome bucket.
    pub fn oracle_bd2(&self, leader: &CosetLeader2, budget: u64) -> Result<BigUint, GdrsError> {
        self.require_weight2_params()?;
        let n = self.n();
        let w = self.d - 2;
        let q = self.field.q() as u64;
        let cost = binomial_cost(n as u64, w as u64)
            .saturating_mul((u128::from(q) - 1).pow(w as u32));
        if cost > u128::from(budget) {
            return Err(GdrsError::BudgetExceeded { cost, budget });
        }
        let target = self.syndrome(&self.leader_vector(leader)?)?;
        let columns: Vec<Vec<FieldElement>> = (1..=n).map(|j| self.column(j)).collect();
        let mut positions = vec![0usize; w];
        let mut values = vec![FieldElement::ONE; w];
        let mut count = 0u64;
        self.oracle_bd2_rec(&columns, &target, &mut positions, &mut values, 0, 0, &mut count);
        Ok(BigUint::from(count))
    }

    #[allow(clippy::too_many_arguments)]
    fn oracle_bd2_rec(
        &self,
        columns: &[Vec<FieldElement>],
        target: &[FieldElement],
        positions: &mut Vec<usize>,
        values: &mut Vec<FieldElement>,
        depth: usize,
        start: usize,
        count: &mut u64,
    ) {
        let w = positions.len();
        if depth == w {
            let f = &self.field;
            let mut syndrome = vec![FieldElement::ZERO; self.d - 1];
            for (pos, val) in positions.iter().zip(values.iter()) {
                for (s, c) in syndrome.iter_mut().zip(&columns[*pos]) {
                    *s = f.add(*s, f.mul(*val, *c));
                }
            }
            if syndrome == target {
                *count += 1;
            }
            return;
        }
        for pos in start..=columns.len() - (w - depth) {
            positions[depth] = pos;
            for v in self.field.nonzero_elements() {
                values[depth] = v;
                self.oracle_bd2_rec(columns, target, positions, values, depth + 1, pos + 1, count);
            }
        }
    }

    /// Ground truth for a full coset weight distribution: translate every
    /// codeword by the given vector and tally weights.
    pub fn oracle_full_coset_wd(
        &self,
        leader: &[FieldElement],
        budget: u64,
    ) -> Result<WeightDistribution, GdrsError> {
        if leader.len() != self.n() {
            return Err(GdrsError::WrongLength {
                expected: self.n(),
                got: leader.len(),
            });
        }
        let f = &self.field;
        let mut hist = vec![0u64; self.n() + 1];
        for c in self.codewords(budget)? {
            let weight = c
                .iter()
                .zip(leader)
                .filter(|(ci, li)| !f.add(**ci, **li).is_zero())
                .count();
            hist[weight] += 1;
        }
        Ok(WeightDistribution::new(
            hist.into_iter().map(BigUint::from).collect(),
        ))
    }

    /// Exhaustively decide whether all weight-1 cosets share one weight
    /// distribution and all weight-2 cosets share one weight distribution
    /// (the weight-0 coset is the code itself). On failure the witness holds
    /// two leader vectors whose cosets differ.
    pub fn check_2_regular(&self, budget: u64) -> Result<TwoRegularReport, GdrsError> {
        self.require_weight2_params()?;
        let n = self.n();
        let q = self.field.q() as u128;
        let coset_count =
            n as u128 * (q - 1) + binomial_cost(n as u64, 2) * (q - 1) * (q - 1);
        let cost = self.codeword_count_cost().saturating_mul(coset_count);
        if cost > u128::from(budget) {
            return Err(GdrsError::BudgetExceeded { cost, budget });
        }

        let f = &self.field;
        let codewords = self.codewords(budget)?;
        let base_weights: Vec<u32> = codewords
            .iter()
            .map(|c| c.iter().filter(|x| !x.is_zero()).count() as u32)
            .collect();

        // Histogram of weights for the coset `leader + C`, where the leader
        // is sparse: only the listed positions (0-based) are nonzero.
        let tally = |support: &[(usize, FieldElement)]| -> Vec<u64> {
            let mut hist = vec![0u64; n + 1];
            for (c, &w) in codewords.iter().zip(&base_weights) {
                let mut weight = w;
                for &(pos, gamma) in support {
                    if !c[pos].is_zero() {
                        weight -= 1;
                    }
                    if !f.add(c[pos], gamma).is_zero() {
                        weight += 1;
                    }
                }
                hist[weight as usize] += 1;
            }
            hist
        };

        // Weight-1 cosets.
        let mut weight1_reference: Option<(Vec<u64>, Vec<FieldElement>)> = None;
        for j in 0..n {
            for gamma in f.nonzero_elements() {
                let hist = tally(&[(j, gamma)]);
                let mut leader = vec![FieldElement::ZERO; n];
                leader[j] = gamma;
                match &weight1_reference {
                    None => weight1_reference = Some((hist, leader)),
                    Some((reference, ref_leader)) => {
                        if hist != *reference {
                            return Ok(TwoRegularReport {
                                is_2_regular: false,
                                witness: Some((ref_leader.clone(), leader)),
                            });
                        }
                    }
                }
            }
        }

        // Weight-2 cosets, in parallel over the leaders.
        let mut leaders: Vec<[(usize, FieldElement); 2]> = Vec::new();
        for j1 in 0..n {
            for j2 in j1 + 1..n {
                for g1 in f.nonzero_elements() {
                    for g2 in f.nonzero_elements() {
                        leaders.push([(j1, g1), (j2, g2)]);
                    }
                }
            }
        }
        let reference = tally(&leaders[0]);
        let mismatch = leaders
            .par_iter()
            .enumerate()
            .skip(1)
            .find_map_first(|(idx, support)| (tally(support) != reference).then_some(idx));
        if let Some(idx) = mismatch {
            let to_vec = |support: &[(usize, FieldElement); 2]| {
                let mut v = vec![FieldElement::ZERO; n];
                for &(pos, gamma) in support {
                    v[pos] = gamma;
                }
                v
            };
            return Ok(TwoRegularReport {
                is_2_regular: false,
                witness: Some((to_vec(&leaders[0]), to_vec(&leaders[idx]))),
            });
        }
        Ok(TwoRegularReport {
            is_2_regular: true,
            witness: None,
        })
    }
}

/// Outcome of [`GdrsCode::check_2_regular`].
#[derive(Debug, Clone)]
pub struct TwoRegularReport {
    pub is_2_regular: bool,
    /// Two leader vectors of equal weight whose cosets have different weight
    /// distributions, when any exist.
    pub witness: Option<(Vec<FieldElement>, Vec<FieldElement>)>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::make_field;

    fn code(q: u64, d: usize) -> GdrsCode {
        GdrsCode::new(make_field(q).unwrap(), d).unwrap()
    }

    fn big(x: u64) -> BigUint {
        BigUint::from(x)
    }

    #[test]
    fn mds_weight_distribution_examples() {
        let wd = mds_code_wd(8, 5, 7);
        assert_eq!(*wd.count(5), big(336));
        for w in 1..=4 {
            assert_eq!(*wd.count(w), BigUint::zero(), "w={w}");
        }
        assert_eq!(wd.total(), big(2401));

        // [6, 2, 5]_5: the alternating sum cancels A_6 entirely.
        let wd = mds_code_wd(6, 5, 5);
        assert_eq!(*wd.count(5), big(24));
        assert_eq!(*wd.count(6), BigUint::zero());
        assert_eq!(wd.total(), big(25));
    }

    #[test]
    fn mds_mass_is_q_to_the_k() {
        for q in [4u64, 5, 7, 8, 9, 11, 13] {
            for d in 2..=q + 1 {
                let n = q + 1;
                let wd = mds_code_wd(n, d, q);
                assert_eq!(wd.total(), power(q, (n - d + 1) as u32), "q={q} d={d}");
            }
        }
    }

    #[test]
    fn omega_examples() {
        assert_eq!(omega(5, 0, 8, 5), BigInt::from(56 * 4));
        assert_eq!(omega(4, 0, 8, 5), BigInt::from(-70));
        assert_eq!(omega(5, 2, 8, 5), BigInt::from(40));
    }

    #[test]
    fn bonneau_reproduces_the_code_itself() {
        for (q, d) in [(7u64, 5u64), (8, 5), (9, 6), (11, 7), (13, 5)] {
            let n = q + 1;
            let mut prefix = vec![BigUint::zero(); (d - 1) as usize];
            prefix[0] = big(1);
            let wd = bonneau_extend(n, d, q, &prefix).unwrap();
            assert_eq!(wd, mds_code_wd(n, d, q), "q={q} d={d}");
        }
    }

    #[test]
    fn bonneau_weight1_and_weight2_examples() {
        let mut prefix = vec![BigUint::zero(); 4];
        prefix[1] = big(1);
        let wd = bonneau_extend(8, 5, 7, &prefix).unwrap();
        assert_eq!(*wd.count(4), big(35)); // C(7, 4)

        let mut prefix = vec![BigUint::zero(); 4];
        prefix[2] = big(1);
        prefix[3] = big(4);
        let wd = bonneau_extend(8, 5, 7, &prefix).unwrap();
        assert_eq!(*wd.count(3), big(4));
        assert_eq!(wd.total(), big(2401));
    }

    #[test]
    fn bonneau_rejects_inconsistent_prefixes() {
        let mut prefix = vec![BigUint::zero(); 4];
        prefix[0] = big(1);
        prefix[1] = big(1);
        assert!(matches!(
            bonneau_extend(8, 5, 7, &prefix),
            Err(GdrsError::MassMismatch { .. } | GdrsError::NegativeCount { .. })
        ));
        assert!(matches!(
            bonneau_extend(8, 5, 7, &[big(1)]),
            Err(GdrsError::BadPrefix { expected: 4, got: 1 })
        ));
    }

    #[test]
    fn parity_check_shape() {
        let c = code(7, 5);
        assert_eq!((c.n(), c.k(), c.d()), (8, 4, 5));
        let h = c.parity_check();
        assert_eq!(h.len(), 4);
        // First row: all ones except the final unit column.
        assert_eq!(h[0][..7], vec![FieldElement::ONE; 7][..]);
        assert!(h[0][7].is_zero());
        // Column q is the zero evaluation point (1, 0, 0, 0).
        assert_eq!(c.column(7), vec![
            FieldElement::ONE,
            FieldElement::ZERO,
            FieldElement::ZERO,
            FieldElement::ZERO
        ]);
        // Last column is the last unit vector.
        assert_eq!(c.column(8), vec![
            FieldElement::ZERO,
            FieldElement::ZERO,
            FieldElement::ZERO,
            FieldElement::ONE
        ]);
        // Powers of beta = 3 in F_7: column 3 is (1, 2, 4, 1) since m_3 = 3^2 = 2.
        let f = c.field();
        assert_eq!(c.column(3), vec![
            FieldElement::ONE,
            f.element(2),
            f.element(4),
            f.element(1)
        ]);
    }

    #[test]
    fn mds_property_small_q() {
        for (q, d) in [(5u64, 5usize), (7, 5), (7, 6), (8, 5), (9, 5), (9, 6)] {
            assert!(code(q, d).verify_mds(), "q={q} d={d}");
        }
    }

    #[test]
    fn generator_basis_spans_the_null_space() {
        for (q, d) in [(5u64, 5usize), (7, 5), (8, 5), (9, 6)] {
            let c = code(q, d);
            let basis = c.generator_basis();
            assert_eq!(basis.len(), c.k());
            for v in &basis {
                let s = c.syndrome(v).unwrap();
                assert!(s.iter().all(|x| x.is_zero()), "q={q} d={d}");
            }
        }
    }

    #[test]
    fn codeword_enumeration_counts_and_weights() {
        let c = code(5, 5);
        let words = c.codewords(1_000_000).unwrap();
        assert_eq!(words.len(), 25);
        // Tallying against the MDS formula validates the enumeration.
        let wd = c.oracle_full_coset_wd(&vec![FieldElement::ZERO; c.n()], 1_000_000).unwrap();
        assert_eq!(wd, c.mds_wd());
    }

    #[test]
    fn weight1_coset_formula_matches_oracle() {
        let c = code(7, 5);
        let formula = c.coset_wd_weight1();
        assert_eq!(*formula.count(1), big(1));
        assert_eq!(*formula.count(4), big(35));
        let mut leader = vec![FieldElement::ZERO; c.n()];
        leader[3] = c.field().element(5);
        let oracle = c.oracle_full_coset_wd(&leader, 1_000_000).unwrap();
        assert_eq!(formula, oracle);
    }

    #[test]
    fn weight2_coset_examples() {
        let c = code(7, 5);
        let f = c.field().clone();
        // -gamma2/gamma1 = 1, dlog 0: the heavy class.
        let leader = CosetLeader2::new(1, 2, f.element(1), f.element(6)).unwrap();
        assert_eq!(c.bd2_of_leader(&leader).unwrap(), big(4));
        // -1 = 6 has dlog 3, still in the zero class mod 3.
        let leader = CosetLeader2::new(1, 2, f.element(1), f.element(1)).unwrap();
        assert_eq!(c.bd2_of_leader(&leader).unwrap(), big(4));

        let c5 = code(5, 5);
        for leader in c5.canonical_weight2_leaders() {
            assert_eq!(c5.bd2_of_leader(&leader).unwrap(), big(1));
        }
    }

    #[test]
    fn weight1_count_below_distance_is_binomial() {
        // B_{d-1} of a weight-1 coset is C(n-1, d-1) = C(q, d-1).
        for (q, d) in [(5u64, 5u64), (7, 5), (8, 5), (9, 6), (11, 7), (13, 6)] {
            let c = code(q, d as usize);
            let wd = c.coset_wd_weight1();
            assert_eq!(*wd.count(d as usize - 1), binomial(q, d - 1), "q={q} d={d}");
        }
    }

    #[test]
    fn weight2_uniform_case() {
        assert_eq!(*code(5, 5).coset_wd_weight2_uniform().unwrap().count(3), big(1));
        assert_eq!(*code(8, 5).coset_wd_weight2_uniform().unwrap().count(3), big(5));
        assert!(matches!(
            code(7, 5).coset_wd_weight2_uniform(),
            Err(GdrsError::NotUniformCase { gcd: 3 })
        ));
    }

    #[test]
    fn weight2_distance_bounds() {
        assert!(matches!(
            code(7, 4).coset_wd_weight2_uniform(),
            Err(GdrsError::DistanceTooSmall { d: 4, min: 5 })
        ));
        let c = code(7, 8);
        let leader = c.canonical_weight2_leaders()[0];
        assert!(matches!(
            c.coset_wd_weight2(&leader),
            Err(GdrsError::DistanceTooLarge { d: 8, q: 7 })
        ));
    }

    #[test]
    fn necessary_condition_examples() {
        assert!(necessary_condition(8, 5));
        assert!(!necessary_condition(7, 5));
        assert!(necessary_condition(5, 5));
    }

    #[test]
    fn bd2_total_examples() {
        assert_eq!(bd2_total(7, 5), big(3360));
        assert_eq!(bd2_total(5, 5), big(240));
        assert_eq!(bd2_total(8, 5), big(8820));
    }

    #[test]
    fn oracle_bd2_examples() {
        let c = code(7, 5);
        let f = c.field().clone();
        let budget = 10_000_000;
        let l = CosetLeader2::new(1, 2, f.element(1), f.element(6)).unwrap();
        assert_eq!(c.oracle_bd2(&l, budget).unwrap(), big(4));
        // Position independence.
        let l = CosetLeader2::new(7, 8, f.element(1), f.element(6)).unwrap();
        assert_eq!(c.oracle_bd2(&l, budget).unwrap(), big(4));
        // The other class.
        let l = CosetLeader2::new(1, 2, f.element(1), f.element(2)).unwrap();
        assert_eq!(c.oracle_bd2(&l, budget).unwrap(), big(3));
    }

    #[test]
    fn full_coset_oracle_matches_weight2_formula() {
        let c = code(7, 5);
        for leader in c.canonical_weight2_leaders() {
            let formula = c.coset_wd_weight2(&leader).unwrap();
            let oracle = c
                .oracle_full_coset_wd(&c.leader_vector(&leader).unwrap(), 1_000_000)
                .unwrap();
            assert_eq!(formula, oracle, "leader {leader:?}");
        }
    }

    #[test]
    fn full_coset_oracle_matches_formula_over_gf9() {
        // Odd-characteristic extension field, and gcd(q-1, d-2) = 4 puts the
        // weight-4 counts in the three-orbit family: 9 / 8 / 10 by the class
        // of dlog(-gamma2) mod 4.
        let c = code(9, 6);
        let f = c.field().clone();
        for leader in c.canonical_weight2_leaders() {
            let (_, g2) = leader.gammas();
            let lambda = f.dlog(f.neg(g2)).unwrap();
            let expected_b4 = match lambda % 4 {
                0 => 9u64,
                2 => 10,
                _ => 8,
            };
            let formula = c.coset_wd_weight2(&leader).unwrap();
            assert_eq!(*formula.count(4), big(expected_b4), "gamma2={g2}");
            let oracle = c
                .oracle_full_coset_wd(&c.leader_vector(&leader).unwrap(), 1_000_000)
                .unwrap();
            assert_eq!(formula, oracle, "gamma2={g2}");
        }
    }

    #[test]
    fn scaling_leaves_coset_distributions_unchanged() {
        let c = code(7, 5);
        let f = c.field().clone();
        let leader = CosetLeader2::new(2, 5, f.element(1), f.element(3)).unwrap();
        let base = c
            .oracle_full_coset_wd(&c.leader_vector(&leader).unwrap(), 1_000_000)
            .unwrap();
        for alpha in f.nonzero_elements() {
            let scaled: Vec<FieldElement> = c
                .leader_vector(&leader)
                .unwrap()
                .iter()
                .map(|&x| f.mul(alpha, x))
                .collect();
            let wd = c.oracle_full_coset_wd(&scaled, 1_000_000).unwrap();
            assert_eq!(wd, base, "alpha={alpha}");
        }
    }

    #[test]
    fn two_regularity_small_codes() {
        let report = code(5, 5).check_2_regular(10_000_000).unwrap();
        assert!(report.is_2_regular);
        let report = code(7, 5).check_2_regular(10_000_000).unwrap();
        assert!(!report.is_2_regular);
        let (a, b) = report.witness.unwrap();
        let c = code(7, 5);
        let wa = c.oracle_full_coset_wd(&a, 1_000_000).unwrap();
        let wb = c.oracle_full_coset_wd(&b, 1_000_000).unwrap();
        assert_ne!(wa, wb);
    }

    #[test]
    fn symmetry_residual_examples() {
        let c = code(7, 5);
        let f = c.field().clone();
        let wd_a = c
            .coset_wd_weight2(&CosetLeader2::new(1, 2, f.element(1), f.element(6)).unwrap())
            .unwrap();
        let wd_b = c
            .coset_wd_weight2(&CosetLeader2::new(1, 2, f.element(1), f.element(2)).unwrap())
            .unwrap();
        assert_ne!(wd_a, wd_b);
        assert!(symmetry_residual(&wd_a, &wd_b, 8, 5));
        assert!(symmetry_residual(&wd_a, &wd_a, 8, 5));
    }

    #[test]
    fn leader_validation() {
        let f = make_field(7).unwrap();
        assert!(CosetLeader2::new(2, 2, f.element(1), f.element(1)).is_err());
        assert!(CosetLeader2::new(0, 2, f.element(1), f.element(1)).is_err());
        assert!(CosetLeader2::new(1, 2, FieldElement::ZERO, f.element(1)).is_err());
        // Positions are swapped into canonical order together with entries.
        let l = CosetLeader2::new(5, 2, f.element(3), f.element(4)).unwrap();
        assert_eq!(l.positions(), (2, 5));
        assert_eq!(l.gammas(), (f.element(4), f.element(3)));
    }

    #[test]
    fn budget_guards() {
        let c = code(9, 5);
        assert!(matches!(
            c.codewords(1000),
            Err(GdrsError::BudgetExceeded { .. })
        ));
        let f = c.field().clone();
        let l = CosetLeader2::new(1, 2, f.element(1), f.element(1)).unwrap();
        assert!(matches!(
            c.oracle_bd2(&l, 10),
            Err(GdrsError::BudgetExceeded { .. })
        ));
        assert!(matches!(
            c.check_2_regular(1_000_000),
            Err(GdrsError::BudgetExceeded { .. })
        ));
    }
}
