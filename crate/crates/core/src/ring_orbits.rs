//! The ring `Z_R` under the affine maps `lambda -> lambda*l + u*mu`
//! (`l` a unit of `Z_R`, `u` arbitrary): orbit partitions and the
//! residue-profile machinery that powers the fast subset-sum counting route.
//!
//! Writing `D = gcd(R, mu)`, the translation-only subgroup partitions `Z_R`
//! into the `D` residue classes mod `D` (each of size `Phi_R = R/D`); the
//! full group merges those classes into coarser orbits. A residue profile
//! (`ch`-vector) records, for a `mu`-subset of `Z_R`, how many of its
//! elements fall into each residue class mod `D`.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::One;
use thiserror::Error;

use crate::combinatorics::binomial;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RingError {
    #[error("need R >= 2 and 1 <= mu < R; got R = {r}, mu = {mu}")]
    InvalidContext { r: u64, mu: u64 },
    #[error("profile has {got} entries, context needs gcd(R, mu) = {expected}")]
    ProfileLengthMismatch { got: usize, expected: u64 },
    #[error("subset count {numerator} for the shift class is not divisible by {phi_r}")]
    NonIntegralCount { numerator: BigUint, phi_r: u64 },
}

/// The pair `(R, mu)` with its derived quantities `D = gcd(R, mu)`,
/// `Phi_R = R/D` and `Phi_mu = mu/D`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RingContext {
    r: u64,
    mu: u64,
    d: u64,
    phi_r: u64,
    phi_mu: u64,
}

impl RingContext {
    pub fn new(r: u64, mu: u64) -> Result<Self, RingError> {
        if r < 2 || mu == 0 || mu >= r {
            return Err(RingError::InvalidContext { r, mu });
        }
        let d = r.gcd(&mu);
        Ok(RingContext {
            r,
            mu,
            d,
            phi_r: r / d,
            phi_mu: mu / d,
        })
    }

    pub fn r(&self) -> u64 {
        self.r
    }

    pub fn mu(&self) -> u64 {
        self.mu
    }

    /// `D = gcd(R, mu)`.
    pub fn gcd(&self) -> u64 {
        self.d
    }

    pub fn phi_r(&self) -> u64 {
        self.phi_r
    }

    pub fn phi_mu(&self) -> u64 {
        self.phi_mu
    }

    /// Units of `Z_R` in ascending order.
    pub fn units(&self) -> impl Iterator<Item = u64> + '_ {
        let r = self.r;
        (1..r).filter(move |l| l.gcd(&r) == 1)
    }
}

/// The orbit structure of `Z_R`: the `D` translation orbits (residue classes
/// mod `D`) and the coarser orbits under the full affine map group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitPartition {
    oplus_orbits: Vec<Vec<u64>>,
    full_orbits: Vec<Vec<u64>>,
    /// Residue class `j` mod `D` -> index into `full_orbits`.
    class_to_full: Vec<usize>,
    d: u64,
}

impl OrbitPartition {
    /// The translation orbits: entry `j` is `{lambda : lambda = j mod D}`.
    pub fn oplus_orbits(&self) -> &[Vec<u64>] {
        &self.oplus_orbits
    }

    /// Orbits under the full group, each sorted, ordered by smallest element.
    pub fn full_orbits(&self) -> &[Vec<u64>] {
        &self.full_orbits
    }

    /// Index (into `full_orbits`) of the orbit containing `lambda`.
    pub fn full_orbit_of(&self, lambda: u64) -> usize {
        self.class_to_full[(lambda % self.d) as usize]
    }
}

/// Compute the orbit partition by explicit closure: residue classes `j1` and
/// `j2` mod `D` merge exactly when some unit `l` of `Z_R` maps one onto the
/// other, i.e. `j1 * l = j2 (mod D)`.
pub fn orbit_partition(ctx: &RingContext) -> OrbitPartition {
    let d = ctx.d as usize;
    let oplus_orbits: Vec<Vec<u64>> = (0..ctx.d)
        .map(|j| (0..ctx.phi_r).map(|i| j + i * ctx.d).collect())
        .collect();

    let mut parent: Vec<usize> = (0..d).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for l in ctx.units() {
        for j in 0..ctx.d {
            let image = ((j * l) % ctx.r % ctx.d) as usize;
            let a = find(&mut parent, j as usize);
            let b = find(&mut parent, image);
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
    }

    let mut class_to_full = vec![usize::MAX; d];
    let mut full_orbits: Vec<Vec<u64>> = Vec::new();
    for j in 0..d {
        let root = find(&mut parent, j);
        if class_to_full[root] == usize::MAX {
            class_to_full[root] = full_orbits.len();
            full_orbits.push(Vec::new());
        }
        class_to_full[j] = class_to_full[root];
        full_orbits[class_to_full[j]].extend(oplus_orbits[j].iter().copied());
    }
    for orbit in &mut full_orbits {
        orbit.sort_unstable();
    }

    OrbitPartition {
        oplus_orbits,
        full_orbits,
        class_to_full,
        d: ctx.d,
    }
}

/// A residue profile `(N_0, ..., N_{D-1})`: how many elements of a
/// `mu`-subset fall into each residue class mod `D`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ChVector {
    counts: Vec<u64>,
}

impl ChVector {
    pub fn new(counts: Vec<u64>) -> Self {
        ChVector { counts }
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn len(&self) -> usize {
        self.counts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    /// Weighted residue sum `sum_xi xi * N_xi mod D`.
    pub fn weighted_residue(&self) -> u64 {
        let d = self.counts.len() as u64;
        self.counts
            .iter()
            .enumerate()
            .map(|(xi, &n)| (xi as u64 % d) * (n % d) % d)
            .sum::<u64>()
            % d
    }
}

/// All profiles `(N_0, ..., N_{D-1})` with `sum N_xi = mu`,
/// `0 <= N_xi <= Phi_R`, and weighted residue sum `= lambda_mod_d (mod D)`,
/// in descending lexicographic order.
pub fn enumerate_profiles(ctx: &RingContext, lambda_mod_d: u64) -> Vec<ChVector> {
    assert!(
        lambda_mod_d < ctx.d,
        "residue {lambda_mod_d} out of range for D = {}",
        ctx.d
    );
    let d = ctx.d as usize;
    let mut out = Vec::new();
    let mut current = vec![0u64; d];
    fn rec(
        ctx: &RingContext,
        pos: usize,
        remaining: u64,
        weighted: u64,
        target: u64,
        current: &mut Vec<u64>,
        out: &mut Vec<ChVector>,
    ) {
        let d = ctx.d;
        if pos == d as usize - 1 {
            if remaining <= ctx.phi_r {
                current[pos] = remaining;
                let total = (weighted + (d - 1) % d * (remaining % d)) % d;
                if total == target {
                    out.push(ChVector::new(current.clone()));
                }
            }
            return;
        }
        let top = remaining.min(ctx.phi_r);
        for n in (0..=top).rev() {
            current[pos] = n;
            rec(
                ctx,
                pos + 1,
                remaining - n,
                (weighted + (pos as u64 % d) * (n % d)) % d,
                target,
                current,
                out,
            );
        }
    }
    if d == 1 {
        return vec![ChVector::new(vec![ctx.mu])];
    }
    rec(ctx, 0, ctx.mu, 0, lambda_mod_d, &mut current, &mut out);
    out
}

/// All distinct cyclic shifts of a profile, the original first, then shifts
/// by 1, 2, ... in order of first appearance. The count of distinct shifts
/// is the multiplicity `m` in the shift-class subset count.
pub fn cyclic_shifts(c: &ChVector) -> Vec<ChVector> {
    let d = c.counts.len();
    let mut out: Vec<ChVector> = Vec::new();
    for delta in 0..d {
        let mut shifted = vec![0u64; d];
        for (i, &n) in c.counts.iter().enumerate() {
            shifted[(i + delta) % d] = n;
        }
        let cand = ChVector::new(shifted);
        if !out.contains(&cand) {
            out.push(cand);
        }
    }
    out
}

/// Number of `mu`-subsets whose profile is `c` or any cyclic shift of `c`
/// and whose sum is one fixed element of the matching residue class:
/// `(m / Phi_R) * prod_xi C(Phi_R, N_xi)`.
///
/// Computed formally for any profile of the right length; the division is
/// exact for every genuine profile, and a remainder reports
/// [`RingError::NonIntegralCount`].
pub fn n_sigma(ctx: &RingContext, c: &ChVector) -> Result<BigUint, RingError> {
    if c.len() as u64 != ctx.d {
        return Err(RingError::ProfileLengthMismatch {
            got: c.len(),
            expected: ctx.d,
        });
    }
    let m = cyclic_shifts(c).len() as u64;
    let mut numerator = BigUint::from(m);
    for &n in c.counts() {
        numerator *= binomial(ctx.phi_r, n);
    }
    crate::combinatorics::exact_div(&numerator, ctx.phi_r)
        .ok_or(RingError::NonIntegralCount {
            numerator,
            phi_r: ctx.phi_r,
        })
}

/// Total subsets carrying a given profile, `prod_xi C(Phi_R, N_xi)`.
pub(crate) fn profile_subset_count(ctx: &RingContext, c: &ChVector) -> BigUint {
    let mut acc = BigUint::one();
    for &n in c.counts() {
        acc *= binomial(ctx.phi_r, n);
    }
    acc
}
