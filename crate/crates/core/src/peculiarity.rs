//! The count `P+(lambda)` of `mu`-subsets of `Z_R` (distinct elements)
//! summing to `lambda`, computed by three independent routes:
//!
//! - brute force: enumerate all `C(R, mu)` subsets;
//! - profile engine: `P+` is constant on each residue class mod
//!   `D = gcd(R, mu)`, so summing `prod_xi C(Phi_R, N_xi)` over the residue
//!   profiles of the class and dividing by the class size `Phi_R` gives the
//!   value for every `(R, mu)`;
//! - closed forms: explicit formulas for the solved parameter families
//!   (coprime `R, mu`; the two-orbit families with prime `gcd`; and the
//!   three-orbit family `mu = 4`, `4 | R`).
//!
//! [`reconcile`] runs every applicable route and insists on exact agreement.

use num_bigint::{BigInt, BigUint};
use num_traits::Zero;
use rayon::prelude::*;
use thiserror::Error;

use crate::combinatorics::{binomial, binomial_cost, exact_div};
use crate::ring_orbits::{enumerate_profiles, profile_subset_count, RingContext, RingError};
use crate::DEFAULT_BRUTE_FORCE_BUDGET;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PeculiarityError {
    #[error("mu = {mu} out of range; need 1 <= mu < R = {r}")]
    MuOutOfRange { r: u64, mu: u64 },
    #[error("lambda = {lambda} out of range for Z_{r}")]
    LambdaOutOfRange { lambda: u64, r: u64 },
    #[error("enumeration needs {cost} subset visits, over budget {budget}")]
    BudgetExceeded { cost: u128, budget: u64 },
    #[error("class total {numerator} is not divisible by the class size {phi_r}")]
    NonIntegralResult { numerator: BigUint, phi_r: u64 },
    #[error(
        "routes disagree at lambda = {lambda}: {method_a} gives {value_a}, {method_b} gives {value_b}"
    )]
    RouteMismatch {
        lambda: u64,
        method_a: Method,
        value_a: BigUint,
        method_b: Method,
        value_b: BigUint,
    },
}

impl From<RingError> for PeculiarityError {
    fn from(e: RingError) -> Self {
        match e {
            RingError::InvalidContext { r, mu } => PeculiarityError::MuOutOfRange { r, mu },
            RingError::NonIntegralCount { numerator, phi_r } => {
                PeculiarityError::NonIntegralResult { numerator, phi_r }
            }
            RingError::ProfileLengthMismatch { .. } => unreachable!("profiles built internally"),
        }
    }
}

/// Which route produced a table.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    BruteForce,
    ProfileEngine,
    ClosedForm,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::BruteForce => "brute_force",
            Method::ProfileEngine => "profile_engine",
            Method::ClosedForm => "closed_form",
        }
    }
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Which closed-form family produced a table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ClosedFormCase {
    /// `gcd(R, mu) = 1`: one orbit, constant value `C(R-1, mu-1) / mu`.
    Coprime,
    Mu3D3,
    Mu4D2,
    Mu5D5,
    Mu6D2,
    Mu6D3,
    Mu7D7,
    Mu8D2,
    Mu9D3,
    /// `mu = 4`, `4 | R`: the three-orbit family.
    Mu4D4,
}

impl ClosedFormCase {
    pub fn as_str(self) -> &'static str {
        match self {
            ClosedFormCase::Coprime => "coprime",
            ClosedFormCase::Mu3D3 => "mu3_d3",
            ClosedFormCase::Mu4D2 => "mu4_d2",
            ClosedFormCase::Mu5D5 => "mu5_d5",
            ClosedFormCase::Mu6D2 => "mu6_d2",
            ClosedFormCase::Mu6D3 => "mu6_d3",
            ClosedFormCase::Mu7D7 => "mu7_d7",
            ClosedFormCase::Mu8D2 => "mu8_d2",
            ClosedFormCase::Mu9D3 => "mu9_d3",
            ClosedFormCase::Mu4D4 => "mu4_d4",
        }
    }
}

impl std::fmt::Display for ClosedFormCase {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Exact values `P+(lambda)` for every `lambda` in `Z_R`, with provenance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeculiarityTable {
    ctx: RingContext,
    values: Vec<BigUint>,
    method: Method,
    closed_form_case: Option<ClosedFormCase>,
}

impl PeculiarityTable {
    pub fn ctx(&self) -> &RingContext {
        &self.ctx
    }

    pub fn values(&self) -> &[BigUint] {
        &self.values
    }

    pub fn value(&self, lambda: u64) -> &BigUint {
        &self.values[(lambda % self.ctx.r()) as usize]
    }

    pub fn method(&self) -> Method {
        self.method
    }

    pub fn closed_form_case(&self) -> Option<ClosedFormCase> {
        self.closed_form_case
    }

    /// Total over all `lambda`; always `C(R, mu)`.
    pub fn mass(&self) -> BigUint {
        self.values.iter().sum()
    }

    pub fn is_uniform(&self) -> bool {
        self.values.iter().all(|v| *v == self.values[0])
    }

    /// `P+(lambda_1) - P+(lambda_2)`, signed.
    pub fn delta(&self, lambda_1: u64, lambda_2: u64) -> BigInt {
        BigInt::from(self.value(lambda_1).clone()) - BigInt::from(self.value(lambda_2).clone())
    }
}

/// Exhaustive table: enumerate every `mu`-subset of `Z_R` once and bucket by
/// sum. The enumeration order is lexicographic on the subsets, split across
/// threads by first element; the per-bucket totals are order-independent.
pub fn brute_force_table(r: u64, mu: u64, budget: u64) -> Result<PeculiarityTable, PeculiarityError> {
    let ctx = RingContext::new(r, mu)?;
    let cost = binomial_cost(r, mu);
    if cost > u128::from(budget) {
        return Err(PeculiarityError::BudgetExceeded { cost, budget });
    }
    let r_us = r as usize;
    let mu_us = mu as usize;
    let counts = (0..=r_us - mu_us)
        .into_par_iter()
        .map(|first| {
            let mut local = vec![0u64; r_us];
            count_sums(first + 1, mu_us - 1, first as u64, &mut local, r_us);
            local
        })
        .reduce(
            || vec![0u64; r_us],
            |mut a, b| {
                for (x, y) in a.iter_mut().zip(b) {
                    *x += y;
                }
                a
            },
        );
    Ok(PeculiarityTable {
        ctx,
        values: counts.into_iter().map(BigUint::from).collect(),
        method: Method::BruteForce,
        closed_form_case: None,
    })
}

fn count_sums(start: usize, remaining: usize, sum: u64, counts: &mut [u64], r: usize) {
    if remaining == 0 {
        counts[(sum % r as u64) as usize] += 1;
        return;
    }
    for v in start..=r - remaining {
        count_sums(v + 1, remaining - 1, sum + v as u64, counts, r);
    }
}

/// Single brute-force value; runs the full enumeration.
pub fn sum_peculiarity_bruteforce(
    r: u64,
    mu: u64,
    lambda: u64,
    budget: u64,
) -> Result<BigUint, PeculiarityError> {
    if lambda >= r {
        return Err(PeculiarityError::LambdaOutOfRange { lambda, r });
    }
    Ok(brute_force_table(r, mu, budget)?.value(lambda).clone())
}

/// Profile-engine value for a single `lambda`.
///
/// `P+` is constant on the residue class of `lambda` mod `D` (translating a
/// subset by `u` shifts its sum by `u*mu`, and the multiples of `mu` generate
/// exactly the multiples of `D`), so the class total
/// `sum_profiles prod_xi C(Phi_R, N_xi)` splits evenly over the `Phi_R`
/// class members.
pub fn sum_peculiarity_profile(
    ctx: &RingContext,
    lambda: u64,
) -> Result<BigUint, PeculiarityError> {
    if lambda >= ctx.r() {
        return Err(PeculiarityError::LambdaOutOfRange {
            lambda,
            r: ctx.r(),
        });
    }
    let mut class_total = BigUint::zero();
    for profile in enumerate_profiles(ctx, lambda % ctx.gcd()) {
        class_total += profile_subset_count(ctx, &profile);
    }
    exact_div(&class_total, ctx.phi_r()).ok_or(PeculiarityError::NonIntegralResult {
        numerator: class_total,
        phi_r: ctx.phi_r(),
    })
}

/// Full table via the profile engine; the production route.
pub fn profile_table(ctx: &RingContext) -> Result<PeculiarityTable, PeculiarityError> {
    let mut per_class = Vec::with_capacity(ctx.gcd() as usize);
    for j in 0..ctx.gcd() {
        per_class.push(sum_peculiarity_profile(ctx, j)?);
    }
    let values = (0..ctx.r())
        .map(|lambda| per_class[(lambda % ctx.gcd()) as usize].clone())
        .collect();
    Ok(PeculiarityTable {
        ctx: *ctx,
        values,
        method: Method::ProfileEngine,
        closed_form_case: None,
    })
}

/// Closed-form table when `(R, mu)` falls in a solved family, else `None`.
pub fn sum_peculiarity_closed_form(ctx: &RingContext) -> Option<PeculiarityTable> {
    let r = ctx.r();
    let mu = ctx.mu();
    let d = ctx.gcd();

    let exact = |n: BigInt, den: u64| -> BigUint {
        let (q, rem) = num_integer::Integer::div_rem(&n, &BigInt::from(den));
        assert!(rem.is_zero() && q >= BigInt::zero(), "closed form is integral");
        q.to_biguint().unwrap()
    };
    let b = |n: u64, k: u64| BigInt::from(binomial(n, k));

    let (case, by_residue): (ClosedFormCase, Vec<BigUint>) = if d == 1 {
        let v = exact(b(r - 1, mu - 1), mu);
        (ClosedFormCase::Coprime, vec![v])
    } else {
        match (mu, d) {
            (3, 3) => {
                let core = exact(b(r - 1, 2) - 1, 3);
                let p0 = core.clone() + 1u32;
                (ClosedFormCase::Mu3D3, vec![p0, core.clone(), core])
            }
            (4, 2) => {
                let half = BigInt::from((r - 2) / 2);
                let p0 = exact(b(r - 1, 3) + &half, 4);
                let p1 = exact(b(r - 1, 3) - &half, 4);
                (ClosedFormCase::Mu4D2, vec![p0, p1])
            }
            (4, 4) => {
                let p0 = exact(b(r - 1, 3) + BigInt::from((r - 6) / 2), 4);
                let p1 = exact(b(r - 1, 3) - BigInt::from((r - 2) / 2), 4);
                let p2 = exact(b(r - 1, 3) + BigInt::from((r + 2) / 2), 4);
                (ClosedFormCase::Mu4D4, vec![p0, p1.clone(), p2, p1])
            }
            (5, 5) => {
                let core = exact(b(r - 1, 4) - 1, 5);
                let p0 = core.clone() + 1u32;
                (
                    ClosedFormCase::Mu5D5,
                    vec![p0, core.clone(), core.clone(), core.clone(), core],
                )
            }
            (6, 2) => {
                let corr = b(r / 2 - 1, 2);
                let p0 = exact(b(r - 1, 5) - &corr, 6);
                let p1 = exact(b(r - 1, 5) + &corr, 6);
                (ClosedFormCase::Mu6D2, vec![p0, p1])
            }
            (6, 3) => {
                let third = BigInt::from((r - 3) / 3);
                let p0 = exact(b(r - 1, 5) * 3 + &third * 6, 18);
                let p1 = exact(b(r - 1, 5) * 3 - &third * 3, 18);
                (ClosedFormCase::Mu6D3, vec![p0, p1.clone(), p1])
            }
            (7, 7) => {
                let core = exact(b(r - 1, 6) - 1, 7);
                let p0 = core.clone() + 1u32;
                let mut v = vec![core; 7];
                v[0] = p0;
                (ClosedFormCase::Mu7D7, v)
            }
            (8, 2) => {
                let corr = b(r / 2 - 1, 3);
                let p0 = exact(b(r - 1, 7) + &corr, 8);
                let p1 = exact(b(r - 1, 7) - &corr, 8);
                (ClosedFormCase::Mu8D2, vec![p0, p1])
            }
            (9, 3) => {
                let corr = b(r / 3 - 1, 2);
                let p0 = exact(b(r - 1, 8) + &corr * 2, 9);
                let p1 = exact(b(r - 1, 8) - &corr, 9);
                (ClosedFormCase::Mu9D3, vec![p0, p1.clone(), p1])
            }
            _ => return None,
        }
    };

    let values = (0..r)
        .map(|lambda| by_residue[(lambda % d) as usize].clone())
        .collect();
    Some(PeculiarityTable {
        ctx: *ctx,
        values,
        method: Method::ClosedForm,
        closed_form_case: Some(case),
    })
}

/// The result of running every applicable route and cross-checking them.
#[derive(Debug, Clone)]
pub struct Reconciliation {
    /// The profile-engine table, the production route.
    pub table: PeculiarityTable,
    pub brute_table: PeculiarityTable,
    pub closed_table: Option<PeculiarityTable>,
    /// `P+(0) - P+(1)`.
    pub delta_01: BigInt,
    /// `P+(0) - P+(2)`; `None` when `R < 3`.
    pub delta_02: Option<BigInt>,
}

impl Reconciliation {
    pub fn routes(&self) -> Vec<Method> {
        let mut routes = vec![Method::BruteForce, Method::ProfileEngine];
        if self.closed_table.is_some() {
            routes.push(Method::ClosedForm);
        }
        routes
    }
}

fn compare_tables(a: &PeculiarityTable, b: &PeculiarityTable) -> Result<(), PeculiarityError> {
    for (lambda, (va, vb)) in a.values().iter().zip(b.values()).enumerate() {
        if va != vb {
            return Err(PeculiarityError::RouteMismatch {
                lambda: lambda as u64,
                method_a: a.method(),
                value_a: va.clone(),
                method_b: b.method(),
                value_b: vb.clone(),
            });
        }
    }
    Ok(())
}

/// Run brute force, the profile engine, and (when covered) the closed form,
/// and require exact agreement everywhere.
pub fn reconcile(r: u64, mu: u64, budget: u64) -> Result<Reconciliation, PeculiarityError> {
    let ctx = RingContext::new(r, mu)?;
    let brute_table = brute_force_table(r, mu, budget)?;
    let table = profile_table(&ctx)?;
    compare_tables(&brute_table, &table)?;
    let closed_table = sum_peculiarity_closed_form(&ctx);
    if let Some(closed) = &closed_table {
        compare_tables(&table, closed)?;
    }
    let delta_01 = table.delta(0, 1);
    let delta_02 = (r >= 3).then(|| table.delta(0, 2));
    Ok(Reconciliation {
        table,
        brute_table,
        closed_table,
        delta_01,
        delta_02,
    })
}

/// [`reconcile`] with the default budget.
pub fn reconcile_default(r: u64, mu: u64) -> Result<Reconciliation, PeculiarityError> {
    reconcile(r, mu, DEFAULT_BRUTE_FORCE_BUDGET)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::DEFAULT_BRUTE_FORCE_BUDGET as BUDGET;

    fn ctx(r: u64, mu: u64) -> RingContext {
        RingContext::new(r, mu).unwrap()
    }

    #[test]
    fn tiny_hand_enumerable_cases() {
        // Z_4, pairs: only {1, 3} sums to 0.
        assert_eq!(
            sum_peculiarity_bruteforce(4, 2, 0, BUDGET).unwrap(),
            BigUint::from(1u32)
        );
        // Singletons: exactly one per lambda.
        for r in 2..=8u64 {
            let t = brute_force_table(r, 1, BUDGET).unwrap();
            assert!(t.values().iter().all(|v| *v == BigUint::from(1u32)));
        }
    }

    #[test]
    fn brute_force_examples() {
        assert_eq!(
            sum_peculiarity_bruteforce(10, 4, 0, BUDGET).unwrap(),
            BigUint::from(22u32)
        );
        assert_eq!(
            sum_peculiarity_bruteforce(10, 4, 1, BUDGET).unwrap(),
            BigUint::from(20u32)
        );
    }

    #[test]
    fn argument_errors() {
        assert!(matches!(
            brute_force_table(10, 11, BUDGET),
            Err(PeculiarityError::MuOutOfRange { r: 10, mu: 11 })
        ));
        assert!(matches!(
            sum_peculiarity_bruteforce(10, 4, 10, BUDGET),
            Err(PeculiarityError::LambdaOutOfRange { lambda: 10, r: 10 })
        ));
        assert!(matches!(
            brute_force_table(30, 15, BUDGET),
            Err(PeculiarityError::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn profile_engine_examples() {
        assert_eq!(
            sum_peculiarity_profile(&ctx(10, 4), 1).unwrap(),
            BigUint::from(20u32)
        );
        assert_eq!(
            sum_peculiarity_profile(&ctx(9, 3), 0).unwrap(),
            BigUint::from(10u32)
        );
        assert_eq!(
            sum_peculiarity_profile(&ctx(7, 3), 5).unwrap(),
            BigUint::from(5u32)
        );
    }

    #[test]
    fn closed_form_examples() {
        let t = sum_peculiarity_closed_form(&ctx(6, 3)).unwrap();
        assert_eq!(t.closed_form_case(), Some(ClosedFormCase::Mu3D3));
        for lambda in 0..6 {
            let expected = if lambda % 3 == 0 { 4u32 } else { 3u32 };
            assert_eq!(*t.value(lambda), BigUint::from(expected), "lambda={lambda}");
        }
        assert_eq!(t.mass(), binomial(6, 3));

        let t = sum_peculiarity_closed_form(&ctx(12, 4)).unwrap();
        assert_eq!(t.closed_form_case(), Some(ClosedFormCase::Mu4D4));
        for lambda in 0..12u64 {
            let expected = match lambda % 4 {
                0 => 42u32,
                2 => 43,
                _ => 40,
            };
            assert_eq!(*t.value(lambda), BigUint::from(expected), "lambda={lambda}");
        }
        assert_eq!(t.mass(), binomial(12, 4));

        let t = sum_peculiarity_closed_form(&ctx(10, 3)).unwrap();
        assert_eq!(t.closed_form_case(), Some(ClosedFormCase::Coprime));
        assert!(t.is_uniform());
        assert_eq!(*t.value(7), BigUint::from(12u32));
    }

    #[test]
    fn closed_form_coverage() {
        // Solved families are covered, everything else reports "not covered".
        assert!(sum_peculiarity_closed_form(&ctx(10, 4)).is_some());
        assert!(sum_peculiarity_closed_form(&ctx(14, 8)).is_some());
        assert!(sum_peculiarity_closed_form(&ctx(15, 6)).is_some());
        assert!(sum_peculiarity_closed_form(&ctx(12, 9)).is_some());
        assert_eq!(sum_peculiarity_closed_form(&ctx(12, 6)), None); // gcd 6
        assert_eq!(sum_peculiarity_closed_form(&ctx(16, 8)), None); // gcd 8
        assert_eq!(sum_peculiarity_closed_form(&ctx(22, 11)), None); // mu 11
        assert_eq!(sum_peculiarity_closed_form(&ctx(18, 9)), None); // gcd 9
    }

    #[test]
    fn reconcile_examples() {
        let rec = reconcile_default(10, 4).unwrap();
        assert_eq!(rec.delta_01, BigInt::from(2));
        assert_eq!(rec.routes().len(), 3);
        assert_eq!(
            rec.closed_table.unwrap().closed_form_case(),
            Some(ClosedFormCase::Mu4D2)
        );

        let rec = reconcile_default(9, 3).unwrap();
        assert_eq!(rec.delta_01, BigInt::from(1));

        // Delta here is C(R/2 - 1, 3) / ... = C(6, 3) / 4 = 5.
        let rec = reconcile_default(14, 8).unwrap();
        assert_eq!(rec.delta_01, BigInt::from(5));
    }

    #[test]
    fn route_mismatch_reporting() {
        let brute = brute_force_table(8, 3, BUDGET).unwrap();
        let mut forged = brute.clone();
        forged.values[5] += 1u32;
        forged.method = Method::ProfileEngine;
        let err = compare_tables(&brute, &forged).unwrap_err();
        assert!(matches!(
            err,
            PeculiarityError::RouteMismatch { lambda: 5, .. }
        ));
    }

    #[test]
    fn coprime_tables_are_uniform_and_integral() {
        for r in 4..=20u64 {
            for mu in 2..r {
                if num_integer::gcd(r, mu) == 1 {
                    let t = profile_table(&ctx(r, mu)).unwrap();
                    assert!(t.is_uniform(), "R={r} mu={mu}");
                    assert_eq!(
                        *t.value(0),
                        exact_div(&binomial(r - 1, mu - 1), mu).unwrap(),
                        "R={r} mu={mu}"
                    );
                }
            }
        }
    }

    #[test]
    fn negation_symmetry_and_mass() {
        for r in 4..=18u64 {
            for mu in 2..r.min(9) {
                let t = brute_force_table(r, mu, BUDGET).unwrap();
                assert_eq!(t.mass(), binomial(r, mu), "mass R={r} mu={mu}");
                for lambda in 0..r {
                    assert_eq!(
                        t.value(lambda),
                        t.value((r - lambda) % r),
                        "negation R={r} mu={mu} lambda={lambda}"
                    );
                }
            }
        }
    }

    #[test]
    fn values_constant_on_full_orbits() {
        use crate::ring_orbits::orbit_partition;
        for r in 4..=18u64 {
            for mu in 2..r.min(9) {
                let c = ctx(r, mu);
                let t = brute_force_table(r, mu, BUDGET).unwrap();
                for orbit in orbit_partition(&c).full_orbits() {
                    let first = t.value(orbit[0]);
                    assert!(
                        orbit.iter().all(|&l| t.value(l) == first),
                        "R={r} mu={mu} orbit={orbit:?}"
                    );
                }
            }
        }
    }

    #[test]
    fn translation_dilation_invariance() {
        for r in 4..=20u64 {
            for mu in 2..r.min(8) {
                let c = ctx(r, mu);
                let t = brute_force_table(r, mu, BUDGET).unwrap();
                for l in c.units() {
                    for u in 0..r {
                        for lambda in 0..r {
                            let image = (lambda * l + u * mu) % r;
                            assert_eq!(
                                t.value(lambda),
                                t.value(image),
                                "R={r} mu={mu} l={l} u={u} lambda={lambda}"
                            );
                        }
                    }
                }
            }
        }
    }
}
