//! Arithmetic in small finite fields `F_q`, primitive elements, discrete
//! logarithms, and the brute-force count of `mu`-subsets of `F_q*` with a
//! prescribed product.
//!
//! Elements are carried as canonical integer codes. For a prime field the
//! code is the residue mod `p`; for `F_{p^m}` with coefficient vector
//! `(c_0, ..., c_{m-1})` (where `c_i` multiplies `x^i`) the code is
//! `sum c_i p^i`. The canonical element ordering is the ordering of codes,
//! i.e. lexicographic on coefficient vectors read from the highest degree
//! down. Multiplication is plain polynomial arithmetic modulo the field
//! modulus, not table-driven, so the discrete-log table stays an independent
//! artifact that the log/product identities can be tested against.

use num_bigint::BigUint;
use thiserror::Error;

use crate::combinatorics::binomial_cost;
use crate::DEFAULT_BRUTE_FORCE_BUDGET;

/// Largest field order `make_field` accepts. The dlog table is dense, so the
/// bound keeps construction trivially cheap.
pub const MAX_FIELD_ORDER: u64 = 1 << 16;

const MAX_EXTENSION_DEGREE: usize = 16;

/// Monic irreducible moduli for the built-in extension fields, coefficients
/// listed from the constant term up, leading coefficient included.
const BUILTIN_MODULI: &[(u32, &[u32])] = &[
    (4, &[1, 1, 1]),
    (8, &[1, 1, 0, 1]),
    (9, &[2, 2, 1]),
    (16, &[1, 1, 0, 0, 1]),
    (25, &[2, 4, 1]),
    (27, &[1, 2, 0, 1]),
    (32, &[1, 0, 1, 0, 0, 1]),
    (49, &[3, 6, 1]),
    (64, &[1, 1, 0, 1, 1, 0, 1]),
    (81, &[2, 0, 0, 2, 1]),
    (121, &[2, 7, 1]),
    (125, &[3, 3, 0, 1]),
    (128, &[1, 1, 0, 0, 0, 0, 0, 1]),
    (169, &[2, 12, 1]),
    (243, &[1, 2, 0, 0, 0, 1]),
    (256, &[1, 0, 1, 1, 1, 0, 0, 0, 1]),
];

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("field order {q} exceeds the supported bound {bound}")]
    ExceedsBound { q: u64, bound: u64 },
    #[error("no built-in modulus for q = {q}; supply an irreducible polynomial")]
    NoModulusAvailable { q: u64 },
    #[error("invalid modulus: {0}")]
    InvalidModulus(String),
    #[error("element with code {0} is not a primitive element")]
    NotPrimitive(u32),
    #[error("discrete logarithm of zero is undefined")]
    LogOfZero,
    #[error("mu = {mu} out of range; need 1 <= mu < q - 1 = {limit}")]
    MuOutOfRange { mu: u64, limit: u64 },
    #[error("enumeration needs {cost} subset visits, over budget {budget}")]
    BudgetExceeded { cost: u128, budget: u64 },
}

/// An element of a concrete finite field, identified by its canonical code.
///
/// The code alone does not determine arithmetic; all operations go through
/// the [`FieldSpec`] the element belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FieldElement(u32);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    pub fn code(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl std::fmt::Display for FieldElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A concrete finite field `F_q` with a fixed primitive element and a full
/// discrete-log table.
///
/// Immutable after construction; safe to share across threads.
#[derive(Debug, Clone)]
pub struct FieldSpec {
    q: u32,
    p: u32,
    m: u32,
    /// Monic irreducible modulus, constant term first; empty for prime fields.
    modulus: Vec<u32>,
    beta: FieldElement,
    /// `dlog[code] = lambda` with `beta^lambda = code`; `dlog[0]` is a sentinel.
    dlog: Vec<u32>,
    /// `exp[lambda] = beta^lambda`, length `q - 1`.
    exp: Vec<FieldElement>,
}

/// Trial-division primality; adequate for the supported field orders.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Decompose `q = p^m` with `p` prime, or `None` when `q` is not a prime power.
pub fn prime_power_decompose(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2u64;
    while p * p <= q {
        if q.is_multiple_of(p) {
            let mut rest = q;
            let mut m = 0u32;
            while rest.is_multiple_of(p) {
                rest /= p;
                m += 1;
            }
            return (rest == 1).then_some((p, m));
        }
        p += 1;
    }
    Some((q, 1))
}

/// Build `F_q` with the built-in modulus (when `q` is a proper prime power)
/// and the smallest primitive element under the canonical element ordering.
pub fn make_field(q: u64) -> Result<FieldSpec, FieldError> {
    let (p, m) = prime_power_decompose(q).ok_or(FieldError::NotPrimePower(q))?;
    if q > MAX_FIELD_ORDER {
        return Err(FieldError::ExceedsBound {
            q,
            bound: MAX_FIELD_ORDER,
        });
    }
    if m == 1 {
        return FieldSpec::build(p as u32, 1, Vec::new(), None);
    }
    let modulus = BUILTIN_MODULI
        .iter()
        .find(|(bq, _)| u64::from(*bq) == q)
        .map(|(_, coeffs)| coeffs.to_vec())
        .ok_or(FieldError::NoModulusAvailable { q })?;
    FieldSpec::build(p as u32, m, modulus, None)
}

/// Build `F_q` with a caller-supplied monic irreducible modulus (constant
/// term first, leading coefficient included).
pub fn make_field_with_modulus(q: u64, modulus: &[u32]) -> Result<FieldSpec, FieldError> {
    let (p, m) = prime_power_decompose(q).ok_or(FieldError::NotPrimePower(q))?;
    if q > MAX_FIELD_ORDER {
        return Err(FieldError::ExceedsBound {
            q,
            bound: MAX_FIELD_ORDER,
        });
    }
    FieldSpec::build(p as u32, m, modulus.to_vec(), None)
}

/// Build `F_q` around a specific primitive element instead of the smallest
/// one. The results of everything downstream must not depend on this choice;
/// tests use it to confirm that.
pub fn make_field_with_beta(q: u64, beta_code: u32) -> Result<FieldSpec, FieldError> {
    let (p, m) = prime_power_decompose(q).ok_or(FieldError::NotPrimePower(q))?;
    if q > MAX_FIELD_ORDER {
        return Err(FieldError::ExceedsBound {
            q,
            bound: MAX_FIELD_ORDER,
        });
    }
    let modulus = if m == 1 {
        Vec::new()
    } else {
        BUILTIN_MODULI
            .iter()
            .find(|(bq, _)| u64::from(*bq) == q)
            .map(|(_, coeffs)| coeffs.to_vec())
            .ok_or(FieldError::NoModulusAvailable { q })?
    };
    FieldSpec::build(p as u32, m, modulus, Some(beta_code))
}

impl FieldSpec {
    fn build(
        p: u32,
        m: u32,
        modulus: Vec<u32>,
        requested_beta: Option<u32>,
    ) -> Result<Self, FieldError> {
        let q = (u64::from(p)).pow(m) as u32;
        if m > 1 {
            if modulus.len() != m as usize + 1 {
                return Err(FieldError::InvalidModulus(format!(
                    "need degree {m}, got {} coefficients",
                    modulus.len()
                )));
            }
            if modulus[m as usize] != 1 {
                return Err(FieldError::InvalidModulus("not monic".into()));
            }
            if modulus.iter().any(|&c| c >= p) {
                return Err(FieldError::InvalidModulus(format!(
                    "coefficients must be reduced mod {p}"
                )));
            }
        }
        let mut fs = FieldSpec {
            q,
            p,
            m,
            modulus: if m == 1 { Vec::new() } else { modulus },
            beta: FieldElement::ONE,
            dlog: Vec::new(),
            exp: Vec::new(),
        };
        let beta = match requested_beta {
            Some(code) => {
                if code == 0 || code >= q || fs.multiplicative_order(FieldElement(code)) != q - 1 {
                    return Err(FieldError::NotPrimitive(code));
                }
                FieldElement(code)
            }
            None => fs.smallest_primitive().ok_or_else(|| {
                FieldError::InvalidModulus("no element of order q - 1; modulus is reducible".into())
            })?,
        };
        fs.beta = beta;

        let n = q as usize;
        let mut dlog = vec![u32::MAX; n];
        let mut exp = Vec::with_capacity(n - 1);
        let mut x = FieldElement::ONE;
        for lambda in 0..q - 1 {
            if dlog[x.0 as usize] != u32::MAX {
                return Err(FieldError::InvalidModulus(
                    "power table revisits an element; modulus is reducible".into(),
                ));
            }
            dlog[x.0 as usize] = lambda;
            exp.push(x);
            x = fs.mul(x, beta);
        }
        if x != FieldElement::ONE {
            return Err(FieldError::NotPrimitive(beta.0));
        }
        fs.dlog = dlog;
        fs.exp = exp;
        Ok(fs)
    }

    fn smallest_primitive(&self) -> Option<FieldElement> {
        (1..self.q)
            .map(FieldElement)
            .find(|&a| self.multiplicative_order(a) == self.q - 1)
    }

    /// Order of `a` in the multiplicative monoid; `0` when the powers of `a`
    /// never return to one (possible only with a reducible modulus).
    fn multiplicative_order(&self, a: FieldElement) -> u32 {
        if a.is_zero() {
            return 0;
        }
        let mut x = a;
        let mut ord = 1u32;
        while x != FieldElement::ONE {
            x = self.mul(x, a);
            ord += 1;
            if ord > self.q - 1 {
                return 0;
            }
        }
        ord
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn extension_degree(&self) -> u32 {
        self.m
    }

    /// The modulus polynomial (constant term first); empty for prime fields.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn beta(&self) -> FieldElement {
        self.beta
    }

    /// The element with the given canonical code.
    ///
    /// Panics when `code >= q`; use [`FieldSpec::checked_element`] for
    /// untrusted input.
    pub fn element(&self, code: u32) -> FieldElement {
        assert!(code < self.q, "code {code} out of range for F_{}", self.q);
        FieldElement(code)
    }

    pub fn checked_element(&self, code: u32) -> Option<FieldElement> {
        (code < self.q).then_some(FieldElement(code))
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.q).map(FieldElement)
    }

    pub fn nonzero_elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (1..self.q).map(FieldElement)
    }

    fn digits(&self, a: FieldElement) -> [u64; MAX_EXTENSION_DEGREE] {
        let mut out = [0u64; MAX_EXTENSION_DEGREE];
        let mut rest = a.0;
        for slot in out.iter_mut().take(self.m as usize) {
            *slot = u64::from(rest % self.p);
            rest /= self.p;
        }
        out
    }

    fn encode(&self, digits: &[u64]) -> FieldElement {
        let mut code = 0u64;
        for &d in digits.iter().take(self.m as usize).rev() {
            code = code * u64::from(self.p) + d;
        }
        FieldElement(code as u32)
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if self.m == 1 {
            FieldElement((a.0 + b.0) % self.p)
        } else {
            let av = self.digits(a);
            let bv = self.digits(b);
            let mut out = [0u64; MAX_EXTENSION_DEGREE];
            for i in 0..self.m as usize {
                out[i] = (av[i] + bv[i]) % u64::from(self.p);
            }
            self.encode(&out)
        }
    }

    pub fn neg(&self, a: FieldElement) -> FieldElement {
        if self.m == 1 {
            FieldElement((self.p - a.0) % self.p)
        } else {
            let av = self.digits(a);
            let p = u64::from(self.p);
            let mut out = [0u64; MAX_EXTENSION_DEGREE];
            for i in 0..self.m as usize {
                out[i] = (p - av[i]) % p;
            }
            self.encode(&out)
        }
    }

    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if self.m == 1 {
            FieldElement(((u64::from(a.0) * u64::from(b.0)) % u64::from(self.p)) as u32)
        } else {
            let p = u64::from(self.p);
            let m = self.m as usize;
            let av = self.digits(a);
            let bv = self.digits(b);
            let mut prod = [0u64; 2 * MAX_EXTENSION_DEGREE];
            for i in 0..m {
                if av[i] == 0 {
                    continue;
                }
                for j in 0..m {
                    prod[i + j] += av[i] * bv[j];
                }
            }
            for v in prod.iter_mut() {
                *v %= p;
            }
            // Fold x^deg down using x^m = -(c_0 + c_1 x + ... + c_{m-1} x^{m-1}).
            for deg in (m..=2 * m - 2).rev() {
                let coef = prod[deg];
                if coef == 0 {
                    continue;
                }
                prod[deg] = 0;
                for j in 0..m {
                    let c = u64::from(self.modulus[j]);
                    if c != 0 {
                        let pos = deg - m + j;
                        prod[pos] = (prod[pos] + p - (coef * c) % p) % p;
                    }
                }
            }
            self.encode(&prod[..m])
        }
    }

    pub fn pow(&self, a: FieldElement, mut e: u64) -> FieldElement {
        let mut base = a;
        let mut acc = FieldElement::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement, FieldError> {
        if a.is_zero() {
            return Err(FieldError::LogOfZero);
        }
        Ok(self.pow(a, u64::from(self.q) - 2))
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement, FieldError> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// Discrete logarithm base `beta`: the `lambda` in `Z_{q-1}` with
    /// `beta^lambda = a`.
    pub fn dlog(&self, a: FieldElement) -> Result<u64, FieldError> {
        if a.is_zero() {
            return Err(FieldError::LogOfZero);
        }
        Ok(u64::from(self.dlog[a.0 as usize]))
    }

    /// `beta^lambda`, with the exponent reduced mod `q - 1`.
    pub fn element_from_dlog(&self, lambda: u64) -> FieldElement {
        self.exp[(lambda % (u64::from(self.q) - 1)) as usize]
    }

    /// Number of `mu`-subsets of `F_q*` (distinct elements) whose product is
    /// `gamma`, by exhaustive enumeration of all `C(q-1, mu)` subsets in
    /// lexicographic combination order.
    pub fn product_peculiarity_bruteforce(
        &self,
        mu: u64,
        gamma: FieldElement,
    ) -> Result<BigUint, FieldError> {
        self.product_peculiarity_bruteforce_with_budget(mu, gamma, DEFAULT_BRUTE_FORCE_BUDGET)
    }

    pub fn product_peculiarity_bruteforce_with_budget(
        &self,
        mu: u64,
        gamma: FieldElement,
        budget: u64,
    ) -> Result<BigUint, FieldError> {
        let limit = u64::from(self.q) - 1;
        if mu == 0 || mu >= limit {
            return Err(FieldError::MuOutOfRange { mu, limit });
        }
        if gamma.is_zero() {
            return Err(FieldError::LogOfZero);
        }
        let cost = binomial_cost(limit, mu);
        if cost > u128::from(budget) {
            return Err(FieldError::BudgetExceeded { cost, budget });
        }
        let elems: Vec<FieldElement> = self.nonzero_elements().collect();
        let mut count = 0u64;
        self.count_products(&elems, 0, mu as usize, FieldElement::ONE, gamma, &mut count);
        Ok(BigUint::from(count))
    }

    fn count_products(
        &self,
        elems: &[FieldElement],
        start: usize,
        remaining: usize,
        acc: FieldElement,
        target: FieldElement,
        count: &mut u64,
    ) {
        if remaining == 0 {
            if acc == target {
                *count += 1;
            }
            return;
        }
        for i in start..=elems.len() - remaining {
            self.count_products(
                elems,
                i + 1,
                remaining - 1,
                self.mul(acc, elems[i]),
                target,
                count,
            );
        }
    }
}
