//! Exact arithmetic in a prime field `F_q` and its degree-`m` extension `F_{q^m}`.
//!
//! Elements of the extension are stored as coordinate vectors in the
//! polynomial basis `1, z, ..., z^{m-1}` where `z` is a root of the modulus.
//! The Frobenius powers `x^[i] = x^{q^i}` are F_q-linear maps, so each
//! [`FieldParams`] precomputes the m matrices of those maps once and
//! `frob_pow` is a single matrix-vector product.

use std::fmt;
use std::sync::Arc;

use rand::Rng;

use crate::error::{CodeError, Result};

/// Largest supported field size `q^m`. Keeps the exhaustive irreducibility
/// check at construction cheap.
pub const MAX_FIELD_SIZE: u64 = 1 << 20;

/// Built-in monic irreducible moduli (little-endian coefficients) for the
/// default constructors, keyed by `(q, m)`.
const DEFAULT_MODULI: &[(u32, usize, &[u32])] = &[
    (2, 1, &[0, 1]),
    (2, 2, &[1, 1, 1]),
    (2, 3, &[1, 1, 0, 1]),
    (2, 4, &[1, 1, 0, 0, 1]),
    (2, 5, &[1, 0, 1, 0, 0, 1]),
    (2, 6, &[1, 1, 0, 0, 0, 0, 1]),
    (2, 7, &[1, 1, 0, 0, 0, 0, 0, 1]),
    (2, 8, &[1, 1, 0, 1, 1, 0, 0, 0, 1]),
    (3, 1, &[0, 1]),
    (3, 2, &[1, 0, 1]),
    (3, 3, &[1, 2, 0, 1]),
    (3, 4, &[2, 1, 0, 0, 1]),
    (3, 5, &[1, 2, 0, 0, 0, 1]),
    (3, 6, &[2, 1, 0, 0, 0, 0, 1]),
    (3, 7, &[1, 0, 2, 0, 0, 0, 0, 1]),
    (3, 8, &[2, 0, 1, 0, 0, 0, 0, 0, 1]),
    (5, 1, &[0, 1]),
    (5, 2, &[2, 0, 1]),
    (5, 3, &[1, 1, 0, 1]),
    (5, 4, &[2, 0, 0, 0, 1]),
    (5, 5, &[1, 4, 0, 0, 0, 1]),
    (5, 6, &[2, 1, 0, 0, 0, 0, 1]),
    (5, 7, &[1, 1, 0, 0, 0, 0, 0, 1]),
    (5, 8, &[2, 0, 0, 0, 0, 0, 0, 0, 1]),
];

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= n as u64 {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Parameters of `F_{q^m}`: prime `q`, extension degree `m`, and a monic
/// degree-`m` irreducible modulus over `F_q`. Immutable after construction.
#[derive(Debug)]
pub struct FieldParams {
    q: u32,
    m: usize,
    /// Little-endian coefficients, length `m + 1`, leading coefficient 1.
    modulus: Vec<u32>,
    /// `frob_mats[i]` is the m x m matrix (row-major) of `x -> x^{q^i}`
    /// in the polynomial basis.
    frob_mats: Vec<Vec<u32>>,
}

impl PartialEq for FieldParams {
    fn eq(&self, other: &Self) -> bool {
        self.q == other.q && self.m == other.m && self.modulus == other.modulus
    }
}
impl Eq for FieldParams {}

impl FieldParams {
    /// Builds field parameters from an explicit modulus, validating that `q`
    /// is prime and the modulus is monic, degree `m`, and irreducible.
    pub fn new(q: u32, m: usize, modulus: Vec<u32>) -> Result<Arc<Self>> {
        if !is_prime(q) {
            return Err(CodeError::InvalidParameter(format!(
                "q = {q} is not prime"
            )));
        }
        if m == 0 {
            return Err(CodeError::InvalidParameter(
                "extension degree m must be at least 1".into(),
            ));
        }
        let mut size: u64 = 1;
        for _ in 0..m {
            size = size.saturating_mul(q as u64);
            if size > MAX_FIELD_SIZE {
                return Err(CodeError::InvalidParameter(format!(
                    "field size q^m exceeds supported maximum {MAX_FIELD_SIZE}"
                )));
            }
        }
        if modulus.len() != m + 1 {
            return Err(CodeError::InvalidParameter(format!(
                "modulus must have degree exactly {m} ({} coefficients)",
                m + 1
            )));
        }
        if modulus.iter().any(|&c| c >= q) {
            return Err(CodeError::InvalidParameter(
                "modulus coefficients must lie in [0, q)".into(),
            ));
        }
        if modulus[m] != 1 {
            return Err(CodeError::InvalidParameter("modulus must be monic".into()));
        }
        if m > 1 && !poly_is_irreducible(&modulus, q) {
            return Err(CodeError::InvalidParameter(
                "modulus is reducible over F_q".into(),
            ));
        }

        let mut params = FieldParams {
            q,
            m,
            modulus,
            frob_mats: Vec::new(),
        };
        params.frob_mats = params.build_frobenius_matrices();
        Ok(Arc::new(params))
    }

    /// Builds `F_{q^m}` using the built-in modulus table (q in {2,3,5}, m <= 8).
    pub fn with_default_modulus(q: u32, m: usize) -> Result<Arc<Self>> {
        let entry = DEFAULT_MODULI
            .iter()
            .find(|&&(tq, tm, _)| tq == q && tm == m)
            .ok_or_else(|| {
                CodeError::InvalidParameter(format!(
                    "no built-in modulus for q = {q}, m = {m}; supply one explicitly"
                ))
            })?;
        Self::new(q, m, entry.2.to_vec())
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn extension_degree(&self) -> usize {
        self.m
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// Field size `q^m`.
    pub fn size(&self) -> u64 {
        (self.q as u64).pow(self.m as u32)
    }

    pub fn zero(self: &Arc<Self>) -> FieldElement {
        FieldElement {
            coords: vec![0; self.m],
            params: Arc::clone(self),
        }
    }

    pub fn one(self: &Arc<Self>) -> FieldElement {
        self.basis_element(0)
    }

    /// The basis element `z^i`, `0 <= i < m`.
    pub fn basis_element(self: &Arc<Self>, i: usize) -> FieldElement {
        assert!(i < self.m, "basis index {i} out of range");
        let mut coords = vec![0; self.m];
        coords[i] = 1;
        FieldElement {
            coords,
            params: Arc::clone(self),
        }
    }

    pub fn element_from_coords(self: &Arc<Self>, coords: Vec<u32>) -> Result<FieldElement> {
        if coords.len() != self.m {
            return Err(CodeError::InvalidParameter(format!(
                "expected {} coordinates, got {}",
                self.m,
                coords.len()
            )));
        }
        if coords.iter().any(|&c| c >= self.q) {
            return Err(CodeError::InvalidParameter(
                "coordinates must lie in [0, q)".into(),
            ));
        }
        Ok(FieldElement {
            coords,
            params: Arc::clone(self),
        })
    }

    /// Decodes the canonical integer encoding: little-endian base `q`,
    /// `coords[0]` least significant.
    pub fn element_from_index(self: &Arc<Self>, index: u64) -> Result<FieldElement> {
        if index >= self.size() {
            return Err(CodeError::InvalidParameter(format!(
                "element index {index} out of range [0, {})",
                self.size()
            )));
        }
        let mut coords = vec![0; self.m];
        let mut rest = index;
        for c in coords.iter_mut() {
            *c = (rest % self.q as u64) as u32;
            rest /= self.q as u64;
        }
        Ok(FieldElement {
            coords,
            params: Arc::clone(self),
        })
    }

    /// All `q^m` elements in index order.
    pub fn iter_elements(self: &Arc<Self>) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.size()).map(move |i| self.element_from_index(i).expect("index in range"))
    }

    pub fn random_element(self: &Arc<Self>, rng: &mut impl Rng) -> FieldElement {
        let coords = (0..self.m).map(|_| rng.gen_range(0..self.q)).collect();
        FieldElement {
            coords,
            params: Arc::clone(self),
        }
    }

    fn build_frobenius_matrices(&self) -> Vec<Vec<u32>> {
        let m = self.m;
        // Column j of the q-power matrix holds the coordinates of (z^j)^q.
        let mut frob1 = vec![0u32; m * m];
        for j in 0..m {
            let mut basis = vec![0u32; m];
            basis[j] = 1;
            let img = self.pow_coords(&basis, self.q as u64);
            for (i, &c) in img.iter().enumerate() {
                frob1[i * m + j] = c;
            }
        }
        let mut mats = Vec::with_capacity(m);
        let mut ident = vec![0u32; m * m];
        for i in 0..m {
            ident[i * m + i] = 1;
        }
        mats.push(ident);
        for i in 1..m {
            mats.push(self.mat_mul(&frob1, &mats[i - 1]));
        }
        mats
    }

    fn mat_mul(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        let m = self.m;
        let q = self.q as u64;
        let mut out = vec![0u32; m * m];
        for i in 0..m {
            for k in 0..m {
                let aik = a[i * m + k] as u64;
                if aik == 0 {
                    continue;
                }
                for j in 0..m {
                    let v = (out[i * m + j] as u64 + aik * b[k * m + j] as u64) % q;
                    out[i * m + j] = v as u32;
                }
            }
        }
        out
    }

    fn apply_frob_mat(&self, i: usize, coords: &[u32]) -> Vec<u32> {
        let m = self.m;
        let q = self.q as u64;
        let mat = &self.frob_mats[i];
        let mut out = vec![0u32; m];
        for (r, o) in out.iter_mut().enumerate() {
            let mut acc = 0u64;
            for (c, &x) in coords.iter().enumerate() {
                acc += mat[r * m + c] as u64 * x as u64;
            }
            *o = (acc % q) as u32;
        }
        out
    }

    // -- coordinate-level arithmetic ------------------------------------

    fn add_coords(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        a.iter().zip(b).map(|(&x, &y)| (x + y) % self.q).collect()
    }

    fn neg_coords(&self, a: &[u32]) -> Vec<u32> {
        a.iter().map(|&x| (self.q - x) % self.q).collect()
    }

    fn mul_coords(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        let m = self.m;
        let q = self.q as u64;
        let mut prod = vec![0u64; 2 * m - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u64 * y as u64) % q;
            }
        }
        // Reduce by the monic modulus: z^m = -(modulus tail).
        for d in (m..2 * m - 1).rev() {
            let c = prod[d];
            if c == 0 {
                continue;
            }
            prod[d] = 0;
            for (j, &mc) in self.modulus.iter().take(m).enumerate() {
                let sub = c * mc as u64 % q;
                prod[d - m + j] = (prod[d - m + j] + q - sub) % q;
            }
        }
        prod[..m].iter().map(|&x| x as u32).collect()
    }

    fn pow_coords(&self, a: &[u32], mut e: u64) -> Vec<u32> {
        let mut base = a.to_vec();
        let mut acc = vec![0u32; self.m];
        acc[0] = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_coords(&acc, &base);
            }
            base = self.mul_coords(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse by the extended Euclidean algorithm on
    /// coordinate polynomials against the modulus.
    fn inv_coords(&self, a: &[u32]) -> Result<Vec<u32>> {
        if a.iter().all(|&c| c == 0) {
            return Err(CodeError::DivisionByZero);
        }
        let q = self.q;
        // (r0, s0) and (r1, s1) with invariant r = s * a (mod modulus).
        let mut r0: Vec<u32> = self.modulus.clone();
        let mut r1: Vec<u32> = a.to_vec();
        let mut s0: Vec<u32> = vec![0];
        let mut s1: Vec<u32> = vec![1];
        while !poly_is_zero(&r1) {
            let (quot, rem) = poly_divmod(&r0, &r1, q);
            let s2 = poly_sub(&s0, &poly_mul(&quot, &s1, q), q);
            r0 = r1;
            r1 = rem;
            s0 = s1;
            s1 = s2;
        }
        // r0 = gcd, a nonzero constant since the modulus is irreducible.
        let g = *r0.first().ok_or(CodeError::DivisionByZero)?;
        debug_assert_eq!(poly_deg(&r0), Some(0));
        let ginv = int_inv_mod(g, q);
        let mut out: Vec<u32> = s0.iter().map(|&c| (c as u64 * ginv as u64 % q as u64) as u32).collect();
        out.resize(self.m, 0);
        Ok(out)
    }
}

/// An element of `F_{q^m}` in polynomial-basis coordinates. Value-semantic
/// and immutable; equality is coordinate-wise within the same field.
#[derive(Clone, PartialEq, Eq)]
pub struct FieldElement {
    coords: Vec<u32>,
    params: Arc<FieldParams>,
}

impl std::hash::Hash for FieldElement {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.params.q.hash(state);
        self.params.modulus.hash(state);
        self.coords.hash(state);
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldElement({})", self.to_index())
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_index())
    }
}

impl FieldElement {
    pub fn params(&self) -> &Arc<FieldParams> {
        &self.params
    }

    pub fn coords(&self) -> &[u32] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    /// Canonical integer encoding in `[0, q^m)`: little-endian base `q`.
    pub fn to_index(&self) -> u64 {
        let q = self.params.q as u64;
        self.coords
            .iter()
            .rev()
            .fold(0u64, |acc, &c| acc * q + c as u64)
    }

    fn ensure_same_params(&self, other: &FieldElement) -> Result<()> {
        if Arc::ptr_eq(&self.params, &other.params) || self.params == other.params {
            Ok(())
        } else {
            Err(CodeError::ParamsMismatch)
        }
    }

    pub fn add(&self, other: &FieldElement) -> Result<FieldElement> {
        self.ensure_same_params(other)?;
        Ok(FieldElement {
            coords: self.params.add_coords(&self.coords, &other.coords),
            params: Arc::clone(&self.params),
        })
    }

    pub fn sub(&self, other: &FieldElement) -> Result<FieldElement> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> FieldElement {
        FieldElement {
            coords: self.params.neg_coords(&self.coords),
            params: Arc::clone(&self.params),
        }
    }

    pub fn mul(&self, other: &FieldElement) -> Result<FieldElement> {
        self.ensure_same_params(other)?;
        Ok(FieldElement {
            coords: self.params.mul_coords(&self.coords, &other.coords),
            params: Arc::clone(&self.params),
        })
    }

    pub fn inv(&self) -> Result<FieldElement> {
        Ok(FieldElement {
            coords: self.params.inv_coords(&self.coords)?,
            params: Arc::clone(&self.params),
        })
    }

    pub fn div(&self, other: &FieldElement) -> Result<FieldElement> {
        self.mul(&other.inv()?)
    }

    pub fn pow(&self, e: u64) -> FieldElement {
        FieldElement {
            coords: self.params.pow_coords(&self.coords, e),
            params: Arc::clone(&self.params),
        }
    }

    /// The Frobenius power `a^{q^i}`. F_q-linear in `a`; the exponent is
    /// reduced mod `m` since the Frobenius map has order `m`.
    pub fn frob_pow(&self, i: usize) -> FieldElement {
        let i = i % self.params.m;
        FieldElement {
            coords: self.params.apply_frob_mat(i, &self.coords),
            params: Arc::clone(&self.params),
        }
    }

    /// Scales by an integer residue of the prime subfield.
    pub fn scale(&self, lambda: u32) -> FieldElement {
        let q = self.params.q;
        let lambda = lambda % q;
        FieldElement {
            coords: self
                .coords
                .iter()
                .map(|&c| (c as u64 * lambda as u64 % q as u64) as u32)
                .collect(),
            params: Arc::clone(&self.params),
        }
    }
}

// -- polynomial helpers over F_q (little-endian, used at construction) ----

fn poly_deg(p: &[u32]) -> Option<usize> {
    p.iter().rposition(|&c| c != 0)
}

fn poly_is_zero(p: &[u32]) -> bool {
    poly_deg(p).is_none()
}

fn poly_trim(mut p: Vec<u32>) -> Vec<u32> {
    while p.last() == Some(&0) {
        p.pop();
    }
    p
}

fn poly_sub(a: &[u32], b: &[u32], q: u32) -> Vec<u32> {
    let n = a.len().max(b.len());
    let mut out = vec![0u32; n];
    for (i, o) in out.iter_mut().enumerate() {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        *o = (x + q - y) % q;
    }
    poly_trim(out)
}

fn poly_mul(a: &[u32], b: &[u32], q: u32) -> Vec<u32> {
    if poly_is_zero(a) || poly_is_zero(b) {
        return vec![];
    }
    let mut out = vec![0u32; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = ((out[i + j] as u64 + x as u64 * y as u64) % q as u64) as u32;
        }
    }
    poly_trim(out)
}

fn poly_divmod(a: &[u32], b: &[u32], q: u32) -> (Vec<u32>, Vec<u32>) {
    let db = poly_deg(b).expect("division by zero polynomial");
    let mut rem: Vec<u32> = a.to_vec();
    let mut quot = vec![0u32; a.len().saturating_sub(db) + 1];
    let lead_inv = int_inv_mod(b[db], q);
    while let Some(dr) = poly_deg(&rem) {
        if dr < db {
            break;
        }
        let c = (rem[dr] as u64 * lead_inv as u64 % q as u64) as u32;
        let shift = dr - db;
        quot[shift] = c;
        for (j, &bc) in b.iter().enumerate().take(db + 1) {
            let sub = (c as u64 * bc as u64 % q as u64) as u32;
            rem[shift + j] = (rem[shift + j] + q - sub) % q;
        }
    }
    (poly_trim(quot), poly_trim(rem))
}

/// Trial division by every monic polynomial of degree up to m/2.
fn poly_is_irreducible(p: &[u32], q: u32) -> bool {
    let m = poly_deg(p).expect("nonzero");
    for d in 1..=m / 2 {
        // Odometer over the d low-order coefficients of a monic degree-d divisor.
        let mut low = vec![0u32; d];
        loop {
            let mut divisor = low.clone();
            divisor.push(1);
            let (_, rem) = poly_divmod(p, &divisor, q);
            if poly_is_zero(&rem) {
                return false;
            }
            let mut i = 0;
            while i < d {
                low[i] += 1;
                if low[i] < q {
                    break;
                }
                low[i] = 0;
                i += 1;
            }
            if i == d {
                break;
            }
        }
    }
    true
}

pub(crate) fn int_inv_mod(a: u32, q: u32) -> u32 {
    // Extended Euclid on integers; q prime, a != 0 mod q.
    let (mut t, mut new_t): (i64, i64) = (0, 1);
    let (mut r, mut new_r): (i64, i64) = (q as i64, (a % q) as i64);
    while new_r != 0 {
        let quot = r / new_r;
        (t, new_t) = (new_t, t - quot * new_t);
        (r, new_r) = (new_r, r - quot * new_r);
    }
    assert_eq!(r, 1, "not invertible mod q");
    t.rem_euclid(q as i64) as u32
}
