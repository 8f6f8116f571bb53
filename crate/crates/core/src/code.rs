//! The Reed-Solomon-like constant-dimension code: messages are linearized
//! polynomials `f` of q-degree below `k`, and the codeword for `f` is the
//! subspace of `W = ⟨A⟩ ⊕ F_{q^m}` spanned by `{(α_i, f(α_i))}` over the
//! evaluation set `A`. A code with `|A| = l >= k` has type
//! `[l + m, l, mk, 2(l - k + 1)]`.
//!
//! Decoding is list-1 interpolation: find a minimal bivariate linearized
//! polynomial `Q(x, y) = Q_x(x) + Q_y(y)` vanishing on the received space,
//! solve the key equation `Q_y ⊗ f + Q_x ≡ 0` by right division, and accept
//! iff the re-encoded codeword is strictly within the design distance.
//!
//! Generic utilities for arbitrary constant-dimension codes (exhaustive
//! minimum distance, brute-force minimum-distance decoding, puncturing,
//! complementary codes) live here too.

use std::fmt;
use std::sync::Arc;

use num::rational::BigRational;
use num::BigInt;
use rand::Rng;

use crate::channel::erasure_operator;
use crate::error::{CodeError, Result};
use crate::field::{FieldElement, FieldParams};
use crate::linpoly::LinearizedPoly;
use crate::subspace::{rank_of, Subspace};

/// A block of `k` message symbols over `F_{q^m}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Message {
    symbols: Vec<FieldElement>,
}

impl Message {
    pub fn new(symbols: Vec<FieldElement>) -> Self {
        Message { symbols }
    }

    pub fn symbols(&self) -> &[FieldElement] {
        &self.symbols
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    /// The message polynomial `f(x) = Σ u_i x^[i]`.
    pub fn to_poly(&self, params: &Arc<FieldParams>) -> Result<LinearizedPoly> {
        LinearizedPoly::from_coeffs(params, self.symbols.clone())
    }

    /// Text format: one canonical field-element integer per line.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for s in &self.symbols {
            out.push_str(&s.to_index().to_string());
            out.push('\n');
        }
        out
    }

    pub fn parse_text(params: &Arc<FieldParams>, k: usize, text: &str) -> Result<Message> {
        let mut symbols = Vec::with_capacity(k);
        for (idx, line) in text.lines().enumerate() {
            let lineno = idx + 1;
            let trimmed = line.trim();
            if trimmed.is_empty() {
                continue;
            }
            let value: u64 = trimmed.parse().map_err(|_| CodeError::Parse {
                line: lineno,
                message: format!("invalid message symbol `{trimmed}`"),
            })?;
            symbols.push(
                params
                    .element_from_index(value)
                    .map_err(|e| CodeError::Parse {
                        line: lineno,
                        message: e.to_string(),
                    })?,
            );
        }
        if symbols.len() != k {
            return Err(CodeError::Parse {
                line: symbols.len() + 1,
                message: format!("expected {k} message symbols, got {}", symbols.len()),
            });
        }
        Ok(Message { symbols })
    }
}

/// Decoding returns the recovered message or an explicit failure value so
/// Monte Carlo harnesses can count failures without unwinding.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DecodeOutcome {
    Message(Message),
    Failure,
}

impl DecodeOutcome {
    pub fn is_failure(&self) -> bool {
        matches!(self, DecodeOutcome::Failure)
    }

    pub fn message(&self) -> Option<&Message> {
        match self {
            DecodeOutcome::Message(m) => Some(m),
            DecodeOutcome::Failure => None,
        }
    }
}

/// The code-type tuple `[N, l, log_q|C|, D]` with its normalized parameters
/// `λ = l/N`, `R = log_q|C| / (N l)`, `δ = D / (2l)` as exact rationals.
#[derive(Clone, Debug, PartialEq)]
pub struct CodeParams {
    pub ambient_dim: usize,
    pub codeword_dim: usize,
    pub logq_size: usize,
    pub min_distance: usize,
    pub lambda: BigRational,
    pub rate: BigRational,
    pub delta: BigRational,
}

impl fmt::Display for CodeParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}, {}, {}, {}]  lambda={} ({:.6})  R={} ({:.6})  delta={} ({:.6})",
            self.ambient_dim,
            self.codeword_dim,
            self.logq_size,
            self.min_distance,
            self.lambda,
            rational_to_f64(&self.lambda),
            self.rate,
            rational_to_f64(&self.rate),
            self.delta,
            rational_to_f64(&self.delta),
        )
    }
}

pub(crate) fn rational_to_f64(r: &BigRational) -> f64 {
    use num::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}

/// One Reed-Solomon-like code: field parameters, message length `k`, and an
/// `F_q`-linearly independent evaluation set `A ⊂ F_{q^m}` of size `l`.
/// Codewords are `l`-dimensional subspaces of `F_q^{l+m}`, serialized as the
/// coordinates of `α` in basis `A` followed by the polynomial-basis
/// coordinates of `f(α)`.
#[derive(Clone, Debug)]
pub struct RsCode {
    params: Arc<FieldParams>,
    k: usize,
    eval_set: Vec<FieldElement>,
}

impl RsCode {
    pub fn new(params: Arc<FieldParams>, k: usize, eval_set: Vec<FieldElement>) -> Result<Self> {
        let m = params.extension_degree();
        let l = eval_set.len();
        if l == 0 || l > m {
            return Err(CodeError::InvalidParameter(format!(
                "evaluation set size {l} must lie in 1..={m}"
            )));
        }
        if k == 0 || k > l {
            return Err(CodeError::InvalidParameter(format!(
                "message length {k} must lie in 1..={l} (the injectivity bound)"
            )));
        }
        for a in &eval_set {
            if a.params() != &params {
                return Err(CodeError::ParamsMismatch);
            }
        }
        let rows: Vec<Vec<u32>> = eval_set.iter().map(|a| a.coords().to_vec()).collect();
        if rank_of(&rows, params.q()) != l {
            return Err(CodeError::InvalidParameter(
                "evaluation set is linearly dependent over F_q".into(),
            ));
        }
        Ok(RsCode {
            params,
            k,
            eval_set,
        })
    }

    /// A code with the canonical evaluation set `1, z, ..., z^{l-1}`.
    pub fn with_default_eval_set(params: Arc<FieldParams>, l: usize, k: usize) -> Result<Self> {
        if l == 0 || l > params.extension_degree() {
            return Err(CodeError::InvalidParameter(format!(
                "codeword dimension {l} must lie in 1..={}",
                params.extension_degree()
            )));
        }
        let eval_set = (0..l).map(|i| params.basis_element(i)).collect();
        Self::new(params, k, eval_set)
    }

    pub fn field(&self) -> &Arc<FieldParams> {
        &self.params
    }

    pub fn q(&self) -> u32 {
        self.params.q()
    }

    /// Extension degree m.
    pub fn m(&self) -> usize {
        self.params.extension_degree()
    }

    /// Codeword dimension l = |A|.
    pub fn codeword_dim(&self) -> usize {
        self.eval_set.len()
    }

    /// Message length k in `F_{q^m}` symbols.
    pub fn message_len(&self) -> usize {
        self.k
    }

    /// Ambient dimension N = l + m.
    pub fn ambient_dim(&self) -> usize {
        self.codeword_dim() + self.m()
    }

    /// Design minimum distance `2(l - k + 1)`.
    pub fn design_distance(&self) -> usize {
        2 * (self.codeword_dim() - self.k + 1)
    }

    pub fn eval_set(&self) -> &[FieldElement] {
        &self.eval_set
    }

    /// Number of codewords `q^{mk}` (u128 to survive the biggest in-scope
    /// parameter sets).
    pub fn size(&self) -> u128 {
        (self.q() as u128).pow((self.m() * self.k) as u32)
    }

    /// Evaluation encoder: spans `{(e_i, f(α_i))}` where `e_i` are the
    /// coordinates of `α_i` in basis `A`. The result always has dimension
    /// `l`, and distinct messages give distinct subspaces.
    pub fn encode(&self, msg: &Message) -> Result<Subspace> {
        if msg.len() != self.k {
            return Err(CodeError::InvalidParameter(format!(
                "message has {} symbols, code expects {}",
                msg.len(),
                self.k
            )));
        }
        let poly = msg.to_poly(&self.params)?;
        let l = self.codeword_dim();
        let m = self.m();
        let n = self.ambient_dim();
        let mut rows = Vec::with_capacity(l);
        for (i, alpha) in self.eval_set.iter().enumerate() {
            let beta = poly.eval(alpha)?;
            let mut row = vec![0u32; n];
            row[i] = 1;
            row[l..].copy_from_slice(&beta.coords()[..m]);
            rows.push(row);
        }
        Subspace::from_rows(self.q(), n, rows)
    }

    /// Splits a vector of `W` into its `⟨A⟩` component (as a field element
    /// `Σ c_i α_i`) and its `F_{q^m}` component.
    fn point_of_row(&self, row: &[u32]) -> Result<(FieldElement, FieldElement)> {
        let l = self.codeword_dim();
        let mut x = self.params.zero();
        for (c, alpha) in row[..l].iter().zip(&self.eval_set) {
            x = x.add(&alpha.scale(*c))?;
        }
        let y = self.params.element_from_coords(row[l..].to_vec())?;
        Ok((x, y))
    }

    /// List-1 minimum distance decoding:
    /// 1. interpolate a minimal `Q(x, y) = Q_x(x) + Q_y(y)` vanishing on `U`;
    /// 2. solve `Q_y ⊗ f + Q_x ≡ 0` by right division of `-Q_x` by `Q_y`;
    /// 3. accept f iff the remainder vanishes, `deg_q f < k`, and the
    ///    re-encoded codeword is strictly within the design distance of `U`.
    pub fn decode(&self, received: &Subspace) -> Result<DecodeOutcome> {
        if received.q() != self.q() || received.ambient_dim() != self.ambient_dim() {
            return Err(CodeError::AmbientMismatch(format!(
                "received space lives in F_{}^{}, code in F_{}^{}",
                received.q(),
                received.ambient_dim(),
                self.q(),
                self.ambient_dim()
            )));
        }
        if received.is_zero() {
            return Ok(DecodeOutcome::Failure);
        }
        let points = received
            .basis()
            .iter()
            .map(|row| self.point_of_row(row))
            .collect::<Result<Vec<_>>>()?;
        let (qx, qy) = interpolate(&points, self.k)?;
        if qy.is_zero() {
            return Ok(DecodeOutcome::Failure);
        }
        let (f, rem) = qx.neg().rdiv(&qy)?;
        if !rem.is_zero() {
            return Ok(DecodeOutcome::Failure);
        }
        if f.q_degree().is_some_and(|d| d >= self.k) {
            return Ok(DecodeOutcome::Failure);
        }
        let mut symbols = f.coeffs().to_vec();
        symbols.resize(self.k, self.params.zero());
        let msg = Message::new(symbols);
        let candidate = self.encode(&msg)?;
        if received.distance(&candidate)? < self.design_distance() {
            Ok(DecodeOutcome::Message(msg))
        } else {
            Ok(DecodeOutcome::Failure)
        }
    }

    /// All `q^{mk}` codewords in message-index order. Guarded because the
    /// count grows fast; meant for the desk-scale exhaustive checks.
    pub fn enumerate_codewords(&self, cap: u128) -> Result<Vec<Subspace>> {
        let total = self.size();
        if total > cap {
            return Err(CodeError::EnumerationCapExceeded {
                required: total,
                cap,
            });
        }
        let mut out = Vec::with_capacity(total as usize);
        let field_size = self.params.size();
        let mut indices = vec![0u64; self.k];
        loop {
            let symbols = indices
                .iter()
                .map(|&i| self.params.element_from_index(i))
                .collect::<Result<Vec<_>>>()?;
            out.push(self.encode(&Message::new(symbols))?);
            let mut pos = 0;
            while pos < self.k {
                indices[pos] += 1;
                if indices[pos] < field_size {
                    break;
                }
                indices[pos] = 0;
                pos += 1;
            }
            if pos == self.k {
                return Ok(out);
            }
        }
    }

    /// The type tuple `[l+m, l, mk, 2(l-k+1)]` and normalized parameters.
    /// The identity `R = (1-λ)(1-δ+1/(λN))` holds exactly.
    pub fn code_params(&self) -> CodeParams {
        let n = self.ambient_dim();
        let l = self.codeword_dim();
        let logq_size = self.m() * self.k;
        let d = self.design_distance();
        let big = |x: usize| BigInt::from(x);
        CodeParams {
            ambient_dim: n,
            codeword_dim: l,
            logq_size,
            min_distance: d,
            lambda: BigRational::new(big(l), big(n)),
            rate: BigRational::new(big(logq_size), big(n * l)),
            delta: BigRational::new(big(d), big(2 * l)),
        }
    }
}

/// A bivariate linearized polynomial `f(x, y) = f_x(x) + f_y(y)`.
#[derive(Clone, Debug)]
struct BivariatePoly {
    x_part: LinearizedPoly,
    y_part: LinearizedPoly,
}

impl BivariatePoly {
    fn eval(&self, x: &FieldElement, y: &FieldElement) -> Result<FieldElement> {
        self.x_part.eval(x)?.add(&self.y_part.eval(y)?)
    }

    /// `(1, k-1)`-weighted degree: `max(d_x, k-1+d_y)`, `None` when zero.
    fn weighted_degree(&self, k: usize) -> Option<usize> {
        let wx = self.x_part.q_degree();
        let wy = self.y_part.q_degree().map(|d| d + k - 1);
        match (wx, wy) {
            (Some(a), Some(b)) => Some(a.max(b)),
            (a, b) => a.or(b),
        }
    }

    /// Raising the evaluation map to the q-th power shifts both parts.
    fn frob_shift(&self) -> BivariatePoly {
        BivariatePoly {
            x_part: self.x_part.frob_shift(),
            y_part: self.y_part.frob_shift(),
        }
    }

    fn scale(&self, alpha: &FieldElement) -> Result<BivariatePoly> {
        Ok(BivariatePoly {
            x_part: self.x_part.scale(alpha)?,
            y_part: self.y_part.scale(alpha)?,
        })
    }

    fn sub(&self, other: &BivariatePoly) -> Result<BivariatePoly> {
        Ok(BivariatePoly {
            x_part: self.x_part.sub(&other.x_part)?,
            y_part: self.y_part.sub(&other.y_part)?,
        })
    }
}

/// Finds a nonzero bivariate linearized polynomial `Q(x, y) = Q_x(x) + Q_y(y)`
/// of minimal `(1, k-1)`-weighted degree vanishing at every given point
/// (hence on their whole span). The points must be linearly independent
/// vectors of `W`. Returns `(Q_x, Q_y)`.
///
/// Maintains an x-minimal and a y-minimal candidate; each point update
/// either combines them or composes with the Frobenius, raising exactly one
/// weighted degree by one. With `τ = ⌈(r+k)/2⌉` the output satisfies
/// `deg_q Q_x <= τ-1` and `deg_q Q_y <= τ-k`.
pub fn interpolate(
    points: &[(FieldElement, FieldElement)],
    k: usize,
) -> Result<(LinearizedPoly, LinearizedPoly)> {
    if k == 0 {
        return Err(CodeError::InvalidParameter(
            "weighted degree needs k >= 1".into(),
        ));
    }
    let first = points.first().ok_or_else(|| {
        CodeError::InvalidParameter("interpolation needs at least one point".into())
    })?;
    let params = Arc::clone(first.0.params());
    // Independence check on the concatenated coordinates.
    let rows: Vec<Vec<u32>> = points
        .iter()
        .map(|(x, y)| {
            let mut row = x.coords().to_vec();
            row.extend_from_slice(y.coords());
            row
        })
        .collect();
    if rank_of(&rows, params.q()) != points.len() {
        return Err(CodeError::InvalidParameter(
            "interpolation points are linearly dependent".into(),
        ));
    }

    let q = params.q() as u64;
    let mut f0 = BivariatePoly {
        x_part: LinearizedPoly::identity(&params),
        y_part: LinearizedPoly::zero(&params),
    };
    let mut f1 = BivariatePoly {
        x_part: LinearizedPoly::zero(&params),
        y_part: LinearizedPoly::identity(&params),
    };
    for (x, y) in points {
        let d0 = f0.eval(x, y)?;
        let d1 = f1.eval(x, y)?;
        if d0.is_zero() && d1.is_zero() {
            continue;
        } else if d0.is_zero() {
            f1 = f1.frob_shift().sub(&f1.scale(&d1.pow(q - 1))?)?;
        } else if d1.is_zero() {
            f0 = f0.frob_shift().sub(&f0.scale(&d0.pow(q - 1))?)?;
        } else if f0.weighted_degree(k) <= f1.weighted_degree(k) {
            f1 = f0.scale(&d1)?.sub(&f1.scale(&d0)?)?;
            f0 = f0.frob_shift().sub(&f0.scale(&d0.pow(q - 1))?)?;
        } else {
            f0 = f0.scale(&d1)?.sub(&f1.scale(&d0)?)?;
            f1 = f1.frob_shift().sub(&f1.scale(&d1.pow(q - 1))?)?;
        }
    }
    let out = if f1.weighted_degree(k) < f0.weighted_degree(k) {
        f1
    } else {
        f0
    };
    let r = points.len();
    let tau = (r + k).div_ceil(2);
    debug_assert!(out.weighted_degree(k).is_some_and(|w| w < tau));
    debug_assert!(out.x_part.q_degree().is_none_or(|d| d < tau));
    debug_assert!(out.y_part.q_degree().is_none_or(|d| d + k <= tau));
    Ok((out.x_part, out.y_part))
}

/// Exact minimum pairwise distance over an explicit codeword list.
pub fn min_distance(codewords: &[Subspace]) -> Result<usize> {
    if codewords.len() < 2 {
        return Err(CodeError::InvalidParameter(
            "minimum distance needs at least two codewords".into(),
        ));
    }
    let mut best = usize::MAX;
    for (i, u) in codewords.iter().enumerate() {
        for v in &codewords[i + 1..] {
            let d = u.distance(v)?;
            if d < best {
                best = d;
            }
        }
    }
    Ok(best)
}

/// Nearest-codeword search; ties broken by list order (first minimum).
pub fn brute_force_md_decode(codewords: &[Subspace], received: &Subspace) -> Result<Subspace> {
    let mut best: Option<(usize, &Subspace)> = None;
    for c in codewords {
        let d = received.distance(c)?;
        if best.as_ref().is_none_or(|&(bd, _)| d < bd) {
            best = Some((d, c));
        }
    }
    best.map(|(_, c)| c.clone())
        .ok_or_else(|| CodeError::InvalidParameter("empty code".into()))
}

/// Punctures a constant-dimension code: each codeword `V` becomes
/// `H_{l-1}(V ∩ W')`, re-expressed in coordinates of the hyperplane `W'`.
/// Requires minimum distance `D > 2`; the result has the same size and
/// minimum distance at least `D - 2`.
pub fn puncture(
    codewords: &[Subspace],
    w_prime: &Subspace,
    rng: &mut impl Rng,
) -> Result<Vec<Subspace>> {
    let first = codewords.first().ok_or_else(|| {
        CodeError::InvalidParameter("cannot puncture an empty code".into())
    })?;
    let n = first.ambient_dim();
    let q = first.q();
    let l = first.dim();
    if w_prime.ambient_dim() != n || w_prime.q() != q {
        return Err(CodeError::AmbientMismatch(
            "puncturing hyperplane lives in a different ambient space".into(),
        ));
    }
    if w_prime.dim() != n - 1 {
        return Err(CodeError::InvalidParameter(format!(
            "puncturing needs a hyperplane of dimension {}, got {}",
            n - 1,
            w_prime.dim()
        )));
    }
    if codewords.iter().any(|c| c.dim() != l) {
        return Err(CodeError::InvalidParameter(
            "puncturing requires a constant-dimension code".into(),
        ));
    }
    if min_distance(codewords)? <= 2 {
        return Err(CodeError::InvalidParameter(
            "puncturing requires minimum distance greater than 2".into(),
        ));
    }
    // Coordinates on W': value at each pivot column of its RREF basis.
    let pivots: Vec<usize> = w_prime
        .basis()
        .iter()
        .map(|row| row.iter().position(|&c| c != 0).expect("no zero rows"))
        .collect();
    let mut out = Vec::with_capacity(codewords.len());
    for v in codewords {
        let shrunk = erasure_operator(&v.intersect(w_prime)?, l - 1, rng);
        let rows: Vec<Vec<u32>> = shrunk
            .basis()
            .iter()
            .map(|row| pivots.iter().map(|&p| row[p]).collect())
            .collect();
        out.push(Subspace::from_rows(q, n - 1, rows)?);
    }
    Ok(out)
}

/// The complementary code `{U^⊥ : U ∈ C}`; preserves minimum distance and
/// swaps codeword dimension `l` for `N - l`.
pub fn complementary_code(codewords: &[Subspace]) -> Vec<Subspace> {
    codewords.iter().map(|c| c.orthogonal_complement()).collect()
}
