//! The non-commutative ring of linearized polynomials over `F_{q^m}`:
//! sums of terms `a_i x^[i]` where `x^[i] = x^{q^i}`. Supports addition,
//! composition `⊗` (which multiplies ordinary degrees), left and right
//! division, evaluation, and kernel computation.

use std::fmt;
use std::sync::Arc;

use crate::error::{CodeError, Result};
use crate::field::{FieldElement, FieldParams};
use crate::subspace::Subspace;

/// A linearized polynomial `L(x) = Σ a_i x^[i]`, stored densely by q-degree.
/// Normal form: either no coefficients (the zero polynomial) or a nonzero
/// leading coefficient. The q-degree of a nonzero polynomial is `d`; its
/// ordinary degree is `q^d`.
#[derive(Clone, PartialEq, Eq)]
pub struct LinearizedPoly {
    coeffs: Vec<FieldElement>,
    params: Arc<FieldParams>,
}

impl fmt::Debug for LinearizedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "LinearizedPoly(0)");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| format!("{c}·x^[{i}]"))
            .collect();
        write!(f, "LinearizedPoly({})", terms.join(" + "))
    }
}

impl LinearizedPoly {
    pub fn zero(params: &Arc<FieldParams>) -> Self {
        LinearizedPoly {
            coeffs: Vec::new(),
            params: Arc::clone(params),
        }
    }

    /// The identity `x = x^[0]`.
    pub fn identity(params: &Arc<FieldParams>) -> Self {
        LinearizedPoly {
            coeffs: vec![params.one()],
            params: Arc::clone(params),
        }
    }

    /// The single term `c x^[i]`.
    pub fn monomial(c: FieldElement, i: usize) -> Self {
        let params = Arc::clone(c.params());
        if c.is_zero() {
            return Self::zero(&params);
        }
        let mut coeffs = vec![params.zero(); i + 1];
        coeffs[i] = c;
        LinearizedPoly { coeffs, params }
    }

    /// Builds from low-to-high coefficients, stripping trailing zeros.
    pub fn from_coeffs(params: &Arc<FieldParams>, mut coeffs: Vec<FieldElement>) -> Result<Self> {
        for c in &coeffs {
            if c.params() != params {
                return Err(CodeError::ParamsMismatch);
            }
        }
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Ok(LinearizedPoly {
            coeffs,
            params: Arc::clone(params),
        })
    }

    pub fn params(&self) -> &Arc<FieldParams> {
        &self.params
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn q_degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> FieldElement {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(|| self.params.zero())
    }

    pub fn leading_coeff(&self) -> Option<&FieldElement> {
        self.coeffs.last()
    }

    fn ensure_same_params(&self, other: &LinearizedPoly) -> Result<()> {
        if self.params == other.params {
            Ok(())
        } else {
            Err(CodeError::ParamsMismatch)
        }
    }

    pub fn add(&self, other: &LinearizedPoly) -> Result<LinearizedPoly> {
        self.ensure_same_params(other)?;
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            coeffs.push(self.coeff(i).add(&other.coeff(i))?);
        }
        LinearizedPoly::from_coeffs(&self.params, coeffs)
    }

    pub fn sub(&self, other: &LinearizedPoly) -> Result<LinearizedPoly> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> LinearizedPoly {
        LinearizedPoly {
            coeffs: self.coeffs.iter().map(|c| c.neg()).collect(),
            params: Arc::clone(&self.params),
        }
    }

    /// Scales every coefficient by `alpha` (an `F_{q^m}`-linear combination
    /// on the left).
    pub fn scale(&self, alpha: &FieldElement) -> Result<LinearizedPoly> {
        if alpha.params() != &self.params {
            return Err(CodeError::ParamsMismatch);
        }
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| c.mul(alpha))
            .collect::<Result<Vec<_>>>()?;
        LinearizedPoly::from_coeffs(&self.params, coeffs)
    }

    /// Composition `self ⊗ other = self(other(x))`, with coefficients
    /// `c_k = Σ_i a_i b_{k-i}^[i]`. q-degrees add for nonzero operands.
    pub fn compose(&self, other: &LinearizedPoly) -> Result<LinearizedPoly> {
        self.ensure_same_params(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(LinearizedPoly::zero(&self.params));
        }
        let d1 = self.coeffs.len() - 1;
        let d2 = other.coeffs.len() - 1;
        let mut coeffs = vec![self.params.zero(); d1 + d2 + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let term = a.mul(&b.frob_pow(i))?;
                coeffs[i + j] = coeffs[i + j].add(&term)?;
            }
        }
        LinearizedPoly::from_coeffs(&self.params, coeffs)
    }

    /// The q-th power of the evaluation map: `(Σ a_i x^[i])^q = Σ a_i^q x^[i+1]`,
    /// i.e. composition `x^[1] ⊗ self`.
    pub fn frob_shift(&self) -> LinearizedPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(self.params.zero());
        coeffs.extend(self.coeffs.iter().map(|c| c.frob_pow(1)));
        LinearizedPoly {
            coeffs,
            params: Arc::clone(&self.params),
        }
    }

    /// Evaluates at `beta`: `Σ a_i · beta^{q^i}`. F_q-linear in `beta`.
    pub fn eval(&self, beta: &FieldElement) -> Result<FieldElement> {
        if beta.params() != &self.params {
            return Err(CodeError::ParamsMismatch);
        }
        let mut acc = self.params.zero();
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            acc = acc.add(&a.mul(&beta.frob_pow(i))?)?;
        }
        Ok(acc)
    }

    /// Right division: `self = divisor ⊗ quot + rem` with `rem ≡ 0` or
    /// `deg rem < deg divisor`. The quotient and remainder are unique.
    pub fn rdiv(&self, divisor: &LinearizedPoly) -> Result<(LinearizedPoly, LinearizedPoly)> {
        self.ensure_same_params(divisor)?;
        let Some(e) = divisor.q_degree() else {
            return Err(CodeError::DivisionByZero);
        };
        let m = self.params.extension_degree();
        let b_e = divisor.leading_coeff().expect("nonzero divisor");
        let b_e_inv = b_e.inv()?;
        let mut quot = LinearizedPoly::zero(&self.params);
        let mut rem = self.clone();
        while let Some(d) = rem.q_degree() {
            if d < e {
                break;
            }
            let a_d = rem.leading_coeff().expect("nonzero remainder");
            // t(x) = (a_d / b_e)^[m-e] x^[d-e]; the exponent reduces mod m
            // because the Frobenius map has order m.
            let t_coeff = a_d.mul(&b_e_inv)?.frob_pow((m - e % m) % m);
            let t = LinearizedPoly::monomial(t_coeff, d - e);
            rem = rem.sub(&divisor.compose(&t)?)?;
            quot = quot.add(&t)?;
            debug_assert!(rem.q_degree().is_none_or(|dr| dr < d));
        }
        Ok((quot, rem))
    }

    /// Left division: `self = quot ⊗ divisor + rem` with `rem ≡ 0` or
    /// `deg rem < deg divisor`.
    pub fn ldiv(&self, divisor: &LinearizedPoly) -> Result<(LinearizedPoly, LinearizedPoly)> {
        self.ensure_same_params(divisor)?;
        let Some(e) = divisor.q_degree() else {
            return Err(CodeError::DivisionByZero);
        };
        let b_e = divisor.leading_coeff().expect("nonzero divisor");
        let mut quot = LinearizedPoly::zero(&self.params);
        let mut rem = self.clone();
        while let Some(d) = rem.q_degree() {
            if d < e {
                break;
            }
            let a_d = rem.leading_coeff().expect("nonzero remainder");
            // t(x) = (a_d / b_e^[d-e]) x^[d-e].
            let t_coeff = a_d.mul(&b_e.frob_pow(d - e).inv()?)?;
            let t = LinearizedPoly::monomial(t_coeff, d - e);
            rem = rem.sub(&t.compose(divisor)?)?;
            quot = quot.add(&t)?;
            debug_assert!(rem.q_degree().is_none_or(|dr| dr < d));
        }
        Ok((quot, rem))
    }

    /// The kernel of the F_q-linear evaluation map `beta -> self(beta)` on
    /// `F_{q^m}` viewed as `F_q^m`. Its dimension is at most the q-degree.
    pub fn kernel(&self) -> Result<Subspace> {
        let q = self.params.q();
        let m = self.params.extension_degree();
        if self.is_zero() {
            return Subspace::full(q, m);
        }
        // Row i of the map matrix holds coordinate i of the images of the
        // polynomial basis; the kernel is the right-nullspace, i.e. the
        // orthogonal complement of the row space.
        let mut rows = vec![vec![0u32; m]; m];
        for j in 0..m {
            let img = self.eval(&self.params.basis_element(j))?;
            for (row, &c) in rows.iter_mut().zip(img.coords()) {
                row[j] = c;
            }
        }
        Ok(Subspace::from_rows(q, m, rows)?.orthogonal_complement())
    }

    /// Text format: the coefficients as canonical integers, lowest q-degree
    /// first, space-separated on one line. The zero polynomial is `0`.
    pub fn to_text(&self) -> String {
        if self.is_zero() {
            return "0\n".into();
        }
        let toks: Vec<String> = self.coeffs.iter().map(|c| c.to_index().to_string()).collect();
        format!("{}\n", toks.join(" "))
    }

    pub fn parse_text(params: &Arc<FieldParams>, text: &str) -> Result<Self> {
        let line = text.lines().next().unwrap_or("");
        let mut coeffs = Vec::new();
        for tok in line.split_whitespace() {
            let idx: u64 = tok.parse().map_err(|_| CodeError::Parse {
                line: 1,
                message: format!("invalid coefficient `{tok}`"),
            })?;
            coeffs.push(params.element_from_index(idx).map_err(|e| CodeError::Parse {
                line: 1,
                message: e.to_string(),
            })?);
        }
        LinearizedPoly::from_coeffs(params, coeffs)
    }
}

/// The monic linearized polynomial whose kernel is exactly the span of the
/// given independent elements: built by the recursion
/// `f' = f^q - f(γ)^{q-1} · f` for each new generator `γ`.
pub fn subspace_polynomial(
    params: &Arc<FieldParams>,
    generators: &[FieldElement],
) -> Result<LinearizedPoly> {
    let mut f = LinearizedPoly::identity(params);
    let q = params.q() as u64;
    for g in generators {
        let fg = f.eval(g)?;
        if fg.is_zero() {
            return Err(CodeError::InvalidParameter(
                "generators are linearly dependent".into(),
            ));
        }
        f = f.frob_shift().sub(&f.scale(&fg.pow(q - 1))?)?;
    }
    Ok(f)
}
