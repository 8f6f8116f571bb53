//! Exact and asymptotic coding bounds for constant-dimension codes in the
//! Grassmannian: Gaussian coefficients, sphere sizes in the subspace metric,
//! sphere-packing and sphere-covering bounds, the Singleton bound from
//! puncturing, normalized-parameter envelope curves, and a greedy
//! Gilbert-Varshamov-style constructor. All bound arithmetic is exact
//! (big integers and rationals); only the asymptotic curves are real-valued.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{BigUint, Integer, One, Zero};
use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{CodeError, Result};
use crate::subspace::{enumerate_grassmannian, Subspace};

/// The Gaussian coefficient `[n l]_q`: the number of l-dimensional subspaces
/// of an n-dimensional space over `F_q`. Computed by the product formula
/// with interleaved exact division (each prefix is itself a q-binomial, so
/// every division is exact).
pub fn gaussian_coefficient(n: usize, l: usize, q: u32) -> Result<BigUint> {
    if l > n {
        return Err(CodeError::InvalidParameter(format!(
            "Gaussian coefficient needs l <= n, got l={l}, n={n}"
        )));
    }
    if q < 2 {
        return Err(CodeError::InvalidParameter("q must be at least 2".into()));
    }
    let q = BigUint::from(q);
    let one = BigUint::one();
    let mut acc = BigUint::one();
    for i in 1..=l {
        acc *= q.pow((n - l + i) as u32) - &one;
        let den = q.pow(i as u32) - &one;
        let (quot, rem) = acc.div_rem(&den);
        debug_assert!(rem.is_zero());
        acc = quot;
    }
    Ok(acc)
}

/// `[n l]_q`, treating out-of-range `l` as zero subspaces.
fn gc_or_zero(n: usize, l: usize, q: u32) -> Result<BigUint> {
    if l > n {
        Ok(BigUint::zero())
    } else {
        gaussian_coefficient(n, l, q)
    }
}

/// The number of l-dimensional subspaces within distance `2t` of a fixed
/// l-dimensional center in `F_q^N`: `Σ_{i=0}^{t} q^{i²} [l i]_q [N-l i]_q`.
/// Independent of the center, and symmetric under `l -> N - l`.
pub fn sphere_size(n: usize, l: usize, t: usize, q: u32) -> Result<BigUint> {
    if l > n {
        return Err(CodeError::InvalidParameter(format!(
            "sphere center dimension {l} exceeds ambient {n}"
        )));
    }
    if t > l {
        return Err(CodeError::InvalidParameter(format!(
            "sphere radius {t} exceeds center dimension {l}"
        )));
    }
    let qb = BigUint::from(q);
    let mut total = BigUint::zero();
    for i in 0..=t {
        let shell = qb.pow((i * i) as u32) * gc_or_zero(l, i, q)? * gc_or_zero(n - l, i, q)?;
        total += shell;
    }
    Ok(total)
}

/// Sphere-packing upper bound for codes of distance at least `2t`:
/// `⌊ [N l]_q / |S(V, l, s)| ⌋` with `s = ⌊(t-1)/2⌋`, plus the looser
/// closed-form envelope `4 q^{(l-s)(N-s-l)}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PackingBound {
    pub exact: BigUint,
    pub envelope: BigUint,
}

pub fn packing_bound(n: usize, l: usize, t: usize, q: u32) -> Result<PackingBound> {
    if t == 0 {
        return Err(CodeError::InvalidParameter(
            "packing bound needs t >= 1".into(),
        ));
    }
    let s = (t - 1) / 2;
    let grassmannian = gaussian_coefficient(n, l, q)?;
    let sphere = sphere_size(n, l, s, q)?;
    let exact = grassmannian / sphere;
    let envelope = BigUint::from(4u32) * BigUint::from(q).pow(((l - s) * (n - s - l)) as u32);
    Ok(PackingBound { exact, envelope })
}

/// Sphere-covering lower bound: a code of distance at least `2t` exists with
/// at least `⌈ [N l]_q / |S(V, l, t-1)| ⌉` codewords. The envelope is the
/// cited `q^{(l-t+1)(N-t-l+1)} / (16 t)` (meaningful when the exponent
/// factors are nonnegative).
#[derive(Clone, Debug, PartialEq)]
pub struct CoveringBound {
    pub exact: BigUint,
    pub envelope: BigRational,
}

pub fn covering_bound(n: usize, l: usize, t: usize, q: u32) -> Result<CoveringBound> {
    if t == 0 {
        return Err(CodeError::InvalidParameter(
            "covering bound needs t >= 1".into(),
        ));
    }
    if t > l {
        return Err(CodeError::InvalidParameter(format!(
            "covering bound needs t <= l, got t={t}, l={l}"
        )));
    }
    let grassmannian = gaussian_coefficient(n, l, q)?;
    let sphere = sphere_size(n, l, t - 1, q)?;
    let (quot, rem) = grassmannian.div_rem(&sphere);
    let exact = if rem.is_zero() { quot } else { quot + 1u32 };
    let envelope = if l + 1 >= t && n + 1 >= t + l {
        BigRational::new(
            BigInt::from(BigUint::from(q).pow(((l + 1 - t) * (n + 1 - t - l)) as u32)),
            BigInt::from(16 * t),
        )
    } else {
        BigRational::zero()
    };
    Ok(CoveringBound { exact, envelope })
}

/// Singleton bound via puncturing: a code of type `[N, l, log_q|C|, D]`
/// satisfies `|C| <= [N-(D-2)/2 over max(l, N-l)]_q`. `D` must be even
/// (constant-dimension distances are even).
pub fn singleton_bound(n: usize, l: usize, d: usize, q: u32) -> Result<BigUint> {
    if !d.is_multiple_of(2) || d < 2 {
        return Err(CodeError::InvalidParameter(format!(
            "Singleton bound needs an even distance D >= 2, got {d}"
        )));
    }
    if l > n {
        return Err(CodeError::InvalidParameter(format!(
            "codeword dimension {l} exceeds ambient {n}"
        )));
    }
    let punctures = (d - 2) / 2;
    if punctures > n {
        return Err(CodeError::InvalidParameter(format!(
            "distance {d} is too large for ambient dimension {n}"
        )));
    }
    gaussian_coefficient(n - punctures, l.max(n - l), q)
}

/// Exact bounds plus closed-form envelopes for one `(N, l, q, D)` row, with
/// `t = D/2`.
#[derive(Clone, Debug, PartialEq)]
pub struct BoundReport {
    pub ambient_dim: usize,
    pub codeword_dim: usize,
    pub q: u32,
    pub distance: usize,
    pub packing: BigUint,
    pub covering: BigUint,
    pub singleton: BigUint,
    pub packing_envelope: BigUint,
    pub covering_envelope: BigRational,
}

pub fn bound_report(n: usize, l: usize, q: u32, d: usize) -> Result<BoundReport> {
    if !d.is_multiple_of(2) || d == 0 {
        return Err(CodeError::InvalidParameter(format!(
            "distance must be even and positive, got {d}"
        )));
    }
    let t = d / 2;
    let packing = packing_bound(n, l, t, q)?;
    let covering = covering_bound(n, l, t, q)?;
    let singleton = singleton_bound(n, l, d, q)?;
    Ok(BoundReport {
        ambient_dim: n,
        codeword_dim: l,
        q,
        distance: d,
        packing: packing.exact,
        covering: covering.exact,
        singleton,
        packing_envelope: packing.envelope,
        covering_envelope: covering.envelope,
    })
}

/// One row of the asymptotic (N -> ∞) rate-vs-distance chart for a fixed
/// normalized weight λ: packing `(1-δ/2)(1-λ(1+δ/2))`, covering
/// `(1-δ)(1-λ(δ+1))`, Singleton `(1-δ)(1-λ)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CurvePoint {
    pub delta: f64,
    pub packing: f64,
    pub covering: f64,
    pub singleton: f64,
}

pub fn asymptotic_curves(lambda: f64, delta_grid: &[f64]) -> Result<Vec<CurvePoint>> {
    if !(lambda > 0.0 && lambda <= 0.5) {
        return Err(CodeError::InvalidParameter(format!(
            "lambda must lie in (0, 1/2], got {lambda}"
        )));
    }
    let mut out = Vec::with_capacity(delta_grid.len());
    for &delta in delta_grid {
        if !(0.0..=1.0).contains(&delta) {
            return Err(CodeError::InvalidParameter(format!(
                "delta must lie in [0, 1], got {delta}"
            )));
        }
        out.push(CurvePoint {
            delta,
            packing: (1.0 - delta / 2.0) * (1.0 - lambda * (1.0 + delta / 2.0)),
            covering: (1.0 - delta) * (1.0 - lambda * (delta + 1.0)),
            singleton: (1.0 - delta) * (1.0 - lambda),
        });
    }
    Ok(out)
}

/// Renders curve points as the CSV dataset `delta,packing,covering,singleton`.
pub fn curves_to_csv(points: &[CurvePoint]) -> String {
    let mut out = String::from("delta,packing,covering,singleton\n");
    for p in points {
        out.push_str(&format!(
            "{},{},{},{}\n",
            p.delta, p.packing, p.covering, p.singleton
        ));
    }
    out
}

/// The uniform grid `0, 1/steps, ..., 1` used for the chart dataset.
pub fn unit_grid(steps: usize) -> Vec<f64> {
    (0..=steps).map(|i| i as f64 / steps as f64).collect()
}

/// Greedy covering construction: walk the Grassmannian in a seeded random
/// order and keep every subspace at distance >= 2t from all kept ones. The
/// result is maximal, so its size meets the sphere-covering lower bound, and
/// its minimum distance is at least 2t by construction.
pub fn greedy_gv_code(
    q: u32,
    n: usize,
    l: usize,
    t: usize,
    cap: u128,
    rng: &mut impl Rng,
) -> Result<Vec<Subspace>> {
    if t == 0 {
        return Err(CodeError::InvalidParameter(
            "greedy construction needs t >= 1".into(),
        ));
    }
    let mut all = enumerate_grassmannian(q, n, l, cap)?;
    all.shuffle(rng);
    let mut chosen: Vec<Subspace> = Vec::new();
    'outer: for cand in all {
        for c in &chosen {
            if cand.distance(c)? < 2 * t {
                continue 'outer;
            }
        }
        chosen.push(cand);
    }
    Ok(chosen)
}

/// Normalized parameters of a type tuple: `λ = l/N`, `R = log_q|C|/(N l)`,
/// `δ = D/(2l)`, as exact rationals.
#[derive(Clone, Debug, PartialEq)]
pub struct NormalizedParams {
    pub lambda: BigRational,
    pub rate: BigRational,
    pub delta: BigRational,
}

impl std::fmt::Display for NormalizedParams {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "lambda={} ({:.6})  R={} ({:.6})  delta={} ({:.6})",
            self.lambda,
            crate::code::rational_to_f64(&self.lambda),
            self.rate,
            crate::code::rational_to_f64(&self.rate),
            self.delta,
            crate::code::rational_to_f64(&self.delta),
        )
    }
}

pub fn normalized_params(
    n: usize,
    l: usize,
    logq_size: usize,
    d: usize,
) -> Result<NormalizedParams> {
    if l == 0 || n < l {
        return Err(CodeError::InvalidParameter(format!(
            "normalized parameters need 1 <= l <= N, got l={l}, N={n}"
        )));
    }
    let big = |x: usize| BigInt::from(x);
    Ok(NormalizedParams {
        lambda: BigRational::new(big(l), big(n)),
        rate: BigRational::new(big(logq_size), big(n * l)),
        delta: BigRational::new(big(d), big(2 * l)),
    })
}
