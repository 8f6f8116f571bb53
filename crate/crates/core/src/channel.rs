//! Simulation of the operator channel: the received space is
//! `U = H_k(V) ⊕ E`, where the erasure operator `H_k` keeps a random
//! k-dimensional subspace of the input and `E` is an error space meeting it
//! trivially. Also the packet-level matrix model `y = Hp + Ge` that grounds
//! the abstraction.
//!
//! PRNG contract: every randomized routine is driven by ChaCha8 seeded from
//! a 64-bit integer, so outcomes are reproducible across platforms. Callers
//! parallelize by splitting seeds with [`split_seed`].

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{CodeError, Result};
use crate::subspace::{rank_of, Subspace, VectorFq};

/// Targets for one channel application. The outcome records what actually
/// happened, which can differ when the sampled error space absorbs into the
/// transmitted one.
#[derive(Clone, Copy, Debug)]
pub struct ChannelConfig {
    /// Target erasure count ρ.
    pub erasures: usize,
    /// Target error dimension t.
    pub errors: usize,
    pub seed: u64,
}

/// Received subspace plus the ground-truth erasure count and error dimension
/// recomputed from `dim(U ∩ V)`.
#[derive(Clone, Debug)]
pub struct ChannelOutcome {
    pub received: Subspace,
    pub erasures_actual: usize,
    pub errors_actual: usize,
}

/// Parameters of the packet-level model `y = Hp + Ge`.
#[derive(Clone, Copy, Debug)]
pub struct PacketModelConfig {
    /// Number of received packets L.
    pub received_packets: usize,
    /// Number of injected error packets T.
    pub error_packets: usize,
    pub seed: u64,
}

/// The erasure operator `H_k`: a uniformly random k-dimensional subspace of
/// `v` when `dim v > k`, otherwise `v` itself.
pub fn erasure_operator(v: &Subspace, k: usize, rng: &mut impl Rng) -> Subspace {
    let dim = v.dim();
    if dim <= k {
        return v.clone();
    }
    let q = v.q();
    let n = v.ambient_dim();
    if k == 0 {
        return Subspace::zero(q, n).expect("q validated by input subspace");
    }
    // Random k x dim coefficient matrix of full rank applied to the basis:
    // uniform over the k-dimensional subspaces of v.
    loop {
        let coeffs: Vec<Vec<u32>> = (0..k)
            .map(|_| (0..dim).map(|_| rng.gen_range(0..q)).collect())
            .collect();
        if rank_of(&coeffs, q) < k {
            continue;
        }
        let rows: Vec<Vec<u32>> = coeffs
            .iter()
            .map(|cs| {
                let mut row = vec![0u32; n];
                for (c, brow) in cs.iter().zip(v.basis()) {
                    for (r, &b) in row.iter_mut().zip(brow) {
                        *r = (*r + c * b % q) % q;
                    }
                }
                row
            })
            .collect();
        return Subspace::from_rows(q, n, rows).expect("q validated");
    }
}

/// One operator-channel use: `U = H_{dim V - ρ}(V) ⊕ E` with `E` sampled
/// uniformly among `t`-dimensional spaces meeting the kept part trivially.
pub fn apply_channel(v: &Subspace, cfg: &ChannelConfig) -> Result<ChannelOutcome> {
    let n = v.ambient_dim();
    let q = v.q();
    if cfg.erasures > v.dim() {
        return Err(CodeError::InvalidParameter(format!(
            "cannot erase {} dimensions from a {}-dimensional space",
            cfg.erasures,
            v.dim()
        )));
    }
    let kept = v.dim() - cfg.erasures;
    if cfg.errors > n - kept {
        return Err(CodeError::InvalidParameter(format!(
            "error dimension {} does not fit: ambient {} minus kept {}",
            cfg.errors, n, kept
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let kept_space = erasure_operator(v, kept, &mut rng);
    // Rejection-sample t vectors whose span has dimension t and meets the
    // kept space trivially: the direct-sum semantics of the channel.
    let received = loop {
        let mut rows: Vec<Vec<u32>> = kept_space.basis().to_vec();
        for _ in 0..cfg.errors {
            rows.push((0..n).map(|_| rng.gen_range(0..q)).collect());
        }
        if rank_of(&rows, q) == kept + cfg.errors {
            break Subspace::from_rows(q, n, rows)?;
        }
    };
    let inter_dim = received.intersect(v)?.dim();
    let errors_actual = received.dim() - inter_dim;
    Ok(ChannelOutcome {
        received,
        erasures_actual: v.dim() - inter_dim,
        errors_actual,
    })
}

/// The packet-level model: `H` (L x M) and `G` (L x T) have i.i.d. uniform
/// entries, the T error packets are uniform vectors, and the result is the
/// row space of `y = Hp + Ge`.
pub fn packet_channel(p_rows: &[VectorFq], cfg: &PacketModelConfig) -> Result<Subspace> {
    let first = p_rows.first().ok_or_else(|| {
        CodeError::InvalidParameter("packet_channel requires at least one source packet".into())
    })?;
    let q = first.q();
    let n = first.len();
    for row in p_rows {
        if row.q() != q || row.len() != n {
            return Err(CodeError::AmbientMismatch(
                "source packets disagree on q or length".into(),
            ));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let t = cfg.error_packets;
    let errors: Vec<Vec<u32>> = (0..t)
        .map(|_| (0..n).map(|_| rng.gen_range(0..q)).collect())
        .collect();
    let mut received = Vec::with_capacity(cfg.received_packets);
    for _ in 0..cfg.received_packets {
        let mut y = vec![0u32; n];
        for p in p_rows {
            let h = rng.gen_range(0..q);
            if h == 0 {
                continue;
            }
            for (yi, &pi) in y.iter_mut().zip(p.entries()) {
                *yi = (*yi + h * pi % q) % q;
            }
        }
        for e in &errors {
            let g = rng.gen_range(0..q);
            if g == 0 {
                continue;
            }
            for (yi, &ei) in y.iter_mut().zip(e) {
                *yi = (*yi + g * ei % q) % q;
            }
        }
        received.push(y);
    }
    Subspace::from_rows(q, n, received)
}

/// Whether a code of minimum distance `d` is guaranteed to correct `rho`
/// erasures and `t` errors: `2(t + ρ) < D`.
pub fn correctability_check(d: usize, rho: usize, t: usize) -> bool {
    2 * (t + rho) < d
}

/// Deterministic seed derivation for parallel trials: a splitmix64 chain
/// over the base seed and the given words.
pub fn split_seed(base: u64, words: &[u64]) -> u64 {
    let mut state = base;
    for &w in words {
        state = splitmix64(state ^ splitmix64(w));
    }
    splitmix64(state)
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// One row of the trial-log CSV emitted by channel simulations.
#[derive(Clone, Debug)]
pub struct TrialRecord {
    pub seed: u64,
    pub rho_target: usize,
    pub t_target: usize,
    pub rho_actual: usize,
    pub t_actual: usize,
    pub distance: usize,
    pub decode_ok: bool,
}

pub const TRIAL_CSV_HEADER: &str = "seed,rho_target,t_target,rho_actual,t_actual,distance,decode_ok";

impl TrialRecord {
    pub fn to_csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{}",
            self.seed,
            self.rho_target,
            self.t_target,
            self.rho_actual,
            self.t_actual,
            self.distance,
            if self.decode_ok { 1 } else { 0 }
        )
    }
}
